//! Acceptance criteria 1 to 9, one PASS/FAIL line each.
//!
//! Runs without the libtest harness so the lines always reach the output.
//! Two criteria state expectations that the computation contradicts (see
//! `KNOWN_CONTRADICTIONS`); they print FAIL, and this binary only exits
//! nonzero on a genuine failure or when the contradictions drift from the
//! recorded set.

use std::process::ExitCode;

use cubulator_cli::suite::run_criterion;

const KNOWN_CONTRADICTIONS: &[(u32, &[&str])] = &[
    (
        6,
        &[
            "trivial s0102 ~ y_0 s0 is not diagram-equivalent to 1, s1, s1s2, s1s2s0 or any y_m",
            "trivial s0121 ~ s0 y_0 is not diagram-equivalent to 1, s1, s1s2, s1s2s0 or any y_m",
            "trivial s0201 ~ y_0 s0 is not diagram-equivalent to 1, s1, s1s2, s1s2s0 or any y_m",
            "trivial s1020 ~ s0 y_0 is not diagram-equivalent to 1, s1, s1s2, s1s2s0 or any y_m",
            "trivial s1210 ~ y_0 s0 is not diagram-equivalent to 1, s1, s1s2, s1s2s0 or any y_m",
            "trivial s2010 ~ s0 y_0 is not diagram-equivalent to 1, s1, s1s2, s1s2s0 or any y_m",
        ],
    ),
    (
        7,
        &[
            "I2(3): R_{1,s121} = -1 + 2z - 2z^2 + z^3, not -1 + 3z - 3z^2 + z^3",
            "I2(4): R_{1,s121} = -1 + 2z - 2z^2 + z^3, not -1 + 3z - 3z^2 + z^3",
            "I2(4): R_{1,s212} = -1 + 2z - 2z^2 + z^3, not -1 + 3z - 3z^2 + z^3",
            "I2(4): R_{1,s1212} = 1 - 2z + 2z^2 - 2z^3 + z^4, not 1 - 4z + 6z^2 - 4z^3 + z^4",
            "I2(4): R_{s1,s1212} = -1 + 2z - 2z^2 + z^3, not -1 + 3z - 3z^2 + z^3",
            "I2(4): R_{s2,s1212} = -1 + 2z - 2z^2 + z^3, not -1 + 3z - 3z^2 + z^3",
        ],
    ),
];

fn main() -> ExitCode {
    let mut broken = Vec::new();
    for id in 1..=9 {
        let r = run_criterion(id);
        println!("{}", r.line());
        if !r.failures.is_empty() {
            broken.push(format!("criterion {id} has failures"));
        }
        let known: &[&str] = KNOWN_CONTRADICTIONS.iter().find(|(k, _)| *k == id).map_or(&[], |(_, v)| v);
        if r.contradictions != known {
            broken.push(format!("criterion {id}: contradictions {:?} differ from the recorded set", r.contradictions));
        }
    }
    if broken.is_empty() {
        println!("acceptance: all criteria PASS except the recorded contradictions in 6 and 7");
        ExitCode::SUCCESS
    } else {
        for b in &broken {
            println!("acceptance error: {b}");
        }
        ExitCode::FAILURE
    }
}
