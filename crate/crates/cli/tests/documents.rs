use serde_json::Value;

use cubulator::bruhat::BruhatInterval;
use cubulator::constructions::{atilde2_cubulation, path_forest_cubulation};
use cubulator::kl::{KlScope, KlTable};
use cubulator::search::{cubulate, verify_certificate, SearchOptions};
use cubulator::CoxeterSystem;
use cubulator_cli::io;
use cubulator_cli::job::JobSpec;
use cubulator_cli::oracles::{kl_by_linear_solve, pairwise_bruhat_edges, RecursiveR};

fn sys(d: &str) -> CoxeterSystem {
    CoxeterSystem::build(d).unwrap()
}

fn job(text: &str) -> String {
    JobSpec::from_json(text).unwrap().run().unwrap().body
}

#[test]
fn certificate_round_trip() {
    let b3 = sys("B3");
    let w0 = b3.longest_element().unwrap();
    let iv = BruhatInterval::new(&b3, &w0).unwrap();
    let out = cubulate(&b3, &iv, &SearchOptions::default()).unwrap();
    let text = io::to_pretty(&io::outcome_json(&b3, &iv, &out));
    let (s, iv2, cert) = io::load_certificate(&serde_json::from_str(&text).unwrap()).unwrap();
    assert!(verify_certificate(&s, &iv2, &cert).is_valid());
    assert_eq!(cert.lattice.params(), [1, 3, 5]);

    let at2 = sys("Atilde2");
    let r = atilde2_cubulation(&at2, 3).unwrap();
    let v = io::construction_json(&at2, &r);
    assert_eq!(v["provenance"], "atilde2");
    let (s, iv2, cert) = io::load_certificate(&v).unwrap();
    assert!(verify_certificate(&s, &iv2, &cert).is_valid());
}

#[test]
fn tampered_certificate_is_caught() {
    let a3 = sys("A3");
    let r = path_forest_cubulation(&a3).unwrap();
    let mut v = io::construction_json(&a3, &r);
    let rows = v["assignment"].as_array_mut().unwrap();
    let (a, b) = (rows[1]["word"].clone(), rows[2]["word"].clone());
    rows[1]["word"] = b;
    rows[2]["word"] = a;
    let (s, iv, cert) = io::load_certificate(&v).unwrap();
    assert!(!verify_certificate(&s, &iv, &cert).is_valid());
}

#[test]
fn output_is_byte_stable() {
    for spec in [
        r#"{"command": "cubulate", "system": "D4", "element": "w0"}"#,
        r#"{"command": "kl", "system": "A3", "word": [2, 1, 3, 2]}"#,
        r#"{"command": "interval", "system": "Atilde2", "element": "y_m:2"}"#,
        r#"{"command": "growth", "system": "Gtilde2", "radius": 8}"#,
    ] {
        assert_eq!(job(spec), job(spec), "{spec}");
    }
}

#[test]
fn dot_edges() {
    let dot = job(r#"{"command": "interval", "system": "A2", "element": "w0", "format": "dot"}"#);
    assert_eq!(dot.lines().filter(|l| l.contains("->")).count(), 9);
    assert_eq!(dot.lines().filter(|l| l.contains("[label=") && !l.contains("->")).count(), 6);
}

#[test]
fn explicit_matrix_system() {
    let body = job(r#"{"command": "interval", "system": "[[1,3,2],[3,1,3],[2,3,1]]", "element": "w0"}"#);
    let v: Value = serde_json::from_str(&body).unwrap();
    assert_eq!(v["vertices"].as_array().unwrap().len(), 24);
}

#[test]
fn interval_edges_match_pairwise_oracle() {
    for (d, len) in [("A3", 6), ("B3", 9), ("Atilde2", 6), ("H3", 5)] {
        let s = sys(d);
        for y in s.ball(len).into_iter().flatten() {
            let iv = BruhatInterval::new(&s, &y).unwrap();
            let mut ours: Vec<(u32, u32)> = iv.bruhat_edges().iter().map(|e| (e.from, e.to)).collect();
            ours.sort_unstable();
            let mut theirs = pairwise_bruhat_edges(&s, &iv);
            theirs.sort_unstable();
            assert_eq!(ours, theirs, "{d} {}", s.format(&y));
        }
    }
}

#[test]
fn kl_matches_linear_solve() {
    for (d, len) in [("A3", 6), ("B3", 6), ("Atilde2", 7)] {
        let s = sys(d);
        for y in s.ball(len).into_iter().flatten() {
            let iv = BruhatInterval::new(&s, &y).unwrap();
            let t = KlTable::new(&iv, KlScope::Top).unwrap();
            let sol = kl_by_linear_solve(&s, &iv).unwrap();
            for x in 0..iv.len() as u32 {
                assert_eq!(t.p(x, iv.top_id()).unwrap(), sol[x as usize], "{d} {}", s.format(&y));
            }
        }
    }
}

#[test]
fn r_matches_recursion_oracle() {
    let s = sys("A3");
    let w0 = s.longest_element().unwrap();
    let iv = BruhatInterval::new(&s, &w0).unwrap();
    let t = KlTable::new(&iv, KlScope::Full).unwrap();
    let mut rr = RecursiveR::new(&s);
    for w in 0..iv.len() as u32 {
        for x in 0..iv.len() as u32 {
            assert_eq!(t.r(x, w), rr.r(iv.vertex(x), iv.vertex(w)));
        }
    }
}
