//! Validated job descriptions and their execution.

use std::path::PathBuf;

use anyhow::{anyhow, bail, Context, Result};
use serde::{Deserialize, Serialize};

use cubulator::bruhat::BruhatInterval;
use cubulator::constructions::{
    atilde2_cubulation, dihedral_cubulation, path_forest_cubulation, standard_parabolic_coxeter_cubulation, y_m,
};
use cubulator::growth::{ball_sizes, bott_truncation_for, growth_quantum_probe, poincare_truncation};
use cubulator::kl::{carrell_peterson_report, KlScope, KlTable};
use cubulator::search::{cubulate, SearchOptions, SearchStatus};
use cubulator::{CoxeterSystem, Element};

use crate::io;
use crate::suite;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    Interval,
    Kl,
    Cubulate,
    Construct,
    Growth,
    Suite,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Dot,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobSpec {
    pub command: Option<Command>,
    pub system: Option<String>,
    /// `w0`, `y_m:K` or `1`.
    pub element: Option<String>,
    pub word: Option<Vec<i64>>,
    /// Node expansions for this run, `None` for unlimited.
    pub budget: Option<u64>,
    pub workers: Option<usize>,
    pub format: Option<Format>,
    pub out: Option<PathBuf>,
    pub checkpoint: Option<PathBuf>,
    /// Construction tag: boolean, dihedral, nff, atilde2.
    pub tag: Option<String>,
    pub m: Option<u32>,
    pub radius: Option<usize>,
    pub suite: Option<String>,
    /// KL table over every pair instead of pairs below the top.
    pub full: Option<bool>,
}

/// Result of running a job: the document and the process exit code.
pub struct JobOutput {
    pub body: String,
    pub exit_code: i32,
}

/// Accepts `1000`, `10^9` and `1e9`.
pub fn parse_budget(s: &str) -> Result<u64> {
    let s = s.trim();
    let v = if let Some((b, e)) = s.split_once('^') {
        let b: u64 = b.trim().parse().context("budget base")?;
        let e: u32 = e.trim().parse().context("budget exponent")?;
        b.checked_pow(e).ok_or_else(|| anyhow!("budget {s} overflows"))?
    } else if let Some((m, e)) = s.split_once(['e', 'E']) {
        let m: u64 = m.trim().parse().context("budget mantissa")?;
        let e: u32 = e.trim().parse().context("budget exponent")?;
        10u64.checked_pow(e).and_then(|p| p.checked_mul(m)).ok_or_else(|| anyhow!("budget {s} overflows"))?
    } else {
        s.parse().context("budget must be a positive integer, 10^k or 1ek")?
    };
    if v == 0 {
        bail!("budget must be positive");
    }
    Ok(v)
}

/// Accepts labels separated by spaces and/or commas.
pub fn parse_word(s: &str) -> Result<Vec<i64>> {
    s.split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<i64>().with_context(|| format!("bad generator label {t:?}")))
        .collect()
}

impl JobSpec {
    pub fn from_json(text: &str) -> Result<JobSpec> {
        let job: JobSpec = serde_json::from_str(text).context("invalid job file")?;
        job.validate()?;
        Ok(job)
    }

    pub fn validate(&self) -> Result<()> {
        let cmd = self.command.ok_or_else(|| anyhow!("job has no command"))?;
        if self.element.is_some() && self.word.is_some() {
            bail!("give either an element or a word, not both");
        }
        if self.workers == Some(0) {
            bail!("workers must be at least 1");
        }
        if self.budget == Some(0) {
            bail!("budget must be positive");
        }
        let needs_system = cmd != Command::Suite;
        if needs_system && self.system.is_none() {
            bail!("missing system");
        }
        match cmd {
            Command::Interval | Command::Kl | Command::Cubulate => {
                if self.element.is_none() && self.word.is_none() {
                    bail!("missing element or word");
                }
            }
            Command::Construct => {
                let tag = self.tag.as_deref().ok_or_else(|| anyhow!("missing construction tag"))?;
                match tag {
                    "boolean" | "dihedral" => {
                        if self.element.is_none() && self.word.is_none() {
                            bail!("{tag} construction needs an element or word");
                        }
                    }
                    "nff" => {}
                    "atilde2" => {
                        if self.m.is_none() && self.element.is_none() {
                            bail!("atilde2 construction needs m");
                        }
                    }
                    other => bail!("unknown construction tag {other:?}"),
                }
            }
            Command::Growth => {}
            Command::Suite => {
                let name = self.suite.as_deref().ok_or_else(|| anyhow!("missing suite name"))?;
                if !suite::SUITES.contains(&name) {
                    bail!("unknown suite {name:?}; expected one of {:?}", suite::SUITES);
                }
            }
        }
        if self.format == Some(Format::Dot) && cmd != Command::Interval {
            bail!("DOT output is only available for intervals");
        }
        Ok(())
    }

    fn system(&self) -> Result<CoxeterSystem> {
        Ok(CoxeterSystem::build(self.system.as_deref().unwrap_or_default())?)
    }

    fn element(&self, sys: &CoxeterSystem) -> Result<Element> {
        if let Some(w) = &self.word {
            return Ok(sys.element(w)?);
        }
        resolve_element(sys, self.element.as_deref().unwrap_or("1"))
    }

    pub fn run(&self) -> Result<JobOutput> {
        self.validate()?;
        let ok = |body: String| Ok(JobOutput { body, exit_code: 0 });
        match self.command.unwrap() {
            Command::Interval => {
                let sys = self.system()?;
                let iv = BruhatInterval::new(&sys, &self.element(&sys)?)?;
                match self.format.unwrap_or_default() {
                    Format::Json => ok(io::to_pretty(&io::interval_json(&sys, &iv))),
                    Format::Dot => ok(io::interval_dot(&sys, &iv)),
                }
            }
            Command::Kl => {
                let sys = self.system()?;
                let iv = BruhatInterval::new(&sys, &self.element(&sys)?)?;
                let scope = if self.full.unwrap_or(false) { KlScope::Full } else { KlScope::Top };
                let table = KlTable::new(&iv, scope)?;
                let report = carrell_peterson_report(&iv, &table)?;
                ok(io::to_pretty(&io::kl_json(&sys, &iv, &table, &report)))
            }
            Command::Cubulate => self.run_cubulate(),
            Command::Construct => {
                let sys = self.system()?;
                let r = match self.tag.as_deref().unwrap() {
                    "boolean" => standard_parabolic_coxeter_cubulation(&sys, &self.element(&sys)?)?,
                    "dihedral" => dihedral_cubulation(&sys, &self.element(&sys)?)?,
                    "nff" => path_forest_cubulation(&sys)?,
                    _ => {
                        let m = match self.m {
                            Some(m) => m,
                            None => y_index(self.element.as_deref().unwrap())?,
                        };
                        atilde2_cubulation(&sys, m)?
                    }
                };
                ok(io::to_pretty(&io::construction_json(&sys, &r)))
            }
            Command::Growth => {
                let sys = self.system()?;
                let r = self.radius.unwrap_or(10);
                let bott = bott_truncation_for(&sys, r).ok();
                let probe = growth_quantum_probe(&sys, r).ok();
                let doc = io::growth_json(
                    &sys,
                    r,
                    &ball_sizes(&sys, r),
                    &poincare_truncation(&sys, r),
                    bott.as_ref(),
                    probe.as_ref(),
                );
                ok(io::to_pretty(&doc))
            }
            Command::Suite => {
                let report = suite::run_suite(self.suite.as_deref().unwrap())?;
                let code = if report.passed() { 0 } else { 1 };
                Ok(JobOutput { body: io::to_pretty(&report.to_json()), exit_code: code })
            }
        }
    }

    fn run_cubulate(&self) -> Result<JobOutput> {
        let mut resume = None;
        let (sys, y) = match self.checkpoint.as_ref().filter(|p| p.exists()) {
            Some(path) => {
                let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
                let (sys, top, cp) = io::load_checkpoint(&serde_json::from_str(&text)?)?;
                let wanted = self.system()?;
                if sys.coxeter_matrix() != wanted.coxeter_matrix() || sys.labels(&top) != wanted.labels(&self.element(&wanted)?) {
                    bail!("checkpoint {} belongs to a different job", path.display());
                }
                resume = Some(cp);
                (sys, top)
            }
            None => {
                let sys = self.system()?;
                let y = self.element(&sys)?;
                (sys, y)
            }
        };
        let iv = BruhatInterval::new(&sys, &y)?;
        // on the command line the budget is this run's allowance, so add what
        // the checkpoint already spent
        let prior = resume.as_ref().map_or(0, |cp| cp.stats.budget_used);
        let budget = self.budget.map(|b| b.saturating_add(prior));
        let opts = SearchOptions { budget, workers: self.workers.unwrap_or(1), resume };
        let out = cubulate(&sys, &iv, &opts)?;
        eprintln!(
            "cubulate {} {}: {:?} after {} nodes in {} ms",
            sys.name(),
            sys.format(&y),
            out.status,
            out.stats.nodes,
            out.stats.wall_ms
        );
        if let (Some(path), Some(cp)) = (&self.checkpoint, &out.checkpoint) {
            std::fs::write(path, io::to_pretty(&io::checkpoint_json(&sys, &y, cp)))
                .with_context(|| format!("writing {}", path.display()))?;
        }
        let code = match out.status {
            SearchStatus::Found => 0,
            SearchStatus::Exhausted => 1,
            SearchStatus::BudgetExceeded => 3,
        };
        Ok(JobOutput { body: io::to_pretty(&io::outcome_json(&sys, &iv, &out)), exit_code: code })
    }
}

fn y_index(name: &str) -> Result<u32> {
    name.strip_prefix("y_m:")
        .ok_or_else(|| anyhow!("expected y_m:K, got {name:?}"))?
        .parse()
        .context("bad index in y_m:K")
}

/// `w0`, `y_m:K`, `1` (identity), or a label word such as `"2 1 3 2"`.
pub fn resolve_element(sys: &CoxeterSystem, name: &str) -> Result<Element> {
    match name.trim() {
        "w0" => Ok(sys.longest_element()?),
        "1" | "e" | "id" | "" => Ok(sys.identity()),
        n if n.starts_with("y_m:") => Ok(y_m(sys, y_index(n)?)?),
        n => Ok(sys.element(&parse_word(n)?)?),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn budgets() {
        assert_eq!(parse_budget("10^9").unwrap(), 1_000_000_000);
        assert_eq!(parse_budget("5e3").unwrap(), 5000);
        assert_eq!(parse_budget("42").unwrap(), 42);
        assert!(parse_budget("0").is_err());
        assert!(parse_budget("10^30").is_err());
    }

    #[test]
    fn unknown_fields_rejected() {
        assert!(JobSpec::from_json(r#"{"command": "interval", "system": "A2", "element": "w0", "color": 1}"#).is_err());
        assert!(JobSpec::from_json(r#"{"command": "interval", "system": "A2", "element": "w0"}"#).is_ok());
        assert!(JobSpec::from_json(r#"{"command": "interval", "system": "A2"}"#).is_err());
        assert!(JobSpec::from_json(r#"{"command": "suite", "suite": "nope"}"#).is_err());
    }

    #[test]
    fn words() {
        assert_eq!(parse_word("2 1, 3 2").unwrap(), vec![2, 1, 3, 2]);
        assert!(parse_word("2 x").is_err());
    }
}
