//! Regression cases with known answers, each tagged with where it comes from.

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::ampleness::{ample_two_periodic, limit_product, three_periodic_ample};
use crate::arith::QuadNum;
use crate::classify::{classify_theta, rank_solutions, realizable, small_d_reduce, Realizability};
use crate::hilbert::hilbert_table;
use crate::json::BigIntJson;
use crate::ops::same_numerical_class;
use crate::seed::{ExtendVerdict, Seed};
use crate::theta::Theta;

const BUILTIN: &str = include_str!("corpus.json");

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorpusCase {
    pub id: String,
    pub citation: String,
    #[serde(flatten)]
    pub expect: Expectation,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Expectation {
    Theta {
        seed: Seed,
        #[serde(with = "theta_str")]
        theta: Theta,
    },
    Extend {
        seed: Seed,
        verdict: ExtendVerdict,
    },
    Invariants {
        seed: Seed,
        d: BigIntJson,
        #[serde(rename = "D")]
        big_d: BigIntJson,
    },
    Window {
        seed: Seed,
        n: i64,
        rank: BigIntJson,
        degree: BigIntJson,
    },
    Classes {
        d: BigIntJson,
        #[serde(with = "theta_str")]
        theta: Theta,
        count: usize,
    },
    RankOrbits {
        d: BigIntJson,
        #[serde(rename = "D")]
        big_d: BigIntJson,
        reps: Vec<[BigIntJson; 2]>,
    },
    SmallD {
        d: BigIntJson,
        #[serde(rename = "D")]
        big_d: BigIntJson,
        ys: Vec<BigIntJson>,
    },
    Realizable {
        d: BigIntJson,
        r: [BigIntJson; 2],
        verdict: Realizability,
    },
    Equiv {
        a: Seed,
        b: Seed,
        allow_dual: bool,
        same: bool,
    },
    Ample {
        seed: Seed,
    },
    ThreePeriodic {
        d: BigIntJson,
    },
    HilbertRow {
        seed: Seed,
        row: usize,
        values: Vec<BigIntJson>,
    },
}

mod theta_str {
    use super::*;

    pub fn serialize<S: Serializer>(t: &Theta, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&t.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Theta, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

pub fn builtin_cases() -> Vec<CorpusCase> {
    serde_json::from_str(BUILTIN).expect("embedded corpus is valid")
}

pub fn parse_cases(json: &str) -> serde_json::Result<Vec<CorpusCase>> {
    serde_json::from_str(json)
}

impl CorpusCase {
    pub fn matches(&self, filter: &str) -> bool {
        self.id.contains(filter) || self.citation.contains(filter)
    }

    /// Every seed mentioned by the case.
    pub fn seeds(&self) -> Vec<&Seed> {
        use Expectation::*;
        match &self.expect {
            Theta { seed, .. }
            | Extend { seed, .. }
            | Invariants { seed, .. }
            | Window { seed, .. }
            | Ample { seed }
            | HilbertRow { seed, .. } => vec![seed],
            Equiv { a, b, .. } => vec![a, b],
            Classes { .. } | RankOrbits { .. } | SmallD { .. } | Realizable { .. } | ThreePeriodic { .. } => vec![],
        }
    }

    /// `Ok(())` when the library reproduces the expectation, else a description
    /// of the mismatch.
    pub fn check(&self) -> Result<(), String> {
        use Expectation as E;
        let err = |e: crate::error::Error| e.to_string();
        let differ = |what: &str, want: String, got: String| {
            if want == got {
                Ok(())
            } else {
                Err(format!("{what}: expected {want}, got {got}"))
            }
        };
        match &self.expect {
            E::Theta { seed, theta } => differ("theta", theta.to_string(), seed.theta().map_err(err)?.to_string()),
            E::Extend { seed, verdict } => differ("verdict", format!("{verdict:?}"), format!("{:?}", seed.extendable())),
            E::Invariants { seed, d, big_d } => {
                differ("d", d.0.to_string(), seed.det().to_string())?;
                differ("D", big_d.0.to_string(), seed.big_d().to_string())
            }
            E::Window { seed, n, rank, degree } => {
                let t = seed.rank_deg_window(*n, *n).map_err(err)?.remove(0);
                differ("(rank, degree)", format!("({}, {})", rank.0, degree.0), format!("({}, {})", t.rank, t.degree))
            }
            E::Classes { d, theta, count } => {
                let report = classify_theta(&d.0, theta).map_err(err)?;
                differ("class count", count.to_string(), report.count.to_string())
            }
            E::RankOrbits { d, big_d, reps } => {
                let got: Vec<String> = rank_solutions(&d.0, &big_d.0)
                    .map_err(err)?
                    .iter()
                    .map(|o| format!("({}, {})", o.rep.0, o.rep.1))
                    .collect();
                let want: Vec<String> = reps.iter().map(|[a, b]| format!("({}, {})", a.0, b.0)).collect();
                differ("orbits", want.join(" "), got.join(" "))
            }
            E::SmallD { d, big_d, ys } => {
                let got: Vec<String> = small_d_reduce(&d.0, &big_d.0).map_err(err)?.iter().map(|y| y.to_string()).collect();
                let want: Vec<String> = ys.iter().map(|y| y.0.to_string()).collect();
                differ("y values", want.join(" "), got.join(" "))
            }
            E::Realizable { d, r: [a, b], verdict } => {
                differ("realizability", format!("{verdict:?}"), format!("{:?}", realizable(&d.0, &a.0, &b.0)))
            }
            E::Equiv { a, b, allow_dual, same } => {
                let got = same_numerical_class(a, b, *allow_dual).map_err(err)?.witness().is_some();
                differ("same class", same.to_string(), got.to_string())
            }
            E::Ample { seed } => {
                differ("ample", "true".into(), ample_two_periodic(seed).map_err(err)?.to_string())?;
                let margin = limit_product(seed).map_err(err)?.checked_sub(&QuadNum::from_int(1)).map_err(|e| e.to_string())?;
                differ("limit product exceeds 1", "true".into(), (margin.signum() > 0).to_string())
            }
            E::ThreePeriodic { d } => differ("ample", "true".into(), three_periodic_ample(&d.0).map_err(err)?.to_string()),
            E::HilbertRow { seed, row, values } => {
                let size = values.len() + row - 1;
                let table = hilbert_table(seed, size).map_err(err)?;
                let got: Vec<String> = (*row..=size).map(|j| table.get(*row, j).unwrap_or_default().to_string()).collect();
                let want: Vec<String> = values.iter().map(|v| v.0.to_string()).collect();
                differ("row", want.join(" "), got.join(" "))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CaseOutcome {
    pub id: String,
    pub citation: String,
    pub failure: Option<String>,
}

/// Runs the cases and reports outcomes ordered by id.
pub fn run_cases(cases: &[CorpusCase]) -> Vec<CaseOutcome> {
    let mut out: Vec<CaseOutcome> = cases
        .iter()
        .map(|c| CaseOutcome { id: c.id.clone(), citation: c.citation.clone(), failure: c.check().err() })
        .collect();
    out.sort_by(|a, b| a.id.cmp(&b.id));
    out
}
