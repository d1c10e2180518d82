//! The cross-module invariant suite behind `bimono verify`.

use std::sync::Arc;

use bimono::clt::{clt_limit, fock_pattern_moment, singleton_vanishing_check, CovarianceSpec};
use bimono::fock::{
    additivity_check, adjointness_check, gram_is_psd, independence_check, moment, reachable_states,
    single_interval_alphabet, stationarity_check, Grid, IntervalOp, OpKind,
};
use bimono::numbers::{factorial, odd_double_factorial, rational, rational_from_int, Rational};
use bimono::partitions::{
    count_bimonotone_all, count_bimonotone_pp, verify_decomposition_identity, Face, Pattern,
};
use bimono::products::{self, samples, ProductRep};
use bimono::spectrum::quadrature;
use num_bigint::{BigInt, BigUint};
use rayon::prelude::*;
use serde::Serialize;

use crate::{CliError, Format};

#[derive(Serialize)]
struct CheckResult {
    name: &'static str,
    passed: bool,
    detail: String,
}

type Check = (
    &'static str,
    Box<dyn Fn(bool) -> Result<(bool, String), String> + Send + Sync>,
);

fn to_rational(n: BigUint) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

fn checks() -> Vec<Check> {
    vec![
        (
            "count_equals_sum_over_patterns",
            Box::new(|t| {
                let max = if t { 5 } else { 4 };
                let ok = (0..=max).all(|n| {
                    count_bimonotone_all(n)
                        == Pattern::all(2 * n)
                            .map(|p| count_bimonotone_pp(&p))
                            .sum::<BigUint>()
                });
                Ok((ok, format!("n <= {max}")))
            }),
        ),
        (
            "operator_route_counts",
            Box::new(|t| {
                let max = if t { 6 } else { 4 };
                let grid = Arc::new(Grid::unit(1));
                for n in 0..=max {
                    let word = vec![IntervalOp::new(OpKind::Field, 1, 1); 2 * n];
                    let value = moment(&grid, &word).map_err(|e| e.to_string())?;
                    if value * to_rational(factorial(n as u64))
                        != to_rational(count_bimonotone_all(n))
                    {
                        return Ok((false, format!("mismatch at n = {n}")));
                    }
                }
                Ok((true, format!("n <= {max}")))
            }),
        ),
        (
            "per_pattern_moments",
            Box::new(|t| {
                let max = if t { 8 } else { 6 };
                for m in (0..=max).step_by(2) {
                    for p in Pattern::all(m) {
                        let expected = to_rational(count_bimonotone_pp(&p))
                            / to_rational(factorial((m / 2) as u64));
                        if fock_pattern_moment(&p).map_err(|e| e.to_string())? != expected {
                            return Ok((false, format!("pattern {p}")));
                        }
                    }
                }
                Ok((true, format!("|pattern| <= {max}")))
            }),
        ),
        (
            "double_factorial_bound",
            Box::new(|t| {
                let max = if t { 4 } else { 3 };
                let constant = (0..=5).all(|n| {
                    Face::BOTH.iter().all(|&f| {
                        count_bimonotone_pp(&Pattern::constant(f, 2 * n))
                            == odd_double_factorial(n as u64)
                    })
                });
                let bound = (0..=max).all(|n| {
                    Pattern::all(2 * n)
                        .all(|p| count_bimonotone_pp(&p) <= odd_double_factorial(n as u64))
                });
                Ok((
                    constant && bound,
                    format!("constant patterns n <= 5, bound n <= {max}"),
                ))
            }),
        ),
        (
            "decomposition_identity",
            Box::new(|t| {
                let max = if t { 8 } else { 6 };
                let ok = (0..=max)
                    .step_by(2)
                    .all(|m| Pattern::all(m).all(|p| verify_decomposition_identity(&p)));
                Ok((ok, format!("|pattern| <= {max}")))
            }),
        ),
        (
            "fock_adjointness",
            Box::new(|t| {
                let len = if t { 5 } else { 3 };
                let grid = Arc::new(
                    Grid::new(vec![
                        rational_from_int(0),
                        rational(1, 2),
                        rational_from_int(1),
                    ])
                    .unwrap(),
                );
                let ok = [(1, 1), (1, 2), (2, 2)]
                    .iter()
                    .map(|&(a, b)| adjointness_check(&grid, a, b, len))
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(|e| e.to_string())?
                    .into_iter()
                    .all(|x| x);
                Ok((ok, format!("states from words <= {len}")))
            }),
        ),
        (
            "fock_additivity",
            Box::new(|t| {
                let len = if t { 3 } else { 2 };
                let grid = Grid::new(vec![
                    rational_from_int(0),
                    rational(1, 2),
                    rational_from_int(1),
                    rational_from_int(2),
                ])
                .unwrap();
                let ok = additivity_check(&Arc::new(grid), len).map_err(|e| e.to_string())?;
                Ok((ok, format!("states from words <= {len}")))
            }),
        ),
        (
            "fock_stationarity",
            Box::new(|t| {
                let (fields, ladder) = if t { (6, 4) } else { (4, 3) };
                let offsets = [rational(1, 3), rational_from_int(2), rational(-5, 7)];
                let ok = stationarity_check(&rational_from_int(1), &offsets, fields, ladder)
                    .map_err(|e| e.to_string())?
                    && stationarity_check(&rational(2, 3), &offsets, fields.min(4), ladder.min(3))
                        .map_err(|e| e.to_string())?;
                Ok((
                    ok,
                    format!("field words <= {fields}, ladder words <= {ladder}, 3 offsets"),
                ))
            }),
        ),
        (
            "fock_positivity",
            Box::new(|_| {
                let grid = Arc::new(Grid::unit(2));
                let states = reachable_states(&grid, &single_interval_alphabet(&grid), 3)
                    .map_err(|e| e.to_string())?;
                let ok = gram_is_psd(&states).map_err(|e| e.to_string())?;
                Ok((ok, format!("{} states", states.len())))
            }),
        ),
        (
            "fock_parity",
            Box::new(|t| {
                let max = if t { 7 } else { 5 };
                let grid = Arc::new(Grid::unit(1));
                for m in (1..=max).step_by(2) {
                    for p in Pattern::all(m) {
                        let word: Vec<IntervalOp> = p
                            .faces()
                            .iter()
                            .map(|&f| IntervalOp::new(OpKind::field(f), 1, 1))
                            .collect();
                        if moment(&grid, &word).map_err(|e| e.to_string())? != rational_from_int(0)
                        {
                            return Ok((false, format!("pattern {p}")));
                        }
                    }
                }
                Ok((true, format!("odd lengths <= {max}")))
            }),
        ),
        (
            "independence_of_increments",
            Box::new(|t| {
                let (fields, ladder) = if t { (6, 4) } else { (4, 3) };
                let report = independence_check(fields, ladder).map_err(|e| e.to_string())?;
                Ok((
                    report.passed(),
                    format!("{} words, {} failures", report.words, report.failures.len()),
                ))
            }),
        ),
        (
            "product_marginals",
            Box::new(|t| {
                let len = if t { 5 } else { 4 };
                let prod =
                    ProductRep::new(vec![samples::qubit(), samples::skewed(), samples::qutrit()]);
                let ok =
                    products::marginal_restoration_check(&prod, len).map_err(|e| e.to_string())?;
                Ok((ok, format!("words <= {len}")))
            }),
        ),
        (
            "product_associativity",
            Box::new(|t| {
                let len = if t { 4 } else { 3 };
                let a = products::associativity_check(
                    &[samples::qubit(), samples::skewed(), samples::qubit_b()],
                    len,
                )
                .map_err(|e| e.to_string())?;
                let b = products::associativity_check(
                    &[samples::qubit(), samples::qutrit(), samples::qubit_b()],
                    3,
                )
                .map_err(|e| e.to_string())?;
                Ok((
                    a && b,
                    format!("2x2 reps words <= {len}, (2,3,2) reps words <= 3"),
                ))
            }),
        ),
        (
            "product_state_property",
            Box::new(|t| {
                let len = if t { 3 } else { 2 };
                let prod = ProductRep::new(vec![samples::qubit(), samples::qubit_b()]);
                let ok = products::gram_is_psd(&prod, len).map_err(|e| e.to_string())?;
                Ok((ok, format!("words <= {len}")))
            }),
        ),
        (
            "product_vanishing_and_factorization",
            Box::new(|t| {
                let len = if t { 6 } else { 5 };
                let report = products::factorization_check(
                    &[samples::qubit(), samples::qutrit(), samples::qubit_b()],
                    3,
                    len,
                )
                .map_err(|e| e.to_string())?;
                Ok((
                    report.passed(),
                    format!(
                        "{} vanishing, {} factorization cases, letters <= {len}",
                        report.vanishing_cases, report.factorization_cases
                    ),
                ))
            }),
        ),
        (
            "clt_limit_matches_fock",
            Box::new(|t| {
                let max = if t { 8 } else { 6 };
                let ones = CovarianceSpec::ones();
                for m in 0..=max {
                    for p in Pattern::all(m) {
                        if clt_limit(&p, &ones)
                            != fock_pattern_moment(&p).map_err(|e| e.to_string())?
                        {
                            return Ok((false, format!("pattern {p}")));
                        }
                    }
                }
                Ok((true, format!("|pattern| <= {max}")))
            }),
        ),
        (
            "singleton_and_spreadability",
            Box::new(|t| {
                let len = if t { 4 } else { 3 };
                let pair = products::standard_pair_rep(&CovarianceSpec::ones().matrix())
                    .map_err(|e| e.to_string())?;
                let ok = singleton_vanishing_check(&pair, len).map_err(|e| e.to_string())?
                    && singleton_vanishing_check(&samples::qubit(), len.min(3))
                        .map_err(|e| e.to_string())?;
                Ok((ok, format!("words <= {len}, N = 5")))
            }),
        ),
        (
            "spectrum_reconstruction",
            Box::new(|_| {
                let grid = Arc::new(Grid::unit(1));
                let mut worst: f64 = 0.0;
                for kind in [OpKind::LeftField, OpKind::RightField, OpKind::Field] {
                    let moments: Vec<Rational> = (0..12)
                        .map(|k| moment(&grid, &vec![IntervalOp::new(kind, 1, 1); k]))
                        .collect::<Result<_, _>>()
                        .map_err(|e| e.to_string())?;
                    let q = quadrature(&moments, 6).map_err(|e| e.to_string())?;
                    worst = worst.max(q.max_relative_error(&moments[..11]));
                }
                Ok((worst < 1e-9, format!("max relative error {worst:e}")))
            }),
        ),
    ]
}

pub fn run(format: Format, thorough: bool) -> Result<(String, bool), CliError> {
    let results: Vec<CheckResult> = checks()
        .into_par_iter()
        .map(|(name, check)| match check(thorough) {
            Ok((passed, detail)) => CheckResult {
                name,
                passed,
                detail,
            },
            Err(e) => CheckResult {
                name,
                passed: false,
                detail: format!("error: {e}"),
            },
        })
        .collect();
    let passed = results.iter().all(|r| r.passed);
    let text = match format {
        Format::Json => serde_json::to_string_pretty(
            &serde_json::json!({ "passed": passed, "checks": results }),
        )
        .expect("json"),
        Format::Csv => {
            let mut out = String::from("check,passed,detail\n");
            for r in &results {
                out.push_str(&format!("{},{},\"{}\"\n", r.name, r.passed, r.detail));
            }
            out
        }
        Format::Text => results
            .iter()
            .map(|r| {
                format!(
                    "{:<32} {}  {}\n",
                    r.name,
                    if r.passed { "ok  " } else { "FAIL" },
                    r.detail
                )
            })
            .collect(),
    };
    Ok((text, passed))
}
