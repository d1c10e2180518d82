//! Gaussian quadrature from a moment sequence.
//!
//! Moments go through the Chebyshev algorithm in exact arithmetic to the
//! three-term recurrence coefficients, the Jacobi matrix is diagonalized in
//! double precision, and nodes are polished by Newton steps on the
//! orthonormal polynomial.

use nalgebra::{DMatrix, SymmetricEigen};
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::numbers::{rational_to_f64, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpectrumError {
    #[error("at least one node is required")]
    NoNodes,
    #[error("{nodes} nodes need moments up to order {needed}, got {available}")]
    NotEnoughMoments {
        nodes: usize,
        needed: usize,
        available: usize,
    },
    #[error("the zeroth moment must be positive")]
    NonPositiveMass,
}

/// Recurrence coefficients `α_k`, `β_k` of the monic orthogonal polynomials,
/// `p_{k+1} = (x - α_k) p_k - β_k p_{k-1}`, with `β_0 = m_0`.
#[derive(Clone, Debug, PartialEq)]
pub struct Recurrence {
    pub alpha: Vec<Rational>,
    pub beta: Vec<Rational>,
}

/// Chebyshev algorithm on `moments[0..2n]`. Stops early, returning fewer
/// coefficients, when a Hankel minor is not positive.
pub fn recurrence_from_moments(
    moments: &[Rational],
    n: usize,
) -> Result<Recurrence, SpectrumError> {
    if n == 0 {
        return Err(SpectrumError::NoNodes);
    }
    if moments.len() < 2 * n {
        return Err(SpectrumError::NotEnoughMoments {
            nodes: n,
            needed: 2 * n - 1,
            available: moments.len().saturating_sub(1),
        });
    }
    if !moments[0].is_positive() {
        return Err(SpectrumError::NonPositiveMass);
    }
    let mut prev: Vec<Rational> = vec![Rational::zero(); 2 * n];
    let mut cur: Vec<Rational> = moments[..2 * n].to_vec();
    let mut alpha = vec![&moments[1] / &moments[0]];
    let mut beta = vec![moments[0].clone()];
    for k in 1..n {
        let mut next = vec![Rational::zero(); 2 * n];
        for l in k..2 * n - k {
            next[l] = &cur[l + 1] - &alpha[k - 1] * &cur[l] - &beta[k - 1] * &prev[l];
        }
        if !next[k].is_positive() {
            break;
        }
        alpha.push(&next[k + 1] / &next[k] - &cur[k] / &cur[k - 1]);
        beta.push(&next[k] / &cur[k - 1]);
        prev = cur;
        cur = next;
    }
    Ok(Recurrence { alpha, beta })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Quadrature {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub requested: usize,
    pub warnings: Vec<String>,
}

impl Quadrature {
    /// `Σ_j w_j x_j^k`.
    pub fn moment(&self, k: usize) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(x, w)| w * x.powi(k as i32))
            .sum()
    }

    /// Largest `|m_k - Σ w x^k| / max(1, |m_k|)` over the given moments.
    pub fn max_relative_error(&self, moments: &[Rational]) -> f64 {
        moments
            .iter()
            .enumerate()
            .map(|(k, m)| {
                let m = rational_to_f64(m);
                (self.moment(k) - m).abs() / m.abs().max(1.0)
            })
            .fold(0.0, f64::max)
    }
}

/// Orthonormal polynomial values `p_0(x) … p_n(x)` and `p_n'(x)`.
fn orthonormal(alpha: &[f64], sqrt_beta: &[f64], x: f64) -> (Vec<f64>, f64) {
    let n = alpha.len();
    let mut p = vec![0.0; n + 1];
    let mut dp = vec![0.0; n + 1];
    p[0] = 1.0 / sqrt_beta[0];
    for k in 0..n {
        let (pm, dpm) = if k == 0 {
            (0.0, 0.0)
        } else {
            (p[k - 1], dp[k - 1])
        };
        let back = if k == 0 { 0.0 } else { sqrt_beta[k] };
        let s = if k + 1 < n { sqrt_beta[k + 1] } else { 1.0 };
        p[k + 1] = ((x - alpha[k]) * p[k] - back * pm) / s;
        dp[k + 1] = (p[k] + (x - alpha[k]) * dp[k] - back * dpm) / s;
    }
    (p, dp[n])
}

/// `nodes`-point Gaussian quadrature for the moment sequence `moments`
/// (which must reach order `2 * nodes - 1`). When the Hankel matrix is
/// singular at some size the rule shrinks and a warning is recorded.
pub fn quadrature(moments: &[Rational], nodes: usize) -> Result<Quadrature, SpectrumError> {
    let rec = recurrence_from_moments(moments, nodes)?;
    let n = rec.alpha.len();
    let mut warnings = Vec::new();
    if n < nodes {
        warnings.push(format!(
            "Hankel minor of order {} is singular; using {n} nodes",
            n + 1
        ));
    }
    let alpha: Vec<f64> = rec.alpha.iter().map(rational_to_f64).collect();
    let sqrt_beta: Vec<f64> = rec.beta.iter().map(|b| rational_to_f64(b).sqrt()).collect();
    let jacobi = DMatrix::from_fn(n, n, |i, j| {
        if i == j {
            alpha[i]
        } else if i.abs_diff(j) == 1 {
            sqrt_beta[i.max(j)]
        } else {
            0.0
        }
    });
    let eigen = SymmetricEigen::new(jacobi);
    let mut rule: Vec<(f64, f64)> = (0..n)
        .map(|j| {
            let mut x = eigen.eigenvalues[j];
            for _ in 0..3 {
                let (p, dp) = orthonormal(&alpha, &sqrt_beta, x);
                if dp == 0.0 || !p[n].is_finite() {
                    break;
                }
                let step = p[n] / dp;
                x -= step;
                if step.abs() <= f64::EPSILON * x.abs().max(1.0) {
                    break;
                }
            }
            let (p, _) = orthonormal(&alpha, &sqrt_beta, x);
            let norm: f64 = p[..n].iter().map(|v| v * v).sum();
            (x, 1.0 / norm)
        })
        .collect();
    rule.sort_by(|a, b| a.0.total_cmp(&b.0));
    Ok(Quadrature {
        nodes: rule.iter().map(|r| r.0).collect(),
        weights: rule.iter().map(|r| r.1).collect(),
        requested: nodes,
        warnings,
    })
}
