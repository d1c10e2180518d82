//! The bi-monotone central limit theorem: the combinatorial limit, exact and
//! floating finite-`N` moments on products of identical pairs, and
//! convergence reports.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fock::{moment, FockError, Grid, IntervalOp, OpKind};
use crate::numbers::{
    factorial, format_rational, parse_rational, rational_string, rational_to_f64, Complex64,
    ExactComplex, Rational,
};
use crate::partitions::{for_each_bimonotone_pairing, Face, Pattern};
use crate::products::{
    standard_pair_rep, PointedRep, ProductError, ProductRep, Scalar, SummedLetter,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CltError {
    #[error(transparent)]
    Product(#[from] ProductError),
    #[error("N values must be nonempty, positive and strictly increasing")]
    BadNs,
    #[error("the pair has no generator on the {0} face")]
    MissingFace(char),
    #[error("moment {0} is not real")]
    ComplexMoment(String),
    #[error("N^({m}/2) is irrational for N = {n}; use the float backend")]
    IrrationalNormalization { n: usize, m: usize },
    #[error("invalid covariance `{0}`: expected `ll,lr,rr`")]
    BadCovariance(String),
}

/// Second moments `c_{p,q} = Φ(b^(p) b^(q))` of a pair, indexed by face.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CovarianceSpec {
    #[serde(with = "rational_string")]
    ll: Rational,
    #[serde(with = "rational_string")]
    lr: Rational,
    #[serde(with = "rational_string")]
    rr: Rational,
}

impl CovarianceSpec {
    pub fn new(ll: Rational, lr: Rational, rr: Rational) -> Self {
        CovarianceSpec { ll, lr, rr }
    }

    /// `c ≡ 1`.
    pub fn ones() -> Self {
        let one = Rational::from_integer(1.into());
        CovarianceSpec::new(one.clone(), one.clone(), one)
    }

    pub fn get(&self, p: Face, q: Face) -> &Rational {
        match (p, q) {
            (Face::Left, Face::Left) => &self.ll,
            (Face::Right, Face::Right) => &self.rr,
            _ => &self.lr,
        }
    }

    /// Row and column 0 are the left face.
    pub fn matrix(&self) -> [[Rational; 2]; 2] {
        [
            [self.ll.clone(), self.lr.clone()],
            [self.lr.clone(), self.rr.clone()],
        ]
    }

    /// Faces exchanged.
    pub fn swapped(&self) -> Self {
        CovarianceSpec::new(self.rr.clone(), self.lr.clone(), self.ll.clone())
    }
}

impl FromStr for CovarianceSpec {
    type Err = CltError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(',').collect();
        let bad = || CltError::BadCovariance(s.to_string());
        if parts.len() != 3 {
            return Err(bad());
        }
        let v: Vec<Rational> = parts
            .iter()
            .map(|p| parse_rational(p))
            .collect::<Result<_, _>>()
            .map_err(|_| bad())?;
        Ok(CovarianceSpec::new(
            v[0].clone(),
            v[1].clone(),
            v[2].clone(),
        ))
    }
}

impl fmt::Display for CovarianceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{},{},{}",
            format_rational(&self.ll),
            format_rational(&self.lr),
            format_rational(&self.rr)
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Backend {
    #[default]
    Exact,
    Float,
}

impl FromStr for Backend {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "exact" => Ok(Backend::Exact),
            "float" => Ok(Backend::Float),
            _ => Err(format!("unknown backend `{s}` (expected exact or float)")),
        }
    }
}

/// A moment value: exact rational (`"p/q"` in JSON) or a double.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Value {
    Exact(#[serde(with = "rational_string")] Rational),
    Float(f64),
}

impl Value {
    pub fn to_f64(&self) -> f64 {
        match self {
            Value::Exact(r) => rational_to_f64(r),
            Value::Float(x) => *x,
        }
    }

    /// `|self - limit|`, exact when `self` is exact.
    pub fn distance_to(&self, limit: &Rational) -> Value {
        match self {
            Value::Exact(r) => Value::Exact((r - limit).abs()),
            Value::Float(x) => Value::Float((x - rational_to_f64(limit)).abs()),
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Exact(r) => f.write_str(&format_rational(r)),
            Value::Float(x) => write!(f, "{x:e}"),
        }
    }
}

/// `(1/n!) Σ_{π ∈ PP_⋈(δ)} Π_{{k<l} ∈ π} c_{δ_k, δ_l}` for `|δ| = 2n`;
/// zero for odd lengths.
pub fn clt_limit(pattern: &Pattern, cov: &CovarianceSpec) -> Rational {
    if pattern.len() % 2 == 1 {
        return Rational::zero();
    }
    let faces = pattern.faces();
    let mut total = Rational::zero();
    for_each_bimonotone_pairing(pattern, |pairs, orders| {
        let weight = pairs.iter().fold(
            Rational::from_integer(BigInt::from(orders)),
            |acc, &(k, l)| acc * cov.get(faces[k], faces[l]),
        );
        total += weight;
    });
    let n = factorial((pattern.len() / 2) as u64);
    total / Rational::from_integer(BigInt::from(n))
}

fn pattern_symbols<'a>(pattern: &Pattern, pair: &'a PointedRep) -> Result<Vec<&'a str>, CltError> {
    pattern
        .faces()
        .iter()
        .map(|&face| {
            pair.symbol_for_face(face)
                .ok_or(CltError::MissingFace(face.as_char()))
        })
        .collect()
}

fn raw_moment<S: Scalar>(pattern: &Pattern, n: usize, pair: &PointedRep) -> Result<S, CltError> {
    let symbols = pattern_symbols(pattern, pair)?;
    let product = ProductRep::identical(pair.clone(), n);
    let ops: Vec<SummedLetter<S>> = symbols
        .iter()
        .map(|s| product.summed_letter(s))
        .collect::<Result<_, _>>()?;
    Ok(crate::products::summed_moment(&ops))
}

fn perfect_square_root(n: usize) -> Option<usize> {
    let r = (n as f64).sqrt().round() as usize;
    (r * r == n).then_some(r)
}

/// `Φ(S_N(b^(δ_1))/√N ⋯ S_N(b^(δ_m))/√N)` on the `N`-fold product of `pair`.
pub fn finite_n_moment(
    pattern: &Pattern,
    n: usize,
    pair: &PointedRep,
    backend: Backend,
) -> Result<Value, CltError> {
    if n == 0 {
        return Err(CltError::BadNs);
    }
    let m = pattern.len();
    match backend {
        Backend::Exact => {
            let raw: ExactComplex = raw_moment(pattern, n, pair)?;
            if !raw.im.is_zero() {
                return Err(CltError::ComplexMoment(crate::numbers::format_complex(
                    &raw,
                )));
            }
            if raw.re.is_zero() {
                return Ok(Value::Exact(Rational::zero()));
            }
            let mut scale =
                Rational::from_integer(BigInt::from(BigUint::from(n).pow((m / 2) as u32)));
            if m % 2 == 1 {
                let root =
                    perfect_square_root(n).ok_or(CltError::IrrationalNormalization { n, m })?;
                scale *= Rational::from_integer(BigInt::from(root));
            }
            Ok(Value::Exact(raw.re / scale))
        }
        Backend::Float => {
            let raw: Complex64 = raw_moment(pattern, n, pair)?;
            if raw.im.abs() > 1e-9 * raw.re.abs().max(1.0) {
                return Err(CltError::ComplexMoment(raw.to_string()));
            }
            Ok(Value::Float(raw.re / (n as f64).powf(m as f64 / 2.0)))
        }
    }
}

/// Order-preserving relabelling of indices onto `0..k`.
fn compress(indices: &[usize]) -> Vec<usize> {
    let mut distinct = indices.to_vec();
    distinct.sort_unstable();
    distinct.dedup();
    indices
        .iter()
        .map(|i| distinct.binary_search(i).expect("present"))
        .collect()
}

/// On the five-fold product of `pair`, checks for every word of length
/// `<= max_len` (all faces, all index maps) that moments with an index used
/// exactly once vanish and that moments only depend on the relative order of
/// the indices.
pub fn singleton_vanishing_check(pair: &PointedRep, max_len: usize) -> Result<bool, CltError> {
    const N: usize = 5;
    let product = ProductRep::identical(pair.clone(), N);
    let mut ok = true;
    for m in 1..=max_len {
        for pattern in Pattern::all(m) {
            let symbols = pattern_symbols(&pattern, pair)?;
            let mut seen: HashMap<Vec<usize>, ExactComplex> = HashMap::new();
            for code in 0..N.pow(m as u32) {
                let indices: Vec<usize> = (0..m).map(|p| code / N.pow(p as u32) % N).collect();
                let word = indices
                    .iter()
                    .zip(&symbols)
                    .map(|(&i, s)| crate::products::Letter::new(i, *s))
                    .collect();
                let value = product.moment_exact(&word)?;
                let singleton = indices
                    .iter()
                    .any(|i| indices.iter().filter(|j| *j == i).count() == 1);
                if singleton && !value.is_zero() {
                    ok = false;
                }
                let key = compress(&indices);
                match seen.get(&key) {
                    Some(v) => ok &= *v == value,
                    None => {
                        seen.insert(key, value);
                    }
                }
            }
        }
    }
    Ok(ok)
}

/// Moment of `b^(δ_1)_{0,1} ⋯ b^(δ_m)_{0,1}` in the Fock model.
pub fn fock_pattern_moment(pattern: &Pattern) -> Result<Rational, FockError> {
    let grid = Arc::new(Grid::unit(1));
    let word: Vec<IntervalOp> = pattern
        .faces()
        .iter()
        .map(|&f| IntervalOp::new(OpKind::field(f), 1, 1))
        .collect();
    moment(&grid, &word)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceRow {
    #[serde(rename = "N")]
    pub n: usize,
    pub value: Value,
    pub error: Value,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceReport {
    pub pattern: Pattern,
    pub covariance: CovarianceSpec,
    pub backend: Backend,
    #[serde(with = "rational_string")]
    pub limit: Rational,
    pub rows: Vec<ConvergenceRow>,
}

impl ConvergenceReport {
    pub const CSV_HEADER: &'static str = "pattern,N,value,limit,error";

    /// CSV rows without the header.
    pub fn csv_rows(&self) -> Vec<String> {
        self.rows
            .iter()
            .map(|r| {
                format!(
                    "{},{},{},{},{}",
                    self.pattern,
                    r.n,
                    r.value,
                    format_rational(&self.limit),
                    r.error
                )
            })
            .collect()
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from(Self::CSV_HEADER);
        out.push('\n');
        for row in self.csv_rows() {
            out.push_str(&row);
            out.push('\n');
        }
        out
    }

    pub fn errors(&self) -> Vec<f64> {
        self.rows.iter().map(|r| r.error.to_f64()).collect()
    }
}

/// Finite-`N` moments of `pattern` for the pair realizing `cov`, against the
/// limit.
pub fn convergence_report(
    pattern: &Pattern,
    ns: &[usize],
    cov: &CovarianceSpec,
    backend: Backend,
) -> Result<ConvergenceReport, CltError> {
    if ns.is_empty() || ns[0] == 0 || ns.windows(2).any(|w| w[0] >= w[1]) {
        return Err(CltError::BadNs);
    }
    let pair = standard_pair_rep(&cov.matrix())?;
    let limit = clt_limit(pattern, cov);
    let rows = ns
        .par_iter()
        .map(|&n| {
            let value = finite_n_moment(pattern, n, &pair, backend)?;
            let error = value.distance_to(&limit);
            Ok(ConvergenceRow { n, value, error })
        })
        .collect::<Result<Vec<_>, CltError>>()?;
    Ok(ConvergenceReport {
        pattern: pattern.clone(),
        covariance: cov.clone(),
        backend,
        limit,
        rows,
    })
}
