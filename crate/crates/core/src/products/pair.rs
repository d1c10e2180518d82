use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::{Generator, PointedRep, ProductError};
use crate::numbers::{format_rational, real, ExactComplex, Rational};
use crate::partitions::Face;

fn rational_sqrt(x: &Rational) -> Option<Rational> {
    let root = |n: &BigInt| {
        let r = n.sqrt();
        (&r * &r == *n).then_some(r)
    };
    Some(Rational::new(root(x.numer())?, root(x.denom())?))
}

/// A centered self-adjoint pair `(b^l, b^r)` with `⟨Ω, b^p b^q Ω⟩ = c[p][q]`
/// (index 0 is the left face).
///
/// Each generator is `|v_p⟩⟨Ω| + |Ω⟩⟨v_p|` for vectors `v_p ⊥ Ω` whose Gram
/// matrix is `c`; the space has dimension `1 + rank(c)`. The vectors come from
/// an `LDLᵀ` factorization, which needs the pivots to be rational squares.
pub fn standard_pair_rep(c: &[[Rational; 2]; 2]) -> Result<PointedRep, ProductError> {
    if c[0][1] != c[1][0] {
        return Err(ProductError::NotSymmetric);
    }
    let (a, b, d) = (&c[0][0], &c[0][1], &c[1][1]);
    let det = a * d - b * b;
    if a.is_negative() || d.is_negative() || det.is_negative() {
        return Err(ProductError::NotPsd);
    }
    let sqrt = |x: &Rational| {
        rational_sqrt(x).ok_or_else(|| ProductError::NotRationallyRealizable(format_rational(x)))
    };
    // coordinates of v_l and v_r in the orthonormal basis e_1, e_2 of Ω^⊥
    let (vl, vr) = if a.is_zero() {
        if !b.is_zero() {
            return Err(ProductError::NotPsd);
        }
        (
            [Rational::zero(), Rational::zero()],
            [sqrt(d)?, Rational::zero()],
        )
    } else {
        let s = sqrt(a)?;
        let t = sqrt(&(det / a))?;
        ([s.clone(), Rational::zero()], [b / &s, t])
    };
    let used: Vec<usize> = (0..2)
        .filter(|&j| !vl[j].is_zero() || !vr[j].is_zero())
        .collect();
    let dim = 1 + used.len();
    let generator = |face: Face, v: &[Rational; 2]| {
        let mut m = vec![vec![ExactComplex::zero(); dim]; dim];
        for (slot, &j) in used.iter().enumerate() {
            m[slot + 1][0] = real(v[j].clone());
            m[0][slot + 1] = real(v[j].clone());
        }
        Generator { face, matrix: m }
    };
    PointedRep::new(
        dim,
        [
            ("bl".to_string(), generator(Face::Left, &vl)),
            ("br".to_string(), generator(Face::Right, &vr)),
        ],
    )
}
