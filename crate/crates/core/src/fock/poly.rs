//! Sparse multivariate polynomials with rational coefficients.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::numbers::Rational;

/// Exponent vector, one entry per variable.
pub type Monomial = Vec<u16>;

/// A polynomial in a fixed number of variables. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OrderedPoly {
    nvars: usize,
    terms: BTreeMap<Monomial, Rational>,
}

/// Integration limit: a constant or one of the polynomial's own variables.
#[derive(Clone, Debug)]
pub enum Limit<'a> {
    Const(&'a Rational),
    Var(usize),
}

impl OrderedPoly {
    pub fn zero(nvars: usize) -> Self {
        OrderedPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, value: Rational) -> Self {
        let mut p = OrderedPoly::zero(nvars);
        p.add_term(vec![0; nvars], value);
        p
    }

    pub fn one(nvars: usize) -> Self {
        OrderedPoly::constant(nvars, Rational::one())
    }

    /// Builds from `(exponents, coefficient)` pairs; repeated monomials are summed.
    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut p = OrderedPoly::zero(nvars);
        for (m, c) in terms {
            assert_eq!(m.len(), nvars, "monomial arity");
            p.add_term(m, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn degree(&self) -> usize {
        self.terms
            .keys()
            .map(|m| m.iter().map(|&e| e as usize).sum())
            .max()
            .unwrap_or(0)
    }

    /// Value of a polynomial in zero variables.
    pub fn constant_value(&self) -> Rational {
        assert_eq!(
            self.nvars, 0,
            "constant_value on a polynomial with variables"
        );
        self.terms
            .values()
            .next()
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, monomial: Monomial, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(monomial) {
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_assign(&mut self, other: &OrderedPoly) {
        assert_eq!(
            self.nvars, other.nvars,
            "adding polynomials of different arity"
        );
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c.clone());
        }
    }

    pub fn scaled(&self, factor: &Rational) -> OrderedPoly {
        if factor.is_zero() {
            return OrderedPoly::zero(self.nvars);
        }
        OrderedPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c * factor))
                .collect(),
        }
    }

    pub fn mul(&self, other: &OrderedPoly) -> OrderedPoly {
        assert_eq!(
            self.nvars, other.nvars,
            "multiplying polynomials of different arity"
        );
        let mut out = OrderedPoly::zero(self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let m: Monomial = m1.iter().zip(m2).map(|(a, b)| a + b).collect();
                out.add_term(m, c1 * c2);
            }
        }
        out
    }

    /// Inserts a fresh variable (absent from every monomial) at position `pos`.
    pub fn insert_var(&self, pos: usize) -> OrderedPoly {
        OrderedPoly {
            nvars: self.nvars + 1,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let mut m = m.clone();
                    m.insert(pos, 0);
                    (m, c.clone())
                })
                .collect(),
        }
    }

    /// `∫_{lower}^{upper} p dx_var`; the result no longer depends on `x_var`,
    /// and variables after `var` shift down by one.
    pub fn integrate(&self, var: usize, lower: Limit<'_>, upper: Limit<'_>) -> OrderedPoly {
        assert!(var < self.nvars, "integration variable out of range");
        let mut out = OrderedPoly::zero(self.nvars - 1);
        for (m, c) in &self.terms {
            let e = m[var] + 1;
            let coeff = c / Rational::from_integer(e.into());
            let mut rest = m.clone();
            rest.remove(var);
            for (limit, sign) in [(&upper, false), (&lower, true)] {
                let (mono, value) = match limit {
                    Limit::Const(q) => (rest.clone(), &coeff * q.pow(e as i32)),
                    Limit::Var(j) => {
                        assert_ne!(*j, var, "limit refers to the integration variable");
                        let j = if *j > var { j - 1 } else { *j };
                        let mut mono = rest.clone();
                        mono[j] += e;
                        (mono, coeff.clone())
                    }
                };
                out.add_term(mono, if sign { -value } else { value });
            }
        }
        out
    }

    /// `q(t) = p(t - offset)` in every variable.
    pub fn translated(&self, offset: &Rational) -> OrderedPoly {
        if offset.is_zero() {
            return self.clone();
        }
        let neg = -offset;
        let mut out = OrderedPoly::zero(self.nvars);
        for (m, c) in &self.terms {
            // expand prod_i (t_i - offset)^{e_i}
            let mut partial: Vec<(Monomial, Rational)> = vec![(vec![0; self.nvars], c.clone())];
            for (i, &e) in m.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let mut next = Vec::with_capacity(partial.len() * (e as usize + 1));
                let mut binom = Rational::one();
                for k in 0..=e {
                    // binom(e, k) t^k (-offset)^(e-k)
                    let factor = &binom * neg.pow((e - k) as i32);
                    for (pm, pc) in &partial {
                        let mut mono = pm.clone();
                        mono[i] = k;
                        next.push((mono, pc * &factor));
                    }
                    binom = binom * Rational::from_integer((e - k).into())
                        / Rational::from_integer((k + 1).into());
                }
                partial = next;
            }
            for (mono, coeff) in partial {
                out.add_term(mono, coeff);
            }
        }
        out
    }

    /// Evaluates at a rational point.
    pub fn eval(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.nvars, "evaluation point arity");
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (x, &e) in point.iter().zip(m) {
                term *= x.pow(e as i32);
            }
            total += term;
        }
        total
    }
}
