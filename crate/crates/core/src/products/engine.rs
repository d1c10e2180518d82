use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::Zero;

use super::{Letter, PointedRep, ProductError, Scalar, Word};
use crate::numbers::ExactComplex;
use crate::partitions::Face;

/// Tensor basis key: `(factor, local index)` for every factor away from the
/// vacuum, sorted by factor. The empty key is `Ω_1 ⊗ ⋯ ⊗ Ω_n`.
pub type Key = Vec<(u16, u16)>;

#[derive(Clone, Debug, PartialEq)]
pub struct SparseVector<S> {
    entries: BTreeMap<Key, S>,
}

impl<S: Scalar> SparseVector<S> {
    pub fn zero() -> Self {
        SparseVector {
            entries: BTreeMap::new(),
        }
    }

    pub fn vacuum() -> Self {
        let mut v = SparseVector::zero();
        v.entries.insert(Key::new(), S::one());
        v
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Key, &S)> {
        self.entries.iter()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Coefficient of the vacuum key.
    pub fn vacuum_coefficient(&self) -> S {
        self.entries
            .get(&Key::new())
            .cloned()
            .unwrap_or_else(S::zero)
    }

    pub fn add_term(&mut self, key: Key, value: S) {
        if value.is_zero() {
            return;
        }
        match self.entries.entry(key) {
            Entry::Vacant(v) => {
                v.insert(value);
            }
            Entry::Occupied(mut o) => {
                let sum = o.get().clone() + value;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    /// Drops keys with more than `max` excited factors.
    pub fn truncate(&mut self, max: usize) {
        self.entries.retain(|k, _| k.len() <= max);
    }

    pub fn scaled(&self, factor: &S) -> Self {
        let mut out = SparseVector::zero();
        for (k, v) in &self.entries {
            out.add_term(k.clone(), v.clone() * factor.clone());
        }
        out
    }

    /// `⟨self, other⟩`, antilinear in the first argument.
    pub fn inner(&self, other: &SparseVector<S>) -> S {
        let mut total = S::zero();
        for (k, a) in &self.entries {
            if let Some(b) = other.entries.get(k) {
                total = total + a.conj() * b.clone();
            }
        }
        total
    }
}

/// Nonzero entries of each column: `cols[j] = [(i, M[i][j])]`.
#[derive(Clone, Debug)]
struct Columns<S>(Vec<Vec<(u16, S)>>);

impl<S: Scalar> Columns<S> {
    fn new(matrix: &[Vec<ExactComplex>]) -> Self {
        let dim = matrix.len();
        Columns(
            (0..dim)
                .map(|j| {
                    (0..dim)
                        .filter(|&i| !matrix[i][j].is_zero())
                        .map(|i| (i as u16, S::from_exact(&matrix[i][j])))
                        .collect()
                })
                .collect(),
        )
    }

    /// Applies the matrix to factor `k` of the basis vector `key`.
    fn act(&self, key: &Key, k: u16, coeff: &S, out: &mut SparseVector<S>) {
        let pos = key.binary_search_by_key(&k, |e| e.0);
        let local = pos.map_or(0, |p| key[p].1);
        for (i, m) in &self.0[local as usize] {
            let mut next = key.clone();
            match (pos, *i) {
                (Ok(p), 0) => {
                    next.remove(p);
                }
                (Ok(p), i) => next[p].1 = i,
                (Err(_), 0) => {}
                (Err(p), i) => next.insert(p, (k, i)),
            }
            out.add_term(next, coeff.clone() * m.clone());
        }
    }
}

/// A letter embedded into the product: `P^{⊗k-1} ⊗ a ⊗ id` on the left face,
/// `id ⊗ a ⊗ P^{⊗n-k}` on the right.
#[derive(Clone, Debug)]
pub struct EmbeddedLetter<S> {
    factor: u16,
    face: Face,
    columns: Columns<S>,
}

impl<S: Scalar> EmbeddedLetter<S> {
    pub fn face(&self) -> Face {
        self.face
    }

    pub fn apply(&self, v: &SparseVector<S>) -> SparseVector<S> {
        let mut out = SparseVector::zero();
        for (key, coeff) in &v.entries {
            let blocked = match self.face {
                Face::Left => key.first().is_some_and(|e| e.0 < self.factor),
                Face::Right => key.last().is_some_and(|e| e.0 > self.factor),
            };
            if !blocked {
                self.columns.act(key, self.factor, coeff, &mut out);
            }
        }
        out
    }
}

/// `Σ_k` of the same generator embedded into every factor of a product of
/// identical representations.
#[derive(Clone, Debug)]
pub struct SummedLetter<S> {
    factors: u16,
    face: Face,
    columns: Columns<S>,
}

impl<S: Scalar> SummedLetter<S> {
    pub fn apply(&self, v: &SparseVector<S>) -> SparseVector<S> {
        let mut out = SparseVector::zero();
        for (key, coeff) in &v.entries {
            let range = match self.face {
                Face::Left => 0..key.first().map_or(self.factors, |e| e.0 + 1),
                Face::Right => key.last().map_or(0, |e| e.0)..self.factors,
            };
            for k in range {
                self.columns.act(key, k, coeff, &mut out);
            }
        }
        out
    }
}

/// The bi-monotone product `π_1 ⋈ ⋯ ⋈ π_n` of pointed representations.
#[derive(Clone, Debug)]
pub struct ProductRep {
    factors: Vec<Arc<PointedRep>>,
}

impl ProductRep {
    pub fn new(factors: Vec<PointedRep>) -> Self {
        ProductRep {
            factors: factors.into_iter().map(Arc::new).collect(),
        }
    }

    /// `n` copies of the same representation.
    pub fn identical(rep: PointedRep, n: usize) -> Self {
        let rep = Arc::new(rep);
        ProductRep {
            factors: vec![rep; n],
        }
    }

    pub fn factors(&self) -> &[Arc<PointedRep>] {
        &self.factors
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    fn generator(&self, letter: &Letter) -> Result<&super::Generator, ProductError> {
        let rep = self
            .factors
            .get(letter.factor)
            .ok_or(ProductError::FactorOutOfRange {
                factor: letter.factor + 1,
                len: self.factors.len(),
            })?;
        rep.generator(&letter.symbol)
            .ok_or_else(|| ProductError::UnknownSymbol {
                factor: letter.factor + 1,
                symbol: letter.symbol.clone(),
            })
    }

    /// Face of every letter of `word`.
    pub fn faces(&self, word: &Word) -> Result<Vec<Face>, ProductError> {
        word.letters()
            .iter()
            .map(|l| self.generator(l).map(|g| g.face))
            .collect()
    }

    pub fn embed_letter<S: Scalar>(
        &self,
        letter: &Letter,
    ) -> Result<EmbeddedLetter<S>, ProductError> {
        let g = self.generator(letter)?;
        Ok(EmbeddedLetter {
            factor: letter.factor as u16,
            face: g.face,
            columns: Columns::new(&g.matrix),
        })
    }

    /// Sum over all factors of the generator `symbol`. Only meaningful when
    /// every factor is the same representation.
    pub fn summed_letter<S: Scalar>(&self, symbol: &str) -> Result<SummedLetter<S>, ProductError> {
        let g = self.generator(&Letter::new(0, symbol))?;
        Ok(SummedLetter {
            factors: self.factors.len() as u16,
            face: g.face,
            columns: Columns::new(&g.matrix),
        })
    }

    /// Applies `word` to `v`, last letter first.
    pub fn apply_word<S: Scalar>(
        &self,
        word: &Word,
        v: &SparseVector<S>,
    ) -> Result<SparseVector<S>, ProductError> {
        let ops: Vec<EmbeddedLetter<S>> = word
            .letters()
            .iter()
            .map(|l| self.embed_letter(l))
            .collect::<Result<_, _>>()?;
        Ok(ops.iter().rev().fold(v.clone(), |acc, op| op.apply(&acc)))
    }

    /// `⟨Ω, w Ω⟩`.
    pub fn moment<S: Scalar>(&self, word: &Word) -> Result<S, ProductError> {
        let ops: Vec<EmbeddedLetter<S>> = word
            .letters()
            .iter()
            .map(|l| self.embed_letter(l))
            .collect::<Result<_, _>>()?;
        let mut v = SparseVector::vacuum();
        for (remaining, op) in ops.iter().enumerate().rev() {
            v = op.apply(&v);
            v.truncate(remaining);
            if v.is_zero() {
                return Ok(S::zero());
            }
        }
        Ok(v.vacuum_coefficient())
    }

    pub fn moment_exact(&self, word: &Word) -> Result<ExactComplex, ProductError> {
        self.moment(word)
    }
}

/// `⟨Ω, op_1 ⋯ op_m Ω⟩` for summed letters.
pub fn summed_moment<S: Scalar>(ops: &[SummedLetter<S>]) -> S {
    let mut v = SparseVector::vacuum();
    for (remaining, op) in ops.iter().enumerate().rev() {
        v = op.apply(&v);
        v.truncate(remaining);
        if v.is_zero() {
            return S::zero();
        }
    }
    v.vacuum_coefficient()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numbers::{complex_to_f64, rational_from_int, real, Complex64};
    use crate::products::samples;
    use num_traits::One;

    fn kron(a: &[Vec<ExactComplex>], b: &[Vec<ExactComplex>]) -> Vec<Vec<ExactComplex>> {
        let (n, m) = (a.len(), b.len());
        let mut out = vec![vec![ExactComplex::zero(); n * m]; n * m];
        for i in 0..n {
            for j in 0..n {
                for k in 0..m {
                    for l in 0..m {
                        out[i * m + k][j * m + l] = &a[i][j] * &b[k][l];
                    }
                }
            }
        }
        out
    }

    fn projection(dim: usize) -> Vec<Vec<ExactComplex>> {
        let mut p = vec![vec![ExactComplex::zero(); dim]; dim];
        p[0][0] = ExactComplex::one();
        p
    }

    fn identity(dim: usize) -> Vec<Vec<ExactComplex>> {
        (0..dim)
            .map(|i| {
                (0..dim)
                    .map(|j| {
                        if i == j {
                            ExactComplex::one()
                        } else {
                            ExactComplex::zero()
                        }
                    })
                    .collect()
            })
            .collect()
    }

    fn dense(v: &SparseVector<ExactComplex>, dims: [usize; 2]) -> Vec<ExactComplex> {
        let mut out = vec![ExactComplex::zero(); dims[0] * dims[1]];
        for (key, c) in v.entries() {
            let mut idx = [0usize; 2];
            for &(f, l) in key {
                idx[f as usize] = l as usize;
            }
            out[idx[0] * dims[1] + idx[1]] = c.clone();
        }
        out
    }

    #[test]
    fn embedding_matches_kronecker_products() {
        let (a, b) = (samples::qubit(), samples::qutrit());
        let prod = ProductRep::new(vec![a.clone(), b.clone()]);
        let dims = [a.dim(), b.dim()];
        for (factor, rep) in [(0usize, &a), (1usize, &b)] {
            for (symbol, g) in rep.generators() {
                let expected = match (factor, g.face) {
                    (0, Face::Left) => kron(&g.matrix, &identity(dims[1])),
                    (0, Face::Right) => kron(&g.matrix, &projection(dims[1])),
                    (1, Face::Left) => kron(&projection(dims[0]), &g.matrix),
                    _ => kron(&identity(dims[0]), &g.matrix),
                };
                let op = prod
                    .embed_letter::<ExactComplex>(&Letter::new(factor, symbol.clone()))
                    .unwrap();
                for i in 0..dims[0] {
                    for k in 0..dims[1] {
                        let mut key = Key::new();
                        if i > 0 {
                            key.push((0, i as u16));
                        }
                        if k > 0 {
                            key.push((1, k as u16));
                        }
                        let mut v = SparseVector::zero();
                        v.add_term(key, ExactComplex::one());
                        let got = dense(&op.apply(&v), dims);
                        let col = i * dims[1] + k;
                        let want: Vec<ExactComplex> =
                            expected.iter().map(|row| row[col].clone()).collect();
                        assert_eq!(got, want, "factor {factor} symbol {symbol} column {col}");
                    }
                }
            }
        }
    }

    #[test]
    fn single_factor_is_the_rep_itself() {
        let a = samples::qubit();
        let prod = ProductRep::new(vec![a.clone()]);
        let word: Word = "1:bl,1:br,1:br,1:bl".parse().unwrap();
        assert_eq!(
            prod.moment_exact(&word).unwrap(),
            a.moment(&["bl", "br", "br", "bl"]).unwrap()
        );
    }

    #[test]
    fn centered_cross_term_vanishes() {
        let prod = ProductRep::new(vec![samples::qubit(), samples::qutrit()]);
        let word: Word = "1:bl,2:br".parse().unwrap();
        assert_eq!(
            prod.moment_exact(&word).unwrap(),
            real(rational_from_int(0))
        );
    }

    #[test]
    fn float_backend_agrees() {
        let prod = ProductRep::new(vec![samples::qubit(), samples::qutrit(), samples::skewed()]);
        let word: Word = "1:bl,2:br,3:a,2:bl,1:br,3:br".parse().unwrap();
        let exact = prod.moment_exact(&word).unwrap();
        let float: Complex64 = prod.moment(&word).unwrap();
        assert!((complex_to_f64(&exact) - float).norm() < 1e-12);
    }

    #[test]
    fn summed_letters_expand_the_sum() {
        let pair = samples::qubit();
        let n = 3;
        let prod = ProductRep::identical(pair, n);
        let symbols = ["bl", "br", "br", "bl"];
        let ops: Vec<SummedLetter<ExactComplex>> = symbols
            .iter()
            .map(|s| prod.summed_letter(s).unwrap())
            .collect();
        let summed = summed_moment(&ops);
        let mut expanded = ExactComplex::zero();
        for idx in 0..n.pow(4) {
            let word: Word = (0..4)
                .map(|p| Letter::new(idx / n.pow(p as u32) % n, symbols[p]))
                .collect();
            expanded += prod.moment_exact(&word).unwrap();
        }
        assert_eq!(summed, expanded);
    }

    #[test]
    fn unknown_letters_are_errors() {
        let prod = ProductRep::new(vec![samples::qubit()]);
        assert!(matches!(
            prod.moment_exact(&"2:bl".parse().unwrap()),
            Err(ProductError::FactorOutOfRange { factor: 2, len: 1 })
        ));
        assert!(matches!(
            prod.moment_exact(&"1:zz".parse().unwrap()),
            Err(ProductError::UnknownSymbol { .. })
        ));
    }
}
