//! The product laws, checked exhaustively over short words.

use std::collections::HashSet;

use num_traits::{One, Zero};

use super::marginals::for_each_word;
use super::{
    factorization_eval, Generator, Key, Letter, PointedRep, ProductError, ProductRep, SparseVector,
    Word,
};
use crate::numbers::{is_psd_hermitian, ExactComplex};
use crate::partitions::{
    is_bi_monotone, Face, OrderedSetPartition, OrderedTwoFacedPartition, Pattern,
};

type Matrix = Vec<Vec<ExactComplex>>;

fn kron(a: &Matrix, b: &Matrix) -> Matrix {
    let (n, m) = (a.len(), b.len());
    let mut out = vec![vec![ExactComplex::zero(); n * m]; n * m];
    for i in 0..n {
        for j in 0..n {
            if a[i][j].is_zero() {
                continue;
            }
            for k in 0..m {
                for l in 0..m {
                    out[i * m + k][j * m + l] = &a[i][j] * &b[k][l];
                }
            }
        }
    }
    out
}

fn identity(dim: usize) -> Matrix {
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

fn vacuum_projection(dim: usize) -> Matrix {
    let mut p = vec![vec![ExactComplex::zero(); dim]; dim];
    p[0][0] = ExactComplex::one();
    p
}

/// The two-fold product as an explicit representation on `H_1 ⊗ H_2`.
/// Generators are renamed `1.s` and `2.s`.
pub fn bimonotone_product(first: &PointedRep, second: &PointedRep) -> PointedRep {
    let (d1, d2) = (first.dim(), second.dim());
    let mut gens = Vec::new();
    for (symbol, g) in first.generators() {
        let other = match g.face {
            Face::Left => identity(d2),
            Face::Right => vacuum_projection(d2),
        };
        gens.push((
            format!("1.{symbol}"),
            Generator {
                face: g.face,
                matrix: kron(&g.matrix, &other),
            },
        ));
    }
    for (symbol, g) in second.generators() {
        let other = match g.face {
            Face::Left => vacuum_projection(d1),
            Face::Right => identity(d1),
        };
        gens.push((
            format!("2.{symbol}"),
            Generator {
                face: g.face,
                matrix: kron(&other, &g.matrix),
            },
        ));
    }
    PointedRep::new(d1 * d2, gens).expect("product of valid representations")
}

fn all_letters(product: &ProductRep) -> Vec<Letter> {
    product
        .factors()
        .iter()
        .enumerate()
        .flat_map(|(k, rep)| {
            rep.symbols()
                .map(move |s| Letter::new(k, s))
                .collect::<Vec<_>>()
        })
        .collect()
}

/// Calls `f` on every word of length `1..=max_len` over `letters`.
fn for_each_letter_word(
    letters: &[Letter],
    max_len: usize,
    mut f: impl FnMut(Word) -> Result<(), ProductError>,
) -> Result<(), ProductError> {
    let names: Vec<String> = (0..letters.len()).map(|i| i.to_string()).collect();
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    for_each_word(&refs, max_len, |w| {
        f(w.iter()
            .map(|i| letters[i.parse::<usize>().expect("index")].clone())
            .collect())
    })
}

/// Compares the flat three-fold product with both nested groupings on every
/// word of length `<= max_len`.
pub fn associativity_check(reps: &[PointedRep; 3], max_len: usize) -> Result<bool, ProductError> {
    let flat = ProductRep::new(reps.to_vec());
    let left = ProductRep::new(vec![
        bimonotone_product(&reps[0], &reps[1]),
        reps[2].clone(),
    ]);
    let right = ProductRep::new(vec![
        reps[0].clone(),
        bimonotone_product(&reps[1], &reps[2]),
    ]);
    let mut ok = true;
    for_each_letter_word(&all_letters(&flat), max_len, |w| {
        let to_left: Word = w
            .letters()
            .iter()
            .map(|l| match l.factor {
                2 => Letter::new(1, l.symbol.clone()),
                k => Letter::new(0, format!("{}.{}", k + 1, l.symbol)),
            })
            .collect();
        let to_right: Word = w
            .letters()
            .iter()
            .map(|l| match l.factor {
                0 => Letter::new(0, l.symbol.clone()),
                k => Letter::new(1, format!("{}.{}", k, l.symbol)),
            })
            .collect();
        let value = flat.moment_exact(&w)?;
        ok &= value == left.moment_exact(&to_left)? && value == right.moment_exact(&to_right)?;
        Ok(())
    })?;
    Ok(ok)
}

/// Words built from one factor's letters have that factor's own moments.
pub fn marginal_restoration_check(
    product: &ProductRep,
    max_len: usize,
) -> Result<bool, ProductError> {
    let mut ok = true;
    for (k, rep) in product.factors().iter().enumerate() {
        let symbols: Vec<&str> = rep.symbols().collect();
        for_each_word(&symbols, max_len, |w| {
            let word: Word = w.iter().map(|s| Letter::new(k, *s)).collect();
            ok &= product.moment_exact(&word)? == rep.moment(w)?;
            Ok::<(), ProductError>(())
        })?;
    }
    Ok(ok)
}

/// Gram matrix of `{wΩ : |w| <= max_len}` is positive semidefinite.
pub fn gram_is_psd(product: &ProductRep, max_len: usize) -> Result<bool, ProductError> {
    let mut seen: HashSet<Vec<(Key, String)>> = HashSet::new();
    let mut vectors: Vec<SparseVector<ExactComplex>> = Vec::new();
    let mut push = |v: SparseVector<ExactComplex>| {
        let fingerprint = v
            .entries()
            .map(|(k, c)| (k.clone(), crate::numbers::format_complex(c)))
            .collect();
        if !v.is_zero() && seen.insert(fingerprint) {
            vectors.push(v);
        }
    };
    push(SparseVector::vacuum());
    for_each_letter_word(&all_letters(product), max_len, |w| {
        push(product.apply_word(&w, &SparseVector::vacuum())?);
        Ok(())
    })?;
    let gram: Vec<Vec<ExactComplex>> = vectors
        .iter()
        .map(|a| vectors.iter().map(|b| a.inner(b)).collect())
        .collect();
    Ok(is_psd_hermitian(&gram))
}

/// Outcome of [`factorization_check`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FactorizationReport {
    /// Non-bi-monotone ordered pair partitions tested.
    pub vanishing_cases: usize,
    /// Bi-monotone ordered partitions tested.
    pub factorization_cases: usize,
    /// Words where a law failed.
    pub failures: Vec<String>,
}

impl FactorizationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Every labelling of `m` letters by `k` factors (all factors used) and every
/// pattern: bi-monotone cases must factorize, non-bi-monotone pair cases
/// must vanish. The representations must be centered and carry a generator
/// on each face.
pub fn factorization_check(
    reps: &[PointedRep],
    max_blocks: usize,
    max_letters: usize,
) -> Result<FactorizationReport, ProductError> {
    let mut report = FactorizationReport::default();
    for k in 1..=max_blocks.min(reps.len()) {
        let product = ProductRep::new(reps[..k].to_vec());
        let mut symbols = Vec::new();
        for (f, rep) in reps[..k].iter().enumerate() {
            let mut by_face = Vec::new();
            for face in Face::BOTH {
                let s = rep.symbol_for_face(face).ok_or(ProductError::MissingFace {
                    factor: f + 1,
                    face: face.as_char(),
                })?;
                by_face.push(s.to_string());
            }
            symbols.push(by_face);
        }
        for m in k..=max_letters {
            for labels in surjections(m, k) {
                let blocks: Vec<Vec<usize>> = (0..k)
                    .map(|b| (0..m).filter(|&p| labels[p] == b).map(|p| p + 1).collect())
                    .collect();
                let ordered =
                    OrderedSetPartition::from_ordered_blocks(blocks).expect("surjective labels");
                let pairs = ordered.partition().is_pair_partition();
                for pattern in Pattern::all(m) {
                    let partition = OrderedTwoFacedPartition::new(ordered.clone(), pattern.clone())
                        .expect("matching lengths");
                    let bimonotone = is_bi_monotone(&partition);
                    if !bimonotone && !pairs {
                        continue;
                    }
                    let word: Word = labels
                        .iter()
                        .zip(pattern.faces())
                        .map(|(&f, &face)| Letter::new(f, symbols[f][face as usize].clone()))
                        .collect();
                    let value = product.moment_exact(&word)?;
                    if bimonotone {
                        report.factorization_cases += 1;
                        let closed: Option<ExactComplex> =
                            factorization_eval(&word, pattern.faces(), &product, &partition)?;
                        if closed.as_ref() != Some(&value) {
                            report.failures.push(format!("factorization {word}"));
                        }
                    } else {
                        report.vanishing_cases += 1;
                        if !value.is_zero() {
                            report.failures.push(format!("vanishing {word}"));
                        }
                    }
                }
            }
        }
    }
    Ok(report)
}

/// All maps `[m] → [k]` hitting every value.
fn surjections(m: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut labels = vec![0usize; m];
    loop {
        let mut hit = vec![false; k];
        labels.iter().for_each(|&l| hit[l] = true);
        if hit.iter().all(|&h| h) {
            out.push(labels.clone());
        }
        let mut pos = m;
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            labels[pos] += 1;
            if labels[pos] < k {
                break;
            }
            labels[pos] = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::products::samples;

    #[test]
    fn surjection_counts() {
        assert_eq!(surjections(4, 2).len(), 14);
        assert_eq!(surjections(3, 3).len(), 6);
        assert_eq!(surjections(2, 3).len(), 0);
    }

    #[test]
    fn associativity_small() {
        let reps = [samples::qubit(), samples::skewed(), samples::qubit_b()];
        assert!(associativity_check(&reps, 3).unwrap());
    }

    #[test]
    fn marginals_restore() {
        let prod = ProductRep::new(vec![samples::qubit(), samples::skewed(), samples::qutrit()]);
        assert!(marginal_restoration_check(&prod, 4).unwrap());
    }

    #[test]
    fn state_property_small() {
        let prod = ProductRep::new(vec![samples::qubit(), samples::qubit_b()]);
        assert!(gram_is_psd(&prod, 2).unwrap());
    }

    #[test]
    fn vanishing_and_factorization_on_four_letters() {
        let reps = [samples::qubit(), samples::qutrit(), samples::qubit_b()];
        let report = factorization_check(&reps, 3, 4).unwrap();
        assert!(report.passed(), "{:?}", report.failures);
        assert!(report.vanishing_cases > 0 && report.factorization_cases > 0);
    }

    #[test]
    fn non_centered_reps_break_vanishing() {
        let report = factorization_check(&[samples::skewed(), samples::skewed()], 2, 4).unwrap();
        assert!(!report.passed());
    }
}
