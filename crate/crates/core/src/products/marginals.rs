use std::collections::BTreeMap;

use super::{ProductError, ProductRep, Scalar, Word};
use crate::partitions::{is_bi_monotone, Face, OrderedTwoFacedPartition};

/// Source of single-factor moments `φ_k(a_1 ⋯ a_m)`.
pub trait Marginals<S> {
    fn marginal(&self, factor: usize, symbols: &[&str]) -> Result<S, ProductError>;
}

impl<S: Scalar> Marginals<S> for ProductRep {
    fn marginal(&self, factor: usize, symbols: &[&str]) -> Result<S, ProductError> {
        let rep = self
            .factors()
            .get(factor)
            .ok_or(ProductError::FactorOutOfRange {
                factor: factor + 1,
                len: self.len(),
            })?;
        rep.moment(symbols).map(|v| S::from_exact(&v))
    }
}

/// Precomputed marginal moments, one table per factor, keyed by the word.
#[derive(Clone, Debug, PartialEq)]
pub struct MomentTable<S> {
    tables: Vec<BTreeMap<Vec<String>, S>>,
}

impl<S: Scalar> MomentTable<S> {
    pub fn new(factors: usize) -> Self {
        MomentTable {
            tables: vec![BTreeMap::new(); factors],
        }
    }

    pub fn num_factors(&self) -> usize {
        self.tables.len()
    }

    pub fn insert(&mut self, factor: usize, word: Vec<String>, value: S) {
        self.tables[factor].insert(word, value);
    }

    pub fn get(&self, factor: usize, word: &[&str]) -> Option<&S> {
        let key: Vec<String> = word.iter().map(|s| s.to_string()).collect();
        self.tables.get(factor)?.get(&key)
    }

    pub fn entries(&self, factor: usize) -> impl Iterator<Item = (&Vec<String>, &S)> {
        self.tables[factor].iter()
    }

    /// Fills every table with all words of length `1..=max_len` over the
    /// symbols of the product's factors.
    pub fn from_product(product: &ProductRep, max_len: usize) -> Result<Self, ProductError> {
        let mut table = MomentTable::new(product.len());
        for (factor, rep) in product.factors().iter().enumerate() {
            let symbols: Vec<&str> = rep.symbols().collect();
            for_each_word(&symbols, max_len, |w| {
                let value = rep.moment(w)?;
                table.insert(
                    factor,
                    w.iter().map(|s| s.to_string()).collect(),
                    S::from_exact(&value),
                );
                Ok(())
            })?;
        }
        Ok(table)
    }
}

/// Calls `f` on every nonempty word of length `<= max_len` over `symbols`.
pub(crate) fn for_each_word<'a, E>(
    symbols: &[&'a str],
    max_len: usize,
    mut f: impl FnMut(&[&'a str]) -> Result<(), E>,
) -> Result<(), E> {
    if symbols.is_empty() {
        return Ok(());
    }
    for len in 1..=max_len {
        let mut idx = vec![0usize; len];
        'next: loop {
            let word: Vec<&str> = idx.iter().map(|&i| symbols[i]).collect();
            f(&word)?;
            for pos in (0..len).rev() {
                idx[pos] += 1;
                if idx[pos] < symbols.len() {
                    continue 'next;
                }
                idx[pos] = 0;
            }
            break;
        }
    }
    Ok(())
}

impl<S: Scalar> Marginals<S> for MomentTable<S> {
    fn marginal(&self, factor: usize, symbols: &[&str]) -> Result<S, ProductError> {
        self.get(factor, symbols)
            .cloned()
            .ok_or_else(|| ProductError::MissingMarginal {
                factor: factor + 1,
                word: symbols.join(" "),
            })
    }
}

/// Moment of `word` in the bi-monotone product, assembled from marginals.
///
/// On factor `i` a letter of factor `j ≠ i` acts as `P` (when `i < j` on
/// the left face or `i > j` on the right face) or as the identity, so
/// `⟨Ω_i, ⋯ Ω_i⟩` splits at every `P` into a product of marginal moments.
pub fn table_moment<S: Scalar, M: Marginals<S>>(
    word: &Word,
    faces: &[Face],
    marginals: &M,
) -> Result<S, ProductError> {
    assert_eq!(word.len(), faces.len(), "one face per letter");
    let letters = word.letters();
    let mut used: Vec<usize> = letters.iter().map(|l| l.factor).collect();
    used.sort_unstable();
    used.dedup();
    let mut total = S::one();
    for &i in &used {
        let mut segment: Vec<&str> = Vec::new();
        for (letter, &face) in letters.iter().zip(faces) {
            let j = letter.factor;
            if j == i {
                segment.push(&letter.symbol);
            } else if ((i < j && face == Face::Left) || (i > j && face == Face::Right))
                && !segment.is_empty()
            {
                total = total * marginals.marginal(i, &segment)?;
                segment.clear();
            }
        }
        if !segment.is_empty() {
            total = total * marginals.marginal(i, &segment)?;
        }
        if total.is_zero() {
            break;
        }
    }
    Ok(total)
}

/// Closed form for a word whose letters follow an ordered two-faced
/// partition: the letter at point `p` must come from the factor equal to the
/// rank of `p`'s block, on the face the pattern gives `p`.
///
/// Returns `None` when the partition is not bi-monotone; otherwise the
/// product over factors of the marginal moment of that factor's letters.
pub fn factorization_eval<S: Scalar, M: Marginals<S>>(
    word: &Word,
    faces: &[Face],
    marginals: &M,
    partition: &OrderedTwoFacedPartition,
) -> Result<Option<S>, ProductError> {
    let ranks = partition.partition.point_ranks();
    if ranks.len() != word.len() || faces.len() != word.len() {
        return Err(ProductError::PartitionMismatch("length"));
    }
    if partition.pattern.faces() != faces {
        return Err(ProductError::PartitionMismatch("faces"));
    }
    if word
        .letters()
        .iter()
        .zip(&ranks)
        .any(|(l, &r)| l.factor != r)
    {
        return Err(ProductError::PartitionMismatch("factor labels"));
    }
    if !is_bi_monotone(partition) {
        return Ok(None);
    }
    let mut total = S::one();
    for block in partition.partition.ordered_blocks() {
        let rank = ranks[block[0] - 1];
        let symbols: Vec<&str> = block
            .iter()
            .map(|&p| word.letters()[p - 1].symbol.as_str())
            .collect();
        total = total * marginals.marginal(rank, &symbols)?;
    }
    Ok(Some(total))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numbers::ExactComplex;
    use crate::partitions::{OrderedSetPartition, Pattern};
    use crate::products::samples;

    #[test]
    fn table_route_matches_tensor_engine() {
        let prod = ProductRep::new(vec![samples::qubit(), samples::skewed(), samples::qutrit()]);
        let table: MomentTable<ExactComplex> = MomentTable::from_product(&prod, 5).unwrap();
        for text in [
            "1:bl,2:a,1:br",
            "2:a,1:bl,3:br,2:br,1:br",
            "3:bl,1:br,2:a,3:br,1:bl",
        ] {
            let word: Word = text.parse().unwrap();
            let faces = prod.faces(&word).unwrap();
            let direct = prod.moment_exact(&word).unwrap();
            assert_eq!(
                table_moment(&word, &faces, &table).unwrap(),
                direct,
                "{text}"
            );
            assert_eq!(
                table_moment::<ExactComplex, _>(&word, &faces, &prod).unwrap(),
                direct,
                "{text}"
            );
        }
    }

    #[test]
    fn factorization_example() {
        // letters from factors (1, 2, 1), blocks {1,3} < {2}
        let prod = ProductRep::new(vec![samples::skewed(), samples::qubit()]);
        let ordered = OrderedSetPartition::from_ordered_blocks(vec![vec![1, 3], vec![2]]).unwrap();

        // middle letter on the right face: bi-monotone, φ_1(a·br) φ_2(br)
        let word: Word = "1:a,2:br,1:br".parse().unwrap();
        let faces = prod.faces(&word).unwrap();
        let partition =
            OrderedTwoFacedPartition::new(ordered.clone(), "lrr".parse::<Pattern>().unwrap())
                .unwrap();
        let value: ExactComplex = factorization_eval(&word, &faces, &prod, &partition)
            .unwrap()
            .unwrap();
        let expected = samples::skewed().moment(&["a", "br"]).unwrap()
            * samples::qubit().moment(&["br"]).unwrap();
        assert_eq!(value, expected);
        assert_eq!(prod.moment_exact(&word).unwrap(), expected);

        // on the left face the middle letter projects factor 1 onto its vacuum
        let prod = ProductRep::new(vec![samples::skewed(), samples::skewed()]);
        let word: Word = "1:a,2:a,1:br".parse().unwrap();
        let faces = prod.faces(&word).unwrap();
        let partition =
            OrderedTwoFacedPartition::new(ordered, "llr".parse::<Pattern>().unwrap()).unwrap();
        let none: Option<ExactComplex> =
            factorization_eval(&word, &faces, &prod, &partition).unwrap();
        assert!(none.is_none());
        let rep = samples::skewed();
        let split = rep.moment(&["a"]).unwrap()
            * rep.moment(&["br"]).unwrap()
            * rep.moment(&["a"]).unwrap();
        assert_ne!(
            split,
            rep.moment(&["a", "br"]).unwrap() * rep.moment(&["a"]).unwrap()
        );
        assert_eq!(prod.moment_exact(&word).unwrap(), split);
    }

    #[test]
    fn mismatched_partition_is_an_error() {
        let prod = ProductRep::new(vec![samples::skewed(), samples::qubit()]);
        let word: Word = "2:bl,1:a".parse().unwrap();
        let faces = prod.faces(&word).unwrap();
        let ordered = OrderedSetPartition::from_ordered_blocks(vec![vec![1], vec![2]]).unwrap();
        let partition =
            OrderedTwoFacedPartition::new(ordered, "ll".parse::<Pattern>().unwrap()).unwrap();
        let got: Result<Option<ExactComplex>, _> =
            factorization_eval(&word, &faces, &prod, &partition);
        assert!(matches!(got, Err(ProductError::PartitionMismatch(_))));
    }
}
