//! Counting bi-monotone ordered two-faced pair partitions.
//!
//! For a fixed pattern, pair partitions are built point by point (the
//! smallest unmatched point is matched with each later unmatched point). Every
//! new pair is checked against the pairs already placed: each point of one
//! pair nested strictly inside the other pair yields a strict order relation
//! between the two blocks. Contradicting relations prune the branch. At a leaf
//! the admissible block orders are the linear extensions of the collected
//! relations, counted by a subset DP (a cyclic relation gives zero).

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::enumerate::for_each_linear_extension;
use super::{classify, Face, OrderedSetPartition, OrderedTwoFacedPartition, Pattern, SetPartition};
use crate::numbers::{biguint_string, multinomial};

/// Largest number of blocks the subset DP accepts.
pub const MAX_PAIRS: usize = 24;

/// Walks the pair partitions of `pattern` that admit at least a pairwise
/// consistent bi-monotone ordering. `f` receives the pairs (0-based points,
/// blocks numbered by smallest point) and the `below` masks: bit `j` of
/// `below[i]` says block `j` must rank under block `i`.
pub fn for_each_constrained_pairing(
    pattern: &Pattern,
    mut f: impl FnMut(&[(usize, usize)], &[u64]),
) {
    let m = pattern.len();
    if m % 2 == 1 {
        return;
    }
    assert!(
        m / 2 <= MAX_PAIRS,
        "pattern of length {m} exceeds {MAX_PAIRS} pairs"
    );
    let mut search = Search {
        faces: pattern.faces(),
        matched: vec![false; m],
        pairs: Vec::with_capacity(m / 2),
        below: Vec::with_capacity(m / 2),
    };
    search.run(&mut f);
}

struct Search<'a> {
    faces: &'a [Face],
    matched: Vec<bool>,
    pairs: Vec<(usize, usize)>,
    below: Vec<u64>,
}

impl Search<'_> {
    fn run(&mut self, f: &mut impl FnMut(&[(usize, usize)], &[u64])) {
        let Some(first) = self.matched.iter().position(|&m| !m) else {
            f(&self.pairs, &self.below);
            return;
        };
        self.matched[first] = true;
        for second in first + 1..self.matched.len() {
            if self.matched[second] {
                continue;
            }
            if let Some(below_new) = self.relate(first, second) {
                self.matched[second] = true;
                let idx = self.pairs.len();
                let bit = 1u64 << idx;
                // record the relations in which the new block is the larger one
                // on the existing blocks' masks
                let saved = self.below.clone();
                for (c, &(_, y)) in self.pairs.iter().enumerate() {
                    if self.new_below_existing(first, second, y) {
                        self.below[c] |= bit;
                    }
                }
                self.pairs.push((first, second));
                self.below.push(below_new);
                self.run(f);
                self.pairs.pop();
                self.below = saved;
                self.matched[second] = false;
            }
        }
        self.matched[first] = false;
    }

    /// Whether the new block `(p, q)` must rank under an existing block ending at `y`.
    fn new_below_existing(&self, p: usize, q: usize, y: usize) -> bool {
        // existing block (x, y) has x < p; relations come from y inside (p, q)
        // and from p, q inside (x, y)
        (p < y && y < q && self.faces[y] == Face::Right)
            || (p < y && self.faces[p] == Face::Left)
            || (q < y && self.faces[q] == Face::Left)
    }

    /// Mask of existing blocks the new block `(p, q)` must rank above, or
    /// `None` on a direct contradiction.
    fn relate(&self, p: usize, q: usize) -> Option<u64> {
        let mut above = 0u64;
        for (c, &(_, y)) in self.pairs.iter().enumerate() {
            let new_above = (p < y && y < q && self.faces[y] == Face::Left)
                || (p < y && self.faces[p] == Face::Right)
                || (q < y && self.faces[q] == Face::Right);
            if new_above {
                if self.new_below_existing(p, q, y) {
                    return None;
                }
                above |= 1 << c;
            }
        }
        Some(above)
    }
}

/// Number of total orders compatible with `below` (see
/// [`for_each_constrained_pairing`]).
pub fn count_linear_extensions(below: &[u64]) -> u128 {
    let n = below.len();
    let full = (1usize << n) - 1;
    let mut ways = vec![0u128; full + 1];
    ways[0] = 1;
    for set in 0..=full {
        let w = ways[set];
        if w == 0 {
            continue;
        }
        for (v, &req) in below.iter().enumerate() {
            if set >> v & 1 == 0 && req as usize & !set == 0 {
                ways[set | 1 << v] += w;
            }
        }
    }
    ways[full]
}

/// Calls `f(pairs, number_of_bi_monotone_orders)` for every pair partition
/// of `pattern` admitting at least one bi-monotone order.
pub fn for_each_bimonotone_pairing(pattern: &Pattern, mut f: impl FnMut(&[(usize, usize)], u128)) {
    for_each_constrained_pairing(pattern, |pairs, below| {
        let orders = count_linear_extensions(below);
        if orders > 0 {
            f(pairs, orders);
        }
    });
}

/// `#PP_⋈(δ)`: bi-monotone ordered two-faced pair partitions with pattern δ.
/// Odd lengths give zero.
pub fn count_bimonotone_pp(pattern: &Pattern) -> BigUint {
    let mut total = BigUint::zero();
    for_each_bimonotone_pairing(pattern, |_, orders| total += orders);
    total
}

/// Like [`count_bimonotone_pp`] but restricted to irreducible pair partitions.
pub fn count_irreducible_bimonotone_pp(pattern: &Pattern) -> BigUint {
    let m = pattern.len();
    let mut total = BigUint::zero();
    for_each_bimonotone_pairing(pattern, |pairs, orders| {
        let straddled =
            (0..m.saturating_sub(1)).all(|a| pairs.iter().any(|&(lo, hi)| lo <= a && a < hi));
        if straddled {
            total += orders;
        }
    });
    total
}

/// Bi-monotone pair partitions of `[2n]` summed over all `4^n` patterns.
pub fn count_bimonotone_all(n: usize) -> BigUint {
    Pattern::all(2 * n)
        .par_bridge()
        .map(|p| count_bimonotone_pp(&p))
        .reduce(BigUint::zero, |a, b| a + b)
}

/// Every bi-monotone ordered two-faced pair partition with the given pattern.
pub fn bimonotone_pair_partitions(pattern: &Pattern) -> Vec<OrderedTwoFacedPartition> {
    let mut out = Vec::new();
    for_each_constrained_pairing(pattern, |pairs, below| {
        for_each_linear_extension(below, |order| {
            let blocks = order
                .iter()
                .map(|&b| vec![pairs[b].0 + 1, pairs[b].1 + 1])
                .collect();
            let ordered = OrderedSetPartition::from_ordered_blocks(blocks).expect("valid pairs");
            out.push(
                OrderedTwoFacedPartition::new(ordered, pattern.clone()).expect("lengths match"),
            );
        });
    });
    out.sort();
    out
}

/// Per-pattern counts, keyed by pattern. JSON form maps pattern strings to
/// decimal strings.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CountTable {
    #[serde(with = "count_map")]
    pub entries: BTreeMap<Pattern, BigUint>,
}

mod count_map {
    use std::collections::BTreeMap;

    use num_bigint::BigUint;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use super::{biguint_string, Pattern};

    #[derive(Serialize, Deserialize)]
    #[serde(transparent)]
    struct Count(#[serde(with = "biguint_string")] BigUint);

    pub fn serialize<S: Serializer>(
        map: &BTreeMap<Pattern, BigUint>,
        s: S,
    ) -> Result<S::Ok, S::Error> {
        let wrapped: BTreeMap<&Pattern, Count> =
            map.iter().map(|(k, v)| (k, Count(v.clone()))).collect();
        wrapped.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> Result<BTreeMap<Pattern, BigUint>, D::Error> {
        let wrapped = BTreeMap::<Pattern, Count>::deserialize(d)?;
        Ok(wrapped.into_iter().map(|(k, v)| (k, v.0)).collect())
    }
}

impl CountTable {
    /// Counts for every pattern of length `2n`.
    pub fn for_pairs(n: usize) -> CountTable {
        let entries = Pattern::all(2 * n)
            .collect::<Vec<_>>()
            .into_par_iter()
            .map(|p| {
                let c = count_bimonotone_pp(&p);
                (p, c)
            })
            .collect();
        CountTable { entries }
    }

    pub fn total(&self) -> BigUint {
        self.entries.values().sum()
    }
}

/// Right-hand side of the irreducible decomposition: a sum over cuts of the
/// pattern into consecutive even-length pieces, each contributing its
/// irreducible count, times the multinomial for interleaving the pieces'
/// block orders.
pub fn decomposition_rhs(pattern: &Pattern) -> BigUint {
    let m = pattern.len();
    if m % 2 == 1 {
        return BigUint::zero();
    }
    let mut irreducible: BTreeMap<(usize, usize), BigUint> = BTreeMap::new();
    let mut total = BigUint::zero();
    let mut pieces = Vec::new();
    compositions(pattern, 0, &mut pieces, &mut irreducible, &mut total);
    total
}

fn compositions(
    pattern: &Pattern,
    start: usize,
    pieces: &mut Vec<(usize, usize)>,
    cache: &mut BTreeMap<(usize, usize), BigUint>,
    total: &mut BigUint,
) {
    let m = pattern.len();
    if start == m {
        let mut term = BigUint::one();
        for &(a, b) in pieces.iter() {
            let count = cache
                .entry((a, b))
                .or_insert_with(|| count_irreducible_bimonotone_pp(&pattern.slice(a, b)));
            term *= &*count;
            if term.is_zero() {
                return;
            }
        }
        let halves: Vec<u64> = pieces.iter().map(|&(a, b)| ((b - a) / 2) as u64).collect();
        *total += term * multinomial(&halves);
        return;
    }
    for end in (start + 2..=m).step_by(2) {
        pieces.push((start, end));
        compositions(pattern, end, pieces, cache, total);
        pieces.pop();
    }
}

/// Checks `#PP_⋈(δ)` against its decomposition into irreducible pieces.
pub fn verify_decomposition_identity(pattern: &Pattern) -> bool {
    count_bimonotone_pp(pattern) == decomposition_rhs(pattern)
}

/// Whether the pairing underlying `p` is irreducible and `p` is bi-monotone.
pub fn is_irreducible_bimonotone(p: &OrderedTwoFacedPartition) -> bool {
    classify::is_irreducible(p.partition.partition()) && classify::is_bi_monotone(p)
}

/// Pair partitions as 1-based [`SetPartition`]s from 0-based pairs.
pub fn pairs_to_partition(pairs: &[(usize, usize)]) -> SetPartition {
    let one_based: Vec<(usize, usize)> = pairs.iter().map(|&(a, b)| (a + 1, b + 1)).collect();
    SetPartition::from_pairs(&one_based).expect("pairs cover the ground set")
}
