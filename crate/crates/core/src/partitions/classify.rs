//! Membership tests for the partition classes.
//!
//! The bi-monotone rule follows the tensor-product model: a point `b` nested
//! strictly inside the span of a block `V` (and belonging to another block
//! `W`) forces `V > W` when `b` is a left point and `V < W` when it is a right
//! point. With a constant left pattern this is exactly the monotone rule.

use super::{Face, OrderedSetPartition, OrderedTwoFacedPartition, SetPartition, TwoFacedPartition};

/// `(min, max)` of every block.
fn spans(p: &SetPartition) -> Vec<(usize, usize)> {
    p.blocks()
        .iter()
        .map(|b| (b[0], *b.last().expect("blocks are nonempty")))
        .collect()
}

/// Calls `f(outer_block, point)` for every point lying strictly inside the
/// span of a block other than its own.
fn for_each_nesting(p: &SetPartition, mut f: impl FnMut(usize, usize) -> bool) -> bool {
    let labels = p.labels();
    let spans = spans(p);
    for (idx, &(lo, hi)) in spans.iter().enumerate() {
        for point in lo + 1..hi {
            if labels[point - 1] != idx && !f(idx, point) {
                return false;
            }
        }
    }
    true
}

fn crossing_free(labels: &[usize], same_face: impl Fn(usize, usize) -> bool) -> bool {
    let m = labels.len();
    for a in 0..m {
        for c in a + 2..m {
            if labels[a] != labels[c] {
                continue;
            }
            for b in a + 1..c {
                if labels[b] == labels[a] || !same_face(b, c) {
                    continue;
                }
                if (c + 1..m).any(|d| labels[d] == labels[b]) {
                    return false;
                }
            }
        }
    }
    true
}

/// No `a < b < c < d` with `a, c` in one block and `b, d` in another.
pub fn is_noncrossing(p: &SetPartition) -> bool {
    crossing_free(&p.labels(), |_, _| true)
}

/// Every block is a run of consecutive points.
pub fn is_interval(p: &SetPartition) -> bool {
    for_each_nesting(p, |_, _| false)
}

/// Every cut after a point `a < m` is straddled by some block.
pub fn is_irreducible(p: &SetPartition) -> bool {
    let spans = spans(p);
    (1..p.size()).all(|a| spans.iter().any(|&(lo, hi)| lo <= a && a < hi))
}

/// A block nested inside another block's span must be smaller than it.
pub fn is_monotone(p: &OrderedSetPartition) -> bool {
    let ranks = p.ranks();
    let labels = p.partition().labels();
    for_each_nesting(p.partition(), |outer, point| {
        ranks[outer] > ranks[labels[point - 1]]
    })
}

/// No crossing `a < b < c < d` (`a, c ∈ V`, `b, d ∈ W`, `V ≠ W`) whose two
/// inner points `b, c` carry the same face.
pub fn is_bi_noncrossing(p: &TwoFacedPartition) -> bool {
    let faces = p.pattern.faces();
    crossing_free(&p.partition.labels(), |b, c| faces[b] == faces[c])
}

/// Bi-monotone rule: a nested left point's block must be smaller than the
/// enclosing block, a nested right point's block larger.
pub fn is_bi_monotone(p: &OrderedTwoFacedPartition) -> bool {
    let ranks = p.partition.ranks();
    let labels = p.partition.partition().labels();
    let faces = p.pattern.faces();
    for_each_nesting(p.partition.partition(), |outer, point| {
        let inner = labels[point - 1];
        match faces[point - 1] {
            Face::Left => ranks[outer] > ranks[inner],
            Face::Right => ranks[outer] < ranks[inner],
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::Pattern;

    fn sp(blocks: &[&[usize]]) -> SetPartition {
        SetPartition::new(blocks.iter().map(|b| b.to_vec()).collect()).unwrap()
    }

    fn ordered(blocks: &[&[usize]]) -> OrderedSetPartition {
        OrderedSetPartition::from_ordered_blocks(blocks.iter().map(|b| b.to_vec()).collect())
            .unwrap()
    }

    fn two_faced(blocks: &[&[usize]], pattern: &str) -> TwoFacedPartition {
        TwoFacedPartition::new(sp(blocks), pattern.parse().unwrap()).unwrap()
    }

    #[test]
    fn noncrossing_examples() {
        assert!(is_noncrossing(&sp(&[&[1, 4], &[2, 3]])));
        assert!(!is_noncrossing(&sp(&[&[1, 3], &[2, 4]])));
        assert!(is_noncrossing(&sp(&[&[1, 2], &[3, 4]])));
        assert!(!is_noncrossing(&sp(&[&[1, 3, 5], &[2, 6], &[4]])));
    }

    #[test]
    fn interval_examples() {
        assert!(is_interval(&sp(&[&[1, 2], &[3, 4]])));
        assert!(!is_interval(&sp(&[&[1, 4], &[2, 3]])));
        assert!(is_interval(&sp(&[&[1], &[2], &[3]])));
    }

    #[test]
    fn irreducible_examples() {
        assert!(is_irreducible(&sp(&[&[1, 4], &[2, 3]])));
        assert!(!is_irreducible(&sp(&[&[1, 2], &[3, 4]])));
        assert!(is_irreducible(&sp(&[&[1, 3], &[2, 4]])));
        assert!(is_irreducible(&SetPartition::empty()));
        assert!(is_irreducible(&sp(&[&[1]])));
    }

    #[test]
    fn monotone_examples() {
        assert!(is_monotone(&ordered(&[&[2, 3], &[1, 4]])));
        assert!(!is_monotone(&ordered(&[&[1, 4], &[2, 3]])));
        assert!(!is_monotone(&ordered(&[&[1, 3], &[2, 4]])));
        assert!(!is_monotone(&ordered(&[&[2, 4], &[1, 3]])));
    }

    #[test]
    fn bi_noncrossing_examples() {
        assert!(is_bi_noncrossing(&two_faced(
            &[&[1, 4], &[2, 3], &[5, 6]],
            "rrrlll"
        )));
        assert!(!is_bi_noncrossing(&two_faced(&[&[1, 3], &[2, 4]], "rrrr")));
        // inner points 2 (l) and 3 (r) differ, so the crossing is allowed
        assert!(is_bi_noncrossing(&two_faced(&[&[1, 3], &[2, 4]], "rlrl")));
        assert!(!is_bi_noncrossing(&two_faced(&[&[1, 3], &[2, 4]], "rllr")));
    }

    #[test]
    fn nested_partition_has_three_orderings() {
        let pattern: Pattern = "rrrlll".parse().unwrap();
        let blocks: [&[usize]; 3] = [&[1, 4], &[2, 3], &[5, 6]];
        let orders = [
            [0, 1, 2],
            [0, 2, 1],
            [1, 0, 2],
            [1, 2, 0],
            [2, 0, 1],
            [2, 1, 0],
        ];
        let good: Vec<[usize; 3]> = orders
            .into_iter()
            .filter(|order| {
                let o = ordered(&order.map(|i| blocks[i]));
                is_bi_monotone(&OrderedTwoFacedPartition::new(o, pattern.clone()).unwrap())
            })
            .collect();
        assert_eq!(good.len(), 3);
        // {1,4} always sits below {2,3}
        for order in good {
            let pos_outer = order.iter().position(|&i| i == 0).unwrap();
            let pos_inner = order.iter().position(|&i| i == 1).unwrap();
            assert!(pos_outer < pos_inner);
        }
    }

    #[test]
    fn single_block_is_bi_monotone() {
        for pattern in Pattern::all(2) {
            let p = OrderedTwoFacedPartition::new(ordered(&[&[1, 2]]), pattern).unwrap();
            assert!(is_bi_monotone(&p));
        }
    }
}
