use serde::{Deserialize, Serialize};

use super::{PartitionError, Pattern};

/// A partition of the ground set `{1, …, m}`.
///
/// Blocks are stored sorted, and ordered by their smallest element, so two
/// partitions are equal iff they have the same blocks.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<usize>>", into = "Vec<Vec<usize>>")]
pub struct SetPartition {
    size: usize,
    blocks: Vec<Vec<usize>>,
}

impl SetPartition {
    pub fn new(blocks: Vec<Vec<usize>>) -> Result<Self, PartitionError> {
        let size: usize = blocks.iter().map(Vec::len).sum();
        let mut seen = vec![false; size];
        let mut blocks = blocks;
        for block in &mut blocks {
            if block.is_empty() {
                return Err(PartitionError::EmptyBlock);
            }
            block.sort_unstable();
            for &point in block.iter() {
                if point == 0 || point > size {
                    return Err(PartitionError::PointOutOfRange { point, size });
                }
                if std::mem::replace(&mut seen[point - 1], true) {
                    return Err(PartitionError::DuplicatePoint(point));
                }
            }
        }
        blocks.sort_unstable_by_key(|b| b[0]);
        Ok(SetPartition { size, blocks })
    }

    /// Builds a pair partition from 1-based pairs, without validation beyond `new`.
    pub fn from_pairs(pairs: &[(usize, usize)]) -> Result<Self, PartitionError> {
        SetPartition::new(pairs.iter().map(|&(a, b)| vec![a, b]).collect())
    }

    /// Builds a partition from block labels, `labels[i]` being the label of point `i + 1`.
    pub fn from_labels<T: Ord + Copy>(labels: &[T]) -> SetPartition {
        let mut groups: std::collections::BTreeMap<T, Vec<usize>> = Default::default();
        for (idx, &label) in labels.iter().enumerate() {
            groups.entry(label).or_default().push(idx + 1);
        }
        SetPartition::new(groups.into_values().collect()).expect("labels always give a partition")
    }

    pub fn empty() -> Self {
        SetPartition {
            size: 0,
            blocks: Vec::new(),
        }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_pair_partition(&self) -> bool {
        self.blocks.iter().all(|b| b.len() == 2)
    }

    /// Block index of every point; entry `i` belongs to point `i + 1`.
    pub fn labels(&self) -> Vec<usize> {
        let mut labels = vec![0; self.size];
        for (idx, block) in self.blocks.iter().enumerate() {
            for &p in block {
                labels[p - 1] = idx;
            }
        }
        labels
    }
}

impl TryFrom<Vec<Vec<usize>>> for SetPartition {
    type Error = PartitionError;

    fn try_from(blocks: Vec<Vec<usize>>) -> Result<Self, Self::Error> {
        SetPartition::new(blocks)
    }
}

impl From<SetPartition> for Vec<Vec<usize>> {
    fn from(p: SetPartition) -> Self {
        p.blocks
    }
}

/// A set partition with a total order on its blocks.
///
/// `order[r]` is the index (into [`SetPartition::blocks`]) of the block with
/// rank `r`; rank 0 is the smallest block.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrderedSetPartition {
    partition: SetPartition,
    order: Vec<usize>,
}

impl OrderedSetPartition {
    pub fn new(partition: SetPartition, order: Vec<usize>) -> Result<Self, PartitionError> {
        let n = partition.num_blocks();
        let mut seen = vec![false; n];
        if order.len() != n {
            return Err(PartitionError::InvalidOrder);
        }
        for &idx in &order {
            if idx >= n || std::mem::replace(&mut seen[idx], true) {
                return Err(PartitionError::InvalidOrder);
            }
        }
        Ok(OrderedSetPartition { partition, order })
    }

    /// Blocks listed from smallest to largest.
    pub fn from_ordered_blocks(blocks: Vec<Vec<usize>>) -> Result<Self, PartitionError> {
        let mins: Vec<usize> = blocks
            .iter()
            .map(|b| b.iter().copied().min().ok_or(PartitionError::EmptyBlock))
            .collect::<Result<_, _>>()?;
        let partition = SetPartition::new(blocks)?;
        let order = mins
            .iter()
            .map(|&m| {
                partition
                    .blocks()
                    .iter()
                    .position(|b| b[0] == m)
                    .expect("block present")
            })
            .collect();
        OrderedSetPartition::new(partition, order)
    }

    pub fn partition(&self) -> &SetPartition {
        &self.partition
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    /// Rank of every block, indexed like [`SetPartition::blocks`].
    pub fn ranks(&self) -> Vec<usize> {
        let mut ranks = vec![0; self.order.len()];
        for (rank, &idx) in self.order.iter().enumerate() {
            ranks[idx] = rank;
        }
        ranks
    }

    /// Rank of the block containing each point; entry `i` is for point `i + 1`.
    pub fn point_ranks(&self) -> Vec<usize> {
        let ranks = self.ranks();
        self.partition
            .labels()
            .into_iter()
            .map(|l| ranks[l])
            .collect()
    }

    pub fn ordered_blocks(&self) -> impl DoubleEndedIterator<Item = &Vec<usize>> {
        self.order.iter().map(|&i| &self.partition.blocks()[i])
    }

    /// Same blocks, order reversed.
    pub fn reversed_order(&self) -> OrderedSetPartition {
        OrderedSetPartition {
            partition: self.partition.clone(),
            order: self.order.iter().rev().copied().collect(),
        }
    }
}

/// A partition together with a face for every point.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TwoFacedPartition {
    pub partition: SetPartition,
    pub pattern: Pattern,
}

impl TwoFacedPartition {
    pub fn new(partition: SetPartition, pattern: Pattern) -> Result<Self, PartitionError> {
        check_len(partition.size(), &pattern)?;
        Ok(TwoFacedPartition { partition, pattern })
    }
}

/// An ordered partition together with a face for every point.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "OrderedTwoFacedRepr", into = "OrderedTwoFacedRepr")]
pub struct OrderedTwoFacedPartition {
    pub partition: OrderedSetPartition,
    pub pattern: Pattern,
}

impl OrderedTwoFacedPartition {
    pub fn new(partition: OrderedSetPartition, pattern: Pattern) -> Result<Self, PartitionError> {
        check_len(partition.partition().size(), &pattern)?;
        Ok(OrderedTwoFacedPartition { partition, pattern })
    }

    pub fn unordered(&self) -> TwoFacedPartition {
        TwoFacedPartition {
            partition: self.partition.partition().clone(),
            pattern: self.pattern.clone(),
        }
    }
}

fn check_len(size: usize, pattern: &Pattern) -> Result<(), PartitionError> {
    if pattern.len() != size {
        return Err(PartitionError::LengthMismatch {
            points: size,
            pattern: pattern.len(),
        });
    }
    Ok(())
}

#[derive(Serialize, Deserialize)]
struct OrderedTwoFacedRepr {
    blocks: SetPartition,
    order: Vec<usize>,
    pattern: Pattern,
}

impl TryFrom<OrderedTwoFacedRepr> for OrderedTwoFacedPartition {
    type Error = PartitionError;

    fn try_from(r: OrderedTwoFacedRepr) -> Result<Self, Self::Error> {
        OrderedTwoFacedPartition::new(OrderedSetPartition::new(r.blocks, r.order)?, r.pattern)
    }
}

impl From<OrderedTwoFacedPartition> for OrderedTwoFacedRepr {
    fn from(p: OrderedTwoFacedPartition) -> Self {
        OrderedTwoFacedRepr {
            blocks: p.partition.partition,
            order: p.partition.order,
            pattern: p.pattern,
        }
    }
}
