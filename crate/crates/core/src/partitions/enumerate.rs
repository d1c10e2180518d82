use super::SetPartition;

/// Streams every pair partition of `{1, …, m}`.
///
/// Each partition is encoded by a mixed-radix counter: step `i` matches the
/// smallest unmatched point with the `choice[i]`-th remaining point. The
/// counter runs through `(m-1)·(m-3)···1` values, so exactly `(m-1)!!`
/// partitions are produced. Odd `m` yields nothing; `m = 0` yields the empty
/// partition once.
#[derive(Clone, Debug)]
pub struct PairPartitions {
    m: usize,
    choice: Vec<usize>,
    exhausted: bool,
}

pub fn pair_partitions(m: usize) -> PairPartitions {
    PairPartitions {
        m,
        choice: vec![0; m / 2],
        exhausted: m % 2 == 1,
    }
}

impl PairPartitions {
    fn decode(&self) -> Vec<(usize, usize)> {
        let mut free: Vec<usize> = (1..=self.m).collect();
        self.choice
            .iter()
            .map(|&c| {
                let first = free.remove(0);
                let partner = free.remove(c);
                (first, partner)
            })
            .collect()
    }

    fn advance(&mut self) {
        for i in (0..self.choice.len()).rev() {
            let radix = self.m - 2 * i - 1;
            self.choice[i] += 1;
            if self.choice[i] < radix {
                return;
            }
            self.choice[i] = 0;
        }
        self.exhausted = true;
    }
}

impl Iterator for PairPartitions {
    type Item = SetPartition;

    fn next(&mut self) -> Option<SetPartition> {
        if self.exhausted {
            return None;
        }
        let pairs = self.decode();
        self.advance();
        Some(SetPartition::from_pairs(&pairs).expect("decoded pairs cover the ground set"))
    }
}

/// Calls `f` with every total order of `n` blocks (as `order[rank] = block`)
/// that respects `below`, where bit `j` of `below[i]` requires block `j`
/// to rank under block `i`.
pub fn for_each_linear_extension(below: &[u64], mut f: impl FnMut(&[usize])) {
    fn go(below: &[u64], placed: u64, order: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
        if order.len() == below.len() {
            f(order);
            return;
        }
        for v in 0..below.len() {
            if placed >> v & 1 == 0 && below[v] & !placed == 0 {
                order.push(v);
                go(below, placed | 1 << v, order, f);
                order.pop();
            }
        }
    }
    go(below, 0, &mut Vec::with_capacity(below.len()), &mut f);
}
