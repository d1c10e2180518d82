//! Structural checks on families of engine states.

use std::collections::HashSet;
use std::sync::Arc;

use super::ops::{apply, moment, IntervalOp, OpKind};
use super::{FockError, FockState, Grid};
use num_traits::Zero;

use crate::numbers::{is_psd_hermitian, real, ExactComplex, Rational};
use crate::partitions::Face;
use crate::products::{for_each_word, table_moment, Letter, MomentTable, Word};

/// Distinct nonzero states `w Ω` for words `w` of length `<= max_len` over
/// `alphabet`, in breadth-first order (Ω first).
pub fn reachable_states(
    grid: &Arc<Grid>,
    alphabet: &[IntervalOp],
    max_len: usize,
) -> Result<Vec<FockState>, FockError> {
    let omega = FockState::vacuum(grid.clone());
    let mut seen: HashSet<FockState> = HashSet::from([omega.clone()]);
    let mut all = vec![omega.clone()];
    let mut frontier = vec![omega];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for state in &frontier {
            for op in alphabet {
                let image = apply(op, state)?;
                if !image.is_zero() && seen.insert(image.clone()) {
                    next.push(image);
                }
            }
        }
        all.extend(next.iter().cloned());
        frontier = next;
    }
    Ok(all)
}

/// `⟨A g, h⟩ = ⟨g, A* h⟩` for every pair of `states`, where `A` is `op` and
/// `A*` its adjoint kind on the same support.
pub fn adjointness_holds(op: &IntervalOp, states: &[FockState]) -> Result<bool, FockError> {
    let adjoint = op.with_kind(op.kind.adjoint());
    let forward: Vec<FockState> = states
        .iter()
        .map(|g| apply(op, g))
        .collect::<Result<_, _>>()?;
    let backward: Vec<FockState> = states
        .iter()
        .map(|h| apply(&adjoint, h))
        .collect::<Result<_, _>>()?;
    let sectors: Vec<Option<usize>> = states.iter().map(sector).collect();
    let shift: isize = match op.kind {
        OpKind::LeftCreate | OpKind::RightCreate => 1,
        OpKind::LeftAnnihilate | OpKind::RightAnnihilate => -1,
        _ => 0,
    };
    for ((g, ag), sg) in states.iter().zip(&forward).zip(&sectors) {
        for ((h, bh), sh) in states.iter().zip(&backward).zip(&sectors) {
            if let (Some(a), Some(b), true) = (sg, sh, shift != 0) {
                if *a as isize + shift != *b as isize {
                    continue;
                }
            }
            if ag.inner_product(h)? != g.inner_product(bh)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Particle number of a state living in a single sector.
fn sector(state: &FockState) -> Option<usize> {
    let mut cells = state.terms().map(|(c, _)| c.particles());
    let first = cells.next()?;
    cells.all(|n| n == first).then_some(first)
}

/// Checks `λ*(f) = λ(f)*` and `ρ*(f) = ρ(f)*` for `f = 1` on intervals
/// `first..=last`, over all states reachable from Ω by words of length
/// `<= max_len` in single-interval creation and annihilation operators.
pub fn adjointness_check(
    grid: &Arc<Grid>,
    first: usize,
    last: usize,
    max_len: usize,
) -> Result<bool, FockError> {
    let alphabet = single_interval_alphabet(grid);
    let states = reachable_states(grid, &alphabet, max_len)?;
    for kind in [OpKind::LeftCreate, OpKind::RightCreate] {
        if !adjointness_holds(&IntervalOp::new(kind, first, last), &states)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The four creation/annihilation operators on each single grid interval.
pub fn single_interval_alphabet(grid: &Grid) -> Vec<IntervalOp> {
    (1..=grid.num_intervals())
        .flat_map(|j| {
            [
                OpKind::LeftCreate,
                OpKind::LeftAnnihilate,
                OpKind::RightCreate,
                OpKind::RightAnnihilate,
            ]
            .map(|k| IntervalOp::new(k, j, j))
        })
        .collect()
}

/// Whether the Gram matrix of `states` is positive semidefinite.
pub fn gram_is_psd(states: &[FockState]) -> Result<bool, FockError> {
    let mut gram = Vec::with_capacity(states.len());
    for a in states {
        let row = states
            .iter()
            .map(|b| a.inner_product(b).map(real))
            .collect::<Result<Vec<_>, _>>()?;
        gram.push(row);
    }
    Ok(is_psd_hermitian(&gram))
}

/// `A_{r,s} + A_{s,t} = A_{r,t}` as maps, for every operator kind and every
/// triple of breakpoints `r < s < t`, on all states reachable from Ω by
/// words of length `<= max_len` in single-interval operators.
pub fn additivity_check(grid: &Arc<Grid>, max_len: usize) -> Result<bool, FockError> {
    let states = reachable_states(grid, &single_interval_alphabet(grid), max_len)?;
    let m = grid.num_intervals();
    let kinds = [
        OpKind::LeftCreate,
        OpKind::LeftAnnihilate,
        OpKind::RightCreate,
        OpKind::RightAnnihilate,
        OpKind::LeftField,
        OpKind::RightField,
        OpKind::Field,
    ];
    for r in 0..m {
        for s in r + 1..m {
            for t in s + 1..=m {
                for kind in kinds {
                    let (a, b, c) = (
                        IntervalOp::new(kind, r + 1, s),
                        IntervalOp::new(kind, s + 1, t),
                        IntervalOp::new(kind, r + 1, t),
                    );
                    for state in &states {
                        if apply(&a, state)?.add(&apply(&b, state)?)? != apply(&c, state)? {
                            return Ok(false);
                        }
                    }
                }
            }
        }
    }
    Ok(true)
}

/// `Φ(w_{s,s+h}) = Φ(w_{0,h})` for every offset `s`, every word over the
/// fields `b^l, b^r, b` of length `<= field_len`, and every word over the
/// creation and annihilation operators of length `<= ladder_len`.
pub fn stationarity_check(
    width: &Rational,
    offsets: &[Rational],
    field_len: usize,
    ladder_len: usize,
) -> Result<bool, FockError> {
    let base = Arc::new(Grid::new(vec![Rational::zero(), width.clone()])?);
    let alphabets = [
        (
            vec![OpKind::LeftField, OpKind::RightField, OpKind::Field],
            field_len,
        ),
        (
            vec![
                OpKind::LeftCreate,
                OpKind::LeftAnnihilate,
                OpKind::RightCreate,
                OpKind::RightAnnihilate,
            ],
            ladder_len,
        ),
    ];
    let shifted: Vec<Arc<Grid>> = offsets.iter().map(|s| Arc::new(base.shifted(s))).collect();
    let mut ok = true;
    for (kinds, max_len) in alphabets {
        let tokens: Vec<&str> = kinds.iter().map(|k| k.token()).collect();
        for_each_word(&tokens, max_len, |w| {
            let ops: Vec<IntervalOp> = w
                .iter()
                .map(|t| IntervalOp::new(OpKind::from_token(t).expect("token"), 1, 1))
                .collect();
            let reference = moment(&base, &ops)?;
            for g in &shifted {
                ok &= moment(g, &ops)? == reference;
            }
            Ok::<(), FockError>(())
        })?;
    }
    Ok(ok)
}

/// Outcome of [`independence_check`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct IndependenceReport {
    pub words: usize,
    pub failures: Vec<String>,
}

impl IndependenceReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn face_of(kind: OpKind) -> Face {
    match kind {
        OpKind::LeftCreate | OpKind::LeftAnnihilate | OpKind::LeftField => Face::Left,
        _ => Face::Right,
    }
}

/// Compares mixed moments of operators on `[0,1]` and `[1,2]` with the
/// bi-monotone product of the two marginal moment tables. Words over the
/// fields `b^l, b^r` run up to `field_len`, words over the creation and
/// annihilation operators up to `ladder_len`.
pub fn independence_check(
    field_len: usize,
    ladder_len: usize,
) -> Result<IndependenceReport, FockError> {
    let grid = Arc::new(Grid::unit(2));
    let mut report = IndependenceReport::default();
    let alphabets = [
        (vec![OpKind::LeftField, OpKind::RightField], field_len),
        (
            vec![
                OpKind::LeftCreate,
                OpKind::LeftAnnihilate,
                OpKind::RightCreate,
                OpKind::RightAnnihilate,
            ],
            ladder_len,
        ),
    ];
    for (kinds, max_len) in alphabets {
        let tokens: Vec<&str> = kinds.iter().map(|k| k.token()).collect();
        let mut table: MomentTable<ExactComplex> = MomentTable::new(2);
        for factor in 0..2 {
            for_each_word(&tokens, max_len, |w| {
                let ops: Vec<IntervalOp> = w
                    .iter()
                    .map(|t| {
                        IntervalOp::new(
                            OpKind::from_token(t).expect("token"),
                            factor + 1,
                            factor + 1,
                        )
                    })
                    .collect();
                let value = moment(&grid, &ops)?;
                table.insert(
                    factor,
                    w.iter().map(|t| t.to_string()).collect(),
                    real(value),
                );
                Ok::<(), FockError>(())
            })?;
        }
        let letters: Vec<String> = (0..2)
            .flat_map(|f| tokens.iter().map(move |t| format!("{f}{t}")))
            .collect();
        let refs: Vec<&str> = letters.iter().map(String::as_str).collect();
        for_each_word(&refs, max_len, |w| {
            let ops: Vec<IntervalOp> = w
                .iter()
                .map(|l| {
                    let factor = l[..1].parse::<usize>().expect("factor digit");
                    IntervalOp::new(
                        OpKind::from_token(&l[1..]).expect("token"),
                        factor + 1,
                        factor + 1,
                    )
                })
                .collect();
            let word: Word = ops
                .iter()
                .map(|op| Letter::new(op.first - 1, op.kind.token()))
                .collect();
            let faces: Vec<Face> = ops.iter().map(|op| face_of(op.kind)).collect();
            let fock = real(moment(&grid, &ops)?);
            let product = table_moment(&word, &faces, &table).expect("table covers every subword");
            report.words += 1;
            if fock != product {
                report.failures.push(
                    ops.iter()
                        .map(|op| op.to_string())
                        .collect::<Vec<_>>()
                        .join(" "),
                );
            }
            Ok::<(), FockError>(())
        })?;
    }
    Ok(report)
}
