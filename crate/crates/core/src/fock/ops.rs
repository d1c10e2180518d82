//! Creation, annihilation and field operators over unions of grid intervals.

use std::fmt;
use std::sync::Arc;

use super::poly::Limit;
use super::state::{Cell, FockState};
use super::{FockError, Grid};
use crate::numbers::Rational;
use crate::partitions::Face;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OpKind {
    /// `λ*`: prepend a new first variable.
    LeftCreate,
    /// `λ`: integrate out the first variable below the second.
    LeftAnnihilate,
    /// `ρ*`: append a new last variable.
    RightCreate,
    /// `ρ`: integrate out the last variable above the previous one.
    RightAnnihilate,
    /// `b^l = λ* + λ`.
    LeftField,
    /// `b^r = ρ* + ρ`.
    RightField,
    /// `b = b^l + b^r`.
    Field,
}

impl OpKind {
    pub fn field(face: Face) -> OpKind {
        match face {
            Face::Left => OpKind::LeftField,
            Face::Right => OpKind::RightField,
        }
    }

    /// Text token used in word specs.
    pub fn token(self) -> &'static str {
        match self {
            OpKind::LeftCreate => "L+",
            OpKind::LeftAnnihilate => "L-",
            OpKind::RightCreate => "R+",
            OpKind::RightAnnihilate => "R-",
            OpKind::LeftField => "Bl",
            OpKind::RightField => "Br",
            OpKind::Field => "B",
        }
    }

    pub fn from_token(token: &str) -> Option<OpKind> {
        [
            OpKind::LeftCreate,
            OpKind::LeftAnnihilate,
            OpKind::RightCreate,
            OpKind::RightAnnihilate,
            OpKind::LeftField,
            OpKind::RightField,
            OpKind::Field,
        ]
        .into_iter()
        .find(|k| k.token() == token)
    }

    /// The adjoint operator kind.
    pub fn adjoint(self) -> OpKind {
        match self {
            OpKind::LeftCreate => OpKind::LeftAnnihilate,
            OpKind::LeftAnnihilate => OpKind::LeftCreate,
            OpKind::RightCreate => OpKind::RightAnnihilate,
            OpKind::RightAnnihilate => OpKind::RightCreate,
            other => other,
        }
    }
}

/// An operator with test function `1_{[u_{first-1}, u_last]}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntervalOp {
    pub kind: OpKind,
    pub first: usize,
    pub last: usize,
}

impl IntervalOp {
    pub fn new(kind: OpKind, first: usize, last: usize) -> Self {
        IntervalOp { kind, first, last }
    }

    /// Operator supported on `[s, t]`, both of which must be grid breakpoints.
    pub fn between(
        kind: OpKind,
        grid: &Grid,
        s: &Rational,
        t: &Rational,
    ) -> Result<Self, FockError> {
        let (first, last) = grid.interval_range(s, t)?;
        Ok(IntervalOp { kind, first, last })
    }

    pub fn with_kind(self, kind: OpKind) -> Self {
        IntervalOp { kind, ..self }
    }

    fn check(&self, grid: &Grid) -> Result<(), FockError> {
        if self.first == 0 || self.first > self.last || self.last > grid.num_intervals() {
            return Err(FockError::SupportOutOfRange);
        }
        Ok(())
    }
}

impl fmt::Display for IntervalOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}..{}]", self.kind.token(), self.first, self.last)
    }
}

/// Applies `op` to `state`.
pub fn apply(op: &IntervalOp, state: &FockState) -> Result<FockState, FockError> {
    op.check(state.grid())?;
    let range = op.first as u16..=op.last as u16;
    let mut out = FockState::zero(state.grid().clone());
    match op.kind {
        OpKind::LeftCreate => left_create(state, range, &mut out),
        OpKind::RightCreate => right_create(state, range, &mut out),
        OpKind::LeftAnnihilate => left_annihilate(state, range, &mut out),
        OpKind::RightAnnihilate => right_annihilate(state, range, &mut out),
        OpKind::LeftField => {
            left_create(state, range.clone(), &mut out);
            left_annihilate(state, range, &mut out);
        }
        OpKind::RightField => {
            right_create(state, range.clone(), &mut out);
            right_annihilate(state, range, &mut out);
        }
        OpKind::Field => {
            left_create(state, range.clone(), &mut out);
            left_annihilate(state, range.clone(), &mut out);
            right_create(state, range.clone(), &mut out);
            right_annihilate(state, range, &mut out);
        }
    }
    Ok(out)
}

type Range = std::ops::RangeInclusive<u16>;

fn left_create(state: &FockState, range: Range, out: &mut FockState) {
    for (cell, poly) in state.terms() {
        let idx = cell.indices();
        let lifted = poly.insert_var(0);
        for j in range.clone() {
            if idx.first().is_some_and(|&c| j > c) {
                break;
            }
            let mut next = Vec::with_capacity(idx.len() + 1);
            next.push(j);
            next.extend_from_slice(idx);
            out.accumulate(Cell::new(next), lifted.clone());
        }
    }
}

fn right_create(state: &FockState, range: Range, out: &mut FockState) {
    for (cell, poly) in state.terms() {
        let idx = cell.indices();
        let lifted = poly.insert_var(idx.len());
        for j in range.clone() {
            if idx.last().is_some_and(|&c| j < c) {
                continue;
            }
            let mut next = idx.to_vec();
            next.push(j);
            out.accumulate(Cell::new(next), lifted.clone());
        }
    }
}

fn left_annihilate(state: &FockState, range: Range, out: &mut FockState) {
    let grid = state.grid().clone();
    for (cell, poly) in state.terms() {
        let idx = cell.indices();
        let Some(&c) = idx.first() else { continue };
        if !range.contains(&c) {
            continue;
        }
        let (lo, hi) = grid.interval(c as usize);
        // τ runs below the next variable when it shares the interval
        let upper = if idx.get(1) == Some(&c) {
            Limit::Var(1)
        } else {
            Limit::Const(hi)
        };
        let reduced = poly.integrate(0, Limit::Const(lo), upper);
        out.accumulate(Cell::new(idx[1..].to_vec()), reduced);
    }
}

fn right_annihilate(state: &FockState, range: Range, out: &mut FockState) {
    let grid = state.grid().clone();
    for (cell, poly) in state.terms() {
        let idx = cell.indices();
        let Some(&c) = idx.last() else { continue };
        if !range.contains(&c) {
            continue;
        }
        let k = idx.len();
        let (lo, hi) = grid.interval(c as usize);
        let lower = if k >= 2 && idx[k - 2] == c {
            Limit::Var(k - 2)
        } else {
            Limit::Const(lo)
        };
        let reduced = poly.integrate(k - 1, lower, Limit::Const(hi));
        out.accumulate(Cell::new(idx[..k - 1].to_vec()), reduced);
    }
}

/// Applies `word` right to left (the last operator acts first).
pub fn apply_word(word: &[IntervalOp], state: &FockState) -> Result<FockState, FockError> {
    word.iter()
        .rev()
        .try_fold(state.clone(), |s, op| apply(op, &s))
}

/// `⟨Ω, op_1 ⋯ op_m Ω⟩`.
///
/// Sectors that can no longer return to the vacuum within the remaining
/// operators are dropped as the word is applied.
pub fn moment(
    grid: &Arc<Grid>,
    word: &[IntervalOp],
) -> Result<crate::numbers::Rational, FockError> {
    let mut state = FockState::vacuum(grid.clone());
    for (step, op) in word.iter().enumerate().rev() {
        state = apply(op, &state)?.truncated(step);
        if state.is_zero() {
            break;
        }
    }
    Ok(state.vacuum_expectation())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::poly::OrderedPoly;
    use crate::numbers::{rational, rational_from_int};

    fn unit() -> Arc<Grid> {
        Arc::new(Grid::unit(1))
    }

    #[test]
    fn create_then_annihilate() {
        let g = unit();
        let omega = FockState::vacuum(g.clone());
        let one = apply(&IntervalOp::new(OpKind::LeftCreate, 1, 1), &omega).unwrap();
        let expected =
            FockState::from_cell(g.clone(), Cell::new(vec![1]), OrderedPoly::one(1)).unwrap();
        assert_eq!(one, expected);
        let back = apply(&IntervalOp::new(OpKind::LeftAnnihilate, 1, 1), &one).unwrap();
        assert_eq!(back, omega);
        assert!(
            apply(&IntervalOp::new(OpKind::LeftAnnihilate, 1, 1), &omega)
                .unwrap()
                .is_zero()
        );
    }

    #[test]
    fn annihilating_the_half_square() {
        let g = unit();
        let create = IntervalOp::new(OpKind::LeftCreate, 1, 1);
        let two = apply_word(&[create, create], &FockState::vacuum(g.clone())).unwrap();
        let half_square =
            FockState::from_cell(g.clone(), Cell::new(vec![1, 1]), OrderedPoly::one(2)).unwrap();
        assert_eq!(two, half_square);
        let reduced = apply(&create.with_kind(OpKind::LeftAnnihilate), &two).unwrap();
        let t1 = OrderedPoly::from_terms(1, [(vec![1], rational_from_int(1))]);
        assert_eq!(
            reduced,
            FockState::from_cell(g, Cell::new(vec![1]), t1).unwrap()
        );
    }

    #[test]
    fn second_moments_are_one() {
        let g = unit();
        for a in [OpKind::LeftField, OpKind::RightField] {
            for b in [OpKind::LeftField, OpKind::RightField] {
                let word = [IntervalOp::new(a, 1, 1), IntervalOp::new(b, 1, 1)];
                assert_eq!(moment(&g, &word).unwrap(), rational_from_int(1));
            }
        }
    }

    #[test]
    fn fourth_moment_of_full_field() {
        let b = IntervalOp::new(OpKind::Field, 1, 1);
        assert_eq!(moment(&unit(), &[b; 4]).unwrap(), rational_from_int(24));
        assert_eq!(moment(&unit(), &[b; 3]).unwrap(), rational_from_int(0));
    }

    #[test]
    fn monotone_fourth_moment() {
        let b = IntervalOp::new(OpKind::LeftField, 1, 1);
        assert_eq!(moment(&unit(), &[b; 4]).unwrap(), rational(3, 2));
    }

    #[test]
    fn support_is_validated() {
        let omega = FockState::vacuum(unit());
        assert_eq!(
            apply(&IntervalOp::new(OpKind::LeftCreate, 1, 2), &omega),
            Err(FockError::SupportOutOfRange)
        );
        assert_eq!(
            apply(&IntervalOp::new(OpKind::LeftCreate, 0, 1), &omega),
            Err(FockError::SupportOutOfRange)
        );
    }
}
