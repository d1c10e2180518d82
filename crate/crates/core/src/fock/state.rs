use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

use super::poly::{Limit, OrderedPoly};
use super::{FockError, Grid};
use crate::numbers::{format_rational, Rational};

/// Grid-interval index of each time variable, nondecreasing.
///
/// A cell stands for the region `t_1 < t_2 < … < t_k` with `t_i` in
/// interval `c_i`. Variables sharing an interval keep their simplex order
/// inside it. The empty cell is the vacuum sector.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cell(Vec<u16>);

impl Cell {
    pub fn new(indices: Vec<u16>) -> Self {
        debug_assert!(indices.windows(2).all(|w| w[0] <= w[1]));
        Cell(indices)
    }

    pub fn vacuum() -> Self {
        Cell(Vec::new())
    }

    pub fn indices(&self) -> &[u16] {
        &self.0
    }

    pub fn particles(&self) -> usize {
        self.0.len()
    }
}

/// A vector of monotone Fock space: a polynomial on each cell.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FockState {
    grid: Arc<Grid>,
    terms: BTreeMap<Cell, OrderedPoly>,
}

impl FockState {
    pub fn zero(grid: Arc<Grid>) -> Self {
        FockState {
            grid,
            terms: BTreeMap::new(),
        }
    }

    /// The vacuum `Ω`: the constant 1 on the empty tuple.
    pub fn vacuum(grid: Arc<Grid>) -> Self {
        let mut s = FockState::zero(grid);
        s.terms.insert(Cell::vacuum(), OrderedPoly::one(0));
        s
    }

    /// A single-cell state.
    pub fn from_cell(grid: Arc<Grid>, cell: Cell, poly: OrderedPoly) -> Result<Self, FockError> {
        if cell.particles() != poly.nvars() {
            return Err(FockError::ArityMismatch);
        }
        if cell
            .indices()
            .iter()
            .any(|&c| c == 0 || c as usize > grid.num_intervals())
        {
            return Err(FockError::SupportOutOfRange);
        }
        let mut s = FockState::zero(grid);
        s.accumulate(cell, poly);
        Ok(s)
    }

    pub fn grid(&self) -> &Arc<Grid> {
        &self.grid
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Cell, &OrderedPoly)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn max_particles(&self) -> usize {
        self.terms.keys().map(Cell::particles).max().unwrap_or(0)
    }

    pub(crate) fn accumulate(&mut self, cell: Cell, poly: OrderedPoly) {
        if poly.is_zero() {
            return;
        }
        match self.terms.entry(cell) {
            Entry::Vacant(v) => {
                v.insert(poly);
            }
            Entry::Occupied(mut o) => {
                o.get_mut().add_assign(&poly);
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_grid(&self, other: &FockState) -> Result<(), FockError> {
        if Arc::ptr_eq(&self.grid, &other.grid) || self.grid == other.grid {
            Ok(())
        } else {
            Err(FockError::GridMismatch)
        }
    }

    pub fn add(&self, other: &FockState) -> Result<FockState, FockError> {
        self.check_grid(other)?;
        let mut out = self.clone();
        for (cell, poly) in &other.terms {
            out.accumulate(cell.clone(), poly.clone());
        }
        Ok(out)
    }

    pub fn scaled(&self, factor: &Rational) -> FockState {
        let mut out = FockState::zero(self.grid.clone());
        for (cell, poly) in &self.terms {
            out.accumulate(cell.clone(), poly.scaled(factor));
        }
        out
    }

    pub fn sub(&self, other: &FockState) -> Result<FockState, FockError> {
        self.add(&other.scaled(&-Rational::one()))
    }

    /// Drops every sector with more than `max` particles.
    pub fn truncated(&self, max: usize) -> FockState {
        FockState {
            grid: self.grid.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(c, _)| c.particles() <= max)
                .map(|(c, p)| (c.clone(), p.clone()))
                .collect(),
        }
    }

    /// `⟨Ω, s⟩`: the constant on the vacuum cell.
    pub fn vacuum_expectation(&self) -> Rational {
        self.terms
            .get(&Cell::vacuum())
            .map(OrderedPoly::constant_value)
            .unwrap_or_else(Rational::zero)
    }

    /// Exact `L²` inner product over the ordered simplex.
    pub fn inner_product(&self, other: &FockState) -> Result<Rational, FockError> {
        self.check_grid(other)?;
        let mut total = Rational::zero();
        for (cell, p) in &self.terms {
            if let Some(q) = other.terms.get(cell) {
                total += integrate_over_cell(&p.mul(q), cell, &self.grid);
            }
        }
        Ok(total)
    }

    pub fn norm_squared(&self) -> Rational {
        self.inner_product(self).expect("same grid")
    }

    /// Translates the state together with its grid by `offset`:
    /// the result `g` satisfies `g(t) = s(t - offset)`.
    pub fn shifted(&self, offset: &Rational) -> FockState {
        let grid = Arc::new(self.grid.shifted(offset));
        FockState {
            grid,
            terms: self
                .terms
                .iter()
                .map(|(c, p)| (c.clone(), p.translated(offset)))
                .collect(),
        }
    }
}

/// Integrates a polynomial over the region described by `cell`, innermost
/// variable first: within each interval the variables run
/// `lo < t_a < t_{a+1} < … < hi`.
pub fn integrate_over_cell(poly: &OrderedPoly, cell: &Cell, grid: &Grid) -> Rational {
    let mut p = poly.clone();
    let idx = cell.indices();
    for (pos, &c) in idx.iter().enumerate() {
        let (lo, hi) = grid.interval(c as usize);
        let upper = match idx.get(pos + 1) {
            Some(&next) if next == c => Limit::Var(1),
            _ => Limit::Const(hi),
        };
        p = p.integrate(0, Limit::Const(lo), upper);
    }
    p.constant_value()
}

impl fmt::Display for FockState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (cell, poly)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            let terms: Vec<String> = poly
                .terms()
                .map(|(m, c)| {
                    let vars: Vec<String> = m
                        .iter()
                        .enumerate()
                        .filter(|(_, &e)| e > 0)
                        .map(|(v, &e)| {
                            if e == 1 {
                                format!("t{}", v + 1)
                            } else {
                                format!("t{}^{e}", v + 1)
                            }
                        })
                        .collect();
                    if vars.is_empty() {
                        format_rational(c)
                    } else {
                        format!("{}*{}", format_rational(c), vars.join("*"))
                    }
                })
                .collect();
            write!(f, "{:?}:({})", cell.indices(), terms.join(" + "))?;
        }
        Ok(())
    }
}
