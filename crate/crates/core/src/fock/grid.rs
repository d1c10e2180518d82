use std::fmt;

use serde::{Deserialize, Serialize};

use super::FockError;
use crate::numbers::{format_rational, rational_from_int, Rational};

/// Strictly increasing rational breakpoints `u_0 < u_1 < … < u_M`.
///
/// Interval `j` (1-based, `1..=M`) is `[u_{j-1}, u_j]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<RationalText>", into = "Vec<RationalText>")]
pub struct Grid {
    breakpoints: Vec<Rational>,
}

impl Grid {
    pub fn new(breakpoints: Vec<Rational>) -> Result<Self, FockError> {
        if breakpoints.len() < 2 {
            return Err(FockError::InvalidGrid(
                "a grid needs at least two breakpoints",
            ));
        }
        if breakpoints.windows(2).any(|w| w[0] >= w[1]) {
            return Err(FockError::InvalidGrid(
                "breakpoints must be strictly increasing",
            ));
        }
        Ok(Grid { breakpoints })
    }

    /// Breakpoints `0, 1, …, n`.
    pub fn unit(n: usize) -> Self {
        Grid::new((0..=n as i64).map(rational_from_int).collect()).expect("n >= 1")
    }

    pub fn breakpoints(&self) -> &[Rational] {
        &self.breakpoints
    }

    pub fn num_intervals(&self) -> usize {
        self.breakpoints.len() - 1
    }

    /// Bounds of interval `j` (1-based).
    pub fn interval(&self, j: usize) -> (&Rational, &Rational) {
        (&self.breakpoints[j - 1], &self.breakpoints[j])
    }

    /// The interval range `first..=last` covering `[s, t]`; both ends must be breakpoints.
    pub fn interval_range(&self, s: &Rational, t: &Rational) -> Result<(usize, usize), FockError> {
        let find = |x: &Rational| {
            self.breakpoints
                .iter()
                .position(|b| b == x)
                .ok_or_else(|| FockError::NotABreakpoint(format_rational(x)))
        };
        let (a, b) = (find(s)?, find(t)?);
        if a >= b {
            return Err(FockError::EmptySupport);
        }
        Ok((a + 1, b))
    }

    /// Grid translated by `offset`.
    pub fn shifted(&self, offset: &Rational) -> Grid {
        Grid {
            breakpoints: self.breakpoints.iter().map(|b| b + offset).collect(),
        }
    }
}

impl fmt::Display for Grid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.breakpoints.iter().map(format_rational).collect();
        write!(f, "{}", parts.join(","))
    }
}

#[derive(Serialize, Deserialize)]
#[serde(transparent)]
struct RationalText(#[serde(with = "crate::numbers::rational_string")] Rational);

impl TryFrom<Vec<RationalText>> for Grid {
    type Error = FockError;

    fn try_from(points: Vec<RationalText>) -> Result<Self, Self::Error> {
        Grid::new(points.into_iter().map(|r| r.0).collect())
    }
}

impl From<Grid> for Vec<RationalText> {
    fn from(g: Grid) -> Self {
        g.breakpoints.into_iter().map(RationalText).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numbers::rational;

    #[test]
    fn validation() {
        assert!(Grid::new(vec![rational(0, 1)]).is_err());
        assert!(Grid::new(vec![rational(1, 1), rational(1, 1)]).is_err());
        assert!(Grid::new(vec![rational(1, 1), rational(0, 1)]).is_err());
        assert_eq!(Grid::unit(3).num_intervals(), 3);
    }

    #[test]
    fn ranges() {
        let g = Grid::new(vec![
            rational(0, 1),
            rational(1, 2),
            rational(1, 1),
            rational(2, 1),
        ])
        .unwrap();
        assert_eq!(
            g.interval_range(&rational(0, 1), &rational(1, 1)).unwrap(),
            (1, 2)
        );
        assert_eq!(
            g.interval_range(&rational(1, 2), &rational(2, 1)).unwrap(),
            (2, 3)
        );
        assert!(g.interval_range(&rational(1, 3), &rational(1, 1)).is_err());
        assert!(g.interval_range(&rational(1, 1), &rational(1, 1)).is_err());
        let json = serde_json::to_string(&g).unwrap();
        assert_eq!(json, r#"["0","1/2","1","2"]"#);
        assert_eq!(serde_json::from_str::<Grid>(&json).unwrap(), g);
    }
}
