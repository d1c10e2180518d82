//! Small fixed representations used by tests and the `verify` command.

use super::{Generator, PointedRep};
use crate::numbers::{parse_complex, ExactComplex};
use crate::partitions::Face;

fn matrix(rows: &[&[&str]]) -> Vec<Vec<ExactComplex>> {
    rows.iter()
        .map(|r| {
            r.iter()
                .map(|e| parse_complex(e).expect("sample entry"))
                .collect()
        })
        .collect()
}

fn rep(dim: usize, gens: Vec<(&str, Face, Vec<Vec<ExactComplex>>)>) -> PointedRep {
    PointedRep::new(
        dim,
        gens.into_iter()
            .map(|(s, face, matrix)| (s.to_string(), Generator { face, matrix })),
    )
    .expect("sample representation")
}

/// Centered, self-adjoint, dimension 2, with a complex entry.
pub fn qubit() -> PointedRep {
    rep(
        2,
        vec![
            ("bl", Face::Left, matrix(&[&["0", "1"], &["1", "0"]])),
            ("br", Face::Right, matrix(&[&["0", "-i"], &["i", "1/2"]])),
        ],
    )
}

/// Centered, self-adjoint, dimension 3.
pub fn qutrit() -> PointedRep {
    rep(
        3,
        vec![
            (
                "bl",
                Face::Left,
                matrix(&[&["0", "1", "0"], &["1", "1", "1"], &["0", "1", "-1"]]),
            ),
            (
                "br",
                Face::Right,
                matrix(&[&["0", "1/2", "1"], &["1/2", "0", "i"], &["1", "-i", "2"]]),
            ),
        ],
    )
}

/// Centered, self-adjoint, dimension 2, different weights.
pub fn qubit_b() -> PointedRep {
    rep(
        2,
        vec![
            ("bl", Face::Left, matrix(&[&["0", "2"], &["2", "-1"]])),
            ("br", Face::Right, matrix(&[&["0", "1+i"], &["1-i", "3"]])),
        ],
    )
}

/// Not centered: `a` has a nonzero vacuum expectation.
pub fn skewed() -> PointedRep {
    rep(
        2,
        vec![
            ("a", Face::Left, matrix(&[&["1", "1"], &["1", "0"]])),
            ("br", Face::Right, matrix(&[&["2", "i"], &["-i", "0"]])),
        ],
    )
}
