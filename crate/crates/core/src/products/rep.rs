use std::collections::BTreeMap;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::ProductError;
use crate::numbers::{complex_string, ExactComplex};
use crate::partitions::Face;

/// One generator: a face and a square matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Generator {
    pub face: Face,
    pub matrix: Vec<Vec<ExactComplex>>,
}

/// A finite-dimensional pointed representation. The vacuum is the first
/// basis vector.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RepFile", into = "RepFile")]
pub struct PointedRep {
    dim: usize,
    generators: BTreeMap<String, Generator>,
}

impl PointedRep {
    pub fn new(
        dim: usize,
        generators: impl IntoIterator<Item = (String, Generator)>,
    ) -> Result<Self, ProductError> {
        if dim == 0 {
            return Err(ProductError::ZeroDimension);
        }
        let generators: BTreeMap<String, Generator> = generators.into_iter().collect();
        for (symbol, g) in &generators {
            if g.matrix.len() != dim || g.matrix.iter().any(|row| row.len() != dim) {
                return Err(ProductError::BadMatrix {
                    symbol: symbol.clone(),
                    dim,
                });
            }
        }
        Ok(PointedRep { dim, generators })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &BTreeMap<String, Generator> {
        &self.generators
    }

    pub fn symbols(&self) -> impl Iterator<Item = &str> {
        self.generators.keys().map(String::as_str)
    }

    pub fn generator(&self, symbol: &str) -> Option<&Generator> {
        self.generators.get(symbol)
    }

    /// First generator (in symbol order) living on `face`.
    pub fn symbol_for_face(&self, face: Face) -> Option<&str> {
        self.generators
            .iter()
            .find(|(_, g)| g.face == face)
            .map(|(s, _)| s.as_str())
    }

    /// Every generator has `⟨Ω, a Ω⟩ = 0`.
    pub fn is_centered(&self) -> bool {
        self.generators.values().all(|g| g.matrix[0][0].is_zero())
    }

    pub fn is_self_adjoint(&self) -> bool {
        self.generators.values().all(|g| {
            (0..self.dim).all(|i| (0..self.dim).all(|j| g.matrix[i][j] == g.matrix[j][i].conj()))
        })
    }

    /// `⟨Ω, a_1 ⋯ a_m Ω⟩` in this representation alone.
    pub fn moment(&self, symbols: &[&str]) -> Result<ExactComplex, ProductError> {
        let mut v = vec![ExactComplex::zero(); self.dim];
        v[0] = num_traits::One::one();
        for symbol in symbols.iter().rev() {
            let g = self
                .generators
                .get(*symbol)
                .ok_or_else(|| ProductError::UnknownSymbol {
                    factor: 1,
                    symbol: symbol.to_string(),
                })?;
            v = g
                .matrix
                .iter()
                .map(|row| {
                    row.iter()
                        .zip(&v)
                        .fold(ExactComplex::zero(), |acc, (a, x)| acc + a * x)
                })
                .collect();
        }
        Ok(v.swap_remove(0))
    }

    pub fn from_json(text: &str) -> Result<Self, ProductError> {
        serde_json::from_str(text).map_err(|e| ProductError::Json(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("representation serializes")
    }
}

#[derive(Serialize, Deserialize)]
#[serde(transparent)]
struct Entry(#[serde(with = "complex_string")] ExactComplex);

#[derive(Serialize, Deserialize)]
struct GeneratorEntry {
    symbol: String,
    face: Face,
    matrix: Vec<Vec<Entry>>,
}

#[derive(Serialize, Deserialize)]
struct RepFile {
    dim: usize,
    generators: Vec<GeneratorEntry>,
}

impl TryFrom<RepFile> for PointedRep {
    type Error = ProductError;

    fn try_from(file: RepFile) -> Result<Self, Self::Error> {
        let mut seen = BTreeMap::new();
        for g in file.generators {
            let matrix = g
                .matrix
                .into_iter()
                .map(|row| row.into_iter().map(|e| e.0).collect())
                .collect();
            if seen
                .insert(
                    g.symbol.clone(),
                    Generator {
                        face: g.face,
                        matrix,
                    },
                )
                .is_some()
            {
                return Err(ProductError::Json(format!(
                    "duplicate generator `{}`",
                    g.symbol
                )));
            }
        }
        PointedRep::new(file.dim, seen)
    }
}

impl From<PointedRep> for RepFile {
    fn from(rep: PointedRep) -> Self {
        RepFile {
            dim: rep.dim,
            generators: rep
                .generators
                .into_iter()
                .map(|(symbol, g)| GeneratorEntry {
                    symbol,
                    face: g.face,
                    matrix: g
                        .matrix
                        .into_iter()
                        .map(|row| row.into_iter().map(Entry).collect())
                        .collect(),
                })
                .collect(),
        }
    }
}
