//! Bi-monotone product of pointed representations.
//!
//! A [`ProductRep`] never forms the tensor-product matrix. Vectors are sparse
//! maps from tensor basis keys to scalars, and a letter of factor `k` acts on
//! factor `k` alone after checking that the other factors it projects with
//! `P` sit at the vacuum.

mod checks;
mod engine;
mod marginals;
mod pair;
mod rep;
pub mod samples;
mod scalar;
mod word;

use thiserror::Error;

pub use checks::{
    associativity_check, bimonotone_product, factorization_check, gram_is_psd,
    marginal_restoration_check, FactorizationReport,
};
pub use engine::{summed_moment, EmbeddedLetter, Key, ProductRep, SparseVector, SummedLetter};
pub(crate) use marginals::for_each_word;
pub use marginals::{factorization_eval, table_moment, Marginals, MomentTable};
pub use pair::standard_pair_rep;
pub use rep::{Generator, PointedRep};
pub use scalar::Scalar;
pub use word::{Letter, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProductError {
    #[error("representation dimension must be at least 1")]
    ZeroDimension,
    #[error("generator `{symbol}` is not a {dim}x{dim} matrix")]
    BadMatrix { symbol: String, dim: usize },
    #[error("unknown generator `{symbol}` in factor {factor}")]
    UnknownSymbol { factor: usize, symbol: String },
    #[error("factor {factor} out of range (product has {len} factors)")]
    FactorOutOfRange { factor: usize, len: usize },
    #[error("factor {factor} has no generator on the {face} face")]
    MissingFace { factor: usize, face: char },
    #[error("bad word at position {position}: {reason}")]
    WordSyntax { position: usize, reason: String },
    #[error("no marginal moment for factor {factor}, word `{word}`")]
    MissingMarginal { factor: usize, word: String },
    #[error("word does not match the ordered partition: {0}")]
    PartitionMismatch(&'static str),
    #[error("covariance matrix is not symmetric")]
    NotSymmetric,
    #[error("covariance matrix is not positive semidefinite")]
    NotPsd,
    #[error("covariance needs irrational entries to realize: {0}")]
    NotRationallyRealizable(String),
    #[error("invalid representation file: {0}")]
    Json(String),
}
