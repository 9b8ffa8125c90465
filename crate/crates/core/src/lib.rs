pub mod catalog;
pub mod cyclotomic;
pub mod error;
pub mod fcv;
pub mod hopfalg;
pub mod relations;
pub mod scv;
pub mod words;

pub use cyclotomic::{CycNumber, EmbedMode, ModCycNumber, PrimeContext};
pub use error::{Error, Result};
pub use words::{Letter, SignedWord, XLetter, XWord, YWord};
pub use hopfalg::{LinComb, Product, RegDecomposition};
pub use fcv::{FcvEvaluator, FcvValue, VerifyReport};
pub use scv::{AssociatorTruncation, BigComplex, Precision, RegPoly, ScvEngine};
pub use relations::{
    BasisReport, BoundReport, DualVerdict, DualVerifier, Provenance, RankMode, RelationMatrix, RelationRecord,
    RelationSystem,
};
