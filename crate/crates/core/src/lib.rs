//! skewlab-core: exact arithmetic for twisted polynomial rings K[t;sigma]
//! over cyclic extensions of finite fields, the nonassociative algebras
//! obtained as their quotients, and reducibility/factorization routines
//! built on eigenring structure.

pub mod error;
pub mod centerpoly;
pub mod fq;
pub mod linalg;
pub mod petit;
pub mod reducibility;
pub mod selftest;
pub mod skew;
pub mod text;
pub mod tower;

pub use centerpoly::CenterPoly;
pub use error::{Error, Result};
pub use fq::{Fq, FqCtx};
pub use linalg::FMatrix;
pub use petit::{EigenringReport, NucleusReport, PetitAlgebra};
pub use reducibility::{Factorization, IrreducibilityCertificate, Verdict, VerdictKind, VerdictReason};
pub use skew::{MclmResult, SkewPoly};
pub use text::TowerSpec;
pub use tower::{build_tower, FieldTower, KElem, Subfield};
