//! Exact arithmetic in skein algebras of small surfaces, given by finite
//! presentations over `Z[A, A^-1]`.

pub mod error;
pub mod expr;
pub mod laurent;
pub mod linalg;
pub mod maps;
pub mod ncalg;
pub mod planar;
pub mod presentations;
pub mod report;
pub mod rewrite;
pub mod structure;
pub mod suites;
pub mod torus;

pub use error::{Error, Result};
pub use laurent::{Laurent, QuotientSpec, Specialization};
pub use ncalg::{Element, GeneratorTable, Word};
pub use rewrite::{
    check_confluence, orient_relation, MonomialRule, RuleSystem, Strategy, SwapRule,
};
