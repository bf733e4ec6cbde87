//! Exact decision procedure for hermitian forms of K3 type.
//!
//! A nondegenerate hermitian form over a totally real or CM number field is
//! of K3 type when its trace form embeds into the rational K3 lattice and
//! its localizations have the right signatures. The crate provides the exact
//! arithmetic underneath: rational local invariants, number fields with real
//! root isolation, rational quadratic spaces, hermitian spaces and their
//! trace forms.

pub mod arith;
pub mod cli;
pub mod decision;
pub mod error;
pub mod hermitian;
pub mod io;
pub mod linalg;
pub mod number_field;
pub mod poly;
pub mod quadratic;
pub mod witness;

pub use arith::{Place, Prime, Rational, SquareClass};
pub use decision::{corollary_route, is_k3_type, K3Verdict};
pub use error::{Error, Result};
pub use hermitian::{AnySpace, HermitianSpace};
pub use number_field::{CmElement, CmField, FieldElement, FieldKind, NumberField, RealEmbedding};
pub use quadratic::{HasseProfile, QuadraticSpace};
pub use witness::{construct_period_witness, PeriodWitness};
