//! Exact-arithmetic decision procedures for extendable Galois points of
//! projective hypersurfaces: coefficient fields, sparse forms and linear
//! coordinate changes, the inner/outer Galois-point checkers with witness
//! extraction, resolvent-cubic classification, characteristic-transfer
//! predicates and prime bounds, and a brute-force automorphism-enumeration
//! oracle over small finite fields.
//!
//! All arithmetic is exact (big rationals and finite-field elements); there
//! is no floating point anywhere. Batch-style inner loops run data-parallel
//! under the default `parallel` feature and sequentially without it.

pub mod batch;
pub mod check;
pub mod field;
pub mod oracle;
pub mod poly;
pub mod resolvent;
pub mod transfer;

pub use check::{GaloisStatus, GaloisVerdict, GroupDesc, ProjectionKind, WitnessData};
pub use field::{FieldDesc, FieldElement};
pub use poly::{Form, LinearChange, MultiPoly};
