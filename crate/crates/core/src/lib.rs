//! Certified search for BNSR Σ-invariants of finitely generated groups.
//!
//! The searches build finite witnesses over Vietoris–Rips complexes of the
//! word metric. [`cert`] verifies them independently of the search code and
//! computes the open cone of characters each witness certifies.

pub mod group;
pub mod rips;
pub mod linalg;
pub mod disk;
pub mod search;
pub mod witness;
pub mod sigma_hom;
pub mod sigma_htpy;
pub mod cert;
