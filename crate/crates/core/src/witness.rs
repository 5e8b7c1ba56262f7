//! Finite witness data produced by the searches and consumed by the verifier.

use crate::disk::CombinatorialDisk;
use crate::group::{Character, GroupElement};
use crate::rips::{Chain, Simplex};
use std::collections::BTreeMap;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Flavor {
    Homological,
    Homotopical,
}

impl Flavor {
    pub fn name(self) -> &'static str {
        match self {
            Flavor::Homological => "homological",
            Flavor::Homotopical => "homotopical",
        }
    }

    /// Accepts the long names and the CLI spellings `hom` / `htpy`.
    pub fn from_name(s: &str) -> Option<Flavor> {
        match s {
            "hom" | "homological" => Some(Flavor::Homological),
            "htpy" | "homotopical" => Some(Flavor::Homotopical),
            _ => None,
        }
    }
}

/// The chain endomorphism φ on representatives `(1, g₁, …, g_q)`, q = 0…m.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomWitness {
    pub spec_hash: String,
    pub chi: Character,
    pub t: GroupElement,
    pub n: usize,
    pub m: usize,
    pub connecting_vector: Vec<usize>,
    /// `tables[q]`: representative q-simplex → image chain.
    pub tables: Vec<BTreeMap<Simplex, Chain>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgePath {
    pub vertices: Vec<GroupElement>,
}

/// The simplicial map φ in degrees ≤ 2: `φ₀(1) = t`, edge paths for
/// representative edges and labelled disks for representative triangles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HtpyWitness {
    pub spec_hash: String,
    pub chi: Character,
    pub t: GroupElement,
    pub n: usize,
    pub connecting_vector: Vec<usize>,
    pub paths: BTreeMap<Simplex, EdgePath>,
    pub disks: BTreeMap<Simplex, CombinatorialDisk>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    Hom(HomWitness),
    Htpy(HtpyWitness),
}

impl Witness {
    pub fn flavor(&self) -> Flavor {
        match self {
            Witness::Hom(_) => Flavor::Homological,
            Witness::Htpy(_) => Flavor::Homotopical,
        }
    }

    pub fn chi(&self) -> &Character {
        match self {
            Witness::Hom(w) => &w.chi,
            Witness::Htpy(w) => &w.chi,
        }
    }

    pub fn t(&self) -> &GroupElement {
        match self {
            Witness::Hom(w) => &w.t,
            Witness::Htpy(w) => &w.t,
        }
    }

    pub fn n(&self) -> usize {
        match self {
            Witness::Hom(w) => w.n,
            Witness::Htpy(w) => w.n,
        }
    }

    pub fn m(&self) -> usize {
        match self {
            Witness::Hom(w) => w.m,
            Witness::Htpy(_) => 2,
        }
    }

    pub fn spec_hash(&self) -> &str {
        match self {
            Witness::Hom(w) => &w.spec_hash,
            Witness::Htpy(w) => &w.spec_hash,
        }
    }

    pub fn connecting_vector(&self) -> &[usize] {
        match self {
            Witness::Hom(w) => &w.connecting_vector,
            Witness::Htpy(w) => &w.connecting_vector,
        }
    }
}
