//! Vietoris–Rips simplices and integer chains over a group.
//!
//! A q-simplex is an ordered (q+1)-tuple of elements; it is k-small when all
//! pairwise distances are at most k. Chains are unnormalised: degenerate tuples
//! are basis elements like any other.

use crate::group::{Character, Group, GroupElement, HalfSpaceWindow};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RipsError {
    #[error("boundary of a 0-chain is undefined; use the augmentation")]
    BoundaryOfVertex,
    #[error("augmentation is only defined on 0-chains, got dimension {0}")]
    NotZeroDimensional(usize),
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
}

/// Ordered tuple of vertices. Ordering is lexicographic over shortlex vertices.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Simplex {
    vertices: Vec<GroupElement>,
}

impl Simplex {
    pub fn new(vertices: Vec<GroupElement>) -> Simplex {
        assert!(!vertices.is_empty(), "a simplex has at least one vertex");
        Simplex { vertices }
    }

    pub fn dim(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn vertices(&self) -> &[GroupElement] {
        &self.vertices
    }

    /// All pairwise distances at most `k`.
    pub fn is_k_small(&self, group: &Group, k: usize) -> bool {
        let v = &self.vertices;
        (0..v.len()).all(|i| (i + 1..v.len()).all(|j| group.within(&v[i], &v[j], k)))
    }

    /// Largest pairwise distance.
    pub fn diameter(&self, group: &Group) -> usize {
        let v = &self.vertices;
        let mut d = 0;
        for i in 0..v.len() {
            for j in i + 1..v.len() {
                d = d.max(group.distance(&v[i], &v[j]));
            }
        }
        d
    }

    /// The face with vertex `i` deleted.
    pub fn face(&self, i: usize) -> Simplex {
        let mut v = self.vertices.clone();
        v.remove(i);
        Simplex::new(v)
    }

    pub fn translate(&self, group: &Group, g: &GroupElement) -> Simplex {
        Simplex {
            vertices: self.vertices.iter().map(|x| group.multiply(g, x)).collect(),
        }
    }

    /// First vertex is the identity.
    pub fn is_representative(&self) -> bool {
        self.vertices[0].is_identity()
    }

    /// Splits `σ = g·x̄` into `(g, x̄)` with `x̄` a representative.
    pub fn to_representative(&self, group: &Group) -> (GroupElement, Simplex) {
        let g = self.vertices[0].clone();
        if g.is_identity() {
            return (g, self.clone());
        }
        let rep = Simplex {
            vertices: self.vertices.iter().map(|x| group.quotient(&g, x)).collect(),
        };
        (g, rep)
    }

    /// `min χ` over the vertices.
    pub fn valuation(&self, group: &Group, chi: &Character) -> BigRational {
        self.vertices
            .iter()
            .map(|g| chi.eval(group, g))
            .min()
            .expect("nonempty")
    }

    pub fn display(&self, group: &Group) -> String {
        let parts: Vec<String> = self.vertices.iter().map(|g| group.display(g)).collect();
        format!("({})", parts.join(","))
    }
}

/// `v` of a chain; the zero chain has valuation `+∞`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Valuation {
    Finite(BigRational),
    Infinite,
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(x) => write!(f, "{}", crate::group::format_rational(x)),
            Valuation::Infinite => write!(f, "+inf"),
        }
    }
}

/// Finite integer combination of q-simplices. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Chain {
    q: usize,
    terms: BTreeMap<Simplex, BigInt>,
}

impl Chain {
    pub fn zero(q: usize) -> Chain {
        Chain {
            q,
            terms: BTreeMap::new(),
        }
    }

    pub fn simplex(s: Simplex) -> Chain {
        let q = s.dim();
        let mut c = Chain::zero(q);
        c.terms.insert(s, BigInt::one());
        c
    }

    pub fn from_terms(
        q: usize,
        terms: impl IntoIterator<Item = (Simplex, BigInt)>,
    ) -> Result<Chain, RipsError> {
        let mut c = Chain::zero(q);
        for (s, k) in terms {
            if s.dim() != q {
                return Err(RipsError::DimensionMismatch(q, s.dim()));
            }
            c.add_term(s, k);
        }
        Ok(c)
    }

    pub fn dim(&self) -> usize {
        self.q
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Simplex, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, s: &Simplex) -> BigInt {
        self.terms.get(s).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn add_term(&mut self, s: Simplex, k: BigInt) {
        debug_assert_eq!(s.dim(), self.q);
        if k.is_zero() {
            return;
        }
        match self.terms.entry(s) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(k);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += k;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Chain, k: &BigInt) {
        assert_eq!(self.q, other.q, "adding chains of different dimension");
        for (s, c) in &other.terms {
            self.add_term(s.clone(), c * k);
        }
    }

    pub fn plus(&self, other: &Chain) -> Chain {
        let mut c = self.clone();
        c.add_scaled(other, &BigInt::one());
        c
    }

    pub fn minus(&self, other: &Chain) -> Chain {
        let mut c = self.clone();
        c.add_scaled(other, &-BigInt::one());
        c
    }

    /// `∂(g₀,…,g_q) = Σ (−1)^i (g₀,…,ĝᵢ,…,g_q)`.
    pub fn boundary(&self) -> Result<Chain, RipsError> {
        if self.q == 0 {
            return Err(RipsError::BoundaryOfVertex);
        }
        let mut out = Chain::zero(self.q - 1);
        for (s, k) in &self.terms {
            for i in 0..=self.q {
                let sign = if i % 2 == 0 { k.clone() } else { -k };
                out.add_term(s.face(i), sign);
            }
        }
        Ok(out)
    }

    /// Sum of coefficients of a 0-chain.
    pub fn augmentation(&self) -> Result<BigInt, RipsError> {
        if self.q != 0 {
            return Err(RipsError::NotZeroDimensional(self.q));
        }
        Ok(self.terms.values().sum())
    }

    pub fn valuation(&self, group: &Group, chi: &Character) -> Valuation {
        self.terms
            .keys()
            .map(|s| s.valuation(group, chi))
            .min()
            .map_or(Valuation::Infinite, Valuation::Finite)
    }

    pub fn translate(&self, group: &Group, g: &GroupElement) -> Chain {
        if g.is_identity() {
            return self.clone();
        }
        Chain {
            q: self.q,
            terms: self
                .terms
                .iter()
                .map(|(s, k)| (s.translate(group, g), k.clone()))
                .collect(),
        }
    }

    pub fn is_k_small(&self, group: &Group, k: usize) -> bool {
        self.terms.keys().all(|s| s.is_k_small(group, k))
    }

    /// Vertices of the support, after cancellation.
    pub fn vertex_support(&self) -> BTreeSet<GroupElement> {
        self.terms
            .keys()
            .flat_map(|s| s.vertices.iter().cloned())
            .collect()
    }

    pub fn display(&self, group: &Group) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(s, k)| format!("{k}{}", s.display(group)))
            .collect();
        parts.join(" + ")
    }
}

/// Applies a map given on representatives to every simplex of `chain`,
/// using `φ(g·x̄) = g·φ(x̄)`. On a missing entry returns the representative.
pub fn extend_equivariantly<'a>(
    group: &Group,
    chain: &Chain,
    out_dim: usize,
    lookup: impl Fn(&Simplex) -> Option<&'a Chain>,
) -> Result<Chain, Simplex> {
    let mut out = Chain::zero(out_dim);
    for (s, k) in chain.terms() {
        let (g, rep) = s.to_representative(group);
        let image = lookup(&rep).ok_or(rep)?;
        out.add_scaled(&image.translate(group, &g), k);
    }
    Ok(out)
}

/// All k-small `(1, g₁, …, g_q)` in lexicographic shortlex order, degenerate
/// tuples included.
pub fn enumerate_rep_simplices(group: &Group, q: usize, k: usize) -> Vec<Simplex> {
    let mut pool = group.ball(k);
    pool.sort();
    let mut out = Vec::new();
    let mut prefix = vec![group.identity()];
    extend_tuples(group, &pool, k, q, &mut prefix, &mut out);
    out
}

/// All k-small q-simplices with vertices in the window, in lexicographic order.
pub fn enumerate_constrained_simplices(
    group: &Group,
    q: usize,
    k: usize,
    chi: &Character,
    window: &HalfSpaceWindow,
) -> Vec<Simplex> {
    let pool = window.elements(group, chi);
    let mut out = Vec::new();
    let mut prefix = Vec::new();
    extend_tuples(group, &pool, k, q + 1, &mut prefix, &mut out);
    out
}

fn extend_tuples(
    group: &Group,
    pool: &[GroupElement],
    k: usize,
    remaining: usize,
    prefix: &mut Vec<GroupElement>,
    out: &mut Vec<Simplex>,
) {
    if remaining == 0 {
        out.push(Simplex::new(prefix.clone()));
        return;
    }
    for g in pool {
        if prefix.iter().all(|p| group.within(p, g, k)) {
            prefix.push(g.clone());
            extend_tuples(group, pool, k, remaining - 1, prefix, out);
            prefix.pop();
        }
    }
}
