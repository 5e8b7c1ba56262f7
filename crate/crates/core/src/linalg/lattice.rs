//! Sparse incremental integer echelon form.
//!
//! Vectors are inserted one at a time and reduced against rows keyed by their
//! leading index; when two rows collide on a pivot they are replaced by a
//! unimodular (extended-gcd) combination. Each row remembers which inputs it
//! is made of, so membership tests return integer coefficients on the inputs.

use super::IntMatrix;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;

/// Sorted `(index, value)` pairs, no zero values.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SparseVec {
    entries: Vec<(usize, BigInt)>,
}

impl SparseVec {
    pub fn new() -> SparseVec {
        SparseVec::default()
    }

    pub fn unit(i: usize) -> SparseVec {
        SparseVec {
            entries: vec![(i, BigInt::one())],
        }
    }

    /// Duplicate indices are summed.
    pub fn from_entries(entries: impl IntoIterator<Item = (usize, BigInt)>) -> SparseVec {
        let mut map: BTreeMap<usize, BigInt> = BTreeMap::new();
        for (i, x) in entries {
            *map.entry(i).or_insert_with(BigInt::zero) += x;
        }
        SparseVec {
            entries: map.into_iter().filter(|(_, x)| !x.is_zero()).collect(),
        }
    }

    pub fn from_dense(xs: &[BigInt]) -> SparseVec {
        SparseVec {
            entries: xs
                .iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .map(|(i, x)| (i, x.clone()))
                .collect(),
        }
    }

    pub fn to_dense(&self, len: usize) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); len];
        for (i, x) in &self.entries {
            out[*i] = x.clone();
        }
        out
    }

    pub fn entries(&self) -> &[(usize, BigInt)] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn lead(&self) -> Option<(usize, &BigInt)> {
        self.entries.first().map(|(i, x)| (*i, x))
    }

    pub fn get(&self, i: usize) -> BigInt {
        match self.entries.binary_search_by_key(&i, |e| e.0) {
            Ok(k) => self.entries[k].1.clone(),
            Err(_) => BigInt::zero(),
        }
    }

    /// `x·self + y·other`.
    pub fn combine(&self, x: &BigInt, other: &SparseVec, y: &BigInt) -> SparseVec {
        let (a, b) = (&self.entries, &other.entries);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            let v = match (a.get(i), b.get(j)) {
                (Some((ia, va)), Some((ib, vb))) if ia == ib => {
                    i += 1;
                    j += 1;
                    (*ia, x * va + y * vb)
                }
                (Some((ia, va)), Some((ib, _))) if ia < ib => {
                    i += 1;
                    (*ia, x * va)
                }
                (Some((ia, va)), None) => {
                    i += 1;
                    (*ia, x * va)
                }
                (_, Some((ib, vb))) => {
                    j += 1;
                    (*ib, y * vb)
                }
                (None, None) => unreachable!(),
            };
            if !v.1.is_zero() {
                out.push(v);
            }
        }
        SparseVec { entries: out }
    }

    fn negated(&self) -> SparseVec {
        SparseVec {
            entries: self.entries.iter().map(|(i, x)| (*i, -x)).collect(),
        }
    }
}

#[derive(Clone, Debug)]
struct Row {
    vector: SparseVec,
    combo: SparseVec,
}

impl Row {
    fn pivot_value(&self) -> &BigInt {
        self.vector.lead().expect("rows are nonzero").1
    }

    /// `x·self + y·other` on both parts.
    fn combine(&self, x: &BigInt, other: &Row, y: &BigInt) -> Row {
        Row {
            vector: self.vector.combine(x, &other.vector, y),
            combo: self.combo.combine(x, &other.combo, y),
        }
    }

    fn normalise_sign(self) -> Row {
        if self.pivot_value().is_negative() {
            Row {
                vector: self.vector.negated(),
                combo: self.combo.negated(),
            }
        } else {
            self
        }
    }
}

/// The lattice spanned by the inserted vectors, in echelon form.
#[derive(Clone, Debug, Default)]
pub struct EchelonLattice {
    rows: BTreeMap<usize, Row>,
    inputs: usize,
    track_kernel: bool,
    kernel: Vec<SparseVec>,
}

impl EchelonLattice {
    pub fn new() -> EchelonLattice {
        EchelonLattice::default()
    }

    /// Also collects a basis of the input relations (`Σ cᵢ vᵢ = 0`).
    pub fn with_kernel() -> EchelonLattice {
        EchelonLattice {
            track_kernel: true,
            ..EchelonLattice::default()
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn input_count(&self) -> usize {
        self.inputs
    }

    /// Kernel basis over the inputs; empty unless built with [`EchelonLattice::with_kernel`].
    pub fn kernel(&self) -> &[SparseVec] {
        &self.kernel
    }

    /// Echelon basis, ordered by pivot.
    pub fn basis(&self) -> impl Iterator<Item = &SparseVec> {
        self.rows.values().map(|r| &r.vector)
    }

    /// Adds a vector and returns its input index.
    pub fn insert(&mut self, v: SparseVec) -> usize {
        let index = self.inputs;
        self.inputs += 1;
        let mut row = Row {
            vector: v,
            combo: SparseVec::unit(index),
        };
        loop {
            let Some((p, a)) = row.vector.lead() else {
                if self.track_kernel {
                    self.kernel.push(row.combo);
                }
                return index;
            };
            let a = a.clone();
            let Some(existing) = self.rows.get(&p) else {
                self.rows.insert(p, row.normalise_sign());
                return index;
            };
            let c = existing.pivot_value().clone();
            if a.is_multiple_of(&c) {
                row = row.combine(&BigInt::one(), existing, &-(&a / &c));
                continue;
            }
            let e = c.extended_gcd(&a);
            let merged = existing.combine(&e.x, &row, &e.y).normalise_sign();
            let rest = row.combine(&(&c / &e.gcd), existing, &-(&a / &e.gcd));
            self.rows.insert(p, merged);
            row = rest;
        }
    }

    /// Integer coefficients `x` on the inputs with `Σ xᵢ vᵢ = target`, if any exist.
    pub fn solve(&self, target: &SparseVec) -> Option<SparseVec> {
        let mut r = target.clone();
        let mut x = SparseVec::new();
        while let Some((p, a)) = r.lead() {
            let row = self.rows.get(&p)?;
            let c = row.pivot_value();
            if !a.is_multiple_of(c) {
                return None;
            }
            let k = a / c;
            r = r.combine(&BigInt::one(), &row.vector, &-&k);
            x = x.combine(&BigInt::one(), &row.combo, &k);
        }
        Some(x)
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.solve(v).is_some()
    }
}

/// Some `x` with `A·x = b`, or `None` when no integer solution exists.
pub fn solve_linear(a: &IntMatrix, b: &[BigInt]) -> Option<Vec<BigInt>> {
    assert_eq!(a.rows(), b.len(), "right-hand side has the wrong length");
    let mut lattice = EchelonLattice::new();
    for j in 0..a.cols() {
        lattice.insert(SparseVec::from_dense(&a.column(j)));
    }
    lattice
        .solve(&SparseVec::from_dense(b))
        .map(|x| x.to_dense(a.cols()))
}

/// Like [`solve_linear`] but also returns a basis of `ker A`.
pub fn solve_linear_with_kernel(
    a: &IntMatrix,
    b: &[BigInt],
) -> (Option<Vec<BigInt>>, Vec<Vec<BigInt>>) {
    let mut lattice = EchelonLattice::with_kernel();
    for j in 0..a.cols() {
        lattice.insert(SparseVec::from_dense(&a.column(j)));
    }
    let x = lattice
        .solve(&SparseVec::from_dense(b))
        .map(|x| x.to_dense(a.cols()));
    let kernel = lattice
        .kernel()
        .iter()
        .map(|k| k.to_dense(a.cols()))
        .collect();
    (x, kernel)
}
