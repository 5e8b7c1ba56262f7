//! Abstract triangulated disks with group-element labels.
//!
//! A disk is certified purely combinatorially: edge incidences, a single
//! boundary cycle, connectivity, vertex links and Euler characteristic 1.

use crate::group::GroupElement;
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CombinatorialDisk {
    /// Vertex index → label.
    pub labels: Vec<GroupElement>,
    pub triangles: Vec<[usize; 3]>,
    pub boundary: Vec<usize>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DiskError {
    #[error("triangle {0:?} repeats a vertex or uses an unknown vertex")]
    BadTriangle([usize; 3]),
    #[error("triangle {0:?} appears twice")]
    DuplicateTriangle([usize; 3]),
    #[error("edge {0:?} lies in {1} triangles")]
    EdgeIncidence((usize, usize), usize),
    #[error("boundary cycle is malformed: {0}")]
    Boundary(String),
    #[error("complex is not connected")]
    Disconnected,
    #[error("link of vertex {0} is not a path or cycle of the right kind")]
    Link(usize),
    #[error("Euler characteristic is {0}, a disk has 1")]
    Euler(i64),
}

fn edge(a: usize, b: usize) -> (usize, usize) {
    (a.min(b), a.max(b))
}

impl CombinatorialDisk {
    /// The one-vertex disk bounding a constant loop.
    pub fn point(label: GroupElement) -> CombinatorialDisk {
        CombinatorialDisk {
            labels: vec![label],
            triangles: Vec::new(),
            boundary: vec![0],
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn boundary_labels(&self) -> Vec<GroupElement> {
        self.boundary.iter().map(|&i| self.labels[i].clone()).collect()
    }

    /// Edge → number of triangles containing it.
    pub fn edge_counts(&self) -> BTreeMap<(usize, usize), usize> {
        let mut counts = BTreeMap::new();
        for &[a, b, c] in &self.triangles {
            for e in [edge(a, b), edge(b, c), edge(a, c)] {
                *counts.entry(e).or_insert(0) += 1;
            }
        }
        counts
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.labels.len() as i64 - self.edge_counts().len() as i64 + self.triangles.len() as i64
    }

    pub fn check(&self) -> Result<(), DiskError> {
        let v = self.labels.len();
        if self.triangles.is_empty() {
            return if v == 1 && self.boundary == [0] {
                Ok(())
            } else {
                Err(DiskError::Boundary(
                    "a disk without triangles must be a single vertex".into(),
                ))
            };
        }
        let mut seen = BTreeSet::new();
        for &t in &self.triangles {
            let [a, b, c] = t;
            if a == b || b == c || a == c || a >= v || b >= v || c >= v {
                return Err(DiskError::BadTriangle(t));
            }
            let mut key = t;
            key.sort_unstable();
            if !seen.insert(key) {
                return Err(DiskError::DuplicateTriangle(t));
            }
        }
        let counts = self.edge_counts();
        if let Some((&e, &k)) = counts.iter().find(|(_, &k)| k > 2) {
            return Err(DiskError::EdgeIncidence(e, k));
        }

        let n = self.boundary.len();
        if n < 3 {
            return Err(DiskError::Boundary("fewer than three vertices".into()));
        }
        let on_boundary: BTreeSet<usize> = self.boundary.iter().copied().collect();
        if on_boundary.len() != n || self.boundary.iter().any(|&i| i >= v) {
            return Err(DiskError::Boundary("repeated or unknown vertex".into()));
        }
        let cycle_edges: BTreeSet<(usize, usize)> = (0..n)
            .map(|i| edge(self.boundary[i], self.boundary[(i + 1) % n]))
            .collect();
        let free_edges: BTreeSet<(usize, usize)> = counts
            .iter()
            .filter(|(_, &k)| k == 1)
            .map(|(&e, _)| e)
            .collect();
        if cycle_edges != free_edges {
            return Err(DiskError::Boundary(
                "edges in exactly one triangle do not form the listed cycle".into(),
            ));
        }

        // connectivity through triangle edges
        let mut adjacency = vec![Vec::new(); v];
        for &(a, b) in counts.keys() {
            adjacency[a].push(b);
            adjacency[b].push(a);
        }
        let mut reached = vec![false; v];
        let mut stack = vec![0];
        reached[0] = true;
        while let Some(x) = stack.pop() {
            for &y in &adjacency[x] {
                if !reached[y] {
                    reached[y] = true;
                    stack.push(y);
                }
            }
        }
        if reached.iter().any(|r| !r) {
            return Err(DiskError::Disconnected);
        }

        for x in 0..v {
            if !link_ok(&self.triangles, x, on_boundary.contains(&x)) {
                return Err(DiskError::Link(x));
            }
        }

        let euler = self.euler_characteristic();
        if euler != 1 {
            return Err(DiskError::Euler(euler));
        }
        Ok(())
    }
}

/// The link of an interior vertex is one cycle, of a boundary vertex one path.
fn link_ok(triangles: &[[usize; 3]], x: usize, boundary: bool) -> bool {
    let mut degree: BTreeMap<usize, usize> = BTreeMap::new();
    let mut adjacency: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    let mut edges = 0;
    for t in triangles.iter().filter(|t| t.contains(&x)) {
        let others: Vec<usize> = t.iter().copied().filter(|&y| y != x).collect();
        let (a, b) = (others[0], others[1]);
        *degree.entry(a).or_insert(0) += 1;
        *degree.entry(b).or_insert(0) += 1;
        adjacency.entry(a).or_default().push(b);
        adjacency.entry(b).or_default().push(a);
        edges += 1;
    }
    if edges == 0 {
        return false;
    }
    let ends = degree.values().filter(|&&d| d == 1).count();
    if degree.values().any(|&d| d > 2) || ends != if boundary { 2 } else { 0 } {
        return false;
    }
    // a single component
    let start = *degree.keys().next().unwrap();
    let mut seen = BTreeSet::from([start]);
    let mut stack = vec![start];
    while let Some(y) = stack.pop() {
        for &z in &adjacency[&y] {
            if seen.insert(z) {
                stack.push(z);
            }
        }
    }
    seen.len() == degree.len()
}

/// Drops consecutive repeats, treating the sequence as cyclic with a fixed start.
pub fn collapse_stutter(labels: &[GroupElement]) -> Vec<GroupElement> {
    let mut out: Vec<GroupElement> = Vec::with_capacity(labels.len());
    for g in labels {
        if out.last() != Some(g) {
            out.push(g.clone());
        }
    }
    while out.len() > 1 && out.last() == out.first() {
        out.pop();
    }
    out
}
