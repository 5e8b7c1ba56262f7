//! Homotopical search in degree ≤ 2: φ₀(1) = t, edge paths for representative
//! edges and labelled disks filling the induced loops of representative
//! triangles.

use crate::disk::{collapse_stutter, CombinatorialDisk};
use crate::group::{Character, Group, GroupElement, HalfSpaceWindow, Level};
use crate::rips::{enumerate_rep_simplices, Simplex};
use crate::search::{
    expired, map_in_order, pick_t, Clock, ConnectingVector, Flavor, MaybeReason, MaybeReport,
    NotFound, Outcome, SearchBudget, SearchError,
};
use crate::witness::{EdgePath, HtpyWitness};
use std::cmp::Reverse;
use std::collections::{BTreeMap, BinaryHeap, HashSet};
use std::time::Instant;

pub use crate::search::path_search;

/// Image of the edge `(a, b)` under the equivariant extension of the paths
/// on representatives: `a · φ₁(1, a⁻¹b)`.
pub fn edge_image(
    group: &Group,
    paths: &BTreeMap<Simplex, EdgePath>,
    a: &GroupElement,
    b: &GroupElement,
) -> Option<Vec<GroupElement>> {
    let rep = Simplex::new(vec![group.identity(), group.quotient(a, b)]);
    let path = paths.get(&rep)?;
    Some(path.vertices.iter().map(|v| group.multiply(a, v)).collect())
}

/// The loop `φ₁(v₀,v₁) · φ₁(v₁,v₂) · φ₁(v₀,v₂)⁻¹` as a cyclic label sequence
/// starting at `φ₀(v₀)`.
pub fn triangle_loop(
    group: &Group,
    paths: &BTreeMap<Simplex, EdgePath>,
    triangle: &Simplex,
) -> Option<Vec<GroupElement>> {
    let v = triangle.vertices();
    let mut out = edge_image(group, paths, &v[0], &v[1])?;
    out.extend(edge_image(group, paths, &v[1], &v[2])?.into_iter().skip(1));
    let back = edge_image(group, paths, &v[0], &v[2])?;
    out.extend(back.into_iter().rev().skip(1));
    if out.len() > 1 {
        out.pop();
    }
    Some(out)
}

/// A disk whose stutter-collapsed boundary is the stutter-collapsed loop.
/// Constant loops get the one-point disk and 2-gons a single degenerate
/// triangle; longer loops go to [`disk_fill`].
pub fn fill_loop(
    group: &Group,
    labels: &[GroupElement],
    n: usize,
    chi: &Character,
    level: &Level,
    budget: &SearchBudget,
    deadline: Option<Instant>,
) -> Result<CombinatorialDisk, NotFound> {
    let collapsed = collapse_stutter(labels);
    match collapsed.len() {
        1 => Ok(CombinatorialDisk::point(collapsed[0].clone())),
        2 => Ok(CombinatorialDisk {
            labels: vec![collapsed[0].clone(), collapsed[1].clone(), collapsed[1].clone()],
            triangles: vec![[0, 1, 2]],
            boundary: vec![0, 1, 2],
        }),
        _ => disk_fill(group, &collapsed, n, chi, level, budget, deadline),
    }
}

fn edge(a: usize, b: usize) -> (usize, usize) {
    (a.min(b), a.max(b))
}

#[derive(Clone)]
struct State {
    labels: Vec<GroupElement>,
    polygon: Vec<usize>,
    triangles: Vec<[usize; 3]>,
    edges: HashSet<(usize, usize)>,
    insertions: usize,
}

impl State {
    fn key(&self) -> Vec<GroupElement> {
        self.polygon.iter().map(|&i| self.labels[i].clone()).collect()
    }

    fn cut_ear(&self, i: usize) -> State {
        let p = self.polygon.len();
        let (a, b, c) = (
            self.polygon[i],
            self.polygon[(i + 1) % p],
            self.polygon[(i + 2) % p],
        );
        let mut next = self.clone();
        next.triangles.push([a, b, c]);
        next.edges.insert(edge(a, c));
        next.polygon.remove((i + 1) % p);
        next
    }

    fn insert_vertex(&self, i: usize, w: &GroupElement) -> State {
        let p = self.polygon.len();
        let (a, b) = (self.polygon[i], self.polygon[(i + 1) % p]);
        let mut next = self.clone();
        let x = next.labels.len();
        next.labels.push(w.clone());
        next.triangles.push([a, b, x]);
        next.edges.insert(edge(a, x));
        next.edges.insert(edge(x, b));
        next.polygon.insert(i + 1, x);
        next.insertions += 1;
        next
    }
}

enum Fill {
    Found(CombinatorialDisk),
    Exhausted,
    Capped,
    Timeout,
}

/// Contracts the loop by ear cuts `(u,v,w) → (u,w)` and vertex insertions
/// along polygon edges, preferring short polygons. Every new triangle is
/// n-small and every new label lies in the half-space window, which grows
/// through the budget's radius schedule.
pub fn disk_fill(
    group: &Group,
    loop_labels: &[GroupElement],
    n: usize,
    chi: &Character,
    level: &Level,
    budget: &SearchBudget,
    deadline: Option<Instant>,
) -> Result<CombinatorialDisk, NotFound> {
    assert!(loop_labels.len() >= 3, "short loops are handled by fill_loop");
    let mut last = 0;
    let mut previous_size = None;
    for radius in budget.radii() {
        last = radius;
        let window = HalfSpaceWindow::new(level.clone(), loop_labels.to_vec(), radius);
        let elements = window.elements(group, chi);
        if previous_size == Some(elements.len()) {
            continue;
        }
        previous_size = Some(elements.len());
        match fill_in_window(group, loop_labels, n, &elements, budget.max_disk_states, deadline) {
            Fill::Found(disk) => return Ok(disk),
            Fill::Exhausted => {}
            Fill::Capped => {
                return Err(NotFound {
                    radius,
                    reason: MaybeReason::MovesExhausted,
                })
            }
            Fill::Timeout => {
                return Err(NotFound {
                    radius,
                    reason: MaybeReason::TimeLimit,
                })
            }
        }
    }
    Err(NotFound {
        radius: last,
        reason: MaybeReason::WindowExhausted,
    })
}

fn fill_in_window(
    group: &Group,
    loop_labels: &[GroupElement],
    n: usize,
    window: &[GroupElement],
    max_states: usize,
    deadline: Option<Instant>,
) -> Fill {
    let p = loop_labels.len();
    let start = State {
        labels: loop_labels.to_vec(),
        polygon: (0..p).collect(),
        triangles: Vec::new(),
        edges: (0..p).map(|i| edge(i, (i + 1) % p)).collect(),
        insertions: 0,
    };
    let mut states = vec![start];
    let mut heap = BinaryHeap::from([Reverse((p, 0usize, 0usize))]);
    let mut seen: HashSet<Vec<GroupElement>> = HashSet::from([states[0].key()]);

    while let Some(Reverse((_, _, id))) = heap.pop() {
        if expired(deadline) {
            return Fill::Timeout;
        }
        let state = states[id].clone();
        let p = state.polygon.len();
        if p == 3 {
            let mut done = state;
            let [a, b, c] = [done.polygon[0], done.polygon[1], done.polygon[2]];
            done.triangles.push([a, b, c]);
            let disk = CombinatorialDisk {
                labels: done.labels,
                triangles: done.triangles,
                boundary: (0..loop_labels.len()).collect(),
            };
            if disk.check().is_ok() {
                return Fill::Found(disk);
            }
            continue;
        }
        let label = |k: usize| &state.labels[state.polygon[k % p]];
        let mut successors = Vec::new();
        for i in 0..p {
            let (a, c) = (state.polygon[i], state.polygon[(i + 2) % p]);
            if !state.edges.contains(&edge(a, c)) && group.within(label(i), label(i + 2), n) {
                successors.push(state.cut_ear(i));
            }
        }
        for i in 0..p {
            let (u, v) = (label(i), label(i + 1));
            for w in window {
                if w != u && w != v && group.within(u, w, n) && group.within(w, v, n) {
                    successors.push(state.insert_vertex(i, w));
                }
            }
        }
        for next in successors {
            if !seen.insert(next.key()) {
                continue;
            }
            if states.len() >= max_states {
                return Fill::Capped;
            }
            let priority = (next.polygon.len(), next.insertions, states.len());
            states.push(next);
            heap.push(Reverse(priority));
        }
    }
    Fill::Exhausted
}

fn level_of(group: &Group, chi: &Character, t: &GroupElement, sigma: &Simplex) -> Level {
    Level::AtLeast(chi.eval(group, t) + sigma.valuation(group, chi))
}

/// Homotopical search for `cv = (n₀, n₁, n₂)` at `n = max(cv)`.
pub fn run_algorithm2(
    group: &Group,
    cv: &ConnectingVector,
    chi: &Character,
    budget: &SearchBudget,
) -> Result<Outcome<HtpyWitness>, SearchError> {
    if cv.flavor != Flavor::Homotopical {
        return Err(SearchError::FlavorMismatch {
            expected: Flavor::Homotopical.name(),
            found: cv.flavor.name(),
        });
    }
    if cv.degree() != 2 {
        return Err(SearchError::HomotopicalDegree);
    }
    let t = pick_t(group, chi)?;
    let n = cv.n();
    let clock = Clock::start(budget);
    let maybe = |degree: usize, simplex: &Simplex, failure: NotFound| {
        Outcome::Maybe(MaybeReport {
            degree,
            simplex: simplex.clone(),
            level: level_of(group, chi, &t, simplex),
            radius: failure.radius,
            reason: failure.reason,
        })
    };

    let edges = enumerate_rep_simplices(group, 1, n);
    let found = map_in_order(&edges, &clock, |e| {
        let target = group.multiply(&e.vertices()[1], &t);
        let level = level_of(group, chi, &t, e);
        path_search(group, &t, &target, n, chi, &level, budget, clock.step_deadline())
    });
    let paths: BTreeMap<Simplex, EdgePath> = match found {
        Ok(ps) => edges
            .iter()
            .cloned()
            .zip(ps.into_iter().map(|vertices| EdgePath { vertices }))
            .collect(),
        Err((i, failure)) => return Ok(maybe(1, &edges[i], failure)),
    };

    let triangles = enumerate_rep_simplices(group, 2, n);
    let found = map_in_order(&triangles, &clock, |x| {
        let labels = triangle_loop(group, &paths, x).expect("faces of n-small triangles are n-small");
        let level = level_of(group, chi, &t, x);
        fill_loop(group, &labels, n, chi, &level, budget, clock.step_deadline())
    });
    let disks = match found {
        Ok(ds) => triangles.iter().cloned().zip(ds).collect(),
        Err((i, failure)) => return Ok(maybe(2, &triangles[i], failure)),
    };

    Ok(Outcome::Yes(HtpyWitness {
        spec_hash: group.spec_hash().to_string(),
        chi: chi.clone(),
        t,
        n,
        connecting_vector: cv.entries.clone(),
        paths,
        disks,
    }))
}
