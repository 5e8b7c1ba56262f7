//! Homological search: a valuation-raising chain endomorphism φ built degree by
//! degree on representative simplices, the compression map μ, and a truncated
//! homology heuristic for connecting vectors.

use crate::group::{Character, Group, GroupElement, HalfSpaceWindow, Level};
use crate::linalg::{EchelonLattice, SparseVec};
use crate::rips::{
    enumerate_constrained_simplices, enumerate_rep_simplices, extend_equivariantly, Chain, Simplex,
    Valuation,
};
use crate::search::{
    expired, map_in_order, path_search, pick_t, Clock, ConnectingVector, Flavor, MaybeReason,
    MaybeReport, NotFound, Outcome, SearchBudget, SearchError,
};
use crate::witness::HomWitness;
use num_bigint::BigInt;
use num_traits::One;
use std::collections::{BTreeMap, HashMap};
use std::time::Instant;

pub type Table = BTreeMap<Simplex, Chain>;

/// One step of the search: a chain `ȳ` with `∂ȳ = φ_{q−1}(∂x̄)`, n-small, with
/// every vertex at level at least `χ(t) + v(x̄)`.
#[allow(clippy::too_many_arguments)]
pub fn search_step(
    group: &Group,
    q: usize,
    xbar: &Simplex,
    previous: &Table,
    chi: &Character,
    t: &GroupElement,
    n: usize,
    budget: &SearchBudget,
    deadline: Option<Instant>,
) -> Result<Chain, NotFound> {
    let rhs = image_of_boundary(group, xbar, previous);
    let Valuation::Finite(v) = Chain::simplex(xbar.clone()).valuation(group, chi) else {
        unreachable!("a simplex has finite valuation")
    };
    let level = Level::AtLeast(chi.eval(group, t) + v);
    fill_chain(group, q, &rhs, n, chi, &level, budget, deadline)
}

/// `φ_{q−1}(∂x̄)` through the equivariant extension of `previous`.
fn image_of_boundary(group: &Group, xbar: &Simplex, previous: &Table) -> Chain {
    let q = xbar.dim();
    let boundary = Chain::simplex(xbar.clone())
        .boundary()
        .expect("q ≥ 1");
    extend_equivariantly(group, &boundary, q - 1, |s| previous.get(s))
        .expect("faces of an n-small simplex have n-small representatives")
}

/// Solves `∂ȳ = rhs` for an n-small q-chain with vertices in the half-space.
/// Degree 1 uses path search; higher degrees offer the boundaries of all
/// candidate simplices in a window around the support of `rhs` to the solver.
#[allow(clippy::too_many_arguments)]
pub(crate) fn fill_chain(
    group: &Group,
    q: usize,
    rhs: &Chain,
    n: usize,
    chi: &Character,
    level: &Level,
    budget: &SearchBudget,
    deadline: Option<Instant>,
) -> Result<Chain, NotFound> {
    if rhs.is_zero() {
        return Ok(Chain::zero(q));
    }
    if q == 1 {
        if let Some((from, to)) = as_vertex_difference(rhs) {
            let path = path_search(group, &from, &to, n, chi, level, budget, deadline)?;
            return Ok(path_chain(&path));
        }
    }
    let centers: Vec<GroupElement> = rhs.vertex_support().into_iter().collect();
    let mut last = 0;
    let mut previous_size = None;
    for radius in budget.radii() {
        if expired(deadline) {
            return Err(NotFound {
                radius: last,
                reason: MaybeReason::TimeLimit,
            });
        }
        let window = HalfSpaceWindow::new(level.clone(), centers.clone(), radius);
        let candidates = enumerate_constrained_simplices(group, q, n, chi, &window);
        if candidates.len() > budget.max_candidates {
            return Err(NotFound {
                radius: last,
                reason: MaybeReason::CandidateLimit,
            });
        }
        last = radius;
        if previous_size == Some(candidates.len()) {
            continue;
        }
        previous_size = Some(candidates.len());
        if let Some(y) = solve_boundary(&candidates, rhs) {
            return Ok(y);
        }
    }
    Err(NotFound {
        radius: last,
        reason: MaybeReason::WindowExhausted,
    })
}

/// `rhs = (to) − (from)`.
fn as_vertex_difference(rhs: &Chain) -> Option<(GroupElement, GroupElement)> {
    if rhs.len() != 2 {
        return None;
    }
    let mut from = None;
    let mut to = None;
    for (s, k) in rhs.terms() {
        if *k == BigInt::one() {
            to = Some(s.vertices()[0].clone());
        } else if *k == -BigInt::one() {
            from = Some(s.vertices()[0].clone());
        }
    }
    from.zip(to)
}

pub(crate) fn path_chain(path: &[GroupElement]) -> Chain {
    let mut c = Chain::zero(1);
    for w in path.windows(2) {
        c.add_term(Simplex::new(w.to_vec()), BigInt::one());
    }
    c
}

fn solve_boundary(candidates: &[Simplex], rhs: &Chain) -> Option<Chain> {
    let mut index: HashMap<Simplex, usize> = HashMap::new();
    let mut sparse = |c: &Chain| {
        SparseVec::from_entries(c.terms().map(|(s, k)| {
            let next = index.len();
            (*index.entry(s.clone()).or_insert(next), k.clone())
        }))
    };
    let target = sparse(rhs);
    let mut lattice = EchelonLattice::new();
    for s in candidates {
        let b = Chain::simplex(s.clone()).boundary().expect("q ≥ 1");
        lattice.insert(sparse(&b));
    }
    let x = lattice.solve(&target)?;
    let mut y = Chain::zero(rhs.dim() + 1);
    for (j, k) in x.entries() {
        y.add_term(candidates[*j].clone(), k.clone());
    }
    Some(y)
}

/// Homological search: builds φ₀,…,φ_m at filtration constant `n = max(cv)`.
pub fn run_algorithm1(
    group: &Group,
    cv: &ConnectingVector,
    chi: &Character,
    budget: &SearchBudget,
) -> Result<Outcome<HomWitness>, SearchError> {
    if cv.flavor != Flavor::Homological {
        return Err(SearchError::FlavorMismatch {
            expected: Flavor::Homological.name(),
            found: cv.flavor.name(),
        });
    }
    let t = pick_t(group, chi)?;
    let n = cv.n();
    let m = cv.degree();
    let clock = Clock::start(budget);
    let mut tables: Vec<Table> = vec![BTreeMap::from([(
        Simplex::new(vec![group.identity()]),
        Chain::simplex(Simplex::new(vec![t.clone()])),
    )])];
    for q in 1..=m {
        let reps = enumerate_rep_simplices(group, q, n);
        let previous = &tables[q - 1];
        let results = map_in_order(&reps, &clock, |x| {
            search_step(
                group,
                q,
                x,
                previous,
                chi,
                &t,
                n,
                budget,
                clock.step_deadline(),
            )
        });
        match results {
            Ok(images) => tables.push(reps.into_iter().zip(images).collect()),
            Err((i, failure)) => {
                let x = &reps[i];
                let v = x.valuation(group, chi);
                return Ok(Outcome::Maybe(MaybeReport {
                    degree: q,
                    simplex: x.clone(),
                    level: Level::AtLeast(chi.eval(group, &t) + v),
                    radius: failure.radius,
                    reason: failure.reason,
                }));
            }
        }
    }
    Ok(Outcome::Yes(HomWitness {
        spec_hash: group.spec_hash().to_string(),
        chi: chi.clone(),
        t,
        n,
        m,
        connecting_vector: cv.entries.clone(),
        tables,
    }))
}

/// μ₀ = id and `μ_q(x̄)` an `n_q`-small filling of `μ_{q−1}(∂x̄)` for all
/// representatives of `Δ^q_k`, with no level constraint.
pub fn build_mu(
    group: &Group,
    cv: &ConnectingVector,
    k: usize,
    budget: &SearchBudget,
) -> Result<Result<Vec<Table>, MaybeReport>, SearchError> {
    if k < cv.n() {
        return Err(SearchError::ConnectingVectorLength {
            cv: cv.to_string(),
            len: cv.entries.len(),
            m: cv.degree(),
            need: k,
        });
    }
    let zero = Character::from_integers(group, &vec![0; group.rank()])
        .expect("the zero character is always valid");
    let clock = Clock::start(budget);
    let unit = Simplex::new(vec![group.identity()]);
    let mut tables: Vec<Table> = vec![BTreeMap::from([(unit.clone(), Chain::simplex(unit))])];
    for q in 1..=cv.degree() {
        let reps = enumerate_rep_simplices(group, q, k);
        let previous = &tables[q - 1];
        let nq = cv.entries[q];
        let results = map_in_order(&reps, &clock, |x| {
            let rhs = image_of_boundary(group, x, previous);
            fill_chain(
                group,
                q,
                &rhs,
                nq,
                &zero,
                &Level::Unbounded,
                budget,
                clock.step_deadline(),
            )
        });
        match results {
            Ok(images) => tables.push(reps.into_iter().zip(images).collect()),
            Err((i, failure)) => {
                return Ok(Err(MaybeReport {
                    degree: q,
                    simplex: reps[i].clone(),
                    level: Level::Unbounded,
                    radius: failure.radius,
                    reason: failure.reason,
                }))
            }
        }
    }
    Ok(Ok(tables))
}

/// Output of [`suggest_connecting_vector`]. Heuristic in both directions:
/// truncating to a finite window can create or destroy homology.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Suggestion {
    pub entries: Vec<usize>,
    /// False when some degree found no vanishing stage up to `k_max`.
    pub complete: bool,
}

/// Starting from `n₀ = 0`, picks for each `q < m` the smallest `n_{q+1} ≤ k_max`
/// above `n_q` such that `H̃_q(VR_{n_q} W) → H̃_q(VR_{n_{q+1}} W)` vanishes,
/// where `W` is the ball of radius `window_radius`.
pub fn suggest_connecting_vector(
    group: &Group,
    m: usize,
    k_max: usize,
    window_radius: usize,
) -> Suggestion {
    let complex = WindowComplex::new(group, window_radius);
    let mut entries = vec![0];
    for q in 0..m {
        let k = entries[q];
        match (k + 1..=k_max).find(|&l| complex.map_vanishes(q, k, l)) {
            Some(l) => entries.push(l),
            None => {
                return Suggestion {
                    entries,
                    complete: false,
                }
            }
        }
    }
    Suggestion {
        entries,
        complete: true,
    }
}

/// Rips complexes on a fixed finite vertex set, as ordinary simplicial
/// complexes (increasing index tuples).
struct WindowComplex {
    size: usize,
    dist: Vec<Vec<usize>>,
}

impl WindowComplex {
    fn new(group: &Group, radius: usize) -> WindowComplex {
        let mut vertices = group.ball(radius);
        vertices.sort();
        let size = vertices.len();
        let dist = (0..size)
            .map(|i| {
                (0..size)
                    .map(|j| group.distance(&vertices[i], &vertices[j]))
                    .collect()
            })
            .collect();
        WindowComplex { size, dist }
    }

    fn simplices(&self, q: usize, k: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut prefix = Vec::new();
        self.extend(q + 1, k, 0, &mut prefix, &mut out);
        out
    }

    fn extend(
        &self,
        remaining: usize,
        k: usize,
        from: usize,
        prefix: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if remaining == 0 {
            out.push(prefix.clone());
            return;
        }
        for v in from..self.size {
            if prefix.iter().all(|&p| self.dist[p][v] <= k) {
                prefix.push(v);
                self.extend(remaining - 1, k, v + 1, prefix, out);
                prefix.pop();
            }
        }
    }

    fn boundary(
        simplex: &[usize],
        index: &HashMap<Vec<usize>, usize>,
    ) -> SparseVec {
        SparseVec::from_entries((0..simplex.len()).map(|i| {
            let mut face = simplex.to_vec();
            face.remove(i);
            let sign = if i % 2 == 0 { BigInt::one() } else { -BigInt::one() };
            (index[&face], sign)
        }))
    }

    /// Every reduced q-cycle at scale k is an integral q-boundary at scale l.
    fn map_vanishes(&self, q: usize, k: usize, l: usize) -> bool {
        let faces_l = self.simplices(q, l);
        let index_l: HashMap<Vec<usize>, usize> =
            faces_l.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();

        let cycles: Vec<SparseVec> = if q == 0 {
            (1..self.size)
                .map(|i| {
                    SparseVec::from_entries([
                        (index_l[&vec![i]], BigInt::one()),
                        (index_l[&vec![0]], -BigInt::one()),
                    ])
                })
                .collect()
        } else {
            let faces_k = self.simplices(q, k);
            let lower: HashMap<Vec<usize>, usize> = self
                .simplices(q - 1, k)
                .into_iter()
                .enumerate()
                .map(|(i, s)| (s, i))
                .collect();
            let mut lattice = EchelonLattice::with_kernel();
            for s in &faces_k {
                lattice.insert(Self::boundary(s, &lower));
            }
            lattice
                .kernel()
                .iter()
                .map(|z| {
                    SparseVec::from_entries(
                        z.entries()
                            .iter()
                            .map(|(j, c)| (index_l[&faces_k[*j]], c.clone())),
                    )
                })
                .collect()
        };
        if cycles.is_empty() {
            return true;
        }

        let mut boundaries = EchelonLattice::new();
        for s in self.simplices(q + 1, l) {
            boundaries.insert(Self::boundary(&s, &index_l));
        }
        cycles.iter().all(|z| boundaries.contains(z))
    }
}
