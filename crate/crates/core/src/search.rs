//! Shared pieces of the two searches: connecting vectors, budgets, the choice
//! of `t`, structured "maybe" reports and half-space path search.

use crate::group::{Character, Group, GroupElement, GroupError, Level};
use crate::rips::Simplex;
pub use crate::witness::Flavor;
use num_traits::Signed;
use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::time::{Duration, Instant};
use thiserror::Error;

/// `(n₀, …, n_m)`; the searches work at the filtration constant `n = max nᵢ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConnectingVector {
    pub entries: Vec<usize>,
    pub flavor: Flavor,
}

impl ConnectingVector {
    pub fn new(entries: Vec<usize>, flavor: Flavor) -> ConnectingVector {
        ConnectingVector { entries, flavor }
    }

    /// Parses `0,1,2`.
    pub fn parse(text: &str, flavor: Flavor) -> Result<ConnectingVector, SearchError> {
        let entries = text
            .trim_matches(|c| c == '(' || c == ')')
            .split(',')
            .map(|s| s.trim().parse::<usize>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| SearchError::BadConnectingVector(text.to_string()))?;
        Ok(ConnectingVector { entries, flavor })
    }

    pub fn degree(&self) -> usize {
        self.entries.len() - 1
    }

    pub fn n(&self) -> usize {
        self.entries.iter().copied().max().unwrap_or(0)
    }
}

impl fmt::Display for ConnectingVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Geometric and time bounds on a search.
#[derive(Clone, Debug)]
pub struct SearchBudget {
    pub max_window_radius: usize,
    /// Window radii tried in order, cut off at `max_window_radius`.
    pub radius_schedule: Vec<usize>,
    pub step_time_limit: Option<Duration>,
    pub overall_time_limit: Option<Duration>,
    /// Cap on polygon states explored by one disk fill.
    pub max_disk_states: usize,
    /// Cap on candidate simplices offered to the linear solver in one step.
    pub max_candidates: usize,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            max_window_radius: 6,
            radius_schedule: (0..=6).collect(),
            step_time_limit: Some(Duration::from_secs(30)),
            overall_time_limit: None,
            max_disk_states: 20_000,
            max_candidates: 200_000,
        }
    }
}

impl SearchBudget {
    pub fn with_max_radius(mut self, r: usize) -> Self {
        self.max_window_radius = r;
        if !self.radius_schedule.contains(&r) {
            self.radius_schedule.push(r);
            self.radius_schedule.sort_unstable();
        }
        self
    }

    pub fn radii(&self) -> Vec<usize> {
        let mut r: Vec<usize> = self
            .radius_schedule
            .iter()
            .copied()
            .filter(|&r| r <= self.max_window_radius)
            .collect();
        if r.is_empty() {
            r.push(self.max_window_radius);
        }
        r
    }
}

/// Deadlines for one run.
#[derive(Clone, Debug)]
pub struct Clock {
    overall: Option<Instant>,
    step: Option<Duration>,
}

impl Clock {
    pub fn start(budget: &SearchBudget) -> Clock {
        Clock {
            overall: budget.overall_time_limit.map(|d| Instant::now() + d),
            step: budget.step_time_limit,
        }
    }

    pub(crate) fn step_deadline(&self) -> Option<Instant> {
        let step = self.step.map(|d| Instant::now() + d);
        match (step, self.overall) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        }
    }

    pub(crate) fn overall_expired(&self) -> bool {
        self.overall.is_some_and(|d| Instant::now() >= d)
    }
}

pub(crate) fn expired(deadline: Option<Instant>) -> bool {
    deadline.is_some_and(|d| Instant::now() >= d)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MaybeReason {
    /// The search space was fully explored at the largest allowed radius.
    WindowExhausted,
    /// The disk search hit its state cap before exhausting the window.
    MovesExhausted,
    /// The next window would offer the solver too many candidate simplices.
    CandidateLimit,
    TimeLimit,
}

impl fmt::Display for MaybeReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MaybeReason::WindowExhausted => "window exhausted",
            MaybeReason::MovesExhausted => "moves exhausted",
            MaybeReason::CandidateLimit => "candidate limit",
            MaybeReason::TimeLimit => "time limit",
        })
    }
}

/// Where and why a search gave up.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MaybeReport {
    pub degree: usize,
    pub simplex: Simplex,
    pub level: Level,
    pub radius: usize,
    pub reason: MaybeReason,
}

impl MaybeReport {
    pub fn render(&self, group: &Group) -> String {
        let level = match &self.level {
            Level::Unbounded => "-inf".to_string(),
            Level::AtLeast(l) => crate::group::format_rational(l),
        };
        format!(
            "maybe: no filling for q={} simplex {} at level {} (largest window radius {}, {})",
            self.degree,
            self.simplex.display(group),
            level,
            self.radius,
            self.reason
        )
    }
}

/// Failure of one search step.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NotFound {
    pub radius: usize,
    pub reason: MaybeReason,
}

pub enum Outcome<W> {
    Yes(W),
    Maybe(MaybeReport),
}

impl<W> Outcome<W> {
    pub fn map<V>(self, f: impl FnOnce(W) -> V) -> Outcome<V> {
        match self {
            Outcome::Yes(w) => Outcome::Yes(f(w)),
            Outcome::Maybe(r) => Outcome::Maybe(r),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SearchError {
    #[error("the zero character has no positive element")]
    ZeroCharacter,
    #[error("connecting vector is {found}, the search needs {expected}")]
    FlavorMismatch { expected: &'static str, found: &'static str },
    #[error("connecting vector {cv} has length {len}, degree {m} needs {need}")]
    ConnectingVectorLength {
        cv: String,
        len: usize,
        m: usize,
        need: usize,
    },
    #[error("malformed connecting vector {0:?}")]
    BadConnectingVector(String),
    #[error("the homotopical search is only defined in degree 2")]
    HomotopicalDegree,
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// Runs `f` over `items` in parallel chunks and stops after the first chunk
/// containing a failure. Results keep input order; the reported failure is the
/// earliest one, so the outcome does not depend on the thread count.
pub(crate) fn map_in_order<T, R, F>(
    items: &[T],
    clock: &Clock,
    f: F,
) -> Result<Vec<R>, (usize, NotFound)>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> Result<R, NotFound> + Sync,
{
    use rayon::prelude::*;
    let chunk = 4 * rayon::current_num_threads().max(1);
    let mut out = Vec::with_capacity(items.len());
    for (c, block) in items.chunks(chunk).enumerate() {
        if clock.overall_expired() {
            return Err((
                c * chunk,
                NotFound {
                    radius: 0,
                    reason: MaybeReason::TimeLimit,
                },
            ));
        }
        let results: Vec<Result<R, NotFound>> = block.par_iter().map(&f).collect();
        for (i, r) in results.into_iter().enumerate() {
            match r {
                Ok(v) => out.push(v),
                Err(e) => return Err((c * chunk + i, e)),
            }
        }
    }
    Ok(out)
}

/// Shortest element with positive χ-value, shortlex tie-break.
pub fn pick_t(group: &Group, chi: &Character) -> Result<GroupElement, SearchError> {
    if chi.is_zero() {
        return Err(SearchError::ZeroCharacter);
    }
    // some generator or its inverse is positive
    for r in 1.. {
        if let Some(t) = group
            .sphere(r)
            .into_iter()
            .find(|g| chi.eval(group, g).is_positive())
        {
            return Ok(t);
        }
    }
    unreachable!()
}

/// Shortest edge path `from → to` with steps of length at most `n` through
/// `{g : χ(g) ≥ L}`, restricted to growing windows around both endpoints.
/// Neighbours are visited in shortlex order, so the result is deterministic.
#[allow(clippy::too_many_arguments)]
pub fn path_search(
    group: &Group,
    from: &GroupElement,
    to: &GroupElement,
    n: usize,
    chi: &Character,
    level: &Level,
    budget: &SearchBudget,
    deadline: Option<Instant>,
) -> Result<Vec<GroupElement>, NotFound> {
    if from == to {
        return Ok(vec![from.clone()]);
    }
    let mut steps = group.ball(n);
    steps.sort();
    steps.retain(|s| !s.is_identity());
    let radii = budget.radii();
    let mut last = 0;
    for &radius in &radii {
        last = radius;
        match bfs(group, from, to, &steps, chi, level, radius, deadline) {
            Bfs::Found(p) => return Ok(p),
            Bfs::Closed => {
                return Err(NotFound {
                    radius,
                    reason: MaybeReason::WindowExhausted,
                })
            }
            Bfs::Timeout => {
                return Err(NotFound {
                    radius,
                    reason: MaybeReason::TimeLimit,
                })
            }
            Bfs::Truncated => {}
        }
    }
    Err(NotFound {
        radius: last,
        reason: MaybeReason::WindowExhausted,
    })
}

enum Bfs {
    Found(Vec<GroupElement>),
    /// Explored everything reachable without touching the window boundary.
    Closed,
    /// Ran out of window.
    Truncated,
    Timeout,
}

#[allow(clippy::too_many_arguments)]
fn bfs(
    group: &Group,
    from: &GroupElement,
    to: &GroupElement,
    steps: &[GroupElement],
    chi: &Character,
    level: &Level,
    radius: usize,
    deadline: Option<Instant>,
) -> Bfs {
    let centers = [from, to];
    let mut parent: HashMap<GroupElement, GroupElement> = HashMap::new();
    let mut seen: HashSet<GroupElement> = HashSet::from([from.clone()]);
    let mut queue = VecDeque::from([from.clone()]);
    let mut truncated = false;
    while let Some(x) = queue.pop_front() {
        if expired(deadline) {
            return Bfs::Timeout;
        }
        for s in steps {
            let y = group.multiply(&x, s);
            if seen.contains(&y) || !level.admits(&chi.eval(group, &y)) {
                continue;
            }
            if !centers.iter().any(|c| group.within(c, &y, radius)) {
                truncated = true;
                continue;
            }
            seen.insert(y.clone());
            parent.insert(y.clone(), x.clone());
            if &y == to {
                let mut path = vec![y];
                while let Some(p) = parent.get(path.last().unwrap()) {
                    path.push(p.clone());
                }
                path.reverse();
                return Bfs::Found(path);
            }
            queue.push_back(y);
        }
    }
    if truncated {
        Bfs::Truncated
    } else {
        Bfs::Closed
    }
}
