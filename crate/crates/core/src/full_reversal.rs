//! Greedy Full Reversal and its min-plus work dynamics.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use crate::error::{Error, Result};
use crate::matrix::{MaxPlusMatrix, MaxPlusVector};
use crate::scalar::Scalar;
use crate::tropical::Tropical;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    Routing,
    Scheduling,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Routing => "routing",
            Mode::Scheduling => "scheduling",
        })
    }
}

impl std::str::FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "routing" => Ok(Mode::Routing),
            "scheduling" => Ok(Mode::Scheduling),
            other => Err(Error::InvalidInput(format!("unknown mode {other:?}"))),
        }
    }
}

/// Directed graph under Full Reversal. In routing mode the destinations are the
/// nodes carrying a self-loop.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FRGraph {
    n: usize,
    edges: BTreeSet<(usize, usize)>,
    mode: Mode,
}

impl FRGraph {
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>, mode: Mode) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidInput("graph needs at least one node".into()));
        }
        let mut set = BTreeSet::new();
        for (s, t) in edges {
            if s >= n || t >= n {
                return Err(Error::InvalidInput(format!("edge ({s}, {t}) out of range")));
            }
            if !set.insert((s, t)) {
                return Err(Error::InvalidInput(format!("duplicate edge ({s}, {t})")));
            }
        }
        let graph = FRGraph { n, edges: set, mode };
        graph.validate()?;
        Ok(graph)
    }

    fn validate(&self) -> Result<()> {
        let loops = self.edges.iter().filter(|(s, t)| s == t).count();
        match self.mode {
            Mode::Routing if loops == 0 => {
                return Err(Error::InvalidInput("routing needs at least one destination (self-loop)".into()))
            }
            Mode::Scheduling if loops > 0 => {
                return Err(Error::InvalidInput("scheduling graphs have no self-loops".into()))
            }
            _ => {}
        }
        if !self.is_weakly_connected() {
            return Err(Error::InvalidInput("graph is not weakly connected".into()));
        }
        if !self.is_acyclic_without_loops() {
            return Err(Error::InvalidInput("graph has a cycle apart from self-loops".into()));
        }
        Ok(())
    }

    fn is_weakly_connected(&self) -> bool {
        let mut neighbours = vec![Vec::new(); self.n];
        for &(s, t) in &self.edges {
            neighbours[s].push(t);
            neighbours[t].push(s);
        }
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(u) = stack.pop() {
            for &v in &neighbours[u] {
                if !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        seen.iter().all(|&b| b)
    }

    fn is_acyclic_without_loops(&self) -> bool {
        let mut indegree = vec![0usize; self.n];
        for &(s, t) in &self.edges {
            if s != t {
                indegree[t] += 1;
            }
        }
        let mut ready: Vec<usize> = (0..self.n).filter(|&i| indegree[i] == 0).collect();
        let mut removed = 0;
        while let Some(u) = ready.pop() {
            removed += 1;
            for &(_, t) in self.edges.range((u, 0)..(u + 1, 0)) {
                if t != u {
                    indegree[t] -= 1;
                    if indegree[t] == 0 {
                        ready.push(t);
                    }
                }
            }
        }
        removed == self.n
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn has_edge(&self, s: usize, t: usize) -> bool {
        self.edges.contains(&(s, t))
    }

    pub fn destinations(&self) -> Vec<usize> {
        (0..self.n).filter(|&i| self.has_edge(i, i)).collect()
    }

    /// Nodes without outgoing edges; a self-loop counts as outgoing.
    pub fn sinks(&self) -> Vec<bool> {
        let mut sink = vec![true; self.n];
        for &(s, _) in &self.edges {
            sink[s] = false;
        }
        sink
    }

    /// Every node has a path to a destination.
    pub fn is_destination_oriented(&self) -> bool {
        let mut reaches = vec![false; self.n];
        let mut stack = self.destinations();
        for &d in &stack {
            reaches[d] = true;
        }
        while let Some(u) = stack.pop() {
            for &(s, t) in &self.edges {
                if t == u && !reaches[s] {
                    reaches[s] = true;
                    stack.push(s);
                }
            }
        }
        reaches.iter().all(|&b| b)
    }
}

/// Every sink reverses all its incoming edges, simultaneously.
pub fn fr_step(graph: &FRGraph) -> FRGraph {
    let sinks = graph.sinks();
    let edges = graph
        .edges
        .iter()
        .map(|&(s, t)| if sinks[t] { (t, s) } else { (s, t) })
        .collect();
    FRGraph { n: graph.n, edges, mode: graph.mode }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FROutcome {
    /// Routing: first `t` with `G_t = G_{t+1}`.
    Terminated { theta: usize },
    /// Scheduling: eventual periodicity of the increments `W(t+1) - W(t)`.
    Periodic { transient: usize, period: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FRTrace {
    /// `G_0, ..., G_T`.
    pub graphs: Vec<FRGraph>,
    /// `W(0), ..., W(T)`.
    pub work: Vec<Vec<u64>>,
    pub outcome: FROutcome,
}

impl FRTrace {
    pub fn theta(&self) -> Option<usize> {
        match self.outcome {
            FROutcome::Terminated { theta } => Some(theta),
            FROutcome::Periodic { .. } => None,
        }
    }

    pub fn final_graph(&self) -> &FRGraph {
        self.graphs.last().expect("trace holds G_0")
    }
}

/// Runs a greedy execution. Routing stops at the fixed point; scheduling stops at the
/// first repeated graph, which determines the increment sequence forever after.
/// Either must happen within `horizon` steps.
pub fn fr_run(g0: &FRGraph, horizon: usize) -> Result<FRTrace> {
    let n = g0.n;
    let mut graphs = vec![g0.clone()];
    let mut work = vec![vec![0u64; n]];
    let mut increments: Vec<Vec<bool>> = Vec::new();
    let mut seen: HashMap<FRGraph, usize> = HashMap::new();
    loop {
        let t = graphs.len() - 1;
        let current = &graphs[t];
        let sinks = current.sinks();
        match g0.mode {
            Mode::Routing => {
                if !sinks.iter().any(|&b| b) {
                    return Ok(FRTrace { graphs, work, outcome: FROutcome::Terminated { theta: t } });
                }
            }
            Mode::Scheduling => {
                if let Some(&first) = seen.get(current) {
                    let outcome = increment_periodicity(&increments, first, t - first);
                    return Ok(FRTrace { graphs, work, outcome });
                }
                seen.insert(current.clone(), t);
            }
        }
        if t >= horizon {
            return Err(Error::NotStabilized { horizon });
        }
        let next = fr_step(current);
        let mut w = work[t].clone();
        for (i, &sink) in sinks.iter().enumerate() {
            w[i] += u64::from(sink);
        }
        increments.push(sinks);
        graphs.push(next);
        work.push(w);
    }
}

/// Transient and minimal period of a sequence known on `[0, first + cycle)` that repeats
/// with period `cycle` from `first` on.
fn increment_periodicity(increments: &[Vec<bool>], first: usize, cycle: usize) -> FROutcome {
    let at = |t: usize| {
        let index = if t < first { t } else { first + (t - first) % cycle };
        &increments[index]
    };
    let period = (1..=cycle)
        .filter(|p| cycle.is_multiple_of(*p))
        .find(|&p| (first..first + cycle).all(|t| at(t) == at(t + p)))
        .expect("cycle itself is a period");
    let mut transient = first;
    while transient > 0 && at(transient - 1) == at(transient - 1 + period) {
        transient -= 1;
    }
    FROutcome::Periodic { transient, period }
}

/// The max-plus matrix `-A` of the work recurrence `-W(t+1) = (-A) ⊗ (-W(t))`.
///
/// `A_ij` is 0 if `(i, j)` is an edge of `G_0`, 1 if only `(j, i)` is, and `+inf`
/// otherwise; negated, `+inf` becomes bottom.
pub fn fr_matrix<S: Scalar>(g0: &FRGraph) -> MaxPlusMatrix<S> {
    let n = g0.n;
    let mut rows = vec![vec![Tropical::Bottom; n]; n];
    for i in 0..n {
        for j in 0..n {
            if g0.has_edge(i, j) {
                rows[i][j] = Tropical::zero();
            } else if g0.has_edge(j, i) {
                rows[i][j] = Tropical::int(-1);
            }
        }
    }
    MaxPlusMatrix::from_rows(rows).expect("square and nonempty")
}

/// `-W(t)` as a max-plus vector.
pub fn negated_work<S: Scalar>(work: &[u64]) -> MaxPlusVector<S> {
    MaxPlusVector::new(work.iter().map(|&w| Tropical::Finite(-S::from_i64(w as i64))).collect())
        .expect("nonempty")
}

/// Checks `-W(t+1) = (-A) ⊗ (-W(t))` at every recorded step, and `W(0) = 0`.
pub fn verify_work_recurrence<S: Scalar>(trace: &FRTrace, a: &MaxPlusMatrix<S>) -> bool {
    if trace.work.first().is_none_or(|w0| w0.iter().any(|&w| w != 0)) {
        return false;
    }
    trace.work.windows(2).all(|pair| {
        a.mul_vec(&negated_work(&pair[0])).is_ok_and(|next| next == negated_work(&pair[1]))
    })
}
