//! Structural parameters: girth, circumference, cab driver's diameter, cyclicity,
//! `d(G)`, `p(G)` and the exploration penalty.

use std::collections::{BTreeSet, HashMap};

use num_integer::Integer;

use super::{scc, BoolMatrix, Digraph};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Default node cap for the exponential searches.
pub const DEFAULT_NODE_CAP: usize = 12;

/// Hard ceiling for the subset dynamic programs regardless of the configured cap.
const SUBSET_DP_LIMIT: usize = 22;

fn check_cap(what: &'static str, n: usize, cap: usize) -> Result<()> {
    let cap = cap.min(SUBSET_DP_LIMIT);
    if n > cap {
        return Err(Error::Capacity { what, size: n, cap });
    }
    Ok(())
}

/// Lengths of all elementary cycles, by subset dynamic programming: a cycle is
/// attributed to its smallest node `s`, and `reach[mask]` holds the end nodes of
/// simple paths from `s` that visit exactly `mask`.
pub fn cycle_lengths<S: Scalar>(graph: &Digraph<S>, cap: usize) -> Result<BTreeSet<usize>> {
    let n = graph.node_count();
    check_cap("cycle length search", n, cap)?;
    let adjacency = graph.adjacency_lists();
    let mut lengths = BTreeSet::new();
    let mut reach = vec![0u32; 1 << n];
    for start in 0..n {
        let low = 1usize << start;
        // masks whose lowest node is `start` and that contain `start`
        let higher = !((low << 1) - 1) & ((1usize << n) - 1);
        reach[low] = low as u32;
        let mut sub = 0usize;
        loop {
            let mask = low | sub;
            let ends = reach[mask];
            if ends != 0 {
                reach[mask] = 0;
                let size = mask.count_ones() as usize;
                let mut bits = ends;
                while bits != 0 {
                    let v = bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    for &u in &adjacency[v] {
                        if u == start {
                            lengths.insert(size);
                        } else if u > start && mask & (1 << u) == 0 {
                            reach[mask | 1 << u] |= 1 << u;
                        }
                    }
                }
            }
            // next superset of `sub` within `higher`, in increasing order
            if sub == higher {
                break;
            }
            sub = (sub.wrapping_sub(higher)) & higher;
        }
    }
    Ok(lengths)
}

/// `(g, cr)`: minimum and maximum elementary cycle length; `None` on acyclic graphs.
pub fn girth_circumference<S: Scalar>(graph: &Digraph<S>, cap: usize) -> Result<Option<(usize, usize)>> {
    let lengths = cycle_lengths(graph, cap)?;
    Ok(lengths.first().copied().zip(lengths.last().copied()))
}

/// `p(G)`: lcm of all elementary cycle lengths; `None` on acyclic graphs.
pub fn elementary_cycle_lcm<S: Scalar>(graph: &Digraph<S>, cap: usize) -> Result<Option<usize>> {
    let lengths = cycle_lengths(graph, cap)?;
    Ok(if lengths.is_empty() { None } else { Some(lengths.iter().fold(1, |acc, &l| acc.lcm(&l))) })
}

/// `cd(G)`: maximum length of a simple path.
pub fn cab_diameter<S: Scalar>(graph: &Digraph<S>, cap: usize) -> Result<usize> {
    cab_diameter_within(graph, &vec![true; graph.node_count()], cap)
}

/// Maximum length of a simple path whose nodes all satisfy `allowed`; 0 when no node
/// is allowed.
pub fn cab_diameter_within<S: Scalar>(graph: &Digraph<S>, allowed: &[bool], cap: usize) -> Result<usize> {
    let nodes: Vec<usize> = (0..graph.node_count()).filter(|&i| allowed[i]).collect();
    let m = nodes.len();
    if m == 0 {
        return Ok(0);
    }
    check_cap("simple path search", m, cap)?;
    let local = graph.induced(&nodes)?;
    let adjacency = local.adjacency_lists();
    let mut reach = vec![0u32; 1 << m];
    for v in 0..m {
        reach[1 << v] = 1 << v;
    }
    let mut best = 0;
    for mask in 1usize..(1 << m) {
        let ends = reach[mask];
        if ends == 0 {
            continue;
        }
        best = best.max(mask.count_ones() as usize - 1);
        let mut bits = ends;
        while bits != 0 {
            let v = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            for &u in &adjacency[v] {
                if mask & (1 << u) == 0 {
                    reach[mask | 1 << u] |= 1 << u;
                }
            }
        }
    }
    Ok(best)
}

/// `(c(G), d(G))`: lcm and max over SCCs of the gcd of closed path lengths.
///
/// Per component the gcd is read off breadth-first levels: it is the gcd of
/// `level(u) + 1 - level(v)` over internal edges `(u, v)`. Components without a
/// closed path count as 1.
pub fn cyclicity<S: Scalar>(graph: &Digraph<S>) -> (usize, usize) {
    let decomposition = scc(graph);
    let adjacency = graph.adjacency_lists();
    let mut lcm = 1usize;
    let mut max = 1usize;
    for (c, component) in decomposition.components.iter().enumerate() {
        let mut level = vec![usize::MAX; graph.node_count()];
        let root = component[0];
        level[root] = 0;
        let mut queue = std::collections::VecDeque::from([root]);
        let mut period = 0usize;
        while let Some(u) = queue.pop_front() {
            for &v in &adjacency[u] {
                if decomposition.component_of[v] != c {
                    continue;
                }
                if level[v] == usize::MAX {
                    level[v] = level[u] + 1;
                    queue.push_back(v);
                }
                let diff = (level[u] + 1).abs_diff(level[v]);
                period = period.gcd(&diff);
            }
        }
        let component_cyclicity = if period == 0 { 1 } else { period };
        lcm = lcm.lcm(&component_cyclicity);
        max = max.max(component_cyclicity);
    }
    (lcm, max)
}

/// Achievable closed-walk lengths per node, up to a horizon.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosedLengthProfile {
    pub horizon: usize,
    /// `achievable[i][n]`: some closed walk of length `n` starts at `i`.
    pub achievable: Vec<Vec<bool>>,
    /// gcd of the positive achievable lengths per node (0 if none up to the horizon).
    pub gcds: Vec<usize>,
}

impl ClosedLengthProfile {
    pub fn lengths(&self, node: usize) -> Vec<usize> {
        (0..=self.horizon).filter(|&n| self.achievable[node][n]).collect()
    }
}

pub fn closed_length_profile<S: Scalar>(graph: &Digraph<S>, horizon: usize) -> Result<ClosedLengthProfile> {
    let n = graph.node_count();
    let step = BoolMatrix::adjacency(graph)?;
    let mut power = BoolMatrix::identity(n)?;
    let mut achievable = vec![vec![false; horizon + 1]; n];
    let mut gcds = vec![0usize; n];
    for length in 0..=horizon {
        for i in 0..n {
            if power.get(i, i) {
                achievable[i][length] = true;
                gcds[i] = gcds[i].gcd(&length);
            }
        }
        power = power.mul(&step);
    }
    Ok(ClosedLengthProfile { horizon, achievable, gcds })
}

/// The boolean power sequence `M^0, M^1, ...` up to its first repetition.
/// Returns the powers and `(preperiod, period)`.
pub(crate) fn boolean_power_cycle<S: Scalar>(graph: &Digraph<S>) -> Result<(Vec<BoolMatrix>, usize, usize)> {
    let n = graph.node_count();
    let step = BoolMatrix::adjacency(graph)?;
    let mut seen: HashMap<BoolMatrix, usize> = HashMap::new();
    let mut powers = Vec::new();
    let mut current = BoolMatrix::identity(n)?;
    loop {
        if let Some(&first) = seen.get(&current) {
            let period = powers.len() - first;
            return Ok((powers, first, period));
        }
        seen.insert(current.clone(), powers.len());
        let next = current.mul(&step);
        powers.push(current);
        current = next;
    }
}

/// `ep(G)`: the smallest `k` such that every multiple of `c(G)` that is at least `k`
/// is the length of a closed walk at every node.
///
/// Exact: the boolean powers are eventually periodic, so scanning one preperiod plus
/// one period decides every length.
pub fn exploration_penalty<S: Scalar>(graph: &Digraph<S>) -> Result<usize> {
    graph.require_irreducible()?;
    let (c, _) = cyclicity(graph);
    let (powers, preperiod, _period) = boolean_power_cycle(graph)?;
    let n = graph.node_count();
    let mut last_gap: Option<usize> = None;
    for (length, power) in powers.iter().enumerate().filter(|(length, _)| length % c == 0) {
        if (0..n).any(|i| !power.get(i, i)) {
            if length >= preperiod {
                return Err(Error::Precondition(
                    "some multiple of the cyclicity is never a closed walk length".into(),
                ));
            }
            last_gap = Some(length);
        }
    }
    Ok(last_gap.map_or(0, |gap| gap + 1))
}

/// Structural parameters of a graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphParams {
    pub nodes: usize,
    pub girth: Option<usize>,
    pub circumference: Option<usize>,
    pub cab_diameter: usize,
    pub cyclicity: usize,
    /// `d(G)`: largest component cyclicity.
    pub max_component_cyclicity: usize,
    /// `p(G)`.
    pub cycle_lcm: Option<usize>,
    /// Only defined for strongly connected nontrivial graphs.
    pub exploration_penalty: Option<usize>,
}

impl GraphParams {
    pub fn compute<S: Scalar>(graph: &Digraph<S>, cap: usize) -> Result<Self> {
        let lengths = cycle_lengths(graph, cap)?;
        let (cyclicity, max_component_cyclicity) = cyclicity(graph);
        let exploration_penalty = if graph.is_nontrivial() && graph.is_strongly_connected() {
            Some(exploration_penalty(graph)?)
        } else {
            None
        };
        Ok(GraphParams {
            nodes: graph.node_count(),
            girth: lengths.first().copied(),
            circumference: lengths.last().copied(),
            cab_diameter: cab_diameter(graph, cap)?,
            cyclicity,
            max_component_cyclicity,
            cycle_lcm: if lengths.is_empty() {
                None
            } else {
                Some(lengths.iter().fold(1, |acc, &l| acc.lcm(&l)))
            },
            exploration_penalty,
        })
    }

    /// Theorem-EP style upper bound `2(g/c)N - g/c - 2g + c`, for strongly connected
    /// graphs with a cycle.
    pub fn exploration_bound(&self) -> Option<i64> {
        let g = self.girth? as i64;
        let c = self.cyclicity as i64;
        let n = self.nodes as i64;
        Some(2 * (g / c) * n - g / c - 2 * g + c)
    }

    /// Denardo's bound `N + (N - 2) g` for primitive graphs.
    pub fn primitive_exploration_bound(&self) -> Option<i64> {
        let g = self.girth? as i64;
        let n = self.nodes as i64;
        Some(n + (n - 2) * g)
    }
}
