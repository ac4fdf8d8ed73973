//! Path weights, the reductions `Simp` and `Red_{d,k}`, and realizers.

use crate::error::{Error, Result};
use crate::graph::{Digraph, Path};
use crate::scalar::Scalar;
use crate::tropical::Tropical;

/// Default cap on the walk length accepted by [`red`].
pub const RED_DEFAULT_CAP: usize = 20;

/// `(w_*(π), w(π))`; the en-weight is only present on node-weighted graphs.
pub fn path_weight<S: Scalar>(graph: &Digraph<S>, path: &Path) -> Result<(S, Option<Tropical<S>>)> {
    path.validate(graph)?;
    let edge_weight = path
        .edges()
        .fold(S::zero(), |acc, (s, t)| acc + graph.weight(s, t).expect("validated").clone());
    let en_weight = graph.node_weight(path.end()).map(|wv| wv.shift(&edge_weight));
    Ok((edge_weight, en_weight))
}

/// Removes one nonempty elementary closed subpath: the one with the shortest span,
/// leftmost among those. `None` if the path is simple.
fn simp_step(path: &Path) -> Option<Path> {
    let nodes = path.nodes();
    let mut best: Option<(usize, usize)> = None;
    for span in 1..nodes.len() {
        if let Some(k) = (0..nodes.len() - span).find(|&k| nodes[k] == nodes[k + span]) {
            best = Some((k, k + span));
            break;
        }
    }
    let (k, l) = best?;
    let mut reduced = nodes[..=k].to_vec();
    reduced.extend_from_slice(&nodes[l + 1..]);
    Some(Path::new(reduced).expect("nonempty"))
}

/// `Simp(π)`: the simple part of a path.
pub fn simp(path: &Path) -> Path {
    let mut current = path.clone();
    while let Some(next) = simp_step(&current) {
        current = next;
    }
    current
}

/// Closed subpaths of a host path given as `(offset, length)` windows over its node
/// positions, pairwise non-overlapping.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DisjointClosedMultiset {
    windows: Vec<(usize, usize)>,
}

impl DisjointClosedMultiset {
    pub fn empty() -> Self {
        DisjointClosedMultiset { windows: Vec::new() }
    }

    /// Validates that the windows are closed subpaths of `host` and appear in order
    /// without overlap.
    pub fn new(host: &Path, mut windows: Vec<(usize, usize)>) -> Result<Self> {
        windows.sort_unstable();
        let nodes = host.nodes();
        let mut cursor = 0;
        for &(offset, length) in &windows {
            if offset < cursor {
                return Err(Error::InvalidInput("closed subpaths overlap".into()));
            }
            let end = offset + length;
            if end >= nodes.len() {
                return Err(Error::InvalidInput("window runs past the end of the path".into()));
            }
            if nodes[offset] != nodes[end] {
                return Err(Error::InvalidInput(format!("window ({offset}, {length}) is not closed")));
            }
            cursor = end;
        }
        Ok(DisjointClosedMultiset { windows })
    }

    pub fn windows(&self) -> &[(usize, usize)] {
        &self.windows
    }

    /// `L(S)`.
    pub fn total_length(&self) -> usize {
        self.windows.iter().map(|&(_, length)| length).sum()
    }

    pub fn is_elementary(&self, host: &Path) -> bool {
        self.windows.iter().all(|&(offset, length)| {
            length == 0
                || Path::new(host.nodes()[offset..=offset + length].to_vec())
                    .expect("nonempty")
                    .is_elementary_closed()
        })
    }
}

/// `Rem(π, S)`: the concatenation of the gaps between the windows.
pub fn remove_multiset(path: &Path, set: &DisjointClosedMultiset) -> Result<Path> {
    let checked = DisjointClosedMultiset::new(path, set.windows.clone())?;
    let nodes = path.nodes();
    let mut kept = Vec::with_capacity(nodes.len());
    let mut cursor = 0;
    for &(offset, length) in &checked.windows {
        kept.extend_from_slice(&nodes[cursor..=offset]);
        cursor = offset + length + 1;
    }
    if cursor < nodes.len() {
        kept.extend_from_slice(&nodes[cursor..]);
    }
    Path::new(kept)
}

/// An `L`-maximal element of `S_{d,k}(π)`.
///
/// Exact dynamic program over host positions with state (residue of `L` modulo `d`,
/// whether `k` has been kept). From a kept position the walk either keeps the next
/// position or skips an elementary closed window starting there. Ties resolve to the
/// earliest, shortest window first.
pub fn maximal_reducible_multiset(path: &Path, d: usize, k: usize) -> Result<DisjointClosedMultiset> {
    if d == 0 {
        return Err(Error::InvalidInput("d must be positive".into()));
    }
    if !path.contains_node(k) {
        return Err(Error::InvalidInput(format!("node {k} is not on the path")));
    }
    let nodes = path.nodes();
    let len = nodes.len();
    // elementary closed windows starting at each position, by increasing end
    let windows: Vec<Vec<usize>> = (0..len)
        .map(|start| {
            let mut ends = Vec::new();
            let mut seen = std::collections::HashSet::new();
            for end in start + 1..len {
                if !seen.insert(nodes[end - 1]) {
                    break;
                }
                if nodes[end] == nodes[start] {
                    ends.push(end);
                    break;
                }
            }
            ends
        })
        .collect();

    const NONE: i64 = i64::MIN;
    let state = |residue: usize, seen: bool| residue * 2 + usize::from(seen);
    let mut best = vec![vec![NONE; 2 * d]; len];
    for residue in 0..d {
        for seen in [false, true] {
            let here = seen || nodes[len - 1] == k;
            best[len - 1][state(residue, seen)] = if residue == 0 && here { 0 } else { NONE };
        }
    }
    for pos in (0..len - 1).rev() {
        for residue in 0..d {
            for seen in [false, true] {
                let here = seen || nodes[pos] == k;
                let mut value = best[pos + 1][state(residue, here)];
                for &end in &windows[pos] {
                    let gain = end - pos;
                    let rest = best[end][state((residue + gain) % d, here)];
                    if rest != NONE {
                        value = value.max(rest + gain as i64);
                    }
                }
                best[pos][state(residue, seen)] = value;
            }
        }
    }
    debug_assert!(best[0][state(0, false)] >= 0, "the empty multiset is always admissible");

    let mut chosen = Vec::new();
    let (mut pos, mut residue, mut seen) = (0usize, 0usize, false);
    while pos + 1 < len {
        let target = best[pos][state(residue, seen)];
        let here = seen || nodes[pos] == k;
        let window = windows[pos].iter().copied().find(|&end| {
            let gain = end - pos;
            let rest = best[end][state((residue + gain) % d, here)];
            rest != NONE && rest + gain as i64 == target
        });
        match window {
            Some(end) => {
                chosen.push((pos, end - pos));
                residue = (residue + end - pos) % d;
                pos = end;
            }
            None => pos += 1,
        }
        seen = here;
    }
    DisjointClosedMultiset::new(path, chosen)
}

/// `Red_{d,k}(π)` with the default walk length cap.
pub fn red(path: &Path, d: usize, k: usize) -> Result<Path> {
    red_with_cap(path, d, k, RED_DEFAULT_CAP)
}

pub fn red_with_cap(path: &Path, d: usize, k: usize, cap: usize) -> Result<Path> {
    if path.len() > cap {
        return Err(Error::Capacity { what: "reduced walk", size: path.len(), cap });
    }
    let mut current = path.clone();
    loop {
        let set = maximal_reducible_multiset(&current, d, k)?;
        if set.total_length() == 0 {
            return Ok(current);
        }
        current = remove_multiset(&current, &set)?;
    }
}

/// Lengths admitted by a realizer query.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LengthSet {
    Explicit(Vec<usize>),
    /// `{n ≥ n_hat : n ≡ r (mod p)}`, cut off at `horizon`.
    Tail { n_hat: usize, r: usize, p: usize, horizon: usize },
}

impl LengthSet {
    pub fn members(&self) -> Vec<usize> {
        match self {
            LengthSet::Explicit(lengths) => {
                let mut lengths = lengths.clone();
                lengths.sort_unstable();
                lengths.dedup();
                lengths
            }
            LengthSet::Tail { n_hat, r, p, horizon } => {
                (*n_hat..=*horizon).filter(|n| n % p == *r).collect()
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealizerQuery {
    pub target: usize,
    pub lengths: LengthSet,
}

impl RealizerQuery {
    pub fn tail(target: usize, n_hat: usize, r: usize, p: usize, horizon: usize) -> Result<Self> {
        if n_hat == 0 || p == 0 || r >= p {
            return Err(Error::InvalidInput("tail needs n_hat >= 1, p >= 1, 0 <= r < p".into()));
        }
        Ok(RealizerQuery { target, lengths: LengthSet::Tail { n_hat, r, p, horizon } })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Realizer<S> {
    pub path: Path,
    pub weight: Tropical<S>,
}

/// Table of `w^n(i→)` for all nodes and `n` up to a horizon, with the flag telling
/// whether some maximum-weight path visits a critical node.
///
/// A graph without node weights is treated as having all node weights 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightProfile<S> {
    pub values: Vec<Vec<Tropical<S>>>,
    pub critical_hits: Vec<Vec<bool>>,
}

impl<S: Scalar> WeightProfile<S> {
    pub fn compute(graph: &Digraph<S>, critical: &[bool], horizon: usize) -> Self {
        let n = graph.node_count();
        let adjacency = graph.adjacency_lists();
        let base: Vec<Tropical<S>> =
            (0..n).map(|i| graph.node_weight(i).cloned().unwrap_or_else(Tropical::zero)).collect();
        let mut values = vec![base];
        let mut critical_hits = vec![critical.to_vec()];
        for length in 1..=horizon {
            let previous = &values[length - 1];
            let previous_hits = &critical_hits[length - 1];
            let mut row = Vec::with_capacity(n);
            let mut hits = Vec::with_capacity(n);
            for i in 0..n {
                let candidates: Vec<Tropical<S>> = adjacency[i]
                    .iter()
                    .map(|&j| previous[j].shift(graph.weight(i, j).expect("adjacent")))
                    .collect();
                let best = crate::tropical::max_of(candidates.iter().cloned());
                let hit = critical[i]
                    || adjacency[i]
                        .iter()
                        .zip(&candidates)
                        .any(|(&j, value)| *value == best && previous_hits[j]);
                row.push(best);
                hits.push(hit);
            }
            values.push(row);
            critical_hits.push(hits);
        }
        WeightProfile { values, critical_hits }
    }

    pub fn horizon(&self) -> usize {
        self.values.len() - 1
    }

    /// A maximum-weight path of the given length from `start`, taking the smallest
    /// maximizing successor at every step.
    pub fn best_path(&self, graph: &Digraph<S>, start: usize, length: usize) -> Option<Path> {
        let mut nodes = vec![start];
        let mut current = start;
        for remaining in (1..=length).rev() {
            let target = &self.values[remaining][current];
            let next = graph.successors(current).find(|&j| {
                self.values[remaining - 1][j].shift(graph.weight(current, j).expect("adjacent"))
                    == *target
            })?;
            nodes.push(next);
            current = next;
        }
        Some(Path::new(nodes).expect("nonempty"))
    }
}

/// `(w^n(i→), critical_hit)`.
pub fn max_weight_profile<S: Scalar>(
    graph: &Digraph<S>,
    critical: &[bool],
    start: usize,
    length: usize,
) -> (Tropical<S>, bool) {
    let profile = WeightProfile::compute(graph, critical, length);
    (profile.values[length][start].clone(), profile.critical_hits[length][start])
}

/// A maximum en-weight path from the query node among the admitted lengths up to the
/// horizon; ties resolve to the shortest length.
pub fn realizer<S: Scalar>(graph: &Digraph<S>, query: &RealizerQuery, cap: usize) -> Result<Realizer<S>> {
    graph.require_irreducible()?;
    if query.target >= graph.node_count() {
        return Err(Error::InvalidInput(format!("node {} out of range", query.target)));
    }
    if matches!(query.lengths, LengthSet::Tail { .. }) && crate::critical::rate(graph, cap)? != S::zero() {
        return Err(Error::Precondition("tail queries need a zero-rate graph".into()));
    }
    let members = query.lengths.members();
    let Some(&longest) = members.last() else {
        return Err(Error::InvalidInput("no admitted length below the horizon".into()));
    };
    let profile = WeightProfile::compute(graph, &vec![false; graph.node_count()], longest);
    let mut best: Option<(usize, &Tropical<S>)> = None;
    for &length in &members {
        let value = &profile.values[length][query.target];
        if best.is_none_or(|(_, b)| value > b) {
            best = Some((length, value));
        }
    }
    let (length, weight) = best.expect("members nonempty");
    let path = profile
        .best_path(graph, query.target, length)
        .expect("strongly connected graphs have walks of every length");
    Ok(Realizer { path, weight: weight.clone() })
}
