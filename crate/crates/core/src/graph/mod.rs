//! Weighted digraphs `G(A)` / `G(A, v)` and walks in them.

mod boolean;
mod cycles;
mod params;
mod scc;

pub use boolean::BoolMatrix;
pub use cycles::{elementary_cycles, ElementaryCycle};
pub use params::{
    cab_diameter, cab_diameter_within, closed_length_profile, cycle_lengths, cyclicity,
    elementary_cycle_lcm, exploration_penalty, girth_circumference, ClosedLengthProfile,
    GraphParams, DEFAULT_NODE_CAP,
};
pub use scc::{scc, SccDecomposition};

use crate::error::{Error, Result};
use crate::matrix::{MaxPlusMatrix, MaxPlusVector};
use crate::scalar::Scalar;
use crate::tropical::Tropical;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Edge<S> {
    pub source: usize,
    pub target: usize,
    pub weight: S,
}

/// Edge-weighted digraph on nodes `0..n`, optionally node-weighted.
///
/// Edges are kept sorted lexicographically by `(source, target)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Digraph<S> {
    n: usize,
    edges: Vec<Edge<S>>,
    /// Dense `(source, target) -> edge index` lookup.
    index: Vec<Option<usize>>,
    node_weights: Option<Vec<Tropical<S>>>,
}

impl<S: Scalar> Digraph<S> {
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize, S)>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidInput("a graph needs at least one node".into()));
        }
        let mut edges: Vec<Edge<S>> = edges
            .into_iter()
            .map(|(source, target, weight)| Edge { source, target, weight })
            .collect();
        edges.sort_by_key(|e| (e.source, e.target));
        let mut index = vec![None; n * n];
        for (position, edge) in edges.iter().enumerate() {
            if edge.source >= n || edge.target >= n {
                return Err(Error::InvalidInput(format!(
                    "edge ({}, {}) references a node outside 0..{n}",
                    edge.source, edge.target
                )));
            }
            let slot = &mut index[edge.source * n + edge.target];
            if slot.is_some() {
                return Err(Error::InvalidInput(format!(
                    "duplicate edge ({}, {})",
                    edge.source, edge.target
                )));
            }
            *slot = Some(position);
        }
        Ok(Digraph { n, edges, index, node_weights: None })
    }

    pub fn from_int_edges(n: usize, edges: &[(usize, usize, i64)]) -> Result<Self> {
        Self::new(n, edges.iter().map(|&(s, t, w)| (s, t, S::from_i64(w))))
    }

    /// `G(A)`, and `G(A, v)` when a vector is given.
    pub fn from_matrix(a: &MaxPlusMatrix<S>, v: Option<&MaxPlusVector<S>>) -> Result<Self> {
        if !a.is_square() {
            return Err(Error::Dimension("G(A) needs a square matrix".into()));
        }
        let n = a.rows();
        let mut edges = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if let Tropical::Finite(w) = a.get(i, j) {
                    edges.push((i, j, w.clone()));
                }
            }
        }
        let graph = Self::new(n, edges)?;
        match v {
            Some(v) => graph.with_node_weights(v.entries().to_vec()),
            None => Ok(graph),
        }
    }

    pub fn with_node_weights(mut self, weights: Vec<Tropical<S>>) -> Result<Self> {
        if weights.len() != self.n {
            return Err(Error::Dimension(format!(
                "{} node weights for {} nodes",
                weights.len(),
                self.n
            )));
        }
        self.node_weights = Some(weights);
        Ok(self)
    }

    pub fn without_node_weights(mut self) -> Self {
        self.node_weights = None;
        self
    }

    /// The weighted adjacency matrix `A` with `G(A) = self`.
    pub fn to_matrix(&self) -> MaxPlusMatrix<S> {
        let mut a = MaxPlusMatrix::bottom(self.n, self.n).expect("n > 0");
        for e in &self.edges {
            a.set(e.source, e.target, Tropical::Finite(e.weight.clone()));
        }
        a
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[Edge<S>] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_nontrivial(&self) -> bool {
        !self.edges.is_empty()
    }

    pub fn node_weights(&self) -> Option<&[Tropical<S>]> {
        self.node_weights.as_deref()
    }

    pub fn node_weight(&self, node: usize) -> Option<&Tropical<S>> {
        self.node_weights.as_ref().map(|weights| &weights[node])
    }

    pub fn weight(&self, source: usize, target: usize) -> Option<&S> {
        if source >= self.n || target >= self.n {
            return None;
        }
        self.index[source * self.n + target].map(|position| &self.edges[position].weight)
    }

    pub fn has_edge(&self, source: usize, target: usize) -> bool {
        self.weight(source, target).is_some()
    }

    /// Out-neighbours of `node` in ascending order.
    pub fn successors(&self, node: usize) -> impl Iterator<Item = usize> + '_ {
        let row = &self.index[node * self.n..(node + 1) * self.n];
        row.iter()
            .enumerate()
            .filter_map(|(target, slot)| slot.map(|_| target))
    }

    pub fn adjacency_lists(&self) -> Vec<Vec<usize>> {
        (0..self.n).map(|i| self.successors(i).collect()).collect()
    }

    pub fn is_strongly_connected(&self) -> bool {
        scc(self).components.len() == 1
    }

    /// Nontrivial and strongly connected (the irreducibility condition).
    pub fn require_irreducible(&self) -> Result<()> {
        if !self.is_nontrivial() {
            return Err(Error::InvalidInput("graph has no edges".into()));
        }
        if !self.is_strongly_connected() {
            return Err(Error::InvalidInput("graph is not strongly connected".into()));
        }
        Ok(())
    }

    /// Homothety: adds `lambda` to every edge weight. Node weights are kept.
    pub fn shifted(&self, lambda: &S) -> Self {
        let mut shifted = self.clone();
        for edge in &mut shifted.edges {
            edge.weight = edge.weight.clone() + lambda.clone();
        }
        shifted
    }

    /// Same node set, only the edges accepted by `keep`.
    pub fn filter_edges(&self, keep: impl Fn(&Edge<S>) -> bool) -> Self {
        let edges: Vec<_> = self
            .edges
            .iter()
            .filter(|e| keep(e))
            .map(|e| (e.source, e.target, e.weight.clone()))
            .collect();
        let mut graph = Self::new(self.n, edges).expect("subset of a valid edge set");
        graph.node_weights = self.node_weights.clone();
        graph
    }

    /// Subgraph induced by `nodes`, relabelled `0..nodes.len()` in the given order.
    pub fn induced(&self, nodes: &[usize]) -> Result<Self> {
        let mut position = vec![None; self.n];
        for (new, &old) in nodes.iter().enumerate() {
            position[old] = Some(new);
        }
        let edges = self.edges.iter().filter_map(|e| {
            Some((position[e.source]?, position[e.target]?, e.weight.clone()))
        });
        let graph = Self::new(nodes.len(), edges.collect::<Vec<_>>())?;
        match &self.node_weights {
            Some(weights) => graph.with_node_weights(nodes.iter().map(|&i| weights[i].clone()).collect()),
            None => Ok(graph),
        }
    }

    pub fn max_edge_weight(&self) -> Option<&S> {
        self.edges.iter().map(|e| &e.weight).max()
    }

    pub fn min_edge_weight(&self) -> Option<&S> {
        self.edges.iter().map(|e| &e.weight).min()
    }

    pub fn has_integer_weights(&self) -> bool {
        self.edges.iter().all(|e| e.weight.is_integral())
    }
}

/// A walk given by its node sequence; `nodes[0]` is the start node.
///
/// A path of length `l` has `l + 1` nodes. The empty path at `i` is `[i]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Path {
    nodes: Vec<usize>,
}

impl Path {
    pub fn new(nodes: Vec<usize>) -> Result<Self> {
        if nodes.is_empty() {
            return Err(Error::InvalidInput("a path has at least its start node".into()));
        }
        Ok(Path { nodes })
    }

    pub fn empty(node: usize) -> Self {
        Path { nodes: vec![node] }
    }

    pub fn nodes(&self) -> &[usize] {
        &self.nodes
    }

    pub fn start(&self) -> usize {
        self.nodes[0]
    }

    pub fn end(&self) -> usize {
        *self.nodes.last().expect("nonempty node list")
    }

    pub fn len(&self) -> usize {
        self.nodes.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.len() == 1
    }

    pub fn is_closed(&self) -> bool {
        self.start() == self.end()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.nodes.windows(2).map(|pair| (pair[0], pair[1]))
    }

    pub fn contains_node(&self, node: usize) -> bool {
        self.nodes.contains(&node)
    }

    /// No node repeated (the empty path included).
    pub fn is_simple(&self) -> bool {
        let mut seen = std::collections::HashSet::new();
        self.nodes.iter().all(|node| seen.insert(*node))
    }

    /// Closed and nonempty with pairwise distinct nodes apart from the closing one.
    pub fn is_elementary_closed(&self) -> bool {
        self.is_closed() && !self.is_empty() && Path { nodes: self.nodes[1..].to_vec() }.is_simple()
    }

    pub fn concat(&self, other: &Path) -> Result<Path> {
        if self.end() != other.start() {
            return Err(Error::InvalidInput("concatenated paths do not meet".into()));
        }
        let mut nodes = self.nodes.clone();
        nodes.extend_from_slice(&other.nodes[1..]);
        Ok(Path { nodes })
    }

    /// Checks that every step is an edge of `graph`.
    pub fn validate<S: Scalar>(&self, graph: &Digraph<S>) -> Result<()> {
        if self.nodes.iter().any(|&node| node >= graph.node_count()) {
            return Err(Error::InvalidInput("path visits a node outside the graph".into()));
        }
        match self.edges().find(|&(s, t)| !graph.has_edge(s, t)) {
            Some((s, t)) => Err(Error::InvalidInput(format!("({s}, {t}) is not an edge"))),
            None => Ok(()),
        }
    }
}
