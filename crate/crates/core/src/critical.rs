//! Maximum cycle mean, the critical subgraph and the weight parameters derived from it.

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::graph::{
    cab_diameter_within, cyclicity, elementary_cycles, exploration_penalty, scc, Digraph,
    ElementaryCycle,
};
use crate::scalar::Scalar;
use crate::tropical::Tropical;

/// A strongly connected component of `G_c` with at least one edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriticalComponent {
    pub nodes: Vec<usize>,
    pub cyclicity: usize,
    pub exploration_penalty: usize,
    pub circumference: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriticalStructure<S> {
    pub nodes: usize,
    pub rho: S,
    /// Sorted `(source, target)` pairs.
    pub critical_edges: Vec<(usize, usize)>,
    pub critical_nodes: Vec<bool>,
    /// `G_c` on the full node set, keeping only critical edges.
    pub critical_subgraph: Digraph<S>,
    pub components: Vec<CriticalComponent>,
    pub rho_nc: Tropical<S>,
    pub rho1: Tropical<S>,
    /// `None` when every elementary cycle is critical.
    pub f: Option<S>,
    pub delta: S,
    pub big_delta: S,
    pub big_delta_nc: S,
    /// Longest elementary critical cycle.
    pub cr_c: usize,
    pub cd_nc: usize,
    pub n_nc: usize,
    /// `c(A) = c(G_c)`.
    pub c_of_a: usize,
    /// `d(G_c)`.
    pub d_of_a: usize,
}

impl<S: Scalar> CriticalStructure<S> {
    pub fn is_critical(&self, node: usize) -> bool {
        self.critical_nodes[node]
    }

    pub fn critical_node_list(&self) -> Vec<usize> {
        (0..self.nodes).filter(|&i| self.critical_nodes[i]).collect()
    }

    pub fn max_component_ep(&self) -> usize {
        self.components.iter().map(|h| h.exploration_penalty).max().unwrap_or(0)
    }

    pub fn max_component_cyclicity(&self) -> usize {
        self.components.iter().map(|h| h.cyclicity).max().unwrap_or(1)
    }

    pub fn is_primitive(&self) -> bool {
        self.components.iter().all(|h| h.cyclicity == 1)
    }

    pub fn delta_bar(&self) -> S {
        self.delta.clone() - self.rho.clone()
    }

    pub fn big_delta_bar(&self) -> S {
        self.big_delta.clone() - self.rho.clone()
    }

    pub fn big_delta_nc_bar(&self) -> S {
        self.big_delta_nc.clone() - self.rho.clone()
    }

    pub fn rho_nc_bar(&self) -> Tropical<S> {
        self.rho_nc.shift(&-self.rho.clone())
    }
}

/// `rho(G)`: maximum mean over elementary cycles.
pub fn rate<S: Scalar>(graph: &Digraph<S>, cap: usize) -> Result<S> {
    graph.require_irreducible()?;
    let cycles = elementary_cycles(graph, cap)?;
    Ok(cycles.iter().map(ElementaryCycle::mean).max().expect("nontrivial graph has a cycle"))
}

/// Karp's maximum cycle mean, polynomial and independent of cycle enumeration.
pub fn karp_rate<S: Scalar>(graph: &Digraph<S>) -> Result<S> {
    graph.require_irreducible()?;
    let n = graph.node_count();
    // walks[k][v]: heaviest walk of length k from node 0 to v
    let mut walks = vec![vec![Tropical::Bottom; n]; n + 1];
    walks[0][0] = Tropical::zero();
    for k in 1..=n {
        for e in graph.edges() {
            let candidate = walks[k - 1][e.source].shift(&e.weight);
            if candidate > walks[k][e.target] {
                walks[k][e.target] = candidate;
            }
        }
    }
    let mut best: Option<S> = None;
    for v in 0..n {
        let Some(last) = walks[n][v].finite() else { continue };
        let worst = (0..n)
            .filter_map(|k| {
                walks[k][v]
                    .finite()
                    .map(|w| (last.clone() - w.clone()) / S::from_usize(n - k))
            })
            .min();
        if let Some(worst) = worst {
            best = Some(best.map_or(worst.clone(), |b| b.max(worst)));
        }
    }
    best.ok_or_else(|| Error::Precondition("no closed walk found".into()))
}

/// `(-rho) ⊗ G`.
pub fn normalize<S: Scalar>(graph: &Digraph<S>, cap: usize) -> Result<Digraph<S>> {
    let rho = rate(graph, cap)?;
    Ok(graph.shifted(&-rho))
}

pub fn analyze<S: Scalar>(graph: &Digraph<S>, cap: usize) -> Result<CriticalStructure<S>> {
    graph.require_irreducible()?;
    let n = graph.node_count();
    let cycles = elementary_cycles(graph, cap)?;
    let rho = cycles.iter().map(ElementaryCycle::mean).max().expect("nontrivial graph has a cycle");
    let (critical, other): (Vec<_>, Vec<_>) = cycles.iter().partition(|c| c.mean() == rho);

    let mut critical_nodes = vec![false; n];
    let mut critical_edges = Vec::new();
    for cycle in &critical {
        for (s, t) in cycle.edges() {
            critical_nodes[s] = true;
            critical_edges.push((s, t));
        }
    }
    critical_edges.sort_unstable();
    critical_edges.dedup();
    let critical_subgraph =
        graph.filter_edges(|e| critical_edges.binary_search(&(e.source, e.target)).is_ok());

    let decomposition = scc(&critical_subgraph);
    let mut components = Vec::new();
    for (index, members) in decomposition.components.iter().enumerate() {
        if decomposition.internal_edge_count(&critical_subgraph, index) == 0 {
            continue;
        }
        let induced = critical_subgraph.induced(members)?;
        let circumference = critical
            .iter()
            .filter(|c| decomposition.component_of[c.nodes[0]] == index)
            .map(|c| c.len())
            .max()
            .unwrap_or(0);
        components.push(CriticalComponent {
            nodes: members.clone(),
            cyclicity: cyclicity(&induced).0,
            exploration_penalty: exploration_penalty(&induced)?,
            circumference,
        });
    }
    let c_of_a = components.iter().fold(1, |acc, h| acc.lcm(&h.cyclicity));
    let d_of_a = components.iter().map(|h| h.cyclicity).max().unwrap_or(1);

    let rho_nc = crate::tropical::max_of(
        other
            .iter()
            .filter(|c| c.nodes.iter().all(|&i| !critical_nodes[i]))
            .map(|c| Tropical::Finite(c.mean())),
    );
    let rho1 = crate::tropical::max_of(other.iter().map(|c| Tropical::Finite(c.mean())));
    let f = other
        .iter()
        .map(|c| S::from_usize(c.len()) * rho.clone() - c.weight.clone())
        .min();

    let delta = graph.min_edge_weight().expect("nontrivial").clone();
    let big_delta = graph.max_edge_weight().expect("nontrivial").clone();
    let big_delta_nc = graph
        .edges()
        .iter()
        .filter(|e| !critical_nodes[e.source] && !critical_nodes[e.target])
        .map(|e| e.weight.clone())
        .max()
        .unwrap_or_else(|| rho.clone());

    let non_critical: Vec<bool> = critical_nodes.iter().map(|&c| !c).collect();
    let cd_nc = cab_diameter_within(graph, &non_critical, cap)?;
    let n_nc = non_critical.iter().filter(|&&b| b).count();
    let cr_c = critical.iter().map(|c| c.len()).max().unwrap_or(0);

    Ok(CriticalStructure {
        nodes: n,
        rho,
        critical_edges,
        critical_nodes,
        critical_subgraph,
        components,
        rho_nc,
        rho1,
        f,
        delta,
        big_delta,
        big_delta_nc,
        cr_c,
        cd_nc,
        n_nc,
        c_of_a,
        d_of_a,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::DEFAULT_NODE_CAP;
    use crate::Rational;

    fn r(n: i64) -> Rational {
        Rational::from(n)
    }

    fn g2() -> Digraph<Rational> {
        Digraph::from_int_edges(2, &[(0, 0, 0), (0, 1, -1), (1, 0, 0), (1, 1, -1)]).unwrap()
    }

    fn a1() -> Digraph<Rational> {
        Digraph::from_int_edges(2, &[(0, 0, -1), (0, 1, 0), (1, 0, 0)]).unwrap()
    }

    #[test]
    fn rates() {
        let two = Digraph::<Rational>::from_int_edges(2, &[(0, 1, 1), (1, 0, -1)]).unwrap();
        assert_eq!(rate(&two, DEFAULT_NODE_CAP).unwrap(), r(0));
        assert_eq!(rate(&a1(), DEFAULT_NODE_CAP).unwrap(), r(0));
        assert_eq!(rate(&g2(), DEFAULT_NODE_CAP).unwrap(), r(0));
        assert_eq!(karp_rate(&g2()).unwrap(), r(0));
        let chain = Digraph::<Rational>::from_int_edges(2, &[(0, 1, 0)]).unwrap();
        assert!(rate(&chain, DEFAULT_NODE_CAP).is_err());
    }

    #[test]
    fn karp_matches_enumeration_on_fractional_mean() {
        let g = Digraph::<Rational>::from_int_edges(
            3,
            &[(0, 1, 1), (1, 2, 1), (2, 0, 2), (1, 0, 0), (2, 2, 1)],
        )
        .unwrap();
        assert_eq!(rate(&g, 12).unwrap(), Rational::new(4, 3));
        assert_eq!(karp_rate(&g).unwrap(), Rational::new(4, 3));
    }

    #[test]
    fn g2_structure() {
        let cs = analyze(&g2(), DEFAULT_NODE_CAP).unwrap();
        assert_eq!(cs.critical_node_list(), vec![0]);
        assert_eq!(cs.critical_edges, vec![(0, 0)]);
        assert_eq!(cs.n_nc, 1);
        assert_eq!(cs.rho_nc, Tropical::int(-1));
        assert_eq!(cs.rho1, Tropical::Finite(Rational::new(-1, 2)));
        assert_eq!(cs.f, Some(r(1)));
        assert_eq!(cs.big_delta_nc, r(-1));
        assert_eq!(cs.delta, r(-1));
        assert_eq!(cs.big_delta, r(0));
        assert_eq!((cs.cr_c, cs.cd_nc, cs.c_of_a), (1, 0, 1));
        assert_eq!(cs.components.len(), 1);
        assert_eq!(cs.components[0].exploration_penalty, 0);
    }

    #[test]
    fn a1_structure() {
        let cs = analyze(&a1(), DEFAULT_NODE_CAP).unwrap();
        assert_eq!(cs.critical_node_list(), vec![0, 1]);
        assert_eq!(cs.n_nc, 0);
        assert_eq!(cs.rho_nc, Tropical::Bottom);
        assert_eq!(cs.big_delta_nc, cs.rho);
        assert_eq!(cs.c_of_a, 2);
        assert_eq!(cs.rho1, Tropical::int(-1));
    }

    #[test]
    fn homothety_keeps_critical_subgraph() {
        let g = g2();
        let base = analyze(&g, 12).unwrap();
        let lambda = Rational::new(7, 3);
        let shifted = analyze(&g.shifted(&lambda), 12).unwrap();
        assert_eq!(shifted.rho, base.rho + lambda);
        assert_eq!(shifted.critical_edges, base.critical_edges);
        assert_eq!(shifted.big_delta_bar(), base.big_delta_bar());
        assert_eq!(shifted.rho_nc_bar(), base.rho_nc_bar());
    }

    #[test]
    fn normalization() {
        let g = Digraph::<Rational>::from_int_edges(3, &[(0, 1, -2), (1, 2, -2), (2, 0, -2)]).unwrap();
        let normalized = normalize(&g, 12).unwrap();
        assert!(normalized.edges().iter().all(|e| e.weight == r(0)));
        assert_eq!(normalize(&g2(), 12).unwrap(), g2());
    }
}
