use super::Digraph;
use crate::scalar::Scalar;

/// Strongly connected components; `components` is ordered by smallest member,
/// each component's nodes ascending.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SccDecomposition {
    pub component_of: Vec<usize>,
    pub components: Vec<Vec<usize>>,
}

impl SccDecomposition {
    pub fn is_strongly_connected(&self) -> bool {
        self.components.len() == 1
    }

    /// Edges of `graph` with both endpoints in component `c`.
    pub fn internal_edge_count<S: Scalar>(&self, graph: &Digraph<S>, c: usize) -> usize {
        graph
            .edges()
            .iter()
            .filter(|e| self.component_of[e.source] == c && self.component_of[e.target] == c)
            .count()
    }
}

/// Iterative Tarjan.
pub fn scc<S: Scalar>(graph: &Digraph<S>) -> SccDecomposition {
    let n = graph.node_count();
    let adjacency = graph.adjacency_lists();
    const UNVISITED: usize = usize::MAX;

    let mut index = vec![UNVISITED; n];
    let mut lowlink = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut next_index = 0;
    let mut raw_components: Vec<Vec<usize>> = Vec::new();

    for root in 0..n {
        if index[root] != UNVISITED {
            continue;
        }
        // (node, position in its adjacency list)
        let mut call_stack = vec![(root, 0usize)];
        index[root] = next_index;
        lowlink[root] = next_index;
        next_index += 1;
        stack.push(root);
        on_stack[root] = true;

        while let Some(&mut (node, ref mut cursor)) = call_stack.last_mut() {
            if let Some(&next) = adjacency[node].get(*cursor) {
                *cursor += 1;
                if index[next] == UNVISITED {
                    index[next] = next_index;
                    lowlink[next] = next_index;
                    next_index += 1;
                    stack.push(next);
                    on_stack[next] = true;
                    call_stack.push((next, 0));
                } else if on_stack[next] {
                    lowlink[node] = lowlink[node].min(index[next]);
                }
                continue;
            }
            call_stack.pop();
            if let Some(&(parent, _)) = call_stack.last() {
                lowlink[parent] = lowlink[parent].min(lowlink[node]);
            }
            if lowlink[node] == index[node] {
                let mut component = Vec::new();
                loop {
                    let member = stack.pop().expect("tarjan stack underflow");
                    on_stack[member] = false;
                    component.push(member);
                    if member == node {
                        break;
                    }
                }
                component.sort_unstable();
                raw_components.push(component);
            }
        }
    }

    raw_components.sort_by_key(|component| component[0]);
    let mut component_of = vec![0; n];
    for (c, component) in raw_components.iter().enumerate() {
        for &node in component {
            component_of[node] = c;
        }
    }
    SccDecomposition { component_of, components: raw_components }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    fn graph(n: usize, edges: &[(usize, usize)]) -> Digraph<Rational> {
        Digraph::new(n, edges.iter().map(|&(s, t)| (s, t, Rational::from(0)))).unwrap()
    }

    #[test]
    fn two_cycle_is_one_component() {
        let g = graph(2, &[(0, 0), (0, 1), (1, 0)]);
        let d = scc(&g);
        assert!(d.is_strongly_connected());
        assert_eq!(d.components, vec![vec![0, 1]]);
    }

    #[test]
    fn isolated_loops_and_chains() {
        assert_eq!(scc(&graph(2, &[(0, 0), (1, 1)])).components, vec![vec![0], vec![1]]);
        let chain = scc(&graph(2, &[(0, 1)]));
        assert_eq!(chain.components, vec![vec![0], vec![1]]);
        assert_ne!(chain.component_of[0], chain.component_of[1]);
    }

    #[test]
    fn mixed_components() {
        // 0 <-> 1 -> 2 <-> 3, 4 alone
        let g = graph(5, &[(0, 1), (1, 0), (1, 2), (2, 3), (3, 2)]);
        let d = scc(&g);
        assert_eq!(d.components, vec![vec![0, 1], vec![2, 3], vec![4]]);
        assert_eq!(d.internal_edge_count(&g, 0), 2);
        assert_eq!(d.internal_edge_count(&g, 2), 0);
    }
}
