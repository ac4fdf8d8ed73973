use super::{Digraph, Path};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A nonempty elementary closed path, stored by its distinct nodes starting at the
/// smallest one. The closing edge is `nodes.last() -> nodes[0]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ElementaryCycle<S> {
    pub nodes: Vec<usize>,
    pub weight: S,
}

impl<S: Scalar> ElementaryCycle<S> {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Weight over length, exact.
    pub fn mean(&self) -> S {
        self.weight.clone() / S::from_usize(self.len())
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.nodes.len();
        (0..n).map(move |i| (self.nodes[i], self.nodes[(i + 1) % n]))
    }

    pub fn as_path(&self) -> Path {
        let mut nodes = self.nodes.clone();
        nodes.push(self.nodes[0]);
        Path::new(nodes).expect("nonempty")
    }
}

/// All elementary cycles, each reported once, in a deterministic order: by smallest
/// node, then in depth-first order over ascending successors.
pub fn elementary_cycles<S: Scalar>(graph: &Digraph<S>, cap: usize) -> Result<Vec<ElementaryCycle<S>>> {
    let n = graph.node_count();
    if n > cap {
        return Err(Error::Capacity { what: "elementary cycle enumeration", size: n, cap });
    }
    let adjacency = graph.adjacency_lists();
    let mut cycles = Vec::new();
    let mut on_path = vec![false; n];

    for start in 0..n {
        // frames: (node, next successor position, weight so far)
        let mut path = vec![start];
        let mut weights = vec![S::zero()];
        let mut cursors = vec![0usize];
        on_path[start] = true;

        while let Some(&node) = path.last() {
            let depth = path.len() - 1;
            let cursor = cursors[depth];
            match adjacency[node].get(cursor) {
                Some(&next) => {
                    cursors[depth] += 1;
                    if next < start {
                        continue;
                    }
                    let weight = weights[depth].clone()
                        + graph.weight(node, next).expect("adjacent").clone();
                    if next == start {
                        cycles.push(ElementaryCycle { nodes: path.clone(), weight });
                    } else if !on_path[next] {
                        on_path[next] = true;
                        path.push(next);
                        weights.push(weight);
                        cursors.push(0);
                    }
                }
                None => {
                    on_path[node] = false;
                    path.pop();
                    weights.pop();
                    cursors.pop();
                }
            }
        }
    }
    Ok(cycles)
}
