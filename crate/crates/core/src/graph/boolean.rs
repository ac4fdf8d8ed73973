use super::Digraph;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Boolean square matrix with rows packed into `u128` bitsets.
///
/// `M^n[i]` has bit `j` set iff some walk of length exactly `n` leads from `i` to `j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BoolMatrix {
    n: usize,
    rows: Vec<u128>,
}

impl BoolMatrix {
    pub const MAX_NODES: usize = 128;

    pub fn identity(n: usize) -> Result<Self> {
        Self::check(n)?;
        Ok(BoolMatrix { n, rows: (0..n).map(|i| 1u128 << i).collect() })
    }

    pub fn adjacency<S: Scalar>(graph: &Digraph<S>) -> Result<Self> {
        let n = graph.node_count();
        Self::check(n)?;
        let mut rows = vec![0u128; n];
        for e in graph.edges() {
            rows[e.source] |= 1u128 << e.target;
        }
        Ok(BoolMatrix { n, rows })
    }

    fn check(n: usize) -> Result<()> {
        if n > Self::MAX_NODES {
            return Err(Error::Capacity { what: "boolean reachability", size: n, cap: Self::MAX_NODES });
        }
        Ok(())
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.rows[i] >> j & 1 == 1
    }

    pub fn row(&self, i: usize) -> u128 {
        self.rows[i]
    }

    pub fn mul(&self, other: &BoolMatrix) -> BoolMatrix {
        let rows = self
            .rows
            .iter()
            .map(|&row| {
                let mut acc = 0u128;
                let mut bits = row;
                while bits != 0 {
                    let k = bits.trailing_zeros() as usize;
                    acc |= other.rows[k];
                    bits &= bits - 1;
                }
                acc
            })
            .collect();
        BoolMatrix { n: self.n, rows }
    }
}
