//! Numerical semigroups: Brauer's threshold, representability, and the
//! zero-sum-subset pigeonhole.

use num_integer::Integer;

use crate::error::{Error, Result};

/// Sorted nonempty multiset of positive integers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorSet {
    generators: Vec<u64>,
    gcd: u64,
}

impl GeneratorSet {
    pub fn new(mut generators: Vec<u64>) -> Result<Self> {
        if generators.is_empty() || generators.contains(&0) {
            return Err(Error::InvalidInput("generators must be a nonempty list of positive integers".into()));
        }
        generators.sort_unstable();
        let gcd = generators.iter().fold(0, |acc, &a| acc.gcd(&a));
        Ok(GeneratorSet { generators, gcd })
    }

    pub fn generators(&self) -> &[u64] {
        &self.generators
    }

    pub fn gcd(&self) -> u64 {
        self.gcd
    }
}

/// `d (a_1/d - 1)(a_k/d - 1)`: every multiple of `d` from here on is representable.
pub fn brauer_threshold(gens: &GeneratorSet) -> u64 {
    let d = gens.gcd;
    let first = gens.generators[0] / d;
    let last = gens.generators[gens.generators.len() - 1] / d;
    d * (first - 1) * (last - 1)
}

/// Representability of every `m ≤ limit` as a nonnegative integer combination.
pub fn representable_table(limit: usize, gens: &GeneratorSet) -> Vec<bool> {
    let mut table = vec![false; limit + 1];
    table[0] = true;
    for m in 1..=limit {
        table[m] = gens
            .generators
            .iter()
            .any(|&a| (a as usize) <= m && table[m - a as usize]);
    }
    table
}

pub fn representable(n: u64, gens: &GeneratorSet) -> bool {
    representable_table(n as usize, gens)[n as usize]
}

/// A nonempty contiguous index window `I` (0-based, ascending) with
/// `Σ_{i∈I} x_i ≡ 0 (mod d)`, taken from the first repeated prefix-sum residue
/// (the empty prefix included).
pub fn zero_subset_mod(xs: &[i64], d: usize) -> Result<Vec<usize>> {
    if d == 0 || xs.len() != d {
        return Err(Error::InvalidInput(format!("expected {d} values, got {}", xs.len())));
    }
    let modulus = d as i64;
    let mut first_seen = vec![None; d];
    first_seen[0] = Some(0usize);
    let mut prefix = 0i64;
    for (index, &x) in xs.iter().enumerate() {
        prefix = (prefix + x.rem_euclid(modulus)) % modulus;
        let residue = prefix as usize;
        if let Some(start) = first_seen[residue] {
            return Ok((start..=index).collect());
        }
        first_seen[residue] = Some(index + 1);
    }
    unreachable!("d + 1 prefix sums over d residues must collide")
}
