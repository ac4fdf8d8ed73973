//! Exact transients and minimal periods by direct iteration.
//!
//! The iterated state is rate-normalized (`(-ρ) ⊗ A` is iterated instead of `A`), so
//! the sequence becomes eventually periodic in the plain sense. It is deterministic,
//! hence its first repeated state pins down both the transient and the minimal
//! period exactly. The bounds only size the iteration budget: running past it is a
//! hard error.

use std::collections::HashMap;
use std::hash::Hash;

use crate::bounds::{b_enp_corrected, b_ms, b_ne1_corrected, b_ne2_corrected, matrix_bound_corrected};
use crate::critical::{analyze, CriticalStructure};
use crate::error::{Error, Result};
use crate::graph::{Digraph, GraphParams};
use crate::matrix::{MaxPlusMatrix, MaxPlusVector};
use crate::scalar::{ceil_usize, count, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransientResult<S> {
    pub transient: usize,
    /// Minimal period `p_0`.
    pub period: usize,
    /// `p_0 ρ`.
    pub gain: S,
    /// Iteration budget the result was found within.
    pub horizon: usize,
}

/// Structure of an irreducible matrix needed by the oracle.
#[derive(Clone, Debug)]
pub struct OracleContext<S> {
    pub graph: Digraph<S>,
    pub params: GraphParams,
    pub critical: CriticalStructure<S>,
}

impl<S: Scalar> OracleContext<S> {
    pub fn new(a: &MaxPlusMatrix<S>, cap: usize) -> Result<Self> {
        if !a.is_square() {
            return Err(Error::Dimension("transient of a non-square matrix".into()));
        }
        let graph = Digraph::from_matrix(a, None)?;
        graph.require_irreducible()?;
        let params = GraphParams::compute(&graph, cap)?;
        let critical = analyze(&graph, cap)?;
        Ok(OracleContext { graph, params, critical })
    }

    pub fn c_of_a(&self) -> usize {
        self.critical.c_of_a
    }

    /// `⌈matrix bound⌉ + c(A)`, with the corrected critical bound.
    pub fn matrix_horizon(&self) -> Result<usize> {
        Ok(ceil_usize(&matrix_bound_corrected(&self.critical, &self.params)?) + self.c_of_a())
    }

    /// `⌈min(B_enp, B_ne1, B_ne2)⌉ + c(A)` for finite `v`, the matrix horizon otherwise.
    /// The bounds are the corrected ones.
    pub fn system_horizon(&self, v: &MaxPlusVector<S>) -> Result<usize> {
        match v.spread() {
            Some(norm) => {
                let cs = &self.critical;
                let best = b_enp_corrected(cs, &self.params, &norm)
                    .min(b_ne1_corrected(cs, &self.params, &norm))
                    .min(b_ne2_corrected(cs, &self.params, &norm));
                Ok(ceil_usize(&best) + self.c_of_a())
            }
            None => self.matrix_horizon(),
        }
    }
}

/// First repeat of `state, step(state), ...` within `budget` steps: `(preperiod, period)`.
fn first_repeat<T: Clone + Eq + Hash>(
    initial: T,
    budget: usize,
    mut step: impl FnMut(&T) -> Result<T>,
) -> Result<(usize, usize)> {
    let mut seen: HashMap<T, usize> = HashMap::new();
    let mut state = initial;
    for index in 0..=budget {
        if let Some(&first) = seen.get(&state) {
            return Ok((first, index - first));
        }
        let next = step(&state)?;
        seen.insert(state, index);
        state = next;
    }
    Err(Error::NotStabilized { horizon: budget })
}

fn result<S: Scalar>(rho: &S, (transient, period): (usize, usize), horizon: usize) -> TransientResult<S> {
    TransientResult { transient, period, gain: count::<S>(period) * rho.clone(), horizon }
}

/// Matrix transient within an explicit horizon; the repeat must show up by
/// `horizon + c(A)`.
pub fn matrix_transient_within<S: Scalar>(
    a: &MaxPlusMatrix<S>,
    ctx: &OracleContext<S>,
    horizon: usize,
) -> Result<TransientResult<S>> {
    let rho = &ctx.critical.rho;
    let normalized = a.shifted(&-rho.clone());
    let found = first_repeat(MaxPlusMatrix::identity(a.rows())?, horizon + ctx.c_of_a(), |m| {
        m.mul(&normalized)
    })?;
    Ok(result(rho, found, horizon))
}

pub fn system_transient_within<S: Scalar>(
    a: &MaxPlusMatrix<S>,
    v: &MaxPlusVector<S>,
    ctx: &OracleContext<S>,
    horizon: usize,
) -> Result<TransientResult<S>> {
    if v.is_all_bottom() {
        return Err(Error::InvalidInput("initial vector is entirely bottom".into()));
    }
    let rho = &ctx.critical.rho;
    let normalized = a.shifted(&-rho.clone());
    let found = first_repeat(v.clone(), horizon + ctx.c_of_a(), |x| normalized.mul_vec(x))?;
    Ok(result(rho, found, horizon))
}

/// `n_A`, `p_0` and `p_0 ρ` of an irreducible matrix.
pub fn matrix_transient<S: Scalar>(a: &MaxPlusMatrix<S>, cap: usize) -> Result<TransientResult<S>> {
    let ctx = OracleContext::new(a, cap)?;
    matrix_transient_within(a, &ctx, ctx.matrix_horizon()?)
}

/// `n_{A,v}` and the minimal period of `x_{A,v}`.
pub fn system_transient<S: Scalar>(
    a: &MaxPlusMatrix<S>,
    v: &MaxPlusVector<S>,
    cap: usize,
) -> Result<TransientResult<S>> {
    let ctx = OracleContext::new(a, cap)?;
    if v.dim() != a.rows() {
        return Err(Error::Dimension(format!("vector of dimension {} for a {}-node matrix", v.dim(), a.rows())));
    }
    system_transient_within(a, v, &ctx, ctx.system_horizon(v)?)
}

/// `A^{n + c} = (c ρ) ⊗ A^n` for every `n` in `[n_A, n_A + 3c]`, on unnormalized powers.
pub fn check_perron<S: Scalar>(a: &MaxPlusMatrix<S>, cap: usize) -> Result<bool> {
    let ctx = OracleContext::new(a, cap)?;
    let n_a = matrix_transient_within(a, &ctx, ctx.matrix_horizon()?)?.transient;
    let c = ctx.c_of_a();
    let gain = count::<S>(c) * ctx.critical.rho.clone();
    let mut power = a.power(n_a)?;
    let mut ahead = a.power(n_a + c)?;
    for _ in 0..=3 * c {
        if ahead != power.shifted(&gain) {
            return Ok(false);
        }
        power = power.mul(a)?;
        ahead = ahead.mul(a)?;
    }
    Ok(true)
}

/// `n_A = max_j n_{A, e^j}`.
pub fn check_column_identity<S: Scalar>(a: &MaxPlusMatrix<S>, cap: usize) -> Result<bool> {
    let ctx = OracleContext::new(a, cap)?;
    let horizon = ctx.matrix_horizon()?;
    let n_a = matrix_transient_within(a, &ctx, horizon)?.transient;
    let mut max = 0;
    for j in 0..a.rows() {
        let e = MaxPlusVector::unit(a.rows(), j)?;
        max = max.max(system_transient_within(a, &e, &ctx, horizon)?.transient);
    }
    Ok(max == n_a)
}

/// `μ(A)`: the largest `A^n_{ik} - A^n_{ij}` over `n ≥ B_ms` with `A^n_{ij}` finite.
///
/// Differences are shift-invariant and repeat with the minimal period once `n ≥ n_A`,
/// so `n` ranges over `[⌈B_ms⌉, max(⌈B_ms⌉, n_A) + p_0)`.
pub fn mu_exact<S: Scalar>(a: &MaxPlusMatrix<S>, cap: usize) -> Result<S> {
    let ctx = OracleContext::new(a, cap)?;
    mu_exact_with(a, &ctx)
}

pub fn mu_exact_with<S: Scalar>(a: &MaxPlusMatrix<S>, ctx: &OracleContext<S>) -> Result<S> {
    let stable = matrix_transient_within(a, ctx, ctx.matrix_horizon()?)?;
    let start = ceil_usize(&b_ms(&ctx.critical, &ctx.params)?.0);
    let end = start.max(stable.transient) + stable.period;
    let normalized = a.shifted(&-ctx.critical.rho.clone());
    let mut power = normalized.power(start)?;
    let n = a.rows();
    let mut mu = S::zero();
    for _ in start..end {
        for i in 0..n {
            let row = power.row(i);
            let Some(top) = row.iter().filter_map(|x| x.finite()).max() else { continue };
            let Some(low) = row.iter().filter_map(|x| x.finite()).min() else { continue };
            mu = mu.max(top.clone() - low.clone());
        }
        power = power.mul(&normalized)?;
    }
    Ok(mu)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{Matrix, Rational, Vector};

    fn a_g2() -> Matrix {
        Matrix::from_ints(&[&[Some(0), Some(-1)], &[Some(0), Some(-1)]]).unwrap()
    }

    fn a1() -> Matrix {
        Matrix::from_ints(&[&[Some(-1), Some(0)], &[Some(0), None]]).unwrap()
    }

    #[test]
    fn matrix_examples() {
        let t = matrix_transient(&a_g2(), 12).unwrap();
        assert_eq!((t.transient, t.period), (1, 1));
        let t = matrix_transient(&a1(), 12).unwrap();
        assert_eq!((t.transient, t.period, t.gain), (2, 2, Rational::from(0)));
        let t = matrix_transient(&Matrix::from_ints(&[&[Some(0)]]).unwrap(), 12).unwrap();
        assert_eq!((t.transient, t.period), (0, 1));
        let reducible = Matrix::from_ints(&[&[Some(0), Some(0)], &[None, Some(0)]]).unwrap();
        assert!(matrix_transient(&reducible, 12).is_err());
    }

    #[test]
    fn gain_is_period_times_rate() {
        let a = Matrix::from_ints(&[&[None, Some(3)], &[Some(1), None]]).unwrap();
        let t = matrix_transient(&a, 12).unwrap();
        assert_eq!((t.transient, t.period, t.gain), (0, 2, Rational::from(4)));
    }

    #[test]
    fn system_examples() {
        let zero = Vector::from_ints(&[Some(0), Some(0)]).unwrap();
        assert_eq!(system_transient(&a_g2(), &zero, 12).unwrap().transient, 0);
        let v1 = Vector::from_ints(&[Some(0), Some(-1)]).unwrap();
        assert_eq!(system_transient(&a_g2(), &v1, 12).unwrap().transient, 1);
        assert_eq!(system_transient(&a1(), &zero, 12).unwrap().transient, 0);
        let bottom = Vector::from_ints(&[None, None]).unwrap();
        assert!(system_transient(&a1(), &bottom, 12).is_err());
    }

    #[test]
    fn periodicity_checks() {
        for a in [a1(), a_g2(), Matrix::from_ints(&[&[Some(5)]]).unwrap()] {
            assert!(check_perron(&a, 12).unwrap());
            assert!(check_column_identity(&a, 12).unwrap());
        }
    }

    #[test]
    fn mu_examples() {
        assert_eq!(mu_exact(&a_g2(), 12).unwrap(), Rational::from(1));
        assert_eq!(mu_exact(&Matrix::from_ints(&[&[Some(0)]]).unwrap(), 12).unwrap(), Rational::from(0));
    }

    #[test]
    fn tiny_horizon_is_a_hard_failure() {
        let ctx = OracleContext::new(&a1(), 12).unwrap();
        assert!(matches!(matrix_transient_within(&a1(), &ctx, 0), Err(Error::NotStabilized { .. })));
    }
}
