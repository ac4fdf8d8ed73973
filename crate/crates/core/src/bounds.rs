//! Transience bounds.
//!
//! All bounds are exact rationals; integer thresholds are their ceilings. Barred
//! quantities are read relative to `rho`, so every value is invariant under
//! homothety.

use crate::critical::CriticalStructure;
use crate::error::{Error, Result};
use crate::graph::GraphParams;
use crate::matrix::MaxPlusVector;
use crate::scalar::{count, Scalar};
use crate::tropical::Tropical;

fn ep_of_graph(params: &GraphParams) -> Result<usize> {
    params
        .exploration_penalty
        .ok_or_else(|| Error::Precondition("exploration penalty needs a strongly connected graph".into()))
}

/// Value of a bound term when `rho_nc = -inf`: 0 if every node is critical, else `cd_nc + 1`.
fn degenerate_critical_bound<S: Scalar>(cs: &CriticalStructure<S>) -> Option<S> {
    if cs.n_nc == 0 {
        return Some(S::zero());
    }
    match cs.rho_nc {
        Tropical::Bottom => Some(count(cs.cd_nc + 1)),
        Tropical::Finite(_) => None,
    }
}

fn critical_bound<S: Scalar>(cs: &CriticalStructure<S>, params: &GraphParams, norm_wv: &S, delta_nc_bar: S) -> S {
    if let Some(value) = degenerate_critical_bound(cs) {
        return value;
    }
    let gap = -cs.rho_nc_bar().into_finite().expect("finite rho_nc");
    let delta_bar = cs.delta_bar();
    let head = norm_wv.clone() + delta_nc_bar * count::<S>(cs.cd_nc);
    let first = count::<S>(cs.cd_nc)
        + (head.clone() - delta_bar.clone() * count::<S>(params.cab_diameter)) / gap.clone();
    let second = (head - delta_bar * count::<S>(cs.n_nc + cs.cr_c - 1)) / gap;
    first.min(second)
}

/// `B_c`, the critical bound.
///
/// When `Δ_nc < ρ` this can fall short of the length after which some maximum-weight
/// path visits a critical node; [`b_cnc_corrected`] cannot.
pub fn b_cnc<S: Scalar>(cs: &CriticalStructure<S>, params: &GraphParams, norm_wv: &S) -> S {
    critical_bound(cs, params, norm_wv, cs.big_delta_nc_bar())
}

/// `B_c` with `max(Δ̄_nc, 0)` in place of `Δ̄_nc`. Equal to [`b_cnc`] when `Δ_nc ≥ ρ`.
pub fn b_cnc_corrected<S: Scalar>(cs: &CriticalStructure<S>, params: &GraphParams, norm_wv: &S) -> S {
    critical_bound(cs, params, norm_wv, cs.big_delta_nc_bar().max(S::zero()))
}

fn corollary_bound<S: Scalar>(cs: &CriticalStructure<S>, norm_wv: &S, big_delta_nc: S) -> S {
    if let Some(value) = degenerate_critical_bound(cs) {
        return value;
    }
    let gap = -cs.rho_nc_bar().into_finite().expect("finite rho_nc");
    (norm_wv.clone() + (big_delta_nc - cs.delta.clone()) * count::<S>(cs.nodes - 1)) / gap
}

/// `(||v|| + (Δ_nc - δ)(N - 1)) / (ρ - ρ_nc)`, with the degenerate convention of [`b_cnc`].
pub fn b_cnc_corollary<S: Scalar>(cs: &CriticalStructure<S>, norm_wv: &S) -> S {
    corollary_bound(cs, norm_wv, cs.big_delta_nc.clone())
}

/// [`b_cnc_corollary`] with `max(Δ_nc, ρ)` in place of `Δ_nc`; dominates [`b_cnc_corrected`].
pub fn b_cnc_corollary_corrected<S: Scalar>(cs: &CriticalStructure<S>, norm_wv: &S) -> S {
    corollary_bound(cs, norm_wv, cs.big_delta_nc.clone().max(cs.rho.clone()))
}

fn ep_term<S: Scalar>(cs: &CriticalStructure<S>, params: &GraphParams) -> Result<S> {
    if !cs.is_primitive() {
        return Err(Error::Precondition("critical subgraph is not primitive".into()));
    }
    Ok(count(2 * params.cab_diameter + cs.max_component_ep()))
}

fn enp_term<S: Scalar>(cs: &CriticalStructure<S>, params: &GraphParams) -> S {
    let d = cs.d_of_a;
    let cr = params.circumference.unwrap_or(0);
    count((d - 1) * cr + (d + 1) * params.cab_diameter + cs.max_component_ep())
}

fn ne1_term<S: Scalar>(cs: &CriticalStructure<S>, params: &GraphParams) -> S {
    let cr = params.circumference.unwrap_or(0);
    count((cs.cr_c - 1) * cr + (cs.cr_c + 1) * params.cab_diameter)
}

fn ne2_term<S: Scalar>(cs: &CriticalStructure<S>) -> S {
    count(cs.nodes * cs.nodes)
}

/// `max{B_c, 2 cd + max ep(H)}`; only for primitive `G_c`.
pub fn b_ep<S: Scalar>(cs: &CriticalStructure<S>, params: &GraphParams, norm_wv: &S) -> Result<S> {
    Ok(b_cnc(cs, params, norm_wv).max(ep_term(cs, params)?))
}

/// `max{B_c, (d - 1) cr + (d + 1) cd + max ep(H)}` with `d = d(G_c)`.
pub fn b_enp<S: Scalar>(cs: &CriticalStructure<S>, params: &GraphParams, norm_wv: &S) -> S {
    b_cnc(cs, params, norm_wv).max(enp_term(cs, params))
}

/// `max{B_c, (cr(G_c) - 1) cr + (cr(G_c) + 1) cd}`.
pub fn b_ne1<S: Scalar>(cs: &CriticalStructure<S>, params: &GraphParams, norm_wv: &S) -> S {
    b_cnc(cs, params, norm_wv).max(ne1_term(cs, params))
}

/// `max{B_c, N^2}`.
pub fn b_ne2<S: Scalar>(cs: &CriticalStructure<S>, params: &GraphParams, norm_wv: &S) -> S {
    b_cnc(cs, params, norm_wv).max(ne2_term(cs))
}

pub fn b_ep_corrected<S: Scalar>(cs: &CriticalStructure<S>, params: &GraphParams, norm_wv: &S) -> Result<S> {
    Ok(b_cnc_corrected(cs, params, norm_wv).max(ep_term(cs, params)?))
}

pub fn b_enp_corrected<S: Scalar>(cs: &CriticalStructure<S>, params: &GraphParams, norm_wv: &S) -> S {
    b_cnc_corrected(cs, params, norm_wv).max(enp_term(cs, params))
}

pub fn b_ne1_corrected<S: Scalar>(cs: &CriticalStructure<S>, params: &GraphParams, norm_wv: &S) -> S {
    b_cnc_corrected(cs, params, norm_wv).max(ne1_term(cs, params))
}

pub fn b_ne2_corrected<S: Scalar>(cs: &CriticalStructure<S>, params: &GraphParams, norm_wv: &S) -> S {
    b_cnc_corrected(cs, params, norm_wv).max(ne2_term(cs))
}

/// `(B_ms, upper bound on mu(A))`.
pub fn b_ms<S: Scalar>(cs: &CriticalStructure<S>, params: &GraphParams) -> Result<(S, S)> {
    let ep = ep_of_graph(params)?;
    let cd = params.cab_diameter;
    let max_c = cs.max_component_cyclicity();
    let b = count::<S>(2 * cd + ep + max_c + cs.max_component_ep()) - S::one();
    let mu_upper = cs.big_delta_bar() * count::<S>(cd) - cs.delta_bar() * count::<S>(2 * cd + ep + max_c - 1);
    Ok((b, mu_upper))
}

/// `v^j`: 0 at `j` (0-based), `-mu` elsewhere.
pub fn v_hat<S: Scalar>(n: usize, j: usize, mu: &S) -> Result<MaxPlusVector<S>> {
    if j >= n {
        return Err(Error::InvalidInput(format!("index {j} out of range for dimension {n}")));
    }
    MaxPlusVector::new(
        (0..n)
            .map(|k| if k == j { Tropical::zero() } else { Tropical::Finite(-mu.clone()) })
            .collect(),
    )
}

/// `(Δ - δ)(N - 1) + (ρ - δ)(2(N - 1) + ep(G))`, the norm substituted in the matrix bound.
pub fn substituted_norm<S: Scalar>(cs: &CriticalStructure<S>, params: &GraphParams) -> Result<S> {
    let ep = ep_of_graph(params)?;
    let n1 = cs.nodes - 1;
    Ok((cs.big_delta.clone() - cs.delta.clone()) * count::<S>(n1)
        - cs.delta_bar() * count::<S>(2 * n1 + ep))
}

fn matrix_bound_from<S: Scalar>(cs: &CriticalStructure<S>, params: &GraphParams, first: S) -> Result<S> {
    let n = cs.nodes;
    let ep = ep_of_graph(params)?;
    let d = cs.d_of_a;
    let cr = cs.cr_c;
    let candidates = [
        (d - 1) + 2 * d * (n - 1) + cs.max_component_ep(),
        (cr - 1) + 2 * cr * (n - 1),
        n * n,
    ];
    let b = candidates
        .iter()
        .map(|&term| first.clone().max(count(term)))
        .min()
        .expect("three candidates");
    Ok(b.max(count(3 * (n - 1) + ep + cs.max_component_ep())))
}

/// Upper bound on the matrix transient `n_A`.
pub fn matrix_bound<S: Scalar>(cs: &CriticalStructure<S>, params: &GraphParams) -> Result<S> {
    let first = b_cnc_corollary(cs, &substituted_norm(cs, params)?);
    matrix_bound_from(cs, params, first)
}

/// [`matrix_bound`] built on [`b_cnc_corollary_corrected`].
pub fn matrix_bound_corrected<S: Scalar>(cs: &CriticalStructure<S>, params: &GraphParams) -> Result<S> {
    let first = b_cnc_corollary_corrected(cs, &substituted_norm(cs, params)?);
    matrix_bound_from(cs, params, first)
}

/// Bounds from earlier work, for comparison.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComparisonBounds<S> {
    /// Even-Rajsbaum: integer weights and a non-critical cycle needed.
    pub er: Option<S>,
    pub l0: Option<S>,
    /// Soto y Koelemeijer: a non-critical cycle needed.
    pub syk_system: Option<S>,
    pub syk_matrix: Option<S>,
}

pub fn comparison_bounds<S: Scalar>(
    cs: &CriticalStructure<S>,
    integer_weights: bool,
    norm_v: &S,
) -> ComparisonBounds<S> {
    let n = cs.nodes;
    let spread = cs.big_delta.clone() - cs.delta.clone();
    let l0 = match &cs.f {
        Some(f) if integer_weights => Some(
            count::<S>(n) / f.clone() * (norm_v.clone() + spread.clone() * count::<S>(n - 1))
                + count::<S>(n - 1),
        ),
        _ => None,
    };
    let er = l0.clone().map(|l0| l0 + count::<S>(n + 2 * n * n));
    let two_n2 = count::<S>(2 * n * n);
    let (syk_system, syk_matrix) = match &cs.rho1 {
        Tropical::Finite(rho1) => {
            let gap = cs.rho.clone() - rho1.clone();
            (
                Some(((norm_v.clone() + count::<S>(n) * spread.clone()) / gap.clone()).max(two_n2.clone())),
                Some((count::<S>(n * n) * spread / gap).max(two_n2)),
            )
        }
        Tropical::Bottom => (None, None),
    };
    ComparisonBounds { er, l0, syk_system, syk_matrix }
}

/// Every bound for one instance. System bounds are absent when the initial vector
/// has a bottom entry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundsReport<S> {
    pub norm: Option<S>,
    pub b_cnc: Option<S>,
    pub b_cnc_corollary: Option<S>,
    pub b_ep: Option<S>,
    pub b_enp: Option<S>,
    pub b_ne1: Option<S>,
    pub b_ne2: Option<S>,
    pub b_ms: S,
    pub mu_upper: S,
    pub mu_exact: Option<S>,
    pub matrix_bound: S,
    pub comparison: ComparisonBounds<S>,
    pub corrected: CorrectedBounds<S>,
}

/// The bounds rebuilt on [`b_cnc_corrected`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorrectedBounds<S> {
    pub b_cnc: Option<S>,
    pub b_cnc_corollary: Option<S>,
    pub b_ep: Option<S>,
    pub b_enp: Option<S>,
    pub b_ne1: Option<S>,
    pub b_ne2: Option<S>,
    pub matrix_bound: S,
}

impl<S: Scalar> CorrectedBounds<S> {
    pub fn compute(cs: &CriticalStructure<S>, params: &GraphParams, norm: Option<&S>) -> Result<Self> {
        Ok(CorrectedBounds {
            b_cnc: norm.map(|w| b_cnc_corrected(cs, params, w)),
            b_cnc_corollary: norm.map(|w| b_cnc_corollary_corrected(cs, w)),
            b_ep: norm.and_then(|w| b_ep_corrected(cs, params, w).ok()),
            b_enp: norm.map(|w| b_enp_corrected(cs, params, w)),
            b_ne1: norm.map(|w| b_ne1_corrected(cs, params, w)),
            b_ne2: norm.map(|w| b_ne2_corrected(cs, params, w)),
            matrix_bound: matrix_bound_corrected(cs, params)?,
        })
    }

    /// Smallest of `B_enp`, `B_ne1`, `B_ne2`.
    pub fn best_system_bound(&self) -> Option<S> {
        [&self.b_enp, &self.b_ne1, &self.b_ne2].into_iter().flatten().cloned().min()
    }
}

impl<S: Scalar> BoundsReport<S> {
    pub fn compute(
        cs: &CriticalStructure<S>,
        params: &GraphParams,
        vector: Option<&MaxPlusVector<S>>,
        integer_weights: bool,
    ) -> Result<Self> {
        let norm = match vector {
            Some(v) => v.spread(),
            None => Some(S::zero()),
        };
        let (b_ms, mu_upper) = b_ms(cs, params)?;
        let comparison = match &norm {
            Some(norm) => comparison_bounds(cs, integer_weights, norm),
            None => ComparisonBounds { er: None, l0: None, syk_system: None, syk_matrix: None },
        };
        let corrected = CorrectedBounds::compute(cs, params, norm.as_ref())?;
        Ok(BoundsReport {
            b_cnc: norm.as_ref().map(|w| b_cnc(cs, params, w)),
            b_cnc_corollary: norm.as_ref().map(|w| b_cnc_corollary(cs, w)),
            b_ep: norm.as_ref().and_then(|w| b_ep(cs, params, w).ok()),
            b_enp: norm.as_ref().map(|w| b_enp(cs, params, w)),
            b_ne1: norm.as_ref().map(|w| b_ne1(cs, params, w)),
            b_ne2: norm.as_ref().map(|w| b_ne2(cs, params, w)),
            norm,
            b_ms,
            mu_upper,
            mu_exact: None,
            matrix_bound: matrix_bound(cs, params)?,
            comparison,
            corrected,
        })
    }

    /// Smallest of `B_enp`, `B_ne1`, `B_ne2`.
    pub fn best_system_bound(&self) -> Option<S> {
        [&self.b_enp, &self.b_ne1, &self.b_ne2].into_iter().flatten().cloned().min()
    }
}
