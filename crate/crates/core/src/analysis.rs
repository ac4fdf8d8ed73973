//! One-call analysis of an instance `(A, v)`.

use crate::bounds::BoundsReport;
use crate::critical::CriticalStructure;
use crate::error::{Error, Result};
use crate::graph::GraphParams;
use crate::matrix::{MaxPlusMatrix, MaxPlusVector};
use crate::oracle::{
    matrix_transient_within, mu_exact_with, system_transient_within, OracleContext, TransientResult,
};
use crate::scalar::Scalar;

#[derive(Clone, Debug)]
pub struct InstanceReport<S> {
    pub params: GraphParams,
    pub critical: CriticalStructure<S>,
    pub bounds: BoundsReport<S>,
    pub matrix: TransientResult<S>,
    pub system: Option<TransientResult<S>>,
}

pub fn analyze_instance<S: Scalar>(
    a: &MaxPlusMatrix<S>,
    v: Option<&MaxPlusVector<S>>,
    cap: usize,
) -> Result<InstanceReport<S>> {
    let ctx = OracleContext::new(a, cap)?;
    if let Some(v) = v {
        if v.dim() != a.rows() {
            return Err(Error::Dimension(format!(
                "vector of dimension {} for a {}-node matrix",
                v.dim(),
                a.rows()
            )));
        }
    }
    let mut bounds = BoundsReport::compute(&ctx.critical, &ctx.params, v, ctx.graph.has_integer_weights())?;
    bounds.mu_exact = Some(mu_exact_with(a, &ctx)?);
    let matrix = matrix_transient_within(a, &ctx, ctx.matrix_horizon()?)?;
    let system = match v {
        Some(v) => Some(system_transient_within(a, v, &ctx, ctx.system_horizon(v)?)?),
        None => None,
    };
    Ok(InstanceReport { params: ctx.params, critical: ctx.critical, bounds, matrix, system })
}
