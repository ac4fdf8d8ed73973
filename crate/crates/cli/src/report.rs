//! Report documents: JSON via serde, plus a plain two-column table.

use std::collections::BTreeMap;
use std::fmt;

use maxplus_transience::analysis::InstanceReport;
use maxplus_transience::bounds::BoundsReport;
use maxplus_transience::critical::CriticalStructure;
use maxplus_transience::oracle::TransientResult;
use maxplus_transience::scalar::Scalar;
use maxplus_transience::{GraphParams, Rational, Weight};
use serde::{de, Deserialize, Deserializer, Serialize, Serializer};
use serde_json::Value;

/// An exact rational, serialized as a `"p/q"` string.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Q(pub Rational);

impl Serialize for Q {
    fn serialize<Z: Serializer>(&self, serializer: Z) -> Result<Z::Ok, Z::Error> {
        serializer.collect_str(&self.0)
    }
}

impl<'de> Deserialize<'de> for Q {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        Rational::parse_exact(&text).map(Q).ok_or_else(|| de::Error::custom(format!("not a rational: {text:?}")))
    }
}

impl fmt::Display for Q {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// A rational or `"-inf"`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct W(pub Weight);

impl Serialize for W {
    fn serialize<Z: Serializer>(&self, serializer: Z) -> Result<Z::Ok, Z::Error> {
        serializer.collect_str(&self.0)
    }
}

impl<'de> Deserialize<'de> for W {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        Weight::parse(&text).map(W).ok_or_else(|| de::Error::custom(format!("not a weight: {text:?}")))
    }
}

fn q(value: &Rational) -> Q {
    Q(*value)
}

fn oq(value: &Option<Rational>) -> Option<Q> {
    value.as_ref().map(q)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphSection {
    pub nodes: usize,
    pub girth: Option<usize>,
    pub circumference: Option<usize>,
    pub cab_diameter: usize,
    pub cyclicity: usize,
    pub max_component_cyclicity: usize,
    pub cycle_lcm: Option<usize>,
    pub ep: Option<usize>,
}

impl From<&GraphParams> for GraphSection {
    fn from(p: &GraphParams) -> Self {
        GraphSection {
            nodes: p.nodes,
            girth: p.girth,
            circumference: p.circumference,
            cab_diameter: p.cab_diameter,
            cyclicity: p.cyclicity,
            max_component_cyclicity: p.max_component_cyclicity,
            cycle_lcm: p.cycle_lcm,
            ep: p.exploration_penalty,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentSection {
    /// 1-based.
    pub nodes: Vec<usize>,
    pub cyclicity: usize,
    pub ep: usize,
    pub circumference: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriticalSection {
    pub rho: Q,
    pub rho_nc: W,
    pub rho1: W,
    pub f: Option<Q>,
    pub delta: Q,
    #[serde(rename = "Delta")]
    pub big_delta: Q,
    #[serde(rename = "Delta_nc")]
    pub big_delta_nc: Q,
    /// 1-based.
    pub critical_nodes: Vec<usize>,
    pub components: Vec<ComponentSection>,
    #[serde(rename = "c_A")]
    pub c_of_a: usize,
    #[serde(rename = "d_Gc")]
    pub d_of_a: usize,
    pub cr_c: usize,
    pub cd_nc: usize,
    #[serde(rename = "N_nc")]
    pub n_nc: usize,
}

impl From<&CriticalStructure<Rational>> for CriticalSection {
    fn from(cs: &CriticalStructure<Rational>) -> Self {
        CriticalSection {
            rho: q(&cs.rho),
            rho_nc: W(cs.rho_nc.clone()),
            rho1: W(cs.rho1.clone()),
            f: oq(&cs.f),
            delta: q(&cs.delta),
            big_delta: q(&cs.big_delta),
            big_delta_nc: q(&cs.big_delta_nc),
            critical_nodes: cs.critical_node_list().iter().map(|i| i + 1).collect(),
            components: cs
                .components
                .iter()
                .map(|h| ComponentSection {
                    nodes: h.nodes.iter().map(|i| i + 1).collect(),
                    cyclicity: h.cyclicity,
                    ep: h.exploration_penalty,
                    circumference: h.circumference,
                })
                .collect(),
            c_of_a: cs.c_of_a,
            d_of_a: cs.d_of_a,
            cr_c: cs.cr_c,
            cd_nc: cs.cd_nc,
            n_nc: cs.n_nc,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundsSection {
    pub norm: Option<Q>,
    #[serde(rename = "B_cnc")]
    pub b_cnc: Option<Q>,
    #[serde(rename = "B_cnc_corollary")]
    pub b_cnc_corollary: Option<Q>,
    #[serde(rename = "B_ep")]
    pub b_ep: Option<Q>,
    #[serde(rename = "B_enp")]
    pub b_enp: Option<Q>,
    #[serde(rename = "B_ne1")]
    pub b_ne1: Option<Q>,
    #[serde(rename = "B_ne2")]
    pub b_ne2: Option<Q>,
    #[serde(rename = "B_ms")]
    pub b_ms: Q,
    pub mu_upper: Q,
    pub mu: Option<Q>,
    pub matrix_bound: Q,
    pub er_bound: Option<Q>,
    pub l0: Option<Q>,
    pub syk_system: Option<Q>,
    pub syk_matrix: Option<Q>,
    pub corrected: CorrectedSection,
}

/// Bounds rebuilt on the corrected critical bound.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorrectedSection {
    #[serde(rename = "B_cnc")]
    pub b_cnc: Option<Q>,
    #[serde(rename = "B_cnc_corollary")]
    pub b_cnc_corollary: Option<Q>,
    #[serde(rename = "B_ep")]
    pub b_ep: Option<Q>,
    #[serde(rename = "B_enp")]
    pub b_enp: Option<Q>,
    #[serde(rename = "B_ne1")]
    pub b_ne1: Option<Q>,
    #[serde(rename = "B_ne2")]
    pub b_ne2: Option<Q>,
    pub matrix_bound: Q,
}

impl From<&BoundsReport<Rational>> for BoundsSection {
    fn from(b: &BoundsReport<Rational>) -> Self {
        BoundsSection {
            norm: oq(&b.norm),
            b_cnc: oq(&b.b_cnc),
            b_cnc_corollary: oq(&b.b_cnc_corollary),
            b_ep: oq(&b.b_ep),
            b_enp: oq(&b.b_enp),
            b_ne1: oq(&b.b_ne1),
            b_ne2: oq(&b.b_ne2),
            b_ms: q(&b.b_ms),
            mu_upper: q(&b.mu_upper),
            mu: oq(&b.mu_exact),
            matrix_bound: q(&b.matrix_bound),
            er_bound: oq(&b.comparison.er),
            l0: oq(&b.comparison.l0),
            syk_system: oq(&b.comparison.syk_system),
            syk_matrix: oq(&b.comparison.syk_matrix),
            corrected: CorrectedSection {
                b_cnc: oq(&b.corrected.b_cnc),
                b_cnc_corollary: oq(&b.corrected.b_cnc_corollary),
                b_ep: oq(&b.corrected.b_ep),
                b_enp: oq(&b.corrected.b_enp),
                b_ne1: oq(&b.corrected.b_ne1),
                b_ne2: oq(&b.corrected.b_ne2),
                matrix_bound: q(&b.corrected.matrix_bound),
            },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransientSection {
    #[serde(rename = "n_A")]
    pub n_a: usize,
    pub p0: usize,
    pub gain: Q,
    #[serde(rename = "n_Av")]
    pub n_av: Option<usize>,
    #[serde(rename = "p_Av")]
    pub p_av: Option<usize>,
}

impl TransientSection {
    pub fn new(matrix: &TransientResult<Rational>, system: Option<&TransientResult<Rational>>) -> Self {
        TransientSection {
            n_a: matrix.transient,
            p0: matrix.period,
            gain: q(&matrix.gain),
            n_av: system.map(|t| t.transient),
            p_av: system.map(|t| t.period),
        }
    }
}

/// Output of `analyze`. `slack` maps each transience bound to bound minus the exact
/// transient it bounds.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisDocument {
    pub graph: GraphSection,
    #[serde(flatten)]
    pub critical: CriticalSection,
    #[serde(flatten)]
    pub bounds: BoundsSection,
    #[serde(flatten)]
    pub transient: TransientSection,
    pub slack: BTreeMap<String, Q>,
}

impl AnalysisDocument {
    pub fn new(report: &InstanceReport<Rational>) -> Self {
        let bounds = BoundsSection::from(&report.bounds);
        let transient = TransientSection::new(&report.matrix, report.system.as_ref());
        let n_a = Rational::from(transient.n_a as i64);
        let mut slack = BTreeMap::new();
        let mut add = |name: &str, bound: &Option<Q>, exact: &Rational| {
            if let Some(bound) = bound {
                slack.insert(name.to_string(), Q(bound.0 - *exact));
            }
        };
        let c = bounds.corrected.clone();
        add("matrix_bound", &Some(bounds.matrix_bound.clone()), &n_a);
        add("corrected.matrix_bound", &Some(c.matrix_bound.clone()), &n_a);
        add("syk_matrix", &bounds.syk_matrix, &n_a);
        if let Some(n_av) = transient.n_av {
            let n_av = Rational::from(n_av as i64);
            add("B_ep", &bounds.b_ep, &n_av);
            add("B_enp", &bounds.b_enp, &n_av);
            add("B_ne1", &bounds.b_ne1, &n_av);
            add("B_ne2", &bounds.b_ne2, &n_av);
            add("er_bound", &bounds.er_bound, &n_av);
            add("syk_system", &bounds.syk_system, &n_av);
            add("corrected.B_ep", &c.b_ep, &n_av);
            add("corrected.B_enp", &c.b_enp, &n_av);
            add("corrected.B_ne1", &c.b_ne1, &n_av);
            add("corrected.B_ne2", &c.b_ne2, &n_av);
        }
        AnalysisDocument {
            graph: GraphSection::from(&report.params),
            critical: CriticalSection::from(&report.critical),
            bounds,
            transient,
            slack,
        }
    }

    /// Bounds whose ceiling is below the transient they bound.
    pub fn violated_bounds(&self) -> Vec<String> {
        self.slack
            .iter()
            .filter(|(_, s)| s.0 <= Rational::from(-1))
            .map(|(name, _)| name.clone())
            .collect()
    }
}

/// Output of `bounds`: no transient computation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundsDocument {
    pub graph: GraphSection,
    #[serde(flatten)]
    pub critical: CriticalSection,
    #[serde(flatten)]
    pub bounds: BoundsSection,
}

/// Output of `transient`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransientDocument {
    pub rho: Q,
    #[serde(rename = "c_A")]
    pub c_of_a: usize,
    #[serde(flatten)]
    pub transient: TransientSection,
}

/// Output of `full-reversal`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FullReversalDocument {
    pub mode: String,
    pub nodes: usize,
    pub tree: bool,
    pub steps: usize,
    pub theta: Option<usize>,
    pub transient: Option<usize>,
    pub period: Option<usize>,
    pub final_work: Vec<u64>,
    pub destination_oriented: Option<bool>,
    pub bound: Option<Q>,
    pub bound_name: Option<String>,
    pub rho: Option<Q>,
    #[serde(rename = "B_system")]
    pub b_system: Option<Q>,
    pub recurrence_holds: bool,
}

/// One line per key; nested values are flattened with dots.
pub fn render_table<T: Serialize>(document: &T) -> String {
    fn walk(prefix: &str, value: &Value, rows: &mut Vec<(String, String)>) {
        match value {
            Value::Object(map) => {
                for (key, inner) in map {
                    let name = if prefix.is_empty() { key.clone() } else { format!("{prefix}.{key}") };
                    walk(&name, inner, rows);
                }
            }
            Value::Array(items) if items.iter().any(|v| v.is_object()) => {
                for (index, inner) in items.iter().enumerate() {
                    walk(&format!("{prefix}[{}]", index + 1), inner, rows);
                }
            }
            Value::Array(items) => {
                let text = items.iter().map(scalar_text).collect::<Vec<_>>().join(" ");
                rows.push((prefix.to_string(), format!("[{text}]")));
            }
            other => rows.push((prefix.to_string(), scalar_text(other))),
        }
    }
    fn scalar_text(value: &Value) -> String {
        match value {
            Value::Null => "n/a".into(),
            Value::String(s) => s.clone(),
            other => other.to_string(),
        }
    }
    let value = serde_json::to_value(document).expect("documents serialize");
    let mut rows = Vec::new();
    walk("", &value, &mut rows);
    let width = rows.iter().map(|(k, _)| k.chars().count()).max().unwrap_or(0);
    rows.iter().map(|(k, v)| format!("{k:<width$}  {v}\n")).collect()
}
