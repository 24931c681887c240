//! Serializable reports and their plain-text rendering.

use std::fmt::Write as _;

use qhd_core::{
    AdmissibleOrder, Field, GroebnerData, HeredityChainReport, Path, Projectivity, Quiver, StepRecord, TipSet, Verdict,
};
use serde::Serialize;

use crate::presentation::{order_text, path_name};

pub fn verdict_name(v: Verdict) -> &'static str {
    match v {
        Verdict::QuasiHereditary => "quasi_hereditary",
        Verdict::NotQuasiHereditary => "not_quasi_hereditary",
        Verdict::Unknown => "unknown",
    }
}

#[derive(Serialize, Clone, PartialEq, Eq, Debug)]
pub struct Checks {
    #[serde(rename = "L2")]
    pub l2: bool,
    #[serde(rename = "LJL")]
    pub ljl: bool,
    pub proj: bool,
}

#[derive(Serialize, Clone, PartialEq, Eq, Debug)]
pub struct StepJson {
    pub vertex: String,
    pub ideal_dim: usize,
    pub tensor_dim: usize,
    pub checks: Checks,
}

#[derive(Serialize, Clone, PartialEq, Eq, Debug)]
pub struct GbSummary {
    pub tips: Vec<String>,
    pub dim: usize,
    pub length_bound: usize,
}

#[derive(Serialize, Clone, PartialEq, Eq, Debug)]
pub struct QhJson {
    pub verdict: String,
    pub ordering: Vec<String>,
    pub steps: Vec<StepJson>,
    pub gb: GbSummary,
    pub order_used: Option<String>,
}

#[derive(Serialize, Clone, PartialEq, Eq, Debug)]
pub struct GbJson {
    pub order: String,
    pub basis: Vec<String>,
    pub tips: Vec<String>,
    pub dim: usize,
    pub length_bound: usize,
}

#[derive(Serialize, Clone, PartialEq, Eq, Debug)]
pub struct DimJson {
    pub dim: usize,
}

pub fn tip_names(q: &Quiver, tips: &TipSet, order: &AdmissibleOrder) -> Vec<String> {
    tips.sorted(order).iter().map(|t| path_name(q, t)).collect()
}

fn step_json(q: &Quiver, s: &StepRecord) -> StepJson {
    StepJson {
        vertex: q.vertex_name(s.vertex).to_string(),
        ideal_dim: s.ideal_dim,
        tensor_dim: s.tensor_dim,
        checks: Checks {
            l2: s.l_squared,
            ljl: s.ljl_zero,
            proj: s.projectivity == Projectivity::Bijective,
        },
    }
}

pub fn qh_json(q: &Quiver, r: &HeredityChainReport) -> QhJson {
    let order = r.order_used.clone().unwrap_or_else(|| AdmissibleOrder::default_for(q));
    QhJson {
        verdict: verdict_name(r.verdict).to_string(),
        ordering: r.ordering.ordering.iter().map(|v| q.vertex_name(*v).to_string()).collect(),
        steps: r.steps.iter().map(|s| step_json(q, s)).collect(),
        gb: GbSummary {
            tips: tip_names(q, &r.tips, &order),
            dim: r.dimension,
            length_bound: r.length_bound,
        },
        order_used: r.order_used.as_ref().map(|o| order_text(q, o)),
    }
}

pub fn gb_json<F: Field>(q: &Quiver, data: &GroebnerData<F>) -> GbJson {
    let order = data.order();
    GbJson {
        order: order_text(q, order),
        basis: data
            .basis()
            .iter()
            .map(|g| g.element().display(q, order).to_string())
            .collect(),
        tips: tip_names(q, data.tips(), order),
        dim: data.dimension(),
        length_bound: data.length_bound(),
    }
}

pub fn gb_text(j: &GbJson) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "order: {}", j.order);
    let _ = writeln!(out, "basis:");
    for g in &j.basis {
        let _ = writeln!(out, "  {g}");
    }
    let _ = writeln!(out, "tips: {}", braces(&j.tips));
    let _ = writeln!(out, "dim: {}", j.dim);
    let _ = writeln!(out, "length bound: {}", j.length_bound);
    out
}

fn braces(items: &[String]) -> String {
    format!("{{{}}}", items.join(", "))
}

fn mark(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn qh_text(q: &Quiver, r: &HeredityChainReport) -> String {
    let j = qh_json(q, r);
    let mut out = String::new();
    let _ = writeln!(out, "verdict: {}", j.verdict);
    if let Some(o) = &j.order_used {
        let _ = writeln!(out, "order: {o}");
    }
    let _ = writeln!(out, "tips: {}", braces(&j.gb.tips));
    let _ = writeln!(out, "dim: {}", j.gb.dim);
    let _ = writeln!(out, "ordering: ({})", j.ordering.join(", "));
    if let Some(f) = &r.ordering.failure {
        let names: Vec<&str> = f.blocked.iter().map(|v| q.vertex_name(*v)).collect();
        let tips: Vec<String> = f.surviving_tips.iter().map(|t: &Path| path_name(q, t)).collect();
        let _ = writeln!(out, "stuck at step {}: {} blocked by {}", f.step + 1, names.join(", "), braces(&tips));
    }
    if !r.ordering.trace.is_empty() {
        let _ = writeln!(out, "candidates:");
        for (i, step) in r.ordering.trace.iter().enumerate() {
            let names: Vec<String> = step.candidates.iter().map(|v| q.vertex_name(*v).to_string()).collect();
            let _ = writeln!(out, "  {:>2}  {}", i + 1, braces(&names));
        }
    }
    if !r.steps.is_empty() {
        let _ = writeln!(out, "{:>4}  {:<8} {:>5} {:>6} {:>7}  {:<4} {:<4} {}", "step", "vertex", "dim", "ideal", "tensor", "L2", "LJL", "proj");
        for (i, (s, sj)) in r.steps.iter().zip(&j.steps).enumerate() {
            let _ = write!(
                out,
                "{:>4}  {:<8} {:>5} {:>6} {:>7}  {:<4} {:<4} {}",
                i + 1,
                sj.vertex,
                s.algebra_dim,
                sj.ideal_dim,
                sj.tensor_dim,
                mark(sj.checks.l2),
                mark(sj.checks.ljl),
                mark(sj.checks.proj)
            );
            if let Some(f) = s.failure {
                let _ = write!(out, "  failed: {f:?}");
            }
            out.push('\n');
        }
    }
    out
}
