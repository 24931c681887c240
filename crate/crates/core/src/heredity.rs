//! Vertex elimination for monomial algebras and certified heredity chains.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use crate::algebra::{build_fd_algebra, quotient_algebra, verify_heredity_ideal, FdAlgebra, Projectivity};
use crate::element::{Element, VertexSet};
use crate::error::HeredityError;
use crate::field::Field;
use crate::groebner::{complete, GroebnerData, TipSet};
use crate::order::AdmissibleOrder;
use crate::quiver::{Path, Quiver, VertexId};

/// Largest vertex count accepted by [`brute_force_qh`].
pub const BRUTE_FORCE_LIMIT: usize = 8;

pub fn properly_internal(q: &Quiver, v: VertexId, tips: &TipSet) -> bool {
    tips.iter().any(|t| q.is_properly_internal(v, t))
}

/// Vertices of `remaining` that are not properly internal to any tip.
pub fn heredity_candidates(q: &Quiver, tips: &TipSet, remaining: &BTreeSet<VertexId>) -> Vec<VertexId> {
    remaining
        .iter()
        .copied()
        .filter(|&v| !properly_internal(q, v, tips))
        .collect()
}

/// Tips that avoid every removed vertex.
fn surviving(q: &Quiver, tips: &TipSet, removed: &BTreeSet<VertexId>) -> TipSet {
    tips.retain(|t| !q.visits_any(t, removed))
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct EliminationStep {
    pub vertex: VertexId,
    /// Every admissible choice at this step, smallest id first.
    pub candidates: Vec<VertexId>,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct EliminationFailure {
    /// Zero-based index of the step that could not proceed.
    pub step: usize,
    /// Remaining vertices, all properly internal to a surviving tip.
    pub blocked: Vec<VertexId>,
    pub surviving_tips: Vec<Path>,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct EliminationOrdering {
    pub ordering: Vec<VertexId>,
    pub trace: Vec<EliminationStep>,
    pub failure: Option<EliminationFailure>,
}

impl EliminationOrdering {
    pub fn succeeded(&self) -> bool {
        self.failure.is_none()
    }
}

/// Repeatedly removes the smallest vertex that is not properly internal to a
/// surviving tip. The monomial algebra is quasi-hereditary exactly when every
/// vertex gets removed.
pub fn greedy_ordering(q: &Quiver, tips: &TipSet) -> EliminationOrdering {
    let mut remaining: BTreeSet<VertexId> = q.vertices().collect();
    let mut removed = BTreeSet::new();
    let mut ordering = Vec::new();
    let mut trace = Vec::new();
    while !remaining.is_empty() {
        let live = surviving(q, tips, &removed);
        let candidates = heredity_candidates(q, &live, &remaining);
        let Some(&v) = candidates.first() else {
            return EliminationOrdering {
                ordering,
                failure: Some(EliminationFailure {
                    step: trace.len(),
                    blocked: remaining.into_iter().collect(),
                    surviving_tips: live.iter().cloned().collect(),
                }),
                trace,
            };
        };
        trace.push(EliminationStep { vertex: v, candidates });
        remaining.remove(&v);
        removed.insert(v);
        ordering.push(v);
    }
    EliminationOrdering {
        ordering,
        trace,
        failure: None,
    }
}

/// Whether `ordering` removes one vertex at a time, each not properly
/// internal to the tips surviving the earlier removals.
pub fn is_valid_elimination(q: &Quiver, tips: &TipSet, ordering: &[VertexId]) -> bool {
    let mut removed = BTreeSet::new();
    for &v in ordering {
        if v.0 >= q.vertex_count() || removed.contains(&v) {
            return false;
        }
        if properly_internal(q, v, &surviving(q, tips, &removed)) {
            return false;
        }
        removed.insert(v);
    }
    removed.len() == q.vertex_count()
}

/// Searches all vertex permutations for a valid elimination.
pub fn brute_force_qh(q: &Quiver, tips: &TipSet) -> Result<Option<Vec<VertexId>>, HeredityError> {
    let n = q.vertex_count();
    if n > BRUTE_FORCE_LIMIT {
        return Err(HeredityError::TooLarge {
            limit: BRUTE_FORCE_LIMIT,
            actual: n,
        });
    }
    let mut perm: Vec<VertexId> = q.vertices().collect();
    // Heap's algorithm, iterative.
    let mut c = alloc::vec![0usize; n];
    if is_valid_elimination(q, tips, &perm) {
        return Ok(Some(perm));
    }
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            if is_valid_elimination(q, tips, &perm) {
                return Ok(Some(perm));
            }
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    Ok(None)
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Verdict {
    QuasiHereditary,
    NotQuasiHereditary,
    Unknown,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum StepFailure {
    LSquared,
    RadicalSandwich,
    NotProjective,
    /// A vertex is properly internal to a tip of a non-monomial basis.
    QuotientUnavailable,
    /// `dim Λ/L + dim L ≠ dim Λ`.
    DimensionMismatch,
    /// The restricted basis completes to a different tip set.
    NotGroebner,
}

/// Linear-algebra record of one step `Λ_i → Λ_i / Λ_i e Λ_i`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct StepRecord {
    /// Vertex in the original quiver.
    pub vertex: VertexId,
    pub algebra_dim: usize,
    pub ideal_dim: usize,
    pub tensor_dim: usize,
    pub l_squared: bool,
    pub ljl_zero: bool,
    pub projectivity: Projectivity,
    pub quotient_dim: Option<usize>,
    pub failure: Option<StepFailure>,
}

impl StepRecord {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

#[derive(Clone, PartialEq, Debug)]
pub struct HeredityChainReport {
    pub verdict: Verdict,
    pub ordering: EliminationOrdering,
    pub steps: Vec<StepRecord>,
    pub order_used: Option<AdmissibleOrder>,
    pub tips: TipSet,
    pub dimension: usize,
    pub length_bound: usize,
}

impl HeredityChainReport {
    /// Whether every step of a full-length chain was verified.
    pub fn certified(&self) -> bool {
        self.verdict == Verdict::QuasiHereditary
            && self.ordering.succeeded()
            && self.steps.len() == self.ordering.ordering.len()
            && self.steps.iter().all(StepRecord::passed)
    }
}

/// Verifies that `ordering` gives a heredity chain of `a`, one vertex at a
/// time: each `Λ_i e Λ_i` is checked exactly, then `Λ_{i+1}` is presented on
/// the subquiver by restricting the Gröbner basis. Stops at the first failed
/// step. The verdict is `QuasiHereditary` when every step passes.
pub fn verify_chain<F: Field>(a: &FdAlgebra<F>, ordering: &[VertexId]) -> Result<HeredityChainReport, HeredityError> {
    let q0 = a.quiver();
    let n = q0.vertex_count();
    let distinct: BTreeSet<VertexId> = ordering.iter().copied().collect();
    if ordering.len() != n || distinct.len() != n || ordering.iter().any(|v| v.0 >= n) {
        return Err(HeredityError::InvalidOrdering);
    }
    // Position of each original vertex in the current quiver.
    let mut current_id: Vec<Option<VertexId>> = q0.vertices().map(Some).collect();
    let mut current = a.clone();
    let mut steps = Vec::new();
    let mut failure_at = None;
    for (i, &orig) in ordering.iter().enumerate() {
        let v = current_id[orig.0].expect("not yet removed");
        let s = VertexSet::single(v);
        let check = verify_heredity_ideal(&current, &s);
        let mut record = StepRecord {
            vertex: orig,
            algebra_dim: current.dim(),
            ideal_dim: check.ideal_dim,
            tensor_dim: check.tensor_dim,
            l_squared: check.l_squared,
            ljl_zero: check.ljl_zero,
            projectivity: check.projectivity,
            quotient_dim: None,
            failure: None,
        };
        record.failure = if !check.l_squared {
            Some(StepFailure::LSquared)
        } else if !check.ljl_zero {
            Some(StepFailure::RadicalSandwich)
        } else if !check.projective() {
            Some(StepFailure::NotProjective)
        } else {
            None
        };
        let mut next = None;
        if record.failure.is_none() {
            match quotient_algebra(&current, &s) {
                Err(HeredityError::PreconditionFailed(_)) => record.failure = Some(StepFailure::QuotientUnavailable),
                Err(HeredityError::Groebner(_)) => record.failure = Some(StepFailure::NotGroebner),
                Err(e) => return Err(e),
                Ok((quot, emb)) => {
                    record.quotient_dim = Some(quot.dim());
                    if quot.dim() + check.ideal_dim != current.dim() {
                        record.failure = Some(StepFailure::DimensionMismatch);
                    } else if !restriction_is_groebner(&quot) {
                        record.failure = Some(StepFailure::NotGroebner);
                    } else {
                        for slot in current_id.iter_mut() {
                            *slot = slot.and_then(|w| emb.map_vertex(w));
                        }
                        next = Some(quot);
                    }
                }
            }
        }
        let failed = record.failure.is_some();
        steps.push(record);
        match next {
            Some(quot) if !failed => current = quot,
            _ => {
                failure_at = Some(i);
                break;
            }
        }
    }
    let tips = a.data().tips().clone();
    let verdict = if failure_at.is_none() {
        Verdict::QuasiHereditary
    } else {
        Verdict::Unknown
    };
    let failure = failure_at.map(|step| {
        let removed: BTreeSet<VertexId> = ordering[..step].iter().copied().collect();
        EliminationFailure {
            step,
            blocked: alloc::vec![ordering[step]],
            surviving_tips: surviving(q0, &tips, &removed).iter().cloned().collect(),
        }
    });
    Ok(HeredityChainReport {
        verdict,
        ordering: EliminationOrdering {
            ordering: ordering.to_vec(),
            trace: Vec::new(),
            failure,
        },
        steps,
        order_used: Some(a.data().order().clone()),
        tips,
        dimension: a.dim(),
        length_bound: a.data().length_bound(),
    })
}

/// Re-completes the basis the quotient was presented by and compares tips.
fn restriction_is_groebner<F: Field>(quot: &FdAlgebra<F>) -> bool {
    let data = quot.data();
    let q = quot.quiver();
    let cap = 2 * data.length_bound() + data.tips().max_len() + q.vertex_count();
    match complete(q, &data.basis_elements(), data.order(), cap, data.field().clone()) {
        Ok(recomputed) => recomputed.tips() == data.tips(),
        Err(_) => false,
    }
}

/// The monomial algebra `KQ/(tips)` over the given field.
pub fn monomial_algebra<F: Field>(q: &Quiver, tips: &TipSet, field: F::Context) -> Result<FdAlgebra<F>, HeredityError> {
    let order = AdmissibleOrder::default_for(q);
    let one = F::one(&field);
    let basis: Vec<Element<F>> = tips.iter().map(|t| Element::monomial(t.clone(), one.clone())).collect();
    let data = GroebnerData::from_reduced_basis(q, &order, basis, field)?;
    Ok(build_fd_algebra(q, data))
}

/// Decides quasi-heredity of `KQ/(tips)`, certifying a positive answer.
pub fn decide_monomial_qh<F: Field>(q: &Quiver, tips: &TipSet, field: F::Context) -> Result<HeredityChainReport, HeredityError> {
    let elimination = greedy_ordering(q, tips);
    let a = monomial_algebra::<F>(q, tips, field)?;
    if elimination.succeeded() {
        let mut report = verify_chain(&a, &elimination.ordering)?;
        report.ordering.trace = elimination.trace;
        report.order_used = None;
        return Ok(report);
    }
    Ok(HeredityChainReport {
        verdict: Verdict::NotQuasiHereditary,
        ordering: elimination,
        steps: Vec::new(),
        order_used: None,
        tips: tips.clone(),
        dimension: a.dim(),
        length_bound: a.data().length_bound(),
    })
}

/// Tries each order in turn: completes, eliminates on the tips, and lifts a
/// successful elimination to a verified chain. A failed elimination is a
/// negative answer only when the Gröbner basis is monomial; otherwise the
/// next order is tried and the verdict may end up `Unknown`.
pub fn decide_qh<F: Field>(
    q: &Quiver,
    gens: &[Element<F>],
    orders: &[AdmissibleOrder],
    cap: usize,
    field: F::Context,
) -> Result<HeredityChainReport, HeredityError> {
    let mut last = None;
    for order in orders {
        let data = complete(q, gens, order, cap, field.clone())?;
        let elimination = greedy_ordering(q, data.tips());
        let monomial = data.is_monomial();
        let tips = data.tips().clone();
        let dimension = data.dimension();
        let length_bound = data.length_bound();
        if elimination.succeeded() {
            let a = build_fd_algebra(q, data);
            let mut report = verify_chain(&a, &elimination.ordering)?;
            report.ordering.trace = elimination.trace;
            if report.verdict == Verdict::QuasiHereditary {
                return Ok(report);
            }
            last = Some(report);
            continue;
        }
        let report = HeredityChainReport {
            verdict: if monomial {
                Verdict::NotQuasiHereditary
            } else {
                Verdict::Unknown
            },
            ordering: elimination,
            steps: Vec::new(),
            order_used: Some(order.clone()),
            tips,
            dimension,
            length_bound,
        };
        if monomial {
            return Ok(report);
        }
        last = Some(report);
    }
    last.ok_or(HeredityError::InvalidOrdering)
}
