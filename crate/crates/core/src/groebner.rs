//! Reduction to normal form, overlap completion to the reduced Gröbner basis,
//! tip sets and the normal basis of the quotient.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use crate::element::{uniformize, Element, UniformElement};
use crate::error::GroebnerError;
use crate::field::Field;
use crate::linalg::{SparseVec, Subspace};
use crate::order::{AdmissibleOrder, OrderKey};
use crate::quiver::{ArrowId, Path, Quiver};

/// An antichain of paths under the subpath relation.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct TipSet {
    members: BTreeSet<Path>,
}

impl TipSet {
    pub fn empty() -> Self {
        TipSet::default()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Path> {
        self.members.iter()
    }

    pub fn contains(&self, p: &Path) -> bool {
        self.members.contains(p)
    }

    /// Whether some member is a subpath of `p`.
    pub fn divides(&self, p: &Path) -> bool {
        self.members.iter().any(|t| p.contains(t))
    }

    pub fn max_len(&self) -> usize {
        self.members.iter().map(Path::len).max().unwrap_or(0)
    }

    /// Members sorted under `order`.
    pub fn sorted(&self, order: &AdmissibleOrder) -> Vec<Path> {
        let mut v: Vec<Path> = self.members.iter().cloned().collect();
        order.sort(&mut v);
        v
    }

    /// Members avoiding `keep`'s complement.
    pub fn retain(&self, mut keep: impl FnMut(&Path) -> bool) -> TipSet {
        TipSet {
            members: self.members.iter().filter(|p| keep(p)).cloned().collect(),
        }
    }

    pub fn is_subset(&self, other: &TipSet) -> bool {
        self.members.is_subset(&other.members)
    }
}

/// The unique subpath-minimal generating set of the monomial ideal spanned by
/// `paths`. Paths must have positive length.
pub fn minimal_tipset<'a>(paths: impl IntoIterator<Item = &'a Path>) -> TipSet {
    let all: BTreeSet<Path> = paths.into_iter().cloned().collect();
    debug_assert!(all.iter().all(|p| !p.is_trivial()));
    let members = all
        .iter()
        .filter(|p| !all.iter().any(|t| t != *p && p.contains(t)))
        .cloned()
        .collect();
    TipSet { members }
}

/// Tip of a nonzero element.
pub fn tip<F: Field>(x: &Element<F>, order: &AdmissibleOrder) -> Result<Path, GroebnerError> {
    x.tip(order).cloned().ok_or(GroebnerError::ZeroElement)
}

#[derive(Clone, Debug)]
struct Rule<F: Field> {
    element: Element<F>,
    tip: Path,
    lead_inv: F,
}

/// A rewriting system: each live rule rewrites its tip into the rest of its element.
#[derive(Clone, Debug)]
pub(crate) struct Reducer<F: Field> {
    order: AdmissibleOrder,
    rules: Vec<Option<Rule<F>>>,
    by_first: BTreeMap<ArrowId, Vec<usize>>,
}

impl<F: Field> Reducer<F> {
    pub(crate) fn new(order: AdmissibleOrder) -> Self {
        Reducer {
            order,
            rules: Vec::new(),
            by_first: BTreeMap::new(),
        }
    }

    pub(crate) fn from_elements<'a>(order: &AdmissibleOrder, elements: impl IntoIterator<Item = &'a Element<F>>) -> Self
    where
        F: 'a,
    {
        let mut r = Reducer::new(order.clone());
        for g in elements {
            if !g.is_zero() {
                r.push(g.clone());
            }
        }
        r
    }

    pub(crate) fn push(&mut self, element: Element<F>) -> usize {
        let (tip, lead) = element.tip_term(&self.order).expect("nonzero rule");
        let tip = tip.clone();
        let lead_inv = lead.inv().expect("nonzero");
        assert!(!tip.is_trivial(), "rewriting rules need positive-length tips");
        let id = self.rules.len();
        self.by_first.entry(tip.arrows()[0]).or_default().push(id);
        self.rules.push(Some(Rule {
            element,
            tip,
            lead_inv,
        }));
        id
    }

    pub(crate) fn remove(&mut self, id: usize) -> Element<F> {
        let rule = self.rules[id].take().expect("live rule");
        if let Some(ids) = self.by_first.get_mut(&rule.tip.arrows()[0]) {
            ids.retain(|&i| i != id);
        }
        rule.element
    }

    pub(crate) fn live(&self) -> impl Iterator<Item = (usize, &Element<F>, &Path)> {
        self.rules
            .iter()
            .enumerate()
            .filter_map(|(i, r)| r.as_ref().map(|r| (i, &r.element, &r.tip)))
    }

    pub(crate) fn is_live(&self, id: usize) -> bool {
        self.rules[id].is_some()
    }

    pub(crate) fn tip_of(&self, id: usize) -> &Path {
        &self.rules[id].as_ref().expect("live rule").tip
    }

    pub(crate) fn element_of(&self, id: usize) -> &Element<F> {
        &self.rules[id].as_ref().expect("live rule").element
    }

    /// Leftmost occurrence of a live tip in `p`: (rule id, arrow position).
    pub(crate) fn find(&self, p: &Path) -> Option<(usize, usize)> {
        for (pos, a) in p.arrows().iter().enumerate() {
            if let Some(ids) = self.by_first.get(a) {
                for &id in ids {
                    let t = &self.rules[id].as_ref().expect("indexed rules are live").tip;
                    let k = t.len();
                    if pos + k <= p.len() && p.arrows()[pos..pos + k] == t.arrows()[..] {
                        return Some((id, pos));
                    }
                }
            }
        }
        None
    }

    /// Rewrites the largest reducible term, leftmost occurrence first, until
    /// no term is divisible by a tip.
    pub(crate) fn reduce(&self, x: &Element<F>) -> Element<F> {
        let order = &self.order;
        let mut work: BTreeMap<OrderKey, (Path, F)> = x
            .terms()
            .map(|(p, c)| (order.key(p), (p.clone(), c.clone())))
            .collect();
        let mut remainder = Element::zero();
        while let Some((_, (p, c))) = work.pop_last() {
            let Some((id, pos)) = self.find(&p) else {
                remainder.add_term(p, c);
                continue;
            };
            let rule = self.rules[id].as_ref().expect("live");
            let (prefix, suffix) = p.split_around(pos, &rule.tip);
            let factor = c.mul(&rule.lead_inv);
            for (q, d) in rule.element.terms() {
                if *q == rule.tip {
                    continue;
                }
                let path = prefix
                    .compose(q)
                    .and_then(|pq| pq.compose(&suffix))
                    .expect("rules are uniform");
                let delta = factor.mul(d).neg();
                let key = order.key(&path);
                match work.get_mut(&key) {
                    Some((_, existing)) => {
                        let sum = existing.add(&delta);
                        if sum.is_zero() {
                            work.remove(&key);
                        } else {
                            *existing = sum;
                        }
                    }
                    None => {
                        work.insert(key, (path, delta));
                    }
                }
            }
        }
        remainder
    }
}

/// Normal form of `x` modulo the ideal generated by `basis`; the result has no
/// term divisible by a tip of `basis`. Equals the unique normal form when
/// `basis` is a Gröbner basis. Tips must have positive length.
pub fn reduce<F: Field>(x: &Element<F>, basis: &[Element<F>], order: &AdmissibleOrder) -> Element<F> {
    Reducer::from_elements(order, basis).reduce(x)
}

fn is_normal_extension(tips_by_last: &BTreeMap<ArrowId, Vec<&Path>>, p: &Path) -> bool {
    let Some(last) = p.arrows().last() else {
        return true;
    };
    let Some(candidates) = tips_by_last.get(last) else {
        return true;
    };
    let n = p.len();
    !candidates
        .iter()
        .any(|t| t.len() <= n && p.arrows()[n - t.len()..] == t.arrows()[..])
}

fn index_by_last(tips: &TipSet) -> BTreeMap<ArrowId, Vec<&Path>> {
    let mut idx: BTreeMap<ArrowId, Vec<&Path>> = BTreeMap::new();
    for t in tips.iter() {
        if let Some(a) = t.arrows().last() {
            idx.entry(*a).or_default().push(t);
        }
    }
    idx
}

/// Normal paths level by level. Returns the paths found and whether the
/// enumeration ran out of normal paths before `limit` (inclusive).
fn enumerate_normal(q: &Quiver, tips: &TipSet, limit: Option<usize>) -> (Vec<Path>, bool) {
    let idx = index_by_last(tips);
    let mut all: Vec<Path> = q.vertices().map(Path::trivial).collect();
    let mut frontier: Vec<Path> = q
        .arrow_ids()
        .map(|a| q.arrow_path(a))
        .filter(|p| is_normal_extension(&idx, p))
        .collect();
    let mut len = 1;
    loop {
        if frontier.is_empty() {
            return (all, true);
        }
        if limit.is_some_and(|cap| len >= cap) {
            all.extend(frontier);
            return (all, false);
        }
        let mut next = Vec::new();
        for p in &frontier {
            for a in q.arrows_from(p.end()) {
                let ext = p.compose(&q.arrow_path(a)).expect("composable");
                if is_normal_extension(&idx, &ext) {
                    next.push(ext);
                }
            }
        }
        all.append(&mut frontier);
        frontier = next;
        len += 1;
    }
}

/// Whether only finitely many paths avoid every member of `tips`.
///
/// Walks the automaton whose states are normal paths of length `k - 1`
/// (`k` the longest tip, at least 2); the normal set is infinite exactly when
/// this automaton has a cycle.
pub fn normal_set_is_finite(q: &Quiver, tips: &TipSet) -> bool {
    let k = tips.max_len().max(2);
    let idx = index_by_last(tips);
    let (paths, _) = enumerate_normal(q, tips, Some(k - 1));
    let states: Vec<Path> = paths.into_iter().filter(|p| p.len() == k - 1).collect();
    let state_index: BTreeMap<&[ArrowId], usize> = states
        .iter()
        .enumerate()
        .map(|(i, p)| (p.arrows(), i))
        .collect();
    let successors: Vec<Vec<usize>> = states
        .iter()
        .map(|s| {
            q.arrows_from(s.end())
                .filter_map(|a| {
                    let ext = s.compose(&q.arrow_path(a))?;
                    if !is_normal_extension(&idx, &ext) {
                        return None;
                    }
                    state_index.get(&ext.arrows()[1..]).copied()
                })
                .collect()
        })
        .collect();

    // Iterative three-color DFS for a cycle.
    let mut color = alloc::vec![0u8; states.len()];
    for root in 0..states.len() {
        if color[root] != 0 {
            continue;
        }
        let mut stack: Vec<(usize, usize)> = alloc::vec![(root, 0)];
        color[root] = 1;
        while let Some(&mut (node, ref mut next)) = stack.last_mut() {
            if *next < successors[node].len() {
                let succ = successors[node][*next];
                *next += 1;
                match color[succ] {
                    0 => {
                        color[succ] = 1;
                        stack.push((succ, 0));
                    }
                    1 => return false,
                    _ => {}
                }
            } else {
                color[node] = 2;
                stack.pop();
            }
        }
    }
    true
}

/// All paths with no member of `tips` as a subpath, sorted under `order`.
/// Fails when normal paths still exist at length `cap`.
pub fn normal_basis(q: &Quiver, tips: &TipSet, order: &AdmissibleOrder, cap: usize) -> Result<Vec<Path>, GroebnerError> {
    let (mut paths, finished) = enumerate_normal(q, tips, Some(cap));
    if !finished {
        return Err(GroebnerError::NormalBasisUnbounded(cap));
    }
    order.sort(&mut paths);
    Ok(paths)
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum AdmissibilityFailure {
    /// A tip of length 0 or 1: the ideal is not inside the square of the arrow ideal.
    ShortTip,
    /// Normal paths persist up to the cap.
    InfiniteNormalBasis,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Admissibility {
    pub admissible: bool,
    /// Smallest `m` with every path of length `m` divisible by a tip.
    pub length_bound: Option<usize>,
    pub failure: Option<AdmissibilityFailure>,
}

/// Admissibility of the monomial ideal generated by `tips`.
pub fn is_admissible(q: &Quiver, tips: &TipSet, cap: usize) -> Admissibility {
    if tips.iter().any(|t| t.len() < 2) {
        return Admissibility {
            admissible: false,
            length_bound: None,
            failure: Some(AdmissibilityFailure::ShortTip),
        };
    }
    let (paths, finished) = enumerate_normal(q, tips, Some(cap));
    if !finished {
        return Admissibility {
            admissible: false,
            length_bound: None,
            failure: Some(AdmissibilityFailure::InfiniteNormalBasis),
        };
    }
    Admissibility {
        admissible: true,
        length_bound: Some(paths.iter().map(Path::len).max().unwrap_or(0) + 1),
        failure: None,
    }
}

/// The reduced Gröbner basis of an admissible ideal together with its tip set
/// and normal basis.
#[derive(Clone, Debug)]
pub struct GroebnerData<F: Field> {
    order: AdmissibleOrder,
    field: F::Context,
    basis: Vec<UniformElement<F>>,
    tips: TipSet,
    normal_basis: Vec<Path>,
    length_bound: usize,
    nilpotency_index: usize,
    reducer: Reducer<F>,
}

impl<F: Field> GroebnerData<F> {
    /// Assembles the data for an already reduced Gröbner basis. Checks
    /// finiteness of the normal basis and nilpotency of the arrow ideal.
    pub fn from_reduced_basis(
        q: &Quiver,
        order: &AdmissibleOrder,
        basis: Vec<Element<F>>,
        field: F::Context,
    ) -> Result<Self, GroebnerError> {
        let mut basis: Vec<Element<F>> = basis.into_iter().filter(|g| !g.is_zero()).collect();
        basis.sort_by_cached_key(|g| order.key(g.tip(order).expect("nonzero")));
        let tips = TipSet {
            members: basis.iter().map(|g| g.tip(order).expect("nonzero").clone()).collect(),
        };
        if let Some(t) = basis.iter().flat_map(Element::paths).find(|t| t.len() < 2) {
            return Err(GroebnerError::ShortTerm(t.len()));
        }
        if !normal_set_is_finite(q, &tips) {
            return Err(GroebnerError::InfiniteNormalBasis);
        }
        let (mut normal, finished) = enumerate_normal(q, &tips, None);
        debug_assert!(finished);
        order.sort(&mut normal);
        let length_bound = normal.iter().map(Path::len).max().unwrap_or(0) + 1;
        let reducer = Reducer::from_elements(order, basis.iter());
        let uniform = basis
            .into_iter()
            .map(|g| UniformElement::new(g).expect("basis elements are uniform"))
            .collect();
        let mut data = GroebnerData {
            order: order.clone(),
            field,
            basis: uniform,
            tips,
            normal_basis: normal,
            length_bound,
            nilpotency_index: 0,
            reducer,
        };
        data.nilpotency_index = data.arrow_ideal_nilpotency(q).ok_or(GroebnerError::NotNilpotent)?;
        Ok(data)
    }

    /// Smallest `m` with every path of length `m` in the ideal, if any.
    ///
    /// Iterates the images `W_k` of `J^k` in the quotient, using
    /// `J^{k+1} = J^k · Q_1`. The chain is descending, so equal dimensions of
    /// consecutive terms mean it has stabilized.
    fn arrow_ideal_nilpotency(&self, q: &Quiver) -> Option<usize> {
        let index: BTreeMap<&Path, usize> = self.normal_basis.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let one = F::one(&self.field);
        let to_vec = |x: &Element<F>| -> SparseVec<F> {
            x.terms().map(|(p, c)| (index[p], c.clone())).collect()
        };
        let arrows: Vec<Element<F>> = q
            .arrow_ids()
            .map(|a| Element::monomial(q.arrow_path(a), one.clone()))
            .collect();
        let mut level: Vec<Element<F>> = self
            .normal_basis
            .iter()
            .filter(|p| !p.is_trivial())
            .map(|p| Element::monomial(p.clone(), one.clone()))
            .collect();
        let mut k = 1;
        loop {
            if level.is_empty() {
                return Some(k);
            }
            let mut span = Subspace::new();
            let mut next = Vec::new();
            for x in &level {
                for a in &arrows {
                    let prod = self.reduce(&x.mul(a));
                    if span.insert(to_vec(&prod)) {
                        next.push(prod);
                    }
                }
            }
            if next.len() == level.len() {
                return None;
            }
            level = next;
            k += 1;
        }
    }

    pub fn order(&self) -> &AdmissibleOrder {
        &self.order
    }

    pub fn field(&self) -> &F::Context {
        &self.field
    }

    pub fn basis(&self) -> &[UniformElement<F>] {
        &self.basis
    }

    pub fn basis_elements(&self) -> Vec<Element<F>> {
        self.basis.iter().map(|g| g.element().clone()).collect()
    }

    pub fn tips(&self) -> &TipSet {
        &self.tips
    }

    pub fn normal_basis(&self) -> &[Path] {
        &self.normal_basis
    }

    pub fn length_bound(&self) -> usize {
        self.length_bound
    }

    /// Smallest `m` with all paths of length `m` lying in the ideal.
    pub fn nilpotency_index(&self) -> usize {
        self.nilpotency_index
    }

    pub fn dimension(&self) -> usize {
        self.normal_basis.len()
    }

    /// Whether the ideal is monomial, i.e. the reduced basis is its tip set.
    pub fn is_monomial(&self) -> bool {
        self.basis.iter().all(|g| g.element().is_monomial())
    }

    /// Tip set presenting the associated monomial algebra.
    pub fn associated_monomial(&self) -> &TipSet {
        &self.tips
    }

    /// Unique normal form of `x`.
    pub fn reduce(&self, x: &Element<F>) -> Element<F> {
        self.reducer.reduce(x)
    }
}

/// Completes `gens` to the reduced Gröbner basis of the ideal they generate.
///
/// Overlaps are processed in ascending order of their glued path. Overlaps
/// longer than `cap` are only processed once the current tips already leave
/// finitely many normal paths; otherwise completion stops with
/// [`GroebnerError::CapExceeded`].
pub fn complete<F: Field>(
    q: &Quiver,
    gens: &[Element<F>],
    order: &AdmissibleOrder,
    cap: usize,
    field: F::Context,
) -> Result<GroebnerData<F>, GroebnerError> {
    let mut todo: Vec<Element<F>> = Vec::new();
    for g in gens {
        if let Some(len) = g.min_length().filter(|&l| l < 2) {
            return Err(GroebnerError::ShortTerm(len));
        }
        todo.extend(uniformize(g).into_iter().map(UniformElement::into_element));
    }

    let mut reducer: Reducer<F> = Reducer::new(order.clone());
    let mut queue: BTreeSet<(OrderKey, usize, usize, usize)> = BTreeSet::new();
    let mut finite_cache: Option<bool> = None;

    loop {
        while let Some(h) = todo.pop() {
            let r = reducer.reduce(&h);
            if r.is_zero() {
                continue;
            }
            let r = r.make_monic(order);
            let t = r.tip(order).expect("nonzero").clone();
            let displaced: Vec<usize> = reducer
                .live()
                .filter(|(_, _, tip)| tip.contains(&t))
                .map(|(id, _, _)| id)
                .collect();
            for id in displaced {
                todo.push(reducer.remove(id));
            }
            let id = reducer.push(r);
            finite_cache = None;
            let others: Vec<(usize, Path)> = reducer.live().map(|(j, _, tip)| (j, tip.clone())).collect();
            for (j, tj) in others {
                for ov in t.overlaps(&tj) {
                    queue.insert((order.key(&ov.glued), id, j, ov.shared));
                }
                if j != id {
                    for ov in tj.overlaps(&t) {
                        queue.insert((order.key(&ov.glued), j, id, ov.shared));
                    }
                }
            }
        }

        let Some(entry) = queue.pop_first() else {
            break;
        };
        let (_, i, j, shared) = entry;
        if !reducer.is_live(i) || !reducer.is_live(j) {
            continue;
        }
        let (ti, tj) = (reducer.tip_of(i).clone(), reducer.tip_of(j).clone());
        let glued_len = ti.len() + tj.len() - shared;
        if glued_len > cap {
            let finite = *finite_cache.get_or_insert_with(|| {
                let tips = TipSet {
                    members: reducer.live().map(|(_, _, t)| t.clone()).collect(),
                };
                normal_set_is_finite(q, &tips)
            });
            if !finite {
                return Err(GroebnerError::CapExceeded { cap, needed: glued_len });
            }
        }
        let left = ti.prefix(ti.len() - shared, tj.origin());
        let right = tj.suffix_from(shared, ti.end());
        let gi = reducer.element_of(i);
        let gj = reducer.element_of(j);
        let s = gi
            .sandwich(&Path::trivial(ti.origin()), &right)
            .sub(&gj.sandwich(&left, &Path::trivial(tj.end())));
        todo.push(s);
    }

    // Inter-reduce tails.
    let live: Vec<Element<F>> = reducer.live().map(|(_, g, _)| g.clone()).collect();
    let mut reduced = Vec::with_capacity(live.len());
    for g in &live {
        let (t, c) = g.tip_term(order).expect("nonzero");
        let head = Element::monomial(t.clone(), c.clone());
        let tail = g.sub(&head);
        reduced.push(head.add(&reducer.reduce(&tail)));
    }
    GroebnerData::from_reduced_basis(q, order, reduced, field)
}
