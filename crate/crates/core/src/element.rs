//! Elements of the path algebra with exact coefficients.

use alloc::collections::btree_map::{self, BTreeMap};
use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::fmt;

use crate::field::Field;
use crate::order::AdmissibleOrder;
use crate::quiver::{Path, Quiver, VertexId};

/// A finite linear combination of paths. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Debug)]
pub struct Element<F: Field> {
    terms: BTreeMap<Path, F>,
}

impl<F: Field> Default for Element<F> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<F: Field> Element<F> {
    pub fn zero() -> Self {
        Element {
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(p: Path, coef: F) -> Self {
        let mut e = Self::zero();
        e.add_term(p, coef);
        e
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Path, F)>) -> Self {
        let mut e = Self::zero();
        for (p, c) in terms {
            e.add_term(p, c);
        }
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> btree_map::Iter<'_, Path, F> {
        self.terms.iter()
    }

    pub fn paths(&self) -> impl Iterator<Item = &Path> {
        self.terms.keys()
    }

    pub fn coefficient(&self, p: &Path) -> Option<&F> {
        self.terms.get(p)
    }

    /// Whether the element is a scalar multiple of a single path.
    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn add_term(&mut self, p: Path, coef: F) {
        if coef.is_zero() {
            return;
        }
        match self.terms.entry(p) {
            btree_map::Entry::Vacant(v) => {
                v.insert(coef);
            }
            btree_map::Entry::Occupied(mut o) => {
                let sum = o.get().add(&coef);
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (p, c) in &other.terms {
            out.add_term(p.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (p, c) in &other.terms {
            out.add_term(p.clone(), c.neg());
        }
        out
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Element {
            terms: self.terms.iter().map(|(p, d)| (p.clone(), d.mul(c))).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        Element {
            terms: self.terms.iter().map(|(p, d)| (p.clone(), d.neg())).collect(),
        }
    }

    /// Product in the path algebra; non-composable pairs contribute zero.
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (p, c) in &self.terms {
            for (q, d) in &other.terms {
                if let Some(pq) = p.compose(q) {
                    out.add_term(pq, c.mul(d));
                }
            }
        }
        out
    }

    /// `left · self · right` for paths `left`, `right`.
    pub fn sandwich(&self, left: &Path, right: &Path) -> Self {
        let mut out = Self::zero();
        for (p, c) in &self.terms {
            if let Some(lp) = left.compose(p) {
                if let Some(lpr) = lp.compose(right) {
                    out.add_term(lpr, c.clone());
                }
            }
        }
        out
    }

    /// The largest path with nonzero coefficient, with that coefficient.
    pub fn tip_term(&self, order: &AdmissibleOrder) -> Option<(&Path, &F)> {
        self.terms
            .iter()
            .max_by(|(p, _), (q, _)| order.compare(p, q))
    }

    pub fn tip(&self, order: &AdmissibleOrder) -> Option<&Path> {
        self.tip_term(order).map(|(p, _)| p)
    }

    /// Divides by the tip coefficient.
    pub fn make_monic(&self, order: &AdmissibleOrder) -> Self {
        match self.tip_term(order) {
            None => Self::zero(),
            Some((_, c)) => {
                let inv = c.inv().expect("nonzero tip coefficient");
                self.scale(&inv)
            }
        }
    }

    /// Smallest term length, `None` for zero.
    pub fn min_length(&self) -> Option<usize> {
        self.terms.keys().map(Path::len).min()
    }

    /// Keeps the terms satisfying `keep`.
    pub fn filter(&self, mut keep: impl FnMut(&Path) -> bool) -> Self {
        Element {
            terms: self
                .terms
                .iter()
                .filter(|(p, _)| keep(p))
                .map(|(p, c)| (p.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn map_paths(&self, mut f: impl FnMut(&Path) -> Option<Path>) -> Option<Self> {
        let mut out = Self::zero();
        for (p, c) in &self.terms {
            out.add_term(f(p)?, c.clone());
        }
        Some(out)
    }

    pub fn display<'a>(&'a self, q: &'a Quiver, order: &'a AdmissibleOrder) -> ElementDisplay<'a, F> {
        ElementDisplay {
            element: self,
            quiver: q,
            order,
        }
    }
}

/// A nonzero element whose paths all share one origin and one end.
#[derive(Clone, PartialEq, Debug)]
pub struct UniformElement<F: Field> {
    element: Element<F>,
    origin: VertexId,
    end: VertexId,
}

impl<F: Field> UniformElement<F> {
    /// `None` unless `element` is nonzero and uniform.
    pub fn new(element: Element<F>) -> Option<Self> {
        let first = element.paths().next()?;
        let (origin, end) = (first.origin(), first.end());
        if element.paths().all(|p| p.origin() == origin && p.end() == end) {
            Some(UniformElement {
                element,
                origin,
                end,
            })
        } else {
            None
        }
    }

    pub fn element(&self) -> &Element<F> {
        &self.element
    }

    pub fn into_element(self) -> Element<F> {
        self.element
    }

    pub fn origin(&self) -> VertexId {
        self.origin
    }

    pub fn end(&self) -> VertexId {
        self.end
    }
}

/// A set of vertices, standing for the idempotent that is their sum.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct VertexSet(pub BTreeSet<VertexId>);

impl VertexSet {
    pub fn new() -> Self {
        VertexSet(BTreeSet::new())
    }

    pub fn single(v: VertexId) -> Self {
        VertexSet([v].into_iter().collect())
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.0.contains(&v)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.0.iter().copied()
    }
}

impl FromIterator<VertexId> for VertexSet {
    fn from_iter<I: IntoIterator<Item = VertexId>>(iter: I) -> Self {
        VertexSet(iter.into_iter().collect())
    }
}

/// The nonzero components `u·x·v`, grouped by (origin, end) in vertex order.
pub fn uniformize<F: Field>(x: &Element<F>) -> Vec<UniformElement<F>> {
    let mut groups: BTreeMap<(VertexId, VertexId), Element<F>> = BTreeMap::new();
    for (p, c) in x.terms() {
        groups
            .entry((p.origin(), p.end()))
            .or_default()
            .add_term(p.clone(), c.clone());
    }
    groups
        .into_values()
        .filter_map(UniformElement::new)
        .collect()
}

/// Splits `x = x_hat + x_e`, where `x_hat` lives on paths avoiding `s` entirely
/// and `x_e` on paths passing through some vertex of `s`.
pub fn split_e<F: Field>(q: &Quiver, x: &Element<F>, s: &VertexSet) -> (Element<F>, Element<F>) {
    let hat = x.filter(|p| !q.visits_any(p, &s.0));
    let through = x.filter(|p| q.visits_any(p, &s.0));
    (hat, through)
}

/// `{x_hat : x in xs}` with zeros dropped.
pub fn restrict_set<F: Field>(q: &Quiver, xs: &[Element<F>], s: &VertexSet) -> Vec<Element<F>> {
    xs.iter()
        .map(|x| split_e(q, x, s).0)
        .filter(|x| !x.is_zero())
        .collect()
}

pub struct ElementDisplay<'a, F: Field> {
    element: &'a Element<F>,
    quiver: &'a Quiver,
    order: &'a AdmissibleOrder,
}

/// Terms are written from the largest path down, e.g. `a*b - 3/2*c*d`.
impl<F: Field> fmt::Display for ElementDisplay<'_, F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.element.is_zero() {
            return f.write_str("0");
        }
        let mut terms: Vec<(&Path, &F)> = self.element.terms().collect();
        terms.sort_by(|(p, _), (q, _)| self.order.compare(q, p));
        for (i, (p, c)) in terms.into_iter().enumerate() {
            let text = alloc::format!("{c}");
            let (negative, magnitude) = match text.strip_prefix('-') {
                Some(rest) => (true, rest),
                None => (false, text.as_str()),
            };
            match (i, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if magnitude != "1" {
                write!(f, "{magnitude}*")?;
            }
            write!(f, "{}", self.quiver.display_path(p))?;
        }
        Ok(())
    }
}
