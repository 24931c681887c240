//! Sparse exact vectors and incremental row echelon subspaces.

use alloc::collections::btree_map::{self, BTreeMap};
use alloc::vec::Vec;

use crate::field::Field;

/// A coordinate vector with only nonzero entries stored.
#[derive(Clone, PartialEq, Debug)]
pub struct SparseVec<F: Field> {
    entries: BTreeMap<usize, F>,
}

impl<F: Field> Default for SparseVec<F> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<F: Field> SparseVec<F> {
    pub fn zero() -> Self {
        SparseVec {
            entries: BTreeMap::new(),
        }
    }

    pub fn unit(i: usize, one: F) -> Self {
        let mut v = Self::zero();
        v.add_entry(i, one);
        v
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, i: usize) -> Option<&F> {
        self.entries.get(&i)
    }

    pub fn iter(&self) -> btree_map::Iter<'_, usize, F> {
        self.entries.iter()
    }

    pub fn leading(&self) -> Option<(usize, &F)> {
        self.entries.iter().next().map(|(i, c)| (*i, c))
    }

    pub fn add_entry(&mut self, i: usize, c: F) {
        if c.is_zero() {
            return;
        }
        match self.entries.entry(i) {
            btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            btree_map::Entry::Occupied(mut o) => {
                let sum = o.get().add(&c);
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, other: &Self, c: &F) {
        if c.is_zero() {
            return;
        }
        for (i, d) in &other.entries {
            self.add_entry(*i, d.mul(c));
        }
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        SparseVec {
            entries: self.entries.iter().map(|(i, d)| (*i, d.mul(c))).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (i, d) in &other.entries {
            out.add_entry(*i, d.neg());
        }
        out
    }
}

impl<F: Field> FromIterator<(usize, F)> for SparseVec<F> {
    fn from_iter<I: IntoIterator<Item = (usize, F)>>(iter: I) -> Self {
        let mut v = Self::zero();
        for (i, c) in iter {
            v.add_entry(i, c);
        }
        v
    }
}

/// A subspace held in row echelon form: one row per pivot column, each row
/// normalized so its pivot (smallest index) has coefficient one.
#[derive(Clone, Debug)]
pub struct Subspace<F: Field> {
    rows: BTreeMap<usize, SparseVec<F>>,
}

impl<F: Field> Default for Subspace<F> {
    fn default() -> Self {
        Self::new()
    }
}

impl<F: Field> Subspace<F> {
    pub fn new() -> Self {
        Subspace {
            rows: BTreeMap::new(),
        }
    }

    pub fn spanned_by<'a>(vectors: impl IntoIterator<Item = &'a SparseVec<F>>) -> Self
    where
        F: 'a,
    {
        let mut s = Self::new();
        for v in vectors {
            s.insert(v.clone());
        }
        s
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> impl Iterator<Item = &SparseVec<F>> {
        self.rows.values()
    }

    /// Remainder of `v` after eliminating every pivot column.
    pub fn reduce(&self, mut v: SparseVec<F>) -> SparseVec<F> {
        let mut cursor = 0usize;
        loop {
            let next = v
                .entries
                .range(cursor..)
                .find(|(i, _)| self.rows.contains_key(i))
                .map(|(i, c)| (*i, c.clone()));
            match next {
                None => return v,
                Some((col, c)) => {
                    v.add_scaled(&self.rows[&col], &c.neg());
                    cursor = col + 1;
                }
            }
        }
    }

    pub fn contains(&self, v: &SparseVec<F>) -> bool {
        self.reduce(v.clone()).is_zero()
    }

    /// Adds `v`; returns whether the dimension grew.
    pub fn insert(&mut self, v: SparseVec<F>) -> bool {
        let r = self.reduce(v);
        match r.leading() {
            None => false,
            Some((col, lead)) => {
                let inv = lead.inv().expect("nonzero pivot");
                let row = r.scale(&inv);
                self.rows.insert(col, row);
                true
            }
        }
    }

    pub fn contains_subspace(&self, other: &Subspace<F>) -> bool {
        other.basis().all(|v| self.contains(v))
    }

    pub fn into_basis(self) -> Vec<SparseVec<F>> {
        self.rows.into_values().collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rational;

    fn v(entries: &[(usize, i64)]) -> SparseVec<Rational> {
        entries.iter().map(|(i, c)| (*i, Rational::new(*c, 1))).collect()
    }

    #[test]
    fn rank_of_dependent_rows() {
        let mut s = Subspace::new();
        assert!(s.insert(v(&[(0, 1), (1, 2)])));
        assert!(s.insert(v(&[(1, 1), (2, 1)])));
        assert!(!s.insert(v(&[(0, 1), (1, 3), (2, 1)])));
        assert!(s.insert(v(&[(2, 5)])));
        assert_eq!(s.dim(), 3);
        assert!(s.contains(&v(&[(0, 7)])));
    }

    #[test]
    fn zero_vector_adds_nothing() {
        let mut s: Subspace<Rational> = Subspace::new();
        assert!(!s.insert(SparseVec::zero()));
        assert_eq!(s.dim(), 0);
    }
}
