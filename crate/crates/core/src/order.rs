//! Length-lexicographic admissible orders on paths.

use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::error::QuiverError;
use crate::quiver::{ArrowId, Embedding, Path, Quiver};

#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum OrderKind {
    /// Equal-length paths compared from their first arrow.
    LengthLeftLex,
    /// Equal-length paths compared from their last arrow.
    LengthRightLex,
}

/// Shorter paths come first; equal-length paths are compared arrow by arrow
/// using `precedence`. Vertices sit below every arrow, ordered by id.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct AdmissibleOrder {
    kind: OrderKind,
    /// Arrows from greatest to least.
    precedence: Vec<ArrowId>,
    /// rank[a] is larger for greater arrows.
    rank: Vec<u32>,
}

/// Sort key realizing the order; keys compare exactly as paths do.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct OrderKey {
    len: usize,
    ranks: Vec<u32>,
    origin: usize,
}

impl AdmissibleOrder {
    /// `precedence` lists every arrow of the quiver exactly once, greatest first.
    pub fn new(kind: OrderKind, precedence: Vec<ArrowId>, arrow_count: usize) -> Result<Self, QuiverError> {
        if precedence.len() != arrow_count {
            return Err(QuiverError::IncompletePrecedence);
        }
        let mut rank = alloc::vec![u32::MAX; arrow_count];
        for (pos, a) in precedence.iter().enumerate() {
            if a.0 >= arrow_count {
                return Err(QuiverError::IncompletePrecedence);
            }
            if rank[a.0] != u32::MAX {
                return Err(QuiverError::DuplicatePrecedence(a.0));
            }
            rank[a.0] = (arrow_count - pos) as u32;
        }
        Ok(AdmissibleOrder {
            kind,
            precedence,
            rank,
        })
    }

    /// Left length-lex with precedence equal to declaration order.
    pub fn default_for(q: &Quiver) -> Self {
        Self::new(OrderKind::LengthLeftLex, q.arrow_ids().collect(), q.arrow_count())
            .expect("declaration order is a permutation")
    }

    /// Same kind with the precedence list reversed.
    pub fn reversed(&self) -> Self {
        let mut precedence = self.precedence.clone();
        precedence.reverse();
        Self::new(self.kind, precedence, self.rank.len()).expect("permutation")
    }

    pub fn kind(&self) -> OrderKind {
        self.kind
    }

    pub fn precedence(&self) -> &[ArrowId] {
        &self.precedence
    }

    pub fn key(&self, p: &Path) -> OrderKey {
        let mut ranks: Vec<u32> = p.arrows().iter().map(|a| self.rank[a.0]).collect();
        if self.kind == OrderKind::LengthRightLex {
            ranks.reverse();
        }
        OrderKey {
            len: p.len(),
            ranks,
            origin: p.origin().0,
        }
    }

    pub fn compare(&self, p: &Path, q: &Path) -> Ordering {
        if p.len() != q.len() {
            return p.len().cmp(&q.len());
        }
        if p.is_trivial() {
            return p.origin().cmp(&q.origin());
        }
        let by_rank = |a: &ArrowId, b: &ArrowId| self.rank[a.0].cmp(&self.rank[b.0]);
        let (pa, qa) = (p.arrows(), q.arrows());
        let ord = match self.kind {
            OrderKind::LengthLeftLex => pa.iter().zip(qa).map(|(a, b)| by_rank(a, b)).find(|o| o.is_ne()),
            OrderKind::LengthRightLex => pa
                .iter()
                .rev()
                .zip(qa.iter().rev())
                .map(|(a, b)| by_rank(a, b))
                .find(|o| o.is_ne()),
        };
        ord.unwrap_or(Ordering::Equal)
    }

    pub fn sort(&self, paths: &mut [Path]) {
        paths.sort_by_cached_key(|p| self.key(p));
    }

    /// The induced order on a subquiver.
    pub fn restrict(&self, emb: &Embedding) -> Self {
        let precedence: Vec<ArrowId> = self
            .precedence
            .iter()
            .filter_map(|a| emb.arrow_map[a.0])
            .collect();
        let n = precedence.len();
        Self::new(self.kind, precedence, n).expect("restriction of a permutation")
    }
}
