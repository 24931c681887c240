//! Finite-dimensional quotients `KQ/I` as concrete algebras on the normal
//! basis, and the linear-algebra checks for heredity ideals `ΛeΛ`.

use alloc::collections::{BTreeMap, VecDeque};
use alloc::vec::Vec;

use crate::element::{restrict_set, Element, VertexSet};
use crate::error::HeredityError;
use crate::field::Field;
use crate::groebner::GroebnerData;
use crate::linalg::{SparseVec, Subspace};
use crate::quiver::{Embedding, Path, Quiver, VertexId};

/// `KQ/I` with basis the normal paths and multiplication by structure constants.
#[derive(Clone, Debug)]
pub struct FdAlgebra<F: Field> {
    quiver: Quiver,
    data: GroebnerData<F>,
    index: BTreeMap<Path, usize>,
    /// `table[i][j]` is the normal form of `n_i · n_j` in basis coordinates.
    table: Vec<Vec<SparseVec<F>>>,
}

/// Builds the structure constants of `KQ/I` from its Gröbner data.
pub fn build_fd_algebra<F: Field>(q: &Quiver, data: GroebnerData<F>) -> FdAlgebra<F> {
    let basis = data.normal_basis();
    let index: BTreeMap<Path, usize> = basis.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
    let one = F::one(data.field());
    let table = basis
        .iter()
        .map(|n1| {
            basis
                .iter()
                .map(|n2| match n1.compose(n2) {
                    None => SparseVec::zero(),
                    Some(p) => {
                        let nf = data.reduce(&Element::monomial(p, one.clone()));
                        nf.terms().map(|(p, c)| (index[p], c.clone())).collect()
                    }
                })
                .collect()
        })
        .collect();
    FdAlgebra {
        quiver: q.clone(),
        data,
        index,
        table,
    }
}

impl<F: Field> FdAlgebra<F> {
    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn data(&self) -> &GroebnerData<F> {
        &self.data
    }

    pub fn dim(&self) -> usize {
        self.data.dimension()
    }

    pub fn basis_path(&self, i: usize) -> &Path {
        &self.data.normal_basis()[i]
    }

    pub fn index_of(&self, p: &Path) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn one(&self) -> F {
        F::one(self.data.field())
    }

    pub fn basis_vector(&self, i: usize) -> SparseVec<F> {
        SparseVec::unit(i, self.one())
    }

    pub fn vertex_vector(&self, v: VertexId) -> SparseVec<F> {
        self.basis_vector(self.index[&Path::trivial(v)])
    }

    /// Structure constants for the pair `(n_i, n_j)`.
    pub fn product(&self, i: usize, j: usize) -> &SparseVec<F> {
        &self.table[i][j]
    }

    pub fn mul(&self, x: &SparseVec<F>, y: &SparseVec<F>) -> SparseVec<F> {
        let mut out = SparseVec::zero();
        for (i, a) in x.iter() {
            for (j, b) in y.iter() {
                let t = &self.table[*i][*j];
                if !t.is_zero() {
                    out.add_scaled(t, &a.mul(b));
                }
            }
        }
        out
    }

    /// Coordinates of the class of `x`.
    pub fn coordinates(&self, x: &Element<F>) -> SparseVec<F> {
        self.data
            .reduce(x)
            .terms()
            .map(|(p, c)| (self.index[p], c.clone()))
            .collect()
    }

    pub fn to_element(&self, v: &SparseVec<F>) -> Element<F> {
        Element::from_terms(v.iter().map(|(i, c)| (self.basis_path(*i).clone(), c.clone())))
    }

    /// Indices of the normal paths of positive length, a basis of the radical.
    pub fn radical_indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.data
            .normal_basis()
            .iter()
            .enumerate()
            .filter(|(_, p)| !p.is_trivial())
            .map(|(i, _)| i)
    }

    fn arrow_indices(&self) -> Vec<usize> {
        self.quiver
            .arrow_ids()
            .map(|a| self.index[&self.quiver.arrow_path(a)])
            .collect()
    }
}

/// The two-sided ideal `ΛeΛ` for `e` the sum of the vertices in `s`, as a
/// subspace of the normal-basis coordinates.
pub fn ideal_subspace<F: Field>(a: &FdAlgebra<F>, s: &VertexSet) -> Subspace<F> {
    let basis = a.data.normal_basis();
    let mut space = Subspace::new();
    let mut queue = VecDeque::new();
    for v in s.iter() {
        for (i, n1) in basis.iter().enumerate() {
            if n1.end() != v {
                continue;
            }
            for (j, n2) in basis.iter().enumerate() {
                if n2.origin() != v {
                    continue;
                }
                let prod = a.product(i, j).clone();
                if space.insert(prod.clone()) {
                    queue.push_back(prod);
                }
            }
        }
    }
    let arrows = a.arrow_indices();
    while let Some(x) = queue.pop_front() {
        for &k in &arrows {
            let unit = a.basis_vector(k);
            for prod in [a.mul(&unit, &x), a.mul(&x, &unit)] {
                if space.insert(prod.clone()) {
                    queue.push_back(prod);
                }
            }
        }
    }
    space
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Projectivity {
    /// `eJe = 0` and `Λe ⊗_{eΛe} eΛ → ΛeΛ` is bijective.
    Bijective,
    /// `eJe = 0` but the multiplication map is not injective.
    NotBijective,
    /// `eJe ≠ 0`, so the dimension criterion does not apply; the ideal
    /// already fails `LJL = 0`.
    CornerRadicalNonzero,
}

/// Outcome of the three heredity conditions for `L = ΛeΛ`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HeredityCheck {
    pub ideal_dim: usize,
    /// `Σ_{v∈S} dim Λv · dim vΛ`.
    pub tensor_dim: usize,
    pub l_squared: bool,
    pub ljl_zero: bool,
    pub projectivity: Projectivity,
}

impl HeredityCheck {
    pub fn projective(&self) -> bool {
        self.projectivity == Projectivity::Bijective
    }

    pub fn passes(&self) -> bool {
        self.l_squared && self.ljl_zero && self.projective()
    }
}

/// Checks `L² = L`, `L·J·L = 0` and projectivity of `L = ΛeΛ`.
pub fn verify_heredity_ideal<F: Field>(a: &FdAlgebra<F>, s: &VertexSet) -> HeredityCheck {
    let l = ideal_subspace(a, s);
    let l_basis: Vec<&SparseVec<F>> = l.basis().collect();

    let mut square = Subspace::new();
    'outer: for x in &l_basis {
        for y in &l_basis {
            square.insert(a.mul(x, y));
            if square.dim() == l.dim() {
                break 'outer;
            }
        }
    }
    let l_squared = square.dim() == l.dim() && l.contains_subspace(&square);

    let radical: Vec<usize> = a.radical_indices().collect();
    let mut lj = Subspace::new();
    for x in &l_basis {
        for &j in &radical {
            lj.insert(a.mul(x, &a.basis_vector(j)));
        }
    }
    let ljl_zero = lj
        .basis()
        .all(|xj| l_basis.iter().all(|y| a.mul(xj, y).is_zero()));

    let basis = a.data.normal_basis();
    let corner_zero = !basis
        .iter()
        .any(|n| !n.is_trivial() && s.contains(n.origin()) && s.contains(n.end()));
    let tensor_dim = s
        .iter()
        .map(|v| {
            let into = basis.iter().filter(|n| n.end() == v).count();
            let out = basis.iter().filter(|n| n.origin() == v).count();
            into * out
        })
        .sum();
    let projectivity = if !corner_zero {
        Projectivity::CornerRadicalNonzero
    } else if l.dim() == tensor_dim {
        Projectivity::Bijective
    } else {
        Projectivity::NotBijective
    };
    HeredityCheck {
        ideal_dim: l.dim(),
        tensor_dim,
        l_squared,
        ljl_zero,
        projectivity,
    }
}

/// `Λ/ΛeΛ` presented on the subquiver without `s`, with Gröbner basis the
/// restriction of the Gröbner basis of `Λ`.
///
/// For non-monomial ideals this requires every vertex of `s` to avoid being
/// properly internal to a tip.
pub fn quotient_algebra<F: Field>(a: &FdAlgebra<F>, s: &VertexSet) -> Result<(FdAlgebra<F>, Embedding), HeredityError> {
    let q = &a.quiver;
    let data = &a.data;
    if !data.is_monomial() {
        for v in s.iter() {
            if data.tips().iter().any(|t| q.is_properly_internal(v, t)) {
                return Err(HeredityError::PreconditionFailed(v));
            }
        }
    }
    let (sub, emb) = q.without_vertices(&s.0);
    let order = data.order().restrict(&emb);
    let restricted: Vec<Element<F>> = restrict_set(q, &data.basis_elements(), s)
        .iter()
        .map(|g| g.map_paths(|p| emb.map_path(p)).expect("restricted paths avoid s"))
        .collect();
    let sub_data = GroebnerData::from_reduced_basis(&sub, &order, restricted, data.field().clone())?;
    Ok((build_fd_algebra(&sub, sub_data), emb))
}
