//! Sparse elements of the exterior algebra `Λ(F^n)` in the basis
//! `f_A = e_{a_1} ∧ ... ∧ e_{a_k}` (`a_1 < ... < a_k`).

use std::collections::{BTreeMap, BTreeSet};

use super::field::Field;
use super::linalg::rank;
use super::subspace::{intersection_dim, Subspace};
use crate::error::{Error, Result};
use crate::sets::{Cell, SubsetMask};

/// Largest ambient dimension the algebra accepts.
pub const MAX_ALGEBRA_DIM: usize = 20;

/// True when `f_A ∧ f_B = -f_{A ∪ B}` (disjoint `A`, `B`): the number of
/// pairs `a ∈ A`, `b ∈ B` with `a > b` is odd.
pub fn wedge_sign_negative(a: SubsetMask, b: SubsetMask) -> bool {
    let mut inversions = 0u32;
    for j in b.indices() {
        let above = if j + 1 >= 64 { 0 } else { !0u64 << (j + 1) };
        inversions += (a.bits() & above).count_ones();
    }
    inversions % 2 == 1
}

#[derive(Debug, Clone, PartialEq)]
pub struct MultiVector<F: Field> {
    field: F,
    ambient: usize,
    terms: BTreeMap<SubsetMask, F::Elem>,
}

impl<F: Field> MultiVector<F> {
    pub fn zero(field: &F, ambient: usize) -> Self {
        MultiVector { field: field.clone(), ambient, terms: BTreeMap::new() }
    }

    /// `c · f_∅`.
    pub fn scalar(field: &F, ambient: usize, c: F::Elem) -> Self {
        Self::from_terms(field, ambient, [(SubsetMask::EMPTY, c)])
    }

    /// The basis element `f_A`.
    pub fn blade(field: &F, ambient: usize, a: SubsetMask) -> Result<Self> {
        if a.indices().any(|i| i >= ambient) {
            return Err(Error::MaskOutOfRange { mask: a.bits(), n: ambient });
        }
        Ok(Self::from_terms(field, ambient, [(a, field.one())]))
    }

    /// Grade-one element `Σ v_i e_i`.
    pub fn from_vector(field: &F, v: &[F::Elem]) -> Self {
        let terms = v
            .iter()
            .enumerate()
            .map(|(i, c)| (SubsetMask::from_bits(1 << i), c.clone()));
        Self::from_terms(field, v.len(), terms)
    }

    /// Sums coefficients of repeated masks and drops zeros.
    pub fn from_terms<I>(field: &F, ambient: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (SubsetMask, F::Elem)>,
    {
        let mut out = Self::zero(field, ambient);
        for (mask, c) in terms {
            out.add_term(mask, &c);
        }
        out
    }

    fn add_term(&mut self, mask: SubsetMask, c: &F::Elem) {
        let f = &self.field;
        let sum = match self.terms.get(&mask) {
            Some(old) => f.add(old, c),
            None => c.clone(),
        };
        if f.is_zero(&sum) {
            self.terms.remove(&mask);
        } else {
            self.terms.insert(mask, sum);
        }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (SubsetMask, &F::Elem)> {
        self.terms.iter().map(|(m, c)| (*m, c))
    }

    pub fn coefficient(&self, mask: SubsetMask) -> F::Elem {
        self.terms.get(&mask).cloned().unwrap_or_else(|| self.field.zero())
    }

    /// The common grade of all terms, if the element is nonzero and homogeneous.
    pub fn grade(&self) -> Option<usize> {
        let mut grades = self.terms.keys().map(|m| m.len());
        let first = grades.next()?;
        grades.all(|g| g == first).then_some(first)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch(self.ambient, other.ambient));
        }
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(m, c);
        }
        Ok(out)
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let f = &self.field;
        Self::from_terms(f, self.ambient, self.terms().map(|(m, x)| (m, f.mul(x, c))))
    }

    /// Bilinear extension of `f_A ∧ f_B = ±f_{A ∪ B}` for disjoint `A`, `B`
    /// and `0` otherwise.
    pub fn wedge(&self, other: &Self) -> Result<Self> {
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch(self.ambient, other.ambient));
        }
        let f = &self.field;
        let mut out = Self::zero(f, self.ambient);
        for (a, x) in self.terms() {
            for (b, y) in other.terms() {
                if a.intersects(b) {
                    continue;
                }
                let mut c = f.mul(x, y);
                if wedge_sign_negative(a, b) {
                    c = f.neg(&c);
                }
                out.add_term(a | b, &c);
            }
        }
        Ok(out)
    }
}

/// `∧T = t_1 ∧ ... ∧ t_k` over the canonical basis of `T`; `1 · f_∅` for the
/// zero subspace.
pub fn subspace_wedge<F: Field>(s: &Subspace<F>) -> MultiVector<F> {
    let f = s.field();
    s.basis().iter().fold(MultiVector::scalar(f, s.ambient(), f.one()), |acc, row| {
        acc.wedge(&MultiVector::from_vector(f, row)).expect("same ambient")
    })
}

/// `U ∩ V = {0}`, decided by `(∧U) ∧ (∧V) ≠ 0` and checked against the rank
/// formula `dim U + dim V - dim(U + V) = 0`.
pub fn trivial_intersection<F: Field>(u: &Subspace<F>, v: &Subspace<F>) -> Result<bool> {
    let by_wedge = !subspace_wedge(u).wedge(&subspace_wedge(v))?.is_zero();
    let by_rank = intersection_dim(u, v)? == 0;
    if by_wedge != by_rank {
        return Err(Error::OracleMismatch(format!(
            "wedge test says trivial={by_wedge}, rank formula says trivial={by_rank}"
        )));
    }
    Ok(by_wedge)
}

/// Rank of multivectors viewed as rows of coordinates in the `f_A` basis.
pub fn multivector_rank<F: Field>(vectors: &[MultiVector<F>]) -> usize {
    let Some(first) = vectors.first() else {
        return 0;
    };
    let f = first.field().clone();
    let columns: Vec<SubsetMask> = vectors
        .iter()
        .flat_map(|v| v.terms().map(|(m, _)| m))
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let index: BTreeMap<SubsetMask, usize> = columns.iter().enumerate().map(|(i, &m)| (m, i)).collect();
    let rows = vectors
        .iter()
        .map(|v| {
            let mut row = vec![f.zero(); columns.len()];
            for (m, c) in v.terms() {
                row[index[&m]] = c.clone();
            }
            row
        })
        .collect();
    rank(&f, rows, columns.len())
}

/// Outcome of the triangular criterion for `f(w, a) = w ∧ a`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriangularCheck {
    /// `pattern[i][j]` is true when `vectors[i] ∧ witnesses[j] ≠ 0`.
    pub pattern: Vec<Vec<bool>>,
    /// First cell breaking "nonzero diagonal, zero strict upper triangle".
    pub failure: Option<Cell>,
    /// Rank of `vectors`, computed only when the pattern holds.
    pub rank: Option<usize>,
}

impl TriangularCheck {
    pub fn independent(&self) -> bool {
        self.failure.is_none() && self.rank == Some(self.pattern.len())
    }
}

/// Tabulates `vectors[i] ∧ witnesses[j]`, checks the triangular pattern and,
/// when it holds, confirms independence by an explicit rank computation.
pub fn triangular_independence<F: Field>(
    vectors: &[MultiVector<F>],
    witnesses: &[MultiVector<F>],
) -> Result<TriangularCheck> {
    if vectors.len() != witnesses.len() {
        return Err(Error::LengthMismatch(vectors.len(), witnesses.len()));
    }
    let m = vectors.len();
    let mut pattern = vec![vec![false; m]; m];
    for (i, v) in vectors.iter().enumerate() {
        for (j, w) in witnesses.iter().enumerate() {
            pattern[i][j] = !v.wedge(w)?.is_zero();
        }
    }
    let failure = (0..m)
        .flat_map(|i| (i..m).map(move |j| Cell { i, j }))
        .find(|c| pattern[c.i][c.j] != (c.i == c.j));
    let rank = failure.is_none().then(|| multivector_rank(vectors));
    Ok(TriangularCheck { pattern, failure, rank })
}
