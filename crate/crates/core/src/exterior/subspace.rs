use rand::Rng;

use super::field::Field;
use super::linalg::row_reduce;
use crate::error::{Error, Result};
use crate::sets::SubsetMask;

/// A subspace of `F^n`, stored by its reduced row echelon basis so that
/// equal subspaces have identical representations.
#[derive(Debug, Clone, PartialEq)]
pub struct Subspace<F: Field> {
    field: F,
    ambient: usize,
    basis: Vec<Vec<F::Elem>>,
    pivots: Vec<usize>,
}

impl<F: Field> Subspace<F> {
    /// Span of arbitrary (possibly dependent) vectors of length `ambient`.
    pub fn span(field: &F, ambient: usize, vectors: Vec<Vec<F::Elem>>) -> Result<Self> {
        if let Some(v) = vectors.iter().find(|v| v.len() != ambient) {
            return Err(Error::AmbientMismatch(ambient, v.len()));
        }
        let e = row_reduce(field, vectors, ambient);
        Ok(Subspace { field: field.clone(), ambient, basis: e.rows, pivots: e.pivots })
    }

    pub fn zero(field: &F, ambient: usize) -> Self {
        Subspace { field: field.clone(), ambient, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(field: &F, ambient: usize) -> Self {
        Self::coordinate(field, ambient, SubsetMask::prefix(ambient))
    }

    /// `span{e_j : j ∈ mask}`; bits at or above `ambient` are ignored.
    pub fn coordinate(field: &F, ambient: usize, mask: SubsetMask) -> Self {
        let pivots: Vec<usize> = mask.indices().filter(|&i| i < ambient).collect();
        let basis = pivots
            .iter()
            .map(|&i| {
                let mut v = vec![field.zero(); ambient];
                v[i] = field.one();
                v
            })
            .collect();
        Subspace { field: field.clone(), ambient, basis, pivots }
    }

    /// A uniformly random subspace of the given dimension, drawn as the row
    /// space of a random full-rank matrix.
    pub fn random<R: Rng + ?Sized>(field: &F, ambient: usize, dim: usize, rng: &mut R) -> Result<Self> {
        if dim > ambient {
            return Err(Error::InvalidParameter(format!("dimension {dim} exceeds ambient {ambient}")));
        }
        loop {
            let rows = (0..dim)
                .map(|_| (0..ambient).map(|_| field.sample(rng)).collect())
                .collect();
            let s = Self::span(field, ambient, rows)?;
            if s.dim() == dim {
                return Ok(s);
            }
        }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<F::Elem>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }

    fn same_ambient(&self, other: &Self) -> Result<()> {
        if self.ambient != other.ambient {
            Err(Error::AmbientMismatch(self.ambient, other.ambient))
        } else {
            Ok(())
        }
    }

    /// `U + V`.
    pub fn sum(&self, other: &Self) -> Result<Self> {
        self.same_ambient(other)?;
        let rows = self.basis.iter().chain(&other.basis).cloned().collect();
        Self::span(&self.field, self.ambient, rows)
    }

    /// `U ∩ V` by the Zassenhaus construction: reduce `[u | u]` and `[v | 0]`
    /// together; rows with vanishing left half span the intersection.
    pub fn intersection(&self, other: &Self) -> Result<Self> {
        self.same_ambient(other)?;
        let n = self.ambient;
        let f = &self.field;
        let mut rows = Vec::with_capacity(self.dim() + other.dim());
        for u in &self.basis {
            rows.push(u.iter().chain(u).cloned().collect());
        }
        for v in &other.basis {
            rows.push(v.iter().cloned().chain(std::iter::repeat_n(f.zero(), n)).collect());
        }
        let e = row_reduce(f, rows, 2 * n);
        let meet = e
            .rows
            .into_iter()
            .zip(e.pivots)
            .filter(|(_, pivot)| *pivot >= n)
            .map(|(row, _)| row[n..].to_vec())
            .collect();
        Self::span(f, n, meet)
    }

    pub fn contains_vector(&self, v: &[F::Elem]) -> bool {
        if v.len() != self.ambient {
            return false;
        }
        let mut rows = self.basis.clone();
        rows.push(v.to_vec());
        row_reduce(&self.field, rows, self.ambient).rank() == self.dim()
    }

    pub fn is_subspace_of(&self, other: &Self) -> bool {
        self.ambient == other.ambient && self.basis.iter().all(|v| other.contains_vector(v))
    }

    /// Re-expresses `self ⊆ frame` in the coordinates given by the canonical
    /// basis of `frame`, yielding a subspace of `F^{dim frame}`.
    pub fn coordinates_in(&self, frame: &Self) -> Result<Self> {
        self.same_ambient(frame)?;
        let f = &self.field;
        let mut rows = Vec::with_capacity(self.dim());
        for x in &self.basis {
            // In reduced echelon form the coefficient on basis row l is the
            // entry of x at that row's pivot column.
            let coords: Vec<F::Elem> = frame.pivots.iter().map(|&c| x[c].clone()).collect();
            let mut rebuilt = vec![f.zero(); self.ambient];
            for (c, w) in coords.iter().zip(&frame.basis) {
                for (r, wi) in rebuilt.iter_mut().zip(w) {
                    *r = f.add(r, &f.mul(c, wi));
                }
            }
            if &rebuilt != x {
                return Err(Error::InvalidParameter("subspace is not contained in the frame".into()));
            }
            rows.push(coords);
        }
        Self::span(f, frame.dim(), rows)
    }
}

/// `dim U + dim V - dim(U + V)`.
pub fn intersection_dim<F: Field>(u: &Subspace<F>, v: &Subspace<F>) -> Result<usize> {
    Ok(u.dim() + v.dim() - u.sum(v)?.dim())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exterior::field::{PrimeField, RationalField};
    use rand::SeedableRng;

    fn f() -> PrimeField {
        PrimeField::default()
    }

    fn vecs(field: &PrimeField, rows: &[&[i64]]) -> Vec<Vec<u64>> {
        rows.iter().map(|r| r.iter().map(|&x| field.int(x)).collect()).collect()
    }

    fn span(rows: &[&[i64]], n: usize) -> Subspace<PrimeField> {
        Subspace::span(&f(), n, vecs(&f(), rows)).unwrap()
    }

    #[test]
    fn canonical_form() {
        let a = span(&[&[1, 1], &[0, 1]], 2);
        assert_eq!(a, Subspace::full(&f(), 2));
        let b = span(&[&[2, 2, 0], &[3, 3, 0]], 3);
        assert_eq!(b.dim(), 1);
        assert_eq!(b.basis(), &vecs(&f(), &[&[1, 1, 0]])[..]);
        assert!(Subspace::span(&f(), 2, vecs(&f(), &[&[1, 2, 3]])).is_err());
    }

    #[test]
    fn intersection_dims() {
        let u = span(&[&[1, 0, 0], &[0, 1, 0]], 3);
        let v = span(&[&[0, 1, 0], &[0, 0, 1]], 3);
        assert_eq!(intersection_dim(&u, &v).unwrap(), 1);
        assert_eq!(u.intersection(&v).unwrap(), span(&[&[0, 1, 0]], 3));
        assert_eq!(intersection_dim(&u, &u).unwrap(), 2);
        let e1 = Subspace::coordinate(&f(), 3, SubsetMask::from_bits(0b001));
        let e23 = Subspace::coordinate(&f(), 3, SubsetMask::from_bits(0b110));
        assert_eq!(intersection_dim(&e1, &e23).unwrap(), 0);
        assert!(e1.intersection(&e23).unwrap().dim() == 0);
        let other = Subspace::zero(&f(), 4);
        assert_eq!(intersection_dim(&e1, &other), Err(Error::AmbientMismatch(3, 4)));
    }

    #[test]
    fn zassenhaus_matches_rank_formula() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let small = PrimeField::new(5).unwrap();
        for n in 1..=6 {
            for _ in 0..200 {
                let du = rng.random_range(0..=n);
                let dv = rng.random_range(0..=n);
                let u = Subspace::random(&small, n, du, &mut rng).unwrap();
                let v = Subspace::random(&small, n, dv, &mut rng).unwrap();
                let meet = u.intersection(&v).unwrap();
                assert_eq!(meet.dim(), intersection_dim(&u, &v).unwrap());
                assert!(meet.is_subspace_of(&u) && meet.is_subspace_of(&v));
            }
        }
    }

    #[test]
    fn coordinates_in_frame() {
        let frame = span(&[&[1, 0, 1], &[0, 1, 1]], 3);
        let line = span(&[&[1, 1, 2]], 3);
        let local = line.coordinates_in(&frame).unwrap();
        assert_eq!(local.ambient(), 2);
        assert_eq!(local.basis(), &vecs(&f(), &[&[1, 1]])[..]);
        let outside = span(&[&[1, 0, 0]], 3);
        assert!(outside.coordinates_in(&frame).is_err());
    }

    #[test]
    fn rational_intersections() {
        let q = RationalField;
        let row = |xs: &[i64]| xs.iter().map(|&x| q.int(x)).collect::<Vec<_>>();
        let u = Subspace::span(&q, 3, vec![row(&[1, 1, 0])]).unwrap();
        let v = Subspace::span(&q, 3, vec![row(&[0, 1, 1])]).unwrap();
        assert_eq!(intersection_dim(&u, &v).unwrap(), 0);
        let w = Subspace::span(&q, 3, vec![row(&[1, 2, 1]), row(&[1, 0, 0])]).unwrap();
        assert_eq!(intersection_dim(&w, &u.sum(&v).unwrap()).unwrap(), 1);
    }
}
