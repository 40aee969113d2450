//! Machine-checkable certificates for `m <= 2^(n-t)` on concrete subspace
//! systems.

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::field::Field;
use super::multivector::{subspace_wedge, triangular_independence, trivial_intersection, MAX_ALGEBRA_DIM};
use super::position::{reduce_to_zero, SubspacePair};
use super::subspace::{intersection_dim, Subspace};
use crate::count::binomial;
use crate::error::{Error, Result};
use crate::sets::SetPairSystem;

/// Default number of general-position draws before giving up.
pub const DEFAULT_MAX_TRIES: usize = 5;

/// Why a certificate could not be issued, with the offending 0-based cell.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateFailure {
    pub i: usize,
    pub j: usize,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub m: usize,
    pub ambient: usize,
    pub t: usize,
    /// Ambient dimension after cutting by a generic codimension-`t` subspace.
    pub reduced_ambient: usize,
    /// `pattern[i][j] = 1` iff `(∧U_i) ∧ (∧V_j) ≠ 0` in the reduced system.
    pub pattern: Vec<Vec<u8>>,
    /// Rank of the `∧U_i`, present once the triangular pattern is confirmed.
    pub rank: Option<usize>,
    /// `2^(n - t)`.
    pub bound: u64,
    /// Common grade of the `∧U_i`, when they share one.
    pub grade: Option<usize>,
    /// Dimension `C(n - t, grade)` of that graded component.
    pub grade_bound: Option<u64>,
    pub verdict: bool,
    pub failure: Option<CertificateFailure>,
    pub field_modulus: u64,
    pub seed: Option<u64>,
}

impl Certificate {
    fn failed(m: usize, ambient: usize, t: usize, modulus: u64, failure: CertificateFailure) -> Self {
        Certificate {
            m,
            ambient,
            t,
            reduced_ambient: ambient.saturating_sub(t),
            pattern: Vec::new(),
            rank: None,
            bound: 1u64 << ambient.saturating_sub(t).min(63),
            grade: None,
            grade_bound: None,
            verdict: false,
            failure: Some(failure),
            field_modulus: modulus,
            seed: None,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }
}

/// Maps `(A_i, B_i)` to the coordinate subspaces `(span{e_j : j ∈ A_i}, span{e_j : j ∈ B_i})`.
pub fn lift_set_system<F: Field>(system: &SetPairSystem, field: &F) -> Result<Vec<SubspacePair<F>>> {
    let n = system.ground().get();
    if n > MAX_ALGEBRA_DIM {
        return Err(Error::TooLarge { what: "lifted ambient dimension", size: n as u128, cap: MAX_ALGEBRA_DIM as u128 });
    }
    Ok(system
        .pairs()
        .iter()
        .map(|p| (Subspace::coordinate(field, n, p.a), Subspace::coordinate(field, n, p.b)))
        .collect())
}

/// Certifies `m <= 2^(n-t)` for a skew `t`-intersecting subspace system.
///
/// Hypotheses (`dim(U_i ∩ V_i) <= t`, `dim(U_i ∩ V_j) > t` for `i < j`) are
/// checked first; a violation yields a failed certificate naming the cell.
/// For `t > 0` the system is cut down by a random codimension-`t` subspace
/// in general position, then the wedge table `(∧U_i) ∧ (∧V_j)` is built and
/// the triangular criterion plus an explicit rank computation confirm that
/// the `∧U_i` are independent in the `2^(n-t)`-dimensional algebra.
pub fn certify_skew_system<F: Field, R: Rng + ?Sized>(
    pairs: &[SubspacePair<F>],
    t: usize,
    field: &F,
    rng: &mut R,
    max_tries: usize,
) -> Result<Certificate> {
    let m = pairs.len();
    let ambient = pairs.first().map_or(0, |(u, _)| u.ambient());
    let modulus = field.characteristic();
    if ambient > MAX_ALGEBRA_DIM {
        return Err(Error::TooLarge { what: "certificate ambient dimension", size: ambient as u128, cap: MAX_ALGEBRA_DIM as u128 });
    }
    if t > ambient {
        return Err(Error::InvalidParameter(format!("t = {t} exceeds ambient {ambient}")));
    }
    for (u, v) in pairs {
        if u.ambient() != ambient || v.ambient() != ambient {
            return Err(Error::AmbientMismatch(ambient, u.ambient().max(v.ambient())));
        }
    }
    for i in 0..m {
        let diag = intersection_dim(&pairs[i].0, &pairs[i].1)?;
        if diag > t {
            let reason = format!("dim(U_i ∩ V_i) = {diag} exceeds t = {t}");
            return Ok(Certificate::failed(m, ambient, t, modulus, CertificateFailure { i, j: i, reason }));
        }
        for j in i + 1..m {
            let cross = intersection_dim(&pairs[i].0, &pairs[j].1)?;
            if cross <= t {
                let reason = format!("dim(U_i ∩ V_j) = {cross} does not exceed t = {t}");
                return Ok(Certificate::failed(m, ambient, t, modulus, CertificateFailure { i, j, reason }));
            }
        }
    }

    let reduced = reduce_to_zero(pairs, t, field, rng, max_tries)?.pairs;
    let reduced_ambient = ambient - t;
    for (i, (u, v)) in reduced.iter().enumerate() {
        if !trivial_intersection(u, v)? {
            return Err(Error::OracleMismatch(format!("pair {i} meets itself after reduction")));
        }
    }
    let us: Vec<_> = reduced.iter().map(|(u, _)| subspace_wedge(u)).collect();
    let vs: Vec<_> = reduced.iter().map(|(_, v)| subspace_wedge(v)).collect();
    let check = triangular_independence(&us, &vs)?;
    let bound = 1u64 << reduced_ambient;

    let grade = match us.first().and_then(|u| u.grade()) {
        Some(g) if us.iter().all(|u| u.grade() == Some(g)) => Some(g),
        _ => None,
    };
    let grade_bound = grade.map(|g| {
        u64::try_from(binomial(reduced_ambient as u64, g as i64)).expect("C(20, k) fits in u64")
    });

    let failure = check.failure.map(|c| CertificateFailure {
        i: c.i,
        j: c.j,
        reason: if c.i == c.j {
            "diagonal wedge vanishes".to_string()
        } else {
            "upper-triangle wedge is nonzero".to_string()
        },
    });
    let verdict = check.independent() && (m as u64) <= bound;
    Ok(Certificate {
        m,
        ambient,
        t,
        reduced_ambient,
        pattern: check
            .pattern
            .iter()
            .map(|row| row.iter().map(|&x| x as u8).collect())
            .collect(),
        rank: check.rank,
        bound,
        grade,
        grade_bound,
        verdict,
        failure,
        field_modulus: modulus,
        seed: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{full_power_set_system, furedi_construction, t_system_construction};
    use crate::exterior::field::PrimeField;
    use crate::sets::{GroundSize, SetPair, SubsetMask};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn certify(system: &SetPairSystem, t: usize, seed: u64) -> Certificate {
        let f = PrimeField::default();
        let pairs = lift_set_system(system, &f).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        certify_skew_system(&pairs, t, &f, &mut rng, DEFAULT_MAX_TRIES).unwrap()
    }

    #[test]
    fn lift_preserves_intersection_sizes() {
        let f = PrimeField::default();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let g = GroundSize::new(6).unwrap();
        let pairs: Vec<_> = (0..100)
            .map(|_| SetPair::new(SubsetMask::from_bits(rng.random_range(0..64)), SubsetMask::from_bits(rng.random_range(0..64))))
            .collect();
        let system = SetPairSystem::new(g, pairs).unwrap();
        let lifted = lift_set_system(&system, &f).unwrap();
        for (i, p) in system.pairs().iter().enumerate() {
            for (j, q) in system.pairs().iter().enumerate().take(10) {
                assert_eq!(intersection_dim(&lifted[i].0, &lifted[j].1).unwrap(), (p.a & q.b).len());
            }
        }
        let empty = SetPairSystem::new(g, vec![SetPair::new(SubsetMask::EMPTY, SubsetMask::EMPTY)]).unwrap();
        let l = lift_set_system(&empty, &f).unwrap();
        assert_eq!(l[0].0.dim(), 0);
        assert_eq!(l[0].1.dim(), 0);
    }

    #[test]
    fn full_power_set_n2() {
        let c = certify(&full_power_set_system(2).unwrap(), 0, 0);
        assert!(c.verdict);
        assert_eq!(c.rank, Some(4));
        assert_eq!(c.bound, 4);
        assert_eq!(c.m, 4);
        // lower triangle entries exist too; the diagonal and upper triangle are fixed
        for i in 0..4 {
            assert_eq!(c.pattern[i][i], 1);
            for j in i + 1..4 {
                assert_eq!(c.pattern[i][j], 0);
            }
        }
    }

    #[test]
    fn single_full_pair() {
        let f = PrimeField::default();
        let pairs = vec![(Subspace::full(&f, 3), Subspace::zero(&f, 3))];
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let c = certify_skew_system(&pairs, 0, &f, &mut rng, 5).unwrap();
        assert!(c.verdict);
        assert_eq!(c.m, 1);
    }

    #[test]
    fn t_system_needs_reduction() {
        for seed in 0..5 {
            let c = certify(&t_system_construction(3, 1).unwrap(), 1, seed);
            assert!(c.verdict, "{c:?}");
            assert_eq!(c.m, 4);
            assert_eq!(c.bound, 4);
            assert_eq!(c.rank, Some(4));
            assert_eq!(c.reduced_ambient, 2);
        }
    }

    #[test]
    fn furedi_lands_in_one_grade() {
        let c = certify(&furedi_construction(2, 1, 1).unwrap(), 1, 3);
        assert!(c.verdict);
        assert_eq!(c.grade, Some(2));
        assert_eq!(c.grade_bound, Some(3));
        assert_eq!(c.rank, Some(3));
    }

    #[test]
    fn violations_become_failed_certificates() {
        // reversed order breaks the skew condition at (0, 1)
        let mut pairs = full_power_set_system(1).unwrap().into_pairs();
        pairs.reverse();
        let system = SetPairSystem::new(GroundSize::new(1).unwrap(), pairs).unwrap();
        let c = certify(&system, 0, 0);
        assert!(!c.verdict);
        let failure = c.failure.unwrap();
        assert_eq!((failure.i, failure.j), (0, 1));

        let g = GroundSize::new(2).unwrap();
        let bad = SetPairSystem::new(g, vec![SetPair::new(SubsetMask::from_bits(1), SubsetMask::from_bits(1))]).unwrap();
        let c = certify(&bad, 0, 0);
        assert_eq!(c.failure.map(|f| (f.i, f.j)), Some((0, 0)));
    }

    #[test]
    fn certificates_serialize() {
        let c = certify(&full_power_set_system(1).unwrap(), 0, 0).with_seed(42);
        let json = serde_json::to_string(&c).unwrap();
        assert!(json.contains("\"pattern\":[[1,0],[1,1]]"), "{json}");
        let back: Certificate = serde_json::from_str(&json).unwrap();
        assert_eq!(back, c);
    }
}
