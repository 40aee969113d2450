//! Random subspaces in general position and the reduction of a
//! `t`-intersecting subspace system to the `t = 0` case.

use rand::Rng;

use super::field::Field;
use super::subspace::{intersection_dim, Subspace};
use crate::error::{Error, Result};

/// Pair `(U_i, V_i)` of subspaces of a common ambient space.
pub type SubspacePair<F> = (Subspace<F>, Subspace<F>);

/// Indices of constraints `W_i` with `dim(W_i ∩ candidate) ≠ max(dim W_i - t, 0)`.
pub fn general_position_violations<F: Field>(
    constraints: &[Subspace<F>],
    candidate: &Subspace<F>,
    codim: usize,
) -> Result<Vec<usize>> {
    let mut bad = Vec::new();
    for (i, w) in constraints.iter().enumerate() {
        if intersection_dim(w, candidate)? != w.dim().saturating_sub(codim) {
            bad.push(i);
        }
    }
    Ok(bad)
}

/// Samples a random subspace of codimension `codim` until every constraint
/// `W_i` meets it in dimension exactly `max(dim W_i - codim, 0)`.
///
/// Full-space constraints are satisfied by every candidate and so impose
/// nothing. A try is spent on every draw, including rank-deficient ones.
pub fn random_general_position_subspace<F: Field, R: Rng + ?Sized>(
    constraints: &[Subspace<F>],
    ambient: usize,
    codim: usize,
    field: &F,
    rng: &mut R,
    max_tries: usize,
) -> Result<Subspace<F>> {
    if codim > ambient {
        return Err(Error::InvalidParameter(format!("codimension {codim} exceeds ambient {ambient}")));
    }
    if let Some(w) = constraints.iter().find(|w| w.ambient() != ambient) {
        return Err(Error::AmbientMismatch(ambient, w.ambient()));
    }
    let k = ambient - codim;
    if k == ambient {
        return Ok(Subspace::full(field, ambient));
    }
    let mut violated = Vec::new();
    for _ in 0..max_tries {
        let rows = (0..k)
            .map(|_| (0..ambient).map(|_| field.sample(rng)).collect())
            .collect();
        let candidate = Subspace::span(field, ambient, rows)?;
        if candidate.dim() < k {
            continue;
        }
        violated = general_position_violations(constraints, &candidate, codim)?;
        if violated.is_empty() {
            return Ok(candidate);
        }
    }
    Err(Error::GeneralPositionExhausted { tries: max_tries, violated })
}

fn push_unique<F: Field>(list: &mut Vec<Subspace<F>>, s: Subspace<F>) {
    if !s.is_full() && !list.contains(&s) {
        list.push(s);
    }
}

/// The subspaces a codimension-`t` cut must be generic against: every
/// `U_i`, `V_i`, `U_i ∩ V_i`, and the cross terms `U_i ∩ V_j` for `i < j`.
/// Duplicates and full-space entries are dropped.
pub fn reduction_constraints<F: Field>(pairs: &[SubspacePair<F>]) -> Result<Vec<Subspace<F>>> {
    let mut out = Vec::new();
    for (i, (u, v)) in pairs.iter().enumerate() {
        push_unique(&mut out, u.clone());
        push_unique(&mut out, v.clone());
        push_unique(&mut out, u.intersection(v)?);
        for (_, vj) in &pairs[i + 1..] {
            push_unique(&mut out, u.intersection(vj)?);
        }
    }
    Ok(out)
}

/// The reduced system together with the cut `W_0` that produced it.
#[derive(Debug, Clone)]
pub struct Reduction<F: Field> {
    pub cut: Subspace<F>,
    pub pairs: Vec<SubspacePair<F>>,
}

/// Intersects every `U_i`, `V_i` with a random `W_0` of codimension `t` in
/// general position and rewrites the results in coordinates of `W_0`
/// (ambient dimension `n - t`). Requires `dim(U_i ∩ V_i) <= t`. Afterwards
/// `U'_i ∩ V'_i = 0`, and `dim(U'_i ∩ V'_j) = dim(U_i ∩ V_j) - t` whenever
/// the original exceeded `t`.
pub fn reduce_to_zero<F: Field, R: Rng + ?Sized>(
    pairs: &[SubspacePair<F>],
    t: usize,
    field: &F,
    rng: &mut R,
    max_tries: usize,
) -> Result<Reduction<F>> {
    let Some(ambient) = pairs.first().map(|(u, _)| u.ambient()) else {
        return Ok(Reduction { cut: Subspace::zero(field, 0), pairs: Vec::new() });
    };
    for (index, (u, v)) in pairs.iter().enumerate() {
        if u.ambient() != ambient || v.ambient() != ambient {
            return Err(Error::AmbientMismatch(ambient, u.ambient().max(v.ambient())));
        }
        let dim = intersection_dim(u, v)?;
        if dim > t {
            return Err(Error::DiagonalTooLarge { index, dim, t });
        }
    }
    if t > ambient {
        return Err(Error::InvalidParameter(format!("t = {t} exceeds ambient {ambient}")));
    }
    if t == 0 {
        return Ok(Reduction { cut: Subspace::full(field, ambient), pairs: pairs.to_vec() });
    }
    let constraints = reduction_constraints(pairs)?;
    let cut = random_general_position_subspace(&constraints, ambient, t, field, rng, max_tries)?;
    let mut reduced = Vec::with_capacity(pairs.len());
    for (u, v) in pairs {
        let u_cut = u.intersection(&cut)?.coordinates_in(&cut)?;
        let v_cut = v.intersection(&cut)?.coordinates_in(&cut)?;
        reduced.push((u_cut, v_cut));
    }
    // audit: diagonal cut to zero, cross terms above t keep positive dimension
    for (i, (u, v)) in reduced.iter().enumerate() {
        if intersection_dim(u, v)? != 0 {
            return Err(Error::OracleMismatch(format!("pair {i} still meets itself after reduction")));
        }
        for (j, (_, vj)) in reduced.iter().enumerate().skip(i + 1) {
            let before = intersection_dim(&pairs[i].0, &pairs[j].1)?;
            let after = intersection_dim(u, vj)?;
            if after != before.saturating_sub(t) {
                return Err(Error::OracleMismatch(format!("cell ({i}, {j}) lost genericity")));
            }
        }
    }
    Ok(Reduction { cut, pairs: reduced })
}
