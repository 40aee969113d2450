//! Generators for the extremal systems: the full complement system, the
//! uniform and non-uniform t-system constructions, the two families of full
//! d-partitions, and the weight-increasing saturation move.

use std::cmp::Reverse;
use std::collections::HashSet;

use crate::count::{multinomial, Rational};
use crate::dpartition::{DPartition, DPartitionSystem};
use crate::error::{Error, Result};
use crate::sets::{GroundSize, SetPair, SetPairSystem, SubsetMask};

/// Largest `n` for which power-set sized systems are materialized.
pub const MAX_MATERIALIZED_N: usize = 20;
const MAX_PAIRS: u128 = 1 << MAX_MATERIALIZED_N;

fn ground(n: usize) -> Result<GroundSize> {
    GroundSize::new(n)
}

fn check_materialized(what: &'static str, size: u128) -> Result<()> {
    if size > MAX_PAIRS {
        Err(Error::TooLarge { what, size, cap: MAX_PAIRS })
    } else {
        Ok(())
    }
}

/// `{(A, [n] \ A)}` over every `A ⊆ [n]`, by `|A|` non-increasing then
/// ascending mask.
pub fn full_power_set_system(n: usize) -> Result<SetPairSystem> {
    if n > MAX_MATERIALIZED_N {
        return Err(Error::TooLarge { what: "full power set system", size: 1u128 << n.min(127), cap: MAX_PAIRS });
    }
    let g = ground(n)?;
    let mut subsets: Vec<SubsetMask> = g.subsets().collect();
    subsets.sort_by_key(|s| (Reverse(s.len()), *s));
    SetPairSystem::from_family(&subsets, g)
}

/// The complement system of an ordering of `2^[n]` is skew exactly when no
/// earlier set is contained in a later one. Evaluates both sides and
/// returns their conjunction; `subsets` must list every subset once.
pub fn valid_complement_ordering(subsets: &[SubsetMask], n: usize) -> Result<bool> {
    let g = ground(n)?;
    if n > MAX_MATERIALIZED_N || subsets.len() != 1usize << n {
        return Err(Error::NotAPermutation(n));
    }
    let mut seen = HashSet::with_capacity(subsets.len());
    for &s in subsets {
        if !g.contains(s) || !seen.insert(s) {
            return Err(Error::NotAPermutation(n));
        }
    }
    let direct = complement_ordering_is_skew(subsets, g)?;
    let containment = no_forward_containment(subsets);
    Ok(direct && containment)
}

/// Builds `{(A_i, [n] \ A_i)}` in the given order and runs the skew verifier.
pub fn complement_ordering_is_skew(subsets: &[SubsetMask], ground: GroundSize) -> Result<bool> {
    Ok(SetPairSystem::from_family(subsets, ground)?.is_skew_bollobas())
}

/// No `A_i ⊆ A_j` with `i < j`.
pub fn no_forward_containment(subsets: &[SubsetMask]) -> bool {
    subsets
        .iter()
        .enumerate()
        .all(|(i, &a)| subsets[i + 1..].iter().all(|&b| !a.is_subset_of(b)))
}

/// All `k`-subsets of the bit positions in `0..width`, ascending mask order.
fn k_subsets(width: usize, k: usize) -> Vec<u64> {
    if k > width {
        return Vec::new();
    }
    if k == 0 {
        return vec![0];
    }
    let limit: u128 = 1u128 << width;
    let mut out = Vec::new();
    let mut x: u128 = (1u128 << k) - 1;
    while x < limit {
        out.push(x as u64);
        // Gosper's hack
        let c = x & x.wrapping_neg();
        let r = x + c;
        x = (((r ^ x) >> 2) / c) | r;
    }
    out
}

/// Pairs `(A, B(A))` over `A = [t] ∪ S` with `S` an `a`-subset of
/// `[t+1, a+b+t]` and `B(A) = [t] ∪ ([t+1, a+b+t] \ A)`, ascending mask of `A`.
pub fn furedi_construction(a: usize, b: usize, t: usize) -> Result<SetPairSystem> {
    let n = a + b + t;
    let g = ground(n)?;
    let size = crate::count::binomial((a + b) as u64, a as i64);
    let size: u128 = size.try_into().unwrap_or(u128::MAX);
    check_materialized("Füredi construction", size)?;
    let core = SubsetMask::prefix(t);
    let pairs = k_subsets(a + b, a)
        .into_iter()
        .map(|s| {
            let free = SubsetMask::from_bits(s << t);
            let rest = SubsetMask::from_bits(((1u128 << (a + b)) as u64).wrapping_sub(1) << t);
            SetPair::new(core | free, core | (rest - free))
        })
        .collect();
    SetPairSystem::new(g, pairs)
}

/// Pairs `(A_i, [t] ∪ ([t+1, n] \ A_i))` over every `A_i ⊇ [t]`, ordered by
/// `|A_i|` non-increasing then ascending mask.
pub fn t_system_construction(n: usize, t: usize) -> Result<SetPairSystem> {
    if t > n {
        return Err(Error::InvalidParameter(format!("t = {t} exceeds n = {n}")));
    }
    if n - t > MAX_MATERIALIZED_N {
        return Err(Error::TooLarge { what: "t-system construction", size: 1u128 << (n - t).min(127), cap: MAX_PAIRS });
    }
    let g = ground(n)?;
    let core = SubsetMask::prefix(t);
    let rest = g.full() - core;
    let mut sets: Vec<SubsetMask> = (0u64..1 << (n - t))
        .map(|s| core | SubsetMask::from_bits(s << t))
        .collect();
    sets.sort_by_key(|s| (Reverse(s.len()), *s));
    let pairs = sets.into_iter().map(|a| SetPair::new(a, core | (rest - a))).collect();
    SetPairSystem::new(g, pairs)
}

/// Every full d-partition of `[n]` (block labels per element) in base `d`.
fn full_dpartitions(n: usize, d: usize) -> Vec<DPartition> {
    let mut out = Vec::new();
    let mut labels = vec![0usize; n];
    loop {
        let mut blocks = vec![SubsetMask::EMPTY; d];
        for (e, &label) in labels.iter().enumerate() {
            blocks[label] = blocks[label].with(e + 1);
        }
        out.push(DPartition::new(blocks).expect("labels give disjoint blocks"));
        let mut pos = 0;
        loop {
            if pos == n {
                return out;
            }
            labels[pos] += 1;
            if labels[pos] < d {
                break;
            }
            labels[pos] = 0;
            pos += 1;
        }
    }
}

/// All `d^n` full d-partitions of `[n]`. Size vectors appear in
/// lexicographically non-increasing order, so a member with a larger first
/// differing block size always comes earlier; ties are broken by ascending
/// block masks.
pub fn lex_full_dpartitions(n: usize, d: usize) -> Result<DPartitionSystem> {
    if d == 0 {
        return Err(Error::InvalidParameter("d must be at least 1".into()));
    }
    let count = (d as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    check_materialized("lexicographic d-partition system", count)?;
    let g = ground(n)?;
    let mut members = full_dpartitions(n, d);
    members.sort_by(|x, y| y.sizes().cmp(&x.sizes()).then_with(|| x.blocks().cmp(y.blocks())));
    DPartitionSystem::new(g, d, members)
}

/// Largest ground set accepted by [`all_full_dpartitions`].
pub const MAX_COMPOSITION_TOTAL: usize = 12;

/// All full d-partitions of `[b]`, `b = Σ parts`, whose block `p` has exactly
/// `parts[p]` elements, in ascending block-mask order. Parts must be positive.
pub fn all_full_dpartitions(parts: &[usize]) -> Result<DPartitionSystem> {
    if parts.is_empty() {
        return Err(Error::InvalidParameter("at least one part is required".into()));
    }
    if let Some(p) = parts.iter().position(|&a| a == 0) {
        return Err(Error::InvalidParameter(format!("part {} is zero; parts must be positive", p + 1)));
    }
    let b: usize = parts.iter().sum();
    if b > MAX_COMPOSITION_TOTAL {
        return Err(Error::TooLarge { what: "composition total", size: b as u128, cap: MAX_COMPOSITION_TOTAL as u128 });
    }
    let g = ground(b)?;
    let d = parts.len();
    let mut members: Vec<DPartition> = Vec::new();
    // Fill blocks left to right, each from the elements not yet used.
    fn fill(parts: &[usize], used: u64, width: usize, acc: &mut Vec<SubsetMask>, out: &mut Vec<DPartition>) {
        let p = acc.len();
        if p == parts.len() {
            out.push(DPartition::new(acc.clone()).expect("disjoint by construction"));
            return;
        }
        let free: Vec<usize> = (0..width).filter(|i| used >> i & 1 == 0).collect();
        for choice in k_subsets(free.len(), parts[p]) {
            let mut block = 0u64;
            for (k, &i) in free.iter().enumerate() {
                if choice >> k & 1 == 1 {
                    block |= 1 << i;
                }
            }
            acc.push(SubsetMask::from_bits(block));
            fill(parts, used | block, width, acc, out);
            acc.pop();
        }
    }
    fill(parts, 0, b, &mut Vec::with_capacity(d), &mut members);
    members.sort();
    debug_assert_eq!(
        num_bigint::BigUint::from(members.len()),
        multinomial(&parts.iter().map(|&a| a as u64).collect::<Vec<_>>())
    );
    DPartitionSystem::new(g, d, members)
}

/// One application of the augmentation move and the weights around it.
#[derive(Debug, Clone)]
pub struct SaturationStep {
    /// Index of the pair that was split.
    pub index: usize,
    /// 1-based element added.
    pub element: usize,
    pub weight_before: Rational,
    pub weight_after: Rational,
    pub system: SetPairSystem,
}

/// Replaces the lowest-index pair with `A_i ∪ B_i ≠ [n]` by
/// `(A_i ∪ {x}, B_i)` followed by `(A_i, B_i ∪ {x})`, `x` the smallest
/// missing element. Returns `None` when every pair is already full.
pub fn saturation_step(system: &SetPairSystem) -> Option<SaturationStep> {
    let g = system.ground();
    let full = g.full();
    let (index, pair) = system
        .pairs()
        .iter()
        .enumerate()
        .find(|(_, p)| (p.a | p.b) != full)?;
    let missing = full - (pair.a | pair.b);
    let element = missing.indices().next().expect("nonempty") + 1;
    let mut pairs = Vec::with_capacity(system.len() + 1);
    pairs.extend_from_slice(&system.pairs()[..index]);
    pairs.push(SetPair::new(pair.a.with(element), pair.b));
    pairs.push(SetPair::new(pair.a, pair.b.with(element)));
    pairs.extend_from_slice(&system.pairs()[index + 1..]);
    let next = SetPairSystem::new(g, pairs).expect("masks stay inside the ground set");
    Some(SaturationStep {
        index,
        element,
        weight_before: system.weight(),
        weight_after: next.weight(),
        system: next,
    })
}

/// Every step taken by [`saturate`], in order.
pub fn saturation_trace(system: &SetPairSystem) -> Result<Vec<SaturationStep>> {
    if !system.is_skew_bollobas() {
        return Err(Error::NotSkewBollobas);
    }
    let mut steps = Vec::new();
    let mut current = system.clone();
    while let Some(step) = saturation_step(&current) {
        current = step.system.clone();
        steps.push(step);
    }
    Ok(steps)
}

/// Applies the augmentation move until every pair has `B_i = [n] \ A_i`.
/// The input must be a skew Bollobás system.
pub fn saturate(system: &SetPairSystem) -> Result<SetPairSystem> {
    if !system.is_skew_bollobas() {
        return Err(Error::NotSkewBollobas);
    }
    let mut current = system.clone();
    while let Some(step) = saturation_step(&current) {
        current = step.system;
    }
    Ok(current)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::count::binomial;
    use num_bigint::BigInt;
    use proptest::prelude::*;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;

    fn rat(p: i64, q: i64) -> Rational {
        Rational::new(p.into(), q.into())
    }

    fn int(v: impl Into<BigInt>) -> Rational {
        Rational::from_integer(v.into())
    }

    fn set(elements: &[usize]) -> SubsetMask {
        SubsetMask::from_elements(elements.iter().copied(), GroundSize::new(64).unwrap()).unwrap()
    }

    fn sys(n: usize, pairs: &[(&[usize], &[usize])]) -> SetPairSystem {
        let pairs = pairs.iter().map(|(a, b)| SetPair::new(set(a), set(b))).collect();
        SetPairSystem::new(GroundSize::new(n).unwrap(), pairs).unwrap()
    }

    #[test]
    fn full_power_set_examples() {
        let s = full_power_set_system(2).unwrap();
        assert_eq!(s, sys(2, &[(&[1, 2], &[]), (&[1], &[2]), (&[2], &[1]), (&[], &[1, 2])]));
        assert_eq!(s.weight(), rat(3, 1));
        assert_eq!(full_power_set_system(0).unwrap(), sys(0, &[(&[], &[])]));
        assert_eq!(full_power_set_system(0).unwrap().weight(), rat(1, 1));
        assert_eq!(full_power_set_system(1).unwrap().weight(), rat(2, 1));
        assert!(full_power_set_system(21).is_err());
        for n in 0..=10 {
            let s = full_power_set_system(n).unwrap();
            assert_eq!(s.len(), 1 << n);
            assert!(s.is_skew_bollobas());
            assert_eq!(s.weight(), int(n as u64 + 1));
        }
    }

    #[test]
    fn complement_orderings() {
        let g2 = GroundSize::new(2).unwrap();
        let decreasing: Vec<_> = full_power_set_system(2).unwrap().pairs().iter().map(|p| p.a).collect();
        assert!(valid_complement_ordering(&decreasing, 2).unwrap());
        assert!(!valid_complement_ordering(&[set(&[]), set(&[1])], 1).unwrap());
        assert!(valid_complement_ordering(&[set(&[1]), set(&[])], 1).unwrap());
        assert_eq!(valid_complement_ordering(&[set(&[1]), set(&[1])], 1), Err(Error::NotAPermutation(1)));
        assert_eq!(valid_complement_ordering(&[set(&[1])], 1), Err(Error::NotAPermutation(1)));
        assert!(complement_ordering_is_skew(&decreasing, g2).unwrap());
    }

    /// Enumerates every permutation of 2^[3] that extends reverse inclusion
    /// (each set before all of its proper subsets); all must be valid.
    #[test]
    fn every_reverse_inclusion_extension_is_valid_for_n3() {
        let all: Vec<SubsetMask> = GroundSize::new(3).unwrap().subsets().collect();
        let mut count = 0;
        fn extend(all: &[SubsetMask], placed: &mut Vec<SubsetMask>, count: &mut usize) {
            if placed.len() == all.len() {
                assert!(valid_complement_ordering(placed, 3).unwrap());
                *count += 1;
                return;
            }
            for &s in all {
                if placed.contains(&s) {
                    continue;
                }
                // every strict superset must already be placed
                if all.iter().any(|&t| t != s && s.is_subset_of(t) && !placed.contains(&t)) {
                    continue;
                }
                placed.push(s);
                extend(all, placed, count);
                placed.pop();
            }
        }
        extend(&all, &mut Vec::new(), &mut count);
        assert_eq!(count, 48);
    }

    #[test]
    fn containment_criterion_agrees_with_direct_check() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for n in 0..=4 {
            let g = GroundSize::new(n).unwrap();
            let mut subsets: Vec<_> = g.subsets().collect();
            for _ in 0..1000 {
                subsets.shuffle(&mut rng);
                assert_eq!(complement_ordering_is_skew(&subsets, g).unwrap(), no_forward_containment(&subsets));
            }
        }
    }

    #[test]
    fn furedi_examples() {
        let s = furedi_construction(1, 1, 1).unwrap();
        assert_eq!(s, sys(3, &[(&[1, 2], &[1, 3]), (&[1, 3], &[1, 2])]));
        assert!(s.is_t_system(1, true));
        assert_eq!(furedi_construction(0, 0, 2).unwrap(), sys(2, &[(&[1, 2], &[1, 2])]));
        let s = furedi_construction(2, 1, 0).unwrap();
        assert_eq!(s.len(), 3);
        assert!(s.is_bollobas());
    }

    #[test]
    fn furedi_grid() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for a in 0..=4usize {
            for b in 0..=4usize {
                for t in 0..=3usize {
                    let s = furedi_construction(a, b, t).unwrap();
                    let size = binomial((a + b) as u64, a as i64);
                    assert_eq!(BigInt::from(s.len()), BigInt::from(size.clone()));
                    assert!(s.is_t_system(t, true));
                    assert!(s.pairs().iter().all(|p| p.a.len() == a + t && p.b.len() == b + t));
                    let mut shuffled = s.pairs().to_vec();
                    shuffled.shuffle(&mut rng);
                    assert!(SetPairSystem::new(s.ground(), shuffled).unwrap().is_t_system(t, true));
                    // size × per-pair weight
                    let per_pair = Rational::new(1.into(), binomial((a + b + 2 * t) as u64, (a + t) as i64).into());
                    assert_eq!(s.weight(), per_pair * int(size));
                }
            }
        }
    }

    #[test]
    fn t_system_examples() {
        assert_eq!(t_system_construction(2, 1).unwrap(), sys(2, &[(&[1, 2], &[1]), (&[1], &[1, 2])]));
        assert_eq!(t_system_construction(3, 3).unwrap(), sys(3, &[(&[1, 2, 3], &[1, 2, 3])]));
        assert_eq!(t_system_construction(3, 0).unwrap(), full_power_set_system(3).unwrap());
        assert!(t_system_construction(2, 3).is_err());
        for n in 0..=8 {
            for t in 0..=n.min(3) {
                let s = t_system_construction(n, t).unwrap();
                assert_eq!(s.len(), 1 << (n - t));
                assert!(s.is_t_system(t, true), "n={n} t={t}");
            }
        }
    }

    #[test]
    fn lex_dpartition_examples() {
        let s = lex_full_dpartitions(1, 2).unwrap();
        let members: Vec<_> = s.members().iter().map(|m| m.blocks().to_vec()).collect();
        assert_eq!(members, vec![vec![set(&[1]), set(&[])], vec![set(&[]), set(&[1])]]);
        assert_eq!(lex_full_dpartitions(2, 2).unwrap().weight(), rat(3, 1));
        for d in 1..=4 {
            let s = lex_full_dpartitions(0, d).unwrap();
            assert_eq!(s.len(), 1);
            assert_eq!(s.weight(), rat(1, 1));
        }
        assert!(lex_full_dpartitions(2, 0).is_err());
    }

    #[test]
    fn lex_dpartition_grid() {
        for n in 0..=6usize {
            for d in 1..=4usize {
                let s = lex_full_dpartitions(n, d).unwrap();
                assert_eq!(s.len(), d.pow(n as u32));
                assert!(s.is_bollobas(true), "n={n} d={d}");
                assert_eq!(s.weight(), int(binomial((n + d - 1) as u64, d as i64 - 1)));
                // size vectors never increase along the order
                for w in s.members().windows(2) {
                    assert!(w[0].sizes() >= w[1].sizes());
                }
            }
        }
    }

    #[test]
    fn all_full_dpartition_examples() {
        let s = all_full_dpartitions(&[1, 1]).unwrap();
        let members: Vec<_> = s.members().iter().map(|m| m.blocks().to_vec()).collect();
        assert_eq!(members, vec![vec![set(&[1]), set(&[2])], vec![set(&[2]), set(&[1])]]);
        assert_eq!(s.weight(), rat(1, 1));
        let s = all_full_dpartitions(&[2, 1]).unwrap();
        assert_eq!(s.len(), 3);
        assert_eq!(s.weight(), rat(1, 1));
        let s = all_full_dpartitions(&[1, 1, 1]).unwrap();
        assert_eq!(s.len(), 6);
        assert!(s.members().iter().all(|m| m.weight() == rat(1, 6)));
        assert!(all_full_dpartitions(&[1, 0]).is_err());
        assert!(all_full_dpartitions(&[7, 6]).is_err());
        assert!(all_full_dpartitions(&[]).is_err());
    }

    #[test]
    fn saturation_examples() {
        let s = sys(2, &[(&[1], &[])]);
        let trace = saturation_trace(&s).unwrap();
        assert_eq!(trace[0].weight_before, rat(1, 1));
        assert_eq!(trace[0].weight_after, rat(3, 2));
        // (1 + 1/(a+b+1)) / C(a+b, a) with a = 1, b = 0
        assert_eq!(trace[0].weight_after, rat(1, 1) * (rat(1, 1) + rat(1, 2)));
        let fixed = saturate(&s).unwrap();
        assert_eq!(fixed, sys(2, &[(&[1, 2], &[]), (&[1], &[2])]));
        assert_eq!(fixed.weight(), rat(3, 2));

        let full = full_power_set_system(3).unwrap();
        assert_eq!(saturate(&full).unwrap(), full);
        assert!(saturation_trace(&full).unwrap().is_empty());

        let s = sys(1, &[(&[], &[])]);
        let fixed = saturate(&s).unwrap();
        assert_eq!(fixed, sys(1, &[(&[1], &[]), (&[], &[1])]));
        assert_eq!(fixed.weight(), rat(2, 1));

        assert_eq!(saturate(&sys(1, &[(&[], &[1]), (&[1], &[])])), Err(Error::NotSkewBollobas));
    }

    proptest! {
        #[test]
        fn saturation_increases_weight_and_reaches_full(
            n in 0usize..=4,
            raw in prop::collection::vec((any::<u64>(), any::<u64>()), 0..6),
        ) {
            let g = GroundSize::new(n).unwrap();
            let full = g.full().bits();
            // keep pairs while the prefix stays skew
            let mut pairs = Vec::new();
            for (a, b) in raw {
                let a = SubsetMask::from_bits(a & full);
                let b = SubsetMask::from_bits(b & full & !a.bits());
                pairs.push(SetPair::new(a, b));
                if !SetPairSystem::new(g, pairs.clone()).unwrap().is_skew_bollobas() {
                    pairs.pop();
                }
            }
            let start = SetPairSystem::new(g, pairs).unwrap();
            let trace = saturation_trace(&start).unwrap();
            for step in &trace {
                prop_assert!(step.weight_after > step.weight_before);
                prop_assert!(step.system.is_skew_bollobas());
                // both replacement pairs are one element larger than the split pair
                let split = step.system.pairs()[step.index];
                prop_assert_eq!(split.a.len() + split.b.len(), step.system.pairs()[step.index + 1].a.len() + step.system.pairs()[step.index + 1].b.len());
            }
            // a pair missing k elements splits into 2^k full pairs after 2^k - 1 moves
            let expected: usize = start.pairs().iter().map(|p| (1usize << (n - p.a.len() - p.b.len())) - 1).sum();
            prop_assert_eq!(trace.len(), expected);
            let fixed = saturate(&start).unwrap();
            prop_assert!(fixed.is_full());
            prop_assert!(fixed.is_skew_bollobas());
        }
    }
}
