//! Branch-and-bound results against unpruned enumeration, known bounds and
//! the explicit constructions.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;

use setpair_core::constructions::{full_power_set_system, lex_full_dpartitions, t_system_construction};
use setpair_core::dpartition::all_dpartitions;
use setpair_core::search::{
    max_dpartition_weight, max_skew_weight, max_strong_weight, max_t_system_size, ordering_feasible, Comparison,
    Optimum, SearchLimits, SkewMode,
};
use setpair_core::{
    binomial, AnySystem, DPartition, GroundSize, Rational, SetPair, SetPairSystem, SubsetMask, Variant,
};

fn unlimited() -> SearchLimits {
    SearchLimits::unlimited()
}

fn int(v: u64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

fn all_pairs(n: usize) -> Vec<SetPair> {
    let g = GroundSize::new(n).unwrap();
    let mut out = Vec::new();
    for a in g.subsets() {
        for b in g.subsets() {
            out.push(SetPair::new(a, b));
        }
    }
    out
}

fn pair_weight(p: &SetPair) -> Rational {
    p.weight()
}

/// Best total over every sequence of distinct candidates in which each
/// new candidate is compatible with all earlier ones. No pruning.
fn best_sequence<T>(cands: &[T], ok_alone: impl Fn(&T) -> bool, ok_after: impl Fn(&T, &T) -> bool, w: impl Fn(&T) -> Rational) -> Rational {
    fn go<T>(
        cands: &[T],
        seq: &mut Vec<usize>,
        ok_alone: &dyn Fn(&T) -> bool,
        ok_after: &dyn Fn(&T, &T) -> bool,
        w: &dyn Fn(&T) -> Rational,
    ) -> Rational {
        let here: Rational = seq.iter().map(|&i| w(&cands[i])).sum();
        let mut best = here;
        for c in 0..cands.len() {
            if seq.contains(&c) || !ok_alone(&cands[c]) || !seq.iter().all(|&i| ok_after(&cands[i], &cands[c])) {
                continue;
            }
            seq.push(c);
            let sub = go(cands, seq, ok_alone, ok_after, w);
            seq.pop();
            if sub > best {
                best = sub;
            }
        }
        best
    }
    go(cands, &mut Vec::new(), &ok_alone, &ok_after, &w)
}

/// Best total over every subset of pairwise compatible candidates.
fn best_subset<T>(cands: &[T], ok_alone: impl Fn(&T) -> bool, ok_pair: impl Fn(&T, &T) -> bool, w: impl Fn(&T) -> Rational) -> Rational {
    assert!(cands.len() <= 20);
    let mut best = Rational::zero();
    'subsets: for bits in 0u32..(1 << cands.len()) {
        let chosen: Vec<usize> = (0..cands.len()).filter(|&i| bits >> i & 1 == 1).collect();
        for &i in &chosen {
            if !ok_alone(&cands[i]) {
                continue 'subsets;
            }
            for &j in &chosen {
                if i != j && !ok_pair(&cands[i], &cands[j]) {
                    continue 'subsets;
                }
            }
        }
        let total: Rational = chosen.iter().map(|&i| w(&cands[i])).sum();
        if total > best {
            best = total;
        }
    }
    best
}

fn literal_overlap(p: &DPartition, q: &DPartition) -> bool {
    let d = p.d();
    (0..d).any(|a| (a + 1..d).any(|b| p.blocks()[a].intersects(q.blocks()[b])))
}

#[test]
fn skew_search_matches_unpruned_enumeration() {
    for n in 0..=2 {
        let plain = best_sequence(&all_pairs(n), |p| !p.a.intersects(p.b), |x, y| x.a.intersects(y.b), pair_weight);
        let r = max_skew_weight(n, SkewMode::Unrestricted, unlimited()).unwrap();
        assert_eq!(r.optimum, Optimum::Weight(plain), "n = {n}");
    }
}

#[test]
fn strong_search_matches_unpruned_enumeration() {
    for n in 0..=2 {
        let plain = best_subset(&all_pairs(n), |p| !p.a.intersects(p.b), |x, y| x.a.intersects(y.b), pair_weight);
        let r = max_strong_weight(n, unlimited()).unwrap();
        assert_eq!(r.optimum, Optimum::Weight(plain), "n = {n}");
    }
}

#[test]
fn t_system_search_matches_unpruned_enumeration() {
    for n in 0..=2 {
        for t in 0..=n {
            let plain = best_sequence(
                &all_pairs(n),
                |p| (p.a & p.b).len() <= t,
                |x, y| (x.a & y.b).len() > t,
                |_| Rational::one(),
            );
            let r = max_t_system_size(n, t, unlimited()).unwrap();
            assert_eq!(r.optimum.as_rational(), plain, "n = {n}, t = {t}");
        }
    }
}

#[test]
fn dpartition_search_matches_unpruned_enumeration() {
    for (n, d) in [(1, 2), (2, 2), (1, 3), (2, 3)] {
        let g = GroundSize::new(n).unwrap();
        let cands = all_dpartitions(g, d).unwrap();
        let strong = best_subset(&cands, |_| true, literal_overlap, DPartition::weight);
        let r = max_dpartition_weight(n, d, Variant::Strong, unlimited()).unwrap();
        assert_eq!(r.optimum, Optimum::Weight(strong), "strong n = {n}, d = {d}");
        let skew = best_sequence(&cands, |_| true, literal_overlap, DPartition::weight);
        let r = max_dpartition_weight(n, d, Variant::Skew, unlimited()).unwrap();
        assert_eq!(r.optimum, Optimum::Weight(skew), "skew n = {n}, d = {d}");
    }
}

#[test]
fn optima_respect_bounds_and_beat_constructions() {
    for n in 0..=4 {
        let r = max_skew_weight(n, SkewMode::Unrestricted, unlimited()).unwrap();
        assert!(r.exhaustive);
        assert_ne!(r.comparison, Comparison::Violation);
        assert!(r.optimum.as_rational() >= full_power_set_system(n).unwrap().weight());
    }
    for n in 0..=3 {
        let r = max_strong_weight(n, unlimited()).unwrap();
        assert!(r.optimum.as_rational() <= Rational::one());
    }
    for n in 0..=4 {
        for t in 0..=n {
            let r = max_t_system_size(n, t, unlimited()).unwrap();
            assert!(r.optimum.as_rational() <= int(1 << (n - t)));
            assert!(r.optimum.as_rational() >= int(t_system_construction(n, t).unwrap().len() as u64));
        }
    }
    for (n, d) in [(1, 2), (2, 2), (3, 2), (4, 2), (1, 3), (2, 3), (1, 4), (2, 4)] {
        let r = max_dpartition_weight(n, d, Variant::Skew, unlimited()).unwrap();
        let bound = Rational::from_integer(BigInt::from(binomial((n + d - 1) as u64, d as i64 - 1)));
        assert_eq!(r.optimum.as_rational(), bound, "n = {n}, d = {d}");
        assert!(r.optimum.as_rational() >= lex_full_dpartitions(n, d).unwrap().weight());
    }
}

#[test]
fn witnesses_reverify() {
    let reports = [
        max_skew_weight(3, SkewMode::Unrestricted, unlimited()).unwrap(),
        max_strong_weight(3, unlimited()).unwrap(),
        max_t_system_size(3, 1, unlimited()).unwrap(),
        max_dpartition_weight(2, 3, Variant::Strong, unlimited()).unwrap(),
    ];
    for r in &reports {
        match &r.witness {
            AnySystem::Pairs(s) => {
                let t = r.parameters.t.unwrap_or(0);
                assert!(s.t_violation(t, r.parameters.variant).is_none());
                match &r.optimum {
                    Optimum::Weight(w) => assert_eq!(&s.weight(), w),
                    Optimum::Size(m) => assert_eq!(s.len(), *m),
                }
            }
            AnySystem::DPartitions(s) => {
                assert!(s.violation(r.parameters.variant).is_none());
                assert_eq!(Optimum::Weight(s.weight()), r.optimum);
            }
        }
    }
}

#[test]
fn strong_dpartitions_exceed_d_minus_one_at_four_elements() {
    // Under the two-directional overlap reading, the composition classes
    // (0,4,0), (2,0,2) and (1,2,1) of [4] together stay pairwise overlapping.
    let r = max_dpartition_weight(4, 3, Variant::Strong, unlimited()).unwrap();
    assert!(r.exhaustive);
    assert_eq!(r.optimum, Optimum::Weight(int(3)));
    assert_eq!(r.comparison, Comparison::Violation);
    let AnySystem::DPartitions(s) = &r.witness else { panic!("wrong witness kind") };
    let m = s.members();
    for i in 0..m.len() {
        for j in 0..m.len() {
            assert!(i == j || literal_overlap(&m[i], &m[j]), "({i}, {j})");
        }
    }
}

#[test]
fn budgets_cut_searches_short() {
    let r = max_skew_weight(4, SkewMode::Unrestricted, SearchLimits { node_budget: Some(100), time_budget: None }).unwrap();
    assert!(!r.exhaustive);
    assert!(r.nodes_explored <= 101);
    let AnySystem::Pairs(s) = &r.witness else { panic!("wrong witness kind") };
    assert!(s.is_skew_bollobas());
}

fn permutations(m: usize) -> Vec<Vec<usize>> {
    if m == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(m - 1) {
        for k in 0..=p.len() {
            let mut q = p.clone();
            q.insert(k, m - 1);
            out.push(q);
        }
    }
    out
}

proptest! {
    #[test]
    fn ordering_feasible_matches_all_permutations(
        n in 1usize..=3,
        raw in proptest::collection::vec((any::<u64>(), any::<u64>()), 0..=5),
    ) {
        let g = GroundSize::new(n).unwrap();
        let full = g.full().bits();
        let pairs: Vec<SetPair> = raw
            .iter()
            .map(|&(a, b)| {
                let a = SubsetMask::from_bits(a & full);
                SetPair::new(a, SubsetMask::from_bits(b & full) - a)
            })
            .collect();
        let any_valid = permutations(pairs.len()).iter().any(|perm| {
            SetPairSystem::new(g, perm.iter().map(|&i| pairs[i]).collect()).unwrap().is_skew_bollobas()
        });
        let found = ordering_feasible(&pairs);
        prop_assert_eq!(found.is_some(), any_valid);
        if let Some(order) = found {
            let mut sorted = order.clone();
            sorted.sort();
            prop_assert_eq!(sorted, (0..pairs.len()).collect::<Vec<_>>());
            let system = SetPairSystem::new(g, order.iter().map(|&i| pairs[i]).collect()).unwrap();
            prop_assert!(system.is_skew_bollobas());
        }
    }
}
