//! Exhaustive and branch-and-bound maxima over small ground sets, with
//! witnesses that are re-verified before a report is returned.

mod engine;

use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::fmt;
use std::time::{Duration, Instant};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use serde::{Serialize, Serializer};

pub use engine::SearchLimits;
use engine::{solve, Instance, Outcome};

use crate::count::{binomial, format_rational, rational_from_int, Rational};
use crate::dpartition::{all_dpartitions, orderly_overlap, DPartition, DPartitionSystem};
use crate::error::{Error, Result};
use crate::io::AnySystem;
use crate::sets::{GroundSize, SetPair, SetPairSystem, Variant};

/// Largest `n` for the unrestricted skew and t-system searches.
pub const MAX_PAIR_SEARCH_N: usize = 4;
/// Largest `n` for the skew search over complementary pairs only.
pub const MAX_FULL_PAIR_SEARCH_N: usize = 5;
/// Largest `n` for the strong set-pair search.
pub const MAX_STRONG_SEARCH_N: usize = 3;
/// Largest candidate pool `(d+1)^n` for d-partition searches.
pub const MAX_DPARTITION_CANDIDATES: usize = 256;

/// Which pairs the skew weight search may use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SkewMode {
    /// Every disjoint pair `(A, B)`.
    Unrestricted,
    /// Only complementary pairs `(A, [n] \ A)`.
    FullPairs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Problem {
    SkewWeight,
    StrongWeight,
    TSystemSize,
    DPartitionWeight,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchParameters {
    pub problem: Problem,
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d: Option<usize>,
    pub variant: Variant,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mode: Option<SkewMode>,
}

/// A maximized quantity: an exact weight or a count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Optimum {
    Weight(Rational),
    Size(usize),
}

impl Optimum {
    pub fn as_rational(&self) -> Rational {
        match self {
            Optimum::Weight(w) => w.clone(),
            Optimum::Size(s) => rational_from_int(*s),
        }
    }
}

impl fmt::Display for Optimum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Optimum::Weight(w) => f.write_str(&format_rational(w)),
            Optimum::Size(s) => write!(f, "{s}"),
        }
    }
}

impl Serialize for Optimum {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Optimum::Weight(w) => s.serialize_str(&format_rational(w)),
            Optimum::Size(n) => s.serialize_u64(*n as u64),
        }
    }
}

/// Optimum relative to the reference bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Comparison {
    Below,
    Equal,
    Violation,
}

impl Comparison {
    fn of(optimum: &Optimum, bound: &Optimum) -> Self {
        match optimum.as_rational().cmp(&bound.as_rational()) {
            std::cmp::Ordering::Less => Comparison::Below,
            std::cmp::Ordering::Equal => Comparison::Equal,
            std::cmp::Ordering::Greater => Comparison::Violation,
        }
    }
}

impl fmt::Display for Comparison {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Comparison::Below => "below",
            Comparison::Equal => "equal",
            Comparison::Violation => "VIOLATION",
        })
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SearchReport {
    pub parameters: SearchParameters,
    pub optimum: Optimum,
    pub witness: AnySystem,
    /// The known (or conjectured) upper bound the optimum is compared with.
    pub reference_bound: Optimum,
    pub comparison: Comparison,
    pub nodes_explored: u64,
    /// The whole space was covered; false after a budget cutoff.
    pub exhaustive: bool,
    /// Largest number of members, for the strong d-partition search.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_size: Option<usize>,
    #[serde(skip)]
    pub wall_time: Duration,
}

fn cap(what: &str, value: usize, limit: usize) -> Result<()> {
    if value > limit {
        return Err(Error::CapExceeded(format!("{what} = {value} exceeds {limit}")));
    }
    Ok(())
}

fn ground(n: usize) -> Result<GroundSize> {
    GroundSize::new(n)
}

/// Common denominator turning rational weights into integers.
fn scale(weights: &[Rational]) -> Result<(BigUint, Vec<u128>)> {
    let lcm = weights
        .iter()
        .fold(BigUint::one(), |acc, w| acc.lcm(&w.denom().magnitude().clone()));
    let total: Rational = weights.iter().sum::<Rational>() * Rational::from_integer(BigInt::from(lcm.clone()));
    if total.to_integer().to_u128().is_none() {
        return Err(Error::CapExceeded("scaled candidate weights overflow 128 bits".into()));
    }
    let lcm_int = BigInt::from(lcm.clone());
    let scaled = weights
        .iter()
        .map(|w| (w * Rational::from_integer(lcm_int.clone())).to_integer().to_u128().expect("bounded by total"))
        .collect();
    Ok((lcm, scaled))
}

fn unscale(value: u128, lcm: &BigUint) -> Rational {
    Rational::new(BigInt::from(value), BigInt::from(lcm.clone()))
}

fn all_disjoint_pairs(g: GroundSize) -> Vec<SetPair> {
    let full = g.full();
    let mut out: Vec<SetPair> = g
        .subsets()
        .flat_map(|a| {
            let rest = a.complement_in(g);
            g.subsets().filter(move |b| b.is_subset_of(rest)).map(move |b| SetPair::new(a, b))
        })
        .collect();
    out.sort_by_key(|p| (Reverse((p.a | p.b) == full), Reverse(p.a.len()), p.a, p.b));
    out
}

fn group_by_key<K: Ord + Clone>(keys: impl Iterator<Item = K>) -> Vec<usize> {
    let keys: Vec<K> = keys.collect();
    let mut distinct = keys.clone();
    distinct.sort();
    distinct.dedup();
    keys.iter().map(|k| distinct.binary_search(k).expect("present")).collect()
}

struct Run {
    outcome: Outcome,
    lcm: BigUint,
    elapsed: Duration,
}

fn run(
    weights: &[Rational],
    groups: Vec<usize>,
    ordered: bool,
    related: impl Fn(usize, usize) -> bool,
    limits: SearchLimits,
    tie_check: Option<engine::TieCheck<'_>>,
) -> Result<Run> {
    let started = Instant::now();
    let (lcm, scaled) = scale(weights)?;
    let instance = Instance::new(scaled, groups, ordered, related);
    let outcome = solve(&instance, limits, tie_check);
    Ok(Run { outcome, lcm, elapsed: started.elapsed() })
}

fn pair_system(g: GroundSize, candidates: &[SetPair], seq: &[usize]) -> Result<SetPairSystem> {
    SetPairSystem::new(g, seq.iter().map(|&i| candidates[i]).collect())
}

fn recheck(ok: bool, what: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::OracleMismatch(format!("search witness failed re-verification: {what}")))
    }
}

/// Maximum weight of a skew Bollobás system on `[n]`.
///
/// Ordered sequences are enumerated with the compatibility rule
/// `A_i ∩ B_j ≠ ∅` for every earlier `i`. The pruning bound adds, for each
/// distinct first set `A`, the heaviest still-allowed candidate with that
/// `A` (two pairs sharing `A` are never compatible).
pub fn max_skew_weight(n: usize, mode: SkewMode, limits: SearchLimits) -> Result<SearchReport> {
    let limit = match mode {
        SkewMode::Unrestricted => MAX_PAIR_SEARCH_N,
        SkewMode::FullPairs => MAX_FULL_PAIR_SEARCH_N,
    };
    cap("n", n, limit)?;
    let g = ground(n)?;
    let candidates: Vec<SetPair> = match mode {
        SkewMode::Unrestricted => all_disjoint_pairs(g),
        SkewMode::FullPairs => all_disjoint_pairs(g).into_iter().filter(|p| p.is_full(g)).collect(),
    };
    let weights: Vec<Rational> = candidates.iter().map(SetPair::weight).collect();
    let groups = group_by_key(candidates.iter().map(|p| p.a));
    let r = run(
        &weights,
        groups,
        true,
        |i, j| candidates[i].a.intersects(candidates[j].b),
        limits,
        None,
    )?;
    let witness = pair_system(g, &candidates, &r.outcome.best_seq)?;
    let optimum = unscale(r.outcome.best, &r.lcm);
    recheck(witness.is_skew_bollobas() && witness.weight() == optimum, "skew weight")?;
    let optimum = Optimum::Weight(optimum);
    let bound = Optimum::Weight(rational_from_int(n + 1));
    Ok(SearchReport {
        parameters: SearchParameters { problem: Problem::SkewWeight, n, t: None, d: None, variant: Variant::Skew, mode: Some(mode) },
        comparison: Comparison::of(&optimum, &bound),
        optimum,
        witness: AnySystem::Pairs(witness),
        reference_bound: bound,
        nodes_explored: r.outcome.nodes,
        exhaustive: r.outcome.complete,
        max_size: None,
        wall_time: r.elapsed,
    })
}

/// Outcome of checking that every weight-maximal skew system consists of
/// complementary pairs.
#[derive(Debug, Clone, Serialize)]
pub struct EqualityStructure {
    pub n: usize,
    /// Every optimal system is complementary, and the search was exhaustive.
    pub holds: bool,
    #[serde(serialize_with = "crate::count::serde_rational::serialize")]
    pub optimum: Rational,
    /// Number of optimal ordered systems visited.
    pub optimal_systems: u64,
    pub counterexample: Option<SetPairSystem>,
    pub nodes_explored: u64,
    pub exhaustive: bool,
    #[serde(skip)]
    pub wall_time: Duration,
}

/// Enumerates every optimal skew system over all disjoint pairs and checks
/// that each satisfies `B_i = [n] \ A_i`.
pub fn equality_structure(n: usize, limits: SearchLimits) -> Result<EqualityStructure> {
    cap("n", n, 3)?;
    let g = ground(n)?;
    let candidates = all_disjoint_pairs(g);
    let weights: Vec<Rational> = candidates.iter().map(SetPair::weight).collect();
    let groups = group_by_key(candidates.iter().map(|p| p.a));
    let complementary = |seq: &[usize]| seq.iter().all(|&i| candidates[i].is_full(g));
    let r = run(
        &weights,
        groups,
        true,
        |i, j| candidates[i].a.intersects(candidates[j].b),
        limits,
        Some(&complementary),
    )?;
    let optimum = unscale(r.outcome.best, &r.lcm);
    let witness = pair_system(g, &candidates, &r.outcome.best_seq)?;
    recheck(witness.is_skew_bollobas() && witness.weight() == optimum, "equality witness")?;
    let counterexample = r
        .outcome
        .first_failing
        .as_deref()
        .map(|seq| pair_system(g, &candidates, seq))
        .transpose()?;
    Ok(EqualityStructure {
        n,
        holds: r.outcome.complete && r.outcome.ties_failing == 0,
        optimum,
        optimal_systems: r.outcome.ties,
        counterexample,
        nodes_explored: r.outcome.nodes,
        exhaustive: r.outcome.complete,
        wall_time: r.elapsed,
    })
}

/// Maximum weight of a (strong) Bollobás system on `[n]`, searched over sets
/// of pairwise compatible disjoint pairs.
pub fn max_strong_weight(n: usize, limits: SearchLimits) -> Result<SearchReport> {
    cap("n", n, MAX_STRONG_SEARCH_N)?;
    let g = ground(n)?;
    let candidates = all_disjoint_pairs(g);
    let weights: Vec<Rational> = candidates.iter().map(SetPair::weight).collect();
    let groups = group_by_key(candidates.iter().map(|p| p.a));
    let r = run(
        &weights,
        groups,
        false,
        |i, j| candidates[i].a.intersects(candidates[j].b) && candidates[j].a.intersects(candidates[i].b),
        limits,
        None,
    )?;
    let witness = pair_system(g, &candidates, &r.outcome.best_seq)?;
    let optimum = unscale(r.outcome.best, &r.lcm);
    recheck(witness.is_bollobas() && witness.weight() == optimum, "strong weight")?;
    let optimum = Optimum::Weight(optimum);
    let bound = Optimum::Weight(Rational::one());
    Ok(SearchReport {
        parameters: SearchParameters { problem: Problem::StrongWeight, n, t: None, d: None, variant: Variant::Strong, mode: None },
        comparison: Comparison::of(&optimum, &bound),
        optimum,
        witness: AnySystem::Pairs(witness),
        reference_bound: bound,
        nodes_explored: r.outcome.nodes,
        exhaustive: r.outcome.complete,
        max_size: None,
        wall_time: r.elapsed,
    })
}

/// Largest skew Bollobás `t`-system on `[n]`: pairs with `|A_i ∩ B_i| <= t`
/// and `|A_i ∩ B_j| > t` for `i < j`.
pub fn max_t_system_size(n: usize, t: usize, limits: SearchLimits) -> Result<SearchReport> {
    cap("n", n, MAX_PAIR_SEARCH_N)?;
    if t > n {
        return Err(Error::InvalidParameter(format!("t = {t} exceeds n = {n}")));
    }
    let g = ground(n)?;
    let mut candidates: Vec<SetPair> = g
        .subsets()
        .flat_map(|a| g.subsets().map(move |b| SetPair::new(a, b)))
        .filter(|p| (p.a & p.b).len() <= t)
        .collect();
    candidates.sort_by_key(|p| (Reverse(p.a.len() + p.b.len()), Reverse(p.a.len()), p.a, p.b));
    let weights = vec![Rational::one(); candidates.len()];
    // Pairs sharing A are incompatible: |A ∩ B_j| > t >= |A ∩ B_j| in one direction.
    let groups = group_by_key(candidates.iter().map(|p| p.a));
    let r = run(
        &weights,
        groups,
        true,
        |i, j| (candidates[i].a & candidates[j].b).len() > t,
        limits,
        None,
    )?;
    let witness = pair_system(g, &candidates, &r.outcome.best_seq)?;
    let size = r.outcome.best as usize;
    recheck(witness.is_t_system(t, true) && witness.len() == size, "t-system size")?;
    let optimum = Optimum::Size(size);
    let bound = Optimum::Size(1usize << (n - t));
    Ok(SearchReport {
        parameters: SearchParameters { problem: Problem::TSystemSize, n, t: Some(t), d: None, variant: Variant::Skew, mode: None },
        comparison: Comparison::of(&optimum, &bound),
        optimum,
        witness: AnySystem::Pairs(witness),
        reference_bound: bound,
        nodes_explored: r.outcome.nodes,
        exhaustive: r.outcome.complete,
        max_size: None,
        wall_time: r.elapsed,
    })
}

/// Maximum weight of a d-partition system on `[n]`.
///
/// Skew compares against `C(n+d-1, d-1)`; strong compares against `d - 1`
/// without presuming the outcome, and also reports the largest member count.
/// Members agreeing on their first `d - 1` blocks never overlap orderly in
/// either direction, which gives the grouping used for pruning.
pub fn max_dpartition_weight(n: usize, d: usize, variant: Variant, limits: SearchLimits) -> Result<SearchReport> {
    if d == 0 {
        return Err(Error::InvalidParameter("d must be at least 1".into()));
    }
    if variant == Variant::Strong && d < 2 {
        return Err(Error::InvalidParameter("the strong comparison needs d >= 2".into()));
    }
    let pool = (d as u128 + 1).checked_pow(n as u32).unwrap_or(u128::MAX);
    if pool > MAX_DPARTITION_CANDIDATES as u128 {
        return Err(Error::CapExceeded(format!("(d+1)^n = {pool} exceeds {MAX_DPARTITION_CANDIDATES}")));
    }
    let g = ground(n)?;
    let mut candidates = all_dpartitions(g, d)?;
    candidates.sort_by_key(|p| (Reverse(p.is_full(g)), p.weight().denom().clone(), p.clone()));
    let weights: Vec<Rational> = candidates.iter().map(DPartition::weight).collect();
    let groups = group_by_key(candidates.iter().map(|p| p.blocks()[..d - 1].to_vec()));
    let skew = variant == Variant::Skew;
    let related = |i: usize, j: usize| {
        orderly_overlap(&candidates[i], &candidates[j]) && (skew || orderly_overlap(&candidates[j], &candidates[i]))
    };
    let r = run(&weights, groups.clone(), skew, related, limits, None)?;
    let members: Vec<DPartition> = r.outcome.best_seq.iter().map(|&i| candidates[i].clone()).collect();
    let witness = DPartitionSystem::new(g, d, members)?;
    let optimum = unscale(r.outcome.best, &r.lcm);
    recheck(witness.violation(variant).is_none() && witness.weight() == optimum, "d-partition weight")?;

    let mut exhaustive = r.outcome.complete;
    let mut nodes = r.outcome.nodes;
    let mut elapsed = r.elapsed;
    let max_size = if skew {
        None
    } else {
        let sized = run(&vec![Rational::one(); candidates.len()], groups, false, related, limits, None)?;
        exhaustive &= sized.outcome.complete;
        nodes += sized.outcome.nodes;
        elapsed += sized.elapsed;
        let members: Vec<DPartition> = sized.outcome.best_seq.iter().map(|&i| candidates[i].clone()).collect();
        let largest = DPartitionSystem::new(g, d, members)?;
        recheck(largest.violation(variant).is_none(), "d-partition size")?;
        Some(largest.len())
    };

    let bound = if skew {
        Optimum::Weight(Rational::from_integer(BigInt::from(binomial((n + d - 1) as u64, d as i64 - 1))))
    } else {
        Optimum::Weight(rational_from_int(d - 1))
    };
    let optimum = Optimum::Weight(optimum);
    Ok(SearchReport {
        parameters: SearchParameters { problem: Problem::DPartitionWeight, n, t: None, d: Some(d), variant, mode: None },
        comparison: Comparison::of(&optimum, &bound),
        optimum,
        witness: AnySystem::DPartitions(witness),
        reference_bound: bound,
        nodes_explored: nodes,
        exhaustive,
        max_size,
        wall_time: elapsed,
    })
}

/// An order of `pairs` (as indices) making them a skew Bollobás system, or
/// `None` if no order works.
///
/// `A_x ∩ B_y = ∅` forces `y` before `x`, so valid orders are exactly the
/// topological orders of that precedence relation; ties go to the smallest
/// index.
pub fn ordering_feasible(pairs: &[SetPair]) -> Option<Vec<usize>> {
    if pairs.iter().any(|p| p.a.intersects(p.b)) {
        return None;
    }
    let m = pairs.len();
    let mut later: Vec<Vec<usize>> = vec![Vec::new(); m];
    let mut waiting = vec![0usize; m];
    for x in 0..m {
        for y in 0..m {
            if x != y && !pairs[x].a.intersects(pairs[y].b) {
                later[y].push(x);
                waiting[x] += 1;
            }
        }
    }
    let mut ready: BinaryHeap<Reverse<usize>> = (0..m).filter(|&i| waiting[i] == 0).map(Reverse).collect();
    let mut order = Vec::with_capacity(m);
    while let Some(Reverse(y)) = ready.pop() {
        order.push(y);
        for &x in &later[y] {
            waiting[x] -= 1;
            if waiting[x] == 0 {
                ready.push(Reverse(x));
            }
        }
    }
    (order.len() == m).then_some(order)
}
