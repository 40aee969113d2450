//! Depth-first branch and bound over sequences (or sets) of candidates with
//! a pairwise compatibility relation and nonnegative integer weights.

use std::time::{Duration, Instant};

use fixedbitset::FixedBitSet;

/// Explicit resource cutoffs. A search that hits one reports itself as
/// non-exhaustive.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SearchLimits {
    pub node_budget: Option<u64>,
    pub time_budget: Option<Duration>,
}

impl SearchLimits {
    pub fn unlimited() -> Self {
        SearchLimits::default()
    }
}

pub(crate) struct Instance {
    pub weights: Vec<u128>,
    /// Candidates sharing a group can never appear together, so the bound
    /// takes one (the heaviest) per group.
    pub groups: Vec<usize>,
    pub group_count: usize,
    /// Ordered mode: `compat[i]` holds every `j` allowed anywhere after `i`.
    /// Set mode: `compat[i]` holds every `j` allowed alongside `i`.
    pub compat: Vec<FixedBitSet>,
    pub ordered: bool,
}

impl Instance {
    pub fn new(weights: Vec<u128>, groups: Vec<usize>, ordered: bool, related: impl Fn(usize, usize) -> bool) -> Self {
        let len = weights.len();
        let group_count = groups.iter().copied().max().map_or(0, |g| g + 1);
        let compat = (0..len)
            .map(|i| {
                let mut row = FixedBitSet::with_capacity(len);
                for j in 0..len {
                    if i != j && related(i, j) {
                        row.insert(j);
                    }
                }
                row
            })
            .collect();
        Instance { weights, groups, group_count, compat, ordered }
    }
}

#[derive(Debug, Clone)]
pub(crate) struct Outcome {
    pub best: u128,
    pub best_seq: Vec<usize>,
    pub nodes: u64,
    pub complete: bool,
    /// Systems attaining `best` (counted only in tie mode).
    pub ties: u64,
    /// Of those, how many fail the tie predicate, and the first such system.
    pub ties_failing: u64,
    pub first_failing: Option<Vec<usize>>,
}

/// Predicate checked on each optimal system in tie mode.
pub(crate) type TieCheck<'a> = &'a dyn Fn(&[usize]) -> bool;

struct Solver<'a> {
    inst: &'a Instance,
    limits: SearchLimits,
    started: Instant,
    tie_check: Option<TieCheck<'a>>,
    out: Outcome,
}

/// Maximizes the total weight. With `tie_check`, every optimal system is
/// visited and tested.
pub(crate) fn solve(
    inst: &Instance,
    limits: SearchLimits,
    tie_check: Option<TieCheck<'_>>,
) -> Outcome {
    let mut solver = Solver {
        inst,
        limits,
        started: Instant::now(),
        tie_check,
        out: Outcome {
            best: 0,
            best_seq: Vec::new(),
            nodes: 0,
            complete: true,
            ties: 0,
            ties_failing: 0,
            first_failing: None,
        },
    };
    let mut all = FixedBitSet::with_capacity(inst.weights.len());
    all.insert_range(..);
    let mut seq = Vec::new();
    solver.visit(&mut seq, &all, 0, true);
    solver.out
}

impl Solver<'_> {
    fn out_of_budget(&mut self) -> bool {
        if let Some(budget) = self.limits.node_budget {
            if self.out.nodes > budget {
                return true;
            }
        }
        if let Some(limit) = self.limits.time_budget {
            if self.out.nodes.is_multiple_of(1024) && self.started.elapsed() > limit {
                return true;
            }
        }
        false
    }

    fn record(&mut self, seq: &[usize], partial: u128, first: bool) {
        let collecting = self.tie_check.is_some();
        if partial > self.out.best || first {
            self.out.best = partial;
            self.out.best_seq = seq.to_vec();
            self.out.ties = 0;
            self.out.ties_failing = 0;
            self.out.first_failing = None;
        } else if partial < self.out.best || !collecting {
            return;
        }
        if let Some(check) = self.tie_check {
            self.out.ties += 1;
            if !check(seq) {
                self.out.ties_failing += 1;
                if self.out.first_failing.is_none() {
                    self.out.first_failing = Some(seq.to_vec());
                }
            }
        }
    }

    fn bound(&self, allowed: &FixedBitSet) -> u128 {
        let mut best_in_group = vec![0u128; self.inst.group_count];
        for c in allowed.ones() {
            let g = self.inst.groups[c];
            best_in_group[g] = best_in_group[g].max(self.inst.weights[c]);
        }
        best_in_group.iter().sum()
    }

    fn visit(&mut self, seq: &mut Vec<usize>, allowed: &FixedBitSet, partial: u128, first: bool) {
        if !self.out.complete {
            return;
        }
        self.out.nodes += 1;
        if self.out_of_budget() {
            self.out.complete = false;
            return;
        }
        self.record(seq, partial, first);
        let optimistic = partial + self.bound(allowed);
        let collecting = self.tie_check.is_some();
        if optimistic < self.out.best || (!collecting && optimistic <= self.out.best) || optimistic == partial {
            return;
        }
        for c in allowed.ones() {
            let mut next = allowed.clone();
            next.intersect_with(&self.inst.compat[c]);
            if !self.inst.ordered {
                next.remove_range(..c + 1);
            }
            seq.push(c);
            self.visit(seq, &next, partial + self.inst.weights[c], false);
            seq.pop();
            if !self.out.complete {
                return;
            }
        }
    }
}
