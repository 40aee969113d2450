//! Ordered d-tuples of pairwise disjoint subsets and the orderly-overlap
//! relation between them.

use std::collections::HashMap;
use std::fmt;

use num_traits::Zero;

use crate::count::{multinomial, reciprocal, Rational};
use crate::error::{Error, Result};
use crate::sets::{Cell, GroundSize, SubsetMask, Variant};

/// `(F^(1), ..., F^(d))` with pairwise disjoint blocks.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DPartition {
    blocks: Vec<SubsetMask>,
}

impl DPartition {
    pub fn new(blocks: Vec<SubsetMask>) -> Result<Self> {
        for p in 0..blocks.len() {
            for q in p + 1..blocks.len() {
                if blocks[p].intersects(blocks[q]) {
                    return Err(Error::BlocksOverlap { first: p + 1, second: q + 1 });
                }
            }
        }
        Ok(DPartition { blocks })
    }

    pub fn blocks(&self) -> &[SubsetMask] {
        &self.blocks
    }

    pub fn d(&self) -> usize {
        self.blocks.len()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.blocks.iter().map(|b| b.len()).collect()
    }

    pub fn support(&self) -> SubsetMask {
        self.blocks.iter().fold(SubsetMask::EMPTY, |acc, &b| acc | b)
    }

    /// Blocks cover the whole ground set.
    pub fn is_full(&self, ground: GroundSize) -> bool {
        self.support() == ground.full()
    }

    /// `1 / multinomial(|F^(1)|, ..., |F^(d)|)`.
    pub fn weight(&self) -> Rational {
        let sizes: Vec<u64> = self.blocks.iter().map(|b| b.len() as u64).collect();
        reciprocal(multinomial(&sizes))
    }
}

impl fmt::Debug for DPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, b) in self.blocks.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{b:?}")?;
        }
        write!(f, ")")
    }
}

/// True when some block `p` of `first` meets a block `q > p` of `second`.
/// Not symmetric.
pub fn orderly_overlap(first: &DPartition, second: &DPartition) -> bool {
    let d = first.blocks.len().min(second.blocks.len());
    // Accumulate the union of first's blocks 1..q-1 and test it against second's block q.
    let mut earlier = SubsetMask::EMPTY;
    for q in 0..d {
        if earlier.intersects(second.blocks[q]) {
            return true;
        }
        earlier = earlier | first.blocks[q];
    }
    false
}

/// Enumerates every d-partition of `[n]` (blocks need not cover `[n]`);
/// there are `(d + 1)^n` of them. Element labels are assigned in base
/// `d + 1`, label 0 meaning "in no block".
pub fn all_dpartitions(ground: GroundSize, d: usize) -> Result<Vec<DPartition>> {
    let n = ground.get();
    let count = (d as u128 + 1).checked_pow(n as u32).unwrap_or(u128::MAX);
    const CAP: u128 = 1 << 22;
    if count > CAP {
        return Err(Error::TooLarge { what: "d-partition enumeration", size: count, cap: CAP });
    }
    let mut out = Vec::with_capacity(count as usize);
    let mut labels = vec![0usize; n];
    loop {
        let mut blocks = vec![SubsetMask::EMPTY; d];
        for (e, &label) in labels.iter().enumerate() {
            if label > 0 {
                blocks[label - 1] = blocks[label - 1].with(e + 1);
            }
        }
        out.push(DPartition { blocks });
        // odometer increment
        let mut pos = 0;
        loop {
            if pos == n {
                return Ok(out);
            }
            labels[pos] += 1;
            if labels[pos] <= d {
                break;
            }
            labels[pos] = 0;
            pos += 1;
        }
    }
}

/// An ordered sequence of d-partitions of `[n]` sharing one block count.
#[derive(Clone, PartialEq, Eq)]
pub struct DPartitionSystem {
    ground: GroundSize,
    d: usize,
    members: Vec<DPartition>,
}

impl DPartitionSystem {
    pub fn new(ground: GroundSize, d: usize, members: Vec<DPartition>) -> Result<Self> {
        for (index, member) in members.iter().enumerate() {
            if member.d() != d {
                return Err(Error::BlockCountMismatch { index, expected: d, found: member.d() });
            }
            for &block in member.blocks() {
                ground.check(block)?;
            }
        }
        Ok(DPartitionSystem { ground, d, members })
    }

    pub fn ground(&self) -> GroundSize {
        self.ground
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn members(&self) -> &[DPartition] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// First `(i, j)` whose orderly-overlap requirement fails. The skew
    /// variant needs `overlap(i, j)` for `i < j`; the strong variant also
    /// needs `overlap(j, i)`, reported as cell `(j, i)`.
    pub fn violation(&self, variant: Variant) -> Option<Cell> {
        if !self.may_violate(variant) {
            return None;
        }
        let m = &self.members;
        for i in 0..m.len() {
            for j in i + 1..m.len() {
                if !orderly_overlap(&m[i], &m[j]) {
                    return Some(Cell { i, j });
                }
                if variant == Variant::Strong && !orderly_overlap(&m[j], &m[i]) {
                    return Some(Cell { i: j, j: i });
                }
            }
        }
        None
    }

    /// Exact screen for a failing pair, usually far below quadratic.
    ///
    /// With `first(x)` = block index of `x` in the earlier member (`d + 1`
    /// when absent) and `second(x)` = block index in the later member (0 when
    /// absent), `overlap(P, Q)` fails iff `first_P >= second_Q` pointwise.
    /// That forces `Σ first_P >= Σ second_Q`, and equal sums force equal
    /// vectors, which a hash lookup finds.
    fn may_violate(&self, variant: Variant) -> bool {
        let n = self.ground.get();
        let d = self.d as u32;
        let label = |member: &DPartition, absent: u32| -> Vec<u32> {
            let mut v = vec![absent; n];
            for (q, block) in member.blocks.iter().enumerate() {
                for e in block.indices() {
                    v[e] = q as u32 + 1;
                }
            }
            v
        };
        let firsts: Vec<Vec<u32>> = self.members.iter().map(|m| label(m, d + 1)).collect();
        let seconds: Vec<Vec<u32>> = self.members.iter().map(|m| label(m, 0)).collect();
        let sum = |v: &Vec<u32>| v.iter().map(|&x| x as u64).sum::<u64>();
        let mut by_sum: Vec<(u64, usize)> = seconds.iter().enumerate().map(|(j, v)| (sum(v), j)).collect();
        by_sum.sort_unstable();
        let mut by_vector: HashMap<&[u32], Vec<usize>> = HashMap::new();
        for (j, v) in seconds.iter().enumerate() {
            by_vector.entry(v.as_slice()).or_default().push(j);
        }
        let fails = |i: usize, j: usize| match variant {
            Variant::Skew => i < j,
            Variant::Strong => i != j,
        };
        for (i, f) in firsts.iter().enumerate() {
            let total = sum(f);
            if by_vector.get(f.as_slice()).is_some_and(|js| js.iter().any(|&j| fails(i, j))) {
                return true;
            }
            for &(_, j) in by_sum.iter().take_while(|(s, _)| *s < total) {
                if fails(i, j) && f.iter().zip(&seconds[j]).all(|(a, b)| a >= b) {
                    return true;
                }
            }
        }
        false
    }

    pub fn is_bollobas(&self, skew: bool) -> bool {
        self.violation(if skew { Variant::Skew } else { Variant::Strong }).is_none()
    }

    /// `Σ 1 / multinomial(|A_i^(1)|, ..., |A_i^(d)|)`, exact.
    pub fn weight(&self) -> Rational {
        self.members.iter().fold(Rational::zero(), |acc, m| acc + m.weight())
    }
}

impl fmt::Debug for DPartitionSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={} d={} {:?}", self.ground.get(), self.d, self.members)
    }
}
