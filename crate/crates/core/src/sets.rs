//! Subsets of a small ground set, set-pair systems and their verifiers.
//!
//! Elements are labelled `1..=n` at every public surface; internally element
//! `j` lives in bit `j - 1` of a [`SubsetMask`].

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{BitAnd, BitOr, Not, Sub};

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::count::{binomial, Rational};
use crate::error::{Error, Result};

pub const MAX_GROUND: usize = 64;

/// Size `n` of the ground set `[n]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "usize", into = "usize")]
pub struct GroundSize(u8);

impl GroundSize {
    pub fn new(n: usize) -> Result<Self> {
        if n > MAX_GROUND {
            return Err(Error::GroundTooLarge(n));
        }
        Ok(GroundSize(n as u8))
    }

    pub fn get(self) -> usize {
        self.0 as usize
    }

    /// The mask of `[n]` itself.
    pub fn full(self) -> SubsetMask {
        if self.0 as usize == MAX_GROUND {
            SubsetMask(u64::MAX)
        } else {
            SubsetMask((1u64 << self.0) - 1)
        }
    }

    pub fn contains(self, mask: SubsetMask) -> bool {
        mask.0 & !self.full().0 == 0
    }

    pub(crate) fn check(self, mask: SubsetMask) -> Result<()> {
        if self.contains(mask) {
            Ok(())
        } else {
            Err(Error::MaskOutOfRange { mask: mask.0, n: self.get() })
        }
    }

    /// All `2^n` subsets in ascending mask order. Only sensible for small `n`.
    pub fn subsets(self) -> impl Iterator<Item = SubsetMask> {
        let full = self.full().0;
        let mut next = Some(0u64);
        std::iter::from_fn(move || {
            let current = next?;
            next = if current == full { None } else { Some(current + 1) };
            Some(SubsetMask(current))
        })
    }
}

impl TryFrom<usize> for GroundSize {
    type Error = Error;

    fn try_from(n: usize) -> Result<Self> {
        GroundSize::new(n)
    }
}

impl From<GroundSize> for usize {
    fn from(n: GroundSize) -> usize {
        n.get()
    }
}

/// A subset of `[n]` as a 64-bit mask; bit `j - 1` is element `j`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct SubsetMask(u64);

impl SubsetMask {
    pub const EMPTY: SubsetMask = SubsetMask(0);

    pub const fn from_bits(bits: u64) -> Self {
        SubsetMask(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    /// Builds a mask from 1-based element labels.
    pub fn from_elements<I>(elements: I, ground: GroundSize) -> Result<Self>
    where
        I: IntoIterator<Item = usize>,
    {
        let mut bits = 0u64;
        for element in elements {
            if element == 0 || element > ground.get() {
                return Err(Error::ElementOutOfRange { element, n: ground.get() });
            }
            bits |= 1 << (element - 1);
        }
        Ok(SubsetMask(bits))
    }

    /// `{1, ..., k}`.
    pub fn prefix(k: usize) -> Self {
        if k >= MAX_GROUND {
            SubsetMask(u64::MAX)
        } else {
            SubsetMask((1u64 << k) - 1)
        }
    }

    /// 1-based labels in increasing order.
    pub fn elements(self) -> Vec<usize> {
        self.indices().map(|i| i + 1).collect()
    }

    /// 0-based bit positions in increasing order.
    pub fn indices(self) -> impl Iterator<Item = usize> {
        let mut rest = self.0;
        std::iter::from_fn(move || {
            if rest == 0 {
                return None;
            }
            let i = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            Some(i)
        })
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, element: usize) -> bool {
        (1..=MAX_GROUND).contains(&element) && self.0 >> (element - 1) & 1 == 1
    }

    pub fn with(self, element: usize) -> Self {
        SubsetMask(self.0 | 1 << (element - 1))
    }

    pub fn intersects(self, other: SubsetMask) -> bool {
        self.0 & other.0 != 0
    }

    pub fn is_subset_of(self, other: SubsetMask) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn complement_in(self, ground: GroundSize) -> Self {
        SubsetMask(!self.0 & ground.full().0)
    }
}

impl BitAnd for SubsetMask {
    type Output = SubsetMask;
    fn bitand(self, rhs: Self) -> Self {
        SubsetMask(self.0 & rhs.0)
    }
}

impl BitOr for SubsetMask {
    type Output = SubsetMask;
    fn bitor(self, rhs: Self) -> Self {
        SubsetMask(self.0 | rhs.0)
    }
}

impl Sub for SubsetMask {
    type Output = SubsetMask;
    fn sub(self, rhs: Self) -> Self {
        SubsetMask(self.0 & !rhs.0)
    }
}

impl Not for SubsetMask {
    type Output = SubsetMask;
    fn not(self) -> Self {
        SubsetMask(!self.0)
    }
}

impl fmt::Debug for SubsetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, e) in self.elements().into_iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Display for SubsetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// `1 / C(a + b, a)`.
pub fn pair_weight(a: usize, b: usize) -> Rational {
    Rational::new(BigInt::from(1), BigInt::from(binomial((a + b) as u64, a as i64)))
}

/// An ordered pair `(A, B)` of subsets. Not necessarily disjoint.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SetPair {
    pub a: SubsetMask,
    pub b: SubsetMask,
}

impl SetPair {
    pub fn new(a: SubsetMask, b: SubsetMask) -> Self {
        SetPair { a, b }
    }

    /// `(A, [n] \ A)`.
    pub fn complementary(a: SubsetMask, ground: GroundSize) -> Self {
        SetPair { a, b: a.complement_in(ground) }
    }

    pub fn weight(&self) -> Rational {
        pair_weight(self.a.len(), self.b.len())
    }

    /// True when `B = [n] \ A`.
    pub fn is_full(&self, ground: GroundSize) -> bool {
        self.b == self.a.complement_in(ground)
    }
}

impl fmt::Debug for SetPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?},{:?})", self.a, self.b)
    }
}

/// Which cross-intersection pattern a verifier demands.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    /// Every `i != j`.
    Strong,
    /// Only `i < j`.
    Skew,
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::Strong => "strong",
            Variant::Skew => "skew",
        })
    }
}

/// A 0-based `(i, j)` position where a verifier's condition fails. `i == j`
/// marks a diagonal failure.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cell {
    pub i: usize,
    pub j: usize,
}

/// An ordered sequence of set pairs over `[n]`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SetPairSystem {
    ground: GroundSize,
    pairs: Vec<SetPair>,
}

impl SetPairSystem {
    pub fn new(ground: GroundSize, pairs: Vec<SetPair>) -> Result<Self> {
        for pair in &pairs {
            ground.check(pair.a)?;
            ground.check(pair.b)?;
        }
        Ok(SetPairSystem { ground, pairs })
    }

    pub fn empty(ground: GroundSize) -> Self {
        SetPairSystem { ground, pairs: Vec::new() }
    }

    /// The system `{(F_i, [n] \ F_i)}` of a family.
    pub fn from_family(family: &[SubsetMask], ground: GroundSize) -> Result<Self> {
        let pairs = family.iter().map(|&f| SetPair::complementary(f, ground)).collect();
        SetPairSystem::new(ground, pairs)
    }

    pub fn ground(&self) -> GroundSize {
        self.ground
    }

    pub fn pairs(&self) -> &[SetPair] {
        &self.pairs
    }

    pub fn into_pairs(self) -> Vec<SetPair> {
        self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// First cell (row-major) violating the Bollobás `t`-system conditions:
    /// `|A_i ∩ B_i| <= t` on the diagonal and `|A_i ∩ B_j| > t` off it.
    pub fn t_violation(&self, t: usize, variant: Variant) -> Option<Cell> {
        for (i, p) in self.pairs.iter().enumerate() {
            for (j, q) in self.pairs.iter().enumerate() {
                let overlap = (p.a & q.b).len();
                let ok = match (i.cmp(&j), variant) {
                    (std::cmp::Ordering::Equal, _) => overlap <= t,
                    (std::cmp::Ordering::Greater, Variant::Skew) => true,
                    _ => overlap > t,
                };
                if !ok {
                    return Some(Cell { i, j });
                }
            }
        }
        None
    }

    pub fn violation(&self, variant: Variant) -> Option<Cell> {
        self.t_violation(0, variant)
    }

    pub fn is_bollobas(&self) -> bool {
        self.violation(Variant::Strong).is_none()
    }

    pub fn is_skew_bollobas(&self) -> bool {
        self.violation(Variant::Skew).is_none()
    }

    pub fn is_t_system(&self, t: usize, skew: bool) -> bool {
        let variant = if skew { Variant::Skew } else { Variant::Strong };
        self.t_violation(t, variant).is_none()
    }

    /// `Σ 1 / C(|A_i| + |B_i|, |A_i|)`, exact. Defined for any system, valid
    /// or not.
    pub fn weight(&self) -> Rational {
        let mut shapes: BTreeMap<(usize, usize), u64> = BTreeMap::new();
        for pair in &self.pairs {
            *shapes.entry((pair.a.len(), pair.b.len())).or_default() += 1;
        }
        shapes.into_iter().fold(Rational::zero(), |acc, ((a, b), count)| {
            acc + pair_weight(a, b) * Rational::from_integer(BigInt::from(count))
        })
    }

    /// `Σ (|A_i| + |B_i|)`.
    pub fn total_size(&self) -> usize {
        self.pairs.iter().map(|p| p.a.len() + p.b.len()).sum()
    }

    /// True when every pair satisfies `B_i = [n] \ A_i`.
    pub fn is_full(&self) -> bool {
        self.pairs.iter().all(|p| p.is_full(self.ground))
    }
}

impl fmt::Debug for SetPairSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={} {:?}", self.ground.get(), self.pairs)
    }
}

/// No member is contained in a different member.
pub fn is_antichain(family: &[SubsetMask]) -> bool {
    family.iter().enumerate().all(|(i, &f)| {
        family
            .iter()
            .enumerate()
            .all(|(j, &g)| i == j || !f.is_subset_of(g))
    })
}

/// `Σ 1 / C(n, |F_i|)`, exact.
pub fn lym_weight(family: &[SubsetMask], ground: GroundSize) -> Rational {
    let n = ground.get();
    family
        .iter()
        .map(|f| pair_weight(f.len(), n - f.len().min(n)))
        .fold(Rational::zero(), |acc, w| acc + w)
}
