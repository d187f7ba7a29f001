//! Finite abelian groups as explicit products of cyclic factors, with the
//! multiset algebra used by every difference computation.
//!
//! Elements are mixed-radix coordinate vectors; each element also has a dense
//! rank in `0..n` with `factors[0]` most significant. All difference
//! computations work on ranks, so a difference multiset is a plain count
//! vector indexed by rank.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A finite abelian group given as Z_{f0} x Z_{f1} x ... x Z_{f_{t-1}}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupSpec {
    factors: Vec<u32>,
    order: usize,
}

impl GroupSpec {
    /// Create a group from cyclic factor orders. Every factor must be >= 2.
    pub fn new(factors: Vec<u32>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::InvalidGroup("no cyclic factors given".into()));
        }
        if let Some(f) = factors.iter().find(|&&f| f < 2) {
            return Err(Error::InvalidGroup(format!("factor {f} is below 2")));
        }
        let mut order = 1usize;
        for &f in &factors {
            order = order
                .checked_mul(f as usize)
                .ok_or_else(|| Error::Capacity("group order overflows usize".into()))?;
        }
        Ok(Self { factors, order })
    }

    /// The cyclic group Z_n.
    pub fn cyclic(n: u32) -> Result<Self> {
        Self::new(vec![n])
    }

    #[must_use]
    pub fn order(&self) -> usize {
        self.order
    }

    #[must_use]
    pub fn factors(&self) -> &[u32] {
        &self.factors
    }

    /// The identity element (all coordinates zero).
    #[must_use]
    pub fn identity(&self) -> GroupElement {
        GroupElement {
            coords: vec![0; self.factors.len()],
        }
    }

    fn check(&self, a: &GroupElement) -> Result<()> {
        if a.coords.len() != self.factors.len() {
            return Err(Error::InvalidElement(format!(
                "expected {} coordinates, got {}",
                self.factors.len(),
                a.coords.len()
            )));
        }
        for (i, (&c, &f)) in a.coords.iter().zip(&self.factors).enumerate() {
            if c >= f {
                return Err(Error::InvalidElement(format!(
                    "coordinate {i} is {c}, outside 0..{f}"
                )));
            }
        }
        Ok(())
    }

    /// Dense rank of an element, with `factors[0]` most significant.
    pub fn rank(&self, a: &GroupElement) -> Result<usize> {
        self.check(a)?;
        let mut r = 0usize;
        for (&c, &f) in a.coords.iter().zip(&self.factors) {
            r = r * f as usize + c as usize;
        }
        Ok(r)
    }

    /// Inverse of [`rank`](Self::rank).
    pub fn unrank(&self, mut r: usize) -> Result<GroupElement> {
        if r >= self.order {
            return Err(Error::InvalidElement(format!(
                "rank {r} outside 0..{}",
                self.order
            )));
        }
        let mut coords = vec![0u32; self.factors.len()];
        for i in (0..self.factors.len()).rev() {
            let f = self.factors[i] as usize;
            coords[i] = (r % f) as u32;
            r /= f;
        }
        Ok(GroupElement { coords })
    }

    /// Componentwise sum modulo each factor.
    pub fn add(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
        self.check(a)?;
        self.check(b)?;
        let coords = a
            .coords
            .iter()
            .zip(&b.coords)
            .zip(&self.factors)
            .map(|((&x, &y), &f)| (x + y) % f)
            .collect();
        Ok(GroupElement { coords })
    }

    /// Componentwise negation modulo each factor.
    pub fn neg(&self, a: &GroupElement) -> Result<GroupElement> {
        self.check(a)?;
        let coords = a
            .coords
            .iter()
            .zip(&self.factors)
            .map(|(&x, &f)| (f - x) % f)
            .collect();
        Ok(GroupElement { coords })
    }

    pub fn sub(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
        let nb = self.neg(b)?;
        self.add(a, &nb)
    }

    /// Rank-level addition. Callers must supply ranks below the group order.
    #[must_use]
    pub fn add_ranks(&self, a: usize, b: usize) -> usize {
        debug_assert!(a < self.order && b < self.order);
        let (mut r, mut place) = (0usize, 1usize);
        let (mut x, mut y) = (a, b);
        for &f in self.factors.iter().rev() {
            let f = f as usize;
            r += (x % f + y % f) % f * place;
            place *= f;
            x /= f;
            y /= f;
        }
        r
    }

    /// Rank-level subtraction: rank of `unrank(a) - unrank(b)`.
    #[must_use]
    pub fn sub_ranks(&self, a: usize, b: usize) -> usize {
        debug_assert!(a < self.order && b < self.order);
        let (mut r, mut place) = (0usize, 1usize);
        let (mut x, mut y) = (a, b);
        for &f in self.factors.iter().rev() {
            let f = f as usize;
            r += (x % f + f - y % f) % f * place;
            place *= f;
            x /= f;
            y /= f;
        }
        r
    }

    #[must_use]
    pub fn neg_rank(&self, a: usize) -> usize {
        self.sub_ranks(0, a)
    }

    /// External difference multiset of two nonempty sets:
    /// `counts[x] = #{(a, b) in d1 x d2 : a - b = x}`.
    pub fn difference(&self, d1: &GroupSet, d2: &GroupSet) -> Result<Multiset> {
        if d1.is_empty() {
            return Err(Error::EmptySet("first difference operand"));
        }
        if d2.is_empty() {
            return Err(Error::EmptySet("second difference operand"));
        }
        let mut out = Multiset::zeros(self.order);
        self.accumulate_difference(d1, d2, &mut out.counts);
        Ok(out)
    }

    /// Add the difference counts of `d1 x d2` onto an existing count buffer.
    pub fn accumulate_difference(&self, d1: &GroupSet, d2: &GroupSet, counts: &mut [u64]) {
        debug_assert_eq!(counts.len(), self.order);
        for &a in d1.members() {
            for &b in d2.members() {
                counts[self.sub_ranks(a, b)] += 1;
            }
        }
    }
}

/// A group element as a coordinate vector, `coords[i]` in `0..factors[i]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupElement {
    coords: Vec<u32>,
}

impl GroupElement {
    #[must_use]
    pub fn new(coords: Vec<u32>) -> Self {
        Self { coords }
    }

    #[must_use]
    pub fn coords(&self) -> &[u32] {
        &self.coords
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// A subset of a group, stored as strictly increasing element ranks.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GroupSet {
    members: Vec<usize>,
}

impl GroupSet {
    /// Build a set from ranks. Input is sorted; duplicates and out-of-range
    /// ranks are rejected.
    pub fn new(mut members: Vec<usize>, group: &GroupSpec) -> Result<Self> {
        members.sort_unstable();
        if let Some(w) = members.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidSet(format!("duplicate rank {}", w[0])));
        }
        if let Some(&r) = members.last() {
            if r >= group.order() {
                return Err(Error::InvalidSet(format!(
                    "rank {r} outside 0..{}",
                    group.order()
                )));
            }
        }
        Ok(Self { members })
    }

    #[must_use]
    pub fn members(&self) -> &[usize] {
        &self.members
    }

    #[must_use]
    pub fn len(&self) -> usize {
        self.members.len()
    }

    #[must_use]
    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    #[must_use]
    pub fn contains(&self, rank: usize) -> bool {
        self.members.binary_search(&rank).is_ok()
    }

    /// Image of the set under simultaneous translation by `g`.
    pub fn translate(&self, group: &GroupSpec, g: usize) -> Result<Self> {
        let members = self.members.iter().map(|&r| group.add_ranks(r, g)).collect();
        Self::new(members, group)
    }
}

/// A multiset over the group, as a dense count vector indexed by rank.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Multiset {
    counts: Vec<u64>,
}

impl Multiset {
    #[must_use]
    pub fn zeros(n: usize) -> Self {
        Self {
            counts: vec![0; n],
        }
    }

    pub fn from_counts(counts: Vec<u64>) -> Self {
        Self { counts }
    }

    #[must_use]
    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    #[must_use]
    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// If the multiset is zero at the identity and constant on every other
    /// element, return that constant.
    #[must_use]
    pub fn constant_on_nonzero(&self) -> Option<u64> {
        if self.counts.is_empty() || self.counts[0] != 0 {
            return None;
        }
        if self.counts.len() == 1 {
            // No nonzero elements; vacuously constant.
            return Some(0);
        }
        let lambda = self.counts[1];
        self.counts[1..]
            .iter()
            .all(|&c| c == lambda)
            .then_some(lambda)
    }
}
