//! Parameter enumeration, the cyclotomic scan over prime powers, and
//! exhaustive SEDF search over small groups.
//!
//! The search applies exact symmetry reductions only — translation (rank 0
//! is in the first set), set order (ascending minima), member order
//! (ascending) — so an empty result over the reduced space proves there is
//! no family at all for those parameters.

use serde::{Deserialize, Serialize};

use crate::arith::{divisors, is_prime};
use crate::edf::{feasible_lambda, sedf_from_cyclotomy, verify_sedf, DesignFamily};
use crate::error::{Error, Result};
use crate::gf::{FieldTable, MAX_FIELD_ORDER};
use crate::group::{GroupSet, GroupSpec};

/// One parameter tuple satisfying the counting law.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamTuple {
    pub n: u64,
    pub m: u64,
    pub k: u64,
    pub lambda: u64,
    /// The singleton-partition shape (n, n, 1, 1).
    pub trivial: bool,
}

/// All (n, m, k, lambda) with n <= n_max, m >= m_min, integral lambda from
/// the counting law, and m*k <= n. Ordered by n, then m, then k.
pub fn feasible_tuples(n_max: u64, m_min: u64) -> Result<Vec<ParamTuple>> {
    if n_max < 2 {
        return Err(Error::Parameter(format!("n_max must be at least 2, got {n_max}")));
    }
    let m_min = m_min.max(2);
    let mut out = Vec::new();
    for n in 2..=n_max {
        for m in m_min..=n {
            for k in 1..=n / m {
                if let Some(lambda) = feasible_lambda(n, m, k)? {
                    out.push(ParamTuple {
                        n,
                        m,
                        k,
                        lambda,
                        trivial: m == n && k == 1,
                    });
                }
            }
        }
    }
    Ok(out)
}

/// A prime power q = p^m.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimePower {
    pub p: u64,
    pub m: usize,
    pub q: u64,
}

/// All prime powers up to the bound, ascending by value.
#[must_use]
pub fn prime_powers_up_to(q_max: u64) -> Vec<PrimePower> {
    let mut out = Vec::new();
    for p in 2..=q_max {
        if !is_prime(p) {
            continue;
        }
        let mut q = p;
        let mut m = 1usize;
        while q <= q_max {
            out.push(PrimePower { p, m, q });
            match q.checked_mul(p) {
                Some(next) => q = next,
                None => break,
            }
            m += 1;
        }
    }
    out.sort_unstable_by_key(|pp| pp.q);
    out
}

/// One (q, e) scan result: is the cyclotomic-class family an SEDF?
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanRow {
    pub q: u64,
    pub p: u64,
    pub m: usize,
    pub modulus: String,
    pub e: u32,
    pub f: u32,
    pub is_sedf: bool,
    pub lambda: Option<u64>,
    pub theta: String,
}

/// Scan rows as TSV; `lambda` renders as `-` for invalid rows.
#[must_use]
pub fn scan_tsv(rows: &[ScanRow]) -> String {
    let mut out = String::from("q\tp\tm\tmodulus\te\tf\tis_sedf\tlambda\n");
    for r in rows {
        let lambda = r.lambda.map_or_else(|| "-".into(), |l| l.to_string());
        out.push_str(&format!(
            "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\n",
            r.q, r.p, r.m, r.modulus, r.e, r.f, r.is_sedf, lambda
        ));
    }
    out
}

/// Rows for one field: every class order e >= max(2, m_min) dividing q-1.
pub(crate) fn scan_one_field(p: u64, m: usize, m_min: u32) -> Result<Vec<ScanRow>> {
    let field = FieldTable::with_default_modulus(p, m)?;
    let q = field.order();
    let spec = field.spec();
    let mut rows = Vec::new();
    for e in divisors(q - 1) {
        let e = e as u32;
        if e < m_min.max(2) {
            continue;
        }
        let sys = crate::cyclotomy::CyclotomicSystem::new(&field, e)?;
        let out = sedf_from_cyclotomy(&sys)?;
        if !out.methods_agree {
            return Err(Error::Internal(format!(
                "direct and table verification disagree at q={q}, e={e}"
            )));
        }
        rows.push(ScanRow {
            q,
            p,
            m,
            modulus: spec.modulus_string(),
            e,
            f: sys.f(),
            is_sedf: out.certificate.valid,
            lambda: out.certificate.params.lambda,
            theta: spec.format_element(field.theta()),
        });
    }
    Ok(rows)
}

/// Evaluate the cyclotomic construction for every prime power q <= q_max
/// (canonical modulus per field) and every class order e >= m_min dividing
/// q-1. Rows are ordered by q, then e.
pub fn scan_cyclotomic(q_max: u64, m_min: u32) -> Result<Vec<ScanRow>> {
    check_scan_capacity(q_max)?;
    let mut rows = Vec::new();
    for pp in prime_powers_up_to(q_max) {
        rows.extend(scan_one_field(pp.p, pp.m, m_min)?);
    }
    Ok(rows)
}

pub(crate) fn check_scan_capacity(q_max: u64) -> Result<()> {
    if q_max > MAX_FIELD_ORDER {
        return Err(Error::Capacity(format!(
            "q_max {q_max} exceeds the field bound {MAX_FIELD_ORDER}"
        )));
    }
    Ok(())
}

/// Result of an exhaustive search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOutcome {
    pub families: Vec<DesignFamily>,
    /// False when the node limit stopped the search early.
    pub complete: bool,
    /// Element placements attempted, counted in the fixed traversal order.
    pub nodes: u64,
}

/// Fixed search parameters plus the lambda target from the counting law.
pub(crate) struct SearchPlan<'a> {
    group: &'a GroupSpec,
    n: usize,
    m: usize,
    k: usize,
    lambda: u64,
}

pub(crate) struct SubtreeOutcome {
    pub(crate) families: Vec<Vec<Vec<usize>>>,
    pub(crate) nodes: u64,
    pub(crate) exhausted: bool,
}

struct SearchState {
    sets: Vec<Vec<usize>>,
    used: Vec<bool>,
    /// counts[i][g]: external differences from set i to the other started
    /// sets, so far. Never allowed past lambda.
    counts: Vec<Vec<u64>>,
    found: Vec<Vec<Vec<usize>>>,
    nodes: u64,
    budget: Option<u64>,
    exhausted: bool,
}

impl<'a> SearchPlan<'a> {
    pub(crate) fn new(group: &'a GroupSpec, m: usize, k: usize) -> Result<Self> {
        let n = group.order();
        let lambda = feasible_lambda(n as u64, m as u64, k as u64)?.ok_or_else(|| {
            Error::Infeasible(format!(
                "(m-1)k^2 = {} is not a multiple of n-1 = {}",
                (m as u64 - 1) * (k as u64) * (k as u64),
                n - 1
            ))
        })?;
        Ok(Self { group, n, m, k, lambda })
    }

    /// Phase 1: every canonical first set — ascending, starting at rank 0 —
    /// in lexicographic order.
    pub(crate) fn first_sets(&self, limit: Option<u64>) -> (Vec<Vec<usize>>, u64, bool) {
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(self.k);
        let mut nodes = 0u64;
        let mut exhausted = false;
        self.extend_first(&mut cur, 0, &mut out, &mut nodes, limit, &mut exhausted);
        (out, nodes, exhausted)
    }

    fn extend_first(
        &self,
        cur: &mut Vec<usize>,
        next: usize,
        out: &mut Vec<Vec<usize>>,
        nodes: &mut u64,
        limit: Option<u64>,
        exhausted: &mut bool,
    ) {
        if cur.len() == self.k {
            out.push(cur.clone());
            return;
        }
        // The first placement is forced to rank 0 by the translation pin.
        let candidates = if cur.is_empty() { 0..1 } else { next..self.n };
        for x in candidates {
            if limit.is_some_and(|b| *nodes >= b) {
                *exhausted = true;
                return;
            }
            *nodes += 1;
            cur.push(x);
            self.extend_first(cur, x + 1, out, nodes, limit, exhausted);
            cur.pop();
            if *exhausted {
                return;
            }
        }
    }

    /// Phase 2: complete sets 2..m below a fixed first set.
    pub(crate) fn search_subtree(&self, first: &[usize], budget: Option<u64>) -> SubtreeOutcome {
        let mut used = vec![false; self.n];
        for &r in first {
            used[r] = true;
        }
        let mut state = SearchState {
            sets: vec![first.to_vec()],
            used,
            counts: vec![vec![0u64; self.n]; self.m],
            found: Vec::new(),
            nodes: 0,
            budget,
            exhausted: false,
        };
        self.dfs(&mut state);
        SubtreeOutcome {
            families: state.found,
            nodes: state.nodes,
            exhausted: state.exhausted,
        }
    }

    fn dfs(&self, state: &mut SearchState) {
        let s = state.sets.len() - 1;
        if state.sets[s].len() == self.k {
            if state.sets.len() == self.m {
                // The prune keeps every count at most lambda, and a complete
                // family has per-index total (m-1)k^2 = lambda(n-1), so the
                // counts are exactly lambda everywhere; record and move on.
                state.found.push(state.sets.clone());
                return;
            }
            // Start the next set; its minimum must exceed the previous one's.
            let from = state.sets[s][0] + 1;
            state.sets.push(Vec::with_capacity(self.k));
            self.place_candidates(state, from);
            state.sets.pop();
            return;
        }
        let from = *state.sets[s].last().expect("set started") + 1;
        self.place_candidates(state, from);
    }

    fn place_candidates(&self, state: &mut SearchState, from: usize) {
        for x in from..self.n {
            if state.used[x] {
                continue;
            }
            if state.budget.is_some_and(|b| state.nodes >= b) {
                state.exhausted = true;
                return;
            }
            state.nodes += 1;
            if self.try_place(state, x) {
                self.dfs(state);
                self.unplace(state, x);
            }
            if state.exhausted {
                return;
            }
        }
    }

    /// Add x to the current set, updating difference counts against every
    /// earlier set. Returns false (rolling back) if any count would pass
    /// lambda.
    fn try_place(&self, state: &mut SearchState, x: usize) -> bool {
        let s = state.sets.len() - 1;
        for j in 0..s {
            for idx in 0..state.sets[j].len() {
                let b = state.sets[j][idx];
                let fwd = self.group.sub_ranks(x, b);
                let bwd = self.group.neg_rank(fwd);
                state.counts[s][fwd] += 1;
                state.counts[j][bwd] += 1;
                if state.counts[s][fwd] > self.lambda || state.counts[j][bwd] > self.lambda {
                    // Roll back this pair and everything before it.
                    state.counts[s][fwd] -= 1;
                    state.counts[j][bwd] -= 1;
                    self.rollback(state, x, j, idx);
                    return false;
                }
            }
        }
        state.sets[s].push(x);
        state.used[x] = true;
        true
    }

    fn unplace(&self, state: &mut SearchState, x: usize) {
        let s = state.sets.len() - 1;
        state.sets[s].pop();
        state.used[x] = false;
        self.rollback(state, x, s, 0);
    }

    /// Undo the count increments of x against sets 0..j plus the first
    /// `upto` members of set j.
    fn rollback(&self, state: &mut SearchState, x: usize, j: usize, upto: usize) {
        let s = state.sets.len() - 1;
        for (jj, set) in state.sets.iter().take(j + 1).enumerate() {
            let stop = if jj == j { upto } else { set.len() };
            if jj == s {
                break;
            }
            for &b in &set[..stop] {
                let fwd = self.group.sub_ranks(x, b);
                let bwd = self.group.neg_rank(fwd);
                state.counts[s][fwd] -= 1;
                state.counts[jj][bwd] -= 1;
            }
        }
    }
}

/// Convert raw member lists into verified families; any family failing
/// re-verification is an internal error.
pub(crate) fn finish_outcome(
    group: &GroupSpec,
    raw: Vec<Vec<Vec<usize>>>,
    nodes: u64,
    exhausted: bool,
) -> Result<SearchOutcome> {
    let mut families = Vec::with_capacity(raw.len());
    for lists in raw {
        let sets = lists
            .into_iter()
            .map(|l| GroupSet::new(l, group))
            .collect::<Result<Vec<_>>>()?;
        let family = DesignFamily::explicit(group.clone(), sets)?;
        if !verify_sedf(&family)?.valid {
            return Err(Error::Internal(
                "search emitted a family that fails verification".into(),
            ));
        }
        families.push(family);
    }
    Ok(SearchOutcome {
        families,
        complete: !exhausted,
        nodes,
    })
}

/// Every SEDF with the given shape, up to the canonical reductions.
///
/// Infeasible (n, m, k) is rejected up front. With a node `limit` the search
/// may stop early; `complete` is false in that case and the family list
/// covers only the traversed prefix.
pub fn exhaustive_search(
    group: &GroupSpec,
    m: usize,
    k: usize,
    limit: Option<u64>,
) -> Result<SearchOutcome> {
    let plan = SearchPlan::new(group, m, k)?;
    let (firsts, mut nodes, mut exhausted) = plan.first_sets(limit);
    let mut raw = Vec::new();
    if !exhausted {
        for first in &firsts {
            let remaining = limit.map(|b| b - nodes);
            let out = plan.search_subtree(first, remaining);
            nodes += out.nodes;
            raw.extend(out.families);
            if out.exhausted {
                exhausted = true;
                break;
            }
        }
    }
    finish_outcome(group, raw, nodes, exhausted)
}

/// Keep one representative per orbit under the exact symmetries
/// translation and scalar multiplication by units (x -> u*x applied
/// coordinatewise), preserving the input order.
#[must_use]
pub fn dedup_by_scalar(group: &GroupSpec, families: Vec<DesignFamily>) -> Vec<DesignFamily> {
    let mut kept: Vec<DesignFamily> = Vec::new();
    let mut seen_keys: Vec<Vec<Vec<usize>>> = Vec::new();
    for family in families {
        let key = orbit_key(group, &family);
        if !seen_keys.contains(&key) {
            seen_keys.push(key);
            kept.push(family);
        }
    }
    kept
}

/// Least normalized form over all unit scalings and translations.
fn orbit_key(group: &GroupSpec, family: &DesignFamily) -> Vec<Vec<usize>> {
    let exponent = group
        .factors()
        .iter()
        .fold(1u64, |l, &f| l / crate::arith::gcd(l, u64::from(f)) * u64::from(f));
    let mut best: Option<Vec<Vec<usize>>> = None;
    for u in (1..=exponent).filter(|&u| crate::arith::gcd(u, exponent) == 1) {
        let scaled: Vec<Vec<usize>> = family
            .sets()
            .iter()
            .map(|s| s.members().iter().map(|&r| scale_rank(group, u, r)).collect())
            .collect();
        for t in 0..group.order() {
            let mut moved: Vec<Vec<usize>> = scaled
                .iter()
                .map(|s| {
                    let mut v: Vec<usize> =
                        s.iter().map(|&r| group.add_ranks(r, t)).collect();
                    v.sort_unstable();
                    v
                })
                .collect();
            moved.sort();
            if best.as_ref().is_none_or(|b| moved < *b) {
                best = Some(moved);
            }
        }
    }
    best.expect("at least the identity map")
}

/// Multiply each coordinate of the ranked element by u.
fn scale_rank(group: &GroupSpec, u: u64, rank: usize) -> usize {
    let e = group.unrank(rank).expect("rank in range");
    let coords: Vec<u32> = e
        .coords()
        .iter()
        .zip(group.factors())
        .map(|(&c, &f)| ((u64::from(c) * u) % u64::from(f)) as u32)
        .collect();
    group
        .rank(&crate::group::GroupElement::new(coords))
        .expect("coords in range")
}
