//! Rayon drivers for the scan and the exhaustive search.
//!
//! Each function mirrors its sequential counterpart in [`crate::search`] and
//! produces byte-identical results: work units (one field for the scan, one
//! first-set subtree for the search) are independent, and results are merged
//! in input order regardless of completion order.

use rayon::prelude::*;

use crate::error::Result;
use crate::group::GroupSpec;
use crate::search::{
    check_scan_capacity, finish_outcome, prime_powers_up_to, scan_one_field, ScanRow,
    SearchOutcome, SearchPlan, SubtreeOutcome,
};

/// Parallel twin of [`crate::search::scan_cyclotomic`]: one task per prime
/// power.
pub fn scan_cyclotomic(q_max: u64, m_min: u32) -> Result<Vec<ScanRow>> {
    check_scan_capacity(q_max)?;
    let fields: Vec<Result<Vec<ScanRow>>> = prime_powers_up_to(q_max)
        .par_iter()
        .map(|pp| scan_one_field(pp.p, pp.m, m_min))
        .collect();
    let mut rows = Vec::new();
    for field_rows in fields {
        rows.extend(field_rows?);
    }
    Ok(rows)
}

/// Parallel twin of [`crate::search::exhaustive_search`]: one task per
/// first-set subtree.
///
/// A node limit makes progress depend on traversal order, so limited
/// searches run sequentially to keep the two implementations identical.
pub fn exhaustive_search(
    group: &GroupSpec,
    m: usize,
    k: usize,
    limit: Option<u64>,
) -> Result<SearchOutcome> {
    if limit.is_some() {
        return crate::search::exhaustive_search(group, m, k, limit);
    }
    let plan = SearchPlan::new(group, m, k)?;
    let (firsts, first_nodes, _) = plan.first_sets(None);
    let subtrees: Vec<SubtreeOutcome> = firsts
        .par_iter()
        .map(|first| plan.search_subtree(first, None))
        .collect();
    let mut raw = Vec::new();
    let mut nodes = first_nodes;
    for out in subtrees {
        nodes += out.nodes;
        raw.extend(out.families);
    }
    finish_outcome(group, raw, nodes, false)
}
