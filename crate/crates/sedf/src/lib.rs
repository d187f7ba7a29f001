//! Construction, verification, and search tools for strong external
//! difference families (SEDFs) over finite abelian groups.
//!
//! The crate covers four layers:
//!
//! * [`group`] — finite abelian groups as products of cyclic factors, with
//!   dense element ranks and difference multisets;
//! * [`gf`] — finite fields GF(p^m) with certified primitive elements and
//!   exp/log tables;
//! * [`cyclotomy`] — cyclotomic classes of a fixed order, cyclotomic numbers,
//!   and their classical identities;
//! * [`edf`] / [`search`] — SEDF and partial-difference-set verification,
//!   certificates, parameter scans, and exhaustive search.
//!
//! The default `parallel` feature routes scans and searches through rayon;
//! the sequential implementations stay available unconditionally and the two
//! produce identical output.

pub mod arith;
pub mod cyclotomy;
pub mod edf;
pub mod error;
pub mod gf;
pub mod group;
#[cfg(feature = "parallel")]
pub mod parallel;
pub mod search;

pub use cyclotomy::{CyclotomicSystem, CyclotomicTable, IdentityReport};
pub use edf::{
    certificate_to_family, feasible_lambda, pds_partition_sedf, sedf_from_cyclotomy, verify_pds,
    verify_sedf, CyclotomicSedf, DesignFamily, PartitionReport, PdsParams, PdsReport, Provenance,
    SedfCertificate, SedfParams,
};
pub use error::{Error, Result};
pub use gf::{parse_coeffs, FieldElement, FieldSpec, FieldTable, PrimitivityCertificate};
pub use group::{GroupElement, GroupSet, GroupSpec, Multiset};
pub use search::{
    dedup_by_scalar, exhaustive_search, feasible_tuples, prime_powers_up_to, scan_cyclotomic,
    scan_tsv, ParamTuple, PrimePower, ScanRow, SearchOutcome,
};
