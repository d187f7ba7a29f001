//! Cyclotomic classes of order e in GF(q), cyclotomic numbers, the classical
//! identities they satisfy, and the class-difference formula.
//!
//! With q - 1 = e*f and theta the field's primitive element, class
//! `C_i = theta^i * <theta^e>` collects the nonzero elements whose discrete
//! log is congruent to i mod e. The cyclotomic number `(i,j)` counts x in
//! `C_i` with `1 + x` in `C_j`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::FieldTable;
use crate::group::{GroupSet, GroupSpec, Multiset};

/// The e cyclotomic classes of GF(q), embedded in the additive group.
#[derive(Debug)]
pub struct CyclotomicSystem<'a> {
    field: &'a FieldTable,
    e: u32,
    f: u32,
    /// Class index per element rank; rank 0 holds the sentinel.
    class_of: Vec<u32>,
    classes: Vec<GroupSet>,
    group: GroupSpec,
}

const CLASS_NONE: u32 = u32::MAX;

impl<'a> CyclotomicSystem<'a> {
    pub fn new(field: &'a FieldTable, e: u32) -> Result<Self> {
        if e < 2 {
            return Err(Error::ClassOrderRange(e));
        }
        let q = field.order();
        let q_minus_1 = (q - 1) as u32;
        if !q_minus_1.is_multiple_of(e) {
            return Err(Error::NotADivisor { e, q_minus_1 });
        }
        let f = q_minus_1 / e;
        let group = field.spec().additive_group()?;

        let mut class_of = vec![CLASS_NONE; q as usize];
        let mut members: Vec<Vec<usize>> = vec![Vec::with_capacity(f as usize); e as usize];
        for t in 0..q - 1 {
            let class = (t % u64::from(e)) as u32;
            let rank = field.power_rank(t)?;
            class_of[rank] = class;
            members[class as usize].push(rank);
        }
        let classes = members
            .into_iter()
            .map(|ranks| GroupSet::new(ranks, &group))
            .collect::<Result<Vec<_>>>()?;

        Ok(Self {
            field,
            e,
            f,
            class_of,
            classes,
            group,
        })
    }

    #[must_use]
    pub fn field(&self) -> &FieldTable {
        self.field
    }

    #[must_use]
    pub fn e(&self) -> u32 {
        self.e
    }

    #[must_use]
    pub fn f(&self) -> u32 {
        self.f
    }

    #[must_use]
    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    #[must_use]
    pub fn classes(&self) -> &[GroupSet] {
        &self.classes
    }

    /// Class index of a nonzero element rank.
    pub fn class_index(&self, rank: usize) -> Result<u32> {
        match self.class_of.get(rank) {
            Some(&c) if c != CLASS_NONE => Ok(c),
            Some(_) => Err(Error::ZeroElement),
            None => Err(Error::InvalidElement(format!(
                "rank {rank} outside 0..{}",
                self.field.order()
            ))),
        }
    }

    /// Rank of the multiplicative identity.
    fn one_rank(&self) -> usize {
        self.field.power_rank(0).expect("0 is a valid exponent")
    }

    /// True when -1 lies in the principal class C_0.
    #[must_use]
    pub fn minus_one_in_c0(&self) -> bool {
        self.class_of[self.group.neg_rank(self.one_rank())] == 0
    }

    /// The full e x e table by direct enumeration over the nonzero elements.
    #[must_use]
    pub fn cyclotomic_numbers(&self) -> CyclotomicTable {
        let q = self.field.order() as usize;
        let one = self.one_rank();
        let mut numbers = vec![vec![0u64; self.e as usize]; self.e as usize];
        for x in 1..q {
            let y = self.group.add_ranks(one, x);
            if y != 0 {
                numbers[self.class_of[x] as usize][self.class_of[y] as usize] += 1;
            }
        }
        CyclotomicTable { e: self.e, numbers }
    }

    /// Verify the classical identities on a computed table. Violations mean
    /// an implementation bug, so they are reported, not silently dropped.
    #[must_use]
    pub fn identity_report(&self, table: &CyclotomicTable) -> IdentityReport {
        let e = i64::from(self.e);
        let p = self.field.spec().p() as i64;
        let minus_one_in_c0 = self.minus_one_in_c0();
        let f_even = self.f.is_multiple_of(2);
        let mut checks = 0u64;
        let mut violations = Vec::new();

        for i in 0..e {
            for j in 0..e {
                let base = table.get(i, j);

                // Index periodicity mod e.
                checks += 1;
                if table.get(i + e, j - e) != base {
                    violations.push(format!("periodicity failed at ({i},{j})"));
                }
                // Reflection: (i,j) = (-i, j-i).
                checks += 1;
                if table.get(-i, j - i) != base {
                    violations.push(format!("reflection failed at ({i},{j})"));
                }
                // Characteristic map: (i,j) = (p*i, p*j).
                checks += 1;
                if table.get(p * i, p * j) != base {
                    violations.push(format!("characteristic map failed at ({i},{j})"));
                }
                // Symmetry whenever -1 is in C_0 (always the case for even f).
                if minus_one_in_c0 {
                    checks += 1;
                    if table.get(j, i) != base {
                        violations.push(format!("symmetry failed at ({i},{j})"));
                    }
                }
            }
        }

        if f_even && !minus_one_in_c0 {
            violations.push("f is even but -1 is outside C_0".into());
        }
        checks += 1;

        // Row sums count every x except x = -1 in its own row.
        let minus_one_class = self.class_of[self.group.neg_rank(self.one_rank())];
        for i in 0..self.e {
            checks += 1;
            let sum: u64 = (0..self.e).map(|j| table.get(i64::from(i), i64::from(j))).sum();
            let expected = u64::from(self.f) - u64::from(minus_one_class == i);
            if sum != expected {
                violations.push(format!("row {i} sums to {sum}, expected {expected}"));
            }
        }

        // Classes closed under negation whenever -1 is in C_0.
        if minus_one_in_c0 {
            for (i, class) in self.classes.iter().enumerate() {
                checks += 1;
                let closed = class
                    .members()
                    .iter()
                    .all(|&r| class.contains(self.group.neg_rank(r)));
                if !closed {
                    violations.push(format!("class {i} is not closed under negation"));
                }
            }
        }

        IdentityReport {
            e: self.e,
            f: self.f,
            f_even,
            minus_one_in_c0,
            checks,
            violations,
        }
    }

    /// Predicted difference multiset of the principal class with itself:
    /// `f` at 0 and `(e-i, e-i)` on each element of `C_i`. Implemented for
    /// even class size, where -1 is in C_0.
    pub fn delta_c0_from_table(&self, table: &CyclotomicTable) -> Result<Multiset> {
        if !self.f.is_multiple_of(2) {
            return Err(Error::OddClassSize(self.f));
        }
        let mut counts = vec![0u64; self.group.order()];
        counts[0] = u64::from(self.f);
        for (i, class) in self.classes.iter().enumerate() {
            let c = table.get(-(i as i64), -(i as i64));
            for &r in class.members() {
                counts[r] = c;
            }
        }
        Ok(Multiset::from_counts(counts))
    }

    /// TSV rendering of a table: provenance header, then e rows of e counts.
    #[must_use]
    pub fn table_tsv(&self, table: &CyclotomicTable) -> String {
        let spec = self.field.spec();
        let mut out = format!(
            "# p={} m={} modulus={} e={} f={} theta={}\n",
            spec.p(),
            spec.m(),
            spec.modulus_string(),
            self.e,
            self.f,
            spec.format_element(self.field.theta()),
        );
        for row in &table.numbers {
            let cells: Vec<String> = row.iter().map(u64::to_string).collect();
            out.push_str(&cells.join("\t"));
            out.push('\n');
        }
        out
    }
}

/// The e x e matrix of cyclotomic numbers `(i,j)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CyclotomicTable {
    e: u32,
    numbers: Vec<Vec<u64>>,
}

impl CyclotomicTable {
    /// Lookup with both indices reduced mod e, so identities can be queried
    /// with negative or shifted arguments directly.
    #[must_use]
    pub fn get(&self, i: i64, j: i64) -> u64 {
        let e = i64::from(self.e);
        self.numbers[i.rem_euclid(e) as usize][j.rem_euclid(e) as usize]
    }

    #[must_use]
    pub fn e(&self) -> u32 {
        self.e
    }

    #[must_use]
    pub fn numbers(&self) -> &[Vec<u64>] {
        &self.numbers
    }

    #[must_use]
    pub fn total(&self) -> u64 {
        self.numbers.iter().flatten().sum()
    }
}

/// Outcome of checking the classical identities on one table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub e: u32,
    pub f: u32,
    pub f_even: bool,
    pub minus_one_in_c0: bool,
    pub checks: u64,
    pub violations: Vec<String>,
}

impl IdentityReport {
    #[must_use]
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}
