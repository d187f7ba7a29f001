//! Finite fields GF(p^m) presented by an explicit monic irreducible modulus,
//! with discrete-log tables over a certified primitive element.
//!
//! Polynomials are coefficient vectors in ascending degree: `[c0, c1, ..]`
//! means `c0 + c1 x + ...`. An element's rank is its mixed-radix value with
//! `c0` most significant, matching [`GroupSpec`] ranks for the additive group
//! `(Z_p)^m`, so rank 0 is always the zero element.

use serde::{Deserialize, Serialize};

use crate::arith::{gcd, is_prime, prime_factors};
use crate::error::{Error, Result};
use crate::group::GroupSpec;

/// Hard cap on the field size the table representation accepts.
pub const MAX_FIELD_ORDER: u64 = 1 << 20;

/// A field presentation: characteristic plus a monic irreducible modulus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldSpec {
    p: u64,
    m: usize,
    /// Ascending coefficients `c0..=cm`, `cm == 1`, all below `p`.
    modulus: Vec<u64>,
}

impl FieldSpec {
    pub fn new(p: u64, modulus: Vec<u64>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::FieldConstruction(format!(
                "characteristic {p} is not prime"
            )));
        }
        if modulus.len() < 2 {
            return Err(Error::InvalidPolynomial(
                "modulus must have degree at least 1".into(),
            ));
        }
        check_capacity(p, modulus.len() - 1)?;
        if let Some(&c) = modulus.iter().find(|&&c| c >= p) {
            return Err(Error::InvalidPolynomial(format!(
                "coefficient {c} is outside 0..{p}"
            )));
        }
        if *modulus.last().unwrap() != 1 {
            return Err(Error::InvalidPolynomial(format!(
                "modulus must be monic, got leading coefficient {}",
                modulus.last().unwrap()
            )));
        }
        if !is_irreducible(p, &modulus) {
            return Err(Error::InvalidPolynomial(format!(
                "modulus {} is reducible over GF({p})",
                coeff_string(&modulus)
            )));
        }
        let m = modulus.len() - 1;
        Ok(Self { p, m, modulus })
    }

    /// The canonical degree-`m` presentation: the first monic irreducible in
    /// ascending lexicographic order on `(c0, .., c_{m-1})`.
    pub fn with_default_modulus(p: u64, m: usize) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::FieldConstruction(format!(
                "characteristic {p} is not prime"
            )));
        }
        if m == 0 {
            return Err(Error::FieldConstruction("extension degree is zero".into()));
        }
        check_capacity(p, m)?;
        let mut coeffs = vec![0u64; m + 1];
        coeffs[m] = 1;
        loop {
            if is_irreducible(p, &coeffs) {
                return Ok(Self { p, m, modulus: coeffs });
            }
            // Odometer step, last low-degree coefficient fastest.
            let mut i = m;
            loop {
                if i == 0 {
                    return Err(Error::FieldConstruction(format!(
                        "no monic irreducible of degree {m} over GF({p})"
                    )));
                }
                i -= 1;
                coeffs[i] += 1;
                if coeffs[i] < p {
                    break;
                }
                coeffs[i] = 0;
            }
        }
    }

    #[must_use]
    pub fn p(&self) -> u64 {
        self.p
    }

    #[must_use]
    pub fn m(&self) -> usize {
        self.m
    }

    #[must_use]
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    /// Field order `p^m`, or a capacity error past [`MAX_FIELD_ORDER`].
    pub fn order(&self) -> Result<u64> {
        check_capacity(self.p, self.m)
    }

    /// Modulus as comma-separated ascending coefficients, e.g. `1,2,1,1,1,1`.
    #[must_use]
    pub fn modulus_string(&self) -> String {
        coeff_string(&self.modulus)
    }

    /// Canonical element rendering: coefficients ascending by degree inside
    /// parentheses, concatenated digits for single-digit characteristics and
    /// comma-separated otherwise.
    #[must_use]
    pub fn format_element(&self, e: &FieldElement) -> String {
        let mut s = String::from("(");
        for (i, &c) in e.coeffs.iter().enumerate() {
            if self.p > 9 && i > 0 {
                s.push(',');
            }
            s.push_str(&c.to_string());
        }
        s.push(')');
        s
    }

    /// The additive group `(Z_p)^m`, ranks aligned with element ranks.
    pub fn additive_group(&self) -> Result<GroupSpec> {
        GroupSpec::new(vec![self.p as u32; self.m])
    }

    #[must_use]
    pub fn element_rank(&self, e: &FieldElement) -> usize {
        let mut r = 0usize;
        for &c in &e.coeffs {
            r = r * self.p as usize + c as usize;
        }
        r
    }

    pub fn element_from_rank(&self, mut r: usize) -> Result<FieldElement> {
        let q = self.order()? as usize;
        if r >= q {
            return Err(Error::InvalidElement(format!("rank {r} outside 0..{q}")));
        }
        let mut coeffs = vec![0u64; self.m];
        for i in (0..self.m).rev() {
            coeffs[i] = (r % self.p as usize) as u64;
            r /= self.p as usize;
        }
        Ok(FieldElement { coeffs })
    }
}

/// A field element as `m` ascending coefficients below `p`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FieldElement {
    coeffs: Vec<u64>,
}

impl FieldElement {
    #[must_use]
    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    #[must_use]
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }
}

/// One verification row of a primitivity certificate: for a prime `r`
/// dividing `q - 1`, the element `theta^((q-1)/r)`, which must differ from 1.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimitivityWitness {
    pub prime: u64,
    pub exponent: u64,
    pub value: String,
    pub is_one: bool,
}

/// Re-checkable evidence that `theta` generates the multiplicative group.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimitivityCertificate {
    pub theta: String,
    pub group_order: u64,
    pub factorization: Vec<(u64, u32)>,
    pub witnesses: Vec<PrimitivityWitness>,
}

impl PrimitivityCertificate {
    /// True when every witness element differs from 1.
    #[must_use]
    pub fn holds(&self) -> bool {
        !self.witnesses.is_empty() && self.witnesses.iter().all(|w| !w.is_one)
    }
}

/// A fully materialized field: exp/log tables over the canonical primitive
/// element. The primitive element is the class of `x` when that class
/// generates the multiplicative group, otherwise the generator of least rank.
#[derive(Debug, Clone)]
pub struct FieldTable {
    spec: FieldSpec,
    q: u64,
    theta: FieldElement,
    /// `exp_ranks[t]` is the rank of `theta^t`, `t` in `0..q-1`.
    exp_ranks: Vec<usize>,
    /// Discrete log per rank; `LOG_NONE` marks the zero element.
    log_by_rank: Vec<u32>,
    q_minus_1_factors: Vec<(u64, u32)>,
}

const LOG_NONE: u32 = u32::MAX;

impl FieldTable {
    pub fn new(spec: FieldSpec) -> Result<Self> {
        let q = spec.order()?;
        let p = spec.p;
        let m = spec.m;
        let factors = prime_factors(q - 1);

        // Choose theta: prefer the class of x, else scan ranks upward.
        let x_class = reduce_x(&spec);
        let theta = if multiplicative_order(&spec, &x_class, q, &factors) == Some(q - 1) {
            FieldElement { coeffs: x_class }
        } else {
            let mut found = None;
            for r in 1..q as usize {
                let cand = spec.element_from_rank(r)?;
                if multiplicative_order(&spec, &cand.coeffs, q, &factors) == Some(q - 1) {
                    found = Some(cand);
                    break;
                }
            }
            found.ok_or_else(|| {
                Error::Internal("no primitive element found in a finite field".into())
            })?
        };

        // Walk theta^0, theta^1, .. once around the multiplicative group.
        let theta_is_x = theta.coeffs == reduce_x(&spec);
        let mut exp_ranks = Vec::with_capacity((q - 1) as usize);
        let mut log_by_rank = vec![LOG_NONE; q as usize];
        let mut v = one_vec(m);
        for t in 0..q - 1 {
            let rank = rank_of(&spec, &v);
            if log_by_rank[rank] != LOG_NONE {
                return Err(Error::Internal(
                    "primitive element powers revisited an element".into(),
                ));
            }
            log_by_rank[rank] = t as u32;
            exp_ranks.push(rank);
            v = if theta_is_x {
                mul_by_x(&v, &spec.modulus, p)
            } else {
                poly_mul_mod(&v, &theta.coeffs, &spec.modulus, p)
            };
        }
        if v != one_vec(m) {
            return Err(Error::Internal(
                "primitive element powers did not close a cycle".into(),
            ));
        }

        Ok(Self {
            spec,
            q,
            theta,
            exp_ranks,
            log_by_rank,
            q_minus_1_factors: factors,
        })
    }

    pub fn with_default_modulus(p: u64, m: usize) -> Result<Self> {
        Self::new(FieldSpec::with_default_modulus(p, m)?)
    }

    #[must_use]
    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    #[must_use]
    pub fn order(&self) -> u64 {
        self.q
    }

    #[must_use]
    pub fn theta(&self) -> &FieldElement {
        &self.theta
    }

    #[must_use]
    pub fn theta_rank(&self) -> usize {
        self.spec.element_rank(&self.theta)
    }

    /// Rank of `theta^t` for `t` in `0..q-1`.
    pub fn power_rank(&self, t: u64) -> Result<usize> {
        if t >= self.q - 1 {
            return Err(Error::ExponentRange { t, limit: self.q - 1 });
        }
        Ok(self.exp_ranks[t as usize])
    }

    /// Coefficient vector of `theta^t` for `t` in `0..q-1`.
    pub fn power_vector(&self, t: u64) -> Result<FieldElement> {
        self.spec.element_from_rank(self.power_rank(t)?)
    }

    /// Discrete log base theta of a nonzero rank.
    pub fn log_rank(&self, rank: usize) -> Result<u64> {
        if rank == 0 {
            return Err(Error::ZeroElement);
        }
        match self.log_by_rank.get(rank) {
            Some(&t) if t != LOG_NONE => Ok(u64::from(t)),
            _ => Err(Error::InvalidElement(format!(
                "rank {rank} outside 0..{}",
                self.q
            ))),
        }
    }

    pub fn log(&self, e: &FieldElement) -> Result<u64> {
        if e.coeffs.len() != self.spec.m {
            return Err(Error::InvalidElement(format!(
                "expected {} coefficients, got {}",
                self.spec.m,
                e.coeffs.len()
            )));
        }
        if let Some(&c) = e.coeffs.iter().find(|&&c| c >= self.spec.p) {
            return Err(Error::InvalidElement(format!(
                "coefficient {c} is outside 0..{}",
                self.spec.p
            )));
        }
        self.log_rank(self.spec.element_rank(e))
    }

    /// Table-based product of two ranks.
    pub fn mul_ranks(&self, a: usize, b: usize) -> Result<usize> {
        if a.max(b) >= self.q as usize {
            return Err(Error::InvalidElement(format!(
                "rank {} outside 0..{}",
                a.max(b),
                self.q
            )));
        }
        if a == 0 || b == 0 {
            return Ok(0);
        }
        let t = (self.log_rank(a)? + self.log_rank(b)?) % (self.q - 1);
        Ok(self.exp_ranks[t as usize])
    }

    /// Multiplicative order of a nonzero rank.
    pub fn element_order(&self, rank: usize) -> Result<u64> {
        let t = self.log_rank(rank)?;
        Ok((self.q - 1) / gcd(t, self.q - 1))
    }

    pub fn is_primitive(&self, rank: usize) -> Result<bool> {
        Ok(self.element_order(rank)? == self.q - 1)
    }

    /// Witness elements `theta^((q-1)/r)` for every prime `r` dividing `q-1`.
    #[must_use]
    pub fn order_certificate(&self) -> PrimitivityCertificate {
        let witnesses = self
            .q_minus_1_factors
            .iter()
            .map(|&(r, _)| {
                let exponent = (self.q - 1) / r;
                let rank = self.exp_ranks[exponent as usize];
                let value = self.spec.element_from_rank(rank).expect("rank in range");
                PrimitivityWitness {
                    prime: r,
                    exponent,
                    is_one: value.coeffs == one_vec(self.spec.m),
                    value: self.spec.format_element(&value),
                }
            })
            .collect();
        PrimitivityCertificate {
            theta: self.spec.format_element(&self.theta),
            group_order: self.q - 1,
            factorization: self.q_minus_1_factors.clone(),
            witnesses,
        }
    }
}

/// `p^m` when it fits the table capacity, a capacity error otherwise.
fn check_capacity(p: u64, m: usize) -> Result<u64> {
    let mut q = 1u64;
    for _ in 0..m {
        q = q
            .checked_mul(p)
            .filter(|&q| q <= MAX_FIELD_ORDER)
            .ok_or_else(|| {
                Error::Capacity(format!("field order {p}^{m} exceeds {MAX_FIELD_ORDER}"))
            })?;
    }
    Ok(q)
}

/// Parse comma-separated ascending coefficients, e.g. `"1,2,1,1,1,1"`.
pub fn parse_coeffs(s: &str) -> Result<Vec<u64>> {
    s.split(',')
        .map(|part| {
            part.trim()
                .parse::<u64>()
                .map_err(|_| Error::Parse(format!("bad coefficient {part:?}")))
        })
        .collect()
}

/// Irreducibility over GF(p) by Frobenius steps: a monic `f` of degree `d`
/// is reducible iff it shares a factor with `x^(p^k) - x` for some
/// `k <= d/2`.
#[must_use]
pub fn is_irreducible(p: u64, f: &[u64]) -> bool {
    let d = f.len() - 1;
    if d == 0 || f[d] != 1 || f.iter().any(|&c| c >= p) {
        return false;
    }
    if d == 1 {
        return true;
    }
    let mut g = reduce_x_mod(f, p); // class of x
    for _ in 0..d / 2 {
        g = poly_pow_mod(&g, p, f, p); // x^(p^k) after k steps
        let mut diff = g.clone();
        diff[1] = (diff[1] + p - 1) % p; // x^(p^k) - x
        if poly_deg(&poly_gcd(&diff, f, p)) != 0 {
            return false;
        }
    }
    true
}

fn coeff_string(coeffs: &[u64]) -> String {
    coeffs
        .iter()
        .map(u64::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

fn one_vec(m: usize) -> Vec<u64> {
    let mut v = vec![0u64; m];
    v[0] = 1;
    v
}

fn rank_of(spec: &FieldSpec, coeffs: &[u64]) -> usize {
    let mut r = 0usize;
    for &c in coeffs {
        r = r * spec.p as usize + c as usize;
    }
    r
}

/// Class of x in GF(p)[x]/(f), as an m-vector.
fn reduce_x(spec: &FieldSpec) -> Vec<u64> {
    reduce_x_len(&spec.modulus, spec.p, spec.m)
}

fn reduce_x_mod(f: &[u64], p: u64) -> Vec<u64> {
    reduce_x_len(f, p, f.len() - 1)
}

fn reduce_x_len(f: &[u64], p: u64, m: usize) -> Vec<u64> {
    let mut v = vec![0u64; m];
    if m == 1 {
        v[0] = (p - f[0]) % p; // x = -c0 mod (x + c0)
    } else {
        v[1] = 1;
    }
    v
}

/// Multiply by the class of x: shift up, fold the overflow through `f`.
fn mul_by_x(v: &[u64], f: &[u64], p: u64) -> Vec<u64> {
    let m = v.len();
    let top = v[m - 1];
    let mut out = vec![0u64; m];
    for i in (1..m).rev() {
        out[i] = v[i - 1];
    }
    if top != 0 {
        for i in 0..m {
            out[i] = (out[i] + top * (p - f[i])) % p;
        }
    }
    out
}

/// Product of two m-vectors modulo `f` (monic, degree m).
fn poly_mul_mod(a: &[u64], b: &[u64], f: &[u64], p: u64) -> Vec<u64> {
    let m = a.len();
    let mut wide = vec![0u64; 2 * m - 1];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            wide[i + j] = (wide[i + j] + ai * bj) % p;
        }
    }
    // Fold degrees 2m-2 .. m down through the monic modulus.
    for d in (m..2 * m - 1).rev() {
        let c = wide[d];
        if c == 0 {
            continue;
        }
        wide[d] = 0;
        for (i, &fi) in f.iter().take(m).enumerate() {
            let idx = d - m + i;
            wide[idx] = (wide[idx] + c * (p - fi)) % p;
        }
    }
    wide.truncate(m);
    wide
}

fn poly_pow_mod(base: &[u64], mut e: u64, f: &[u64], p: u64) -> Vec<u64> {
    let m = f.len() - 1;
    let mut acc = one_vec(m);
    let mut b = base.to_vec();
    while e > 0 {
        if e & 1 == 1 {
            acc = poly_mul_mod(&acc, &b, f, p);
        }
        e >>= 1;
        if e > 0 {
            b = poly_mul_mod(&b, &b, f, p);
        }
    }
    acc
}

fn poly_deg(a: &[u64]) -> usize {
    a.iter().rposition(|&c| c != 0).unwrap_or(0)
}

fn mod_pow(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

/// Remainder of `a` by nonzero `b` over GF(p), coefficients ascending.
fn poly_rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let db = poly_deg(b);
    let inv_lead = mod_pow(b[db], p - 2, p);
    let mut r = a.to_vec();
    while poly_deg(&r) >= db && r.iter().any(|&c| c != 0) {
        let dr = poly_deg(&r);
        let scale = r[dr] * inv_lead % p;
        for i in 0..=db {
            r[dr - db + i] = (r[dr - db + i] + scale * (p - b[i])) % p;
        }
        if dr == 0 {
            break;
        }
    }
    r.truncate(db.max(1));
    r
}

/// Monic gcd over GF(p); the constant 1 is returned as `[1]`.
fn poly_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    while b.iter().any(|&c| c != 0) {
        let r = poly_rem(&a, &b, p);
        a = b;
        b = r;
    }
    let d = poly_deg(&a);
    a.truncate(d + 1);
    if a.iter().any(|&c| c != 0) {
        let inv = mod_pow(a[d], p - 2, p);
        for c in &mut a {
            *c = *c * inv % p;
        }
    }
    a
}

/// Order of a nonzero element by peeling prime factors from `q - 1`;
/// `None` for the zero element.
fn multiplicative_order(
    spec: &FieldSpec,
    v: &[u64],
    q: u64,
    factors: &[(u64, u32)],
) -> Option<u64> {
    if v.iter().all(|&c| c == 0) {
        return None;
    }
    let one = one_vec(spec.m);
    let mut d = q - 1;
    for &(r, _) in factors {
        while d.is_multiple_of(r) && poly_pow_mod(v, d / r, &spec.modulus, spec.p) == one {
            d /= r;
        }
    }
    Some(d)
}
