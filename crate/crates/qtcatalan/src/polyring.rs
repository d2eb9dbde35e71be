//! Exact sparse polynomials in `q`, `t`, `x1..xr` with integer
//! coefficients, and the polynomial-level constructions built on them:
//! Gaussian binomials, truncated Gessel functions, the rank-`r` weighted
//! path polynomials by two independent pipelines, Schur expansion, and an
//! exact q-deformation of the counting formula.
//!
//! Key Design Notes
//! - Coefficients are arbitrary-precision integers; the only divisions
//!   (Gaussian binomials, the q-deformation) are exact polynomial long
//!   divisions with explicit remainder checks.
//! - Terms live in a `BTreeMap` keyed by exponent vectors under
//!   graded-lexicographic order, so iteration and serialization are
//!   canonical and byte-deterministic.
//! - The substitution `t -> 1/q` yields Laurent objects; these carry a
//!   single global `q`-offset (always `<= 0`) instead of signed exponent
//!   vectors, and every operation renormalizes so equal values have equal
//!   representations.
//! - [`higher_catalan`] sums over weakly-labeled paths directly, while
//!   [`hikita_truncated`] sums Gessel functions over bijectively-labeled
//!   paths without touching the standardization machinery; their equality
//!   is a genuine cross-check, not a shared code path.

use crate::affine::{inverse_descents, to_affine_permutation};
use crate::error::{Error, Result};
use crate::lattice::GridParams;
use crate::parking::{enumerate_parking_functions, enumerate_sspf};
use crate::statistics::affine_codinv;
use num::integer::gcd;
use num::{BigInt, Integer, One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::ops::{Add, Mul, Neg, Sub};

/// Exponent vector `(e_q, e_t, e_{x1}, ..., e_{xr})`, ordered by total
/// degree first and lexicographically within a degree.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Expo(Vec<i64>);

impl Expo {
    fn new(v: Vec<i64>) -> Self {
        debug_assert!(v.iter().all(|&e| e >= 0), "exponents must be nonnegative");
        Expo(v)
    }

    /// `[e_q, e_t, e_{x1}, ..., e_{xr}]`.
    pub fn exponents(&self) -> &[i64] {
        &self.0
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().sum()
    }
}

impl Ord for Expo {
    fn cmp(&self, other: &Self) -> Ordering {
        graded_lex(&self.0, &other.0)
    }
}

impl PartialOrd for Expo {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn graded_lex(a: &[i64], b: &[i64]) -> Ordering {
    debug_assert_eq!(
        a.len(),
        b.len(),
        "cannot compare exponents of different lengths"
    );
    let da: i64 = a.iter().sum();
    let db: i64 = b.iter().sum();
    da.cmp(&db).then_with(|| a.cmp(b))
}

/// A sparse polynomial in `q`, `t`, and `x1..x_rank`, with an optional
/// global power `q^qoffset` (`qoffset <= 0`) for Laurent values produced
/// by the substitution `t -> 1/q`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MultiPoly {
    rank: usize,
    qoffset: i64,
    terms: BTreeMap<Expo, BigInt>,
}

impl MultiPoly {
    pub fn zero(rank: usize) -> Self {
        MultiPoly {
            rank,
            qoffset: 0,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(rank: usize, c: BigInt) -> Self {
        let mut p = Self::zero(rank);
        if !c.is_zero() {
            p.terms.insert(Expo::new(vec![0; rank + 2]), c);
        }
        p
    }

    pub fn one(rank: usize) -> Self {
        Self::constant(rank, BigInt::one())
    }

    pub fn var_q(rank: usize) -> Self {
        Self::monomial(rank, BigInt::one(), 1, 0, &vec![0; rank])
    }

    pub fn var_t(rank: usize) -> Self {
        Self::monomial(rank, BigInt::one(), 0, 1, &vec![0; rank])
    }

    /// The variable `x_i` (1-based `i <= rank`).
    pub fn var_x(rank: usize, i: usize) -> Self {
        assert!((1..=rank).contains(&i), "x-index {i} outside 1..={rank}");
        let mut ex = vec![0; rank];
        ex[i - 1] = 1;
        Self::monomial(rank, BigInt::one(), 0, 0, &ex)
    }

    pub fn monomial(rank: usize, c: BigInt, eq: i64, et: i64, ex: &[i64]) -> Self {
        let mut p = Self::zero(rank);
        p.add_term(eq, et, ex, c);
        p
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// The global Laurent offset; `0` for true polynomials.
    pub fn qoffset(&self) -> i64 {
        self.qoffset
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending graded-lex order. Exponents are relative to the
    /// offset: the monomial value is `q^(qoffset + e_q) t^e_t x^e`.
    pub fn terms(&self) -> impl Iterator<Item = (&Expo, &BigInt)> {
        self.terms.iter()
    }

    /// Add `c * q^eq t^et x^ex` into a true polynomial (offset 0).
    pub fn add_term(&mut self, eq: i64, et: i64, ex: &[i64], c: BigInt) {
        assert_eq!(self.qoffset, 0, "add_term requires a true polynomial");
        assert_eq!(ex.len(), self.rank, "x-exponent arity mismatch");
        assert!(eq >= 0 && et >= 0 && ex.iter().all(|&e| e >= 0));
        if c.is_zero() {
            return;
        }
        let mut key = Vec::with_capacity(self.rank + 2);
        key.push(eq);
        key.push(et);
        key.extend_from_slice(ex);
        match self.terms.entry(Expo::new(key)) {
            std::collections::btree_map::Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
            std::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(c);
            }
        }
    }

    /// Restore the canonical form: no zero coefficients, and the offset
    /// folded as far toward 0 as the terms allow.
    fn normalize(&mut self) {
        self.terms.retain(|_, c| !c.is_zero());
        if self.terms.is_empty() {
            self.qoffset = 0;
            return;
        }
        let dmin = self.terms.keys().map(|e| e.0[0]).min().unwrap();
        let shift = dmin.min(-self.qoffset);
        if shift > 0 {
            self.qoffset += shift;
            let old = std::mem::take(&mut self.terms);
            for (mut e, c) in old {
                e.0[0] -= shift;
                self.terms.insert(e, c);
            }
        }
    }

    /// Coefficient of `q^eq t^et x^ex` in the represented value.
    pub fn coefficient(&self, eq: i64, et: i64, ex: &[i64]) -> BigInt {
        assert_eq!(ex.len(), self.rank);
        let shifted = eq - self.qoffset;
        if shifted < 0 || et < 0 || ex.iter().any(|&e| e < 0) {
            return BigInt::zero();
        }
        let mut key = vec![shifted, et];
        key.extend_from_slice(ex);
        self.terms
            .get(&Expo::new(key))
            .cloned()
            .unwrap_or_else(BigInt::zero)
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        if self.rank != other.rank {
            return Err(Error::RankMismatch {
                left: self.rank,
                right: other.rank,
            });
        }
        let offset = self.qoffset.min(other.qoffset);
        let mut out = Self::zero(self.rank);
        out.qoffset = offset;
        for (src, shift) in [
            (self, self.qoffset - offset),
            (other, other.qoffset - offset),
        ] {
            for (e, c) in &src.terms {
                let mut key = e.clone();
                key.0[0] += shift;
                let entry = out.terms.entry(key).or_insert_with(BigInt::zero);
                *entry += c;
            }
        }
        out.normalize();
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        if self.rank != other.rank {
            return Err(Error::RankMismatch {
                left: self.rank,
                right: other.rank,
            });
        }
        let mut out = Self::zero(self.rank);
        out.qoffset = self.qoffset + other.qoffset;
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let key: Vec<i64> = ea.0.iter().zip(&eb.0).map(|(a, b)| a + b).collect();
                let entry = out.terms.entry(Expo::new(key)).or_insert_with(BigInt::zero);
                *entry += ca * cb;
            }
        }
        out.normalize();
        Ok(out)
    }

    /// In-place sum, merging term maps.
    pub fn add_assign(&mut self, other: &Self) {
        let sum = self
            .checked_add(other)
            .expect("rank mismatch in add_assign");
        *self = sum;
    }

    /// Multiply every coefficient by an integer.
    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero(self.rank);
        }
        let mut out = self.clone();
        for v in out.terms.values_mut() {
            *v *= c;
        }
        out
    }

    /// Multiply by the monomial `q^eq t^et` (shift every term).
    pub fn shifted(&self, eq: i64, et: i64) -> Self {
        assert!(eq >= 0 && et >= 0);
        let mut out = Self::zero(self.rank);
        out.qoffset = self.qoffset;
        for (e, c) in &self.terms {
            let mut key = e.clone();
            key.0[0] += eq;
            key.0[1] += et;
            out.terms.insert(key, c.clone());
        }
        out.normalize();
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::one(self.rank);
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// Value with every variable set to 1 (the offset is immaterial).
    pub fn evaluate_all_ones(&self) -> BigInt {
        self.terms.values().fold(BigInt::zero(), |acc, c| acc + c)
    }

    /// Exchange the roles of `q` and `t`; requires a true polynomial.
    pub fn swap_qt(&self) -> Self {
        assert_eq!(self.qoffset, 0, "cannot swap q,t on a Laurent value");
        let mut out = Self::zero(self.rank);
        for (e, c) in &self.terms {
            let mut key = e.clone();
            key.0.swap(0, 1);
            out.terms.insert(key, c.clone());
        }
        out
    }

    /// Substitute `t -> 1/q`, producing a Laurent value in `q` tracked by
    /// the global offset.
    pub fn substitute_t_q_inverse(&self) -> Self {
        let mut raw: BTreeMap<Vec<i64>, BigInt> = BTreeMap::new();
        for (e, c) in &self.terms {
            let mut key = e.0.clone();
            key[0] -= key[1];
            key[1] = 0;
            let entry = raw.entry(key).or_insert_with(BigInt::zero);
            *entry += c;
        }
        let dmin = raw.keys().map(|k| k[0]).min().unwrap_or(0).min(0);
        let mut out = Self::zero(self.rank);
        out.qoffset = self.qoffset + dmin;
        for (mut key, c) in raw {
            key[0] -= dmin;
            out.terms.insert(Expo::new(key), c);
        }
        out.normalize();
        out
    }

    /// Rename x-variables: the new exponent at position `i` is the old
    /// exponent at position `perm[i]` (0-based slots into `x1..xr`).
    pub fn permute_x(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.rank {
            return Err(Error::RankMismatch {
                left: perm.len(),
                right: self.rank,
            });
        }
        let mut seen = vec![false; self.rank];
        for &p in perm {
            if p >= self.rank || std::mem::replace(&mut seen[p], true) {
                return Err(Error::invalid(format!(
                    "{perm:?} is not a permutation of x-slots"
                )));
            }
        }
        let mut out = Self::zero(self.rank);
        out.qoffset = self.qoffset;
        for (e, c) in &self.terms {
            let mut key = e.0.clone();
            for (i, &p) in perm.iter().enumerate() {
                key[2 + i] = e.0[2 + p];
            }
            let entry = out.terms.entry(Expo::new(key)).or_insert_with(BigInt::zero);
            *entry += c;
        }
        out.normalize();
        Ok(out)
    }

    /// Exchange variables `x_i` and `x_j` (1-based).
    pub fn swap_x(&self, i: usize, j: usize) -> Self {
        let mut perm: Vec<usize> = (0..self.rank).collect();
        perm.swap(i - 1, j - 1);
        self.permute_x(&perm)
            .expect("swap indices validated by caller")
    }

    /// Set `x_rank = 0` and forget that variable (rank drops by one).
    pub fn drop_last_x(&self) -> Self {
        assert!(self.rank >= 1, "no x-variable to drop");
        let mut out = Self::zero(self.rank - 1);
        out.qoffset = self.qoffset;
        for (e, c) in &self.terms {
            if e.0[self.rank + 1] == 0 {
                out.terms
                    .insert(Expo::new(e.0[..self.rank + 1].to_vec()), c.clone());
            }
        }
        out.normalize();
        out
    }

    /// View at a higher rank by padding zero exponents for the new
    /// variables.
    pub fn embed_rank(&self, new_rank: usize) -> Result<Self> {
        if new_rank < self.rank {
            return Err(Error::RankMismatch {
                left: self.rank,
                right: new_rank,
            });
        }
        let mut out = Self::zero(new_rank);
        out.qoffset = self.qoffset;
        for (e, c) in &self.terms {
            let mut key = e.0.clone();
            key.resize(new_rank + 2, 0);
            out.terms.insert(Expo::new(key), c.clone());
        }
        Ok(out)
    }

    /// The `(q, t)`-polynomial multiplying the exact x-monomial `x^ex`
    /// (as a rank-0 value).
    pub fn coefficient_of_x(&self, ex: &[i64]) -> Self {
        assert_eq!(ex.len(), self.rank);
        let mut out = Self::zero(0);
        out.qoffset = self.qoffset;
        for (e, c) in &self.terms {
            if e.0[2..] == *ex {
                out.terms.insert(Expo::new(e.0[..2].to_vec()), c.clone());
            }
        }
        out.normalize();
        out
    }

    /// Largest `t`-exponent (0 for the zero polynomial).
    pub fn t_degree(&self) -> i64 {
        self.terms.keys().map(|e| e.0[1]).max().unwrap_or(0)
    }

    /// Serializable form; requires a true polynomial (offset 0).
    pub fn to_json(&self) -> Result<PolyJson> {
        if self.qoffset != 0 {
            return Err(Error::invalid(
                "Laurent values (nonzero q-offset) have no JSON form",
            ));
        }
        let mut vars = vec!["q".to_string(), "t".to_string()];
        for i in 1..=self.rank {
            vars.push(format!("x{i}"));
        }
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| TermJson {
                c: c.to_string(),
                e: e.0.clone(),
            })
            .collect();
        Ok(PolyJson { vars, terms })
    }

    pub fn from_json(json: &PolyJson) -> Result<Self> {
        if json.vars.len() < 2 || json.vars[0] != "q" || json.vars[1] != "t" {
            return Err(Error::invalid("variable list must start with q, t"));
        }
        let rank = json.vars.len() - 2;
        for (i, v) in json.vars.iter().skip(2).enumerate() {
            if *v != format!("x{}", i + 1) {
                return Err(Error::invalid(format!("unexpected variable name {v:?}")));
            }
        }
        let mut p = Self::zero(rank);
        for term in &json.terms {
            if term.e.len() != rank + 2 {
                return Err(Error::invalid(format!(
                    "exponent vector {:?} has arity {}, expected {}",
                    term.e,
                    term.e.len(),
                    rank + 2
                )));
            }
            if term.e.iter().any(|&e| e < 0) {
                return Err(Error::invalid(format!("negative exponent in {:?}", term.e)));
            }
            let c: BigInt = term
                .c
                .parse()
                .map_err(|_| Error::invalid(format!("bad coefficient {:?}", term.c)))?;
            p.add_term(term.e[0], term.e[1], &term.e[2..], c);
        }
        Ok(p)
    }

    /// LaTeX form: terms grouped by x-monomial, groups and inner
    /// `(q, t)`-terms in descending graded-lex order.
    pub fn to_latex(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        // x-part -> (eq, et) -> coefficient, with effective q exponents.
        let mut groups: BTreeMap<Vec<i64>, BTreeMap<(i64, i64), BigInt>> = BTreeMap::new();
        for (e, c) in &self.terms {
            groups
                .entry(e.0[2..].to_vec())
                .or_default()
                .insert((e.0[0] + self.qoffset, e.0[1]), c.clone());
        }
        let mut xparts: Vec<&Vec<i64>> = groups.keys().collect();
        xparts.sort_by(|a, b| graded_lex(b, a));
        let mut rendered = Vec::new();
        for xp in xparts {
            let inner = &groups[xp];
            let mut qt: Vec<(&(i64, i64), &BigInt)> = inner.iter().collect();
            qt.sort_by(|a, b| graded_lex(&[b.0 .0, b.0 .1], &[a.0 .0, a.0 .1]));
            let inner_strs: Vec<String> = qt
                .iter()
                .map(|(&(eq, et), c)| latex_qt_term(eq, et, c))
                .collect();
            let inner_joined = join_signed(&inner_strs);
            let xmono = latex_x_part(xp);
            let piece = if xmono.is_empty() {
                inner_joined
            } else if inner.len() == 1 {
                if inner_joined == "1" {
                    xmono
                } else if inner_joined == "-1" {
                    format!("-{xmono}")
                } else {
                    format!("{inner_joined}\\,{xmono}")
                }
            } else {
                format!("({inner_joined})\\,{xmono}")
            };
            rendered.push(piece);
        }
        join_signed(&rendered)
    }
}

fn latex_power(var: &str, e: i64) -> String {
    match e {
        0 => String::new(),
        1 => var.to_string(),
        _ => format!("{var}^{{{e}}}"),
    }
}

fn latex_qt_term(eq: i64, et: i64, c: &BigInt) -> String {
    let mono = format!("{}{}", latex_power("q", eq), latex_power("t", et));
    if mono.is_empty() {
        c.to_string()
    } else if c.is_one() {
        mono
    } else if (-c).is_one() {
        format!("-{mono}")
    } else {
        format!("{c}{mono}")
    }
}

fn latex_x_part(ex: &[i64]) -> String {
    ex.iter()
        .enumerate()
        .map(|(i, &e)| latex_power(&format!("x_{}", i + 1), e))
        .collect()
}

/// Join already-rendered summands, folding a leading `-` into the
/// separator.
fn join_signed(parts: &[String]) -> String {
    let mut out = String::new();
    for part in parts {
        if out.is_empty() {
            out.push_str(part);
        } else if let Some(rest) = part.strip_prefix('-') {
            out.push('-');
            out.push_str(rest);
        } else {
            out.push('+');
            out.push_str(part);
        }
    }
    out
}

impl std::fmt::Display for MultiPoly {
    /// Plain-text form, terms in descending graded-lex order, e.g.
    /// `q*x1^2 + t*x1^2`.
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            let mut factors = Vec::new();
            let eq = e.0[0] + self.qoffset;
            if eq != 0 {
                factors.push(if eq == 1 {
                    "q".into()
                } else {
                    format!("q^{eq}")
                });
            }
            if e.0[1] != 0 {
                let et = e.0[1];
                factors.push(if et == 1 {
                    "t".into()
                } else {
                    format!("t^{et}")
                });
            }
            for (i, &ex) in e.0[2..].iter().enumerate() {
                if ex != 0 {
                    let name = format!("x{}", i + 1);
                    factors.push(if ex == 1 {
                        name
                    } else {
                        format!("{name}^{ex}")
                    });
                }
            }
            let abs = c.abs();
            if !abs.is_one() || factors.is_empty() {
                factors.insert(0, abs.to_string());
            }
            let sep = match (first, c.is_negative()) {
                (true, false) => "",
                (true, true) => "-",
                (false, false) => " + ",
                (false, true) => " - ",
            };
            write!(f, "{}{}", sep, factors.join("*"))?;
            first = false;
        }
        Ok(())
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        self.checked_add(rhs).expect("rank mismatch in +")
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        self.checked_add(&-rhs).expect("rank mismatch in -")
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        self.checked_mul(rhs).expect("rank mismatch in *")
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = -&*c;
        }
        out
    }
}

/// JSON polynomial schema: variables then terms, each term a decimal
/// coefficient string and an exponent vector, in ascending graded-lex
/// order.
#[derive(Serialize, Deserialize, Clone, PartialEq, Eq, Debug)]
pub struct PolyJson {
    pub vars: Vec<String>,
    pub terms: Vec<TermJson>,
}

#[derive(Serialize, Deserialize, Clone, PartialEq, Eq, Debug)]
pub struct TermJson {
    pub c: String,
    pub e: Vec<i64>,
}

// ---------------------------------------------------------------------------
// Univariate-in-q helpers (dense by degree).

fn dense_to_poly(v: &[BigInt]) -> MultiPoly {
    let mut p = MultiPoly::zero(0);
    for (e, c) in v.iter().enumerate() {
        if !c.is_zero() {
            p.add_term(e as i64, 0, &[], c.clone());
        }
    }
    p
}

fn dense_from_poly(p: &MultiPoly) -> Result<Vec<BigInt>> {
    if p.rank() != 0 || p.qoffset() != 0 {
        return Err(Error::invalid("expected a plain polynomial in q"));
    }
    let mut out = Vec::new();
    for (e, c) in p.terms() {
        if e.exponents()[1] != 0 {
            return Err(Error::invalid("expected a polynomial in q only, found t"));
        }
        let deg = e.exponents()[0] as usize;
        if out.len() <= deg {
            out.resize(deg + 1, BigInt::zero());
        }
        out[deg] = c.clone();
    }
    Ok(out)
}

fn dense_trim(v: &mut Vec<BigInt>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

/// `[k]_q = 1 + q + ... + q^(k-1)`; `[0]_q = 0`.
pub fn q_int(k: i64) -> Result<MultiPoly> {
    if k < 0 {
        return Err(Error::invalid(format!("q-integer needs k >= 0, got {k}")));
    }
    Ok(dense_to_poly(&vec![BigInt::one(); k as usize]))
}

/// Gaussian binomial coefficient via the Pascal recurrence
/// `[a,b] = [a-1,b-1] + q^b [a-1,b]`.
pub fn q_binomial(a: i64, b: i64) -> Result<MultiPoly> {
    if !(0 <= b && b <= a) {
        return Err(Error::invalid(format!(
            "q-binomial needs 0 <= b <= a, got a={a}, b={b}"
        )));
    }
    // row[j] holds the dense coefficients of [i choose j]_q.
    let mut row: Vec<Vec<BigInt>> = vec![vec![BigInt::one()]];
    for i in 1..=a {
        let top = b.min(i);
        let mut next: Vec<Vec<BigInt>> = Vec::with_capacity(top as usize + 1);
        next.push(vec![BigInt::one()]);
        for j in 1..=top {
            let mut acc = if j < i {
                // q^j * [i-1 choose j]
                let prev = &row[j as usize];
                let mut shifted = vec![BigInt::zero(); j as usize];
                shifted.extend(prev.iter().cloned());
                shifted
            } else {
                Vec::new()
            };
            let left = &row[(j - 1) as usize];
            if acc.len() < left.len() {
                acc.resize(left.len(), BigInt::zero());
            }
            for (slot, c) in acc.iter_mut().zip(left.iter()) {
                *slot += c;
            }
            next.push(acc);
        }
        row = next;
    }
    Ok(dense_to_poly(&row[b as usize]))
}

/// Exact division of univariate `q`-polynomials; errors if the division
/// leaves a remainder.
pub fn div_exact_q(num: &MultiPoly, den: &MultiPoly) -> Result<MultiPoly> {
    let mut n = dense_from_poly(num)?;
    let mut d = dense_from_poly(den)?;
    dense_trim(&mut n);
    dense_trim(&mut d);
    if d.is_empty() {
        return Err(Error::invalid("division by the zero polynomial"));
    }
    if n.is_empty() {
        return Ok(MultiPoly::zero(0));
    }
    if n.len() < d.len() {
        return Err(Error::NotDivisible(format!(
            "degree {} does not divide into degree {}",
            d.len() - 1,
            n.len() - 1
        )));
    }
    let lead = d.last().unwrap().clone();
    let mut quotient = vec![BigInt::zero(); n.len() - d.len() + 1];
    for k in (0..quotient.len()).rev() {
        let top = n[k + d.len() - 1].clone();
        if top.is_zero() {
            continue;
        }
        let (q, r) = top.div_rem(&lead);
        if !r.is_zero() {
            return Err(Error::NotDivisible(format!(
                "leading coefficient {lead} does not divide {top}"
            )));
        }
        for (i, c) in d.iter().enumerate() {
            n[k + i] -= &q * c;
        }
        quotient[k] = q;
    }
    if n.iter().any(|c| !c.is_zero()) {
        let mut rem = n;
        dense_trim(&mut rem);
        return Err(Error::NotDivisible(format!(
            "remainder of degree {} is nonzero",
            rem.len().saturating_sub(1)
        )));
    }
    Ok(dense_to_poly(&quotient))
}

// ---------------------------------------------------------------------------
// Quasisymmetric and symmetric building blocks.

/// Truncation to `r` variables of the fundamental quasisymmetric function
/// for descent set `s`: the sum of `x_{i_1}...x_{i_m}` over
/// `1 <= i_1 <= ... <= i_m <= r` with strict increase forced after each
/// position in `s`.
pub fn gessel_truncated(s: &BTreeSet<i64>, m: i64, r: i64) -> Result<MultiPoly> {
    if m < 1 || r < 1 {
        return Err(Error::invalid(format!("need m, r >= 1, got m={m}, r={r}")));
    }
    if s.iter().any(|&j| j < 1 || j > m - 1) {
        return Err(Error::BadDescentSet {
            set: s.iter().copied().collect(),
            max: m - 1,
        });
    }
    let rank = r as usize;
    // A weakly increasing word is determined by how many times it uses each
    // value, so sum over weight vectors directly.  The word increases
    // strictly exactly where it switches values, i.e. at the running totals
    // of the weight vector, so a weight vector contributes precisely when
    // `s` is a subset of those totals.
    let mut total = MultiPoly::zero(rank);
    let mut w = vec![0i64; rank];
    w[0] = m;
    loop {
        let mut s_it = s.iter().peekable();
        let mut acc = 0i64;
        for &part in w.iter().take(rank - 1) {
            acc += part;
            if s_it.peek() == Some(&&acc) {
                s_it.next();
            }
        }
        if s_it.peek().is_none() {
            total.add_term(0, 0, &w, BigInt::one());
        }
        // Next weight vector: empty the first nonzero early slot into the
        // slot after it, refilling slot 0 with the remainder.
        let Some(i) = w[..rank - 1].iter().position(|&p| p > 0) else {
            break;
        };
        let moved = w[i];
        w[i] = 0;
        w[0] = moved - 1;
        w[i + 1] += 1;
    }
    Ok(total)
}

/// A partition: weakly decreasing positive parts (possibly none).
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<i64>,
}

impl Partition {
    pub fn new(parts: Vec<i64>) -> Result<Self> {
        for pair in parts.windows(2) {
            if pair[0] < pair[1] {
                return Err(Error::invalid(format!(
                    "parts {parts:?} are not weakly decreasing"
                )));
            }
        }
        if parts.last().is_some_and(|&p| p < 1) {
            return Err(Error::invalid(format!("parts {parts:?} must be positive")));
        }
        Ok(Self { parts })
    }

    /// Read a partition off an exponent vector, stripping trailing zeros.
    pub fn from_exponents(exps: &[i64]) -> Result<Self> {
        let mut parts = exps.to_vec();
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Self::new(parts)
    }

    pub fn parts(&self) -> &[i64] {
        &self.parts
    }

    pub fn size(&self) -> i64 {
        self.parts.iter().sum()
    }
}

impl std::fmt::Display for Partition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Weight multiset of semistandard tableaux of shape `lambda` with
/// entries in `1..=r`: rows weakly increase, columns strictly increase.
fn ssyt_weights(lambda: &Partition, r: usize) -> BTreeMap<Vec<i64>, BigInt> {
    fn fill(
        shape: &[i64],
        r: usize,
        row: usize,
        col: usize,
        tableau: &mut Vec<Vec<i64>>,
        weight: &mut Vec<i64>,
        out: &mut BTreeMap<Vec<i64>, BigInt>,
    ) {
        if row == shape.len() {
            let entry = out.entry(weight.clone()).or_insert_with(BigInt::zero);
            *entry += 1;
            return;
        }
        if col == shape[row] as usize {
            fill(shape, r, row + 1, 0, tableau, weight, out);
            return;
        }
        let mut lo = 1;
        if col > 0 {
            lo = lo.max(tableau[row][col - 1]);
        }
        if row > 0 && col < shape[row - 1] as usize {
            lo = lo.max(tableau[row - 1][col] + 1);
        }
        for v in lo..=r as i64 {
            tableau[row].push(v);
            weight[(v - 1) as usize] += 1;
            fill(shape, r, row, col + 1, tableau, weight, out);
            weight[(v - 1) as usize] -= 1;
            tableau[row].pop();
        }
    }
    let mut out = BTreeMap::new();
    let mut tableau: Vec<Vec<i64>> = vec![Vec::new(); lambda.parts().len()];
    let mut weight = vec![0i64; r];
    fill(lambda.parts(), r, 0, 0, &mut tableau, &mut weight, &mut out);
    out
}

/// The Schur polynomial `s_lambda(x1..xr)` by tableau enumeration.
pub fn schur_polynomial(lambda: &Partition, r: usize) -> MultiPoly {
    let mut p = MultiPoly::zero(r);
    for (w, c) in ssyt_weights(lambda, r) {
        p.add_term(0, 0, &w, c);
    }
    p
}

/// Expand each `(q, t)`-slice of a polynomial in the Schur basis of
/// `x1..xr`. Keys are `(e_q, e_t, lambda)`; values are the integer
/// multiplicities. Errors if some slice is not symmetric in the `x`
/// variables.
pub fn schur_expand(p: &MultiPoly) -> Result<BTreeMap<(i64, i64, Partition), BigInt>> {
    if p.qoffset() != 0 {
        return Err(Error::invalid("cannot Schur-expand a Laurent value"));
    }
    let rank = p.rank();
    let mut slices: BTreeMap<(i64, i64), BTreeMap<Vec<i64>, BigInt>> = BTreeMap::new();
    for (e, c) in p.terms() {
        slices
            .entry((e.exponents()[0], e.exponents()[1]))
            .or_default()
            .insert(e.exponents()[2..].to_vec(), c.clone());
    }
    let mut schur_cache: HashMap<Vec<i64>, BTreeMap<Vec<i64>, BigInt>> = HashMap::new();
    let mut out = BTreeMap::new();
    for ((eq, et), mut slice) in slices {
        // Symmetry under adjacent transpositions generates all of them.
        for i in 0..rank.saturating_sub(1) {
            let swapped: BTreeMap<Vec<i64>, BigInt> = slice
                .iter()
                .map(|(k, c)| {
                    let mut k = k.clone();
                    k.swap(i, i + 1);
                    (k, c.clone())
                })
                .collect();
            if swapped != slice {
                return Err(Error::NotSymmetric {
                    eq,
                    et,
                    detail: format!("slice changes under exchanging x{} and x{}", i + 1, i + 2),
                });
            }
        }
        let mut guard = 0usize;
        while let Some((lead, coeff)) = slice
            .iter()
            .max_by(|a, b| graded_lex(a.0, b.0))
            .map(|(k, c)| (k.clone(), c.clone()))
        {
            guard += 1;
            if guard > 100_000 {
                return Err(Error::invalid("Schur expansion failed to terminate"));
            }
            let lambda = Partition::from_exponents(&lead)?;
            let basis = schur_cache
                .entry(lead.clone())
                .or_insert_with(|| ssyt_weights(&lambda, rank))
                .clone();
            for (mono, mult) in basis {
                let entry = slice.entry(mono).or_insert_with(BigInt::zero);
                *entry -= &coeff * mult;
            }
            slice.retain(|_, c| !c.is_zero());
            out.insert((eq, et, lambda), coeff);
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// The two polynomial pipelines and the q-deformation.

/// The rank-`r` weighted path polynomial: the sum of
/// `q^area t^dinv x^weight` over all rank-`r` labeled `(m, n)` paths.
pub fn higher_catalan(m: i64, n: i64, r: i64) -> Result<MultiPoly> {
    if gcd(m, n) != 1 {
        return Err(Error::NonCoprime { m, n });
    }
    let grid = GridParams::new(m, n)?;
    let mut total = MultiPoly::zero(r as usize);
    for s in enumerate_sspf(&grid, r, None)? {
        let d = crate::statistics::dinv(&s)?;
        total.add_term(s.area(), d, s.weight().parts(), BigInt::one());
    }
    Ok(total)
}

/// The truncated Hikita sum: over bijectively labeled paths, weight
/// `q^area t^dinv` times the truncated Gessel function of the inverse
/// descent set of the associated window. Computed without the
/// standardization machinery so that equality with [`higher_catalan`] is
/// an independent cross-check.
pub fn hikita_truncated(m: i64, n: i64, r: i64) -> Result<MultiPoly> {
    if gcd(m, n) != 1 {
        return Err(Error::NonCoprime { m, n });
    }
    let grid = GridParams::new(m, n)?;
    let max_area = grid.max_area();
    // First pass: bucket q^area t^dinv by inverse descent set.  Descent
    // sets with `r` or more elements force more strict increases than `r`
    // weakly increasing values allow, so their Gessel truncation vanishes
    // and they are skipped outright.
    let mut by_descents: HashMap<Vec<i64>, MultiPoly> = HashMap::new();
    for p in enumerate_parking_functions(&grid) {
        let omega = to_affine_permutation(&p)?;
        let des = inverse_descents(&omega);
        if des.len() >= r as usize {
            continue;
        }
        let codinv = affine_codinv(omega.as_composition(), n);
        let key: Vec<i64> = des.iter().copied().collect();
        by_descents
            .entry(key)
            .or_insert_with(|| MultiPoly::zero(0))
            .add_term(p.area(), max_area - codinv, &[], BigInt::one());
    }
    // Second pass: a weight vector `w` appears in the Gessel truncation of
    // exactly the descent sets contained in its set of running totals, so
    // the coefficient of `x^w` is the sum of the buckets over subsets of
    // that boundary set (at most `2^(r-1)` lookups per weight vector).
    let rank = r as usize;
    let mut total = MultiPoly::zero(rank);
    let mut w = vec![0i64; rank];
    w[0] = m;
    loop {
        let mut bnd: Vec<i64> = Vec::with_capacity(rank.saturating_sub(1));
        let mut acc = 0i64;
        for &part in w.iter().take(rank - 1) {
            acc += part;
            if acc >= 1 && acc < m && bnd.last() != Some(&acc) {
                bnd.push(acc);
            }
        }
        for mask in 0u32..(1u32 << bnd.len()) {
            let key: Vec<i64> = bnd
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &b)| b)
                .collect();
            if let Some(qt) = by_descents.get(&key) {
                for (expo, coeff) in qt.terms() {
                    let e = expo.exponents();
                    total.add_term(e[0], e[1], &w, coeff.clone());
                }
            }
        }
        let Some(i) = w[..rank - 1].iter().position(|&p| p > 0) else {
            break;
        };
        let moved = w[i];
        w[i] = 0;
        w[0] = moved - 1;
        w[i + 1] += 1;
    }
    Ok(total)
}

/// Exact q-deformation of the closed-form count:
/// `[d]_q * qbinom(nr + m - 1, m) / [nd]_q`, for `d` dividing `r`.
/// The division must be exact; a nonzero remainder is surfaced, never
/// swallowed. At `q = 1` the value is the rank-`r` count.
pub fn ekls_deformation(m: i64, n: i64, r: i64, d: i64) -> Result<MultiPoly> {
    if gcd(m, n) != 1 {
        return Err(Error::NonCoprime { m, n });
    }
    if r < 1 || d < 1 || r % d != 0 {
        return Err(Error::invalid(format!(
            "need positive d dividing r, got d={d}, r={r}"
        )));
    }
    let numerator = &q_int(d)? * &q_binomial(n * r + m - 1, m)?;
    div_exact_q(&numerator, &q_int(n * d)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parking::count_sspf_closed;

    fn qt(eq: i64, et: i64) -> MultiPoly {
        MultiPoly::monomial(0, BigInt::one(), eq, et, &[])
    }

    #[test]
    fn ring_identities() {
        let p = &qt(2, 1) + &qt(0, 3);
        assert_eq!(&p + &MultiPoly::zero(0), p);
        assert_eq!(&p * &MultiPoly::one(0), p);
        assert_eq!(&p - &p, MultiPoly::zero(0));
        assert_eq!((&p + &p).coefficient(2, 1, &[]), BigInt::from(2));
        assert_eq!(p.to_string(), "q^2*t + t^3");
    }

    #[test]
    fn rank_mismatch_is_reported() {
        let a = MultiPoly::one(1);
        let b = MultiPoly::one(2);
        assert!(matches!(
            a.checked_add(&b),
            Err(Error::RankMismatch { left: 1, right: 2 })
        ));
        assert!(matches!(a.checked_mul(&b), Err(Error::RankMismatch { .. })));
    }

    #[test]
    fn graded_lex_order_drives_iteration() {
        let mut p = MultiPoly::zero(1);
        p.add_term(0, 0, &[2], BigInt::one()); // x1^2, degree 2
        p.add_term(1, 0, &[0], BigInt::one()); // q, degree 1
        p.add_term(0, 2, &[1], BigInt::one()); // t^2 x1, degree 3
        let order: Vec<Vec<i64>> = p.terms().map(|(e, _)| e.exponents().to_vec()).collect();
        assert_eq!(order, vec![vec![1, 0, 0], vec![0, 0, 2], vec![0, 2, 1]]);
    }

    #[test]
    fn laurent_substitution_and_offset() {
        let p = &qt(1, 0) + &qt(0, 1); // q + t
        let laurent = p.substitute_t_q_inverse(); // q + 1/q
        assert_eq!(laurent.qoffset(), -1);
        assert_eq!(laurent.to_string(), "q + q^-1");
        assert_eq!(laurent.evaluate_all_ones(), BigInt::from(2));
        // Multiplying back by q gives a true polynomial again.
        let back = &laurent * &MultiPoly::var_q(0);
        assert_eq!(back.qoffset(), 0);
        assert_eq!(back.to_string(), "q^2 + 1");
        // Cancellation all the way to zero resets the offset.
        let z = &laurent - &laurent;
        assert!(z.is_zero());
        assert_eq!(z.qoffset(), 0);
    }

    #[test]
    fn q_binomials() {
        assert_eq!(q_binomial(7, 0).unwrap(), MultiPoly::one(0));
        assert_eq!(
            q_binomial(4, 2).unwrap().to_string(),
            "q^4 + q^3 + 2*q^2 + q + 1"
        );
        for (a, b) in [(5, 2), (6, 3), (9, 4)] {
            assert_eq!(
                q_binomial(a, b).unwrap().evaluate_all_ones(),
                num::integer::binomial(BigInt::from(a), BigInt::from(b))
            );
        }
        assert!(q_binomial(2, 3).is_err());
        assert!(q_binomial(2, -1).is_err());
    }

    #[test]
    fn q_division() {
        let lhs = div_exact_q(&q_binomial(5, 2).unwrap(), &q_int(5).unwrap()).unwrap();
        assert_eq!(lhs.to_string(), "q^2 + 1");
        // Non-exact division is an error, not a truncation.
        assert!(matches!(
            div_exact_q(&q_int(3).unwrap(), &q_int(2).unwrap()),
            Err(Error::NotDivisible(_))
        ));
        assert_eq!(
            div_exact_q(&MultiPoly::zero(0), &q_int(2).unwrap()).unwrap(),
            MultiPoly::zero(0)
        );
    }

    #[test]
    fn gessel_small_cases() {
        let h2 = gessel_truncated(&BTreeSet::new(), 2, 2).unwrap();
        assert_eq!(h2.to_string(), "x1^2 + x1*x2 + x2^2");
        let e2 = gessel_truncated(&BTreeSet::from([1]), 2, 2).unwrap();
        assert_eq!(e2.to_string(), "x1*x2");
        let strict_all = gessel_truncated(&BTreeSet::from([1, 2]), 3, 3).unwrap();
        assert_eq!(strict_all.to_string(), "x1*x2*x3");
        let too_few_vars = gessel_truncated(&BTreeSet::from([1, 2]), 3, 2).unwrap();
        assert!(too_few_vars.is_zero());
        assert!(matches!(
            gessel_truncated(&BTreeSet::from([3]), 3, 2),
            Err(Error::BadDescentSet { max: 2, .. })
        ));
    }

    #[test]
    fn catalan_rank_one_pinned() {
        let c23 = higher_catalan(2, 3, 1).unwrap();
        assert_eq!(c23.to_string(), "q*x1^2 + t*x1^2");
        assert_eq!(c23.to_latex(), "(q+t)\\,x_1^{2}");
        let c34 = higher_catalan(3, 4, 1).unwrap();
        let qt_part = c34.coefficient_of_x(&[3]);
        assert_eq!(qt_part.to_string(), "q^3 + q^2*t + q*t^2 + t^3 + q*t");
    }

    #[test]
    fn catalan_counts_and_symmetries() {
        let c = higher_catalan(3, 4, 2).unwrap();
        assert_eq!(c.evaluate_all_ones(), count_sspf_closed(3, 4, 2).unwrap());
        assert_eq!(c.swap_qt(), c);
        assert_eq!(c.swap_x(1, 2), c);
        assert!(matches!(
            higher_catalan(2, 4, 1),
            Err(Error::NonCoprime { .. })
        ));
    }

    #[test]
    fn catalan_truncation_coherence() {
        let c2 = higher_catalan(3, 4, 2).unwrap();
        assert_eq!(c2.drop_last_x(), higher_catalan(3, 4, 1).unwrap());
        let c3 = higher_catalan(2, 3, 3).unwrap();
        assert_eq!(c3.drop_last_x(), higher_catalan(2, 3, 2).unwrap());
    }

    #[test]
    fn hikita_matches_catalan_on_small_grids() {
        for (m, n, r) in [(2, 3, 1), (2, 3, 2), (3, 4, 2), (3, 2, 3)] {
            assert_eq!(
                hikita_truncated(m, n, r).unwrap(),
                higher_catalan(m, n, r).unwrap(),
                "pipelines disagree at ({m},{n},{r})"
            );
        }
    }

    #[test]
    fn hikita_weight_m_slice_is_rank_one_catalan() {
        // Only the constant-label objects contribute to the x1^m slice.
        let h = hikita_truncated(3, 4, 2).unwrap();
        let slice = h.coefficient_of_x(&[3, 0]);
        let c1 = higher_catalan(3, 4, 1).unwrap().coefficient_of_x(&[3]);
        assert_eq!(slice, c1);
    }

    #[test]
    fn schur_expansion_basics() {
        let h2 = gessel_truncated(&BTreeSet::new(), 2, 2).unwrap();
        let exp = schur_expand(&h2).unwrap();
        let lambda2 = Partition::new(vec![2]).unwrap();
        assert_eq!(exp, BTreeMap::from([((0, 0, lambda2), BigInt::one())]));
        let e2 = MultiPoly::monomial(2, BigInt::one(), 0, 0, &[1, 1]);
        let exp = schur_expand(&e2).unwrap();
        let lambda11 = Partition::new(vec![1, 1]).unwrap();
        assert_eq!(exp, BTreeMap::from([((0, 0, lambda11), BigInt::one())]));
    }

    #[test]
    fn schur_expansion_of_catalan_is_nonnegative() {
        let c = higher_catalan(3, 4, 2).unwrap();
        let exp = schur_expand(&c).unwrap();
        assert!(!exp.is_empty());
        for ((eq, et, lambda), mult) in &exp {
            assert!(
                !mult.is_negative(),
                "negative multiplicity at q^{eq} t^{et} {lambda}"
            );
        }
        // Reconstruction: the expansion resums to the original.
        let mut back = MultiPoly::zero(2);
        for ((eq, et, lambda), mult) in &exp {
            let s = schur_polynomial(lambda, 2);
            let scaled = &s * &MultiPoly::monomial(2, mult.clone(), *eq, *et, &[0, 0]);
            back.add_assign(&scaled);
        }
        assert_eq!(back, c);
    }

    #[test]
    fn schur_expansion_rejects_asymmetric_input() {
        let p = MultiPoly::monomial(2, BigInt::one(), 1, 2, &[1, 0]);
        match schur_expand(&p) {
            Err(Error::NotSymmetric { eq: 1, et: 2, .. }) => {}
            other => panic!("expected NotSymmetric, got {other:?}"),
        }
    }

    #[test]
    fn schur_polynomial_tableaux() {
        // s_(2,1) at r=2: tableaux 11/2 and 12/2.
        let s21 = schur_polynomial(&Partition::new(vec![2, 1]).unwrap(), 2);
        assert_eq!(s21.to_string(), "x1^2*x2 + x1*x2^2");
        // Too few variables for the column: zero.
        let s111 = schur_polynomial(&Partition::new(vec![1, 1, 1]).unwrap(), 2);
        assert!(s111.is_zero());
        // Empty partition: the constant 1.
        let s0 = schur_polynomial(&Partition::new(vec![]).unwrap(), 2);
        assert_eq!(s0, MultiPoly::one(2));
    }

    #[test]
    fn ekls_values() {
        let base = ekls_deformation(2, 3, 1, 1).unwrap();
        assert_eq!(base.to_string(), "q^2 + 1");
        for (m, n, r, d) in [(3, 4, 2, 1), (3, 4, 2, 2), (2, 3, 4, 2), (2, 3, 4, 4)] {
            let p = ekls_deformation(m, n, r, d).unwrap();
            assert_eq!(
                p.evaluate_all_ones(),
                count_sspf_closed(m, n, r).unwrap(),
                "count mismatch at ({m},{n},{r},{d})"
            );
            assert!(p.terms().all(|(_, c)| !c.is_negative()));
        }
        assert!(ekls_deformation(3, 4, 2, 3).is_err());
        assert!(ekls_deformation(2, 4, 2, 1).is_err());
    }

    #[test]
    fn rank_one_q_specialization() {
        // q^((m-1)(n-1)/2) * C(q, 1/q) equals qbinom(m+n, m) / [m+n]_q.
        for (m, n) in [(2, 3), (3, 4), (2, 5)] {
            let c = higher_catalan(m, n, 1).unwrap().coefficient_of_x(&[m]);
            let central = MultiPoly::monomial(0, BigInt::one(), (m - 1) * (n - 1) / 2, 0, &[]);
            let lhs = &central * &c.substitute_t_q_inverse();
            assert_eq!(
                lhs.qoffset(),
                0,
                "specialization must close up to a polynomial"
            );
            let rhs = div_exact_q(&q_binomial(m + n, m).unwrap(), &q_int(m + n).unwrap()).unwrap();
            assert_eq!(lhs, rhs, "identity fails at ({m},{n})");
        }
    }

    #[test]
    fn json_round_trip_and_shape() {
        let c = higher_catalan(2, 3, 1).unwrap();
        let json = c.to_json().unwrap();
        assert_eq!(json.vars, vec!["q", "t", "x1"]);
        assert_eq!(json.terms.len(), 2);
        // Ascending graded-lex: t x1^2 (0,1,2) precedes q x1^2 (1,0,2).
        assert_eq!(json.terms[0].e, vec![0, 1, 2]);
        assert_eq!(json.terms[1].e, vec![1, 0, 2]);
        assert_eq!(MultiPoly::from_json(&json).unwrap(), c);
        let text = serde_json::to_string(&json).unwrap();
        let parsed: PolyJson = serde_json::from_str(&text).unwrap();
        assert_eq!(parsed, json);
        // Laurent values refuse to serialize.
        let laurent = qt(0, 1).substitute_t_q_inverse();
        assert!(laurent.to_json().is_err());
    }

    #[test]
    fn latex_rendering() {
        assert_eq!(MultiPoly::zero(0).to_latex(), "0");
        assert_eq!(qt(0, 0).to_latex(), "1");
        let p = &qt(2, 1) + &qt(0, 0);
        assert_eq!(p.to_latex(), "q^{2}t+1");
        let single = MultiPoly::monomial(1, BigInt::from(3), 1, 0, &[2]);
        assert_eq!(single.to_latex(), "3q\\,x_1^{2}");
        let lone = MultiPoly::monomial(1, BigInt::one(), 0, 0, &[1]);
        assert_eq!(lone.to_latex(), "x_1");
        let negative = MultiPoly::monomial(0, BigInt::from(-2), 1, 1, &[]);
        assert_eq!(negative.to_latex(), "-2qt");
    }

    #[test]
    fn embed_and_permute() {
        let p = higher_catalan(2, 3, 1).unwrap();
        let embedded = p.embed_rank(2).unwrap();
        assert_eq!(embedded.rank(), 2);
        assert_eq!(embedded.drop_last_x(), p);
        assert!(p.embed_rank(0).is_err());
        let q = MultiPoly::monomial(3, BigInt::one(), 0, 0, &[2, 1, 0]);
        let rotated = q.permute_x(&[2, 0, 1]).unwrap();
        assert_eq!(rotated.coefficient(0, 0, &[0, 2, 1]), BigInt::one());
        assert!(q.permute_x(&[0, 0, 1]).is_err());
        assert!(q.permute_x(&[0, 1]).is_err());
    }
}
