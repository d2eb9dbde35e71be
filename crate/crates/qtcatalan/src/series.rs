//! Exact-rational truncated power series, the exponential product formula
//! for counts on non-coprime grids, and diagonal-touch profiles.
//!
//! The generating function of rank-`r` counts along the ray
//! `(mk, nk), k >= 1` of a coprime base pair satisfies
//! `1 + sum C_k x^k = exp(sum (1/(nk)) binom(nkr + mk - 1, mk) x^k)`;
//! the exponential is carried out over exact rationals and integrality of
//! the coefficients is asserted, never rounded. Classifying paths by the
//! number of lattice points shared with the diagonal refines the counts
//! into a profile `phi`, with the single-touch counts `psi` acting as
//! primitives: `phi_{k,t}` is the degree-`k` coefficient of the `t`-th
//! power of the `psi` series. `psi` itself is computable either by
//! enumeration or from `1 - exp(-S)`; both routes are exposed so they can
//! be compared.

use crate::error::{Error, Result};
use crate::lattice::GridParams;
use crate::parking::enumerate_sspf;
use num::integer::{binomial, gcd};
use num::{BigInt, BigRational, One, Zero};
use std::collections::BTreeMap;

/// A power series truncated at order `K`: coefficients of `x^0..x^K` as
/// exact rationals in lowest terms.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RationalSeries {
    coeffs: Vec<BigRational>,
}

impl RationalSeries {
    pub fn zero(order: usize) -> Self {
        Self {
            coeffs: vec![BigRational::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = BigRational::one();
        s
    }

    /// Coefficients `x^0..x^K` in order; must be nonempty.
    pub fn from_coeffs(coeffs: Vec<BigRational>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::invalid(
                "a series needs at least the constant coefficient",
            ));
        }
        Ok(Self { coeffs })
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &BigRational {
        &self.coeffs[k]
    }

    pub fn set_coeff(&mut self, k: usize, v: BigRational) {
        self.coeffs[k] = v;
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.order(), other.order(), "series orders differ");
        Self {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn neg(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
        }
    }

    /// Product truncated at the common order.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.order(), other.order(), "series orders differ");
        let k = self.order();
        let mut coeffs = vec![BigRational::zero(); k + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().take(k + 1 - i).enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Self { coeffs }
    }
}

/// Formal exponential via `k e_k = sum_{j=1..k} j s_j e_{k-j}`; the
/// constant term of the argument must vanish.
pub fn exp_series(s: &RationalSeries) -> Result<RationalSeries> {
    if !s.coeff(0).is_zero() {
        return Err(Error::BadConstantTerm {
            op: "exp",
            expected: "0",
            found: s.coeff(0).to_string(),
        });
    }
    let order = s.order();
    let mut e = vec![BigRational::one()];
    for k in 1..=order {
        let mut acc = BigRational::zero();
        for j in 1..=k {
            acc += BigRational::from_integer(BigInt::from(j)) * s.coeff(j) * &e[k - j];
        }
        e.push(acc / BigRational::from_integer(BigInt::from(k)));
    }
    RationalSeries::from_coeffs(e)
}

/// Formal logarithm via `k l_k = k s_k - sum_{j=1..k-1} j l_j s_{k-j}`;
/// the constant term of the argument must be 1.
pub fn log_series(s: &RationalSeries) -> Result<RationalSeries> {
    if !s.coeff(0).is_one() {
        return Err(Error::BadConstantTerm {
            op: "log",
            expected: "1",
            found: s.coeff(0).to_string(),
        });
    }
    let order = s.order();
    let mut l = vec![BigRational::zero()];
    for k in 1..=order {
        let mut acc = BigRational::zero();
        for (j, lj) in l.iter().enumerate().take(k).skip(1) {
            acc += BigRational::from_integer(BigInt::from(j)) * lj * s.coeff(k - j);
        }
        l.push(s.coeff(k) - acc / BigRational::from_integer(BigInt::from(k)));
    }
    RationalSeries::from_coeffs(l)
}

/// The exponent series `sum_{k=1..K} (1/(nk)) binom(nkr + mk - 1, mk) x^k`.
fn count_exponent_series(m: i64, n: i64, r: i64, order: usize) -> RationalSeries {
    let mut s = RationalSeries::zero(order);
    for k in 1..=order as i64 {
        let top = binomial(BigInt::from(n * k * r + m * k - 1), BigInt::from(m * k));
        s.set_coeff(k as usize, BigRational::new(top, BigInt::from(n * k)));
    }
    s
}

/// Rank-`r` counts along the ray of a coprime pair: entry `k-1` counts
/// the labeled `(mk, nk)` paths, for `k = 1..K`, read off the exponential
/// of the exact count series. Integrality of every coefficient is
/// asserted and surfaced as an error if violated.
pub fn bizley_counts(m: i64, n: i64, r: i64, order: usize) -> Result<Vec<BigInt>> {
    if gcd(m.max(1), n.max(1)) != 1 || m < 1 || n < 1 {
        return Err(Error::NonCoprime { m, n });
    }
    if r < 1 || order < 1 {
        return Err(Error::invalid(format!(
            "need r >= 1 and K >= 1, got r={r}, K={order}"
        )));
    }
    let e = exp_series(&count_exponent_series(m, n, r, order))?;
    let mut out = Vec::with_capacity(order);
    for k in 1..=order {
        let c = e.coeff(k);
        if !c.denom().is_one() {
            return Err(Error::NonIntegerCoefficient {
                k,
                value: c.to_string(),
            });
        }
        out.push(c.numer().clone());
    }
    Ok(out)
}

/// Single-touch counts `psi_1..psi_K` from the series side:
/// `1 - exp(-S)` where `S` is the count exponent series.
pub fn psi_series(m: i64, n: i64, r: i64, order: usize) -> Result<Vec<BigInt>> {
    if gcd(m.max(1), n.max(1)) != 1 || m < 1 || n < 1 {
        return Err(Error::NonCoprime { m, n });
    }
    let e = exp_series(&count_exponent_series(m, n, r, order).neg())?;
    let mut out = Vec::with_capacity(order);
    for k in 1..=order {
        let c = -e.coeff(k);
        if !c.denom().is_one() {
            return Err(Error::NonIntegerCoefficient {
                k,
                value: c.to_string(),
            });
        }
        out.push(c.numer().clone());
    }
    Ok(out)
}

/// Diagonal-touch classification on the `(mk, nk)` grid.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TouchProfile {
    /// `t -> phi_{k,t}`: labeled paths whose path shares exactly `t`
    /// lattice points with the diagonal (endpoint included, origin not),
    /// for `t = 1..k`.
    pub phi: BTreeMap<i64, BigInt>,
    /// `l -> psi_l` for `l = 1..k`: single-touch counts on the smaller
    /// grids `(ml, nl)`, by direct enumeration.
    pub psi: BTreeMap<i64, BigInt>,
}

/// Count rank-`r` objects on the `(ml, nl)` grid grouped by number of
/// diagonal touches.
fn touch_counts(m: i64, n: i64, r: i64, l: i64) -> Result<BTreeMap<i64, BigInt>> {
    let grid = GridParams::new(m * l, n * l)?;
    let mut by_touch: BTreeMap<i64, BigInt> = BTreeMap::new();
    for s in enumerate_sspf(&grid, r, None)? {
        let t = s.path().diagonal_touches();
        *by_touch.entry(t).or_insert_with(BigInt::zero) += 1;
    }
    Ok(by_touch)
}

/// The touch profile at scale `k` of a coprime base pair, with the
/// single-touch counts for every scale up to `k`, all by direct
/// enumeration.
pub fn touch_profile(m: i64, n: i64, r: i64, k: i64) -> Result<TouchProfile> {
    if gcd(m.max(1), n.max(1)) != 1 || m < 1 || n < 1 {
        return Err(Error::NonCoprime { m, n });
    }
    if r < 1 || k < 1 {
        return Err(Error::invalid(format!("need r, k >= 1, got r={r}, k={k}")));
    }
    let mut phi = touch_counts(m, n, r, k)?;
    for t in 1..=k {
        phi.entry(t).or_insert_with(BigInt::zero);
    }
    let mut psi = BTreeMap::new();
    for l in 1..=k {
        let ones = touch_counts(m, n, r, l)?
            .remove(&1)
            .unwrap_or_else(BigInt::zero);
        psi.insert(l, ones);
    }
    Ok(TouchProfile { phi, psi })
}

/// Coefficient of `x^k` in the `t`-th power of the `psi` series: the sum
/// over decompositions `k = l_1 + ... + l_t` with every `l_i >= 1` of
/// `psi_{l_1} ... psi_{l_t}`.
pub fn convolution_phi(psi: &BTreeMap<i64, BigInt>, k: i64, t: i64) -> BigInt {
    assert!(k >= 0 && t >= 0);
    let cap = k as usize;
    let mut base = vec![BigInt::zero(); cap + 1];
    for (&l, c) in psi {
        if (1..=k).contains(&l) {
            base[l as usize] = c.clone();
        }
    }
    let mut power = vec![BigInt::zero(); cap + 1];
    power[0] = BigInt::one();
    for _ in 0..t {
        let mut next = vec![BigInt::zero(); cap + 1];
        for (i, a) in power.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in base.iter().take(cap + 1 - i).enumerate() {
                if !b.is_zero() {
                    next[i + j] += a * b;
                }
            }
        }
        power = next;
    }
    power[cap].clone()
}
