//! Path statistics: the coinversion count by two independent algorithms,
//! dinv, affine cell dimensions, and cell-paving Poincaré polynomials.
//!
//! The reference algorithm counts bounded-height inversions of the window
//! associated to a labeled path: pairs `(i, j)` in `[1,m] x [1,n]` with
//! `f(i+j) < f(i)`. The witness algorithm is geometric: lasers of
//! diagonal slope are fired from the corners of area boxes and of labeled
//! vertical steps, and crossings with vertical steps are counted (label
//! pairs only count when the source label is smaller). Both are always
//! available and are cross-checked by the verification suite.
//!
//! `dinv` is the complementary statistic `(m-1)(n-1)/2 - codinv`; it is
//! invariant under standardization and reduces to the classical Dyck path
//! statistic at rank 1.

use crate::affine::{from_affine_composition, to_affine_composition, AffineComposition};
use crate::error::{Error, Result};
use crate::lattice::{DyckPath, GridBox, GridParams};
use crate::parking::{enumerate_sspf, Composition, ParkingFunction, SemistandardParkingFunction};
use crate::polyring::MultiPoly;
use num::integer::gcd;
use num::BigInt;
use std::collections::BTreeMap;

/// Inversions of height at most `n`: pairs `(i, j)` in `[1,m] x [1,n]`
/// with `f(i+j) < f(i)`. This is the coinversion count of a window.
pub fn affine_codinv(f: &AffineComposition, n: i64) -> i64 {
    let mut count = 0;
    for i in 1..=f.m() {
        for j in 1..=n {
            if f.eval(i + j) < f.eval(i) {
                count += 1;
            }
        }
    }
    count
}

/// Coinversion count via the window associated to the labeled path.
pub fn codinv_inversions(s: &SemistandardParkingFunction) -> Result<i64> {
    let f = to_affine_composition(s)?;
    Ok(affine_codinv(&f, s.n()))
}

/// Coinversion count of a parking function through its window directly.
pub fn codinv_parking(p: &ParkingFunction) -> Result<i64> {
    codinv_inversions(&p.as_sspf())
}

/// Does the laser of diagonal slope through the corner `(from.x, from.y)`
/// cross the open vertical unit segment whose top corner is `seg_top`?
///
/// The laser is the full line `{(X, Y) : mX + nY = m*from.x + n*from.y}`.
/// Cleared of denominators the crossing test is strict on both sides;
/// for coprime `(m, n)` no boundary case arises between distinct corners
/// of the grid interior.
fn laser_crosses(m: i64, n: i64, from: GridBox, seg_top: GridBox) -> bool {
    let mid = m * (seg_top.x - from.x);
    n * (from.y - seg_top.y) < mid && mid < n * (from.y - seg_top.y + 1)
}

/// The two summands of the laser count: crossings from area-box corners
/// with any vertical step, and crossings from step corners with steps of
/// strictly larger label.
pub fn codinv_laser_parts(s: &SemistandardParkingFunction) -> Result<(i64, i64)> {
    let (m, n) = (s.m(), s.n());
    if gcd(m, n) != 1 {
        return Err(Error::NonCoprime { m, n });
    }
    let tops: Vec<GridBox> = (0..m as usize).map(|j| s.path().step_top(j)).collect();
    let mut area_part = 0;
    for &b in &s.path().area_stats().area_boxes {
        area_part += tops.iter().filter(|&&v| laser_crosses(m, n, b, v)).count() as i64;
    }
    let mut label_part = 0;
    for (jb, &b) in tops.iter().enumerate() {
        for (jv, &v) in tops.iter().enumerate() {
            if s.labels()[jb] < s.labels()[jv] && laser_crosses(m, n, b, v) {
                label_part += 1;
            }
        }
    }
    Ok((area_part, label_part))
}

/// Coinversion count by laser crossings; agrees with
/// [`codinv_inversions`] on every input.
pub fn codinv_laser(s: &SemistandardParkingFunction) -> Result<i64> {
    let (area_part, label_part) = codinv_laser_parts(s)?;
    Ok(area_part + label_part)
}

/// `dinv = (m-1)(n-1)/2 - codinv`; invariant under standardization.
pub fn dinv(s: &SemistandardParkingFunction) -> Result<i64> {
    Ok(s.grid().max_area() - codinv_inversions(s)?)
}

/// `dinv` of a parking function through its window directly.
pub fn dinv_parking(p: &ParkingFunction) -> Result<i64> {
    Ok(p.grid().max_area() - codinv_parking(p)?)
}

/// The classical path statistic: `dinv` of the constant rank-1 labeling.
pub fn dyck_dinv(d: &DyckPath) -> Result<i64> {
    let s = SemistandardParkingFunction::new(d.clone(), vec![1; d.m() as usize], 1)
        .expect("constant labels are semistandard");
    dinv(&s)
}

/// Dimension of the affine cell indexed by an `n`-stable window: the
/// coinversion count of the labeled path it rebuilds.
pub fn cell_dimension(f: &AffineComposition, n: i64) -> Result<i64> {
    let s = from_affine_composition(f, n)?;
    let direct = affine_codinv(f, n);
    debug_assert_eq!(
        direct,
        codinv_inversions(&s).expect("coprimality already checked")
    );
    Ok(direct)
}

fn poincare_from_codinvs<I: IntoIterator<Item = i64>>(codinvs: I, factor: i64) -> MultiPoly {
    let mut p = MultiPoly::zero(0);
    for c in codinvs {
        p.add_term(0, factor * c, &[], BigInt::from(1));
    }
    p
}

/// Poincaré polynomial of the cell paving for weight `w`: the sum of
/// `t^(2*codinv)` over all labeled paths of that weight (cells contribute
/// in real cohomological degree, hence the factor 2).
pub fn springer_poincare(m: i64, n: i64, w: &Composition) -> Result<MultiPoly> {
    let grid = GridParams::new(m, n)?;
    let codinvs: Vec<i64> = enumerate_sspf(&grid, w.len() as i64, Some(w))?
        .map(|s| codinv_inversions(&s))
        .collect::<Result<_>>()?;
    Ok(poincare_from_codinvs(codinvs, 2))
}

/// The dimension generating function `sum of t^codinv`: the same data as
/// [`springer_poincare`] with exponents halved.
pub fn springer_poincare_half(m: i64, n: i64, w: &Composition) -> Result<MultiPoly> {
    let grid = GridParams::new(m, n)?;
    let codinvs: Vec<i64> = enumerate_sspf(&grid, w.len() as i64, Some(w))?
        .map(|s| codinv_inversions(&s))
        .collect::<Result<_>>()?;
    Ok(poincare_from_codinvs(codinvs, 1))
}

/// All weight-`w` Poincaré polynomials for ranks-`r` labels in one sweep,
/// keyed by weight. Agrees with [`springer_poincare`] per key.
pub fn springer_poincare_all(m: i64, n: i64, r: i64) -> Result<BTreeMap<Composition, MultiPoly>> {
    let grid = GridParams::new(m, n)?;
    let mut buckets: BTreeMap<Composition, MultiPoly> = BTreeMap::new();
    for s in enumerate_sspf(&grid, r, None)? {
        let c = codinv_inversions(&s)?;
        buckets
            .entry(s.weight())
            .or_insert_with(|| MultiPoly::zero(0))
            .add_term(0, 2 * c, &[], BigInt::from(1));
    }
    Ok(buckets)
}
