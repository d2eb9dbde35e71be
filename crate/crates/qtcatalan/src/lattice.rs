//! Grid geometry for rational Dyck paths.
//!
//! An `(m, n)` Dyck path runs from `(0, m)` to `(n, 0)` in unit south and
//! east steps, staying weakly below the diagonal `m*x + n*y = m*n`. A path
//! is stored as its column vector `a_0..a_{m-1}`, where `a_j` is the
//! x-coordinate of the vertical step whose top corner has height `m - j`.
//!
//! Invariants maintained by [`DyckPath`]:
//! - `a_0 = 0`
//! - `a_j <= a_{j+1}` (the path only moves south and east)
//! - `m * a_j <= n * j` (each step stays weakly left of the diagonal;
//!   checked in integers, never via division)
//!
//! Boxes are addressed by their upper-right corner `(x, y)`. The label
//! `gamma(x, y) = m*n - m*x - n*y` is nonnegative exactly on the boxes
//! weakly left of the diagonal, and for coprime `(m, n)` it restricts to a
//! bijection from the strip `1 <= y <= m` onto the integers.
//!
//! On non-coprime grids the diagonal passes through interior lattice
//! points; there a box counts toward `area` iff its label is `>= 0` (boxes
//! whose corner sits on the diagonal are still between path and diagonal).
//! For coprime grids this agrees with the strict `> 0` convention since no
//! box corner in range has label 0.

use crate::error::{Error, Result};
use num::bigint::BigInt;
use num::integer::gcd;
use num::Zero;

/// Grid dimensions: `m` vertical steps against an `n`-wide rectangle.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct GridParams {
    m: i64,
    n: i64,
    coprime: bool,
}

impl GridParams {
    /// Largest supported grid, as a cell count. Keeps every label and box
    /// coordinate far inside `i64`.
    pub const MAX_CELLS: i64 = 1_000_000;

    pub fn new(m: i64, n: i64) -> Result<Self> {
        if m < 1 || n < 1 {
            return Err(Error::invalid(format!(
                "grid sides must be >= 1, got ({m}, {n})"
            )));
        }
        match m.checked_mul(n) {
            Some(cells) if cells <= Self::MAX_CELLS => Ok(Self {
                m,
                n,
                coprime: gcd(m, n) == 1,
            }),
            _ => Err(Error::invalid(format!(
                "grid {m}x{n} exceeds the supported size of {} cells",
                Self::MAX_CELLS
            ))),
        }
    }

    pub fn m(&self) -> i64 {
        self.m
    }

    pub fn n(&self) -> i64 {
        self.n
    }

    /// True iff `gcd(m, n) = 1`; recomputed at construction, never trusted
    /// from input.
    pub fn is_coprime(&self) -> bool {
        self.coprime
    }

    /// `(m-1)(n-1)/2`: for coprime grids, the number of boxes strictly
    /// between the diagonal and the maximal path, i.e. the largest possible
    /// area (and the largest possible coarea).
    pub fn max_area(&self) -> i64 {
        debug_assert!(self.coprime, "max_area is a coprime-grid quantity");
        (self.m - 1) * (self.n - 1) / 2
    }
}

/// A unit box addressed by its upper-right corner.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct GridBox {
    pub x: i64,
    pub y: i64,
}

/// The label `m*n - m*x - n*y` of the box with upper-right corner `(x, y)`.
///
/// Moving one box right subtracts `m`; one box up subtracts `n`. The label
/// is `>= 0` exactly on boxes weakly left of the diagonal.
pub fn anderson_label(grid: &GridParams, b: GridBox) -> i64 {
    grid.m * grid.n - grid.m * b.x - grid.n * b.y
}

/// Area/coarea decomposition of the region between a path and the diagonal.
///
/// `area_boxes` are listed top row first, left to right; `path_boxes` are
/// the `m` boxes whose right edge is a vertical step, top to bottom.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AreaStats {
    pub area: i64,
    pub coarea: i64,
    pub area_boxes: Vec<GridBox>,
    pub path_boxes: Vec<GridBox>,
}

/// An `(m, n)` Dyck path, stored as the column vector of its vertical steps.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct DyckPath {
    grid: GridParams,
    cols: Vec<i64>,
}

impl DyckPath {
    pub fn new(grid: GridParams, cols: Vec<i64>) -> Result<Self> {
        if cols.len() != grid.m as usize {
            return Err(Error::invalid(format!(
                "expected {} column entries, got {}",
                grid.m,
                cols.len()
            )));
        }
        for (j, &a) in cols.iter().enumerate() {
            let ji = j as i64;
            if a < 0 {
                return Err(Error::invalid(format!("cols[{j}] = {a} is negative")));
            }
            if j > 0 && a < cols[j - 1] {
                return Err(Error::invalid(format!(
                    "cols[{j}] = {a} decreases below cols[{}] = {}",
                    j - 1,
                    cols[j - 1]
                )));
            }
            if grid.m * a > grid.n * ji {
                return Err(Error::invalid(format!(
                    "cols[{j}] = {a} crosses the diagonal ({} * {a} > {} * {ji})",
                    grid.m, grid.n
                )));
            }
        }
        Ok(Self { grid, cols })
    }

    pub fn grid(&self) -> &GridParams {
        &self.grid
    }

    pub fn cols(&self) -> &[i64] {
        &self.cols
    }

    pub fn m(&self) -> i64 {
        self.grid.m
    }

    pub fn n(&self) -> i64 {
        self.grid.n
    }

    /// Top corner of vertical step `j` (steps are indexed top to bottom,
    /// so the corner is `(a_j, m - j)`).
    pub fn step_top(&self, j: usize) -> GridBox {
        GridBox {
            x: self.cols[j],
            y: self.grid.m - j as i64,
        }
    }

    /// Label of the top corner of vertical step `j`; simplifies to
    /// `n*j - m*a_j`, which the path invariants keep nonnegative.
    pub fn step_anderson(&self, j: usize) -> i64 {
        self.grid.n * j as i64 - self.grid.m * self.cols[j]
    }

    /// Number of boxes strictly between the path and the diagonal.
    pub fn area(&self) -> i64 {
        let mut area = 0;
        for (j, &a) in self.cols.iter().enumerate() {
            // Boxes (x, m-j) with x > a_j and label >= 0, i.e. m*x <= n*j.
            area += self.grid.n * j as i64 / self.grid.m - a;
        }
        area
    }

    /// Full area/coarea decomposition with the box sets materialized.
    pub fn area_stats(&self) -> AreaStats {
        let mut area_boxes = Vec::new();
        let mut path_boxes = Vec::with_capacity(self.cols.len());
        let mut coarea = 0;
        for (j, &a) in self.cols.iter().enumerate() {
            let y = self.grid.m - j as i64;
            path_boxes.push(GridBox { x: a, y });
            coarea += a;
            let mut x = a + 1;
            while self.grid.m * x <= self.grid.n * j as i64 {
                area_boxes.push(GridBox { x, y });
                x += 1;
            }
        }
        AreaStats {
            area: area_boxes.len() as i64,
            coarea,
            area_boxes,
            path_boxes,
        }
    }

    /// Whether the lattice point `(x, y)` lies on the path.
    pub fn passes_through(&self, x: i64, y: i64) -> bool {
        let m = self.grid.m;
        if y == m {
            return x == 0;
        }
        if y < 0 || y > m {
            return false;
        }
        // The horizontal run at height y follows vertical step j = m-y-1 and
        // spans [a_j, a_{j+1}], with a_m read as n. Vertical-step endpoints
        // are the run endpoints, so this covers every lattice point.
        let j = (m - y - 1) as usize;
        let lo = self.cols[j];
        let hi = if j + 1 < self.cols.len() {
            self.cols[j + 1]
        } else {
            self.grid.n
        };
        lo <= x && x <= hi
    }

    /// Number of lattice points, excluding the start `(0, m)`, where the
    /// path meets the diagonal. Always `>= 1`: the endpoint `(n, 0)` is on
    /// the diagonal. Coprime grids have no interior candidates, so the
    /// count is exactly 1 there.
    pub fn diagonal_touches(&self) -> i64 {
        let g = gcd(self.grid.m, self.grid.n);
        let dx = self.grid.n / g;
        let dy = self.grid.m / g;
        (1..=g)
            .filter(|&k| self.passes_through(k * dx, self.grid.m - k * dy))
            .count() as i64
    }
}

impl std::fmt::Display for DyckPath {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let cols: Vec<String> = self.cols.iter().map(|a| a.to_string()).collect();
        write!(
            f,
            "({},{})-path [{}]",
            self.grid.m,
            self.grid.n,
            cols.join(",")
        )
    }
}

/// All `(m, n)` Dyck paths in lexicographic order of their column vectors.
pub fn enumerate_dyck_paths(grid: &GridParams) -> DyckPaths {
    DyckPaths {
        grid: *grid,
        next_cols: Some(vec![0; grid.m as usize]),
    }
}

/// Streaming iterator behind [`enumerate_dyck_paths`].
pub struct DyckPaths {
    grid: GridParams,
    next_cols: Option<Vec<i64>>,
}

impl Iterator for DyckPaths {
    type Item = DyckPath;

    fn next(&mut self) -> Option<DyckPath> {
        let cols = self.next_cols.take()?;
        self.next_cols = next_lex(&self.grid, &cols);
        // Valid by construction: the successor rule preserves all three
        // path invariants.
        Some(DyckPath {
            grid: self.grid,
            cols,
        })
    }
}

/// Lexicographic successor of a valid column vector, or None at the end.
fn next_lex(grid: &GridParams, cols: &[i64]) -> Option<Vec<i64>> {
    let mut next = cols.to_vec();
    for j in (1..next.len()).rev() {
        let cand = next[j] + 1;
        if grid.m * cand <= grid.n * j as i64 {
            next[j] = cand;
            // Minimal completion: monotonicity forces at least cand, and
            // cand already satisfies every later diagonal bound.
            for entry in next.iter_mut().skip(j + 1) {
                *entry = cand;
            }
            return Some(next);
        }
    }
    None
}

/// Closed-form path count `binom(m+n, m) / (m+n)` for coprime grids.
pub fn count_dyck_paths_closed(m: i64, n: i64) -> Result<BigInt> {
    if gcd(m, n) != 1 {
        return Err(Error::NonCoprime { m, n });
    }
    let num = num::integer::binomial(BigInt::from(m + n), BigInt::from(m));
    let (q, r) = num::Integer::div_rem(&num, &BigInt::from(m + n));
    debug_assert!(r.is_zero());
    Ok(q)
}
