//! Parking-function objects on rational Dyck paths.
//!
//! A rank-`r` semistandard parking function is a Dyck path together with a
//! label in `{1..r}` for each vertical step, weakly increasing down every
//! column of consecutive vertical steps. Labels are stored top-down,
//! aligned with the column vector of the path, so the semistandardness
//! check is one comparison per adjacent pair. A (standard) parking
//! function is the bijective special case: labels are a permutation of
//! `{1..m}` and the column condition is strict.
//!
//! The module also implements the frequency-tuple picture used to count
//! semistandard parking functions on coprime grids: a tuple in
//! `Z^{n x r}_{>=0}` with total `m` spells out a labeled lattice path, the
//! cyclic group rotates the blocks, and each orbit contains exactly one
//! tuple whose labeled path is semistandard. Tuple statistics (`t_k`
//! values and their argmax set) use exact `i64` rationals throughout.

use crate::error::{Error, Result};
use crate::lattice::{enumerate_dyck_paths, DyckPath, DyckPaths, GridParams};
use num::bigint::BigInt;
use num::integer::gcd;
use num::rational::Ratio;
use num::{Integer, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

/// A weak composition: an ordered list of nonnegative parts.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Composition {
    parts: Vec<i64>,
}

impl Composition {
    pub fn new(parts: Vec<i64>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::InvalidWeight(
                "composition needs at least one part".into(),
            ));
        }
        if let Some(&p) = parts.iter().find(|&&p| p < 0) {
            return Err(Error::InvalidWeight(format!("negative part {p}")));
        }
        Ok(Self { parts })
    }

    /// The weight `(1, 1, ..., 1)` of a parking function on `m` steps.
    pub fn ones(m: i64) -> Self {
        Self {
            parts: vec![1; m as usize],
        }
    }

    pub fn parts(&self) -> &[i64] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn total(&self) -> i64 {
        self.parts.iter().sum()
    }

    /// All weak compositions of `m` into exactly `parts` parts, in
    /// lexicographic order.
    pub fn enumerate(m: i64, parts: i64) -> Vec<Composition> {
        fn go(remaining: i64, slots: i64, prefix: &mut Vec<i64>, out: &mut Vec<Composition>) {
            if slots == 1 {
                prefix.push(remaining);
                out.push(Composition {
                    parts: prefix.clone(),
                });
                prefix.pop();
                return;
            }
            for first in 0..=remaining {
                prefix.push(first);
                go(remaining - first, slots - 1, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        if parts >= 1 && m >= 0 {
            go(m, parts, &mut Vec::new(), &mut out);
        }
        out
    }
}

impl std::fmt::Display for Composition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// A Dyck path with vertical steps labeled into `{1..r}`, weakly
/// increasing down each column.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SemistandardParkingFunction {
    path: DyckPath,
    labels: Vec<i64>,
    r: i64,
}

impl SemistandardParkingFunction {
    pub fn new(path: DyckPath, labels: Vec<i64>, r: i64) -> Result<Self> {
        if r < 1 {
            return Err(Error::invalid(format!("rank must be >= 1, got {r}")));
        }
        if labels.len() != path.cols().len() {
            return Err(Error::invalid(format!(
                "expected {} labels, got {}",
                path.cols().len(),
                labels.len()
            )));
        }
        for (j, &v) in labels.iter().enumerate() {
            if v < 1 || v > r {
                return Err(Error::invalid(format!(
                    "label {v} at step {j} is outside 1..={r}"
                )));
            }
            if j > 0 && path.cols()[j] == path.cols()[j - 1] && labels[j - 1] > v {
                return Err(Error::invalid(format!(
                    "labels decrease down a column at steps {} and {j}",
                    j - 1
                )));
            }
        }
        Ok(Self { path, labels, r })
    }

    pub fn path(&self) -> &DyckPath {
        &self.path
    }

    pub fn grid(&self) -> &GridParams {
        self.path.grid()
    }

    pub fn labels(&self) -> &[i64] {
        &self.labels
    }

    pub fn r(&self) -> i64 {
        self.r
    }

    pub fn m(&self) -> i64 {
        self.path.m()
    }

    pub fn n(&self) -> i64 {
        self.path.n()
    }

    pub fn area(&self) -> i64 {
        self.path.area()
    }

    /// How many times each label value is used: part `j` is `#{i : label_i = j}`.
    pub fn weight(&self) -> Composition {
        let mut parts = vec![0i64; self.r as usize];
        for &v in &self.labels {
            parts[(v - 1) as usize] += 1;
        }
        Composition { parts }
    }

    /// The bijectively-labeled view, if the labels are a permutation of
    /// `{1..m}` (requires `r = m`).
    pub fn to_parking_function(&self) -> Option<ParkingFunction> {
        if self.r != self.m() {
            return None;
        }
        ParkingFunction::new(self.path.clone(), self.labels.clone()).ok()
    }
}

impl std::fmt::Display for SemistandardParkingFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let labels: Vec<String> = self.labels.iter().map(|v| v.to_string()).collect();
        write!(
            f,
            "{} labels [{}] rank {}",
            self.path,
            labels.join(","),
            self.r
        )
    }
}

/// A Dyck path with vertical steps labeled bijectively by `{1..m}`,
/// strictly increasing down each column.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ParkingFunction {
    path: DyckPath,
    labels: Vec<i64>,
}

impl ParkingFunction {
    pub fn new(path: DyckPath, labels: Vec<i64>) -> Result<Self> {
        let m = path.m();
        if labels.len() != m as usize {
            return Err(Error::invalid(format!(
                "expected {} labels, got {}",
                m,
                labels.len()
            )));
        }
        let mut seen = vec![false; m as usize];
        for (j, &v) in labels.iter().enumerate() {
            if v < 1 || v > m {
                return Err(Error::invalid(format!(
                    "label {v} at step {j} is outside 1..={m}"
                )));
            }
            if std::mem::replace(&mut seen[(v - 1) as usize], true) {
                return Err(Error::invalid(format!("label {v} repeats")));
            }
            if j > 0 && path.cols()[j] == path.cols()[j - 1] && labels[j - 1] >= v {
                return Err(Error::invalid(format!(
                    "labels fail to increase strictly down a column at steps {} and {j}",
                    j - 1
                )));
            }
        }
        Ok(Self { path, labels })
    }

    pub fn path(&self) -> &DyckPath {
        &self.path
    }

    pub fn grid(&self) -> &GridParams {
        self.path.grid()
    }

    pub fn labels(&self) -> &[i64] {
        &self.labels
    }

    pub fn m(&self) -> i64 {
        self.path.m()
    }

    pub fn n(&self) -> i64 {
        self.path.n()
    }

    pub fn area(&self) -> i64 {
        self.path.area()
    }

    /// Step index carrying a given label.
    pub fn position_of(&self, label: i64) -> usize {
        self.labels
            .iter()
            .position(|&v| v == label)
            .expect("labels are a bijection onto 1..=m")
    }

    /// View as a rank-`m` semistandard parking function (strict columns are
    /// in particular weakly increasing).
    pub fn as_sspf(&self) -> SemistandardParkingFunction {
        SemistandardParkingFunction {
            path: self.path.clone(),
            labels: self.labels.clone(),
            r: self.m(),
        }
    }
}

impl std::fmt::Display for ParkingFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let labels: Vec<String> = self.labels.iter().map(|v| v.to_string()).collect();
        write!(f, "{} labels [{}]", self.path, labels.join(","))
    }
}

/// Closed-form count of rank-`r` semistandard parking functions on a
/// coprime `(m, n)` grid: `binom(n*r + m - 1, m) / n`.
pub fn count_sspf_closed(m: i64, n: i64, r: i64) -> Result<BigInt> {
    if m < 1 || n < 1 || r < 1 {
        return Err(Error::invalid(format!(
            "parameters must be >= 1, got (m, n, r) = ({m}, {n}, {r})"
        )));
    }
    if gcd(m, n) != 1 {
        return Err(Error::NonCoprime { m, n });
    }
    let num = num::integer::binomial(BigInt::from(n * r + m - 1), BigInt::from(m));
    let (q, rem) = num.div_rem(&BigInt::from(n));
    debug_assert!(rem.is_zero(), "cycle-lemma division must be exact");
    Ok(q)
}

/// Stream every rank-`r` semistandard parking function on `grid`, paths in
/// lexicographic column order and labels in lexicographic order within each
/// path. Non-coprime grids are allowed. An optional weight filter keeps
/// only objects of that exact weight.
pub fn enumerate_sspf(
    grid: &GridParams,
    r: i64,
    weight_filter: Option<&Composition>,
) -> Result<SspfIter> {
    if r < 1 {
        return Err(Error::invalid(format!("rank must be >= 1, got {r}")));
    }
    if let Some(w) = weight_filter {
        if w.len() != r as usize {
            return Err(Error::InvalidWeight(format!(
                "weight {w} has {} parts, expected rank {r}",
                w.len()
            )));
        }
        if w.total() != grid.m() {
            return Err(Error::InvalidWeight(format!(
                "weight {w} sums to {}, expected m = {}",
                w.total(),
                grid.m()
            )));
        }
    }
    Ok(SspfIter {
        r,
        weight_filter: weight_filter.cloned(),
        paths: enumerate_dyck_paths(grid),
        current: None,
    })
}

/// Streaming iterator behind [`enumerate_sspf`].
pub struct SspfIter {
    r: i64,
    weight_filter: Option<Composition>,
    paths: DyckPaths,
    current: Option<(DyckPath, Vec<i64>)>,
}

impl SspfIter {
    /// Minimal label for position `j` given the labels before it.
    fn floor_label(path: &DyckPath, labels: &[i64], j: usize) -> i64 {
        if j > 0 && path.cols()[j] == path.cols()[j - 1] {
            labels[j - 1]
        } else {
            1
        }
    }

    /// Advance `labels` to the lexicographically next valid labeling.
    fn bump(path: &DyckPath, labels: &mut [i64], r: i64) -> bool {
        for j in (0..labels.len()).rev() {
            if labels[j] < r {
                labels[j] += 1;
                for k in j + 1..labels.len() {
                    labels[k] = Self::floor_label(path, labels, k);
                }
                return true;
            }
        }
        false
    }
}

impl Iterator for SspfIter {
    type Item = SemistandardParkingFunction;

    fn next(&mut self) -> Option<SemistandardParkingFunction> {
        loop {
            match self.current.take() {
                None => {
                    let path = self.paths.next()?;
                    let labels = vec![1; path.cols().len()];
                    self.current = Some((path, labels));
                }
                Some((path, mut labels)) => {
                    let item = SemistandardParkingFunction {
                        path: path.clone(),
                        labels: labels.clone(),
                        r: self.r,
                    };
                    if Self::bump(&path, &mut labels, self.r) {
                        self.current = Some((path, labels));
                    }
                    let keep = match &self.weight_filter {
                        Some(w) => item.weight() == *w,
                        None => true,
                    };
                    if keep {
                        return Some(item);
                    }
                }
            }
        }
    }
}

/// Stream every parking function on `grid`, paths in lexicographic column
/// order and label permutations in lexicographic order within each path.
///
/// This is a direct backtracking enumeration, independent of
/// [`enumerate_sspf`], so the two can cross-check each other.
pub fn enumerate_parking_functions(grid: &GridParams) -> PfIter {
    PfIter {
        paths: enumerate_dyck_paths(grid),
        pending: Vec::new(),
    }
}

/// Streaming iterator behind [`enumerate_parking_functions`].
pub struct PfIter {
    paths: DyckPaths,
    pending: Vec<ParkingFunction>,
}

impl Iterator for PfIter {
    type Item = ParkingFunction;

    fn next(&mut self) -> Option<ParkingFunction> {
        loop {
            if let Some(pf) = self.pending.pop() {
                return Some(pf);
            }
            let path = self.paths.next()?;
            let m = path.m() as usize;
            let mut used = vec![false; m];
            let mut labels = Vec::with_capacity(m);
            let mut out = Vec::new();
            fill_pf_labels(&path, &mut used, &mut labels, &mut out);
            // Generated in lexicographic order; pop() consumes from the
            // back, so reverse to emit in that order.
            out.reverse();
            self.pending = out;
        }
    }
}

fn fill_pf_labels(
    path: &DyckPath,
    used: &mut Vec<bool>,
    labels: &mut Vec<i64>,
    out: &mut Vec<ParkingFunction>,
) {
    let m = path.m() as usize;
    let j = labels.len();
    if j == m {
        out.push(ParkingFunction {
            path: path.clone(),
            labels: labels.clone(),
        });
        return;
    }
    let floor = if j > 0 && path.cols()[j] == path.cols()[j - 1] {
        labels[j - 1] + 1
    } else {
        1
    };
    for v in floor..=m as i64 {
        if used[(v - 1) as usize] {
            continue;
        }
        used[(v - 1) as usize] = true;
        labels.push(v);
        fill_pf_labels(path, used, labels, out);
        labels.pop();
        used[(v - 1) as usize] = false;
    }
}

/// A nonnegative `n x r` integer matrix with a fixed total `m`, read as
/// `n` blocks (rows) of `r` label multiplicities each.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FrequencyTuple {
    entries: Vec<Vec<i64>>,
}

impl FrequencyTuple {
    pub fn new(entries: Vec<Vec<i64>>) -> Result<Self> {
        if entries.is_empty() || entries[0].is_empty() {
            return Err(Error::invalid(
                "frequency tuple needs n >= 1 blocks of r >= 1 entries",
            ));
        }
        let r = entries[0].len();
        let mut total: i64 = 0;
        for (i, block) in entries.iter().enumerate() {
            if block.len() != r {
                return Err(Error::invalid(format!(
                    "block {i} has {} entries, expected {r}",
                    block.len()
                )));
            }
            for &e in block {
                if e < 0 {
                    return Err(Error::invalid(format!("negative entry {e} in block {i}")));
                }
                total += e;
            }
        }
        if total < 1 {
            return Err(Error::invalid("frequency tuple must have positive total"));
        }
        // The labeled path lives on an (m, n) grid; enforce the same size
        // bound as GridParams so conversion is infallible.
        GridParams::new(total, entries.len() as i64)?;
        Ok(Self { entries })
    }

    pub fn entries(&self) -> &[Vec<i64>] {
        &self.entries
    }

    /// Number of blocks (the grid width `n`).
    pub fn n(&self) -> i64 {
        self.entries.len() as i64
    }

    /// Entries per block (the rank `r`).
    pub fn r(&self) -> i64 {
        self.entries[0].len() as i64
    }

    /// Total of all entries (the number of vertical steps `m`).
    pub fn m(&self) -> i64 {
        self.entries.iter().flatten().sum()
    }

    /// Per-block totals `a_1..a_n`.
    pub fn block_sums(&self) -> Vec<i64> {
        self.entries.iter().map(|b| b.iter().sum()).collect()
    }

    /// Per-label totals; invariant under cyclic block shifts.
    pub fn weight(&self) -> Composition {
        let mut parts = vec![0i64; self.entries[0].len()];
        for block in &self.entries {
            for (j, &e) in block.iter().enumerate() {
                parts[j] += e;
            }
        }
        Composition { parts }
    }
}

impl std::fmt::Display for FrequencyTuple {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let blocks: Vec<String> = self
            .entries
            .iter()
            .map(|b| {
                b.iter()
                    .map(|e| e.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect();
        write!(f, "({})", blocks.join("|"))
    }
}

/// Rotate the blocks left by `power` (mod n): block `i` of the result is
/// block `i + power` of the input.
pub fn cyclic_shift(t: &FrequencyTuple, power: i64) -> FrequencyTuple {
    let n = t.entries.len();
    let shift = power.rem_euclid(n as i64) as usize;
    let mut entries = Vec::with_capacity(n);
    for i in 0..n {
        entries.push(t.entries[(i + shift) % n].clone());
    }
    FrequencyTuple { entries }
}

/// Result of laying out a frequency tuple as a labeled lattice path.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TupleImage {
    /// The path stays below the diagonal; block labels are automatically
    /// weakly increasing down columns, so this is a semistandard parking
    /// function.
    Sspf(SemistandardParkingFunction),
    /// The path crosses the diagonal, so it is not a Dyck path.
    NotDyck { cols: Vec<i64>, labels: Vec<i64> },
}

/// Lay out block `i` as `a_i` south steps in column `i - 1` (label `j`
/// repeated `a_{ij}` times, in increasing label order), separated by east
/// steps.
pub fn tuple_to_labeled_path(t: &FrequencyTuple) -> TupleImage {
    let mut cols = Vec::new();
    let mut labels = Vec::new();
    for (i, block) in t.entries.iter().enumerate() {
        for (j, &mult) in block.iter().enumerate() {
            for _ in 0..mult {
                cols.push(i as i64);
                labels.push(j as i64 + 1);
            }
        }
    }
    let grid = GridParams::new(t.m(), t.n()).expect("size-checked at construction");
    match DyckPath::new(grid, cols.clone()) {
        Ok(path) => {
            let sspf = SemistandardParkingFunction::new(path, labels, t.r())
                .expect("block labels are weakly increasing down columns");
            TupleImage::Sspf(sspf)
        }
        Err(_) => TupleImage::NotDyck { cols, labels },
    }
}

/// The values `t_k = m*k/n - (a_1 + ... + a_k)` for `k = 1..n` as exact
/// rationals, plus the argmax index set (1-based).
///
/// The labeled path of the tuple is semistandard iff `n` is a maximum,
/// equivalently iff every `t_k <= 0` (note `t_n = 0` always).
pub fn maxima_profile(t: &FrequencyTuple) -> (Vec<Ratio<i64>>, BTreeSet<i64>) {
    let m = t.m();
    let n = t.n();
    let mut values = Vec::with_capacity(n as usize);
    let mut partial = 0i64;
    for (k, a) in t.block_sums().iter().enumerate() {
        partial += a;
        values.push(Ratio::new(m * (k as i64 + 1), n) - Ratio::from_integer(partial));
    }
    let max = values.iter().max().copied().expect("n >= 1");
    let maxima = values
        .iter()
        .enumerate()
        .filter(|(_, v)| **v == max)
        .map(|(k, _)| k as i64 + 1)
        .collect();
    (values, maxima)
}

/// The unique cyclic shift of `t` whose labeled path is semistandard,
/// converted to a [`SemistandardParkingFunction`]. Requires `gcd(m, n) = 1`
/// (uniqueness fails otherwise).
pub fn orbit_canonical_sspf(t: &FrequencyTuple) -> Result<SemistandardParkingFunction> {
    let (m, n) = (t.m(), t.n());
    if gcd(m, n) != 1 {
        return Err(Error::NonCoprime { m, n });
    }
    let mut found = None;
    for power in 0..n {
        let shifted = cyclic_shift(t, power);
        let (_, maxima) = maxima_profile(&shifted);
        if maxima.contains(&n) {
            match tuple_to_labeled_path(&shifted) {
                TupleImage::Sspf(s) => {
                    assert!(
                        found.is_none(),
                        "coprime orbits contain exactly one semistandard shift"
                    );
                    found = Some(s);
                }
                TupleImage::NotDyck { .. } => {
                    unreachable!("t_k <= 0 for all k forces a Dyck path")
                }
            }
        }
    }
    Ok(found.expect("every coprime orbit contains a semistandard shift"))
}

/// All `n x r` nonnegative tuples with total `m`, in lexicographic order of
/// their flattened entries.
pub fn enumerate_frequency_tuples(m: i64, n: i64, r: i64) -> Result<Vec<FrequencyTuple>> {
    if m < 1 || n < 1 || r < 1 {
        return Err(Error::invalid(format!(
            "parameters must be >= 1, got (m, n, r) = ({m}, {n}, {r})"
        )));
    }
    GridParams::new(m, n)?;
    let slots = (n * r) as usize;
    let mut out = Vec::new();
    let mut flat = vec![0i64; slots];
    fn go(
        flat: &mut Vec<i64>,
        idx: usize,
        remaining: i64,
        r: usize,
        out: &mut Vec<FrequencyTuple>,
    ) {
        if idx + 1 == flat.len() {
            flat[idx] = remaining;
            let entries: Vec<Vec<i64>> = flat.chunks(r).map(|c| c.to_vec()).collect();
            out.push(FrequencyTuple { entries });
            flat[idx] = 0;
            return;
        }
        for v in 0..=remaining {
            flat[idx] = v;
            go(flat, idx + 1, remaining - v, r, out);
            flat[idx] = 0;
        }
    }
    go(&mut flat, 0, m, r as usize, &mut out);
    Ok(out)
}

/// Column headers for enumeration dumps.
pub const CSV_HEADER: [&str; 8] = ["m", "n", "r", "cols", "labels", "weight", "area", "dinv"];

/// One CSV record for an enumeration dump. The dinv column is left empty
/// when the statistic is undefined (non-coprime grids).
pub fn csv_record(s: &SemistandardParkingFunction, dinv: Option<i64>) -> [String; 8] {
    let join = |xs: &[i64]| {
        xs.iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join(";")
    };
    [
        s.m().to_string(),
        s.n().to_string(),
        s.r().to_string(),
        join(s.path().cols()),
        join(s.labels()),
        join(s.weight().parts()),
        s.area().to_string(),
        dinv.map(|d| d.to_string()).unwrap_or_default(),
    ]
}

/// JSON shape for a semistandard parking function, mirroring the internal
/// representation: `{"m":…, "n":…, "r":…, "cols":[…], "labels":[…]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SspfJson {
    pub m: i64,
    pub n: i64,
    pub r: i64,
    pub cols: Vec<i64>,
    pub labels: Vec<i64>,
}

impl SspfJson {
    pub fn from_sspf(s: &SemistandardParkingFunction) -> Self {
        Self {
            m: s.m(),
            n: s.n(),
            r: s.r(),
            cols: s.path().cols().to_vec(),
            labels: s.labels().to_vec(),
        }
    }

    pub fn into_sspf(self) -> Result<SemistandardParkingFunction> {
        let grid = GridParams::new(self.m, self.n)?;
        let path = DyckPath::new(grid, self.cols)?;
        SemistandardParkingFunction::new(path, self.labels, self.r)
    }
}
