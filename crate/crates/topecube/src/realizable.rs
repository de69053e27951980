//! Exact-rational hyperplane arrangements and their tope graphs.
//!
//! A set of hyperplanes in `R^d` together with an open convex region cuts
//! the region into open chambers, and each chamber reads off a sign vector
//! by its position relative to every hyperplane. Two chambers are adjacent
//! when exactly one hyperplane separates them, so the chambers form a
//! subgraph of a hypercube — always the tope graph of a complex of
//! oriented matroids. A central arrangement (all hyperplanes through the
//! origin, whole space) realizes an oriented matroid; an unrestricted
//! arrangement an affine one; coordinate hyperplanes a lopsided set.
//!
//! Everything here is exact: coordinates are arbitrary-precision rationals
//! and chamber membership is decided by Fourier–Motzkin elimination on
//! strict inequalities. No floating point is involved anywhere.

use std::collections::BTreeSet;
use std::path::Path;

use itertools::Itertools;
use num::{BigInt, BigRational, One, Signed, Zero};
use serde::Deserialize;

use crate::corners::{verify_corner, verify_peeling, Corner, PeelingSequence};
use crate::error::{Error, Result};
use crate::faces::classify;
use crate::graph::ToGraph;
use crate::word::{SignWord, MAX_WIDTH};

/// A hyperplane `normal · x = offset` with declared positive side
/// `normal · x > offset`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hyperplane {
    /// Normal vector, one rational per dimension; never all zero.
    pub normal: Vec<BigRational>,
    /// Offset of the hyperplane along its normal.
    pub offset: BigRational,
}

impl Hyperplane {
    /// Convenience constructor from integer coordinates.
    pub fn from_ints(normal: &[i64], offset: i64) -> Hyperplane {
        Hyperplane {
            normal: normal.iter().map(|&v| rational(v)).collect(),
            offset: rational(offset),
        }
    }
}

/// One strict region constraint `normal · x < offset`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constraint {
    /// Normal vector of the bounding halfspace; never all zero.
    pub normal: Vec<BigRational>,
    /// Strict upper bound on `normal · x`.
    pub offset: BigRational,
}

impl Constraint {
    /// Convenience constructor from integer coordinates.
    pub fn from_ints(normal: &[i64], offset: i64) -> Constraint {
        Constraint {
            normal: normal.iter().map(|&v| rational(v)).collect(),
            offset: rational(offset),
        }
    }
}

/// A finite hyperplane arrangement restricted to an open convex region.
///
/// An empty `region` means the whole space.
#[derive(Debug, Clone)]
pub struct Arrangement {
    dim: usize,
    hyperplanes: Vec<Hyperplane>,
    region: Vec<Constraint>,
}

impl Arrangement {
    /// Validate and build an arrangement.
    ///
    /// Rejects dimension zero, normals of the wrong length, zero normals,
    /// and duplicate hyperplanes (the same hyperplane listed twice, in
    /// either orientation or any scaling).
    pub fn new(
        dim: usize,
        hyperplanes: Vec<Hyperplane>,
        region: Vec<Constraint>,
    ) -> Result<Arrangement> {
        if dim == 0 {
            return Err(Error::Arrangement("dimension must be at least one".into()));
        }
        if hyperplanes.is_empty() {
            return Err(Error::Arrangement(
                "an arrangement needs at least one hyperplane".into(),
            ));
        }
        let mut canonical: BTreeSet<Vec<(BigInt, BigInt)>> = BTreeSet::new();
        for (i, h) in hyperplanes.iter().enumerate() {
            check_normal("hyperplane", i, dim, &h.normal)?;
            let scaled = canonical_row(&h.normal, &h.offset);
            if !canonical.insert(scaled) {
                return Err(Error::Arrangement(format!(
                    "hyperplane {i} duplicates an earlier one"
                )));
            }
        }
        for (i, c) in region.iter().enumerate() {
            check_normal("region constraint", i, dim, &c.normal)?;
        }
        Ok(Arrangement {
            dim,
            hyperplanes,
            region,
        })
    }

    /// Ambient dimension.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// The hyperplanes, in declaration order.
    pub fn hyperplanes(&self) -> &[Hyperplane] {
        &self.hyperplanes
    }

    /// The region constraints; empty means the whole space.
    pub fn region(&self) -> &[Constraint] {
        &self.region
    }

    /// Whether every hyperplane passes through the origin.
    pub fn is_central(&self) -> bool {
        self.hyperplanes.iter().all(|h| h.offset.is_zero())
    }

    /// Whether the arrangement is simple: every `d`-subset of hyperplanes
    /// meets in exactly one point and no `d + 1` hyperplanes share one.
    pub fn is_simple(&self) -> bool {
        self.check_simple().is_ok()
    }

    fn check_simple(&self) -> Result<()> {
        let d = self.dim;
        for subset in (0..self.hyperplanes.len()).combinations(d) {
            if self.intersection_point(&subset).is_none() {
                return Err(Error::Arrangement(format!(
                    "not simple: hyperplanes {subset:?} do not meet in a single point"
                )));
            }
        }
        for subset in (0..self.hyperplanes.len()).combinations(d + 1) {
            let point = match self.intersection_point(&subset[..d]) {
                Some(p) => p,
                None => continue,
            };
            let last = &self.hyperplanes[subset[d]];
            if dot(&last.normal, &point) == last.offset {
                return Err(Error::Arrangement(format!(
                    "not simple: hyperplanes {subset:?} are concurrent"
                )));
            }
        }
        Ok(())
    }

    /// The unique intersection point of the chosen hyperplanes, if their
    /// normals are linearly independent.
    fn intersection_point(&self, subset: &[usize]) -> Option<Vec<BigRational>> {
        let rows: Vec<&[BigRational]> = subset
            .iter()
            .map(|&i| self.hyperplanes[i].normal.as_slice())
            .collect();
        let rhs: Vec<BigRational> = subset
            .iter()
            .map(|&i| self.hyperplanes[i].offset.clone())
            .collect();
        solve_square(&rows, &rhs)
    }

    /// Strict rows (`coeffs · x < bound`) selecting the open side `sign`
    /// of every hyperplane: set bits are the positive side.
    fn sign_rows(&self, word: SignWord) -> Vec<RatRow> {
        self.hyperplanes
            .iter()
            .enumerate()
            .map(|(i, h)| {
                if word.bit(i) {
                    // normal · x > offset  ⇔  -normal · x < -offset
                    (h.normal.iter().map(|c| -c).collect(), -h.offset.clone())
                } else {
                    (h.normal.clone(), h.offset.clone())
                }
            })
            .collect()
    }

    fn region_rows(&self) -> Vec<RatRow> {
        self.region
            .iter()
            .map(|c| (c.normal.clone(), c.offset.clone()))
            .collect()
    }
}

fn check_normal(what: &str, index: usize, dim: usize, normal: &[BigRational]) -> Result<()> {
    if normal.len() != dim {
        return Err(Error::Arrangement(format!(
            "{what} {index} has {} coordinates in dimension {dim}",
            normal.len()
        )));
    }
    if normal.iter().all(|c| c.is_zero()) {
        return Err(Error::Arrangement(format!(
            "{what} {index} has a zero normal"
        )));
    }
    Ok(())
}

/// Scale `(normal | offset)` so the first nonzero entry is one; both
/// orientations and all scalings of one hyperplane agree on this form.
fn canonical_row(normal: &[BigRational], offset: &BigRational) -> Vec<(BigInt, BigInt)> {
    let lead = normal
        .iter()
        .find(|c| !c.is_zero())
        .expect("zero normals are rejected first")
        .clone();
    normal
        .iter()
        .chain(std::iter::once(offset))
        .map(|c| {
            let v = c / &lead;
            (v.numer().clone(), v.denom().clone())
        })
        .collect()
}

fn rational(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

fn dot(a: &[BigRational], x: &[BigRational]) -> BigRational {
    a.iter().zip(x).map(|(c, v)| c * v).sum()
}

/// Solve the square system `rows · x = rhs`; `None` when singular.
fn solve_square(rows: &[&[BigRational]], rhs: &[BigRational]) -> Option<Vec<BigRational>> {
    let d = rhs.len();
    let mut m: Vec<Vec<BigRational>> = rows
        .iter()
        .zip(rhs)
        .map(|(r, b)| r.iter().cloned().chain(std::iter::once(b.clone())).collect())
        .collect();
    for col in 0..d {
        let pivot = (col..d).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, pivot);
        let lead = m[col][col].clone();
        for entry in m[col].iter_mut() {
            *entry /= &lead;
        }
        for row in 0..d {
            if row != col && !m[row][col].is_zero() {
                let factor = m[row][col].clone();
                let deltas: Vec<BigRational> =
                    m[col].iter().map(|entry| &factor * entry).collect();
                for (entry, delta) in m[row].iter_mut().zip(deltas) {
                    *entry -= delta;
                }
            }
        }
    }
    Some(m.into_iter().map(|row| row[d].clone()).collect())
}

// ---------------------------------------------------------------------------
// Strict feasibility by Fourier–Motzkin elimination
// ---------------------------------------------------------------------------

/// A strict inequality `coeffs · x < bound` over rationals.
type RatRow = (Vec<BigRational>, BigRational);

/// The same inequality scaled to coprime integers.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
struct IRow {
    coeffs: Vec<BigInt>,
    bound: BigInt,
}

/// Eliminating a variable pairs every lower bound with every upper bound;
/// this cap keeps degenerate systems from exploding.
const FM_ROW_CAP: usize = 50_000;

/// Scale a rational row to coprime integers.
fn integer_row(row: &RatRow) -> IRow {
    let (coeffs, bound) = row;
    let mut lcm = BigInt::one();
    for value in coeffs.iter().chain(std::iter::once(bound)) {
        lcm = num::Integer::lcm(&lcm, value.denom());
    }
    let scale = BigRational::from_integer(lcm);
    let mut ints: Vec<BigInt> = coeffs.iter().map(|c| (c * &scale).to_integer()).collect();
    let mut bint = (bound * &scale).to_integer();
    let mut gcd = BigInt::zero();
    for value in ints.iter().chain(std::iter::once(&bint)) {
        gcd = num::Integer::gcd(&gcd, value);
    }
    if !gcd.is_zero() && !gcd.is_one() {
        for value in ints.iter_mut() {
            *value /= &gcd;
        }
        bint /= &gcd;
    }
    IRow {
        coeffs: ints,
        bound: bint,
    }
}

/// Add a row to the system. Tautologies (`0 < positive`) are dropped;
/// returns `false` when the row is a contradiction (`0 < nonpositive`).
fn insert_row(sys: &mut BTreeSet<IRow>, row: IRow) -> bool {
    if row.coeffs.iter().all(|c| c.is_zero()) {
        return row.bound.is_positive();
    }
    sys.insert(row);
    true
}

/// Project the strict system onto `keep` (or decide feasibility when
/// `keep` is `None`) by eliminating every other variable. Returns `None`
/// when the system is infeasible.
fn eliminate(rows: &[RatRow], dim: usize, keep: Option<usize>) -> Result<Option<BTreeSet<IRow>>> {
    let mut sys: BTreeSet<IRow> = BTreeSet::new();
    for row in rows {
        if !insert_row(&mut sys, integer_row(row)) {
            return Ok(None);
        }
    }
    loop {
        // Pick the eliminable variable with the cheapest pairing.
        let mut best: Option<(usize, usize)> = None;
        for var in 0..dim {
            if keep == Some(var) {
                continue;
            }
            let pos = sys.iter().filter(|r| r.coeffs[var].is_positive()).count();
            let neg = sys.iter().filter(|r| r.coeffs[var].is_negative()).count();
            if pos + neg == 0 {
                continue;
            }
            let cost = pos * neg;
            if best.is_none_or(|(_, c)| cost < c) {
                best = Some((var, cost));
            }
        }
        let var = match best {
            Some((var, _)) => var,
            None => return Ok(Some(sys)),
        };
        let mut next: BTreeSet<IRow> = BTreeSet::new();
        let (mut uppers, mut lowers) = (Vec::new(), Vec::new());
        for row in sys {
            if row.coeffs[var].is_positive() {
                uppers.push(row);
            } else if row.coeffs[var].is_negative() {
                lowers.push(row);
            } else if !insert_row(&mut next, row) {
                return Ok(None);
            }
        }
        for up in &uppers {
            for low in &lowers {
                let a = low.coeffs[var].abs();
                let b = up.coeffs[var].clone();
                let coeffs: Vec<BigInt> = up
                    .coeffs
                    .iter()
                    .zip(&low.coeffs)
                    .map(|(u, l)| &a * u + &b * l)
                    .collect();
                let bound = &a * &up.bound + &b * &low.bound;
                let combined = integer_row(&(
                    coeffs.into_iter().map(BigRational::from_integer).collect(),
                    BigRational::from_integer(bound),
                ));
                if !insert_row(&mut next, combined) {
                    return Ok(None);
                }
                if next.len() > FM_ROW_CAP {
                    return Err(Error::GuardExceeded {
                        what: "Fourier-Motzkin rows",
                        limit: FM_ROW_CAP,
                        got: next.len(),
                    });
                }
            }
        }
        sys = next;
    }
}

/// Does the strict system `rows` have a solution?
fn strictly_feasible(rows: &[RatRow], dim: usize) -> Result<bool> {
    Ok(eliminate(rows, dim, None)?.is_some())
}

// ---------------------------------------------------------------------------
// Tope graphs of arrangements
// ---------------------------------------------------------------------------

/// The tope graph of an arrangement: one vertex per open chamber inside
/// the region, signs read off the declared positive sides, chambers
/// adjacent when separated by exactly one hyperplane.
///
/// Errors with [`Error::EmptyGraph`] when no chamber meets the region.
pub fn tope_graph_of(arr: &Arrangement) -> Result<ToGraph> {
    let n = arr.hyperplanes.len();
    if n > MAX_WIDTH {
        return Err(Error::GuardExceeded {
            what: "arrangement hyperplanes",
            limit: MAX_WIDTH,
            got: n,
        });
    }
    let words = search_chambers(arr, arr.region_rows(), 0, 0)?;
    if words.is_empty() {
        return Err(Error::EmptyGraph);
    }
    let g = ToGraph::new(n, words)?;
    let check = g.is_partial_cube();
    if !check.is_partial_cube() {
        return Err(Error::Internal(format!(
            "chamber graph is not a partial cube: {}",
            check.reason().unwrap_or_else(|| "no reason recorded".into())
        )));
    }
    Ok(g)
}

/// Depth-first sign assignment with prefix pruning: a prefix whose open
/// polyhedron is already empty can be discarded wholesale. The first two
/// levels fan out in parallel; assembly order is fixed, so the result is
/// deterministic.
fn search_chambers(
    arr: &Arrangement,
    rows: Vec<RatRow>,
    depth: usize,
    word: u32,
) -> Result<Vec<SignWord>> {
    if !strictly_feasible(&rows, arr.dim)? {
        return Ok(Vec::new());
    }
    if depth == arr.hyperplanes.len() {
        return Ok(vec![SignWord(word)]);
    }
    let h = &arr.hyperplanes[depth];
    let minus_row: RatRow = (h.normal.clone(), h.offset.clone());
    let plus_row: RatRow = (h.normal.iter().map(|c| -c).collect(), -h.offset.clone());
    if depth < 2 && arr.hyperplanes.len() - depth > 3 {
        let mut minus_rows = rows.clone();
        minus_rows.push(minus_row);
        let mut plus_rows = rows;
        plus_rows.push(plus_row);
        let (minus, plus) = rayon::join(
            || search_chambers(arr, minus_rows, depth + 1, word),
            || search_chambers(arr, plus_rows, depth + 1, word | 1 << depth),
        );
        let mut out = minus?;
        out.extend(plus?);
        Ok(out)
    } else {
        let mut rows = rows;
        rows.push(minus_row);
        let mut out = search_chambers(arr, rows.clone(), depth + 1, word)?;
        rows.pop();
        rows.push(plus_row);
        out.extend(search_chambers(arr, rows, depth + 1, word | 1 << depth)?);
        Ok(out)
    }
}

/// Number of chambers of a simple arrangement of `m` hyperplanes in
/// dimension `d` with whole-space region: the sum of `C(m, i)` for
/// `i = 0..=d`.
pub fn chamber_count_formula(m: usize, d: usize) -> usize {
    (0..=d).map(|i| binomial(m, i)).sum()
}

fn binomial(m: usize, k: usize) -> usize {
    if k > m {
        return 0;
    }
    let mut out: u128 = 1;
    for i in 0..k {
        out = out * (m - i) as u128 / (i + 1) as u128;
    }
    out as usize
}

// ---------------------------------------------------------------------------
// Syntactic classification
// ---------------------------------------------------------------------------

/// Class labels read off the arrangement's shape, each one cross-checked
/// against the classification of the actual tope graph:
///
/// * every arrangement yields a `COM`;
/// * whole-space region: `AOM`; additionally central: `OM`;
/// * every normal on a coordinate axis: `LOP`.
///
/// A claimed label the tope graph does not confirm is an internal error —
/// it would mean the construction and the recognizer disagree.
pub fn classify_realizable(arr: &Arrangement) -> Result<Vec<&'static str>> {
    let unrestricted = arr.region.is_empty();
    let central = arr.is_central();
    let axis_aligned = arr
        .hyperplanes
        .iter()
        .all(|h| h.normal.iter().filter(|c| !c.is_zero()).count() == 1);
    let mut labels = vec!["COM"];
    if unrestricted && central {
        labels.push("OM");
    }
    if unrestricted {
        labels.push("AOM");
    }
    if axis_aligned {
        labels.push("LOP");
    }
    let c = classify(&tope_graph_of(arr)?)?;
    for label in &labels {
        let holds = match *label {
            "COM" => c.com,
            "OM" => c.om,
            "AOM" => c.aom,
            "LOP" => c.lop,
            _ => unreachable!(),
        };
        if !holds {
            return Err(Error::Internal(format!(
                "arrangement shape promises {label} but the tope graph is not one"
            )));
        }
    }
    Ok(labels)
}

// ---------------------------------------------------------------------------
// Corner peeling by halfspace sweep
// ---------------------------------------------------------------------------

/// Peel the tope graph of a simple arrangement over a bounded region by
/// sweeping the first region halfspace inward.
///
/// The sweep pushes the halfspace boundary past one 0-dimensional cell of
/// the subdivided region at a time, in decreasing order of the halfspace's
/// linear functional. The chambers cut off between two positions form
/// corners of the current tope graph; simultaneous cut-offs (ties in the
/// functional) are serialized into smallest-first verified corner steps.
/// Every step is checked by `verify_corner`, and the assembled sequence by
/// `verify_peeling` — a failure of either is an internal error.
///
/// Restrictions: the arrangement must be simple and the region nonempty
/// and bounded. Central and whole-space arrangements have no bounding
/// region and are unsupported.
pub fn realizable_corner_peeling(arr: &Arrangement) -> Result<PeelingSequence> {
    if arr.region.is_empty() {
        return Err(Error::Arrangement(
            "corner peeling sweeps a region halfspace; a whole-space arrangement \
             has none (unsupported)"
                .into(),
        ));
    }
    arr.check_simple()?;
    check_bounded(arr)?;
    let g0 = tope_graph_of(arr)?;

    // The sweep functional comes from the first region halfspace
    // `a · x < b`: lowering the threshold pushes its boundary inward.
    let sweep = arr.region[0].clone();
    let fixed_rows: Vec<RatRow> = arr.region[1..]
        .iter()
        .map(|c| (c.normal.clone(), c.offset.clone()))
        .collect();

    let thresholds = cell_thresholds(arr, &sweep)?;
    let mut alive: BTreeSet<SignWord> = g0.words().iter().copied().collect();
    let mut residual = Some(g0.clone());
    let mut steps: Vec<Corner> = Vec::new();
    for t in thresholds.iter().rev() {
        let mut next: BTreeSet<SignWord> = BTreeSet::new();
        let mut dying: Vec<SignWord> = Vec::new();
        for &w in &alive {
            let mut rows = fixed_rows.clone();
            rows.push((sweep.normal.clone(), t.clone()));
            rows.extend(arr.sign_rows(w));
            if strictly_feasible(&rows, arr.dim)? {
                next.insert(w);
            } else {
                dying.push(w);
            }
        }
        serialize_cuts(&mut residual, dying, &mut steps)?;
        alive = next;
    }
    if !alive.is_empty() {
        return Err(Error::Internal(
            "halfspace sweep passed every cell but chambers survived".into(),
        ));
    }
    let seq = PeelingSequence { steps };
    if !verify_peeling(&g0, &seq)? {
        return Err(Error::Internal(
            "halfspace sweep produced a sequence that fails peeling verification".into(),
        ));
    }
    Ok(seq)
}

/// Values of the sweep functional at every 0-cell of the region subdivided
/// by the arrangement: intersection points of `dim` independent planes
/// drawn from the arrangement and the region boundaries, kept when they
/// lie in the closed region.
fn cell_thresholds(arr: &Arrangement, sweep: &Constraint) -> Result<BTreeSet<BigRational>> {
    let mut planes: Vec<(&[BigRational], &BigRational)> = arr
        .hyperplanes
        .iter()
        .map(|h| (h.normal.as_slice(), &h.offset))
        .collect();
    planes.extend(arr.region.iter().map(|c| (c.normal.as_slice(), &c.offset)));
    let mut out = BTreeSet::new();
    for subset in (0..planes.len()).combinations(arr.dim) {
        let rows: Vec<&[BigRational]> = subset.iter().map(|&i| planes[i].0).collect();
        let rhs: Vec<BigRational> = subset.iter().map(|&i| planes[i].1.clone()).collect();
        let point = match solve_square(&rows, &rhs) {
            Some(p) => p,
            None => continue,
        };
        let inside = arr
            .region
            .iter()
            .all(|c| dot(&c.normal, &point) <= c.offset);
        if inside {
            out.insert(dot(&sweep.normal, &point));
        }
    }
    if out.is_empty() {
        return Err(Error::Internal(
            "bounded region produced no subdivision cells".into(),
        ));
    }
    Ok(out)
}

/// Turn the chambers dying at one threshold into verified corner steps.
/// Subsets are tried smallest-first in a fixed order, so simultaneous
/// singleton cut-offs peel one vertex at a time.
fn serialize_cuts(
    residual: &mut Option<ToGraph>,
    mut dying: Vec<SignWord>,
    steps: &mut Vec<Corner>,
) -> Result<()> {
    while !dying.is_empty() {
        let g = residual.as_ref().ok_or_else(|| {
            Error::Internal("halfspace sweep kept cutting after the graph emptied".into())
        })?;
        let mut found: Option<(Vec<usize>, Corner)> = None;
        'sizes: for size in 1..=dying.len() {
            for subset in (0..dying.len()).combinations(size) {
                let candidate: Vec<SignWord> = subset.iter().map(|&i| dying[i]).collect();
                if let Some(corner) = verify_corner(g, &candidate)? {
                    found = Some((subset, corner));
                    break 'sizes;
                }
            }
        }
        let (chosen, corner) = found.ok_or_else(|| {
            Error::Internal("halfspace sweep step contains no corner of the residual graph".into())
        })?;
        let cut: BTreeSet<SignWord> = corner.vertices.iter().copied().collect();
        let keep: Vec<SignWord> = g
            .words()
            .iter()
            .copied()
            .filter(|w| !cut.contains(w))
            .collect();
        *residual = if keep.is_empty() {
            None
        } else {
            Some(ToGraph::new(g.width(), keep)?)
        };
        for &i in chosen.iter().rev() {
            dying.remove(i);
        }
        steps.push(corner);
    }
    Ok(())
}

/// Reject regions that are unbounded in some coordinate direction: the
/// projection of the region onto each axis must be bounded on both sides.
/// An infeasible (empty) region passes — the tope graph reports it as the
/// clearer empty-graph error.
fn check_bounded(arr: &Arrangement) -> Result<()> {
    let rows = arr.region_rows();
    for axis in 0..arr.dim {
        let projected = match eliminate(&rows, arr.dim, Some(axis))? {
            Some(p) => p,
            None => return Ok(()),
        };
        let upper = projected.iter().any(|r| r.coeffs[axis].is_positive());
        let lower = projected.iter().any(|r| r.coeffs[axis].is_negative());
        if !upper || !lower {
            return Err(Error::Arrangement(format!(
                "the region is unbounded along coordinate {axis}; corner peeling \
                 needs a bounded region"
            )));
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Arrangement files
// ---------------------------------------------------------------------------

#[derive(Deserialize)]
struct ArrangementFile {
    dim: usize,
    hyperplanes: Vec<HyperplaneFile>,
    #[serde(default)]
    region: Vec<ConstraintFile>,
}

#[derive(Deserialize)]
struct HyperplaneFile {
    normal: Vec<String>,
    offset: String,
    #[serde(default = "default_positive")]
    positive: String,
}

#[derive(Deserialize)]
struct ConstraintFile {
    normal: Vec<String>,
    offset: String,
}

fn default_positive() -> String {
    "+".into()
}

/// Parse an arrangement from its JSON form:
///
/// ```json
/// {
///   "dim": 2,
///   "hyperplanes": [
///     { "normal": ["1", "0"], "offset": "0", "positive": "+" }
///   ],
///   "region": [
///     { "normal": ["-1", "0"], "offset": "2" }
///   ]
/// }
/// ```
///
/// Rationals are strings like `"3"` or `"-7/2"`. A hyperplane's declared
/// positive side is `normal · x > offset` under `"+"` (the default) and
/// the other side under `"-"`. Region entries mean `normal · x < offset`;
/// an absent or empty region is the whole space.
pub fn parse_arrangement(text: &str) -> Result<Arrangement> {
    let file: ArrangementFile = serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        msg: e.to_string(),
    })?;
    let mut hyperplanes = Vec::new();
    for (i, h) in file.hyperplanes.iter().enumerate() {
        let mut normal = parse_rationals(&h.normal, &format!("hyperplane {i}"))?;
        let mut offset = parse_rational(&h.offset, &format!("hyperplane {i} offset"))?;
        match h.positive.as_str() {
            "+" => {}
            "-" => {
                for c in normal.iter_mut() {
                    *c = -c.clone();
                }
                offset = -offset;
            }
            other => {
                return Err(Error::Arrangement(format!(
                    "hyperplane {i} has positive side `{other}`; use `+` or `-`"
                )))
            }
        }
        hyperplanes.push(Hyperplane { normal, offset });
    }
    let mut region = Vec::new();
    for (i, c) in file.region.iter().enumerate() {
        region.push(Constraint {
            normal: parse_rationals(&c.normal, &format!("region constraint {i}"))?,
            offset: parse_rational(&c.offset, &format!("region constraint {i} offset"))?,
        });
    }
    Arrangement::new(file.dim, hyperplanes, region)
}

/// Read an arrangement from a JSON file; see [`parse_arrangement`].
pub fn read_arrangement_file(path: &Path) -> Result<Arrangement> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::CatalogIo(format!("read {}: {e}", path.display())))?;
    parse_arrangement(&text)
}

fn parse_rationals(values: &[String], what: &str) -> Result<Vec<BigRational>> {
    values.iter().map(|v| parse_rational(v, what)).collect()
}

fn parse_rational(text: &str, what: &str) -> Result<BigRational> {
    text.trim().parse::<BigRational>().map_err(|e| {
        Error::Arrangement(format!("{what}: `{text}` is not a rational number ({e})"))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::{canonical_key, CanonLevel};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn lines(normals: &[[i64; 2]]) -> Arrangement {
        let hs = normals
            .iter()
            .map(|n| Hyperplane::from_ints(n, 0))
            .collect();
        Arrangement::new(2, hs, Vec::new()).expect("arrangement")
    }

    fn iso_key(g: &ToGraph) -> Vec<u8> {
        canonical_key(g, CanonLevel::Isomorphism).expect("key")
    }

    #[test]
    fn central_planar_lines_make_even_cycles() {
        for m in 2..=8 {
            let normals: Vec<[i64; 2]> = (0..m as i64).map(|k| [1, k]).collect();
            let g = tope_graph_of(&lines(&normals)).expect("tope graph");
            assert_eq!(g.len(), 2 * m);
            let cycle = ToGraph::even_cycle(m).expect("cycle");
            assert_eq!(iso_key(&g), iso_key(&cycle), "m = {m}");
        }
    }

    #[test]
    fn coordinate_hyperplanes_make_cubes() {
        for d in 1..=4 {
            let hs: Vec<Hyperplane> = (0..d)
                .map(|i| {
                    let mut normal = vec![0i64; d];
                    normal[i] = 1;
                    Hyperplane::from_ints(&normal, 0)
                })
                .collect();
            let arr = Arrangement::new(d, hs, Vec::new()).expect("arrangement");
            let g = tope_graph_of(&arr).expect("tope graph");
            let cube = ToGraph::hypercube(d).expect("cube");
            assert_eq!(iso_key(&g), iso_key(&cube), "d = {d}");
            let labels = classify_realizable(&arr).expect("labels");
            assert!(labels.contains(&"COM"));
            assert!(labels.contains(&"OM"));
            assert!(labels.contains(&"AOM"));
            assert!(labels.contains(&"LOP"));
        }
    }

    #[test]
    fn clipped_coordinate_arrangement_is_a_lopsided_set() {
        let hs = vec![
            Hyperplane::from_ints(&[1, 0], 0),
            Hyperplane::from_ints(&[0, 1], 0),
        ];
        // x > -1, y > -1, x + y < 0: the all-positive quadrant misses the
        // region, so one orthant drops out.
        let region = vec![
            Constraint::from_ints(&[-1, 0], 1),
            Constraint::from_ints(&[0, -1], 1),
            Constraint::from_ints(&[1, 1], 0),
        ];
        let arr = Arrangement::new(2, hs, region).expect("arrangement");
        let g = tope_graph_of(&arr).expect("tope graph");
        assert_eq!(g.len(), 3);
        let labels = classify_realizable(&arr).expect("labels");
        assert_eq!(labels, vec!["COM", "LOP"]);
        let c = classify(&g).expect("classify");
        assert!(c.lop && c.com && !c.antipodal);
    }

    #[test]
    fn chamber_counts_match_the_formula_and_the_sample_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let mut tested = 0;
        'cases: for &(m, d) in &[(4usize, 2usize), (5, 2), (6, 2), (4, 3)] {
            for _attempt in 0..50 {
                let hs: Vec<Hyperplane> = (0..m)
                    .map(|_| {
                        let normal: Vec<i64> =
                            (0..d).map(|_| rng.gen_range(-6..=6i64)).collect();
                        let offset = rng.gen_range(-4..=4i64);
                        Hyperplane {
                            normal: normal.iter().map(|&v| rational(v)).collect(),
                            offset: rational(offset),
                        }
                    })
                    .collect();
                let arr = match Arrangement::new(d, hs, Vec::new()) {
                    Ok(a) => a,
                    Err(_) => continue,
                };
                if !arr.is_simple() {
                    continue;
                }
                let g = tope_graph_of(&arr).expect("tope graph");
                assert_eq!(
                    g.len(),
                    chamber_count_formula(m, d),
                    "chamber count for m = {m}, d = {d}"
                );
                assert_eq!(sample_chambers(&arr, &mut rng), g.len());
                tested += 1;
                continue 'cases;
            }
            panic!("no simple arrangement found for m = {m}, d = {d}");
        }
        assert_eq!(tested, 4);
    }

    /// Independent chamber oracle: collect full-support sign vectors of
    /// sample points — arrangement vertices nudged into every orthant
    /// direction, plus seeded random points. Every sampled vector is a
    /// genuine chamber, so this bounds the chamber count from below; the
    /// test asserts it reaches the exact count.
    fn sample_chambers(arr: &Arrangement, rng: &mut ChaCha8Rng) -> usize {
        let d = arr.dim();
        let eps = BigRational::new(BigInt::from(1), BigInt::from(1u64 << 24));
        let mut points: Vec<Vec<BigRational>> = Vec::new();
        for subset in (0..arr.hyperplanes().len()).combinations(d) {
            let p = match arr.intersection_point(&subset) {
                Some(p) => p,
                None => continue,
            };
            // Nudge along the dual basis of the defining normals: solving
            // `A u = tau` puts `p + eps u` strictly inside the local cone
            // with sign pattern tau, whichever way the planes lean.
            let rows: Vec<&[BigRational]> = subset
                .iter()
                .map(|&i| arr.hyperplanes()[i].normal.as_slice())
                .collect();
            for signs in 0..1u32 << d {
                let tau: Vec<BigRational> = (0..d)
                    .map(|i| {
                        if signs >> i & 1 == 1 {
                            rational(1)
                        } else {
                            rational(-1)
                        }
                    })
                    .collect();
                let u = match solve_square(&rows, &tau) {
                    Some(u) => u,
                    None => continue,
                };
                points.push(p.iter().zip(&u).map(|(c, ui)| c + &eps * ui).collect());
            }
        }
        for _ in 0..4000 {
            points.push(
                (0..d)
                    .map(|_| {
                        BigRational::new(BigInt::from(rng.gen_range(-20_000..=20_000i64)), BigInt::from(1024))
                    })
                    .collect(),
            );
        }
        let mut seen: BTreeSet<u32> = BTreeSet::new();
        'points: for p in &points {
            let mut word = 0u32;
            for (i, h) in arr.hyperplanes().iter().enumerate() {
                let value = dot(&h.normal, p);
                if value == h.offset {
                    continue 'points;
                }
                if value > h.offset {
                    word |= 1 << i;
                }
            }
            seen.insert(word);
        }
        seen.len()
    }

    #[test]
    fn reorienting_one_hyperplane_keeps_the_reorientation_key() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let hs: Vec<Hyperplane> = (0..4)
            .map(|_| {
                Hyperplane::from_ints(
                    &[rng.gen_range(1..=5i64), rng.gen_range(-5..=5i64)],
                    rng.gen_range(-3..=3i64),
                )
            })
            .collect();
        let arr = Arrangement::new(2, hs.clone(), Vec::new()).expect("arrangement");
        let mut flipped = hs;
        flipped[2] = Hyperplane {
            normal: flipped[2].normal.iter().map(|c| -c).collect(),
            offset: -flipped[2].offset.clone(),
        };
        let arr_flipped = Arrangement::new(2, flipped, Vec::new()).expect("arrangement");
        let a = tope_graph_of(&arr).expect("tope graph");
        let b = tope_graph_of(&arr_flipped).expect("tope graph");
        assert_ne!(a.words(), b.words());
        assert_eq!(
            canonical_key(&a, CanonLevel::Reorientation).expect("key"),
            canonical_key(&b, CanonLevel::Reorientation).expect("key"),
        );
    }

    fn boxed_coordinates(d: usize, half_width: i64) -> Arrangement {
        let hs: Vec<Hyperplane> = (0..d)
            .map(|i| {
                let mut normal = vec![0i64; d];
                normal[i] = 1;
                Hyperplane::from_ints(&normal, 0)
            })
            .collect();
        let mut region = Vec::new();
        for i in 0..d {
            let mut normal = vec![0i64; d];
            normal[i] = 1;
            region.push(Constraint::from_ints(&normal, half_width));
            normal[i] = -1;
            region.push(Constraint::from_ints(&normal, half_width));
        }
        Arrangement::new(d, hs, region).expect("arrangement")
    }

    #[test]
    fn boxed_cubes_peel_one_vertex_at_a_time() {
        for d in 1..=3 {
            let arr = boxed_coordinates(d, 2);
            let seq = realizable_corner_peeling(&arr).expect("peeling");
            assert_eq!(seq.len(), 1 << d, "d = {d}");
            assert!(seq.steps.iter().all(|c| c.vertices.len() == 1));
        }
    }

    #[test]
    fn triangle_region_peeling_verifies() {
        let hs = vec![
            Hyperplane::from_ints(&[1, 0], 0),
            Hyperplane::from_ints(&[0, 1], 0),
        ];
        let region = vec![
            Constraint::from_ints(&[1, 1], 1),
            Constraint::from_ints(&[-1, 0], 2),
            Constraint::from_ints(&[0, -1], 2),
        ];
        let arr = Arrangement::new(2, hs, region).expect("arrangement");
        let g = tope_graph_of(&arr).expect("tope graph");
        assert_eq!(g.len(), 4);
        let seq = realizable_corner_peeling(&arr).expect("peeling");
        assert!(seq.len() >= 2);
        assert_eq!(seq.total_vertices(), 4);
        assert!(verify_peeling(&g, &seq).expect("verify"));
    }

    #[test]
    fn peeling_preconditions_are_enforced() {
        // No bounding region.
        let central = lines(&[[1, 0], [0, 1], [1, 1]]);
        assert!(matches!(
            realizable_corner_peeling(&central),
            Err(Error::Arrangement(_))
        ));

        // Three concurrent lines are not simple.
        let hs = vec![
            Hyperplane::from_ints(&[1, 0], 0),
            Hyperplane::from_ints(&[0, 1], 0),
            Hyperplane::from_ints(&[1, 1], 0),
        ];
        let region = vec![
            Constraint::from_ints(&[1, 0], 2),
            Constraint::from_ints(&[-1, 0], 2),
            Constraint::from_ints(&[0, 1], 2),
            Constraint::from_ints(&[0, -1], 2),
        ];
        let concurrent = Arrangement::new(2, hs, region.clone()).expect("arrangement");
        assert!(matches!(
            realizable_corner_peeling(&concurrent),
            Err(Error::Arrangement(_))
        ));

        // An unbounded region.
        let unbounded = Arrangement::new(
            2,
            vec![
                Hyperplane::from_ints(&[1, 0], 0),
                Hyperplane::from_ints(&[0, 1], 0),
            ],
            vec![Constraint::from_ints(&[1, 0], 1)],
        )
        .expect("arrangement");
        assert!(matches!(
            realizable_corner_peeling(&unbounded),
            Err(Error::Arrangement(_))
        ));

        // An empty region has no chambers at all.
        let empty = Arrangement::new(
            1,
            vec![Hyperplane::from_ints(&[1], 0)],
            vec![
                Constraint::from_ints(&[1], -1),
                Constraint::from_ints(&[-1], -1),
            ],
        )
        .expect("arrangement");
        assert!(matches!(tope_graph_of(&empty), Err(Error::EmptyGraph)));
    }

    #[test]
    fn construction_rejects_degenerate_input() {
        assert!(matches!(
            Arrangement::new(0, vec![Hyperplane::from_ints(&[], 0)], Vec::new()),
            Err(Error::Arrangement(_))
        ));
        assert!(matches!(
            Arrangement::new(2, vec![Hyperplane::from_ints(&[0, 0], 1)], Vec::new()),
            Err(Error::Arrangement(_))
        ));
        // The same hyperplane twice, second time rescaled and flipped.
        assert!(matches!(
            Arrangement::new(
                2,
                vec![
                    Hyperplane::from_ints(&[1, 2], 1),
                    Hyperplane::from_ints(&[-2, -4], -2),
                ],
                Vec::new()
            ),
            Err(Error::Arrangement(_))
        ));
        // Wrong normal length.
        assert!(matches!(
            Arrangement::new(2, vec![Hyperplane::from_ints(&[1], 0)], Vec::new()),
            Err(Error::Arrangement(_))
        ));
    }

    #[test]
    fn arrangement_files_parse_and_reject() {
        let good = r#"{
            "dim": 2,
            "hyperplanes": [
                { "normal": ["1", "0"], "offset": "0" },
                { "normal": ["0", "1"], "offset": "-1/2", "positive": "-" }
            ],
            "region": [
                { "normal": ["1", "1"], "offset": "3" }
            ]
        }"#;
        let arr = parse_arrangement(good).expect("parse");
        assert_eq!(arr.dim(), 2);
        assert_eq!(arr.hyperplanes().len(), 2);
        // The "-" positive side flips the stored orientation.
        assert_eq!(arr.hyperplanes()[1].offset, rational(1) / rational(2));
        assert_eq!(arr.region().len(), 1);

        let bad_json = "{ dim: 2 }";
        assert!(matches!(
            parse_arrangement(bad_json),
            Err(Error::Parse { .. })
        ));

        let bad_rational = r#"{
            "dim": 1,
            "hyperplanes": [ { "normal": ["one"], "offset": "0" } ]
        }"#;
        assert!(matches!(
            parse_arrangement(bad_rational),
            Err(Error::Arrangement(_))
        ));

        let bad_side = r#"{
            "dim": 1,
            "hyperplanes": [ { "normal": ["1"], "offset": "0", "positive": "up" } ]
        }"#;
        assert!(matches!(
            parse_arrangement(bad_side),
            Err(Error::Arrangement(_))
        ));
    }

    #[test]
    fn tope_graphs_are_coms() {
        // A mixed fixture: three generic lines and a shifted region.
        let hs = vec![
            Hyperplane::from_ints(&[2, 1], 1),
            Hyperplane::from_ints(&[1, -1], 0),
            Hyperplane::from_ints(&[1, 3], -1),
        ];
        let region = vec![
            Constraint::from_ints(&[1, 0], 4),
            Constraint::from_ints(&[-1, 0], 4),
            Constraint::from_ints(&[0, 1], 4),
            Constraint::from_ints(&[0, -1], 4),
        ];
        let arr = Arrangement::new(2, hs, region).expect("arrangement");
        let g = tope_graph_of(&arr).expect("tope graph");
        assert!(g.is_partial_cube().is_partial_cube());
        let c = classify(&g).expect("classify");
        assert!(c.com);
        let labels = classify_realizable(&arr).expect("labels");
        assert_eq!(labels, vec!["COM"]);
    }

    #[test]
    fn coordinate_planes_plus_diagonal_have_fifteen_chambers() {
        // Three coordinate planes and a generic fourth: a simple
        // arrangement whose only empty sign pattern is the all-negative
        // orthant on the far side of the diagonal plane.
        let hs = vec![
            Hyperplane::from_ints(&[1, 0, 0], 0),
            Hyperplane::from_ints(&[0, 1, 0], 0),
            Hyperplane::from_ints(&[0, 0, 1], 0),
            Hyperplane::from_ints(&[1, 1, 1], 1),
        ];
        let arr = Arrangement::new(3, hs, Vec::new()).expect("arrangement");
        assert!(arr.is_simple());
        let g = tope_graph_of(&arr).expect("tope graph");
        assert_eq!(g.len(), 15);
        for w in 0..16u32 {
            let feasible = strictly_feasible(&arr.sign_rows(SignWord(w)), 3).expect("fm");
            assert_eq!(feasible, g.contains(SignWord(w)), "word {w:04b}");
        }
        assert!(!g.contains(SignWord(0b1000)));
    }
}
