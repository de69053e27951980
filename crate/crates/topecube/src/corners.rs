//! Simplicial vertices, corners, and corner peelings.
//!
//! A *corner* of a tope graph is a vertex set `C` whose removal is as gentle
//! as possible: `C` lies in a unique maximal face `H`, and the rest
//! `T = H \ C` together with its antipodal image `-T` covers `H` so that the
//! pair `(T, -T)` describes an expansion of `H` in general position. Corners
//! are the steps of *corner peelings* — ordered partitions of the vertex set
//! where every part is a corner of what is left at that point.

use std::collections::{BTreeSet, HashMap, HashSet};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::faces::{classify, enumerate_faces, zone_graph, Face};
use crate::graph::ToGraph;
use crate::word::{extract_bits, SignWord};

/// Default bound on the size of candidate corners in the generic search.
pub const DEFAULT_CORNER_BUDGET: usize = 8;

/// A verified corner: the removed set, its unique maximal host face, and the
/// chunk that stays behind inside the host.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Corner {
    /// The corner vertices `C`, sorted.
    pub vertices: Vec<SignWord>,
    /// The unique maximal face containing `C`.
    pub host_face: Face,
    /// The chunk `T = host \ C`, sorted.
    pub chunk: Vec<SignWord>,
}

/// Result of a bounded corner search.
#[derive(Debug, Clone)]
pub struct CornerSearch {
    /// All corners found, sorted by vertex list.
    pub corners: Vec<Corner>,
    /// Whether the search provably saw every corner. The structured rules
    /// are complete on cell-shaped faces; elsewhere completeness needs the
    /// budget to reach half the face size.
    pub complete: bool,
}

/// An ordered list of corners, each one a corner of the graph with the
/// earlier steps removed.
#[derive(Debug, Clone)]
pub struct PeelingSequence {
    /// The steps, in removal order.
    pub steps: Vec<Corner>,
}

impl PeelingSequence {
    /// Number of steps.
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    /// True when the sequence has no steps.
    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Total number of vertices removed over all steps.
    pub fn total_vertices(&self) -> usize {
        self.steps.iter().map(|c| c.vertices.len()).sum()
    }
}

/// Outcome of a peeling attempt: either the full sequence, or the progress
/// made before no further corner could be found.
#[derive(Debug, Clone)]
pub enum Peeling {
    /// Every vertex was removed by a corner step.
    Complete(PeelingSequence),
    /// The strategy ran out of corners; `residual` is the stuck graph.
    Stuck {
        partial: PeelingSequence,
        residual: ToGraph,
    },
}

impl Peeling {
    /// Did the peeling cover the whole graph?
    pub fn is_complete(&self) -> bool {
        matches!(self, Peeling::Complete(_))
    }

    /// The steps taken, complete or not.
    pub fn sequence(&self) -> &PeelingSequence {
        match self {
            Peeling::Complete(s) => s,
            Peeling::Stuck { partial, .. } => partial,
        }
    }
}

/// Peeling strategies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PeelStrategy {
    /// Remove vertices lying in a unique maximal cube (lopsided sets).
    Lop,
    /// Leaf blocks of the cut-vertex tree (COMs of rank at most 2).
    Rank2,
    /// Zone-graph recursion with corner lifting (hypercellular graphs).
    Hypercellular,
    /// Budgeted search over connected subsets of maximal faces (any COM).
    Generic,
}

impl PeelStrategy {
    /// Parse a strategy name as used on the command line.
    pub fn parse(s: &str) -> Option<PeelStrategy> {
        match s {
            "lop" => Some(PeelStrategy::Lop),
            "rank2" => Some(PeelStrategy::Rank2),
            "hypercellular" => Some(PeelStrategy::Hypercellular),
            "generic" => Some(PeelStrategy::Generic),
            _ => None,
        }
    }

    /// The command-line name.
    pub fn as_str(&self) -> &'static str {
        match self {
            PeelStrategy::Lop => "lop",
            PeelStrategy::Rank2 => "rank2",
            PeelStrategy::Hypercellular => "hypercellular",
            PeelStrategy::Generic => "generic",
        }
    }
}

impl std::fmt::Display for PeelStrategy {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Precomputed face data shared by many corner verifications on one graph.
struct FaceCtx<'a> {
    g: &'a ToGraph,
    faces: &'a [Face],
    /// Indices of maximal faces.
    maximal: Vec<usize>,
    /// For each maximal face (parallel to `maximal`): indices of its maximal
    /// proper subfaces.
    children: Vec<Vec<usize>>,
}

impl<'a> FaceCtx<'a> {
    fn new(g: &'a ToGraph, faces: &'a [Face]) -> FaceCtx<'a> {
        let maximal = maximal_face_indices(faces);
        let children = maximal
            .iter()
            .map(|&hi| {
                let subs: Vec<usize> = (0..faces.len())
                    .filter(|&j| j != hi && faces[hi].contains_face(&faces[j]))
                    .collect();
                subs.iter()
                    .copied()
                    .filter(|&j| {
                        !subs
                            .iter()
                            .any(|&l| l != j && faces[l].contains_face(&faces[j]))
                    })
                    .collect()
            })
            .collect();
        FaceCtx {
            g,
            faces,
            maximal,
            children,
        }
    }

    /// Check the corner conditions for `c` and build the witness on success.
    fn verify(&self, c: &[SignWord]) -> Option<Corner> {
        let mut cs: Vec<SignWord> = c.to_vec();
        cs.sort_unstable();
        cs.dedup();
        if cs.is_empty() || cs.iter().any(|w| !self.g.contains(*w)) {
            return None;
        }
        // Convention for replaying peelings: the last remaining vertex is a
        // corner of the one-vertex graph.
        if self.g.len() == 1 && cs.len() == 1 {
            return Some(Corner {
                vertices: cs,
                host_face: self.faces[self.maximal[0]].clone(),
                chunk: Vec::new(),
            });
        }
        if cs.len() == self.g.len() {
            return None;
        }
        // C must sit in exactly one maximal face.
        let hosts: Vec<usize> = (0..self.maximal.len())
            .filter(|&k| {
                let f = &self.faces[self.maximal[k]];
                cs.iter().all(|&w| f.contains_tope(w))
            })
            .collect();
        let [host_pos] = hosts.as_slice() else {
            return None;
        };
        let h = &self.faces[self.maximal[*host_pos]];
        let width = self.g.width();
        // T = H \ C must be nonempty and isometric, and T together with its
        // antipodal image inside H must cover H; the latter is exactly "no
        // vertex of C has its antipode within H in C as well".
        let t: Vec<SignWord> = h
            .topes
            .iter()
            .copied()
            .filter(|w| cs.binary_search(w).is_err())
            .collect();
        if t.is_empty() {
            return None;
        }
        let minus_c: HashSet<SignWord> =
            cs.iter().map(|&w| h.antipode_within(w, width)).collect();
        if cs.iter().any(|w| minus_c.contains(w)) {
            return None;
        }
        if !matches!(self.g.is_isometric_subset(&t), Ok(true)) {
            return None;
        }
        // Every maximal proper face of H must lie entirely in T or entirely
        // in -T, and in exactly one of the two.
        let c_set: HashSet<SignWord> = cs.iter().copied().collect();
        for &m in &self.children[*host_pos] {
            let mf = &self.faces[m];
            let in_t = mf.topes.iter().all(|w| !c_set.contains(w));
            let in_minus_t = mf.topes.iter().all(|w| !minus_c.contains(w));
            if in_t == in_minus_t {
                return None;
            }
        }
        Some(Corner {
            vertices: cs,
            host_face: h.clone(),
            chunk: t,
        })
    }
}

/// Indices of the faces not strictly contained in any other face.
fn maximal_face_indices(faces: &[Face]) -> Vec<usize> {
    (0..faces.len())
        .filter(|&i| {
            !faces
                .iter()
                .enumerate()
                .any(|(j, f)| j != i && f.contains_face(&faces[i]))
        })
        .collect()
}

/// Check whether `c` is a corner of `g`; on success return the witness.
///
/// The conditions: `c` lies in a unique maximal face `H`; `T = H \ c` is a
/// nonempty isometric subgraph with `T ∪ -T = H`; and every maximal proper
/// face of `H` lies in exactly one of `T`, `-T`. For a rank-1 host this
/// reduces to `c` being a single vertex. As a convention supporting peeling
/// replays, the single vertex of a one-vertex graph counts as a corner.
pub fn verify_corner(g: &ToGraph, c: &[SignWord]) -> Result<Option<Corner>> {
    let faces = enumerate_faces(g)?;
    let ctx = FaceCtx::new(g, &faces);
    Ok(ctx.verify(c))
}

/// Vertices lying in a unique maximal face whose rank equals their degree.
///
/// In an antipodal graph the unique maximal face is the whole graph, so this
/// is the classical "degree equals rank" condition.
pub fn simplicial_vertices(g: &ToGraph) -> Result<Vec<SignWord>> {
    let faces = enumerate_faces(g)?;
    let maximal = maximal_face_indices(&faces);
    Ok(g.words()
        .iter()
        .copied()
        .filter(|&w| {
            let mut hosts = maximal.iter().filter(|&&i| faces[i].contains_tope(w));
            match (hosts.next(), hosts.next()) {
                (Some(&i), None) => g.degree(w) == faces[i].rank,
                _ => false,
            }
        })
        .collect())
}

/// Per-class witnesses for the simplicial-vertex condition.
#[derive(Debug, Clone)]
pub struct ThetaLasVergnas {
    /// True when every class with an edge has a witness.
    pub holds: bool,
    /// For each coordinate: a simplicial vertex incident to an edge of that
    /// class, if one exists.
    pub witnesses: Vec<Option<SignWord>>,
}

/// Does every Θ-class of the antipodal graph `g` contain an edge incident to
/// a simplicial vertex?
pub fn theta_las_vergnas(g: &ToGraph) -> Result<ThetaLasVergnas> {
    g.require_partial_cube()?;
    if !g.is_antipodal() {
        return Err(Error::WrongClass {
            required: "an antipodal partial cube",
        });
    }
    let simp = simplicial_vertices(g)?;
    let witnesses: Vec<Option<SignWord>> = (0..g.width())
        .map(|e| simp.iter().copied().find(|&v| g.contains(v.flip(e))))
        .collect();
    let holds = g
        .theta_classes()
        .iter()
        .filter(|tc| !tc.edges.is_empty())
        .all(|tc| witnesses[tc.coord].is_some());
    Ok(ThetaLasVergnas { holds, witnesses })
}

/// Minimum degree versus rank of an antipodal partial cube.
#[derive(Debug, Clone, Copy)]
pub struct DegreeRankReport {
    pub min_degree: usize,
    pub rank: usize,
    /// Whether `δ ≤ r` holds.
    pub within_bound: bool,
    /// When `δ ≤ 2` the two invariants must coincide; `Some` records whether
    /// they do.
    pub low_degree_forces_equality: Option<bool>,
}

/// Compare the minimum degree of an antipodal partial cube with its rank.
pub fn min_degree_vs_rank(g: &ToGraph) -> Result<DegreeRankReport> {
    g.require_partial_cube()?;
    if !g.is_antipodal() {
        return Err(Error::WrongClass {
            required: "an antipodal partial cube",
        });
    }
    let min_degree = g.min_degree();
    let rank = g.rank();
    Ok(DegreeRankReport {
        min_degree,
        rank,
        within_bound: min_degree <= rank,
        low_degree_forces_equality: (min_degree <= 2).then_some(min_degree == rank),
    })
}

/// All corners found by the structured rules plus a budgeted generic search.
///
/// Candidates come from four generators: singleton vertices; `(m-1)`-vertex
/// arcs of rank-2 faces; products of factor corners on faces that are
/// products of edges and even cycles; and connected subsets of a maximal
/// face of size at most `budget`. Every candidate is checked by
/// [`verify_corner`]'s conditions, so the returned list contains only actual
/// corners. `complete` reports whether the generators provably covered every
/// corner.
pub fn find_corners(g: &ToGraph, budget: usize) -> Result<CornerSearch> {
    let cls = classify(g)?;
    if !cls.com {
        return Err(Error::WrongClass { required: "a COM" });
    }
    let faces = enumerate_faces(g)?;
    let ctx = FaceCtx::new(g, &faces);
    Ok(find_corners_in(&ctx, budget))
}

/// Find one corner with the same generators as [`find_corners`], stopping at
/// the first hit. Faces are searched in parallel; which corner is returned
/// is unspecified, but whether one exists is deterministic.
pub fn find_any_corner(g: &ToGraph, budget: usize) -> Result<Option<Corner>> {
    let faces = enumerate_faces(g)?;
    let ctx = FaceCtx::new(g, &faces);
    // Cheap rules first: some singleton is very often a corner.
    if let Some(c) = g.words().iter().find_map(|&w| ctx.verify(&[w])) {
        return Ok(Some(c));
    }
    Ok(ctx.maximal.clone().into_par_iter().find_map_any(|hi| {
        let mut found = None;
        face_candidates(&ctx, hi, budget, &mut |cand| {
            if found.is_none() {
                found = ctx.verify(cand);
            }
            found.is_some()
        });
        found
    }))
}

fn find_corners_in(ctx: &FaceCtx<'_>, budget: usize) -> CornerSearch {
    let per_face: Vec<(Vec<Corner>, bool)> = ctx
        .maximal
        .par_iter()
        .map(|&hi| {
            let mut corners = Vec::new();
            face_candidates(ctx, hi, budget, &mut |cand| {
                if let Some(c) = ctx.verify(cand) {
                    corners.push(c);
                }
                false
            });
            (corners, face_search_complete(ctx, hi, budget))
        })
        .collect();
    let mut complete = true;
    let mut corners: Vec<Corner> = Vec::new();
    for (cs, face_complete) in per_face {
        complete &= face_complete;
        corners.extend(cs);
    }
    // Singletons are candidates regardless of faces.
    corners.extend(ctx.g.words().iter().filter_map(|&w| ctx.verify(&[w])));
    corners.sort_by(|a, b| a.vertices.cmp(&b.vertices));
    corners.dedup_by(|a, b| a.vertices == b.vertices);
    CornerSearch { corners, complete }
}

/// Was the search over this maximal face exhaustive? The structured rules
/// are complete on cells; otherwise any corner has size at most half the
/// face, which the budget must reach.
fn face_search_complete(ctx: &FaceCtx<'_>, hi: usize, budget: usize) -> bool {
    let face = &ctx.faces[hi];
    if face.rank <= 2 || factorize_cell(ctx, face).is_some() {
        return true;
    }
    face.topes.len() <= 2 * budget && face.topes.len() <= 128
}

/// Run `emit` over the corner candidates drawn from one maximal face:
/// rank-2 arcs, cell products, and connected subsets up to `budget`.
/// `emit` returns true to stop early.
fn face_candidates(
    ctx: &FaceCtx<'_>,
    hi: usize,
    budget: usize,
    emit: &mut dyn FnMut(&[SignWord]) -> bool,
) {
    let face = &ctx.faces[hi];
    let mut seen: BTreeSet<Vec<SignWord>> = BTreeSet::new();
    // Rank-2 faces are even cycles: arcs of half-length minus one.
    if face.rank == 2 {
        if let Some(order) = cycle_order(&face.topes) {
            let m = order.len() / 2;
            for start in 0..order.len() {
                let mut arc: Vec<SignWord> = (0..m - 1)
                    .map(|j| order[(start + j) % order.len()])
                    .collect();
                arc.sort_unstable();
                if seen.insert(arc.clone()) && emit(&arc) {
                    return;
                }
            }
        }
    }
    // Cell faces: products of factor corners.
    if let Some(factors) = factorize_cell(ctx, face) {
        let mut filters: Vec<Vec<BTreeSet<u32>>> = Vec::new();
        for &s in &factors {
            if s.count_ones() == 1 {
                filters.push(vec![BTreeSet::from([0u32]), BTreeSet::from([1u32])]);
            } else if let Some(arcs) = cycle_factor_arcs(&face.topes, s) {
                filters.push(arcs);
            } else {
                filters.clear();
                break;
            }
        }
        if !factors.is_empty() && !filters.is_empty() {
            let mut choice = vec![0usize; filters.len()];
            'combos: loop {
                let cand: Vec<SignWord> = face
                    .topes
                    .iter()
                    .copied()
                    .filter(|w| {
                        factors.iter().zip(&choice).zip(&filters).all(
                            |((&s, &ci), opts)| opts[ci].contains(&extract_bits(w.0, s)),
                        )
                    })
                    .collect();
                if !cand.is_empty() && seen.insert(cand.clone()) && emit(&cand) {
                    return;
                }
                // advance the mixed-radix counter
                for d in 0..filters.len() {
                    choice[d] += 1;
                    if choice[d] < filters[d].len() {
                        continue 'combos;
                    }
                    choice[d] = 0;
                }
                break;
            }
        }
    }
    // Generic: connected subsets of the face, up to the budget.
    if face.topes.len() <= 128 {
        let topes = &face.topes;
        let adj: Vec<u128> = topes
            .iter()
            .map(|&w| {
                let mut a = 0u128;
                for (j, &u) in topes.iter().enumerate() {
                    if w.hamming(u) == 1 {
                        a |= 1 << j;
                    }
                }
                a
            })
            .collect();
        let mut stop = false;
        connected_subsets(&adj, budget, &mut |sub| {
            if stop {
                return;
            }
            let cand: Vec<SignWord> = (0..topes.len())
                .filter(|&j| sub >> j & 1 == 1)
                .map(|j| topes[j])
                .collect();
            if seen.insert(cand.clone()) && emit(&cand) {
                stop = true;
            }
        });
    }
}

/// Enumerate every connected vertex subset of size at most `k`, each exactly
/// once, over an adjacency given as bitmasks.
fn connected_subsets(adj: &[u128], k: usize, emit: &mut dyn FnMut(u128)) {
    if k == 0 {
        return;
    }
    for v in 0..adj.len() {
        let above: u128 = if v + 1 >= 128 {
            0
        } else {
            !0u128 << (v + 1)
        };
        extend_subset(
            adj,
            k,
            above,
            1u128 << v,
            adj[v] & above,
            adj[v] | (1 << v),
            emit,
        );
    }
}

fn extend_subset(
    adj: &[u128],
    k: usize,
    above: u128,
    sub: u128,
    ext: u128,
    closed: u128,
    emit: &mut dyn FnMut(u128),
) {
    emit(sub);
    if sub.count_ones() as usize == k {
        return;
    }
    let mut rest = ext;
    while rest != 0 {
        let w = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        let fresh = adj[w] & above & !closed;
        extend_subset(
            adj,
            k,
            above,
            sub | (1 << w),
            rest | fresh,
            closed | fresh | (1 << w),
            emit,
        );
    }
}

/// Order the topes of a rank-2 face cyclically, or `None` if they do not
/// form a single cycle.
fn cycle_order(topes: &[SignWord]) -> Option<Vec<SignWord>> {
    if topes.len() < 4 || !topes.len().is_multiple_of(2) {
        return None;
    }
    let neighbors = |w: SignWord| -> Vec<SignWord> {
        topes.iter().copied().filter(|&u| w.hamming(u) == 1).collect()
    };
    let mut order = vec![topes[0]];
    let first = neighbors(topes[0]);
    if first.len() != 2 {
        return None;
    }
    let mut prev = topes[0];
    let mut cur = first[0];
    while cur != topes[0] {
        order.push(cur);
        let ns = neighbors(cur);
        if ns.len() != 2 {
            return None;
        }
        let next = if ns[0] == prev { ns[1] } else { ns[0] };
        prev = cur;
        cur = next;
    }
    (order.len() == topes.len()).then_some(order)
}

/// Split the classes of a face into Cartesian factors, verifying that each
/// multi-class factor projects to an even cycle and that the face is the
/// product of its factor projections. Returns the factor class masks, or
/// `None` when the face is not such a product.
fn factorize_cell(ctx: &FaceCtx<'_>, face: &Face) -> Option<Vec<u32>> {
    let width = ctx.g.width();
    let z = face.zero_mask(width);
    let classes: Vec<usize> = (0..width).filter(|&c| z >> c & 1 == 1).collect();
    if classes.is_empty() {
        return Some(Vec::new());
    }
    // Two classes share a factor exactly when no rank-2 subface crosses
    // precisely that pair: inside a cycle factor of length at least six no
    // cell crosses two classes but not the rest of the cycle, while classes
    // of distinct factors always span a square.
    let mut comp: HashMap<usize, usize> = classes.iter().map(|&c| (c, c)).collect();
    fn root(comp: &mut HashMap<usize, usize>, mut c: usize) -> usize {
        while comp[&c] != c {
            let p = comp[&comp[&c]];
            comp.insert(c, p);
            c = p;
        }
        c
    }
    for (i, &a) in classes.iter().enumerate() {
        for &b in &classes[i + 1..] {
            let pair = (1u32 << a) | (1u32 << b);
            let spans_square = ctx.faces.iter().any(|f| {
                f.zero_mask(width) == pair && face.contains_face(f)
            });
            if !spans_square {
                let (ra, rb) = (root(&mut comp, a), root(&mut comp, b));
                comp.insert(ra, rb);
            }
        }
    }
    let mut masks: HashMap<usize, u32> = HashMap::new();
    for &c in &classes {
        let r = root(&mut comp, c);
        *masks.entry(r).or_insert(0) |= 1 << c;
    }
    let mut factors: Vec<u32> = masks.into_values().collect();
    factors.sort_unstable();
    // Verify the product structure.
    let mut product_size = 1usize;
    for &s in &factors {
        let proj: BTreeSet<u32> = face
            .topes
            .iter()
            .map(|w| extract_bits(w.0, s))
            .collect();
        let k = s.count_ones() as usize;
        if k == 1 {
            if proj.len() != 2 {
                return None;
            }
        } else {
            // must be an even cycle on 2k words
            if proj.len() != 2 * k {
                return None;
            }
            let words: Vec<u32> = proj.iter().copied().collect();
            let degree_two = words.iter().all(|&p| {
                words
                    .iter()
                    .filter(|&&q| (p ^ q).count_ones() == 1)
                    .count()
                    == 2
            });
            if !degree_two {
                return None;
            }
            let as_words: Vec<SignWord> = words.iter().map(|&p| SignWord(p)).collect();
            cycle_order(&as_words)?;
        }
        product_size = product_size.saturating_mul(proj.len());
    }
    (product_size == face.topes.len()).then_some(factors)
}

/// The `2k` arcs of `k - 1` vertices of a cycle factor, as projection sets.
fn cycle_factor_arcs(topes: &[SignWord], s: u32) -> Option<Vec<BTreeSet<u32>>> {
    let proj: BTreeSet<u32> = topes.iter().map(|w| extract_bits(w.0, s)).collect();
    let words: Vec<SignWord> = proj.iter().map(|&p| SignWord(p)).collect();
    let order = cycle_order(&words)?;
    let m = order.len() / 2;
    let mut arcs = Vec::with_capacity(order.len());
    for start in 0..order.len() {
        arcs.push(
            (0..m - 1)
                .map(|j| order[(start + j) % order.len()].0)
                .collect(),
        );
    }
    Some(arcs)
}

/// Is the graph hypercellular: is every face a product of edges and even
/// cycles, with any three rank-`k` cells that pairwise intersect in rank
/// `k - 1` cells and share a rank `k - 2` cell lying in a common cell?
pub fn is_hypercellular(g: &ToGraph) -> Result<bool> {
    let faces = enumerate_faces(g)?;
    let ctx = FaceCtx::new(g, &faces);
    if faces.iter().any(|f| factorize_cell(&ctx, f).is_none()) {
        return Ok(false);
    }
    Ok(three_cell_condition(&faces))
}

fn three_cell_condition(faces: &[Face]) -> bool {
    let max_rank = faces.iter().map(|f| f.rank).max().unwrap_or(0);
    let by_topes: HashMap<&[SignWord], usize> = faces
        .iter()
        .enumerate()
        .map(|(i, f)| (f.topes.as_slice(), i))
        .collect();
    let rank_of = |topes: &[SignWord]| -> Option<usize> {
        by_topes.get(topes).map(|&i| faces[i].rank)
    };
    for k in 2..=max_rank {
        let cells: Vec<usize> = (0..faces.len()).filter(|&i| faces[i].rank == k).collect();
        for (ai, &a) in cells.iter().enumerate() {
            for (bi, &b) in cells.iter().enumerate().skip(ai + 1) {
                let ab = intersect_sorted(&faces[a].topes, &faces[b].topes);
                if rank_of(&ab) != Some(k - 1) {
                    continue;
                }
                for &c in cells.iter().skip(bi + 1) {
                    let ac = intersect_sorted(&faces[a].topes, &faces[c].topes);
                    if rank_of(&ac) != Some(k - 1) {
                        continue;
                    }
                    let bc = intersect_sorted(&faces[b].topes, &faces[c].topes);
                    if rank_of(&bc) != Some(k - 1) {
                        continue;
                    }
                    let abc = intersect_sorted(&ab, &faces[c].topes);
                    if k >= 2 && rank_of(&abc) != Some(k - 2) {
                        continue;
                    }
                    let common = faces.iter().any(|f| {
                        f.contains_face(&faces[a])
                            && f.contains_face(&faces[b])
                            && f.contains_face(&faces[c])
                    });
                    if !common {
                        return false;
                    }
                }
            }
        }
    }
    true
}

fn intersect_sorted(a: &[SignWord], b: &[SignWord]) -> Vec<SignWord> {
    let mut out = Vec::new();
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

/// Peel the graph corner by corner with the given strategy.
///
/// When a step has several corners available the one with the
/// lexicographically smallest vertex list is taken, which makes peelings
/// reproducible. A strategy that runs out of corners returns the stuck
/// residual instead of failing silently.
pub fn corner_peeling(g: &ToGraph, strategy: PeelStrategy) -> Result<Peeling> {
    let cls = classify(g)?;
    match strategy {
        PeelStrategy::Lop => {
            if !cls.lop {
                return Err(Error::WrongClass { required: "a LOP" });
            }
        }
        PeelStrategy::Rank2 => {
            if !cls.com || g.rank() > 2 {
                return Err(Error::WrongClass {
                    required: "a COM of rank at most 2",
                });
            }
        }
        PeelStrategy::Hypercellular => {
            if !is_hypercellular(g)? {
                return Err(Error::WrongClass {
                    required: "hypercellular",
                });
            }
        }
        PeelStrategy::Generic => {
            if !cls.com {
                return Err(Error::WrongClass { required: "a COM" });
            }
        }
    }
    let mut residual = g.clone();
    let mut steps = Vec::new();
    loop {
        if residual.len() == 1 {
            let faces = enumerate_faces(&residual)?;
            let ctx = FaceCtx::new(&residual, &faces);
            let terminal = ctx
                .verify(residual.words())
                .ok_or_else(|| Error::Internal("terminal vertex rejected".into()))?;
            steps.push(terminal);
            return Ok(Peeling::Complete(PeelingSequence { steps }));
        }
        match next_corner(&residual, strategy)? {
            Some(corner) => {
                let keep: Vec<SignWord> = residual
                    .words()
                    .iter()
                    .copied()
                    .filter(|w| corner.vertices.binary_search(w).is_err())
                    .collect();
                residual = residual.induced(&keep)?;
                steps.push(corner);
            }
            None => {
                return Ok(Peeling::Stuck {
                    partial: PeelingSequence { steps },
                    residual,
                })
            }
        }
    }
}

/// One peeling step: the lexicographically smallest corner the strategy can
/// see on the current residual.
fn next_corner(g: &ToGraph, strategy: PeelStrategy) -> Result<Option<Corner>> {
    let faces = enumerate_faces(g)?;
    let ctx = FaceCtx::new(g, &faces);
    match strategy {
        PeelStrategy::Lop => Ok(g
            .words()
            .iter()
            .filter_map(|&w| ctx.verify(&[w]))
            .min_by(|a, b| a.vertices.cmp(&b.vertices))),
        PeelStrategy::Rank2 => {
            let cands = leaf_block_candidates(g);
            Ok(cands
                .iter()
                .filter_map(|c| ctx.verify(c))
                .min_by(|a, b| a.vertices.cmp(&b.vertices)))
        }
        PeelStrategy::Hypercellular => {
            Ok(hypercellular_corner_set(g).and_then(|c| ctx.verify(&c)))
        }
        PeelStrategy::Generic => {
            let search = find_corners_in(&ctx, DEFAULT_CORNER_BUDGET);
            Ok(search.corners.into_iter().next())
        }
    }
}

/// Corner candidates of a rank-2 COM read off the leaf blocks of its
/// cut-vertex tree: for a leaf cycle block the arcs avoiding the cut
/// vertex, for a leaf bridge the non-cut endpoint.
fn leaf_block_candidates(g: &ToGraph) -> Vec<Vec<SignWord>> {
    let words = g.words();
    let adj: Vec<Vec<usize>> = words
        .iter()
        .map(|&w| {
            g.neighbors(w)
                .into_iter()
                .map(|u| g.index_of(u).expect("neighbor present"))
                .collect()
        })
        .collect();
    let (blocks, articulation) = biconnected_blocks(&adj);
    let mut out = Vec::new();
    for block in &blocks {
        let mut verts: Vec<usize> = block.iter().flat_map(|&(u, v)| [u, v]).collect();
        verts.sort_unstable();
        verts.dedup();
        let cuts: Vec<usize> = verts
            .iter()
            .copied()
            .filter(|v| articulation.contains(v))
            .collect();
        if cuts.len() > 1 {
            continue; // interior block
        }
        let cut = cuts.first().copied();
        if verts.len() == 2 {
            for &v in &verts {
                if Some(v) != cut {
                    out.push(vec![words[v]]);
                }
            }
            continue;
        }
        // cycle block: windows of half-length minus one avoiding the cut
        let block_words: Vec<SignWord> = verts.iter().map(|&v| words[v]).collect();
        if let Some(order) = cycle_order(&block_words) {
            let m = order.len() / 2;
            let avoid = cut.map(|v| words[v]);
            for start in 0..order.len() {
                let arc: Vec<SignWord> = (0..m - 1)
                    .map(|j| order[(start + j) % order.len()])
                    .collect();
                if avoid.is_some_and(|a| arc.contains(&a)) {
                    continue;
                }
                let mut arc = arc;
                arc.sort_unstable();
                out.push(arc);
            }
        }
    }
    out
}

/// Biconnected components as edge lists, plus the articulation vertices.
fn biconnected_blocks(adj: &[Vec<usize>]) -> (Vec<Vec<(usize, usize)>>, HashSet<usize>) {
    struct State<'a> {
        adj: &'a [Vec<usize>],
        disc: Vec<usize>,
        low: Vec<usize>,
        timer: usize,
        stack: Vec<(usize, usize)>,
        blocks: Vec<Vec<(usize, usize)>>,
        articulation: HashSet<usize>,
    }

    fn dfs(st: &mut State<'_>, u: usize, parent: Option<usize>) {
        st.timer += 1;
        st.disc[u] = st.timer;
        st.low[u] = st.timer;
        let mut children = 0usize;
        for i in 0..st.adj[u].len() {
            let v = st.adj[u][i];
            if st.disc[v] == 0 {
                children += 1;
                st.stack.push((u, v));
                dfs(st, v, Some(u));
                st.low[u] = st.low[u].min(st.low[v]);
                if st.low[v] >= st.disc[u] {
                    if parent.is_some() || children > 1 {
                        st.articulation.insert(u);
                    }
                    let mut block = Vec::new();
                    while let Some(e) = st.stack.pop() {
                        block.push(e);
                        if e == (u, v) {
                            break;
                        }
                    }
                    st.blocks.push(block);
                }
            } else if Some(v) != parent && st.disc[v] < st.disc[u] {
                st.stack.push((u, v));
                st.low[u] = st.low[u].min(st.disc[v]);
            }
        }
    }

    let n = adj.len();
    let mut st = State {
        adj,
        disc: vec![0; n],
        low: vec![0; n],
        timer: 0,
        stack: Vec::new(),
        blocks: Vec::new(),
        articulation: HashSet::new(),
    };
    for s in 0..n {
        if st.disc[s] == 0 {
            dfs(&mut st, s, None);
        }
    }
    (st.blocks, st.articulation)
}

/// Find a corner of a hypercellular graph by the zone-graph recursion:
/// locate a class whose carrier covers one of its halfspaces, take a corner
/// of the zone graph at that class, and lift it through the factor
/// structure of its unique host cell.
fn hypercellular_corner_set(g: &ToGraph) -> Option<Vec<SignWord>> {
    if g.len() == 1 {
        return Some(vec![g.words()[0]]);
    }
    let faces = enumerate_faces(g).ok()?;
    let classes = g.theta_classes();
    for tc in classes.iter().filter(|tc| !tc.edges.is_empty()) {
        for side in [true, false] {
            if !carrier_covers(g, &faces, tc.coord, side) {
                continue;
            }
            if let Some(c) = lift_zone_corner(g, &faces, tc.coord, side) {
                return Some(c);
            }
        }
    }
    None
}

/// Does the union of faces crossed by class `f` contain every vertex of the
/// `side` halfspace?
fn carrier_covers(g: &ToGraph, faces: &[Face], f: usize, side: bool) -> bool {
    let width = g.width();
    let mut covered: HashSet<SignWord> = HashSet::new();
    for face in faces {
        if face.zero_mask(width) >> f & 1 == 1 {
            covered.extend(face.topes.iter().copied());
        }
    }
    g.words()
        .iter()
        .filter(|w| w.bit(f) == side)
        .all(|w| covered.contains(w))
}

fn lift_zone_corner(
    g: &ToGraph,
    faces: &[Face],
    f: usize,
    side: bool,
) -> Option<Vec<SignWord>> {
    let zg = zone_graph(g, 1u32 << f).ok()?;
    let (zgraph, _, zwords) = zg.graph.as_ref()?;
    let dz = hypercellular_corner_set(zgraph)?;
    let node_of: HashMap<SignWord, usize> =
        zwords.iter().enumerate().map(|(i, &w)| (w, i)).collect();
    let picked: Vec<&Face> = dz
        .iter()
        .map(|w| node_of.get(w).map(|&i| &zg.nodes[i]))
        .collect::<Option<_>>()?;
    // The unique maximal face containing all the picked class-f edges.
    let union: Vec<SignWord> = {
        let mut u: Vec<SignWord> = picked
            .iter()
            .flat_map(|e| e.topes.iter().copied())
            .collect();
        u.sort_unstable();
        u.dedup();
        u
    };
    let maximal = maximal_face_indices(faces);
    let hosts: Vec<usize> = maximal
        .into_iter()
        .filter(|&i| union.iter().all(|&w| faces[i].contains_tope(w)))
        .collect();
    let [host] = hosts.as_slice() else {
        return None;
    };
    let cell = &faces[*host];
    let ctx = FaceCtx::new(g, faces);
    let factors = factorize_cell(&ctx, cell)?;
    let s = factors.iter().copied().find(|s| s >> f & 1 == 1)?;
    if s.count_ones() == 1 {
        // Edge factor: take the `side` endpoints of the picked edges.
        let mut d: Vec<SignWord> = picked
            .iter()
            .filter_map(|e| e.topes.iter().copied().find(|w| w.bit(f) == side))
            .collect();
        d.sort_unstable();
        d.dedup();
        return Some(d);
    }
    // Cycle factor: the picked edges single out one of the two class-f
    // edges of the cycle; the lift is the side arc without the vertex on
    // the other one, times the picked fibers.
    let fpos = (s & ((1u32 << f) - 1)).count_ones() as usize;
    let pv: BTreeSet<u32> = picked
        .iter()
        .filter_map(|e| e.topes.iter().find(|w| w.bit(f) == side))
        .map(|w| extract_bits(w.0, s))
        .collect();
    let [pv] = pv.iter().copied().collect::<Vec<_>>()[..] else {
        return None;
    };
    let proj: BTreeSet<u32> = cell.topes.iter().map(|w| extract_bits(w.0, s)).collect();
    let side_words: Vec<u32> = proj
        .iter()
        .copied()
        .filter(|p| p >> fpos & 1 == u32::from(side))
        .collect();
    let other: Vec<u32> = side_words
        .iter()
        .copied()
        .filter(|&q| q != pv && proj.contains(&(q ^ (1 << fpos))))
        .collect();
    let [other] = other[..] else {
        return None;
    };
    let arc: BTreeSet<u32> = side_words.into_iter().filter(|&q| q != other).collect();
    let rest = cell.zero_mask(g.width()) & !s;
    let fibers: BTreeSet<u32> = picked
        .iter()
        .map(|e| extract_bits(e.topes[0].0, rest))
        .collect();
    let d: Vec<SignWord> = cell
        .topes
        .iter()
        .copied()
        .filter(|w| {
            arc.contains(&extract_bits(w.0, s)) && fibers.contains(&extract_bits(w.0, rest))
        })
        .collect();
    Some(d)
}

/// Replay a peeling: every step must be a corner of the residual graph at
/// that point, and the steps must partition the vertex set.
pub fn verify_peeling(g: &ToGraph, seq: &PeelingSequence) -> Result<bool> {
    let mut residual = g.clone();
    for (idx, corner) in seq.steps.iter().enumerate() {
        if verify_corner(&residual, &corner.vertices)?.is_none() {
            return Ok(false);
        }
        if corner.vertices.len() == residual.len() {
            return Ok(idx == seq.steps.len() - 1);
        }
        let keep: Vec<SignWord> = residual
            .words()
            .iter()
            .copied()
            .filter(|w| corner.vertices.binary_search(w).is_err())
            .collect();
        residual = residual.induced(&keep)?;
    }
    Ok(false)
}
