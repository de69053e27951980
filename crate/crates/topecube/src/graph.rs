//! Tope graphs: finite sets of sign words with implicit hypercube adjacency.
//!
//! A [`ToGraph`] stores a set of vertices of `Q_n` as sorted machine words.
//! Two vertices are adjacent exactly when their Hamming distance is 1, so no
//! explicit edge list is kept. All higher structure — partial-cube
//! recognition, Θ-classes, contractions and expansions, antipodes, rank,
//! convex hulls — is derived from this encoding.

use crate::error::{Error, Result};
use crate::word::{check_width, coords_of, extract_bits, mask, SignWord};

/// A set of hypercube vertices with implicit Hamming-1 adjacency.
///
/// Invariants: `words` is sorted, duplicate-free, nonempty, and every word
/// fits below `width`. Equality, ordering and hashing are structural, so two
/// graphs compare equal exactly when they have the same width and vertex set.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ToGraph {
    width: usize,
    words: Vec<SignWord>,
}

/// Outcome of the partial-cube test, carrying a witness on failure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PartialCubeCheck {
    /// Graph distance equals Hamming distance for every pair.
    Yes,
    /// `witness` is unreachable from the first vertex.
    Disconnected { witness: SignWord },
    /// A pair whose graph distance exceeds its Hamming distance.
    DistanceMismatch {
        u: SignWord,
        v: SignWord,
        graph: u32,
        hamming: u32,
    },
}

impl PartialCubeCheck {
    pub fn is_partial_cube(&self) -> bool {
        matches!(self, PartialCubeCheck::Yes)
    }

    /// Human-readable reason for a failure, or `None` on success.
    pub fn reason(&self) -> Option<String> {
        match self {
            PartialCubeCheck::Yes => None,
            PartialCubeCheck::Disconnected { witness } => {
                Some(format!("disconnected (vertex {witness} unreachable)"))
            }
            PartialCubeCheck::DistanceMismatch {
                u,
                v,
                graph,
                hamming,
            } => Some(format!(
                "distance mismatch between {u} and {v}: graph {graph}, Hamming {hamming}"
            )),
        }
    }
}

/// One Θ-class of a partial cube: the split induced by a coordinate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThetaClass {
    /// The coordinate inducing the split.
    pub coord: usize,
    /// Number of vertices on the `+` side.
    pub plus_count: usize,
    /// Number of vertices on the `-` side.
    pub minus_count: usize,
    /// The edges of this class as `(minus endpoint, plus endpoint)` pairs.
    pub edges: Vec<(SignWord, SignWord)>,
}

/// All-pairs distances of a graph, row-major over vertex indices.
#[derive(Debug, Clone)]
pub struct DistanceMatrix {
    n: usize,
    d: Vec<u16>,
}

pub const UNREACHABLE: u16 = u16::MAX;

impl DistanceMatrix {
    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u16 {
        self.d[i * self.n + j]
    }
}

/// What [`ToGraph::simplify`] removed or merged.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Simplification {
    /// Coordinates kept, in input order; output coordinate `i` is input `kept[i]`.
    pub kept: Vec<usize>,
    /// Coordinates dropped because they were constant, with the constant sign.
    pub dropped_constant: Vec<(usize, bool)>,
    /// Coordinates dropped because they duplicated an earlier coordinate;
    /// `(dropped, kept, opposite)` where `opposite` means the signs always differ.
    pub merged: Vec<(usize, usize, bool)>,
}

impl Simplification {
    pub fn is_identity(&self) -> bool {
        self.dropped_constant.is_empty() && self.merged.is_empty()
    }
}

impl ToGraph {
    /// Build a graph from an arbitrary word list; sorts and deduplicates.
    pub fn new(width: usize, mut words: Vec<SignWord>) -> Result<ToGraph> {
        check_width(width)?;
        if words.is_empty() {
            return Err(Error::EmptyGraph);
        }
        let m = mask(width);
        if let Some(bad) = words.iter().find(|w| w.0 & !m != 0) {
            return Err(Error::InvalidCoordinate {
                coord: (31 - bad.0.leading_zeros()) as usize,
                width,
            });
        }
        words.sort_unstable();
        words.dedup();
        Ok(ToGraph { width, words })
    }

    /// Build from raw `u32` values, for fixtures and tests.
    pub fn from_bits(width: usize, bits: &[u32]) -> Result<ToGraph> {
        ToGraph::new(width, bits.iter().map(|&b| SignWord(b)).collect())
    }

    /// The full hypercube `Q_n`.
    pub fn hypercube(n: usize) -> Result<ToGraph> {
        check_width(n)?;
        if n > 20 {
            return Err(Error::GuardExceeded {
                what: "hypercube construction",
                limit: 20,
                got: n,
            });
        }
        let words = (0..(1u32 << n)).map(SignWord).collect();
        Ok(ToGraph { width: n, words })
    }

    /// The even cycle `C_{2m}` on `m` coordinates, embedded as the rank-2
    /// uniform tope graph (`m >= 2`).
    pub fn even_cycle(m: usize) -> Result<ToGraph> {
        if m < 2 {
            return Err(Error::GuardExceeded {
                what: "even cycle (needs at least 2 coordinates)",
                limit: usize::MAX,
                got: m,
            });
        }
        check_width(m)?;
        // Walk +...+ prefixes up, then back down on the antipodal side.
        let mut words = Vec::with_capacity(2 * m);
        for k in 0..=m {
            words.push(SignWord(mask(k)));
        }
        for k in 1..m {
            words.push(SignWord(mask(m) ^ mask(k)));
        }
        ToGraph::new(m, words)
    }

    /// Single-edge graph `K_2`.
    pub fn edge() -> ToGraph {
        ToGraph::from_bits(1, &[0, 1]).unwrap()
    }

    /// The path with `k` edges (`k + 1` vertices), embedded as the
    /// prefix-of-plus words of width `k`.
    pub fn path(k: usize) -> Result<ToGraph> {
        check_width(k)?;
        let words = (0..=k).map(|i| SignWord(mask(i))).collect();
        ToGraph::new(k, words)
    }

    /// Embed the graph into an antipodal partial cube three coordinates
    /// wider: inside `Q_{n+3}`, the subcube carrying `-` on all three new
    /// coordinates is replaced by this graph, the antipodal subcube by its
    /// negation, and every other hypercube vertex is kept. The result is an
    /// antipodal partial cube with minimum degree `δ(G) + 3` in which the
    /// original graph sits as a convex subgraph.
    pub fn antipodal_envelope(&self) -> Result<ToGraph> {
        let n = self.width;
        let width = n + 3;
        check_width(width)?;
        if width > 20 {
            return Err(Error::GuardExceeded {
                what: "antipodal envelope width",
                limit: 20,
                got: width,
            });
        }
        let m = mask(n);
        let mut words = Vec::new();
        for x in 0u32..(1 << width) {
            let low = x & m;
            match x >> n {
                0b000 => {
                    if self.contains(SignWord(low)) {
                        words.push(SignWord(x));
                    }
                }
                0b111 => {
                    if self.contains(SignWord(low ^ m)) {
                        words.push(SignWord(x));
                    }
                }
                _ => words.push(SignWord(x)),
            }
        }
        ToGraph::new(width, words)
    }

    /// `Q_n` with a vertex, its antipode, and `i` neighbors of the antipode
    /// removed (`n >= 4`, `1 <= i < n`). The result is affine; `double` turns
    /// it into an antipodal partial cube of rank `n` and minimum degree
    /// `n - 1`.
    pub fn hypercube_minus_minus(n: usize, i: usize) -> Result<ToGraph> {
        if n < 4 || i == 0 || i >= n {
            return Err(Error::InvalidArgument(format!(
                "hypercube_minus_minus needs n >= 4 and 1 <= i < n, got ({n}, {i})"
            )));
        }
        let cube = ToGraph::hypercube(n)?;
        let top = mask(n);
        let removed: Vec<u32> = std::iter::once(0)
            .chain(std::iter::once(top))
            .chain((0..i).map(|j| top ^ (1 << j)))
            .collect();
        let words = cube
            .words
            .into_iter()
            .filter(|w| !removed.contains(&w.0))
            .collect();
        ToGraph::new(n, words)
    }

    #[inline]
    pub fn width(&self) -> usize {
        self.width
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.words.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        false // construction guarantees at least one vertex
    }

    #[inline]
    pub fn words(&self) -> &[SignWord] {
        &self.words
    }

    #[inline]
    pub fn contains(&self, w: SignWord) -> bool {
        self.words.binary_search(&w).is_ok()
    }

    /// Index of `w` in the sorted vertex list.
    #[inline]
    pub fn index_of(&self, w: SignWord) -> Option<usize> {
        self.words.binary_search(&w).ok()
    }

    /// Neighbors of `w` inside the graph.
    pub fn neighbors(&self, w: SignWord) -> Vec<SignWord> {
        (0..self.width)
            .map(|e| w.flip(e))
            .filter(|u| self.contains(*u))
            .collect()
    }

    /// Degree of `w`.
    pub fn degree(&self, w: SignWord) -> usize {
        (0..self.width)
            .filter(|&e| self.contains(w.flip(e)))
            .count()
    }

    /// Minimum degree over all vertices.
    pub fn min_degree(&self) -> usize {
        self.words
            .iter()
            .map(|&w| self.degree(w))
            .min()
            .unwrap_or(0)
    }

    /// Number of edges.
    pub fn edge_count(&self) -> usize {
        self.words.iter().map(|&w| self.degree(w)).sum::<usize>() / 2
    }

    /// Breadth-first distances from vertex index `src`, `UNREACHABLE` where no path.
    pub fn bfs_from(&self, src: usize) -> Vec<u16> {
        let n = self.words.len();
        let mut dist = vec![UNREACHABLE; n];
        let mut queue = std::collections::VecDeque::with_capacity(n);
        dist[src] = 0;
        queue.push_back(src);
        while let Some(i) = queue.pop_front() {
            let w = self.words[i];
            let next = dist[i] + 1;
            for e in 0..self.width {
                if let Some(j) = self.index_of(w.flip(e)) {
                    if dist[j] == UNREACHABLE {
                        dist[j] = next;
                        queue.push_back(j);
                    }
                }
            }
        }
        dist
    }

    /// All-pairs BFS distances.
    pub fn distance_matrix(&self) -> Result<DistanceMatrix> {
        let n = self.words.len();
        if n > 8192 {
            return Err(Error::GuardExceeded {
                what: "all-pairs distance matrix",
                limit: 8192,
                got: n,
            });
        }
        let mut d = Vec::with_capacity(n * n);
        for i in 0..n {
            d.extend_from_slice(&self.bfs_from(i));
        }
        Ok(DistanceMatrix { n, d })
    }

    /// Graph distance between two vertices.
    pub fn distance(&self, u: SignWord, v: SignWord) -> Result<u32> {
        let i = self
            .index_of(u)
            .ok_or(Error::VertexNotInGraph(u))?;
        let j = self
            .index_of(v)
            .ok_or(Error::VertexNotInGraph(v))?;
        let dist = self.bfs_from(i);
        if dist[j] == UNREACHABLE {
            return Err(Error::NotPartialCube {
                reason: format!("no path between {u} and {v}"),
            });
        }
        Ok(dist[j] as u32)
    }

    /// Is the graph connected?
    pub fn is_connected(&self) -> bool {
        !self.bfs_from(0).contains(&UNREACHABLE)
    }

    /// Decide whether the graph is an isometric subgraph of its hypercube:
    /// connected, and graph distance equals Hamming distance everywhere.
    pub fn is_partial_cube(&self) -> PartialCubeCheck {
        let n = self.words.len();
        for i in 0..n {
            let dist = self.bfs_from(i);
            if i == 0 {
                if let Some(j) = dist.iter().position(|&d| d == UNREACHABLE) {
                    return PartialCubeCheck::Disconnected {
                        witness: self.words[j],
                    };
                }
            }
            for (j, &dj) in dist.iter().enumerate() {
                let h = self.words[i].hamming(self.words[j]);
                if dj != UNREACHABLE && dj as u32 != h {
                    return PartialCubeCheck::DistanceMismatch {
                        u: self.words[i],
                        v: self.words[j],
                        graph: dj as u32,
                        hamming: h,
                    };
                }
            }
        }
        PartialCubeCheck::Yes
    }

    /// Error unless the graph is a partial cube.
    pub fn require_partial_cube(&self) -> Result<()> {
        match self.is_partial_cube() {
            PartialCubeCheck::Yes => Ok(()),
            other => Err(Error::NotPartialCube {
                reason: other.reason().unwrap(),
            }),
        }
    }

    /// Is a vertex subset isometric: connected, with inner distances equal to
    /// Hamming distances? `sub` must be a subset of the vertex set.
    pub fn is_isometric_subset(&self, sub: &[SignWord]) -> Result<bool> {
        let mut set: Vec<SignWord> = sub.to_vec();
        set.sort_unstable();
        set.dedup();
        for w in &set {
            if !self.contains(*w) {
                return Err(Error::VertexNotInGraph(*w));
            }
        }
        if set.is_empty() {
            return Ok(false);
        }
        let sub_graph = ToGraph {
            width: self.width,
            words: set,
        };
        Ok(sub_graph.is_partial_cube().is_partial_cube())
    }

    /// The Θ-classes, one per coordinate. Requires a partial cube for the
    /// classes to mean anything; this just reads off the splits.
    pub fn theta_classes(&self) -> Vec<ThetaClass> {
        (0..self.width)
            .map(|e| {
                let mut plus_count = 0;
                let mut edges = Vec::new();
                for &w in &self.words {
                    if w.bit(e) {
                        plus_count += 1;
                    } else if self.contains(w.flip(e)) {
                        edges.push((w, w.flip(e)));
                    }
                }
                ThetaClass {
                    coord: e,
                    plus_count,
                    minus_count: self.words.len() - plus_count,
                    edges,
                }
            })
            .collect()
    }

    /// Is every coordinate non-constant and no two coordinates twin
    /// (always equal or always opposite)?
    pub fn is_simple(&self) -> bool {
        self.simple_violation().is_none()
    }

    fn simple_violation(&self) -> Option<String> {
        let full = mask(self.width);
        if self.width == 0 {
            return None; // a single vertex of width 0 is vacuously simple
        }
        let and_all = self.words.iter().fold(full, |a, w| a & w.0);
        let or_all = self.words.iter().fold(0u32, |a, w| a | w.0);
        let constant = and_all | (!or_all & full);
        if constant != 0 {
            let e = constant.trailing_zeros() as usize;
            return Some(format!("coordinate {e} is constant"));
        }
        for e in 0..self.width {
            for f in (e + 1)..self.width {
                let mut equal = true;
                let mut opposite = true;
                for w in &self.words {
                    if w.bit(e) == w.bit(f) {
                        opposite = false;
                    } else {
                        equal = false;
                    }
                    if !equal && !opposite {
                        break;
                    }
                }
                if equal || opposite {
                    return Some(format!(
                        "coordinates {e} and {f} are {}",
                        if equal { "always equal" } else { "always opposite" }
                    ));
                }
            }
        }
        None
    }

    /// Error unless simple.
    pub fn require_simple(&self) -> Result<()> {
        match self.simple_violation() {
            None => Ok(()),
            Some(reason) => Err(Error::NotSimple { reason }),
        }
    }

    /// Drop constant coordinates and merge twin pairs, returning the reduced
    /// graph and a record of what happened.
    pub fn simplify(&self) -> (ToGraph, Simplification) {
        let full = mask(self.width);
        let and_all = self.words.iter().fold(full, |a, w| a & w.0);
        let or_all = self.words.iter().fold(0u32, |a, w| a | w.0);
        let mut info = Simplification::default();
        let mut keep_mask = 0u32;
        for e in 0..self.width {
            let bit = 1u32 << e;
            if and_all & bit != 0 {
                info.dropped_constant.push((e, true));
                continue;
            }
            if or_all & bit == 0 {
                info.dropped_constant.push((e, false));
                continue;
            }
            // compare against kept coordinates only
            let mut twin = None;
            for k in coords_of(keep_mask) {
                let mut equal = true;
                let mut opposite = true;
                for w in &self.words {
                    if w.bit(e) == w.bit(k) {
                        opposite = false;
                    } else {
                        equal = false;
                    }
                    if !equal && !opposite {
                        break;
                    }
                }
                if equal || opposite {
                    twin = Some((k, opposite));
                    break;
                }
            }
            match twin {
                Some((k, opposite)) => info.merged.push((e, k, opposite)),
                None => keep_mask |= bit,
            }
        }
        info.kept = coords_of(keep_mask).collect();
        let words = self
            .words
            .iter()
            .map(|w| SignWord(extract_bits(w.0, keep_mask)))
            .collect();
        let g = ToGraph::new(info.kept.len(), words)
            .unwrap_or_else(|_| ToGraph {
                width: 0,
                words: vec![SignWord::ZERO],
            });
        (g, info)
    }

    /// Contract the Θ-class of coordinate `e`: delete the coordinate and
    /// identify the endpoints of its edges.
    pub fn contract(&self, e: usize) -> Result<ToGraph> {
        if e >= self.width {
            return Err(Error::InvalidCoordinate {
                coord: e,
                width: self.width,
            });
        }
        let keep = mask(self.width) & !(1 << e);
        let words: Vec<SignWord> = self
            .words
            .iter()
            .map(|w| SignWord(extract_bits(w.0, keep)))
            .collect();
        if self.width == 1 {
            // contraction of K_2 and friends: a single vertex of width 0
            return Ok(ToGraph {
                width: 0,
                words: vec![SignWord::ZERO],
            });
        }
        ToGraph::new(self.width - 1, words)
    }

    /// Isometric expansion along a cover `(h1, h2)`. The new coordinate is
    /// appended at position `width`; `h1` lifts to its `+` side and `h2` to
    /// its `-` side. Requires a genuine isometric cover: `h1 ∪ h2 = V`, both
    /// sides isometric, and no edge between `h1 ∖ h2` and `h2 ∖ h1`.
    pub fn expand(&self, h1: &[SignWord], h2: &[SignWord]) -> Result<ToGraph> {
        check_width(self.width + 1)?;
        let mut s1: Vec<SignWord> = h1.to_vec();
        let mut s2: Vec<SignWord> = h2.to_vec();
        s1.sort_unstable();
        s1.dedup();
        s2.sort_unstable();
        s2.dedup();
        for w in s1.iter().chain(s2.iter()) {
            if !self.contains(*w) {
                return Err(Error::VertexNotInGraph(*w));
            }
        }
        let mut union = s1.clone();
        union.extend_from_slice(&s2);
        union.sort_unstable();
        union.dedup();
        if union.len() != self.words.len() {
            return Err(Error::CoverViolation);
        }
        if !self.is_isometric_subset(&s1)? {
            return Err(Error::NonIsometricSide { side: 1 });
        }
        if !self.is_isometric_subset(&s2)? {
            return Err(Error::NonIsometricSide { side: 2 });
        }
        // no edges between the exclusive parts
        let in2 = |w: &SignWord| s2.binary_search(w).is_ok();
        for &u in &s1 {
            if in2(&u) {
                continue;
            }
            for e in 0..self.width {
                let v = u.flip(e);
                if in2(&v) && s1.binary_search(&v).is_err() && self.contains(v) {
                    return Err(Error::NotPartialCube {
                        reason: format!(
                            "cover has an edge between exclusive sides ({u} - {v})"
                        ),
                    });
                }
            }
        }
        let top = 1u32 << self.width;
        let mut words: Vec<SignWord> = s2;
        words.extend(s1.into_iter().map(|w| SignWord(w.0 | top)));
        ToGraph::new(self.width + 1, words)
    }

    /// Vertices whose full antipode also belongs to the graph.
    pub fn antipode_set(&self) -> Vec<SignWord> {
        self.words
            .iter()
            .copied()
            .filter(|w| self.contains(w.antipode(self.width)))
            .collect()
    }

    /// Is the graph closed under the antipodal map?
    pub fn is_antipodal(&self) -> bool {
        self.antipode_set().len() == self.words.len()
    }

    /// Does coordinate subset `m` get shattered: do all `2^|m|` sign patterns
    /// occur among the vertices?
    pub fn shatters(&self, m: u32) -> bool {
        let k = m.count_ones() as usize;
        let need = 1usize << k;
        if self.words.len() < need {
            return false;
        }
        if need <= 64 {
            let mut seen = 0u64;
            for w in &self.words {
                seen |= 1u64 << extract_bits(w.0, m);
            }
            seen.count_ones() as usize == need
        } else {
            let mut seen = vec![false; need];
            let mut count = 0;
            for w in &self.words {
                let p = extract_bits(w.0, m) as usize;
                if !seen[p] {
                    seen[p] = true;
                    count += 1;
                    if count == need {
                        return true;
                    }
                }
            }
            false
        }
    }

    /// Rank: the largest size of a shattered coordinate subset (VC dimension
    /// of the vertex set over its coordinates). Searches level by level,
    /// extending only shattered sets; sound because shattering is closed
    /// under subsets.
    pub fn rank(&self) -> usize {
        let n = self.width;
        if n == 0 {
            return 0;
        }
        let mut level: Vec<u32> = (0..n)
            .map(|e| 1u32 << e)
            .filter(|&m| self.shatters(m))
            .collect();
        if level.is_empty() {
            return 0;
        }
        let mut rank = 1;
        loop {
            let mut next = Vec::new();
            for &s in &level {
                let top = 31 - s.leading_zeros() as usize;
                for e in (top + 1)..n {
                    let s2 = s | 1 << e;
                    if self.shatters(s2) {
                        next.push(s2);
                    }
                }
            }
            if next.is_empty() {
                return rank;
            }
            rank += 1;
            level = next;
        }
    }

    /// Convex hull of a vertex subset: all vertices agreeing with the
    /// componentwise agreement of `s` on the coordinates where `s` is
    /// constant. In a partial cube this is exactly the smallest convex
    /// subgraph containing `s`.
    pub fn convex_hull(&self, s: &[SignWord]) -> Vec<SignWord> {
        if s.is_empty() {
            return Vec::new();
        }
        let full = mask(self.width);
        let and_all = s.iter().fold(full, |a, w| a & w.0);
        let or_all = s.iter().fold(0u32, |a, w| a | w.0);
        let fixed = and_all | (!or_all & full);
        self.words
            .iter()
            .copied()
            .filter(|w| w.0 & fixed == and_all & fixed)
            .collect()
    }

    /// Cartesian product; coordinates of `other` are appended after ours.
    pub fn cartesian_product(&self, other: &ToGraph) -> Result<ToGraph> {
        let width = self.width + other.width;
        check_width(width)?;
        let mut words = Vec::with_capacity(self.words.len() * other.words.len());
        for &a in &self.words {
            for &b in &other.words {
                words.push(SignWord(a.0 | (b.0 << self.width)));
            }
        }
        ToGraph::new(width, words)
    }

    /// The halfspace of coordinate `e` on side `sign`, with `e` removed.
    pub fn halfspace(&self, e: usize, sign: bool) -> Result<ToGraph> {
        if e >= self.width {
            return Err(Error::InvalidCoordinate {
                coord: e,
                width: self.width,
            });
        }
        let keep = mask(self.width) & !(1 << e);
        let words: Vec<SignWord> = self
            .words
            .iter()
            .filter(|w| w.bit(e) == sign)
            .map(|w| SignWord(extract_bits(w.0, keep)))
            .collect();
        if words.is_empty() {
            return Err(Error::EmptyGraph);
        }
        ToGraph::new(self.width.saturating_sub(1), words)
    }

    /// The antipodal double: two copies of the graph joined across its
    /// antipode set. The new coordinate is appended; the original copy sits
    /// on its `-` side and the flipped copy on its `+` side. The graph is
    /// affine exactly when the double is an antipodal partial cube.
    pub fn double(&self) -> Result<ToGraph> {
        check_width(self.width + 1)?;
        let top = 1u32 << self.width;
        let m = mask(self.width);
        let mut words: Vec<SignWord> = self.words.clone();
        words.extend(self.words.iter().map(|w| SignWord((w.0 ^ m) | top)));
        ToGraph::new(self.width + 1, words)
    }

    /// The subgraph induced by restricting to vertices `sub` (which must all
    /// belong to the graph), keeping the width.
    pub fn induced(&self, sub: &[SignWord]) -> Result<ToGraph> {
        for w in sub {
            if !self.contains(*w) {
                return Err(Error::VertexNotInGraph(*w));
            }
        }
        ToGraph::new(self.width, sub.to_vec())
    }

    /// Glue `other` onto this graph by identifying the vertex `at` of `self`
    /// with the vertex `other_at` of `other`. Coordinates of `other` are
    /// appended after ours; each copy keeps the other side frozen at its glue
    /// vertex, so distances add up through the shared vertex.
    pub fn vertex_glue(
        &self,
        at: SignWord,
        other: &ToGraph,
        other_at: SignWord,
    ) -> Result<ToGraph> {
        if !self.contains(at) {
            return Err(Error::VertexNotInGraph(at));
        }
        if !other.contains(other_at) {
            return Err(Error::VertexNotInGraph(other_at));
        }
        let width = self.width + other.width;
        check_width(width)?;
        let mut words: Vec<SignWord> = self
            .words
            .iter()
            .map(|w| SignWord(w.0 | (other_at.0 << self.width)))
            .collect();
        words.extend(
            other
                .words
                .iter()
                .map(|w| SignWord(at.0 | (w.0 << self.width))),
        );
        ToGraph::new(width, words)
    }
}

impl std::fmt::Display for ToGraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "ToGraph(n={}, |V|={})", self.width, self.words.len())
    }
}
