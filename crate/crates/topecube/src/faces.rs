//! Faces of partial cubes and the classification built on them.
//!
//! A *face* of a partial cube `G ⊆ Q_n` is a convex subgraph that is closed
//! under its own antipodal map. Concretely, every face is the full set of
//! vertices matching a fixed sign pattern outside a coordinate set `Z`, with
//! the extra property that the set is closed under flipping all of `Z` at
//! once. Faces are in bijection with the covectors of the underlying
//! complex, which is where the classification (COM, OM, lopsided, uniform,
//! affine, ...) comes from.

use std::cmp::Reverse;
use std::collections::HashMap;

use crate::covector::CoVector;
use crate::error::{Error, Result};
use crate::graph::{Simplification, ToGraph};
use crate::word::{extract_bits, mask, SignWord};

/// Widths beyond this make the `2^n` zero-mask sweep of face enumeration
/// unreasonable.
pub const MAX_FACE_WIDTH: usize = 16;

/// Classification doubles the graph for the affine and AOM checks, so it
/// needs one spare coordinate below the face-enumeration bound.
pub const MAX_CLASSIFY_WIDTH: usize = MAX_FACE_WIDTH - 1;

/// A face: its covector, its topes (full-width, sorted), and its rank.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    pub covector: CoVector,
    pub topes: Vec<SignWord>,
    pub rank: usize,
}

impl Face {
    /// Coordinates left free by the face.
    #[inline]
    pub fn zero_mask(&self, width: usize) -> u32 {
        self.covector.zero_mask(width)
    }

    /// Number of free coordinates.
    #[inline]
    pub fn dim(&self, width: usize) -> usize {
        self.zero_mask(width).count_ones() as usize
    }

    /// Is the face a full subcube on its free coordinates?
    #[inline]
    pub fn is_cube(&self, width: usize) -> bool {
        self.topes.len() == 1usize << self.dim(width)
    }

    /// Does this face contain `other` (as tope sets)?
    #[inline]
    pub fn contains_face(&self, other: &Face) -> bool {
        self.covector.leq(&other.covector)
    }

    /// Does the face contain the tope `w`?
    #[inline]
    pub fn contains_tope(&self, w: SignWord) -> bool {
        self.topes.binary_search(&w).is_ok()
    }

    /// Antipode of `w` inside the face (flip all free coordinates).
    #[inline]
    pub fn antipode_within(&self, w: SignWord, width: usize) -> SignWord {
        SignWord(w.0 ^ self.zero_mask(width))
    }

    /// The face as a standalone graph on its free coordinates.
    pub fn as_graph(&self, width: usize) -> ToGraph {
        let z = self.zero_mask(width);
        let words = self
            .topes
            .iter()
            .map(|w| SignWord(extract_bits(w.0, z)))
            .collect();
        ToGraph::new(z.count_ones() as usize, words)
            .expect("face topes project to a valid graph")
    }
}

/// All faces of a partial cube, sorted by dimension then covector.
pub fn enumerate_faces(g: &ToGraph) -> Result<Vec<Face>> {
    g.require_partial_cube()?;
    if g.width() > MAX_FACE_WIDTH {
        return Err(Error::GuardExceeded {
            what: "face enumeration width",
            limit: MAX_FACE_WIDTH,
            got: g.width(),
        });
    }
    Ok(faces_unchecked(g))
}

/// Face sweep without the partial-cube precondition check.
pub(crate) fn faces_unchecked(g: &ToGraph) -> Vec<Face> {
    let n = g.width();
    let full = mask(n);
    let mut out = Vec::new();
    let mut buckets: HashMap<u32, Vec<SignWord>> = HashMap::new();
    for zmask in 0..=full {
        buckets.clear();
        let outside = full & !zmask;
        for &w in g.words() {
            buckets.entry(w.0 & outside).or_default().push(w);
        }
        for (&pattern, block) in buckets.iter() {
            if zmask != 0 && block.len() % 2 != 0 {
                continue; // closure pairs distinct vertices
            }
            // closed under flipping all of zmask at once?
            let closed = block
                .iter()
                .all(|w| block.binary_search(&SignWord(w.0 ^ zmask)).is_ok());
            if !closed {
                continue;
            }
            let covector = CoVector {
                plus: pattern,
                minus: outside & !pattern,
            };
            let zc = zmask.count_ones() as usize;
            let rank = if block.len() == 1usize << zc {
                zc
            } else {
                let words = block
                    .iter()
                    .map(|w| SignWord(extract_bits(w.0, zmask)))
                    .collect();
                ToGraph::new(zc, words)
                    .expect("face block projects to a valid graph")
                    .rank()
            };
            out.push(Face {
                covector,
                topes: block.clone(),
                rank,
            });
        }
    }
    out.sort_by_key(|f| {
        (
            Reverse(f.covector.support().count_ones()),
            f.covector.plus,
            f.covector.minus,
        )
    });
    out
}

/// Is the face gated: does every vertex project into it? The only possible
/// gate of `v` is the word taking the face's signs on its support and `v`'s
/// signs on the free coordinates, so gatedness is exactly that word being
/// present for every `v`.
pub fn is_gated(g: &ToGraph, face: &Face) -> bool {
    let z = face.zero_mask(g.width());
    let plus = face.covector.plus;
    g.words()
        .iter()
        .all(|v| g.contains(SignWord(plus | (v.0 & z))))
}

/// Class labels of a vertex set, all computed from the face structure.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Classification {
    /// Isometrically embedded in its hypercube.
    pub partial_cube: bool,
    /// Closed under the global antipodal map.
    pub antipodal: bool,
    /// Every face is gated: tope graph of a complex of oriented matroids.
    pub com: bool,
    /// COM and antipodal: tope graph of an oriented matroid.
    pub om: bool,
    /// Every face is a cube: tope graph of a lopsided set.
    pub lop: bool,
    /// Antipodal with every proper face a cube: uniform oriented matroid.
    pub uom: bool,
    /// The antipodal double is a partial cube.
    pub affine: bool,
    /// The antipodal double is an oriented-matroid tope graph.
    pub aom: bool,
}

impl Classification {
    /// The labels that hold, in a fixed order.
    pub fn labels(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        let checks: [(bool, &'static str); 8] = [
            (self.partial_cube, "partial-cube"),
            (self.antipodal, "antipodal"),
            (self.com, "COM"),
            (self.om, "OM"),
            (self.aom, "AOM"),
            (self.lop, "LOP"),
            (self.uom, "UOM"),
            (self.affine, "affine"),
        ];
        for (flag, name) in checks {
            if flag {
                out.push(name);
            }
        }
        out
    }

    pub fn has(&self, label: &str) -> bool {
        self.labels().contains(&label)
    }
}

/// Classify a vertex set. A graph that is not a partial cube gets no labels.
pub fn classify(g: &ToGraph) -> Result<Classification> {
    if g.width() > MAX_CLASSIFY_WIDTH {
        return Err(Error::GuardExceeded {
            what: "classification width",
            limit: MAX_CLASSIFY_WIDTH,
            got: g.width(),
        });
    }
    let mut c = Classification::default();
    if !g.is_partial_cube().is_partial_cube() {
        return Ok(c);
    }
    c.partial_cube = true;
    let faces = faces_unchecked(g);
    c.antipodal = g.is_antipodal();
    c.com = faces.iter().all(|f| is_gated(g, f));
    c.om = c.com && c.antipodal;
    c.lop = faces.iter().all(|f| f.is_cube(g.width()));
    c.uom = c.antipodal
        && faces
            .iter()
            .filter(|f| f.topes.len() < g.len())
            .all(|f| f.is_cube(g.width()));
    let d = g.double()?;
    if d.is_partial_cube().is_partial_cube() {
        c.affine = true;
        // the double is antipodal by construction, so OM reduces to COM there
        let dfaces = faces_unchecked(&d);
        c.aom = dfaces.iter().all(|f| is_gated(&d, f));
    }
    Ok(c)
}

/// Strong elimination between two covectors at a coordinate of their
/// separator: some member of `covectors` must vanish at `e` while agreeing
/// with `x ∘ y` outside the separator.
pub fn check_strong_elimination(
    covectors: &[CoVector],
    x: &CoVector,
    y: &CoVector,
    e: usize,
    width: usize,
) -> bool {
    let sep = x.separator(y);
    debug_assert!(sep & (1 << e) != 0, "e must separate x and y");
    let keep = mask(width) & !sep;
    let comp = x.compose(y);
    let req_plus = comp.plus & keep;
    let req_minus = comp.minus & keep;
    covectors.iter().any(|z| {
        z.support() & (1 << e) == 0
            && z.plus & keep == req_plus
            && z.minus & keep == req_minus
    })
}

/// A zone graph: the minimal faces crossing every coordinate of `fmask`,
/// with two such faces adjacent when a face of one rank higher contains
/// both. Each node embeds as its covector restricted to the remaining
/// coordinates; when those restrictions are full sign words the zone also
/// carries a simplified standalone graph.
#[derive(Debug, Clone)]
pub struct ZoneGraph {
    pub fmask: u32,
    /// Minimal `fmask`-crossing faces, sorted by covector.
    pub nodes: Vec<Face>,
    /// Adjacent node pairs `(i, j)` with `i < j`.
    pub edges: Vec<(usize, usize)>,
    /// Node covectors restricted to coordinates outside `fmask` (kept at the
    /// original width, `fmask` coordinates zeroed).
    pub embedded: Vec<CoVector>,
    /// When every embedded covector is a full sign word on the remaining
    /// coordinates: the simplified graph, what was simplified, and each
    /// node's vertex in it.
    pub graph: Option<(ToGraph, Simplification, Vec<SignWord>)>,
}

/// Build the zone graph of the coordinates in `fmask`.
pub fn zone_graph(g: &ToGraph, fmask: u32) -> Result<ZoneGraph> {
    if fmask == 0 || fmask & !mask(g.width()) != 0 {
        return Err(Error::InvalidCoordinate {
            coord: 32 - fmask.leading_zeros().min(31) as usize,
            width: g.width(),
        });
    }
    let faces = enumerate_faces(g)?;
    let crossing: Vec<&Face> = faces
        .iter()
        .filter(|f| f.zero_mask(g.width()) & fmask == fmask)
        .collect();
    let mut nodes: Vec<Face> = crossing
        .iter()
        .filter(|f| {
            !crossing
                .iter()
                .any(|h| h.covector != f.covector && f.contains_face(h))
        })
        .map(|f| (*f).clone())
        .collect();
    nodes.sort_by_key(|f| f.covector);
    let mut edges = Vec::new();
    for i in 0..nodes.len() {
        for j in (i + 1)..nodes.len() {
            let bound = nodes[i].rank.max(nodes[j].rank) + 1;
            let joined = faces.iter().any(|h| {
                h.rank <= bound
                    && h.contains_face(&nodes[i])
                    && h.contains_face(&nodes[j])
            });
            if joined {
                edges.push((i, j));
            }
        }
    }
    let outside = mask(g.width()) & !fmask;
    let embedded: Vec<CoVector> = nodes
        .iter()
        .map(|f| CoVector {
            plus: f.covector.plus & outside,
            minus: f.covector.minus & outside,
        })
        .collect();
    let graph = if !nodes.is_empty()
        && embedded.iter().all(|c| c.support() == outside)
    {
        let raw_words: Vec<SignWord> = embedded
            .iter()
            .map(|c| SignWord(extract_bits(c.plus, outside)))
            .collect();
        let raw = ToGraph::new(outside.count_ones() as usize, raw_words.clone())
            .expect("zone embeddings form a valid graph");
        let (simplified, info) = raw.simplify();
        let keep_mask = info
            .kept
            .iter()
            .fold(0u32, |m, &e| m | (1 << e));
        let node_words = raw_words
            .iter()
            .map(|w| SignWord(extract_bits(w.0, keep_mask)))
            .collect();
        Some((simplified, info, node_words))
    } else {
        None
    };
    Ok(ZoneGraph {
        fmask,
        nodes,
        edges,
        embedded,
        graph,
    })
}
