//! Mutations of uniform oriented matroids and their mutation graphs.
//!
//! A simplicial vertex `v` of a UOM of rank `r` closes a punctured cube: the
//! convex hull of `v` and its `r` neighbours is a hypercube missing only the
//! corner opposite `v`. *Mutating* at `v` fills in that missing corner,
//! removes `v`, and does the same to the antipodes — a reversible operation
//! that stays inside the UOMs of the same dimension and rank.
//!
//! Fixing `n` and `r`, the mutation graph has one node per UOM — taken up to
//! nothing at all, up to reorientation, or up to isomorphism — and an edge
//! whenever a mutation leads from one class into the other. Loops happen (a
//! mutation may land back in its own class) and are kept.

use std::collections::{HashMap, VecDeque};
use std::fmt::Write as _;

use rayon::prelude::*;

use crate::canon::{canonical_graph, canonical_key, key_digest, CanonLevel};
use crate::error::{Error, Result};
use crate::faces::classify;
use crate::graph::ToGraph;
use crate::word::SignWord;

/// A mutation graph at one of the three equivalence levels.
#[derive(Debug, Clone)]
pub struct MutationGraph {
    pub level: CanonLevel,
    /// Isometric dimension of every node.
    pub n: usize,
    /// Rank of every node.
    pub r: usize,
    /// Canonical keys of the classes, sorted; node `i` is `keys[i]`.
    pub keys: Vec<Vec<u8>>,
    /// Canonical representative of each class, parallel to `keys`.
    pub representatives: Vec<ToGraph>,
    /// Unordered edges as index pairs with the smaller index first; loops
    /// appear as `(i, i)`.
    pub edges: Vec<(usize, usize)>,
}

impl MutationGraph {
    /// Number of classes.
    pub fn len(&self) -> usize {
        self.keys.len()
    }

    /// A mutation graph always has at least one node.
    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }
}

/// Components of a mutation graph, listed as sorted node-index groups.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Connectivity {
    pub connected: bool,
    pub components: Vec<Vec<usize>>,
}

/// All mutations of a UOM, one per simplicial vertex, listed as `(vertex,
/// mutated graph)` in vertex order.
///
/// Every output is checked to be a UOM of the same rank and size; a failure
/// of that promise is reported as an internal error rather than skipped.
pub fn mutations_of(g: &ToGraph) -> Result<Vec<(SignWord, ToGraph)>> {
    let c = classify(g)?;
    if !c.uom {
        return Err(Error::WrongClass {
            required: "a UOM tope graph",
        });
    }
    let r = g.rank();
    let width = g.width();
    let mut out = Vec::new();
    for &v in g.words() {
        let mut inc = 0u32;
        for e in 0..width {
            if g.contains(v.flip(e)) {
                inc |= 1 << e;
            }
        }
        if inc.count_ones() as usize != r {
            continue; // not simplicial
        }
        // the punctured cube around v: every corner except the far one
        let mut sub = inc;
        loop {
            sub = sub.wrapping_sub(1) & inc;
            if sub == inc {
                break;
            }
            if !g.contains(SignWord(v.0 ^ sub)) {
                return Err(Error::Internal(
                    "a simplicial vertex without its punctured cube".into(),
                ));
            }
        }
        let w = SignWord(v.0 ^ inc);
        let mut words: Vec<SignWord> = g
            .words()
            .iter()
            .copied()
            .filter(|&u| u != v && u != v.antipode(width))
            .collect();
        words.push(w);
        words.push(w.antipode(width));
        words.sort_unstable();
        words.dedup();
        let m = ToGraph::new(width, words)?;
        if m.len() != g.len() {
            return Err(Error::Internal(
                "mutation changed the number of topes".into(),
            ));
        }
        let mc = classify(&m)?;
        if !mc.uom || m.rank() != r {
            return Err(Error::Internal(
                "mutation left the class of equal-rank UOMs".into(),
            ));
        }
        out.push((v, m));
    }
    Ok(out)
}

/// Build the mutation graph on the given classes.
///
/// `classes` must list every UOM of one dimension and rank at the chosen
/// level, one representative each. Edges are found by mutating each
/// representative and locating the canonical key of the result; a mutation
/// whose image has no node is reported as an incomplete class list. The
/// labeled level is guarded to dimension 5, the other levels to 7.
pub fn build_mutation_graph(classes: &[ToGraph], level: CanonLevel) -> Result<MutationGraph> {
    let Some(first) = classes.first() else {
        return Err(Error::InvalidArgument(
            "a mutation graph needs at least one class".into(),
        ));
    };
    let n = first.width();
    let r = first.rank();
    let limit = if level == CanonLevel::Labeled { 5 } else { 7 };
    if n > limit {
        return Err(Error::GuardExceeded {
            what: "mutation graph dimension",
            limit,
            got: n,
        });
    }
    for g in classes {
        if g.width() != n {
            return Err(Error::WidthMismatch {
                left: n,
                right: g.width(),
            });
        }
        if g.rank() != r {
            return Err(Error::InvalidArgument(format!(
                "mixed ranks in one mutation graph: {} and {}",
                r,
                g.rank()
            )));
        }
        if !classify(g)?.uom {
            return Err(Error::WrongClass {
                required: "a UOM tope graph",
            });
        }
    }

    let mut keyed: Vec<(Vec<u8>, ToGraph)> = classes
        .iter()
        .map(|g| Ok((canonical_key(g, level)?, canonical_graph(g, level)?)))
        .collect::<Result<_>>()?;
    keyed.sort_by(|a, b| a.0.cmp(&b.0));
    for pair in keyed.windows(2) {
        if pair[0].0 == pair[1].0 {
            return Err(Error::InvalidArgument(
                "two given classes are equivalent at this level".into(),
            ));
        }
    }
    let (keys, representatives): (Vec<Vec<u8>>, Vec<ToGraph>) = keyed.into_iter().unzip();
    let index: HashMap<&[u8], usize> = keys
        .iter()
        .enumerate()
        .map(|(i, k)| (k.as_slice(), i))
        .collect();

    let found: Result<Vec<Vec<(usize, usize)>>> = representatives
        .par_iter()
        .enumerate()
        .map(|(i, g)| {
            let mut local = Vec::new();
            for (_, m) in mutations_of(g)? {
                let key = canonical_key(&m, level)?;
                let &j = index.get(key.as_slice()).ok_or_else(|| {
                    Error::InvalidArgument(
                        "the class list is incomplete: a mutation image is missing".into(),
                    )
                })?;
                local.push((i.min(j), i.max(j)));
            }
            Ok(local)
        })
        .collect();
    let mut edges: Vec<(usize, usize)> = found?.into_iter().flatten().collect();
    edges.sort_unstable();
    edges.dedup();

    Ok(MutationGraph {
        level,
        n,
        r,
        keys,
        representatives,
        edges,
    })
}

/// Connectivity of a mutation graph; loops do not affect the answer.
pub fn is_connected(mg: &MutationGraph) -> Connectivity {
    let n = mg.len();
    let mut adj = vec![Vec::new(); n];
    for &(u, v) in &mg.edges {
        if u != v {
            adj[u].push(v);
            adj[v].push(u);
        }
    }
    let mut comp = vec![usize::MAX; n];
    let mut components = Vec::new();
    for s in 0..n {
        if comp[s] != usize::MAX {
            continue;
        }
        let id = components.len();
        let mut group = vec![s];
        comp[s] = id;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u] {
                if comp[v] == usize::MAX {
                    comp[v] = id;
                    group.push(v);
                    queue.push_back(v);
                }
            }
        }
        group.sort_unstable();
        components.push(group);
    }
    Connectivity {
        connected: components.len() == 1,
        components,
    }
}

/// Does coarsening classes send every edge of the finer graph onto an edge
/// or a collapsed node of the coarser one?
///
/// Levels must be ordered labeled → reorientation → isomorphism (equal
/// levels compare the graphs node for node).
pub fn homomorphism_check(fine: &MutationGraph, coarse: &MutationGraph) -> Result<bool> {
    if (fine.n, fine.r) != (coarse.n, coarse.r) {
        return Err(Error::InvalidArgument(
            "mutation graphs of different dimension or rank".into(),
        ));
    }
    if fine.level > coarse.level {
        return Err(Error::InvalidArgument(format!(
            "cannot coarsen {} classes into {} classes",
            fine.level, coarse.level
        )));
    }
    let index: HashMap<&[u8], usize> = coarse
        .keys
        .iter()
        .enumerate()
        .map(|(i, k)| (k.as_slice(), i))
        .collect();
    let mut image = Vec::with_capacity(fine.len());
    for g in &fine.representatives {
        let key = canonical_key(g, coarse.level)?;
        let &j = index.get(key.as_slice()).ok_or_else(|| {
            Error::InvalidArgument("a fine class has no coarse counterpart".into())
        })?;
        image.push(j);
    }
    let mut coarse_edges: Vec<(usize, usize)> = coarse.edges.clone();
    coarse_edges.sort_unstable();
    Ok(fine.edges.iter().all(|&(u, v)| {
        let (a, b) = (image[u].min(image[v]), image[u].max(image[v]));
        a == b || coarse_edges.binary_search(&(a, b)).is_ok()
    }))
}

/// Render a mutation graph in DOT format, nodes labelled by the leading hex
/// of their key digests.
pub fn mutation_graph_dot(mg: &MutationGraph) -> String {
    let mut s = String::new();
    writeln!(
        s,
        "graph \"mutations n={} r={} {}\" {{",
        mg.n, mg.r, mg.level
    )
    .unwrap();
    writeln!(s, "  node [shape=circle];").unwrap();
    for (i, key) in mg.keys.iter().enumerate() {
        writeln!(s, "  v{i} [label=\"{}\"];", &key_digest(key)[..8]).unwrap();
    }
    for &(u, v) in &mg.edges {
        writeln!(s, "  v{u} -- v{v};").unwrap();
    }
    s.push('}');
    s.push('\n');
    s
}
