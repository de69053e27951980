//! Cocircuit graphs, sweeping orientations and Euclidean behaviour.
//!
//! The cocircuit graph `G*` of a tope graph records how its largest proper
//! antipodal subgraphs touch. For an antipodal host of rank `r` the nodes are
//! the faces of rank `r - 1` and two nodes are adjacent when their tope sets
//! intersect in a face of rank `r - 2`; the graph decomposes into closed
//! *lines*, antipodally symmetric cycles that partition the edge set. For a
//! non-antipodal host the construction needs a *pure* graph — all maximal
//! faces of equal rank and `G*` connected — and the lines become open paths
//! glued along shared subfaces.
//!
//! Partially orienting `G*` around a single coordinate (all lines swept from
//! the negative side towards the positive side) and asking that no cycle uses
//! a directed edge is the combinatorial shadow of sweeping a pseudohyperplane
//! across an arrangement. A graph whose every coordinate sweeps without such
//! cycles is *Euclidean*; an antipodal graph is *Mandel* when some
//! general-position extension leaves both of its halves Euclidean.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::sync::atomic::{AtomicUsize, Ordering};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::faces::{classify, enumerate_faces, Face, MAX_CLASSIFY_WIDTH};
use crate::graph::ToGraph;
use crate::word::{mask, SignWord};

/// Default cap on the number of sign maps examined by [`is_mandel`].
pub const DEFAULT_MANDEL_LIMIT: usize = 1 << 20;

/// A maximal run of cocircuit-graph edges that continue each other: around an
/// antipodal host a closed cycle, in the pure case an open path.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Line {
    /// Node indices in traversal order; for a closed line the successor of
    /// the last entry is the first.
    pub nodes: Vec<usize>,
    /// Coordinates crossing every node of the line.
    pub follows: u32,
    /// Closed lines are cycles; open lines are paths.
    pub closes: bool,
}

impl Line {
    /// Number of edges the line covers.
    pub fn edge_count(&self) -> usize {
        if self.closes {
            self.nodes.len()
        } else {
            self.nodes.len() - 1
        }
    }
}

/// The cocircuit graph of a tope graph, together with its line structure.
#[derive(Debug, Clone)]
pub struct CocircuitGraph {
    /// The graph the construction started from.
    pub host: ToGraph,
    /// Whether the host itself is antipodal (closed lines) or merely pure
    /// (open lines).
    pub antipodal_host: bool,
    /// Rank of every node face.
    pub node_rank: usize,
    /// The node faces.
    pub nodes: Vec<Face>,
    /// Adjacent node pairs, each stored with the smaller index first.
    pub edges: Vec<(usize, usize)>,
    /// For each edge, the face in which the two node faces intersect.
    pub meets: Vec<Face>,
    /// Edge-disjoint decomposition of the edge set into lines.
    pub lines: Vec<Line>,
}

impl CocircuitGraph {
    /// Number of nodes.
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    /// A cocircuit graph always has at least one node.
    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Coordinates crossing the meet face of edge `k`.
    pub fn edge_follows(&self, k: usize) -> u32 {
        self.meets[k].zero_mask(self.host.width())
    }
}

/// State of one cocircuit-graph edge under a sweep orientation. `Forward`
/// directs the edge from its stored smaller-index endpoint to the larger,
/// `Backward` the other way.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeState {
    Undirected,
    Forward,
    Backward,
}

/// The partial orientation of a cocircuit graph induced by sweeping one
/// coordinate; `states` runs parallel to the edge list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MixedOrientation {
    pub class: usize,
    pub states: Vec<EdgeState>,
}

/// Outcome of a strict-acyclicity check. A failing check carries a closed
/// walk (first node repeated at the end) that uses at least one directed
/// edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Acyclicity {
    pub strictly_acyclic: bool,
    pub witness: Option<Vec<usize>>,
}

/// Build the cocircuit graph of a COM tope graph.
///
/// Antipodal hosts of rank `r` use the rank-`r - 1` faces as nodes and close
/// their lines into antipodally symmetric cycles. Non-antipodal hosts must be
/// pure: every maximal face has the same rank and the resulting graph is
/// connected; otherwise the construction refuses with [`Error::NotPure`].
pub fn cocircuit_graph(g: &ToGraph) -> Result<CocircuitGraph> {
    let c = classify(g)?;
    if !c.com {
        return Err(Error::WrongClass {
            required: "a COM tope graph",
        });
    }
    let host_rank = g.rank();
    if host_rank == 0 {
        return Err(Error::InvalidArgument(
            "a single vertex has no proper antipodal subgraphs".into(),
        ));
    }
    let faces = enumerate_faces(g)?;
    let total = g.len();
    let maximal = maximal_proper_faces(&faces, total);

    let (nodes, node_rank) = if c.antipodal {
        let picked: Vec<usize> = (0..faces.len())
            .filter(|&i| faces[i].rank == host_rank - 1)
            .collect();
        if picked != maximal {
            return Err(Error::Internal(
                "maximal proper faces of an antipodal host must all have corank one".into(),
            ));
        }
        let nodes: Vec<Face> = picked.into_iter().map(|i| faces[i].clone()).collect();
        (nodes, host_rank - 1)
    } else {
        let ranks: Vec<usize> = {
            let mut r: Vec<usize> = maximal.iter().map(|&i| faces[i].rank).collect();
            r.sort_unstable();
            r.dedup();
            r
        };
        if ranks.len() != 1 {
            return Err(Error::NotPure {
                reason: format!("maximal faces have ranks {ranks:?}"),
            });
        }
        let nodes: Vec<Face> = maximal.into_iter().map(|i| faces[i].clone()).collect();
        (nodes, ranks[0])
    };

    // Two nodes are adjacent exactly when their tope sets intersect in a face
    // one rank below the nodes. The intersection of two face blocks is the
    // block of the joined sign pattern, so a lookup by covector suffices.
    let mut by_cov: HashMap<(u32, u32), usize> = HashMap::new();
    for (i, f) in faces.iter().enumerate() {
        by_cov.insert((f.covector.plus, f.covector.minus), i);
    }
    let mut edges = Vec::new();
    let mut meets: Vec<Face> = Vec::new();
    if let Some(meet_rank) = node_rank.checked_sub(1) {
        for i in 0..nodes.len() {
            for j in i + 1..nodes.len() {
                let a = nodes[i].covector;
                let b = nodes[j].covector;
                let plus = a.plus | b.plus;
                let minus = a.minus | b.minus;
                if plus & minus != 0 {
                    continue; // conflicting signs: the faces are disjoint
                }
                let Some(&fi) = by_cov.get(&(plus, minus)) else {
                    continue;
                };
                if faces[fi].rank != meet_rank {
                    continue;
                }
                edges.push((i, j));
                meets.push(faces[fi].clone());
            }
        }
    }

    if !c.antipodal {
        if !nodes_connected(nodes.len(), &edges) {
            return Err(Error::NotPure {
                reason: "cocircuit graph is disconnected".into(),
            });
        }
        check_family_trees(g, &faces, &nodes, &edges, &meets, node_rank)?;
    }

    let lines = if c.antipodal {
        closed_lines(g, &nodes, &edges, &meets)?
    } else {
        open_lines(g, &nodes, &edges, &meets)
    };

    Ok(CocircuitGraph {
        host: g.clone(),
        antipodal_host: c.antipodal,
        node_rank,
        nodes,
        edges,
        meets,
        lines,
    })
}

/// Indices of the faces that are proper (smaller than the whole vertex set)
/// and maximal among proper faces.
fn maximal_proper_faces(faces: &[Face], total: usize) -> Vec<usize> {
    (0..faces.len())
        .filter(|&i| {
            let f = &faces[i];
            f.topes.len() < total
                && !faces.iter().enumerate().any(|(j, h)| {
                    j != i
                        && h.topes.len() < total
                        && h.covector != f.covector
                        && h.covector.leq(&f.covector)
                })
        })
        .collect()
}

fn nodes_connected(n: usize, edges: &[(usize, usize)]) -> bool {
    if n <= 1 {
        return true;
    }
    let mut adj = vec![Vec::new(); n];
    for &(u, v) in edges {
        adj[u].push(v);
        adj[v].push(u);
    }
    let mut seen = vec![false; n];
    let mut queue = VecDeque::from([0usize]);
    seen[0] = true;
    let mut count = 1;
    while let Some(u) = queue.pop_front() {
        for &v in &adj[u] {
            if !seen[v] {
                seen[v] = true;
                count += 1;
                queue.push_back(v);
            }
        }
    }
    count == n
}

/// In a pure host the edges whose meets cross the same coordinate set form a
/// family, and the family's meets hang together as a tree: every involved
/// node contains exactly two of the subfaces, and the subfaces with those
/// containments form a connected acyclic graph.
fn check_family_trees(
    g: &ToGraph,
    faces: &[Face],
    nodes: &[Face],
    edges: &[(usize, usize)],
    meets: &[Face],
    node_rank: usize,
) -> Result<()> {
    let width = g.width();
    let Some(meet_rank) = node_rank.checked_sub(1) else {
        return Ok(());
    };
    let mut families: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
    for (k, m) in meets.iter().enumerate() {
        families.entry(m.zero_mask(width)).or_default().push(k);
    }
    for (fmask, edge_ids) in families {
        let mut members: Vec<usize> = edge_ids
            .iter()
            .flat_map(|&k| [edges[k].0, edges[k].1])
            .collect();
        members.sort_unstable();
        members.dedup();
        let mut tree_edges: Vec<(CoVector2, CoVector2)> = Vec::new();
        for &v in &members {
            let node = &nodes[v];
            let subs: Vec<CoVector2> = faces
                .iter()
                .filter(|u| {
                    u.rank == meet_rank
                        && u.zero_mask(width) & fmask == fmask
                        && node.covector.leq(&u.covector)
                })
                .map(|u| (u.covector.plus, u.covector.minus))
                .collect();
            let [a, b] = subs.as_slice() else {
                return Err(Error::Internal(format!(
                    "a node of the {fmask:#b} family holds {} crossed subfaces instead of two",
                    subs.len()
                )));
            };
            tree_edges.push((*a, *b));
        }
        let mut verts: Vec<CoVector2> = tree_edges
            .iter()
            .flat_map(|&(a, b)| [a, b])
            .collect();
        verts.sort_unstable();
        verts.dedup();
        let index: HashMap<CoVector2, usize> =
            verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let pairs: Vec<(usize, usize)> = tree_edges
            .iter()
            .map(|&(a, b)| (index[&a], index[&b]))
            .collect();
        if verts.len() != pairs.len() + 1 || !nodes_connected(verts.len(), &pairs) {
            return Err(Error::Internal(format!(
                "the {fmask:#b} family does not hang together as a tree"
            )));
        }
    }
    Ok(())
}

type CoVector2 = (u32, u32);

/// Decompose the cocircuit graph of an antipodal host into closed lines. From
/// a directed edge the continuation is the unique neighbour whose meet is the
/// antipode, within the shared node, of the meet just traversed.
fn closed_lines(
    g: &ToGraph,
    nodes: &[Face],
    edges: &[(usize, usize)],
    meets: &[Face],
) -> Result<Vec<Line>> {
    let width = g.width();
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); nodes.len()];
    for (k, &(u, v)) in edges.iter().enumerate() {
        adj[u].push((v, k));
        adj[v].push((u, k));
    }
    let mut used = vec![false; edges.len()];
    let mut lines = Vec::new();
    for start in 0..edges.len() {
        if used[start] {
            continue;
        }
        used[start] = true;
        let fmask = meets[start].zero_mask(width);
        let (a, b) = edges[start];
        let mut seq = vec![a, b];
        let mut cur_edge = start;
        let mut guard = 0usize;
        loop {
            guard += 1;
            if guard > 2 * edges.len() + 2 {
                return Err(Error::Internal("a cocircuit line failed to close".into()));
            }
            let c = *seq.last().unwrap();
            let (next, ek) = line_continuation(width, nodes, meets, &adj, cur_edge, c)?;
            if next == seq[0] {
                if used[ek] {
                    return Err(Error::Internal("cocircuit lines overlap".into()));
                }
                used[ek] = true;
                if meets[ek].zero_mask(width) != fmask {
                    return Err(Error::Internal(
                        "a cocircuit line changes its crossing set".into(),
                    ));
                }
                // closing the cycle must continue into the starting edge
                let (wrap, we) = line_continuation(width, nodes, meets, &adj, ek, next)?;
                if we != start || wrap != seq[1] {
                    return Err(Error::Internal(
                        "a cocircuit line revisits a node without closing".into(),
                    ));
                }
                break;
            }
            if used[ek] {
                return Err(Error::Internal("cocircuit lines overlap".into()));
            }
            used[ek] = true;
            if meets[ek].zero_mask(width) != fmask {
                return Err(Error::Internal(
                    "a cocircuit line changes its crossing set".into(),
                ));
            }
            seq.push(next);
            cur_edge = ek;
        }
        let l = seq.len();
        if l % 2 != 0 {
            return Err(Error::Internal("a closed cocircuit line has odd length".into()));
        }
        let full = mask(width);
        for i in 0..l / 2 {
            let mut image: Vec<SignWord> = nodes[seq[i]]
                .topes
                .iter()
                .map(|w| SignWord(w.0 ^ full))
                .collect();
            image.sort_unstable();
            if image != nodes[seq[i + l / 2]].topes {
                return Err(Error::Internal(
                    "a closed cocircuit line is not antipodally symmetric".into(),
                ));
            }
        }
        lines.push(Line {
            nodes: seq,
            follows: fmask,
            closes: true,
        });
    }
    Ok(lines)
}

/// The unique way to continue a line that has just traversed `cur_edge` into
/// node `c`: the neighbour whose meet is the antipode of the traversed meet
/// within `c`.
fn line_continuation(
    width: usize,
    nodes: &[Face],
    meets: &[Face],
    adj: &[Vec<(usize, usize)>],
    cur_edge: usize,
    c: usize,
) -> Result<(usize, usize)> {
    let z = nodes[c].zero_mask(width);
    let mut target: Vec<SignWord> = meets[cur_edge]
        .topes
        .iter()
        .map(|w| SignWord(w.0 ^ z))
        .collect();
    target.sort_unstable();
    let mut found = None;
    for &(x, ek) in &adj[c] {
        if ek == cur_edge || meets[ek].topes != target {
            continue;
        }
        if found.is_some() {
            return Err(Error::Internal(
                "ambiguous continuation of a cocircuit line".into(),
            ));
        }
        found = Some((x, ek));
    }
    found.ok_or_else(|| Error::Internal("a cocircuit line ends abruptly".into()))
}

/// Decompose the cocircuit graph of a pure host into open lines: within each
/// family, greedily extend paths through the opposite-subface condition until
/// no unused continuation remains.
fn open_lines(
    g: &ToGraph,
    nodes: &[Face],
    edges: &[(usize, usize)],
    meets: &[Face],
) -> Vec<Line> {
    let width = g.width();
    let mut families: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
    for (k, m) in meets.iter().enumerate() {
        families.entry(m.zero_mask(width)).or_default().push(k);
    }
    let mut incident: HashMap<usize, Vec<usize>> = HashMap::new();
    let mut used = vec![false; edges.len()];
    let mut lines = Vec::new();
    for (fmask, edge_ids) in families {
        incident.clear();
        for &k in &edge_ids {
            incident.entry(edges[k].0).or_default().push(k);
            incident.entry(edges[k].1).or_default().push(k);
        }
        let other_end = |k: usize, v: usize| {
            let (a, b) = edges[k];
            if a == v {
                b
            } else {
                a
            }
        };
        // the continuation of edge `k` through node `v` must meet `v` in the
        // antipode, within `v`, of the meet of `k`
        let opposite = |k: usize, v: usize, cand: usize| {
            let z = nodes[v].zero_mask(width);
            let mut target: Vec<SignWord> = meets[k]
                .topes
                .iter()
                .map(|w| SignWord(w.0 ^ z))
                .collect();
            target.sort_unstable();
            meets[cand].topes == target
        };
        for &seed in &edge_ids {
            if used[seed] {
                continue;
            }
            used[seed] = true;
            let (a, b) = edges[seed];
            let mut seq = vec![a, b];
            for _pass in 0..2 {
                let mut tail_edge = seed;
                loop {
                    let v = *seq.last().unwrap();
                    let next = incident
                        .get(&v)
                        .into_iter()
                        .flatten()
                        .copied()
                        .filter(|&k| !used[k] && opposite(tail_edge, v, k))
                        .min();
                    let Some(k) = next else { break };
                    used[k] = true;
                    seq.push(other_end(k, v));
                    tail_edge = k;
                }
                // reversing puts the seed edge back at the tail, so the
                // second pass grows the other end; two reversals restore
                // the original direction
                seq.reverse();
            }
            lines.push(Line {
                nodes: seq,
                follows: fmask,
                closes: false,
            });
        }
    }
    lines
}

/// Sweep one coordinate across the cocircuit graph, directing each line away
/// from the negative side and towards the positive side of the coordinate.
///
/// On a closed line the coordinate either crosses every node (the line is
/// left undirected), no node, or exactly two antipodal nodes; in the last
/// case only the four edges touching a crossed node are directed, inwards on
/// the negative arc and outwards on the positive arc. On an open host each
/// family with a crossed node is directed away from it below the crossing
/// coordinate's negative side and towards it above, measured by distance
/// within the family; ties stay undirected.
pub fn orient(cg: &CocircuitGraph, class: usize) -> Result<MixedOrientation> {
    let width = cg.host.width();
    if class >= width {
        return Err(Error::InvalidCoordinate {
            coord: class,
            width,
        });
    }
    let bit = 1u32 << class;
    let mut states = vec![EdgeState::Undirected; cg.edges.len()];
    let mut edge_of: HashMap<(usize, usize), usize> = HashMap::new();
    for (k, &(u, v)) in cg.edges.iter().enumerate() {
        edge_of.insert((u, v), k);
        edge_of.insert((v, u), k);
    }
    let set_state = |states: &mut [EdgeState], from: usize, to: usize| -> Result<()> {
        let k = *edge_of
            .get(&(from, to))
            .ok_or_else(|| Error::Internal("orientation touched a missing edge".into()))?;
        let want = if cg.edges[k] == (from, to) {
            EdgeState::Forward
        } else {
            EdgeState::Backward
        };
        if states[k] != EdgeState::Undirected && states[k] != want {
            return Err(Error::Internal("conflicting sweep directions".into()));
        }
        states[k] = want;
        Ok(())
    };

    if cg.antipodal_host {
        for line in &cg.lines {
            let l = line.nodes.len();
            let crossed: Vec<usize> = (0..l)
                .filter(|&p| cg.nodes[line.nodes[p]].zero_mask(width) & bit != 0)
                .collect();
            if line.follows & bit != 0 {
                if crossed.len() != l {
                    return Err(Error::Internal(
                        "a followed coordinate misses part of its line".into(),
                    ));
                }
                continue;
            }
            match crossed.len() {
                0 => continue,
                2 => {
                    let (p1, p2) = (crossed[0], crossed[1]);
                    if p2 != p1 + l / 2 {
                        return Err(Error::Internal(
                            "the crossed nodes of a line are not antipodal".into(),
                        ));
                    }
                    let side_of = |p: usize| -> Result<bool> {
                        let cv = &cg.nodes[line.nodes[p]].covector;
                        if cv.plus & bit != 0 {
                            Ok(true)
                        } else if cv.minus & bit != 0 {
                            Ok(false)
                        } else {
                            Err(Error::Internal(
                                "an uncrossed line node has no side".into(),
                            ))
                        }
                    };
                    let arc_side = |lo: usize, hi: usize| -> Result<bool> {
                        let mut side = None;
                        let mut p = (lo + 1) % l;
                        while p != hi {
                            let s = side_of(p)?;
                            if *side.get_or_insert(s) != s {
                                return Err(Error::Internal(
                                    "a line arc changes sides".into(),
                                ));
                            }
                            p = (p + 1) % l;
                        }
                        side.ok_or_else(|| {
                            Error::Internal("a line arc has no interior".into())
                        })
                    };
                    if arc_side(p1, p2)? == arc_side(p2, p1)? {
                        return Err(Error::Internal(
                            "both arcs of a line fall on the same side".into(),
                        ));
                    }
                    for &p in &[p1, p2] {
                        for q in [(p + l - 1) % l, (p + 1) % l] {
                            if q == p1 || q == p2 {
                                return Err(Error::Internal(
                                    "adjacent crossed nodes on a line".into(),
                                ));
                            }
                            let (np, nq) = (line.nodes[p], line.nodes[q]);
                            if side_of(q)? {
                                set_state(&mut states, np, nq)?;
                            } else {
                                set_state(&mut states, nq, np)?;
                            }
                        }
                    }
                }
                c => {
                    return Err(Error::Internal(format!(
                        "a coordinate crosses a closed line in {c} nodes"
                    )))
                }
            }
        }
    } else {
        let mut families: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
        for (k, m) in cg.meets.iter().enumerate() {
            families.entry(m.zero_mask(width)).or_default().push(k);
        }
        for (fmask, edge_ids) in families {
            if fmask & bit != 0 {
                continue; // the family follows this coordinate
            }
            let mut members: Vec<usize> = edge_ids
                .iter()
                .flat_map(|&k| [cg.edges[k].0, cg.edges[k].1])
                .collect();
            members.sort_unstable();
            members.dedup();
            let crossed: Vec<usize> = members
                .iter()
                .copied()
                .filter(|&v| cg.nodes[v].zero_mask(width) & bit != 0)
                .collect();
            let root = match crossed.as_slice() {
                [] => continue,
                [r] => *r,
                many => {
                    return Err(Error::Internal(format!(
                        "a coordinate crosses {} nodes of one family",
                        many.len()
                    )))
                }
            };
            let mut fam_adj: HashMap<usize, Vec<usize>> = HashMap::new();
            for &k in &edge_ids {
                let (u, v) = cg.edges[k];
                fam_adj.entry(u).or_default().push(v);
                fam_adj.entry(v).or_default().push(u);
            }
            let mut dist: HashMap<usize, usize> = HashMap::from([(root, 0)]);
            let mut queue = VecDeque::from([root]);
            while let Some(u) = queue.pop_front() {
                let du = dist[&u];
                for &v in fam_adj.get(&u).into_iter().flatten() {
                    if let std::collections::hash_map::Entry::Vacant(e) = dist.entry(v) {
                        e.insert(du + 1);
                        queue.push_back(v);
                    }
                }
            }
            if dist.len() != members.len() {
                return Err(Error::Internal("a line family is disconnected".into()));
            }
            for &k in &edge_ids {
                let (u, v) = cg.edges[k];
                let cv = &cg.meets[k].covector;
                let positive = if cv.plus & bit != 0 {
                    true
                } else if cv.minus & bit != 0 {
                    false
                } else {
                    return Err(Error::Internal(
                        "a family meet has no side for an unfollowed coordinate".into(),
                    ));
                };
                let (du, dv) = (dist[&u], dist[&v]);
                if du == dv {
                    continue; // equidistant: the sweep leaves the edge alone
                }
                let (closer, farther) = if du < dv { (u, v) } else { (v, u) };
                if positive {
                    set_state(&mut states, closer, farther)?;
                } else {
                    set_state(&mut states, farther, closer)?;
                }
            }
        }
    }
    Ok(MixedOrientation { class, states })
}

/// Does the partial orientation admit no cycle through a directed edge?
/// Undirected edges may be traversed both ways, so the question reduces to
/// whether some directed edge has both endpoints in one strongly connected
/// component.
pub fn is_strictly_acyclic(cg: &CocircuitGraph, mo: &MixedOrientation) -> Acyclicity {
    assert_eq!(
        mo.states.len(),
        cg.edges.len(),
        "orientation does not match the cocircuit graph"
    );
    let n = cg.nodes.len();
    let mut arcs: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut directed = Vec::new();
    for (k, &(u, v)) in cg.edges.iter().enumerate() {
        match mo.states[k] {
            EdgeState::Undirected => {
                arcs[u].push(v);
                arcs[v].push(u);
            }
            EdgeState::Forward => {
                arcs[u].push(v);
                directed.push((u, v));
            }
            EdgeState::Backward => {
                arcs[v].push(u);
                directed.push((v, u));
            }
        }
    }
    let comp = strongly_connected_components(&arcs);
    for &(u, v) in &directed {
        if comp[u] == comp[v] {
            // close the cycle: walk back from the head to the tail inside
            // the component
            let mut prev: HashMap<usize, usize> = HashMap::new();
            let mut queue = VecDeque::from([v]);
            while let Some(x) = queue.pop_front() {
                if x == u {
                    break;
                }
                for &y in &arcs[x] {
                    if comp[y] == comp[u] && y != v && !prev.contains_key(&y) {
                        prev.insert(y, x);
                        queue.push_back(y);
                    }
                }
            }
            let mut path = vec![u];
            let mut at = u;
            while at != v {
                at = prev[&at];
                path.push(at);
            }
            path.reverse(); // now v … u; the directed edge u -> v closes it
            let mut cycle = vec![u];
            cycle.extend(path);
            return Acyclicity {
                strictly_acyclic: false,
                witness: Some(cycle),
            };
        }
    }
    Acyclicity {
        strictly_acyclic: true,
        witness: None,
    }
}

struct SccState<'a> {
    arcs: &'a [Vec<usize>],
    index: Vec<Option<u32>>,
    low: Vec<u32>,
    on_stack: Vec<bool>,
    stack: Vec<usize>,
    next: u32,
    comp: Vec<usize>,
    ncomp: usize,
}

fn scc_visit(st: &mut SccState, v: usize) {
    st.index[v] = Some(st.next);
    st.low[v] = st.next;
    st.next += 1;
    st.stack.push(v);
    st.on_stack[v] = true;
    for w in st.arcs[v].clone() {
        match st.index[w] {
            None => {
                scc_visit(st, w);
                st.low[v] = st.low[v].min(st.low[w]);
            }
            Some(iw) if st.on_stack[w] => {
                st.low[v] = st.low[v].min(iw);
            }
            _ => {}
        }
    }
    if st.low[v] == st.index[v].unwrap() {
        while let Some(w) = st.stack.pop() {
            st.on_stack[w] = false;
            st.comp[w] = st.ncomp;
            if w == v {
                break;
            }
        }
        st.ncomp += 1;
    }
}

fn strongly_connected_components(arcs: &[Vec<usize>]) -> Vec<usize> {
    let n = arcs.len();
    let mut st = SccState {
        arcs,
        index: vec![None; n],
        low: vec![0; n],
        on_stack: vec![false; n],
        stack: Vec::new(),
        next: 0,
        comp: vec![usize::MAX; n],
        ncomp: 0,
    };
    for v in 0..n {
        if st.index[v].is_none() {
            scc_visit(&mut st, v);
        }
    }
    st.comp
}

/// Is every coordinate sweep of this AOM strictly acyclic?
pub fn is_euclidean_aom(g: &ToGraph) -> Result<bool> {
    let c = classify(g)?;
    if !c.aom {
        return Err(Error::WrongClass {
            required: "an AOM tope graph",
        });
    }
    if g.len() == 1 {
        return Ok(true);
    }
    let cg = cocircuit_graph(g)?;
    let verdicts: Result<Vec<bool>> = (0..g.width())
        .into_par_iter()
        .map(|e| {
            let mo = orient(&cg, e)?;
            Ok(is_strictly_acyclic(&cg, &mo).strictly_acyclic)
        })
        .collect();
    Ok(verdicts?.into_iter().all(|b| b))
}

/// Is every halfspace of this OM a Euclidean AOM?
pub fn is_euclidean_om(g: &ToGraph) -> Result<bool> {
    let c = classify(g)?;
    if !c.om {
        return Err(Error::WrongClass {
            required: "an OM tope graph",
        });
    }
    let halves: Vec<(usize, bool)> = (0..g.width())
        .flat_map(|e| [(e, false), (e, true)])
        .collect();
    let verdicts: Result<Vec<bool>> = halves
        .into_par_iter()
        .map(|(e, s)| {
            let (h, _) = g.halfspace(e, s)?.simplify();
            is_euclidean_aom(&h)
        })
        .collect();
    Ok(verdicts?.into_iter().all(|b| b))
}

/// A cover of a tope graph by a side and its antipodal image.
pub type CoverPair = (Vec<SignWord>, Vec<SignWord>);

/// The valid general-position covers of an OM, reported as `(side, antipodal
/// side)` pairs of tope sets.
#[derive(Debug, Clone)]
pub struct GpExpansions {
    pub expansions: Vec<CoverPair>,
    /// Whether every sign map was examined, or the candidate cap cut the
    /// enumeration short.
    pub complete: bool,
}

/// Enumerate the general-position expansion covers of an OM.
///
/// Each maximal proper face is assigned to one side of the cover, antipodal
/// faces to opposite sides. A sign map survives when the two sides form a
/// valid isometric cover, the expansion along it is again an OM, and no
/// assigned face sinks entirely into the overlap of the two sides. At most
/// `limit` sign maps are examined.
pub fn general_position_extensions(g: &ToGraph, limit: usize) -> Result<GpExpansions> {
    let (cocircs, pairs) = cocircuit_pairs(g)?;
    let (scan, complete) = scan_bounds(pairs.len(), limit);
    let mut expansions = Vec::new();
    for idx in 0..scan {
        if let Some(cover) = gp_cover(g, &cocircs, &pairs, idx)? {
            expansions.push(cover);
        }
    }
    Ok(GpExpansions {
        expansions,
        complete,
    })
}

type PairedCocircuits = (Vec<Face>, Vec<(usize, usize)>);

/// The rank-`r - 1` faces of an OM, paired up with their antipodal mates;
/// each pair is `(index, mate index)` with the representative first.
fn cocircuit_pairs(g: &ToGraph) -> Result<PairedCocircuits> {
    let c = classify(g)?;
    if !c.om {
        return Err(Error::WrongClass {
            required: "an OM tope graph",
        });
    }
    if g.width() + 1 > MAX_CLASSIFY_WIDTH {
        return Err(Error::GuardExceeded {
            what: "general-position expansion width",
            limit: MAX_CLASSIFY_WIDTH - 1,
            got: g.width(),
        });
    }
    let r = g.rank();
    if r == 0 {
        return Err(Error::InvalidArgument(
            "a single vertex has no cocircuit faces".into(),
        ));
    }
    let faces = enumerate_faces(g)?;
    let cocircs: Vec<Face> = faces
        .into_iter()
        .filter(|f| f.rank == r - 1)
        .collect();
    let by_cov: HashMap<(u32, u32), usize> = cocircs
        .iter()
        .enumerate()
        .map(|(i, f)| ((f.covector.plus, f.covector.minus), i))
        .collect();
    let mut pairs = Vec::new();
    for (i, f) in cocircs.iter().enumerate() {
        let mate = *by_cov
            .get(&(f.covector.minus, f.covector.plus))
            .ok_or_else(|| Error::Internal("a cocircuit face has no antipodal mate".into()))?;
        if i < mate {
            pairs.push((i, mate));
        }
    }
    Ok((cocircs, pairs))
}

fn scan_bounds(k: usize, limit: usize) -> (usize, bool) {
    let total = if k >= usize::BITS as usize - 1 {
        usize::MAX
    } else {
        1usize << k
    };
    (total.min(limit), total <= limit)
}

/// Evaluate sign map `idx` (in reflected Gray order) on the cocircuit pairs;
/// `Some((side, other))` when it yields a valid general-position cover.
fn gp_cover(
    g: &ToGraph,
    cocircs: &[Face],
    pairs: &[(usize, usize)],
    idx: usize,
) -> Result<Option<CoverPair>> {
    let gray = idx ^ (idx >> 1);
    let full = mask(g.width());
    let mut side: Vec<SignWord> = Vec::new();
    let mut picks = Vec::with_capacity(pairs.len());
    for (b, &(i, j)) in pairs.iter().enumerate() {
        let pick = if gray >> b & 1 == 0 { i } else { j };
        picks.push(pick);
        side.extend_from_slice(&cocircs[pick].topes);
    }
    side.sort_unstable();
    side.dedup();
    let mut other: Vec<SignWord> = side.iter().map(|w| SignWord(w.0 ^ full)).collect();
    other.sort_unstable();
    // no assigned face may sink into the overlap of the two sides
    for &pick in &picks {
        if cocircs[pick]
            .topes
            .iter()
            .all(|w| other.binary_search(w).is_ok())
        {
            return Ok(None);
        }
    }
    let Ok(expanded) = g.expand(&side, &other) else {
        return Ok(None);
    };
    if !classify(&expanded)?.om {
        return Ok(None);
    }
    Ok(Some((side, other)))
}

/// Verdict of a bounded search for a Mandel expansion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MandelVerdict {
    /// A general-position cover with two Euclidean sides was found.
    Mandel,
    /// The sign-map space was exhausted without finding one.
    NotMandel,
    /// The candidate cap was reached first.
    UnknownAtLimit,
}

/// Result of [`is_mandel`]: the verdict, how many sign maps the verdict
/// accounts for, and the witness cover if one was found.
#[derive(Debug, Clone)]
pub struct MandelReport {
    pub verdict: MandelVerdict,
    pub checked: usize,
    pub witness: Option<CoverPair>,
}

/// Search for a general-position cover of an OM whose two sides are both
/// Euclidean AOMs, examining at most `limit` sign maps.
///
/// Sign maps are scanned in reflected Gray order, split into contiguous
/// blocks searched in parallel; the reported witness is always the one with
/// the smallest index, so the outcome is deterministic.
pub fn is_mandel(g: &ToGraph, limit: usize) -> Result<MandelReport> {
    let (cocircs, pairs) = cocircuit_pairs(g)?;
    let (scan, complete) = scan_bounds(pairs.len(), limit);
    let nblocks = rayon::current_num_threads().max(1) * 4;
    let block = scan.div_ceil(nblocks).max(1);
    let best = AtomicUsize::new(usize::MAX);
    let hits: Result<Vec<Option<(usize, CoverPair)>>> = (0..nblocks)
        .into_par_iter()
        .map(|bi| {
            let lo = bi * block;
            let hi = (lo + block).min(scan);
            let mut memo: HashMap<Vec<SignWord>, bool> = HashMap::new();
            let mut local = None;
            for idx in lo..hi {
                if best.load(Ordering::Relaxed) < lo {
                    break; // an earlier block already holds the answer
                }
                let Some((side, other)) = gp_cover(g, &cocircs, &pairs, idx)? else {
                    continue;
                };
                if side_is_euclidean(g, &side, &mut memo)?
                    && side_is_euclidean(g, &other, &mut memo)?
                {
                    best.fetch_min(idx, Ordering::Relaxed);
                    local = Some((idx, (side, other)));
                    break;
                }
            }
            Ok(local)
        })
        .collect();
    let winner = hits?
        .into_iter()
        .flatten()
        .min_by_key(|&(idx, _)| idx);
    Ok(match winner {
        Some((idx, witness)) => MandelReport {
            verdict: MandelVerdict::Mandel,
            checked: idx + 1,
            witness: Some(witness),
        },
        None if complete => MandelReport {
            verdict: MandelVerdict::NotMandel,
            checked: scan,
            witness: None,
        },
        None => MandelReport {
            verdict: MandelVerdict::UnknownAtLimit,
            checked: scan,
            witness: None,
        },
    })
}

fn side_is_euclidean(
    g: &ToGraph,
    side: &[SignWord],
    memo: &mut HashMap<Vec<SignWord>, bool>,
) -> Result<bool> {
    if let Some(&v) = memo.get(side) {
        return Ok(v);
    }
    let (h, _) = g.induced(side)?.simplify();
    let v = is_euclidean_aom(&h)?;
    memo.insert(side.to_vec(), v);
    Ok(v)
}
