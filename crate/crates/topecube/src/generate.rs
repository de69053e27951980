//! Isomorph-free exhaustive generation.
//!
//! Partial cubes of isometric dimension `n` are exactly the isometric
//! expansions of those of dimension `n - 1`: pick two isometric subgraphs
//! `h1`, `h2` covering all vertices with no edge between their exclusive
//! parts, duplicate the overlap, and separate the two sides by a fresh
//! coordinate. Running every expansion of every class one dimension down
//! and deduplicating by canonical key therefore enumerates each class
//! exactly once — a brute-force reference enumeration over vertex subsets
//! of the hypercube double-checks the small dimensions.
//!
//! Two derived catalogs avoid ever listing the vast general population in
//! higher dimension: antipodal graphs of dimension `n` are the antipodal
//! doubles of the *affine* graphs of dimension `n - 1`, and uniform
//! oriented matroids of rank `r` grow from the hypercube `Q_r` by chains of
//! single-element extensions in general position.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::canon::{canonical_key, CanonLevel};
use crate::error::{Error, Result};
use crate::euclid::{general_position_extensions, CoverPair};
use crate::faces::{classify, Classification};
use crate::graph::ToGraph;
use crate::word::SignWord;

/// Largest dimension for the full partial-cube population.
pub const MAX_GENERATE_DIM: usize = 6;
/// Largest dimension for the antipodal and uniform catalogs.
pub const MAX_ANTIPODAL_DIM: usize = 7;

/// All isometric covers `(h1, h2)` of a graph whose expansions are exactly
/// its one-dimension-up children, one per unordered cover.
///
/// Every returned pair satisfies the contract of [`ToGraph::expand`]: the
/// sides are isometric, they cover the vertex set, and no edge joins their
/// exclusive parts. Swapping the sides only flips the sign of the new
/// coordinate, so of each mirrored pair only one is listed.
pub fn isometric_cover_pairs(g: &ToGraph) -> Result<Vec<CoverPair>> {
    let m = g.len();
    if m > 32 {
        return Err(Error::GuardExceeded {
            what: "expansion search vertices",
            limit: 32,
            got: m,
        });
    }
    let words = g.words();
    let mut adj = vec![0u32; m];
    for (i, &w) in words.iter().enumerate() {
        for e in 0..g.width() {
            if let Ok(j) = words.binary_search(&w.flip(e)) {
                adj[i] |= 1 << j;
            }
        }
    }
    let dm = g.distance_matrix()?;
    let mut dist = vec![0u16; m * m];
    for i in 0..m {
        for j in 0..m {
            dist[i * m + j] = dm.get(i, j);
        }
    }
    // assign labels in breadth-first order so the adjacency constraint
    // bites early
    let mut order = Vec::with_capacity(m);
    {
        let mut seen = 1u32;
        let mut queue = std::collections::VecDeque::from([0usize]);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            let mut rest = adj[v] & !seen;
            seen |= rest;
            while rest != 0 {
                queue.push_back(rest.trailing_zeros() as usize);
                rest &= rest - 1;
            }
        }
    }
    let mut search = CoverSearch {
        m,
        adj: &adj,
        dist: &dist,
        order: &order,
        labels: vec![Label::Open; m],
        a: 0,
        b: 0,
        c: 0,
        out: Vec::new(),
    };
    search.run(0);
    let pairs = search
        .out
        .into_iter()
        .map(|(h1, h2)| {
            let side = |mask: u32| -> Vec<SignWord> {
                (0..m).filter(|&i| mask >> i & 1 == 1).map(|i| words[i]).collect()
            };
            (side(h1), side(h2))
        })
        .collect();
    Ok(pairs)
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Label {
    Open,
    /// In `h1` only.
    A,
    /// In `h2` only.
    B,
    /// In both sides.
    C,
}

struct CoverSearch<'a> {
    m: usize,
    adj: &'a [u32],
    dist: &'a [u16],
    order: &'a [usize],
    labels: Vec<Label>,
    a: u32,
    b: u32,
    c: u32,
    out: Vec<(u32, u32)>,
}

impl CoverSearch<'_> {
    /// Breadth-first distances from `src` inside `allowed` must match the
    /// unrestricted distances towards every vertex of `targets`.
    fn distances_survive(&self, src: usize, allowed: u32, targets: u32) -> bool {
        let mut need = targets & !(1u32 << src);
        if need == 0 {
            return true;
        }
        let mut seen = 1u32 << src;
        let mut frontier = seen;
        let mut d = 0u16;
        while need != 0 {
            d += 1;
            let mut next = 0u32;
            let mut f = frontier;
            while f != 0 {
                next |= self.adj[f.trailing_zeros() as usize];
                f &= f - 1;
            }
            next &= allowed & !seen;
            if next == 0 {
                return false; // a target became unreachable
            }
            let mut hit = next & need;
            while hit != 0 {
                let t = hit.trailing_zeros() as usize;
                hit &= hit - 1;
                // restricted distances never undercut the true ones
                if self.dist[src * self.m + t] != d {
                    return false;
                }
                need &= !(1u32 << t);
            }
            seen |= next;
            frontier = next;
        }
        true
    }

    /// Every assigned pair of side-one vertices, rechecked inside the
    /// loosest completion of side one.
    fn side_one_sound(&self) -> bool {
        let members = self.a | self.c;
        let allowed = !self.b;
        let mut rest = members;
        while rest != 0 {
            let u = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if !self.distances_survive(u, allowed, members) {
                return false;
            }
        }
        true
    }

    fn side_two_sound(&self) -> bool {
        let members = self.b | self.c;
        let allowed = !self.a;
        let mut rest = members;
        while rest != 0 {
            let u = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if !self.distances_survive(u, allowed, members) {
                return false;
            }
        }
        true
    }

    fn run(&mut self, depth: usize) {
        if depth == self.m {
            let h1 = self.a | self.c;
            let h2 = self.b | self.c;
            if h1 == 0 || h2 == 0 {
                return;
            }
            // mirrored labelings both reach this point only when the first
            // vertex sits in the overlap; keep one of the two
            if self.labels[self.order[0]] == Label::C && h1 > h2 {
                return;
            }
            // the incremental pruning has already verified both sides are
            // isometric in their final form; expansion re-validates anyway
            self.out.push((h1, h2));
            return;
        }
        let v = self.order[depth];
        let bit = 1u32 << v;
        let choices: &[Label] = if depth == 0 {
            // swapping the sides mirrors the labeling, so the first vertex
            // never needs side two alone
            &[Label::A, Label::C]
        } else {
            &[Label::A, Label::B, Label::C]
        };
        for &label in choices {
            match label {
                Label::A => {
                    if self.adj[v] & self.b != 0 {
                        continue; // an edge between the exclusive parts
                    }
                    self.a |= bit;
                    self.labels[v] = Label::A;
                    // side one gains a member; side two loses headroom
                    if self.distances_survive(v, !self.b, self.a | self.c)
                        && self.side_two_sound()
                    {
                        self.run(depth + 1);
                    }
                    self.a &= !bit;
                }
                Label::B => {
                    if self.adj[v] & self.a != 0 {
                        continue;
                    }
                    self.b |= bit;
                    self.labels[v] = Label::B;
                    if self.distances_survive(v, !self.a, self.b | self.c)
                        && self.side_one_sound()
                    {
                        self.run(depth + 1);
                    }
                    self.b &= !bit;
                }
                Label::C => {
                    self.c |= bit;
                    self.labels[v] = Label::C;
                    if self.distances_survive(v, !self.b, self.a | self.c)
                        && self.distances_survive(v, !self.a, self.b | self.c)
                    {
                        self.run(depth + 1);
                    }
                    self.c &= !bit;
                }
                Label::Open => unreachable!(),
            }
            self.labels[v] = Label::Open;
        }
    }
}

/// The one-dimension-up children of a graph, one per isometric cover.
pub fn expansions_of(g: &ToGraph) -> Result<Vec<ToGraph>> {
    isometric_cover_pairs(g)?
        .into_iter()
        .map(|(h1, h2)| g.expand(&h1, &h2))
        .collect()
}

/// Deduplicate by canonical key at the isomorphism level; output sorted by
/// key, so streams are deterministic across runs and thread counts.
fn dedup_classes(items: Vec<ToGraph>) -> Result<Vec<ToGraph>> {
    let mut map: BTreeMap<Vec<u8>, ToGraph> = BTreeMap::new();
    for g in items {
        map.entry(canonical_key(&g, CanonLevel::Isomorphism)?).or_insert(g);
    }
    Ok(map.into_values().collect())
}

/// One representative per isomorphism class of simple partial cubes of
/// isometric dimension exactly `n`, sorted by canonical key. Guarded at
/// dimension 6, where the population crosses ten million classes.
pub fn generate_partial_cubes(n: usize) -> Result<Vec<ToGraph>> {
    if n == 0 {
        return Err(Error::InvalidArgument(
            "isometric dimension must be at least 1".into(),
        ));
    }
    if n > MAX_GENERATE_DIM {
        return Err(Error::GuardExceeded {
            what: "partial-cube generation dimension",
            limit: MAX_GENERATE_DIM,
            got: n,
        });
    }
    let mut classes = vec![ToGraph::edge()];
    for _ in 2..=n {
        let batches: Result<Vec<Vec<ToGraph>>> =
            classes.par_iter().map(expansions_of).collect();
        classes = dedup_classes(batches?.into_iter().flatten().collect())?;
    }
    Ok(classes)
}

/// The antipodal double of an affine graph, or `None` when the graph is not
/// affine.
pub fn affine_double(g: &ToGraph) -> Result<Option<ToGraph>> {
    if !classify(g)?.affine {
        return Ok(None);
    }
    let d = g.double()?;
    if !d.is_partial_cube().is_partial_cube() {
        return Err(Error::Internal(
            "the double of an affine graph must be a partial cube".into(),
        ));
    }
    Ok(Some(d))
}

/// One representative per isomorphism class of antipodal partial cubes of
/// dimension `n`: the affine classes one dimension down, doubled across
/// their antipode sets, deduplicated.
pub fn generate_antipodal(n: usize) -> Result<Vec<ToGraph>> {
    if n == 0 {
        return Err(Error::InvalidArgument(
            "isometric dimension must be at least 1".into(),
        ));
    }
    if n > MAX_ANTIPODAL_DIM {
        return Err(Error::GuardExceeded {
            what: "antipodal generation dimension",
            limit: MAX_ANTIPODAL_DIM,
            got: n,
        });
    }
    if n == 1 {
        return Ok(vec![ToGraph::edge()]);
    }
    let parents = generate_partial_cubes(n - 1)?;
    let doubles: Result<Vec<Option<ToGraph>>> =
        parents.par_iter().map(affine_double).collect();
    dedup_classes(doubles?.into_iter().flatten().collect())
}

/// All single-element extensions of a uniform oriented matroid in general
/// position, each validated to stay uniform of the same rank.
pub fn uniform_extensions(g: &ToGraph) -> Result<Vec<ToGraph>> {
    let r = g.rank();
    let gp = general_position_extensions(g, 1 << 21)?;
    if !gp.complete {
        return Err(Error::Internal(
            "the general-position scan did not complete within its bound".into(),
        ));
    }
    let mut out = Vec::with_capacity(gp.expansions.len());
    for (h1, h2) in gp.expansions {
        let child = g.expand(&h1, &h2)?;
        if !classify(&child)?.uom || child.rank() != r {
            return Err(Error::Internal(
                "a general-position extension left the class of equal-rank UOMs".into(),
            ));
        }
        out.push(child);
    }
    Ok(out)
}

/// One representative per isomorphism class of uniform oriented matroids of
/// rank `r` on `n` elements, grown from `Q_r` by general-position
/// extensions. Deleting an element of a uniform matroid is again uniform of
/// the same rank whenever elements remain to spare, and the lost element
/// re-enters in general position — so the chains reach every class.
pub fn generate_uniform(n: usize, r: usize) -> Result<Vec<ToGraph>> {
    if r < 2 || r > n {
        return Err(Error::InvalidArgument(format!(
            "uniform catalogs need 2 <= rank <= dimension, got rank {r} on {n}"
        )));
    }
    if n > MAX_ANTIPODAL_DIM {
        return Err(Error::GuardExceeded {
            what: "uniform generation dimension",
            limit: MAX_ANTIPODAL_DIM,
            got: n,
        });
    }
    let mut classes = vec![ToGraph::hypercube(r)?];
    for _ in r..n {
        let batches: Result<Vec<Vec<ToGraph>>> =
            classes.par_iter().map(uniform_extensions).collect();
        classes = dedup_classes(batches?.into_iter().flatten().collect())?;
    }
    Ok(classes)
}

/// Reference enumeration for cross-checks: filter every vertex subset of
/// the hypercube for being a simple partial cube of full dimension, then
/// deduplicate. Exponential in `2^n`; dimension 4 takes milliseconds,
/// dimension 5 an extended parallel run.
pub fn brute_force_partial_cubes(n: usize) -> Result<Vec<ToGraph>> {
    if n == 0 {
        return Err(Error::InvalidArgument(
            "isometric dimension must be at least 1".into(),
        ));
    }
    if n > 5 {
        return Err(Error::GuardExceeded {
            what: "brute-force enumeration dimension",
            limit: 5,
            got: n,
        });
    }
    let vertices = 1usize << n;
    let total: u64 = 1u64 << vertices;
    // every class has a representative containing the all-minus vertex:
    // translating by the minimum word is an automorphism of the cube
    let masks = (0..total / 2).into_par_iter().map(|half| half * 2 + 1);
    let keyed: Vec<Vec<(Vec<u8>, ToGraph)>> = masks
        .fold(Vec::new, |mut acc: Vec<(Vec<u8>, ToGraph)>, mask: u64| {
            if let Some(g) = subset_as_class(n, mask) {
                acc.push((canonical_key(&g, CanonLevel::Isomorphism).unwrap(), g));
            }
            acc
        })
        .collect();
    let mut map: BTreeMap<Vec<u8>, ToGraph> = BTreeMap::new();
    for (key, g) in keyed.into_iter().flatten() {
        map.entry(key).or_insert(g);
    }
    Ok(map.into_values().collect())
}

/// The subset as a full-dimension simple partial cube, if it is one.
fn subset_as_class(n: usize, mask: u64) -> Option<ToGraph> {
    if mask.count_ones() < 2 {
        return None;
    }
    let words: Vec<SignWord> = (0..1u32 << n)
        .filter(|&w| mask >> w & 1 == 1)
        .map(SignWord)
        .collect();
    let g = ToGraph::new(n, words).ok()?;
    if !g.is_partial_cube().is_partial_cube() || !g.is_simple() {
        return None;
    }
    Some(g)
}

/// A classification predicate for filtering generated streams.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Predicate {
    All,
    Antipodal,
    Affine,
    Com,
    Om,
    Aom,
    Lop,
    Uom,
    Rank(usize),
}

impl Predicate {
    pub fn matches(&self, g: &ToGraph, c: &Classification) -> bool {
        match self {
            Predicate::All => true,
            Predicate::Antipodal => c.antipodal,
            Predicate::Affine => c.affine,
            Predicate::Com => c.com,
            Predicate::Om => c.om,
            Predicate::Aom => c.aom,
            Predicate::Lop => c.lop,
            Predicate::Uom => c.uom,
            Predicate::Rank(r) => g.rank() == *r,
        }
    }
}

impl FromStr for Predicate {
    type Err = Error;

    fn from_str(s: &str) -> Result<Predicate> {
        let lower = s.to_ascii_lowercase();
        Ok(match lower.as_str() {
            "all" => Predicate::All,
            "antipodal" => Predicate::Antipodal,
            "affine" => Predicate::Affine,
            "com" => Predicate::Com,
            "om" => Predicate::Om,
            "aom" => Predicate::Aom,
            "lop" => Predicate::Lop,
            "uom" => Predicate::Uom,
            _ => {
                if let Some(r) = lower.strip_prefix("rank=") {
                    let r: usize = r.parse().map_err(|_| {
                        Error::InvalidArgument(format!("bad rank in predicate '{s}'"))
                    })?;
                    Predicate::Rank(r)
                } else {
                    return Err(Error::InvalidArgument(format!(
                        "unknown predicate '{s}' (try all, antipodal, affine, com, om, aom, lop, uom, rank=N)"
                    )));
                }
            }
        })
    }
}

impl fmt::Display for Predicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Predicate::All => write!(f, "all"),
            Predicate::Antipodal => write!(f, "antipodal"),
            Predicate::Affine => write!(f, "affine"),
            Predicate::Com => write!(f, "com"),
            Predicate::Om => write!(f, "om"),
            Predicate::Aom => write!(f, "aom"),
            Predicate::Lop => write!(f, "lop"),
            Predicate::Uom => write!(f, "uom"),
            Predicate::Rank(r) => write!(f, "rank={r}"),
        }
    }
}

/// Keep the graphs matching every predicate, in their incoming order.
pub fn filter_class(stream: &[ToGraph], predicates: &[Predicate]) -> Result<Vec<ToGraph>> {
    let mut out = Vec::new();
    for g in stream {
        let c = classify(g)?;
        if predicates.iter().all(|p| p.matches(g, &c)) {
            out.push(g.clone());
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::are_equivalent;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn keys_of(classes: &[ToGraph]) -> Vec<Vec<u8>> {
        classes
            .iter()
            .map(|g| canonical_key(g, CanonLevel::Isomorphism).unwrap())
            .collect()
    }

    #[test]
    fn expansions_of_an_edge_give_both_two_dimensional_classes() {
        let classes = generate_partial_cubes(2).unwrap();
        assert_eq!(classes.len(), 2);
        let square = ToGraph::hypercube(2).unwrap();
        let path = ToGraph::from_bits(2, &[0, 1, 3]).unwrap();
        for fixture in [square, path] {
            assert!(classes
                .iter()
                .any(|g| are_equivalent(g, &fixture, CanonLevel::Isomorphism).unwrap()));
        }
    }

    #[test]
    fn seven_classes_of_dimension_three() {
        let classes = generate_partial_cubes(3).unwrap();
        assert_eq!(classes.len(), 7);
        let fixtures = [
            ToGraph::from_bits(3, &[0, 1, 3, 7]).unwrap(),       // path
            ToGraph::from_bits(3, &[0, 1, 2, 4]).unwrap(),       // star
            ToGraph::from_bits(3, &[0, 1, 2, 3, 4]).unwrap(),    // square + pendant
            ToGraph::from_bits(3, &[0, 1, 3, 4, 5, 7]).unwrap(), // ladder
            ToGraph::even_cycle(3).unwrap(),                     // hexagon
            ToGraph::from_bits(3, &[0, 1, 2, 3, 4, 5, 6]).unwrap(), // cube minus a vertex
            ToGraph::hypercube(3).unwrap(),
        ];
        for fixture in fixtures {
            assert!(
                classes
                    .iter()
                    .any(|g| are_equivalent(g, &fixture, CanonLevel::Isomorphism).unwrap()),
                "missing a class"
            );
        }
    }

    #[test]
    fn expansion_generation_matches_brute_force() {
        for n in 1..=4 {
            let generated = generate_partial_cubes(n).unwrap();
            let reference = brute_force_partial_cubes(n).unwrap();
            assert_eq!(
                keys_of(&generated),
                keys_of(&reference),
                "class mismatch at dimension {n}"
            );
        }
    }

    #[test]
    #[ignore = "brute force over all 2^31 odd subsets of the 5-cube; extended run"]
    fn brute_force_dimension_five_matches() {
        let generated = generate_partial_cubes(5).unwrap();
        let reference = brute_force_partial_cubes(5).unwrap();
        assert_eq!(keys_of(&generated), keys_of(&reference));
    }

    #[test]
    fn every_generated_class_is_a_simple_partial_cube() {
        for n in 1..=4 {
            for g in generate_partial_cubes(n).unwrap() {
                assert!(g.is_partial_cube().is_partial_cube());
                assert!(g.is_simple());
                assert_eq!(g.width(), n);
            }
        }
    }

    #[test]
    fn antipodal_counts_match_the_published_table() {
        let expected = [1usize, 2, 4, 13];
        for (i, want) in expected.iter().enumerate() {
            let n = i + 2;
            let classes = generate_antipodal(n).unwrap();
            assert_eq!(classes.len(), *want, "antipodal count at dimension {n}");
            for g in &classes {
                assert!(g.is_antipodal());
                assert!(g.is_simple());
            }
        }
    }

    #[test]
    fn om_counts_match_the_published_table() {
        let expected = [1usize, 2, 4, 9];
        for (i, want) in expected.iter().enumerate() {
            let n = i + 2;
            let oms =
                filter_class(&generate_antipodal(n).unwrap(), &[Predicate::Om]).unwrap();
            assert_eq!(oms.len(), *want, "OM count at dimension {n}");
        }
    }

    #[test]
    fn affinity_matches_halfspaces_of_antipodal_doubles() {
        // a graph is affine exactly when it appears among the halfspaces of
        // the antipodal classes one dimension up
        for n in 2..=4 {
            let affine: Vec<Vec<u8>> = keys_of(
                &filter_class(&generate_partial_cubes(n).unwrap(), &[Predicate::Affine])
                    .unwrap(),
            );
            let mut halves = Vec::new();
            for g in generate_antipodal(n + 1).unwrap() {
                for e in 0..g.width() {
                    for sign in [false, true] {
                        let h = g.halfspace(e, sign).unwrap();
                        if h.is_simple() && h.width() == n {
                            halves.push(h);
                        }
                    }
                }
            }
            let mut half_keys = keys_of(&halves);
            half_keys.sort();
            half_keys.dedup();
            assert_eq!(affine, half_keys, "affinity mismatch at dimension {n}");
        }
    }

    #[test]
    fn uniform_catalogs_match_known_orders() {
        for n in 2..=6 {
            let cycles = generate_uniform(n, 2).unwrap();
            assert_eq!(cycles.len(), 1, "rank-2 count on {n} elements");
            let cycle = ToGraph::even_cycle(n).unwrap();
            assert!(are_equivalent(&cycles[0], &cycle, CanonLevel::Isomorphism).unwrap());
        }
        assert_eq!(generate_uniform(4, 3).unwrap().len(), 1);
        assert_eq!(generate_uniform(5, 3).unwrap().len(), 1);
        assert_eq!(generate_uniform(6, 3).unwrap().len(), 4);
        assert_eq!(generate_uniform(5, 4).unwrap().len(), 1);
        assert_eq!(generate_uniform(6, 4).unwrap().len(), 1);
        for (n, r) in [(5usize, 3usize), (6, 3)] {
            for g in generate_uniform(n, r).unwrap() {
                let c = classify(&g).unwrap();
                assert!(c.uom);
                assert_eq!(g.rank(), r);
                assert_eq!(g.width(), n);
            }
        }
    }

    #[test]
    #[ignore = "regenerates the full dimension-five population first; minutes"]
    fn antipodal_dimension_six_matches_the_published_table() {
        let classes = generate_antipodal(6).unwrap();
        assert_eq!(classes.len(), 115);
        let oms = filter_class(&classes, &[Predicate::Om]).unwrap();
        assert_eq!(oms.len(), 35);
    }

    #[test]
    #[ignore = "general-position scan over a million sign maps per host; minutes"]
    fn uniform_seven_element_catalogs_match_known_orders() {
        assert_eq!(generate_uniform(7, 2).unwrap().len(), 1);
        assert_eq!(generate_uniform(7, 3).unwrap().len(), 11);
        assert_eq!(generate_uniform(7, 4).unwrap().len(), 11);
        assert_eq!(generate_uniform(7, 5).unwrap().len(), 1);
        assert_eq!(generate_uniform(7, 6).unwrap().len(), 1);
    }

    #[test]
    fn canonical_keys_survive_reorientation_and_relabelling() {
        let fixtures = [
            ToGraph::even_cycle(3).unwrap(),
            ToGraph::hypercube(3).unwrap(),
            ToGraph::from_bits(3, &[0, 1, 3, 4, 5, 7]).unwrap(),
            ToGraph::from_bits(4, &(0..16).filter(|&w| w != 7 && w != 8).collect::<Vec<_>>())
                .unwrap(),
        ];
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        for g in &fixtures {
            let n = g.width();
            let key = canonical_key(g, CanonLevel::Isomorphism).unwrap();
            for _ in 0..25 {
                let flip: u32 = rng.gen_range(0..1u32 << n);
                let mut perm: Vec<usize> = (0..n).collect();
                for i in (1..n).rev() {
                    perm.swap(i, rng.gen_range(0..=i));
                }
                let words: Vec<SignWord> = g
                    .words()
                    .iter()
                    .map(|w| {
                        let x = w.0 ^ flip;
                        let mut y = 0u32;
                        for (to, &from) in perm.iter().enumerate() {
                            y |= (x >> from & 1) << to;
                        }
                        SignWord(y)
                    })
                    .collect();
                let image = ToGraph::new(n, words).unwrap();
                assert_eq!(
                    canonical_key(&image, CanonLevel::Isomorphism).unwrap(),
                    key
                );
            }
        }
    }

    #[test]
    fn guards_and_argument_checks() {
        assert!(matches!(
            generate_partial_cubes(0),
            Err(Error::InvalidArgument(_))
        ));
        assert!(matches!(
            generate_partial_cubes(7),
            Err(Error::GuardExceeded { .. })
        ));
        assert!(matches!(
            generate_antipodal(8),
            Err(Error::GuardExceeded { .. })
        ));
        assert!(matches!(
            generate_uniform(8, 3),
            Err(Error::GuardExceeded { .. })
        ));
        assert!(matches!(
            generate_uniform(3, 1),
            Err(Error::InvalidArgument(_))
        ));
        assert!(matches!(
            generate_uniform(3, 4),
            Err(Error::InvalidArgument(_))
        ));
        assert!(matches!(
            isometric_cover_pairs(&ToGraph::hypercube(6).unwrap()),
            Err(Error::GuardExceeded { .. })
        ));
        assert_eq!("rank=3".parse::<Predicate>().unwrap(), Predicate::Rank(3));
        assert!("bogus".parse::<Predicate>().is_err());
    }
}
