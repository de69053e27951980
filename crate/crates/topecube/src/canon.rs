//! Canonical forms and keys at three equivalence levels.
//!
//! * `Labeled` — graphs are compared exactly as given.
//! * `Reorientation` — up to sign flips of coordinate subsets.
//! * `Isomorphism` — up to sign flips and coordinate permutations, which for
//!   simple partial cubes is the same as graph isomorphism.
//!
//! The canonical representative is the lexicographically smallest sorted
//! word list over the allowed transformations. Two search-space reductions
//! keep this fast: a flip making the list minimal must map some vertex to
//! the all-minus word, so only vertex flips are tried; and candidates are
//! ranked with a base-vertex invariant (degree, then neighbor degrees)
//! prefixed to the comparison, so only bases from the minimal invariant
//! class can win and the rest are skipped.

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::graph::ToGraph;
use crate::word::SignWord;

/// Equivalence level for canonical forms, catalogs, and mutation graphs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CanonLevel {
    Labeled,
    Reorientation,
    Isomorphism,
}

impl CanonLevel {
    pub fn as_str(&self) -> &'static str {
        match self {
            CanonLevel::Labeled => "labeled",
            CanonLevel::Reorientation => "reorientation",
            CanonLevel::Isomorphism => "isomorphism",
        }
    }

    pub fn parse(s: &str) -> Result<CanonLevel> {
        match s {
            "labeled" => Ok(CanonLevel::Labeled),
            "reorientation" => Ok(CanonLevel::Reorientation),
            "isomorphism" => Ok(CanonLevel::Isomorphism),
            other => Err(Error::Parse {
                line: 0,
                msg: format!(
                    "unknown level `{other}` (expected labeled, reorientation, or isomorphism)"
                ),
            }),
        }
    }
}

impl std::fmt::Display for CanonLevel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Permutation search beyond this width is refused.
pub const MAX_ISO_WIDTH: usize = 9;

/// The canonical representative graph at the given level.
pub fn canonical_graph(g: &ToGraph, level: CanonLevel) -> Result<ToGraph> {
    let words = canonical_words(g, level)?;
    ToGraph::new(g.width(), words)
}

/// The canonical sorted word list at the given level.
pub fn canonical_words(g: &ToGraph, level: CanonLevel) -> Result<Vec<SignWord>> {
    match level {
        CanonLevel::Labeled => Ok(g.words().to_vec()),
        CanonLevel::Reorientation => Ok(reorientation_canonical(g)),
        CanonLevel::Isomorphism => isomorphism_canonical(g),
    }
}

/// Serialized canonical key: width byte followed by the canonical words in
/// big-endian order. Equal keys mean equivalent graphs at the level.
pub fn canonical_key(g: &ToGraph, level: CanonLevel) -> Result<Vec<u8>> {
    let words = canonical_words(g, level)?;
    let mut key = Vec::with_capacity(1 + 4 * words.len());
    key.push(g.width() as u8);
    for w in &words {
        key.extend_from_slice(&w.0.to_be_bytes());
    }
    Ok(key)
}

/// Hex SHA-256 digest of a key, used for catalog file names.
pub fn key_digest(key: &[u8]) -> String {
    let mut hasher = Sha256::new();
    hasher.update(key);
    let out = hasher.finalize();
    out.iter().map(|b| format!("{b:02x}")).collect()
}

/// Are two graphs equivalent at the level?
pub fn are_equivalent(a: &ToGraph, b: &ToGraph, level: CanonLevel) -> Result<bool> {
    if a.width() != b.width() {
        return Ok(false);
    }
    Ok(canonical_words(a, level)? == canonical_words(b, level)?)
}

/// Minimal word list over sign flips. A winning flip must send some vertex
/// to the all-minus word (lists containing it beat lists that do not), so
/// only flips by vertices are candidates.
fn reorientation_canonical(g: &ToGraph) -> Vec<SignWord> {
    let mut best: Option<Vec<SignWord>> = None;
    let mut cand = vec![SignWord::ZERO; g.len()];
    for &m in g.words() {
        for (slot, &w) in cand.iter_mut().zip(g.words()) {
            *slot = SignWord(w.0 ^ m.0);
        }
        cand.sort_unstable();
        if best.as_ref().is_none_or(|b| cand < *b) {
            best = Some(cand.clone());
        }
    }
    best.expect("graphs are nonempty")
}

/// Base-vertex invariant: degree first (larger degree ranks earlier), then
/// the sorted neighbor degrees (larger first). Isomorphisms preserve it.
fn base_invariant(g: &ToGraph, w: SignWord) -> Vec<u8> {
    let n = g.width();
    let mut inv = vec![(n - g.degree(w)) as u8];
    let mut nbr: Vec<u8> = (0..n)
        .filter(|&e| g.contains(w.flip(e)))
        .map(|e| (n - g.degree(w.flip(e))) as u8)
        .collect();
    nbr.sort_unstable();
    inv.extend(nbr);
    inv
}

fn apply_perm(x: u32, perm: &[usize]) -> u32 {
    let mut out = 0u32;
    for (e, &p) in perm.iter().enumerate() {
        if x & (1 << e) != 0 {
            out |= 1 << p;
        }
    }
    out
}

/// Minimal word list over sign flips and coordinate permutations. The
/// comparison key is conceptually `(invariant of the base vertex, words)`,
/// so only bases achieving the minimal invariant are searched.
fn isomorphism_canonical(g: &ToGraph) -> Result<Vec<SignWord>> {
    let n = g.width();
    if n > MAX_ISO_WIDTH {
        return Err(Error::GuardExceeded {
            what: "isomorphism canonicalization width",
            limit: MAX_ISO_WIDTH,
            got: n,
        });
    }
    let invariants: Vec<Vec<u8>> = g.words().iter().map(|&w| base_invariant(g, w)).collect();
    let min_inv = invariants.iter().min().cloned().expect("nonempty");
    let mut best: Option<Vec<u32>> = None;
    let mut flipped = vec![0u32; g.len()];
    let mut cand = vec![0u32; g.len()];
    let mut perm: Vec<usize> = (0..n).collect();
    for (i, &m) in g.words().iter().enumerate() {
        if invariants[i] != min_inv {
            continue;
        }
        for (slot, &w) in flipped.iter_mut().zip(g.words()) {
            *slot = w.0 ^ m.0;
        }
        // Heap's algorithm over coordinate permutations
        let mut c = vec![0usize; n];
        let consider = |perm: &[usize], cand: &mut Vec<u32>, best: &mut Option<Vec<u32>>| {
            for (slot, &w) in cand.iter_mut().zip(flipped.iter()) {
                *slot = apply_perm(w, perm);
            }
            cand.sort_unstable();
            if best.as_ref().is_none_or(|b| *cand < *b) {
                *best = Some(cand.clone());
            }
        };
        consider(&perm, &mut cand, &mut best);
        let mut k = 0;
        while k < n {
            if c[k] < k {
                if k % 2 == 0 {
                    perm.swap(0, k);
                } else {
                    perm.swap(c[k], k);
                }
                consider(&perm, &mut cand, &mut best);
                c[k] += 1;
                k = 0;
            } else {
                c[k] = 0;
                k += 1;
            }
        }
        // restore identity for the next base
        perm.sort_unstable();
    }
    Ok(best
        .expect("at least one base in the minimal invariant class")
        .into_iter()
        .map(SignWord)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::mask;

    fn exhaustive_reorientation_equal(a: &ToGraph, b: &ToGraph) -> bool {
        if a.width() != b.width() {
            return false;
        }
        (0..=mask(a.width())).any(|m| {
            let mut fl: Vec<SignWord> = a.words().iter().map(|w| SignWord(w.0 ^ m)).collect();
            fl.sort_unstable();
            fl == b.words()
        })
    }

    fn exhaustive_iso_equal(a: &ToGraph, b: &ToGraph) -> bool {
        if a.width() != b.width() {
            return false;
        }
        let n = a.width();
        let mut perms: Vec<Vec<usize>> = Vec::new();
        let mut p: Vec<usize> = (0..n).collect();
        permute_rec(&mut p, 0, &mut perms);
        (0..=mask(n)).any(|m| {
            perms.iter().any(|perm| {
                let mut fl: Vec<SignWord> = a
                    .words()
                    .iter()
                    .map(|w| SignWord(apply_perm(w.0 ^ m, perm)))
                    .collect();
                fl.sort_unstable();
                fl == b.words()
            })
        })
    }

    fn permute_rec(p: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
        if k == p.len() {
            out.push(p.clone());
            return;
        }
        for i in k..p.len() {
            p.swap(k, i);
            permute_rec(p, k + 1, out);
            p.swap(k, i);
        }
    }

    fn p4_variants() -> (ToGraph, ToGraph) {
        // the same path crossing coordinates in a different order: related
        // by a permutation but by no sign flip
        let a = ToGraph::from_bits(3, &[0b000, 0b001, 0b011, 0b111]).unwrap();
        let b = ToGraph::from_bits(3, &[0b000, 0b010, 0b011, 0b111]).unwrap();
        (a, b)
    }

    #[test]
    fn flipped_cycles_share_reorientation_keys() {
        let a = ToGraph::even_cycle(3).unwrap();
        let bits: Vec<u32> = a.words().iter().map(|w| w.0 ^ 0b001).collect();
        let b = ToGraph::from_bits(3, &bits).unwrap();
        assert_ne!(
            canonical_key(&a, CanonLevel::Labeled).unwrap(),
            canonical_key(&b, CanonLevel::Labeled).unwrap()
        );
        assert_eq!(
            canonical_key(&a, CanonLevel::Reorientation).unwrap(),
            canonical_key(&b, CanonLevel::Reorientation).unwrap()
        );
        assert!(exhaustive_reorientation_equal(&a, &b));
    }

    #[test]
    fn permuted_paths_split_reorientation_but_share_isomorphism() {
        let (a, b) = p4_variants();
        assert!(!exhaustive_reorientation_equal(&a, &b));
        assert_ne!(
            canonical_key(&a, CanonLevel::Reorientation).unwrap(),
            canonical_key(&b, CanonLevel::Reorientation).unwrap()
        );
        assert!(exhaustive_iso_equal(&a, &b));
        assert_eq!(
            canonical_key(&a, CanonLevel::Isomorphism).unwrap(),
            canonical_key(&b, CanonLevel::Isomorphism).unwrap()
        );
    }

    #[test]
    fn key_equality_matches_exhaustive_search() {
        // a small zoo of width-3 graphs, some equivalent, some not
        let zoo: Vec<ToGraph> = vec![
            ToGraph::even_cycle(3).unwrap(),
            ToGraph::from_bits(3, &[0b000, 0b001, 0b010, 0b110, 0b111, 0b011]).unwrap(),
            ToGraph::from_bits(3, &[0b000, 0b001, 0b011, 0b111]).unwrap(),
            ToGraph::from_bits(3, &[0b000, 0b010, 0b011, 0b111]).unwrap(),
            ToGraph::from_bits(3, &[0b000, 0b001, 0b010, 0b100]).unwrap(),
            ToGraph::hypercube(3).unwrap(),
        ];
        for a in &zoo {
            for b in &zoo {
                assert_eq!(
                    canonical_key(a, CanonLevel::Reorientation).unwrap()
                        == canonical_key(b, CanonLevel::Reorientation).unwrap(),
                    exhaustive_reorientation_equal(a, b),
                    "reorientation disagreement on {a} vs {b}"
                );
                assert_eq!(
                    canonical_key(a, CanonLevel::Isomorphism).unwrap()
                        == canonical_key(b, CanonLevel::Isomorphism).unwrap(),
                    exhaustive_iso_equal(a, b),
                    "isomorphism disagreement on {a} vs {b}"
                );
            }
        }
    }

    #[test]
    fn canonicalization_is_idempotent() {
        for level in [
            CanonLevel::Labeled,
            CanonLevel::Reorientation,
            CanonLevel::Isomorphism,
        ] {
            let g = ToGraph::from_bits(3, &[0b000, 0b010, 0b011, 0b111]).unwrap();
            let c1 = canonical_graph(&g, level).unwrap();
            let c2 = canonical_graph(&c1, level).unwrap();
            assert_eq!(c1, c2, "level {level}");
        }
    }

    #[test]
    fn base_restriction_matches_unrestricted_search() {
        // oracle: recompute the isomorphism canonical form without the
        // invariant-class restriction by scanning every base vertex
        let zoo: Vec<ToGraph> = vec![
            ToGraph::even_cycle(3).unwrap(),
            ToGraph::from_bits(3, &[0b000, 0b001, 0b011, 0b111]).unwrap(),
            ToGraph::from_bits(3, &[0b000, 0b001, 0b010, 0b100, 0b101]).unwrap(),
            ToGraph::from_bits(4, &[0b0000, 0b0001, 0b0011, 0b0111, 0b1111, 0b0101]).unwrap(),
        ];
        for g in &zoo {
            let n = g.width();
            let mut perms: Vec<Vec<usize>> = Vec::new();
            let mut p: Vec<usize> = (0..n).collect();
            permute_rec(&mut p, 0, &mut perms);
            // unrestricted: same invariant-prefixed comparison, all bases
            let mut best: Option<(Vec<u8>, Vec<u32>)> = None;
            for &m in g.words() {
                let inv = base_invariant(g, m);
                for perm in &perms {
                    let mut cand: Vec<u32> = g
                        .words()
                        .iter()
                        .map(|w| apply_perm(w.0 ^ m.0, perm))
                        .collect();
                    cand.sort_unstable();
                    let full = (inv.clone(), cand);
                    if best.as_ref().is_none_or(|b| full < *b) {
                        best = Some(full);
                    }
                }
            }
            let expect: Vec<SignWord> = best.unwrap().1.into_iter().map(SignWord).collect();
            assert_eq!(
                canonical_words(g, CanonLevel::Isomorphism).unwrap(),
                expect,
                "on {g}"
            );
        }
    }

    #[test]
    fn digests_are_stable_hex() {
        let g = ToGraph::even_cycle(3).unwrap();
        let key = canonical_key(&g, CanonLevel::Isomorphism).unwrap();
        let d = key_digest(&key);
        assert_eq!(d.len(), 64);
        assert!(d.chars().all(|c| c.is_ascii_hexdigit()));
        assert_eq!(d, key_digest(&key), "digest is deterministic");
    }

    #[test]
    fn width_guard_on_isomorphism_search() {
        let g = ToGraph::from_bits(12, &[0, 1, 3]).unwrap();
        assert!(matches!(
            canonical_words(&g, CanonLevel::Isomorphism),
            Err(Error::GuardExceeded { .. })
        ));
    }
}
