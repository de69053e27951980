//! Persistent on-disk catalogs of generated populations.
//!
//! Generation is expensive and incremental by nature: dimension `n` is built
//! from dimension `n - 1`, antipodal classes from affine parents one
//! dimension down, uniform classes by single-element extension chains. A
//! [`Catalog`] pins those populations to a directory tree so every later run
//! — filters, mutation graphs, acceptance sweeps — reloads them instead of
//! recomputing.
//!
//! Layout under the catalog root:
//!
//! ```text
//! n=<k>/<digest>.topes              complete population, isometric dimension k
//! antipodal/n=<k>/<digest>.topes    antipodal classes of dimension k
//! uniform/n=<k>/r=<r>/<digest>.topes  uniform classes on k elements of rank r
//! ```
//!
//! Every class is stored once, as its canonical representative, in a file
//! named by the digest of its canonical key — the file names *are* the
//! deduplication set, so an interrupted run resumes by listing the
//! directory. A directory gains a `manifest.json` (schema, counts per label
//! and per rank) only when its population is complete; while generation is
//! running a `progress.json` checkpoint records how many parents have been
//! expanded.

use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{de::DeserializeOwned, Deserialize, Serialize};

use crate::canon::{canonical_graph, canonical_key, key_digest, CanonLevel};
use crate::error::{Error, Result};
use crate::faces::classify;
use crate::generate::{
    affine_double, expansions_of, uniform_extensions, MAX_ANTIPODAL_DIM, MAX_GENERATE_DIM,
};
use crate::graph::ToGraph;
use crate::topes::{read_topes_file, write_topes_file};

/// Version stamp carried by every manifest and checkpoint.
pub const CATALOG_SCHEMA: u32 = 1;

/// Parents expanded between two checkpoint writes.
const CHUNK: usize = 64;

/// One population a catalog can hold.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    /// Every class of the given isometric dimension.
    Cubes { n: usize },
    /// The antipodal classes of the given isometric dimension.
    Antipodal { n: usize },
    /// The uniform classes on `n` elements of rank `r`.
    Uniform { n: usize, r: usize },
}

impl Family {
    /// Directory of this population, relative to the catalog root.
    fn key(&self) -> String {
        match self {
            Family::Cubes { n } => format!("n={n}"),
            Family::Antipodal { n } => format!("antipodal/n={n}"),
            Family::Uniform { n, r } => format!("uniform/n={n}/r={r}"),
        }
    }

    fn name(&self) -> &'static str {
        match self {
            Family::Cubes { .. } => "cubes",
            Family::Antipodal { .. } => "antipodal",
            Family::Uniform { .. } => "uniform",
        }
    }

    /// Isometric dimension of the population's members.
    pub fn n(&self) -> usize {
        match *self {
            Family::Cubes { n } | Family::Antipodal { n } | Family::Uniform { n, .. } => n,
        }
    }

    /// Rank, for the families that fix one.
    pub fn rank(&self) -> Option<usize> {
        match *self {
            Family::Uniform { r, .. } => Some(r),
            _ => None,
        }
    }

    /// The same argument and size guards the in-memory generators apply.
    fn check(&self) -> Result<()> {
        match *self {
            Family::Cubes { n } => {
                if n == 0 {
                    return Err(Error::InvalidArgument(
                        "catalog dimension must be at least one".into(),
                    ));
                }
                if n > MAX_GENERATE_DIM {
                    return Err(Error::GuardExceeded {
                        what: "catalog dimension",
                        limit: MAX_GENERATE_DIM,
                        got: n,
                    });
                }
            }
            Family::Antipodal { n } => {
                if n == 0 {
                    return Err(Error::InvalidArgument(
                        "catalog dimension must be at least one".into(),
                    ));
                }
                if n > MAX_ANTIPODAL_DIM {
                    return Err(Error::GuardExceeded {
                        what: "antipodal catalog dimension",
                        limit: MAX_ANTIPODAL_DIM,
                        got: n,
                    });
                }
            }
            Family::Uniform { n, r } => {
                if r < 2 || r > n {
                    return Err(Error::InvalidArgument(format!(
                        "uniform catalogs need 2 <= rank <= dimension, got rank {r} on {n}"
                    )));
                }
                if n > MAX_ANTIPODAL_DIM {
                    return Err(Error::GuardExceeded {
                        what: "uniform catalog dimension",
                        limit: MAX_ANTIPODAL_DIM,
                        got: n,
                    });
                }
            }
        }
        Ok(())
    }
}

impl std::fmt::Display for Family {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.key())
    }
}

/// Summary written next to the class files once a population is complete.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Manifest {
    /// Catalog format version; see [`CATALOG_SCHEMA`].
    pub schema: u32,
    /// Family name: `cubes`, `antipodal`, or `uniform`.
    pub family: String,
    /// Isometric dimension of every stored class.
    pub n: usize,
    /// Rank, present only for uniform populations.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rank: Option<usize>,
    /// Whether the population is finished. Manifests are only written on
    /// completion, so this is `true` in practice; partial runs leave a
    /// `progress.json` checkpoint instead.
    pub complete: bool,
    /// Number of stored classes.
    pub count: usize,
    /// Classes per label (`partial-cube`, `antipodal`, `COM`, ...).
    pub labels: BTreeMap<String, usize>,
    /// Classes per rank, keyed by the decimal rank.
    pub ranks: BTreeMap<String, usize>,
}

/// Checkpoint for an interrupted generation run.
#[derive(Debug, Serialize, Deserialize)]
struct ProgressFile {
    schema: u32,
    parents_done: usize,
}

/// A directory tree holding generated populations.
#[derive(Debug, Clone)]
pub struct Catalog {
    root: PathBuf,
}

impl Catalog {
    /// Open the catalog rooted at the given directory. The directory need
    /// not exist yet; generation creates it on demand.
    pub fn at(root: impl Into<PathBuf>) -> Catalog {
        Catalog { root: root.into() }
    }

    /// The root directory.
    pub fn root(&self) -> &Path {
        &self.root
    }

    fn dir_of(&self, family: Family) -> PathBuf {
        self.root.join(family.key())
    }

    /// The manifest of a complete population, if one has been written.
    pub fn manifest(&self, family: Family) -> Result<Option<Manifest>> {
        family.check()?;
        Ok(read_json::<Manifest>(&self.dir_of(family).join("manifest.json"))
            .filter(|m| m.complete && m.schema == CATALOG_SCHEMA))
    }

    /// Load a complete population, sorted by canonical digest.
    pub fn load(&self, family: Family) -> Result<Vec<ToGraph>> {
        let manifest = self.manifest(family)?.ok_or_else(|| {
            Error::CatalogIo(format!(
                "no complete catalog for {family} under {}; generate it first",
                self.root.display()
            ))
        })?;
        let dir = self.dir_of(family);
        let files = list_topes(&dir)?;
        if files.len() != manifest.count {
            return Err(Error::CatalogIo(format!(
                "catalog {} holds {} class files but its manifest says {}; \
                 delete the directory and regenerate it",
                dir.display(),
                files.len(),
                manifest.count
            )));
        }
        let graphs: Vec<ToGraph> = files
            .par_iter()
            .map(|p| read_topes_file(p))
            .collect::<Result<_>>()?;
        for g in &graphs {
            if g.width() != family.n() {
                return Err(Error::CatalogIo(format!(
                    "catalog {} contains a class of width {}, expected {}",
                    dir.display(),
                    g.width(),
                    family.n()
                )));
            }
        }
        Ok(graphs)
    }

    /// Make a population available, generating whatever is missing.
    ///
    /// Complete populations are reused as-is. With `resume` set, an
    /// interrupted run continues from its checkpoint; without it the
    /// population's parents are re-expanded from the start (already written
    /// classes are kept — deduplication makes the rerun idempotent).
    pub fn ensure(&self, family: Family, resume: bool) -> Result<Manifest> {
        match family {
            Family::Cubes { n } => self.ensure_cubes(n, resume),
            Family::Antipodal { n } => self.ensure_antipodal(n, resume),
            Family::Uniform { n, r } => self.ensure_uniform(n, r, resume),
        }
    }

    /// The complete population of isometric dimension `n`, built by
    /// isometric expansion of the dimension `n - 1` population.
    pub fn ensure_cubes(&self, n: usize, resume: bool) -> Result<Manifest> {
        let family = Family::Cubes { n };
        family.check()?;
        if let Some(m) = self.manifest(family)? {
            return Ok(m);
        }
        if n == 1 {
            return self.populate(family, &[ToGraph::edge()], resume, |g| Ok(vec![g.clone()]));
        }
        let parents = self.parents(Family::Cubes { n: n - 1 }, resume)?;
        self.populate(family, &parents, resume, expansions_of)
    }

    /// The antipodal classes of dimension `n`, built by doubling the affine
    /// classes of dimension `n - 1`.
    pub fn ensure_antipodal(&self, n: usize, resume: bool) -> Result<Manifest> {
        let family = Family::Antipodal { n };
        family.check()?;
        if let Some(m) = self.manifest(family)? {
            return Ok(m);
        }
        if n == 1 {
            return self.populate(family, &[ToGraph::edge()], resume, |g| Ok(vec![g.clone()]));
        }
        let parents = self.parents(Family::Cubes { n: n - 1 }, resume)?;
        self.populate(family, &parents, resume, |g| {
            Ok(affine_double(g)?.into_iter().collect())
        })
    }

    /// The uniform classes on `n` elements of rank `r`, chained up from the
    /// rank-`r` hypercube by general-position extensions.
    pub fn ensure_uniform(&self, n: usize, r: usize, resume: bool) -> Result<Manifest> {
        let family = Family::Uniform { n, r };
        family.check()?;
        if let Some(m) = self.manifest(family)? {
            return Ok(m);
        }
        if n == r {
            let base = ToGraph::hypercube(r)?;
            return self.populate(family, &[base], resume, |g| Ok(vec![g.clone()]));
        }
        let parents = self.parents(Family::Uniform { n: n - 1, r }, resume)?;
        self.populate(family, &parents, resume, uniform_extensions)
    }

    /// Ensure a population exists, then load it.
    fn parents(&self, family: Family, resume: bool) -> Result<Vec<ToGraph>> {
        self.ensure(family, resume)?;
        self.load(family)
    }

    /// Expand `parents` through `step`, merging children into the family
    /// directory, then write the manifest. The deduplication set is seeded
    /// from the files already present, so reruns and resumed runs never
    /// store a class twice.
    fn populate<F>(
        &self,
        family: Family,
        parents: &[ToGraph],
        resume: bool,
        step: F,
    ) -> Result<Manifest>
    where
        F: Fn(&ToGraph) -> Result<Vec<ToGraph>> + Sync,
    {
        let dir = self.dir_of(family);
        fs::create_dir_all(&dir).map_err(|e| io_err(&dir, "create", e))?;
        let mut seen: BTreeSet<String> = list_topes(&dir)?
            .iter()
            .filter_map(|p| p.file_stem().and_then(|s| s.to_str()).map(String::from))
            .collect();
        let progress_path = dir.join("progress.json");
        let mut done = if resume {
            read_json::<ProgressFile>(&progress_path)
                .filter(|p| p.schema == CATALOG_SCHEMA)
                .map(|p| p.parents_done.min(parents.len()))
                .unwrap_or(0)
        } else {
            0
        };
        while done < parents.len() {
            let upper = (done + CHUNK).min(parents.len());
            let batches: Vec<Vec<ToGraph>> = parents[done..upper]
                .par_iter()
                .map(&step)
                .collect::<Result<_>>()?;
            for child in batches.into_iter().flatten() {
                let key = canonical_key(&child, CanonLevel::Isomorphism)?;
                let digest = key_digest(&key);
                if seen.insert(digest.clone()) {
                    let canon = canonical_graph(&child, CanonLevel::Isomorphism)?;
                    write_topes_file(&dir.join(format!("{digest}.topes")), &canon)?;
                }
            }
            done = upper;
            write_json(
                &progress_path,
                &ProgressFile {
                    schema: CATALOG_SCHEMA,
                    parents_done: done,
                },
            )?;
        }
        let manifest = finalize(family, &dir)?;
        let _ = fs::remove_file(&progress_path);
        Ok(manifest)
    }
}

/// Classify every stored class and write the manifest.
fn finalize(family: Family, dir: &Path) -> Result<Manifest> {
    let files = list_topes(dir)?;
    let graphs: Vec<ToGraph> = files
        .par_iter()
        .map(|p| read_topes_file(p))
        .collect::<Result<_>>()?;
    let infos: Vec<(Vec<&'static str>, usize)> = graphs
        .par_iter()
        .map(|g| classify(g).map(|c| (c.labels(), g.rank())))
        .collect::<Result<_>>()?;
    let mut labels: BTreeMap<String, usize> = BTreeMap::new();
    let mut ranks: BTreeMap<String, usize> = BTreeMap::new();
    for (class_labels, rank) in infos {
        for label in class_labels {
            *labels.entry(label.to_string()).or_default() += 1;
        }
        *ranks.entry(rank.to_string()).or_default() += 1;
    }
    let manifest = Manifest {
        schema: CATALOG_SCHEMA,
        family: family.name().to_string(),
        n: family.n(),
        rank: family.rank(),
        complete: true,
        count: graphs.len(),
        labels,
        ranks,
    };
    write_json(&dir.join("manifest.json"), &manifest)?;
    Ok(manifest)
}

/// The `.topes` files of a directory, sorted by name. Missing directories
/// list as empty.
fn list_topes(dir: &Path) -> Result<Vec<PathBuf>> {
    let entries = match fs::read_dir(dir) {
        Ok(entries) => entries,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(Vec::new()),
        Err(e) => return Err(io_err(dir, "list", e)),
    };
    let mut out = Vec::new();
    for entry in entries {
        let path = entry.map_err(|e| io_err(dir, "list", e))?.path();
        if path.extension().and_then(|s| s.to_str()) == Some("topes") {
            out.push(path);
        }
    }
    out.sort();
    Ok(out)
}

/// Read a JSON file, treating a missing or unreadable file as absent.
fn read_json<T: DeserializeOwned>(path: &Path) -> Option<T> {
    let text = fs::read_to_string(path).ok()?;
    serde_json::from_str(&text).ok()
}

/// Write a JSON file through a rename so a crash never leaves a torn file.
fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let text = serde_json::to_string_pretty(value)
        .map_err(|e| Error::CatalogIo(format!("encode {}: {e}", path.display())))?;
    let tmp = path.with_extension("tmp");
    fs::write(&tmp, text).map_err(|e| io_err(&tmp, "write", e))?;
    fs::rename(&tmp, path).map_err(|e| io_err(path, "replace", e))?;
    Ok(())
}

fn io_err(path: &Path, what: &str, e: std::io::Error) -> Error {
    Error::CatalogIo(format!("{what} {}: {e}", path.display()))
}
