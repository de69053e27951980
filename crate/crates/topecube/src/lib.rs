//! Tope graphs of oriented matroids and their relatives, as partial cubes.
//!
//! This crate recognizes and manipulates classes of partial cubes that arise
//! as tope graphs of complexes of oriented matroids: it classifies a vertex
//! set in `{+,-}^n` (partial cube, COM, OM, AOM, lopsided, uniform, affine,
//! antipodal), enumerates faces and covectors, computes ranks, finds corners
//! and corner peelings, builds cocircuit graphs and tests Euclideanness,
//! explores mutation graphs of uniform oriented matroids, generates complete
//! catalogs up to isomorphism, and constructs tope graphs of exact rational
//! hyperplane arrangements.
//!
//! The [`ToGraph`] type is the hub: a sorted set of sign words with implicit
//! hypercube adjacency. Everything else is computed from it on demand.

pub mod error;
pub mod word;
pub mod graph;
pub mod topes;
pub mod covector;
pub mod faces;
pub mod canon;
pub mod catalog;
pub mod corners;
pub mod euclid;
pub mod generate;
pub mod mutation;
pub mod realizable;

pub use canon::{canonical_graph, canonical_key, key_digest, CanonLevel};
pub use catalog::{Catalog, Family, Manifest, CATALOG_SCHEMA};
pub use corners::{
    corner_peeling, find_any_corner, find_corners, is_hypercellular, min_degree_vs_rank,
    simplicial_vertices, theta_las_vergnas, verify_corner, verify_peeling, Corner, CornerSearch,
    DegreeRankReport, PeelStrategy, Peeling, PeelingSequence, ThetaLasVergnas,
    DEFAULT_CORNER_BUDGET,
};
pub use covector::CoVector;
pub use error::{Error, Result};
pub use euclid::{
    cocircuit_graph, general_position_extensions, is_euclidean_aom, is_euclidean_om, is_mandel,
    is_strictly_acyclic, orient, Acyclicity, CocircuitGraph, CoverPair, EdgeState, GpExpansions,
    Line, MandelReport, MandelVerdict, MixedOrientation, DEFAULT_MANDEL_LIMIT,
};
pub use faces::{classify, enumerate_faces, Classification, Face};
pub use generate::{
    brute_force_partial_cubes, expansions_of, filter_class, generate_antipodal,
    generate_partial_cubes, generate_uniform, isometric_cover_pairs, Predicate,
};
pub use graph::{PartialCubeCheck, Simplification, ThetaClass, ToGraph};
pub use realizable::{
    chamber_count_formula, classify_realizable, parse_arrangement, read_arrangement_file,
    realizable_corner_peeling, tope_graph_of, Arrangement, Constraint, Hyperplane,
};
pub use mutation::{
    build_mutation_graph, homomorphism_check, is_connected, mutation_graph_dot, mutations_of,
    Connectivity, MutationGraph,
};
pub use word::{SignWord, MAX_WIDTH};
