//! Origamis (square-tiled surfaces) as pairs of permutations: genus, stratum,
//! translation groups, and explicit Hurwitz translation surfaces built from
//! groups generated by two elements whose commutator has order 2.
//!
//! Permutations compose left to right and points are 1-based in all text.

pub mod descriptor;
pub mod format;
pub mod group;
pub mod hurwitz;
pub mod origami;
pub mod perm;
pub mod render;
