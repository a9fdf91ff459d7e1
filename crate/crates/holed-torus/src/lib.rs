//! Calculus of positive Dehn-twist factorizations on a genus-1 surface
//! with boundary.
//!
//! The crate models mapping classes of a holed torus through their action
//! on the fundamental groupoid, supports Hurwitz moves on factorizations
//! of boundary multi-twists, and ships a catalog of verified relations
//! together with replayable derivation scripts.

#![forbid(unsafe_code)]

pub mod braid;
pub mod catalog;
pub mod hurwitz;
pub mod mcg;
pub mod surface_model;
