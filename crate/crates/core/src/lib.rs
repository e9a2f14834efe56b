//! Exact computations with involutive knot Floer style chain complexes over F₂.
//!
//! The crate builds free chain complexes over `F₂[U,V]` and `F₂[U]`, equips
//! them with involutions, and decides (almost) local equivalence by solving
//! linear systems over F₂.
//!
//! * [`ring`]: Laurent polynomials and F₂ polynomial matrix entries.
//! * [`chain`]: graded complexes, cancellation, localized homology.
//! * [`involutive`]: ι_K- and ι-complexes, tensor products, duals, A₀.
//! * [`knots`]: torus knot polynomials, staircases, box complexes.
//! * [`equivalence`]: standard complexes and local map search.
//! * [`group`]: arithmetic on standard parameters.
//! * [`cli`]: the text format and the end-to-end pipeline.

pub mod chain;
pub mod cli;
pub mod equivalence;
mod error;
pub mod gf2;
pub mod group;
pub mod involutive;
pub mod knots;
mod linsys;
pub mod ring;

pub use error::{Error, Result};
