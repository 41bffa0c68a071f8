//! Exact and numerical machinery for half-space Macdonald measures and their
//! degenerations: the half-quadrant stochastic six-vertex model, half-line open
//! ASEP, and the Fredholm Pfaffians that describe their fluctuations.
//!
//! Modules build on each other bottom-up:
//! `partitions` → `symfunc` → `halfspace` / `lattice`, and
//! `pfaffian` → `kernels` → `asep`. The ASEP simulator itself is standalone;
//! it only reaches into `kernels` for the GOE distribution function that its
//! trend statistics compare against.
//!
//! With the default `parallel` feature the heavy loops run on rayon; without
//! it they run sequentially and produce the same numbers.

// `!(x > 0.0)` style guards are deliberate: they also reject NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod asep;
pub mod halfspace;
pub mod kernels;
pub mod lattice;
pub mod numeric;
pub mod par;
pub mod partitions;
pub mod pfaffian;
pub mod symfunc;

pub use num_complex::Complex64;
pub use partitions::Partition;
