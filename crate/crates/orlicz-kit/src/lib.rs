//! Exact desk-scale calculus for Young functions and weak Orlicz quasi-norms
//! on finite atomic measure spaces.
//!
//! Everything in this crate operates on two kinds of objects:
//!
//! * **Young functions** Φ : [0, ∞] → [0, ∞] — increasing, vanishing and
//!   right-continuous at 0, convex where finite, left-continuous at the point
//!   `b(Φ)` where they become infinite. They are represented symbolically
//!   ([`young::YoungFunction`]) so evaluation, endpoints, generalized
//!   inverses and layer suprema are exact (piecewise-linear descriptors) or
//!   closed-form (the parametric families), never sampled.
//! * **Simple functions** on a finite atomic measure space
//!   ([`measure::SimpleFunction`]) — a weight and a nonnegative value per
//!   atom. Their distribution functions are finite step functions, so the
//!   weak quasi-norm supremum and the Luxemburg modular reduce to finite
//!   maxima/sums over the canonical layer form.
//!
//! On top of those, [`norms`] computes the Luxemburg norm and the weak
//! quasi-norm (three independently computed forms of the defining supremum,
//! used to cross-check each other), [`multipliers`] estimates the constants
//! coupling a triple (Φ₁, Φ₂, Φ₃) through the inverse-product inequalities,
//! verifies the generalized Hölder bound ‖fg‖ ≤ 4C‖f‖‖g‖ together with its
//! atomwise proof device, constructs the near-extremal multiplier witness,
//! and brackets the multiplier norm from both sides, and [`fuzz`] drives all
//! of it under a deterministic, seed-reproducible random campaign. The
//! `orlicz-kit` binary ([`cli`]) exposes each piece as a subcommand.
//!
//! Arithmetic on [0, ∞] is total and NaN-free via [`xreal::ExtReal`], with
//! the measure-theoretic convention ∞ · 0 = 0.
//!
//! # Quick example
//!
//! ```
//! use orlicz_kit::{young::YoungFunction, measure::{MeasureSpace, SimpleFunction}, norms};
//!
//! let phi = YoungFunction::power(2.0).unwrap();
//! let space = MeasureSpace::new(vec![4.0]).unwrap();
//! let f = SimpleFunction::new(space, vec![1.0]).unwrap();
//! let n = norms::weak_norm(&phi, &f).unwrap();
//! assert!((n.value - 2.0).abs() < 1e-12);
//! ```

#![forbid(unsafe_code)]

pub mod cli;
pub mod fuzz;
pub mod measure;
pub mod multipliers;
pub mod norms;
pub mod tol;
pub mod xreal;
pub mod young;
