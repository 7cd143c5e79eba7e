//! Pinned numeric tolerances.
//!
//! Every tolerance used by an audit or acceptance check lives here, with its
//! justification, so that no test or caller invents its own slack ad hoc.

/// Relative width at which norm bisections stop.
///
/// The public contract for norm values is 1e-12 relative; running the
/// internal bisection two decades tighter means that *pairs* of
/// independently computed norms (homogeneity, lattice monotonicity,
/// rescaling equivalence) still compare within 1e-12 without stacking error.
pub const NORM_BISECT_REL: f64 = 1e-14;

/// Relative width at which generalized-inverse bisections stop
/// (piecewise-linear inverses are exact and never bisect).
pub const INVERSE_BISECT_REL: f64 = 1e-13;

/// Hard iteration cap for bisection refinement loops (and for the
/// scale-aware bracket adjustments around a norm seed). A bracket of ratio
/// 2 refines below any of the relative widths above within 50 halvings, so
/// hitting the cap indicates a logic error rather than slow convergence.
/// Bracket-*escape* scans that start at magnitude 1 are not capped: they
/// may legitimately need ~1100 doublings/halvings to cross the f64 range,
/// and saturation at ∞ or 0 is their exit condition.
pub const BISECT_MAX_ITER: u32 = 200;

/// Relative agreement demanded of the three weak-supremum forms on finite
/// outcomes; on {0, ∞} outcomes they must agree exactly.
pub const FORM_AGREE_REL: f64 = 1e-9;

/// Residual |sup_t Φ(t)·μ(f/λ̂, t) − 1| allowed at the computed norm for
/// Y1 ∪ Y2 normalization.
pub const NORMALIZATION_RESIDUAL: f64 = 1e-9;

/// Relative slack for one-sided norm inequalities whose two sides are
/// computed by independent bisections: embeddings, quasi-triangle bound,
/// Luxemburg triangle bound, the ≤1 audit, and the Hölder product bound.
pub const NORM_INEQ_REL: f64 = 1e-9;

/// Relative slack for identities that hold exactly in real arithmetic and
/// only pick up rounding: positive homogeneity and lattice monotonicity.
pub const AXIOM_REL: f64 = 1e-12;

/// Relative slack granted to the witness lower bound
/// ‖hg‖ ≥ (1/C)·‖g‖·(1 − WITNESS_SLACK); the construction stacks a norm,
/// a pointwise inverse chain, and another norm.
pub const WITNESS_SLACK: f64 = 1e-6;

/// Pointwise slack for the witness audit Φ₂(C·h·g/‖g‖) ≥ G·(1 − ε):
/// absorbs only evaluation rounding, not bisection error (the constant
/// inflation below covers that).
pub const WITNESS_POINTWISE: f64 = 1e-9;

/// Inflation applied to a grid-estimated constant before it is used inside
/// a proof-device evaluation. A constant validated pointwise up to
/// (1 + 1e-9) plus f64 rounding cannot certify the device bound exactly;
/// C·(1 + DEVICE_INFLATION) still satisfies the same inequalities and makes
/// the device comparisons exact extended-real comparisons.
pub const DEVICE_INFLATION: f64 = 1e-8;

/// Relative slack when validating a constant against the inverse-product
/// inequality at an individual point u.
pub const CONSTANT_VALIDATE_REL: f64 = 1e-9;

/// Scale factor for the additive midpoint-convexity tolerance:
/// |violation| ≤ CONVEXITY_ABS · (1 + |Φ(s)| + |Φ(t)|).
pub const CONVEXITY_ABS: f64 = 1e-12;

/// Ratio above which a grid supremum of an inverse-product ratio is
/// reported as "unbounded on grid" rather than as a usable constant.
pub const CONSTANT_OVERFLOW: f64 = 1e15;

/// Maximum discrepancy tolerated by `equiv-check` (and its exit status).
pub const EQUIV_CHECK_REL: f64 = 1e-9;
