//! Pointwise-multiplier analysis for triples of Young functions.
//!
//! Fix a triple (Φ1, Φ2, Φ3). Two pointwise constants on the inverses
//! govern everything here:
//!
//! ```text
//! upper:  Φ1⁻¹(u)·Φ3⁻¹(u) ≤ C↑·Φ2⁻¹(u)      for all u ≥ 0,
//! lower:  Φ2⁻¹(u) ≤ C↓·Φ1⁻¹(u)·Φ3⁻¹(u)      for all u ≥ 0.
//! ```
//!
//! The upper constant drives the Hölder-type bound
//! `‖fg‖_{wΦ2} ≤ 4·C↑·‖f‖_{wΦ1}·‖g‖_{wΦ3}` ([`holder_verify`] checks it,
//! together with the per-atom convexity device behind its proof). The lower
//! constant drives the converse: an explicit factor h with `‖h‖_{wΦ1} ≤ 1`
//! and `‖hg‖_{wΦ2} ≥ (1/C↓)·‖g‖_{wΦ3}` ([`witness`]; [`witness_y3`] routes
//! through a Y2 envelope when Φ2 or Φ3 jumps at a finite endpoint, paying a
//! factor δ per enveloped function). Together the two directions pin the
//! pointwise-multiplier norm
//!
//! ```text
//! M(g) = sup_{f ≠ 0} ‖fg‖_{wΦ2} / ‖f‖_{wΦ1}
//! ```
//!
//! between `(1/C↓)·‖g‖_{wΦ3}` and `4·C↑·‖g‖_{wΦ3}`; [`sandwich_audit`]
//! verifies the whole sandwich against a brute-force search
//! ([`pwm_bruteforce`]) on small spaces.
//!
//! Constants are estimated on a logarithmic u-grid with local argmax
//! refinement. A grid is only a grid: the audits re-validate the constants
//! at the exact u-values their inequality chains touch, raising them if the
//! grid undershot.

use serde::{Deserialize, Serialize};

use crate::measure::{MeasureError, SimpleFunction};
use crate::norms::{weak_norm, NormError};
use crate::tol;
use crate::young::{log_grid, YoungClass, YoungError, YoungFunction};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum MultiplierError {
    #[error(transparent)]
    Norm(#[from] NormError),
    #[error(transparent)]
    Measure(#[from] MeasureError),
    #[error(transparent)]
    Young(#[from] YoungError),
    #[error("{which} must be of class Y1 or Y2 here, got {class:?}")]
    UnsupportedClass {
        which: &'static str,
        class: YoungClass,
    },
    #[error("brute-force multiplier search is limited to {max} atoms, got {got}")]
    TooManyAtoms { max: usize, got: usize },
    #[error("grid spec: {0}")]
    BadGrid(String),
    #[error("witness construction degenerated: {0}")]
    Degenerate(String),
}

// ----- constants on a grid ---------------------------------------------------

/// Logarithmic u-grid for constant estimation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub lo: f64,
    pub hi: f64,
    pub points: usize,
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec {
            lo: 1e-9,
            hi: 1e9,
            points: 2001,
        }
    }
}

impl GridSpec {
    pub fn validate(&self) -> Result<(), MultiplierError> {
        if !(self.lo.is_finite() && self.lo > 0.0 && self.hi.is_finite() && self.hi > self.lo) {
            return Err(MultiplierError::BadGrid(format!(
                "need 0 < lo < hi < ∞, got [{}, {}]",
                self.lo, self.hi
            )));
        }
        if self.points < 2 {
            return Err(MultiplierError::BadGrid(format!(
                "need at least 2 points, got {}",
                self.points
            )));
        }
        Ok(())
    }

    pub fn values(&self) -> Vec<f64> {
        log_grid(self.lo, self.hi, self.points)
    }
}

/// Grid estimates of the two pointwise constants. `c_upper`/`c_lower` are
/// suprema over the grid (refined locally around the argmax); `*_unbounded`
/// flags a supremum that blew past [`tol::CONSTANT_OVERFLOW`], i.e. there
/// is no finite constant in that direction.
#[derive(Debug, Clone, Serialize)]
pub struct TripleConstant {
    pub c_upper: f64,
    pub argmax_upper: f64,
    pub upper_unbounded: bool,
    pub c_lower: f64,
    pub argmax_lower: f64,
    pub lower_unbounded: bool,
    pub grid: GridSpec,
}

fn inv3(
    phi1: &YoungFunction,
    phi2: &YoungFunction,
    phi3: &YoungFunction,
    u: f64,
) -> (f64, f64, f64) {
    (phi1.inverse_f(u), phi2.inverse_f(u), phi3.inverse_f(u))
}

/// `Φ1⁻¹(u)·Φ3⁻¹(u)/Φ2⁻¹(u)`, or `None` when the expression is 0/0.
pub fn upper_ratio_at(
    phi1: &YoungFunction,
    phi2: &YoungFunction,
    phi3: &YoungFunction,
    u: f64,
) -> Option<f64> {
    let (i1, i2, i3) = inv3(phi1, phi2, phi3, u);
    let num = i1 * i3;
    if num == 0.0 && i2 == 0.0 {
        return None;
    }
    Some(num / i2) // ∞ when i2 = 0 < num: genuinely unbounded direction
}

/// `Φ2⁻¹(u)/(Φ1⁻¹(u)·Φ3⁻¹(u))`, or `None` when the expression is 0/0.
pub fn lower_ratio_at(
    phi1: &YoungFunction,
    phi2: &YoungFunction,
    phi3: &YoungFunction,
    u: f64,
) -> Option<f64> {
    let (i1, i2, i3) = inv3(phi1, phi2, phi3, u);
    let den = i1 * i3;
    if den == 0.0 && i2 == 0.0 {
        return None;
    }
    Some(i2 / den)
}

/// The two ratio curves sampled on the grid, for plotting:
/// `(u, upper ratio, lower ratio)` with 0/0 points reported as NaN.
pub fn ratio_curve(
    phi1: &YoungFunction,
    phi2: &YoungFunction,
    phi3: &YoungFunction,
    grid: &GridSpec,
) -> Result<Vec<(f64, f64, f64)>, MultiplierError> {
    grid.validate()?;
    Ok(grid
        .values()
        .into_iter()
        .map(|u| {
            let up = upper_ratio_at(phi1, phi2, phi3, u).unwrap_or(f64::NAN);
            let lo = lower_ratio_at(phi1, phi2, phi3, u).unwrap_or(f64::NAN);
            (u, up, lo)
        })
        .collect())
}

struct DirectionEstimate {
    best: f64,
    argmax: f64,
    unbounded: bool,
}

fn estimate_direction(ratio: &dyn Fn(f64) -> Option<f64>, us: &[f64]) -> DirectionEstimate {
    let mut best = 0.0f64;
    let mut argmax = us[0];
    for &u in us {
        if let Some(r) = ratio(u) {
            if r > best {
                best = r;
                argmax = u;
            }
        }
    }
    // Local refinement: three passes of 33 points between the argmax's
    // grid neighbours.
    let idx = us.partition_point(|&u| u < argmax);
    let mut lo = us[idx.saturating_sub(1)];
    let mut hi = us[(idx + 1).min(us.len() - 1)];
    for _ in 0..3 {
        if !(lo > 0.0 && hi > lo) {
            break;
        }
        let fine = log_grid(lo, hi, 33);
        let mut k_best = 0usize;
        for (k, &u) in fine.iter().enumerate() {
            if let Some(r) = ratio(u) {
                if r > best {
                    best = r;
                    argmax = u;
                    k_best = k;
                }
            }
        }
        lo = fine[k_best.saturating_sub(1)];
        hi = fine[(k_best + 1).min(fine.len() - 1)];
    }
    DirectionEstimate {
        best,
        argmax,
        unbounded: !best.is_finite() || best > tol::CONSTANT_OVERFLOW,
    }
}

/// Estimates both pointwise constants of the triple over `grid`.
pub fn estimate_constants(
    phi1: &YoungFunction,
    phi2: &YoungFunction,
    phi3: &YoungFunction,
    grid: &GridSpec,
) -> Result<TripleConstant, MultiplierError> {
    grid.validate()?;
    let us = grid.values();
    let up = estimate_direction(&|u| upper_ratio_at(phi1, phi2, phi3, u), &us);
    let lo = estimate_direction(&|u| lower_ratio_at(phi1, phi2, phi3, u), &us);
    Ok(TripleConstant {
        c_upper: up.best,
        argmax_upper: up.argmax,
        upper_unbounded: up.unbounded,
        c_lower: lo.best,
        argmax_lower: lo.argmax,
        lower_unbounded: lo.unbounded,
        grid: *grid,
    })
}

impl TripleConstant {
    /// Raises a direction to cover the exact u-values an inequality chain
    /// needs, in case the grid undershot the supremum there.
    pub fn augment_upper_at(
        &mut self,
        phi1: &YoungFunction,
        phi2: &YoungFunction,
        phi3: &YoungFunction,
        us: &[f64],
    ) {
        for &u in us {
            if let Some(r) = upper_ratio_at(phi1, phi2, phi3, u) {
                if r > self.c_upper {
                    self.c_upper = r;
                    self.argmax_upper = u;
                }
            }
        }
        self.upper_unbounded =
            !self.c_upper.is_finite() || self.c_upper > tol::CONSTANT_OVERFLOW;
    }

    pub fn augment_lower_at(
        &mut self,
        phi1: &YoungFunction,
        phi2: &YoungFunction,
        phi3: &YoungFunction,
        us: &[f64],
    ) {
        for &u in us {
            if let Some(r) = lower_ratio_at(phi1, phi2, phi3, u) {
                if r > self.c_lower {
                    self.c_lower = r;
                    self.argmax_lower = u;
                }
            }
        }
        self.lower_unbounded =
            !self.c_lower.is_finite() || self.c_lower > tol::CONSTANT_OVERFLOW;
    }
}

// ----- Hölder verification -----------------------------------------------------

/// Outcome of [`holder_verify`]. `ok()` requires the claimed constant to
/// validate at every u the proof touches, the per-atom convexity device to
/// hold, and the final norm inequality to hold.
#[derive(Debug, Clone, Serialize)]
pub struct HolderReport {
    pub constant: f64,
    pub norm_f: f64,
    pub norm_g: f64,
    pub norm_fg: f64,
    pub bound: f64,
    pub constant_ok: bool,
    pub device_ok: bool,
    pub norm_ok: bool,
    pub failures: Vec<String>,
}

impl HolderReport {
    pub fn ok(&self) -> bool {
        self.constant_ok && self.device_ok && self.norm_ok
    }
}

/// Verifies `‖fg‖_{wΦ2} ≤ 4·c·‖f‖_{wΦ1}·‖g‖_{wΦ3}` for one concrete pair,
/// plus the two ingredients of its proof:
///
/// * the upper constant c validates at u_k = max(Φ1(F_k), Φ3(G_k)) for
///   every atom k (F = f/‖f‖, G = g/‖g‖) — at u_k = 0 this degenerates to
///   the product of zero-plateau edges, checked through the inverses at 0;
/// * the convexity device: Φ2 of the normalized product, deflated by
///   c·(1 + [`tol::DEVICE_INFLATION`]), is dominated atomwise by
///   Φ1(F_k) + Φ3(G_k) in the extended reals.
pub fn holder_verify(
    phi1: &YoungFunction,
    phi2: &YoungFunction,
    phi3: &YoungFunction,
    c: f64,
    f: &SimpleFunction,
    g: &SimpleFunction,
) -> Result<HolderReport, MultiplierError> {
    if f.space() != g.space() {
        return Err(MultiplierError::Measure(MeasureError::SpaceMismatch));
    }
    if !(c.is_finite() && c > 0.0) {
        return Err(MultiplierError::Degenerate(format!(
            "Hölder constant must be finite positive, got {c}"
        )));
    }
    let fg = f.pointwise_mul(g)?;
    let norm_f = weak_norm(phi1, f)?.value;
    let norm_g = weak_norm(phi3, g)?.value;
    let norm_fg = weak_norm(phi2, &fg)?.value;
    let bound = 4.0 * c * norm_f * norm_g;

    let mut failures = Vec::new();
    let mut constant_ok = true;
    let mut device_ok = true;

    if !f.is_zero() && !g.is_zero() {
        let scale_fg = c * (1.0 + tol::DEVICE_INFLATION) * norm_f * norm_g;
        for (k, (&fv, &gv)) in f.values().iter().zip(g.values()).enumerate() {
            let big_f = fv / norm_f;
            let big_g = gv / norm_g;
            let u1 = phi1.eval_f(big_f);
            let u3 = phi3.eval_f(big_g);
            let u = u1.max(u3);

            match u.to_finite() {
                Some(uf) => {
                    let (i1, i2, i3) = inv3(phi1, phi2, phi3, uf);
                    if i1 * i3 > c * i2 * (1.0 + tol::CONSTANT_VALIDATE_REL) {
                        constant_ok = false;
                        failures.push(format!(
                            "atom {k}: constant fails at u = {uf}: {} > {c}·{i2}",
                            i1 * i3
                        ));
                    }
                }
                None => {
                    // Φ1(F) + Φ3(G) = ∞ dominates anything: the device is
                    // trivially satisfied and no constant is consulted.
                }
            }

            let lhs = phi2.eval_f(fv * gv / scale_fg);
            let rhs = u1.add(u3);
            if lhs > rhs {
                device_ok = false;
                failures.push(format!(
                    "atom {k}: device fails: Φ2(fg/(c·‖f‖‖g‖)) = {lhs} > Φ1(F)+Φ3(G) = {rhs}"
                ));
            }
        }
    }

    let norm_ok = norm_fg <= bound * (1.0 + tol::NORM_INEQ_REL) || norm_fg == 0.0;
    if !norm_ok {
        failures.push(format!("norm bound fails: {norm_fg} > 4·{c}·{norm_f}·{norm_g}"));
    }

    Ok(HolderReport {
        constant: c,
        norm_f,
        norm_g,
        norm_fg,
        bound,
        constant_ok,
        device_ok,
        norm_ok,
        failures,
    })
}

// ----- witness construction ------------------------------------------------------

/// Outcome of [`witness`] / [`witness_y3`]: the explicit factor h and the
/// lower bound it certifies, `‖hg‖_{wΦ2} ≥ (factor/c)·‖g‖_{wΦ3}·(1 − slack)`
/// with factor 1 for the direct construction and δ per enveloped function
/// on the Y3 route.
#[derive(Debug, Clone, Serialize)]
pub struct WitnessReport {
    pub constant: f64,
    pub factor: f64,
    pub norm_g: f64,
    pub norm_h: f64,
    pub norm_hg: f64,
    pub lower_bound: f64,
    pub h: SimpleFunction,
    pub norm_h_ok: bool,
    pub lower_ok: bool,
    pub pointwise_ok: bool,
    pub failures: Vec<String>,
}

impl WitnessReport {
    pub fn ok(&self) -> bool {
        self.norm_h_ok && self.lower_ok && self.pointwise_ok
    }
}

fn require_ramp(which: &'static str, phi: &YoungFunction) -> Result<(), MultiplierError> {
    let class = phi.classify();
    if class.is_surjective_ramp() {
        Ok(())
    } else {
        Err(MultiplierError::UnsupportedClass { which, class })
    }
}

/// Builds the converse witness h = Φ1⁻¹ ∘ Φ3 ∘ (g/‖g‖) and checks the
/// three facts that make it work:
///
/// * `‖h‖_{wΦ1} ≤ 1` — each weak-sup term of h is dominated by one of g/‖g‖;
/// * pointwise, Φ2 applied to `c·(1+ε)·h·g/‖g‖` recovers at least
///   Φ3(g/‖g‖): this is where the lower constant and the exact inverse
///   identities enter;
/// * `‖hg‖_{wΦ2} ≥ (1/c)·‖g‖_{wΦ3}·(1 − slack)`.
///
/// Needs Φ2 and Φ3 of class Y1/Y2 (Φ1 is unrestricted): Φ3 so that the
/// normalized g realizes its criterion, Φ2 so that Φ2(Φ2⁻¹(u)) = u. For a
/// Y3 member use [`witness_y3`].
pub fn witness(
    phi1: &YoungFunction,
    phi2: &YoungFunction,
    phi3: &YoungFunction,
    c: f64,
    g: &SimpleFunction,
) -> Result<WitnessReport, MultiplierError> {
    require_ramp("Φ2", phi2)?;
    require_ramp("Φ3", phi3)?;
    if g.is_zero() {
        return Err(MultiplierError::Measure(MeasureError::ZeroFunction));
    }
    if !(c.is_finite() && c > 0.0) {
        return Err(MultiplierError::Degenerate(format!(
            "converse constant must be finite positive, got {c}"
        )));
    }

    let norm_g = weak_norm(phi3, g)?.value;
    let mut failures = Vec::new();

    // G_k is finite: feasibility of ‖g‖ keeps g/‖g‖ strictly inside the
    // finite ramp of Φ3 (class Y2 blows up before its endpoint).
    let mut big_g = Vec::with_capacity(g.values().len());
    for &gv in g.values() {
        match phi3.eval_f(gv / norm_g).to_finite() {
            Some(u) => big_g.push(u),
            None => {
                return Err(MultiplierError::Degenerate(format!(
                    "Φ3(g/‖g‖) is infinite at value {gv} despite ‖g‖ = {norm_g}"
                )))
            }
        }
    }

    if !big_g.iter().any(|&u| u > 0.0) {
        return Err(MultiplierError::Degenerate(
            "Φ3(g/‖g‖) vanished on every atom".into(),
        ));
    }

    // Validate the claimed constant at exactly the u's the chain uses.
    let mut constant_fail = false;
    for (k, &u) in big_g.iter().enumerate() {
        if u > 0.0 {
            let (i1, i2, i3) = inv3(phi1, phi2, phi3, u);
            if i2 > c * i1 * i3 * (1.0 + tol::CONSTANT_VALIDATE_REL) {
                constant_fail = true;
                failures.push(format!(
                    "atom {k}: lower constant fails at u = {u}: {i2} > {c}·{}",
                    i1 * i3
                ));
            }
        }
    }
    if constant_fail {
        return Err(MultiplierError::Degenerate(format!(
            "claimed constant {c} does not dominate Φ2⁻¹/(Φ1⁻¹·Φ3⁻¹) at the witness levels: {}",
            failures.join("; ")
        )));
    }

    let h_values: Vec<f64> = big_g
        .iter()
        .map(|&u| if u > 0.0 { phi1.inverse_f(u) } else { 0.0 })
        .collect();
    let h = SimpleFunction::new(g.space().clone(), h_values)?;
    let hg = h.pointwise_mul(g)?;

    let norm_h = weak_norm(phi1, &h)?.value;
    let norm_hg = weak_norm(phi2, &hg)?.value;
    let lower_bound = (1.0 / c) * norm_g * (1.0 - tol::WITNESS_SLACK);

    let norm_h_ok = norm_h <= 1.0 + tol::NORM_INEQ_REL;
    if !norm_h_ok {
        failures.push(format!("‖h‖ = {norm_h} exceeds 1"));
    }
    let lower_ok = norm_hg >= lower_bound;
    if !lower_ok {
        failures.push(format!("‖hg‖ = {norm_hg} misses the bound {lower_bound}"));
    }

    // Pointwise recovery: Φ2(c·(1+ε)·h·g/‖g‖) ≥ Φ3(g/‖g‖) on the support.
    let mut pointwise_ok = true;
    let inflate = c * (1.0 + tol::DEVICE_INFLATION);
    for (k, ((&hv, &gv), &u)) in h
        .values()
        .iter()
        .zip(g.values())
        .zip(&big_g)
        .enumerate()
    {
        if u > 0.0 {
            let lhs = phi2.eval_f(inflate * hv * gv / norm_g);
            let needed = u * (1.0 - tol::WITNESS_POINTWISE);
            if lhs.as_f64() < needed {
                pointwise_ok = false;
                failures.push(format!(
                    "atom {k}: Φ2(c·h·G) = {lhs} fails to recover {u}"
                ));
            }
        }
    }

    Ok(WitnessReport {
        constant: c,
        factor: 1.0,
        norm_g,
        norm_h,
        norm_hg,
        lower_bound,
        h,
        norm_h_ok,
        lower_ok,
        pointwise_ok,
        failures,
    })
}

/// Witness through Y2 envelopes, for triples where Φ2 and/or Φ3 jump at a
/// finite endpoint. Each enveloped function Ψ = Φ + Θ_δ satisfies
/// δ·Φ⁻¹ ≤ Ψ⁻¹ ≤ Φ⁻¹, so the inner construction runs on the Ψ-triple with
/// constant c/δ (one power of δ when Φ3 is enveloped) and the final bound
/// pays δ per enveloped function:
///
/// ```text
/// ‖hg‖_{wΦ2} ≥ (δ^e / c)·‖g‖_{wΦ3}·(1 − slack),   e = #enveloped ∈ {0, 1, 2}.
/// ```
///
/// With neither function in Y3 this is exactly [`witness`].
pub fn witness_y3(
    phi1: &YoungFunction,
    phi2: &YoungFunction,
    phi3: &YoungFunction,
    c: f64,
    g: &SimpleFunction,
    delta: f64,
) -> Result<WitnessReport, MultiplierError> {
    if !(delta > 0.0 && delta < 1.0) {
        return Err(MultiplierError::Young(YoungError::EnvelopeDelta(delta)));
    }
    let env2 = phi2.classify() == YoungClass::Y3;
    let env3 = phi3.classify() == YoungClass::Y3;
    if !env2 && !env3 {
        return witness(phi1, phi2, phi3, c, g);
    }

    let psi2 = if env2 { phi2.envelope_y2(delta)? } else { phi2.clone() };
    let psi3 = if env3 { phi3.envelope_y2(delta)? } else { phi3.clone() };
    // Ψ2⁻¹ ≤ Φ2⁻¹ ≤ c·Φ1⁻¹·Φ3⁻¹ ≤ (c/δ)·Φ1⁻¹·Ψ3⁻¹ when Φ3 is enveloped.
    let c_psi = if env3 { c / delta } else { c };

    let inner = witness(phi1, &psi2, &psi3, c_psi, g)?;

    let factor = match (env2, env3) {
        (true, true) => delta * delta,
        (false, false) => unreachable!("handled above"),
        _ => delta,
    };

    let norm_g = weak_norm(phi3, g)?.value;
    let hg = inner.h.pointwise_mul(g)?;
    let norm_hg = weak_norm(phi2, &hg)?.value;
    let lower_bound = (factor / c) * norm_g * (1.0 - tol::WITNESS_SLACK);

    let mut failures = inner.failures.clone();
    let lower_ok = norm_hg >= lower_bound;
    if !lower_ok {
        failures.push(format!(
            "enveloped route: ‖hg‖ = {norm_hg} misses the bound {lower_bound}"
        ));
    }

    Ok(WitnessReport {
        constant: c,
        factor,
        norm_g,
        norm_h: inner.norm_h,
        norm_hg,
        lower_bound,
        h: inner.h,
        norm_h_ok: inner.norm_h_ok,
        lower_ok,
        pointwise_ok: inner.pointwise_ok,
        failures,
    })
}

// ----- brute-force multiplier norm ------------------------------------------------

/// Hard cap on the space size for [`pwm_bruteforce`]: the seed set
/// enumerates all nonempty atom subsets.
pub const PWM_MAX_ATOMS: usize = 4;

const PWM_FACTORS: [f64; 8] = [4.0, 2.0, 1.5, 1.25, 0.8, 2.0 / 3.0, 0.5, 0.25];

/// Outcome of [`pwm_bruteforce`]: the best ratio found (a certified lower
/// bound for M(g)), the maximizing f, and how much of the evaluation
/// budget was spent.
#[derive(Debug, Clone, Serialize)]
pub struct PwmReport {
    pub best_ratio: f64,
    pub best: SimpleFunction,
    pub evaluations: usize,
    pub budget: usize,
}

fn pwm_ratio(
    phi1: &YoungFunction,
    phi2: &YoungFunction,
    g: &SimpleFunction,
    f: &SimpleFunction,
    budget: usize,
    evaluations: &mut usize,
) -> Result<Option<f64>, MultiplierError> {
    if *evaluations >= budget || f.is_zero() {
        return Ok(None);
    }
    *evaluations += 1;
    let nf = weak_norm(phi1, f)?.value;
    if nf == 0.0 {
        return Ok(None);
    }
    let nfg = weak_norm(phi2, &f.pointwise_mul(g)?)?.value;
    Ok(Some(nfg / nf))
}

/// Deterministic search for `M(g) = sup_f ‖fg‖_{wΦ2}/‖f‖_{wΦ1}` on spaces
/// of at most [`PWM_MAX_ATOMS`] atoms: the `extra_seeds` (e.g. a
/// constructed witness — evaluated first, so even a budget of 1 certifies
/// them) and every nonempty atom-subset indicator are refined by
/// coordinatewise multiplicative pattern search. `budget` caps the number
/// of ratio evaluations; the result is always a valid lower bound for M(g).
pub fn pwm_bruteforce(
    phi1: &YoungFunction,
    phi2: &YoungFunction,
    g: &SimpleFunction,
    budget: usize,
    extra_seeds: &[SimpleFunction],
) -> Result<PwmReport, MultiplierError> {
    let n = g.space().len();
    if n > PWM_MAX_ATOMS {
        return Err(MultiplierError::TooManyAtoms {
            max: PWM_MAX_ATOMS,
            got: n,
        });
    }
    if g.is_zero() {
        return Err(MultiplierError::Measure(MeasureError::ZeroFunction));
    }
    for seed in extra_seeds {
        if seed.space() != g.space() {
            return Err(MultiplierError::Measure(MeasureError::SpaceMismatch));
        }
    }

    let mut evaluations = 0usize;
    let mut best_ratio = 0.0f64;
    let mut best: Option<SimpleFunction> = None;

    let mut seeds: Vec<SimpleFunction> = extra_seeds.to_vec();
    for mask in 1u32..(1 << n) {
        let flags: Vec<bool> = (0..n).map(|k| mask & (1 << k) != 0).collect();
        seeds.push(SimpleFunction::indicator(g.space().clone(), &flags)?);
    }

    'seeds: for seed in &seeds {
        let Some(mut cur_ratio) = pwm_ratio(phi1, phi2, g, seed, budget, &mut evaluations)?
        else {
            if evaluations >= budget {
                break 'seeds;
            }
            continue;
        };
        let mut cur = seed.clone();
        if cur_ratio > best_ratio {
            best_ratio = cur_ratio;
            best = Some(cur.clone());
        }
        loop {
            let mut improved = false;
            for k in 0..n {
                if cur.values()[k] == 0.0 {
                    continue; // multiplicative moves keep zeros zero
                }
                for factor in PWM_FACTORS {
                    let mut vals = cur.values().to_vec();
                    vals[k] *= factor;
                    if !vals[k].is_finite() || vals[k] == 0.0 {
                        continue;
                    }
                    let cand = SimpleFunction::new(cur.space().clone(), vals)?;
                    match pwm_ratio(phi1, phi2, g, &cand, budget, &mut evaluations)? {
                        Some(r) if r > cur_ratio * (1.0 + 1e-12) => {
                            cur_ratio = r;
                            cur = cand;
                            improved = true;
                            if cur_ratio > best_ratio {
                                best_ratio = cur_ratio;
                                best = Some(cur.clone());
                            }
                        }
                        _ => {}
                    }
                    if evaluations >= budget {
                        break 'seeds;
                    }
                }
            }
            if !improved {
                break;
            }
        }
    }

    let best = best.ok_or_else(|| {
        MultiplierError::Degenerate("no seed produced a positive ratio".into())
    })?;
    Ok(PwmReport {
        best_ratio,
        best,
        evaluations,
        budget,
    })
}

// ----- the sandwich ------------------------------------------------------------------

/// Outcome of [`sandwich_audit`]: the estimated constants (raised at every
/// u the chains actually touch), the witness, the brute-force search, and
/// the two-sided verdict
///
/// ```text
/// (factor/C↓)·‖g‖·(1−ε) ≤ M̂(g) ≤ 4·C↑·‖g‖·(1+ε).
/// ```
#[derive(Debug, Clone, Serialize)]
pub struct SandwichReport {
    pub constants: TripleConstant,
    pub witness: WitnessReport,
    pub pwm: PwmReport,
    pub norm_g: f64,
    pub upper_bound: f64,
    pub lower_bound: f64,
    pub upper_ok: bool,
    pub lower_ok: bool,
}

impl SandwichReport {
    pub fn ok(&self) -> bool {
        self.upper_ok && self.lower_ok && self.witness.ok()
    }
}

/// Runs the full two-sided verification for one triple and one g: estimate
/// the constants, build the witness (through envelopes if Φ2/Φ3 demand
/// it), brute-force M(g) with the witness as a search seed, and check the
/// sandwich.
pub fn sandwich_audit(
    phi1: &YoungFunction,
    phi2: &YoungFunction,
    phi3: &YoungFunction,
    g: &SimpleFunction,
    grid: &GridSpec,
    budget: usize,
    delta: f64,
) -> Result<SandwichReport, MultiplierError> {
    let mut constants = estimate_constants(phi1, phi2, phi3, grid)?;
    let norm_g = weak_norm(phi3, g)?.value;
    if norm_g == 0.0 {
        return Err(MultiplierError::Measure(MeasureError::ZeroFunction));
    }

    // The witness consults the lower constant at u = Φ3(g/‖g‖) (or its
    // envelope counterpart): raise the estimate there first so a coarse
    // grid cannot fail the construction.
    let witness_levels: Vec<f64> = g
        .values()
        .iter()
        .filter_map(|&gv| phi3.eval_f(gv / norm_g).to_finite())
        .filter(|&u| u > 0.0)
        .collect();
    constants.augment_lower_at(phi1, phi2, phi3, &witness_levels);

    let ramp23 = phi2.classify().is_surjective_ramp() && phi3.classify().is_surjective_ramp();
    let wit = if ramp23 {
        witness(phi1, phi2, phi3, constants.c_lower, g)?
    } else {
        witness_y3(phi1, phi2, phi3, constants.c_lower, g, delta)?
    };

    let pwm = pwm_bruteforce(phi1, phi2, g, budget, std::slice::from_ref(&wit.h))?;

    // The Hölder chain for the best f touches u = max(Φ1(F), Φ3(G)).
    let norm_best = weak_norm(phi1, &pwm.best)?.value;
    let holder_levels: Vec<f64> = pwm
        .best
        .values()
        .iter()
        .zip(g.values())
        .filter_map(|(&fv, &gv)| {
            let u = phi1
                .eval_f(fv / norm_best)
                .max(phi3.eval_f(gv / norm_g));
            u.to_finite().filter(|&x| x > 0.0)
        })
        .collect();
    constants.augment_upper_at(phi1, phi2, phi3, &holder_levels);

    let upper_bound = 4.0 * constants.c_upper * norm_g * (1.0 + tol::WITNESS_SLACK);
    let lower_bound = (wit.factor / constants.c_lower) * norm_g * (1.0 - tol::WITNESS_SLACK);
    let upper_ok = constants.upper_unbounded || pwm.best_ratio <= upper_bound;
    let lower_ok = pwm.best_ratio >= lower_bound;

    Ok(SandwichReport {
        constants,
        witness: wit,
        pwm,
        norm_g,
        upper_bound,
        lower_bound,
        upper_ok,
        lower_ok,
    })
}

// ----- asymptotic examples ------------------------------------------------------------

/// One family's inverse compared against its closed-form asymptotic
/// surrogate: K is the worst two-sided ratio `max(r, 1/r)` on the grid;
/// `k_extended` recomputes it with the grid widened by two decades on each
/// side. Agreement of the two (relative change under 5%) certifies the
/// surrogate captures the asymptotics rather than a grid artifact.
#[derive(Debug, Clone, Serialize)]
pub struct AsymptoticsReport {
    pub label: String,
    pub k_base: f64,
    pub k_extended: f64,
    pub rel_change: f64,
    pub stable: bool,
    pub curve: Vec<(f64, f64)>,
}

fn equivalence_k(
    phi: &YoungFunction,
    surrogate: &dyn Fn(f64) -> f64,
    us: &[f64],
) -> (f64, Vec<(f64, f64)>) {
    let mut k = 1.0f64;
    let mut curve = Vec::with_capacity(us.len());
    for &u in us {
        let inv = phi.inverse_f(u);
        let sur = surrogate(u);
        let r = inv / sur;
        curve.push((u, r));
        k = k.max(r.max(1.0 / r));
    }
    (k, curve)
}

/// Built-in surrogate checks:
///
/// * Φ(t) = t^p·max(1, ln t)^q against s(u) = u^{1/p}·max(1, ln u)^{−q/p};
/// * Φ(t) = e^{t^p} − 1 against s(u) = u^{1/p} below u = 2 and
///   (ln u)^{1/p} above.
///
/// Both comparison ratios peak strictly inside [1e-6, 1e6] (near u ≈ e^e·p
/// for the first family, at the u = 2 splice for the second), which is why
/// widening the grid leaves K essentially unchanged.
pub fn example_asymptotics_audit(points: usize) -> Vec<AsymptoticsReport> {
    let params: [(f64, f64); 2] = [(2.0, 1.0), (3.0, 2.0)];
    let mut out = Vec::new();

    for (p, q) in params {
        let phi = YoungFunction::power_log(p, q).expect("valid exponents");
        let surrogate = move |u: f64| u.powf(1.0 / p) * u.ln().max(1.0).powf(-q / p);
        out.push(asymptotics_one(
            format!("t^{p}·(ln t)^{q}"),
            &phi,
            &surrogate,
            points,
        ));
    }
    for p in [1.0, 2.0] {
        let phi = YoungFunction::exp_power(p).expect("valid exponent");
        let surrogate = move |u: f64| {
            if u < 2.0 {
                u.powf(1.0 / p)
            } else {
                u.ln().powf(1.0 / p)
            }
        };
        out.push(asymptotics_one(
            format!("exp(t^{p})−1"),
            &phi,
            &surrogate,
            points,
        ));
    }
    out
}

fn asymptotics_one(
    label: String,
    phi: &YoungFunction,
    surrogate: &dyn Fn(f64) -> f64,
    points: usize,
) -> AsymptoticsReport {
    let base = log_grid(1e-6, 1e6, points.max(16));
    let wide = log_grid(1e-8, 1e8, points.max(16));
    let (k_base, curve) = equivalence_k(phi, surrogate, &base);
    let (k_extended, _) = equivalence_k(phi, surrogate, &wide);
    let rel_change = (k_extended - k_base).abs() / k_base;
    AsymptoticsReport {
        label,
        k_base,
        k_extended,
        rel_change,
        stable: rel_change < 0.05,
        curve,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measure::MeasureSpace;
    use crate::xreal::ExtReal;

    fn sf(weights: Vec<f64>, values: Vec<f64>) -> SimpleFunction {
        SimpleFunction::new(MeasureSpace::new(weights).unwrap(), values).unwrap()
    }

    fn powers(p1: f64, p2: f64, p3: f64) -> (YoungFunction, YoungFunction, YoungFunction) {
        (
            YoungFunction::power(p1).unwrap(),
            YoungFunction::power(p2).unwrap(),
            YoungFunction::power(p3).unwrap(),
        )
    }

    #[test]
    fn conjugate_power_triple_has_unit_constants() {
        // 1/2 + 1/2 = 1/1: the inverse ratio is u^0 = 1 everywhere.
        let (p1, p2, p3) = powers(2.0, 1.0, 2.0);
        let c = estimate_constants(&p1, &p2, &p3, &GridSpec::default()).unwrap();
        assert!((c.c_upper - 1.0).abs() <= 1e-13, "{c:?}");
        assert!((c.c_lower - 1.0).abs() <= 1e-13, "{c:?}");
        assert!(!c.upper_unbounded && !c.lower_unbounded);

        // 1/4 + 1/4 = 1/2 as well.
        let (p1, p2, p3) = powers(4.0, 2.0, 4.0);
        let c = estimate_constants(&p1, &p2, &p3, &GridSpec::default()).unwrap();
        assert!((c.c_upper - 1.0).abs() <= 1e-13, "{c:?}");
        assert!((c.c_lower - 1.0).abs() <= 1e-13, "{c:?}");
    }

    #[test]
    fn mismatched_power_triple_peaks_at_the_grid_edge() {
        // 1/2 + 1/2 > 1/2: the upper ratio is u^{1/2}, supremum at the top
        // of any grid — the argmax landing on the boundary is the caller's
        // signal that no finite constant exists in that direction.
        let (p1, p2, p3) = powers(2.0, 2.0, 2.0);
        let c = estimate_constants(&p1, &p2, &p3, &GridSpec::default()).unwrap();
        assert_eq!(c.argmax_upper, 1e9, "{c:?}");
        assert!((c.c_upper - 1e9f64.sqrt()).abs() < 1e-6, "{c:?}");
        // Mirror image downward: u^{-1/2} peaks at the bottom edge.
        assert_eq!(c.argmax_lower, 1e-9, "{c:?}");
        assert!(!c.upper_unbounded && !c.lower_unbounded);
    }

    #[test]
    fn bounded_inverse_makes_the_upper_direction_overflow() {
        // Φ2⁻¹ is capped at b = 2 while Φ1⁻¹·Φ3⁻¹ = u² grows: the ratio
        // passes the overflow threshold well inside the default grid.
        let hyper = YoungFunction::piecewise_linear(
            vec![(0.0, 0.0), (1.0, 1.0)],
            crate::young::Tail::FiniteB {
                b: 2.0,
                phi_at_b: ExtReal::INF,
            },
        )
        .unwrap();
        let p1 = YoungFunction::power(1.0).unwrap();
        let c = estimate_constants(&p1, &hyper, &p1, &GridSpec::default()).unwrap();
        assert!(c.upper_unbounded, "{c:?}");
        assert!(!c.lower_unbounded, "{c:?}");
    }

    #[test]
    fn ratio_curve_matches_pointwise_helpers() {
        let (p1, p2, p3) = powers(2.0, 1.0, 2.0);
        let grid = GridSpec { lo: 1e-3, hi: 1e3, points: 7 };
        let curve = ratio_curve(&p1, &p2, &p3, &grid).unwrap();
        assert_eq!(curve.len(), 7);
        for (u, up, lo) in curve {
            assert_eq!(Some(up), upper_ratio_at(&p1, &p2, &p3, u));
            assert_eq!(Some(lo), lower_ratio_at(&p1, &p2, &p3, u));
        }
    }

    #[test]
    fn witness_on_an_indicator_recovers_the_textbook_numbers() {
        // Φ1 = Φ3 = t², Φ2 = t, g = χ_A with μ(A) = 4:
        // ‖g‖ = 2, G = 1/4, h = 1/2, ‖h‖ = 1, ‖hg‖ = 2 = (1/c)·‖g‖ at c = 1.
        let (p1, p2, p3) = powers(2.0, 1.0, 2.0);
        let g = sf(vec![4.0], vec![1.0]);
        let rep = witness(&p1, &p2, &p3, 1.0, &g).unwrap();
        assert!((rep.norm_g - 2.0).abs() < 1e-12, "{rep:?}");
        assert!((rep.h.values()[0] - 0.5).abs() < 1e-12, "{rep:?}");
        assert!((rep.norm_h - 1.0).abs() < 1e-12, "{rep:?}");
        assert!((rep.norm_hg - 2.0).abs() < 1e-12, "{rep:?}");
        assert!(rep.ok(), "{:?}", rep.failures);
    }

    #[test]
    fn witness_rejects_an_undersized_constant() {
        let (p1, p2, p3) = powers(2.0, 1.0, 2.0);
        let g = sf(vec![4.0], vec![1.0]);
        // The true lower constant is 1; claiming 0.5 must be caught.
        assert!(matches!(
            witness(&p1, &p2, &p3, 0.5, &g),
            Err(MultiplierError::Degenerate(_))
        ));
    }

    #[test]
    fn witness_requires_ramp_classes_downstream() {
        let linf = YoungFunction::linf_indicator();
        let p2 = YoungFunction::power(2.0).unwrap();
        let g = sf(vec![1.0], vec![1.0]);
        assert!(matches!(
            witness(&p2, &linf, &p2, 1.0, &g),
            Err(MultiplierError::UnsupportedClass { which: "Φ2", .. })
        ));
        assert!(matches!(
            witness(&p2, &p2, &linf, 1.0, &g),
            Err(MultiplierError::UnsupportedClass { which: "Φ3", .. })
        ));
    }

    #[test]
    fn holder_verify_on_the_witness_pair() {
        let (p1, p2, p3) = powers(2.0, 1.0, 2.0);
        let g = sf(vec![4.0], vec![1.0]);
        let f = sf(vec![4.0], vec![0.5]);
        let rep = holder_verify(&p1, &p2, &p3, 1.0, &f, &g).unwrap();
        assert!(rep.ok(), "{:?}", rep.failures);
        // ‖fg‖ = 2 against the bound 4·1·1·2 = 8.
        assert!((rep.norm_fg - 2.0).abs() < 1e-12);
        assert!((rep.bound - 8.0).abs() < 1e-11);
    }

    #[test]
    fn holder_verify_flags_a_false_constant() {
        // Deliberately undersized c: the pointwise validation must fail
        // even though the (slack) norm inequality may survive.
        let (p1, p2, p3) = powers(2.0, 1.0, 2.0);
        let g = sf(vec![4.0], vec![1.0]);
        let f = sf(vec![4.0], vec![0.5]);
        let rep = holder_verify(&p1, &p2, &p3, 0.25, &f, &g).unwrap();
        assert!(!rep.constant_ok, "{rep:?}");
    }

    #[test]
    fn holder_verify_handles_zero_functions() {
        let (p1, p2, p3) = powers(2.0, 1.0, 2.0);
        let z = sf(vec![1.0, 1.0], vec![0.0, 0.0]);
        let g = sf(vec![1.0, 1.0], vec![1.0, 2.0]);
        let rep = holder_verify(&p1, &p2, &p3, 1.0, &z, &g).unwrap();
        assert!(rep.ok());
        assert_eq!(rep.norm_fg, 0.0);
    }

    #[test]
    fn y3_witness_bound_grows_with_delta() {
        // Φ2 = Φ3 = the L∞ indicator (both Y3), Φ1 = L∞ as well: the
        // multiplier norm of g is ‖g‖_∞ and the envelope route certifies
        // δ²·‖g‖.
        let linf = YoungFunction::linf_indicator();
        let g = sf(vec![1.0, 2.0], vec![3.0, 1.0]);
        let mut last = 0.0;
        for delta in [0.25, 0.5, 0.9] {
            let rep = witness_y3(&linf, &linf, &linf, 1.0, &g, delta).unwrap();
            assert!(rep.ok(), "δ = {delta}: {:?}", rep.failures);
            assert!((rep.factor - delta * delta).abs() < 1e-15);
            assert!(rep.lower_bound > last, "bound must grow with δ");
            last = rep.lower_bound;
            // ‖hg‖ under the true Φ2 easily clears the δ²-discounted bound.
            assert!(rep.norm_hg >= rep.lower_bound);
        }
    }

    #[test]
    fn y3_witness_delegates_when_no_envelope_is_needed() {
        let (p1, p2, p3) = powers(2.0, 1.0, 2.0);
        let g = sf(vec![4.0], vec![1.0]);
        let rep = witness_y3(&p1, &p2, &p3, 1.0, &g, 0.5).unwrap();
        assert_eq!(rep.factor, 1.0);
        assert!(rep.ok());
    }

    #[test]
    fn pwm_search_is_deterministic_and_beats_its_seeds() {
        let (p1, p2, _) = powers(2.0, 1.0, 2.0);
        let g = sf(vec![1.0, 2.0, 0.5], vec![1.0, 0.25, 2.0]);
        let a = pwm_bruteforce(&p1, &p2, &g, 600, &[]).unwrap();
        let b = pwm_bruteforce(&p1, &p2, &g, 600, &[]).unwrap();
        assert_eq!(a.best_ratio, b.best_ratio);
        assert_eq!(a.best, b.best);
        assert_eq!(a.evaluations, b.evaluations);
        assert!(a.evaluations <= 600);
        assert!(a.best_ratio > 0.0);

        // Explicit seeds run first, so they lower-bound the result even
        // under a budget of one evaluation.
        let seed = sf(vec![1.0, 2.0, 0.5], vec![0.3, 0.7, 1.1]);
        let nf = weak_norm(&p1, &seed).unwrap().value;
        let nfg = weak_norm(&p2, &seed.pointwise_mul(&g).unwrap())
            .unwrap()
            .value;
        let with_seed = pwm_bruteforce(&p1, &p2, &g, 1, std::slice::from_ref(&seed)).unwrap();
        assert!(with_seed.best_ratio >= nfg / nf * (1.0 - 1e-12));
        assert_eq!(with_seed.evaluations, 1);
    }

    #[test]
    fn pwm_rejects_oversized_spaces() {
        let (p1, p2, _) = powers(2.0, 1.0, 2.0);
        let g = sf(vec![1.0; 5], vec![1.0; 5]);
        assert!(matches!(
            pwm_bruteforce(&p1, &p2, &g, 100, &[]),
            Err(MultiplierError::TooManyAtoms { max: 4, got: 5 })
        ));
    }

    #[test]
    fn sandwich_holds_for_a_conjugate_power_triple() {
        let (p1, p2, p3) = powers(2.0, 1.0, 2.0);
        let g = sf(vec![1.0, 3.0], vec![2.0, 0.5]);
        let rep = sandwich_audit(&p1, &p2, &p3, &g, &GridSpec::default(), 800, 0.9).unwrap();
        assert!(rep.ok(), "{rep:?}");
        assert!(rep.lower_bound <= rep.pwm.best_ratio);
        assert!(rep.pwm.best_ratio <= rep.upper_bound);
    }

    #[test]
    fn sandwich_holds_on_an_indicator_triple() {
        let linf = YoungFunction::linf_indicator();
        let g = sf(vec![2.0, 1.0], vec![1.5, 0.75]);
        let rep =
            sandwich_audit(&linf, &linf, &linf, &g, &GridSpec::default(), 400, 0.9).unwrap();
        assert!(rep.ok(), "{rep:?}");
        // M(g) = ‖g‖_∞ here; the δ = 0.9 route certifies 81% of it.
        assert!((rep.norm_g - 1.5).abs() < 1e-12);
        assert!(rep.pwm.best_ratio >= 1.5 * 0.81 * (1.0 - 1e-6));
    }

    #[test]
    fn asymptotic_surrogates_are_stable_under_grid_extension() {
        let reports = example_asymptotics_audit(301);
        assert_eq!(reports.len(), 4);
        for rep in &reports {
            assert!(rep.stable, "{}: {rep:?}", rep.label);
            assert!(rep.k_base >= 1.0);
            assert!(rep.k_base.is_finite());
            assert_eq!(rep.curve.len(), 301);
        }
        // exp(t¹)−1 has the exact inverse ln(1+u): below u = 2 the
        // surrogate is u, so the ratio is ln(1+u)/u ≤ 1 with equality at 0.
        let ep = &reports[2];
        assert!(ep.label.contains("exp"));
        let (u0, r0) = ep.curve[0];
        assert!(u0 == 1e-6 && (r0 - 1.0).abs() < 1e-5, "{:?}", ep.curve[0]);
    }
}
