//! Browser bindings for the Young-function toolkit.
//!
//! Three operations are exported, each taking JSON descriptor strings and
//! returning a JSON payload (`{"ok":true,…}` on success, `{"ok":false,
//! "error":…}` otherwise), so the page needs nothing beyond `JSON.parse`:
//!
//! * [`young_profile`] — evaluation and generalized-inverse curves of one
//!   descriptor, plus its class and endpoints, for plotting.
//! * [`norm_report`] — weak quasi-norm and Luxemburg norm of a simple
//!   function, with the three weak-supremum routes shown side by side.
//! * [`holder_report`] — the product-constant estimate for a triple, the
//!   ratio curves, and the verdict of the product-norm inequality
//!   ‖fg‖ ≤ 4C‖f‖‖g‖ on a concrete pair.
//!
//! Infinities are encoded as JSON `null` (charts treat them as gaps). The
//! functions are plain `fn(&str, …) -> String` on native targets, so the
//! tests below run under `cargo test` without a wasm runtime.

use orlicz_kit::measure::SimpleFunction;
use orlicz_kit::multipliers::{estimate_constants, holder_verify, ratio_curve, GridSpec};
use orlicz_kit::norms::{lux_norm, weak_norm, weak_sup_form1, weak_sup_form2, weak_sup_form3};
use orlicz_kit::xreal::ExtReal;
use orlicz_kit::young::YoungFunction;
use serde_json::{json, Value};
use wasm_bindgen::prelude::wasm_bindgen;

fn fail(e: impl std::fmt::Display) -> String {
    json!({"ok": false, "error": e.to_string()}).to_string()
}

/// `Number` for finite values, `null` for ∞ (and for NaN grid gaps).
fn num_or_null(v: f64) -> Value {
    if v.is_finite() {
        json!(v)
    } else {
        Value::Null
    }
}

fn ext_or_null(v: ExtReal) -> Value {
    num_or_null(v.as_f64())
}

/// Curves of Φ and Φ⁻¹ for one descriptor.
///
/// `descriptor` is the usual JSON form (`{"family":"power","p":2}`, a
/// piecewise-linear table, …). Φ is sampled on `points` evenly spaced
/// arguments in [0, t_max], Φ⁻¹ on [0, u_max].
#[wasm_bindgen]
pub fn young_profile(descriptor: &str, t_max: f64, u_max: f64, points: usize) -> String {
    let phi = match YoungFunction::from_json(descriptor) {
        Ok(p) => p,
        Err(e) => return fail(e),
    };
    if !(t_max > 0.0 && t_max.is_finite() && u_max > 0.0 && u_max.is_finite()) {
        return fail("t_max and u_max must be positive finite numbers");
    }
    let n = points.clamp(2, 4096);
    let (a, b) = phi.endpoints();
    let sample = |top: f64, f: &dyn Fn(f64) -> ExtReal| -> Vec<Value> {
        (0..n)
            .map(|i| {
                let x = top * i as f64 / (n - 1) as f64;
                json!([x, ext_or_null(f(x))])
            })
            .collect()
    };
    let curve = sample(t_max, &|t| phi.evaluate(ExtReal::new(t).unwrap()));
    let inverse = sample(u_max, &|u| phi.inverse(ExtReal::new(u).unwrap()));
    json!({
        "ok": true,
        "class": format!("{:?}", phi.classify()),
        "a": a,
        "b": ext_or_null(b),
        "curve": curve,
        "inverse": inverse,
    })
    .to_string()
}

/// Both norms of a simple function, plus the three weak-supremum routes
/// evaluated on the function as given (λ = 1).
#[wasm_bindgen]
pub fn norm_report(phi: &str, f: &str) -> String {
    let phi = match YoungFunction::from_json(phi) {
        Ok(p) => p,
        Err(e) => return fail(e),
    };
    let f = match SimpleFunction::from_json(f) {
        Ok(f) => f,
        Err(e) => return fail(e),
    };
    let weak = match weak_norm(&phi, &f) {
        Ok(n) => n,
        Err(e) => return fail(e),
    };
    let lux = match lux_norm(&phi, &f) {
        Ok(n) => n,
        Err(e) => return fail(e),
    };
    let forms = if f.is_zero() {
        json!([0.0, 0.0, 0.0])
    } else {
        let layers = match f.canonicalize() {
            Ok(l) => l,
            Err(e) => return fail(e),
        };
        json!([
            ext_or_null(weak_sup_form1(&phi, &layers)),
            ext_or_null(weak_sup_form2(&phi, &layers)),
            ext_or_null(weak_sup_form3(&phi, &f)),
        ])
    };
    json!({
        "ok": true,
        "class": format!("{:?}", phi.classify()),
        "weak": serde_json::to_value(&weak).unwrap(),
        "lux": serde_json::to_value(&lux).unwrap(),
        "sup_forms": forms,
    })
    .to_string()
}

/// Product-constant estimate for (Φ₁, Φ₂, Φ₃) and the verdict of
/// ‖fg‖ ≤ 4C‖f‖‖g‖ on the given pair.
///
/// The constant is estimated on a log grid over [1e-6, 1e6] with `points`
/// samples and then raised at the exact levels the normalized pair touches
/// (including level 0: a plateau mismatch there means no finite constant
/// exists, which is reported as `constant: null`).
#[wasm_bindgen]
pub fn holder_report(phi1: &str, phi2: &str, phi3: &str, f: &str, g: &str, points: usize) -> String {
    let parse = |s: &str| YoungFunction::from_json(s);
    let (phi1, phi2, phi3) = match (parse(phi1), parse(phi2), parse(phi3)) {
        (Ok(a), Ok(b), Ok(c)) => (a, b, c),
        (Err(e), _, _) | (_, Err(e), _) | (_, _, Err(e)) => return fail(e),
    };
    let f = match SimpleFunction::from_json(f) {
        Ok(f) => f,
        Err(e) => return fail(e),
    };
    let g = match SimpleFunction::from_json(g) {
        Ok(g) => g,
        Err(e) => return fail(e),
    };
    let grid = GridSpec {
        lo: 1e-6,
        hi: 1e6,
        points: points.clamp(9, 4096),
    };
    let mut constants = match estimate_constants(&phi1, &phi2, &phi3, &grid) {
        Ok(c) => c,
        Err(e) => return fail(e),
    };
    let curve: Vec<Value> = match ratio_curve(&phi1, &phi2, &phi3, &grid) {
        Ok(c) => c
            .into_iter()
            .map(|(u, up, lo)| json!([u, num_or_null(up), num_or_null(lo)]))
            .collect(),
        Err(e) => return fail(e),
    };

    let (nf, ng) = match (weak_norm(&phi1, &f), weak_norm(&phi3, &g)) {
        (Ok(a), Ok(b)) => (a.value, b.value),
        (Err(e), _) | (_, Err(e)) => return fail(e),
    };
    if nf > 0.0 && ng > 0.0 {
        let level = |phi: &YoungFunction, v: f64, n: f64| {
            phi.evaluate(ExtReal::new(v / n).unwrap())
        };
        let levels: Vec<f64> = f
            .values()
            .iter()
            .zip(g.values())
            .filter_map(|(&fv, &gv)| {
                level(&phi1, fv, nf).max(level(&phi3, gv, ng)).to_finite()
            })
            .collect();
        constants.augment_upper_at(&phi1, &phi2, &phi3, &levels);
    }

    if !constants.c_upper.is_finite() || constants.c_upper == 0.0 {
        return json!({
            "ok": true,
            "constant": Value::Null,
            "verified": Value::Null,
            "reason": "no finite product constant at the levels this pair touches",
            "ratio_curve": curve,
        })
        .to_string();
    }

    let rep = match holder_verify(&phi1, &phi2, &phi3, constants.c_upper, &f, &g) {
        Ok(r) => r,
        Err(e) => return fail(e),
    };
    json!({
        "ok": true,
        "constant": rep.constant,
        "argmax": constants.argmax_upper,
        "norm_f": rep.norm_f,
        "norm_g": rep.norm_g,
        "norm_fg": rep.norm_fg,
        "bound": rep.bound,
        "verified": rep.ok(),
        "failures": rep.failures,
        "ratio_curve": curve,
    })
    .to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: String) -> Value {
        serde_json::from_str(&s).expect("payloads are valid JSON")
    }

    #[test]
    fn profile_reports_class_endpoints_and_gaps() {
        let v = parse(young_profile(
            r#"{"family":"linf"}"#,
            2.0,
            5.0,
            5,
        ));
        assert_eq!(v["ok"], true);
        assert_eq!(v["class"], "Y3");
        assert_eq!(v["b"], 1.0);
        // Φ = 0 up to 1, then the samples past b show as null gaps.
        assert_eq!(v["curve"][0], json!([0.0, 0.0]));
        assert_eq!(v["curve"][4], json!([2.0, Value::Null]));
        // Φ⁻¹ ≡ 1 for every positive finite level.
        assert_eq!(v["inverse"][4], json!([5.0, 1.0]));
    }

    #[test]
    fn profile_rejects_bad_descriptors_and_ranges() {
        let v = parse(young_profile(r#"{"family":"power","p":0.5}"#, 1.0, 1.0, 9));
        assert_eq!(v["ok"], false);
        let v = parse(young_profile(r#"{"family":"power","p":2}"#, -1.0, 1.0, 9));
        assert_eq!(v["ok"], false);
    }

    #[test]
    fn norms_match_the_library_exactly() {
        let phi = r#"{"family":"power","p":2}"#;
        let f = r#"{"atoms":[{"weight":4.0,"value":1.0}]}"#;
        let v = parse(norm_report(phi, f));
        assert_eq!(v["ok"], true);
        assert_eq!(v["weak"]["value"], 2.0);
        assert_eq!(v["lux"]["value"], 2.0);
        // Weak supremum of the unscaled function is Φ(1)·4 = 4. The
        // layer-cake and pushforward routes are exact; the inverse-only
        // route is bisected and lands within its documented 1e-9.
        assert_eq!(v["sup_forms"][0], 4.0);
        assert_eq!(v["sup_forms"][2], 4.0);
        let s2 = v["sup_forms"][1].as_f64().unwrap();
        assert!((s2 - 4.0).abs() <= 4.0 * 1e-9, "{s2}");
    }

    #[test]
    fn holder_verifies_a_conjugate_power_triple() {
        let f = r#"{"atoms":[{"weight":1.0,"value":2.0},{"weight":0.5,"value":0.25}]}"#;
        let g = r#"{"atoms":[{"weight":1.0,"value":0.5},{"weight":0.5,"value":3.0}]}"#;
        let v = parse(holder_report(
            r#"{"family":"power","p":2}"#,
            r#"{"family":"power","p":1}"#,
            r#"{"family":"power","p":2}"#,
            f,
            g,
            201,
        ));
        assert_eq!(v["ok"], true, "{v}");
        assert_eq!(v["verified"], true, "{v}");
        // Conjugate powers satisfy Φ1⁻¹·Φ3⁻¹ = Φ2⁻¹ exactly: C = 1.
        let c = v["constant"].as_f64().unwrap();
        assert!((c - 1.0).abs() < 1e-9, "constant {c}");
        assert_eq!(v["ratio_curve"].as_array().unwrap().len(), 201);
    }

    #[test]
    fn holder_reports_plateau_mismatch_as_unbounded() {
        // Φ1 and Φ3 sit flat on [0,1] while Φ2 does not. The small atom
        // lands strictly inside both plateaus after normalization (the big
        // atom pins the norms), so the pair touches level 0, where the
        // product of inverses is positive but Φ2⁻¹(0) = 0 — no finite
        // constant serves the inequality there.
        let flat = r#"{"family":"pl","breakpoints":[[0,0],[1,0],[2,1]],"tail":{"slope":1}}"#;
        let f = r#"{"atoms":[{"weight":1.0,"value":2.0},{"weight":1.0,"value":0.1}]}"#;
        let v = parse(holder_report(
            flat,
            r#"{"family":"power","p":1}"#,
            flat,
            f,
            f,
            101,
        ));
        assert_eq!(v["ok"], true, "{v}");
        assert_eq!(v["constant"], Value::Null, "{v}");
        assert!(v["reason"].as_str().unwrap().contains("no finite"), "{v}");
    }
}
