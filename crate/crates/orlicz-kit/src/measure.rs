//! Finite atomic measure spaces and nonnegative simple functions.
//!
//! A space is a finite list of atoms with positive finite weights; a simple
//! function assigns a nonnegative finite value to each atom. Everything the
//! norm machinery consumes is the *canonical layer form*: the distinct
//! nonzero values `c_1 < … < c_N` together with the tail masses
//! `T_j = μ{f ≥ c_j}`, which determine f up to rearrangement.

use serde::{Deserialize, Serialize};

/// Rejected spaces, functions, and parse failures.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum MeasureError {
    #[error("a measure space needs at least one atom")]
    EmptySpace,
    #[error("atom weight {value} at index {index} must be finite and > 0")]
    BadWeight { index: usize, value: f64 },
    #[error("value {value} at index {index} must be finite and ≥ 0")]
    BadValue { index: usize, value: f64 },
    #[error("{values} values for {weights} atoms")]
    LengthMismatch { weights: usize, values: usize },
    #[error("operands live on different measure spaces")]
    SpaceMismatch,
    #[error("the zero function has no canonical layers")]
    ZeroFunction,
    #[error("simple-function input: {0}")]
    Parse(String),
}

/// A finite atomic measure space: atom weights `μ({k}) = w_k > 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasureSpace {
    weights: Vec<f64>,
}

impl MeasureSpace {
    pub fn new(weights: Vec<f64>) -> Result<Self, MeasureError> {
        if weights.is_empty() {
            return Err(MeasureError::EmptySpace);
        }
        for (index, &value) in weights.iter().enumerate() {
            if !(value.is_finite() && value > 0.0) {
                return Err(MeasureError::BadWeight { index, value });
            }
        }
        Ok(MeasureSpace { weights })
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        false // validated at construction: at least one atom
    }

    pub fn total_mass(&self) -> f64 {
        self.weights.iter().sum()
    }
}

/// Canonical layer form of a nonzero simple function: strictly increasing
/// positive `levels` `c_1 < … < c_N` and the strictly decreasing tail
/// masses `tails[j] = μ{f ≥ levels[j]} > 0`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LayerForm {
    pub levels: Vec<f64>,
    pub tails: Vec<f64>,
}

impl LayerForm {
    pub fn len(&self) -> usize {
        self.levels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.levels.is_empty()
    }

    /// Layers of f/λ: levels divide, tail masses are untouched.
    pub fn scaled(&self, lambda: f64) -> LayerForm {
        debug_assert!(lambda.is_finite() && lambda > 0.0);
        LayerForm {
            levels: self.levels.iter().map(|c| c / lambda).collect(),
            tails: self.tails.clone(),
        }
    }

    /// Top level `c_N = max f`.
    pub fn max_level(&self) -> f64 {
        *self.levels.last().expect("layer form is nonempty")
    }
}

/// A nonnegative simple function `f = Σ_k values[k]·χ_{atom k}`.
///
/// Serializes as `{"atoms":[{"weight":…,"value":…},…]}`; deserializing
/// runs the same validation as the constructors.
#[derive(Debug, Clone, PartialEq)]
pub struct SimpleFunction {
    space: MeasureSpace,
    values: Vec<f64>,
}

impl Serialize for SimpleFunction {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.to_repr().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for SimpleFunction {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = SimpleFnRepr::deserialize(deserializer)?;
        SimpleFunction::from_repr(repr).map_err(serde::de::Error::custom)
    }
}

#[derive(Serialize, Deserialize)]
struct AtomRepr {
    weight: f64,
    value: f64,
}

#[derive(Serialize, Deserialize)]
struct SimpleFnRepr {
    atoms: Vec<AtomRepr>,
}

impl SimpleFunction {
    pub fn new(space: MeasureSpace, values: Vec<f64>) -> Result<Self, MeasureError> {
        if values.len() != space.len() {
            return Err(MeasureError::LengthMismatch {
                weights: space.len(),
                values: values.len(),
            });
        }
        for (index, &value) in values.iter().enumerate() {
            if !(value.is_finite() && value >= 0.0) {
                return Err(MeasureError::BadValue { index, value });
            }
        }
        Ok(SimpleFunction { space, values })
    }

    /// χ_A for the atom subset selected by `mask`.
    pub fn indicator(space: MeasureSpace, mask: &[bool]) -> Result<Self, MeasureError> {
        if mask.len() != space.len() {
            return Err(MeasureError::LengthMismatch {
                weights: space.len(),
                values: mask.len(),
            });
        }
        let values = mask.iter().map(|&m| if m { 1.0 } else { 0.0 }).collect();
        Ok(SimpleFunction { space, values })
    }

    pub fn space(&self) -> &MeasureSpace {
        &self.space
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0.0)
    }

    pub fn max_value(&self) -> f64 {
        self.values.iter().copied().fold(0.0, f64::max)
    }

    /// μ{f > λ}.
    pub fn mass_above(&self, lambda: f64) -> f64 {
        self.values
            .iter()
            .zip(&self.space.weights)
            .filter(|(&v, _)| v > lambda)
            .map(|(_, &w)| w)
            .sum()
    }

    /// μ{f ≥ λ}.
    pub fn mass_at_least(&self, lambda: f64) -> f64 {
        self.values
            .iter()
            .zip(&self.space.weights)
            .filter(|(&v, _)| v >= lambda)
            .map(|(_, &w)| w)
            .sum()
    }

    /// Canonical layer form; the zero function has none.
    pub fn canonicalize(&self) -> Result<LayerForm, MeasureError> {
        let mut levels: Vec<f64> = self.values.iter().copied().filter(|&v| v > 0.0).collect();
        if levels.is_empty() {
            return Err(MeasureError::ZeroFunction);
        }
        levels.sort_by(f64::total_cmp);
        levels.dedup();
        let tails = levels.iter().map(|&c| self.mass_at_least(c)).collect();
        Ok(LayerForm { levels, tails })
    }

    /// α·f for a finite α ≥ 0.
    pub fn scale(&self, alpha: f64) -> Result<SimpleFunction, MeasureError> {
        if !(alpha.is_finite() && alpha >= 0.0) {
            return Err(MeasureError::BadValue { index: 0, value: alpha });
        }
        SimpleFunction::new(
            self.space.clone(),
            self.values.iter().map(|v| v * alpha).collect(),
        )
    }

    fn zip_same_space(
        &self,
        other: &SimpleFunction,
        op: impl Fn(f64, f64) -> f64,
    ) -> Result<SimpleFunction, MeasureError> {
        if self.space != other.space {
            return Err(MeasureError::SpaceMismatch);
        }
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(&a, &b)| op(a, b))
            .collect();
        SimpleFunction::new(self.space.clone(), values)
    }

    /// Pointwise product f·g (`SpaceMismatch` unless the spaces agree).
    pub fn pointwise_mul(&self, other: &SimpleFunction) -> Result<SimpleFunction, MeasureError> {
        self.zip_same_space(other, |a, b| a * b)
    }

    /// Pointwise sum f + g.
    pub fn pointwise_add(&self, other: &SimpleFunction) -> Result<SimpleFunction, MeasureError> {
        self.zip_same_space(other, |a, b| a + b)
    }

    /// Pointwise lattice meet f ∧ g.
    pub fn pointwise_min(&self, other: &SimpleFunction) -> Result<SimpleFunction, MeasureError> {
        self.zip_same_space(other, f64::min)
    }

    /// Pointwise lattice join f ∨ g.
    pub fn pointwise_max(&self, other: &SimpleFunction) -> Result<SimpleFunction, MeasureError> {
        self.zip_same_space(other, f64::max)
    }

    /// Distribution masses `μ{(j/steps)·f > threshold}` for the monotone
    /// ramp `f_j = (j/steps)·f ↑ f`. The sequence must be nondecreasing and
    /// finish at `μ{f > threshold}` — the atomic picture of monotone
    /// convergence that the norm-level checks build on.
    pub fn monotone_limit_audit(&self, steps: usize, threshold: f64) -> MonotoneLimitReport {
        let masses: Vec<f64> = (1..=steps)
            .map(|j| {
                let frac = j as f64 / steps as f64;
                self.values
                    .iter()
                    .zip(&self.space.weights)
                    .filter(|(&v, _)| frac * v > threshold)
                    .map(|(_, &w)| w)
                    .sum()
            })
            .collect();
        let nondecreasing = masses.windows(2).all(|w| w[0] <= w[1]);
        let attains_limit = masses
            .last()
            .is_some_and(|&m| m == self.mass_above(threshold));
        MonotoneLimitReport {
            masses,
            nondecreasing,
            attains_limit,
        }
    }

    // ----- I/O ----------------------------------------------------------

    /// Parses `{"atoms":[{"weight":…,"value":…},…]}`.
    pub fn from_json(s: &str) -> Result<Self, MeasureError> {
        let repr: SimpleFnRepr =
            serde_json::from_str(s).map_err(|e| MeasureError::Parse(e.to_string()))?;
        Self::from_repr(repr)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_repr()).expect("simple function serializes")
    }

    /// Parses `weight,value` CSV rows. A first line that does not parse as
    /// two numbers is treated as a header and skipped.
    pub fn from_csv(s: &str) -> Result<Self, MeasureError> {
        let mut atoms = Vec::new();
        let mut seen_rows = false;
        for (i, raw) in s.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() {
                continue;
            }
            let mut parts = line.split(',').map(str::trim);
            let parsed = (|| {
                let weight: f64 = parts.next()?.parse().ok()?;
                let value: f64 = parts.next()?.parse().ok()?;
                if parts.next().is_some() {
                    return None;
                }
                Some(AtomRepr { weight, value })
            })();
            match parsed {
                Some(atom) => atoms.push(atom),
                None if !seen_rows => {} // header row
                None => {
                    return Err(MeasureError::Parse(format!(
                        "line {}: expected `weight,value`, got `{raw}`",
                        i + 1
                    )))
                }
            }
            seen_rows = true;
        }
        Self::from_repr(SimpleFnRepr { atoms })
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("weight,value\n");
        for (w, v) in self.space.weights.iter().zip(&self.values) {
            out.push_str(&format!("{w},{v}\n"));
        }
        out
    }

    fn from_repr(repr: SimpleFnRepr) -> Result<Self, MeasureError> {
        if repr.atoms.is_empty() {
            return Err(MeasureError::EmptySpace);
        }
        let space = MeasureSpace::new(repr.atoms.iter().map(|a| a.weight).collect())?;
        SimpleFunction::new(space, repr.atoms.iter().map(|a| a.value).collect())
    }

    fn to_repr(&self) -> SimpleFnRepr {
        SimpleFnRepr {
            atoms: self
                .space
                .weights
                .iter()
                .zip(&self.values)
                .map(|(&weight, &value)| AtomRepr { weight, value })
                .collect(),
        }
    }
}

/// Outcome of [`SimpleFunction::monotone_limit_audit`].
#[derive(Debug, Clone, Serialize)]
pub struct MonotoneLimitReport {
    pub masses: Vec<f64>,
    pub nondecreasing: bool,
    pub attains_limit: bool,
}

impl MonotoneLimitReport {
    pub fn all_ok(&self) -> bool {
        self.nondecreasing && self.attains_limit
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(weights: Vec<f64>, values: Vec<f64>) -> SimpleFunction {
        SimpleFunction::new(MeasureSpace::new(weights).unwrap(), values).unwrap()
    }

    #[test]
    fn canonical_layers_merge_equal_values() {
        let layers = f(vec![1.0, 1.0, 1.0], vec![2.0, 1.0, 2.0])
            .canonicalize()
            .unwrap();
        assert_eq!(layers.levels, vec![1.0, 2.0]);
        assert_eq!(layers.tails, vec![3.0, 2.0]);
        assert_eq!(layers.max_level(), 2.0);
    }

    #[test]
    fn zero_values_drop_out_of_the_layers() {
        let layers = f(vec![2.0, 3.0, 5.0], vec![0.0, 4.0, 0.0])
            .canonicalize()
            .unwrap();
        assert_eq!(layers.levels, vec![4.0]);
        assert_eq!(layers.tails, vec![3.0]);
    }

    #[test]
    fn zero_function_has_no_layers() {
        assert_eq!(
            f(vec![1.0, 2.0], vec![0.0, 0.0]).canonicalize(),
            Err(MeasureError::ZeroFunction)
        );
        assert!(f(vec![1.0], vec![0.0]).is_zero());
    }

    #[test]
    fn layer_scaling_divides_levels_only() {
        let layers = f(vec![1.0, 1.0], vec![1.0, 3.0]).canonicalize().unwrap();
        let s = layers.scaled(2.0);
        assert_eq!(s.levels, vec![0.5, 1.5]);
        assert_eq!(s.tails, layers.tails);
    }

    #[test]
    fn distribution_masses_at_boundaries() {
        let g = f(vec![1.0, 2.0, 4.0], vec![1.0, 2.0, 3.0]);
        assert_eq!(g.mass_above(2.0), 4.0);
        assert_eq!(g.mass_at_least(2.0), 6.0);
        assert_eq!(g.mass_above(0.0), 7.0);
        assert_eq!(g.mass_above(3.0), 0.0);
    }

    #[test]
    fn monotone_ramp_masses() {
        let g = f(vec![1.0], vec![2.0]);
        let rep = g.monotone_limit_audit(4, 1.0);
        assert_eq!(rep.masses, vec![0.0, 0.0, 1.0, 1.0]);
        assert!(rep.all_ok());
    }

    #[test]
    fn validation_rejects_bad_atoms() {
        assert_eq!(MeasureSpace::new(vec![]), Err(MeasureError::EmptySpace));
        assert!(matches!(
            MeasureSpace::new(vec![1.0, 0.0]),
            Err(MeasureError::BadWeight { index: 1, .. })
        ));
        assert!(matches!(
            MeasureSpace::new(vec![f64::INFINITY]),
            Err(MeasureError::BadWeight { index: 0, .. })
        ));
        let sp = MeasureSpace::new(vec![1.0, 1.0]).unwrap();
        assert!(matches!(
            SimpleFunction::new(sp.clone(), vec![1.0]),
            Err(MeasureError::LengthMismatch { .. })
        ));
        assert!(matches!(
            SimpleFunction::new(sp, vec![1.0, -0.5]),
            Err(MeasureError::BadValue { index: 1, .. })
        ));
    }

    #[test]
    fn pointwise_ops_demand_a_shared_space() {
        let a = f(vec![1.0, 2.0], vec![1.0, 4.0]);
        let b = f(vec![1.0, 2.0], vec![3.0, 2.0]);
        assert_eq!(a.pointwise_mul(&b).unwrap().values(), &[3.0, 8.0]);
        assert_eq!(a.pointwise_min(&b).unwrap().values(), &[1.0, 2.0]);
        assert_eq!(a.pointwise_max(&b).unwrap().values(), &[3.0, 4.0]);

        let other = f(vec![1.0, 3.0], vec![3.0, 2.0]);
        assert_eq!(a.pointwise_mul(&other), Err(MeasureError::SpaceMismatch));
    }

    #[test]
    fn indicator_and_scale() {
        let sp = MeasureSpace::new(vec![1.0, 2.0, 3.0]).unwrap();
        let chi = SimpleFunction::indicator(sp, &[true, false, true]).unwrap();
        assert_eq!(chi.values(), &[1.0, 0.0, 1.0]);
        assert_eq!(chi.scale(2.5).unwrap().values(), &[2.5, 0.0, 2.5]);
        assert!(chi.scale(f64::NAN).is_err());
    }

    #[test]
    fn json_round_trip() {
        let g = f(vec![1.0, 2.0], vec![0.5, 0.0]);
        let text = g.to_json();
        assert_eq!(SimpleFunction::from_json(&text).unwrap(), g);

        let parsed =
            SimpleFunction::from_json(r#"{"atoms":[{"weight":1.0,"value":2.0}]}"#).unwrap();
        assert_eq!(parsed.values(), &[2.0]);
        assert_eq!(parsed.space().total_mass(), 1.0);

        assert!(SimpleFunction::from_json(r#"{"atoms":[]}"#).is_err());
        assert!(SimpleFunction::from_json(r#"{"atoms":[{"weight":-1,"value":2}]}"#).is_err());
    }

    #[test]
    fn csv_round_trip_with_and_without_header() {
        let g = f(vec![1.5, 2.0], vec![0.25, 3.0]);
        let text = g.to_csv();
        assert!(text.starts_with("weight,value\n"));
        assert_eq!(SimpleFunction::from_csv(&text).unwrap(), g);

        let headerless = "1.5,0.25\n2,3\n";
        assert_eq!(SimpleFunction::from_csv(headerless).unwrap(), g);

        assert!(SimpleFunction::from_csv("weight,value\n1,2\nbroken\n").is_err());
        assert!(SimpleFunction::from_csv("").is_err());
    }
}
