//! Totally ordered arithmetic on the extended half-line [0, ∞].
//!
//! [`ExtReal`] is a newtype over `f64` whose invariant — nonnegative, never
//! NaN — makes `Eq`/`Ord` total and keeps the measure-theoretic product
//! convention in one place:
//!
//! | law                     | statement                                  |
//! |-------------------------|--------------------------------------------|
//! | absorption              | ∞ · 0 = 0 · ∞ = 0                          |
//! | infinite product        | ∞ · y = ∞ for y > 0                        |
//! | infinite sum            | ∞ + x = x + ∞ = ∞                          |
//! | scaling                 | ∞ / λ = ∞ for finite λ > 0                 |
//! | totality                | x ≤ y or y ≤ x, and never NaN              |
//!
//! Finite arithmetic is ordinary `f64` arithmetic; overflow saturates to ∞,
//! which stays inside the type. Division is deliberately restricted to
//! finite positive divisors — that is the only division the norm machinery
//! needs, and rejecting the rest at the boundary keeps 0/0 and ∞/∞
//! unrepresentable.

use std::cmp::Ordering;
use std::fmt;

use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Why a raw `f64` was rejected at the [`ExtReal`] boundary.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum XRealError {
    #[error("NaN is not a point of [0, ∞]")]
    NaN,
    #[error("negative value {0} is not a point of [0, ∞]")]
    Negative(String),
    #[error("division requires a finite positive divisor, got {0}")]
    BadDivisor(String),
}

/// A point of [0, ∞]: a nonnegative, non-NaN `f64`, with `f64::INFINITY`
/// standing for ∞.
#[derive(Clone, Copy, PartialEq)]
pub struct ExtReal(f64);

impl ExtReal {
    pub const ZERO: ExtReal = ExtReal(0.0);
    pub const ONE: ExtReal = ExtReal(1.0);
    pub const INF: ExtReal = ExtReal(f64::INFINITY);

    /// Admits any nonnegative value including ∞. Negative zero is
    /// normalized to +0 so the bit pattern never leaks into `total_cmp`.
    pub fn new(v: f64) -> Result<Self, XRealError> {
        if v.is_nan() {
            return Err(XRealError::NaN);
        }
        if v < 0.0 {
            return Err(XRealError::Negative(format!("{v}")));
        }
        Ok(ExtReal(if v == 0.0 { 0.0 } else { v }))
    }

    /// Like [`ExtReal::new`] but additionally rejects ∞.
    pub fn finite(v: f64) -> Result<Self, XRealError> {
        let x = Self::new(v)?;
        if x.is_infinite() {
            return Err(XRealError::Negative("∞ where a finite value is required".into()));
        }
        Ok(x)
    }

    /// Raw `f64` view; ∞ maps to `f64::INFINITY`.
    pub fn as_f64(self) -> f64 {
        self.0
    }

    /// `Some(v)` when finite, `None` for ∞.
    pub fn to_finite(self) -> Option<f64> {
        self.is_finite().then_some(self.0)
    }

    pub fn is_infinite(self) -> bool {
        self.0.is_infinite()
    }

    pub fn is_finite(self) -> bool {
        self.0.is_finite()
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0.0
    }

    /// Product under the measure convention ∞ · 0 = 0.
    ///
    /// Deliberately not `std::ops::Mul`: `a * b` would read as ordinary
    /// IEEE arithmetic, and the whole point is that it is not (NaN at
    /// (∞, 0) is replaced by the convention).
    #[allow(clippy::should_implement_trait)]
    pub fn mul(self, rhs: ExtReal) -> ExtReal {
        if self.0 == 0.0 || rhs.0 == 0.0 {
            ExtReal::ZERO
        } else {
            // Both factors positive and non-NaN: the IEEE product is
            // positive or +∞, never NaN.
            ExtReal(self.0 * rhs.0)
        }
    }

    /// Sum; ∞ is absorbing, finite overflow saturates to ∞.
    #[allow(clippy::should_implement_trait)]
    pub fn add(self, rhs: ExtReal) -> ExtReal {
        ExtReal(self.0 + rhs.0)
    }

    /// Divides by a finite positive scalar; every other divisor is a caller
    /// error, reported rather than folded into a convention.
    pub fn div_by_finite_positive(self, divisor: f64) -> Result<ExtReal, XRealError> {
        if !(divisor.is_finite() && divisor > 0.0) {
            return Err(XRealError::BadDivisor(format!("{divisor}")));
        }
        Ok(ExtReal(self.0 / divisor))
    }

    pub fn min(self, rhs: ExtReal) -> ExtReal {
        if self <= rhs {
            self
        } else {
            rhs
        }
    }

    pub fn max(self, rhs: ExtReal) -> ExtReal {
        if self >= rhs {
            self
        } else {
            rhs
        }
    }
}

impl Eq for ExtReal {}

impl PartialOrd for ExtReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExtReal {
    fn cmp(&self, other: &Self) -> Ordering {
        // Total by invariant: no NaN, no -0.0.
        self.0.total_cmp(&other.0)
    }
}

impl fmt::Debug for ExtReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_infinite() {
            write!(f, "inf")
        } else {
            write!(f, "{}", self.0)
        }
    }
}

impl fmt::Display for ExtReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl From<ExtReal> for f64 {
    fn from(x: ExtReal) -> f64 {
        x.0
    }
}

/// Wire format: a plain JSON number when finite, the string `"inf"` for ∞.
impl Serialize for ExtReal {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        if self.is_infinite() {
            serializer.serialize_str("inf")
        } else {
            serializer.serialize_f64(self.0)
        }
    }
}

impl<'de> Deserialize<'de> for ExtReal {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = ExtReal;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a nonnegative number or the string \"inf\"")
            }

            fn visit_f64<E: de::Error>(self, v: f64) -> Result<ExtReal, E> {
                ExtReal::new(v).map_err(E::custom)
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<ExtReal, E> {
                self.visit_f64(v as f64)
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<ExtReal, E> {
                self.visit_f64(v as f64)
            }

            fn visit_str<E: de::Error>(self, s: &str) -> Result<ExtReal, E> {
                if s == "inf" {
                    Ok(ExtReal::INF)
                } else {
                    Err(E::custom(format!(
                        "expected a number or \"inf\", got the string {s:?}"
                    )))
                }
            }
        }
        deserializer.deserialize_any(V)
    }
}
