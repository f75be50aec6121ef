//! Formal group laws: the Hazewinkel logarithm and its law, endomorphisms,
//! p-typical (Araki) coordinates, Lubin-Tate laws over general local fields,
//! torsion counts and the associated genus.

use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::arith::{ArithError, Coeff, LocalField, Series};

pub mod araki;
pub mod hazewinkel;
pub mod law;
pub mod lubin_tate;

pub use araki::{araki_coordinates, p_typify, ptypical_coordinates, Convention, PTypicalCoordinates};
pub use hazewinkel::{
    additive_log, default_truncation, genus_value, hazewinkel_log, honda_log, integral_g,
    multiplicative_log, verify_functional_equation, verify_genus,
};
pub use law::{
    endomorphism, law_from_log, p_series, rescale_graded_check, torsion_order, verify_axioms,
    verify_p_corollary, verify_ring_hom,
};
pub use lubin_tate::{
    binomial_series, lubin_tate_law, series_from_coords, standard_uniformizer_series, LubinTateConstruction,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FglError {
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error("coefficient of total degree {degree} is not p-integral")]
    IntegralityViolation { degree: usize },
    #[error("endomorphism parameter is not p-integral")]
    NonIntegralParameter,
    #[error("logarithm has a nonzero coefficient at X^{exponent}, which is not a power of p")]
    NotPTypical { exponent: usize },
    #[error("Araki solving left a nonzero coefficient at degree {degree}")]
    NotPTypifiable { degree: usize },
    #[error("uniformizer series rejected: {0}")]
    BadUniformizerSeries(String),
    #[error("precision exhausted at degree {degree}")]
    PrecisionExhausted { degree: usize },
    #[error("degree {needed} exceeds truncation {have}")]
    TruncationTooSmall { needed: usize, have: usize },
    #[error("rescaling parameter is not a unit")]
    NonUnitScale,
    #[error("operation needs a logarithm")]
    MissingLogarithm,
    #[error("torsion degree {found:?} differs from the expected {expected}")]
    HeightMismatch { expected: usize, found: Option<usize> },
    #[error("operation needs a law of {0} provenance")]
    WrongProvenance(&'static str),
}

/// Where a law came from.
#[derive(Clone, Debug, PartialEq)]
pub enum Provenance {
    /// The law of the Hazewinkel logarithm for `q = p^n`.
    Hazewinkel { p: u64, n: u32 },
    /// The law commuting with a uniformizer series (stored as JSON).
    LubinTate { f_series: serde_json::Value },
    /// `u^{-1} F(uX, uY)` for a base law.
    Rescaled { base: Box<Provenance>, u: String },
    /// Any other law built from a logarithm.
    Logarithm { name: String },
}

impl Provenance {
    pub fn json(&self) -> serde_json::Value {
        match self {
            Provenance::Hazewinkel { p, n } => {
                serde_json::json!({"provenance": "hazewinkel", "p": p, "n": n})
            }
            Provenance::LubinTate { f_series } => {
                serde_json::json!({"provenance": "lubin_tate", "f_series": f_series})
            }
            Provenance::Rescaled { base, u } => {
                serde_json::json!({"provenance": "rescaled", "u": u, "base": base.json()})
            }
            Provenance::Logarithm { name } => {
                serde_json::json!({"provenance": "logarithm", "name": name})
            }
        }
    }

    /// `(p, n)` of a Hazewinkel law, looking through rescalings.
    pub fn hazewinkel_params(&self) -> Option<(u64, u32)> {
        match self {
            Provenance::Hazewinkel { p, n } => Some((*p, *n)),
            Provenance::Rescaled { base, .. } => base.hazewinkel_params(),
            _ => None,
        }
    }
}

/// A two-variable formal group law with optional logarithm.
#[derive(Clone, Debug)]
pub struct FormalGroupLaw<C: Coeff> {
    pub(crate) law: Series<C>,
    pub(crate) logarithm: Option<Series<C>>,
    pub(crate) exponential: Option<Series<C>>,
    pub(crate) p_series: Series<C>,
    pub(crate) provenance: Provenance,
    pub(crate) p: u64,
    pub(crate) height: Option<usize>,
    pub(crate) field: Option<Arc<LocalField>>,
    /// Uniformizer-adic digits to which coefficients are known (residue mode).
    pub(crate) precision: Option<i64>,
}

impl<C: Coeff> FormalGroupLaw<C> {
    pub fn law(&self) -> &Series<C> {
        &self.law
    }

    pub fn logarithm(&self) -> Option<&Series<C>> {
        self.logarithm.as_ref()
    }

    pub fn exponential(&self) -> Option<&Series<C>> {
        self.exponential.as_ref()
    }

    /// The cached `[p]_F`.
    pub fn p_series(&self) -> &Series<C> {
        &self.p_series
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    /// Expected height: `n` for Hazewinkel laws, `[L:Q_p]` for Lubin-Tate
    /// laws, otherwise read off `[p]_F` when it is a power of `p`.
    pub fn height(&self) -> Option<usize> {
        self.height
    }

    pub fn field(&self) -> Option<&Arc<LocalField>> {
        self.field.as_ref()
    }

    pub fn truncation(&self) -> usize {
        self.law.truncation()
    }

    /// Uniformizer-adic digits to which coefficients are known.
    pub fn precision(&self) -> Option<i64> {
        self.precision
    }

    /// Achieved precision in `p`-adic digits.
    pub fn reported_precision(&self) -> Option<i64> {
        let e = self.field.as_ref().map_or(1, |k| k.e() as i64);
        self.precision.map(|m| m / e)
    }

    /// Evaluates `F(a, b)` for series arguments sharing a variable count.
    pub fn apply(&self, a: &Series<C>, b: &Series<C>) -> Result<Series<C>, ArithError> {
        self.law.substitute(&[a, b])
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut obj = serde_json::json!({
            "law": self.law.to_json(),
            "p": self.p,
            "truncation": self.law.truncation(),
            "precision_achieved": self.reported_precision(),
        });
        if let serde_json::Value::Object(prov) = self.provenance.json() {
            obj.as_object_mut().unwrap().extend(prov);
        }
        if let Some(log) = &self.logarithm {
            obj["logarithm"] = log.to_json();
        }
        if let Some(field) = &self.field {
            obj["field"] = serde_json::to_value(field.spec()).unwrap();
        }
        obj
    }
}

/// Outcome of one identity check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub check: String,
    pub pass: bool,
    pub first_failure: Option<usize>,
    pub precision_achieved: Option<i64>,
}

impl CheckReport {
    pub fn exact(check: impl Into<String>, first_failure: Option<usize>) -> Self {
        CheckReport {
            check: check.into(),
            pass: first_failure.is_none(),
            first_failure,
            precision_achieved: None,
        }
    }

    pub fn with_precision(mut self, digits: Option<i64>) -> Self {
        self.precision_achieved = digits;
        self
    }

    pub fn json(&self) -> serde_json::Value {
        serde_json::to_value(self).unwrap()
    }
}
