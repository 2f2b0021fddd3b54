//! Machine-readable report. Integers of unbounded size are written as
//! decimal strings; maps are ordered, so output is byte-stable.

use serde::{Deserialize, Serialize};

use crate::component_group::{SerreClass, TraceReport};
use crate::cyclo::CycloProduct;
use crate::fiber::{FiberDocument, FiberStats, Violation};
use crate::linalg::QPartReport;
use crate::poly::IntPoly;

pub(crate) mod bigint_str {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

pub(crate) mod biguint_str {
    use num_bigint::BigUint;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

pub(crate) mod bigint_vec_str {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        v.iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        Vec::<String>::deserialize(d)?
            .iter()
            .map(|s| s.parse().map_err(serde::de::Error::custom))
            .collect()
    }
}

pub(crate) mod opt_bigint_str {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &Option<BigInt>, s: S) -> Result<S::Ok, S::Error> {
        match v {
            Some(v) => s.serialize_some(&v.to_string()),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<BigInt>, D::Error> {
        Option::<String>::deserialize(d)?
            .map(|s| s.parse().map_err(serde::de::Error::custom))
            .transpose()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycloJson {
    pub exponents: CycloProduct,
    pub text: String,
}

impl From<&CycloProduct> for CycloJson {
    fn from(p: &CycloProduct) -> Self {
        CycloJson {
            exponents: p.clone(),
            text: p.to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    /// Lowest degree first.
    #[serde(with = "bigint_vec_str")]
    pub coeffs: Vec<num_bigint::BigInt>,
    pub text: String,
}

impl From<&IntPoly> for PolyJson {
    fn from(p: &IntPoly) -> Self {
        PolyJson {
            coeffs: p.coeffs().to_vec(),
            text: p.to_string(),
        }
    }
}

/// Report object emitted by `compute --json` and friends.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonReport {
    pub fiber: FiberDocument,
    pub stats: FiberStats,
    pub zeta: CycloJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub zeta_tame: Option<CycloJson>,
    pub p_phi: CycloJson,
    pub p_phi_poly: Option<PolyJson>,
    #[serde(rename = "phi_A", with = "opt_bigint_str")]
    pub phi_a: Option<num_bigint::BigInt>,
    #[serde(rename = "phi_A_prime", with = "opt_bigint_str")]
    pub phi_a_prime: Option<num_bigint::BigInt>,
    #[serde(with = "bigint_str")]
    pub euler_char_neron: num_bigint::BigInt,
    #[serde(with = "bigint_str")]
    pub trace_value: num_bigint::BigInt,
    pub purely_additive: bool,
    pub tame_compatible: bool,
    pub trace_formula_holds: bool,
    pub prime_to_p_identity_holds: Option<bool>,
    pub serre_class: Option<SerreClass>,
    pub tame_violations: Vec<Violation>,
    pub realizability_violations: Vec<Violation>,
    pub inconsistency: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub qcheck: Option<QPartReport>,
}

impl JsonReport {
    pub fn new(fiber: FiberDocument, r: &TraceReport) -> Self {
        JsonReport {
            fiber,
            stats: r.stats.clone(),
            zeta: (&r.zeta).into(),
            zeta_tame: None,
            p_phi: (&r.p_phi).into(),
            p_phi_poly: r.p_phi_poly.as_ref().map(Into::into),
            phi_a: r.phi_a.clone(),
            phi_a_prime: r.phi_a_prime.clone(),
            euler_char_neron: r.euler_char_neron.clone(),
            trace_value: r.trace_value.clone(),
            purely_additive: r.purely_additive,
            tame_compatible: r.tame_compatible,
            trace_formula_holds: r.trace_formula_holds,
            prime_to_p_identity_holds: r.prime_to_p_identity_holds,
            serre_class: r.serre_class.clone(),
            tame_violations: r.tame_violations.clone(),
            realizability_violations: r.realizability_violations.clone(),
            inconsistency: r.inconsistency.clone(),
            qcheck: None,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }
}
