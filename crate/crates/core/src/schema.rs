//! The JSON input document.
//!
//! ```json
//! {"schema_version": 1, "kind": "curve-subscheme",
//!  "parameters": {"g": 2, "d": 5, "e": "2", "rho": "1", "eps": "5/2"},
//!  "flags": {"saturates_at_eps": false}}
//! ```
//!
//! Integers are JSON numbers, rationals are `"p/q"` strings. Unknown fields are
//! rejected at every level.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::exactalg::rat::{serde_pq, serde_pq_opt};
use crate::exactalg::{Poly, Rat};
use crate::hilbert::{self, HSModel};
use crate::oracle::{Ambient, ToricCase};
use crate::testconfig::{concave_hull, NewtonDiagram};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Flags {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub saturates_at_eps: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub normal: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointOnSmooth {
    pub n: u32,
    #[serde(with = "serde_pq")]
    pub l_n: Rat,
    #[serde(with = "serde_pq")]
    pub k_l_n1: Rat,
    #[serde(with = "serde_pq")]
    pub eps: Rat,
    /// K ∼ αL, when known.
    #[serde(
        default,
        with = "serde_pq_opt",
        skip_serializing_if = "Option::is_none"
    )]
    pub alpha: Option<Rat>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveDivisor {
    pub g: i64,
    pub d: i64,
    pub deg_z: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveSubscheme {
    pub g: i64,
    pub d: i64,
    #[serde(with = "serde_pq")]
    pub e: Rat,
    #[serde(with = "serde_pq")]
    pub rho: Rat,
    #[serde(with = "serde_pq")]
    pub eps: Rat,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CustomHs {
    pub n: u32,
    pub a0: Poly,
    pub a1: Poly,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub higher: Option<Vec<Poly>>,
    #[serde(with = "serde_pq")]
    pub a0_const: Rat,
    #[serde(with = "serde_pq")]
    pub a1_const: Rat,
    #[serde(with = "serde_pq")]
    pub eps: Rat,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum AmbientName {
    P1,
    P2,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ToricOracleCase {
    pub ambient: AmbientName,
    pub d: u64,
    pub m: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NewtonDiagramParams {
    /// (pᵢ, i): the generator t^i z^{pᵢ}.
    pub points: Vec<(u64, u64)>,
    pub genus: i64,
    pub degree: i64,
    #[serde(default = "yes")]
    pub ample: bool,
}

fn yes() -> bool {
    true
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Params {
    PointOnSmooth(PointOnSmooth),
    CurveDivisor(CurveDivisor),
    CurveSubscheme(CurveSubscheme),
    CustomHs(CustomHs),
    ToricOracleCase(ToricOracleCase),
    NewtonDiagram(NewtonDiagramParams),
}

impl Params {
    pub fn kind(&self) -> &'static str {
        match self {
            Params::PointOnSmooth(_) => "point-on-smooth",
            Params::CurveDivisor(_) => "curve-divisor",
            Params::CurveSubscheme(_) => "curve-subscheme",
            Params::CustomHs(_) => "custom-hs",
            Params::ToricOracleCase(_) => "toric-oracle-case",
            Params::NewtonDiagram(_) => "newton-diagram",
        }
    }

    fn to_value(&self) -> Value {
        let v = match self {
            Params::PointOnSmooth(p) => serde_json::to_value(p),
            Params::CurveDivisor(p) => serde_json::to_value(p),
            Params::CurveSubscheme(p) => serde_json::to_value(p),
            Params::CustomHs(p) => serde_json::to_value(p),
            Params::ToricOracleCase(p) => serde_json::to_value(p),
            Params::NewtonDiagram(p) => serde_json::to_value(p),
        };
        v.expect("parameters serialise")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VarietySpecDoc {
    pub schema_version: u32,
    pub params: Params,
    pub flags: Flags,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDoc {
    schema_version: u32,
    kind: String,
    parameters: Value,
    #[serde(default)]
    flags: Flags,
}

fn field_error(kind: &str, e: serde_json::Error) -> Error {
    Error::InvalidInput(format!("parameters of kind {kind:?}: {e}"))
}

fn parse_params<T: serde::de::DeserializeOwned>(kind: &str, v: Value) -> Result<T> {
    serde_json::from_value(v).map_err(|e| field_error(kind, e))
}

impl VarietySpecDoc {
    pub fn new(params: Params) -> Self {
        VarietySpecDoc {
            schema_version: SCHEMA_VERSION,
            params,
            flags: Flags::default(),
        }
    }

    pub fn with_flags(mut self, flags: Flags) -> Self {
        self.flags = flags;
        self
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let raw: RawDoc =
            serde_json::from_str(s).map_err(|e| Error::InvalidInput(format!("document: {e}")))?;
        if raw.schema_version != SCHEMA_VERSION {
            return Err(Error::InvalidInput(format!(
                "schema_version: expected {SCHEMA_VERSION}, got {}",
                raw.schema_version
            )));
        }
        let k = raw.kind.as_str();
        let v = raw.parameters;
        let params = match k {
            "point-on-smooth" => Params::PointOnSmooth(parse_params(k, v)?),
            "curve-divisor" => Params::CurveDivisor(parse_params(k, v)?),
            "curve-subscheme" => Params::CurveSubscheme(parse_params(k, v)?),
            "custom-hs" => Params::CustomHs(parse_params(k, v)?),
            "toric-oracle-case" => Params::ToricOracleCase(parse_params(k, v)?),
            "newton-diagram" => Params::NewtonDiagram(parse_params(k, v)?),
            other => {
                return Err(Error::InvalidInput(format!(
                    "kind: unknown variant {other:?}, expected one of point-on-smooth, \
                     curve-divisor, curve-subscheme, custom-hs, toric-oracle-case, newton-diagram"
                )))
            }
        };
        Ok(VarietySpecDoc {
            schema_version: raw.schema_version,
            params,
            flags: raw.flags,
        })
    }

    pub fn to_value(&self) -> Value {
        serde_json::to_value(RawDoc {
            schema_version: self.schema_version,
            kind: self.params.kind().into(),
            parameters: self.params.to_value(),
            flags: self.flags.clone(),
        })
        .expect("document serialises")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_value()).expect("document serialises")
    }

    /// The Hilbert–Samuel model the document describes, validated.
    pub fn model(&self) -> Result<HSModel> {
        let mut h = match &self.params {
            Params::PointOnSmooth(p) => {
                let sat = self.flags.saturates_at_eps.unwrap_or(false);
                hilbert::hs_point_on_smooth(p.n, &p.l_n, &p.k_l_n1, &p.eps, sat)?
            }
            Params::CurveDivisor(p) => hilbert::hs_divisor_on_curve(p.g, p.d, p.deg_z)?,
            Params::CurveSubscheme(p) => {
                hilbert::hs_curve_subscheme(p.g, p.d, &p.e, &p.rho, &p.eps)?
            }
            Params::CustomHs(p) => HSModel {
                n: p.n,
                a0: p.a0.clone(),
                a1: p.a1.clone(),
                higher: p.higher.clone(),
                a0_const: p.a0_const.clone(),
                a1_const: p.a1_const.clone(),
                eps: p.eps.clone(),
                saturates_at_eps: false,
                label: p.label.clone().unwrap_or_else(|| "custom model".into()),
            },
            Params::ToricOracleCase(p) => {
                let n = match p.ambient {
                    AmbientName::P1 => 1,
                    AmbientName::P2 => 2,
                };
                let base = hilbert::hs_projective_point(n, p.d as i64)?;
                let m =
                    u32::try_from(p.m).map_err(|_| Error::InvalidInput("m too large".into()))?;
                hilbert::thicken(&base, m)?
            }
            Params::NewtonDiagram(p) => hilbert::hs_divisor_on_curve(p.genus, p.degree, 1)?,
        };
        if let Some(s) = self.flags.saturates_at_eps {
            h.saturates_at_eps = s;
        }
        if self.flags.normal == Some(true) && h.a1.coeff(0) != h.a1_const {
            return Err(Error::InvalidModel(
                "a1(0) differs from a1 but the variety is flagged normal".into(),
            ));
        }
        h.validate()?;
        Ok(h)
    }

    pub fn toric_case(&self) -> Option<ToricCase> {
        match &self.params {
            Params::ToricOracleCase(p) => {
                let ambient = match p.ambient {
                    AmbientName::P1 => Ambient::P1 { d: p.d },
                    AmbientName::P2 => Ambient::P2 { d: p.d },
                };
                ToricCase::new(ambient, p.m).ok()
            }
            _ => None,
        }
    }

    pub fn newton_diagram(&self) -> Result<NewtonDiagram> {
        match &self.params {
            Params::NewtonDiagram(p) => concave_hull(&p.points),
            _ => Err(Error::InvalidInput(format!(
                "kind {:?} carries no Newton diagram",
                self.params.kind()
            ))),
        }
    }
}
