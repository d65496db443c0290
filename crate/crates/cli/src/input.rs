//! JSON input formats, one per command.

use casson_core::exact::rational::parse_rational;
use casson_core::exact::Rational;
use casson_core::floer::{FloerData, GradedMap, GRADINGS};
use casson_core::knot::{presets, SeifertMatrix};
use casson_core::tori::{self, CupRing, SpinRohlinTable, ThreeTorusForm, H1_DIM, H2_DIM};
use serde::de::DeserializeOwned;
use serde::Deserialize;

use crate::CliError;

pub const SCHEMA_VERSION: u32 = 1;

pub fn parse<T: DeserializeOwned>(bytes: &[u8]) -> Result<T, CliError> {
    serde_json::from_slice(bytes).map_err(|e| match e.classify() {
        serde_json::error::Category::Data => CliError::Schema(e.to_string()),
        _ => CliError::Parse(e.to_string()),
    })
}

pub fn check_version(v: Option<u32>) -> Result<(), CliError> {
    match v {
        None | Some(SCHEMA_VERSION) => Ok(()),
        Some(v) => Err(CliError::Schema(format!("unsupported schema version {v}"))),
    }
}

/// A preset name, an inline `{name, seifert}` object, or a bare matrix.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum KnotRef {
    Preset(String),
    Inline {
        #[serde(default)]
        name: Option<String>,
        seifert: Vec<Vec<i64>>,
    },
    Matrix(Vec<Vec<i64>>),
}

impl KnotRef {
    pub fn resolve(&self) -> Result<SeifertMatrix, CliError> {
        match self {
            KnotRef::Preset(name) => presets::by_name(name)
                .ok_or_else(|| CliError::Schema(format!("unknown knot preset {name:?}")))?
                .map_err(CliError::module),
            KnotRef::Inline { seifert, .. } | KnotRef::Matrix(seifert) => {
                SeifertMatrix::new(seifert.clone()).map_err(CliError::module)
            }
        }
    }

    pub fn label(&self) -> String {
        match self {
            KnotRef::Preset(name) => name.clone(),
            KnotRef::Inline { name: Some(n), .. } => n.clone(),
            KnotRef::Inline { seifert, .. } | KnotRef::Matrix(seifert) => format!("{seifert:?}"),
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KnotInput {
    pub version: Option<u32>,
    pub name: Option<String>,
    pub seifert: Option<Vec<Vec<i64>>>,
    pub knot: Option<KnotRef>,
    /// Order of the signature spectrum; defaults to 2.
    pub order: Option<usize>,
}

impl KnotInput {
    pub fn knot_ref(&self) -> Result<KnotRef, CliError> {
        match (&self.seifert, &self.knot) {
            (Some(s), None) => Ok(KnotRef::Inline { name: self.name.clone(), seifert: s.clone() }),
            (None, Some(k)) => Ok(k.clone()),
            _ => Err(CliError::Schema("exactly one of \"seifert\" and \"knot\" is required".into())),
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StepInput {
    pub knot: KnotRef,
    pub q: i64,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SphereInput {
    pub version: Option<u32>,
    pub steps: Vec<StepInput>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum QuotientKind {
    Branched,
    Free,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MappingTorusInput {
    pub version: Option<u32>,
    #[serde(rename = "type")]
    pub kind: QuotientKind,
    pub n: usize,
    pub q: Option<i64>,
    pub quotient_casson: i64,
    #[serde(alias = "knot")]
    pub branch_knot: Option<KnotRef>,
    pub spectrum: Option<Vec<i64>>,
    /// `ρ(Σ)` of the covering sphere, when known.
    pub rho: Option<u8>,
    pub floer: Option<FloerInput>,
}

/// A rational given as a JSON integer or a string such as `"-3/4"`.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum RationalInput {
    Integer(i64),
    Text(String),
}

impl RationalInput {
    pub fn value(&self) -> Result<Rational, CliError> {
        match self {
            RationalInput::Integer(n) => Ok(Rational::from_integer(*n)),
            RationalInput::Text(s) => parse_rational(s).map_err(CliError::Schema),
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum MapInput {
    Token(String),
    Matrix(Vec<Vec<RationalInput>>),
}

impl MapInput {
    fn resolve(&self) -> Result<GradedMap, CliError> {
        match self {
            MapInput::Token(t) => match t.as_str() {
                "id" => Ok(GradedMap::Identity),
                "-id" => Ok(GradedMap::MinusIdentity),
                other => Err(CliError::Schema(format!("unknown map token {other:?}"))),
            },
            MapInput::Matrix(m) => Ok(GradedMap::Matrix(
                m.iter().map(|r| r.iter().map(RationalInput::value).collect()).collect::<Result<_, _>>()?,
            )),
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum MapsInput {
    Uniform(String),
    PerDegree(Vec<MapInput>),
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FloerInput {
    pub version: Option<u32>,
    pub ranks: [usize; GRADINGS],
    pub maps: Option<MapsInput>,
    pub target_lefschetz: Option<i64>,
}

impl FloerInput {
    /// `None` when only ranks are given.
    pub fn data(&self) -> Result<Option<FloerData>, CliError> {
        let maps: [GradedMap; GRADINGS] = match &self.maps {
            None => return Ok(None),
            Some(MapsInput::Uniform(t)) => {
                let m = MapInput::Token(t.clone()).resolve()?;
                std::array::from_fn(|_| m.clone())
            }
            Some(MapsInput::PerDegree(v)) => {
                if v.len() != GRADINGS {
                    return Err(CliError::Schema(format!("expected {GRADINGS} maps, got {}", v.len())));
                }
                let resolved: Vec<GradedMap> = v.iter().map(MapInput::resolve).collect::<Result<_, _>>()?;
                resolved.try_into().expect("length checked")
            }
        };
        FloerData::new(self.ranks, maps).map(Some).map_err(CliError::module)
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TorusInput {
    pub version: Option<u32>,
    pub preset: Option<String>,
    pub three_form: Option<u8>,
    /// Index into the fixed basis presentations of product rings.
    pub presentation: Option<usize>,
    pub cup2: Option<Vec<Vec<Vec<u8>>>>,
    pub pairing: Option<Vec<Vec<u8>>>,
    pub eval_top: Option<u8>,
    pub quadratic: Option<Vec<u8>>,
    /// Restrict to one `w₂`; otherwise every nonzero class is examined.
    pub w: Option<Vec<u8>>,
    pub rho_table: Option<Vec<RationalInput>>,
}

fn bits_to_mask(bits: &[u8], len: usize, what: &str) -> Result<u8, CliError> {
    if bits.len() != len || bits.iter().any(|&b| b > 1) {
        return Err(CliError::Schema(format!("{what} must be {len} bits")));
    }
    Ok(bits.iter().enumerate().fold(0, |m, (i, &b)| m | b << i))
}

impl TorusInput {
    pub fn ring(&self) -> Result<CupRing, CliError> {
        let explicit = self.cup2.is_some() || self.pairing.is_some() || self.eval_top.is_some();
        let sources = [self.preset.is_some(), self.three_form.is_some(), explicit];
        if sources.iter().filter(|&&b| b).count() != 1 {
            return Err(CliError::Schema("give exactly one of \"preset\", \"three_form\", or an explicit ring".into()));
        }
        if let Some(p) = &self.preset {
            return match p.as_str() {
                "T4" | "t4" => Ok(tori::torus_ring()),
                other => Err(CliError::Schema(format!("unknown torus preset {other:?}"))),
            };
        }
        if let Some(t) = self.three_form {
            let f = ThreeTorusForm::new(t).map_err(CliError::module)?;
            let k = self.presentation.unwrap_or(0);
            let p =
                tori::PRESENTATIONS.get(k).ok_or_else(|| CliError::Schema(format!("presentation {k} out of range")))?;
            return tori::product_ring(&f).change_basis(*p).map_err(CliError::module);
        }
        let (Some(cup2), Some(pairing), Some(eval_top)) = (&self.cup2, &self.pairing, self.eval_top) else {
            return Err(CliError::Schema("explicit rings need \"cup2\", \"pairing\" and \"eval_top\"".into()));
        };
        if cup2.len() != H1_DIM || cup2.iter().any(|r| r.len() != H1_DIM) || pairing.len() != H2_DIM {
            return Err(CliError::Schema("cup2 must be 4x4 and pairing 6x6".into()));
        }
        let mut c = [[0u8; H1_DIM]; H1_DIM];
        for i in 0..H1_DIM {
            for j in 0..H1_DIM {
                c[i][j] = bits_to_mask(&cup2[i][j], H2_DIM, "cup2 entries")?;
            }
        }
        let mut p = [0u8; H2_DIM];
        for i in 0..H2_DIM {
            p[i] = bits_to_mask(&pairing[i], H2_DIM, "pairing rows")?;
        }
        let q = self.quadratic.as_ref().map(|q| bits_to_mask(q, H2_DIM, "quadratic")).transpose()?;
        CupRing::new(c, p, eval_top, q).map_err(CliError::module)
    }

    pub fn w(&self) -> Result<Option<u8>, CliError> {
        self.w.as_ref().map(|w| bits_to_mask(w, H2_DIM, "w")).transpose()
    }

    pub fn rho_table(&self) -> Result<Option<SpinRohlinTable>, CliError> {
        let Some(t) = &self.rho_table else {
            return Ok(None);
        };
        let values: Vec<Rational> = t.iter().map(RationalInput::value).collect::<Result<_, _>>()?;
        let values: [Rational; 8] =
            values.try_into().map_err(|_| CliError::Schema("rho_table must have 8 entries".into()))?;
        SpinRohlinTable::new(values).map(Some).map_err(CliError::module)
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CircleBundleInput {
    pub version: Option<u32>,
    pub knot: KnotRef,
    pub euler: i64,
}
