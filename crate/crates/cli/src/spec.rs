//! Problem descriptions: the `rchi/1` input schema and its translation into
//! engine objects.

use std::path::Path;

use rchi_core::intlin::{IMat, IVec};
use rchi_core::{Bisector, CartanType, Character, CoverDatum, NumericOptions, QuadraticInput, RootDatum};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

pub const SCHEMA: &str = "rchi/1";

fn schema_default() -> String {
    SCHEMA.to_string()
}

fn epsilon_default() -> i8 {
    1
}

fn is_false(b: &bool) -> bool {
    !*b
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemSpec {
    #[serde(default = "schema_default")]
    pub schema: String,
    pub root_datum: RootDatumSpec,
    pub cover: CoverSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub character: Option<CharacterSpec>,
    #[serde(default)]
    pub options: OptionsSpec,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum RootDatumSpec {
    Preset {
        #[serde(rename = "type")]
        cartan_type: String,
        rank: usize,
    },
    Custom {
        rank_y: usize,
        simple_coroots: Vec<IVec>,
        simple_roots: Vec<IVec>,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoverSpec {
    pub n: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q_on_simple_coroots: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gram_bq: Option<IMat>,
    /// Diagonal form `Q(y) = Σ Q(e_i)·y_i²` on the standard basis of `Y`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q_on_basis: Option<Vec<i64>>,
    #[serde(default)]
    pub bisector: BisectorSpec,
    #[serde(default = "epsilon_default")]
    pub epsilon: i8,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum BisectorSpec {
    Named(String),
    Matrix(IMat),
}

impl Default for BisectorSpec {
    fn default() -> Self {
        BisectorSpec::Named("standard_upper".into())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CharacterSpec {
    pub order: u32,
    pub values: ValuesSpec,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum ValuesSpec {
    /// Exponents of `ζ_order` on the canonical basis of `Y_{Q,n}` printed by `info`.
    Basis(Vec<i64>),
    /// Exponents of `χ_{α_i}` for each simple root.
    ChiAlpha(Vec<i64>),
    /// Exponents on a user-chosen basis of `Y_{Q,n}`.
    Lattice { vectors: Vec<IVec>, exponents: Vec<i64> },
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OptionsSpec {
    #[serde(default, skip_serializing_if = "is_false")]
    pub numeric_fallback: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q0: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl ProblemSpec {
    /// Parses JSON, or TOML when `toml_hint` is set or the text does not start with `{`.
    pub fn parse(text: &str, toml_hint: bool) -> CliResult<Self> {
        let spec: ProblemSpec = if toml_hint || !text.trim_start().starts_with('{') {
            toml::from_str(text).map_err(|e| CliError::Parse(e.to_string()))?
        } else {
            serde_json::from_str(text).map_err(|e| CliError::Parse(e.to_string()))?
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn read(path: Option<&Path>) -> CliResult<Self> {
        match path {
            Some(p) if p != Path::new("-") => {
                let text = std::fs::read_to_string(p).map_err(|e| CliError::Io(format!("{}: {e}", p.display())))?;
                Self::parse(&text, p.extension().is_some_and(|e| e == "toml"))
            }
            _ => {
                let text = std::io::read_to_string(std::io::stdin()).map_err(|e| CliError::Io(e.to_string()))?;
                Self::parse(&text, false)
            }
        }
    }

    /// Structural checks that need no algebra.
    pub fn validate(&self) -> CliResult<()> {
        if self.schema != SCHEMA {
            return Err(CliError::Parse(format!("unsupported schema {:?}, expected {SCHEMA:?}", self.schema)));
        }
        let c = &self.cover;
        let given = [c.q_on_simple_coroots.is_some(), c.gram_bq.is_some(), c.q_on_basis.is_some()];
        if given.iter().filter(|&&b| b).count() != 1 {
            return Err(CliError::Parse(
                "cover needs exactly one of q_on_simple_coroots, gram_bq, q_on_basis".into(),
            ));
        }
        if c.q_on_basis.is_some() && matches!(self.root_datum, RootDatumSpec::Preset { .. }) {
            return Err(CliError::Parse("q_on_basis is only accepted for custom root data".into()));
        }
        if c.epsilon != 1 && c.epsilon != -1 {
            return Err(CliError::Parse(format!("epsilon must be 1 or -1, got {}", c.epsilon)));
        }
        if let BisectorSpec::Named(s) = &c.bisector {
            if s != "standard_upper" {
                return Err(CliError::Parse(format!("unknown bisector {s:?}")));
            }
        }
        if let Some(q0) = &self.options.q0 {
            if q0.is_empty() || q0.iter().any(|&q| !q.is_finite() || q <= 1.0) {
                return Err(CliError::Parse("q0 values must be finite and greater than 1".into()));
            }
        }
        Ok(())
    }

    pub fn root_datum(&self) -> CliResult<RootDatum> {
        Ok(match &self.root_datum {
            RootDatumSpec::Preset { cartan_type, rank } => RootDatum::preset(CartanType::parse(cartan_type)?, *rank)?,
            RootDatumSpec::Custom {
                rank_y,
                simple_coroots,
                simple_roots,
            } => RootDatum::custom(*rank_y, simple_coroots.clone(), simple_roots.clone())?,
        })
    }

    pub fn cover(&self) -> CliResult<CoverDatum> {
        let datum = self.root_datum()?;
        let c = &self.cover;
        let q = if let Some(q) = &c.q_on_simple_coroots {
            QuadraticInput::OnSimpleCoroots(q.clone())
        } else if let Some(g) = &c.gram_bq {
            QuadraticInput::Gram(g.clone())
        } else {
            let diag = c.q_on_basis.as_ref().expect("validated");
            let k = diag.len();
            QuadraticInput::Gram(
                (0..k)
                    .map(|i| (0..k).map(|j| if i == j { 2 * diag[i] } else { 0 }).collect())
                    .collect(),
            )
        };
        let bisector = match &c.bisector {
            BisectorSpec::Named(_) => Bisector::StandardUpper,
            BisectorSpec::Matrix(m) => Bisector::Explicit(m.clone()),
        };
        Ok(CoverDatum::new(datum, q, bisector, c.n, c.epsilon)?)
    }

    pub fn character<'c>(&self, cover: &'c CoverDatum) -> CliResult<Character<'c>> {
        let Some(ch) = &self.character else {
            return Err(CliError::Usage("this command needs a character section".into()));
        };
        Ok(match &ch.values {
            ValuesSpec::Basis(e) => Character::new(cover, ch.order, e.clone())?,
            ValuesSpec::ChiAlpha(e) => Character::from_chi_alpha(cover, ch.order, e)?,
            ValuesSpec::Lattice { vectors, exponents } => {
                Character::from_basis_values(cover, ch.order, vectors, exponents)?
            }
        })
    }

    pub fn numeric(&self) -> NumericOptions {
        let mut o = NumericOptions::default();
        if let Some(q0) = &self.options.q0 {
            o.q0 = q0.clone();
        }
        if let Some(s) = self.options.seed {
            o.seed = s;
        }
        o
    }
}
