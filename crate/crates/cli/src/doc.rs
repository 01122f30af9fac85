//! JSON documents read and written by the command-line tool.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use folres_core::algebra::literal::{parse_bipoly, to_scalar_poly};
use folres_core::algebra::{BiPoly, Scalar};
use folres_core::blowup::{corner_index_drop_check, verify_index_theorem, IndexDropVerdict, IndexTheoremRow};
use folres_core::chains::{is_minimal, ChainVerdict, LinearChain, Schedule};
use folres_core::{ResolutionReport, ResolveOptions};

use crate::error::CliError;

pub type Literal = BTreeMap<String, String>;

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FormLiteral {
    /// Coefficient of `dx`.
    pub a: Literal,
    /// Coefficient of `dy`.
    pub b: Literal,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputOptions {
    #[serde(default)]
    pub budget: Option<usize>,
    #[serde(default)]
    pub allow_extensions: Option<bool>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputDocument {
    #[serde(default = "default_variables")]
    pub variables: [String; 2],
    pub form: FormLiteral,
    #[serde(default)]
    pub options: InputOptions,
}

fn default_variables() -> [String; 2] {
    ["x".into(), "y".into()]
}

impl InputDocument {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let doc: InputDocument = serde_json::from_str(text).map_err(CliError::parse)?;
        doc.form()?;
        Ok(doc)
    }

    pub fn form(&self) -> Result<(BiPoly<Scalar>, BiPoly<Scalar>), CliError> {
        let lift = |lit: &Literal, name: &str| {
            parse_bipoly(lit)
                .map(|p| to_scalar_poly(&p))
                .map_err(|e| CliError::parse(format!("form.{name}: {e}")))
        };
        Ok((lift(&self.form.a, "a")?, lift(&self.form.b, "b")?))
    }

    /// Document options overridden by command-line flags.
    pub fn resolve_options(&self, budget: Option<usize>, allow_extensions: bool) -> ResolveOptions {
        let base = ResolveOptions::default();
        ResolveOptions {
            budget: budget.or(self.options.budget).unwrap_or(base.budget),
            allow_extensions: allow_extensions || self.options.allow_extensions.unwrap_or(base.allow_extensions),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChainSection {
    pub chain: LinearChain,
    /// `n_r.k_m.….k_1`
    pub sequence: String,
    pub order_identity: bool,
    pub minimal: bool,
}

impl ChainSection {
    pub fn new(chain: LinearChain) -> Result<Self, CliError> {
        Ok(ChainSection {
            sequence: chain.sequence().to_string(),
            order_identity: chain.order_identity_holds(),
            minimal: is_minimal(&chain).map_err(CliError::from_core)?,
            chain,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Timing {
    pub resolve_micros: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub variables: [String; 2],
    pub budget: usize,
    pub allow_extensions: bool,
    pub report: ResolutionReport,
    pub index_theorem: Vec<IndexTheoremRow>,
    pub index_drops: Vec<IndexDropVerdict>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chains: Option<Vec<ChainSection>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verdicts: Option<Vec<ChainVerdict>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schedule: Option<Schedule>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing: Option<Timing>,
}

impl ReportDocument {
    pub fn new(variables: [String; 2], opts: &ResolveOptions, report: ResolutionReport) -> Self {
        ReportDocument {
            variables,
            budget: opts.budget,
            allow_extensions: opts.allow_extensions,
            index_theorem: verify_index_theorem(&report).unwrap_or_default(),
            index_drops: corner_index_drop_check(&report),
            report,
            chains: None,
            verdicts: None,
            schedule: None,
            timing: None,
        }
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(CliError::parse)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}
