//! Problem files: a ring, a module `S/J`, a sequence and optional ideals, in TOML.
//!
//! ```toml
//! [ring]
//! characteristic = 32003
//! variables = ["x1", "x2", "x3"]
//! order = "grevlex"
//!
//! [module]
//! relations = ["x1^2", "x1*x2*x3", "x1*x3^2"]
//!
//! [sequence]
//! elements = ["x2", "x3^2"]
//! ```

use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ideal::Ideal;
use crate::module::{PresentedModule, Submodule};
use crate::polyring::{MonomialOrder, PolyRing, PrimeField, DEFAULT_CHARACTERISTIC};
use crate::sequence::SequenceContext;

fn default_characteristic() -> u32 {
    DEFAULT_CHARACTERISTIC
}

fn default_order() -> String {
    "grevlex".into()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RingBlock {
    #[serde(default = "default_characteristic")]
    pub characteristic: u32,
    pub variables: Vec<String>,
    #[serde(default = "default_order")]
    pub order: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleBlock {
    /// Generators of `J` in `M = S/J`; empty for the free module `S`.
    #[serde(default)]
    pub relations: Vec<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SequenceBlock {
    #[serde(default)]
    pub elements: Vec<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IdealsBlock {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<Vec<String>>,
    /// Carrier generators of a submodule `N` (taken together with `J`).
    #[serde(default, rename = "N", skip_serializing_if = "Option::is_none")]
    pub n: Option<Vec<String>>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OptionsBlock {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n_max: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d_max: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bounds: Option<[u32; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub window: Option<[u32; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub ring: RingBlock,
    #[serde(default)]
    pub module: ModuleBlock,
    #[serde(default)]
    pub sequence: SequenceBlock,
    #[serde(default)]
    pub ideals: IdealsBlock,
    #[serde(default)]
    pub options: OptionsBlock,
}

/// A validated problem.
#[derive(Clone, Debug)]
pub struct Problem {
    pub ring: Arc<PolyRing>,
    pub context: SequenceContext,
    pub a: Option<Ideal>,
    pub n: Option<Submodule>,
}

impl ProblemFile {
    pub fn parse(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Problem(e.to_string()))
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Problem(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn render(&self) -> String {
        toml::to_string(self).expect("problem specs serialize")
    }

    pub fn ring(&self) -> Result<Arc<PolyRing>> {
        let field = PrimeField::new(self.ring.characteristic)?;
        let order = MonomialOrder::parse(&self.ring.order)?;
        if self.ring.variables.is_empty() {
            return Err(Error::InvalidVariables("at least one variable is required".into()));
        }
        PolyRing::new(field, self.ring.variables.iter().cloned(), order)
    }

    /// Parses every polynomial and builds the sequence context.
    pub fn build(&self) -> Result<Problem> {
        let ring = self.ring()?;
        let parse_all = |gens: &[String]| -> Result<Vec<_>> { gens.iter().map(|g| ring.parse(g)).collect() };
        let j = Ideal::new(&ring, parse_all(&self.module.relations)?)?;
        let module = PresentedModule::new(j);
        let context = SequenceContext::new(module.clone(), parse_all(&self.sequence.elements)?)?;
        let a = match &self.ideals.a {
            Some(gens) => Some(Ideal::new(&ring, parse_all(gens)?)?),
            None => None,
        };
        let n = match &self.ideals.n {
            Some(gens) => Some(module.submodule(&parse_all(gens)?)?),
            None => None,
        };
        Ok(Problem { ring, context, a, n })
    }
}
