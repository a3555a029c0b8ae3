//! Input parsing: JSON schemas for parameters, Hamiltonian reports,
//! matrices, ansätze, and search configs. Unknown fields are rejected so
//! typos fail loudly instead of being silently ignored.

use crate::Failure;
use gateforge_core::pauli::PauliPolynomial;
use gateforge_core::search::{CouplingAnsatz, Optimizer, SearchConfig};
use gateforge_core::PauliPolynomial64;
use serde::Deserialize;
use std::io::Read;
use std::path::Path;

pub const SCHEMA: &str = "gateforge/1";

/// Fetch an argument's JSON text: `-` reads stdin, an existing path reads
/// the file, anything that looks like JSON is taken inline.
pub fn read_source(arg: &str) -> Result<String, Failure> {
    if arg == "-" {
        let mut buf = String::new();
        std::io::stdin().read_to_string(&mut buf)?;
        return Ok(buf);
    }
    let path = Path::new(arg);
    if path.exists() {
        return Ok(std::fs::read_to_string(path)?);
    }
    let trimmed = arg.trim_start();
    if trimmed.starts_with('{') || trimmed.starts_with('[') {
        return Ok(arg.to_string());
    }
    Err(Failure::input(format!(
        "no such file: {arg} (inline parameters must be JSON)"
    )))
}

fn check_schema(found: &str) -> Result<(), Failure> {
    if found == SCHEMA {
        Ok(())
    } else {
        Err(Failure::input(format!(
            "unsupported schema {found:?} (expected {SCHEMA:?})"
        )))
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Not1ParamsIn {
    #[serde(rename = "N")]
    pub n: i64,
    pub gamma: f64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Not2ParamsIn {
    #[serde(rename = "E")]
    pub e: f64,
    #[serde(rename = "N")]
    pub n: i64,
    pub gamma: f64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub struct XorParamsIn {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermIn {
    pub string: String,
    pub coefficient: f64,
}

/// A Hamiltonian report as written by `synth`/`decompose`. Derived
/// fields are accepted (so emitted reports re-parse under the
/// unknown-field rejection) but never read: the term list is
/// authoritative.
#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
#[allow(dead_code)]
pub struct HamiltonianIn {
    pub schema: String,
    pub n_qubits: usize,
    pub hbar: f64,
    pub delta_t: f64,
    pub terms: Vec<TermIn>,
    #[serde(default)]
    pub energies: Option<Vec<f64>>,
    #[serde(default)]
    pub branch: Option<Vec<i64>>,
    #[serde(default)]
    pub locality_profile: Option<std::collections::BTreeMap<String, Vec<String>>>,
    #[serde(default)]
    pub constant_term: Option<f64>,
}

impl HamiltonianIn {
    pub fn parse(text: &str) -> Result<Self, Failure> {
        let file: HamiltonianIn = serde_json::from_str(text)?;
        check_schema(&file.schema)?;
        Ok(file)
    }

    /// Rebuild the polynomial from the term list.
    pub fn to_polynomial(&self) -> Result<PauliPolynomial64, Failure> {
        let mut poly = PauliPolynomial::zero(self.n_qubits)?;
        for term in &self.terms {
            poly.add_term(term.string.parse()?, term.coefficient)?;
        }
        Ok(poly)
    }
}

/// A dense complex matrix, row-major `[re, im]` entry pairs.
#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixIn {
    pub schema: String,
    pub dim: usize,
    pub entries: Vec<[f64; 2]>,
}

impl MatrixIn {
    pub fn parse(text: &str) -> Result<Self, Failure> {
        let file: MatrixIn = serde_json::from_str(text)?;
        check_schema(&file.schema)?;
        if file.entries.len() != file.dim * file.dim {
            return Err(Failure::input(format!(
                "matrix of dimension {} needs {} entries, found {}",
                file.dim,
                file.dim * file.dim,
                file.entries.len()
            )));
        }
        Ok(file)
    }
}

/// An ansatz description: either a named family or an explicit string
/// list, with optional per-coefficient bounds.
#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AnsatzIn {
    #[serde(default)]
    pub schema: Option<String>,
    #[serde(default)]
    pub family: Option<String>,
    #[serde(default)]
    pub n_qubits: Option<usize>,
    #[serde(default)]
    pub include_fields: Option<bool>,
    #[serde(default)]
    pub terms: Option<Vec<String>>,
    #[serde(default)]
    pub bounds: Option<Vec<(f64, f64)>>,
}

impl AnsatzIn {
    pub fn parse(text: &str) -> Result<Self, Failure> {
        let file: AnsatzIn = serde_json::from_str(text)?;
        if let Some(schema) = &file.schema {
            check_schema(schema)?;
        }
        Ok(file)
    }

    pub fn build(&self, delta_t: f64, hbar: f64) -> Result<CouplingAnsatz<f64>, Failure> {
        let mut ansatz = match (&self.family, &self.terms) {
            (Some(_), Some(_)) => {
                return Err(Failure::input(
                    "ansatz gives both a named family and explicit terms; pick one",
                ));
            }
            (Some(name), None) => {
                let fields = self.include_fields.unwrap_or(false);
                let pair_family = |f: fn(usize, f64, f64, bool) -> gateforge_core::Result<
                    CouplingAnsatz<f64>,
                >|
                 -> Result<CouplingAnsatz<f64>, Failure> {
                    let n = self.n_qubits.ok_or_else(|| {
                        Failure::input(format!("family {name:?} needs \"n_qubits\""))
                    })?;
                    Ok(f(n, delta_t, hbar, fields)?)
                };
                match name.as_str() {
                    "xor" => CouplingAnsatz::xor_family(delta_t, hbar)?,
                    "not2" => CouplingAnsatz::not2_family(delta_t, hbar)?,
                    "ising" => pair_family(CouplingAnsatz::ising)?,
                    "xy" => pair_family(CouplingAnsatz::xy)?,
                    "heisenberg" => pair_family(CouplingAnsatz::heisenberg)?,
                    other => {
                        return Err(Failure::input(format!(
                            "unknown ansatz family {other:?} (expected xor, not2, ising, xy, or heisenberg)"
                        )));
                    }
                }
            }
            (None, Some(strings)) => {
                if strings.is_empty() {
                    return Err(Failure::input("ansatz term list is empty"));
                }
                let parsed = strings
                    .iter()
                    .map(|s| s.parse())
                    .collect::<gateforge_core::Result<Vec<_>>>()?;
                let n = self
                    .n_qubits
                    .unwrap_or_else(|| strings[0].chars().count());
                CouplingAnsatz::new(n, parsed, delta_t, hbar)?
            }
            (None, None) => {
                return Err(Failure::input(
                    "ansatz needs either a \"family\" name or explicit \"terms\"",
                ));
            }
        };
        if let Some(bounds) = &self.bounds {
            ansatz.set_bounds(bounds.clone())?;
        }
        Ok(ansatz)
    }
}

/// Search configuration; omitted fields take the library defaults.
#[derive(Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigIn {
    #[serde(default)]
    pub restarts: Option<usize>,
    #[serde(default)]
    pub max_evaluations: Option<usize>,
    #[serde(default)]
    pub seed: Option<u64>,
    #[serde(default)]
    pub target_leakage: Option<f64>,
    #[serde(default)]
    pub optimizer: Option<String>,
}

impl ConfigIn {
    pub fn parse(text: &str) -> Result<Self, Failure> {
        Ok(serde_json::from_str(text)?)
    }

    /// Resolve to a library config; an explicit `--seed` wins over the
    /// config file, which wins over the default seed 1.
    pub fn resolve(&self, seed_flag: Option<u64>) -> Result<SearchConfig<f64>, Failure> {
        let seed = seed_flag.or(self.seed).unwrap_or(1);
        let mut config = SearchConfig::new(seed);
        if let Some(r) = self.restarts {
            config.restarts = r;
        }
        if let Some(m) = self.max_evaluations {
            config.max_evaluations = m;
        }
        if let Some(t) = self.target_leakage {
            config.target_leakage = t;
        }
        if let Some(name) = &self.optimizer {
            config.optimizer = match name.as_str() {
                "nelder-mead" => Optimizer::NelderMead,
                "random" => Optimizer::Random,
                other => {
                    return Err(Failure::input(format!(
                        "unknown optimizer {other:?} (expected nelder-mead or random)"
                    )));
                }
            };
        }
        Ok(config)
    }
}
