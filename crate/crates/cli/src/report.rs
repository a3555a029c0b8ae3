//! Report construction and serialization. All floating-point values in
//! data files are printed with 17 significant digits so that re-parsing
//! reproduces each `f64` bit-exactly; reports carry no timestamps, which
//! live in the side-car run manifest instead.

use crate::{Failure, Format};
use gateforge_core::evolution::VerificationReport;
use gateforge_core::linalg::CMatrix;
use gateforge_core::pauli::locality_profile;
use gateforge_core::search::{CouplingAnsatz, SearchConfig, SearchResult};
use gateforge_core::PauliPolynomial64;
use num_complex::Complex;
use serde::Serialize;
use serde_json::value::RawValue;
use std::collections::BTreeMap;
use std::path::Path;
use std::time::{Instant, SystemTime};

pub const SCHEMA: &str = "gateforge/1";

/// A finite `f64` as a raw JSON number with 17 significant digits.
fn num(x: f64) -> Box<RawValue> {
    debug_assert!(x.is_finite());
    RawValue::from_string(format!("{x:.16e}")).expect("a finite float is a valid JSON number")
}

#[derive(Serialize)]
struct TermOut {
    string: String,
    coefficient: Box<RawValue>,
}

#[derive(Serialize)]
pub struct HamiltonianOut {
    schema: &'static str,
    n_qubits: usize,
    hbar: Box<RawValue>,
    delta_t: Box<RawValue>,
    terms: Vec<TermOut>,
    energies: Option<Vec<Box<RawValue>>>,
    branch: Option<Vec<i64>>,
    locality_profile: BTreeMap<usize, Vec<String>>,
    constant_term: Box<RawValue>,
}

impl HamiltonianOut {
    pub fn build(
        poly: &PauliPolynomial64,
        delta_t: f64,
        hbar: f64,
        energies: Option<Vec<f64>>,
        branch: Option<Vec<i64>>,
    ) -> Self {
        let identity: String = "I".repeat(poly.n_qubits());
        let constant = poly.coefficient(&identity.parse().expect("identity string is valid"));
        let profile = locality_profile(poly)
            .into_iter()
            .map(|(w, terms)| (w, terms.into_iter().map(|(s, _)| s.to_string()).collect()))
            .collect();
        HamiltonianOut {
            schema: SCHEMA,
            n_qubits: poly.n_qubits(),
            hbar: num(hbar),
            delta_t: num(delta_t),
            terms: poly
                .terms()
                .map(|(s, c)| TermOut {
                    string: s.to_string(),
                    coefficient: num(c),
                })
                .collect(),
            energies: energies.map(|es| es.into_iter().map(num).collect()),
            branch,
            locality_profile: profile,
            constant_term: num(constant),
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => pretty(self),
            Format::Csv => {
                let mut out = String::from("string,coefficient\n");
                for t in &self.terms {
                    out.push_str(&format!("{},{}\n", t.string, t.coefficient.get()));
                }
                out
            }
        }
    }
}

#[derive(Serialize)]
struct RowOut {
    label: String,
    leakage: Box<RawValue>,
}

#[derive(Serialize)]
pub struct VerifyOut {
    schema: &'static str,
    spec: String,
    passed: bool,
    tolerance: Box<RawValue>,
    worst_leakage: Box<RawValue>,
    rows: Vec<RowOut>,
}

impl VerifyOut {
    pub fn build(spec_name: &str, report: &VerificationReport<f64>) -> Self {
        VerifyOut {
            schema: SCHEMA,
            spec: spec_name.to_string(),
            passed: report.passed,
            tolerance: num(report.tolerance),
            worst_leakage: num(report.worst_leakage),
            rows: report
                .rows
                .iter()
                .map(|r| RowOut {
                    label: r.label.clone(),
                    leakage: num(r.leakage),
                })
                .collect(),
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => pretty(self),
            Format::Csv => {
                let mut out = String::from("label,leakage\n");
                for r in &self.rows {
                    out.push_str(&format!("{},{}\n", r.label, r.leakage.get()));
                }
                out
            }
        }
    }
}

#[derive(Serialize)]
struct HistoryOut {
    restart: usize,
    evaluation: usize,
    best_leakage: Box<RawValue>,
}

#[derive(Serialize)]
pub struct SearchOut {
    schema: &'static str,
    spec: String,
    terms: Vec<String>,
    best_coefficients: Vec<Box<RawValue>>,
    best_leakage: Box<RawValue>,
    target_leakage: Box<RawValue>,
    target_met: bool,
    evaluations_used: usize,
    history: Vec<HistoryOut>,
}

impl SearchOut {
    pub fn build(
        spec_name: &str,
        ansatz: &CouplingAnsatz<f64>,
        config: &SearchConfig<f64>,
        result: &SearchResult<f64>,
    ) -> Self {
        SearchOut {
            schema: SCHEMA,
            spec: spec_name.to_string(),
            terms: ansatz.terms().iter().map(|s| s.to_string()).collect(),
            best_coefficients: result.best_coefficients.iter().map(|&c| num(c)).collect(),
            best_leakage: num(result.best_leakage),
            target_leakage: num(config.target_leakage),
            target_met: result.best_leakage <= config.target_leakage,
            evaluations_used: result.evaluations_used,
            history: result
                .history
                .iter()
                .map(|p| HistoryOut {
                    restart: p.restart,
                    evaluation: p.evaluation,
                    best_leakage: num(p.best_leakage),
                })
                .collect(),
        }
    }

    pub fn target_met(&self) -> bool {
        self.target_met
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => pretty(self),
            Format::Csv => {
                let mut out = String::from("restart,evaluation,best_leakage\n");
                for p in &self.history {
                    out.push_str(&format!(
                        "{},{},{}\n",
                        p.restart,
                        p.evaluation,
                        p.best_leakage.get()
                    ));
                }
                out
            }
        }
    }
}

#[derive(Serialize)]
pub struct UnitaryOut {
    schema: &'static str,
    dim: usize,
    unitarity_residual: Box<RawValue>,
    entries: Vec<[Box<RawValue>; 2]>,
}

impl UnitaryOut {
    pub fn build(u: &CMatrix<f64>) -> Self {
        UnitaryOut {
            schema: SCHEMA,
            dim: u.dim(),
            unitarity_residual: num(u.unitarity_residual()),
            entries: u
                .entries()
                .iter()
                .map(|z: &Complex<f64>| [num(z.re), num(z.im)])
                .collect(),
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => pretty(self),
            Format::Csv => {
                let mut out = String::from("row,col,re,im\n");
                for (k, [re, im]) in self.entries.iter().enumerate() {
                    out.push_str(&format!(
                        "{},{},{},{}\n",
                        k / self.dim,
                        k % self.dim,
                        re.get(),
                        im.get()
                    ));
                }
                out
            }
        }
    }
}

fn pretty(value: &impl Serialize) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("reports serialize infallibly");
    text.push('\n');
    text
}

#[derive(Serialize)]
struct WallClock {
    started_unix_s: u64,
    elapsed_s: f64,
}

#[derive(Serialize)]
struct Manifest {
    schema: &'static str,
    command: Vec<String>,
    config: serde_json::Value,
    seed: Option<u64>,
    version: &'static str,
    wall_clock: WallClock,
}

/// Timestamps for the run manifest: wall-clock start plus elapsed time.
pub struct RunClock {
    started_unix_s: u64,
    began: Instant,
}

impl RunClock {
    pub fn start() -> Self {
        let started_unix_s = SystemTime::now()
            .duration_since(SystemTime::UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        RunClock {
            started_unix_s,
            began: Instant::now(),
        }
    }
}

/// Write the report to `out` (or stdout) and, when writing a file, the
/// reproducibility manifest to `<out>.manifest.json`.
pub fn emit(
    out: Option<&Path>,
    body: &str,
    config: serde_json::Value,
    seed: Option<u64>,
    clock: &RunClock,
) -> Result<(), Failure> {
    match out {
        Some(path) => {
            std::fs::write(path, body)?;
            let manifest = Manifest {
                schema: SCHEMA,
                command: std::env::args().collect(),
                config,
                seed,
                version: env!("CARGO_PKG_VERSION"),
                wall_clock: WallClock {
                    started_unix_s: clock.started_unix_s,
                    elapsed_s: clock.began.elapsed().as_secs_f64(),
                },
            };
            let mut sidecar = path.as_os_str().to_owned();
            sidecar.push(".manifest.json");
            std::fs::write(sidecar, pretty(&manifest))?;
        }
        None => print!("{body}"),
    }
    Ok(())
}
