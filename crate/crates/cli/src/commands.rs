//! The five subcommand implementations. Each returns the process exit
//! code: 0 for success (and met targets), 1 for quantitative failures.

use crate::input::{self, AnsatzIn, ConfigIn, HamiltonianIn, MatrixIn};
use crate::report::{self, HamiltonianOut, RunClock, SearchOut, UnitaryOut, VerifyOut};
use crate::{Failure, Family, Format, Shape};
use gateforge_core::evolution::{evolve_const, evolve_protocol, verify_gate, Protocol};
use gateforge_core::gates::GateSpec;
use gateforge_core::linalg::{eig_hermitian, CMatrix};
use gateforge_core::pauli;
use gateforge_core::search::run_search;
use gateforge_core::synthesis::{hamiltonian_not1, hamiltonian_not2, hamiltonian_xor};
use gateforge_core::PauliPolynomial64;
use num_complex::Complex;
use serde_json::json;
use std::path::Path;

const EIG_TOL: f64 = 1e-9;

fn gate_spec(family: Family) -> GateSpec {
    match family {
        Family::Not1 => GateSpec::not1(),
        Family::Not2 => GateSpec::not2(),
        Family::Xor => GateSpec::xor(),
    }
}

fn format_name(format: Format) -> &'static str {
    match format {
        Format::Json => "json",
        Format::Csv => "csv",
    }
}

fn out_name(out: Option<&Path>) -> serde_json::Value {
    match out {
        Some(p) => json!(p.display().to_string()),
        None => json!(null),
    }
}

/// Energies reported alongside a Hamiltonian: its eigenvalues, ascending.
fn level_energies(poly: &PauliPolynomial64) -> Result<Vec<f64>, Failure> {
    Ok(eig_hermitian(&poly.to_matrix(), EIG_TOL)?.0)
}

#[allow(clippy::too_many_arguments)]
pub fn synth(
    family: Family,
    params_arg: &str,
    delta_t: f64,
    hbar: f64,
    degrees: bool,
    out: Option<&Path>,
    format: Format,
) -> Result<i32, Failure> {
    let clock = RunClock::start();
    let text = input::read_source(params_arg)?;
    let angle = |x: f64| if degrees { x.to_radians() } else { x };
    let (poly, branch, params_resolved) = match family {
        Family::Not1 => {
            let p: input::Not1ParamsIn = serde_json::from_str(&text)?;
            let gamma = angle(p.gamma);
            (
                hamiltonian_not1(p.n, gamma, delta_t, hbar)?,
                vec![p.n],
                json!({"family": "not1", "N": p.n, "gamma": gamma}),
            )
        }
        Family::Not2 => {
            let p: input::Not2ParamsIn = serde_json::from_str(&text)?;
            let gamma = angle(p.gamma);
            (
                hamiltonian_not2(p.e, p.n, gamma, delta_t, hbar)?,
                vec![p.n],
                json!({"family": "not2", "E": p.e, "N": p.n, "gamma": gamma}),
            )
        }
        Family::Xor => {
            let p: input::XorParamsIn = serde_json::from_str(&text)?;
            let (a, b, g) = (angle(p.alpha), angle(p.beta), angle(p.gamma));
            (
                hamiltonian_xor(a, b, g, delta_t, hbar)?,
                // The level choice whose cluster energies reproduce the
                // closed form: principal branch on all four clusters.
                vec![0, 0, 0, 0],
                json!({"family": "xor", "alpha": a, "beta": b, "gamma": g}),
            )
        }
    };
    let energies = level_energies(&poly)?;
    let doc = HamiltonianOut::build(&poly, delta_t, hbar, Some(energies), Some(branch));
    let config = json!({
        "params": params_resolved,
        "delta_t": delta_t,
        "hbar": hbar,
        "degrees": degrees,
        "format": format_name(format),
        "out": out_name(out),
    });
    report::emit(out, &doc.render(format), config, None, &clock)?;
    Ok(0)
}

pub fn decompose(
    matrix_arg: &str,
    delta_t: f64,
    hbar: f64,
    out: Option<&Path>,
    format: Format,
) -> Result<i32, Failure> {
    let clock = RunClock::start();
    let text = input::read_source(matrix_arg)?;
    let file = MatrixIn::parse(&text)?;
    let entries: Vec<Complex<f64>> = file
        .entries
        .iter()
        .map(|&[re, im]| Complex::new(re, im))
        .collect();
    let matrix = CMatrix::from_entries(file.dim, entries)?;
    let poly = pauli::decompose(&matrix)?;
    let energies = eig_hermitian(&matrix, EIG_TOL)?.0;
    let doc = HamiltonianOut::build(&poly, delta_t, hbar, Some(energies), None);
    let config = json!({
        "dim": file.dim,
        "delta_t": delta_t,
        "hbar": hbar,
        "format": format_name(format),
        "out": out_name(out),
    });
    report::emit(out, &doc.render(format), config, None, &clock)?;
    Ok(0)
}

#[allow(clippy::too_many_arguments)]
pub fn evolve(
    hamiltonian_arg: &str,
    shape: Shape,
    steps: usize,
    delta_t: Option<f64>,
    hbar: Option<f64>,
    out: Option<&Path>,
    format: Format,
) -> Result<i32, Failure> {
    let clock = RunClock::start();
    let text = input::read_source(hamiltonian_arg)?;
    let file = HamiltonianIn::parse(&text)?;
    let poly = file.to_polynomial()?;
    let dt = delta_t.unwrap_or(file.delta_t);
    let hb = hbar.unwrap_or(file.hbar);
    let (u, shape_name) = match shape {
        Shape::Constant => (evolve_const(&poly, dt, hb)?, "constant"),
        Shape::RaisedCosine => {
            let protocol = Protocol::RaisedCosine {
                amplitude: 1.0,
                t0: 0.0,
                delta_t: dt,
            };
            (evolve_protocol(&poly, &protocol, steps, hb)?, "raised-cosine")
        }
    };
    let doc = UnitaryOut::build(&u);
    let config = json!({
        "shape": shape_name,
        "steps": steps,
        "delta_t": dt,
        "hbar": hb,
        "format": format_name(format),
        "out": out_name(out),
    });
    report::emit(out, &doc.render(format), config, None, &clock)?;
    Ok(0)
}

pub fn verify(
    hamiltonian_arg: &str,
    spec: Family,
    tol: f64,
    out: Option<&Path>,
    format: Format,
) -> Result<i32, Failure> {
    let clock = RunClock::start();
    let text = input::read_source(hamiltonian_arg)?;
    let file = HamiltonianIn::parse(&text)?;
    let poly = file.to_polynomial()?;
    let gate = gate_spec(spec);
    let u = evolve_const(&poly, file.delta_t, file.hbar)?;
    let outcome = verify_gate(&u, &gate, tol)?;
    let doc = VerifyOut::build(gate.name(), &outcome);
    let config = json!({
        "spec": gate.name(),
        "tol": tol,
        "delta_t": file.delta_t,
        "hbar": file.hbar,
        "format": format_name(format),
        "out": out_name(out),
    });
    report::emit(out, &doc.render(format), config, None, &clock)?;
    Ok(if outcome.passed { 0 } else { 1 })
}

#[allow(clippy::too_many_arguments)]
pub fn search(
    ansatz_arg: &str,
    spec: Family,
    config_arg: Option<&str>,
    seed_flag: Option<u64>,
    delta_t: f64,
    hbar: f64,
    out: Option<&Path>,
    format: Format,
) -> Result<i32, Failure> {
    let clock = RunClock::start();
    let ansatz_text = input::read_source(ansatz_arg)?;
    let ansatz = AnsatzIn::parse(&ansatz_text)?.build(delta_t, hbar)?;
    let config_in = match config_arg {
        Some(arg) => ConfigIn::parse(&input::read_source(arg)?)?,
        None => ConfigIn::default(),
    };
    let config = config_in.resolve(seed_flag)?;
    let gate = gate_spec(spec);
    let result = run_search(&ansatz, &gate, &config, delta_t, hbar)?;
    let doc = SearchOut::build(gate.name(), &ansatz, &config, &result);
    let optimizer_name = match config.optimizer {
        gateforge_core::search::Optimizer::NelderMead => "nelder-mead",
        gateforge_core::search::Optimizer::Random => "random",
    };
    let manifest_config = json!({
        "spec": gate.name(),
        "ansatz": serde_json::from_str::<serde_json::Value>(&ansatz_text)?,
        "restarts": config.restarts,
        "max_evaluations": config.max_evaluations,
        "seed": config.seed,
        "target_leakage": config.target_leakage,
        "optimizer": optimizer_name,
        "delta_t": delta_t,
        "hbar": hbar,
        "format": format_name(format),
        "out": out_name(out),
    });
    let met = doc.target_met();
    report::emit(out, &doc.render(format), manifest_config, Some(config.seed), &clock)?;
    Ok(if met { 0 } else { 1 })
}
