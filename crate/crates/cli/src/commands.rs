//! Subcommand bodies. Each returns the bytes for stdout and whether every
//! check inside it passed.

use std::f64::consts::PI;
use std::path::Path;

use gsp4_core::group::{ChartPoint, CosetCoords, Flavor};
use gsp4_core::jets::{lie_derivative, ChartFunction, GroupFunction};
use gsp4_core::lie::{verify_mult_table, BasisTag, REAL_BASIS};
use gsp4_core::matrix::RMat4;
use gsp4_core::nonsplit::{
    c1_residuals, chart_sample, ladder, ladder_closed_form, pde_residuals, verify_coefficients,
    B0Coords, B0Global, BesselParams,
};
use gsp4_core::scalar::{c, C64};
use gsp4_core::split::{growth_violation, Branch, SplitParams};
use gsp4_core::zeta::{
    closed_form_ckj, extract_ckj, lp_norm_check, z_infinity, z_infinity_quadrature, CkjTable,
    ZetaParams,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::output::{cnum, fmt, num, nums, render};
use crate::CliError;

pub struct Outcome {
    pub stdout: String,
    pub ok: bool,
}

pub const PDE_TOL: f64 = 1e-9;
pub const ANNIHILATION_TOL: f64 = 1e-8;
pub const WEIGHT_TOL: f64 = 1e-9;
pub const COEFF_TOL: f64 = 1e-6;
pub const LADDER_TOL: f64 = 1e-7;
pub const ZETA_TOL: f64 = 1e-6;

fn params_json(p: &BesselParams) -> Value {
    json!({ "l": p.l, "lp": p.lp, "m": p.m, "s": cnum(p.s) })
}

pub fn lie_table() -> Result<Outcome, CliError> {
    let r = verify_mult_table();
    let v = json!({
        "passed": r.passed,
        "failed": r.failed,
        "max_deviation": num(r.max_deviation),
    });
    Ok(Outcome { stdout: render(&v), ok: r.failed == 0 })
}

pub fn bessel_eval(prm: BesselParams, p: ChartPoint) -> Result<Outcome, CliError> {
    p.validate()?;
    let v = B0Coords(prm).eval(&p.coords().map(c))?;
    let out = json!({
        "params": params_json(&prm),
        "point": { "lambda": num(p.lambda), "zeta": num(p.zeta), "phi1": num(p.phi1), "phi2": num(p.phi2) },
        "re": num(v.re),
        "im": num(v.im),
    });
    Ok(Outcome { stdout: render(&out), ok: true })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    Pde,
    Annihilation,
    Coeffs,
    Weights,
}

impl Suite {
    fn name(self) -> &'static str {
        match self {
            Suite::Pde => "pde",
            Suite::Annihilation => "annihilation",
            Suite::Coeffs => "coeffs",
            Suite::Weights => "weights",
        }
    }
}

/// Random elements `t·u·h(λ,ζ,φ₁,φ₂)·r₃·r₄` of the identity component.
fn group_sample(n: usize, seed: u64) -> Vec<RMat4> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| {
            let v = [
                rng.gen_range(0.5..2.0),
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-1.0..1.0),
                rng.gen_range(0.2..1.5),
                rng.gen_range(1.05..1.8),
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-0.6..0.6),
                rng.gen_range(-PI..PI),
                rng.gen_range(-PI..PI),
            ];
            CosetCoords::from_vec(Flavor::NonSplit, &v).reassemble().expect("regular chart point")
        })
        .collect()
}

fn max_of(xs: impl IntoIterator<Item = f64>) -> f64 {
    xs.into_iter().fold(0.0, f64::max)
}

fn run_suite(suite: Suite, prm: &BesselParams, samples: usize, seed: u64) -> Result<(f64, f64), CliError> {
    let f = B0Global(*prm);
    let worst = match suite {
        Suite::Pde => {
            let res: Vec<f64> = chart_sample(samples, seed)
                .par_iter()
                .map(|p| {
                    let a = pde_residuals(p, prm)?;
                    let b = c1_residuals(p, prm)?;
                    Ok(max_of(a.into_iter().chain(b)))
                })
                .collect::<gsp4_core::Result<_>>()?;
            (max_of(res), PDE_TOL)
        }
        Suite::Annihilation | Suite::Weights => {
            let res: Vec<f64> = group_sample(samples, seed)
                .par_iter()
                .map(|g| {
                    let v = f.eval_at(g)?;
                    let d = |t: BasisTag| lie_derivative(&f, g, &[t.matrix()]);
                    let r = if suite == Suite::Annihilation {
                        let tags = [BasisTag::Nplus, BasisTag::Xminus, BasisTag::P1minus, BasisTag::P0minus];
                        let mut w = 0.0;
                        for t in tags {
                            w = f64::max(w, d(t)?.norm() / v.norm());
                        }
                        w
                    } else {
                        let a = (d(BasisTag::Z)? - v * prm.l as f64).norm();
                        let b = (d(BasisTag::Zp)? - v * prm.lp as f64).norm();
                        a.max(b) / v.norm()
                    };
                    Ok(r)
                })
                .collect::<gsp4_core::Result<_>>()?;
            let tol = if suite == Suite::Annihilation { ANNIHILATION_TOL } else { WEIGHT_TOL };
            (max_of(res), tol)
        }
        Suite::Coeffs => {
            let points = [
                ChartPoint::nonsplit(1.1, 1.4, 0.2, 0.3),
                ChartPoint::nonsplit(0.7, 1.25, -0.6, -0.2),
                ChartPoint::nonsplit(1.6, 1.8, 0.9, 0.45),
            ];
            let mut w = 0.0;
            for p in &points {
                for tag in REAL_BASIS {
                    w = f64::max(w, verify_coefficients(tag, p, 1e-5)?.max_deviation);
                }
            }
            (w, COEFF_TOL)
        }
    };
    Ok(worst)
}

pub fn bessel_verify(prm: BesselParams, suite: Option<Suite>, samples: usize, seed: u64) -> Result<Outcome, CliError> {
    let suites = match suite {
        Some(s) => vec![s],
        None => vec![Suite::Pde, Suite::Annihilation, Suite::Coeffs, Suite::Weights],
    };
    let mut rows = Vec::new();
    let mut ok = true;
    for s in suites {
        let (worst, tol) = run_suite(s, &prm, samples, seed)?;
        let pass = worst < tol;
        ok &= pass;
        rows.push(json!({
            "suite": s.name(),
            "max_residual": num(worst),
            "tolerance": num(tol),
            "passed": pass,
        }));
    }
    let v = json!({
        "params": params_json(&prm),
        "samples": samples,
        "seed": seed,
        "suites": rows,
        "passed": ok,
    });
    Ok(Outcome { stdout: render(&v), ok })
}

/// `(λ, ζ)` grid used to compare with the closed forms at `φ₁ = φ₂ = 0`.
fn closed_form_grid() -> Vec<(f64, f64)> {
    [0.3, 0.5, 0.7, 0.9, 1.2, 1.5]
        .iter()
        .flat_map(|&lam| [1.05, 1.2, 1.4, 1.65, 1.9].map(|z| (lam, z)))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum PointSet {
    /// The 30-point `(λ, ζ, 0, 0)` grid.
    Grid,
    /// Random chart points with `|φ₂| < 0.6`.
    Random,
}

pub struct LadderArgs<'a> {
    pub k: Option<usize>,
    pub points: PointSet,
    pub samples: usize,
    pub seed: u64,
    pub csv_path: Option<&'a Path>,
}

pub fn ladder_cmd(prm: BesselParams, a: &LadderArgs) -> Result<Outcome, CliError> {
    let k = a.k.unwrap_or(((prm.l - prm.lp) / 2) as usize);
    if k > 4 {
        return Err(CliError::Usage(format!("k = {k} needs jet order {} > 24", 5 * k + 1)));
    }
    let v = ladder(prm.l, prm.lp, prm.m, prm.s, k)?;
    let points = match a.points {
        PointSet::Grid => closed_form_grid()
            .into_iter()
            .map(|(lam, z)| ChartPoint::nonsplit(lam, z, 0.0, 0.0))
            .collect(),
        PointSet::Random => chart_sample(a.samples, a.seed),
    };
    let smp = v.eval_many(&points)?;
    let worst = max_of(smp.iter().map(|s| s.n_plus.norm() / s.value.norm()));
    if let Some(path) = a.csv_path {
        let mut w = csv::Writer::from_path(path)?;
        w.write_record(["lambda", "zeta", "phi1", "phi2", "re", "im"])?;
        for s in &smp {
            let p = s.point;
            w.write_record([p.lambda, p.zeta, p.phi1, p.phi2, s.value.re, s.value.im].map(fmt))?;
        }
        w.flush()?;
    }
    let closed = if prm.m == 0 && prm.s == c(0.0) && (1..=4).contains(&k) {
        let grid = closed_form_grid();
        let got: Vec<f64> = grid
            .par_iter()
            .map(|&(lam, z)| Ok(v.eval(&ChartPoint::nonsplit(lam, z, 0.0, 0.0))?.value.re))
            .collect::<gsp4_core::Result<_>>()?;
        let want: Vec<f64> = grid
            .iter()
            .map(|&(lam, z)| ladder_closed_form(prm.l, k, lam, z))
            .collect::<gsp4_core::Result<_>>()?;
        let t = got.iter().zip(&want).map(|(a, b)| a * b).sum::<f64>() / want.iter().map(|b| b * b).sum::<f64>();
        let scale = max_of(got.iter().map(|x| x.abs()));
        let res = max_of(got.iter().zip(&want).map(|(a, b)| (a - t * b).abs())) / scale;
        json!({ "proportionality": num(t), "residual": num(res) })
    } else {
        Value::Null
    };
    let ok = worst < LADDER_TOL;
    let out = json!({
        "params": params_json(&prm),
        "k": k,
        "weight": [v.weight.0, v.weight.1],
        "points": match a.points { PointSet::Grid => "grid", PointSet::Random => "random" },
        "samples": points.len(),
        "seed": a.seed,
        "max_n_plus_residual": num(worst),
        "tolerance": num(LADDER_TOL),
        "closed_form": closed,
        "passed": ok,
    });
    Ok(Outcome { stdout: render(&out), ok })
}

pub fn split_demo(prm: SplitParams, beta_max: f64, angles: (f64, f64), branch: Branch) -> Result<(Outcome, String), CliError> {
    let r = growth_violation(&prm, beta_max, angles, branch)?;
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["beta", "t", "log_gap"])?;
    for row in &r.rows {
        w.write_record([row.beta, row.t, row.log_gap].map(fmt))?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Io(e.into_error()))?;
    let mut summary = String::new();
    for wt in &r.witnesses {
        summary.push_str(&format!(
            "beta {}: eventually increasing {}, exceeds 1e3 at t = {}\n",
            fmt(wt.beta),
            wt.eventually_increasing,
            wt.exceeds_at.map_or("never".to_string(), fmt)
        ));
    }
    summary.push_str(&format!("moderate growth violated: {}\n", r.violated));
    let stdout = String::from_utf8(bytes).expect("csv output is ASCII");
    Ok((Outcome { stdout, ok: r.violated }, summary))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum TableSource {
    /// Coefficients fitted to the ladder output.
    Fitted,
    /// Coefficients expanded from the closed-form displays.
    Printed,
}

pub struct ZetaArgs {
    pub l: i32,
    pub n: i32,
    pub d: u32,
    pub s: C64,
    pub r: C64,
    pub c1: C64,
    pub quadrature: bool,
    pub table: TableSource,
}

fn table_json(t: &CkjTable) -> Value {
    Value::Array(
        t.entries
            .iter()
            .map(|e| json!({ "k": e.k, "j": e.j, "c": num(e.value) }))
            .collect(),
    )
}

pub fn zeta(a: &ZetaArgs) -> Result<Outcome, CliError> {
    let p = ZetaParams::new(a.l, a.n, a.d, a.r, a.c1)?;
    let table = match a.table {
        TableSource::Fitted => extract_ckj(a.l, a.n)?,
        TableSource::Printed => closed_form_ckj(a.l, a.n)?,
    };
    let closed = z_infinity(a.s, &p, &table)?;
    let (quad, rel) = if a.quadrature {
        let q = z_infinity_quadrature(a.s, &p, &table, 1e-8)?;
        (Some(q), Some(((q - closed) / closed).norm()))
    } else {
        (None, None)
    };
    let ok = rel.map_or(true, |r| r < ZETA_TOL);
    let out = json!({
        "params": {
            "l": a.l, "n": a.n, "D": a.d,
            "s": cnum(a.s), "r": cnum(a.r), "c1": cnum(a.c1),
            "table": match a.table { TableSource::Fitted => "fitted", TableSource::Printed => "printed" },
        },
        "table": table_json(&table),
        "table_residual": num(table.residual),
        "closed": cnum(closed),
        "quadrature": quad.map_or(Value::Null, cnum),
        "rel_err": rel.map_or(Value::Null, num),
        "passed": ok,
    });
    Ok(Outcome { stdout: render(&out), ok })
}

pub fn lp_check(l: i32, lp: i32, m: i32, p: f64) -> Result<Outcome, CliError> {
    let r = lp_norm_check(l, lp, m, p)?;
    let (alpha, beta, gamma, delta) = r.exponents;
    let out = json!({
        "params": { "l": l, "lp": lp, "m": m, "p": num(p) },
        "exponents": { "alpha": num(alpha), "beta": beta, "gamma": gamma, "delta": num(delta) },
        "convergent": r.convergent,
        "classification": format!("{:?}", r.numeric.classification).to_lowercase(),
        "consistent": r.consistent,
        "radii": nums(&r.numeric.radii),
        "partial_integrals": nums(&r.numeric.values),
    });
    Ok(Outcome { stdout: render(&out), ok: r.consistent })
}
