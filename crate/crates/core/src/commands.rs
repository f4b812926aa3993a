//! The four pipeline commands. Each writes its outputs under the configured
//! prefix and returns the record it wrote.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::config::RunConfig;
use crate::error::{Error, Result};
use crate::field::ScalarField;
use crate::geo::{pack, GeoLimits, PackingResult};
use crate::io::{read_field, write_field};
use crate::plap::{sweep, SweepRecord, SWEEP_CSV_HEADER};
use crate::viscosity::{evaluate, ViscosityReport};

fn output_path(cfg: &RunConfig, suffix: &str) -> PathBuf {
    PathBuf::from(format!("{}_{suffix}", cfg.out))
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut text =
        serde_json::to_string_pretty(value).map_err(|e| Error::Numeric(e.to_string()))?;
    text.push('\n');
    std::fs::write(path, text)?;
    Ok(())
}

/// Writes `<out>_limits.json`.
pub fn cmd_limits(cfg: &RunConfig) -> Result<GeoLimits> {
    let prob = cfg.build()?;
    let limits = GeoLimits::compute(&prob.dist, &prob.weight)?;
    write_json(&output_path(cfg, "limits.json"), &limits)?;
    Ok(limits)
}

pub fn limits_summary(l: &GeoLimits) -> String {
    let mut s = String::new();
    writeln!(
        s,
        "R+            {:.6}  at node ({}, {})",
        l.r_plus, l.center_plus.i, l.center_plus.j
    )
    .unwrap();
    match (l.r_minus, l.center_minus) {
        (Some(r), Some(c)) => {
            writeln!(s, "R-            {r:.6}  at node ({}, {})", c.i, c.j).unwrap()
        }
        _ => writeln!(s, "R-            (no negative region)").unwrap(),
    }
    writeln!(s, "R2,+          {:.6}", l.r2_plus).unwrap();
    writeln!(s, "lambda1,inf   {:.6}", l.lambda1_inf).unwrap();
    writeln!(s, "lambda2,inf   {:.6}", l.lambda2_inf).unwrap();
    if let Some(mu) = l.mu1_inf {
        writeln!(s, "mu1,inf       {mu:.6}").unwrap();
    }
    writeln!(s, "lambda1,inf(C,m) {:.6}", l.lambda1_inf_c).unwrap();
    s
}

/// Outcome of a sweep: one entry per `p`, in order.
pub struct SweepOutcome {
    pub entries: Vec<(f64, Result<SweepRecord>)>,
}

impl SweepOutcome {
    pub fn all_converged(&self) -> bool {
        self.entries
            .iter()
            .all(|(_, r)| matches!(r, Ok(rec) if rec.converged))
    }
}

/// Writes `<out>_sweep.csv` and one `<out>_field_p<p>.csv` per solved `p`.
pub fn cmd_sweep(cfg: &RunConfig) -> Result<SweepOutcome> {
    let prob = cfg.build()?;
    let p_list = &cfg.solver.p_list;
    let results = sweep(
        &prob.weight,
        p_list,
        prob.potential.as_ref(),
        &cfg.solver_options(),
    )?;
    let mut csv = String::from(SWEEP_CSV_HEADER);
    csv.push('\n');
    for (&p, entry) in p_list.iter().zip(&results) {
        match entry {
            Ok(rec) => {
                csv.push_str(&rec.csv_row());
                let path = output_path(cfg, &format!("field_p{p}.csv"));
                write_field(&path, "eigenfield", prob.grid(), rec.result.field.values())?;
            }
            Err(_) => writeln!(csv, "{p},NaN,NaN,NaN,NaN,0,false").unwrap(),
        }
        csv.push('\n');
    }
    std::fs::write(output_path(cfg, "sweep.csv"), csv)?;
    Ok(SweepOutcome {
        entries: p_list.iter().copied().zip(results).collect(),
    })
}

/// Checks a stored field against the configured problem; writes
/// `<out>_check.json` and the per-node residuals to `<out>_residual.csv`.
pub fn cmd_check(cfg: &RunConfig, field_path: &Path, lambda: f64) -> Result<ViscosityReport> {
    let prob = cfg.build()?;
    let (header, values) = read_field(field_path)?;
    let grid = header.grid()?;
    if !grid.same_as(prob.grid()) {
        return Err(Error::GridMismatch(format!(
            "field is {}x{} with h = {}, config grid is {}x{} with h = {}",
            grid.nx,
            grid.ny,
            grid.h,
            prob.grid().nx,
            prob.grid().ny,
            prob.grid().h
        )));
    }
    let u = ScalarField::new(&prob.mask, values)?;
    let eval = evaluate(&u, lambda, &prob.weight, &cfg.check_options())?;
    write_json(&output_path(cfg, "check.json"), &eval.report)?;
    write_field(
        &output_path(cfg, "residual.csv"),
        "residual",
        prob.grid(),
        eval.residual.values(),
    )?;
    Ok(eval.report)
}

pub fn check_summary(r: &ViscosityReport) -> String {
    let mut s = String::new();
    writeln!(s, "tolerance {:.3e} (h = {})", r.tolerance, r.h).unwrap();
    for (name, st) in [("pos", &r.pos), ("neg", &r.neg), ("zero", &r.zero)] {
        writeln!(
            s,
            "{name:<5} nodes {:>8}  max residual {:.3e}  {}",
            st.count,
            st.max_residual,
            if st.pass { "pass" } else { "FAIL" }
        )
        .unwrap();
    }
    writeln!(s, "excluded {}", r.excluded).unwrap();
    writeln!(
        s,
        "boundary max |u| {:.3e}  {}",
        r.boundary_max,
        if r.boundary_pass { "pass" } else { "FAIL" }
    )
    .unwrap();
    s
}

/// Packs `pack.k` balls into the positive region; writes `<out>_pack.json`.
pub fn cmd_pack(cfg: &RunConfig) -> Result<PackingResult> {
    let prob = cfg.build()?;
    let res = pack(
        cfg.pack.k,
        &prob.dist,
        prob.weight.plus(),
        &cfg.pack_options(),
    )?;
    write_json(&output_path(cfg, "pack.json"), &res)?;
    Ok(res)
}
