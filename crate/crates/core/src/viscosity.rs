//! Smooth-point residual proxy for the limit equation
//!
//! ```text
//! -Δ∞u = 0                          where m u = 0 (interior of the set)
//! min{-Δ∞u, |∇u| - λ u} = 0         where m u > 0
//! max{-Δ∞u, -|∇u| - λ u} = 0        where m u < 0
//! ```
//!
//! with `Δ∞u = <D²u ∇u, ∇u>`. Residuals are only meaningful where centered
//! stencils see a smooth field, so kinks of `u`, a fixed-radius halo around
//! them and nodes whose 3×3 stencil leaves the domain are excluded.

use serde::Serialize;

use crate::edt::{edt, squared_distance_to};
use crate::error::{Error, Result};
use crate::field::ScalarField;
use crate::grid::Grid;
use crate::weight::WeightField;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Regime {
    Pos,
    Neg,
    Zero,
    Excluded,
}

/// One label per inside node; `None` outside the domain.
#[derive(Clone, Debug, PartialEq)]
pub struct RegimeMask {
    pub grid: Grid,
    pub labels: Vec<Option<Regime>>,
}

impl RegimeMask {
    pub fn count(&self, r: Regime) -> usize {
        self.labels.iter().filter(|l| **l == Some(r)).count()
    }
}

#[derive(Clone, Debug)]
pub struct CheckOptions {
    /// `|m u|` at or below `eps_rel * max |m u|` counts as zero.
    pub eps_rel: f64,
    /// A node is a kink when its one-sided slopes along an axis differ by
    /// more than this fraction of the field's Lipschitz constant.
    pub kink_tol_frac: f64,
    /// Nodes within this fraction of the inradius from a kink are excluded.
    pub ridge_halo_frac: f64,
    /// Pass tolerance is `c_tol * h`.
    pub c_tol: f64,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions {
            eps_rel: 1e-12,
            kink_tol_frac: 0.2,
            ridge_halo_frac: 0.15,
            c_tol: 4.0,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RegimeStats {
    pub count: usize,
    pub max_residual: f64,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ViscosityReport {
    pub h: f64,
    pub lambda: f64,
    pub tolerance: f64,
    pub pos: RegimeStats,
    pub neg: RegimeStats,
    pub zero: RegimeStats,
    pub excluded: usize,
    /// `max |u|` over outside nodes; zero for a Dirichlet field.
    pub boundary_max: f64,
    pub boundary_pass: bool,
}

impl ViscosityReport {
    pub fn pass(&self) -> bool {
        self.pos.pass && self.neg.pass && self.zero.pass && self.boundary_pass
    }
}

/// Labels, per-node residuals and the summary of one check.
#[derive(Clone, Debug)]
pub struct Evaluation {
    pub regimes: RegimeMask,
    /// Residual at evaluated nodes, 0 elsewhere.
    pub residual: ScalarField,
    pub report: ViscosityReport,
}

/// Centered first and second differences at a grid-interior node:
/// `(ux, uy, uxx, uyy, uxy)`.
fn derivatives(grid: &Grid, u: &[f64], i: usize, j: usize) -> [f64; 5] {
    let h = grid.h;
    let at =
        |di: isize, dj: isize| u[grid.idx((i as isize + di) as usize, (j as isize + dj) as usize)];
    let c = at(0, 0);
    let (e, w, n, s) = (at(1, 0), at(-1, 0), at(0, 1), at(0, -1));
    let ux = (e - w) / (2.0 * h);
    let uy = (n - s) / (2.0 * h);
    let uxx = (e - 2.0 * c + w) / (h * h);
    let uyy = (n - 2.0 * c + s) / (h * h);
    let uxy = (at(1, 1) - at(1, -1) - at(-1, 1) + at(-1, -1)) / (4.0 * h * h);
    [ux, uy, uxx, uyy, uxy]
}

fn inf_lap_at(d: [f64; 5]) -> f64 {
    let [ux, uy, uxx, uyy, uxy] = d;
    ux * ux * uxx + 2.0 * ux * uy * uxy + uy * uy * uyy
}

/// `<D²u ∇u, ∇u>` by centered differences at every node off the grid border
/// (border nodes get 0).
pub fn inf_laplacian(u: &ScalarField) -> ScalarField {
    let grid = *u.grid();
    let mut out = vec![0.0; grid.len()];
    for j in 1..grid.ny - 1 {
        for i in 1..grid.nx - 1 {
            out[grid.idx(i, j)] = inf_lap_at(derivatives(&grid, u.values(), i, j));
        }
    }
    ScalarField::from_raw(grid, out)
}

/// Largest difference quotient over grid edges.
fn lipschitz(grid: &Grid, u: &[f64]) -> f64 {
    let mut lip = 0.0f64;
    for j in 0..grid.ny {
        for i in 0..grid.nx {
            let k = grid.idx(i, j);
            if i + 1 < grid.nx {
                lip = lip.max((u[k + 1] - u[k]).abs());
            }
            if j + 1 < grid.ny {
                lip = lip.max((u[k + grid.nx] - u[k]).abs());
            }
        }
    }
    lip / grid.h
}

fn kinks(grid: &Grid, u: &[f64], tol: f64) -> Vec<bool> {
    let mut out = vec![false; grid.len()];
    if tol <= 0.0 {
        return out;
    }
    let h = grid.h;
    for j in 1..grid.ny - 1 {
        for i in 1..grid.nx - 1 {
            let k = grid.idx(i, j);
            let jump_x = ((u[k + 1] - u[k]) - (u[k] - u[k - 1])).abs() / h;
            let jump_y = ((u[k + grid.nx] - u[k]) - (u[k] - u[k - grid.nx])).abs() / h;
            out[k] = jump_x > tol || jump_y > tol;
        }
    }
    out
}

pub fn evaluate(
    u: &ScalarField,
    lambda: f64,
    w: &WeightField,
    opts: &CheckOptions,
) -> Result<Evaluation> {
    if !u.grid().same_as(w.grid()) {
        return Err(Error::GridMismatch(
            "field and weight live on different grids".into(),
        ));
    }
    if !(lambda > 0.0 && lambda.is_finite()) {
        return Err(Error::Numeric(format!(
            "lambda must be positive, got {lambda}"
        )));
    }
    let grid = *w.grid();
    let mask = w.mask();
    let uv = u.values();
    let m = w.values();

    let mu: Vec<f64> = uv.iter().zip(m).map(|(a, b)| a * b).collect();
    let eps = opts.eps_rel * mu.iter().fold(0.0f64, |a, v| a.max(v.abs()));
    let small = |k: usize| mu[k].abs() <= eps;

    let kink = kinks(&grid, uv, opts.kink_tol_frac * lipschitz(&grid, uv));
    let halo = opts.ridge_halo_frac * edt(mask).max();
    let near_kink: Vec<bool> = squared_distance_to(&grid, &kink)
        .into_iter()
        .map(|s| s.is_some_and(|s| grid.h * (s as f64).sqrt() <= halo))
        .collect();

    let mut labels = vec![None; grid.len()];
    let mut residual = vec![0.0; grid.len()];
    let mut stats = [(0usize, 0.0f64); 3];
    let mut excluded = 0;
    for k in mask.inside_indices() {
        let regime = if !mask.is_stencil_interior(k) || near_kink[k] {
            Regime::Excluded
        } else if mu[k] > eps {
            Regime::Pos
        } else if mu[k] < -eps {
            Regime::Neg
        } else {
            let n = grid.node(k);
            let all_small =
                (n.j - 1..=n.j + 1).all(|j| (n.i - 1..=n.i + 1).all(|i| small(grid.idx(i, j))));
            if all_small {
                Regime::Zero
            } else {
                Regime::Excluded
            }
        };
        labels[k] = Some(regime);
        if regime == Regime::Excluded {
            excluded += 1;
            continue;
        }
        let n = grid.node(k);
        let d = derivatives(&grid, uv, n.i, n.j);
        let lap = inf_lap_at(d);
        let grad = d[0].hypot(d[1]);
        let (slot, r) = match regime {
            Regime::Pos => (0, (-lap).min(grad - lambda * uv[k]).abs()),
            Regime::Neg => (1, (-lap).max(-grad - lambda * uv[k]).abs()),
            _ => (2, lap.abs()),
        };
        residual[k] = r;
        stats[slot].0 += 1;
        stats[slot].1 = stats[slot].1.max(r);
    }

    let tolerance = opts.c_tol * grid.h;
    let make = |(count, max_residual): (usize, f64)| RegimeStats {
        count,
        max_residual,
        pass: max_residual <= tolerance,
    };
    let boundary_max = (0..grid.len())
        .filter(|&k| !mask.is_inside(k))
        .fold(0.0f64, |a, k| a.max(uv[k].abs()));
    let report = ViscosityReport {
        h: grid.h,
        lambda,
        tolerance,
        pos: make(stats[0]),
        neg: make(stats[1]),
        zero: make(stats[2]),
        excluded,
        boundary_max,
        boundary_pass: boundary_max == 0.0,
    };
    Ok(Evaluation {
        regimes: RegimeMask { grid, labels },
        residual: ScalarField::from_raw(grid, residual),
        report,
    })
}

pub fn check(
    u: &ScalarField,
    lambda: f64,
    w: &WeightField,
    opts: &CheckOptions,
) -> Result<ViscosityReport> {
    evaluate(u, lambda, w, opts).map(|e| e.report)
}
