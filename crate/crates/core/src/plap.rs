//! Discrete weighted p-Laplacian principal eigenproblem.
//!
//! The energy of a nodal field `u` is
//!
//! ```text
//! E(u) = h^2/4 * sum_cells sum_corners |g_corner|^p  (+ h^2 * sum_nodes C |u|^p)
//! ```
//!
//! where `g_corner` is the one-sided difference gradient taken from each of
//! the cell's four corners along the two cell edges meeting there. Averaging
//! over the corners makes the energy invariant under the lattice symmetries
//! (rotations and reflections), and for `p = 2` it reduces to the five-point
//! Dirichlet Laplacian. The weighted mass is the nodal quadrature
//! `G(u) = h^2 * sum_nodes m |u|^p`.
//!
//! The principal eigenvalue is the minimum of the Rayleigh quotient `E/G`
//! over nonnegative fields with `G > 0`, found by projected gradient descent
//! on the constraint manifold `G = 1`.

use serde::Serialize;

use crate::edt::edt;
use crate::error::{Error, Result};
use crate::field::{Potential, ScalarField};
use crate::geo::{check_disjoint, cone_field, r_plus};
use crate::grid::{Grid, Node};
use crate::weight::{negate, WeightField};

pub const P_MIN: f64 = 2.0;
pub const P_MAX: f64 = 64.0;

/// A nonnegative quantity together with its natural log, the latter computed
/// with max-rescaled summation so it stays finite when the value overflows.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Energy {
    pub value: f64,
    pub log: f64,
}

/// `s^e` with a fast path for integer exponents.
#[inline]
fn pow_half(s: f64, e: f64, e_int: Option<i32>) -> f64 {
    match e_int {
        Some(n) => s.powi(n),
        None => s.powf(e),
    }
}

fn int_exponent(e: f64) -> Option<i32> {
    (e.fract() == 0.0 && e.abs() < 1024.0).then_some(e as i32)
}

fn check_energy_exponent(p: f64) -> Result<()> {
    if !(p >= P_MIN && p.is_finite()) {
        return Err(Error::InvalidExponent(p));
    }
    Ok(())
}

fn check_solver_exponent(p: f64) -> Result<()> {
    if !(P_MIN..=P_MAX).contains(&p) {
        return Err(Error::InvalidExponent(p));
    }
    Ok(())
}

fn check_grid(a: &Grid, b: &Grid, what: &str) -> Result<()> {
    if !a.same_as(b) {
        return Err(Error::GridMismatch(format!(
            "{what} lives on a different grid"
        )));
    }
    Ok(())
}

/// One corner gradient of a cell: the horizontal edge `x = (from, to)`, the
/// vertical edge `y = (from, to)` and their raw differences.
struct Corner {
    x: (usize, usize),
    y: (usize, usize),
    dx: f64,
    dy: f64,
}

/// Visits the four corner gradients of every cell that touches a nonzero node.
#[inline]
fn for_each_corner(grid: &Grid, u: &[f64], mut f: impl FnMut(Corner)) {
    let nx = grid.nx;
    for j in 0..grid.ny - 1 {
        for i in 0..nx - 1 {
            let a = j * nx + i;
            let b = a + 1;
            let c = a + nx;
            let d = c + 1;
            let (ua, ub, uc, ud) = (u[a], u[b], u[c], u[d]);
            if ua == 0.0 && ub == 0.0 && uc == 0.0 && ud == 0.0 {
                continue;
            }
            let (bottom, top, left, right) = (ub - ua, ud - uc, uc - ua, ud - ub);
            f(Corner {
                x: (a, b),
                y: (a, c),
                dx: bottom,
                dy: left,
            });
            f(Corner {
                x: (a, b),
                y: (b, d),
                dx: bottom,
                dy: right,
            });
            f(Corner {
                x: (c, d),
                y: (a, c),
                dx: top,
                dy: left,
            });
            f(Corner {
                x: (c, d),
                y: (b, d),
                dx: top,
                dy: right,
            });
        }
    }
}

/// Evaluation context for one exponent, one weight and an optional `C`.
pub(crate) struct Functional<'a> {
    grid: Grid,
    inside: &'a [bool],
    m: &'a [f64],
    c: Option<&'a [f64]>,
    p: f64,
    half: f64,
    half_int: Option<i32>,
    half_m1_int: Option<i32>,
    p_int: Option<i32>,
    pm2_int: Option<i32>,
}

impl<'a> Functional<'a> {
    pub(crate) fn new(w: &'a WeightField, c: Option<&'a Potential>, p: f64) -> Result<Self> {
        check_energy_exponent(p)?;
        if let Some(c) = c {
            check_grid(c.grid(), w.grid(), "zero-order coefficient")?;
        }
        Ok(Functional {
            grid: *w.grid(),
            inside: w.mask().inside(),
            m: w.values(),
            c: c.map(|c| c.values()),
            p,
            half: p / 2.0,
            half_int: int_exponent(p / 2.0),
            half_m1_int: int_exponent(p / 2.0 - 1.0),
            p_int: int_exponent(p),
            pm2_int: int_exponent(p - 2.0),
        })
    }

    #[inline]
    fn abs_pow_p(&self, v: f64) -> f64 {
        pow_half(v.abs(), self.p, self.p_int)
    }

    /// `E(u)`, optionally accumulating `dE/du` into `grad` (which is
    /// overwritten).
    fn energy(&self, u: &[f64], mut grad: Option<&mut [f64]>) -> f64 {
        let h = self.grid.h;
        let inv_h2 = 1.0 / (h * h);
        let mut sum = 0.0;
        if let Some(g) = grad.as_deref_mut() {
            g.iter_mut().for_each(|v| *v = 0.0);
        }
        // corner terms: (h^2/4) * s^(p/2) with s = (dx^2 + dy^2) / h^2
        let coef = self.p * 0.25;
        for_each_corner(&self.grid, u, |k| {
            let s = (k.dx * k.dx + k.dy * k.dy) * inv_h2;
            if s == 0.0 {
                return;
            }
            let q = pow_half(s, self.half - 1.0, self.half_m1_int);
            sum += q * s;
            if let Some(g) = grad.as_deref_mut() {
                // d/dx (h^2/4) (dx^2+dy^2)^{p/2} h^{-p} = (p/4) q dx
                let wx = coef * q * k.dx;
                let wy = coef * q * k.dy;
                g[k.x.1] += wx;
                g[k.x.0] -= wx;
                g[k.y.1] += wy;
                g[k.y.0] -= wy;
            }
        });
        let mut e = 0.25 * h * h * sum;
        if let Some(c) = self.c {
            let mut nodal = 0.0;
            for (k, &v) in u.iter().enumerate() {
                if v == 0.0 || !self.inside[k] {
                    continue;
                }
                nodal += c[k] * self.abs_pow_p(v);
                if let Some(g) = grad.as_deref_mut() {
                    let a = v.abs();
                    g[k] += h * h * self.p * c[k] * pow_half(a, self.p - 2.0, self.pm2_int) * v;
                }
            }
            e += h * h * nodal;
        }
        if let Some(g) = grad {
            for (k, v) in g.iter_mut().enumerate() {
                if !self.inside[k] {
                    *v = 0.0;
                }
            }
        }
        e
    }

    /// `G(u)`, optionally writing `dG/du` into `grad`.
    fn mass(&self, u: &[f64], mut grad: Option<&mut [f64]>) -> f64 {
        let h2 = self.grid.h * self.grid.h;
        let mut sum = 0.0;
        for (k, &v) in u.iter().enumerate() {
            if let Some(g) = grad.as_deref_mut() {
                g[k] = 0.0;
            }
            if v == 0.0 || !self.inside[k] {
                continue;
            }
            sum += self.m[k] * self.abs_pow_p(v);
            if let Some(g) = grad.as_deref_mut() {
                g[k] = h2 * self.p * self.m[k] * pow_half(v.abs(), self.p - 2.0, self.pm2_int) * v;
            }
        }
        h2 * sum
    }

    /// `log E(u)` by max-rescaled summation.
    fn log_energy(&self, u: &[f64]) -> f64 {
        // E is p-homogeneous: factor out the sup so differences cannot overflow
        let umax = u.iter().fold(0.0f64, |a, v| a.max(v.abs()));
        if umax == 0.0 || !umax.is_finite() {
            return if umax == 0.0 {
                f64::NEG_INFINITY
            } else {
                f64::NAN
            };
        }
        let scaled: Vec<f64> = u.iter().map(|v| v / umax).collect();
        self.p * umax.ln() + self.log_energy_unit(&scaled)
    }

    fn log_energy_unit(&self, u: &[f64]) -> f64 {
        // E = h^2/4 * sum_t b_t^{p/2}; corners b = s, nodes b = (4C)^{2/p} u^2
        let h = self.grid.h;
        let inv_h2 = 1.0 / (h * h);
        let node_base = |k: usize, v: f64| -> f64 {
            let c = self.c.map_or(0.0, |c| c[k]);
            (4.0 * c).powf(2.0 / self.p) * v * v
        };
        let mut bmax = 0.0f64;
        for_each_corner(&self.grid, u, |k| {
            bmax = bmax.max((k.dx * k.dx + k.dy * k.dy) * inv_h2);
        });
        if self.c.is_some() {
            for (k, &v) in u.iter().enumerate() {
                if self.inside[k] && v != 0.0 {
                    bmax = bmax.max(node_base(k, v));
                }
            }
        }
        if bmax == 0.0 {
            return f64::NEG_INFINITY;
        }
        let mut sum = 0.0;
        for_each_corner(&self.grid, u, |k| {
            let r = (k.dx * k.dx + k.dy * k.dy) * inv_h2 / bmax;
            sum += pow_half(r, self.half, self.half_int);
        });
        if self.c.is_some() {
            for (k, &v) in u.iter().enumerate() {
                if self.inside[k] && v != 0.0 {
                    sum += pow_half(node_base(k, v) / bmax, self.half, self.half_int);
                }
            }
        }
        (0.25 * h * h).ln() + self.half * bmax.ln() + sum.ln()
    }

    /// `log G(u)`, or `None` when `G(u) <= 0`.
    fn log_mass(&self, u: &[f64]) -> Option<f64> {
        let umax = u
            .iter()
            .enumerate()
            .filter(|(k, _)| self.inside[*k])
            .fold(0.0f64, |a, (_, v)| a.max(v.abs()));
        if umax == 0.0 {
            return None;
        }
        let mut sum = 0.0;
        for (k, &v) in u.iter().enumerate() {
            if self.inside[k] && v != 0.0 {
                sum += self.m[k] * self.abs_pow_p(v / umax);
            }
        }
        (sum > 0.0).then(|| (self.grid.h * self.grid.h).ln() + self.p * umax.ln() + sum.ln())
    }

    /// `log(E/G)`; `+inf` when the mass is not positive.
    fn log_rayleigh(&self, u: &[f64]) -> f64 {
        match self.log_mass(u) {
            Some(lg) => self.log_energy(u) - lg,
            None => f64::INFINITY,
        }
    }
}

/// Discrete p-Dirichlet energy, optionally with the zero-order term.
pub fn dirichlet_energy_p(u: &ScalarField, p: f64, c: Option<&Potential>) -> Result<Energy> {
    check_energy_exponent(p)?;
    let grid = *u.grid();
    // the energy does not look at the weight; a zero weight on an all-inside
    // view of the grid is enough to reuse the evaluator
    let inside: Vec<bool> = (0..grid.len())
        .map(|k| u.values()[k] != 0.0 || c.is_some())
        .collect();
    let zeros = vec![0.0; grid.len()];
    if let Some(c) = c {
        check_grid(c.grid(), &grid, "zero-order coefficient")?;
    }
    let f = Functional {
        grid,
        inside: &inside,
        m: &zeros,
        c: c.map(|c| c.values()),
        p,
        half: p / 2.0,
        half_int: int_exponent(p / 2.0),
        half_m1_int: int_exponent(p / 2.0 - 1.0),
        p_int: int_exponent(p),
        pm2_int: int_exponent(p - 2.0),
    };
    Ok(Energy {
        value: f.energy(u.values(), None),
        log: f.log_energy(u.values()),
    })
}

/// `E(u)` and its gradient with respect to the inside nodal values.
pub fn energy_gradient(
    u: &ScalarField,
    w: &WeightField,
    p: f64,
    c: Option<&Potential>,
) -> Result<(f64, Vec<f64>)> {
    check_grid(u.grid(), w.grid(), "field")?;
    let f = Functional::new(w, c, p)?;
    let mut g = vec![0.0; u.values().len()];
    let e = f.energy(u.values(), Some(&mut g));
    Ok((e, g))
}

/// Weighted p-mass `h^2 sum m |u|^p`. May be zero or negative.
pub fn weighted_mass_p(u: &ScalarField, w: &WeightField, p: f64) -> Result<f64> {
    check_grid(u.grid(), w.grid(), "field")?;
    Ok(Functional::new(w, None, p)?.mass(u.values(), None))
}

/// `G(u)` and its gradient.
pub fn mass_gradient(u: &ScalarField, w: &WeightField, p: f64) -> Result<(f64, Vec<f64>)> {
    check_grid(u.grid(), w.grid(), "field")?;
    let f = Functional::new(w, None, p)?;
    let mut g = vec![0.0; u.values().len()];
    let m = f.mass(u.values(), Some(&mut g));
    Ok((m, g))
}

/// `log(E(u) / G(u))`, `+inf` if `G(u) <= 0`.
pub fn log_rayleigh(
    u: &ScalarField,
    w: &WeightField,
    p: f64,
    c: Option<&Potential>,
) -> Result<f64> {
    check_grid(u.grid(), w.grid(), "field")?;
    Ok(Functional::new(w, c, p)?.log_rayleigh(u.values()))
}

/// `(E(u) / G(u))^{1/p}`, `+inf` if `G(u) <= 0`.
pub fn rayleigh_root(
    u: &ScalarField,
    w: &WeightField,
    p: f64,
    c: Option<&Potential>,
) -> Result<f64> {
    Ok((log_rayleigh(u, w, p, c)? / p).exp())
}

#[derive(Clone, Debug)]
pub struct SolverOptions {
    /// Stop once the relative decrease of the eigenvalue estimate stays below
    /// this for `patience` consecutive accepted steps.
    pub tol: f64,
    pub max_iter: usize,
    pub patience: usize,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions {
            tol: 1e-8,
            max_iter: 20_000,
            patience: 5,
        }
    }
}

#[derive(Clone, Debug)]
pub struct EigenResult {
    pub p: f64,
    pub lambda: f64,
    /// `lambda^{1/p}`, formed from logs. Negative for the negative eigenvalue.
    pub lambda_root: f64,
    pub field: ScalarField,
    pub iterations: usize,
    pub final_step: f64,
    pub converged: bool,
    pub residual: f64,
    /// Recorded descent sequence of the eigenvalue estimate.
    pub history: Vec<f64>,
}

/// Cone at the best positive center, shrunk until its weighted mass is
/// positive.
pub fn seed_cone(w: &WeightField, p: f64) -> Result<ScalarField> {
    let dist = edt(w.mask());
    let (r, center) = r_plus(&dist, w.plus())?;
    let f = Functional::new(w, None, p)?;
    let h = w.grid().h;
    let mut radius = r;
    loop {
        let cone = cone_field(center, radius, &dist)?;
        if f.log_mass(cone.values()).is_some() {
            return Ok(cone);
        }
        if radius < h {
            return Err(Error::CannotSeedPositiveMass);
        }
        radius *= 0.9;
        if radius < h {
            // a single node: the center, whose weight is positive
            radius = 0.5 * h;
        }
    }
}

fn normalize(f: &Functional, u: &mut [f64]) -> Option<f64> {
    let g = f.mass(u, None);
    if !(g > 0.0 && g.is_finite()) {
        return None;
    }
    let s = g.powf(-1.0 / f.p);
    if !s.is_finite() {
        return None;
    }
    u.iter_mut().for_each(|v| *v *= s);
    Some(g)
}

pub fn solve_lambda1(
    w: &WeightField,
    p: f64,
    c: Option<&Potential>,
    opts: &SolverOptions,
) -> Result<EigenResult> {
    solve_lambda1_from(w, p, c, opts, None)
}

/// [`solve_lambda1`] started from the better (lower quotient) of `warm` and
/// the cone seed.
pub fn solve_lambda1_from(
    w: &WeightField,
    p: f64,
    c: Option<&Potential>,
    opts: &SolverOptions,
    warm: Option<&ScalarField>,
) -> Result<EigenResult> {
    check_solver_exponent(p)?;
    if w.plus_count() == 0 {
        return Err(Error::NoPositiveRegion);
    }
    let f = Functional::new(w, c, p)?;
    let seed = seed_cone(w, p)?;
    let mut u = seed.into_values();
    if let Some(warm) = warm {
        check_grid(warm.grid(), w.grid(), "warm start")?;
        let v: Vec<f64> = warm
            .values()
            .iter()
            .enumerate()
            .map(|(k, &x)| {
                if w.mask().is_inside(k) {
                    x.max(0.0)
                } else {
                    0.0
                }
            })
            .collect();
        if f.log_rayleigh(&v) < f.log_rayleigh(&u) {
            u = v;
        }
    }
    normalize(&f, &mut u).ok_or(Error::CannotSeedPositiveMass)?;
    let inside = w.mask().inside();

    let n = u.len();
    let mut lambda = f.energy(&u, None);
    let mut history = vec![lambda];
    let mut ge = vec![0.0; n];
    let mut gg = vec![0.0; n];
    let mut g = vec![0.0; n];
    let mut g_prev = vec![0.0; n];
    let mut u_prev = vec![0.0; n];
    let mut v = vec![0.0; n];
    let mut tau = f64::NAN;
    let mut residual = f64::INFINITY;
    let mut converged = false;
    let mut quiet = 0usize;
    let mut iterations = 0usize;

    for iter in 0..opts.max_iter {
        f.energy(&u, Some(&mut ge));
        f.mass(&u, Some(&mut gg));
        for k in 0..n {
            g[k] = if inside[k] {
                ge[k] - lambda * gg[k]
            } else {
                0.0
            };
        }
        let gmax = g.iter().fold(0.0f64, |a, x| a.max(x.abs()));
        if gmax == 0.0 {
            converged = true;
            residual = 0.0;
            break;
        }
        if iter == 0 {
            let umax = u.iter().fold(0.0f64, |a, x| a.max(x.abs()));
            tau = 0.01 * umax / gmax;
        } else {
            // Barzilai-Borwein trial step
            let mut ss = 0.0;
            let mut sy = 0.0;
            for k in 0..n {
                let s = u[k] - u_prev[k];
                ss += s * s;
                sy += s * (g[k] - g_prev[k]);
            }
            if sy > 0.0 && ss > 0.0 {
                tau = ss / sy;
            } else {
                tau *= 2.0;
            }
        }

        let mut accepted = None;
        for _ in 0..80 {
            for k in 0..n {
                v[k] = if inside[k] {
                    (u[k] - tau * g[k]).max(0.0)
                } else {
                    0.0
                };
            }
            if normalize(&f, &mut v).is_some() {
                let lv = f.energy(&v, None);
                if lv.is_finite() && lv < lambda {
                    accepted = Some(lv);
                    break;
                }
            }
            tau *= 0.5;
        }
        let Some(lv) = accepted else {
            // no representable decrease along the projected gradient
            converged = true;
            residual = 0.0;
            break;
        };

        iterations = iter + 1;
        residual = (lambda - lv) / lambda;
        std::mem::swap(&mut u_prev, &mut u);
        std::mem::swap(&mut u, &mut v);
        std::mem::swap(&mut g_prev, &mut g);
        lambda = lv;
        history.push(lambda);
        if residual < opts.tol {
            quiet += 1;
            if quiet >= opts.patience.max(1) {
                converged = true;
                break;
            }
        } else {
            quiet = 0;
        }
    }

    let log_r = f.log_rayleigh(&u);
    Ok(EigenResult {
        p,
        lambda: log_r.exp(),
        lambda_root: (log_r / p).exp(),
        field: ScalarField::from_raw(*w.grid(), u),
        iterations,
        final_step: tau,
        converged,
        residual,
        history,
    })
}

/// First negative eigenvalue, `mu_1(m) = -lambda_1(-m)`.
///
/// The returned field is the minimizer for `-m` (so its mass against `m` is
/// `-1`); `lambda` and `lambda_root` carry the negative sign.
pub fn mu1(w: &WeightField, p: f64, opts: &SolverOptions) -> Result<EigenResult> {
    if w.minus_count() == 0 {
        return Err(Error::NoNegativeRegion);
    }
    let mut r = solve_lambda1(&negate(w), p, None, opts)?;
    r.lambda = -r.lambda;
    r.lambda_root = -r.lambda_root;
    Ok(r)
}

/// Upper bound for `lambda_2^{1/p}` from the span of two disjoint cones.
///
/// The quotient of `alpha C_1 + beta C_2` is maximized over
/// `|alpha|^p + |beta|^p = 1` with `alpha = cos(t)^{2/p}`,
/// `beta = sin(t)^{2/p}`, by golden-section search in `t`. Returns `+inf`
/// when some member of the family has nonpositive mass.
pub fn two_cone_upper_bound(
    p: f64,
    c1: Node,
    c2: Node,
    radius: f64,
    w: &WeightField,
    c: Option<&Potential>,
) -> Result<f64> {
    check_energy_exponent(p)?;
    let grid = w.grid();
    for n in [c1, c2] {
        if !w.plus()[grid.idx(n.i, n.j)] {
            return Err(Error::InfeasiblePacking(format!(
                "center ({}, {}) is not in the positive region",
                n.i, n.j
            )));
        }
    }
    let dist = edt(w.mask());
    check_disjoint(c1, c2, radius, &dist)?;
    let a = cone_field(c1, radius, &dist)?;
    let b = cone_field(c2, radius, &dist)?;
    let f = Functional::new(w, c, p)?;
    let mut v = vec![0.0; grid.len()];
    let mut objective = |t: f64| -> f64 {
        let alpha = t.cos().powi(2).powf(1.0 / p);
        let beta = t.sin().powi(2).powf(1.0 / p);
        for (k, x) in v.iter_mut().enumerate() {
            *x = alpha * a.values()[k] + beta * b.values()[k];
        }
        f.log_rayleigh(&v)
    };

    let (mut lo, mut hi) = (0.0f64, std::f64::consts::FRAC_PI_2);
    let mut best = objective(lo).max(objective(hi));
    if best.is_infinite() {
        return Ok(f64::INFINITY);
    }
    let phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - phi * (hi - lo);
    let mut x2 = lo + phi * (hi - lo);
    let mut f1 = objective(x1);
    let mut f2 = objective(x2);
    while hi - lo > 1e-10 {
        if f1 >= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - phi * (hi - lo);
            f1 = objective(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + phi * (hi - lo);
            f2 = objective(x2);
        }
        best = best.max(f1).max(f2);
    }
    Ok((best / p).exp())
}

#[derive(Clone, Debug)]
pub struct SweepRecord {
    pub p: f64,
    pub lambda_root: f64,
    pub target: f64,
    pub deviation: f64,
    pub cone_bound: f64,
    pub iterations: usize,
    pub converged: bool,
    pub result: EigenResult,
}

pub const SWEEP_CSV_HEADER: &str = "p,lambda_root,target,deviation,cone_bound,iterations,converged";

impl SweepRecord {
    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{}",
            self.p,
            self.lambda_root,
            self.target,
            self.deviation,
            self.cone_bound,
            self.iterations,
            self.converged
        )
    }
}

/// Solves for every `p` in order, warm-starting each solve from the previous
/// eigenfield. Entries fail independently.
pub fn sweep(
    w: &WeightField,
    p_list: &[f64],
    c: Option<&Potential>,
    opts: &SolverOptions,
) -> Result<Vec<Result<SweepRecord>>> {
    if p_list.windows(2).any(|pair| pair[1] <= pair[0]) {
        return Err(Error::Config("p list must be strictly increasing".into()));
    }
    let dist = edt(w.mask());
    let (r_plus, _) = r_plus(&dist, w.plus())?;
    let target = if c.is_some() {
        (1.0 / r_plus).max(1.0)
    } else {
        1.0 / r_plus
    };
    let mut warm: Option<ScalarField> = None;
    let mut out = Vec::with_capacity(p_list.len());
    for &p in p_list {
        let entry = (|| {
            let cone = seed_cone(w, p)?;
            let cone_bound = rayleigh_root(&cone, w, p, c)?;
            let res = solve_lambda1_from(w, p, c, opts, warm.as_ref())?;
            Ok(SweepRecord {
                p,
                lambda_root: res.lambda_root,
                target,
                deviation: (res.lambda_root - target).abs(),
                cone_bound,
                iterations: res.iterations,
                converged: res.converged,
                result: res,
            })
        })();
        if let Ok(rec) = &entry {
            warm = Some(rec.result.field.clone());
        }
        out.push(entry);
    }
    Ok(out)
}
