//! Acceptance criteria. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any fails.

mod common;

use std::path::PathBuf;
use std::time::{Duration, Instant};

use common::{
    brute_edt_squared, brute_pair_key, five_point_lambda, gradient_error, local_energy, local_mass,
    pair_key, random_blobs, random_field, random_mask, rng, total_energy, unit_disk,
};
use plap_lab::commands::cmd_limits;
use plap_lab::config::{Problem, RunConfig};
use plap_lab::plap::{energy_gradient, log_rayleigh, mass_gradient, rayleigh_root, sweep};
use plap_lab::viscosity::{check, CheckOptions};
use plap_lab::{
    build_weight, cone_field, dirichlet_energy_p, edt, mu1, negate, pack, solve_lambda1,
    weighted_mass_p, GeoLimits, PackOptions, Potential, SolverOptions, WeightSpec,
};
use rand::Rng;

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn config(name: &str) -> RunConfig {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("configs")
        .join(name);
    RunConfig::load(&path).unwrap_or_else(|e| panic!("{name}: {e}"))
}

fn within(got: f64, want: f64, rel: f64) -> bool {
    (got - want).abs() <= rel * want.abs()
}

/// Geometric identities on the unit disk at h = 1/256.
fn geometric_identities() -> Outcome {
    let cases = [
        ("unit_disk.toml", 1.0, 2.0),
        ("example1.toml", 1.0, 4.0),
        ("example2.toml", 5.0, 5.0),
        ("example3.toml", 2.0 / 1.2, 2.0),
    ];
    let mut notes = Vec::new();
    for (name, l1, l2) in cases {
        let t0 = Instant::now();
        let cfg = config(name);
        let prob = cfg.build().map_err(|e| e.to_string())?;
        if prob.grid().h != 1.0 / 256.0 {
            return Err(format!(
                "{name}: grid spacing {} is not 1/256",
                prob.grid().h
            ));
        }
        let lim = GeoLimits::compute(&prob.dist, &prob.weight).map_err(|e| e.to_string())?;
        let dt = t0.elapsed();
        if !within(lim.lambda1_inf, l1, 0.02) || !within(lim.lambda2_inf, l2, 0.02) {
            return Err(format!(
                "{name}: lambda1,inf = {} (want {l1}), lambda2,inf = {} (want {l2})",
                lim.lambda1_inf, lim.lambda2_inf
            ));
        }
        if dt >= Duration::from_secs(30) {
            return Err(format!("{name}: took {dt:.2?}"));
        }
        notes.push(format!(
            "{name} ({:.4}, {:.4}) in {dt:.2?}",
            lim.lambda1_inf, lim.lambda2_inf
        ));
    }
    Ok(notes.join("; "))
}

/// Limit with a positive zero-order term.
fn zero_order_limit() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let mut big = config("disk2_potential.toml");
    big.out = dir.path().join("disk2").to_string_lossy().into_owned();
    let a = cmd_limits(&big).map_err(|e| e.to_string())?;
    if a.r_plus <= 1.0 || a.lambda1_inf_c != 1.0 {
        return Err(format!(
            "radius-2 disk: R+ = {}, lambda1,inf(C,m) = {}",
            a.r_plus, a.lambda1_inf_c
        ));
    }
    let mut strip = config("strip_potential.toml");
    strip.out = dir.path().join("strip").to_string_lossy().into_owned();
    let b = cmd_limits(&strip).map_err(|e| e.to_string())?;
    if !within(b.lambda1_inf_c, 5.0, 0.02) {
        return Err(format!("strip: lambda1,inf(C,m) = {}", b.lambda1_inf_c));
    }
    Ok(format!(
        "radius-2 disk {} exactly; strip {:.4} (R+ = {:.4})",
        a.lambda1_inf_c, b.lambda1_inf_c, b.r_plus
    ))
}

struct SweepRun {
    prob: Problem,
    records: Vec<plap_lab::SweepRecord>,
    elapsed: Duration,
}

fn run_sweep() -> Result<SweepRun, String> {
    let cfg = config("sweep96.toml");
    let prob = cfg.build().map_err(|e| e.to_string())?;
    if (prob.grid().nx, prob.grid().ny) != (96, 96) {
        return Err("sweep grid is not 96x96".into());
    }
    let t0 = Instant::now();
    let records = sweep(
        &prob.weight,
        &cfg.solver.p_list,
        None,
        &cfg.solver_options(),
    )
    .map_err(|e| e.to_string())?
    .into_iter()
    .collect::<Result<Vec<_>, _>>()
    .map_err(|e| e.to_string())?;
    Ok(SweepRun {
        prob,
        records,
        elapsed: t0.elapsed(),
    })
}

/// Convergence of the p-th root toward 1/R+.
fn convergence(run: &Result<SweepRun, String>) -> Outcome {
    let run = run.as_ref().map_err(Clone::clone)?;
    let ps: Vec<f64> = run.records.iter().map(|r| r.p).collect();
    if ps != [4.0, 8.0, 16.0, 32.0] {
        return Err(format!("p list {ps:?}"));
    }
    let dev: Vec<f64> = run.records.iter().map(|r| r.deviation).collect();
    if dev.windows(2).any(|w| w[1] > w[0]) {
        return Err(format!("deviation not non-increasing: {dev:?}"));
    }
    if dev[3] > 0.25 {
        return Err(format!("deviation at p = 32 is {}", dev[3]));
    }
    if run.elapsed > Duration::from_secs(300) {
        return Err(format!("sweep took {:.2?}", run.elapsed));
    }
    if let Some(r) = run.records.iter().find(|r| !r.converged) {
        return Err(format!("p = {} did not converge", r.p));
    }
    Ok(format!(
        "deviations {:?} in {:.2?}",
        dev.iter().map(|d| format!("{d:.4}")).collect::<Vec<_>>(),
        run.elapsed
    ))
}

/// Every sweep record lies below its own cone bound and below 20 random
/// admissible cones.
fn cone_inequality(run: &Result<SweepRun, String>) -> Outcome {
    let run = run.as_ref().map_err(Clone::clone)?;
    let w = &run.prob.weight;
    let d = &run.prob.dist;
    let plus: Vec<usize> = (0..w.plus().len()).filter(|&k| w.plus()[k]).collect();
    let mut r = rng(2024);
    let mut tightest = f64::INFINITY;
    for rec in &run.records {
        if rec.lambda_root > rec.cone_bound + 1e-8 {
            return Err(format!(
                "p = {}: {} > cone bound {}",
                rec.p, rec.lambda_root, rec.cone_bound
            ));
        }
        for _ in 0..20 {
            let k = plus[r.random_range(0..plus.len())];
            let radius = d.at(k) * r.random_range(0.05..=1.0);
            let cone = cone_field(w.grid().node(k), radius, d).map_err(|e| e.to_string())?;
            let bound = rayleigh_root(&cone, w, rec.p, None).map_err(|e| e.to_string())?;
            if rec.lambda_root > bound + 1e-8 {
                return Err(format!(
                    "p = {}: {} > random cone bound {bound}",
                    rec.p, rec.lambda_root
                ));
            }
            tightest = tightest.min(bound - rec.lambda_root);
        }
    }
    Ok(format!(
        "{} records x 20 cones, smallest margin {tightest:.3e}",
        run.records.len()
    ))
}

/// EDT, pair packing and p = 2 against independent oracles.
fn oracle_equivalences() -> Outcome {
    let mut r = rng(55);
    for t in 0..20 {
        let mask = random_mask(&mut r, 32, 32, 0.3 + 0.03 * t as f64);
        if edt(&mask).squared() != &brute_edt_squared(&mask)[..] {
            return Err(format!("EDT differs on random mask {t}"));
        }
    }
    let mask = random_blobs(&mut r, 48, 3);
    let d = edt(&mask);
    let res = pack(2, &d, mask.inside(), &PackOptions::default()).map_err(|e| e.to_string())?;
    let key = brute_pair_key(d.squared(), mask.inside(), mask.grid());
    let got = pair_key(d.squared(), mask.grid(), res.centers[0], res.centers[1]);
    if got != key || res.radius != mask.grid().h * (0.5 * (key as f64).sqrt()) || !res.exact {
        return Err(format!(
            "pack(2) key {got} radius {} vs exhaustive key {key}",
            res.radius
        ));
    }
    let disk = unit_disk(1.0 / 16.0);
    let mut worst = 0.0f64;
    for spec in [
        WeightSpec::Constant(1.0),
        WeightSpec::Radial {
            center: [0.3, 0.2],
            at_center: 2.0,
            slope: -1.0,
        },
    ] {
        let w = build_weight(&spec, &disk).map_err(|e| e.to_string())?;
        let oracle = five_point_lambda(&disk, w.values());
        let sol =
            solve_lambda1(&w, 2.0, None, &SolverOptions::default()).map_err(|e| e.to_string())?;
        worst = worst.max((sol.lambda - oracle).abs() / oracle);
    }
    if worst > 1e-6 {
        return Err(format!("p = 2 eigenvalue relative error {worst:e}"));
    }
    Ok(format!(
        "20 EDT masks exact; pack(2) exact on 48x48; p = 2 rel. error {worst:.1e}"
    ))
}

/// Analytic gradients against central differences.
fn gradient_checks() -> Outcome {
    let mask = unit_disk(1.0 / 12.0);
    let grid = *mask.grid();
    let w = build_weight(
        &WeightSpec::Affine {
            a: -0.8,
            b: 0.6,
            c: 0.3,
        },
        &mask,
    )
    .map_err(|e| e.to_string())?;
    let c = Potential::from_spec(
        &WeightSpec::Radial {
            center: [0.1, 0.0],
            at_center: 0.5,
            slope: 1.5,
        },
        &mask,
    )
    .map_err(|e| e.to_string())?;
    let u = random_field(&mask, 77);
    let mut worst = 0.0f64;
    for p in [2.0, 6.0, 17.0] {
        let lib = dirichlet_energy_p(&u, p, Some(&c))
            .map_err(|e| e.to_string())?
            .value;
        let oracle = total_energy(u.values(), &grid, p, Some(c.values()));
        if (lib / oracle - 1.0).abs() > 1e-12 {
            return Err(format!("p = {p}: energy {lib} vs direct sum {oracle}"));
        }
        let (_, ge) = energy_gradient(&u, &w, p, Some(&c)).map_err(|e| e.to_string())?;
        let (_, gm) = mass_gradient(&u, &w, p).map_err(|e| e.to_string())?;
        let e = gradient_error(&mask, &u, &ge, 50, 100 + p as u64, |v, k| {
            local_energy(v, &grid, k, p, Some(c.values()))
        });
        let m = gradient_error(&mask, &u, &gm, 50, 200 + p as u64, |v, k| {
            local_mass(v, &grid, k, p, w.values())
        });
        if e > 1e-5 || m > 1e-5 {
            return Err(format!("p = {p}: energy {e:e}, mass {m:e}"));
        }
        worst = worst.max(e).max(m);
    }
    Ok(format!("50 nodes per p, worst relative error {worst:.1e}"))
}

/// Distance cone on the unit disk in the positive regime.
fn viscosity_proxy() -> Outcome {
    let mut res = Vec::new();
    for n in [64u32, 128] {
        let h = 1.0 / n as f64;
        let mask = unit_disk(h);
        let w = build_weight(&WeightSpec::Constant(1.0), &mask).map_err(|e| e.to_string())?;
        let d = edt(&mask);
        let c = mask
            .grid()
            .nearest_node([0.0, 0.0])
            .ok_or("origin not on grid")?;
        let r_plus = d.at_node(c);
        let cone = cone_field(c, r_plus, &d).map_err(|e| e.to_string())?;
        let rep =
            check(&cone, 1.0 / r_plus, &w, &CheckOptions::default()).map_err(|e| e.to_string())?;
        if rep.tolerance != 4.0 * h {
            return Err(format!("tolerance {} is not 4h", rep.tolerance));
        }
        if rep.pos.count == 0 || !rep.pos.pass || !rep.boundary_pass {
            return Err(format!("h = 1/{n}: {rep:?}"));
        }
        res.push(rep.pos.max_residual);
    }
    let order = (res[0] / res[1]).log2();
    if order.is_nan() || order < 0.8 {
        return Err(format!("observed order {order:.3} (residuals {res:?})"));
    }
    Ok(format!(
        "residual {:.2e} <= {:.2e}, {:.2e} <= {:.2e}, order {order:.2}",
        res[0],
        4.0 / 64.0,
        res[1],
        4.0 / 128.0
    ))
}

/// Negative-eigenvalue duality and rotation invariance.
fn duality_symmetry() -> Outcome {
    let mask = unit_disk(1.0 / 16.0);
    let cfg = config("example1.toml");
    let w = build_weight(
        &cfg.weight.to_spec("weight").map_err(|e| e.to_string())?,
        &mask,
    )
    .map_err(|e| e.to_string())?;
    let opts = SolverOptions::default();
    for p in [2.0, 6.0] {
        let mu = mu1(&w, p, &opts).map_err(|e| e.to_string())?;
        let lam = solve_lambda1(&negate(&w), p, None, &opts).map_err(|e| e.to_string())?;
        if mu.lambda.to_bits() != (-lam.lambda).to_bits()
            || mu.lambda_root.to_bits() != (-lam.lambda_root).to_bits()
        {
            return Err(format!(
                "p = {p}: mu1 {} vs -lambda1(-m) {}",
                mu.lambda, -lam.lambda
            ));
        }
    }

    let mut worst = 0.0f64;
    let mut compare = |a: f64, b: f64, what: &str| -> Result<(), String> {
        let rel = (a - b).abs() / a.abs().max(f64::MIN_POSITIVE);
        worst = worst.max(rel);
        if rel > 1e-12 {
            return Err(format!("{what}: {a} vs {b}"));
        }
        Ok(())
    };
    for name in [
        "unit_disk.toml",
        "example1.toml",
        "example2.toml",
        "example3.toml",
    ] {
        let prob = config(name).build().map_err(|e| e.to_string())?;
        let base = GeoLimits::compute(&prob.dist, &prob.weight).map_err(|e| e.to_string())?;
        let (mut m, mut wr) = (prob.mask.clone(), prob.weight.clone());
        for turn in 1..4 {
            m = m.rotated90();
            wr = wr.rotated90();
            let rot = GeoLimits::compute(&edt(&m), &wr).map_err(|e| e.to_string())?;
            for ((key, a), (_, b)) in base.scalars().into_iter().zip(rot.scalars()) {
                compare(a, b, &format!("{name} turn {turn} {key}"))?;
            }
        }
    }
    // deterministic field quantities: an eigenfield and a random field
    let field = solve_lambda1(&w, 6.0, None, &opts)
        .map_err(|e| e.to_string())?
        .field;
    for u in [field, random_field(&mask, 3)] {
        let (ru, rw) = (u.rotated90(), w.rotated90());
        for p in [2.0, 6.0, 17.0] {
            let e = |f: &plap_lab::ScalarField| dirichlet_energy_p(f, p, None).map(|e| e.log);
            compare(
                e(&u).map_err(|e| e.to_string())?,
                e(&ru).map_err(|e| e.to_string())?,
                "log energy",
            )?;
            let gm = weighted_mass_p(&u, &w, p).map_err(|e| e.to_string())?;
            let gr = weighted_mass_p(&ru, &rw, p).map_err(|e| e.to_string())?;
            compare(gm, gr, "mass")?;
            let qa = log_rayleigh(&u, &w, p, None).map_err(|e| e.to_string())?;
            let qb = log_rayleigh(&ru, &rw, p, None).map_err(|e| e.to_string())?;
            if qa.is_finite() {
                compare(qa, qb, "log quotient")?;
            }
        }
    }
    Ok(format!(
        "duality bit-exact; worst rotation deviation {worst:.1e}"
    ))
}

fn main() {
    let sweep_run = run_sweep();
    let criteria: Vec<Criterion> = vec![
        (
            "1 geometric identities on the unit disk",
            Box::new(geometric_identities),
        ),
        ("2 limit with a zero-order term", Box::new(zero_order_limit)),
        (
            "3 convergence of the p-th root",
            Box::new(|| convergence(&sweep_run)),
        ),
        (
            "4 cone upper bounds",
            Box::new(|| cone_inequality(&sweep_run)),
        ),
        ("5 oracle equivalences", Box::new(oracle_equivalences)),
        ("6 gradient checks", Box::new(gradient_checks)),
        (
            "7 viscosity residual of the distance cone",
            Box::new(viscosity_proxy),
        ),
        (
            "8 duality and rotation invariance",
            Box::new(duality_symmetry),
        ),
    ];
    let mut failed = 0;
    for (name, f) in &criteria {
        let outcome = std::panic::catch_unwind(std::panic::AssertUnwindSafe(f))
            .unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("PASS [{name}] {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL [{name}] {why}");
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
