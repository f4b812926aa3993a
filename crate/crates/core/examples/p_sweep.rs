//! Eigenvalue sweep in p for a small positive ball inside the unit disk.
//!
//! `lambda_1^{1/p}` approaches `1/R_+` as p grows. `R_+` is the distance to
//! the boundary of the disk from the positive set, here 1, so the target is 1.
//! The table prints the distance to that target and the one-cone upper bound
//! next to it.

use plap_lab::plap::{sweep, SolverOptions};
use plap_lab::{build_weight, disk, rasterize, Grid, Primitive, Region, WeightSpec};

fn main() -> plap_lab::Result<()> {
    let n: usize = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(96);
    let grid = Grid::square_fit([-1.0, -1.0], [1.0, 1.0], n)?;
    let mask = rasterize(&[Primitive::union(disk([0.0, 0.0], 1.0))], &grid)?;
    let weight = WeightSpec::Regions {
        background: -1.0,
        regions: vec![(
            Region::new(vec![Primitive::union(disk([0.0, 0.0], 0.25))]),
            1.0,
        )],
    };
    let w = build_weight(&weight, &mask)?;

    let t0 = std::time::Instant::now();
    let records = sweep(&w, &[4.0, 8.0, 16.0, 32.0], None, &SolverOptions::default())?;
    println!(
        "{:>4} {:>12} {:>8} {:>10} {:>12} {:>6} converged",
        "p", "root", "target", "deviation", "cone bound", "iters"
    );
    for r in records {
        let r = r?;
        println!(
            "{:>4} {:>12.6} {:>8.4} {:>10.6} {:>12.6} {:>6} {}",
            r.p, r.lambda_root, r.target, r.deviation, r.cone_bound, r.iterations, r.converged
        );
    }
    println!("elapsed {:.2?}", t0.elapsed());
    Ok(())
}
