//! First negative eigenvalue `mu_1(m) = -lambda_1(-m)` and its limit
//! `-1/R-`, with `R-` the largest ball centered in the negative set.

use plap_lab::plap::{mu1, SolverOptions};
use plap_lab::{build_weight, disk, edt, r_minus, rasterize, Grid, Primitive, Region, WeightSpec};

fn main() -> plap_lab::Result<()> {
    let grid = Grid::square_fit([-1.0, -1.0], [1.0, 1.0], 72)?;
    let mask = rasterize(&[Primitive::union(disk([0.0, 0.0], 1.0))], &grid)?;
    // positive near the origin, negative elsewhere
    let spec = WeightSpec::Regions {
        background: -1.0,
        regions: vec![(
            Region::new(vec![Primitive::union(disk([0.2, 0.0], 0.5))]),
            1.0,
        )],
    };
    let w = build_weight(&spec, &mask)?;
    let (r, _) = r_minus(&edt(&mask), &w)?;
    println!("R- = {r:.4}, limit -1/R- = {:.4}", -1.0 / r);
    for p in [4.0, 8.0, 16.0] {
        let res = mu1(&w, p, &SolverOptions::default())?;
        println!(
            "p = {p:>2}: mu1 = {:.4e}, root {:.4}",
            res.lambda, res.lambda_root
        );
    }
    Ok(())
}
