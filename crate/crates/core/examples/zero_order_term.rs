//! Adding a positive zero-order term `C |u|^p` caps the limit from below by 1:
//! `lambda_1^{1/p}` tends to `max(1/R+, 1)`.

use plap_lab::plap::{sweep, SolverOptions};
use plap_lab::{
    build_weight, disk, edt, r_plus, rasterize, Grid, Potential, Primitive, WeightSpec,
};

fn main() -> plap_lab::Result<()> {
    for radius in [2.0, 0.5] {
        let grid = Grid::square_fit([-radius, -radius], [radius, radius], 64)?;
        let mask = rasterize(&[Primitive::union(disk([0.0, 0.0], radius))], &grid)?;
        let w = build_weight(&WeightSpec::Constant(1.0), &mask)?;
        let c = Potential::constant(&mask, 1.0)?;
        let (r, _) = r_plus(&edt(&mask), w.plus())?;
        println!(
            "disk of radius {radius}: R+ = {r:.4}, limit max(1/R+, 1) = {:.4}",
            (1.0 / r).max(1.0)
        );
        for rec in sweep(
            &w,
            &[4.0, 8.0, 16.0, 32.0],
            Some(&c),
            &SolverOptions::default(),
        )? {
            let rec = rec?;
            println!(
                "  p = {:>2}: root {:.4}  without C the target would be {:.4}",
                rec.p,
                rec.lambda_root,
                1.0 / r
            );
        }
    }
    Ok(())
}
