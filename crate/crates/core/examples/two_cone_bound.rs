//! Upper bound for the second eigenvalue from two disjoint cones placed at
//! the optimal pair packing.
//!
//! The positive balls here are much smaller than the cones, so for small p
//! the cones carry negative mass and the bound is infinite. It tends to
//! `1/R2,+` only slowly, at a rate of order `log(p)/p`.

use plap_lab::plap::two_cone_upper_bound;
use plap_lab::{
    build_weight, disk, edt, pack, rasterize, Grid, PackOptions, Primitive, Region, WeightSpec,
};

fn main() -> plap_lab::Result<()> {
    let grid = Grid::square_fit([-1.0, -1.0], [1.0, 1.0], 96)?;
    let mask = rasterize(&[Primitive::union(disk([0.0, 0.0], 1.0))], &grid)?;
    let spec = WeightSpec::Regions {
        background: -1.0,
        regions: vec![(
            Region::new(vec![
                Primitive::union(disk([-0.5, 0.0], 0.1)),
                Primitive::union(disk([0.5, 0.0], 0.1)),
            ]),
            1.0,
        )],
    };
    let w = build_weight(&spec, &mask)?;
    let dist = edt(&mask);
    let pair = pack(2, &dist, w.plus(), &PackOptions::default())?;
    let (c1, c2) = (pair.centers[0], pair.centers[1]);
    println!(
        "R2,+ = {:.4}, limit 1/R2,+ = {:.4}",
        pair.radius,
        1.0 / pair.radius
    );
    for p in [4.0, 8.0, 16.0, 32.0, 64.0] {
        let bound = two_cone_upper_bound(p, c1, c2, pair.radius, &w, None)?;
        println!("p = {p:>2}: lambda_2^(1/p) <= {bound:.4}");
    }
    Ok(())
}
