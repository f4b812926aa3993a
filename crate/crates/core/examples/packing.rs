//! Packing k disjoint balls centered in the positive set.
//!
//! k = 1 and k = 2 are solved exactly on the lattice; larger k uses seeded
//! restarts of a local search and reports a lower bound.

use plap_lab::{
    build_weight, disk, edt, pack, rasterize, Grid, PackOptions, Primitive, WeightSpec,
};

fn main() -> plap_lab::Result<()> {
    let grid = Grid::covering([-1.0, -1.0], [1.0, 1.0], 1.0 / 64.0)?;
    let mask = rasterize(&[Primitive::union(disk([0.0, 0.0], 1.0))], &grid)?;
    let w = build_weight(&WeightSpec::Constant(1.0), &mask)?;
    let dist = edt(&mask);
    let opts = PackOptions {
        seed: 1,
        restarts: 8,
    };

    // known optimal radii for k equal disks in the unit disk
    let known = [1.0, 0.5, 0.4641, 0.4142];
    for k in 1..=4 {
        let t0 = std::time::Instant::now();
        let res = pack(k, &dist, w.plus(), &opts)?;
        let centers: Vec<String> = res
            .centers
            .iter()
            .map(|&n| {
                let p = grid.node_point(n);
                format!("({:.3}, {:.3})", p[0], p[1])
            })
            .collect();
        println!(
            "k = {k}: radius {:.4} (continuum {:.4}) {} in {:.2?}  {}",
            res.radius,
            known[k - 1],
            if res.exact { "exact" } else { "lower bound" },
            t0.elapsed(),
            centers.join(" ")
        );
    }
    Ok(())
}
