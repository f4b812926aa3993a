//! Limiting eigenvalues of the unit disk for the classical weight examples.
//!
//! `lambda_1,inf = 1/R+` and `lambda_2,inf = 1/R2,+`, where `R+` is the
//! largest ball in the domain centered in the positive set and `R2,+` the
//! largest common radius of two disjoint such balls.

use plap_lab::{
    build_weight, disk, edt, rasterize, GeoLimits, Grid, Primitive, Region, WeightSpec,
};

fn balls(list: &[([f64; 2], f64)]) -> Region {
    Region::new(
        list.iter()
            .map(|&(c, r)| Primitive::union(disk(c, r)))
            .collect(),
    )
}

fn main() -> plap_lab::Result<()> {
    let h = 1.0 / 256.0;
    let grid = Grid::covering([-1.0, -1.0], [1.0, 1.0], h)?;
    let mask = rasterize(&[Primitive::union(disk([0.0, 0.0], 1.0))], &grid)?;
    let dist = edt(&mask);

    let strip = Region::new(vec![
        Primitive::union(disk([0.0, 0.0], 1.0)),
        Primitive::difference(disk([0.0, 0.0], 0.8)),
    ]);
    let cases: Vec<(&str, WeightSpec, f64, f64)> = vec![
        ("m = 1", WeightSpec::Constant(1.0), 1.0, 2.0),
        (
            "ball, delta = 0.25",
            WeightSpec::Regions {
                background: -1.0,
                regions: vec![(balls(&[([0.0, 0.0], 0.25)]), 1.0)],
            },
            1.0,
            4.0,
        ),
        (
            "boundary strip, delta = 0.2",
            WeightSpec::Regions {
                background: -1.0,
                regions: vec![(strip, 1.0)],
            },
            5.0,
            5.0,
        ),
        (
            "two balls, delta = 0.1",
            WeightSpec::Regions {
                background: -1.0,
                regions: vec![(balls(&[([-0.5, 0.0], 0.1), ([0.5, 0.0], 0.1)]), 1.0)],
            },
            2.0 / 1.2,
            2.0,
        ),
    ];

    println!(
        "{:<28} {:>10} {:>10} {:>10} {:>10}",
        "weight", "lambda1", "expected", "lambda2", "expected"
    );
    for (name, spec, l1, l2) in cases {
        let w = build_weight(&spec, &mask)?;
        let lim = GeoLimits::compute(&dist, &w)?;
        println!(
            "{name:<28} {:>10.4} {:>10.4} {:>10.4} {:>10.4}",
            lim.lambda1_inf, l1, lim.lambda2_inf, l2
        );
    }
    Ok(())
}
