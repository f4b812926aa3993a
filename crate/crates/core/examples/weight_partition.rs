//! Sign partition of a weight and its negation.

use plap_lab::{build_weight, disk, negate, rasterize, Grid, Primitive, WeightSpec};

fn main() -> plap_lab::Result<()> {
    let grid = Grid::covering([-1.0, -1.0], [1.0, 1.0], 1.0 / 64.0)?;
    let mask = rasterize(&[Primitive::union(disk([0.0, 0.0], 1.0))], &grid)?;
    let spec = WeightSpec::Affine {
        a: 1.0,
        b: 0.5,
        c: -0.2,
    };
    let w = build_weight(&spec, &mask)?;
    let h2 = grid.h * grid.h;

    println!("m(x, y) = x + y/2 - 0.2 on the unit disk, h = 1/64");
    println!(
        "plus  nodes {:>6}  area {:.4}",
        w.plus_count(),
        w.plus_count() as f64 * h2
    );
    println!(
        "minus nodes {:>6}  area {:.4}",
        w.minus_count(),
        w.minus_count() as f64 * h2
    );
    println!("zero  nodes {:>6}", w.zero().iter().filter(|&&z| z).count());
    println!("sign changing: {}", w.is_sign_changing());

    let n = negate(&w);
    println!(
        "after negation: plus {}, minus {} (swapped exactly: {})",
        n.plus_count(),
        n.minus_count(),
        n.plus() == w.minus() && n.minus() == w.plus()
    );
    Ok(())
}
