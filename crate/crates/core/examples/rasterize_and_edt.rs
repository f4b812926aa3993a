//! Rasterize a composite domain and compute its exact distance transform.
//!
//! The domain is a rectangle with a disk cut out of it. The inradius is the
//! largest distance value; the coarse map prints distance bands.

use plap_lab::{disk, edt, rasterize, rect, Grid, Primitive};

fn main() -> plap_lab::Result<()> {
    let prims = [
        Primitive::union(rect([-1.0, -0.6], [1.0, 0.6])),
        Primitive::difference(disk([0.4, 0.0], 0.35)),
    ];
    let grid = Grid::covering([-1.0, -0.6], [1.0, 0.6], 1.0 / 20.0)?;
    let mask = rasterize(&prims, &grid)?;
    let dist = edt(&mask);

    println!("grid {} x {}, h = {}", grid.nx, grid.ny, grid.h);
    println!("inside nodes {}", mask.count());
    println!("inradius {:.4}", dist.max());
    for j in (0..grid.ny).rev() {
        let row: String = (0..grid.nx)
            .map(|i| {
                let d = dist.at(grid.idx(i, j));
                match d {
                    0.0 => '.',
                    d if d < 0.1 => '1',
                    d if d < 0.2 => '2',
                    d if d < 0.3 => '3',
                    _ => '4',
                }
            })
            .collect();
        println!("{row}");
    }
    Ok(())
}
