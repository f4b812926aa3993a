//! Exact Euclidean distance transform to the outside node set.
//!
//! Separable lower-envelope-of-parabolas scheme (Felzenszwalb and
//! Huttenlocher), run on squared lattice distances held as integers, so the
//! result is exact: every inside node gets `h * sqrt(k)` where `k` is the
//! true minimum of `di^2 + dj^2` over outside nodes.

use crate::grid::{rotate90, DomainMask, Grid, Node};

#[derive(Clone, Debug, PartialEq)]
pub struct DistanceField {
    grid: Grid,
    sq: Vec<i64>,
    d: Vec<f64>,
}

/// Length of a lattice vector with squared length `sq`.
#[inline]
pub fn lattice_length(sq: i64, h: f64) -> f64 {
    h * (sq as f64).sqrt()
}

/// Half the length of a lattice vector with squared length `sq`.
///
/// Kept bit-compatible with [`lattice_length`]: `half_lattice_length(4k, h)`
/// equals `lattice_length(k, h)` exactly, since scaling by powers of two
/// commutes with correctly rounded square roots.
#[inline]
pub fn half_lattice_length(sq: i64, h: f64) -> f64 {
    h * (0.5 * (sq as f64).sqrt())
}

impl DistanceField {
    pub fn from_squared(grid: Grid, sq: Vec<i64>) -> Self {
        let d = sq.iter().map(|&s| lattice_length(s, grid.h)).collect();
        DistanceField { grid, sq, d }
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.d
    }

    /// Squared distances in lattice units.
    pub fn squared(&self) -> &[i64] {
        &self.sq
    }

    #[inline]
    pub fn at(&self, idx: usize) -> f64 {
        self.d[idx]
    }

    pub fn at_node(&self, n: Node) -> f64 {
        self.d[self.grid.idx(n.i, n.j)]
    }

    pub fn max(&self) -> f64 {
        self.d.iter().cloned().fold(0.0, f64::max)
    }

    pub fn rotated90(&self) -> DistanceField {
        DistanceField {
            grid: self.grid.rotated90(),
            sq: rotate90(&self.grid, &self.sq),
            d: rotate90(&self.grid, &self.d),
        }
    }
}

/// 1D squared distance transform of `f` (entries `None` are +infinity).
///
/// Writes `min_q (p - q)^2 + f(q)` into `out`; leaves `None` if every input
/// is infinite.
fn dt1d(f: &[Option<i64>], out: &mut [Option<i64>], v: &mut Vec<usize>, z: &mut Vec<f64>) {
    v.clear();
    z.clear();
    for (q, fq) in f.iter().enumerate() {
        let Some(fq) = *fq else { continue };
        let key_q = (fq + (q * q) as i64) as f64;
        loop {
            let Some(&last) = v.last() else {
                v.push(q);
                z.push(f64::NEG_INFINITY);
                break;
            };
            let fl = f[last].unwrap();
            let key_l = (fl + (last * last) as i64) as f64;
            let s = (key_q - key_l) / (2.0 * (q as f64 - last as f64));
            if s <= *z.last().unwrap() {
                v.pop();
                z.pop();
            } else {
                v.push(q);
                z.push(s);
                break;
            }
        }
    }
    if v.is_empty() {
        out.iter_mut().for_each(|o| *o = None);
        return;
    }
    let mut k = 0;
    for (p, o) in out.iter_mut().enumerate() {
        while k + 1 < v.len() && z[k + 1] < p as f64 {
            k += 1;
        }
        let q = v[k];
        let dp = p as i64 - q as i64;
        *o = Some(dp * dp + f[q].unwrap());
    }
}

/// Squared lattice distance (in grid steps) from every node to the nearest
/// node with `target[k]`; `None` everywhere when no target exists.
pub(crate) fn squared_distance_to(grid: &Grid, target: &[bool]) -> Vec<Option<i64>> {
    let (nx, ny) = (grid.nx, grid.ny);
    let mut cols = vec![None; grid.len()];
    let mut v = Vec::new();
    let mut z = Vec::new();

    let mut f = vec![None; ny];
    let mut out = vec![None; ny];
    for i in 0..nx {
        for j in 0..ny {
            f[j] = target[grid.idx(i, j)].then_some(0);
        }
        dt1d(&f, &mut out, &mut v, &mut z);
        for j in 0..ny {
            cols[grid.idx(i, j)] = out[j];
        }
    }

    let mut sq = vec![None; grid.len()];
    let mut out = vec![None; nx];
    for j in 0..ny {
        let row = j * nx;
        dt1d(&cols[row..row + nx], &mut out, &mut v, &mut z);
        sq[row..row + nx].copy_from_slice(&out);
    }
    sq
}

/// Exact distance from each inside node to the nearest outside node.
/// Outside nodes get 0.
pub fn edt(mask: &DomainMask) -> DistanceField {
    let grid = *mask.grid();
    let outside: Vec<bool> = mask.inside().iter().map(|b| !b).collect();
    let sq = squared_distance_to(&grid, &outside)
        .into_iter()
        // the collar guarantees an outside node
        .map(|s| s.expect("collar guarantees an outside node"))
        .collect();
    DistanceField::from_squared(grid, sq)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{disk, rasterize, Primitive};

    #[test]
    fn block_center_is_two_steps() {
        let grid = Grid::new(5, 5, 1.0, [0.0, 0.0]).unwrap();
        let mut inside = vec![false; 25];
        for j in 1..4 {
            for i in 1..4 {
                inside[grid.idx(i, j)] = true;
            }
        }
        let mask = DomainMask::from_inside(grid, inside).unwrap();
        let d = edt(&mask);
        assert_eq!(d.at(grid.idx(2, 2)), 2.0);
        assert_eq!(d.at(grid.idx(1, 1)), 1.0);
        assert_eq!(d.at(grid.idx(0, 0)), 0.0);
    }

    #[test]
    fn single_node_domain() {
        let grid = Grid::new(3, 3, 0.5, [0.0, 0.0]).unwrap();
        let mut inside = vec![false; 9];
        inside[4] = true;
        let d = edt(&DomainMask::from_inside(grid, inside).unwrap());
        assert_eq!(d.at(4), 0.5);
    }

    #[test]
    fn unit_disk_inradius() {
        let h = 1.0 / 128.0;
        let grid = Grid::covering([-1.0, -1.0], [1.0, 1.0], h).unwrap();
        let mask = rasterize(&[Primitive::union(disk([0.0, 0.0], 1.0))], &grid).unwrap();
        let d = edt(&mask);
        assert!((d.max() - 1.0).abs() <= 2.0 * h, "max {}", d.max());
    }

    #[test]
    fn half_length_is_bit_compatible() {
        for k in [1i64, 2, 3, 5, 7, 1234, 99991] {
            for h in [1.0, 0.1, 1.0 / 3.0, 2.0 / 93.0] {
                assert_eq!(
                    half_lattice_length(4 * k, h).to_bits(),
                    lattice_length(k, h).to_bits()
                );
            }
        }
    }
}
