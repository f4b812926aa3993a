//! Independent oracles shared by the integration tests.

#![allow(dead_code)]

use nalgebra::{DMatrix, SymmetricEigen};
use plap_lab::{disk, rasterize, DomainMask, Grid, Primitive, ScalarField};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Squared distance, in grid steps, from every node to the nearest outside
/// node, by exhaustive search.
pub fn brute_edt_squared(mask: &DomainMask) -> Vec<i64> {
    let grid = mask.grid();
    let outside: Vec<(i64, i64)> = (0..grid.len())
        .filter(|&k| !mask.is_inside(k))
        .map(|k| (grid.node(k).i as i64, grid.node(k).j as i64))
        .collect();
    (0..grid.len())
        .map(|k| {
            if !mask.is_inside(k) {
                return 0;
            }
            let (i, j) = (grid.node(k).i as i64, grid.node(k).j as i64);
            outside
                .iter()
                .map(|&(a, b)| (a - i) * (a - i) + (b - j) * (b - j))
                .min()
                .unwrap()
        })
        .collect()
}

/// Random mask with the border forced outside and at least one inside node.
/// `fill` is the probability of a node being inside.
pub fn random_mask(rng: &mut ChaCha8Rng, nx: usize, ny: usize, fill: f64) -> DomainMask {
    let grid = Grid::new(nx, ny, 1.0 / (nx.max(ny) as f64), [0.0, 0.0]).unwrap();
    loop {
        let inside: Vec<bool> = (0..grid.len())
            .map(|k| {
                let n = grid.node(k);
                !grid.on_border(n.i, n.j) && rng.random_bool(fill)
            })
            .collect();
        if let Ok(mask) = DomainMask::from_inside(grid, inside) {
            return mask;
        }
    }
}

/// Union of a few random disks inside the unit square, on an `n x n` grid.
pub fn random_blobs(rng: &mut ChaCha8Rng, n: usize, count: usize) -> DomainMask {
    let grid = Grid::new(n, n, 1.0 / (n as f64 - 1.0), [0.0, 0.0]).unwrap();
    loop {
        let prims: Vec<Primitive> = (0..count)
            .map(|_| {
                let c = [rng.random_range(0.2..0.8), rng.random_range(0.2..0.8)];
                Primitive::union(disk(c, rng.random_range(0.08..0.3)))
            })
            .collect();
        if let Ok(mask) = rasterize(&prims, &grid) {
            return mask;
        }
    }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn unit_disk(h: f64) -> DomainMask {
    let grid = Grid::covering([-1.0, -1.0], [1.0, 1.0], h).unwrap();
    rasterize(&[Primitive::union(disk([0.0, 0.0], 1.0))], &grid).unwrap()
}

/// Best pair placement by exhaustive search, as the integer key
/// `min(4 d(a)^2, 4 d(b)^2, |a - b|^2)` in squared grid steps.
pub fn brute_pair_key(sq: &[i64], region: &[bool], grid: &Grid) -> i64 {
    let nodes: Vec<usize> = (0..region.len()).filter(|&k| region[k]).collect();
    let mut best = i64::MIN;
    for (x, &a) in nodes.iter().enumerate() {
        let (na, da) = (grid.node(a), 4 * sq[a]);
        if da <= best {
            continue;
        }
        for &b in &nodes[x + 1..] {
            let key = da.min(4 * sq[b]).min(na.dist2(grid.node(b)));
            best = best.max(key);
        }
    }
    best
}

/// The same key for a given pair.
pub fn pair_key(sq: &[i64], grid: &Grid, a: plap_lab::Node, b: plap_lab::Node) -> i64 {
    (4 * sq[grid.idx(a.i, a.j)])
        .min(4 * sq[grid.idx(b.i, b.j)])
        .min(a.dist2(b))
}

/// Smallest eigenvalue of `M^{-1/2} L M^{-1/2} / h^2` with `L` the five-point
/// Dirichlet Laplacian on the inside nodes and `M = diag(m)`, `m > 0`.
pub fn five_point_lambda(mask: &DomainMask, m: &[f64]) -> f64 {
    let grid = mask.grid();
    let nodes: Vec<usize> = mask.inside_indices().collect();
    let mut pos = vec![usize::MAX; grid.len()];
    for (a, &k) in nodes.iter().enumerate() {
        pos[k] = a;
    }
    let n = nodes.len();
    let mut a = DMatrix::<f64>::zeros(n, n);
    for (r, &k) in nodes.iter().enumerate() {
        a[(r, r)] = 4.0 / m[k];
        for nb in [k - 1, k + 1, k - grid.nx, k + grid.nx] {
            if pos[nb] != usize::MAX {
                a[(r, pos[nb])] = -1.0 / (m[k] * m[nb]).sqrt();
            }
        }
    }
    let eig = SymmetricEigen::new(a);
    eig.eigenvalues
        .iter()
        .cloned()
        .fold(f64::INFINITY, f64::min)
        / (grid.h * grid.h)
}

pub fn random_field(mask: &DomainMask, seed: u64) -> ScalarField {
    let mut r = rng(seed);
    let u = (0..mask.grid().len())
        .map(|k| {
            if mask.is_inside(k) {
                r.random_range(0.5..1.5)
            } else {
                0.0
            }
        })
        .collect();
    ScalarField::new(mask, u).unwrap()
}

/// Energy of one cell with lower-left node `(i, j)`: the mean over its four
/// corners of `|g|^p` times the cell area, `g` the one-sided differences along
/// the two edges meeting at the corner.
pub fn cell_energy(u: &[f64], grid: &Grid, i: usize, j: usize, p: f64) -> f64 {
    let h = grid.h;
    let (a, b) = (u[grid.idx(i, j)], u[grid.idx(i + 1, j)]);
    let (c, d) = (u[grid.idx(i, j + 1)], u[grid.idx(i + 1, j + 1)]);
    let corners = [
        (b - a, c - a),
        (b - a, d - b),
        (d - c, c - a),
        (d - c, d - b),
    ];
    corners
        .iter()
        .map(|(x, y)| ((x / h).powi(2) + (y / h).powi(2)).powf(p / 2.0))
        .sum::<f64>()
        * h
        * h
        / 4.0
}

pub fn total_energy(u: &[f64], grid: &Grid, p: f64, c: Option<&[f64]>) -> f64 {
    let mut e = 0.0;
    for j in 0..grid.ny - 1 {
        for i in 0..grid.nx - 1 {
            e += cell_energy(u, grid, i, j, p);
        }
    }
    if let Some(c) = c {
        e += grid.h
            * grid.h
            * u.iter()
                .zip(c)
                .map(|(v, c)| c * v.abs().powf(p))
                .sum::<f64>();
    }
    e
}

/// The part of the energy that depends on node `k`: its four cells and its
/// zero-order term.
pub fn local_energy(u: &[f64], grid: &Grid, k: usize, p: f64, c: Option<&[f64]>) -> f64 {
    let n = grid.node(k);
    let mut e = 0.0;
    for (i, j) in [
        (n.i - 1, n.j - 1),
        (n.i, n.j - 1),
        (n.i - 1, n.j),
        (n.i, n.j),
    ] {
        e += cell_energy(u, grid, i, j, p);
    }
    if let Some(c) = c {
        e += grid.h * grid.h * c[k] * u[k].abs().powf(p);
    }
    e
}

pub fn local_mass(u: &[f64], grid: &Grid, k: usize, p: f64, m: &[f64]) -> f64 {
    grid.h * grid.h * m[k] * u[k].abs().powf(p)
}

/// Max relative deviation of `grad` from fourth-order central differences of
/// `local` over `count` random inside nodes.
pub fn gradient_error(
    mask: &DomainMask,
    u: &ScalarField,
    grad: &[f64],
    count: usize,
    seed: u64,
    local: impl Fn(&[f64], usize) -> f64,
) -> f64 {
    let inside: Vec<usize> = mask.inside_indices().collect();
    let mut r = rng(seed);
    let mut worst = 0.0f64;
    for _ in 0..count {
        let k = inside[r.random_range(0..inside.len())];
        let eps = 1e-4 * u.values()[k].abs().max(1e-3);
        let at = |t: f64| {
            let mut v = u.values().to_vec();
            v[k] += t;
            local(&v, k)
        };
        let fd = (-at(2.0 * eps) + 8.0 * at(eps) - 8.0 * at(-eps) + at(-2.0 * eps)) / (12.0 * eps);
        worst = worst.max((fd - grad[k]).abs() / grad[k].abs());
    }
    worst
}
