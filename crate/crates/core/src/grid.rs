//! Uniform 2D lattices, domain primitives and their rasterization.
//!
//! Node `(i, j)` sits at world position `origin + (i h, j h)`. Node arrays are
//! stored row-major: a grid row is a fixed `j`, and the flat index of `(i, j)`
//! is `j * nx + i`.
//!
//! Every [`DomainMask`] keeps a one-node outside collar, so each inside node
//! has all eight neighbours in index range and stencils never need bounds
//! checks.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    pub nx: usize,
    pub ny: usize,
    pub h: f64,
    pub origin: [f64; 2],
}

/// Lattice index of a node. Ordering is lexicographic in `(i, j)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Node {
    pub i: usize,
    pub j: usize,
}

impl Node {
    pub fn new(i: usize, j: usize) -> Self {
        Node { i, j }
    }

    /// Squared distance in lattice units.
    pub fn dist2(self, other: Node) -> i64 {
        let di = self.i as i64 - other.i as i64;
        let dj = self.j as i64 - other.j as i64;
        di * di + dj * dj
    }
}

impl Grid {
    pub fn new(nx: usize, ny: usize, h: f64, origin: [f64; 2]) -> Result<Self> {
        if nx < 3 || ny < 3 {
            return Err(Error::InvalidGrid(format!(
                "need nx, ny >= 3, got {nx} x {ny}"
            )));
        }
        if !(h > 0.0 && h.is_finite()) {
            return Err(Error::InvalidGrid(format!(
                "spacing must be positive, got {h}"
            )));
        }
        if !origin.iter().all(|v| v.is_finite()) {
            return Err(Error::InvalidGrid("origin must be finite".into()));
        }
        Ok(Grid { nx, ny, h, origin })
    }

    /// Grid aligned to integer multiples of `h` that covers the box
    /// `[min, max]` with one extra node of margin on every side.
    pub fn covering(min: [f64; 2], max: [f64; 2], h: f64) -> Result<Self> {
        if !(h > 0.0 && h.is_finite()) {
            return Err(Error::InvalidGrid(format!(
                "spacing must be positive, got {h}"
            )));
        }
        if !(min[0] < max[0] && min[1] < max[1]) {
            return Err(Error::InvalidGrid("empty bounding box".into()));
        }
        let lo_i = (min[0] / h).floor() as i64 - 1;
        let lo_j = (min[1] / h).floor() as i64 - 1;
        let hi_i = (max[0] / h).ceil() as i64 + 1;
        let hi_j = (max[1] / h).ceil() as i64 + 1;
        Grid::new(
            (hi_i - lo_i + 1) as usize,
            (hi_j - lo_j + 1) as usize,
            h,
            [lo_i as f64 * h, lo_j as f64 * h],
        )
    }

    /// `n x n` grid whose interior `n - 2` nodes per axis span `[min, max]`
    /// exactly, leaving a one-node collar outside the box.
    pub fn square_fit(min: [f64; 2], max: [f64; 2], n: usize) -> Result<Self> {
        if n < 4 {
            return Err(Error::InvalidGrid(format!("need n >= 4, got {n}")));
        }
        let side = (max[0] - min[0]).max(max[1] - min[1]);
        let h = side / (n - 3) as f64;
        Grid::new(n, n, h, [min[0] - h, min[1] - h])
    }

    pub fn len(&self) -> usize {
        self.nx * self.ny
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    #[inline]
    pub fn idx(&self, i: usize, j: usize) -> usize {
        j * self.nx + i
    }

    #[inline]
    pub fn node(&self, idx: usize) -> Node {
        Node::new(idx % self.nx, idx / self.nx)
    }

    #[inline]
    pub fn point(&self, i: usize, j: usize) -> [f64; 2] {
        [
            self.origin[0] + i as f64 * self.h,
            self.origin[1] + j as f64 * self.h,
        ]
    }

    pub fn node_point(&self, n: Node) -> [f64; 2] {
        self.point(n.i, n.j)
    }

    /// Node closest to `p`, if `p` lies within half a step of the lattice.
    pub fn nearest_node(&self, p: [f64; 2]) -> Option<Node> {
        let fi = ((p[0] - self.origin[0]) / self.h).round();
        let fj = ((p[1] - self.origin[1]) / self.h).round();
        let ok = |f: f64, n: usize| f >= 0.0 && f < n as f64;
        (ok(fi, self.nx) && ok(fj, self.ny)).then(|| Node::new(fi as usize, fj as usize))
    }

    pub fn on_border(&self, i: usize, j: usize) -> bool {
        i == 0 || j == 0 || i + 1 == self.nx || j + 1 == self.ny
    }

    /// Same lattice shape and spacing, bit for bit.
    pub fn same_as(&self, other: &Grid) -> bool {
        self.nx == other.nx
            && self.ny == other.ny
            && self.h.to_bits() == other.h.to_bits()
            && self.origin[0].to_bits() == other.origin[0].to_bits()
            && self.origin[1].to_bits() == other.origin[1].to_bits()
    }

    /// Grid of the 90 degree counter-clockwise rotated lattice (axes swap).
    pub fn rotated90(&self) -> Grid {
        Grid {
            nx: self.ny,
            ny: self.nx,
            h: self.h,
            origin: [self.origin[1], self.origin[0]],
        }
    }

    /// Node of the rotated lattice that `n` is carried to by [`rotate90`].
    pub fn rotate_node(&self, n: Node) -> Node {
        Node::new(self.ny - 1 - n.j, n.i)
    }
}

/// Rotates a node array by 90 degrees counter-clockwise: `(i, j) -> (ny-1-j, i)`.
pub fn rotate90<T: Copy>(grid: &Grid, values: &[T]) -> Vec<T> {
    let rot = grid.rotated90();
    let mut out = Vec::with_capacity(values.len());
    for jr in 0..rot.ny {
        for ir in 0..rot.nx {
            // inverse of (i, j) -> (ny-1-j, i)
            let i = jr;
            let j = grid.ny - 1 - ir;
            out.push(values[grid.idx(i, j)]);
        }
    }
    out
}

/// Transposes a node array: `(i, j) -> (j, i)`.
pub fn transpose<T: Copy>(grid: &Grid, values: &[T]) -> Vec<T> {
    let mut out = Vec::with_capacity(values.len());
    for jt in 0..grid.nx {
        for it in 0..grid.ny {
            out.push(values[grid.idx(jt, it)]);
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq)]
pub enum Shape {
    /// Open disk `|x - center| < radius`.
    Disk { center: [f64; 2], radius: f64 },
    /// Open axis-aligned rectangle.
    Rect { min: [f64; 2], max: [f64; 2] },
    /// Simple or self-intersecting polygon, even-odd rule.
    Polygon { vertices: Vec<[f64; 2]> },
}

impl Shape {
    pub fn validate(&self) -> Result<()> {
        match self {
            Shape::Disk { center, radius } => {
                if !(radius.is_finite() && *radius >= 0.0) || !center.iter().all(|c| c.is_finite())
                {
                    return Err(Error::InvalidShape(format!("disk radius {radius}")));
                }
            }
            Shape::Rect { min, max } => {
                if !(min[0] <= max[0] && min[1] <= max[1]) {
                    return Err(Error::InvalidShape(format!(
                        "rect min {min:?} exceeds max {max:?}"
                    )));
                }
            }
            Shape::Polygon { vertices } => {
                if vertices.len() < 3 {
                    return Err(Error::InvalidShape(
                        "polygon needs at least 3 vertices".into(),
                    ));
                }
            }
        }
        Ok(())
    }

    pub fn contains(&self, p: [f64; 2]) -> bool {
        match self {
            Shape::Disk { center, radius } => {
                let dx = p[0] - center[0];
                let dy = p[1] - center[1];
                dx * dx + dy * dy < radius * radius
            }
            Shape::Rect { min, max } => {
                p[0] > min[0] && p[0] < max[0] && p[1] > min[1] && p[1] < max[1]
            }
            Shape::Polygon { vertices } => {
                let mut inside = false;
                let n = vertices.len();
                let mut k = n - 1;
                for l in 0..n {
                    let (a, b) = (vertices[l], vertices[k]);
                    if (a[1] > p[1]) != (b[1] > p[1])
                        && p[0] < (b[0] - a[0]) * (p[1] - a[1]) / (b[1] - a[1]) + a[0]
                    {
                        inside = !inside;
                    }
                    k = l;
                }
                inside
            }
        }
    }

    /// Bounding box `(min, max)`.
    pub fn bounds(&self) -> ([f64; 2], [f64; 2]) {
        match self {
            Shape::Disk { center, radius } => (
                [center[0] - radius, center[1] - radius],
                [center[0] + radius, center[1] + radius],
            ),
            Shape::Rect { min, max } => (*min, *max),
            Shape::Polygon { vertices } => {
                let mut lo = [f64::INFINITY; 2];
                let mut hi = [f64::NEG_INFINITY; 2];
                for v in vertices {
                    for a in 0..2 {
                        lo[a] = lo[a].min(v[a]);
                        hi[a] = hi[a].max(v[a]);
                    }
                }
                (lo, hi)
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SetOp {
    #[default]
    Union,
    Difference,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Primitive {
    pub op: SetOp,
    pub shape: Shape,
}

impl Primitive {
    pub fn union(shape: Shape) -> Self {
        Primitive {
            op: SetOp::Union,
            shape,
        }
    }

    pub fn difference(shape: Shape) -> Self {
        Primitive {
            op: SetOp::Difference,
            shape,
        }
    }
}

pub fn disk(center: [f64; 2], radius: f64) -> Shape {
    Shape::Disk { center, radius }
}

pub fn rect(min: [f64; 2], max: [f64; 2]) -> Shape {
    Shape::Rect { min, max }
}

/// A set built from primitives applied left to right, starting from the
/// empty set.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct Region(pub Vec<Primitive>);

impl Region {
    pub fn new(primitives: Vec<Primitive>) -> Self {
        Region(primitives)
    }

    pub fn validate(&self) -> Result<()> {
        if self.0.is_empty() {
            return Err(Error::InvalidShape("empty primitive list".into()));
        }
        self.0.iter().try_for_each(|p| p.shape.validate())
    }

    pub fn contains(&self, p: [f64; 2]) -> bool {
        self.0.iter().fold(false, |acc, prim| match prim.op {
            SetOp::Union => acc || prim.shape.contains(p),
            SetOp::Difference => acc && !prim.shape.contains(p),
        })
    }

    /// Bounding box of the union parts.
    pub fn bounds(&self) -> Option<([f64; 2], [f64; 2])> {
        let mut out: Option<([f64; 2], [f64; 2])> = None;
        for prim in self.0.iter().filter(|p| p.op == SetOp::Union) {
            let (lo, hi) = prim.shape.bounds();
            out = Some(match out {
                None => (lo, hi),
                Some((a, b)) => (
                    [a[0].min(lo[0]), a[1].min(lo[1])],
                    [b[0].max(hi[0]), b[1].max(hi[1])],
                ),
            });
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct DomainMask {
    grid: Grid,
    inside: Vec<bool>,
}

impl DomainMask {
    /// Wraps a node array. Fails if the collar is violated or nothing is inside.
    pub fn from_inside(grid: Grid, inside: Vec<bool>) -> Result<Self> {
        if inside.len() != grid.len() {
            return Err(Error::GridMismatch(format!(
                "mask has {} nodes, grid has {}",
                inside.len(),
                grid.len()
            )));
        }
        for (idx, &v) in inside.iter().enumerate() {
            let n = grid.node(idx);
            if v && grid.on_border(n.i, n.j) {
                return Err(Error::InvalidGrid(format!(
                    "inside node ({}, {}) lies on the outer collar",
                    n.i, n.j
                )));
            }
        }
        if !inside.iter().any(|&v| v) {
            return Err(Error::DegenerateDomain);
        }
        Ok(DomainMask { grid, inside })
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn inside(&self) -> &[bool] {
        &self.inside
    }

    #[inline]
    pub fn is_inside(&self, idx: usize) -> bool {
        self.inside[idx]
    }

    pub fn count(&self) -> usize {
        self.inside.iter().filter(|&&v| v).count()
    }

    pub fn inside_indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.inside
            .iter()
            .enumerate()
            .filter_map(|(k, &v)| v.then_some(k))
    }

    /// True when the node and all eight neighbours are inside.
    pub fn is_stencil_interior(&self, idx: usize) -> bool {
        if !self.inside[idx] {
            return false;
        }
        let nx = self.grid.nx as isize;
        [-nx - 1, -nx, -nx + 1, -1, 1, nx - 1, nx, nx + 1]
            .iter()
            .all(|&o| self.inside[(idx as isize + o) as usize])
    }

    pub fn rotated90(&self) -> DomainMask {
        DomainMask {
            grid: self.grid.rotated90(),
            inside: rotate90(&self.grid, &self.inside),
        }
    }
}

/// Samples the composed set at node positions and clears the collar.
pub fn rasterize(primitives: &[Primitive], grid: &Grid) -> Result<DomainMask> {
    let region = Region(primitives.to_vec());
    region.validate()?;
    rasterize_region(&region, grid)
}

pub fn rasterize_region(region: &Region, grid: &Grid) -> Result<DomainMask> {
    let mut inside = vec![false; grid.len()];
    for j in 0..grid.ny {
        for i in 0..grid.nx {
            if !grid.on_border(i, j) {
                inside[grid.idx(i, j)] = region.contains(grid.point(i, j));
            }
        }
    }
    DomainMask::from_inside(*grid, inside)
}
