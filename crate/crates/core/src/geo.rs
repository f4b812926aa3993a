//! Geometric limits of the weighted eigenvalues.
//!
//! Everything here is measured on the lattice: a ball `B_r(c)` with a node
//! center lies in the domain iff `r <= d(c)` where `d` is the exact distance
//! transform, and two balls of radius `r` are disjoint iff their centers are
//! at least `2r` apart.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::edt::{half_lattice_length, lattice_length, DistanceField};
use crate::error::{Error, Result};
use crate::field::ScalarField;
use crate::grid::{Grid, Node};
use crate::weight::WeightField;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PackingResult {
    pub k: usize,
    pub radius: f64,
    pub centers: Vec<Node>,
    /// True when `radius` is the global grid optimum. Heuristic packings are
    /// lower bounds on the packing radius.
    pub exact: bool,
}

#[derive(Clone, Debug)]
pub struct PackOptions {
    pub seed: u64,
    pub restarts: usize,
}

impl Default for PackOptions {
    fn default() -> Self {
        PackOptions {
            seed: 0,
            restarts: 8,
        }
    }
}

/// Largest distance-to-boundary over `region`, with its argmax.
///
/// Ties go to the lexicographically smallest `(i, j)`.
pub fn r_plus(dist: &DistanceField, region: &[bool]) -> Result<(f64, Node)> {
    let grid = dist.grid();
    let mut best: Option<(i64, Node)> = None;
    for (k, _) in region.iter().enumerate().filter(|(_, &b)| b) {
        let s = dist.squared()[k];
        let n = grid.node(k);
        best = match best {
            Some((bs, bn)) if bs > s || (bs == s && bn < n) => Some((bs, bn)),
            _ => Some((s, n)),
        };
    }
    let (s, n) = best.ok_or(Error::NoPositiveRegion)?;
    Ok((lattice_length(s, grid.h), n))
}

/// [`r_plus`] of the minus mask.
pub fn r_minus(dist: &DistanceField, w: &WeightField) -> Result<(f64, Node)> {
    r_plus(dist, w.minus()).map_err(|_| Error::NoNegativeRegion)
}

/// Value of a placement: the largest common radius its balls can have.
fn placement_radius(dist: &DistanceField, centers: &[Node]) -> f64 {
    let grid = dist.grid();
    let mut r = f64::INFINITY;
    for (a, &ca) in centers.iter().enumerate() {
        r = r.min(dist.at_node(ca));
        for &cb in &centers[a + 1..] {
            r = r.min(half_lattice_length(ca.dist2(cb), grid.h));
        }
    }
    r
}

pub fn pack(
    k: usize,
    dist: &DistanceField,
    region: &[bool],
    opts: &PackOptions,
) -> Result<PackingResult> {
    if k == 0 {
        return Err(Error::InfeasiblePacking("k must be at least 1".into()));
    }
    let count = region.iter().filter(|&&b| b).count();
    if count == 0 {
        return Err(Error::NoPositiveRegion);
    }
    if count < k {
        return Err(Error::InfeasiblePacking(format!(
            "{k} centers requested but the region has only {count} nodes"
        )));
    }
    match k {
        1 => {
            let (radius, c) = r_plus(dist, region)?;
            Ok(PackingResult {
                k,
                radius,
                centers: vec![c],
                exact: true,
            })
        }
        2 => {
            let (a, b) = pack_pair(dist, region);
            Ok(PackingResult {
                k,
                radius: placement_radius(dist, &[a, b]),
                centers: vec![a, b],
                exact: true,
            })
        }
        _ => Ok(pack_heuristic(k, dist, region, opts)),
    }
}

/// Lattice points of the convex hull (counter-clockwise, no collinear points).
fn convex_hull(mut pts: Vec<(i64, i64)>) -> Vec<(i64, i64)> {
    pts.sort_unstable();
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let cross = |o: (i64, i64), a: (i64, i64), b: (i64, i64)| {
        (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
    };
    let mut hull: Vec<(i64, i64)> = Vec::with_capacity(2 * pts.len());
    for &p in pts.iter().chain(pts.iter().rev().skip(1)) {
        // lower chain on the forward pass, upper chain on the way back
        while hull.len() >= 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0 {
            hull.pop();
        }
        hull.push(p);
    }
    hull.pop();
    hull
}

/// Farthest pair among `nodes`, as squared lattice distance.
fn diameter(grid: &Grid, nodes: &[usize]) -> (i64, Node, Node) {
    // hull vertices are extreme within their row
    let mut lo = vec![usize::MAX; grid.ny];
    let mut hi = vec![0usize; grid.ny];
    for &k in nodes {
        let n = grid.node(k);
        lo[n.j] = lo[n.j].min(n.i);
        hi[n.j] = hi[n.j].max(n.i);
    }
    let mut pts = Vec::new();
    for j in 0..grid.ny {
        if lo[j] != usize::MAX {
            pts.push((lo[j] as i64, j as i64));
            pts.push((hi[j] as i64, j as i64));
        }
    }
    let hull = convex_hull(pts);
    let to_node = |p: (i64, i64)| Node::new(p.0 as usize, p.1 as usize);
    let mut best = (0, to_node(hull[0]), to_node(hull[0]));
    for (a, &pa) in hull.iter().enumerate() {
        for &pb in &hull[a + 1..] {
            let s = (pa.0 - pb.0).pow(2) + (pa.1 - pb.1).pow(2);
            if s > best.0 {
                best = (s, to_node(pa), to_node(pb));
            }
        }
    }
    best
}

/// Exact two-ball packing.
///
/// With nodes sorted by clearance, the prefix `S_t = {d >= t}` has a diameter
/// `D(t)` that shrinks as `t` grows, and the optimum is
/// `max_t min(t, D(t)/2)`. The crossing of the two monotone curves is found
/// by bisection over the distinct clearance levels; each probe is a convex
/// hull diameter, so the whole search is `O(N log N)`.
fn pack_pair(dist: &DistanceField, region: &[bool]) -> (Node, Node) {
    let grid = dist.grid();
    let sq = dist.squared();
    let mut nodes: Vec<usize> = (0..region.len()).filter(|&k| region[k]).collect();
    nodes.sort_unstable_by(|&a, &b| sq[b].cmp(&sq[a]).then(a.cmp(&b)));

    // levels[l] = (clearance^2, prefix length with clearance >= that level)
    let mut levels: Vec<(i64, usize)> = Vec::new();
    for (pos, &k) in nodes.iter().enumerate() {
        match levels.last_mut() {
            Some(last) if last.0 == sq[k] => last.1 = pos + 1,
            _ => levels.push((sq[k], pos + 1)),
        }
    }

    // crossing: first level whose diameter reaches twice the clearance
    let crosses = |l: usize| {
        let (t2, end) = levels[l];
        let (d2, _, _) = diameter(grid, &nodes[..end]);
        d2 >= 4 * t2
    };
    let (mut lo, mut hi) = (0usize, levels.len());
    while lo < hi {
        let mid = (lo + hi) / 2;
        if crosses(mid) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }

    let mut candidates = Vec::new();
    if lo < levels.len() {
        candidates.push(lo);
    }
    if lo > 0 {
        candidates.push(lo - 1);
    }
    let mut best: Option<(f64, Node, Node)> = None;
    for l in candidates {
        let (_, a, b) = diameter(grid, &nodes[..levels[l].1]);
        let r = placement_radius(dist, &[a, b]);
        if best.is_none_or(|(br, _, _)| r > br) {
            best = Some((r, a, b));
        }
    }
    let (_, a, b) = best.expect("at least one level");
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

/// All pairwise and boundary clearances, ascending. Placements are compared
/// lexicographically on this vector so that moves which help a non-binding
/// ball are still accepted.
fn leximin_key(dist: &DistanceField, centers: &[Node]) -> Vec<f64> {
    let h = dist.grid().h;
    let mut terms: Vec<f64> = centers.iter().map(|&c| dist.at_node(c)).collect();
    for (a, &ca) in centers.iter().enumerate() {
        for &cb in &centers[a + 1..] {
            terms.push(half_lattice_length(ca.dist2(cb), h));
        }
    }
    terms.sort_by(f64::total_cmp);
    terms
}

fn lex_greater(a: &[f64], b: &[f64]) -> bool {
    for (x, y) in a.iter().zip(b) {
        if x > y {
            return true;
        }
        if x < y {
            return false;
        }
    }
    false
}

/// Greedy farthest-point seeding followed by pattern search on the centers.
fn pack_heuristic(
    k: usize,
    dist: &DistanceField,
    region: &[bool],
    opts: &PackOptions,
) -> PackingResult {
    let grid = *dist.grid();
    let nodes: Vec<usize> = (0..region.len()).filter(|&k| region[k]).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut best: Option<(Vec<f64>, Vec<Node>)> = None;

    for restart in 0..opts.restarts.max(1) {
        let first = if restart == 0 {
            r_plus(dist, region).expect("region is nonempty").1
        } else {
            grid.node(nodes[rng.random_range(0..nodes.len())])
        };
        let mut centers = vec![first];
        while centers.len() < k {
            let mut pick: Option<(f64, usize)> = None;
            for &q in &nodes {
                let n = grid.node(q);
                if centers.contains(&n) {
                    continue;
                }
                let mut score = dist.at(q);
                for &c in &centers {
                    score = score.min(half_lattice_length(n.dist2(c), grid.h));
                }
                if pick.is_none_or(|(s, _)| score > s) {
                    pick = Some((score, q));
                }
            }
            centers.push(grid.node(pick.expect("enough nodes").1));
        }

        let mut key = leximin_key(dist, &centers);
        let mut step = (grid.nx.max(grid.ny) / 8).max(1);
        loop {
            let mut improved = false;
            for c in 0..k {
                for (di, dj) in [
                    (-1, -1),
                    (-1, 0),
                    (-1, 1),
                    (0, -1),
                    (0, 1),
                    (1, -1),
                    (1, 0),
                    (1, 1),
                ] {
                    let i = centers[c].i as isize + di * step as isize;
                    let j = centers[c].j as isize + dj * step as isize;
                    if i < 0 || j < 0 || i >= grid.nx as isize || j >= grid.ny as isize {
                        continue;
                    }
                    let cand = Node::new(i as usize, j as usize);
                    if !region[grid.idx(cand.i, cand.j)] || centers.contains(&cand) {
                        continue;
                    }
                    let old = centers[c];
                    centers[c] = cand;
                    let cand_key = leximin_key(dist, &centers);
                    if lex_greater(&cand_key, &key) {
                        key = cand_key;
                        improved = true;
                    } else {
                        centers[c] = old;
                    }
                }
            }
            if !improved {
                if step == 1 {
                    break;
                }
                step /= 2;
            }
        }
        if best.as_ref().is_none_or(|(bk, _)| lex_greater(&key, bk)) {
            best = Some((key, centers));
        }
    }

    let (_, centers) = best.expect("at least one restart");
    PackingResult {
        k,
        radius: placement_radius(dist, &centers),
        centers,
        exact: false,
    }
}

fn check_ball(dist: &DistanceField, center: Node, radius: f64) -> Result<()> {
    let clearance = dist.at_node(center);
    if radius.is_nan() || radius < 0.0 || radius > clearance * (1.0 + 1e-12) {
        return Err(Error::BallOutsideDomain {
            i: center.i,
            j: center.j,
            radius,
            clearance,
        });
    }
    Ok(())
}

/// `(radius - |x - center|)^+` at every node.
pub fn cone_field(center: Node, radius: f64, dist: &DistanceField) -> Result<ScalarField> {
    check_ball(dist, center, radius)?;
    let grid = dist.grid();
    let mut f = ScalarField::zeros(grid);
    let u = f.values_mut();
    for (k, v) in u.iter_mut().enumerate() {
        if dist.at(k) > 0.0 {
            let r = lattice_length(grid.node(k).dist2(center), grid.h);
            *v = (radius - r).max(0.0);
        }
    }
    Ok(f)
}

/// `alpha C_1 + beta C_2` for two disjoint admissible cones of equal radius.
pub fn two_cone_field(
    alpha: f64,
    beta: f64,
    c1: Node,
    c2: Node,
    radius: f64,
    dist: &DistanceField,
) -> Result<ScalarField> {
    check_disjoint(c1, c2, radius, dist)?;
    let a = cone_field(c1, radius, dist)?;
    let b = cone_field(c2, radius, dist)?;
    let u = a
        .values()
        .iter()
        .zip(b.values())
        .map(|(x, y)| alpha * x + beta * y)
        .collect();
    Ok(ScalarField::from_raw(*dist.grid(), u))
}

pub(crate) fn check_disjoint(c1: Node, c2: Node, radius: f64, dist: &DistanceField) -> Result<()> {
    let sep = lattice_length(c1.dist2(c2), dist.grid().h);
    if sep < 2.0 * radius {
        return Err(Error::OverlappingBalls {
            separation: sep,
            radius,
        });
    }
    Ok(())
}

/// Every geometric quantity the limit identities refer to.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GeoLimits {
    pub r_plus: f64,
    pub center_plus: Node,
    pub r_minus: Option<f64>,
    pub center_minus: Option<Node>,
    pub r2_plus: f64,
    pub centers2: [Node; 2],
    pub lambda1_inf: f64,
    pub lambda2_inf: f64,
    pub mu1_inf: Option<f64>,
    /// Limit with a positive zero-order term: `max(1 / r_plus, 1)`.
    pub lambda1_inf_c: f64,
}

impl GeoLimits {
    pub fn compute(dist: &DistanceField, w: &WeightField) -> Result<GeoLimits> {
        let (r_plus, center_plus) = r_plus(dist, w.plus())?;
        let minus = r_minus(dist, w).ok();
        let pair = pack(2, dist, w.plus(), &PackOptions::default())?;
        Ok(GeoLimits {
            r_plus,
            center_plus,
            r_minus: minus.map(|m| m.0),
            center_minus: minus.map(|m| m.1),
            r2_plus: pair.radius,
            centers2: [pair.centers[0], pair.centers[1]],
            lambda1_inf: 1.0 / r_plus,
            lambda2_inf: 1.0 / pair.radius,
            mu1_inf: minus.map(|m| -1.0 / m.0),
            lambda1_inf_c: (1.0 / r_plus).max(1.0),
        })
    }

    /// Scalar entries by name, for reports and comparisons.
    pub fn scalars(&self) -> Vec<(&'static str, f64)> {
        let mut v = vec![
            ("r_plus", self.r_plus),
            ("r2_plus", self.r2_plus),
            ("lambda1_inf", self.lambda1_inf),
            ("lambda2_inf", self.lambda2_inf),
            ("lambda1_inf_c", self.lambda1_inf_c),
        ];
        if let (Some(r), Some(mu)) = (self.r_minus, self.mu1_inf) {
            v.push(("r_minus", r));
            v.push(("mu1_inf", mu));
        }
        v
    }
}
