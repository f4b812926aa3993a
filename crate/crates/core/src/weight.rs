//! Sign-changing weights on the grid and their sign partition.

use crate::error::{Error, Result};
use crate::grid::{rotate90, DomainMask, Grid, Region};

/// Relative threshold below which `|m|` counts as zero.
pub const DEFAULT_EPS_REL: f64 = 1e-12;

/// Closed-form description of a nodal function.
///
/// Also used for the zero-order coefficient `C`.
#[derive(Clone, Debug, PartialEq)]
pub enum WeightSpec {
    Constant(f64),
    /// `background` everywhere, overridden by each region's value in order.
    Regions {
        background: f64,
        regions: Vec<(Region, f64)>,
    },
    /// `a x + b y + c`
    Affine {
        a: f64,
        b: f64,
        c: f64,
    },
    /// `at_center + slope * |x - center|`
    Radial {
        center: [f64; 2],
        at_center: f64,
        slope: f64,
    },
}

impl WeightSpec {
    pub fn validate(&self) -> Result<()> {
        if let WeightSpec::Regions { regions, .. } = self {
            for (r, _) in regions {
                r.validate()?;
            }
        }
        Ok(())
    }

    pub fn eval(&self, p: [f64; 2]) -> f64 {
        match self {
            WeightSpec::Constant(v) => *v,
            WeightSpec::Regions {
                background,
                regions,
            } => regions
                .iter()
                .rev()
                .find(|(r, _)| r.contains(p))
                .map_or(*background, |(_, v)| *v),
            WeightSpec::Affine { a, b, c } => a * p[0] + b * p[1] + c,
            WeightSpec::Radial {
                center,
                at_center,
                slope,
            } => at_center + slope * (p[0] - center[0]).hypot(p[1] - center[1]),
        }
    }

    /// Samples at node positions; outside nodes get 0.
    pub fn sample(&self, mask: &DomainMask) -> Vec<f64> {
        let grid = mask.grid();
        (0..grid.len())
            .map(|k| {
                if mask.is_inside(k) {
                    self.eval(grid.node_point(grid.node(k)))
                } else {
                    0.0
                }
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct WeightField {
    mask: DomainMask,
    m: Vec<f64>,
    eps_zero: f64,
    plus: Vec<bool>,
    minus: Vec<bool>,
}

impl WeightField {
    /// Wraps nodal values; outside entries are forced to 0 and the threshold
    /// is `eps_rel * max |m|`.
    pub fn from_values(mask: &DomainMask, mut m: Vec<f64>, eps_rel: f64) -> Result<Self> {
        if m.len() != mask.grid().len() {
            return Err(Error::GridMismatch(format!(
                "weight has {} nodes, grid has {}",
                m.len(),
                mask.grid().len()
            )));
        }
        for (k, v) in m.iter_mut().enumerate() {
            if !mask.is_inside(k) {
                *v = 0.0;
            } else if !v.is_finite() {
                return Err(Error::Numeric(format!("weight is not finite at node {k}")));
            }
        }
        let sup = m.iter().fold(0.0f64, |a, v| a.max(v.abs()));
        let eps_zero = eps_rel * sup;
        let plus = m
            .iter()
            .enumerate()
            .map(|(k, &v)| mask.is_inside(k) && v > eps_zero)
            .collect();
        let minus = m
            .iter()
            .enumerate()
            .map(|(k, &v)| mask.is_inside(k) && v < -eps_zero)
            .collect();
        Ok(WeightField {
            mask: mask.clone(),
            m,
            eps_zero,
            plus,
            minus,
        })
    }

    pub fn grid(&self) -> &Grid {
        self.mask.grid()
    }

    pub fn mask(&self) -> &DomainMask {
        &self.mask
    }

    pub fn values(&self) -> &[f64] {
        &self.m
    }

    pub fn eps_zero(&self) -> f64 {
        self.eps_zero
    }

    pub fn plus(&self) -> &[bool] {
        &self.plus
    }

    pub fn minus(&self) -> &[bool] {
        &self.minus
    }

    /// Inside nodes that are neither plus nor minus.
    pub fn zero(&self) -> Vec<bool> {
        (0..self.m.len())
            .map(|k| self.mask.is_inside(k) && !self.plus[k] && !self.minus[k])
            .collect()
    }

    pub fn plus_count(&self) -> usize {
        self.plus.iter().filter(|&&b| b).count()
    }

    pub fn minus_count(&self) -> usize {
        self.minus.iter().filter(|&&b| b).count()
    }

    /// False when either sign region is empty. One-signed weights are still
    /// usable; this is informational.
    pub fn is_sign_changing(&self) -> bool {
        self.plus_count() > 0 && self.minus_count() > 0
    }

    pub fn sup_norm(&self) -> f64 {
        self.m.iter().fold(0.0f64, |a, v| a.max(v.abs()))
    }

    pub fn rotated90(&self) -> WeightField {
        let grid = self.grid();
        WeightField {
            mask: self.mask.rotated90(),
            m: rotate90(grid, &self.m),
            eps_zero: self.eps_zero,
            plus: rotate90(grid, &self.plus),
            minus: rotate90(grid, &self.minus),
        }
    }
}

pub fn build_weight(spec: &WeightSpec, mask: &DomainMask) -> Result<WeightField> {
    spec.validate()?;
    WeightField::from_values(mask, spec.sample(mask), DEFAULT_EPS_REL)
}

/// `m -> -m`. The sign masks swap exactly and the threshold is unchanged.
pub fn negate(w: &WeightField) -> WeightField {
    WeightField {
        mask: w.mask.clone(),
        m: w.m.iter().map(|v| -v).collect(),
        eps_zero: w.eps_zero,
        plus: w.minus.clone(),
        minus: w.plus.clone(),
    }
}
