use crate::error::{Error, Result};
use crate::grid::{rotate90, DomainMask, Grid};
use crate::weight::WeightSpec;

/// Nodal values of a candidate eigenfunction. Zero on every outside node.
#[derive(Clone, Debug, PartialEq)]
pub struct ScalarField {
    grid: Grid,
    u: Vec<f64>,
}

impl ScalarField {
    pub fn zeros(grid: &Grid) -> Self {
        ScalarField {
            grid: *grid,
            u: vec![0.0; grid.len()],
        }
    }

    /// Checks the Dirichlet condition against `mask`.
    pub fn new(mask: &DomainMask, u: Vec<f64>) -> Result<Self> {
        if u.len() != mask.grid().len() {
            return Err(Error::GridMismatch(format!(
                "field has {} nodes, grid has {}",
                u.len(),
                mask.grid().len()
            )));
        }
        if let Some(k) = (0..u.len()).find(|&k| !mask.is_inside(k) && u[k] != 0.0) {
            return Err(Error::NotDirichlet(k));
        }
        Ok(ScalarField {
            grid: *mask.grid(),
            u,
        })
    }

    /// Zeroes outside entries instead of rejecting them.
    pub fn masked(mask: &DomainMask, mut u: Vec<f64>) -> Self {
        assert_eq!(u.len(), mask.grid().len());
        for (k, v) in u.iter_mut().enumerate() {
            if !mask.is_inside(k) {
                *v = 0.0;
            }
        }
        ScalarField {
            grid: *mask.grid(),
            u,
        }
    }

    pub(crate) fn from_raw(grid: Grid, u: Vec<f64>) -> Self {
        debug_assert_eq!(u.len(), grid.len());
        ScalarField { grid, u }
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.u
    }

    pub(crate) fn values_mut(&mut self) -> &mut [f64] {
        &mut self.u
    }

    pub fn into_values(self) -> Vec<f64> {
        self.u
    }

    pub fn scaled(&self, t: f64) -> ScalarField {
        ScalarField {
            grid: self.grid,
            u: self.u.iter().map(|v| v * t).collect(),
        }
    }

    pub fn max(&self) -> f64 {
        self.u.iter().cloned().fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn rotated90(&self) -> ScalarField {
        ScalarField {
            grid: self.grid.rotated90(),
            u: rotate90(&self.grid, &self.u),
        }
    }
}

/// Zero-order coefficient `C`, positive on every inside node.
#[derive(Clone, Debug, PartialEq)]
pub struct Potential(ScalarField);

impl Potential {
    pub fn new(mask: &DomainMask, values: Vec<f64>) -> Result<Self> {
        let field = ScalarField::masked(mask, values);
        for k in mask.inside_indices() {
            let v = field.values()[k];
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::NonPositiveCoefficient { node: k, value: v });
            }
        }
        Ok(Potential(field))
    }

    pub fn from_spec(spec: &WeightSpec, mask: &DomainMask) -> Result<Self> {
        spec.validate()?;
        Potential::new(mask, spec.sample(mask))
    }

    pub fn constant(mask: &DomainMask, c: f64) -> Result<Self> {
        Potential::from_spec(&WeightSpec::Constant(c), mask)
    }

    pub fn values(&self) -> &[f64] {
        self.0.values()
    }

    pub fn grid(&self) -> &Grid {
        self.0.grid()
    }

    pub fn rotated90(&self) -> Potential {
        Potential(self.0.rotated90())
    }
}
