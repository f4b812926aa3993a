//! Run configuration, read from a single TOML file.
//!
//! Unknown keys are rejected. Every optional key has the default listed on
//! its field.

use std::path::Path;

use serde::Deserialize;

use crate::edt::{edt, DistanceField};
use crate::error::{Error, Result};
use crate::field::Potential;
use crate::geo::PackOptions;
use crate::grid::{rasterize, DomainMask, Grid, Primitive, Region, SetOp, Shape};
use crate::plap::SolverOptions;
use crate::viscosity::CheckOptions;
use crate::weight::{build_weight, WeightField, WeightSpec};

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub grid: GridConfig,
    pub domain: Vec<PrimitiveConfig>,
    pub weight: FunctionConfig,
    /// Zero-order coefficient `C`; absent means no zero-order term.
    pub potential: Option<FunctionConfig>,
    #[serde(default)]
    pub solver: SolverConfig,
    #[serde(default)]
    pub pack: PackConfig,
    #[serde(default)]
    pub check: CheckConfig,
    /// Output path prefix. Default `"out"`.
    #[serde(default = "default_out")]
    pub out: String,
    /// Seed for randomized packing restarts. Default 0.
    #[serde(default)]
    pub seed: u64,
}

fn default_out() -> String {
    "out".into()
}

/// Either an explicit lattice (`nx`, `ny`, `h`, `origin`), a spacing `h`
/// that covers the domain's bounding box with a one-node collar, or a node
/// count `n` for a square grid fitted to the bounding box.
#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridConfig {
    pub nx: Option<usize>,
    pub ny: Option<usize>,
    pub h: Option<f64>,
    pub origin: Option<[f64; 2]>,
    pub n: Option<usize>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PrimitiveConfig {
    /// `"union"` (default) or `"difference"`.
    #[serde(default)]
    pub op: SetOp,
    /// `"disk"`, `"rect"` or `"polygon"`.
    pub shape: String,
    pub center: Option<[f64; 2]>,
    pub radius: Option<f64>,
    pub min: Option<[f64; 2]>,
    pub max: Option<[f64; 2]>,
    pub vertices: Option<Vec<[f64; 2]>>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum FunctionConfig {
    Constant {
        value: f64,
    },
    /// Later regions override earlier ones.
    Regions {
        background: f64,
        #[serde(default)]
        regions: Vec<RegionConfig>,
    },
    /// `a x + b y + c`; coefficients default to 0.
    Affine {
        #[serde(default)]
        a: f64,
        #[serde(default)]
        b: f64,
        #[serde(default)]
        c: f64,
    },
    Radial {
        #[serde(default)]
        center: [f64; 2],
        at_center: f64,
        slope: f64,
    },
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RegionConfig {
    pub value: f64,
    pub primitives: Vec<PrimitiveConfig>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolverConfig {
    /// Default `[4, 8, 16, 32]`.
    #[serde(default = "default_p_list")]
    pub p_list: Vec<f64>,
    /// Default `1e-8`.
    #[serde(default = "default_tol")]
    pub tol: f64,
    /// Default 20000.
    #[serde(default = "default_max_iter")]
    pub max_iter: usize,
}

fn default_p_list() -> Vec<f64> {
    vec![4.0, 8.0, 16.0, 32.0]
}
fn default_tol() -> f64 {
    SolverOptions::default().tol
}
fn default_max_iter() -> usize {
    SolverOptions::default().max_iter
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            p_list: default_p_list(),
            tol: default_tol(),
            max_iter: default_max_iter(),
        }
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PackConfig {
    /// Number of balls. Default 2.
    #[serde(default = "default_k")]
    pub k: usize,
    /// Random restarts for `k >= 3`. Default 8.
    #[serde(default = "default_restarts")]
    pub restarts: usize,
}

fn default_k() -> usize {
    2
}
fn default_restarts() -> usize {
    PackOptions::default().restarts
}

impl Default for PackConfig {
    fn default() -> Self {
        PackConfig {
            k: default_k(),
            restarts: default_restarts(),
        }
    }
}

/// Defaults as in [`CheckOptions::default`].
#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CheckConfig {
    pub eps_rel: Option<f64>,
    pub kink_tol_frac: Option<f64>,
    pub ridge_halo_frac: Option<f64>,
    pub c_tol: Option<f64>,
}

impl PrimitiveConfig {
    pub fn to_primitive(&self) -> Result<Primitive> {
        let missing = |key: &str| Error::Config(format!("{} needs `{key}`", self.shape));
        let unused = |keys: &[(&str, bool)]| -> Result<()> {
            match keys.iter().find(|(_, present)| *present) {
                Some((k, _)) => Err(Error::Config(format!(
                    "`{k}` does not apply to {}",
                    self.shape
                ))),
                None => Ok(()),
            }
        };
        let shape = match self.shape.as_str() {
            "disk" => {
                unused(&[
                    ("min", self.min.is_some()),
                    ("max", self.max.is_some()),
                    ("vertices", self.vertices.is_some()),
                ])?;
                Shape::Disk {
                    center: self.center.ok_or_else(|| missing("center"))?,
                    radius: self.radius.ok_or_else(|| missing("radius"))?,
                }
            }
            "rect" => {
                unused(&[
                    ("center", self.center.is_some()),
                    ("radius", self.radius.is_some()),
                    ("vertices", self.vertices.is_some()),
                ])?;
                Shape::Rect {
                    min: self.min.ok_or_else(|| missing("min"))?,
                    max: self.max.ok_or_else(|| missing("max"))?,
                }
            }
            "polygon" => {
                unused(&[
                    ("center", self.center.is_some()),
                    ("radius", self.radius.is_some()),
                    ("min", self.min.is_some()),
                    ("max", self.max.is_some()),
                ])?;
                Shape::Polygon {
                    vertices: self.vertices.clone().ok_or_else(|| missing("vertices"))?,
                }
            }
            other => return Err(Error::Config(format!("unknown shape {other:?}"))),
        };
        shape.validate()?;
        Ok(Primitive { op: self.op, shape })
    }
}

fn primitives(list: &[PrimitiveConfig], what: &str) -> Result<Vec<Primitive>> {
    list.iter()
        .enumerate()
        .map(|(k, p)| {
            p.to_primitive()
                .map_err(|e| Error::Config(format!("{what}[{k}]: {e}")))
        })
        .collect()
}

impl FunctionConfig {
    pub fn to_spec(&self, what: &str) -> Result<WeightSpec> {
        Ok(match self {
            FunctionConfig::Constant { value } => WeightSpec::Constant(*value),
            FunctionConfig::Regions {
                background,
                regions,
            } => WeightSpec::Regions {
                background: *background,
                regions: regions
                    .iter()
                    .enumerate()
                    .map(|(k, r)| {
                        let prims =
                            primitives(&r.primitives, &format!("{what}.regions[{k}].primitives"))?;
                        let region = Region::new(prims);
                        region
                            .validate()
                            .map_err(|e| Error::Config(format!("{what}.regions[{k}]: {e}")))?;
                        Ok((region, r.value))
                    })
                    .collect::<Result<_>>()?,
            },
            FunctionConfig::Affine { a, b, c } => WeightSpec::Affine {
                a: *a,
                b: *b,
                c: *c,
            },
            FunctionConfig::Radial {
                center,
                at_center,
                slope,
            } => WeightSpec::Radial {
                center: *center,
                at_center: *at_center,
                slope: *slope,
            },
        })
    }
}

impl GridConfig {
    pub fn to_grid(&self, domain: &Region) -> Result<Grid> {
        let ctx = |e: Error| Error::Config(format!("grid: {e}"));
        match (self.nx, self.ny, self.h, self.origin, self.n) {
            (Some(nx), Some(ny), Some(h), Some(origin), None) => {
                Grid::new(nx, ny, h, origin).map_err(ctx)
            }
            (None, None, Some(h), None, None) => {
                let (lo, hi) = domain_bounds(domain)?;
                Grid::covering(lo, hi, h).map_err(ctx)
            }
            (None, None, None, None, Some(n)) => {
                let (lo, hi) = domain_bounds(domain)?;
                Grid::square_fit(lo, hi, n).map_err(ctx)
            }
            _ => Err(Error::Config(
                "grid: give either nx, ny, h and origin; or h alone; or n alone".into(),
            )),
        }
    }
}

fn domain_bounds(domain: &Region) -> Result<([f64; 2], [f64; 2])> {
    domain
        .bounds()
        .ok_or_else(|| Error::Config("domain has no union primitive".into()))
}

impl RunConfig {
    pub fn parse(text: &str) -> Result<RunConfig> {
        let cfg: RunConfig = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<RunConfig> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        RunConfig::parse(&text).map_err(|e| match e {
            Error::Config(msg) => Error::Config(format!("{}: {msg}", path.display())),
            other => other,
        })
    }

    fn validate(&self) -> Result<()> {
        if self.domain.is_empty() {
            return Err(Error::Config(
                "domain: at least one primitive is required".into(),
            ));
        }
        let s = &self.solver;
        if s.p_list.is_empty() {
            return Err(Error::Config("solver.p_list is empty".into()));
        }
        if s.p_list.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::Config(
                "solver.p_list must be strictly increasing".into(),
            ));
        }
        if s.tol.is_nan() || s.tol <= 0.0 || s.max_iter == 0 {
            return Err(Error::Config(
                "solver.tol and solver.max_iter must be positive".into(),
            ));
        }
        if self.pack.k == 0 {
            return Err(Error::Config("pack.k must be at least 1".into()));
        }
        Ok(())
    }

    pub fn solver_options(&self) -> SolverOptions {
        SolverOptions {
            tol: self.solver.tol,
            max_iter: self.solver.max_iter,
            ..SolverOptions::default()
        }
    }

    pub fn pack_options(&self) -> PackOptions {
        PackOptions {
            seed: self.seed,
            restarts: self.pack.restarts,
        }
    }

    pub fn check_options(&self) -> CheckOptions {
        let d = CheckOptions::default();
        let c = &self.check;
        CheckOptions {
            eps_rel: c.eps_rel.unwrap_or(d.eps_rel),
            kink_tol_frac: c.kink_tol_frac.unwrap_or(d.kink_tol_frac),
            ridge_halo_frac: c.ridge_halo_frac.unwrap_or(d.ridge_halo_frac),
            c_tol: c.c_tol.unwrap_or(d.c_tol),
        }
    }

    /// Rasterizes the domain and samples the weight and `C`.
    pub fn build(&self) -> Result<Problem> {
        let domain = Region::new(primitives(&self.domain, "domain")?);
        let grid = self.grid.to_grid(&domain)?;
        let mask = rasterize(&domain.0, &grid)?;
        let weight = build_weight(&self.weight.to_spec("weight")?, &mask)?;
        let potential = match &self.potential {
            Some(p) => Some(Potential::from_spec(&p.to_spec("potential")?, &mask)?),
            None => None,
        };
        let dist = edt(&mask);
        Ok(Problem {
            mask,
            weight,
            potential,
            dist,
        })
    }
}

/// Everything sampled on the lattice for one configuration.
#[derive(Clone, Debug)]
pub struct Problem {
    pub mask: DomainMask,
    pub weight: WeightField,
    pub potential: Option<Potential>,
    pub dist: DistanceField,
}

impl Problem {
    pub fn grid(&self) -> &Grid {
        self.mask.grid()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const DISK: &str = r#"
        grid = { h = 0.0625 }
        [[domain]]
        shape = "disk"
        center = [0.0, 0.0]
        radius = 1.0
        [weight]
        kind = "regions"
        background = -1.0
        [[weight.regions]]
        value = 1.0
        primitives = [{ shape = "disk", center = [0.0, 0.0], radius = 0.25 }]
    "#;

    #[test]
    fn defaults_fill_in() {
        let cfg = RunConfig::parse(DISK).unwrap();
        assert_eq!(cfg.solver.p_list, vec![4.0, 8.0, 16.0, 32.0]);
        assert_eq!(cfg.solver.tol, 1e-8);
        assert_eq!(cfg.solver.max_iter, 20_000);
        assert_eq!(cfg.pack.k, 2);
        assert_eq!(cfg.out, "out");
        assert_eq!(cfg.seed, 0);
        assert!(cfg.potential.is_none());
        let prob = cfg.build().unwrap();
        assert!(prob.weight.is_sign_changing());
        assert_eq!(prob.grid().point(0, 0), [-1.0625, -1.0625]);
    }

    #[test]
    fn unknown_keys_are_rejected() {
        let bad = DISK.replace("radius = 1.0", "radius = 1.0\ncolour = 3");
        assert!(matches!(RunConfig::parse(&bad), Err(Error::Config(_))));
        let bad = format!("{DISK}\n[solver]\nsteps = 3\n");
        assert!(RunConfig::parse(&bad).is_err());
        let bad = DISK.replace("background = -1.0", "background = -1.0\nslope = 2");
        assert!(RunConfig::parse(&bad).is_err());
    }

    #[test]
    fn shape_keys_are_checked() {
        let bad = DISK.replace("radius = 1.0", "radius = 1.0\nmin = [0.0, 0.0]");
        let err = RunConfig::parse(&bad).unwrap().build().unwrap_err();
        assert!(err.to_string().contains("domain[0]"), "{err}");
        let bad = DISK.replace("radius = 1.0", "");
        assert!(RunConfig::parse(&bad).unwrap().build().is_err());
    }

    #[test]
    fn grid_forms_are_exclusive() {
        let bad = DISK.replace("grid = { h = 0.0625 }", "grid = { h = 0.0625, n = 10 }");
        assert!(RunConfig::parse(&bad).unwrap().build().is_err());
        let fit = DISK.replace("grid = { h = 0.0625 }", "grid = { n = 96 }");
        let prob = RunConfig::parse(&fit).unwrap().build().unwrap();
        assert_eq!((prob.grid().nx, prob.grid().ny), (96, 96));
    }

    #[test]
    fn nonpositive_potential_is_rejected() {
        let cfg = format!("{DISK}\n[potential]\nkind = \"constant\"\nvalue = 0.0\n");
        let err = RunConfig::parse(&cfg).unwrap().build().unwrap_err();
        assert!(matches!(err, Error::NonPositiveCoefficient { .. }));
    }
}
