//! Desk-scale measure spaces: finite atomic spaces and interval continua
//! carrying a positive density.

use crate::error::Error;
use crate::expr::Expr;
use crate::func::Func;
use crate::grid::GridFn;
use crate::interval::Interval;
use crate::piecewise::PiecewiseFn;
use crate::quad::{integrate_expr, IntegralResult, QuadConfig};
use crate::real::Real;

/// Density of a continuum space. `Weighted` composes a base density with a
/// positive piecewise ratio, which is how scaled measures stay exact.
#[derive(Clone, Debug, PartialEq)]
pub enum Density<T> {
    Piecewise(PiecewiseFn<T>),
    Grid(GridFn<T>),
    Weighted {
        base: Box<Density<T>>,
        weight: PiecewiseFn<T>,
    },
}

impl<T: Real> Density<T> {
    pub fn to_expr(&self) -> Expr<T> {
        match self {
            Density::Piecewise(f) => Expr::func(Func::Piecewise(f.clone())),
            Density::Grid(g) => Expr::func(Func::Grid(g.clone())),
            Density::Weighted { base, weight } => Expr::mul(
                base.to_expr(),
                Expr::func(Func::Piecewise(weight.clone())),
            ),
        }
    }

    pub fn eval(&self, x: T) -> Result<T, Error> {
        match self {
            Density::Piecewise(f) => f.eval(x),
            Density::Grid(g) => Ok(g.eval(x)),
            Density::Weighted { base, weight } => Ok(base.eval(x)? * weight.eval(x)?),
        }
    }
}

#[derive(Clone, Debug)]
pub enum MeasureSpace<T> {
    Atomic {
        weights: Vec<T>,
        labels: Vec<String>,
    },
    Continuum {
        domain: Interval<T>,
        density: Density<T>,
        mass: T,
        mass_err: T,
    },
}

impl<T: Real> MeasureSpace<T> {
    pub fn atomic(weights: Vec<T>, labels: Option<Vec<String>>) -> Result<Self, Error> {
        if weights.is_empty() {
            return Err(Error::Construction("atomic space needs atoms".into()));
        }
        if weights.iter().any(|w| !(*w > T::zero()) || !w.is_finite()) {
            return Err(Error::Positivity("atom weights must be positive".into()));
        }
        let labels = match labels {
            Some(l) => {
                if l.len() != weights.len() {
                    return Err(Error::Construction(format!(
                        "{} labels for {} atoms",
                        l.len(),
                        weights.len()
                    )));
                }
                l
            }
            None => (0..weights.len()).map(|i| format!("a{i}")).collect(),
        };
        Ok(MeasureSpace::Atomic { weights, labels })
    }

    pub fn continuum(domain: Interval<T>, density: PiecewiseFn<T>) -> Result<Self, Error> {
        if !density.is_positive() {
            return Err(Error::Positivity(
                "continuum density needs a positivity certificate".into(),
            ));
        }
        Self::from_density(domain, Density::Piecewise(density))
    }

    pub fn continuum_grid(domain: Interval<T>, grid: GridFn<T>) -> Result<Self, Error> {
        if grid.min_value() < T::zero() {
            return Err(Error::Positivity("grid density must be nonnegative".into()));
        }
        Self::from_density(domain, Density::Grid(grid))
    }

    pub(crate) fn from_density(domain: Interval<T>, density: Density<T>) -> Result<Self, Error> {
        let cfg = QuadConfig::default();
        let (mass, mass_err) = match integrate_expr(&density.to_expr(), domain, &cfg)? {
            IntegralResult::Finite { value, err } => (value, err),
            IntegralResult::Divergent(w) => {
                return Err(Error::InfiniteMass(format!(
                    "density mass diverges: {w:?}"
                )))
            }
        };
        if !(mass > T::zero()) {
            return Err(Error::Construction(format!(
                "density mass must be positive, got {mass}"
            )));
        }
        Ok(MeasureSpace::Continuum {
            domain,
            density,
            mass,
            mass_err,
        })
    }

    /// Lebesgue measure on `[lo, hi]`.
    pub fn lebesgue(lo: T, hi: T) -> Result<Self, Error> {
        let domain = Interval::new(lo, hi)?;
        Self::continuum(domain, PiecewiseFn::constant(domain, T::one()))
    }

    pub fn mass(&self) -> T {
        match self {
            MeasureSpace::Atomic { weights, .. } => weights.iter().cloned().sum(),
            MeasureSpace::Continuum { mass, .. } => *mass,
        }
    }

    pub fn mass_err(&self) -> T {
        match self {
            MeasureSpace::Atomic { .. } => T::zero(),
            MeasureSpace::Continuum { mass_err, .. } => *mass_err,
        }
    }

    pub fn domain(&self) -> Option<Interval<T>> {
        match self {
            MeasureSpace::Atomic { .. } => None,
            MeasureSpace::Continuum { domain, .. } => Some(*domain),
        }
    }

    pub fn density(&self) -> Option<&Density<T>> {
        match self {
            MeasureSpace::Atomic { .. } => None,
            MeasureSpace::Continuum { density, .. } => Some(density),
        }
    }

    pub fn is_atomic(&self) -> bool {
        matches!(self, MeasureSpace::Atomic { .. })
    }

    pub fn atom_weights(&self) -> Option<&[T]> {
        match self {
            MeasureSpace::Atomic { weights, .. } => Some(weights),
            _ => None,
        }
    }

    /// The equivalent measure with density ratio `h` relative to this one.
    pub fn scaled_by(&self, h: &Func<T>) -> Result<MeasureSpace<T>, Error> {
        match (self, h) {
            (MeasureSpace::Atomic { weights, labels }, Func::Atoms(hv)) => {
                if hv.len() != weights.len() {
                    return Err(Error::Precondition(format!(
                        "ratio has {} values for {} atoms",
                        hv.len(),
                        weights.len()
                    )));
                }
                if hv.iter().any(|v| !(*v > T::zero())) {
                    return Err(Error::Positivity("density ratio must be positive".into()));
                }
                MeasureSpace::atomic(
                    weights.iter().zip(hv).map(|(w, h)| *w * *h).collect(),
                    Some(labels.clone()),
                )
            }
            (
                MeasureSpace::Continuum {
                    domain, density, ..
                },
                Func::Piecewise(hw),
            ) => {
                if !hw.is_positive() {
                    return Err(Error::Positivity(
                        "density ratio needs a positivity certificate".into(),
                    ));
                }
                if hw.domain() != *domain {
                    return Err(Error::Precondition(
                        "density ratio domain differs from the space domain".into(),
                    ));
                }
                let new_density = match density {
                    Density::Piecewise(w) if w.is_const_one() => Density::Piecewise(hw.clone()),
                    other => Density::Weighted {
                        base: Box::new(other.clone()),
                        weight: hw.clone(),
                    },
                };
                Self::from_density(*domain, new_density)
            }
            _ => Err(Error::Precondition(
                "space kind and ratio representation do not match".into(),
            )),
        }
    }
}
