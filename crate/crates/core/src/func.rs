//! Unified function representation over a measure space: piecewise closed
//! forms and sampled grids on a continuum, value vectors on atoms, and
//! compositions with transport maps.

use std::sync::Arc;

use crate::error::Error;
use crate::grid::GridFn;
use crate::piecewise::PiecewiseFn;
use crate::real::Real;
use crate::transport::TransportMap;

#[derive(Clone, Debug)]
pub enum Func<T> {
    Piecewise(PiecewiseFn<T>),
    Grid(GridFn<T>),
    Atoms(Vec<T>),
    /// `f` composed with the inverse of `map`; the image of `f` under the
    /// isometry the map induces.
    Transported {
        f: Box<Func<T>>,
        map: Arc<TransportMap<T>>,
    },
}

impl<T: Real> Func<T> {
    pub fn constant_on(pw_domain: crate::interval::Interval<T>, c: T) -> Self {
        Func::Piecewise(PiecewiseFn::constant(pw_domain, c))
    }

    /// Pointwise evaluation on a continuum.
    pub fn eval(&self, x: T) -> Result<T, Error> {
        match self {
            Func::Piecewise(f) => f.eval(x),
            Func::Grid(g) => Ok(g.eval(x)),
            Func::Atoms(_) => Err(Error::Precondition(
                "atom-valued function evaluated at a continuum point".into(),
            )),
            Func::Transported { f, map } => f.eval(map.inverse(x)?),
        }
    }

    /// `ln |f(x)|` with the overflow-safe route where available.
    pub fn ln_abs(&self, x: T) -> Result<T, Error> {
        match self {
            Func::Piecewise(f) => f.ln_abs(x),
            _ => Ok(self.eval(x)?.abs().ln()),
        }
    }

    /// Value on atom `i` of an atomic space.
    pub fn eval_atom(&self, i: usize) -> Result<T, Error> {
        match self {
            Func::Atoms(v) => v.get(i).copied().ok_or_else(|| {
                Error::Precondition(format!("atom index {i} out of range ({})", v.len()))
            }),
            Func::Transported { f, map } => f.eval_atom(map.permutation_preimage(i)?),
            _ => Err(Error::Precondition(
                "continuum function indexed by an atom".into(),
            )),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Func::Piecewise(f) => f.is_zero(),
            Func::Grid(g) => g.ys().iter().all(|v| *v == T::zero()),
            Func::Atoms(v) => v.iter().all(|v| *v == T::zero()),
            Func::Transported { f, .. } => f.is_zero(),
        }
    }

    /// Points that must become quadrature subdivision boundaries.
    pub fn collect_breakpoints(&self, out: &mut Vec<T>) {
        match self {
            Func::Piecewise(f) => out.extend(f.breakpoints()),
            Func::Grid(g) => {
                // Sparse subset: grids are smooth between nodes by construction.
                let xs = g.xs();
                out.push(xs[0]);
                out.push(xs[xs.len() - 1]);
                let stride = (xs.len() / 16).max(1);
                for i in (0..xs.len()).step_by(stride) {
                    out.push(xs[i]);
                }
            }
            Func::Atoms(_) => {}
            Func::Transported { f, map } => {
                let mut inner = Vec::new();
                f.collect_breakpoints(&mut inner);
                for b in inner {
                    if let Ok(y) = map.forward(b) {
                        out.push(y);
                    }
                }
            }
        }
    }

    /// Pointwise reciprocal where the representation supports it.
    pub fn invert(&self) -> Result<Func<T>, Error> {
        match self {
            Func::Piecewise(f) => Ok(Func::Piecewise(f.invert()?)),
            Func::Atoms(v) => {
                if v.iter().any(|w| *w <= T::zero()) {
                    return Err(Error::Positivity(
                        "atom values must be positive to invert".into(),
                    ));
                }
                Ok(Func::Atoms(v.iter().map(|w| T::one() / *w).collect()))
            }
            Func::Grid(g) => {
                if g.min_value() <= T::zero() {
                    return Err(Error::Positivity(
                        "grid values must be positive to invert".into(),
                    ));
                }
                Ok(Func::Grid(GridFn::new(
                    g.xs().to_vec(),
                    g.ys().iter().map(|y| T::one() / *y).collect(),
                )?))
            }
            Func::Transported { .. } => Err(Error::Precondition(
                "cannot invert a transported function".into(),
            )),
        }
    }
}

impl<T> From<PiecewiseFn<T>> for Func<T> {
    fn from(f: PiecewiseFn<T>) -> Self {
        Func::Piecewise(f)
    }
}

impl<T> From<GridFn<T>> for Func<T> {
    fn from(g: GridFn<T>) -> Self {
        Func::Grid(g)
    }
}
