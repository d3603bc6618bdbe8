//! Integrand expressions. An `Expr` composes piecewise closed forms with the
//! transformations the norms need (`log(1+|.|)`, products, powers, sums,
//! scalar multiples) while keeping two things the plain closure would lose:
//!
//! * overflow-safe evaluation through a log-domain route, so quantities like
//!   `log(1 + exp(c/x) * exp(-c/x))` come out exact instead of `0 * inf`;
//! * one-sided asymptotic models at segment anchors, which is what lets the
//!   quadrature engine certify convergence or divergence analytically.
//!
//! The model of an expression near a point `x0` (from one side, `u` the
//! distance) is the leading term `amp * exp(b/u) * u^a * ln(1/u)^k`. The
//! closed-form catalog is exactly representable in this family, and each
//! transformation maps it back into the family.

use crate::func::Func;
use crate::piecewise::SegmentForm;
use crate::real::{near, softplus, Real};

#[derive(Clone, Debug)]
pub enum Expr<T> {
    Leaf(Func<T>),
    Const(T),
    Scale(T, Box<Expr<T>>),
    Add(Box<Expr<T>>, Box<Expr<T>>),
    Mul(Box<Expr<T>>, Box<Expr<T>>),
    /// `|e|^p`
    AbsPow(Box<Expr<T>>, T),
    /// `log(1 + |e|)`
    LogOnePlusAbs(Box<Expr<T>>),
}

/// Which side a one-sided limit is taken from.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Side {
    /// `x -> x0+`, `u = x - x0`
    Above,
    /// `x -> x0-`, `u = x0 - x`
    Below,
}

/// Leading behavior `amp * exp(b/u) * u^a * ln(1/u)^k` as `u -> 0+`.
/// `amp == 0` encodes "identically zero near the point".
#[derive(Clone, Copy, Debug)]
pub struct LocalModel<T> {
    pub amp: T,
    pub exp_coeff: T,
    pub pow: T,
    pub logp: T,
}

impl<T: Real> LocalModel<T> {
    fn value(amp: T) -> Self {
        LocalModel {
            amp,
            exp_coeff: T::zero(),
            pow: T::zero(),
            logp: T::zero(),
        }
    }

    fn zero() -> Self {
        Self::value(T::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.amp == T::zero()
    }

    /// True when the model stays bounded as `u -> 0+`.
    pub fn is_bounded(&self) -> bool {
        if self.is_zero() {
            return true;
        }
        if self.exp_coeff > T::zero() {
            return false;
        }
        if self.exp_coeff < T::zero() {
            return true;
        }
        if self.pow > T::zero() {
            return true;
        }
        self.pow == T::zero() && self.logp <= T::zero()
    }

    /// True when `∫_0 model du` converges; callers only rely on this for
    /// effectively nonnegative integrands.
    pub fn is_integrable(&self) -> bool {
        if self.is_zero() {
            return true;
        }
        if self.exp_coeff > T::zero() {
            return false;
        }
        if self.exp_coeff < T::zero() {
            return true;
        }
        self.pow > T::of(-1.0) + T::of(1e-12)
    }

    fn mul(&self, o: &LocalModel<T>) -> LocalModel<T> {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        LocalModel {
            amp: self.amp * o.amp,
            exp_coeff: self.exp_coeff + o.exp_coeff,
            pow: self.pow + o.pow,
            logp: self.logp + o.logp,
        }
    }

    fn abs_pow(&self, p: T) -> Option<LocalModel<T>> {
        if self.is_zero() {
            if p > T::zero() {
                return Some(Self::zero());
            }
            return None;
        }
        Some(LocalModel {
            amp: self.amp.abs().powf(p),
            exp_coeff: self.exp_coeff * p,
            pow: self.pow * p,
            logp: self.logp * p,
        })
    }

    fn log1p_abs(&self) -> LocalModel<T> {
        if self.is_zero() {
            return Self::zero();
        }
        let b = self.exp_coeff;
        if b > T::zero() {
            // log(1 + e^{b/u} ...) ~ b/u
            return LocalModel {
                amp: b,
                exp_coeff: T::zero(),
                pow: -T::one(),
                logp: T::zero(),
            };
        }
        if b < T::zero() {
            // |e| -> 0 exponentially fast; log(1+|e|) ~ |e|
            return LocalModel {
                amp: self.amp.abs(),
                exp_coeff: b,
                pow: self.pow,
                logp: self.logp,
            };
        }
        let a = self.pow;
        if a < T::zero() {
            // log(1 + C u^a ln^k) ~ |a| ln(1/u)
            return LocalModel {
                amp: a.abs(),
                exp_coeff: T::zero(),
                pow: T::zero(),
                logp: T::one(),
            };
        }
        if a > T::zero() {
            return LocalModel {
                amp: self.amp.abs(),
                exp_coeff: T::zero(),
                pow: a,
                logp: self.logp,
            };
        }
        if self.logp > T::zero() {
            // Grows like ln ln; bound by a single log factor (integrable
            // either way, and only used for classification).
            return LocalModel {
                amp: self.logp.max(T::one()),
                exp_coeff: T::zero(),
                pow: T::zero(),
                logp: T::one(),
            };
        }
        Self::value(self.amp.abs().ln_1p())
    }

    /// Dominance order for sums; `None` when leading terms cancel.
    fn add(&self, o: &LocalModel<T>) -> Option<LocalModel<T>> {
        if self.is_zero() {
            return Some(*o);
        }
        if o.is_zero() {
            return Some(*self);
        }
        let same_shape = near(self.exp_coeff, o.exp_coeff)
            && near(self.pow, o.pow)
            && near(self.logp, o.logp);
        if same_shape {
            let amp = self.amp + o.amp;
            if amp.abs() <= T::of(1e-12) * (self.amp.abs() + o.amp.abs()) {
                return None; // leading-order cancellation: no certificate
            }
            return Some(LocalModel { amp, ..*self });
        }
        let a_dom = dominates(self, o);
        Some(if a_dom { *self } else { *o })
    }
}

/// Does `a` dominate `b` as `u -> 0+`?
fn dominates<T: Real>(a: &LocalModel<T>, b: &LocalModel<T>) -> bool {
    if !near(a.exp_coeff, b.exp_coeff) {
        return a.exp_coeff > b.exp_coeff;
    }
    if !near(a.pow, b.pow) {
        return a.pow < b.pow;
    }
    a.logp >= b.logp
}

impl<T: Real> Expr<T> {
    pub fn func(f: Func<T>) -> Self {
        Expr::Leaf(f)
    }

    pub fn constant(c: T) -> Self {
        Expr::Const(c)
    }

    pub fn scale(c: T, e: Expr<T>) -> Self {
        Expr::Scale(c, Box::new(e))
    }

    pub fn add(a: Expr<T>, b: Expr<T>) -> Self {
        Expr::Add(Box::new(a), Box::new(b))
    }

    pub fn mul(a: Expr<T>, b: Expr<T>) -> Self {
        Expr::Mul(Box::new(a), Box::new(b))
    }

    pub fn abs_pow(e: Expr<T>, p: T) -> Self {
        Expr::AbsPow(Box::new(e), p)
    }

    pub fn log1p_abs(e: Expr<T>) -> Self {
        Expr::LogOnePlusAbs(Box::new(e))
    }

    pub fn eval(&self, x: T) -> T {
        match self {
            Expr::Leaf(f) => f.eval(x).unwrap_or(T::nan()),
            Expr::Const(c) => *c,
            Expr::Scale(c, e) => *c * e.eval(x),
            Expr::Add(a, b) => a.eval(x) + b.eval(x),
            Expr::Mul(a, b) => {
                // Exponential factors can pair a hard overflow with a hard
                // underflow whose product is moderate; route through logs.
                let va = a.eval(x);
                let vb = b.eval(x);
                let direct = va * vb;
                if direct.is_finite() || va.is_nan() || vb.is_nan() {
                    direct
                } else if va == T::zero() || vb == T::zero() {
                    let l = a.ln_abs(x) + b.ln_abs(x);
                    if l == T::neg_infinity() {
                        T::zero()
                    } else {
                        l.exp() * sign_of(va) * sign_of(vb)
                    }
                } else {
                    direct
                }
            }
            Expr::AbsPow(e, p) => {
                let l = e.ln_abs(x) * *p;
                l.exp()
            }
            Expr::LogOnePlusAbs(e) => softplus(e.ln_abs(x)),
        }
    }

    /// `ln |e(x)|`; exponential leaves contribute exactly without overflow.
    pub fn ln_abs(&self, x: T) -> T {
        match self {
            Expr::Leaf(f) => f.ln_abs(x).unwrap_or(T::nan()),
            Expr::Const(c) => c.abs().ln(),
            Expr::Scale(c, e) => c.abs().ln() + e.ln_abs(x),
            Expr::Mul(a, b) => a.ln_abs(x) + b.ln_abs(x),
            Expr::AbsPow(e, p) => *p * e.ln_abs(x),
            Expr::Add(..) | Expr::LogOnePlusAbs(..) => self.eval(x).abs().ln(),
        }
    }

    /// Value on atom `i` for atomic-space integrands.
    pub fn eval_atom(&self, i: usize) -> Result<T, crate::error::Error> {
        Ok(match self {
            Expr::Leaf(f) => f.eval_atom(i)?,
            Expr::Const(c) => *c,
            Expr::Scale(c, e) => *c * e.eval_atom(i)?,
            Expr::Add(a, b) => a.eval_atom(i)? + b.eval_atom(i)?,
            Expr::Mul(a, b) => a.eval_atom(i)? * b.eval_atom(i)?,
            Expr::AbsPow(e, p) => e.eval_atom(i)?.abs().powf(*p),
            Expr::LogOnePlusAbs(e) => e.eval_atom(i)?.abs().ln_1p(),
        })
    }

    pub fn collect_breakpoints(&self, out: &mut Vec<T>) {
        match self {
            Expr::Leaf(f) => f.collect_breakpoints(out),
            Expr::Const(_) => {}
            Expr::Scale(_, e) | Expr::AbsPow(e, _) | Expr::LogOnePlusAbs(e) => {
                e.collect_breakpoints(out)
            }
            Expr::Add(a, b) | Expr::Mul(a, b) => {
                a.collect_breakpoints(out);
                b.collect_breakpoints(out);
            }
        }
    }

    /// One-sided asymptotic model at `x0`, or `None` when the catalog cannot
    /// certify one (grids near their edges, transported functions,
    /// cancelling sums).
    pub fn local_model(&self, x0: T, side: Side) -> Option<LocalModel<T>> {
        match self {
            Expr::Const(c) => Some(LocalModel::value(*c)),
            Expr::Scale(c, e) => {
                if *c == T::zero() {
                    return Some(LocalModel::zero());
                }
                let m = e.local_model(x0, side)?;
                Some(LocalModel { amp: m.amp * *c, ..m })
            }
            Expr::Add(a, b) => {
                let ma = a.local_model(x0, side)?;
                let mb = b.local_model(x0, side)?;
                ma.add(&mb)
            }
            Expr::Mul(a, b) => {
                let ma = a.local_model(x0, side)?;
                let mb = b.local_model(x0, side)?;
                Some(ma.mul(&mb))
            }
            Expr::AbsPow(e, p) => e.local_model(x0, side)?.abs_pow(*p),
            Expr::LogOnePlusAbs(e) => Some(e.local_model(x0, side)?.log1p_abs()),
            Expr::Leaf(f) => func_model(f, x0, side),
        }
    }
}

fn sign_of<T: Real>(v: T) -> T {
    if v < T::zero() {
        -T::one()
    } else {
        T::one()
    }
}

fn func_model<T: Real>(f: &Func<T>, x0: T, side: Side) -> Option<LocalModel<T>> {
    match f {
        Func::Piecewise(pw) => {
            let domain = pw.domain();
            if x0 < domain.lo || x0 > domain.hi {
                return None;
            }
            // Pick the segment on the approach side.
            let idx = match side {
                Side::Above => {
                    if x0 >= domain.hi {
                        return None;
                    }
                    pw.segment_index(x0).ok()?
                }
                Side::Below => {
                    if x0 <= domain.lo {
                        return None;
                    }
                    let segs = pw.segments();
                    let mut i = segs.partition_point(|s| s.lo < x0);
                    i = i.saturating_sub(1);
                    i
                }
            };
            let seg = &pw.segments()[idx];
            form_model(&seg.form, seg.anchor, x0, side)
        }
        Func::Grid(g) => {
            let xs = g.xs();
            let n = xs.len();
            // Interior of the sampled range: plain value. Edges: unknown,
            // grids often sample functions that are singular just outside.
            if n >= 4 && x0 >= xs[1] && x0 <= xs[n - 2] {
                Some(LocalModel::value(g.eval(x0)))
            } else {
                None
            }
        }
        Func::Atoms(_) => None,
        Func::Transported { .. } => None,
    }
}

fn form_model<T: Real>(
    form: &SegmentForm<T>,
    anchor: T,
    x0: T,
    side: Side,
) -> Option<LocalModel<T>> {
    let u0 = x0 - anchor;
    match form {
        SegmentForm::Const(c) => Some(LocalModel::value(*c)),
        SegmentForm::Affine { slope, intercept } => {
            let v = *slope * x0 + *intercept;
            if v != T::zero() {
                return Some(LocalModel::value(v));
            }
            let amp = match side {
                Side::Above => *slope,
                Side::Below => -*slope,
            };
            if amp == T::zero() {
                return Some(LocalModel::zero());
            }
            Some(LocalModel {
                amp,
                exp_coeff: T::zero(),
                pow: T::one(),
                logp: T::zero(),
            })
        }
        SegmentForm::Power { coeff, exponent } => {
            if *coeff == T::zero() {
                return Some(LocalModel::zero());
            }
            if u0 == T::zero() && side == Side::Above {
                Some(LocalModel {
                    amp: *coeff,
                    exp_coeff: T::zero(),
                    pow: *exponent,
                    logp: T::zero(),
                })
            } else if u0 > T::zero() {
                Some(LocalModel::value(*coeff * u0.powf(*exponent)))
            } else {
                None
            }
        }
        SegmentForm::ExpInv { coeff } => {
            if u0 == T::zero() && side == Side::Above {
                Some(LocalModel {
                    amp: T::one(),
                    exp_coeff: *coeff,
                    pow: T::zero(),
                    logp: T::zero(),
                })
            } else if u0 > T::zero() {
                let l = *coeff / u0;
                if l > T::of(700.0) {
                    // Interior overflow; treat as uncertified.
                    None
                } else {
                    Some(LocalModel::value(l.exp()))
                }
            } else {
                None
            }
        }
        SegmentForm::Recip(inner) => {
            let m = form_model(inner, anchor, x0, side)?;
            if m.is_zero() {
                return None;
            }
            Some(LocalModel {
                amp: T::one() / m.amp,
                exp_coeff: -m.exp_coeff,
                pow: -m.pow,
                logp: -m.logp,
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interval::Interval;
    use crate::piecewise::PiecewiseFn;

    fn iv(lo: f64, hi: f64) -> Interval<f64> {
        Interval::new(lo, hi).unwrap()
    }

    #[test]
    fn log_of_power_singularity_is_log_divergence() {
        let f = PiecewiseFn::single(
            iv(0.0, 1.0),
            SegmentForm::Power {
                coeff: 1.0,
                exponent: -0.5,
            },
        );
        let e = Expr::log1p_abs(Expr::func(Func::Piecewise(f)));
        let m = e.local_model(0.0, Side::Above).unwrap();
        assert!(m.is_integrable());
        assert!(!m.is_bounded());
        assert_eq!(m.pow, 0.0);
        assert_eq!(m.logp, 1.0);
    }

    #[test]
    fn log_of_expinv_is_harmonic_divergence() {
        let f = PiecewiseFn::single(iv(0.0, 1.0), SegmentForm::ExpInv { coeff: 1.0 });
        let e = Expr::log1p_abs(Expr::func(Func::Piecewise(f)));
        let m = e.local_model(0.0, Side::Above).unwrap();
        assert!(!m.is_integrable());
        assert!((m.pow + 1.0).abs() < 1e-15);
        assert!((m.amp - 1.0).abs() < 1e-15);
    }

    #[test]
    fn product_of_exact_inverses_is_log_two() {
        let h = PiecewiseFn::single(iv(0.0, 1.0), SegmentForm::ExpInv { coeff: -1.0 })
            .assert_positive()
            .unwrap();
        let hinv = h.invert().unwrap();
        let prod = Expr::mul(
            Expr::func(Func::Piecewise(h)),
            Expr::func(Func::Piecewise(hinv)),
        );
        let e = Expr::log1p_abs(prod);
        // Near zero both factors over/underflow; the log route keeps it exact.
        for &x in &[1e-6, 1e-3, 0.5, 1.0] {
            assert!((e.eval(x) - std::f64::consts::LN_2).abs() < 1e-14);
        }
    }

    #[test]
    fn pnorm_integrand_of_singular_power_diverges_when_it_should() {
        let f = PiecewiseFn::single(
            iv(0.0, 1.0),
            SegmentForm::Power {
                coeff: 1.0,
                exponent: -0.6,
            },
        );
        let e2 = Expr::abs_pow(Expr::func(Func::Piecewise(f.clone())), 2.0);
        let m = e2.local_model(0.0, Side::Above).unwrap();
        assert!(!m.is_integrable()); // u^{-1.2}
        let e1 = Expr::abs_pow(Expr::func(Func::Piecewise(f)), 1.0);
        assert!(e1.local_model(0.0, Side::Above).unwrap().is_integrable());
    }

    #[test]
    fn recip_affine_blows_up_at_right_edge() {
        let f = PiecewiseFn::single(
            iv(0.0, 1.0),
            SegmentForm::Affine {
                slope: -2.0,
                intercept: 2.0,
            },
        )
        .assert_positive()
        .unwrap();
        let inv = f.invert().unwrap();
        let e = Expr::func(Func::Piecewise(inv));
        let m = e.local_model(1.0, Side::Below).unwrap();
        assert!(!m.is_bounded());
        assert!((m.pow + 1.0).abs() < 1e-15);
        assert!(m.is_integrable() == false);
    }
}
