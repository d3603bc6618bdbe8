//! Piecewise closed-form functions on an interval: the representation used
//! for densities, density ratios, and test functions.
//!
//! Segments follow the half-open convention `[lo, hi)`, with the final
//! segment closed at the domain's right endpoint. `Power` and `ExpInv` forms
//! are anchored: they read `u = x - anchor`, where the anchor is the left
//! endpoint the segment was originally constructed with. Anchors make the
//! forms stable under restriction to a subinterval.

use crate::error::Error;
use crate::interval::Interval;
use crate::real::Real;

/// Closed-form expression attached to one segment.
#[derive(Clone, Debug, PartialEq)]
pub enum SegmentForm<T> {
    /// Constant `c`.
    Const(T),
    /// `slope * x + intercept` in global coordinates.
    Affine { slope: T, intercept: T },
    /// `coeff * (x - anchor)^exponent`; singular at the anchor when the
    /// exponent is negative.
    Power { coeff: T, exponent: T },
    /// `exp(coeff / (x - anchor))`; singular at the anchor when `coeff > 0`.
    ExpInv { coeff: T },
    /// Pointwise reciprocal of the inner form, produced by density inversion.
    Recip(Box<SegmentForm<T>>),
}

/// Extended value used for per-segment range bounds.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Extended<T> {
    NegInf,
    Finite(T),
    PosInf,
}

impl<T: Real> Extended<T> {
    fn recip_positive(self) -> Extended<T> {
        match self {
            Extended::PosInf => Extended::Finite(T::zero()),
            Extended::Finite(v) if v == T::zero() => Extended::PosInf,
            Extended::Finite(v) => Extended::Finite(T::one() / v),
            Extended::NegInf => Extended::Finite(T::zero()),
        }
    }
}

/// Sign of `form - 1` on a subinterval, used for region splitting.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Rel {
    Gt,
    Lt,
    Eq,
}

impl<T: Real> SegmentForm<T> {
    pub fn eval(&self, anchor: T, x: T) -> T {
        match self {
            SegmentForm::Const(c) => *c,
            SegmentForm::Affine { slope, intercept } => *slope * x + *intercept,
            SegmentForm::Power { coeff, exponent } => *coeff * (x - anchor).powf(*exponent),
            SegmentForm::ExpInv { coeff } => (*coeff / (x - anchor)).exp(),
            SegmentForm::Recip(inner) => T::one() / inner.eval(anchor, x),
        }
    }

    /// `ln |f(x)|`, organized so exponential forms never overflow.
    pub fn ln_abs(&self, anchor: T, x: T) -> T {
        match self {
            SegmentForm::Const(c) => c.abs().ln(),
            SegmentForm::Affine { .. } => self.eval(anchor, x).abs().ln(),
            SegmentForm::Power { coeff, exponent } => {
                coeff.abs().ln() + *exponent * (x - anchor).ln()
            }
            SegmentForm::ExpInv { coeff } => *coeff / (x - anchor),
            SegmentForm::Recip(inner) => -inner.ln_abs(anchor, x),
        }
    }

    pub fn recip(&self) -> SegmentForm<T> {
        match self {
            SegmentForm::Const(c) => SegmentForm::Const(T::one() / *c),
            SegmentForm::Power { coeff, exponent } => SegmentForm::Power {
                coeff: T::one() / *coeff,
                exponent: -*exponent,
            },
            SegmentForm::ExpInv { coeff } => SegmentForm::ExpInv { coeff: -*coeff },
            SegmentForm::Recip(inner) => (**inner).clone(),
            SegmentForm::Affine { .. } => SegmentForm::Recip(Box::new(self.clone())),
        }
    }

    /// Exact scaling by `s` when the form family allows it.
    pub fn scaled(&self, s: T) -> Option<SegmentForm<T>> {
        match self {
            SegmentForm::Const(c) => Some(SegmentForm::Const(*c * s)),
            SegmentForm::Affine { slope, intercept } => Some(SegmentForm::Affine {
                slope: *slope * s,
                intercept: *intercept * s,
            }),
            SegmentForm::Power { coeff, exponent } => Some(SegmentForm::Power {
                coeff: *coeff * s,
                exponent: *exponent,
            }),
            SegmentForm::ExpInv { .. } => {
                if s == T::one() {
                    Some(self.clone())
                } else {
                    None
                }
            }
            SegmentForm::Recip(inner) => inner
                .scaled(T::one() / s)
                .map(|f| SegmentForm::Recip(Box::new(f))),
        }
    }

    fn positive_interior(&self, anchor: T, lo: T, hi: T) -> bool {
        match self {
            SegmentForm::Const(c) => *c > T::zero(),
            SegmentForm::Affine { slope, intercept } => {
                let a = *slope * lo + *intercept;
                let b = *slope * hi + *intercept;
                a >= T::zero() && b >= T::zero() && (a > T::zero() || b > T::zero())
            }
            SegmentForm::Power { coeff, .. } => *coeff > T::zero(),
            SegmentForm::ExpInv { .. } => true,
            SegmentForm::Recip(inner) => inner.positive_interior(anchor, lo, hi),
        }
    }

    fn is_zero(&self) -> bool {
        match self {
            SegmentForm::Const(c) => *c == T::zero(),
            SegmentForm::Affine { slope, intercept } => {
                *slope == T::zero() && *intercept == T::zero()
            }
            SegmentForm::Power { coeff, .. } => *coeff == T::zero(),
            SegmentForm::ExpInv { .. } => false,
            SegmentForm::Recip(_) => false,
        }
    }

    /// Range of the form over the open interior of `(lo, hi)`, as
    /// `(infimum, supremum)` in the extended reals.
    pub fn bounds(&self, anchor: T, lo: T, hi: T) -> (Extended<T>, Extended<T>) {
        use Extended::*;
        let w_lo = lo - anchor;
        let w_hi = hi - anchor;
        match self {
            SegmentForm::Const(c) => (Finite(*c), Finite(*c)),
            SegmentForm::Affine { slope, intercept } => {
                let a = *slope * lo + *intercept;
                let b = *slope * hi + *intercept;
                (Finite(a.min(b)), Finite(a.max(b)))
            }
            SegmentForm::Power { coeff, exponent } => {
                let c = *coeff;
                let p = *exponent;
                if c == T::zero() || p == T::zero() {
                    let v = if p == T::zero() { c } else { T::zero() };
                    return (Finite(v), Finite(v));
                }
                // Monotone in u on (w_lo, w_hi); endpoint u = 0 is singular.
                let at = |u: T| -> Extended<T> {
                    if u == T::zero() {
                        if p > T::zero() {
                            Finite(T::zero())
                        } else if c > T::zero() {
                            PosInf
                        } else {
                            NegInf
                        }
                    } else {
                        Finite(c * u.powf(p))
                    }
                };
                let (a, b) = (at(w_lo), at(w_hi));
                order(a, b)
            }
            SegmentForm::ExpInv { coeff } => {
                let c = *coeff;
                if c == T::zero() {
                    return (Finite(T::one()), Finite(T::one()));
                }
                let at = |u: T| -> Extended<T> {
                    if u == T::zero() {
                        if c > T::zero() {
                            PosInf
                        } else {
                            Finite(T::zero())
                        }
                    } else {
                        Finite((c / u).exp())
                    }
                };
                let (a, b) = (at(w_lo), at(w_hi));
                order(a, b)
            }
            SegmentForm::Recip(inner) => {
                let (inf, sup) = inner.bounds(anchor, lo, hi);
                // Only called for positivity-certified inner forms.
                (sup.recip_positive(), inf.recip_positive())
            }
        }
    }

    /// Partition `(lo, hi)` by the sign of `form - 1`. Closed-form roots
    /// only; no numeric root finding.
    pub fn unit_split(
        &self,
        anchor: T,
        lo: T,
        hi: T,
        seg_index: usize,
    ) -> Result<Vec<(T, T, Rel)>, Error> {
        let whole = |r: Rel| vec![(lo, hi, r)];
        let one = T::one();
        match self {
            SegmentForm::Const(c) => Ok(whole(cmp_rel(*c, one))),
            SegmentForm::Affine { slope, intercept } => {
                if *slope == T::zero() {
                    return Ok(whole(cmp_rel(*intercept, one)));
                }
                let root = (one - *intercept) / *slope;
                if root <= lo || root >= hi {
                    let mid = (lo + hi) * T::of(0.5);
                    return Ok(whole(cmp_rel(*slope * mid + *intercept, one)));
                }
                let (left, right) = if *slope > T::zero() {
                    (Rel::Lt, Rel::Gt)
                } else {
                    (Rel::Gt, Rel::Lt)
                };
                Ok(vec![(lo, root, left), (root, hi, right)])
            }
            SegmentForm::Power { coeff, exponent } => {
                let c = *coeff;
                let p = *exponent;
                if p == T::zero() {
                    return Ok(whole(cmp_rel(c, one)));
                }
                if c <= T::zero() {
                    return Ok(whole(Rel::Lt));
                }
                let u_star = (one / c).powf(one / p);
                if !u_star.is_finite() {
                    return Err(Error::RootSolve {
                        segment: seg_index,
                        what: format!("level-one root not representable (coeff {c}, exp {p})"),
                    });
                }
                let root = anchor + u_star;
                if root <= lo || root >= hi {
                    let mid_u = ((lo + hi) * T::of(0.5)) - anchor;
                    return Ok(whole(cmp_rel(c * mid_u.powf(p), one)));
                }
                let (left, right) = if p > T::zero() {
                    (Rel::Lt, Rel::Gt)
                } else {
                    (Rel::Gt, Rel::Lt)
                };
                Ok(vec![(lo, root, left), (root, hi, right)])
            }
            SegmentForm::ExpInv { coeff } => {
                let c = *coeff;
                Ok(whole(if c > T::zero() {
                    Rel::Gt
                } else if c < T::zero() {
                    Rel::Lt
                } else {
                    Rel::Eq
                }))
            }
            SegmentForm::Recip(inner) => {
                let parts = inner.unit_split(anchor, lo, hi, seg_index)?;
                Ok(parts
                    .into_iter()
                    .map(|(a, b, r)| {
                        let flipped = match r {
                            Rel::Gt => Rel::Lt,
                            Rel::Lt => Rel::Gt,
                            Rel::Eq => Rel::Eq,
                        };
                        (a, b, flipped)
                    })
                    .collect())
            }
        }
    }
}

fn cmp_rel<T: Real>(v: T, one: T) -> Rel {
    if v > one {
        Rel::Gt
    } else if v < one {
        Rel::Lt
    } else {
        Rel::Eq
    }
}

fn order<T: Real>(a: Extended<T>, b: Extended<T>) -> (Extended<T>, Extended<T>) {
    use Extended::*;
    let key = |e: &Extended<T>| match e {
        NegInf => f64::NEG_INFINITY,
        Finite(v) => v.lossy_f64(),
        PosInf => f64::INFINITY,
    };
    if key(&a) <= key(&b) {
        (a, b)
    } else {
        (b, a)
    }
}

/// One segment: half-open `[lo, hi)` carrying its form and anchor.
#[derive(Clone, Debug, PartialEq)]
pub struct Segment<T> {
    pub lo: T,
    pub hi: T,
    pub anchor: T,
    pub form: SegmentForm<T>,
}

/// Boundedness verdict for the essential supremum classifier.
#[derive(Clone, Debug, PartialEq)]
pub enum SupClass<T> {
    Bounded { sup: T },
    Unbounded { segment: usize },
}

/// Piecewise closed-form function over an interval.
#[derive(Clone, Debug, PartialEq)]
pub struct PiecewiseFn<T> {
    domain: Interval<T>,
    segments: Vec<Segment<T>>,
    positive: bool,
}

impl<T: Real> PiecewiseFn<T> {
    /// Build from contiguous segments covering the domain exactly.
    pub fn new(domain: Interval<T>, pieces: Vec<(T, T, SegmentForm<T>)>) -> Result<Self, Error> {
        if pieces.is_empty() {
            return Err(Error::Construction("no segments".into()));
        }
        let mut segments = Vec::with_capacity(pieces.len());
        let mut cursor = domain.lo;
        for (i, (lo, hi, form)) in pieces.into_iter().enumerate() {
            if lo != cursor {
                return Err(Error::Construction(format!(
                    "segment {i} starts at {lo}, expected {cursor}"
                )));
            }
            if !(hi > lo) {
                return Err(Error::Construction(format!(
                    "segment {i} has nonpositive width [{lo}, {hi})"
                )));
            }
            segments.push(Segment {
                lo,
                hi,
                anchor: lo,
                form,
            });
            cursor = hi;
        }
        if cursor != domain.hi {
            return Err(Error::Construction(format!(
                "segments end at {cursor}, domain ends at {}",
                domain.hi
            )));
        }
        Ok(PiecewiseFn {
            domain,
            segments,
            positive: false,
        })
    }

    /// Single-segment function.
    pub fn single(domain: Interval<T>, form: SegmentForm<T>) -> Self {
        PiecewiseFn {
            segments: vec![Segment {
                lo: domain.lo,
                hi: domain.hi,
                anchor: domain.lo,
                form,
            }],
            domain,
            positive: false,
        }
    }

    pub fn constant(domain: Interval<T>, c: T) -> Self {
        let mut f = Self::single(domain, SegmentForm::Const(c));
        f.positive = c > T::zero();
        f
    }

    /// Analytically certify interior positivity, or fail.
    pub fn assert_positive(mut self) -> Result<Self, Error> {
        for (i, s) in self.segments.iter().enumerate() {
            if !s.form.positive_interior(s.anchor, s.lo, s.hi) {
                return Err(Error::Positivity(format!(
                    "segment {i} ([{}, {})) is not positive on its interior",
                    s.lo, s.hi
                )));
            }
        }
        self.positive = true;
        Ok(self)
    }

    #[inline]
    pub fn domain(&self) -> Interval<T> {
        self.domain
    }

    #[inline]
    pub fn segments(&self) -> &[Segment<T>] {
        &self.segments
    }

    #[inline]
    pub fn is_positive(&self) -> bool {
        self.positive
    }

    pub fn is_zero(&self) -> bool {
        self.segments.iter().all(|s| s.form.is_zero())
    }

    pub fn is_const_one(&self) -> bool {
        self.segments
            .iter()
            .all(|s| matches!(&s.form, SegmentForm::Const(c) if *c == T::one()))
    }

    /// Index of the segment owning `x`: breakpoints resolve to the segment
    /// starting there; the domain's right endpoint belongs to the last one.
    pub fn segment_index(&self, x: T) -> Result<usize, Error> {
        if !self.domain.contains(x) {
            return Err(Error::Domain {
                point: x.lossy_f64(),
                lo: self.domain.lo.lossy_f64(),
                hi: self.domain.hi.lossy_f64(),
            });
        }
        if x == self.domain.hi {
            return Ok(self.segments.len() - 1);
        }
        let mut idx = self.segments.partition_point(|s| s.lo <= x);
        idx = idx.saturating_sub(1);
        Ok(idx)
    }

    pub fn eval(&self, x: T) -> Result<T, Error> {
        let i = self.segment_index(x)?;
        let s = &self.segments[i];
        Ok(s.form.eval(s.anchor, x))
    }

    pub fn ln_abs(&self, x: T) -> Result<T, Error> {
        let i = self.segment_index(x)?;
        let s = &self.segments[i];
        Ok(s.form.ln_abs(s.anchor, x))
    }

    /// Interior breakpoints plus the two domain endpoints, ascending.
    pub fn breakpoints(&self) -> Vec<T> {
        let mut out = Vec::with_capacity(self.segments.len() + 1);
        out.push(self.domain.lo);
        for s in &self.segments {
            out.push(s.hi);
        }
        out
    }

    /// Pointwise reciprocal with exact per-form rewriting.
    pub fn invert(&self) -> Result<Self, Error> {
        if !self.positive {
            return Err(Error::Positivity(
                "density inversion requires a positivity certificate".into(),
            ));
        }
        let segments = self
            .segments
            .iter()
            .map(|s| Segment {
                lo: s.lo,
                hi: s.hi,
                anchor: s.anchor,
                form: s.form.recip(),
            })
            .collect();
        Ok(PiecewiseFn {
            domain: self.domain,
            segments,
            positive: true,
        })
    }

    /// Exact boundedness classification of a nonnegative function.
    pub fn sup_classify(&self) -> Result<SupClass<T>, Error> {
        if !self.positive {
            for (i, s) in self.segments.iter().enumerate() {
                let (inf, _) = s.form.bounds(s.anchor, s.lo, s.hi);
                match inf {
                    Extended::NegInf => {
                        return Err(Error::Classification(format!(
                            "segment {i} takes negative values; classifier needs a nonnegative function"
                        )))
                    }
                    Extended::Finite(v) if v < T::zero() => {
                        return Err(Error::Classification(format!(
                            "segment {i} takes negative values; classifier needs a nonnegative function"
                        )))
                    }
                    _ => {}
                }
            }
        }
        let mut sup = T::zero();
        for (i, s) in self.segments.iter().enumerate() {
            match s.form.bounds(s.anchor, s.lo, s.hi).1 {
                Extended::PosInf => return Ok(SupClass::Unbounded { segment: i }),
                Extended::Finite(v) => sup = sup.max(v),
                Extended::NegInf => {}
            }
        }
        Ok(SupClass::Bounded { sup })
    }

    /// Exact scaling; `None` when an `ExpInv` segment blocks it.
    pub fn scale(&self, s: T) -> Option<Self> {
        if s == T::zero() {
            return Some(Self::constant(self.domain, T::zero()));
        }
        let mut segments = Vec::with_capacity(self.segments.len());
        for seg in &self.segments {
            let form = seg.form.scaled(s)?;
            segments.push(Segment {
                lo: seg.lo,
                hi: seg.hi,
                anchor: seg.anchor,
                form,
            });
        }
        let mut out = PiecewiseFn {
            domain: self.domain,
            segments,
            positive: false,
        };
        if self.positive && s > T::zero() {
            out.positive = true;
        }
        Some(out)
    }

    /// Restriction to `[a, b]`, keeping anchors so forms keep their meaning.
    pub fn restrict(&self, a: T, b: T) -> Result<Self, Error> {
        if !(self.domain.lo <= a && a < b && b <= self.domain.hi) {
            return Err(Error::Construction(format!(
                "restriction [{a}, {b}] not inside [{}, {}]",
                self.domain.lo, self.domain.hi
            )));
        }
        let mut segments = Vec::new();
        for s in &self.segments {
            let lo = s.lo.max(a);
            let hi = s.hi.min(b);
            if lo < hi {
                segments.push(Segment {
                    lo,
                    hi,
                    anchor: s.anchor,
                    form: s.form.clone(),
                });
            }
        }
        Ok(PiecewiseFn {
            domain: Interval::new(a, b)?,
            segments,
            positive: self.positive,
        })
    }

    /// Partition of the domain by the sign of `f - 1`.
    pub fn unit_regions(&self) -> Result<Vec<(T, T, Rel)>, Error> {
        let mut out = Vec::new();
        for (i, s) in self.segments.iter().enumerate() {
            out.extend(s.form.unit_split(s.anchor, s.lo, s.hi, i)?);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(lo: f64, hi: f64) -> Interval<f64> {
        Interval::new(lo, hi).unwrap()
    }

    fn paper_h() -> PiecewiseFn<f64> {
        PiecewiseFn::new(
            iv(0.0, 1.0),
            vec![
                (
                    0.0,
                    0.04,
                    SegmentForm::Power {
                        coeff: 1.0,
                        exponent: -0.5,
                    },
                ),
                (
                    0.04,
                    1.0,
                    SegmentForm::Affine {
                        slope: -25.0 / 32.0,
                        intercept: 33.0 / 32.0,
                    },
                ),
            ],
        )
        .unwrap()
        .assert_positive()
        .unwrap()
    }

    #[test]
    fn eval_affine_matches_hand_value() {
        let f = PiecewiseFn::single(
            iv(0.0, 2.0),
            SegmentForm::Affine {
                slope: -25.0 / 32.0,
                intercept: 33.0 / 32.0,
            },
        );
        assert!((f.eval(1.0).unwrap() - 0.25).abs() < 1e-15);
    }

    #[test]
    fn eval_const_and_power() {
        let c = PiecewiseFn::constant(iv(0.0, 1.0), 1.0);
        assert_eq!(c.eval(0.3).unwrap(), 1.0);
        let p = PiecewiseFn::single(
            iv(0.0, 1.0),
            SegmentForm::Power {
                coeff: 1.0,
                exponent: -0.5,
            },
        );
        assert!((p.eval(0.01).unwrap() - 10.0).abs() < 1e-12);
    }

    #[test]
    fn eval_outside_domain_errors() {
        let c = PiecewiseFn::constant(iv(0.0, 1.0), 1.0);
        assert!(matches!(c.eval(1.5), Err(Error::Domain { .. })));
    }

    #[test]
    fn breakpoint_resolves_to_right_segment() {
        let f = PiecewiseFn::new(
            iv(0.0, 1.0),
            vec![
                (0.0, 0.5, SegmentForm::Const(1.0)),
                (0.5, 1.0, SegmentForm::Const(2.0)),
            ],
        )
        .unwrap();
        assert_eq!(f.eval(0.5).unwrap(), 2.0);
        assert_eq!(f.eval(1.0).unwrap(), 2.0);
    }

    #[test]
    fn invert_const_and_power() {
        let c = PiecewiseFn::constant(iv(0.0, 1.0), 2.0);
        assert_eq!(c.invert().unwrap().eval(0.3).unwrap(), 0.5);

        let p = PiecewiseFn::single(
            iv(0.0, 1.0),
            SegmentForm::Power {
                coeff: 1.0,
                exponent: -0.5,
            },
        )
        .assert_positive()
        .unwrap();
        let q = p.invert().unwrap();
        for &x in &[0.04, 0.1, 0.25, 0.5, 0.9] {
            assert!((q.eval(x).unwrap() - x.sqrt()).abs() < 1e-14);
        }
    }

    #[test]
    fn invert_is_involution_pointwise() {
        let h = paper_h();
        let back = h.invert().unwrap().invert().unwrap();
        for k in 1..=100 {
            let x = k as f64 / 101.0;
            let a = h.eval(x).unwrap();
            let b = back.eval(x).unwrap();
            assert!((a - b).abs() <= 1e-12 * (1.0 + a.abs()));
        }
    }

    #[test]
    fn sup_classify_examples() {
        let h = paper_h();
        assert_eq!(h.sup_classify().unwrap(), SupClass::Unbounded { segment: 0 });

        let c = PiecewiseFn::constant(iv(0.0, 1.0), 1.0);
        assert_eq!(c.sup_classify().unwrap(), SupClass::Bounded { sup: 1.0 });

        let a = PiecewiseFn::single(
            iv(0.0, 1.0),
            SegmentForm::Affine {
                slope: 1.5,
                intercept: 0.5,
            },
        )
        .assert_positive()
        .unwrap();
        assert_eq!(a.sup_classify().unwrap(), SupClass::Bounded { sup: 2.0 });
    }

    #[test]
    fn positivity_allows_vanishing_endpoint() {
        // 2x on [0,1] is positive on the interior even though it vanishes at 0.
        let f = PiecewiseFn::single(
            iv(0.0, 1.0),
            SegmentForm::Affine {
                slope: 2.0,
                intercept: 0.0,
            },
        )
        .assert_positive()
        .unwrap();
        assert!(f.is_positive());
        let neg = PiecewiseFn::constant(iv(0.0, 1.0), -1.0).assert_positive();
        assert!(neg.is_err());
    }

    #[test]
    fn unit_regions_affine_and_power() {
        let f = PiecewiseFn::single(
            iv(0.0, 1.0),
            SegmentForm::Affine {
                slope: 2.0,
                intercept: 0.0,
            },
        );
        let parts = f.unit_regions().unwrap();
        assert_eq!(parts.len(), 2);
        assert_eq!(parts[0].2, Rel::Lt);
        assert!((parts[0].1 - 0.5).abs() < 1e-15);
        assert_eq!(parts[1].2, Rel::Gt);

        let h = paper_h();
        let parts = h.unit_regions().unwrap();
        // x^{-1/2} = 1 at x = 1 is outside [0, 0.04): whole first segment > 1.
        assert_eq!(parts[0].2, Rel::Gt);
        // Affine part crosses 1 at x = 0.04 exactly: (1 - 33/32) / (-25/32) = 0.04.
        assert_eq!(parts.len(), 2);
        assert_eq!(parts[1].2, Rel::Lt);
    }

    #[test]
    fn restrict_keeps_anchor() {
        let h = paper_h();
        let r = h.restrict(0.01, 1.0).unwrap();
        assert!((r.eval(0.01).unwrap() - 10.0).abs() < 1e-12);
        assert!((r.eval(0.5).unwrap() - h.eval(0.5).unwrap()).abs() < 1e-15);
    }
}
