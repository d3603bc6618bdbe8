//! Monotone cubic (Fritsch–Carlson) interpolation over a sampled grid.
//! Grid-backed functions represent pushforward densities and density
//! quotients that leave the closed-form catalog.

use crate::error::Error;
use crate::real::Real;

#[derive(Clone, Debug, PartialEq)]
pub struct GridFn<T> {
    xs: Vec<T>,
    ys: Vec<T>,
    slopes: Vec<T>,
}

impl<T: Real> GridFn<T> {
    pub fn new(xs: Vec<T>, ys: Vec<T>) -> Result<Self, Error> {
        if xs.len() != ys.len() || xs.len() < 2 {
            return Err(Error::Construction(format!(
                "grid needs >= 2 aligned samples, got {} xs and {} ys",
                xs.len(),
                ys.len()
            )));
        }
        for w in xs.windows(2) {
            if !(w[0] < w[1]) {
                return Err(Error::Construction(
                    "grid abscissae must be strictly increasing".into(),
                ));
            }
        }
        if ys.iter().any(|v| !v.is_finite()) {
            return Err(Error::Construction("grid values must be finite".into()));
        }
        let slopes = fritsch_carlson(&xs, &ys);
        Ok(GridFn { xs, ys, slopes })
    }

    #[inline]
    pub fn xs(&self) -> &[T] {
        &self.xs
    }

    #[inline]
    pub fn ys(&self) -> &[T] {
        &self.ys
    }

    pub fn len(&self) -> usize {
        self.xs.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Hermite evaluation; clamps outside the sampled range.
    pub fn eval(&self, x: T) -> T {
        let n = self.xs.len();
        if x <= self.xs[0] {
            return self.ys[0];
        }
        if x >= self.xs[n - 1] {
            return self.ys[n - 1];
        }
        let mut i = self.xs.partition_point(|&p| p <= x);
        i = i.saturating_sub(1).min(n - 2);
        let h = self.xs[i + 1] - self.xs[i];
        let t = (x - self.xs[i]) / h;
        let t2 = t * t;
        let t3 = t2 * t;
        let two = T::of(2.0);
        let three = T::of(3.0);
        let h00 = two * t3 - three * t2 + T::one();
        let h10 = t3 - two * t2 + t;
        let h01 = -two * t3 + three * t2;
        let h11 = t3 - t2;
        h00 * self.ys[i] + h10 * h * self.slopes[i] + h01 * self.ys[i + 1] + h11 * h * self.slopes[i + 1]
    }

    pub fn min_value(&self) -> T {
        self.ys.iter().cloned().fold(self.ys[0], |a, b| a.min(b))
    }

    pub fn max_value(&self) -> T {
        self.ys.iter().cloned().fold(self.ys[0], |a, b| a.max(b))
    }

    /// Median of sampled values; scale reference for boundedness heuristics.
    pub fn median_value(&self) -> T {
        let mut v: Vec<f64> = self.ys.iter().map(|y| y.lossy_f64()).collect();
        v.sort_by(f64::total_cmp);
        T::of(v[v.len() / 2])
    }
}

fn fritsch_carlson<T: Real>(xs: &[T], ys: &[T]) -> Vec<T> {
    let n = xs.len();
    let mut h = Vec::with_capacity(n - 1);
    let mut delta = Vec::with_capacity(n - 1);
    for i in 0..n - 1 {
        let hi = xs[i + 1] - xs[i];
        h.push(hi);
        delta.push((ys[i + 1] - ys[i]) / hi);
    }
    let mut d = vec![T::zero(); n];
    if n == 2 {
        d[0] = delta[0];
        d[1] = delta[0];
        return d;
    }
    d[0] = one_sided(h[0], h[1], delta[0], delta[1]);
    d[n - 1] = one_sided(h[n - 2], h[n - 3], delta[n - 2], delta[n - 3]);
    for i in 1..n - 1 {
        let (dl, dr) = (delta[i - 1], delta[i]);
        if dl * dr <= T::zero() {
            d[i] = T::zero();
        } else {
            let w1 = T::of(2.0) * h[i] + h[i - 1];
            let w2 = h[i] + T::of(2.0) * h[i - 1];
            d[i] = (w1 + w2) / (w1 / dl + w2 / dr);
        }
    }
    d
}

fn one_sided<T: Real>(h0: T, h1: T, d0: T, d1: T) -> T {
    let mut d = ((T::of(2.0) * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
    if d * d0 <= T::zero() {
        d = T::zero();
    } else if d0 * d1 <= T::zero() && d.abs() > T::of(3.0) * d0.abs() {
        d = T::of(3.0) * d0;
    }
    d
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interpolates_linear_data_exactly() {
        let xs: Vec<f64> = (0..=20).map(|i| i as f64 / 20.0).collect();
        let ys: Vec<f64> = xs.iter().map(|x| 3.0 * x + 1.0).collect();
        let g = GridFn::new(xs, ys).unwrap();
        for k in 0..100 {
            let x = k as f64 / 99.0;
            assert!((g.eval(x) - (3.0 * x + 1.0)).abs() < 1e-13);
        }
    }

    #[test]
    fn preserves_monotonicity() {
        let xs: Vec<f64> = (0..=40).map(|i| i as f64 / 40.0).collect();
        let ys: Vec<f64> = xs.iter().map(|x| x * x).collect();
        let g = GridFn::new(xs, ys).unwrap();
        let mut prev = g.eval(0.0);
        for k in 1..400 {
            let v = g.eval(k as f64 / 399.0);
            assert!(v + 1e-12 >= prev);
            prev = v;
        }
    }

    #[test]
    fn rejects_bad_grids() {
        assert!(GridFn::new(vec![0.0, 0.0], vec![1.0, 1.0]).is_err());
        assert!(GridFn::new(vec![0.0], vec![1.0]).is_err());
    }
}
