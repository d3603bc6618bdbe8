//! Numeric thresholds shared across the crate. Quadrature certifies more
//! than the comparison tolerances ask for, so verdict checks stay stable.

/// Absolute quadrature target per integral.
pub const ABS_TOL: f64 = 1e-10;

/// Relative quadrature target per integral.
pub const REL_TOL: f64 = 1e-9;

/// Tolerance for "= 1" and "=" verdicts between real quantities.
pub const EQ_TOL: f64 = 1e-8;

/// Elementwise tolerance for matching atomic weight multisets.
pub const ATOM_TOL: f64 = 1e-10;

/// Interval width at which CDF-inversion bisection stops.
pub const INV_TOL: f64 = 1e-12;

/// Pointwise tolerance for the density-inversion involution.
pub const INVOLUTION_TOL: f64 = 1e-12;
