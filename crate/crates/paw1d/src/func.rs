//! Periodic function evaluators shared by the generation, assembly and
//! quadrature layers.

/// A real-valued 1-periodic function exposing its value and first derivative,
/// together with the points where its smoothness may break.
///
/// Implementations reduce the argument modulo 1, so callers may pass any
/// real `x`. At a breakpoint the value is the (continuous) limit and the
/// derivative is the average of the one-sided limits; quadrature never
/// evaluates at breakpoints since Gauss nodes are interior.
pub trait FunctionEvaluator: Send + Sync {
    fn value(&self, x: f64) -> f64;
    fn derivative(&self, x: f64) -> f64;
    /// Locations in `[0, 1)` where the function is not analytic.
    fn breakpoints(&self) -> Vec<f64>;
}

/// Reduce `x` into `[0, 1)`.
pub fn frac(x: f64) -> f64 {
    let r = x - x.floor();
    if r >= 1.0 {
        0.0
    } else {
        r
    }
}

/// Reduce `x` into `[-1/2, 1/2)`, the local coordinate around a site.
pub fn centered(x: f64) -> f64 {
    let r = frac(x);
    if r >= 0.5 {
        r - 1.0
    } else {
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn frac_reduces_into_unit_interval() {
        assert_eq!(frac(1.25), 0.25);
        assert_eq!(frac(-0.25), 0.75);
        assert_eq!(frac(3.0), 0.0);
        // guard against the r == 1.0 rounding case
        assert_eq!(frac(-1e-17), 0.0);
    }

    #[test]
    fn centered_reduces_symmetrically() {
        assert!((centered(0.9) + 0.1).abs() < 1e-15);
        assert!((centered(-0.3) + 0.3).abs() < 1e-15);
        assert_eq!(centered(0.25), 0.25);
    }
}
