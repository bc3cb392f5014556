//! Overflow-safe hyperbolic helpers.
//!
//! The arguments that reach these functions (`pi * omega0 * ell / sqrt(a^2 ell^2 - 1)`
//! and friends) range from ~1e-6 to ~1e6 across the figure sweeps, so the
//! naive `cosh/sinh` quotients either overflow or lose every digit.

/// `1 / (e^x - 1)` for `x > 0`.
pub fn planck(x: f64) -> f64 {
    1.0 / x.exp_m1()
}

/// `coth(x) - 1 = 2 / (e^{2x} - 1)`, exact for large `x` where `coth(x)` rounds to one.
pub fn coth_minus_one(x: f64) -> f64 {
    2.0 * planck(2.0 * x)
}

/// `coth(x)` for `x > 0`.
pub fn coth(x: f64) -> f64 {
    1.0 + coth_minus_one(x)
}

/// `tanh(x)` for `x >= 0`, written as `1 - 2 / (e^{2x} + 1)` on the large side
/// and via `expm1` on the small side.
pub fn tanh(x: f64) -> f64 {
    if x < 0.5 {
        let m = (2.0 * x).exp_m1();
        m / (m + 2.0)
    } else {
        1.0 - 2.0 / ((2.0 * x).exp() + 1.0)
    }
}

/// `asinh(x) / x`, with the removable point at zero.
pub fn asinh_over(x: f64) -> f64 {
    if x.abs() < 1e-4 {
        let x2 = x * x;
        1.0 - x2 / 6.0 + 3.0 * x2 * x2 / 40.0
    } else {
        x.asinh() / x
    }
}

/// `sin(x) / x`, with the removable point at zero.
pub fn sinc(x: f64) -> f64 {
    if x.abs() < 1e-4 {
        let x2 = x * x;
        1.0 - x2 / 6.0 + x2 * x2 / 120.0
    } else {
        x.sin() / x
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn coth_extremes() {
        assert_eq!(coth(800.0), 1.0);
        assert!(coth_minus_one(800.0) >= 0.0);
        assert_relative_eq!(coth(1e-8), 1e8, max_relative = 1e-12);
        assert_relative_eq!(coth(1.3), 1.0 / 1.3f64.tanh(), max_relative = 1e-14);
        assert_relative_eq!(coth_minus_one(20.0), 2.0 * (-40.0f64).exp(), max_relative = 1e-12);
    }

    #[test]
    fn tanh_matches_std() {
        for &x in &[1e-12, 1e-5, 0.1, 0.49, 0.5, 2.0, 30.0, 800.0] {
            assert_relative_eq!(tanh(x), x.tanh(), max_relative = 1e-14);
        }
        assert_eq!(tanh(1e6), 1.0);
    }

    #[test]
    fn tanh_times_coth_is_one() {
        for &x in &[1e-7, 0.3, 3.0, 40.0] {
            assert_relative_eq!(tanh(x) * coth(x), 1.0, max_relative = 1e-13);
        }
    }

    #[test]
    fn removable_points() {
        assert_eq!(asinh_over(0.0), 1.0);
        assert_relative_eq!(asinh_over(1e-5), (1e-5f64).asinh() / 1e-5, max_relative = 1e-15);
        assert_relative_eq!(asinh_over(1.0), 0.881_373_587_019_543, max_relative = 1e-14);
        assert_eq!(sinc(0.0), 1.0);
        assert_relative_eq!(sinc(2.0), 2.0f64.sin() / 2.0, max_relative = 1e-15);
    }

    #[test]
    fn planck_small_argument() {
        assert_relative_eq!(planck(1e-10), 1e10, max_relative = 1e-9);
        assert_eq!(planck(1e4), 0.0);
    }
}
