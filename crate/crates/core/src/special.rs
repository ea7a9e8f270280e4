//! Gamma function wrappers and the normalized Bessel function
//! `j_a(u) = Gamma(a+1) sum_n (-1)^n (u/2)^{2n} / (n! Gamma(n+a+1))`.

use num_complex::Complex64;

use crate::error::{DunklError, Result};

/// Below this modulus the power series is used for real arguments.
pub const SERIES_LIMIT: f64 = 12.0;
/// Largest real argument accepted.
pub const REAL_LIMIT: f64 = 2.0e4;
/// Largest modulus for general complex arguments (series only).
pub const COMPLEX_LIMIT: f64 = 40.0;

pub fn gamma(x: f64) -> f64 {
    puruspe::gamma(x)
}

/// `ln Gamma(x)` for `x > 0`. `puruspe::ln_gamma` is only good to about
/// 1e-11, so small arguments go through `gamma` and large ones through Stirling.
pub fn ln_gamma(x: f64) -> f64 {
    if x <= 0.0 {
        return puruspe::ln_gamma(x);
    }
    if x < 20.0 {
        return gamma(x).ln();
    }
    let inv = 1.0 / x;
    let inv2 = inv * inv;
    let series = inv
        * (1.0 / 12.0
            - inv2
                * (1.0 / 360.0
                    - inv2 * (1.0 / 1260.0 - inv2 * (1.0 / 1680.0 - inv2 / 1188.0))));
    (x - 0.5) * x.ln() - x + 0.5 * (2.0 * std::f64::consts::PI).ln() + series
}

pub fn beta(a: f64, b: f64) -> f64 {
    (ln_gamma(a) + ln_gamma(b) - ln_gamma(a + b)).exp()
}

/// Normalized Bessel function for real `u`.
pub fn bessel_j_normalized_real(alpha: f64, u: f64) -> Result<f64> {
    if alpha < -0.5 {
        return Err(DunklError::InvalidArgument(format!(
            "normalized Bessel index {alpha} below -1/2"
        )));
    }
    let au = u.abs();
    if au > REAL_LIMIT || !u.is_finite() {
        return Err(DunklError::Range(format!("|u| = {au} exceeds {REAL_LIMIT}")));
    }
    if alpha == -0.5 {
        return Ok(u.cos());
    }
    if au <= SERIES_LIMIT {
        return Ok(series_real(alpha, -0.25 * u * u));
    }
    // j_a(u) = Gamma(a+1) (2/u)^a J_a(u), even in u.
    let j = bessel_j_order(alpha, au);
    let log_pref = ln_gamma(alpha + 1.0) + alpha * (2.0 / au).ln();
    Ok(log_pref.exp() * j)
}

/// `J_nu(x)` for real `nu >= -1/2`, `x > 0`.
fn bessel_j_order(nu: f64, x: f64) -> f64 {
    if nu >= 0.0 {
        puruspe::Jnu_Ynu(nu, x).0
    } else {
        // J_{-m} = cos(m pi) J_m - sin(m pi) Y_m
        let m = -nu;
        let (j, y) = puruspe::Jnu_Ynu(m, x);
        (m * std::f64::consts::PI).cos() * j - (m * std::f64::consts::PI).sin() * y
    }
}

/// `sum_n z^n Gamma(a+1) / (n! Gamma(n+a+1))`, terms via the ratio `z / (n (n+a))`.
fn series_real(alpha: f64, z: f64) -> f64 {
    let mut term = 1.0;
    let mut sum = 1.0;
    for n in 1..2000 {
        let nf = n as f64;
        term *= z / (nf * (nf + alpha));
        sum += term;
        if term.abs() <= 1e-17 * sum.abs() && nf > z.abs().sqrt() {
            break;
        }
    }
    sum
}

fn series_complex(alpha: f64, z: Complex64) -> Complex64 {
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    for n in 1..4000 {
        let nf = n as f64;
        term *= z / (nf * (nf + alpha));
        sum += term;
        if term.norm() <= 1e-17 * sum.norm() && nf > z.norm().sqrt() {
            break;
        }
    }
    sum
}

/// Normalized Bessel function `j_alpha(u)` for complex `u`.
///
/// Real `u` goes through the series or the order-`alpha` Bessel routine.
/// Purely imaginary `u = i v` has a series of positive terms and is summed
/// directly. Other complex arguments are summed for `|u| <= 40`.
pub fn bessel_j_normalized(alpha: f64, u: Complex64) -> Result<Complex64> {
    if alpha < -0.5 {
        return Err(DunklError::InvalidArgument(format!(
            "normalized Bessel index {alpha} below -1/2"
        )));
    }
    if u.im == 0.0 {
        return bessel_j_normalized_real(alpha, u.re).map(|v| Complex64::new(v, 0.0));
    }
    if u.re == 0.0 {
        let v = u.im;
        if v.abs() > 1400.0 {
            return Err(DunklError::Range(format!("|u| = {} overflows", v.abs())));
        }
        return Ok(Complex64::new(series_real(alpha, 0.25 * v * v), 0.0));
    }
    if u.norm() > COMPLEX_LIMIT {
        return Err(DunklError::Range(format!(
            "complex |u| = {} exceeds {COMPLEX_LIMIT}",
            u.norm()
        )));
    }
    Ok(series_complex(alpha, -0.25 * u * u))
}

/// Derivative `d/du j_a(u) = -u / (2(a+1)) j_{a+1}(u)`.
pub fn bessel_j_normalized_derivative(alpha: f64, u: f64) -> Result<f64> {
    Ok(-u / (2.0 * (alpha + 1.0)) * bessel_j_normalized_real(alpha + 1.0, u)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn value_at_zero_is_one() {
        for a in [-0.5, 0.0, 0.5, 1.0, 2.3] {
            assert_eq!(bessel_j_normalized_real(a, 0.0).unwrap(), 1.0);
        }
    }

    #[test]
    fn half_order_closed_forms() {
        for &u in &[0.3, 1.0, 5.0, 11.9, 12.1, 25.0, 80.0] {
            let s = bessel_j_normalized_real(0.5, u).unwrap();
            assert_relative_eq!(s, u.sin() / u, epsilon = 1e-13, max_relative = 1e-11);
            // j_{3/2}(u) = 3 (sin u - u cos u) / u^3
            let t = bessel_j_normalized_real(1.5, u).unwrap();
            let exact = 3.0 * (u.sin() - u * u.cos()) / u.powi(3);
            assert_relative_eq!(t, exact, epsilon = 1e-13, max_relative = 1e-10);
        }
        assert_relative_eq!(
            bessel_j_normalized_real(0.5, 1.0).unwrap(),
            0.8414709848078965,
            epsilon = 1e-15
        );
        assert_eq!(bessel_j_normalized_real(-0.5, 2.0).unwrap(), 2.0f64.cos());
    }

    #[test]
    fn series_and_large_argument_branch_agree_near_switch() {
        for a in [-0.25, 0.0, 0.5, 1.5, 2.5, 4.0 / 3.0] {
            let below = series_real(a, -0.25 * 13.0 * 13.0);
            let above = bessel_j_normalized_real(a, 13.0).unwrap();
            assert_relative_eq!(below, above, epsilon = 1e-10);
        }
    }

    #[test]
    fn imaginary_argument_is_modified_bessel() {
        // j_{1/2}(i v) = sinh(v)/v
        for v in [0.5, 3.0, 20.0] {
            let z = bessel_j_normalized(0.5, Complex64::new(0.0, v)).unwrap();
            assert_relative_eq!(z.re, v.sinh() / v, max_relative = 1e-13);
        }
        // j_{-1/2}(i v) = cosh v
        let z = bessel_j_normalized(-0.5, Complex64::new(0.0, 2.0)).unwrap();
        assert_relative_eq!(z.re, 2.0f64.cosh(), max_relative = 1e-13);
    }

    #[test]
    fn general_complex_matches_closed_form() {
        let u = Complex64::new(1.2, -0.7);
        let z = bessel_j_normalized(0.5, u).unwrap();
        let exact = u.sin() / u;
        assert!((z - exact).norm() < 1e-13);
        assert!(bessel_j_normalized(0.5, Complex64::new(40.0, 1.0)).is_err());
    }

    #[test]
    fn rejects_bad_index_and_range() {
        assert!(bessel_j_normalized_real(-0.7, 1.0).is_err());
        assert!(matches!(
            bessel_j_normalized_real(0.5, 1e6),
            Err(DunklError::Range(_))
        ));
    }

    #[test]
    fn derivative_matches_finite_difference() {
        let (a, u, h) = (1.5, 2.0, 1e-5);
        let fd = (bessel_j_normalized_real(a, u + h).unwrap()
            - bessel_j_normalized_real(a, u - h).unwrap())
            / (2.0 * h);
        assert_relative_eq!(
            bessel_j_normalized_derivative(a, u).unwrap(),
            fd,
            epsilon = 1e-9
        );
    }
}
