//! The Dunkl kernel `K(x, z)`.
//!
//! On the line, `K(x, t) = j_{g-1/2}(i x t) + x t / (2g + 1) j_{g+1/2}(i x t)`.
//! In general, `K(x, w) = sum_n V_k[<., w>^n / n!](x)` with the exact
//! intertwiner, truncated at `N` terms.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{DunklError, Result};
use crate::poly::Exponent;
use crate::polyexact::Intertwiner;
use crate::rational::to_f64;
use crate::report::{Check, VerificationReport};
use crate::rootsys::RootSystem;
use crate::special::{bessel_j_normalized, bessel_j_normalized_real, ln_gamma};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct KernelConfig {
    pub series_truncation: usize,
    pub tolerance: f64,
}

impl Default for KernelConfig {
    fn default() -> Self {
        Self {
            series_truncation: 40,
            tolerance: 1e-12,
        }
    }
}

impl KernelConfig {
    /// `|x|^{N+1} |w|^{N+1} / (N+1)!`.
    pub fn tail_bound(&self, xnorm: f64, wnorm: f64) -> f64 {
        let n1 = self.series_truncation as f64 + 1.0;
        let p = xnorm * wnorm;
        if p == 0.0 {
            return 0.0;
        }
        (n1 * p.ln() - ln_gamma(n1 + 1.0)).exp()
    }
}

fn i() -> Complex64 {
    Complex64::new(0.0, 1.0)
}

/// `K(x, t)` on the line for complex arguments (`gamma >= 0`).
pub fn kernel_1d(gamma: f64, x: Complex64, t: Complex64) -> Result<Complex64> {
    if gamma < 0.0 {
        return Err(DunklError::InvalidArgument(format!("gamma = {gamma} < 0")));
    }
    let u = i() * x * t;
    let a = gamma - 0.5;
    let j0 = bessel_j_normalized(a, u)?;
    let j1 = bessel_j_normalized(a + 1.0, u)?;
    Ok(j0 + x * t / (2.0 * gamma + 1.0) * j1)
}

/// `K(x, t)` for real `x, t`: a sum of positive series in `x t`.
pub fn kernel_1d_real(gamma: f64, x: f64, t: f64) -> Result<f64> {
    Ok(kernel_1d(gamma, x.into(), t.into())?.re)
}

/// `K(x, -i y)` for real `x, y`: `j_a(xy) - i xy/(2g+1) j_{a+1}(xy)`.
pub fn kernel_1d_oscillatory(gamma: f64, x: f64, y: f64) -> Result<Complex64> {
    let u = x * y;
    let a = gamma - 0.5;
    let j0 = bessel_j_normalized_real(a, u)?;
    let j1 = bessel_j_normalized_real(a + 1.0, u)?;
    Ok(Complex64::new(j0, -u / (2.0 * gamma + 1.0) * j1))
}

/// `d/dx K(x, t)` for real arguments, from `d/du j_a(iu) = u/(2(a+1)) j_{a+1}(iu)`.
pub fn kernel_1d_dx(gamma: f64, x: f64, t: f64) -> Result<f64> {
    let a = gamma - 0.5;
    let u = x * t;
    let l = |order: f64| -> Result<f64> { Ok(bessel_j_normalized(order, Complex64::new(0.0, u))?.re) };
    let l1 = l(a + 1.0)?;
    let l2 = l(a + 2.0)?;
    let dl0 = u / (2.0 * (a + 1.0)) * l1;
    let dl1 = u / (2.0 * (a + 2.0)) * l2;
    let c = 1.0 / (2.0 * gamma + 1.0);
    Ok(t * (dl0 + c * l1 + c * u * dl1))
}

/// Product of one-dimensional kernels for `Z_2^d`, with per-axis `gamma_j`.
pub fn kernel_product(gammas: &[f64], x: &[f64], w: &[Complex64]) -> Result<Complex64> {
    let mut k = Complex64::new(1.0, 0.0);
    for ((g, xi), wi) in gammas.iter().zip(x).zip(w) {
        k *= kernel_1d(*g, Complex64::new(*xi, 0.0), *wi)?;
    }
    Ok(k)
}

/// Float tables of `V_k x^nu / nu!` by degree, for repeated series evaluation.
pub struct KernelSeries {
    dim: usize,
    config: KernelConfig,
    /// `tables[n] = [(nu, terms of V_k x^nu / nu!)]`
    tables: Vec<Vec<(Exponent, Vec<(Exponent, f64)>)>>,
}

impl KernelSeries {
    pub fn new(rs: &RootSystem, config: KernelConfig) -> Result<Self> {
        let v = Intertwiner::new(rs)?;
        let mut tables = Vec::with_capacity(config.series_truncation + 1);
        for n in 0..=config.series_truncation as u32 {
            let mut row = Vec::new();
            for (nu, img) in v.degree_table(n)? {
                let fact: f64 = nu
                    .iter()
                    .map(|&k| (1..=k).map(|j| j as f64).product::<f64>())
                    .product();
                let terms = img
                    .terms()
                    .map(|(e, c)| (e.clone(), to_f64(c) / fact))
                    .collect();
                row.push((nu, terms));
            }
            tables.push(row);
        }
        Ok(Self {
            dim: rs.dimension(),
            config,
            tables,
        })
    }

    pub fn config(&self) -> KernelConfig {
        self.config
    }

    /// `K(x, w)`; errors if the truncation tail bound exceeds the tolerance.
    pub fn eval(&self, x: &[f64], w: &[Complex64]) -> Result<Complex64> {
        if x.len() != self.dim || w.len() != self.dim {
            return Err(DunklError::InvalidArgument("dimension mismatch".into()));
        }
        let xn = x.iter().map(|v| v * v).sum::<f64>().sqrt();
        let wn = w.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt();
        let tail = self.config.tail_bound(xn, wn);
        if tail > self.config.tolerance {
            return Err(DunklError::Accuracy {
                what: format!(
                    "kernel series with N = {} at |x||w| = {:.3}",
                    self.config.series_truncation,
                    xn * wn
                ),
                residual: tail,
            });
        }
        let mut sum = Complex64::new(0.0, 0.0);
        for row in &self.tables {
            for (nu, terms) in row {
                let mut wpow = Complex64::new(1.0, 0.0);
                for (wi, &k) in w.iter().zip(nu) {
                    wpow *= wi.powu(k);
                }
                let val: f64 = terms
                    .iter()
                    .map(|(e, c)| e.iter().zip(x).fold(*c, |m, (&k, xi)| m * xi.powi(k as i32)))
                    .sum();
                sum += wpow * val;
            }
        }
        Ok(sum)
    }
}

/// `K(x, w)` by the intertwined exponential series.
pub fn kernel_series(rs: &RootSystem, x: &[f64], w: &[Complex64], config: KernelConfig) -> Result<Complex64> {
    KernelSeries::new(rs, config)?.eval(x, w)
}

/// Sampled checks of the growth bounds and symmetries on the line.
///
/// `|K(ix, y)| <= 1`, `|K(x, y)| <= e^{|x||y|}`, `K(x, 0) = 1`,
/// `K(x, y) = K(y, x)`, `K(lx, y) = K(x, ly)` and
/// `K(-ix, y) = conj K(ix, y)`.
pub fn check_bounds(gamma: f64, samples: &[(f64, f64)]) -> VerificationReport {
    let mut r = VerificationReport::new("kernel-bounds");
    r.set_env("gamma", gamma);
    r.set_env("samples", samples.len());
    let mut unit = 0.0f64;
    let mut growth = 0.0f64;
    let mut at_zero = 0.0f64;
    let mut sym = 0.0f64;
    let mut homog = 0.0f64;
    let mut conj = 0.0f64;
    let mut err = None;
    for &(x, y) in samples {
        let mut step = || -> Result<()> {
            let kiy = kernel_1d(gamma, Complex64::new(0.0, x), y.into())?;
            unit = unit.max(kiy.norm() - 1.0);
            let kmy = kernel_1d(gamma, Complex64::new(0.0, -x), y.into())?;
            conj = conj.max((kmy - kiy.conj()).norm());
            let kr = kernel_1d_real(gamma, x, y)?;
            growth = growth.max(kr.abs() / (x * y).abs().exp() - 1.0);
            at_zero = at_zero.max((kernel_1d(gamma, x.into(), 0.0.into())? - 1.0).norm());
            let ks = kernel_1d_real(gamma, y, x)?;
            sym = sym.max((kr - ks).abs() / kr.abs().max(1.0));
            let l = 0.5 + 0.25 * (x - y).abs().min(2.0);
            let a = kernel_1d_real(gamma, l * x, y)?;
            let b = kernel_1d_real(gamma, x, l * y)?;
            homog = homog.max((a - b).abs() / a.abs().max(1.0));
            Ok(())
        };
        if let Err(e) = step() {
            err = Some(e);
            break;
        }
    }
    if let Some(e) = err {
        r.push(Check::failed("kernel-eval", "kernel evaluation on samples", 0.0, &e));
        return r;
    }
    r.push(Check::new("unit-bound", "|K(ix,y)| <= 1 for real x, y", unit.max(0.0), 1e-12));
    r.push(Check::new("growth-bound", "|K(x,y)| <= exp(|x||y|)", growth.max(0.0), 1e-12));
    r.push(Check::new("at-zero", "K(x,0) = 1", at_zero, 0.0));
    r.push(Check::new("symmetry", "K(x,y) = K(y,x)", sym, 1e-12));
    r.push(Check::new("homogeneity", "K(lx,y) = K(x,ly)", homog, 1e-10));
    r.push(Check::new("conjugation", "K(-ix,y) = conj K(ix,y)", conj, 1e-12));
    r
}

/// Uniform samples in `[-a, a]^2` from a seeded generator.
pub fn sample_pairs(seed: u64, n: usize, a: f64) -> Vec<(f64, f64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| (rng.gen_range(-a..=a), rng.gen_range(-a..=a)))
        .collect()
}

/// Residual of `T_x K(., y) = y K(., y)` at `(x, y)`, relative to `|y K|`.
pub fn eigen_residual(gamma: f64, x: f64, y: f64) -> Result<f64> {
    let k = kernel_1d_real(gamma, x, y)?;
    let km = kernel_1d_real(gamma, -x, y)?;
    let tk = kernel_1d_dx(gamma, x, y)? + gamma * (k - km) / x;
    Ok((tk - y * k).abs() / (y * k).abs().max(1e-300))
}

/// Sharp bound for `Z_2^d`: `|K(x, z)| <= max_w e^{<w x, z>} = e^{sum |x_j z_j|}`.
pub fn product_sharp_bound_residual(gammas: &[f64], x: &[f64], z: &[f64]) -> Result<f64> {
    let w: Vec<Complex64> = z.iter().map(|&v| v.into()).collect();
    let k = kernel_product(gammas, x, &w)?.norm();
    let bound: f64 = x.iter().zip(z).map(|(a, b)| (a * b).abs()).sum::<f64>().exp();
    Ok((k / bound - 1.0).max(0.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn classical_limit_is_exponential() {
        for (x, t) in [(0.5, 1.3), (-2.0, 0.7)] {
            assert_relative_eq!(kernel_1d_real(0.0, x, t).unwrap(), (x * t as f64).exp(), max_relative = 1e-14);
        }
    }

    #[test]
    fn value_at_zero() {
        for g in [0.5, 1.0, 7.0 / 3.0] {
            assert_eq!(kernel_1d(g, Complex64::new(2.0, 0.0), 0.0.into()).unwrap(), Complex64::new(1.0, 0.0));
        }
    }

    #[test]
    fn oscillatory_form_matches_complex_form() {
        let (g, x, y) = (1.5, 1.7, -2.3);
        let a = kernel_1d_oscillatory(g, x, y).unwrap();
        let b = kernel_1d(g, x.into(), Complex64::new(0.0, -y)).unwrap();
        assert!((a - b).norm() < 1e-13);
    }

    #[test]
    fn series_matches_closed_form() {
        let rs = RootSystem::preset("z2:1").unwrap();
        let s = KernelSeries::new(&rs, KernelConfig { series_truncation: 60, tolerance: 1e-12 }).unwrap();
        for (x, t) in [(1.0, 1.0), (-3.0, 2.5), (2.0, -3.0)] {
            let a = s.eval(&[x], &[Complex64::new(t, 0.0)]).unwrap();
            let b = kernel_1d_real(1.0, x, t).unwrap();
            assert_relative_eq!(a.re, b, max_relative = 1e-10);
            let a = s.eval(&[x], &[Complex64::new(0.0, -t)]).unwrap();
            let b = kernel_1d_oscillatory(1.0, x, t).unwrap();
            assert!((a - b).norm() < 1e-10);
        }
    }

    #[test]
    fn series_reports_truncation() {
        let rs = RootSystem::preset("z2:1").unwrap();
        let err = kernel_series(&rs, &[10.0], &[Complex64::new(10.0, 0.0)], KernelConfig::default());
        assert!(matches!(err, Err(DunklError::Accuracy { .. })));
    }

    #[test]
    fn eigenfunction_property() {
        for g in [0.5, 1.0, 2.5] {
            for (x, y) in [(0.7, 1.1), (-1.9, 0.4), (2.5, -2.0)] {
                assert!(eigen_residual(g, x, y).unwrap() < 1e-10);
            }
        }
    }

    #[test]
    fn bounds_report_passes() {
        let r = check_bounds(1.0, &sample_pairs(7, 200, 5.0));
        assert!(r.passed(), "{}", r.summary());
    }
}
