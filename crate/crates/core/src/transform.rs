//! Classical Fourier, Dunkl and Fourier–Bessel transforms by quadrature, and
//! the multiplier forms of `P` (classical transform times `omega_k`) and `Q`
//! (Dunkl transform times `omega_k`).
//!
//! Conventions on the line, `omega(x) = |x|^{2g}`, `c = 1/Gamma(g + 1/2)`:
//!
//! ```text
//! F f(y)      = int f(x) e^{-ixy} dx
//! F_D f(y)    = int f(x) K(x, -iy) |x|^{2g} dx
//! F_D^{-1} h  = c^2 / 2^{2g+1} int h(y) K(x, iy) |y|^{2g} dy
//! P f         = pi c^2 / 2^{2g} F^{-1}[omega F f]
//! Q f         = pi c^2 / 2^{2g} F_D^{-1}[omega F_D f]
//! ```

use std::f64::consts::PI;
use std::fmt::Write as _;
use std::sync::OnceLock;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{DunklError, Result};
use crate::function::SampledFunction;
use crate::kernel::{kernel_1d_oscillatory, kernel_product};
use crate::quadrature::QuadratureGrid;
use crate::special::{bessel_j_normalized_real, gamma as gamma_fn};

/// Grid parameters shared by all transforms on the line.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PlanConfig {
    /// Spatial truncation radius for Dunkl-weighted integrals.
    pub radius: f64,
    /// Frequency truncation radius.
    pub freq_radius: f64,
    /// Gauss panel width and nodes per panel.
    pub panel: f64,
    pub per_panel: usize,
    /// Half width of the uniform box used by the classical transform.
    pub box_half_width: f64,
    /// Points on the uniform box.
    pub grid_n: usize,
}

impl Default for PlanConfig {
    fn default() -> Self {
        Self {
            radius: 12.0,
            freq_radius: 12.0,
            panel: 1.0,
            per_panel: 20,
            box_half_width: 8.0,
            grid_n: 257,
        }
    }
}

impl PlanConfig {
    /// Smallest radius with `e^{-R^2/2} R^{2g+4} < 1e-16`.
    pub fn gaussian_radius_for(gamma: f64) -> f64 {
        let mut r: f64 = 4.0;
        while (-0.5 * r * r).exp() * r.powf(2.0 * gamma + 4.0) >= 1e-16 {
            r += 0.5;
        }
        r
    }

    pub fn for_gamma(gamma: f64) -> Self {
        let r = Self::gaussian_radius_for(gamma).max(10.0);
        Self {
            radius: r,
            freq_radius: r,
            ..Self::default()
        }
    }
}

/// `c_k = 1 / Gamma(g + 1/2)` on the line.
pub fn mehta_1d(gamma: f64) -> f64 {
    1.0 / gamma_fn(gamma + 0.5)
}

/// `pi c^2 / 2^{2g}` on the line.
pub fn p_prefactor_1d(gamma: f64) -> f64 {
    let c = mehta_1d(gamma);
    PI * c * c / 2f64.powf(2.0 * gamma)
}

/// Eigenvalue of `e^{-|x|^2/2}` under `F_D`: `2^{g + d/2} / c_k`.
pub fn gaussian_eigenvalue(gamma: f64, d: usize, c_k: f64) -> f64 {
    2f64.powf(gamma + 0.5 * d as f64) / c_k
}

/// Grids and cached kernel values for transforms on the line.
pub struct TransformPlan {
    pub gamma: f64,
    pub config: PlanConfig,
    /// `|x|^{2g}`-weighted spatial grid on `[-R, R]`.
    pub space: QuadratureGrid,
    /// `|y|^{2g}`-weighted frequency grid on `[-Y, Y]`.
    pub freq: QuadratureGrid,
    /// Uniform grid for the classical transform.
    pub uniform: QuadratureGrid,
    /// Frequencies at which sampled output is reported.
    pub targets: Vec<f64>,
    pub c_k: f64,
    kernel: OnceLock<Vec<Complex64>>,
}

impl TransformPlan {
    pub fn new(gamma: f64, config: PlanConfig) -> Result<Self> {
        if gamma < 0.0 {
            return Err(DunklError::InvalidArgument(format!("gamma = {gamma} < 0")));
        }
        let p = 2.0 * gamma;
        let space = QuadratureGrid::abs_power(config.radius, p, config.panel, config.per_panel)?;
        let freq = QuadratureGrid::abs_power(config.freq_radius, p, config.panel, config.per_panel)?;
        let l = config.box_half_width;
        let uniform = QuadratureGrid::trapezoid(-l, l, config.grid_n)?;
        let targets = uniform.nodes.clone();
        Ok(Self {
            gamma,
            config,
            space,
            freq,
            uniform,
            targets,
            c_k: mehta_1d(gamma),
            kernel: OnceLock::new(),
        })
    }

    pub fn for_gamma(gamma: f64) -> Result<Self> {
        Self::new(gamma, PlanConfig::for_gamma(gamma))
    }

    /// `c^2 / 2^{2g+1}`.
    pub fn inverse_constant(&self) -> f64 {
        self.c_k * self.c_k / 2f64.powf(2.0 * self.gamma + 1.0)
    }

    pub fn p_prefactor(&self) -> f64 {
        p_prefactor_1d(self.gamma)
    }

    /// `K(x_i, -i t_k)` for space nodes `x_i` and frequency nodes `t_k`,
    /// frequency-major.
    fn kernel_matrix(&self) -> Result<&[Complex64]> {
        if let Some(k) = self.kernel.get() {
            return Ok(k);
        }
        let nx = self.space.len();
        let rows: Result<Vec<Vec<Complex64>>> = self
            .freq
            .nodes
            .par_iter()
            .map(|&t| {
                self.space
                    .nodes
                    .iter()
                    .map(|&x| kernel_1d_oscillatory(self.gamma, x, t))
                    .collect()
            })
            .collect();
        let mut flat = Vec::with_capacity(nx * self.freq.len());
        for r in rows? {
            flat.extend(r);
        }
        Ok(self.kernel.get_or_init(|| flat))
    }

    /// Spatial grid for a function: the plan grid, or a finer one fitted to
    /// a compact support.
    fn grid_for(&self, f: &SampledFunction) -> Result<Option<QuadratureGrid>> {
        let r = f.require_rapid_decay()?;
        match f.decay {
            crate::function::DecayClass::Compact { radius } if radius < self.config.radius => {
                let panel = (radius / 20.0).max(1e-3);
                Ok(Some(QuadratureGrid::abs_power(radius, 2.0 * self.gamma, panel, self.config.per_panel)?))
            }
            _ if r > self.config.radius * (1.0 + 1e-12) => Err(DunklError::Accuracy {
                what: format!(
                    "{} extends to radius {r}, beyond the plan radius {}",
                    f.label, self.config.radius
                ),
                residual: f.tail_ratio().unwrap_or(f64::INFINITY),
            }),
            _ => Ok(None),
        }
    }
}

/// `F f(y) = int f(x) e^{-ixy} dx` on the plan's uniform box.
pub fn classical_fourier(f: &SampledFunction, y: f64, plan: &TransformPlan) -> Complex64 {
    plan.uniform
        .integrate_complex(|x| f.eval1(x) * Complex64::from_polar(1.0, -x * y))
}

/// `F_D f(y)`.
pub fn dunkl_transform(f: &SampledFunction, y: f64, plan: &TransformPlan) -> Result<Complex64> {
    let own = plan.grid_for(f)?;
    let grid = own.as_ref().unwrap_or(&plan.space);
    let mut acc = Complex64::new(0.0, 0.0);
    for (&x, &w) in grid.nodes.iter().zip(&grid.weights) {
        let fx = f.eval1(x);
        if fx != 0.0 {
            acc += w * fx * kernel_1d_oscillatory(plan.gamma, x, y)?;
        }
    }
    Ok(acc)
}

/// `F_D^{-1} h(x)` for a spectrum given as a function of frequency.
pub fn dunkl_inverse(h: impl Fn(f64) -> Complex64, x: f64, plan: &TransformPlan) -> Result<Complex64> {
    let mut acc = Complex64::new(0.0, 0.0);
    for (&t, &w) in plan.freq.nodes.iter().zip(&plan.freq.weights) {
        acc += w * h(t) * kernel_1d_oscillatory(plan.gamma, x, t)?.conj();
    }
    Ok(acc * plan.inverse_constant())
}

/// `F_D f` tabulated on the plan's frequency nodes.
#[derive(Clone, Debug)]
pub struct DunklSpectrum {
    pub gamma: f64,
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub values: Vec<Complex64>,
    pub inverse_constant: f64,
}

impl DunklSpectrum {
    pub fn new(f: &SampledFunction, plan: &TransformPlan) -> Result<Self> {
        let values = if plan.grid_for(f)?.is_some() {
            plan.freq
                .nodes
                .par_iter()
                .map(|&t| dunkl_transform(f, t, plan))
                .collect::<Result<Vec<_>>>()?
        } else {
            let kern = plan.kernel_matrix()?;
            let nx = plan.space.len();
            let fw: Vec<f64> = plan
                .space
                .nodes
                .iter()
                .zip(&plan.space.weights)
                .map(|(&x, &w)| w * f.eval1(x))
                .collect();
            (0..plan.freq.len())
                .into_par_iter()
                .map(|k| {
                    let row = &kern[k * nx..(k + 1) * nx];
                    row.iter().zip(&fw).map(|(kv, fv)| kv * fv).sum()
                })
                .collect()
        };
        Ok(Self::from_values(plan, values))
    }

    /// Spectrum `t -> h(t)` sampled on the plan's frequency nodes.
    pub fn from_fn(plan: &TransformPlan, h: impl Fn(f64) -> Complex64) -> Self {
        let values = plan.freq.nodes.iter().map(|&t| h(t)).collect();
        Self::from_values(plan, values)
    }

    fn from_values(plan: &TransformPlan, values: Vec<Complex64>) -> Self {
        Self {
            gamma: plan.gamma,
            nodes: plan.freq.nodes.clone(),
            weights: plan.freq.weights.clone(),
            values,
            inverse_constant: plan.inverse_constant(),
        }
    }

    /// Pointwise product with another spectrum on the same nodes.
    pub fn multiply(&self, other: &DunklSpectrum) -> Self {
        let mut out = self.clone();
        for (a, b) in out.values.iter_mut().zip(&other.values) {
            *a *= b;
        }
        out
    }

    pub fn map(&self, f: impl Fn(f64, Complex64) -> Complex64) -> Self {
        let mut out = self.clone();
        for (v, &t) in out.values.iter_mut().zip(&self.nodes) {
            *v = f(t, *v);
        }
        out
    }

    /// `F_D^{-1}` of the tabulated spectrum at `x`.
    pub fn inverse(&self, x: f64) -> Result<Complex64> {
        let mut acc = Complex64::new(0.0, 0.0);
        for ((&t, &w), v) in self.nodes.iter().zip(&self.weights).zip(&self.values) {
            acc += w * v * kernel_1d_oscillatory(self.gamma, x, t)?.conj();
        }
        Ok(acc * self.inverse_constant)
    }

    /// `c^2/2^{2g+1} int h(t) g(t) |t|^{2g} dt` for a second function `g`.
    pub fn pair(&self, g: impl Fn(f64) -> Complex64) -> Complex64 {
        let s: Complex64 = self
            .nodes
            .iter()
            .zip(&self.weights)
            .zip(&self.values)
            .map(|((&t, &w), v)| w * v * g(t))
            .sum();
        s * self.inverse_constant
    }
}

/// `F_D f(y)` for `Z_2^d` with per-axis multiplicities, on a tensor grid.
pub fn dunkl_transform_nd(
    gammas: &[f64],
    f: &SampledFunction,
    ys: &[Vec<f64>],
    config: PlanConfig,
) -> Result<Vec<Complex64>> {
    let d = gammas.len();
    if f.dim() != d {
        return Err(DunklError::InvalidArgument("dimension mismatch".into()));
    }
    if d > 3 {
        return Err(DunklError::Unsupported(format!("tensor transform in dimension {d}")));
    }
    let r = f.require_rapid_decay()?.min(config.radius);
    let grids = gammas
        .iter()
        .map(|&g| QuadratureGrid::abs_power(r, 2.0 * g, config.panel, config.per_panel))
        .collect::<Result<Vec<_>>>()?;
    // tabulate f w on the tensor grid once
    let sizes: Vec<usize> = grids.iter().map(|g| g.len()).collect();
    let total: usize = sizes.iter().product();
    let idx_of = |mut flat: usize| -> Vec<usize> {
        let mut idx = vec![0; d];
        for j in (0..d).rev() {
            idx[j] = flat % sizes[j];
            flat /= sizes[j];
        }
        idx
    };
    let fw: Vec<f64> = (0..total)
        .into_par_iter()
        .map(|flat| {
            let idx = idx_of(flat);
            let x: Vec<f64> = idx.iter().enumerate().map(|(j, &i)| grids[j].nodes[i]).collect();
            let w: f64 = idx.iter().enumerate().map(|(j, &i)| grids[j].weights[i]).product();
            w * f.eval(&x)
        })
        .collect();
    ys.par_iter()
        .map(|y| {
            let per_axis = (0..d)
                .map(|j| {
                    grids[j]
                        .nodes
                        .iter()
                        .map(|&x| kernel_1d_oscillatory(gammas[j], x, y[j]))
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<Vec<_>>>()?;
            let mut acc = Complex64::new(0.0, 0.0);
            for (flat, v) in fw.iter().enumerate() {
                if *v == 0.0 {
                    continue;
                }
                let idx = idx_of(flat);
                let mut k = Complex64::new(*v, 0.0);
                for j in 0..d {
                    k *= per_axis[j][idx[j]];
                }
                acc += k;
            }
            Ok(acc)
        })
        .collect()
}

/// Mehta constant of `Z_2^d`: `prod_j 1 / Gamma(k_j + 1/2)`.
pub fn mehta_product(gammas: &[f64]) -> f64 {
    gammas.iter().map(|&g| mehta_1d(g)).product()
}

/// Spot value of the product kernel, for consistency checks.
pub fn product_kernel_oscillatory(gammas: &[f64], x: &[f64], y: &[f64]) -> Result<Complex64> {
    let w: Vec<Complex64> = y.iter().map(|&v| Complex64::new(0.0, -v)).collect();
    kernel_product(gammas, x, &w)
}

/// `F_B^{g + d/2 - 1}(f)(lambda) = int_0^R f(r) j_{g+d/2-1}(lambda r) r^{2g+d-1} dr
/// / (2^{g+d/2} Gamma(g + d/2))` for a radial profile supported in `[0, R]`.
pub fn fourier_bessel(
    profile: impl Fn(f64) -> f64,
    support: f64,
    lambda: f64,
    gamma: f64,
    d: usize,
) -> Result<f64> {
    let half_d = 0.5 * d as f64;
    let order = gamma + half_d - 1.0;
    let grid = QuadratureGrid::power_at_left(0.0, support, 2.0 * gamma + d as f64 - 1.0, support / 20.0, 20)?;
    let mut acc = 0.0;
    for (&r, &w) in grid.nodes.iter().zip(&grid.weights) {
        let v = profile(r);
        if v != 0.0 {
            acc += w * v * bessel_j_normalized_real(order, lambda * r)?;
        }
    }
    Ok(acc / (2f64.powf(gamma + half_d) * gamma_fn(gamma + half_d)))
}

/// `P g = pi c^2 / 2^{2g} F^{-1}[|xi|^{2g} F g]`, with `F g` computed once.
pub struct MultiplierP {
    prefactor: f64,
    nodes: Vec<f64>,
    /// `w_k F g(xi_k)`, weights including `|xi|^{2g}`.
    weighted: Vec<Complex64>,
    /// `|g|` at the box edge relative to its maximum.
    pub edge_ratio: f64,
}

impl MultiplierP {
    pub fn new(plan: &TransformPlan, g: impl Fn(f64) -> f64 + Sync) -> Self {
        let samples: Vec<f64> = plan.uniform.nodes.par_iter().map(|&x| g(x)).collect();
        Self::from_samples(plan, &samples)
    }

    /// `samples[i] = g(plan.uniform.nodes[i])`.
    pub fn from_samples(plan: &TransformPlan, samples: &[f64]) -> Self {
        let u = &plan.uniform;
        let weighted = plan
            .freq
            .nodes
            .par_iter()
            .zip(&plan.freq.weights)
            .map(|(&xi, &w)| {
                let fg: Complex64 = u
                    .nodes
                    .iter()
                    .zip(&u.weights)
                    .zip(samples)
                    .map(|((&x, &uw), &s)| uw * s * Complex64::from_polar(1.0, -x * xi))
                    .sum();
                w * fg
            })
            .collect();
        let peak = samples.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        let edge = samples[0].abs().max(samples[samples.len() - 1].abs());
        Self {
            prefactor: plan.p_prefactor(),
            nodes: plan.freq.nodes.clone(),
            weighted,
            edge_ratio: if peak > 0.0 { edge / peak } else { 0.0 },
        }
    }

    pub fn eval(&self, x: f64) -> f64 {
        let s: f64 = self
            .nodes
            .iter()
            .zip(&self.weighted)
            .map(|(&xi, v)| (v * Complex64::from_polar(1.0, xi * x)).re)
            .sum();
        self.prefactor * s / (2.0 * PI)
    }
}

/// `P f(x)` by the multiplier form.
pub fn multiplier_p(f: &SampledFunction, x: f64, plan: &TransformPlan) -> Result<f64> {
    f.require_rapid_decay()?;
    Ok(MultiplierP::new(plan, |t| f.eval1(t)).eval(x))
}

/// `Q f = pi c^2 / 2^{2g} F_D^{-1}[|t|^{2g} F_D f]`, with `F_D f` tabulated on
/// a `|t|^{4g}`-weighted grid.
pub struct MultiplierQ {
    gamma: f64,
    constant: f64,
    nodes: Vec<f64>,
    weighted: Vec<Complex64>,
}

impl MultiplierQ {
    pub fn new(f: &SampledFunction, plan: &TransformPlan) -> Result<Self> {
        let c = plan.config;
        let grid = QuadratureGrid::abs_power(c.freq_radius, 4.0 * plan.gamma, c.panel, c.per_panel)?;
        let weighted = grid
            .nodes
            .par_iter()
            .zip(&grid.weights)
            .map(|(&t, &w)| Ok(w * dunkl_transform(f, t, plan)?))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            gamma: plan.gamma,
            constant: plan.p_prefactor() * plan.inverse_constant(),
            nodes: grid.nodes,
            weighted,
        })
    }

    pub fn eval(&self, x: f64) -> Result<f64> {
        let mut acc = Complex64::new(0.0, 0.0);
        for (&t, v) in self.nodes.iter().zip(&self.weighted) {
            acc += v * kernel_1d_oscillatory(self.gamma, x, t)?.conj();
        }
        Ok(self.constant * acc.re)
    }
}

/// `Q f(x)` by the multiplier form.
pub fn multiplier_q(f: &SampledFunction, x: f64, plan: &TransformPlan) -> Result<f64> {
    MultiplierQ::new(f, plan)?.eval(x)
}

/// CSV with columns `point, re, im`.
pub fn samples_csv(points: &[f64], values: &[Complex64]) -> String {
    let mut s = String::from("point,re,im\n");
    for (p, v) in points.iter().zip(values) {
        let _ = writeln!(s, "{p:e},{:e},{:e}", v.re, v.im);
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::function::{Bump, PolyGaussian};
    use crate::rational::Q;
    use crate::rootsys::RootSystem;
    use approx::assert_relative_eq;

    fn gaussian() -> SampledFunction {
        PolyGaussian::hermite_gaussian(0).to_sampled()
    }

    #[test]
    fn classical_gaussian_pair() {
        let plan = TransformPlan::for_gamma(1.0).unwrap();
        for y in [0.0, 0.7, 2.5] {
            let v = classical_fourier(&gaussian(), y, &plan);
            let exact = (2.0 * PI).sqrt() * (-0.5 * y * y).exp();
            assert_relative_eq!(v.re, exact, max_relative = 1e-12);
            assert!(v.im.abs() < 1e-14);
        }
    }

    #[test]
    fn dunkl_gaussian_eigenfunction() {
        for g in [0.5, 1.0, 2.0, 7.0 / 3.0] {
            let plan = TransformPlan::for_gamma(g).unwrap();
            let lam = gaussian_eigenvalue(g, 1, plan.c_k);
            for y in [0.0, 1.0, 3.0] {
                let v = dunkl_transform(&gaussian(), y, &plan).unwrap();
                let exact = lam * (-0.5 * y * y).exp();
                assert_relative_eq!(v.re, exact, max_relative = 1e-10);
            }
        }
    }

    #[test]
    fn classical_limit() {
        let plan = TransformPlan::for_gamma(0.0).unwrap();
        let f = PolyGaussian::hermite_gaussian(3).to_sampled();
        for y in [0.3, 1.7] {
            let a = dunkl_transform(&f, y, &plan).unwrap();
            let b = classical_fourier(&f, y, &plan);
            assert!((a - b).norm() < 1e-10);
        }
    }

    #[test]
    fn round_trip_on_hermite_gaussians() {
        let plan = TransformPlan::for_gamma(1.5).unwrap();
        for f in PolyGaussian::test_set(4) {
            let s = f.to_sampled();
            let spec = DunklSpectrum::new(&s, &plan).unwrap();
            for x in [-2.0, -0.3, 0.9, 2.6] {
                let back = spec.inverse(x).unwrap();
                assert!((back.re - f.eval(&[x])).abs() < 1e-9, "{} at {x}", s.label);
                assert!(back.im.abs() < 1e-9);
            }
        }
    }

    #[test]
    fn multiplier_p_matches_local_form() {
        // gamma = 1: P = -d^2/dx^2; gamma = 2: P = (1/9) d^4/dx^4
        for (g, spec) in [(1.0, "z2:1"), (2.0, "z2:2")] {
            let rs = RootSystem::preset(spec).unwrap();
            let plan = TransformPlan::for_gamma(g).unwrap();
            let f = PolyGaussian::hermite_gaussian(2);
            let local = f
                .p_unscaled(&rs)
                .unwrap()
                .scale(&rs.p_prefactor_exact().unwrap());
            let m = MultiplierP::new(&plan, |x| f.eval(&[x]));
            for x in [-1.5, 0.0, 0.4, 2.2] {
                assert!((m.eval(x) - local.eval(&[x])).abs() < 1e-9, "gamma {g} x {x}");
            }
        }
    }

    #[test]
    fn multiplier_q_matches_local_form() {
        let rs = RootSystem::preset("z2:1").unwrap();
        let plan = TransformPlan::for_gamma(1.0).unwrap();
        let f = PolyGaussian::hermite_gaussian(3);
        let local = f.q_unscaled(&rs).unwrap().scale(&Q::from_integer(1.into()));
        let m = MultiplierQ::new(&f.to_sampled(), &plan).unwrap();
        for x in [-1.1, 0.5, 2.0] {
            assert!((m.eval(x).unwrap() - local.eval(&[x])).abs() < 1e-8);
        }
    }

    #[test]
    fn fourier_bessel_at_zero_is_a_moment() {
        let b = Bump::new(0.0, 1.0);
        let g = 1.0;
        let v = fourier_bessel(|r| b.eval(r), 1.0, 0.0, g, 1).unwrap();
        let grid = QuadratureGrid::power_at_left(0.0, 1.0, 2.0 * g, 0.05, 20).unwrap();
        let m = grid.integrate(|r| b.eval(r)) / (2f64.powf(g + 0.5) * gamma_fn(g + 0.5));
        assert_relative_eq!(v, m, max_relative = 1e-14);
    }

    #[test]
    fn product_transform_gaussian() {
        let gammas = [1.0, 2.0];
        let f = SampledFunction::new(
            2,
            crate::function::DecayClass::Schwartz { radius: 11.0 },
            "gaussian",
            |x| (-0.5 * (x[0] * x[0] + x[1] * x[1])).exp(),
        );
        let ys = vec![vec![0.0, 0.0], vec![1.0, -0.5]];
        let cfg = PlanConfig { radius: 11.0, ..PlanConfig::default() };
        let v = dunkl_transform_nd(&gammas, &f, &ys, cfg).unwrap();
        let lam = gaussian_eigenvalue(3.0, 2, mehta_product(&gammas));
        for (y, val) in ys.iter().zip(&v) {
            let exact = lam * (-0.5 * (y[0] * y[0] + y[1] * y[1])).exp();
            assert_relative_eq!(val.re, exact, max_relative = 1e-10);
        }
    }
}
