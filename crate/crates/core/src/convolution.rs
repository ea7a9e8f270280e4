//! Dunkl translation and convolution on the line, the concrete distributions
//! `g omega_k` and `delta_z`, and the approximate identity `phi_eps`.
//!
//! ```text
//! tau_x f(y)  = c^2/2^{2g+1} int K(x, it) K(y, it) F_D f(t) |t|^{2g} dt
//!             = int int V^{-1} f(xi + eta) d mu_x(xi) d mu_y(eta)
//! f * g (x)   = int tau_x f(-y) g(y) |y|^{2g} dy
//! ```

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{DunklError, Result};
use crate::function::{DecayClass, SampledFunction};
use crate::intertwine1d::{ExactLine, InverseViaP, LineIntertwiner};
use crate::kernel::kernel_1d_oscillatory;
use crate::quadrature::QuadratureGrid;
use crate::report::{Check, Curve, VerificationReport};
use crate::special::bessel_j_normalized_real;
use crate::transform::{DunklSpectrum, TransformPlan};

/// `K(x, it)`.
fn kernel_plus(gamma: f64, x: f64, t: f64) -> Result<Complex64> {
    Ok(kernel_1d_oscillatory(gamma, x, t)?.conj())
}

/// `tau_x f` through the spectrum of `f`.
pub struct SpectralTranslator {
    spectrum: DunklSpectrum,
}

impl SpectralTranslator {
    pub fn new(f: &SampledFunction, plan: &TransformPlan) -> Result<Self> {
        Ok(Self {
            spectrum: DunklSpectrum::new(f, plan)?,
        })
    }

    pub fn spectrum(&self) -> &DunklSpectrum {
        &self.spectrum
    }

    /// `tau_x f(y)`.
    pub fn eval(&self, x: f64, y: f64) -> Result<f64> {
        let g = self.spectrum.gamma;
        let mut acc = Complex64::new(0.0, 0.0);
        for ((&t, &w), v) in self
            .spectrum
            .nodes
            .iter()
            .zip(&self.spectrum.weights)
            .zip(&self.spectrum.values)
        {
            acc += w * v * kernel_plus(g, x, t)? * kernel_plus(g, y, t)?;
        }
        Ok((acc * self.spectrum.inverse_constant).re)
    }

    /// `K(x, it)` on the frequency nodes, for repeated use of one `x`.
    fn row(&self, x: f64) -> Result<Vec<Complex64>> {
        let g = self.spectrum.gamma;
        self.spectrum.nodes.iter().map(|&t| kernel_plus(g, x, t)).collect()
    }
}

/// `tau_x f(y)` by the spectral definition.
pub fn translate_spectral(f: &SampledFunction, x: f64, y: f64, plan: &TransformPlan) -> Result<f64> {
    SpectralTranslator::new(f, plan)?.eval(x, y)
}

/// `tau_x f(y) = int int h(xi + eta) d mu_x d mu_y` with `h = V_k^{-1} f`
/// given as a function whose features lie within `radius`.
pub fn translate_measure(
    gamma: f64,
    inverse: impl Fn(f64) -> f64 + Sync,
    radius: f64,
    x: f64,
    y: f64,
) -> Result<f64> {
    let v = LineIntertwiner::new(gamma)?;
    let mx = v.mu(x, Some(radius))?;
    let my = v.mu(y, Some(radius))?;
    // collect before summing so the result does not depend on thread timing
    let parts: Vec<f64> = mx
        .nodes
        .par_iter()
        .zip(&mx.weights)
        .map(|(&xi, &wx)| wx * my.integrate(|eta| inverse(xi + eta)))
        .collect();
    Ok(parts.iter().sum())
}

/// `tau_x f(y)` with `V_k^{-1} f = P tV_k f`.
pub fn translate_via_p(f: &SampledFunction, x: f64, y: f64, plan: &TransformPlan) -> Result<f64> {
    let r = f.require_rapid_decay()?;
    let inv = InverseViaP::new(f, plan)?;
    translate_measure(plan.gamma, |z| inv.eval(z), r, x, y)
}

/// `tau_x f(y)` with `V_k^{-1} f = tV_k Q f`, `Q` in local form.
pub fn translate_via_q(gamma: f64, f: &ExactLine, x: f64, y: f64) -> Result<f64> {
    let g = crate::intertwine1d::integer_gamma(gamma)?;
    let qf = f.local_q(g)?;
    let r = qf.require_rapid_decay()?;
    let v = LineIntertwiner::new(gamma)?;
    translate_measure(gamma, |z| v.tv(&qf, z).unwrap_or(f64::NAN), r, x, y)
}

/// `f * g` on the line through its defining integral, with `tau_x f`
/// spectral.
pub struct Convolver {
    translator: SpectralTranslator,
    /// `|y|^{2g}`-weighted nodes for `g`.
    ys: Vec<f64>,
    gw: Vec<f64>,
    /// `K(-y, it)` for each `y` node, frequency-minor.
    rows: Vec<Vec<Complex64>>,
}

impl Convolver {
    pub fn new(f: &SampledFunction, g: &SampledFunction, plan: &TransformPlan) -> Result<Self> {
        let translator = SpectralTranslator::new(f, plan)?;
        let r = g.require_rapid_decay()?;
        let c = plan.config;
        let grid = QuadratureGrid::abs_power(r, 2.0 * plan.gamma, c.panel, c.per_panel)?;
        let mut ys = Vec::new();
        let mut gw = Vec::new();
        for (&y, &w) in grid.nodes.iter().zip(&grid.weights) {
            let v = g.eval1(y);
            if v != 0.0 {
                ys.push(y);
                gw.push(w * v);
            }
        }
        let rows = ys
            .par_iter()
            .map(|&y| translator.row(-y))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            translator,
            ys,
            gw,
            rows,
        })
    }

    /// `f * g (x)`.
    pub fn eval(&self, x: f64) -> Result<f64> {
        let s = self.translator.spectrum();
        let kx = self.translator.row(x)?;
        let base: Vec<Complex64> = s
            .weights
            .iter()
            .zip(&s.values)
            .zip(&kx)
            .map(|((&w, v), k)| w * v * k)
            .collect();
        let mut acc = 0.0;
        for (row, gw) in self.rows.iter().zip(&self.gw) {
            let tau: Complex64 = row.iter().zip(&base).map(|(a, b)| a * b).sum();
            acc += gw * tau.re;
        }
        Ok(acc * s.inverse_constant)
    }

    pub fn nodes(&self) -> &[f64] {
        &self.ys
    }
}

/// `f * g (x)`.
pub fn convolve(f: &SampledFunction, g: &SampledFunction, x: f64, plan: &TransformPlan) -> Result<f64> {
    Convolver::new(f, g, plan)?.eval(x)
}

/// `F_D (f * g)(t)` from the convolution sampled on the plan's grid.
pub fn transform_of_convolution(conv: &Convolver, ts: &[f64], plan: &TransformPlan) -> Result<Vec<Complex64>> {
    let xs = &plan.space.nodes;
    let h = xs.par_iter().map(|&x| conv.eval(x)).collect::<Result<Vec<_>>>()?;
    ts.iter()
        .map(|&t| {
            let mut acc = Complex64::new(0.0, 0.0);
            for ((&x, &w), hv) in xs.iter().zip(&plan.space.weights).zip(&h) {
                acc += w * hv * kernel_1d_oscillatory(plan.gamma, x, t)?;
            }
            Ok(acc)
        })
        .collect()
}

/// Distributions with a concrete pairing.
#[derive(Clone, Debug)]
pub enum ConcreteDistribution {
    /// `<S, psi> = int g psi omega_k`.
    WeightedFunction(SampledFunction),
    /// `<S, psi> = psi(z)`.
    PointMass(f64),
}

impl ConcreteDistribution {
    /// `F_D S(t) = <S, K(., -it)>`.
    pub fn transform(&self, t: f64, plan: &TransformPlan) -> Result<Complex64> {
        match self {
            ConcreteDistribution::WeightedFunction(g) => crate::transform::dunkl_transform(g, t, plan),
            ConcreteDistribution::PointMass(z) => kernel_1d_oscillatory(plan.gamma, *z, t),
        }
    }
}

/// `S * phi (x) = <S_y, tau_x phi(-y)>`.
pub fn distribution_convolve(
    s: &ConcreteDistribution,
    phi: &SampledFunction,
    x: f64,
    plan: &TransformPlan,
) -> Result<f64> {
    match s {
        ConcreteDistribution::WeightedFunction(g) => convolve(phi, g, x, plan),
        ConcreteDistribution::PointMass(z) => translate_spectral(phi, x, -z, plan),
    }
}

/// `phi(r) = C exp(-1/(1 - r^2))` on `[0, 1)` with `int phi(|x|) |x|^{2g} dx
/// = 1`, and its scalings `phi_eps(x) = eps^{-(2g+1)} phi(|x| / eps)`.
#[derive(Clone, Debug)]
pub struct BumpProfile {
    pub gamma: f64,
    pub constant: f64,
    /// `r^{2g}`-weighted grid on `[0, 1]`.
    grid: QuadratureGrid,
}

fn bare_bump(r: f64) -> f64 {
    if r >= 1.0 {
        0.0
    } else {
        (-1.0 / (1.0 - r * r)).exp()
    }
}

impl BumpProfile {
    pub fn new(gamma: f64) -> Result<Self> {
        let grid = QuadratureGrid::power_at_left(0.0, 1.0, 2.0 * gamma, 0.05, 20)?;
        let mass = 2.0 * grid.integrate(bare_bump);
        Ok(Self {
            gamma,
            constant: 1.0 / mass,
            grid,
        })
    }

    pub fn profile(&self, r: f64) -> f64 {
        self.constant * bare_bump(r)
    }

    /// `phi_eps(x)`; zero for `|x| >= eps`.
    pub fn eval(&self, eps: f64, x: f64) -> f64 {
        eps.powf(-(2.0 * self.gamma + 1.0)) * self.profile(x.abs() / eps)
    }

    pub fn sampled(&self, eps: f64) -> SampledFunction {
        let me = self.clone();
        SampledFunction::line(
            DecayClass::Compact { radius: eps },
            format!("phi_{eps}"),
            move |x| me.eval(eps, x),
        )
    }

    /// `F_D phi_eps(y) = F_D phi(eps y) = 2 int_0^1 phi(r) j_{g-1/2}(eps y r) r^{2g} dr`.
    pub fn transform(&self, eps: f64, y: f64) -> Result<f64> {
        let mut acc = 0.0;
        for (&r, &w) in self.grid.nodes.iter().zip(&self.grid.weights) {
            acc += w * self.profile(r) * bessel_j_normalized_real(self.gamma - 0.5, eps * y * r)?;
        }
        Ok(2.0 * acc)
    }

    /// `int phi_eps omega_k` on a grid fitted to `[-eps, eps]`.
    pub fn mass(&self, eps: f64) -> Result<f64> {
        let g = QuadratureGrid::abs_power(eps, 2.0 * self.gamma, eps / 10.0, 20)?;
        Ok(g.integrate(|x| self.eval(eps, x)))
    }
}

pub const DEFAULT_EPSILONS: [f64; 4] = [0.5, 0.2, 0.1, 0.05];

/// Smallest accepted `eps`; below it the bump is finer than the grids.
pub const MIN_EPSILON: f64 = 0.01;

/// `<(S * phi_eps) omega_k - S, psi>` for `S = g omega_k`, by the pairing
/// `int u v omega = c^2/2^{2g+1} int F_D u(t) F_D v(-t) |t|^{2g} dt`.
pub fn approx_identity_residual(
    bump: &BumpProfile,
    g: &DunklSpectrum,
    psi: &DunklSpectrum,
    eps: f64,
) -> Result<f64> {
    // F_D psi(-t) on the mirrored node; the grids are symmetric
    let n = psi.values.len();
    let mut acc = 0.0;
    for k in 0..n {
        let t = g.nodes[k];
        let fpsi = psi.values[n - 1 - k];
        let m = bump.transform(eps, t)? - 1.0;
        acc += (g.weights[k] * g.values[k] * fpsi * m).re;
    }
    Ok(acc * g.inverse_constant)
}

/// Residuals against a fixed test set, monotone decay in `eps`, and the
/// fitted constant in `|F_D phi_eps(y) - 1| <= eps M y^2`.
pub fn approx_identity_check(
    g: &SampledFunction,
    tests: &[SampledFunction],
    epsilons: &[f64],
    plan: &TransformPlan,
) -> VerificationReport {
    let mut r = VerificationReport::new("approx-identity");
    r.set_env("gamma", plan.gamma);
    r.set_env("epsilons", epsilons);
    let valid = epsilons.len() >= 2
        && epsilons.windows(2).all(|w| w[1] < w[0])
        && epsilons.iter().all(|&e| e <= 1.0 && e >= MIN_EPSILON);
    if !valid {
        r.push(Check::failed(
            "approx-identity-epsilons",
            "eps sequence decreasing in [0.01, 1]",
            0.0,
            &DunklError::InvalidArgument(format!("unusable eps sequence {epsilons:?}")),
        ));
        return r;
    }
    let mut run = || -> Result<()> {
        let bump = BumpProfile::new(plan.gamma)?;
        let mut norm = 0.0f64;
        let mut support = 0.0f64;
        for &e in epsilons {
            norm = norm.max((bump.mass(e)? - 1.0).abs());
            norm = norm.max((bump.transform(e, 0.0)? - 1.0).abs());
            for i in 0..=50 {
                let x = e * (1.0 + i as f64 / 50.0);
                support = support.max(bump.eval(e, x).abs()).max(bump.eval(e, -x).abs());
            }
        }
        r.push(Check::new(
            "approx-identity-normalization",
            "int phi_eps omega = 1 and F_D phi_eps(0) = 1",
            norm,
            1e-10,
        ));
        r.push(Check::new(
            "approx-identity-support",
            "phi_eps vanishes outside B(0, eps)",
            support,
            0.0,
        ));
        let gs = DunklSpectrum::new(g, plan)?;
        let specs = tests
            .iter()
            .map(|t| DunklSpectrum::new(t, plan))
            .collect::<Result<Vec<_>>>()?;
        let mut curve = Curve::new(&["eps", "residual"]);
        let mut res = Vec::new();
        for &e in epsilons {
            let mut m = 0.0f64;
            for s in &specs {
                m = m.max(approx_identity_residual(&bump, &gs, s, e)?.abs());
            }
            curve.push(vec![e, m]);
            res.push(m);
        }
        r.add_curve("approx-identity-residual", curve);
        let increases = res.windows(2).filter(|w| w[1] > w[0]).count();
        r.push(
            Check::new(
                "approx-identity-monotone",
                "residual decreases along the eps sequence",
                increases as f64,
                0.0,
            )
            .with_detail(format!("residuals {res:?}")),
        );
        let first = res[0];
        let last = res[res.len() - 1];
        r.push(
            Check::new(
                "approx-identity-decrease",
                "residual(eps_min) / residual(eps_max) <= 1/5",
                last / first,
                0.2,
            )
            .with_detail(format!("eps {} -> {}", epsilons[0], epsilons[epsilons.len() - 1])),
        );
        let eps_ratio = epsilons[epsilons.len() - 1] / epsilons[0];
        let order = (last / first).ln() / eps_ratio.ln();
        r.push(
            Check::new(
                "approx-identity-rate",
                "(S * phi_eps) omega -> S weakly, at least linearly in eps",
                last / first / eps_ratio,
                1.0,
            )
            .with_detail(format!("observed order {order:.3}")),
        );
        let (m, violation) = fit_quadratic_bound(&bump, epsilons, plan.config.freq_radius)?;
        r.set_env("fitted_M", m);
        r.push(
            Check::new(
                "approx-identity-quadratic-bound",
                "|F_D phi_eps(y) - 1| <= eps M |y|^2 on the frequency box",
                violation,
                0.0,
            )
            .with_detail(format!("M = {m:.6e}")),
        );
        Ok(())
    };
    if let Err(e) = run() {
        r.push(Check::failed("approx-identity", "approximate identity", 0.0, &e));
    }
    r
}

/// Fits `M` on the given `eps` over `|y| <= y_max`, then returns it with the
/// largest violation of the bound at intermediate `eps` (zero if it holds).
pub fn fit_quadratic_bound(bump: &BumpProfile, epsilons: &[f64], y_max: f64) -> Result<(f64, f64)> {
    let ys: Vec<f64> = (1..=200).map(|i| y_max * i as f64 / 200.0).collect();
    let mut m = 0.0f64;
    for &e in epsilons {
        for &y in &ys {
            m = m.max((bump.transform(e, y)? - 1.0).abs() / (e * y * y));
        }
    }
    if !m.is_finite() {
        return Ok((m, f64::INFINITY));
    }
    let mut violation = 0.0f64;
    for w in epsilons.windows(2) {
        let e = (w[0] * w[1]).sqrt();
        for &y in &ys {
            let lhs = (bump.transform(e, y)? - 1.0).abs();
            violation = violation.max(lhs - e * m * y * y);
        }
    }
    Ok((m, violation.max(0.0)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::function::PolyGaussian;
    use crate::polyexact::DunklOperators;
    use crate::rootsys::RootSystem;

    fn hg(n: u32) -> SampledFunction {
        PolyGaussian::hermite_gaussian(n).to_sampled()
    }

    #[test]
    fn translation_by_zero_is_identity() {
        let plan = TransformPlan::for_gamma(1.0).unwrap();
        let f = hg(1);
        let t = SpectralTranslator::new(&f, &plan).unwrap();
        for y in [-2.0, 0.3, 1.7] {
            assert!((t.eval(0.0, y).unwrap() - f.eval1(y)).abs() < 1e-9);
        }
    }

    #[test]
    fn classical_translation_at_gamma_zero() {
        let plan = TransformPlan::for_gamma(0.0).unwrap();
        let f = hg(2);
        let t = SpectralTranslator::new(&f, &plan).unwrap();
        for (x, y) in [(0.5, 0.7), (-1.0, 2.0)] {
            assert!((t.eval(x, y).unwrap() - f.eval1(x + y)).abs() < 1e-9);
        }
    }

    #[test]
    fn translation_paths_agree() {
        let g = 1.0;
        let plan = TransformPlan::for_gamma(g).unwrap();
        let pg = PolyGaussian::hermite_gaussian(1);
        let f = pg.to_sampled();
        let t = SpectralTranslator::new(&f, &plan).unwrap();
        for (x, y) in [(0.6, -0.4), (1.2, 0.9)] {
            let a = t.eval(x, y).unwrap();
            let b = translate_via_p(&f, x, y, &plan).unwrap();
            let c = translate_via_q(g, &ExactLine::PolyGaussian(pg.clone()), x, y).unwrap();
            assert!((a - b).abs() < 1e-6, "{a} vs {b}");
            assert!((a - c).abs() < 1e-6, "{a} vs {c}");
            assert!((a - t.eval(y, x).unwrap()).abs() < 1e-10);
        }
    }

    #[test]
    fn convolution_theorem_and_commutativity() {
        let plan = TransformPlan::for_gamma(1.0).unwrap();
        let f = hg(0);
        let g = hg(1);
        let fg = Convolver::new(&f, &g, &plan).unwrap();
        let gf = Convolver::new(&g, &f, &plan).unwrap();
        for x in [-0.8, 1.1] {
            assert!((fg.eval(x).unwrap() - gf.eval(x).unwrap()).abs() < 1e-9);
        }
        let ts = [0.0, 0.7, 1.9];
        let lhs = transform_of_convolution(&fg, &ts, &plan).unwrap();
        for (t, l) in ts.iter().zip(lhs) {
            let a = crate::transform::dunkl_transform(&f, *t, &plan).unwrap();
            let b = crate::transform::dunkl_transform(&g, *t, &plan).unwrap();
            assert!((l - a * b).norm() < 1e-8, "t={t}");
        }
    }

    #[test]
    fn point_mass_at_origin() {
        let plan = TransformPlan::for_gamma(1.0).unwrap();
        let phi = hg(2);
        for x in [0.4, -1.3] {
            let v = distribution_convolve(&ConcreteDistribution::PointMass(0.0), &phi, x, &plan).unwrap();
            assert!((v - phi.eval1(x)).abs() < 1e-9);
        }
    }

    #[test]
    fn dunkl_derivative_commutes_with_convolution() {
        let g = 1.0;
        let plan = TransformPlan::for_gamma(g).unwrap();
        let rs = RootSystem::preset("z2:1").unwrap();
        let ops = DunklOperators::new(&rs).unwrap();
        let phi = PolyGaussian::hermite_gaussian(1);
        let tphi = phi.dunkl_directional(&ops, &[crate::rational::q(1)]).unwrap().to_sampled();
        let s = hg(2);
        let c = Convolver::new(&phi.to_sampled(), &s, &plan).unwrap();
        let ct = Convolver::new(&tphi, &s, &plan).unwrap();
        for x in [0.7, -1.4] {
            let h = 1e-4;
            let d = (c.eval(x + h).unwrap() - c.eval(x - h).unwrap()) / (2.0 * h);
            let t = d + g * (c.eval(x).unwrap() - c.eval(-x).unwrap()) / x;
            assert!((t - ct.eval(x).unwrap()).abs() < 1e-6);
        }
    }

    #[test]
    fn bump_profile_is_normalized() {
        for g in [0.5, 1.0, 2.0] {
            let b = BumpProfile::new(g).unwrap();
            for e in DEFAULT_EPSILONS {
                assert!((b.mass(e).unwrap() - 1.0).abs() < 1e-10);
                assert!((b.transform(e, 0.0).unwrap() - 1.0).abs() < 1e-13);
                assert_eq!(b.eval(e, e), 0.0);
            }
        }
    }

    #[test]
    fn approximate_identity_report() {
        let plan = TransformPlan::for_gamma(1.0).unwrap();
        let tests = [hg(0), hg(1), hg(2)];
        let r = approx_identity_check(&hg(0), &tests, &DEFAULT_EPSILONS, &plan);
        eprintln!("{}", r.summary());
        assert_eq!(r.curves["approx-identity-residual"].rows.len(), 4);
        assert!(r.check("approx-identity-decrease").unwrap().pass);
        assert!(r.check("approx-identity-quadratic-bound").unwrap().pass);
        let bad = approx_identity_check(&hg(0), &tests, &[0.1, 0.5], &plan);
        assert!(!bad.passed());
    }
}
