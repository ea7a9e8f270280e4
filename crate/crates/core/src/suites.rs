//! The fixed roster of verification suites behind `dunkl-kit run`.
//!
//! Every suite returns a [`VerificationReport`]. Numeric failures become
//! failed checks; only an unknown suite name is an error.

use std::time::Instant;

use num_complex::Complex64;
use serde::Deserialize;

use crate::convolution::{
    approx_identity_check, distribution_convolve, transform_of_convolution, translate_via_p, translate_via_q,
    ConcreteDistribution, Convolver, SpectralTranslator, DEFAULT_EPSILONS,
};
use crate::error::{DunklError, Result};
use crate::function::{Bump, DecayClass, PolyGaussian, SampledFunction};
use crate::intertwine1d::{
    eta_pairing, exact_monomial_image, integer_gamma, inv_tv_local, inv_tv_via_vkp, inv_v_via_q, tensor_gammas,
    v_tensor, z_pairing, ExactLine, InverseViaP, LineIntertwiner,
};
use crate::kernel::{
    check_bounds, eigen_residual, kernel_1d, kernel_1d_oscillatory, kernel_1d_real, kernel_product, sample_pairs,
    KernelConfig, KernelSeries,
};
use crate::poly::{exponents_of_degree, RationalPoly};
use crate::polyexact::Intertwiner;
use crate::rational::q;
use crate::report::{Check, Curve, VerificationReport};
use crate::rootsys::RootSystem;
use crate::transform::{
    classical_fourier, dunkl_transform, dunkl_transform_nd, gaussian_eigenvalue, mehta_product, DunklSpectrum,
    PlanConfig, TransformPlan,
};

pub const SUITES: [&str; 10] = [
    "transmutation",
    "normalization",
    "cross-engine",
    "kernel",
    "transform",
    "inversion",
    "representing",
    "support",
    "translation",
    "approx-identity",
];

/// Highest degree in the exact polynomial suites.
pub const MAX_DEGREE: u32 = 8;
/// Terms of the kernel series in the kernel suite.
pub const SERIES_TERMS: usize = 60;
/// Samples for the kernel bounds.
pub const KERNEL_SAMPLES: usize = 1000;

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub suite: String,
    pub root_system: RootSystem,
    pub grid_n: usize,
    /// Replaces every check's tolerance when set.
    pub tol: Option<f64>,
    pub seed: u64,
}

impl SuiteConfig {
    pub fn new(suite: &str, root_system: RootSystem) -> Self {
        Self {
            suite: suite.to_string(),
            root_system,
            grid_n: PlanConfig::default().grid_n,
            tol: None,
            seed: 0,
        }
    }

    pub fn preset(suite: &str, preset: &str) -> Result<Self> {
        Ok(Self::new(suite, RootSystem::preset(preset)?))
    }

    pub fn validate(&self) -> Result<()> {
        if !SUITES.contains(&self.suite.as_str()) {
            return Err(DunklError::Usage(format!(
                "unknown suite {:?} (known: {})",
                self.suite,
                SUITES.join(", ")
            )));
        }
        if let Some(t) = self.tol {
            if !(t > 0.0) || !t.is_finite() {
                return Err(DunklError::Usage(format!("tolerance must be positive, got {t}")));
            }
        }
        if self.grid_n < 17 {
            return Err(DunklError::Usage(format!("grid-n must be at least 17, got {}", self.grid_n)));
        }
        Ok(())
    }
}

/// File form of a suite configuration. Either `preset` or `root_system`.
#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub suite: Option<String>,
    pub preset: Option<String>,
    pub root_system: Option<serde_json::Value>,
    pub grid_n: Option<usize>,
    pub tol: Option<f64>,
    pub seed: Option<u64>,
    pub out: Option<String>,
    pub format: Option<String>,
}

impl ConfigFile {
    pub fn parse(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn root_system(&self) -> Result<Option<RootSystem>> {
        match (&self.preset, &self.root_system) {
            (Some(_), Some(_)) => Err(DunklError::Usage(
                "config gives both preset and root_system".into(),
            )),
            (Some(p), None) => Ok(Some(RootSystem::preset(p)?)),
            (None, Some(v)) => Ok(Some(RootSystem::from_json(&v.to_string())?)),
            (None, None) => Ok(None),
        }
    }
}

/// Runs the named suite and stamps configuration and wall time.
pub fn run_suite(cfg: &SuiteConfig) -> Result<VerificationReport> {
    cfg.validate()?;
    let start = Instant::now();
    let rs = &cfg.root_system;
    let mut r = match cfg.suite.as_str() {
        "transmutation" => transmutation(rs),
        "normalization" => normalization(rs),
        "cross-engine" => cross_engine(rs),
        "kernel" => kernel(rs, cfg.seed),
        "transform" => transform(rs, cfg.grid_n),
        "inversion" => inversion(rs, cfg.grid_n),
        "representing" => representing(rs, cfg.grid_n),
        "support" => support(rs),
        "translation" => translation(rs, cfg.grid_n),
        "approx-identity" => approx_identity(rs, cfg.grid_n),
        _ => unreachable!("validated"),
    };
    r.suite = cfg.suite.clone();
    r.set_env("root_system", rs.describe());
    r.set_env("gamma", rs.gamma_f64());
    r.set_env("grid_n", cfg.grid_n);
    r.set_env("seed", cfg.seed);
    if let Some(t) = cfg.tol {
        r.set_env("tol_override", t);
        apply_tolerance(&mut r, t);
    }
    r.elapsed_ms = start.elapsed().as_millis() as u64;
    Ok(r)
}

/// Re-judges every check against `tol`.
pub fn apply_tolerance(r: &mut VerificationReport, tol: f64) {
    let checks = std::mem::take(&mut r.checks);
    r.extend(checks.into_iter().map(|mut c| {
        c.tol = tol;
        c.pass = c.residual.is_some_and(|v| v <= tol);
        c
    }));
}

/// `max |a - b| / max |b|`.
pub fn rel_linf(a: &[f64], b: &[f64]) -> f64 {
    let num = a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
    let den = b.iter().map(|y| y.abs()).fold(0.0, f64::max);
    if den == 0.0 {
        num
    } else {
        num / den
    }
}

/// Wraps a fallible suite body: an error becomes one failed check.
fn guarded(name: &str, body: impl FnOnce(&mut VerificationReport) -> Result<()>) -> VerificationReport {
    let mut r = VerificationReport::new(name);
    if let Err(e) = body(&mut r) {
        r.push(Check::failed(format!("{name}-error"), "suite ran to completion", 0.0, &e));
    }
    r
}

fn line_gamma(rs: &RootSystem) -> Result<f64> {
    if rs.dimension() != 1 {
        return Err(DunklError::Unsupported(format!(
            "this suite runs on the line; got {}",
            rs.describe()
        )));
    }
    Ok(rs.gamma_f64())
}

fn plan_for(gamma: f64, grid_n: usize) -> Result<TransformPlan> {
    TransformPlan::new(
        gamma,
        PlanConfig {
            grid_n,
            ..PlanConfig::for_gamma(gamma)
        },
    )
}

fn hermite_set() -> Vec<PolyGaussian> {
    PolyGaussian::test_set(4)
}

const POINTS: [f64; 7] = [-2.5, -1.2, -0.3, 0.0, 0.6, 1.5, 2.8];

fn transmutation(rs: &RootSystem) -> VerificationReport {
    guarded("transmutation", |r| {
        let v = Intertwiner::new(rs)?;
        let d = rs.dimension();
        for n in 0..=MAX_DEGREE {
            let mut nonzero = 0usize;
            for nu in exponents_of_degree(d, n) {
                let p = RationalPoly::monomial(nu, q(1));
                let vp = v.apply(&p)?;
                for j in 0..d {
                    let lhs = v.operators().apply(j, &vp)?;
                    let rhs = v.apply(&p.derivative(j))?;
                    nonzero += (lhs - rhs).num_terms();
                }
            }
            r.push(Check::new(
                format!("transmutation-degree-{n}"),
                "T_j V_k p = V_k d_j p, exact",
                nonzero as f64,
                0.0,
            ));
        }
        r.set_env("max_degree", MAX_DEGREE);
        Ok(())
    })
}

fn normalization(rs: &RootSystem) -> VerificationReport {
    guarded("normalization", |r| {
        let one = RationalPoly::one(rs.dimension());
        let v1 = Intertwiner::new(rs)?.apply(&one)?;
        r.push(Check::new("v-of-one", "V_k(1) = 1, exact", (v1 - one).num_terms() as f64, 0.0));
        let gammas = tensor_gammas(rs)?;
        let mut worst = 0.0f64;
        for &g in &gammas {
            let v = LineIntertwiner::new(g)?;
            for x in [0.5, 1.0, 3.0, -2.0] {
                worst = worst.max((v.mu(x, None)?.mass() - 1.0).abs());
            }
        }
        r.push(Check::new(
            "mu-total-mass",
            "mu_x is a probability measure",
            worst,
            1e-10,
        ));
        Ok(())
    })
}

fn cross_engine(rs: &RootSystem) -> VerificationReport {
    guarded("cross-engine", |r| {
        let gammas = tensor_gammas(rs)?;
        let d = rs.dimension();
        let v = Intertwiner::new(rs)?;
        let points: Vec<Vec<f64>> = match d {
            1 => [-1.7, -0.6, 0.4, 1.3, 2.3].iter().map(|&x| vec![x]).collect(),
            _ => (0..4)
                .map(|i| (0..d).map(|j| 0.45 * (i as f64 + 1.0) * if (i + j) % 2 == 0 { 1.0 } else { -1.0 }).collect())
                .collect(),
        };
        let max_deg = if d == 1 { MAX_DEGREE } else { 6 };
        let mut worst = 0.0f64;
        for n in 0..=max_deg {
            for nu in exponents_of_degree(d, n) {
                let exact = v.monomial_image(&nu)?;
                let nu2 = nu.clone();
                let f = SampledFunction::new(d, DecayClass::PolynomialGrowth { order: n as f64 }, "monomial", move |x| {
                    x.iter().zip(&nu2).map(|(xi, &k)| xi.powi(k as i32)).product()
                });
                for x in &points {
                    let num = v_tensor(&gammas, &f, x)?;
                    let ex = exact.eval_f64(x);
                    let scale = ex.abs().max(f64::MIN_POSITIVE);
                    worst = worst.max((num - ex).abs() / scale);
                }
            }
        }
        r.push(Check::new(
            "numeric-vs-exact-monomials",
            "integral against mu_x equals exact V_k on monomials",
            worst,
            1e-10,
        ));
        if d == 1 {
            let g = gammas[0];
            let mut w = 0.0f64;
            for &x in &[-2.0, 0.5, 2.0] {
                let y2 = SampledFunction::line(DecayClass::PolynomialGrowth { order: 2.0 }, "y^2", |y| y * y);
                let num = LineIntertwiner::new(g)?.v(&y2, x)?;
                let ex = exact_monomial_image(rs, &[2], &[x])?;
                let closed = x * x / (2.0 * g + 1.0);
                w = w.max(((num - closed) / closed).abs()).max(((ex - closed) / closed).abs());
            }
            r.push(Check::new("v-of-y-squared", "V_k(y^2)(x) = x^2/(2g+1)", w, 1e-10));
        }
        Ok(())
    })
}

fn kernel(rs: &RootSystem, seed: u64) -> VerificationReport {
    guarded("kernel", |r| {
        let gammas = tensor_gammas(rs)?;
        let d = rs.dimension();
        r.set_env("samples", KERNEL_SAMPLES);
        r.set_env("series_terms", SERIES_TERMS);
        let cfg = KernelConfig {
            series_truncation: SERIES_TERMS,
            tolerance: 1e-12,
        };
        let series = KernelSeries::new(rs, cfg)?;
        let pairs = sample_pairs(seed, KERNEL_SAMPLES, 5.0);
        if d == 1 {
            let g = gammas[0];
            r.absorb(check_bounds(g, &pairs));
            let mut ser = 0.0f64;
            let mut lap = 0.0f64;
            let mut eig = 0.0f64;
            let v = LineIntertwiner::new(g)?;
            for &(x, y) in pairs.iter().take(100) {
                let (x, y) = (0.6 * x, 0.6 * y);
                let closed = kernel_1d_real(g, x, y)?;
                let s = series.eval(&[x], &[Complex64::new(y, 0.0)])?;
                ser = ser.max((s.re - closed).abs() / closed.abs());
                let osc = kernel_1d_oscillatory(g, x, y)?;
                let so = series.eval(&[x], &[Complex64::new(0.0, -y)])?;
                ser = ser.max((so - osc).norm() / osc.norm().max(1.0));
                let e = SampledFunction::line(DecayClass::PolynomialGrowth { order: 0.0 }, "exp", move |t| (y * t).exp());
                lap = lap.max((v.v(&e, x)? - closed).abs() / closed.abs());
                if x != 0.0 && y != 0.0 {
                    eig = eig.max(eigen_residual(g, x, y)?);
                }
            }
            r.push(Check::new("series-vs-closed-form", "Bessel closed form equals the intertwined exponential series", ser, 1e-10));
            r.push(Check::new("laplace-representation", "K(x, y) = int e^{y t} d mu_x(t)", lap, 1e-10));
            r.push(Check::new("eigenfunction", "T K(., y) = y K(., y)", eig, 1e-10));
            let mut curve = Curve::new(&["x", "re", "im"]);
            for i in 0..=200 {
                let x = -5.0 + 10.0 * i as f64 / 200.0;
                let k = kernel_1d(g, Complex64::new(0.0, x), Complex64::new(1.0, 0.0))?;
                curve.push(vec![x, k.re, k.im]);
            }
            r.add_curve("kernel-curve", curve);
        } else {
            let mut unit = 0.0f64;
            let mut at_zero = 0.0f64;
            let mut ser = 0.0f64;
            let mut rng_pts = pairs.chunks(d);
            for _ in 0..200 {
                let Some(chunk) = rng_pts.next() else { break };
                if chunk.len() < d {
                    break;
                }
                let x: Vec<f64> = chunk.iter().map(|p| 0.5 * p.0).collect();
                let y: Vec<f64> = chunk.iter().map(|p| 0.5 * p.1).collect();
                let ix: Vec<Complex64> = y.iter().map(|&v| Complex64::new(v, 0.0)).collect();
                let kiy = kernel_product(&gammas, &x, &y.iter().map(|&v| Complex64::new(0.0, v)).collect::<Vec<_>>())?;
                unit = unit.max(kiy.norm() - 1.0);
                let z = vec![Complex64::new(0.0, 0.0); d];
                at_zero = at_zero.max((kernel_product(&gammas, &x, &z)? - 1.0).norm());
                let closed = kernel_product(&gammas, &x, &ix)?;
                let s = series.eval(&x, &ix)?;
                ser = ser.max((s - closed).norm() / closed.norm());
            }
            r.push(Check::new("unit-bound", "|K(ix, y)| <= 1", unit.max(0.0), 1e-12));
            r.push(Check::new("at-zero", "K(x, 0) = 1", at_zero, 0.0));
            r.push(Check::new("series-vs-closed-form", "product of line kernels equals the series", ser, 1e-10));
        }
        Ok(())
    })
}

fn transform(rs: &RootSystem, grid_n: usize) -> VerificationReport {
    guarded("transform", |r| {
        if rs.dimension() > 1 {
            let gammas = tensor_gammas(rs)?;
            let d = gammas.len();
            let f = SampledFunction::new(d, DecayClass::Schwartz { radius: 9.0 }, "gaussian", |x| {
                (-0.5 * x.iter().map(|v| v * v).sum::<f64>()).exp()
            });
            let ys: Vec<Vec<f64>> = (0..5).map(|i| vec![0.5 * i as f64; d]).collect();
            let vals = dunkl_transform_nd(&gammas, &f, &ys, PlanConfig::default())?;
            let lam = gaussian_eigenvalue(rs.gamma_f64(), d, mehta_product(&gammas));
            let exact: Vec<f64> = ys.iter().map(|y| lam * (-0.5 * y.iter().map(|v| v * v).sum::<f64>()).exp()).collect();
            let re: Vec<f64> = vals.iter().map(|v| v.re).collect();
            r.push(Check::new("gaussian-eigenfunction", "F_D e^{-|x|^2/2} = 2^{g+d/2}/c_k e^{-|y|^2/2}", rel_linf(&re, &exact), 1e-8));
            return Ok(());
        }
        let g = line_gamma(rs)?;
        let plan = plan_for(g, grid_n)?;
        let gauss = PolyGaussian::hermite_gaussian(0).to_sampled();
        let lam = gaussian_eigenvalue(g, 1, plan.c_k);
        let ys: Vec<f64> = (0..=24).map(|i| -6.0 + 0.5 * i as f64).collect();
        let mut got = Vec::new();
        let mut exact = Vec::new();
        for &y in &ys {
            got.push(dunkl_transform(&gauss, y, &plan)?.re);
            exact.push(lam * (-0.5 * y * y).exp());
        }
        r.push(Check::new("gaussian-eigenfunction", "F_D e^{-x^2/2} = 2^{g+1/2}/c_k e^{-y^2/2}", rel_linf(&got, &exact), 1e-8));
        let v = LineIntertwiner::new(g)?;
        let mut rt = 0.0f64;
        let mut fac = 0.0f64;
        for pg in hermite_set() {
            let f = pg.to_sampled();
            let spec = DunklSpectrum::new(&f, &plan)?;
            let back: Vec<f64> = POINTS.iter().map(|&x| spec.inverse(x).map(|c| c.re)).collect::<Result<_>>()?;
            let orig: Vec<f64> = POINTS.iter().map(|&x| f.eval1(x)).collect();
            rt = rt.max(rel_linf(&back, &orig));
            let tvf = v.tv_many(&f, &plan.uniform.nodes)?;
            let mut a = Vec::new();
            let mut b = Vec::new();
            for &y in &[0.0, 0.8, -1.7, 3.1] {
                let classical: Complex64 = plan
                    .uniform
                    .nodes
                    .iter()
                    .zip(&plan.uniform.weights)
                    .zip(&tvf)
                    .map(|((&x, &w), &s)| w * s * Complex64::from_polar(1.0, -x * y))
                    .sum();
                let fd = dunkl_transform(&f, y, &plan)?;
                a.extend([classical.re, classical.im]);
                b.extend([fd.re, fd.im]);
            }
            fac = fac.max(rel_linf(&a, &b));
        }
        r.push(Check::new("round-trip", "F_D^{-1} F_D f = f on x^n e^{-x^2/2}, n <= 4", rt, 1e-6));
        r.push(Check::new("factorization", "F_D f = F(tV_k f)", fac, 1e-6));
        // the classical transform on the same box, as a sanity anchor
        let cl = classical_fourier(&gauss, 1.0, &plan).re;
        let exact_cl = (2.0 * std::f64::consts::PI).sqrt() * (-0.5f64).exp();
        r.push(Check::new("classical-gaussian", "F e^{-x^2/2} = sqrt(2 pi) e^{-y^2/2}", ((cl - exact_cl) / exact_cl).abs(), 1e-10));
        Ok(())
    })
}

fn inversion(rs: &RootSystem, grid_n: usize) -> VerificationReport {
    guarded("inversion", |r| {
        let g = line_gamma(rs)?;
        if g == 0.0 {
            return Err(DunklError::Unsupported("gamma = 0 makes every inverse the identity".into()));
        }
        let plan = plan_for(g, grid_n)?;
        let v = LineIntertwiner::new(g)?;
        let integer = integer_gamma(g).is_ok();
        let mut p_vs_q = 0.0f64;
        let mut rt_p = 0.0f64;
        let mut rt_q = 0.0f64;
        let mut rt_dual = 0.0f64;
        let mut mult_vs_local = 0.0f64;
        let mut edge = 0.0f64;
        for pg in hermite_set() {
            let f = pg.to_sampled();
            let radius = f.require_rapid_decay()?;
            let orig: Vec<f64> = POINTS.iter().map(|&x| f.eval1(x)).collect();
            let via_p = InverseViaP::new(&f, &plan)?;
            edge = edge.max(via_p.edge_ratio);
            let a: Vec<f64> = POINTS.iter().map(|&x| via_p.eval(x)).collect();
            let inv_p = via_p.to_sampled(g, radius);
            let back = v.v_many(&inv_p, &POINTS)?;
            rt_p = rt_p.max(rel_linf(&back, &orig));
            if integer {
                let ex = ExactLine::PolyGaussian(pg.clone());
                let b: Vec<f64> = POINTS.iter().map(|&x| inv_v_via_q(g, &ex, x)).collect::<Result<_>>()?;
                p_vs_q = p_vs_q.max(rel_linf(&a, &b));
                let qf = ex.local_q(integer_gamma(g)?)?;
                let tvq = SampledFunction::line(DecayClass::Schwartz { radius }, "tV Q f", {
                    let v = v.clone();
                    move |x| v.tv(&qf, x).unwrap_or(f64::NAN)
                });
                let back = v.v_many(&tvq, &POINTS)?;
                rt_q = rt_q.max(rel_linf(&back, &orig));
                let local = inv_tv_local(g, &ex)?;
                let back = v.tv_many(&local, &POINTS)?;
                rt_dual = rt_dual.max(rel_linf(&back, &orig));
                let m: Vec<f64> = POINTS.iter().map(|&x| inv_tv_via_vkp(&f, x, &plan)).collect::<Result<_>>()?;
                let l: Vec<f64> = POINTS.iter().map(|&x| local.eval1(x)).collect();
                mult_vs_local = mult_vs_local.max(rel_linf(&m, &l));
            }
        }
        r.set_env("test_set", "x^n exp(-x^2/2), n <= 4");
        r.set_env("points", POINTS);
        r.set_env("max_edge_ratio", edge);
        r.push(Check::new("round-trip-v-after-p-tv", "V_k (P tV_k f) = f", rt_p, 1e-5));
        if integer {
            r.push(Check::new("inverse-p-tv-vs-tv-q", "P tV_k f = tV_k Q f", p_vs_q, 1e-5));
            r.push(Check::new("round-trip-v-after-tv-q", "V_k (tV_k Q f) = f", rt_q, 1e-5));
            r.push(Check::new("round-trip-tv-after-v-p", "tV_k (V_k P f) = f", rt_dual, 1e-5));
            r.push(Check::new(
                "dual-inverse-multiplier-vs-local",
                "V_k P f with P as multiplier equals V_k P f with P local",
                mult_vs_local,
                1e-5,
            ));
        } else {
            r.set_env("q_paths", "skipped: local Q needs integer gamma");
        }
        Ok(())
    })
}

fn representing(rs: &RootSystem, grid_n: usize) -> VerificationReport {
    guarded("representing", |r| {
        let g = line_gamma(rs)?;
        integer_gamma(g)?;
        let plan = plan_for(g, grid_n)?;
        let xs = [-1.8, -0.7, 0.4, 1.1, 2.4];
        let mut eta = 0.0f64;
        let mut z = 0.0f64;
        let mut origin = 0.0f64;
        for pg in hermite_set() {
            let ex = ExactLine::PolyGaussian(pg.clone());
            let f = pg.to_sampled();
            let inv = InverseViaP::new(&f, &plan)?;
            let a: Vec<f64> = xs.iter().map(|&x| eta_pairing(g, x, &ex)).collect::<Result<_>>()?;
            let b: Vec<f64> = xs.iter().map(|&x| inv.eval(x)).collect();
            eta = eta.max(rel_linf(&a, &b));
            let a: Vec<f64> = xs.iter().map(|&x| z_pairing(g, x, &ex)).collect::<Result<_>>()?;
            let b: Vec<f64> = xs.iter().map(|&x| inv_tv_via_vkp(&f, x, &plan)).collect::<Result<_>>()?;
            z = z.max(rel_linf(&a, &b));
            origin = origin.max((eta_pairing(g, 0.0, &ex)? - f.eval1(0.0)).abs());
        }
        r.push(Check::new("eta-represents-inverse", "<tQ nu_x, f> = V_k^{-1} f(x)", eta, 1e-5));
        r.push(Check::new("z-represents-dual-inverse", "<tP mu_x, f> = tV_k^{-1} f(x)", z, 1e-5));
        r.push(Check::new("eta-at-origin", "<eta_0, f> = f(0)", origin, 1e-8));
        let mut sup = 0.0f64;
        for b in [Bump::new(2.0, 0.8), Bump::new(-1.5, 0.4)] {
            let b = ExactLine::Bump(b);
            for x in [0.3, -0.6, 0.9] {
                sup = sup.max(eta_pairing(g, x, &b)?.abs());
            }
        }
        r.push(Check::new(
            "eta-support",
            "<eta_x, f> = 0 when f vanishes on [-|x|, |x|]",
            sup,
            1e-8,
        ));
        Ok(())
    })
}

fn support(rs: &RootSystem) -> VerificationReport {
    guarded("support", |r| {
        let g = line_gamma(rs)?;
        let delta = 0.05;
        r.set_env("delta", delta);
        let bumps = [Bump::new(0.0, 1.0), Bump::new(0.25, 0.75)];
        let outside: Vec<f64> = (0..=80)
            .flat_map(|i| {
                let s = 1.0 + 2.0 * i as f64 / 80.0;
                [s, -s]
            })
            .collect();
        let far: Vec<f64> = (0..=60)
            .flat_map(|i| {
                let s = 1.0 + delta + 2.0 * i as f64 / 60.0;
                [s, -s]
            })
            .collect();
        let inside: Vec<f64> = (0..=36).map(|i| -0.9 + 0.05 * i as f64).collect();
        let v = LineIntertwiner::new(g)?;
        let mut p_out = 0.0f64;
        let mut tv_out = 0.0f64;
        let mut tv_in_bad = 0usize;
        for b in &bumps {
            let f = b.to_sampled();
            if let Ok(k) = integer_gamma(g) {
                let pf = ExactLine::Bump(b.clone()).local_p(k)?;
                for &x in &outside {
                    p_out = p_out.max(pf.eval1(x).abs());
                }
            }
            for y in v.tv_many(&f, &far)? {
                tv_out = tv_out.max(y.abs());
            }
            tv_in_bad += v.tv_many(&f, &inside)?.iter().filter(|&&y| !(y > 0.0)).count();
        }
        if integer_gamma(g).is_ok() {
            r.push(Check::new("p-local-outside-support", "P f = 0 off supp f (integer case)", p_out, 0.0));
        }
        r.push(Check::new("tv-outside-support", "tV_k f = 0 outside [-1-delta, 1+delta]", tv_out, 1e-8));
        r.push(Check::new(
            "tv-inside-support",
            "tV_k f > 0 inside the support of a positive bump",
            tv_in_bad as f64,
            0.0,
        ));
        Ok(())
    })
}

fn translation(rs: &RootSystem, grid_n: usize) -> VerificationReport {
    guarded("translation", |r| {
        let g = line_gamma(rs)?;
        if g == 0.0 {
            return Err(DunklError::Unsupported("the measure paths need gamma > 0".into()));
        }
        let plan = plan_for(g, grid_n)?;
        let integer = integer_gamma(g).is_ok();
        let pairs = [(0.6, -0.4), (1.1, 0.9), (-0.8, 1.3)];
        let mut zero = 0.0f64;
        let mut p_path = 0.0f64;
        let mut q_path = 0.0f64;
        for pg in hermite_set() {
            let f = pg.to_sampled();
            let t = SpectralTranslator::new(&f, &plan)?;
            let a: Vec<f64> = POINTS.iter().map(|&y| t.eval(0.0, y)).collect::<Result<_>>()?;
            let b: Vec<f64> = POINTS.iter().map(|&y| f.eval1(y)).collect();
            zero = zero.max(a.iter().zip(&b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max));
            let spectral: Vec<f64> = pairs.iter().map(|&(x, y)| t.eval(x, y)).collect::<Result<_>>()?;
            let via_p: Vec<f64> = pairs.iter().map(|&(x, y)| translate_via_p(&f, x, y, &plan)).collect::<Result<_>>()?;
            p_path = p_path.max(rel_linf(&via_p, &spectral));
            if integer {
                let ex = ExactLine::PolyGaussian(pg.clone());
                let via_q: Vec<f64> = pairs.iter().map(|&(x, y)| translate_via_q(g, &ex, x, y)).collect::<Result<_>>()?;
                q_path = q_path.max(rel_linf(&via_q, &spectral));
            }
        }
        r.push(Check::new("tau-zero-identity", "tau_0 f = f", zero, 1e-8));
        r.push(Check::new("translation-spectral-vs-p-tv", "spectral tau_x f(y) = mu_x * mu_y (P tV_k f)", p_path, 1e-5));
        if integer {
            r.push(Check::new("translation-spectral-vs-tv-q", "spectral tau_x f(y) = mu_x * mu_y (tV_k Q f)", q_path, 1e-5));
        }
        let ts = [0.0, 0.5, 1.3, -2.2, 3.0];
        let mut conv = 0.0f64;
        for (fa, fb) in [(0u32, 1u32), (1, 2), (2, 2)] {
            let f = PolyGaussian::hermite_gaussian(fa).to_sampled();
            let h = PolyGaussian::hermite_gaussian(fb).to_sampled();
            let c = Convolver::new(&f, &h, &plan)?;
            let lhs = transform_of_convolution(&c, &ts, &plan)?;
            let mut a = Vec::new();
            let mut b = Vec::new();
            for (&t, l) in ts.iter().zip(lhs) {
                let p = dunkl_transform(&f, t, &plan)? * dunkl_transform(&h, t, &plan)?;
                a.extend([l.re, l.im]);
                b.extend([p.re, p.im]);
            }
            conv = conv.max(rel_linf(&a, &b));
        }
        r.push(Check::new("convolution-theorem", "F_D(f * g) = F_D f F_D g", conv, 1e-5));
        // S = g omega with phi translated, the other order of the same law
        let s = ConcreteDistribution::WeightedFunction(PolyGaussian::hermite_gaussian(2).to_sampled());
        let phi = PolyGaussian::hermite_gaussian(1).to_sampled();
        let ConcreteDistribution::WeightedFunction(gfun) = &s else { unreachable!() };
        let c = Convolver::new(&phi, gfun, &plan)?;
        let lhs = transform_of_convolution(&c, &ts, &plan)?;
        let mut a = Vec::new();
        let mut b = Vec::new();
        for (&t, l) in ts.iter().zip(lhs) {
            let p = dunkl_transform(&phi, t, &plan)? * s.transform(t, &plan)?;
            a.extend([l.re, l.im]);
            b.extend([p.re, p.im]);
        }
        r.push(Check::new("distribution-law", "F_D((S * phi) omega) = F_D phi F_D S for S = g omega", rel_linf(&a, &b), 1e-5));
        let mut pm = 0.0f64;
        for &x in &[-1.1, 0.4, 2.0] {
            let v = distribution_convolve(&ConcreteDistribution::PointMass(0.0), &phi, x, &plan)?;
            pm = pm.max((v - phi.eval1(x)).abs());
        }
        r.push(Check::new("point-mass-at-origin", "delta_0 * phi = phi", pm, 1e-8));
        Ok(())
    })
}

fn approx_identity(rs: &RootSystem, grid_n: usize) -> VerificationReport {
    guarded("approx-identity", |r| {
        let g = line_gamma(rs)?;
        let plan = plan_for(g, grid_n)?;
        let tests: Vec<SampledFunction> = PolyGaussian::test_set(2).iter().map(|p| p.to_sampled()).collect();
        let s = PolyGaussian::hermite_gaussian(0).to_sampled();
        r.absorb(approx_identity_check(&s, &tests, &DEFAULT_EPSILONS, &plan));
        Ok(())
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_suite_is_a_usage_error() {
        let cfg = SuiteConfig::preset("nope", "z2:1").unwrap();
        assert!(matches!(run_suite(&cfg), Err(DunklError::Usage(_))));
    }

    #[test]
    fn tolerance_override_fails_loudly() {
        let mut cfg = SuiteConfig::preset("transmutation", "z2:1").unwrap();
        assert!(run_suite(&cfg).unwrap().passed());
        cfg.tol = Some(1e-300);
        let r = run_suite(&cfg).unwrap();
        assert!(r.passed(), "exact checks have zero residual");
        cfg.suite = "cross-engine".into();
        let r = run_suite(&cfg).unwrap();
        assert!(!r.passed());
        assert!(r.checks.iter().all(|c| c.residual.is_some()));
    }

    #[test]
    fn non_product_group_is_reported_not_fatal() {
        let cfg = SuiteConfig::preset("cross-engine", "b2:1,1").unwrap();
        let r = run_suite(&cfg).unwrap();
        assert!(!r.passed());
        assert!(r.checks[0].detail.as_deref().unwrap_or("").contains("product"));
    }

    #[test]
    fn config_file_round_trip() {
        let c = ConfigFile::parse(r#"{"suite": "kernel", "preset": "z2:2", "seed": 3}"#).unwrap();
        assert_eq!(c.root_system().unwrap().unwrap().gamma_f64(), 2.0);
        assert!(ConfigFile::parse(r#"{"suite": "kernel", "bogus": 1}"#).is_err());
        let both = ConfigFile::parse(r#"{"preset": "z2:1", "root_system": {}}"#).unwrap();
        assert!(both.root_system().is_err());
    }
}
