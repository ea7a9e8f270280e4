//! The intertwining operator `V_k` and its dual `tV_k` on the line as
//! integrals against explicit measures, the three inverse formulas and the
//! representing pairings.
//!
//! With `C = Gamma(g + 1/2) / (sqrt(pi) Gamma(g))`,
//!
//! ```text
//! V f(x)  = C int_{-1}^{1} f(tx) (1 - t)^{g-1} (1 + t)^g dt
//! tV f(y) = int_{|x| >= |y|} f(x) K(x, y) |x|^{2g} dx
//! ```
//!
//! where `K(x, y) = C |x|^{-2g} (|x| - sx y)^{g-1} (|x| + sx y)^g` on
//! `|y| < |x|` and `sx` is the sign of `x`. The sign makes `V` map `y` to
//! `x / (2g + 1)` for negative `x` as well.
//!
//! `Z_2^d` acts axis by axis, so the tensor versions are products of the
//! one-dimensional measures.

use rayon::prelude::*;

use crate::error::{DunklError, Result};
use crate::function::{Bump, DecayClass, PolyGaussian, SampledFunction};
use crate::quadrature::{GaussRule, QuadratureGrid};
use crate::rational::to_f64;
use crate::rootsys::RootSystem;
use crate::special::ln_gamma;
use crate::transform::{p_prefactor_1d, MultiplierP, TransformPlan};

/// `Gamma(g + 1/2) / (sqrt(pi) Gamma(g))`.
pub fn density_constant(gamma: f64) -> f64 {
    (ln_gamma(gamma + 0.5) - 0.5 * std::f64::consts::PI.ln() - ln_gamma(gamma)).exp()
}

/// Density of `mu_x` at `y`.
pub fn mu_density(gamma: f64, x: f64, y: f64) -> Result<f64> {
    if !(gamma > 0.0) {
        return Err(DunklError::InvalidArgument(format!(
            "mu_x has a density only for gamma > 0, got {gamma}"
        )));
    }
    if x == 0.0 {
        return Err(DunklError::InvalidArgument(
            "mu_0 is the point mass at 0 and has no density".into(),
        ));
    }
    let ax = x.abs();
    if y.abs() >= ax {
        return Ok(0.0);
    }
    let sy = x.signum() * y;
    Ok(density_constant(gamma) * ax.powf(-2.0 * gamma) * (ax - sy).powf(gamma - 1.0) * (ax + sy).powf(gamma))
}

/// Nodes and weights of a positive measure.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct DiscreteMeasure {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl DiscreteMeasure {
    pub fn point(x: f64) -> Self {
        Self {
            nodes: vec![x],
            weights: vec![1.0],
        }
    }

    pub fn mass(&self) -> f64 {
        self.weights.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| if w == 0.0 { 0.0 } else { w * f(x) })
            .sum()
    }

    fn push_grid(&mut self, g: &QuadratureGrid, map: impl Fn(f64, f64) -> (f64, f64)) {
        for (&s, &w) in g.nodes.iter().zip(&g.weights) {
            let (x, w) = map(s, w);
            self.nodes.push(x);
            self.weights.push(w);
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IntertwineConfig {
    /// Panel width in the original variable.
    pub panel: f64,
    pub per_panel: usize,
    /// Gauss–Jacobi nodes for `V` of functions without a declared radius.
    pub poly_nodes: usize,
    /// Legendre panels on `u in (0, 1]` for algebraic tails `x = B/u`.
    pub tail_panels: usize,
}

impl Default for IntertwineConfig {
    fn default() -> Self {
        Self {
            panel: 1.0,
            per_panel: 20,
            poly_nodes: 40,
            tail_panels: 8,
        }
    }
}

/// `V_k` and `tV_k` on the line for a fixed `gamma >= 0`.
#[derive(Clone, Debug)]
pub struct LineIntertwiner {
    pub gamma: f64,
    pub config: IntertwineConfig,
    c: f64,
}

impl LineIntertwiner {
    pub fn new(gamma: f64) -> Result<Self> {
        Self::with_config(gamma, IntertwineConfig::default())
    }

    pub fn with_config(gamma: f64, config: IntertwineConfig) -> Result<Self> {
        if !(gamma >= 0.0) || !gamma.is_finite() {
            return Err(DunklError::InvalidArgument(format!("gamma = {gamma}")));
        }
        let c = if gamma > 0.0 { density_constant(gamma) } else { 0.0 };
        Ok(Self { gamma, config, c })
    }

    /// `mu_x`, discretized for integrands whose features live within
    /// `radius` of the origin (`None` for polynomial-like integrands).
    pub fn mu(&self, x: f64, radius: Option<f64>) -> Result<DiscreteMeasure> {
        if x == 0.0 || self.gamma == 0.0 {
            return Ok(DiscreteMeasure::point(x));
        }
        let g = self.gamma;
        let cfg = &self.config;
        let ax = x.abs();
        let mut m = DiscreteMeasure::default();
        match radius {
            Some(r) if ax > 2.0 * r => {
                // s = t x, smooth weight because |s / x| <= 1/2
                let panels = ((2.0 * r) / cfg.panel).ceil().max(1.0) as usize;
                let h = 2.0 * r / panels as f64;
                let leg = GaussRule::legendre(cfg.per_panel);
                for k in 0..panels {
                    let lo = -r + k as f64 * h;
                    for (u, w) in leg.nodes.iter().zip(&leg.weights) {
                        let s = lo + 0.5 * h * (u + 1.0);
                        let t = s / x;
                        m.nodes.push(s);
                        m.weights.push(self.c / ax * 0.5 * h * w * (1.0 - t).powf(g - 1.0) * (1.0 + t).powf(g));
                    }
                }
            }
            Some(_) => {
                let panels = ((2.0 * ax) / cfg.panel).ceil().max(1.0) as usize;
                let grid = QuadratureGrid::jacobi_composite(-1.0, 1.0, g - 1.0, g, panels, cfg.per_panel)?;
                m.push_grid(&grid, |t, w| (t * x, self.c * w));
            }
            None => {
                let grid = QuadratureGrid::jacobi(-1.0, 1.0, cfg.poly_nodes, g - 1.0, g)?;
                m.push_grid(&grid, |t, w| (t * x, self.c * w));
            }
        }
        Ok(m)
    }

    /// `V_k f(x) = int f d mu_x`.
    pub fn v(&self, f: &SampledFunction, x: f64) -> Result<f64> {
        let radius = match f.decay {
            DecayClass::PolynomialGrowth { .. } => None,
            d => d.radius(),
        };
        Ok(self.mu(x, radius)?.integrate(|y| f.eval1(y)))
    }

    /// `nu_y = K(., y) omega_k`, discretized for integrands of the given
    /// decay class.
    pub fn nu(&self, y: f64, decay: DecayClass) -> Result<DiscreteMeasure> {
        if self.gamma == 0.0 {
            return Ok(DiscreteMeasure::point(y));
        }
        let (b, tail) = match decay {
            DecayClass::Schwartz { radius } | DecayClass::Compact { radius } => (radius, false),
            DecayClass::AlgebraicDecay { order, radius } => {
                if order <= 2.0 * self.gamma {
                    return Err(DunklError::Accuracy {
                        what: format!("tV of a function decaying like |x|^-{order}: integral diverges"),
                        residual: f64::INFINITY,
                    });
                }
                (radius.max(2.0 * y.abs()).max(1.0), true)
            }
            DecayClass::PolynomialGrowth { .. } => {
                return Err(DunklError::InvalidArgument(
                    "tV needs a decaying function, got polynomial growth".into(),
                ))
            }
        };
        let g = self.gamma;
        let cfg = &self.config;
        let a = y.abs();
        let sy = if y < 0.0 { -1.0 } else { 1.0 };
        let mut m = DiscreteMeasure::default();
        for sigma in [1.0, -1.0] {
            // (s - e a)^{g-1} (s + e a)^g with e = sigma sgn(y)
            let e = sigma * sy;
            let (p, q) = if e > 0.0 { (g - 1.0, g) } else { (g, g - 1.0) };
            if a < b {
                if a == 0.0 {
                    let grid = QuadratureGrid::power_at_left(0.0, b, 2.0 * g - 1.0, cfg.panel, cfg.per_panel)?;
                    m.push_grid(&grid, |s, w| (sigma * s, self.c * w));
                } else {
                    let grid = QuadratureGrid::graded_power_at_left(a, b, p, 2.0 * a, cfg.panel, cfg.per_panel)?;
                    m.push_grid(&grid, |s, w| (sigma * s, self.c * w * (s + a).powf(q)));
                }
            }
            if tail {
                let start = b.max(a);
                let leg = GaussRule::legendre(cfg.per_panel);
                let h = 1.0 / cfg.tail_panels as f64;
                for k in 0..cfg.tail_panels {
                    for (u, w) in leg.nodes.iter().zip(&leg.weights) {
                        let u = k as f64 * h + 0.5 * h * (u + 1.0);
                        let s = start / u;
                        let jac = start / (u * u);
                        m.nodes.push(sigma * s);
                        m.weights
                            .push(self.c * 0.5 * h * w * jac * (s - a).powf(p) * (s + a).powf(q));
                    }
                }
            }
        }
        Ok(m)
    }

    /// `tV_k f(y) = int f d nu_y`.
    pub fn tv(&self, f: &SampledFunction, y: f64) -> Result<f64> {
        Ok(self.nu(y, f.decay)?.integrate(|x| f.eval1(x)))
    }

    /// `tV_k f` at several points, in parallel.
    pub fn tv_many(&self, f: &SampledFunction, ys: &[f64]) -> Result<Vec<f64>> {
        ys.par_iter().map(|&y| self.tv(f, y)).collect()
    }

    /// `V_k f` at several points, in parallel.
    pub fn v_many(&self, f: &SampledFunction, xs: &[f64]) -> Result<Vec<f64>> {
        xs.par_iter().map(|&x| self.v(f, x)).collect()
    }
}

/// `V_k f(x)` on the line.
pub fn v_k_num(gamma: f64, f: &SampledFunction, x: f64) -> Result<f64> {
    LineIntertwiner::new(gamma)?.v(f, x)
}

/// `tV_k f(y)` on the line.
pub fn tv_k_num(gamma: f64, f: &SampledFunction, y: f64) -> Result<f64> {
    f.require_rapid_decay()?;
    LineIntertwiner::new(gamma)?.tv(f, y)
}

/// `tV_k` of `e^{-x^2/2}`: `2^g Gamma(g + 1/2) / sqrt(pi) e^{-y^2/2}`.
pub fn tv_gaussian_closed_form(gamma: f64, y: f64) -> f64 {
    (gamma * 2f64.ln() + ln_gamma(gamma + 0.5) - 0.5 * std::f64::consts::PI.ln() - 0.5 * y * y).exp()
}

/// A function on the line with exact derivatives, so that `P` and `Q` can be
/// applied in their local form when `gamma` is a positive integer.
#[derive(Clone, Debug)]
pub enum ExactLine {
    PolyGaussian(PolyGaussian),
    Bump(Bump),
}

impl ExactLine {
    pub fn sampled(&self) -> SampledFunction {
        match self {
            ExactLine::PolyGaussian(p) => p.to_sampled(),
            ExactLine::Bump(b) => b.to_sampled(),
        }
    }

    pub fn label(&self) -> String {
        self.sampled().label
    }

    /// Quadrature panel fine enough to resolve the high derivatives taken
    /// by the local operators. Bump derivatives live on a scale of a few
    /// percent of the width.
    pub fn panel(&self) -> f64 {
        match self {
            ExactLine::PolyGaussian(_) => IntertwineConfig::default().panel,
            ExactLine::Bump(b) => (b.width / 40.0).min(IntertwineConfig::default().panel),
        }
    }

    /// An intertwiner whose panels resolve this function's local images.
    pub fn intertwiner(&self, gamma: f64) -> Result<LineIntertwiner> {
        LineIntertwiner::with_config(
            gamma,
            IntertwineConfig {
                panel: self.panel(),
                ..IntertwineConfig::default()
            },
        )
    }

    /// `P f = pi c^2 / 2^{2g} (-1)^g f^{(2g)}`.
    pub fn local_p(&self, gamma: u32) -> Result<SampledFunction> {
        let pref = p_prefactor_1d(gamma as f64);
        match self {
            ExactLine::PolyGaussian(p) => {
                let rs = z2(gamma)?;
                let scale = rs
                    .p_prefactor_exact()
                    .ok_or_else(|| DunklError::Invariant("no exact prefactor for z2".into()))?;
                let mut out = p.p_unscaled(&rs)?.scale(&scale).to_sampled();
                out.label = format!("P[{}]", self.label());
                Ok(out)
            }
            ExactLine::Bump(b) => {
                let order = 2 * gamma as usize;
                if order > b.max_order() {
                    return Err(DunklError::Unsupported(format!("bump derivative of order {order}")));
                }
                let sign = if gamma % 2 == 1 { -1.0 } else { 1.0 };
                let me = b.clone();
                Ok(SampledFunction::line(
                    b.to_sampled().decay,
                    format!("P[{}]", self.label()),
                    move |x| sign * pref * me.derivative(order, x),
                ))
            }
        }
    }

    /// `Q f = pi c^2 / 2^{2g} (-1)^g T^{2g} f`. For bumps the difference
    /// quotient is singular at the origin, where the value is `NaN`.
    pub fn local_q(&self, gamma: u32) -> Result<SampledFunction> {
        let pref = p_prefactor_1d(gamma as f64);
        match self {
            ExactLine::PolyGaussian(p) => {
                let rs = z2(gamma)?;
                let scale = rs
                    .p_prefactor_exact()
                    .ok_or_else(|| DunklError::Invariant("no exact prefactor for z2".into()))?;
                let mut out = p.q_unscaled(&rs)?.scale(&scale).to_sampled();
                out.label = format!("Q[{}]", self.label());
                Ok(out)
            }
            ExactLine::Bump(b) => {
                let order = 2 * gamma as usize;
                if order > b.max_order() {
                    return Err(DunklError::Unsupported(format!("bump derivative of order {order}")));
                }
                let sign = if gamma % 2 == 1 { -1.0 } else { 1.0 };
                let me = b.clone();
                let g = gamma as f64;
                Ok(SampledFunction::line(
                    b.to_sampled().decay,
                    format!("Q[{}]", self.label()),
                    move |x| {
                        let plus = me.derivatives(x, order);
                        let minus = me.derivatives(-x, order);
                        crate::function::dunkl_power_1d(g, order, &plus, &minus, x)
                            .map(|v| sign * pref * v)
                            .unwrap_or(f64::NAN)
                    },
                ))
            }
        }
    }
}

fn z2(gamma: u32) -> Result<RootSystem> {
    RootSystem::preset(&format!("z2:{gamma}"))
}

/// `gamma` as a positive integer, or an unsupported-case error.
pub fn integer_gamma(gamma: f64) -> Result<u32> {
    if gamma >= 1.0 && gamma.fract() == 0.0 && gamma <= 64.0 {
        Ok(gamma as u32)
    } else {
        Err(DunklError::Unsupported(format!(
            "the local form of Q needs a positive integer gamma, got {gamma}"
        )))
    }
}

/// `V_k^{-1} f = P tV_k f`: `tV_k f` is sampled on the plan's uniform box and
/// `P` applied as a Fourier multiplier.
pub struct InverseViaP {
    multiplier: MultiplierP,
    /// `|tV_k f|` at the box edge relative to its maximum.
    pub edge_ratio: f64,
}

impl InverseViaP {
    pub fn new(f: &SampledFunction, plan: &TransformPlan) -> Result<Self> {
        f.require_rapid_decay()?;
        let v = LineIntertwiner::new(plan.gamma)?;
        let samples = v.tv_many(f, &plan.uniform.nodes)?;
        let multiplier = MultiplierP::from_samples(plan, &samples);
        Ok(Self {
            edge_ratio: multiplier.edge_ratio,
            multiplier,
        })
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.multiplier.eval(x)
    }

    /// The inverse image as a function; decays like `|x|^{-1-2g}` in general.
    pub fn to_sampled(self, gamma: f64, radius: f64) -> SampledFunction {
        let decay = if gamma.fract() == 0.0 {
            DecayClass::Schwartz { radius }
        } else {
            DecayClass::AlgebraicDecay {
                order: 1.0 + 2.0 * gamma,
                radius,
            }
        };
        SampledFunction::line(decay, "P tV f", move |x| self.eval(x))
    }
}

/// `V_k^{-1} f(x) = P tV_k f(x)`.
pub fn inv_v_via_p(f: &SampledFunction, x: f64, plan: &TransformPlan) -> Result<f64> {
    Ok(InverseViaP::new(f, plan)?.eval(x))
}

/// `tV_k^{-1} f(x) = V_k P f(x)`, with `P` as a Fourier multiplier.
pub fn inv_tv_via_vkp(f: &SampledFunction, x: f64, plan: &TransformPlan) -> Result<f64> {
    let r = f.require_rapid_decay()?;
    let m = MultiplierP::new(plan, |t| f.eval1(t));
    let pf = SampledFunction::line(DecayClass::Schwartz { radius: r }, "P f", move |t| m.eval(t));
    // V only samples P f on [-|x|, |x|]; the radius only selects the grid
    LineIntertwiner::new(plan.gamma)?.v(&pf, x)
}

/// `V_k^{-1} f(x) = tV_k Q f(x)` with `Q` in local form (integer `gamma`).
pub fn inv_v_via_q(gamma: f64, f: &ExactLine, x: f64) -> Result<f64> {
    let g = integer_gamma(gamma)?;
    let qf = f.local_q(g)?;
    f.intertwiner(gamma)?.tv(&qf, x)
}

/// `<eta_x, f> = <nu_x, Q f>`.
pub fn eta_pairing(gamma: f64, x: f64, f: &ExactLine) -> Result<f64> {
    let g = integer_gamma(gamma)?;
    let qf = f.local_q(g)?;
    let nu = f.intertwiner(gamma)?.nu(x, qf.decay)?;
    Ok(nu.integrate(|t| qf.eval1(t)))
}

/// `<Z_x, f> = <mu_x, P f>` with `P` in local form (integer `gamma`).
pub fn z_pairing(gamma: f64, x: f64, f: &ExactLine) -> Result<f64> {
    let g = integer_gamma(gamma)?;
    let pf = f.local_p(g)?;
    let mu = f.intertwiner(gamma)?.mu(x, pf.decay.radius())?;
    Ok(mu.integrate(|t| pf.eval1(t)))
}

/// `tV_k^{-1} f` in local form, `V_k P f`. For integer `gamma` it keeps the
/// decay class of `f`; past the radius its samples are rounding noise.
pub fn inv_tv_local(gamma: f64, f: &ExactLine) -> Result<SampledFunction> {
    let g = integer_gamma(gamma)?;
    let pf = f.local_p(g)?;
    let v = f.intertwiner(gamma)?;
    Ok(SampledFunction::line(
        f.sampled().decay,
        format!("V P [{}]", f.label()),
        move |x| v.v(&pf, x).unwrap_or(f64::NAN),
    ))
}

/// `int (T f) g omega` and `int f (T g) omega` for bumps on the line.
pub fn antisymmetry_pair(gamma: f64, f: &Bump, g: &Bump) -> Result<(f64, f64)> {
    let r = [f.support(), g.support()]
        .iter()
        .fold(0.0f64, |m, &(lo, hi)| m.max(lo.abs()).max(hi.abs()));
    let grid = QuadratureGrid::abs_power(r, 2.0 * gamma, r / 40.0, 20)?;
    let t = |b: &Bump, x: f64| -> Result<f64> {
        crate::function::dunkl_power_1d(gamma, 1, &b.derivatives(x, 1), &b.derivatives(-x, 1), x)
    };
    let mut lhs = 0.0;
    let mut rhs = 0.0;
    for (&x, &w) in grid.nodes.iter().zip(&grid.weights) {
        lhs += w * t(f, x)? * g.eval(x);
        rhs += w * f.eval(x) * t(g, x)?;
    }
    Ok((lhs, -rhs))
}

/// Product of per-axis measures.
fn tensor_integrate(measures: &[DiscreteMeasure], f: &SampledFunction) -> f64 {
    let d = measures.len();
    let mut idx = vec![0usize; d];
    let mut x = vec![0.0; d];
    let mut acc = 0.0;
    if measures.iter().any(|m| m.is_empty()) {
        return 0.0;
    }
    loop {
        let mut w = 1.0;
        for j in 0..d {
            x[j] = measures[j].nodes[idx[j]];
            w *= measures[j].weights[idx[j]];
        }
        if w != 0.0 {
            acc += w * f.eval(&x);
        }
        let mut j = d;
        loop {
            if j == 0 {
                return acc;
            }
            j -= 1;
            idx[j] += 1;
            if idx[j] < measures[j].len() {
                break;
            }
            idx[j] = 0;
        }
    }
}

/// `V_k f(x)` for `Z_2^d` with per-axis `gamma_j`.
pub fn v_tensor(gammas: &[f64], f: &SampledFunction, x: &[f64]) -> Result<f64> {
    if gammas.len() != x.len() || f.dim() != x.len() {
        return Err(DunklError::InvalidArgument("dimension mismatch".into()));
    }
    let radius = match f.decay {
        DecayClass::PolynomialGrowth { .. } => None,
        d => d.radius(),
    };
    let ms = gammas
        .iter()
        .zip(x)
        .map(|(&g, &xi)| LineIntertwiner::new(g)?.mu(xi, radius))
        .collect::<Result<Vec<_>>>()?;
    Ok(tensor_integrate(&ms, f))
}

/// `tV_k f(y)` for `Z_2^d` with per-axis `gamma_j`.
pub fn tv_tensor(gammas: &[f64], f: &SampledFunction, y: &[f64]) -> Result<f64> {
    if gammas.len() != y.len() || f.dim() != y.len() {
        return Err(DunklError::InvalidArgument("dimension mismatch".into()));
    }
    f.require_rapid_decay()?;
    let ms = gammas
        .iter()
        .zip(y)
        .map(|(&g, &yi)| LineIntertwiner::new(g)?.nu(yi, f.decay))
        .collect::<Result<Vec<_>>>()?;
    Ok(tensor_integrate(&ms, f))
}

/// Per-axis `gamma_j` of a `Z_2^d` root system.
pub fn tensor_gammas(rs: &RootSystem) -> Result<Vec<f64>> {
    rs.axis_gammas().ok_or_else(|| {
        DunklError::Unsupported(format!(
            "numeric intertwiners need a product group, got {}",
            rs.describe()
        ))
    })
}

/// The float value of `V_k x^nu` from the exact engine, for comparison.
pub fn exact_monomial_image(rs: &RootSystem, nu: &[u32], x: &[f64]) -> Result<f64> {
    let v = crate::polyexact::Intertwiner::new(rs)?;
    let img = v.monomial_image(nu)?;
    Ok(img
        .terms()
        .map(|(e, c)| e.iter().zip(x).fold(to_f64(c), |m, (&k, xi)| m * xi.powi(k as i32)))
        .sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::kernel_1d_real;
    use crate::polyexact::DunklOperators;
    use crate::rational::q;
    use approx::assert_relative_eq;

    fn monomial(n: i32) -> SampledFunction {
        SampledFunction::line(DecayClass::PolynomialGrowth { order: n as f64 }, "y^n", move |y| y.powi(n))
    }

    #[test]
    fn density_examples() {
        assert_relative_eq!(mu_density(1.0, 1.0, 0.0).unwrap(), 0.5, epsilon = 1e-15);
        assert!(mu_density(1.0, 0.0, 0.0).is_err());
        assert_eq!(mu_density(1.0, 1.0, 1.5).unwrap(), 0.0);
        for g in [0.5, 1.0, 2.0] {
            for x in [0.5, 1.0, 3.0, -2.0] {
                let m = LineIntertwiner::new(g).unwrap().mu(x, Some(10.0)).unwrap();
                assert!((m.mass() - 1.0).abs() < 1e-12, "g={g} x={x} mass={}", m.mass());
                assert!(m.weights.iter().all(|&w| w >= 0.0));
            }
        }
    }

    #[test]
    fn density_grid_matches_density() {
        let g = 2.0;
        let x = -1.3;
        let m = LineIntertwiner::new(g).unwrap().mu(x, None).unwrap();
        let dense = QuadratureGrid::legendre(-1.3, 1.3, 400);
        let f = |y: f64| (0.7 * y).cos() + y * y * y;
        let direct = dense.integrate(|y| f(y) * mu_density(g, x, y).unwrap());
        assert_relative_eq!(m.integrate(f), direct, max_relative = 1e-9);
    }

    #[test]
    fn v_of_monomials() {
        let v = LineIntertwiner::new(1.0).unwrap();
        assert_relative_eq!(v.v(&monomial(2), 2.0).unwrap(), 4.0 / 3.0, max_relative = 1e-14);
        assert_relative_eq!(v.v(&monomial(1), -1.5).unwrap(), -0.5, max_relative = 1e-14);
        assert_relative_eq!(v.v(&monomial(0), 0.7).unwrap(), 1.0, max_relative = 1e-14);
        for g in [0.5, 1.0, 2.0, 2.5] {
            let rs = RootSystem::preset(&format!("z2:{g}")).unwrap();
            let v = LineIntertwiner::new(g).unwrap();
            for n in 0..=8u32 {
                for x in [-1.7, 0.4, 2.3] {
                    let num = v.v(&monomial(n as i32), x).unwrap();
                    let ex = exact_monomial_image(&rs, &[n], &[x]).unwrap();
                    assert!(((num - ex) / ex).abs() < 1e-12, "g={g} n={n} x={x}");
                }
            }
        }
    }

    #[test]
    fn laplace_representation() {
        for g in [0.5, 1.0, 7.0 / 3.0] {
            let v = LineIntertwiner::new(g).unwrap();
            for (x, t) in [(1.0, 0.5), (-2.0, 1.3), (0.4, -3.0)] {
                let f = SampledFunction::line(DecayClass::PolynomialGrowth { order: 0.0 }, "exp", move |y| (t * y).exp());
                let num = v.v(&f, x).unwrap();
                assert_relative_eq!(num, kernel_1d_real(g, x, t).unwrap(), max_relative = 1e-12);
            }
        }
    }

    #[test]
    fn v_far_from_origin_uses_substitution() {
        let g = 1.0;
        let v = LineIntertwiner::new(g).unwrap();
        let f = PolyGaussian::hermite_gaussian(2).to_sampled();
        let r = f.decay.radius().unwrap();
        let x = 2.5 * r;
        let sub = v.v(&f, x).unwrap();
        let fine = QuadratureGrid::jacobi_composite(-1.0, 1.0, g - 1.0, g, 400, 20).unwrap();
        let direct = density_constant(g) * fine.integrate(|t| f.eval1(t * x));
        assert_relative_eq!(sub, direct, max_relative = 1e-10);
    }

    #[test]
    fn tv_of_gaussian_closed_form() {
        let f = PolyGaussian::hermite_gaussian(0).to_sampled();
        for g in [0.5, 1.0, 2.0, 2.5] {
            let v = LineIntertwiner::new(g).unwrap();
            for y in [0.0, 0.3, -1.1, 2.5, -4.0] {
                let num = v.tv(&f, y).unwrap();
                assert_relative_eq!(num, tv_gaussian_closed_form(g, y), max_relative = 1e-10);
            }
        }
    }

    #[test]
    fn duality() {
        for g in [0.5, 1.0, 2.0] {
            let v = LineIntertwiner::new(g).unwrap();
            let f = SampledFunction::line(DecayClass::Schwartz { radius: 7.0 }, "exp(-x^2)", |x| (-x * x).exp());
            let grid = QuadratureGrid::power_at_left(-7.0, 7.0, 0.0, 0.5, 20).unwrap();
            let tvf = v.tv_many(&f, &grid.nodes).unwrap();
            let lhs: f64 = tvf.iter().zip(&grid.nodes).zip(&grid.weights).map(|((t, y), w)| w * t * y * y).sum();
            let vg = |x: f64| x * x / (2.0 * g + 1.0);
            let omega = QuadratureGrid::abs_power(7.0, 2.0 * g, 0.5, 20).unwrap();
            let rhs = omega.integrate(|x| vg(x) * f.eval1(x));
            assert_relative_eq!(lhs, rhs, max_relative = 1e-9);
        }
    }

    #[test]
    fn transmutation_of_the_dual() {
        let g = 2.0;
        let rs = RootSystem::preset("z2:2").unwrap();
        let ops = DunklOperators::new(&rs).unwrap();
        let p = PolyGaussian::new(&crate::poly::RationalPoly::var(1, 0) * &crate::poly::RationalPoly::var(1, 0) + crate::poly::RationalPoly::var(1, 0));
        let tf = p.dunkl_directional(&ops, &[q(1)]).unwrap().to_sampled();
        let f = p.to_sampled();
        let v = LineIntertwiner::new(g).unwrap();
        for y in [-1.2, 0.5, 2.0] {
            let h = 1e-3;
            let fd = (v.tv(&f, y + h).unwrap() - v.tv(&f, y - h).unwrap()) / (2.0 * h);
            let lhs = v.tv(&tf, y).unwrap();
            assert!((lhs - fd).abs() < 1e-5, "y={y}: {lhs} vs {fd}");
        }
    }

    #[test]
    fn dual_preserves_parity() {
        let f = PolyGaussian::hermite_gaussian(2).to_sampled();
        let v = LineIntertwiner::new(1.5).unwrap();
        for y in [0.3, 1.7] {
            assert_relative_eq!(v.tv(&f, y).unwrap(), v.tv(&f, -y).unwrap(), max_relative = 1e-12);
        }
    }

    #[test]
    fn three_inverse_paths_agree() {
        let g = 1.0;
        let plan = TransformPlan::for_gamma(g).unwrap();
        for n in [0u32, 1, 3] {
            let pg = PolyGaussian::hermite_gaussian(n);
            let f = ExactLine::PolyGaussian(pg.clone());
            let via_p = InverseViaP::new(&f.sampled(), &plan).unwrap();
            for x in [-1.4, 0.0, 0.8, 2.1] {
                let a = via_p.eval(x);
                let b = inv_v_via_q(g, &f, x).unwrap();
                assert!((a - b).abs() < 1e-7, "n={n} x={x}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn integer_case_inverse_dual_is_v_of_minus_second_derivative() {
        let plan = TransformPlan::for_gamma(1.0).unwrap();
        let pg = PolyGaussian::hermite_gaussian(2);
        let f = pg.to_sampled();
        let d2 = pg.derivative(0).derivative(0).to_sampled();
        let v = LineIntertwiner::new(1.0).unwrap();
        for x in [-1.0, 0.6, 1.9] {
            let local = -v.v(&d2, x).unwrap();
            let mult = inv_tv_via_vkp(&f, x, &plan).unwrap();
            assert!((local - mult).abs() < 1e-8, "x={x}: {local} vs {mult}");
        }
    }

    #[test]
    fn round_trip_through_dual() {
        let g = 2.0;
        let f = ExactLine::PolyGaussian(PolyGaussian::hermite_gaussian(1));
        let inv = inv_tv_local(g, &f).unwrap();
        let v = LineIntertwiner::new(g).unwrap();
        for y in [-0.9, 0.2, 1.5] {
            let back = v.tv(&inv, y).unwrap();
            assert!((back - f.sampled().eval1(y)).abs() < 1e-7, "y={y}: {back}");
        }
    }

    #[test]
    fn eta_support_and_origin() {
        // supp eta_x lies in [-|x|, |x|]
        for g in [1.0, 2.0] {
            for b in [Bump::new(2.0, 0.8), Bump::new(-1.5, 0.4)] {
                let b = ExactLine::Bump(b);
                for x in [0.3, -0.6, 0.9] {
                    let v = eta_pairing(g, x, &b).unwrap();
                    assert!(v.abs() < 1e-9, "g={g} x={x}: {v}");
                }
            }
        }
        let f = ExactLine::PolyGaussian(PolyGaussian::hermite_gaussian(2));
        let at0 = eta_pairing(2.0, 0.0, &f).unwrap();
        assert!(at0.abs() < 1e-9);
        let f0 = ExactLine::PolyGaussian(PolyGaussian::hermite_gaussian(0));
        assert!((eta_pairing(1.0, 0.0, &f0).unwrap() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn antisymmetry_on_bumps() {
        for g in [0.5, 1.0, 2.0] {
            let (l, r) = antisymmetry_pair(g, &Bump::new(0.3, 0.8), &Bump::new(-0.2, 0.9)).unwrap();
            assert!(((l - r) / l.abs().max(1e-300)).abs() < 1e-8, "g={g}: {l} vs {r}");
        }
    }

    #[test]
    fn tensor_matches_exact_on_product_group() {
        let rs = RootSystem::preset("z2xz2:1,2").unwrap();
        let gs = tensor_gammas(&rs).unwrap();
        let f = SampledFunction::new(2, DecayClass::PolynomialGrowth { order: 5.0 }, "x^2 y^3", |x| x[0] * x[0] * x[1].powi(3));
        let x = [0.7, -1.2];
        let num = v_tensor(&gs, &f, &x).unwrap();
        let ex = exact_monomial_image(&rs, &[2, 3], &x).unwrap();
        assert_relative_eq!(num, ex, max_relative = 1e-12);
        let g2 = SampledFunction::new(2, DecayClass::Schwartz { radius: 9.0 }, "gauss", |x| (-0.5 * (x[0] * x[0] + x[1] * x[1])).exp());
        let y = [0.4, -0.9];
        let t = tv_tensor(&gs, &g2, &y).unwrap();
        let exact = tv_gaussian_closed_form(gs[0], y[0]) * tv_gaussian_closed_form(gs[1], y[1]);
        assert_relative_eq!(t, exact, max_relative = 1e-9);
    }
}
