//! Scalar test functions on the line and on `R^d`.
//!
//! [`SampledFunction`] is an opaque evaluator with a declared decay class.
//! [`PolyGaussian`] (`p(x) e^{-|x|^2/2}`) and [`Bump`] carry exact
//! derivatives, which is what makes the local forms of `P` and `Q` exact.

use std::sync::Arc;

use serde::Serialize;

use crate::error::{DunklError, Result};
use crate::poly::RationalPoly;
use crate::polyexact::DunklOperators;
use crate::rational::{q, Q};
use crate::rootsys::RootSystem;

/// How fast a function falls off, with the radius beyond which it is
/// numerically negligible (or identically zero).
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "class", rename_all = "kebab-case")]
pub enum DecayClass {
    /// Below `1e-16` relative to the peak beyond `radius`.
    Schwartz { radius: f64 },
    /// Identically zero outside the ball of this radius.
    Compact { radius: f64 },
    /// `|f(x)| <= C |x|^{-order}` beyond `radius`.
    AlgebraicDecay { order: f64, radius: f64 },
    /// `|f(x)| <= C (1 + |x|)^order`.
    PolynomialGrowth { order: f64 },
}

impl DecayClass {
    pub fn radius(&self) -> Option<f64> {
        match *self {
            DecayClass::Schwartz { radius } | DecayClass::Compact { radius } => Some(radius),
            DecayClass::AlgebraicDecay { radius, .. } => Some(radius),
            DecayClass::PolynomialGrowth { .. } => None,
        }
    }

    pub fn is_integrable_rapidly(&self) -> bool {
        matches!(self, DecayClass::Schwartz { .. } | DecayClass::Compact { .. })
    }
}

type Eval = Arc<dyn Fn(&[f64]) -> f64 + Send + Sync>;

/// A callable function on `R^d` with a declared decay class.
#[derive(Clone)]
pub struct SampledFunction {
    dim: usize,
    eval: Eval,
    pub decay: DecayClass,
    pub label: String,
}

impl std::fmt::Debug for SampledFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SampledFunction")
            .field("dim", &self.dim)
            .field("decay", &self.decay)
            .field("label", &self.label)
            .finish()
    }
}

impl SampledFunction {
    pub fn new(
        dim: usize,
        decay: DecayClass,
        label: impl Into<String>,
        f: impl Fn(&[f64]) -> f64 + Send + Sync + 'static,
    ) -> Self {
        Self {
            dim,
            eval: Arc::new(f),
            decay,
            label: label.into(),
        }
    }

    pub fn line(
        decay: DecayClass,
        label: impl Into<String>,
        f: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        Self::new(1, decay, label, move |x: &[f64]| f(x[0]))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        (self.eval)(x)
    }

    pub fn eval1(&self, x: f64) -> f64 {
        (self.eval)(&[x])
    }

    pub fn require_rapid_decay(&self) -> Result<f64> {
        match self.decay {
            DecayClass::Schwartz { radius } | DecayClass::Compact { radius } => Ok(radius),
            other => Err(DunklError::InvalidArgument(format!(
                "{} is not rapidly decreasing ({other:?})",
                self.label
            ))),
        }
    }

    /// Largest `|f|` at calibration points just outside the declared radius,
    /// relative to the largest `|f|` inside. Zero for compact functions that
    /// honour their support.
    pub fn tail_ratio(&self) -> Option<f64> {
        let r = self.decay.radius()?;
        let probe = |s: f64| -> Vec<Vec<f64>> {
            let mut pts = Vec::new();
            for j in 0..self.dim {
                for sign in [-1.0, 1.0] {
                    let mut x = vec![0.0; self.dim];
                    x[j] = sign * s;
                    pts.push(x);
                }
            }
            let diag = s / (self.dim as f64).sqrt();
            pts.push(vec![diag; self.dim]);
            pts
        };
        let mut inside = 0.0f64;
        for i in 0..=40 {
            for p in probe(r * i as f64 / 40.0) {
                inside = inside.max(self.eval(&p).abs());
            }
        }
        let mut outside = 0.0f64;
        for s in [1.0001, 1.05, 1.2, 1.5] {
            for p in probe(r * s) {
                outside = outside.max(self.eval(&p).abs());
            }
        }
        if inside == 0.0 {
            return Some(0.0);
        }
        Some(outside / inside)
    }
}

/// Radius beyond which `|x|^n e^{-x^2/2}` is below `tol` of its peak.
pub fn gaussian_radius(degree: u32, tol: f64) -> f64 {
    let n = degree as f64;
    let peak = if degree == 0 {
        1.0
    } else {
        n.powf(n / 2.0) * (-n / 2.0).exp()
    };
    let mut r = n.sqrt().max(1.0);
    while r.powf(n) * (-0.5 * r * r).exp() > tol * peak {
        r += 0.25;
    }
    r
}

/// `p(x) e^{-|x|^2 / 2}` with `p` an exact rational polynomial.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyGaussian {
    pub poly: RationalPoly,
}

impl PolyGaussian {
    pub fn new(poly: RationalPoly) -> Self {
        Self { poly }
    }

    /// `x^n e^{-x^2/2}` on the line.
    pub fn hermite_gaussian(n: u32) -> Self {
        Self::new(RationalPoly::monomial(vec![n], q(1)))
    }

    /// The standard test set `{x^n e^{-x^2/2} : n <= max}`.
    pub fn test_set(max: u32) -> Vec<Self> {
        (0..=max).map(Self::hermite_gaussian).collect()
    }

    pub fn dim(&self) -> usize {
        self.poly.dim()
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        let r2: f64 = x.iter().map(|v| v * v).sum();
        self.poly.eval_f64(x) * (-0.5 * r2).exp()
    }

    /// `d_j (p G) = (d_j p - x_j p) G`.
    pub fn derivative(&self, j: usize) -> Self {
        let xp = &RationalPoly::var(self.dim(), j) * &self.poly;
        Self::new(self.poly.derivative(j) - xp)
    }

    /// `(a . grad)(p G) = (a . grad p - <a, x> p) G`.
    pub fn directional_derivative(&self, a: &[Q]) -> Self {
        let lin = &RationalPoly::linear(a) * &self.poly;
        Self::new(self.poly.directional_derivative(a) - lin)
    }

    /// `(a . T)(p G) = ((a . T) p - <a, x> p) G`, since `G` is `W`-invariant.
    pub fn dunkl_directional(&self, ops: &DunklOperators, a: &[Q]) -> Result<Self> {
        let lin = &RationalPoly::linear(a) * &self.poly;
        Ok(Self::new(ops.apply_directional(a, &self.poly)? - lin))
    }

    /// `prod_a (-1)^k (a . grad)^{2k}` applied exactly, no prefactor.
    pub fn p_unscaled(&self, rs: &RootSystem) -> Result<Self> {
        let ks = integer_ks(rs)?;
        let mut g = self.clone();
        for (a, &k) in rs.positive_roots().iter().zip(&ks) {
            for _ in 0..2 * k {
                g = g.directional_derivative(a);
            }
        }
        Ok(g.signed(&ks))
    }

    /// `prod_a (-1)^k (a . T)^{2k}` applied exactly, no prefactor.
    pub fn q_unscaled(&self, rs: &RootSystem) -> Result<Self> {
        let ks = integer_ks(rs)?;
        let ops = DunklOperators::new(rs)?;
        let mut g = self.clone();
        for (a, &k) in rs.positive_roots().iter().zip(&ks) {
            for _ in 0..2 * k {
                g = g.dunkl_directional(&ops, a)?;
            }
        }
        Ok(g.signed(&ks))
    }

    fn signed(self, ks: &[u32]) -> Self {
        if ks.iter().sum::<u32>() % 2 == 1 {
            Self::new(-self.poly)
        } else {
            self
        }
    }

    pub fn scale(&self, c: &Q) -> Self {
        Self::new(self.poly.scale(c))
    }

    pub fn radius(&self, tol: f64) -> f64 {
        gaussian_radius(self.poly.degree().unwrap_or(0), tol)
    }

    pub fn to_sampled(&self) -> SampledFunction {
        let me = self.clone();
        let terms = self.poly.to_f64_terms();
        let radius = self.radius(1e-16);
        let label = format!("({}) exp(-|x|^2/2)", me.poly);
        SampledFunction::new(self.dim(), DecayClass::Schwartz { radius }, label, move |x| {
            let r2: f64 = x.iter().map(|v| v * v).sum();
            let p: f64 = terms
                .iter()
                .map(|(e, c)| e.iter().zip(x).fold(*c, |m, (&k, xi)| m * xi.powi(k as i32)))
                .sum();
            p * (-0.5 * r2).exp()
        })
    }

    /// Derivatives `f^{(i)}(x)` for `i <= order` on the line.
    pub fn derivatives_1d(&self, x: f64, order: usize) -> Vec<f64> {
        let mut out = Vec::with_capacity(order + 1);
        let mut g = self.clone();
        for _ in 0..=order {
            out.push(g.eval(&[x]));
            g = g.derivative(0);
        }
        out
    }
}

fn integer_ks(rs: &RootSystem) -> Result<Vec<u32>> {
    if !rs.is_integer_case() {
        return Err(DunklError::Unsupported(
            "local P and Q need positive integer multiplicities".into(),
        ));
    }
    Ok(rs
        .multiplicities()
        .iter()
        .map(|k| crate::rational::as_natural(k).expect("integer case"))
        .collect())
}

/// `b((x - center) / width)` with `b(u) = exp(-1/(1-u^2))` on `(-1, 1)`, zero
/// elsewhere. Derivatives are exact: `b^{(n)} = p_n(u) (1-u^2)^{-2n} b(u)`
/// with `p_{n+1} = p_n' (1-u^2)^2 + 4 n u p_n (1-u^2) - 2 u p_n`.
#[derive(Clone, Debug)]
pub struct Bump {
    pub center: f64,
    pub width: f64,
    pub amplitude: f64,
    numerators: Vec<Vec<f64>>,
}

impl Bump {
    pub fn new(center: f64, width: f64) -> Self {
        Self::with_amplitude(center, width, 1.0)
    }

    pub fn with_amplitude(center: f64, width: f64, amplitude: f64) -> Self {
        let mut numerators = vec![vec![1.0]];
        for n in 0..12 {
            let p = &numerators[n];
            numerators.push(next_numerator(p, n));
        }
        Self {
            center,
            width,
            amplitude,
            numerators,
        }
    }

    pub fn support(&self) -> (f64, f64) {
        (self.center - self.width, self.center + self.width)
    }

    pub fn max_order(&self) -> usize {
        self.numerators.len() - 1
    }

    /// `f^{(n)}(x)`; exactly zero outside the open support.
    pub fn derivative(&self, n: usize, x: f64) -> f64 {
        assert!(n <= self.max_order(), "bump derivative order {n} not tabulated");
        let u = (x - self.center) / self.width;
        if u.abs() >= 1.0 {
            return 0.0;
        }
        let s = 1.0 - u * u;
        let b = (-1.0 / s).exp();
        if b == 0.0 {
            return 0.0;
        }
        let p = horner(&self.numerators[n], u);
        self.amplitude * p * s.powi(-2 * n as i32) * b / self.width.powi(n as i32)
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.derivative(0, x)
    }

    pub fn derivatives(&self, x: f64, order: usize) -> Vec<f64> {
        (0..=order).map(|n| self.derivative(n, x)).collect()
    }

    pub fn to_sampled(&self) -> SampledFunction {
        let me = self.clone();
        let (lo, hi) = self.support();
        SampledFunction::line(
            DecayClass::Compact {
                radius: lo.abs().max(hi.abs()),
            },
            format!("bump(center={}, width={})", self.center, self.width),
            move |x| me.eval(x),
        )
    }
}

fn horner(p: &[f64], u: f64) -> f64 {
    p.iter().rev().fold(0.0, |acc, c| acc * u + c)
}

fn poly_mul(a: &[f64], b: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_add(a: &[f64], b: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, x) in b.iter().enumerate() {
        out[i] += x;
    }
    out
}

fn next_numerator(p: &[f64], n: usize) -> Vec<f64> {
    let dp: Vec<f64> = if p.len() > 1 {
        p.iter().enumerate().skip(1).map(|(i, c)| i as f64 * c).collect()
    } else {
        vec![0.0]
    };
    let s = [1.0, 0.0, -1.0];
    let s2 = poly_mul(&s, &s);
    let t1 = poly_mul(&dp, &s2);
    let t2 = poly_mul(&poly_mul(&[0.0, 4.0 * n as f64], p), &s);
    let t3 = poly_mul(&[0.0, -2.0], p);
    poly_add(&poly_add(&t1, &t2), &t3)
}

/// `T^m f` on the line from derivative vectors of `f` at `x` and `-x`.
///
/// `plus[i] = f^{(i)}(x)`, `minus[i] = f^{(i)}(-x)`, both of length at least
/// `m + 1`. Uses `T f = f' + gamma (f - f(-.)) / x` and Leibniz for the
/// derivatives of the difference quotient. Loses accuracy as `x -> 0`.
pub fn dunkl_power_1d(gamma: f64, m: usize, plus: &[f64], minus: &[f64], x: f64) -> Result<f64> {
    if x == 0.0 {
        return Err(DunklError::InvalidArgument(
            "difference quotient at the origin".into(),
        ));
    }
    if plus.len() < m + 1 || minus.len() < m + 1 {
        return Err(DunklError::InvalidArgument(format!(
            "need {} derivatives for T^{m}",
            m + 1
        )));
    }
    let mut fp = plus.to_vec();
    let mut fm = minus.to_vec();
    // D^j (1/x) at x and at -x
    let inv_pow = |y: f64, j: usize| -> f64 {
        let fact: f64 = (1..=j).map(|v| v as f64).product();
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        sign * fact / y.powi(j as i32 + 1)
    };
    for _ in 0..m {
        let k_max = fp.len() - 2;
        let mut gp = vec![0.0; k_max + 1];
        let mut gm = vec![0.0; k_max + 1];
        for k in 0..=k_max {
            let mut sp = 0.0;
            let mut sm = 0.0;
            let mut binom = 1.0;
            for i in 0..=k {
                let refl = if i % 2 == 0 { 1.0 } else { -1.0 };
                // h(y) = f(y) - f(-y); h^{(i)}(y) = f^{(i)}(y) - (-1)^i f^{(i)}(-y)
                let hp = fp[i] - refl * fm[i];
                let hm = fm[i] - refl * fp[i];
                sp += binom * hp * inv_pow(x, k - i);
                sm += binom * hm * inv_pow(-x, k - i);
                binom = binom * (k - i) as f64 / (i + 1) as f64;
            }
            gp[k] = fp[k + 1] + gamma * sp;
            gm[k] = fm[k + 1] + gamma * sm;
        }
        fp = gp;
        fm = gm;
    }
    Ok(fp[0])
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn poly_gaussian_derivative_matches_finite_difference() {
        let f = PolyGaussian::hermite_gaussian(3);
        let df = f.derivative(0);
        let h = 1e-6;
        for x in [-1.3, 0.2, 2.0] {
            let fd = (f.eval(&[x + h]) - f.eval(&[x - h])) / (2.0 * h);
            assert_relative_eq!(df.eval(&[x]), fd, epsilon = 1e-8);
        }
    }

    #[test]
    fn bump_vanishes_outside_and_derivatives_are_consistent() {
        let b = Bump::new(0.3, 0.5);
        assert_eq!(b.eval(0.8), 0.0);
        assert_eq!(b.derivative(4, -0.2), 0.0);
        assert_eq!(b.derivative(3, 1.5), 0.0);
        assert_relative_eq!(b.eval(0.3), (-1.0f64).exp(), max_relative = 1e-15);
        let h = 1e-5;
        for n in 0..6 {
            for x in [0.0, 0.35, 0.6] {
                let fd = (b.derivative(n, x + h) - b.derivative(n, x - h)) / (2.0 * h);
                let exact = b.derivative(n + 1, x);
                assert_relative_eq!(exact, fd, epsilon = 1e-6 * (1.0 + exact.abs()), max_relative = 1e-5);
            }
        }
    }

    #[test]
    fn dunkl_power_agrees_with_exact_poly_gaussian() {
        let rs = RootSystem::preset("z2:2").unwrap();
        let ops = DunklOperators::new(&rs).unwrap();
        let one = [q(1)];
        let f = PolyGaussian::hermite_gaussian(3);
        let mut g = f.clone();
        for _ in 0..4 {
            g = g.dunkl_directional(&ops, &one).unwrap();
        }
        for x in [-1.7, 0.6, 2.2] {
            let plus = f.derivatives_1d(x, 5);
            let minus = f.derivatives_1d(-x, 5);
            let num = dunkl_power_1d(2.0, 4, &plus, &minus, x).unwrap();
            assert_relative_eq!(num, g.eval(&[x]), epsilon = 1e-9, max_relative = 1e-9);
        }
    }

    #[test]
    fn tail_ratio_honours_decay_class() {
        let f = PolyGaussian::hermite_gaussian(4).to_sampled();
        assert!(f.tail_ratio().unwrap() < 1e-12);
        assert_eq!(Bump::new(0.0, 1.0).to_sampled().tail_ratio().unwrap(), 0.0);
        let bad = SampledFunction::line(DecayClass::Schwartz { radius: 1.0 }, "wide", |x| {
            (-0.01 * x * x).exp()
        });
        assert!(bad.tail_ratio().unwrap() > 0.5);
    }

    #[test]
    fn gaussian_radius_is_monotone() {
        assert!(gaussian_radius(0, 1e-16) > 8.0);
        assert!(gaussian_radius(4, 1e-16) > gaussian_radius(0, 1e-16));
    }
}
