//! Gauss rules and weighted quadrature grids.
//!
//! Gauss–Jacobi nodes come from the Golub–Welsch eigenproblem and are then
//! polished by Newton steps on the three-term recurrence, with weights taken
//! from the closed-form derivative expression. Legendre is the `(0, 0)` case.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{DunklError, Result};
use crate::special::{beta, ln_gamma};

/// Nodes and weights on `[-1, 1]` for the weight `(1-t)^a (1+t)^b`.
#[derive(Clone, Debug)]
pub struct GaussRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub alpha: f64,
    pub beta: f64,
}

impl GaussRule {
    pub fn legendre(n: usize) -> Self {
        Self::jacobi(n, 0.0, 0.0).expect("Legendre parameters are valid")
    }

    pub fn jacobi(n: usize, a: f64, b: f64) -> Result<Self> {
        if n == 0 {
            return Err(DunklError::InvalidArgument("Gauss rule of degree 0".into()));
        }
        if !(a > -1.0 && b > -1.0) || !a.is_finite() || !b.is_finite() {
            return Err(DunklError::InvalidArgument(format!(
                "Jacobi exponents ({a}, {b}) must exceed -1"
            )));
        }
        let ab = a + b;
        let diag: Vec<f64> = (0..n)
            .map(|i| {
                if i == 0 {
                    (b - a) / (ab + 2.0)
                } else {
                    let s = 2.0 * i as f64 + ab;
                    (b * b - a * a) / (s * (s + 2.0))
                }
            })
            .collect();
        let off: Vec<f64> = (1..n)
            .map(|i| {
                let i = i as f64;
                let s = 2.0 * i + ab;
                if (i + ab).abs() < 1e-14 {
                    // a + b = -1, i = 1: (i + a + b) / (s - 1) -> 1
                    return (4.0 * (1.0 + a) * (1.0 + b) / (s * s * (s + 1.0))).sqrt();
                }
                (4.0 * i * (i + a) * (i + b) * (i + ab) / (s * s * (s + 1.0) * (s - 1.0))).sqrt()
            })
            .collect();
        let (mut nodes, _) = tridiagonal_eigen(&diag, &off)?;
        nodes.sort_by(|x, y| x.partial_cmp(y).unwrap());

        // log of 2^{a+b+1} Gamma(n+a+1) Gamma(n+b+1) / (Gamma(n+a+b+1) n!)
        let nf = n as f64;
        let log_c = (ab + 1.0) * std::f64::consts::LN_2 + ln_gamma(nf + a + 1.0)
            + ln_gamma(nf + b + 1.0)
            - ln_gamma(nf + ab + 1.0)
            - ln_gamma(nf + 1.0);
        let mut weights = Vec::with_capacity(n);
        for x in nodes.iter_mut() {
            for _ in 0..3 {
                let (p, dp) = jacobi_eval(n, a, b, *x);
                let step = p / dp;
                *x -= step;
                if step.abs() < 1e-16 {
                    break;
                }
            }
            let (_, dp) = jacobi_eval(n, a, b, *x);
            weights.push((log_c - ((1.0 - *x * *x) * dp * dp).ln()).exp());
        }
        Ok(Self {
            nodes,
            weights,
            alpha: a,
            beta: b,
        })
    }

    /// Gauss–Hermite rule for the weight `exp(-x^2)` on the real line.
    pub fn hermite(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(DunklError::InvalidArgument("Gauss rule of degree 0".into()));
        }
        let diag = vec![0.0; n];
        let off: Vec<f64> = (1..n).map(|i| (i as f64 / 2.0).sqrt()).collect();
        let (nodes, first) = tridiagonal_eigen(&diag, &off)?;
        let mut pairs: Vec<(f64, f64)> = nodes
            .into_iter()
            .zip(first)
            .map(|(x, z)| (x, std::f64::consts::PI.sqrt() * z * z))
            .collect();
        pairs.sort_by(|p, q| p.0.partial_cmp(&q.0).unwrap());
        Ok(Self {
            nodes: pairs.iter().map(|p| p.0).collect(),
            weights: pairs.iter().map(|p| p.1).collect(),
            alpha: 0.0,
            beta: 0.0,
        })
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }
}

/// `P_n^{(a,b)}(x)` and its derivative.
fn jacobi_eval(n: usize, a: f64, b: f64, x: f64) -> (f64, f64) {
    let ab = a + b;
    let mut p0 = 1.0;
    let mut p1 = 0.5 * (a - b + (ab + 2.0) * x);
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let k = k as f64;
        let s = 2.0 * k + ab;
        let c1 = 2.0 * k * (k + ab) * (s - 2.0);
        let c2 = (s - 1.0) * (s * (s - 2.0) * x + a * a - b * b);
        let c3 = 2.0 * (k + a - 1.0) * (k + b - 1.0) * s;
        let p2 = (c2 * p1 - c3 * p0) / c1;
        p0 = p1;
        p1 = p2;
    }
    let nf = n as f64;
    let s = 2.0 * nf + ab;
    let dp = (nf * ((a - b) - s * x) * p1 + 2.0 * (nf + a) * (nf + b) * p0) / (s * (1.0 - x * x));
    (p1, dp)
}

/// Eigenvalues and first eigenvector components of a symmetric tridiagonal
/// matrix (implicit QL with Wilkinson shifts).
fn tridiagonal_eigen(diag: &[f64], off: &[f64]) -> Result<(Vec<f64>, Vec<f64>)> {
    let n = diag.len();
    let mut d = diag.to_vec();
    let mut e = off.to_vec();
    e.push(0.0);
    let mut z = vec![0.0; n];
    z[0] = 1.0;
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > 60 {
                return Err(DunklError::Accuracy {
                    what: "tridiagonal eigenvalue iteration".into(),
                    residual: e[l].abs(),
                });
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut i = m;
            let mut underflow = false;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                let zf = z[i + 1];
                z[i + 1] = s * z[i] + c * zf;
                z[i] = c * z[i] - s * zf;
            }
            if underflow {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok((d, z))
}

/// Which weight a grid's weights already absorb.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum WeightKind {
    Plain,
    GaussHermite,
    /// `(b-x)^alpha (x-a)^beta` on `[a, b]`.
    GaussJacobi { alpha: f64, beta: f64 },
    /// `(x-a)^p` on `[a, b]`.
    PowerAtLeft { p: f64 },
    /// `|x|^p` on `[-R, R]`.
    AbsPower { p: f64 },
    TruncatedTrapezoid,
}

/// Nodes and positive weights: `integrate(f) ~ int f(x) w(x) dx` over `domain`.
#[derive(Clone, Debug)]
pub struct QuadratureGrid {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub domain: (f64, f64),
    pub weight_kind: WeightKind,
}

impl QuadratureGrid {
    /// Gauss–Jacobi on `[a, b]` for `(b-x)^alpha (x-a)^beta`.
    pub fn jacobi(a: f64, b: f64, n: usize, alpha: f64, beta_: f64) -> Result<Self> {
        let rule = GaussRule::jacobi(n, alpha, beta_)?;
        let half = 0.5 * (b - a);
        let scale = half.powf(alpha + beta_ + 1.0);
        Ok(Self {
            nodes: rule.nodes.iter().map(|t| a + half * (t + 1.0)).collect(),
            weights: rule.weights.iter().map(|w| w * scale).collect(),
            domain: (a, b),
            weight_kind: WeightKind::GaussJacobi { alpha, beta: beta_ },
        })
    }

    pub fn legendre(a: f64, b: f64, n: usize) -> Self {
        let mut g = Self::jacobi(a, b, n, 0.0, 0.0).expect("valid");
        g.weight_kind = WeightKind::Plain;
        g
    }

    /// Composite rule for `int_a^b (x-a)^p f(x) dx`: a Jacobi panel at the
    /// left end absorbs the power exactly, Legendre panels elsewhere.
    pub fn power_at_left(a: f64, b: f64, p: f64, panel: f64, per_panel: usize) -> Result<Self> {
        if b <= a {
            return Err(DunklError::InvalidArgument(format!("empty interval [{a}, {b}]")));
        }
        let panels = ((b - a) / panel).ceil().max(1.0) as usize;
        let h = (b - a) / panels as f64;
        let first = Self::jacobi(a, a + h, per_panel, 0.0, p)?;
        let leg = GaussRule::legendre(per_panel);
        let mut nodes = first.nodes;
        let mut weights = first.weights;
        for k in 1..panels {
            let lo = a + k as f64 * h;
            for (t, w) in leg.nodes.iter().zip(&leg.weights) {
                let x = lo + 0.5 * h * (t + 1.0);
                nodes.push(x);
                weights.push(0.5 * h * w * (x - a).powf(p));
            }
        }
        Ok(Self {
            nodes,
            weights,
            domain: (a, b),
            weight_kind: WeightKind::PowerAtLeft { p },
        })
    }

    /// `int_{-R}^{R} |x|^p f(x) dx`, nodes mirrored through the origin.
    pub fn abs_power(radius: f64, p: f64, panel: f64, per_panel: usize) -> Result<Self> {
        let half = Self::power_at_left(0.0, radius, p, panel, per_panel)?;
        let mut nodes: Vec<f64> = half.nodes.iter().rev().map(|x| -x).collect();
        let mut weights: Vec<f64> = half.weights.iter().rev().copied().collect();
        nodes.extend_from_slice(&half.nodes);
        weights.extend_from_slice(&half.weights);
        Ok(Self {
            nodes,
            weights,
            domain: (-radius, radius),
            weight_kind: WeightKind::AbsPower { p },
        })
    }

    /// Composite rule for `(b-x)^alpha (x-a)^beta` on `[a, b]` split into
    /// `panels` pieces: Jacobi panels at both ends absorb the endpoint powers,
    /// interior panels are Legendre with the weight evaluated directly.
    pub fn jacobi_composite(
        a: f64,
        b: f64,
        alpha: f64,
        beta_: f64,
        panels: usize,
        per_panel: usize,
    ) -> Result<Self> {
        if panels <= 1 {
            return Self::jacobi(a, b, per_panel, alpha, beta_);
        }
        let h = (b - a) / panels as f64;
        let mut nodes = Vec::with_capacity(panels * per_panel);
        let mut weights = Vec::with_capacity(panels * per_panel);
        let left = Self::jacobi(a, a + h, per_panel, 0.0, beta_)?;
        for (x, w) in left.nodes.iter().zip(&left.weights) {
            nodes.push(*x);
            weights.push(w * (b - x).powf(alpha));
        }
        let leg = GaussRule::legendre(per_panel);
        for k in 1..panels - 1 {
            let lo = a + k as f64 * h;
            for (t, w) in leg.nodes.iter().zip(&leg.weights) {
                let x = lo + 0.5 * h * (t + 1.0);
                nodes.push(x);
                weights.push(0.5 * h * w * (b - x).powf(alpha) * (x - a).powf(beta_));
            }
        }
        let right = Self::jacobi(b - h, b, per_panel, alpha, 0.0)?;
        for (x, w) in right.nodes.iter().zip(&right.weights) {
            nodes.push(*x);
            weights.push(w * (x - a).powf(beta_));
        }
        Ok(Self {
            nodes,
            weights,
            domain: (a, b),
            weight_kind: WeightKind::GaussJacobi { alpha, beta: beta_ },
        })
    }

    /// `int_a^b (x-a)^p f(x) dx` when `f` is smooth except for a singularity
    /// at distance `near` to the left of `a`. Panels grow geometrically from
    /// width `near` until they reach `panel`.
    pub fn graded_power_at_left(
        a: f64,
        b: f64,
        p: f64,
        near: f64,
        panel: f64,
        per_panel: usize,
    ) -> Result<Self> {
        if b <= a {
            return Err(DunklError::InvalidArgument(format!("empty interval [{a}, {b}]")));
        }
        if !(near > 0.0) || near >= panel {
            return Self::power_at_left(a, b, p, panel, per_panel);
        }
        let first_end = (a + near).min(b);
        let first = Self::jacobi(a, first_end, per_panel, 0.0, p)?;
        let mut nodes = first.nodes;
        let mut weights = first.weights;
        let leg = GaussRule::legendre(per_panel);
        let mut lo = first_end;
        let mut width = 2.0 * near;
        while lo < b {
            let w_here = width.min(panel);
            let hi = (lo + w_here).min(b);
            let h = hi - lo;
            for (t, w) in leg.nodes.iter().zip(&leg.weights) {
                let x = lo + 0.5 * h * (t + 1.0);
                nodes.push(x);
                weights.push(0.5 * h * w * (x - a).powf(p));
            }
            lo = hi;
            width *= 2.0;
        }
        Ok(Self {
            nodes,
            weights,
            domain: (a, b),
            weight_kind: WeightKind::PowerAtLeft { p },
        })
    }

    /// Uniform trapezoid rule with `n` points on `[a, b]`.
    pub fn trapezoid(a: f64, b: f64, n: usize) -> Result<Self> {
        if n < 2 {
            return Err(DunklError::InvalidArgument("trapezoid needs 2 points".into()));
        }
        let h = (b - a) / (n - 1) as f64;
        let nodes = (0..n).map(|i| a + i as f64 * h).collect();
        let weights = (0..n)
            .map(|i| if i == 0 || i == n - 1 { 0.5 * h } else { h })
            .collect();
        Ok(Self {
            nodes,
            weights,
            domain: (a, b),
            weight_kind: WeightKind::TruncatedTrapezoid,
        })
    }

    pub fn hermite(n: usize) -> Result<Self> {
        let rule = GaussRule::hermite(n)?;
        Ok(Self {
            nodes: rule.nodes,
            weights: rule.weights,
            domain: (f64::NEG_INFINITY, f64::INFINITY),
            weight_kind: WeightKind::GaussHermite,
        })
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.nodes.iter().zip(&self.weights).map(|(&x, &w)| w * f(x)).sum()
    }

    pub fn integrate_complex(&self, f: impl Fn(f64) -> Complex64) -> Complex64 {
        self.nodes.iter().zip(&self.weights).map(|(&x, &w)| w * f(x)).sum()
    }

    /// Exact integral of the declared weight over the domain.
    pub fn weight_mass(&self) -> f64 {
        let (a, b) = self.domain;
        match self.weight_kind {
            WeightKind::Plain | WeightKind::TruncatedTrapezoid => b - a,
            WeightKind::GaussHermite => std::f64::consts::PI.sqrt(),
            WeightKind::GaussJacobi { alpha, beta: bt } => {
                (b - a).powf(alpha + bt + 1.0) * beta(alpha + 1.0, bt + 1.0)
            }
            WeightKind::PowerAtLeft { p } => (b - a).powf(p + 1.0) / (p + 1.0),
            WeightKind::AbsPower { p } => 2.0 * b.powf(p + 1.0) / (p + 1.0),
        }
    }

    /// Relative error of `sum w` against the exact weight mass.
    pub fn calibration_residual(&self) -> f64 {
        let exact = self.weight_mass();
        let s: f64 = self.weights.iter().sum();
        ((s - exact) / exact).abs()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::gamma;
    use approx::assert_relative_eq;

    #[test]
    fn legendre_integrates_polynomials_exactly() {
        let g = QuadratureGrid::legendre(-1.0, 2.0, 5);
        // degree 9 is the limit for 5 nodes
        let exact = (2f64.powi(10) - 1.0) / 10.0;
        assert_relative_eq!(g.integrate(|x| x.powi(9)), exact, max_relative = 1e-14);
    }

    #[test]
    fn jacobi_moments_match_beta_integrals() {
        // int_{-1}^{1} (1-t)^a (1+t)^b t^2 dt, checked against an independent
        // expansion t^2 = 1 - (1-t)(1+t) ... via Beta functions:
        // t = (1+t) - 1, so t^2 = (1+t)^2 - 2(1+t) + 1.
        for &(a, b) in &[(0.0, 1.0), (-0.5, 0.5), (1.0 / 3.0, 4.0 / 3.0), (-0.7, 2.2)] {
            let rule = GaussRule::jacobi(9, a, b).unwrap();
            let m = |k: f64| 2f64.powf(a + b + 1.0 + k) * beta(a + 1.0, b + 1.0 + k);
            let exact = m(2.0) - 2.0 * m(1.0) + m(0.0);
            let got: f64 = rule
                .nodes
                .iter()
                .zip(&rule.weights)
                .map(|(t, w)| w * t * t)
                .sum();
            assert_relative_eq!(got, exact, max_relative = 1e-13);
        }
    }

    #[test]
    fn odd_degree_asymmetric_rule_is_not_forced_through_zero() {
        let rule = GaussRule::jacobi(5, 0.0, 1.0).unwrap();
        assert!(rule.nodes[2].abs() > 1e-3);
    }

    #[test]
    fn hermite_moments() {
        let g = QuadratureGrid::hermite(20).unwrap();
        assert_relative_eq!(g.integrate(|x| x.powi(4)), 0.75 * std::f64::consts::PI.sqrt(), max_relative = 1e-13);
        assert!(g.calibration_residual() < 1e-13);
    }

    #[test]
    fn power_weighted_grids_calibrate() {
        for p in [0.0, 1.0, 2.0 / 3.0, 4.0, 5.0] {
            let g = QuadratureGrid::power_at_left(0.5, 7.0, p, 1.0, 16).unwrap();
            assert!(g.calibration_residual() < 1e-13, "p = {p}");
            let s = QuadratureGrid::abs_power(10.0, p, 1.0, 16).unwrap();
            assert!(s.calibration_residual() < 1e-13);
            // int |x|^p e^{-x^2} = Gamma((p+1)/2)
            assert_relative_eq!(
                s.integrate(|x| (-x * x).exp()),
                gamma((p + 1.0) / 2.0),
                max_relative = 1e-12
            );
        }
        let j = QuadratureGrid::jacobi(0.0, 3.0, 12, 0.5, -0.5).unwrap();
        assert!(j.calibration_residual() < 1e-13);
    }

    #[test]
    fn composite_jacobi_calibrates() {
        for (al, be) in [(0.0, 1.0), (-0.5, 0.5), (1.0 / 3.0, 4.0 / 3.0), (1.0, 2.0)] {
            let g = QuadratureGrid::jacobi_composite(-1.0, 1.0, al, be, 7, 16).unwrap();
            assert!(g.calibration_residual() < 1e-13, "({al}, {be})");
        }
    }

    #[test]
    fn graded_grid_handles_nearby_singularity() {
        // int_a^b (x-a)^p (x+a)^q dx with a small: the (x+a)^q factor is
        // nearly singular at the left end
        let (a, b, p, q) = (1e-3, 5.0, -0.5, 0.5);
        let g = QuadratureGrid::graded_power_at_left(a, b, p, 2.0 * a, 1.0, 16).unwrap();
        assert!(g.calibration_residual() < 1e-13);
        let fine = QuadratureGrid::graded_power_at_left(a, b, p, 2.0 * a, 0.5, 30).unwrap();
        let v1 = g.integrate(|x| (x + a).powf(q));
        let v2 = fine.integrate(|x| (x + a).powf(q));
        assert_relative_eq!(v1, v2, max_relative = 1e-12);
        // int_a^b sqrt((x+a)/(x-a)) dx = sqrt(b^2-a^2) + a ln((b + sqrt(b^2-a^2))/a)
        let r = (b * b - a * a).sqrt();
        let exact = r + a * ((b + r) / a).ln();
        assert_relative_eq!(v1, exact, max_relative = 1e-12);
    }

    #[test]
    fn trapezoid_is_spectral_for_gaussians() {
        let g = QuadratureGrid::trapezoid(-8.0, 8.0, 257).unwrap();
        let exact = (2.0 * std::f64::consts::PI).sqrt();
        assert_relative_eq!(g.integrate(|x| (-0.5 * x * x).exp()), exact, max_relative = 1e-13);
        assert!(g.calibration_residual() < 1e-14);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(GaussRule::jacobi(0, 0.0, 0.0).is_err());
        assert!(GaussRule::jacobi(4, -1.0, 0.0).is_err());
        assert!(QuadratureGrid::power_at_left(1.0, 1.0, 0.0, 1.0, 4).is_err());
    }
}
