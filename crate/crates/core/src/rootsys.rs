//! Root systems given as data, the finite reflection group they generate,
//! the weight `omega_k`, the index `gamma` and the Mehta-type constant `c_k`.

use std::collections::HashSet;
use std::f64::consts::PI;

use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{DunklError, Result};
use crate::quadrature::QuadratureGrid;
use crate::rational::{self, as_natural, format_rational, parse_rational, to_f64, Q};
use crate::special::gamma;

pub type Matrix = Vec<Vec<Q>>;

pub const DEFAULT_GROUP_CAP: usize = 1024;

fn dot(a: &[Q], b: &[Q]) -> Q {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// `x - 2<a,x>/|a|^2 a`.
pub fn reflect(alpha: &[Q], x: &[Q]) -> Result<Vec<Q>> {
    if alpha.len() != x.len() {
        return Err(DunklError::InvalidArgument("dimension mismatch".into()));
    }
    let nn = dot(alpha, alpha);
    if nn.is_zero() {
        return Err(DunklError::InvalidArgument("zero root vector".into()));
    }
    let c = Q::from_integer(2.into()) * dot(alpha, x) / nn;
    Ok(x.iter().zip(alpha).map(|(xi, ai)| xi - &c * ai).collect())
}

pub fn reflect_f64(alpha: &[f64], x: &[f64]) -> Vec<f64> {
    let nn: f64 = alpha.iter().map(|a| a * a).sum();
    let c = 2.0 * alpha.iter().zip(x).map(|(a, b)| a * b).sum::<f64>() / nn;
    x.iter().zip(alpha).map(|(xi, ai)| xi - c * ai).collect()
}

/// Matrix of the reflection `sigma_alpha`.
pub fn reflection_matrix(alpha: &[Q]) -> Result<Matrix> {
    let d = alpha.len();
    let mut m = Vec::with_capacity(d);
    for i in 0..d {
        let mut e = vec![Q::zero(); d];
        e[i] = Q::one();
        m.push(reflect(alpha, &e)?);
    }
    // columns were images of basis vectors; transpose (symmetric anyway)
    Ok(transpose(&m))
}

fn transpose(m: &Matrix) -> Matrix {
    let d = m.len();
    (0..d).map(|i| (0..d).map(|j| m[j][i].clone()).collect()).collect()
}

fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let d = a.len();
    (0..d)
        .map(|i| {
            (0..d)
                .map(|j| (0..d).map(|k| &a[i][k] * &b[k][j]).sum())
                .collect()
        })
        .collect()
}

pub fn mat_vec(a: &Matrix, x: &[Q]) -> Vec<Q> {
    a.iter().map(|row| dot(row, x)).collect()
}

fn identity(d: usize) -> Matrix {
    (0..d)
        .map(|i| (0..d).map(|j| if i == j { Q::one() } else { Q::zero() }).collect())
        .collect()
}

/// Finite group generated by reflections, stored as exact matrices.
#[derive(Clone, Debug)]
pub struct ReflectionGroup {
    pub elements: Vec<Matrix>,
    pub generators: Vec<Matrix>,
}

impl ReflectionGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements_f64(&self) -> Vec<Vec<Vec<f64>>> {
        self.elements
            .iter()
            .map(|m| m.iter().map(|r| r.iter().map(to_f64).collect()).collect())
            .collect()
    }
}

/// Breadth-first closure of the reflections in `roots`.
pub fn close_group(roots: &[Vec<Q>], cap: usize) -> Result<ReflectionGroup> {
    let d = roots
        .first()
        .map(|r| r.len())
        .ok_or_else(|| DunklError::NotARootSystem("no roots".into()))?;
    let generators = roots
        .iter()
        .map(|a| reflection_matrix(a))
        .collect::<Result<Vec<_>>>()?;
    let id = identity(d);
    let mut seen: HashSet<Matrix> = HashSet::new();
    seen.insert(id.clone());
    let mut elements = vec![id];
    let mut frontier = 0;
    while frontier < elements.len() {
        let g = elements[frontier].clone();
        frontier += 1;
        for s in &generators {
            let h = mat_mul(s, &g);
            if seen.insert(h.clone()) {
                elements.push(h);
                if elements.len() > cap {
                    return Err(DunklError::NotARootSystem(format!(
                        "group closure exceeds {cap} elements"
                    )));
                }
            }
        }
    }
    Ok(ReflectionGroup {
        elements,
        generators,
    })
}

/// Positive roots with a multiplicity per root, validated and closed.
#[derive(Clone, Debug)]
pub struct RootSystem {
    dimension: usize,
    positive_roots: Vec<Vec<Q>>,
    multiplicities: Vec<Q>,
    group: ReflectionGroup,
}

/// Derived data about a multiplicity function.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MultiplicityProfile {
    #[serde(with = "rational::serde_q")]
    pub gamma_index: Q,
    pub is_integer_case: bool,
}

#[derive(Serialize, Deserialize)]
struct RootSystemJson {
    dimension: usize,
    positive_roots: Vec<Vec<serde_json::Value>>,
    multiplicities: Vec<serde_json::Value>,
}

fn value_to_q(v: &serde_json::Value) -> Result<Q> {
    match v {
        serde_json::Value::String(s) => parse_rational(s),
        serde_json::Value::Number(n) => parse_rational(&n.to_string()),
        other => Err(DunklError::Parse(format!("expected rational, got {other}"))),
    }
}

fn parallel(a: &[Q], b: &[Q]) -> bool {
    // a and b are parallel iff all 2x2 minors vanish
    for i in 0..a.len() {
        for j in i + 1..a.len() {
            if &a[i] * &b[j] != &a[j] * &b[i] {
                return false;
            }
        }
    }
    true
}

impl RootSystem {
    pub fn new(dimension: usize, positive_roots: Vec<Vec<Q>>, multiplicities: Vec<Q>) -> Result<Self> {
        Self::with_cap(dimension, positive_roots, multiplicities, DEFAULT_GROUP_CAP)
    }

    pub fn with_cap(
        dimension: usize,
        positive_roots: Vec<Vec<Q>>,
        multiplicities: Vec<Q>,
        cap: usize,
    ) -> Result<Self> {
        if dimension == 0 {
            return Err(DunklError::InvalidArgument("dimension must be positive".into()));
        }
        if positive_roots.is_empty() {
            return Err(DunklError::NotARootSystem("no positive roots".into()));
        }
        if positive_roots.len() != multiplicities.len() {
            return Err(DunklError::InvalidArgument(format!(
                "{} roots but {} multiplicities",
                positive_roots.len(),
                multiplicities.len()
            )));
        }
        for r in &positive_roots {
            if r.len() != dimension {
                return Err(DunklError::InvalidArgument(format!(
                    "root of length {} in dimension {dimension}",
                    r.len()
                )));
            }
            if r.iter().all(Zero::is_zero) {
                return Err(DunklError::InvalidArgument("zero root vector".into()));
            }
        }
        if let Some(k) = multiplicities.iter().find(|k| k.is_negative()) {
            return Err(DunklError::InvalidArgument(format!(
                "negative multiplicity {}",
                format_rational(k)
            )));
        }
        for i in 0..positive_roots.len() {
            for j in i + 1..positive_roots.len() {
                if parallel(&positive_roots[i], &positive_roots[j]) {
                    return Err(DunklError::NotARootSystem(format!(
                        "roots {i} and {j} are parallel"
                    )));
                }
            }
        }
        // R = R+ u -R+ must be stable under every sigma_alpha
        let full: Vec<Vec<Q>> = positive_roots
            .iter()
            .flat_map(|r| [r.clone(), r.iter().map(|c| -c).collect()])
            .collect();
        let full_set: HashSet<Vec<Q>> = full.iter().cloned().collect();
        for a in &positive_roots {
            for b in &full {
                if !full_set.contains(&reflect(a, b)?) {
                    return Err(DunklError::NotARootSystem(
                        "root set is not closed under its reflections".into(),
                    ));
                }
            }
        }
        let group = close_group(&positive_roots, cap)?;
        // multiplicity must be constant on W-orbits
        for (i, a) in positive_roots.iter().enumerate() {
            for w in &group.elements {
                let wa = mat_vec(w, a);
                let neg: Vec<Q> = wa.iter().map(|c| -c).collect();
                let j = positive_roots
                    .iter()
                    .position(|b| *b == wa || *b == neg)
                    .ok_or_else(|| DunklError::Invariant("orbit left the root set".into()))?;
                if multiplicities[i] != multiplicities[j] {
                    return Err(DunklError::InvalidArgument(format!(
                        "multiplicity differs on the orbit of roots {i} and {j}"
                    )));
                }
            }
        }
        Ok(Self {
            dimension,
            positive_roots,
            multiplicities,
            group,
        })
    }

    /// `z2:g`, `z2xz2:k1,k2`, `z2n:k1,...,kd` or `b2:k_short,k_long`.
    pub fn preset(spec: &str) -> Result<Self> {
        let (name, args) = spec
            .split_once(':')
            .ok_or_else(|| DunklError::Usage(format!("preset {spec:?} has no ':'")))?;
        let ks = args
            .split(',')
            .map(parse_rational)
            .collect::<Result<Vec<_>>>()?;
        let axis = |d: usize, j: usize| -> Vec<Q> {
            (0..d).map(|i| if i == j { Q::one() } else { Q::zero() }).collect()
        };
        match (name.trim(), ks.len()) {
            ("z2", 1) => Self::new(1, vec![vec![Q::one()]], ks),
            ("z2xz2", 2) => Self::new(2, vec![axis(2, 0), axis(2, 1)], ks),
            ("z2n", d) if d >= 1 => Self::new(d, (0..d).map(|j| axis(d, j)).collect(), ks),
            ("b2", 2) => {
                let one = Q::one();
                Self::new(
                    2,
                    vec![
                        axis(2, 0),
                        axis(2, 1),
                        vec![one.clone(), one.clone()],
                        vec![one.clone(), -one],
                    ],
                    vec![ks[0].clone(), ks[0].clone(), ks[1].clone(), ks[1].clone()],
                )
            }
            _ => Err(DunklError::Usage(format!("unknown preset {spec:?}"))),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: RootSystemJson = serde_json::from_str(text)?;
        let roots = raw
            .positive_roots
            .iter()
            .map(|r| r.iter().map(value_to_q).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let ks = raw
            .multiplicities
            .iter()
            .map(value_to_q)
            .collect::<Result<Vec<_>>>()?;
        Self::new(raw.dimension, roots, ks)
    }

    pub fn to_json(&self) -> String {
        let s = |q: &Q| serde_json::Value::String(format_rational(q));
        let raw = RootSystemJson {
            dimension: self.dimension,
            positive_roots: self
                .positive_roots
                .iter()
                .map(|r| r.iter().map(s).collect())
                .collect(),
            multiplicities: self.multiplicities.iter().map(s).collect(),
        };
        serde_json::to_string(&raw).expect("serializable")
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn positive_roots(&self) -> &[Vec<Q>] {
        &self.positive_roots
    }

    pub fn multiplicities(&self) -> &[Q] {
        &self.multiplicities
    }

    pub fn group(&self) -> &ReflectionGroup {
        &self.group
    }

    /// `gamma = sum k(alpha)` over positive roots.
    pub fn gamma(&self) -> Q {
        self.multiplicities.iter().sum()
    }

    pub fn gamma_f64(&self) -> f64 {
        to_f64(&self.gamma())
    }

    pub fn profile(&self) -> MultiplicityProfile {
        MultiplicityProfile {
            gamma_index: self.gamma(),
            is_integer_case: self.is_integer_case(),
        }
    }

    /// Every `k(alpha)` is a positive integer.
    pub fn is_integer_case(&self) -> bool {
        self.multiplicities
            .iter()
            .all(|k| as_natural(k).is_some_and(|n| n > 0))
    }

    /// For a product group Z_2^d: the multiplicity attached to each axis
    /// (zero for axes without a root) and the root scale on that axis.
    pub fn product_structure(&self) -> Option<Vec<(Q, Q)>> {
        let d = self.dimension;
        let mut out = vec![(Q::zero(), Q::one()); d];
        let mut used = vec![false; d];
        for (r, k) in self.positive_roots.iter().zip(&self.multiplicities) {
            let nz: Vec<usize> = (0..d).filter(|&i| !r[i].is_zero()).collect();
            if nz.len() != 1 || used[nz[0]] {
                return None;
            }
            used[nz[0]] = true;
            out[nz[0]] = (k.clone(), r[nz[0]].abs());
        }
        Some(out)
    }

    /// Per-axis multiplicities as floats, when the group is a product.
    pub fn axis_gammas(&self) -> Option<Vec<f64>> {
        self.product_structure()
            .map(|v| v.iter().map(|(k, _)| to_f64(k)).collect())
    }

    /// `omega_k(x) = prod |<alpha, x>|^{2 k(alpha)}`.
    pub fn weight(&self, x: &[f64]) -> f64 {
        self.positive_roots
            .iter()
            .zip(&self.multiplicities)
            .map(|(a, k)| {
                let s: f64 = a.iter().zip(x).map(|(ai, xi)| to_f64(ai) * xi).sum();
                s.abs().powf(2.0 * to_f64(k))
            })
            .product()
    }

    /// Exact weight at a rational point; needs integer multiplicities.
    pub fn weight_exact(&self, x: &[Q]) -> Option<Q> {
        let mut w = Q::one();
        for (a, k) in self.positive_roots.iter().zip(&self.multiplicities) {
            let n = as_natural(k)?;
            let s = dot(a, x).abs();
            w *= num_traits::pow(s, 2 * n as usize);
        }
        Some(w)
    }

    /// Exact `c_k^{-1} / pi^{m/2}` for product groups with integer or
    /// half-integer multiplicities, with `m` the number of axes whose
    /// `Gamma(k + 1/2)` carries a `sqrt(pi)`.
    fn mehta_inverse_exact(&self) -> Option<(Q, usize)> {
        let axes = self.product_structure()?;
        let mut q = Q::one();
        let mut m = 0;
        for (k, a) in &axes {
            let twice = as_natural(&(k * Q::from_integer(2.into())))?;
            if twice % 2 == 0 {
                // Gamma(n + 1/2) = (2n)! sqrt(pi) / (4^n n!)
                let n = twice / 2;
                q *= factorial(2 * n) / (num_traits::pow(Q::from_integer(4.into()), n as usize) * factorial(n));
                m += 1;
            } else {
                // Gamma(n + 1) = n!
                q *= factorial(twice / 2);
            }
            q *= num_traits::pow(a.clone(), twice as usize);
        }
        Some((q, m))
    }

    /// `c_k = (int e^{-|x|^2} omega_k(x) dx)^{-1}`.
    pub fn mehta_constant(&self) -> Result<f64> {
        if let Some(axes) = self.product_structure() {
            let mut inv = 1.0;
            for (k, a) in &axes {
                let kf = to_f64(k);
                inv *= to_f64(a).powf(2.0 * kf) * gamma(kf + 0.5);
            }
            return Ok(1.0 / inv);
        }
        if self.dimension == 2 {
            return self.mehta_constant_polar();
        }
        self.mehta_constant_hermite()
    }

    /// Polar coordinates: the radial factor is `Gamma(gamma+1)/2`, the
    /// angular factor is integrated arc by arc between hyperplane zeros with
    /// Jacobi weights absorbing the zero of each adjacent factor.
    fn mehta_constant_polar(&self) -> Result<f64> {
        let roots: Vec<(f64, f64, f64)> = self
            .positive_roots
            .iter()
            .zip(&self.multiplicities)
            .map(|(a, k)| (to_f64(&a[0]), to_f64(&a[1]), to_f64(k)))
            .collect();
        // zero angles of <alpha, (cos t, sin t)> in [0, 2 pi)
        let mut zeros: Vec<(f64, f64)> = Vec::new();
        for &(a0, a1, k) in &roots {
            let t0 = (a1.atan2(a0) + 0.5 * PI).rem_euclid(PI);
            zeros.push((t0, k));
            zeros.push((t0 + PI, k));
        }
        zeros.sort_by(|a, b| a.0.total_cmp(&b.0));
        let g = self.gamma_f64();
        let angular = |n: usize| -> Result<f64> {
            let mut total = 0.0;
            for i in 0..zeros.len() {
                let (lo, klo) = zeros[i];
                let (hi, khi) = if i + 1 < zeros.len() {
                    zeros[i + 1]
                } else {
                    (zeros[0].0 + 2.0 * PI, zeros[0].1)
                };
                let grid = QuadratureGrid::jacobi(lo, hi, n, 2.0 * khi, 2.0 * klo)?;
                total += grid.integrate(|t| {
                    let u = [t.cos(), t.sin()];
                    let w: f64 = roots
                        .iter()
                        .map(|&(a0, a1, k)| (a0 * u[0] + a1 * u[1]).abs().powf(2.0 * k))
                        .product();
                    let sing = (t - lo).powf(2.0 * klo) * (hi - t).powf(2.0 * khi);
                    if sing == 0.0 {
                        0.0
                    } else {
                        w / sing
                    }
                });
            }
            Ok(total)
        };
        let a1 = angular(40)?;
        let a2 = angular(60)?;
        let residual = ((a1 - a2) / a2).abs();
        if residual > 1e-12 {
            return Err(DunklError::Accuracy {
                what: "angular Mehta integral".into(),
                residual,
            });
        }
        Ok(1.0 / (0.5 * gamma(g + 1.0) * a2))
    }

    fn mehta_constant_hermite(&self) -> Result<f64> {
        let d = self.dimension;
        if d > 4 {
            return Err(DunklError::Unsupported(format!(
                "Mehta quadrature in dimension {d}"
            )));
        }
        let integrate = |n: usize| -> Result<f64> {
            let rule = QuadratureGrid::hermite(n)?;
            let mut idx = vec![0usize; d];
            let mut total = 0.0;
            loop {
                let x: Vec<f64> = idx.iter().map(|&i| rule.nodes[i]).collect();
                let w: f64 = idx.iter().map(|&i| rule.weights[i]).product();
                total += w * self.weight(&x);
                let mut j = 0;
                loop {
                    if j == d {
                        return Ok(total);
                    }
                    idx[j] += 1;
                    if idx[j] < n {
                        break;
                    }
                    idx[j] = 0;
                    j += 1;
                }
            }
        };
        let a = integrate(40)?;
        let b = integrate(60)?;
        let residual = ((a - b) / b).abs();
        if residual > 1e-10 {
            return Err(DunklError::Accuracy {
                what: "Gauss-Hermite Mehta integral".into(),
                residual,
            });
        }
        Ok(1.0 / b)
    }

    /// `pi^d c_k^2 / 2^{2 gamma}` as an exact rational when the group is a
    /// product and every multiplicity is a non-negative integer.
    pub fn p_prefactor_exact(&self) -> Option<Q> {
        if !self.multiplicities.iter().all(|k| as_natural(k).is_some()) {
            return None;
        }
        let (q, m) = self.mehta_inverse_exact()?;
        if m != self.dimension {
            return None;
        }
        let g = as_natural(&self.gamma())?;
        Some(Q::one() / (&q * &q * num_traits::pow(Q::from_integer(2.into()), 2 * g as usize)))
    }

    /// `pi^d c_k^2 / 2^{2 gamma}` numerically.
    pub fn p_prefactor(&self) -> Result<f64> {
        let c = self.mehta_constant()?;
        Ok(PI.powi(self.dimension as i32) * c * c / 2f64.powf(2.0 * self.gamma_f64()))
    }

    pub fn describe(&self) -> String {
        let roots: Vec<String> = self
            .positive_roots
            .iter()
            .zip(&self.multiplicities)
            .map(|(r, k)| {
                let c: Vec<String> = r.iter().map(format_rational).collect();
                format!("({}) k={}", c.join(","), format_rational(k))
            })
            .collect();
        format!("d={} [{}]", self.dimension, roots.join("; "))
    }
}

fn factorial(n: u32) -> Q {
    let mut f = Q::one();
    for i in 2..=n {
        f *= Q::from_integer(i.into());
    }
    f
}

/// Convenience: the float value of a rational slice.
pub fn to_f64_vec(v: &[Q]) -> Vec<f64> {
    v.iter().map(|c| c.to_f64().unwrap_or(f64::NAN)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, q_frac};
    use approx::assert_relative_eq;

    fn v(xs: &[i64]) -> Vec<Q> {
        xs.iter().map(|&x| q(x)).collect()
    }

    #[test]
    fn reflect_examples() {
        assert_eq!(reflect(&v(&[1, 0]), &v(&[3, 5])).unwrap(), v(&[-3, 5]));
        assert_eq!(reflect(&v(&[1, 1]), &v(&[1, 1])).unwrap(), v(&[-1, -1]));
        assert_eq!(reflect(&v(&[1, 1]), &v(&[2, -2])).unwrap(), v(&[2, -2]));
        assert!(reflect(&v(&[0, 0]), &v(&[1, 1])).is_err());
    }

    #[test]
    fn group_orders() {
        assert_eq!(RootSystem::preset("z2:1").unwrap().group().order(), 2);
        assert_eq!(RootSystem::preset("z2xz2:1,2").unwrap().group().order(), 4);
        assert_eq!(RootSystem::preset("b2:1,1").unwrap().group().order(), 8);
        assert_eq!(RootSystem::preset("z2n:1,1,1").unwrap().group().order(), 8);
    }

    #[test]
    fn group_cap_is_enforced() {
        let b2 = RootSystem::preset("b2:1,1").unwrap();
        let err = close_group(b2.positive_roots(), 5).unwrap_err();
        assert!(matches!(err, DunklError::NotARootSystem(_)));
    }

    #[test]
    fn rejects_bad_systems() {
        // (1,0) and (1,1) alone are not closed
        assert!(RootSystem::new(2, vec![v(&[1, 0]), v(&[1, 1])], vec![q(1), q(1)]).is_err());
        assert!(RootSystem::new(2, vec![v(&[1, 0]), v(&[2, 0])], vec![q(1), q(1)]).is_err());
        assert!(RootSystem::new(1, vec![v(&[1])], vec![q(-1)]).is_err());
        // B2 with a multiplicity that is not constant on the short orbit
        let r = vec![v(&[1, 0]), v(&[0, 1]), v(&[1, 1]), v(&[1, -1])];
        assert!(RootSystem::new(2, r, vec![q(1), q(2), q(1), q(1)]).is_err());
    }

    #[test]
    fn weight_examples() {
        let z2 = RootSystem::preset("z2:1").unwrap();
        assert_eq!(z2.weight(&[2.0]), 4.0);
        let p = RootSystem::preset("z2xz2:1,2").unwrap();
        assert_eq!(p.weight(&[1.0, 2.0]), 16.0);
        assert_eq!(p.weight(&[0.0, 2.0]), 0.0);
        assert_eq!(p.weight_exact(&v(&[1, 2])).unwrap(), q(16));
    }

    #[test]
    fn mehta_closed_forms() {
        let c = RootSystem::preset("z2:1").unwrap().mehta_constant().unwrap();
        assert_relative_eq!(c, 2.0 / PI.sqrt(), max_relative = 1e-14);
        assert_relative_eq!(c, 1.1283791671, epsilon = 1e-10);
        let c = RootSystem::preset("z2:1/2").unwrap().mehta_constant().unwrap();
        assert_relative_eq!(c, 1.0, max_relative = 1e-14);
        let c = RootSystem::preset("z2xz2:1,1").unwrap().mehta_constant().unwrap();
        assert_relative_eq!(c, 4.0 / PI, max_relative = 1e-14);
    }

    #[test]
    fn mehta_polar_matches_closed_form_on_a_product() {
        // rotate Z2 x Z2 by 45 degrees: roots (1,1), (1,-1); omega picks up 2^{2k}
        let rs = RootSystem::new(2, vec![v(&[1, 1]), v(&[1, -1])], vec![q(1), q(1)]).unwrap();
        assert!(rs.product_structure().is_none());
        let c = rs.mehta_constant().unwrap();
        assert_relative_eq!(c, 4.0 / PI / 4.0, max_relative = 1e-12);
    }

    #[test]
    fn mehta_b2_polar_and_hermite_agree() {
        let rs = RootSystem::preset("b2:1,1").unwrap();
        let polar = rs.mehta_constant_polar().unwrap();
        let herm = rs.mehta_constant_hermite().unwrap();
        assert_relative_eq!(polar, herm, max_relative = 1e-10);
    }

    #[test]
    fn exact_prefactor() {
        for (spec, expect) in [("z2:1", q(1)), ("z2:2", q_frac(1, 9)), ("z2xz2:1,1", q(1))] {
            let rs = RootSystem::preset(spec).unwrap();
            let exact = rs.p_prefactor_exact().unwrap();
            assert_eq!(exact, expect, "{spec}");
            assert_relative_eq!(to_f64(&exact), rs.p_prefactor().unwrap(), max_relative = 1e-12);
        }
        assert!(RootSystem::preset("z2:1/2").unwrap().p_prefactor_exact().is_none());
    }

    #[test]
    fn json_round_trip() {
        let rs = RootSystem::preset("b2:1/2,2").unwrap();
        let back = RootSystem::from_json(&rs.to_json()).unwrap();
        assert_eq!(back.positive_roots(), rs.positive_roots());
        assert_eq!(back.multiplicities(), rs.multiplicities());
        let text = r#"{"dimension":1,"positive_roots":[["1"]],"multiplicities":["7/3"]}"#;
        assert_eq!(RootSystem::from_json(text).unwrap().gamma(), q_frac(7, 3));
    }

    #[test]
    fn profile() {
        let p = RootSystem::preset("b2:1,2").unwrap().profile();
        assert_eq!(p.gamma_index, q(6));
        assert!(p.is_integer_case);
        assert!(!RootSystem::preset("z2:1/2").unwrap().is_integer_case());
        assert!(!RootSystem::preset("z2:0").unwrap().is_integer_case());
    }
}
