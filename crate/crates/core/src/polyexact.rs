//! Exact Dunkl operators on rational polynomials, the intertwining operator
//! `V_k` and its inverse, and the integer-case operators `P` and `Q`.
//!
//! `V_k` is built degree by degree from the Euler identity
//! `sum_j x_j T_j = E + sum_a k(a) (I - s_a)`: applied to `V_k x^nu` with
//! `T_j V_k = V_k d_j` it gives
//!
//! ```text
//! ((n + gamma) I - sum_a k(a) s_a) V_k x^nu = sum_j nu_j x_j V_k x^{nu - e_j}
//! ```
//!
//! whose left-hand matrix is invertible on `P_n` for `k >= 0`, `n >= 1`. The
//! inverse satisfies `d_j V^{-1} = V^{-1} T_j`, so `n V^{-1} q = sum_j x_j
//! V^{-1}(T_j q)` on `P_n`.

use std::collections::HashMap;
use std::sync::Mutex;

use num_traits::{One, Zero};

use crate::error::{DunklError, Result};
use crate::poly::{exponents_of_degree, Exponent, RationalPoly};
use crate::rational::{as_natural, to_f64, Q};
use crate::rootsys::{reflection_matrix, Matrix, RootSystem};

fn check_dim(rs: &RootSystem, p: &RationalPoly) -> Result<()> {
    if p.dim() != rs.dimension() {
        return Err(DunklError::InvalidArgument(format!(
            "polynomial in {} variables, root system in dimension {}",
            p.dim(),
            rs.dimension()
        )));
    }
    Ok(())
}

/// Precomputed reflections for repeated Dunkl operator application.
#[derive(Clone, Debug)]
pub struct DunklOperators {
    roots: Vec<Vec<Q>>,
    ks: Vec<Q>,
    reflections: Vec<Matrix>,
    dim: usize,
}

impl DunklOperators {
    pub fn new(rs: &RootSystem) -> Result<Self> {
        let reflections = rs
            .positive_roots()
            .iter()
            .map(|a| reflection_matrix(a))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            roots: rs.positive_roots().to_vec(),
            ks: rs.multiplicities().to_vec(),
            reflections,
            dim: rs.dimension(),
        })
    }

    /// `T_j p`, zero-based axis.
    pub fn apply(&self, j: usize, p: &RationalPoly) -> Result<RationalPoly> {
        let mut e = vec![Q::zero(); self.dim];
        e[j] = Q::one();
        self.apply_directional(&e, p)
    }

    /// `sum_j a_j T_j p`.
    pub fn apply_directional(&self, a: &[Q], p: &RationalPoly) -> Result<RationalPoly> {
        if a.len() != self.dim || p.dim() != self.dim {
            return Err(DunklError::InvalidArgument("dimension mismatch".into()));
        }
        let mut out = p.directional_derivative(a);
        for ((alpha, k), s) in self.roots.iter().zip(&self.ks).zip(&self.reflections) {
            let weight: Q = alpha.iter().zip(a).map(|(x, y)| x * y).sum::<Q>() * k;
            if weight.is_zero() {
                continue;
            }
            let diff = p.clone() - p.compose_linear(s);
            if diff.is_zero() {
                continue;
            }
            out = out + diff.div_linear(alpha)?.scale(&weight);
        }
        Ok(out)
    }

    /// `s_a p = p o sigma_a` for the i-th positive root.
    fn reflect_poly(&self, i: usize, p: &RationalPoly) -> RationalPoly {
        p.compose_linear(&self.reflections[i])
    }
}

/// `T_j p` for a zero-based axis `j`.
pub fn dunkl_apply(rs: &RootSystem, j: usize, p: &RationalPoly) -> Result<RationalPoly> {
    check_dim(rs, p)?;
    if j >= rs.dimension() {
        return Err(DunklError::InvalidArgument(format!(
            "axis {j} out of range for dimension {}",
            rs.dimension()
        )));
    }
    DunklOperators::new(rs)?.apply(j, p)
}

/// Exact Gauss–Jordan inverse of a square rational matrix.
fn invert(mut m: Vec<Vec<Q>>) -> Option<Vec<Vec<Q>>> {
    let n = m.len();
    let mut inv: Vec<Vec<Q>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { Q::one() } else { Q::zero() }).collect())
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, piv);
        inv.swap(col, piv);
        let s = Q::one() / &m[col][col];
        for j in 0..n {
            if !m[col][j].is_zero() {
                m[col][j] *= &s;
            }
            if !inv[col][j].is_zero() {
                inv[col][j] *= &s;
            }
        }
        for r in 0..n {
            if r == col || m[r][col].is_zero() {
                continue;
            }
            let f = m[r][col].clone();
            for j in 0..n {
                if !m[col][j].is_zero() {
                    let t = &f * &m[col][j];
                    m[r][j] -= t;
                }
                if !inv[col][j].is_zero() {
                    let t = &f * &inv[col][j];
                    inv[r][j] -= t;
                }
            }
        }
    }
    Some(inv)
}

#[derive(Default)]
struct Tables {
    /// `forward[n][nu] = V_k x^nu`
    forward: Vec<HashMap<Exponent, RationalPoly>>,
    inverse: HashMap<Exponent, RationalPoly>,
}

/// `V_k` and `V_k^{-1}` on polynomials, with per-monomial caching.
pub struct Intertwiner {
    ops: DunklOperators,
    dim: usize,
    gamma: Q,
    tables: Mutex<Tables>,
}

impl Intertwiner {
    pub fn new(rs: &RootSystem) -> Result<Self> {
        Ok(Self {
            ops: DunklOperators::new(rs)?,
            dim: rs.dimension(),
            gamma: rs.gamma(),
            tables: Mutex::new(Tables::default()),
        })
    }

    pub fn operators(&self) -> &DunklOperators {
        &self.ops
    }

    fn tables(&self) -> std::sync::MutexGuard<'_, Tables> {
        self.tables.lock().unwrap_or_else(|e| e.into_inner())
    }

    fn ensure_degree(&self, t: &mut Tables, n: u32) -> Result<()> {
        while t.forward.len() <= n as usize {
            let m = t.forward.len() as u32;
            let table = self.build_degree(t, m)?;
            t.forward.push(table);
        }
        Ok(())
    }

    fn build_degree(&self, t: &Tables, n: u32) -> Result<HashMap<Exponent, RationalPoly>> {
        let basis = exponents_of_degree(self.dim, n);
        let mut out = HashMap::with_capacity(basis.len());
        if n == 0 {
            out.insert(vec![0; self.dim], RationalPoly::one(self.dim));
            return Ok(out);
        }
        let index: HashMap<&Exponent, usize> = basis.iter().enumerate().map(|(i, e)| (e, i)).collect();
        let size = basis.len();
        // A = (n + gamma) I - sum_a k(a) s_a, column c = image of basis[c]
        let mut a = vec![vec![Q::zero(); size]; size];
        let diag = Q::from_integer(n.into()) + &self.gamma;
        for (c, e) in basis.iter().enumerate() {
            a[c][c] += &diag;
            let mono = RationalPoly::monomial(e.clone(), Q::one());
            for (i, k) in self.ops.ks.iter().enumerate() {
                if k.is_zero() {
                    continue;
                }
                for (f, v) in self.ops.reflect_poly(i, &mono).terms() {
                    a[index[f]][c] -= k * v;
                }
            }
        }
        let inv = invert(a).ok_or_else(|| {
            DunklError::Invariant(format!("Euler system of degree {n} is singular"))
        })?;
        let prev = &t.forward[n as usize - 1];
        for e in &basis {
            let mut rhs = RationalPoly::zero(self.dim);
            for j in 0..self.dim {
                if e[j] == 0 {
                    continue;
                }
                let mut lower = e.clone();
                lower[j] -= 1;
                let v = &prev[&lower];
                let xj = RationalPoly::var(self.dim, j);
                rhs = rhs + (&xj * v).scale(&Q::from_integer(e[j].into()));
            }
            let mut sol = RationalPoly::zero(self.dim);
            for (f, v) in rhs.terms() {
                let col = index[f];
                for (r, row) in inv.iter().enumerate() {
                    if !row[col].is_zero() {
                        sol.add_term(basis[r].clone(), &row[col] * v);
                    }
                }
            }
            out.insert(e.clone(), sol);
        }
        Ok(out)
    }

    /// `V_k x^nu`.
    pub fn monomial_image(&self, nu: &[u32]) -> Result<RationalPoly> {
        let n: u32 = nu.iter().sum();
        let mut t = self.tables();
        self.ensure_degree(&mut t, n)?;
        Ok(t.forward[n as usize][nu].clone())
    }

    /// All `V_k x^nu` with `|nu| = n`.
    pub fn degree_table(&self, n: u32) -> Result<Vec<(Exponent, RationalPoly)>> {
        let mut t = self.tables();
        self.ensure_degree(&mut t, n)?;
        Ok(exponents_of_degree(self.dim, n)
            .into_iter()
            .map(|e| {
                let v = t.forward[n as usize][&e].clone();
                (e, v)
            })
            .collect())
    }

    pub fn apply(&self, p: &RationalPoly) -> Result<RationalPoly> {
        if p.dim() != self.dim {
            return Err(DunklError::InvalidArgument("dimension mismatch".into()));
        }
        let mut t = self.tables();
        if let Some(d) = p.degree() {
            self.ensure_degree(&mut t, d)?;
        }
        let mut out = RationalPoly::zero(self.dim);
        for (e, c) in p.terms() {
            let n: u32 = e.iter().sum();
            out = out + t.forward[n as usize][e].scale(c);
        }
        Ok(out)
    }

    fn inverse_monomial(&self, e: &Exponent) -> Result<RationalPoly> {
        if let Some(v) = self.tables().inverse.get(e) {
            return Ok(v.clone());
        }
        let n: u32 = e.iter().sum();
        let mono = RationalPoly::monomial(e.clone(), Q::one());
        let v = if n == 0 {
            mono
        } else {
            let mut acc = RationalPoly::zero(self.dim);
            for j in 0..self.dim {
                let tj = self.ops.apply(j, &mono)?;
                let inner = self.apply_inverse(&tj)?;
                acc = acc + &RationalPoly::var(self.dim, j) * &inner;
            }
            acc.scale(&(Q::one() / Q::from_integer(n.into())))
        };
        self.tables().inverse.insert(e.clone(), v.clone());
        Ok(v)
    }

    pub fn apply_inverse(&self, p: &RationalPoly) -> Result<RationalPoly> {
        if p.dim() != self.dim {
            return Err(DunklError::InvalidArgument("dimension mismatch".into()));
        }
        let mut out = RationalPoly::zero(self.dim);
        for (e, c) in p.terms() {
            out = out + self.inverse_monomial(e)?.scale(c);
        }
        Ok(out)
    }
}

/// `V_k p`.
pub fn intertwine(rs: &RootSystem, p: &RationalPoly) -> Result<RationalPoly> {
    check_dim(rs, p)?;
    Intertwiner::new(rs)?.apply(p)
}

/// `V_k^{-1} p`.
pub fn intertwine_inverse(rs: &RootSystem, p: &RationalPoly) -> Result<RationalPoly> {
    check_dim(rs, p)?;
    Intertwiner::new(rs)?.apply_inverse(p)
}

/// The scalar `pi^d c_k^2 / 2^{2 gamma}` in front of `P` and `Q`.
#[derive(Clone, Debug, PartialEq)]
pub struct OperatorConstants {
    /// Exact value, available for product groups with integer multiplicities.
    pub exact: Option<Q>,
    pub value: f64,
}

impl OperatorConstants {
    pub fn new(rs: &RootSystem) -> Result<Self> {
        let exact = rs.p_prefactor_exact();
        let value = match &exact {
            Some(q) => to_f64(q),
            None => rs.p_prefactor()?,
        };
        Ok(Self { exact, value })
    }
}

fn integer_multiplicities(rs: &RootSystem) -> Result<Vec<u32>> {
    if !rs.is_integer_case() {
        return Err(DunklError::Unsupported(
            "P and Q as local operators need positive integer multiplicities".into(),
        ));
    }
    Ok(rs
        .multiplicities()
        .iter()
        .map(|k| as_natural(k).expect("checked"))
        .collect())
}

fn sign_of(ks: &[u32]) -> Q {
    if ks.iter().sum::<u32>() % 2 == 0 {
        Q::one()
    } else {
        -Q::one()
    }
}

fn exact_prefactor(rs: &RootSystem) -> Result<Q> {
    OperatorConstants::new(rs)?.exact.ok_or_else(|| {
        DunklError::Unsupported("no exact closed form for the P/Q prefactor of this group".into())
    })
}

/// `prod_a (-1)^k (a . grad)^{2k} f` without the scalar prefactor.
pub fn apply_p_unscaled(rs: &RootSystem, f: &RationalPoly) -> Result<RationalPoly> {
    check_dim(rs, f)?;
    let ks = integer_multiplicities(rs)?;
    let mut g = f.clone();
    for (a, &k) in rs.positive_roots().iter().zip(&ks) {
        for _ in 0..2 * k {
            g = g.directional_derivative(a);
        }
    }
    Ok(g.scale(&sign_of(&ks)))
}

/// `P f` for integer multiplicities, exact.
pub fn apply_p_poly(rs: &RootSystem, f: &RationalPoly) -> Result<RationalPoly> {
    let g = apply_p_unscaled(rs, f)?;
    Ok(g.scale(&exact_prefactor(rs)?))
}

/// `prod_a (-1)^k (a . T)^{2k} f` without the scalar prefactor.
pub fn apply_q_unscaled(rs: &RootSystem, f: &RationalPoly) -> Result<RationalPoly> {
    check_dim(rs, f)?;
    let ks = integer_multiplicities(rs)?;
    let ops = DunklOperators::new(rs)?;
    let mut g = f.clone();
    for (a, &k) in rs.positive_roots().iter().zip(&ks) {
        for _ in 0..2 * k {
            g = ops.apply_directional(a, &g)?;
        }
    }
    Ok(g.scale(&sign_of(&ks)))
}

/// `Q f` for integer multiplicities, exact.
pub fn apply_q_poly(rs: &RootSystem, f: &RationalPoly) -> Result<RationalPoly> {
    let g = apply_q_unscaled(rs, f)?;
    Ok(g.scale(&exact_prefactor(rs)?))
}
