//! Sparse multivariate polynomials with exact rational coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{DunklError, Result};
use crate::rational::{self, Q};

/// Exponent multi-index, one entry per variable.
pub type Exponent = Vec<u32>;

/// A polynomial in `dim` variables. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RationalPoly {
    dim: usize,
    terms: BTreeMap<Exponent, Q>,
}

impl RationalPoly {
    pub fn zero(dim: usize) -> Self {
        Self {
            dim,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(dim: usize) -> Self {
        Self::constant(dim, Q::one())
    }

    pub fn constant(dim: usize, c: Q) -> Self {
        Self::monomial(vec![0; dim], c)
    }

    /// `x_j`, zero-based.
    pub fn var(dim: usize, j: usize) -> Self {
        let mut e = vec![0; dim];
        e[j] = 1;
        Self::monomial(e, Q::one())
    }

    pub fn monomial(exponent: Exponent, c: Q) -> Self {
        let dim = exponent.len();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exponent, c);
        }
        Self { dim, terms }
    }

    /// Linear form `<a, x>`.
    pub fn linear(a: &[Q]) -> Self {
        let dim = a.len();
        let mut p = Self::zero(dim);
        for (j, c) in a.iter().enumerate() {
            let mut e = vec![0; dim];
            e[j] = 1;
            p.add_term(e, c.clone());
        }
        p
    }

    pub fn from_terms(dim: usize, terms: impl IntoIterator<Item = (Exponent, Q)>) -> Result<Self> {
        let mut p = Self::zero(dim);
        for (e, c) in terms {
            if e.len() != dim {
                return Err(DunklError::InvalidArgument(format!(
                    "exponent {e:?} does not have {dim} entries"
                )));
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &Q)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, e: &[u32]) -> Q {
        self.terms.get(e).cloned().unwrap_or_else(Q::zero)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|e| e.iter().sum::<u32>());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|x| x == d),
        }
    }

    pub fn homogeneous_component(&self, n: u32) -> Self {
        Self {
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.iter().sum::<u32>() == n)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn add_term(&mut self, e: Exponent, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Self::zero(self.dim);
        }
        Self {
            dim: self.dim,
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    /// Partial derivative with respect to `x_j`.
    pub fn derivative(&self, j: usize) -> Self {
        let mut out = Self::zero(self.dim);
        for (e, c) in &self.terms {
            if e[j] == 0 {
                continue;
            }
            let mut ne = e.clone();
            ne[j] -= 1;
            out.add_term(ne, c * Q::from_integer(e[j].into()));
        }
        out
    }

    /// Directional derivative `<a, grad>`.
    pub fn directional_derivative(&self, a: &[Q]) -> Self {
        let mut out = Self::zero(self.dim);
        for (j, aj) in a.iter().enumerate() {
            if !aj.is_zero() {
                out = out + self.derivative(j).scale(aj);
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one(self.dim);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Composition `p(A x)` with `(A x)_i = sum_j A[i][j] x_j`.
    pub fn compose_linear(&self, a: &[Vec<Q>]) -> Self {
        let forms: Vec<RationalPoly> = a.iter().map(|row| Self::linear(row)).collect();
        // Diagonal maps only rescale coefficients.
        let diagonal = a
            .iter()
            .enumerate()
            .all(|(i, row)| row.iter().enumerate().all(|(j, v)| i == j || v.is_zero()));
        if diagonal {
            let mut out = Self::zero(self.dim);
            for (e, c) in &self.terms {
                let mut coef = c.clone();
                for (i, &k) in e.iter().enumerate() {
                    coef *= num_traits::pow(a[i][i].clone(), k as usize);
                }
                out.add_term(e.clone(), coef);
            }
            return out;
        }
        let mut powers: Vec<Vec<RationalPoly>> = forms
            .iter()
            .map(|f| vec![Self::one(self.dim), f.clone()])
            .collect();
        let mut out = Self::zero(self.dim);
        for (e, c) in &self.terms {
            let mut prod = Self::constant(self.dim, c.clone());
            for (i, &k) in e.iter().enumerate() {
                while powers[i].len() <= k as usize {
                    let next = powers[i].last().unwrap() * &forms[i];
                    powers[i].push(next);
                }
                prod = &prod * &powers[i][k as usize];
            }
            out = out + prod;
        }
        out
    }

    /// Exact division by the linear form `<alpha, x>`.
    ///
    /// Synthetic division in the last variable with `alpha_j != 0`. Fails if the
    /// remainder is nonzero.
    pub fn div_linear(&self, alpha: &[Q]) -> Result<Self> {
        let dim = self.dim;
        let pivot = (0..dim)
            .rev()
            .find(|&j| !alpha[j].is_zero())
            .ok_or_else(|| DunklError::InvalidArgument("division by the zero form".into()))?;
        let ap = alpha[pivot].clone();
        let rest: Vec<Q> = alpha
            .iter()
            .enumerate()
            .map(|(j, a)| if j == pivot { Q::zero() } else { a.clone() })
            .collect();
        let rest_form = Self::linear(&rest);

        // Split p = sum_m c_m(x') x_pivot^m.
        let mut slices: BTreeMap<u32, RationalPoly> = BTreeMap::new();
        for (e, c) in &self.terms {
            let m = e[pivot];
            let mut ne = e.clone();
            ne[pivot] = 0;
            slices
                .entry(m)
                .or_insert_with(|| Self::zero(dim))
                .add_term(ne, c.clone());
        }
        let top = match slices.keys().next_back() {
            None => return Ok(Self::zero(dim)),
            Some(&m) => m,
        };
        let inv = Q::one() / ap;
        // q_{m-1} = (c_m - L q_m) / a_p, descending, with q_top = 0.
        let mut quotient = Self::zero(dim);
        let mut q_next = Self::zero(dim);
        for m in (1..=top).rev() {
            let cm = slices.remove(&m).unwrap_or_else(|| Self::zero(dim));
            let qm1 = (cm - &rest_form * &q_next).scale(&inv);
            for (e, c) in qm1.terms() {
                let mut ne = e.clone();
                ne[pivot] = m - 1;
                quotient.add_term(ne, c.clone());
            }
            q_next = qm1;
        }
        let c0 = slices.remove(&0).unwrap_or_else(|| Self::zero(dim));
        let remainder = c0 - &rest_form * &q_next;
        if !remainder.is_zero() {
            return Err(DunklError::Invariant(format!(
                "division by linear form left remainder {remainder}"
            )));
        }
        Ok(quotient)
    }

    pub fn eval_f64(&self, x: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|(e, c)| {
                let mut m = rational::to_f64(c);
                for (xi, &k) in x.iter().zip(e) {
                    m *= xi.powi(k as i32);
                }
                m
            })
            .sum()
    }

    pub fn eval_exact(&self, x: &[Q]) -> Q {
        let mut acc = Q::zero();
        for (e, c) in &self.terms {
            let mut m = c.clone();
            for (xi, &k) in x.iter().zip(e) {
                m *= num_traits::pow(xi.clone(), k as usize);
            }
            acc += m;
        }
        acc
    }

    /// Coefficients converted to `f64`, for fast repeated evaluation.
    pub fn to_f64_terms(&self) -> Vec<(Exponent, f64)> {
        self.terms
            .iter()
            .map(|(e, c)| (e.clone(), rational::to_f64(c)))
            .collect()
    }

    pub fn to_json_terms(&self) -> Vec<JsonTerm> {
        self.terms
            .iter()
            .map(|(e, c)| JsonTerm {
                exponents: e.clone(),
                coeff: c.clone(),
            })
            .collect()
    }

    pub fn from_json_terms(dim: usize, terms: Vec<JsonTerm>) -> Result<Self> {
        Self::from_terms(dim, terms.into_iter().map(|t| (t.exponents, t.coeff)))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_json_terms()).expect("serializable")
    }

    pub fn from_json(dim: usize, text: &str) -> Result<Self> {
        let terms: Vec<JsonTerm> = serde_json::from_str(text)?;
        Self::from_json_terms(dim, terms)
    }
}

/// One entry of the JSON term list `[{"exponents": [...], "coeff": "p/q"}]`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct JsonTerm {
    pub exponents: Exponent,
    #[serde(with = "crate::rational::serde_q")]
    pub coeff: Q,
}

/// All exponents of total degree `n` in `dim` variables, in lexicographic order.
pub fn exponents_of_degree(dim: usize, n: u32) -> Vec<Exponent> {
    fn rec(dim: usize, n: u32, prefix: &mut Exponent, out: &mut Vec<Exponent>) {
        if prefix.len() + 1 == dim {
            prefix.push(n);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for k in (0..=n).rev() {
            prefix.push(k);
            rec(dim, n - k, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if dim == 0 {
        return out;
    }
    rec(dim, n, &mut Vec::with_capacity(dim), &mut out);
    out
}

impl fmt::Display for RationalPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let a = c.abs();
            let is_const = e.iter().all(|&k| k == 0);
            if !a.is_one() || is_const {
                write!(f, "{}", rational::format_rational(&a))?;
            }
            for (i, &k) in e.iter().enumerate() {
                match k {
                    0 => {}
                    1 => write!(f, "x{}", i + 1)?,
                    _ => write!(f, "x{}^{}", i + 1, k)?,
                }
            }
        }
        Ok(())
    }
}

impl Add for RationalPoly {
    type Output = RationalPoly;
    fn add(mut self, rhs: RationalPoly) -> RationalPoly {
        for (e, c) in rhs.terms {
            self.add_term(e, c);
        }
        self
    }
}

impl Sub for RationalPoly {
    type Output = RationalPoly;
    fn sub(mut self, rhs: RationalPoly) -> RationalPoly {
        for (e, c) in rhs.terms {
            self.add_term(e, -c);
        }
        self
    }
}

impl Neg for RationalPoly {
    type Output = RationalPoly;
    fn neg(self) -> RationalPoly {
        Self {
            dim: self.dim,
            terms: self.terms.into_iter().map(|(e, c)| (e, -c)).collect(),
        }
    }
}

impl Mul for &RationalPoly {
    type Output = RationalPoly;
    fn mul(self, rhs: &RationalPoly) -> RationalPoly {
        let mut out = RationalPoly::zero(self.dim);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let e: Exponent = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }
}

impl Mul for RationalPoly {
    type Output = RationalPoly;
    fn mul(self, rhs: RationalPoly) -> RationalPoly {
        &self * &rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, q_frac};

    fn x(j: usize) -> RationalPoly {
        RationalPoly::var(2, j)
    }

    #[test]
    fn zero_coefficients_are_dropped() {
        let p = x(0) - x(0);
        assert!(p.is_zero());
        assert_eq!(p.degree(), None);
    }

    #[test]
    fn division_by_linear_form() {
        // (x1 + x2)(x1 - 2 x2) / (x1 + x2) = x1 - 2 x2
        let a = x(0) + x(1);
        let b = x(0) - x(1).scale(&q(2));
        let prod = &a * &b;
        assert_eq!(prod.div_linear(&[q(1), q(1)]).unwrap(), b);
        // x1^2 is not divisible by x1 + x2
        let err = x(0).pow(2).div_linear(&[q(1), q(1)]);
        assert!(matches!(err, Err(DunklError::Invariant(_))));
    }

    #[test]
    fn compose_with_reflection() {
        // sigma for alpha = (1, 1): swaps and negates
        let m = vec![vec![q(0), q(-1)], vec![q(-1), q(0)]];
        let p = &x(0).pow(2) * &x(1);
        assert_eq!(p.compose_linear(&m), -(&x(1).pow(2) * &x(0)));
    }

    #[test]
    fn exponent_enumeration() {
        assert_eq!(exponents_of_degree(2, 2), vec![vec![2, 0], vec![1, 1], vec![0, 2]]);
        assert_eq!(exponents_of_degree(3, 4).len(), 15);
    }

    #[test]
    fn json_round_trip() {
        let p = x(0).scale(&q_frac(7, 3)) + RationalPoly::constant(2, q(-1));
        let text = p.to_json();
        assert!(text.contains("\"7/3\""));
        assert_eq!(RationalPoly::from_json(2, &text).unwrap(), p);
    }

    #[test]
    fn display() {
        let p = x(0).pow(2).scale(&q_frac(1, 3)) - x(1);
        assert_eq!(p.to_string(), "1/3x1^2 - x2");
    }
}
