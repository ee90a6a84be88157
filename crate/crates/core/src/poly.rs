//! Small exact polynomial utilities: interpolation through integer nodes and sparse
//! multivariate polynomials with formal differentiation.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::linalg;
use crate::scalar::{self, Scalar};

/// Recovers monomial coefficients of polynomials of degree `< nodes.len()` from
/// their values at `nodes`.
#[derive(Clone, Debug)]
pub struct Interpolator {
    nodes: Vec<Scalar>,
    inverse_vandermonde: linalg::Matrix,
}

impl Interpolator {
    pub fn new(nodes: Vec<Scalar>) -> Self {
        let vdm: linalg::Matrix = nodes
            .iter()
            .map(|x| {
                let mut row = Vec::with_capacity(nodes.len());
                let mut pow = Scalar::one();
                for _ in 0..nodes.len() {
                    row.push(pow.clone());
                    pow *= x;
                }
                row
            })
            .collect();
        let inverse_vandermonde = linalg::inverse(&vdm).expect("interpolation nodes are distinct");
        Self { nodes, inverse_vandermonde }
    }

    /// Nodes `0, 1, ..., degree`.
    pub fn for_degree(degree: usize) -> Self {
        Self::new((0..=degree as i64).map(scalar::int).collect())
    }

    pub fn nodes(&self) -> &[Scalar] {
        &self.nodes
    }

    /// `samples[n]` holds the coordinate vector at `nodes[n]`; returns `coef[d][coord]`.
    pub fn coefficients(&self, samples: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
        let width = samples.first().map_or(0, Vec::len);
        self.inverse_vandermonde
            .iter()
            .map(|row| {
                (0..width)
                    .map(|c| {
                        let mut acc = Scalar::zero();
                        for (w, s) in row.iter().zip(samples) {
                            if !w.is_zero() && !s[c].is_zero() {
                                acc += w * &s[c];
                            }
                        }
                        acc
                    })
                    .collect()
            })
            .collect()
    }
}

pub fn eval_univariate(coefs: &[Scalar], x: &Scalar) -> Scalar {
    coefs.iter().rev().fold(Scalar::zero(), |acc, c| acc * x + c)
}

/// Sparse polynomial in a fixed number of variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Scalar>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Self { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Scalar) -> Self {
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut p = Self::zero(nvars);
        p.terms.insert(e, Scalar::one());
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `(exponent vector, coefficient)` pairs with nonzero coefficients.
    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Scalar)> {
        self.terms.iter()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            let slot = out.terms.entry(e.clone()).or_insert_with(Scalar::zero);
            *slot += c;
            if slot.is_zero() {
                out.terms.remove(e);
            }
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Scalar::one()))
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        if s.is_zero() {
            return Self::zero(self.nvars);
        }
        Self {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * s)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                let slot = out.terms.entry(e.clone()).or_insert_with(Scalar::zero);
                *slot += c1 * c2;
                if slot.is_zero() {
                    out.terms.remove(&e);
                }
            }
        }
        out
    }

    pub fn derivative(&self, i: usize) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[i] -= 1;
            out.terms.insert(e2, c * scalar::int(e[i] as i64));
        }
        out
    }

    pub fn eval(&self, point: &[Scalar]) -> Scalar {
        let mut acc = Scalar::zero();
        'terms: for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e) {
                if k == 0 {
                    continue;
                }
                if x.is_zero() {
                    continue 'terms;
                }
                for _ in 0..k {
                    t *= x;
                }
            }
            acc += t;
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, ratio};

    #[test]
    fn interpolation_recovers_cubic() {
        let ip = Interpolator::for_degree(3);
        let f = |x: &Scalar| int(2) - x * int(3) + x * x * x * ratio(1, 6);
        let samples: Vec<Vec<Scalar>> = ip.nodes().iter().map(|x| vec![f(x)]).collect();
        let c = ip.coefficients(&samples);
        assert_eq!(c, vec![vec![int(2)], vec![int(-3)], vec![int(0)], vec![ratio(1, 6)]]);
        assert_eq!(eval_univariate(&[int(2), int(-3), int(0), ratio(1, 6)], &int(6)), f(&int(6)));
    }

    #[test]
    fn differentiate_product() {
        // d/dx (x^2 y) = 2 x y
        let x = Poly::var(2, 0);
        let y = Poly::var(2, 1);
        let f = x.mul(&x).mul(&y);
        let df = f.derivative(0);
        assert_eq!(df, x.mul(&y).scale(&int(2)));
        assert_eq!(df.eval(&[int(3), int(5)]), int(30));
        assert!(f.derivative(1).derivative(1).is_zero());
        assert!(f.sub(&f).is_zero());
    }
}
