//! Sparse structure-constant tables and exhaustive Jacobi checks.

use std::ops::{Add, Mul, Neg};

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

/// Coefficient rings usable in structure-constant tables.
pub trait Coeff:
    Clone + Zero + PartialEq + Send + Sync + Add<Output = Self> + Mul<Output = Self> + Neg<Output = Self>
{
}

impl<T> Coeff for T where
    T: Clone + Zero + PartialEq + Send + Sync + Add<Output = T> + Mul<Output = T> + Neg<Output = T>
{
}

/// A sparse vector: `(basis index, coefficient)` pairs with nonzero coefficients.
pub type Sparse<T> = Vec<(usize, T)>;

/// `[e_a, e_b]` for every ordered pair of basis vectors.
#[derive(Clone, Debug)]
pub struct StructureConstants<T> {
    dim: usize,
    table: Vec<Sparse<T>>,
}

impl<T: Coeff> StructureConstants<T> {
    pub fn from_fn<F>(dim: usize, bracket: F) -> Self
    where
        F: Fn(usize, usize) -> Sparse<T> + Sync,
    {
        let table = (0..dim * dim)
            .into_par_iter()
            .map(|idx| {
                let mut v = bracket(idx / dim, idx % dim);
                v.retain(|(_, c)| !c.is_zero());
                v.sort_by_key(|(i, _)| *i);
                v
            })
            .collect();
        Self { dim, table }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, a: usize, b: usize) -> &Sparse<T> {
        &self.table[a * self.dim + b]
    }

    /// Bracket of two sparse vectors.
    pub fn bracket(&self, x: &Sparse<T>, y: &Sparse<T>) -> Sparse<T> {
        let mut acc = vec![T::zero(); self.dim];
        for (a, xa) in x {
            for (b, yb) in y {
                for (c, k) in self.get(*a, *b) {
                    acc[*c] = acc[*c].clone() + xa.clone() * yb.clone() * k.clone();
                }
            }
        }
        acc.into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .collect()
    }

    fn add_double_bracket(&self, a: usize, b: usize, c: usize, acc: &mut [T], touched: &mut Vec<usize>) {
        for (k, s) in self.get(b, c) {
            for (m, t) in self.get(a, *k) {
                if acc[*m].is_zero() {
                    touched.push(*m);
                }
                acc[*m] = acc[*m].clone() + s.clone() * t.clone();
            }
        }
    }

    /// Returns true when `[a,[b,c]] + [b,[c,a]] + [c,[a,b]] = 0`.
    fn jacobi_holds(&self, a: usize, b: usize, c: usize, acc: &mut [T], touched: &mut Vec<usize>) -> bool {
        touched.clear();
        self.add_double_bracket(a, b, c, acc, touched);
        self.add_double_bracket(b, c, a, acc, touched);
        self.add_double_bracket(c, a, b, acc, touched);
        let mut ok = true;
        for &m in touched.iter() {
            if !acc[m].is_zero() {
                ok = false;
            }
            acc[m] = T::zero();
        }
        ok
    }

    /// Every ordered basis triple violating the Jacobi identity, sorted.
    pub fn jacobi_violations(&self) -> Vec<(usize, usize, usize)> {
        let n = self.dim;
        (0..n)
            .into_par_iter()
            .flat_map_iter(|a| {
                let mut acc = vec![T::zero(); n];
                let mut touched = Vec::new();
                let mut bad = Vec::new();
                for b in 0..n {
                    for c in 0..n {
                        if !self.jacobi_holds(a, b, c, &mut acc, &mut touched) {
                            bad.push((a, b, c));
                        }
                    }
                }
                bad
            })
            .collect()
    }

    /// Jacobi check on `samples` seeded random ordered triples.
    pub fn jacobi_violations_sampled(&self, samples: usize, seed: u64) -> Vec<(usize, usize, usize)> {
        let n = self.dim;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let triples: Vec<_> = (0..samples)
            .map(|_| (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n)))
            .collect();
        let mut bad: Vec<_> = triples
            .par_chunks(1024)
            .flat_map_iter(|chunk| {
                let mut acc = vec![T::zero(); n];
                let mut touched = Vec::new();
                chunk
                    .iter()
                    .filter(|&&(a, b, c)| !self.jacobi_holds(a, b, c, &mut acc, &mut touched))
                    .copied()
                    .collect::<Vec<_>>()
            })
            .collect();
        bad.sort_unstable();
        bad.dedup();
        bad
    }

    /// Ordered pairs with `[a,b] != -[b,a]`.
    pub fn antisymmetry_violations(&self) -> Vec<(usize, usize)> {
        let n = self.dim;
        let mut bad = Vec::new();
        for a in 0..n {
            for b in a..n {
                let ab = self.get(a, b);
                let ba: Sparse<T> = self.get(b, a).iter().map(|(i, c)| (*i, -c.clone())).collect();
                if *ab != ba {
                    bad.push((a, b));
                }
            }
        }
        bad
    }
}
