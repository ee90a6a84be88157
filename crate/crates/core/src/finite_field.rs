//! Reduction of rational tensors modulo a prime.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::cubic::SymCubic;
use crate::error::{Error, Result};
use crate::scalar;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FFTensor {
    modulus: u64,
    dim: usize,
    /// canonical entries `(i <= j <= k) -> value mod q`
    entries: Vec<((usize, usize, usize), u64)>,
    /// every ordering of every nonzero entry, for fast polarization
    terms: Vec<(usize, usize, usize, u64)>,
}

pub fn is_prime(q: u64) -> bool {
    if q < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= q {
        if q.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn mod_reduce(x: &BigInt, q: u64) -> u64 {
    x.mod_floor(&BigInt::from(q)).to_u64().expect("residue fits in u64")
}

fn mod_inverse(a: u64, q: u64) -> Option<u64> {
    let e = BigInt::from(a).extended_gcd(&BigInt::from(q));
    if e.gcd != BigInt::from(1) {
        return None;
    }
    Some(mod_reduce(&e.x, q))
}

/// Entrywise reduction of `t` modulo the prime `q`.
pub fn reduce_mod(t: &SymCubic, q: u64) -> Result<FFTensor> {
    if !is_prime(q) {
        return Err(Error::NotPrime { modulus: q });
    }
    let mut entries = Vec::new();
    for (&(i, j, k), v) in t.entries() {
        let den = mod_reduce(v.denom(), q);
        let inv = mod_inverse(den, q).ok_or_else(|| Error::NonInvertibleDenominator {
            i: i + 1,
            j: j + 1,
            k: k + 1,
            value: scalar::format_scalar(v),
            modulus: q,
        })?;
        let num = mod_reduce(v.numer(), q);
        let r = (num as u128 * inv as u128 % q as u128) as u64;
        if r != 0 {
            entries.push(((i, j, k), r));
        }
    }
    let terms = t
        .terms()
        .iter()
        .filter_map(|term| {
            let key = {
                let mut a = [term.i, term.j, term.k];
                a.sort_unstable();
                (a[0], a[1], a[2])
            };
            entries
                .binary_search_by(|(k, _)| k.cmp(&key))
                .ok()
                .map(|idx| (term.i, term.j, term.k, entries[idx].1))
        })
        .collect();
    Ok(FFTensor { modulus: q, dim: t.dim(), entries, terms })
}

impl FFTensor {
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Entry at the canonical triple, 0-based.
    pub fn get(&self, i: usize, j: usize, k: usize) -> u64 {
        let mut a = [i, j, k];
        a.sort_unstable();
        let key = (a[0], a[1], a[2]);
        self.entries
            .binary_search_by(|(k, _)| k.cmp(&key))
            .map_or(0, |idx| self.entries[idx].1)
    }

    /// `B(v, v)` over `F_q`, written into `out`.
    pub fn polarize_diag_into(&self, v: &[u64], out: &mut [u64]) {
        let q = self.modulus;
        out.iter_mut().for_each(|x| *x = 0);
        for &(i, j, k, t) in &self.terms {
            if v[i] == 0 || v[j] == 0 {
                continue;
            }
            let x = (t as u128 * v[i] as u128 % q as u128) * v[j] as u128 % q as u128;
            out[k] = ((out[k] as u128 + x) % q as u128) as u64;
        }
    }

    pub fn polarize_diag(&self, v: &[u64]) -> Vec<u64> {
        let mut out = vec![0; self.dim];
        self.polarize_diag_into(v, &mut out);
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, ratio};

    #[test]
    fn reduce_examples() {
        let x3 = SymCubic::from_entries(1, [((0, 0, 0), int(1))]).unwrap();
        assert_eq!(reduce_mod(&x3, 5).unwrap().get(0, 0, 0), 1);

        let half = SymCubic::from_entries(1, [((0, 0, 0), ratio(1, 2))]).unwrap();
        assert_eq!(reduce_mod(&half, 7).unwrap().get(0, 0, 0), 4);
        match reduce_mod(&half, 2) {
            Err(Error::NonInvertibleDenominator { i: 1, j: 1, k: 1, modulus: 2, .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(reduce_mod(&x3, 9), Err(Error::NotPrime { modulus: 9 })));
    }

    #[test]
    fn negative_entries_reduce_to_residues() {
        let t = SymCubic::from_entries(1, [((0, 0, 0), ratio(-1, 3))]).unwrap();
        // -1/3 mod 5 = -2 = 3
        assert_eq!(reduce_mod(&t, 5).unwrap().get(0, 0, 0), 3);
    }

    #[test]
    fn modular_polarization_matches_rational() {
        let t = SymCubic::from_monomials(3, [(int(1), [0, 1, 2]), (int(2), [0, 0, 1])]).unwrap();
        // 6 * T so that entries are integral
        let t6 = t.scaled(&int(6));
        let ff = reduce_mod(&t6, 7).unwrap();
        let v = [3u64, 5, 2];
        let rat: Vec<_> = v.iter().map(|&x| int(x as i64)).collect();
        let exact = crate::cubic::polarize(&t6, &rat, &rat).unwrap();
        let modular = ff.polarize_diag(&v);
        for (a, b) in exact.0.iter().zip(modular) {
            assert_eq!(mod_reduce(a.numer(), 7), b);
        }
    }
}
