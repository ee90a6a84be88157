//! Cubic forms stored as symmetric trilinear tensors, their polarization, and the
//! JSON interchange format.
//!
//! A tensor `T` with canonical entries `T[i][j][k]` (`i <= j <= k`) defines
//! `c(v) = sum_{i,j,k} T(e_i, e_j, e_k) v_i v_j v_k`, summed over *all* index
//! orderings, so that `B(v, v)(v) = c(v)` with `B(u, v)_k = sum_{i,j} T_ijk u_i v_j`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{check_dim, Error, Result};
use crate::linalg;
use crate::scalar::{self, Scalar};

/// One ordered component `T(e_i, e_j, e_k)` of the full tensor.
#[derive(Clone, Debug)]
pub(crate) struct Term {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub value: Scalar,
}

#[derive(Clone, Debug)]
pub struct SymCubic {
    dim: usize,
    entries: BTreeMap<(usize, usize, usize), Scalar>,
    terms: Vec<Term>,
}

impl PartialEq for SymCubic {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.entries == other.entries
    }
}

impl Eq for SymCubic {}

fn sort3(i: usize, j: usize, k: usize) -> (usize, usize, usize) {
    let mut a = [i, j, k];
    a.sort_unstable();
    (a[0], a[1], a[2])
}

/// Distinct orderings of a sorted triple.
fn orderings((i, j, k): (usize, usize, usize)) -> Vec<(usize, usize, usize)> {
    let mut out = vec![
        (i, j, k),
        (i, k, j),
        (j, i, k),
        (j, k, i),
        (k, i, j),
        (k, j, i),
    ];
    out.sort_unstable();
    out.dedup();
    out
}

impl SymCubic {
    /// Builds a tensor from 0-based entries; index order is irrelevant, repeated
    /// triples accumulate and zero values are dropped.
    pub fn from_entries<I>(dim: usize, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = ((usize, usize, usize), Scalar)>,
    {
        if dim == 0 {
            return Err(Error::InvalidInput("cubic dimension must be positive".into()));
        }
        let mut map: BTreeMap<(usize, usize, usize), Scalar> = BTreeMap::new();
        for ((i, j, k), v) in entries {
            if i >= dim || j >= dim || k >= dim {
                return Err(Error::InvalidInput(format!(
                    "index ({i},{j},{k}) out of range for dimension {dim}"
                )));
            }
            *map.entry(sort3(i, j, k)).or_insert_with(Scalar::zero) += v;
        }
        map.retain(|_, v| !v.is_zero());
        let terms = map
            .iter()
            .flat_map(|(&key, v)| {
                orderings(key)
                    .into_iter()
                    .map(move |(i, j, k)| Term { i, j, k, value: v.clone() })
            })
            .collect();
        Ok(Self { dim, entries: map, terms })
    }

    pub fn zero(dim: usize) -> Result<Self> {
        Self::from_entries(dim, std::iter::empty())
    }

    /// Builds the tensor of a cubic polynomial given as monomials `(coef, [a, b, c])`
    /// meaning `coef * x_a x_b x_c` (0-based variables).
    pub fn from_monomials<I>(dim: usize, monomials: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Scalar, [usize; 3])>,
    {
        let entries = monomials.into_iter().map(|(coef, [a, b, c])| {
            let key = sort3(a, b, c);
            let mult = orderings(key).len() as i64;
            (key, coef / scalar::int(mult))
        });
        Self::from_entries(dim, entries)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Canonical `(i <= j <= k, value)` entries, 0-based.
    pub fn entries(&self) -> impl Iterator<Item = (&(usize, usize, usize), &Scalar)> {
        self.entries.iter()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub(crate) fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> Scalar {
        self.entries.get(&sort3(i, j, k)).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn scaled(&self, s: &Scalar) -> Self {
        Self::from_entries(self.dim, self.entries.iter().map(|(&k, v)| (k, v * s)))
            .expect("scaling preserves the index range")
    }

    /// Rescales so the lexicographically first nonzero entry is 1.
    pub fn normalized(&self) -> Self {
        match self.entries.values().next() {
            Some(first) => self.scaled(&first.recip()),
            None => self.clone(),
        }
    }

    /// Applies a change of variables `v = M w`, returning the tensor of `w -> c(M w)`.
    pub fn transformed(&self, m: &linalg::Matrix) -> Result<Self> {
        check_dim(self.dim, m.len())?;
        let n = m.first().map_or(0, Vec::len);
        let mut out = Vec::new();
        for a in 0..n {
            for b in a..n {
                for c in b..n {
                    let mut acc = Scalar::zero();
                    for t in &self.terms {
                        let x = &m[t.i][a] * &m[t.j][b] * &m[t.k][c];
                        if !x.is_zero() {
                            acc += &t.value * x;
                        }
                    }
                    out.push(((a, b, c), acc));
                }
            }
        }
        Self::from_entries(n, out)
    }
}

/// An element of `V*`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Covec(pub Vec<Scalar>);

impl Covec {
    pub fn zero(dim: usize) -> Self {
        Self(scalar::zeros(dim))
    }

    pub fn basis(dim: usize, i: usize) -> Self {
        let mut c = Self::zero(dim);
        c.0[i] = Scalar::one();
        c
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn eval(&self, v: &[Scalar]) -> Result<Scalar> {
        check_dim(self.dim(), v.len())?;
        Ok(scalar::dot(&self.0, v))
    }

    pub fn is_zero(&self) -> bool {
        scalar::is_zero_vec(&self.0)
    }
}

pub fn cubic_eval(t: &SymCubic, v: &[Scalar]) -> Result<Scalar> {
    check_dim(t.dim, v.len())?;
    let mut acc = Scalar::zero();
    for term in &t.terms {
        if v[term.i].is_zero() || v[term.j].is_zero() || v[term.k].is_zero() {
            continue;
        }
        acc += &term.value * &v[term.i] * &v[term.j] * &v[term.k];
    }
    Ok(acc)
}

/// `B(u, v) = c(u, v, .)`, a covector.
pub fn polarize(t: &SymCubic, u: &[Scalar], v: &[Scalar]) -> Result<Covec> {
    check_dim(t.dim, u.len())?;
    check_dim(t.dim, v.len())?;
    Ok(Covec(polarize_unchecked(t, u, v)))
}

pub(crate) fn polarize_unchecked(t: &SymCubic, u: &[Scalar], v: &[Scalar]) -> Vec<Scalar> {
    let mut out = scalar::zeros(t.dim);
    for term in &t.terms {
        if u[term.i].is_zero() || v[term.j].is_zero() {
            continue;
        }
        out[term.k] += &term.value * &u[term.i] * &v[term.j];
    }
    out
}

/// Rank of the span of `{B(e_i, e_j) : i <= j}` in `V*`.
pub fn b_rank(t: &SymCubic) -> usize {
    let p = t.dim;
    let mut rows = Vec::with_capacity(p * (p + 1) / 2);
    for i in 0..p {
        for j in i..p {
            let mut row = scalar::zeros(p);
            for term in &t.terms {
                if term.i == i && term.j == j {
                    row[term.k] += &term.value;
                }
            }
            if !scalar::is_zero_vec(&row) {
                rows.push(row);
            }
        }
    }
    linalg::rank(&rows)
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TensorFile {
    dim: usize,
    entries: Vec<TensorEntry>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TensorEntry {
    i: usize,
    j: usize,
    k: usize,
    value: String,
}

impl SymCubic {
    /// Parses the JSON tensor format (1-based indices, `i <= j <= k`).
    pub fn from_json(text: &str) -> Result<Self> {
        let file: TensorFile =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        if file.dim == 0 {
            return Err(Error::Parse("dim must be positive".into()));
        }
        let mut seen = std::collections::BTreeSet::new();
        let mut entries = Vec::with_capacity(file.entries.len());
        for e in file.entries {
            if !(1 <= e.i && e.i <= e.j && e.j <= e.k && e.k <= file.dim) {
                return Err(Error::Parse(format!(
                    "entry ({},{},{}) violates 1 <= i <= j <= k <= {}",
                    e.i, e.j, e.k, file.dim
                )));
            }
            if !seen.insert((e.i, e.j, e.k)) {
                return Err(Error::Parse(format!("duplicate entry ({},{},{})", e.i, e.j, e.k)));
            }
            let value = scalar::parse_scalar(&e.value)?;
            entries.push(((e.i - 1, e.j - 1, e.k - 1), value));
        }
        Self::from_entries(file.dim, entries).map_err(|e| Error::Parse(e.to_string()))
    }

    fn to_file(&self) -> TensorFile {
        TensorFile {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .map(|(&(i, j, k), v)| TensorEntry {
                    i: i + 1,
                    j: j + 1,
                    k: k + 1,
                    value: scalar::format_scalar(v),
                })
                .collect(),
        }
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("tensor serialization cannot fail")
    }

    /// SHA-256 of the compact canonical JSON encoding, hex encoded.
    pub fn content_hash(&self) -> String {
        let compact = serde_json::to_string(&self.to_file()).expect("tensor serialization cannot fail");
        let digest = Sha256::digest(compact.as_bytes());
        digest.iter().map(|b| format!("{b:02x}")).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, ratio};

    fn x3() -> SymCubic {
        SymCubic::from_entries(1, [((0, 0, 0), int(1))]).unwrap()
    }

    fn fermat3() -> SymCubic {
        SymCubic::from_entries(3, (0..3).map(|i| ((i, i, i), int(1)))).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<Scalar> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn eval_examples() {
        assert_eq!(cubic_eval(&x3(), &ints(&[0])).unwrap(), int(0));
        assert_eq!(cubic_eval(&x3(), &ints(&[2])).unwrap(), int(8));
        assert_eq!(cubic_eval(&fermat3(), &ints(&[1, 1, 1])).unwrap(), int(3));
        assert!(matches!(
            cubic_eval(&fermat3(), &ints(&[1, 1])),
            Err(Error::DimensionMismatch { expected: 3, found: 2 })
        ));
    }

    #[test]
    fn polarize_examples() {
        assert_eq!(polarize(&x3(), &ints(&[1]), &ints(&[1])).unwrap(), Covec(ints(&[1])));
        assert_eq!(
            polarize(&fermat3(), &ints(&[0, 0, 0]), &ints(&[3, 1, 2])).unwrap(),
            Covec::zero(3)
        );
        assert_eq!(
            polarize(&fermat3(), &ints(&[1, 0, 0]), &ints(&[0, 1, 0])).unwrap(),
            Covec::zero(3)
        );
    }

    #[test]
    fn b_rank_examples() {
        assert_eq!(b_rank(&x3()), 1);
        assert_eq!(b_rank(&SymCubic::zero(2).unwrap()), 0);
        assert_eq!(b_rank(&fermat3()), 3);
    }

    #[test]
    fn monomials_use_full_sum_convention() {
        // x*y*z: each ordering carries 1/6, so c(1,1,1) = 1.
        let xyz = SymCubic::from_monomials(3, [(int(1), [0, 1, 2])]).unwrap();
        assert_eq!(xyz.get(2, 0, 1), ratio(1, 6));
        assert_eq!(cubic_eval(&xyz, &ints(&[1, 1, 1])).unwrap(), int(1));
        let x2y = SymCubic::from_monomials(2, [(int(3), [0, 0, 1])]).unwrap();
        assert_eq!(cubic_eval(&x2y, &ints(&[2, 5])).unwrap(), int(60));
    }

    #[test]
    fn json_roundtrip_and_validation() {
        let t = SymCubic::from_entries(2, [((0, 0, 1), ratio(3, 2)), ((1, 1, 1), int(-1))]).unwrap();
        let text = t.to_json_pretty();
        assert!(text.contains("\"3/2\""));
        assert_eq!(SymCubic::from_json(&text).unwrap(), t);
        assert!(SymCubic::from_json("{\"dim\":1,\"entries\":[{\"i\":2,\"j\":1,\"k\":1,\"value\":\"1\"}]}").is_err());
        assert!(SymCubic::from_json("{\"dim\":1,\"entries\":[").is_err());
        assert!(SymCubic::from_json("{\"dim\":0,\"entries\":[]}").is_err());
    }

    #[test]
    fn normalization_and_hash() {
        let t = SymCubic::from_entries(1, [((0, 0, 0), int(5))]).unwrap();
        assert_eq!(t.normalized(), x3());
        assert_eq!(x3().content_hash(), x3().content_hash());
        assert_ne!(x3().content_hash(), t.content_hash());
    }

    #[test]
    fn transform_is_substitution() {
        // c(x, y) = x^2 y under x = a + b, y = b
        let t = SymCubic::from_monomials(2, [(int(1), [0, 0, 1])]).unwrap();
        let m = vec![ints(&[1, 1]), ints(&[0, 1])];
        let u = t.transformed(&m).unwrap();
        for (a, b) in [(1, 2), (-3, 4), (0, 7)] {
            let lhs = cubic_eval(&u, &ints(&[a, b])).unwrap();
            let rhs = cubic_eval(&t, &ints(&[a + b, b])).unwrap();
            assert_eq!(lhs, rhs);
        }
    }
}
