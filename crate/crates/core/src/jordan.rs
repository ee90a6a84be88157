//! Cubic norms of cubic Jordan algebras, and fingerprints for comparing cubics.
//!
//! Every builder writes the norm as a polynomial and normalizes the tensor so
//! that its lexicographically first nonzero entry is 1, the same rule used for
//! extracted cubics. With that rule `det3` evaluates to `6` at the identity.

use std::collections::BTreeMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::chevalley::ChevalleyAlgebra;
use crate::cubic::{b_rank, cubic_eval, SymCubic};
use crate::error::{Error, Result};
use crate::extraction::extract_cubic;
use crate::moment::{smoothness_probe, ProbeVerdict};
use crate::poly::Poly;
use crate::scalar;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExpectedSignature {
    pub p: usize,
    pub b_rank: usize,
    pub probe: &'static str,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CatalogEntry {
    pub name: String,
    pub p: usize,
    pub description: &'static str,
    pub expected: ExpectedSignature,
}

const WITNESS: &str = "witness-found";
const NONE: &str = "none-found";

fn entry(name: &str, p: usize, description: &'static str, probe: &'static str) -> CatalogEntry {
    CatalogEntry { name: name.into(), p, description, expected: ExpectedSignature { p, b_rank: p, probe } }
}

/// The fixed catalog; `xq:<p>` is parametric and listed at `p = 4`.
pub fn catalog_list() -> Vec<CatalogEntry> {
    vec![
        entry("x3", 1, "x^3, norm of the field itself", NONE),
        entry("fermat3", 3, "x^3 + y^3 + z^3, smooth away from characteristic 3", NONE),
        entry("xq:4", 4, "x * (y_1^2 + ... + y_{p-1}^2), norm of a spin factor; any p >= 2", WITNESS),
        entry("xyz", 3, "x y z, norm of Q^3", WITNESS),
        entry("detsym3", 6, "determinant of a symmetric 3x3 matrix (a11, a22, a33, a12, a13, a23)", WITNESS),
        entry("det3", 9, "determinant of a general 3x3 matrix, row-major", WITNESS),
        entry("pfaff6", 15, "Pfaffian of a skew 6x6 matrix, entries x_ij for i < j in lex order", WITNESS),
        entry("j3o", 27, "norm of 3x3 Hermitian octonion matrices (l1, l2, l3, a1, a2, a3)", WITNESS),
    ]
}

pub fn catalog_entry(name: &str) -> Result<CatalogEntry> {
    if let Some(p) = parse_xq(name)? {
        return Ok(entry(name, p, "x * (y_1^2 + ... + y_{p-1}^2), norm of a spin factor", WITNESS));
    }
    catalog_list()
        .into_iter()
        .find(|e| e.name == name)
        .ok_or_else(|| Error::InvalidInput(format!("unknown catalog entry {name:?}")))
}

fn parse_xq(name: &str) -> Result<Option<usize>> {
    let Some(rest) = name.strip_prefix("xq:") else { return Ok(None) };
    let p: usize = rest
        .parse()
        .map_err(|_| Error::InvalidInput(format!("bad dimension in {name:?}")))?;
    if p < 2 {
        return Err(Error::InvalidInput("xq needs p >= 2".into()));
    }
    Ok(Some(p))
}

/// Symmetric tensor of a homogeneous cubic polynomial, normalized.
fn from_poly(p: usize, f: &Poly) -> Result<SymCubic> {
    let mut monomials = Vec::new();
    for (exps, coef) in f.terms() {
        let mut vars = Vec::with_capacity(3);
        for (i, &e) in exps.iter().enumerate() {
            vars.extend(std::iter::repeat_n(i, e as usize));
        }
        let [a, b, c] = vars[..] else {
            return Err(Error::InvalidInput("polynomial is not homogeneous of degree 3".into()));
        };
        monomials.push((coef.clone(), [a, b, c]));
    }
    Ok(SymCubic::from_monomials(p, monomials)?.normalized())
}

fn vars(n: usize) -> Vec<Poly> {
    (0..n).map(|i| Poly::var(n, i)).collect()
}

fn product(fs: &[&Poly]) -> Poly {
    fs.iter().skip(1).fold(fs[0].clone(), |acc, f| acc.mul(f))
}

fn sign_of(perm: &[usize]) -> i64 {
    let mut s = 1;
    for i in 0..perm.len() {
        for j in i + 1..perm.len() {
            if perm[i] > perm[j] {
                s = -s;
            }
        }
    }
    s
}

fn det3_poly(x: &[Poly]) -> Poly {
    let mut f = Poly::zero(9);
    for perm in [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]] {
        let term = product(&[&x[perm[0]], &x[3 + perm[1]], &x[6 + perm[2]]]);
        f = f.add(&term.scale(&scalar::int(sign_of(&perm))));
    }
    f
}

/// Perfect matchings of `items`, each as a flat list `(i1, j1, i2, j2, ...)`.
fn matchings(items: &[usize]) -> Vec<Vec<usize>> {
    let Some((&first, rest)) = items.split_first() else { return vec![vec![]] };
    let mut out = Vec::new();
    for (k, &partner) in rest.iter().enumerate() {
        let remaining: Vec<usize> = rest.iter().enumerate().filter(|&(i, _)| i != k).map(|(_, &x)| x).collect();
        for mut m in matchings(&remaining) {
            let mut full = vec![first, partner];
            full.append(&mut m);
            out.push(full);
        }
    }
    out
}

fn pfaff6_poly() -> Poly {
    let x = vars(15);
    let idx = |i: usize, j: usize| -> usize { (0..i).map(|r| 5 - r).sum::<usize>() + (j - i - 1) };
    let mut f = Poly::zero(15);
    for m in matchings(&[0, 1, 2, 3, 4, 5]) {
        let term = product(&[&x[idx(m[0], m[1])], &x[idx(m[2], m[3])], &x[idx(m[4], m[5])]]);
        f = f.add(&term.scale(&scalar::int(sign_of(&m))));
    }
    f
}

/// Fano-plane triples `(a, b, c)` with `e_a e_b = e_c` (indices 1..7).
const FANO: [[usize; 3]; 7] = [[1, 2, 4], [2, 3, 5], [3, 4, 6], [4, 5, 7], [5, 6, 1], [6, 7, 2], [7, 1, 3]];

/// `e_i e_j = sign · e_k` in the octonion basis `e_0 = 1, e_1..e_7`.
pub fn octonion_basis_product(i: usize, j: usize) -> (i64, usize) {
    match (i, j) {
        (0, k) | (k, 0) => (1, k),
        _ if i == j => (-1, 0),
        _ => {
            for t in FANO {
                for r in 0..3 {
                    let (a, b, c) = (t[r], t[(r + 1) % 3], t[(r + 2) % 3]);
                    if (a, b) == (i, j) {
                        return (1, c);
                    }
                    if (b, a) == (i, j) {
                        return (-1, c);
                    }
                }
            }
            unreachable!("every pair of imaginary units lies on one Fano line")
        }
    }
}

/// Octonion product over any coefficient ring.
pub fn octonion_mul<T>(x: &[T; 8], y: &[T; 8], add: impl Fn(&T, &T) -> T, mul: impl Fn(&T, &T, i64) -> T, zero: T) -> [T; 8]
where
    T: Clone,
{
    let mut out: [T; 8] = std::array::from_fn(|_| zero.clone());
    for (i, xi) in x.iter().enumerate() {
        for (j, yj) in y.iter().enumerate() {
            let (s, k) = octonion_basis_product(i, j);
            out[k] = add(&out[k], &mul(xi, yj, s));
        }
    }
    out
}

fn j3o_poly() -> Poly {
    let n = 27;
    let x = vars(n);
    let oct = |start: usize| -> [Poly; 8] { std::array::from_fn(|i| x[start + i].clone()) };
    let (a1, a2, a3) = (oct(3), oct(11), oct(19));
    let add = |a: &Poly, b: &Poly| a.add(b);
    let mul = |a: &Poly, b: &Poly, s: i64| a.mul(b).scale(&scalar::int(s));
    let norm = |a: &[Poly; 8]| a.iter().fold(Poly::zero(n), |acc, c| acc.add(&c.mul(c)));
    let a23 = octonion_mul(&a2, &a3, add, mul, Poly::zero(n));
    let triple = octonion_mul(&a1, &a23, add, mul, Poly::zero(n));
    let mut f = product(&[&x[0], &x[1], &x[2]]);
    for (l, a) in [(&x[0], &a1), (&x[1], &a2), (&x[2], &a3)] {
        f = f.sub(&l.mul(&norm(a)));
    }
    // t(u) = 2 Re(u)
    f.add(&triple[0].scale(&scalar::int(2)))
}

/// Builds the normalized tensor of a catalog entry.
pub fn build(name: &str) -> Result<SymCubic> {
    if let Some(p) = parse_xq(name)? {
        let x = vars(p);
        let q = x[1..].iter().fold(Poly::zero(p), |acc, y| acc.add(&y.mul(y)));
        return from_poly(p, &x[0].mul(&q));
    }
    match name {
        "x3" => {
            let x = vars(1);
            from_poly(1, &product(&[&x[0], &x[0], &x[0]]))
        }
        "fermat3" => {
            let x = vars(3);
            let f = x.iter().fold(Poly::zero(3), |acc, v| acc.add(&product(&[v, v, v])));
            from_poly(3, &f)
        }
        "xyz" => {
            let x = vars(3);
            from_poly(3, &product(&[&x[0], &x[1], &x[2]]))
        }
        "detsym3" => {
            let s = vars(6);
            // symmetric matrix entries in row-major order
            let m = [&s[0], &s[3], &s[4], &s[3], &s[1], &s[5], &s[4], &s[5], &s[2]];
            let mut f = Poly::zero(6);
            for perm in [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]] {
                let term = product(&[m[perm[0]], m[3 + perm[1]], m[6 + perm[2]]]);
                f = f.add(&term.scale(&scalar::int(sign_of(&perm))));
            }
            from_poly(6, &f)
        }
        "det3" => from_poly(9, &det3_poly(&vars(9))),
        "pfaff6" => from_poly(15, &pfaff6_poly()),
        "j3o" => from_poly(27, &j3o_poly()),
        _ => Err(Error::InvalidInput(format!("unknown catalog entry {name:?}"))),
    }
}

/// Probe settings used for signatures.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProbeConfig {
    pub primes: Vec<u64>,
    pub budget: u64,
    pub seed: u64,
}

impl Default for ProbeConfig {
    fn default() -> Self {
        Self { primes: vec![5, 7, 11, 13], budget: 1_000_000, seed: 0 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Signature {
    pub p: usize,
    pub b_rank: usize,
    pub probe: &'static str,
    pub nnz: usize,
    pub eval_hash: String,
    #[serde(skip)]
    pub verdict: ProbeVerdict,
}

const EVAL_SAMPLES: usize = 16;

/// SHA-256 of `c(v)` over a fixed seeded sample, after normalization.
fn eval_hash(t: &SymCubic) -> Result<String> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut h = Sha256::new();
    for _ in 0..EVAL_SAMPLES {
        let v = scalar::random_vector(&mut rng, t.dim());
        h.update(scalar::format_scalar(&cubic_eval(t, &v)?).as_bytes());
        h.update(b";");
    }
    Ok(h.finalize().iter().map(|b| format!("{b:02x}")).collect())
}

pub fn signature(t: &SymCubic, cfg: &ProbeConfig) -> Result<Signature> {
    let n = t.normalized();
    let verdict = smoothness_probe(t, &cfg.primes, cfg.budget, cfg.seed)?;
    Ok(Signature {
        p: t.dim(),
        b_rank: b_rank(t),
        probe: verdict.class(),
        nnz: n.nnz(),
        eval_hash: eval_hash(&n)?,
        verdict,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Comparison {
    pub catalog: String,
    pub algebra: String,
    pub consistent: bool,
    pub status: &'static str,
    pub mismatches: Vec<String>,
    pub catalog_signature: Signature,
    pub extracted_signature: Signature,
}

/// Compares `p`, `b_rank` and probe class of a catalog cubic and an extracted cubic.
/// Consistency is necessary for linear equivalence, not sufficient.
pub fn compare_to_extraction(name: &str, alg: &ChevalleyAlgebra, cfg: &ProbeConfig) -> Result<Comparison> {
    let ours = signature(&build(name)?, cfg)?;
    let theirs = signature(&extract_cubic(alg)?.cubic, cfg)?;
    let mut mismatches = Vec::new();
    if ours.p != theirs.p {
        mismatches.push(format!("p: {} vs {}", ours.p, theirs.p));
    }
    if ours.b_rank != theirs.b_rank {
        mismatches.push(format!("b_rank: {} vs {}", ours.b_rank, theirs.b_rank));
    }
    if ours.probe != theirs.probe {
        mismatches.push(format!("probe: {} vs {}", ours.probe, theirs.probe));
    }
    let consistent = mismatches.is_empty();
    Ok(Comparison {
        catalog: name.into(),
        algebra: alg.root_system().name(),
        consistent,
        status: if consistent { "signature-consistent" } else { "mismatch" },
        mismatches,
        catalog_signature: ours,
        extracted_signature: theirs,
    })
}

/// Catalog entry paired with each exceptional algebra.
pub fn exceptional_pairs() -> BTreeMap<&'static str, &'static str> {
    BTreeMap::from([("G2", "x3"), ("F4", "detsym3"), ("E6", "det3"), ("E7", "pfaff6"), ("E8", "j3o")])
}
