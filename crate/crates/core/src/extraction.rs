//! The cubic form hidden in a simple Lie algebra: the double grading by `H_ψ` and
//! `H_{ψ-α}`, the two perfect pairings, the map `φ`, the extracted cubic, and an
//! exact comparison of the graded subalgebra with the abstract construction.
//!
//! Pieces of the double grading `(a, b) = (⟨β, ψ^∨⟩, ⟨β, (ψ-α)^∨⟩)`:
//! `V = g(0,1)`, `φ(V) = g(1,0)`, `V* ≅ g(1,1)`, `g_ψ = g(2,1)`, `g_{ψ-α} = g(1,2)`.

use std::collections::BTreeMap;

use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::chevalley::{coroot_element, ChevalleyAlgebra};
use crate::cubic::{b_rank, Covec, SymCubic};
use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::nilpotent::{NElem, NilpotentAlgebra};
use crate::roots::{CartanType, RootSystem};
use crate::scalar::{self, Scalar};

/// The unique simple root `α` (0-based index) with `ψ - α` a root.
pub fn find_alpha(rs: &RootSystem) -> Result<usize> {
    let psi = rs.highest_root();
    let candidates: Vec<usize> = (0..rs.rank())
        .filter(|&i| rs.sum(psi, rs.negative(rs.simple(i))).is_some())
        .collect();
    match candidates.as_slice() {
        [a] if rs.kind() != CartanType::A => Ok(*a),
        _ => Err(Error::AlphaNotUnique {
            type_name: rs.name(),
            candidates: candidates.iter().map(|i| i + 1).collect(),
        }),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DoubleGrading {
    /// 0-based simple root index
    pub alpha: usize,
    /// root indices
    pub psi: usize,
    pub psi_minus_alpha: usize,
    /// `(a, b)` for every basis index of the Chevalley algebra
    pub grades: Vec<(i64, i64)>,
}

impl DoubleGrading {
    /// Basis indices in the piece `g(a, b)`, in basis order.
    pub fn piece(&self, a: i64, b: i64) -> Vec<usize> {
        (0..self.grades.len()).filter(|&i| self.grades[i] == (a, b)).collect()
    }

    pub fn dims(&self) -> BTreeMap<(i64, i64), usize> {
        let mut out = BTreeMap::new();
        for g in &self.grades {
            *out.entry(*g).or_insert(0) += 1;
        }
        out
    }

    /// Basis pairs whose bracket leaves the expected piece; empty when the grading is additive.
    pub fn additivity_violations(&self, alg: &ChevalleyAlgebra) -> Vec<(usize, usize)> {
        let n = alg.dim();
        (0..n)
            .into_par_iter()
            .flat_map_iter(|x| {
                (0..n)
                    .filter(move |&y| {
                        let (a, b) = (self.grades[x], self.grades[y]);
                        alg.bracket_basis(x, y)
                            .iter()
                            .any(|(z, _)| self.grades[*z] != (a.0 + b.0, a.1 + b.1))
                    })
                    .map(move |y| (x, y))
            })
            .collect()
    }
}

pub fn double_grading(alg: &ChevalleyAlgebra) -> Result<DoubleGrading> {
    let rs = alg.root_system();
    let alpha = find_alpha(rs)?;
    let psi = rs.highest_root();
    let psi_minus_alpha = rs.sum(psi, rs.negative(rs.simple(alpha))).expect("find_alpha checked");
    let h1 = coroot_element(alg, psi);
    let h2 = coroot_element(alg, psi_minus_alpha);
    let mut grades = vec![(0, 0); alg.rank()];
    for r in 0..rs.len() {
        grades.push((h1.eigenvalue(alg, r), h2.eigenvalue(alg, r)));
    }
    Ok(DoubleGrading { alpha, psi, psi_minus_alpha, grades })
}

fn coefficient(alg: &ChevalleyAlgebra, x: usize, y: usize, target: usize) -> i64 {
    alg.bracket_basis(x, y)
        .iter()
        .find(|(i, _)| *i == target)
        .map_or(0, |(_, c)| *c)
}

/// The pieces and pairing matrices used by the extraction.
#[derive(Clone, Debug)]
pub struct Pieces {
    pub v: Vec<usize>,
    pub u: Vec<usize>,
    pub y: Vec<usize>,
    pub x_psi: usize,
    pub x_psi_minus_alpha: usize,
    /// `p1[i][j]`: `X_{ψ-α}`-coefficient of `[v_i, y_j]`
    pub p1: Matrix,
    /// `p2[k][j]`: `X_ψ`-coefficient of `[u_k, y_j]`
    pub p2: Matrix,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairingReport {
    pub type_name: String,
    pub p: usize,
    pub dim_v: usize,
    pub dim_u: usize,
    pub rank_v_pairing: usize,
    pub rank_u_pairing: usize,
    pub pass: bool,
}

fn pieces(alg: &ChevalleyAlgebra, dg: &DoubleGrading) -> Pieces {
    let v = dg.piece(0, 1);
    let u = dg.piece(1, 0);
    let y = dg.piece(1, 1);
    let x_psi = alg.root_vector(dg.psi);
    let x_psi_minus_alpha = alg.root_vector(dg.psi_minus_alpha);
    let pairing = |left: &[usize], target: usize| -> Matrix {
        left.iter()
            .map(|&l| y.iter().map(|&r| scalar::int(coefficient(alg, l, r, target))).collect())
            .collect()
    };
    let p1 = pairing(&v, x_psi_minus_alpha);
    let p2 = pairing(&u, x_psi);
    Pieces { v, u, y, x_psi, x_psi_minus_alpha, p1, p2 }
}

pub fn verify_pairings(alg: &ChevalleyAlgebra, dg: &DoubleGrading) -> PairingReport {
    let pc = pieces(alg, dg);
    let p = pc.y.len();
    let (r1, r2) = (linalg::rank(&pc.p1), linalg::rank(&pc.p2));
    PairingReport {
        type_name: alg.root_system().name(),
        p,
        dim_v: pc.v.len(),
        dim_u: pc.u.len(),
        rank_v_pairing: r1,
        rank_u_pairing: r2,
        pass: p > 0 && pc.v.len() == p && pc.u.len() == p && r1 == p && r2 == p,
    }
}

#[derive(Clone, Debug)]
pub struct Extraction {
    pub type_name: String,
    pub grading: DoubleGrading,
    pub pieces: Pieces,
    /// `φ(v_i) = Σ_k phi[i][k] u_k`
    pub phi: Matrix,
    /// tensor of `X ↦ [φX, [φX, X]] / X_ψ` before normalization
    pub raw: SymCubic,
    /// `cubic = scale · raw`
    pub scale: Scalar,
    pub cubic: SymCubic,
    /// whether `(a, b, c) ↦ [φv_a, [φv_b, v_c]] / X_ψ` is already symmetric
    pub double_bracket_symmetric: bool,
}

impl Extraction {
    pub fn p(&self) -> usize {
        self.cubic.dim()
    }
}

pub fn extract_cubic(alg: &ChevalleyAlgebra) -> Result<Extraction> {
    let dg = double_grading(alg)?;
    let report = verify_pairings(alg, &dg);
    if !report.pass {
        return Err(Error::DegeneratePairing("pairings into g_ψ and g_{ψ-α} are not both perfect"));
    }
    let pc = pieces(alg, &dg);
    let p = pc.y.len();
    let phi = linalg::mat_mul(&pc.p1, &linalg::inverse(&pc.p2)?);
    let y_pos: BTreeMap<usize, usize> = pc.y.iter().enumerate().map(|(j, &b)| (b, j)).collect();

    // m[k][c][j]: y_j-coefficient of [u_k, v_c]
    let m: Vec<Vec<Vec<Scalar>>> = pc
        .u
        .iter()
        .map(|&uk| {
            pc.v.iter()
                .map(|&vc| {
                    let mut row = scalar::zeros(p);
                    for (idx, coef) in alg.bracket_basis(uk, vc) {
                        row[y_pos[idx]] = scalar::int(*coef);
                    }
                    row
                })
                .collect()
        })
        .collect();
    // g[b][c] = [φ v_b, v_c] in the y basis
    let g: Vec<Vec<Vec<Scalar>>> = (0..p)
        .into_par_iter()
        .map(|b| {
            (0..p)
                .map(|c| {
                    let mut acc = scalar::zeros(p);
                    for k in 0..p {
                        if !phi[b][k].is_zero() {
                            acc = scalar::add_vec(&acc, &scalar::scale_vec(&phi[b][k], &m[k][c]));
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect();
    // [φ v_a, y] / X_ψ = [v_a, y] / X_{ψ-α}, so F(a,b,c) = Σ_j p1[a][j] g[b][c][j]
    let f: Vec<Scalar> = (0..p * p * p)
        .into_par_iter()
        .map(|idx| {
            let (a, b, c) = (idx / (p * p), idx / p % p, idx % p);
            scalar::dot(&pc.p1[a], &g[b][c])
        })
        .collect();
    let at = |a: usize, b: usize, c: usize| &f[(a * p + b) * p + c];
    let mut symmetric = true;
    let mut entries = Vec::new();
    for i in 0..p {
        for j in i..p {
            for k in j..p {
                let perms = [at(i, j, k), at(i, k, j), at(j, i, k), at(j, k, i), at(k, i, j), at(k, j, i)];
                if perms.iter().any(|x| *x != perms[0]) {
                    symmetric = false;
                }
                let sum: Scalar = perms.into_iter().cloned().sum();
                entries.push(((i, j, k), sum / scalar::int(6)));
            }
        }
    }
    let raw = SymCubic::from_entries(p, entries)?;
    let scale = raw
        .entries()
        .next()
        .map(|(_, v)| v.recip())
        .ok_or(Error::DegeneratePairing("extracted cubic vanishes"))?;
    let cubic = raw.scaled(&scale);
    Ok(Extraction {
        type_name: alg.root_system().name(),
        grading: dg,
        pieces: pc,
        phi,
        raw,
        scale,
        cubic,
        double_bracket_symmetric: symmetric,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EmbeddingReport {
    pub type_name: String,
    pub p: usize,
    pub dim_n: usize,
    pub pairs_checked: usize,
    /// The global scalar: `X_ψ ↦ s f_2`, `X_{ψ-α} ↦ s f_1`.
    pub scale: String,
    pub first_mismatch: Option<(String, String)>,
    pub pass: bool,
}

/// Compares every bracket of `g(1,0) ⊕ g(0,1) ⊕ g(1,1) ⊕ g(2,1) ⊕ g(1,2)` with the
/// abstract algebra of the extracted cubic through an explicit graded linear map.
pub fn verify_embedding(alg: &ChevalleyAlgebra) -> Result<EmbeddingReport> {
    let ex = extract_cubic(alg)?;
    let pc = &ex.pieces;
    let p = ex.p();
    let s = &ex.scale;
    let abs = NilpotentAlgebra::new(ex.cubic.clone());
    let phi_inv = linalg::inverse(&ex.phi)?;

    let mut basis: Vec<(usize, NElem)> = Vec::new();
    for (i, &v) in pc.v.iter().enumerate() {
        let mut e = scalar::zeros(p);
        e[i] = Scalar::from_integer(1.into());
        basis.push((v, NElem::tensor(&e, 0)));
    }
    for (k, &u) in pc.u.iter().enumerate() {
        basis.push((u, NElem::tensor(&phi_inv[k], 1)));
    }
    for (j, &y) in pc.y.iter().enumerate() {
        let col: Vec<Scalar> = (0..p).map(|i| -(s * &pc.p1[i][j])).collect();
        basis.push((y, NElem::covector(Covec(col))));
    }
    basis.push((pc.x_psi_minus_alpha, NElem::central(p, [s.clone(), Scalar::zero()])));
    basis.push((pc.x_psi, NElem::central(p, [Scalar::zero(), s.clone()])));
    let image: BTreeMap<usize, &NElem> = basis.iter().map(|(i, e)| (*i, e)).collect();

    let n = basis.len();
    let mismatch = (0..n * n).into_par_iter().find_map_first(|idx| {
        let ((a, ea), (b, eb)) = (&basis[idx / n], &basis[idx % n]);
        let mut lhs = NElem::zero(p);
        for (z, c) in alg.bracket_basis(*a, *b) {
            let Some(ez) = image.get(z) else {
                return Some((alg.label(*a), alg.label(*b)));
            };
            lhs = &lhs + &ez.scale(&scalar::int(*c));
        }
        let rhs = abs.bracket_unchecked(ea, eb);
        (lhs != rhs).then(|| (alg.label(*a), alg.label(*b)))
    });
    Ok(EmbeddingReport {
        type_name: ex.type_name.clone(),
        p,
        dim_n: n,
        pairs_checked: n * n,
        scale: scalar::format_scalar(s),
        pass: mismatch.is_none(),
        first_mismatch: mismatch,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TernaryReport {
    pub type_name: String,
    pub dim_g: usize,
    pub p: usize,
    /// `dim g - 8 - 6p`
    pub dim_h: i64,
    /// dimension of every nonzero piece `g(a, b)`, keyed `"a,b"`
    pub pieces: BTreeMap<String, usize>,
}

pub fn ternary_dimension_check(alg: &ChevalleyAlgebra) -> Result<TernaryReport> {
    let dg = double_grading(alg)?;
    let p = dg.piece(1, 1).len();
    Ok(TernaryReport {
        type_name: alg.root_system().name(),
        dim_g: alg.dim(),
        p,
        dim_h: alg.dim() as i64 - 8 - 6 * p as i64,
        pieces: dg.dims().into_iter().map(|((a, b), d)| (format!("{a},{b}"), d)).collect(),
    })
}

/// `b_rank` of the extracted cubic equals `p`.
pub fn extraction_assumption_holds(ex: &Extraction) -> bool {
    b_rank(&ex.cubic) == ex.p()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chevalley::chevalley;
    use crate::scalar::int;

    fn alg(k: CartanType, n: usize) -> ChevalleyAlgebra {
        chevalley(&RootSystem::new(k, n).unwrap())
    }

    #[test]
    fn alpha_and_rejections() {
        assert!(find_alpha(&RootSystem::new(CartanType::G, 2).unwrap()).is_ok());
        match find_alpha(&RootSystem::new(CartanType::A, 3).unwrap()) {
            Err(Error::AlphaNotUnique { candidates, .. }) => assert_eq!(candidates, vec![1, 3]),
            other => panic!("{other:?}"),
        }
        match find_alpha(&RootSystem::new(CartanType::A, 1).unwrap()) {
            Err(Error::AlphaNotUnique { candidates, .. }) => assert!(candidates.is_empty()),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn g2_extracts_x_cubed() {
        let a = alg(CartanType::G, 2);
        let ex = extract_cubic(&a).unwrap();
        assert_eq!(ex.cubic, SymCubic::from_entries(1, [((0, 0, 0), int(1))]).unwrap());
        let dg = &ex.grading;
        let alpha = a.root_system().simple(dg.alpha);
        assert_eq!(dg.grades[a.root_vector(alpha)], (1, -1));
        assert_eq!(dg.grades[a.root_vector(dg.psi)], (2, 1));
        assert_eq!(dg.grades[a.root_vector(dg.psi_minus_alpha)], (1, 2));
        assert!(dg.additivity_violations(&a).is_empty());
        assert!(verify_embedding(&a).unwrap().pass);
    }

    #[test]
    fn f4_extraction() {
        let a = alg(CartanType::F, 4);
        let dg = double_grading(&a).unwrap();
        let r = verify_pairings(&a, &dg);
        assert!(r.pass);
        assert_eq!((r.p, r.rank_u_pairing, r.rank_v_pairing), (6, 6, 6));
        let ex = extract_cubic(&a).unwrap();
        assert!(extraction_assumption_holds(&ex));
        let emb = verify_embedding(&a).unwrap();
        assert!(emb.pass, "{:?}", emb.first_mismatch);
        assert_eq!(emb.dim_n, 20);
        let t = ternary_dimension_check(&a).unwrap();
        assert_eq!(t.dim_h, 8);
        assert!(dg.grades.iter().all(|(a, b)| a.abs() <= 2 && b.abs() <= 2));
    }
}
