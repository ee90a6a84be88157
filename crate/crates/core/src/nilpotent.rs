//! The graded Lie algebra `n = (V ⊗ W) ⊕ V* ⊕ W` attached to a cubic form, and the
//! derivation action of `sl(W)` on it.
//!
//! `W` has the fixed basis `f_1, f_2` with `ω(f_1, f_2) = 1`. The brackets are
//!
//! ```text
//! [v1 ⊗ w1, v2 ⊗ w2] = ω(w1, w2) B(v1, v2)
//! [v*, v ⊗ w]        = v*(v) w
//! ```
//!
//! and every bracket of total degree above three vanishes.

use std::ops::{Add, Neg, Sub};

use num_traits::{One, Zero};
use serde::Serialize;

use crate::cubic::{b_rank, polarize_unchecked, Covec, SymCubic};
use crate::error::{check_dim, Error, Result};
use crate::scalar::{self, Scalar};
use crate::structure::{Sparse, StructureConstants};

/// `ω(f_a, f_b)` in the fixed basis.
pub fn omega(a: usize, b: usize) -> i64 {
    match (a, b) {
        (0, 1) => 1,
        (1, 0) => -1,
        _ => 0,
    }
}

/// `ω(u, w)` for coordinate pairs.
pub fn omega_pair(u: &[Scalar; 2], w: &[Scalar; 2]) -> Scalar {
    &u[0] * &w[1] - &u[1] * &w[0]
}

/// A graded element of `n`.
///
/// `n1[a]` is the `V`-coefficient of `⊗ f_{a+1}`; `n3` holds the coordinates in
/// `f_1, f_2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NElem {
    pub n1: [Vec<Scalar>; 2],
    pub n2: Covec,
    pub n3: [Scalar; 2],
}

impl NElem {
    pub fn zero(p: usize) -> Self {
        Self {
            n1: [scalar::zeros(p), scalar::zeros(p)],
            n2: Covec::zero(p),
            n3: [Scalar::zero(), Scalar::zero()],
        }
    }

    pub fn dim_p(&self) -> usize {
        self.n2.dim()
    }

    /// Dimension `3p + 2` of `n`.
    pub fn total_dim(p: usize) -> usize {
        3 * p + 2
    }

    /// `v ⊗ f_{a+1}`.
    pub fn tensor(v: &[Scalar], a: usize) -> Self {
        let mut x = Self::zero(v.len());
        x.n1[a] = v.to_vec();
        x
    }

    pub fn covector(c: Covec) -> Self {
        let mut x = Self::zero(c.dim());
        x.n2 = c;
        x
    }

    pub fn central(p: usize, w: [Scalar; 2]) -> Self {
        let mut x = Self::zero(p);
        x.n3 = w;
        x
    }

    /// Flat coordinates: `n1` column `f_1`, `n1` column `f_2`, `n2`, `n3`.
    pub fn to_flat(&self) -> Vec<Scalar> {
        self.n1[0]
            .iter()
            .chain(&self.n1[1])
            .chain(&self.n2.0)
            .chain(&self.n3)
            .cloned()
            .collect()
    }

    pub fn from_flat(p: usize, flat: &[Scalar]) -> Result<Self> {
        check_dim(Self::total_dim(p), flat.len())?;
        Ok(Self {
            n1: [flat[..p].to_vec(), flat[p..2 * p].to_vec()],
            n2: Covec(flat[2 * p..3 * p].to_vec()),
            n3: [flat[3 * p].clone(), flat[3 * p + 1].clone()],
        })
    }

    pub fn basis(p: usize, idx: usize) -> Self {
        let mut flat = scalar::zeros(Self::total_dim(p));
        flat[idx] = Scalar::one();
        Self::from_flat(p, &flat).expect("basis index in range")
    }

    /// Seeded element with small rational coordinates.
    pub fn random<R: rand::Rng + ?Sized>(rng: &mut R, p: usize) -> Self {
        Self::from_flat(p, &scalar::random_vector(rng, Self::total_dim(p))).expect("width 3p + 2")
    }

    /// Degree (1, 2 or 3) of the basis vector with flat index `idx`.
    pub fn basis_degree(p: usize, idx: usize) -> usize {
        if idx < 2 * p {
            1
        } else if idx < 3 * p {
            2
        } else {
            3
        }
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        Self {
            n1: [scalar::scale_vec(s, &self.n1[0]), scalar::scale_vec(s, &self.n1[1])],
            n2: Covec(scalar::scale_vec(s, &self.n2.0)),
            n3: [s * &self.n3[0], s * &self.n3[1]],
        }
    }

    pub fn is_zero(&self) -> bool {
        scalar::is_zero_vec(&self.n1[0])
            && scalar::is_zero_vec(&self.n1[1])
            && self.n2.is_zero()
            && self.n3.iter().all(Zero::is_zero)
    }

    /// Component of degree `d` (other degrees zeroed).
    pub fn grade(&self, d: usize) -> Self {
        let mut x = Self::zero(self.dim_p());
        match d {
            1 => x.n1 = self.n1.clone(),
            2 => x.n2 = self.n2.clone(),
            3 => x.n3 = self.n3.clone(),
            _ => {}
        }
        x
    }

    fn check_same_dim(&self, other: &Self) -> Result<()> {
        check_dim(self.dim_p(), other.dim_p())
    }
}

impl Add for &NElem {
    type Output = NElem;
    fn add(self, rhs: &NElem) -> NElem {
        NElem {
            n1: [
                scalar::add_vec(&self.n1[0], &rhs.n1[0]),
                scalar::add_vec(&self.n1[1], &rhs.n1[1]),
            ],
            n2: Covec(scalar::add_vec(&self.n2.0, &rhs.n2.0)),
            n3: [&self.n3[0] + &rhs.n3[0], &self.n3[1] + &rhs.n3[1]],
        }
    }
}

impl Sub for &NElem {
    type Output = NElem;
    fn sub(self, rhs: &NElem) -> NElem {
        NElem {
            n1: [
                scalar::sub_vec(&self.n1[0], &rhs.n1[0]),
                scalar::sub_vec(&self.n1[1], &rhs.n1[1]),
            ],
            n2: Covec(scalar::sub_vec(&self.n2.0, &rhs.n2.0)),
            n3: [&self.n3[0] - &rhs.n3[0], &self.n3[1] - &rhs.n3[1]],
        }
    }
}

impl Neg for &NElem {
    type Output = NElem;
    fn neg(self) -> NElem {
        self.scale(&-Scalar::one())
    }
}

/// Traceless endomorphism of `W`; `m[a][b]` is the `f_{a+1}`-coefficient of `g f_{b+1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SlWElem {
    m: [[Scalar; 2]; 2],
}

impl SlWElem {
    pub fn new(m: [[Scalar; 2]; 2]) -> Result<Self> {
        if !(&m[0][0] + &m[1][1]).is_zero() {
            return Err(Error::InvalidInput("sl(W) element must be traceless".into()));
        }
        Ok(Self { m })
    }

    pub fn zero() -> Self {
        Self { m: Default::default() }
    }

    /// Standard basis `e = E_12`, `h = diag(1, -1)`, `f = E_21`.
    pub fn basis() -> [Self; 3] {
        let (o, z) = (Scalar::one(), Scalar::zero());
        [
            Self { m: [[z.clone(), o.clone()], [z.clone(), z.clone()]] },
            Self { m: [[o.clone(), z.clone()], [z.clone(), -o.clone()]] },
            Self { m: [[z.clone(), z.clone()], [o, z]] },
        ]
    }

    pub fn matrix(&self) -> &[[Scalar; 2]; 2] {
        &self.m
    }

    pub fn apply(&self, w: &[Scalar; 2]) -> [Scalar; 2] {
        [
            &self.m[0][0] * &w[0] + &self.m[0][1] * &w[1],
            &self.m[1][0] * &w[0] + &self.m[1][1] * &w[1],
        ]
    }

    pub fn add(&self, other: &Self) -> Self {
        let m = |a: usize, b: usize| &self.m[a][b] + &other.m[a][b];
        Self { m: [[m(0, 0), m(0, 1)], [m(1, 0), m(1, 1)]] }
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        let m = |a: usize, b: usize| s * &self.m[a][b];
        Self { m: [[m(0, 0), m(0, 1)], [m(1, 0), m(1, 1)]] }
    }
}

/// The Lie algebra `n` of a fixed cubic.
#[derive(Clone, Debug)]
pub struct NilpotentAlgebra {
    cubic: SymCubic,
    b_rank: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JacobiReport {
    #[serde(rename = "cubic-hash")]
    pub cubic_hash: String,
    pub p: usize,
    pub dim_n: usize,
    pub jacobi_violations: Vec<[usize; 3]>,
    pub assumption_ok: bool,
}

impl JacobiReport {
    pub fn passed(&self) -> bool {
        self.jacobi_violations.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DimReport {
    pub p: usize,
    pub dim_n: usize,
    /// `dim N + 1 - p`
    pub dim_quotient: usize,
    /// `2p + 3`
    pub dim_formula: usize,
    pub consistent: bool,
}

impl NilpotentAlgebra {
    /// Always succeeds; inspect [`assumption_ok`](Self::assumption_ok) before doing geometry.
    pub fn new(cubic: SymCubic) -> Self {
        let b_rank = b_rank(&cubic);
        Self { cubic, b_rank }
    }

    pub fn cubic(&self) -> &SymCubic {
        &self.cubic
    }

    pub fn p(&self) -> usize {
        self.cubic.dim()
    }

    pub fn dim(&self) -> usize {
        NElem::total_dim(self.p())
    }

    pub fn b_rank(&self) -> usize {
        self.b_rank
    }

    /// Whether `B : S^2 V -> V*` is surjective.
    pub fn assumption_ok(&self) -> bool {
        self.b_rank == self.p()
    }

    pub fn require_assumption(&self) -> Result<()> {
        if self.assumption_ok() {
            Ok(())
        } else {
            Err(Error::AssumptionViolated { b_rank: self.b_rank, p: self.p() })
        }
    }

    fn check(&self, x: &NElem) -> Result<()> {
        check_dim(self.p(), x.dim_p())
    }

    pub fn bracket(&self, x: &NElem, y: &NElem) -> Result<NElem> {
        self.check(x)?;
        x.check_same_dim(y)?;
        Ok(self.bracket_unchecked(x, y))
    }

    pub(crate) fn bracket_unchecked(&self, x: &NElem, y: &NElem) -> NElem {
        let t = &self.cubic;
        let b12 = polarize_unchecked(t, &x.n1[0], &y.n1[1]);
        let b21 = polarize_unchecked(t, &x.n1[1], &y.n1[0]);
        let n2 = Covec(scalar::sub_vec(&b12, &b21));
        let n3 = [0, 1].map(|a| scalar::dot(&x.n2.0, &y.n1[a]) - scalar::dot(&y.n2.0, &x.n1[a]));
        NElem { n1: [scalar::zeros(self.p()), scalar::zeros(self.p())], n2, n3 }
    }

    /// Derivation action of `g` on `n`: on the `W` factor of `n1`, trivially on
    /// `n2`, naturally on `n3`.
    pub fn act_slw(&self, g: &SlWElem, x: &NElem) -> Result<NElem> {
        self.check(x)?;
        let m = g.matrix();
        let col = |a: usize| -> Vec<Scalar> {
            x.n1[0]
                .iter()
                .zip(&x.n1[1])
                .map(|(u, v)| &m[a][0] * u + &m[a][1] * v)
                .collect()
        };
        Ok(NElem {
            n1: [col(0), col(1)],
            n2: Covec::zero(self.p()),
            n3: g.apply(&x.n3),
        })
    }

    pub fn structure_constants(&self) -> StructureConstants<Scalar> {
        let p = self.p();
        StructureConstants::from_fn(self.dim(), |a, b| {
            let z = self.bracket_unchecked(&NElem::basis(p, a), &NElem::basis(p, b));
            z.to_flat()
                .into_iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .collect::<Sparse<Scalar>>()
        })
    }

    /// Checks the Jacobi identity on every ordered basis triple of `n`.
    pub fn verify_jacobi(&self) -> JacobiReport {
        let violations = self.structure_constants().jacobi_violations();
        JacobiReport {
            cubic_hash: self.cubic.content_hash(),
            p: self.p(),
            dim_n: self.dim(),
            jacobi_violations: violations.into_iter().map(|(a, b, c)| [a, b, c]).collect(),
            assumption_ok: self.assumption_ok(),
        }
    }

    pub fn dim_report(&self) -> DimReport {
        dim_report(self.p())
    }
}

pub fn dim_report(p: usize) -> DimReport {
    let dim_n = NElem::total_dim(p);
    let dim_quotient = dim_n + 1 - p;
    let dim_formula = 2 * p + 3;
    DimReport { p, dim_n, dim_quotient, dim_formula, consistent: dim_quotient == dim_formula }
}
