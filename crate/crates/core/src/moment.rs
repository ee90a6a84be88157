//! The `n*`-component of the moment map, the equation cutting out its image, and a
//! finite-field search for singular points of the cubic hypersurface.

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::bch::ChartElem;
use crate::contact::{ChartPoint, ChartTangent, ContactForm, Convention};
use crate::cubic::{polarize, SymCubic};
use crate::error::{check_dim, Error, Result};
use crate::finite_field::{reduce_mod, FFTensor};
use crate::nilpotent::{NElem, NilpotentAlgebra, SlWElem};
use crate::poly::Interpolator;
use crate::scalar::{self, ratio, Scalar};

/// A triple `(φ1, φ2, φ3) ∈ (V* ⊗ W) ⊕ V ⊕ W`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MomentPoint {
    /// Columns of the `p × 2` matrix, indexed by `f_1`, `f_2`.
    pub phi1: [Vec<Scalar>; 2],
    pub phi2: Vec<Scalar>,
    pub phi3: [Scalar; 2],
}

impl MomentPoint {
    pub fn zero(p: usize) -> Self {
        Self {
            phi1: [scalar::zeros(p), scalar::zeros(p)],
            phi2: scalar::zeros(p),
            phi3: [Scalar::zero(), Scalar::zero()],
        }
    }

    pub fn dim_p(&self) -> usize {
        self.phi2.len()
    }
}

/// `ω(φ3, φ1)`, contracting the `W` factor of `φ1`; an element of `V*`.
pub fn omega_contraction(m: &MomentPoint) -> Vec<Scalar> {
    m.phi1[1]
        .iter()
        .zip(&m.phi1[0])
        .map(|(b, a)| &m.phi3[0] * b - &m.phi3[1] * a)
        .collect()
}

/// Whether `ω(φ3, φ1) = B(φ2, φ2)` holds exactly.
pub fn moment_membership(m: &MomentPoint, t: &SymCubic) -> Result<bool> {
    let p = t.dim();
    check_dim(p, m.phi2.len())?;
    check_dim(p, m.phi1[0].len())?;
    check_dim(p, m.phi1[1].len())?;
    Ok(omega_contraction(m) == polarize(t, &m.phi2, &m.phi2)?.0)
}

/// An element of `n ⊕ sl(W)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Direction {
    pub n: NElem,
    pub slw: SlWElem,
}

impl Direction {
    pub fn from_n(n: NElem) -> Self {
        Self { n, slw: SlWElem::zero() }
    }

    pub fn from_slw(p: usize, slw: SlWElem) -> Self {
        Self { n: NElem::zero(p), slw }
    }

    pub fn add(&self, other: &Self) -> Self {
        Self { n: &self.n + &other.n, slw: self.slw.add(&other.slw) }
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        Self { n: self.n.scale(s), slw: self.slw.scale(s) }
    }
}

/// `s¹`-coefficient of the chart coordinates of `f(s)`, a polynomial of degree ≤ 3.
fn linear_coefficient<F>(alg: &NilpotentAlgebra, z: &Scalar, f: F) -> Result<ChartElem>
where
    F: Fn(&Scalar) -> NElem,
{
    let interp = Interpolator::for_degree(3);
    let samples: Vec<Vec<Scalar>> = interp
        .nodes()
        .iter()
        .map(|s| Ok(alg.chart_decompose(&f(s), z)?.0.to_flat()))
        .collect::<Result<_>>()?;
    ChartElem::from_flat(alg.p(), &interp.coefficients(&samples)[1])
}

/// The fundamental vector field of `a` at `pt` in chart coordinates.
pub fn fundamental_field(alg: &NilpotentAlgebra, pt: &ChartPoint, a: &Direction) -> Result<ChartTangent> {
    alg.require_assumption()?;
    check_dim(alg.p(), pt.dim_p())?;
    check_dim(alg.p(), a.n.dim_p())?;
    let x = pt.chart.to_nelem();

    // left translation by exp(t A_n)
    let from_n = linear_coefficient(alg, &pt.z, |t| alg.bch_unchecked(&a.n.scale(t), &x))?;

    if a.slw == SlWElem::zero() {
        return Ok(ChartTangent { chart: from_n, dz: Scalar::zero(), dy: Scalar::zero() });
    }

    // sl(W) moves X by its derivation action and the point ℓ + z m along PW
    let dx = alg.act_slw(&a.slw, &x)?;
    let from_x = linear_coefficient(alg, &pt.z, |s| &x + &dx.scale(s))?;
    let m = a.slw.matrix();
    let (a11, a12, a21, a22) = (&m[0][0], &m[0][1], &m[1][0], &m[1][1]);
    let z = &pt.z;
    let dz = a21 + (a22 - a11) * z - a12 * z * z;
    let dy = -&pt.y * (a22 - a12 * z);
    let interp = Interpolator::for_degree(3);
    let in_z: Vec<Vec<Scalar>> = interp
        .nodes()
        .iter()
        .map(|s| Ok(alg.chart_decompose(&x, &(z + s))?.0.to_flat()))
        .collect::<Result<_>>()?;
    let d_by_dz = scalar::scale_vec(&dz, &interp.coefficients(&in_z)[1]);

    let flat = scalar::add_vec(&scalar::add_vec(&from_n.to_flat(), &from_x.to_flat()), &d_by_dz);
    Ok(ChartTangent { chart: ChartElem::from_flat(alg.p(), &flat)?, dz, dy })
}

/// `μ(A) = θ̃(ξ_A)` at `pt`.
pub fn moment_of(alg: &NilpotentAlgebra, pt: &ChartPoint, a: &Direction) -> Result<Scalar> {
    let xi = fundamental_field(alg, pt, a)?;
    ContactForm::new(alg.p(), Convention::Invariant).eval(pt, &xi)
}

/// `μ(A)` from the closed form `λ((Ad(exp(-X)) A_n + e_X⁻¹(A_sl · X))_3)`, where
/// `λ = y (m* - z ℓ*)`. Shares no code with the chart-decomposition route.
pub fn moment_by_transport(alg: &NilpotentAlgebra, pt: &ChartPoint, a: &Direction) -> Result<Scalar> {
    alg.require_assumption()?;
    check_dim(alg.p(), pt.dim_p())?;
    let x = pt.chart.to_nelem();
    let xa = alg.bracket(&x, &a.n)?;
    let xxa = alg.bracket(&x, &xa)?;
    let ad = &(&a.n - &xa) + &xxa.scale(&ratio(1, 2));
    let sl = alg.exp_diff_inv(&x, &alg.act_slw(&a.slw, &x)?)?;
    let w = (&ad + &sl).n3;
    Ok(&pt.y * (&w[1] - &pt.z * &w[0]))
}

/// Collects `μ` over the basis of `n` into a triple `(φ1, φ2, φ3)`.
///
/// Raw values on `n1`, `n2`, `n3` live in `V* ⊗ W*`, `V`, `W*`; `W*` is identified
/// with `W` through `ω`, and `φ1` carries the factor `-2` that makes the contraction
/// with `φ3` match `B(φ2, φ2)`.
pub fn moment_point(alg: &NilpotentAlgebra, pt: &ChartPoint) -> Result<MomentPoint> {
    let p = alg.p();
    let raw: Vec<Scalar> = (0..NElem::total_dim(p))
        .into_par_iter()
        .map(|i| moment_of(alg, pt, &Direction::from_n(NElem::basis(p, i))))
        .collect::<Result<_>>()?;
    Ok(assemble(p, &raw))
}

/// Same as [`moment_point`] with the closed-form values.
pub fn moment_point_by_transport(alg: &NilpotentAlgebra, pt: &ChartPoint) -> Result<MomentPoint> {
    let p = alg.p();
    let raw: Vec<Scalar> = (0..NElem::total_dim(p))
        .map(|i| moment_by_transport(alg, pt, &Direction::from_n(NElem::basis(p, i))))
        .collect::<Result<_>>()?;
    Ok(assemble(p, &raw))
}

fn assemble(p: usize, raw: &[Scalar]) -> MomentPoint {
    let r1 = [&raw[..p], &raw[p..2 * p]];
    let two = scalar::int(2);
    MomentPoint {
        phi1: [scalar::scale_vec(&-two.clone(), r1[1]), scalar::scale_vec(&two, r1[0])],
        phi2: raw[2 * p..3 * p].to_vec(),
        phi3: [raw[3 * p + 1].clone(), -&raw[3 * p]],
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ProbeMode {
    Exhaustive,
    Random,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub q: u64,
    pub v: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrimeTrial {
    pub q: u64,
    pub mode: ProbeMode,
    /// Vectors examined, up to and including the witness if one was found.
    pub trials: u64,
}

/// Outcome of [`smoothness_probe`]. Finite-field evidence only.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProbeVerdict {
    #[serde(rename = "cubic-hash")]
    pub cubic_hash: String,
    pub primes: Vec<u64>,
    /// Exhaustive only if every examined prime was enumerated exhaustively.
    pub mode: ProbeMode,
    pub witness: Option<Witness>,
    pub trials: Vec<PrimeTrial>,
    pub seed: u64,
    pub evidence: &'static str,
}

impl ProbeVerdict {
    pub fn witness_found(&self) -> bool {
        self.witness.is_some()
    }

    pub fn class(&self) -> &'static str {
        if self.witness_found() {
            "witness-found"
        } else {
            "none-found"
        }
    }
}

const CHUNK: u64 = 4096;

fn decode(mut idx: u64, q: u64, p: usize) -> Vec<u64> {
    let mut v = vec![0; p];
    for x in v.iter_mut().rev() {
        *x = idx % q;
        idx /= q;
    }
    v
}

fn is_witness(t: &FFTensor, v: &[u64], buf: &mut [u64]) -> bool {
    if v.iter().all(|&x| x == 0) {
        return false;
    }
    t.polarize_diag_into(v, buf);
    buf.iter().all(|&x| x == 0)
}

/// First projective representative (leading nonzero coordinate 1) in index order
/// with `B(v, v) = 0`.
fn exhaustive(t: &FFTensor, total: u64) -> (Option<Vec<u64>>, u64) {
    let (q, p) = (t.modulus(), t.dim());
    let chunks = total.div_ceil(CHUNK);
    let hit = (0..chunks).into_par_iter().find_map_first(|c| {
        let mut buf = vec![0; p];
        for idx in c * CHUNK..((c + 1) * CHUNK).min(total) {
            let v = decode(idx, q, p);
            if v.iter().find(|&&x| x != 0) != Some(&1) {
                continue;
            }
            if is_witness(t, &v, &mut buf) {
                return Some((idx, v));
            }
        }
        None
    });
    // count representatives examined up to the stopping point
    let end = hit.as_ref().map_or(total, |(idx, _)| idx + 1);
    let examined = projective_count_below(end, q, p);
    (hit.map(|(_, v)| v), examined)
}

/// Number of indices `< end` whose digit vector has leading nonzero digit 1.
fn projective_count_below(end: u64, q: u64, p: usize) -> u64 {
    (0..end)
        .into_par_iter()
        .filter(|&idx| decode(idx, q, p).into_iter().find(|&x| x != 0) == Some(1))
        .count() as u64
}

fn chunk_seed(seed: u64, q: u64, chunk: u64) -> [u8; 32] {
    let mut h = Sha256::new();
    h.update(seed.to_le_bytes());
    h.update(q.to_le_bytes());
    h.update(chunk.to_le_bytes());
    h.finalize().into()
}

/// Projective vectors of Hamming weight 1 and 2, in a fixed order.
fn low_weight(t: &FFTensor) -> (Option<Vec<u64>>, u64) {
    let (q, p) = (t.modulus(), t.dim());
    let mut buf = vec![0; p];
    let mut count = 0;
    for i in 0..p {
        for j in i..p {
            let values = if i == j { 1..2 } else { 1..q };
            for a in values {
                let mut v = vec![0; p];
                v[i] = 1;
                if j > i {
                    v[j] = a;
                }
                count += 1;
                if is_witness(t, &v, &mut buf) {
                    return (Some(v), count);
                }
            }
        }
    }
    (None, count)
}

/// Low-weight vectors first, then `budget` seeded uniform samples.
fn random(t: &FFTensor, budget: u64, seed: u64) -> (Option<Vec<u64>>, u64) {
    let (found, sparse) = low_weight(t);
    if found.is_some() {
        return (found, sparse);
    }
    let (q, p) = (t.modulus(), t.dim());
    let chunks = budget.div_ceil(CHUNK);
    let hit = (0..chunks).into_par_iter().find_map_first(|c| {
        let mut rng = ChaCha8Rng::from_seed(chunk_seed(seed, q, c));
        let mut buf = vec![0; p];
        let n = CHUNK.min(budget - c * CHUNK);
        for k in 0..n {
            let v: Vec<u64> = (0..p).map(|_| rng.gen_range(0..q)).collect();
            if is_witness(t, &v, &mut buf) {
                return Some((c * CHUNK + k + 1, v));
            }
        }
        None
    });
    match hit {
        Some((count, v)) => (Some(v), sparse + count),
        None => (None, sparse + budget),
    }
}

/// Searches `F_q^p` for `v ≠ 0` with `B(v, v) = 0`, prime by prime, stopping at the
/// first witness.
///
/// Primes 2 and 3 are refused: the gradient of the cubic is `3 B(v, v)`.
pub fn smoothness_probe(t: &SymCubic, primes: &[u64], budget: u64, seed: u64) -> Result<ProbeVerdict> {
    if let Some(&q) = primes.iter().find(|&&q| q <= 3) {
        return Err(Error::Precondition(format!("probe characteristic must exceed 3, got {q}")));
    }
    let reduced: Vec<FFTensor> = primes.iter().map(|&q| reduce_mod(t, q)).collect::<Result<_>>()?;
    let p = t.dim();
    let mut trials = Vec::new();
    let mut witness = None;
    for ft in &reduced {
        let q = ft.modulus();
        let total = (q as u128).checked_pow(p as u32).filter(|&n| n <= budget as u128);
        let (found, count, mode) = match total {
            Some(n) => {
                let (f, c) = exhaustive(ft, n as u64);
                (f, c, ProbeMode::Exhaustive)
            }
            None => {
                let (f, c) = random(ft, budget, seed);
                (f, c, ProbeMode::Random)
            }
        };
        trials.push(PrimeTrial { q, mode, trials: count });
        if let Some(v) = found {
            witness = Some(Witness { q, v });
            break;
        }
    }
    let mode = if trials.iter().all(|t| t.mode == ProbeMode::Exhaustive) {
        ProbeMode::Exhaustive
    } else {
        ProbeMode::Random
    };
    Ok(ProbeVerdict {
        cubic_hash: t.content_hash(),
        primes: primes.to_vec(),
        mode,
        witness,
        trials,
        seed,
        evidence: "probabilistic",
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundaryReport {
    #[serde(rename = "cubic-hash")]
    pub cubic_hash: String,
    pub p: usize,
    pub dim_image: usize,
    /// Parameters of the boundary stratum `φ2 = φ3 = 0`; present only when the
    /// probe found no singular point.
    pub boundary_params: Option<usize>,
    pub codim_two_supported: bool,
    pub status: &'static str,
    pub probe: ProbeVerdict,
}

/// Dimension bookkeeping for the boundary of the moment image, conditioned on the
/// probe outcome.
pub fn boundary_report(t: &SymCubic, primes: &[u64], budget: u64, seed: u64) -> Result<BoundaryReport> {
    let probe = smoothness_probe(t, primes, budget, seed)?;
    let p = t.dim();
    let smooth = !probe.witness_found();
    Ok(BoundaryReport {
        cubic_hash: t.content_hash(),
        p,
        dim_image: 2 * p + 2,
        boundary_params: smooth.then_some(2 * p),
        codim_two_supported: smooth,
        status: if smooth { "codim >= 2 supported" } else { "codimension-2 argument inapplicable" },
        probe,
    })
}

/// Whether `v` (over `F_q`) satisfies `B(v, v) = 0`; used to re-check witnesses.
pub fn check_witness(t: &SymCubic, w: &Witness) -> Result<bool> {
    let ft = reduce_mod(t, w.q)?;
    check_dim(ft.dim(), w.v.len())?;
    let mut buf = vec![0; ft.dim()];
    Ok(is_witness(&ft, &w.v, &mut buf))
}

/// A fixed direction list spanning `n ⊕ sl(W)`.
pub fn direction_basis(p: usize) -> Vec<Direction> {
    let mut out: Vec<Direction> = (0..NElem::total_dim(p)).map(|i| Direction::from_n(NElem::basis(p, i))).collect();
    out.extend(SlWElem::basis().into_iter().map(|g| Direction::from_slw(p, g)));
    out
}
