//! The contact form in chart coordinates, its lift to `L^×`, nondegeneracy of the
//! lifted differential, and the tangent map of lines through the base point.
//!
//! Chart coordinates on `L^×` are ordered `(y, z, X3¹, X3², X1_1..X1_p, X2_1..X2_p)`:
//! `y` is the fiber coordinate over the section `m* - z ℓ*`, `z` places the point
//! `ℓ + z m` on `PW`, and the rest are coordinates of `X ∈ n_m`.

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::bch::ChartElem;
use crate::cubic::{cubic_eval, polarize, Covec, SymCubic};
use crate::error::{check_dim, Error, Result};
use crate::linalg::{self, Matrix};
use crate::nilpotent::NilpotentAlgebra;
use crate::poly::Poly;
use crate::scalar::{self, ratio, Scalar};

/// Sign of the `X2 dX1 - X1 dX2` term in the chart expression of the contact form.
///
/// `Displayed` is `y(dX3¹ - z dX3²) + (y/2)(X2 dX1 - X1 dX2)`, whose differential at
/// the base point is `dy∧dX3¹ - y dz∧dX3² + y dX2∧dX1`. `Invariant` flips the sign
/// of the second term; it is the form obtained by left-translating the hyperplane
/// at the base point with the bracket conventions of [`crate::nilpotent`], and is
/// what the moment map uses. The two differ by the chart symmetry `X2 ↦ -X2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Convention {
    Displayed,
    Invariant,
}

impl Convention {
    fn sign(self) -> Scalar {
        match self {
            Convention::Displayed => Scalar::one(),
            Convention::Invariant => -Scalar::one(),
        }
    }
}

/// A point of `L^×` in chart coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChartPoint {
    pub chart: ChartElem,
    pub z: Scalar,
    pub y: Scalar,
}

impl ChartPoint {
    pub fn new(chart: ChartElem, z: Scalar, y: Scalar) -> Result<Self> {
        if y.is_zero() {
            return Err(Error::Precondition("fiber coordinate y must be nonzero".into()));
        }
        Ok(Self { chart, z, y })
    }

    /// `X = 0`, `z = 0`.
    pub fn base(p: usize, y: Scalar) -> Result<Self> {
        Self::new(ChartElem::zero(p), Scalar::zero(), y)
    }

    pub fn dim_p(&self) -> usize {
        self.chart.dim_p()
    }

    pub fn coordinates(&self) -> Vec<Scalar> {
        let mut c = vec![self.y.clone(), self.z.clone()];
        c.extend(self.chart.to_flat());
        c
    }

    pub fn random<R: Rng + ?Sized>(rng: &mut R, p: usize) -> Self {
        let flat = scalar::random_vector(rng, 2 * p + 2);
        let chart = ChartElem::from_flat(p, &flat).expect("width 2p+2");
        let z = scalar::random_scalar(rng, 5, 3);
        let y = scalar::random_nonzero_scalar(rng, 5, 3);
        Self { chart, z, y }
    }
}

/// A tangent vector to `L^×` in chart coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChartTangent {
    pub chart: ChartElem,
    pub dz: Scalar,
    pub dy: Scalar,
}

impl ChartTangent {
    pub fn coordinates(&self) -> Vec<Scalar> {
        let mut c = vec![self.dy.clone(), self.dz.clone()];
        c.extend(self.chart.to_flat());
        c
    }
}

pub fn coordinate_labels(p: usize) -> Vec<String> {
    let mut out = vec!["y".to_string(), "z".into(), "X3^1".into(), "X3^2".into()];
    out.extend((1..=p).map(|i| format!("X1_{i}")));
    out.extend((1..=p).map(|i| format!("X2_{i}")));
    out
}

/// An exactly antisymmetric square matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkewMatrix {
    entries: Matrix,
}

impl SkewMatrix {
    pub fn new(entries: Matrix) -> Result<Self> {
        let n = entries.len();
        for (i, row) in entries.iter().enumerate() {
            check_dim(n, row.len())?;
            for j in 0..=i {
                if row[j] != -&entries[j][i] {
                    return Err(Error::InvalidInput(format!("entries ({i},{j}) and ({j},{i}) are not opposite")));
                }
            }
        }
        Ok(Self { entries })
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.entries[i][j]
    }

    pub fn as_matrix(&self) -> &Matrix {
        &self.entries
    }

    pub fn determinant(&self) -> Scalar {
        linalg::determinant(&self.entries).expect("square by construction")
    }

    pub fn rank(&self) -> usize {
        linalg::rank(&self.entries)
    }

    /// `uᵀ M v`, the value of the 2-form on `(u, v)`.
    pub fn pair(&self, u: &[Scalar], v: &[Scalar]) -> Scalar {
        let mut acc = Scalar::zero();
        for (i, row) in self.entries.iter().enumerate() {
            if u[i].is_zero() {
                continue;
            }
            acc += &u[i] * scalar::dot(row, v);
        }
        acc
    }

    pub fn submatrix(&self, idx: &[usize]) -> Self {
        Self {
            entries: idx
                .iter()
                .map(|&i| idx.iter().map(|&j| self.entries[i][j].clone()).collect())
                .collect(),
        }
    }
}

/// The lifted 1-form `θ̃` as polynomial coefficients, with its exterior derivative.
#[derive(Clone, Debug)]
pub struct ContactForm {
    p: usize,
    convention: Convention,
    coefficients: Vec<Poly>,
    differential: Vec<Vec<Poly>>,
}

impl ContactForm {
    pub fn new(p: usize, convention: Convention) -> Self {
        let n = 2 * p + 4;
        let var = |i| Poly::var(n, i);
        let (y, z) = (var(0), var(1));
        let half = ratio(1, 2) * convention.sign();
        let mut coefficients = vec![Poly::zero(n); n];
        coefficients[2] = y.clone();
        coefficients[3] = y.mul(&z).scale(&-Scalar::one());
        for i in 0..p {
            let (x1, x2) = (4 + i, 4 + p + i);
            coefficients[x1] = y.mul(&var(x2)).scale(&half);
            coefficients[x2] = y.mul(&var(x1)).scale(&-half.clone());
        }
        let differential = (0..n)
            .map(|k| {
                (0..n)
                    .map(|j| coefficients[j].derivative(k).sub(&coefficients[k].derivative(j)))
                    .collect()
            })
            .collect();
        Self { p, convention, coefficients, differential }
    }

    pub fn convention(&self) -> Convention {
        self.convention
    }

    pub fn p(&self) -> usize {
        self.p
    }

    /// `θ̃` at `pt` applied to `v`.
    pub fn eval(&self, pt: &ChartPoint, v: &ChartTangent) -> Result<Scalar> {
        check_dim(self.p, pt.dim_p())?;
        check_dim(self.p, v.chart.dim_p())?;
        let at = pt.coordinates();
        let mut acc = Scalar::zero();
        for (a, t) in self.coefficients.iter().zip(v.coordinates()) {
            if !t.is_zero() {
                acc += a.eval(&at) * t;
            }
        }
        Ok(acc)
    }

    /// Matrix of `dθ̃` at `pt`; entry `(k, j)` is the coefficient of `dq_k ∧ dq_j`
    /// for `k < j`.
    pub fn differential_at(&self, pt: &ChartPoint) -> Result<SkewMatrix> {
        check_dim(self.p, pt.dim_p())?;
        if pt.y.is_zero() {
            return Err(Error::Precondition("fiber coordinate y must be nonzero".into()));
        }
        let at = pt.coordinates();
        let entries = self
            .differential
            .iter()
            .map(|row| row.iter().map(|f| f.eval(&at)).collect())
            .collect();
        SkewMatrix::new(entries)
    }
}

/// Value of the contact form (modulo `ℓ`) at `x(X, ℓ)` on the chart direction `Z`:
/// `Z3¹ + (X2(z1) - Z2(x1)) / 2`.
pub fn theta(alg: &NilpotentAlgebra, x: &ChartElem, z: &ChartElem) -> Result<Scalar> {
    theta_with(Convention::Displayed, alg, x, z)
}

pub fn theta_with(conv: Convention, alg: &NilpotentAlgebra, x: &ChartElem, z: &ChartElem) -> Result<Scalar> {
    alg.require_assumption()?;
    check_dim(alg.p(), x.dim_p())?;
    check_dim(alg.p(), z.dim_p())?;
    let cross = x.x2.eval(&z.x1)? - z.x2.eval(&x.x1)?;
    Ok(&z.x3[0] + conv.sign() * cross * ratio(1, 2))
}

/// The same value computed by translating `Z` back to the base point with the
/// inverse exponential differential and reading off the `m`-coefficient.
pub fn theta_by_translation(alg: &NilpotentAlgebra, x: &ChartElem, z: &ChartElem) -> Result<Scalar> {
    alg.require_assumption()?;
    let y = alg.exp_diff_inv(&x.to_nelem(), &z.to_nelem())?;
    Ok(y.n3[1].clone())
}

/// `dθ̃` at `pt` for the displayed chart expression.
pub fn dtheta_matrix(alg: &NilpotentAlgebra, pt: &ChartPoint) -> Result<SkewMatrix> {
    ContactForm::new(alg.p(), Convention::Displayed).differential_at(pt)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CertificateReport {
    #[serde(rename = "cubic-hash")]
    pub cubic_hash: String,
    pub samples: usize,
    pub seed: u64,
    pub min_abs_det_num_digits: usize,
    /// Indices of sampled points with vanishing determinant.
    pub failures: Vec<usize>,
    pub assumption_ok: bool,
    #[serde(skip)]
    pub determinants: Vec<Scalar>,
}

impl CertificateReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Exact `det dθ̃` at `samples` seeded points with `y ≠ 0`.
///
/// Runs for cubics violating the surjectivity assumption too; the report flags them.
pub fn nondegeneracy_certificate(alg: &NilpotentAlgebra, samples: usize, seed: u64) -> CertificateReport {
    let p = alg.p();
    let form = ContactForm::new(p, Convention::Displayed);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let points: Vec<ChartPoint> = (0..samples).map(|_| ChartPoint::random(&mut rng, p)).collect();
    let determinants: Vec<Scalar> = points
        .par_iter()
        .map(|pt| form.differential_at(pt).expect("sampled y is nonzero").determinant())
        .collect();
    let failures = determinants
        .iter()
        .enumerate()
        .filter(|(_, d)| d.is_zero())
        .map(|(i, _)| i)
        .collect();
    let min_abs_det_num_digits = determinants
        .iter()
        .filter(|d| !d.is_zero())
        .map(scalar::numerator_digits)
        .min()
        .unwrap_or(0);
    CertificateReport {
        cubic_hash: alg.cubic().content_hash(),
        samples,
        seed,
        min_abs_det_num_digits,
        failures,
        assumption_ok: alg.assumption_ok(),
        determinants,
    }
}

/// A tangent vector of `X_c` at the base point: `(z, X3¹, X3², X1, X2)` directions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BaseTangent {
    pub dz: Scalar,
    pub x3: [Scalar; 2],
    pub x1: Vec<Scalar>,
    pub x2: Covec,
}

impl BaseTangent {
    pub fn zero(p: usize) -> Self {
        Self { dz: Scalar::zero(), x3: Default::default(), x1: scalar::zeros(p), x2: Covec::zero(p) }
    }

    pub fn in_contact_hyperplane(&self) -> bool {
        self.x3[0].is_zero()
    }

    /// Coordinates `(z, X3², X1, X2)` on the hyperplane.
    fn hyperplane_coordinates(&self) -> Vec<Scalar> {
        let mut c = vec![self.dz.clone(), self.x3[1].clone()];
        c.extend(self.x1.iter().cloned());
        c.extend(self.x2.0.iter().cloned());
        c
    }
}

/// Indices of the hyperplane directions `(z, X3², X1, X2)` among chart coordinates.
fn hyperplane_indices(p: usize) -> Vec<usize> {
    let mut idx = vec![1, 3];
    idx.extend(4..4 + 2 * p);
    idx
}

/// `dθ̃` at the base point with `y = 1`, restricted to the contact hyperplane.
pub fn hyperplane_form(p: usize) -> SkewMatrix {
    let full = ContactForm::new(p, Convention::Displayed)
        .differential_at(&ChartPoint::base(p, Scalar::one()).expect("y = 1"))
        .expect("base point is valid");
    full.submatrix(&hyperplane_indices(p))
}

/// The `W/ℓ`-valued symplectic pairing on the contact hyperplane at the base point.
pub fn symplectic_pairing_d(alg: &NilpotentAlgebra, d1: &BaseTangent, d2: &BaseTangent) -> Result<Scalar> {
    for d in [d1, d2] {
        check_dim(alg.p(), d.x1.len())?;
        check_dim(alg.p(), d.x2.dim())?;
        if !d.in_contact_hyperplane() {
            return Err(Error::Precondition("vector has a nonzero X3¹ component, so it is not in D".into()));
        }
    }
    let form = hyperplane_form(alg.p());
    Ok(form.pair(&d1.hyperplane_coordinates(), &d2.hyperplane_coordinates()))
}

/// A point of `P(V ⊕ V* ⊕ Q ⊕ Q)` given by homogeneous coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjPoint {
    pub v: Vec<Scalar>,
    pub b: Vec<Scalar>,
    pub c: Scalar,
    pub t: Scalar,
}

impl ProjPoint {
    fn flat(&self) -> Vec<Scalar> {
        self.v
            .iter()
            .chain(&self.b)
            .chain([&self.c, &self.t])
            .cloned()
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        scalar::is_zero_vec(&self.flat())
    }

    /// Representative whose first nonzero coordinate is 1.
    pub fn normalized(&self) -> Self {
        let flat = self.flat();
        let Some(lead) = flat.iter().find(|x| !x.is_zero()) else {
            return self.clone();
        };
        let inv = lead.recip();
        Self {
            v: scalar::scale_vec(&inv, &self.v),
            b: scalar::scale_vec(&inv, &self.b),
            c: &self.c * &inv,
            t: &self.t * &inv,
        }
    }

    pub fn same_point(&self, other: &Self) -> bool {
        !self.is_zero() && self.normalized() == other.normalized()
    }
}

/// `τ(v) = [v : B(v,v) : c(v) : 1]`.
pub fn tau(t: &SymCubic, v: &[Scalar]) -> Result<ProjPoint> {
    Ok(ProjPoint {
        v: v.to_vec(),
        b: polarize(t, v, v)?.0,
        c: cubic_eval(t, v)?,
        t: Scalar::one(),
    })
}

/// Homogenized `τ` along `v / t`: `[t² v : t B(v,v) : c(v) : t³]`, with the limit
/// point taken when `t = 0`.
pub fn tau_closure_sample(t_form: &SymCubic, v: &[Scalar], t: &Scalar) -> Result<ProjPoint> {
    let b = polarize(t_form, v, v)?.0;
    let c = cubic_eval(t_form, v)?;
    let p = v.len();
    if !t.is_zero() {
        return Ok(ProjPoint {
            v: scalar::scale_vec(&(t * t), v),
            b: scalar::scale_vec(t, &b),
            c,
            t: t * t * t,
        });
    }
    if scalar::is_zero_vec(v) {
        return Err(Error::InvalidInput("v and t are both zero".into()));
    }
    // lowest nonvanishing order in t
    let z = scalar::zeros(p);
    Ok(if !c.is_zero() {
        ProjPoint { v: z.clone(), b: z, c, t: Scalar::zero() }
    } else if !scalar::is_zero_vec(&b) {
        ProjPoint { v: z, b, c: Scalar::zero(), t: Scalar::zero() }
    } else {
        ProjPoint { v: v.to_vec(), b: z, c: Scalar::zero(), t: Scalar::zero() }
    })
}

/// Proportionality constants between the first-order terms of the line coordinates
/// and the components of `τ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LineConstants {
    #[serde(with = "scalar::serde_scalar")]
    pub s1: Scalar,
    #[serde(with = "scalar::serde_scalar")]
    pub s2: Scalar,
    #[serde(with = "scalar::serde_scalar")]
    pub s3: Scalar,
}

impl LineConstants {
    /// Read off once from `c = x³`, `v = 1`, where `B(v,v) = c(v) = 1`.
    pub fn calibrate() -> Self {
        let x3 = SymCubic::from_entries(1, [((0, 0, 0), Scalar::one())]).expect("valid cubic");
        let line = NilpotentAlgebra::new(x3)
            .solve_line_coordinates(&[Scalar::one()])
            .expect("dimension matches");
        let lin = line.coefficient(1);
        Self { s1: lin.x1[0].clone(), s2: lin.x2.0[0].clone(), s3: lin.x3[1].clone() }
    }
}

/// Checks that the `z`-linear terms of the line through `v` are
/// `(s1 v, s2 B(v,v), s3 c(v))` and that the `X3¹` term vanishes.
pub fn tau_matches_line_expansion(alg: &NilpotentAlgebra, v: &[Scalar], k: &LineConstants) -> Result<bool> {
    alg.require_assumption()?;
    let line = alg.solve_line_coordinates(v)?;
    let lin = line.coefficient(1);
    let tp = tau(alg.cubic(), v)?;
    Ok(lin.x1 == scalar::scale_vec(&k.s1, &tp.v)
        && lin.x2.0 == scalar::scale_vec(&k.s2, &tp.b)
        && lin.x3[1] == &k.s3 * &tp.c
        && lin.x3[0].is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn alg(t: SymCubic) -> NilpotentAlgebra {
        NilpotentAlgebra::new(t)
    }

    fn x3() -> SymCubic {
        SymCubic::from_entries(1, [((0, 0, 0), int(1))]).unwrap()
    }

    fn fermat() -> SymCubic {
        SymCubic::from_entries(3, (0..3).map(|i| ((i, i, i), int(1)))).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<Scalar> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn theta_examples() {
        let a = alg(x3());
        let zero = ChartElem::zero(1);
        let mut z = ChartElem::zero(1);
        z.x3 = [int(7), int(3)];
        assert_eq!(theta(&a, &zero, &z).unwrap(), int(7));

        let mut z = ChartElem::zero(1);
        z.x3 = [int(0), int(5)];
        z.x1 = ints(&[4]);
        z.x2 = Covec(ints(&[2]));
        assert_eq!(theta(&a, &zero, &z).unwrap(), int(0));

        let mut x = ChartElem::zero(1);
        x.x2 = Covec(ints(&[1]));
        let mut z = ChartElem::zero(1);
        z.x1 = ints(&[1]);
        assert_eq!(theta(&a, &x, &z).unwrap(), ratio(1, 2));
        assert_eq!(theta_with(Convention::Invariant, &a, &x, &z).unwrap(), ratio(-1, 2));
        assert_eq!(theta_by_translation(&a, &x, &z).unwrap(), ratio(-1, 2));
    }

    #[test]
    fn theta_refuses_flagged_cubic() {
        let a = alg(SymCubic::zero(1).unwrap());
        let z = ChartElem::zero(1);
        assert!(matches!(theta(&a, &z, &z), Err(Error::AssumptionViolated { .. })));
    }

    #[test]
    fn base_point_matrix_p1() {
        let a = alg(x3());
        let m = dtheta_matrix(&a, &ChartPoint::base(1, int(1)).unwrap()).unwrap();
        // coordinates: y, z, X3¹, X3², X1, X2
        let mut expected = linalg::zero_matrix(6, 6);
        let mut put = |i: usize, j: usize, v: i64| {
            expected[i][j] = int(v);
            expected[j][i] = int(-v);
        };
        put(0, 2, 1);
        put(1, 3, -1);
        put(5, 4, 1);
        assert_eq!(m.as_matrix(), &expected);
        assert_eq!(m.determinant(), int(1));
    }

    #[test]
    fn base_point_scaling_in_y() {
        let a = alg(fermat());
        let m1 = dtheta_matrix(&a, &ChartPoint::base(3, int(1)).unwrap()).unwrap();
        let m2 = dtheta_matrix(&a, &ChartPoint::base(3, int(2)).unwrap()).unwrap();
        assert_eq!(m2.get(1, 3), &(m1.get(1, 3) * int(2)));
        for i in 0..3 {
            assert_eq!(m2.get(7 + i, 4 + i), &(m1.get(7 + i, 4 + i) * int(2)));
        }
        assert_eq!(m2.get(0, 2), m1.get(0, 2));
        // det = y^(2p+2)
        assert_eq!(m2.determinant(), int(256));
    }

    #[test]
    fn dtheta_rejects_zero_fiber() {
        let a = alg(x3());
        let pt = ChartPoint { chart: ChartElem::zero(1), z: int(0), y: int(0) };
        assert!(matches!(dtheta_matrix(&a, &pt), Err(Error::Precondition(_))));
        assert!(ChartPoint::new(ChartElem::zero(1), int(0), int(0)).is_err());
    }

    #[test]
    fn certificate_x3_and_zero_cubic() {
        let r = nondegeneracy_certificate(&alg(x3()), 100, 7);
        assert!(r.passed());
        assert_eq!(r.determinants.len(), 100);
        let r0 = nondegeneracy_certificate(&alg(SymCubic::zero(1).unwrap()), 20, 7);
        assert!(r0.passed());
        assert!(!r0.assumption_ok);
    }

    #[test]
    fn hyperplane_pairing() {
        let a = alg(fermat());
        let mut e = BaseTangent::zero(3);
        e.x1[1] = int(1);
        for j in 0..3 {
            let mut eps = BaseTangent::zero(3);
            eps.x2.0[j] = int(1);
            let val = symplectic_pairing_d(&a, &e, &eps).unwrap();
            assert_eq!(val, if j == 1 { int(-1) } else { int(0) });
        }
        let mut lz = BaseTangent::zero(3);
        lz.dz = int(1);
        let mut l = BaseTangent::zero(3);
        l.x3[1] = int(1);
        assert_eq!(symplectic_pairing_d(&a, &lz, &l).unwrap(), int(-1));
        assert_eq!(symplectic_pairing_d(&a, &e, &e).unwrap(), int(0));
        let mut bad = BaseTangent::zero(3);
        bad.x3[0] = int(1);
        assert!(symplectic_pairing_d(&a, &bad, &e).is_err());
        assert_eq!(hyperplane_form(3).rank(), 8);
    }

    #[test]
    fn tau_examples() {
        let p0 = tau(&x3(), &ints(&[0])).unwrap();
        assert_eq!(p0, ProjPoint { v: ints(&[0]), b: ints(&[0]), c: int(0), t: int(1) });
        let p2 = tau(&x3(), &ints(&[2])).unwrap();
        assert_eq!(p2, ProjPoint { v: ints(&[2]), b: ints(&[4]), c: int(8), t: int(1) });
        let pf = tau(&fermat(), &ints(&[1, 1, 0])).unwrap();
        assert_eq!(pf, ProjPoint { v: ints(&[1, 1, 0]), b: ints(&[1, 1, 0]), c: int(2), t: int(1) });
    }

    #[test]
    fn tau_closure_examples() {
        let f = fermat();
        let v = ints(&[1, 2, 0]);
        assert!(tau_closure_sample(&f, &v, &int(1)).unwrap().same_point(&tau(&f, &v).unwrap()));
        let lim = tau_closure_sample(&f, &v, &int(0)).unwrap();
        assert!(lim.same_point(&ProjPoint { v: ints(&[0, 0, 0]), b: ints(&[0, 0, 0]), c: int(1), t: int(0) }));
        // c(1,-1,0) = 0 but B = (1,1,0)
        let w = ints(&[1, -1, 0]);
        let lim = tau_closure_sample(&f, &w, &int(0)).unwrap();
        assert_eq!(lim, ProjPoint { v: ints(&[0, 0, 0]), b: ints(&[1, 1, 0]), c: int(0), t: int(0) });
        assert!(tau_closure_sample(&f, &ints(&[0, 0, 0]), &int(0)).is_err());
        // t = 2 rescales v -> v/2
        let h = tau_closure_sample(&f, &v, &int(2)).unwrap();
        let half: Vec<Scalar> = v.iter().map(|x| x * ratio(1, 2)).collect();
        assert!(h.same_point(&tau(&f, &half).unwrap()));
    }

    #[test]
    fn line_constants_magnitudes() {
        let k = LineConstants::calibrate();
        assert_eq!(k.s1, int(-1));
        assert_eq!(k.s2, ratio(-1, 2));
        assert_eq!(k.s3, ratio(1, 6));
        let a = alg(x3());
        assert!(tau_matches_line_expansion(&a, &ints(&[0]), &k).unwrap());
        assert!(tau_matches_line_expansion(&a, &ints(&[2]), &k).unwrap());
    }
}
