//! The nilpotent group `N` in logarithmic coordinates.
//!
//! Because `n` is 3-step nilpotent the Campbell–Hausdorff series terminates:
//!
//! ```text
//! H(X, Y) = X + Y + 1/2 [X,Y] + 1/12 [X,[X,Y]] + 1/12 [Y,[Y,X]]
//! ```
//!
//! The chart used for the contact geometry is `X ↦ exp(X)·x_p` on the complement
//! `n_m = (V ⊗ m) ⊕ V* ⊕ W` of `a_ℓ = V ⊗ ℓ`, with `ℓ = f_1` and `m = f_2`.

use num_traits::Zero;

use crate::cubic::Covec;
use crate::error::{check_dim, Result};
use crate::nilpotent::{NElem, NilpotentAlgebra};
use crate::poly::{eval_univariate, Interpolator};
use crate::scalar::{self, ratio, Scalar};

/// A group element `exp(log)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupElem {
    pub log: NElem,
}

impl GroupElem {
    pub fn identity(p: usize) -> Self {
        Self { log: NElem::zero(p) }
    }

    pub fn is_identity(&self) -> bool {
        self.log.is_zero()
    }
}

impl NilpotentAlgebra {
    pub fn bch(&self, x: &NElem, y: &NElem) -> Result<NElem> {
        self.bracket(x, y)?;
        Ok(self.bch_unchecked(x, y))
    }

    pub(crate) fn bch_unchecked(&self, x: &NElem, y: &NElem) -> NElem {
        let xy = self.bracket_unchecked(x, y);
        let x_xy = self.bracket_unchecked(x, &xy);
        // [Y,[Y,X]] = -[Y,[X,Y]]
        let y_yx = -&self.bracket_unchecked(y, &xy);
        let mut out = x + y;
        out = &out + &xy.scale(&ratio(1, 2));
        out = &out + &(&x_xy + &y_yx).scale(&ratio(1, 12));
        out
    }

    pub fn group_mul(&self, a: &GroupElem, b: &GroupElem) -> Result<GroupElem> {
        Ok(GroupElem { log: self.bch(&a.log, &b.log)? })
    }

    pub fn group_inv(&self, a: &GroupElem) -> GroupElem {
        GroupElem { log: -&a.log }
    }

    /// `e_X(Y) = Y + 1/2 [X,Y] + 1/12 [X,[X,Y]]`.
    pub fn exp_diff(&self, x: &NElem, y: &NElem) -> Result<NElem> {
        self.bracket(x, y)?;
        Ok(self.exp_diff_unchecked(x, y))
    }

    fn exp_diff_unchecked(&self, x: &NElem, y: &NElem) -> NElem {
        y + &self.exp_diff_nilpart(x, y)
    }

    /// `e_X(Y) - Y`, which raises degree by at least one.
    fn exp_diff_nilpart(&self, x: &NElem, y: &NElem) -> NElem {
        let xy = self.bracket_unchecked(x, y);
        let x_xy = self.bracket_unchecked(x, &xy);
        &xy.scale(&ratio(1, 2)) + &x_xy.scale(&ratio(1, 12))
    }

    /// Solves `e_X(Y) = Z` for `Y` by back-substitution through the grading.
    ///
    /// With `e_X = 1 + D` and `D` strictly degree-raising, `D^3 = 0` and
    /// `Y = Z - D Z + D^2 Z`.
    pub fn exp_diff_inv(&self, x: &NElem, z: &NElem) -> Result<NElem> {
        self.bracket(x, z)?;
        let dz = self.exp_diff_nilpart(x, z);
        let ddz = self.exp_diff_nilpart(x, &dz);
        Ok(&(z - &dz) + &ddz)
    }
}

/// Coordinates on `n_m`: `x1 ⊗ m + x2 + x3[1] ℓ + x3[0] m`.
///
/// `x3[0]` is the `m = f_2` coefficient and `x3[1]` the `ℓ = f_1` coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChartElem {
    pub x1: Vec<Scalar>,
    pub x2: Covec,
    pub x3: [Scalar; 2],
}

impl ChartElem {
    pub fn zero(p: usize) -> Self {
        Self { x1: scalar::zeros(p), x2: Covec::zero(p), x3: [Scalar::zero(), Scalar::zero()] }
    }

    pub fn dim_p(&self) -> usize {
        self.x1.len()
    }

    pub fn to_nelem(&self) -> NElem {
        let p = self.dim_p();
        NElem {
            n1: [scalar::zeros(p), self.x1.clone()],
            n2: self.x2.clone(),
            n3: [self.x3[1].clone(), self.x3[0].clone()],
        }
    }

    /// Fails unless the `ℓ`-column of `n1` vanishes.
    pub fn from_nelem(x: &NElem) -> Option<Self> {
        if !scalar::is_zero_vec(&x.n1[0]) {
            return None;
        }
        Some(Self {
            x1: x.n1[1].clone(),
            x2: x.n2.clone(),
            x3: [x.n3[1].clone(), x.n3[0].clone()],
        })
    }

    /// Flat coordinates `(X3¹, X3², X1, X2)`.
    pub fn to_flat(&self) -> Vec<Scalar> {
        self.x3.iter().chain(&self.x1).chain(&self.x2.0).cloned().collect()
    }

    pub fn from_flat(p: usize, flat: &[Scalar]) -> Result<Self> {
        check_dim(2 * p + 2, flat.len())?;
        Ok(Self {
            x3: [flat[0].clone(), flat[1].clone()],
            x1: flat[2..2 + p].to_vec(),
            x2: Covec(flat[2 + p..].to_vec()),
        })
    }
}

/// `v ⊗ p̂` with `p̂ = ℓ + z m`.
pub fn along_line(v: &[Scalar], z: &Scalar) -> NElem {
    let mut w = NElem::zero(v.len());
    w.n1[0] = v.to_vec();
    w.n1[1] = scalar::scale_vec(z, v);
    w
}

impl NilpotentAlgebra {
    /// Writes `exp(g) = exp(X) exp(w ⊗ p̂)` with `X ∈ n_m`, `p̂ = ℓ + z m`.
    pub fn chart_decompose(&self, g: &NElem, z: &Scalar) -> Result<(ChartElem, Vec<Scalar>)> {
        self.bracket(g, g)?;
        let w = g.n1[0].clone();
        let tail = along_line(&w, z);
        // degree-one part is exact after this step; two corrections settle degrees 2 and 3
        let mut x = g - &tail;
        for _ in 0..2 {
            let h = self.bch_unchecked(&x, &tail);
            x = &x + &(g - &h);
        }
        debug_assert_eq!(&self.bch_unchecked(&x, &tail), g);
        let chart = ChartElem::from_nelem(&x).expect("ℓ-column removed by construction");
        Ok((chart, w))
    }
}

/// Exact solution of `exp(v ⊗ ℓ) = exp(Z(z)) exp(w ⊗ (ℓ + z m))` as polynomials in `z`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LineCoordinates {
    /// `coefficients[d]` is the `z^d` coefficient of `Z(z)`.
    pub coefficients: Vec<ChartElem>,
    pub w: Vec<Scalar>,
}

/// Each degree-`k` component of the line solution has `z`-degree at most `k`.
pub const LINE_DEGREE: usize = 3;

impl LineCoordinates {
    pub fn coefficient(&self, d: usize) -> &ChartElem {
        &self.coefficients[d]
    }

    pub fn eval(&self, z: &Scalar) -> ChartElem {
        let p = self.w.len();
        let coefs: Vec<Vec<Scalar>> = self.coefficients.iter().map(ChartElem::to_flat).collect();
        let flat: Vec<Scalar> = (0..2 * p + 2)
            .map(|c| {
                let col: Vec<Scalar> = coefs.iter().map(|row| row[c].clone()).collect();
                eval_univariate(&col, z)
            })
            .collect();
        ChartElem::from_flat(p, &flat).expect("consistent width")
    }
}

impl NilpotentAlgebra {
    pub fn solve_line_coordinates(&self, v: &[Scalar]) -> Result<LineCoordinates> {
        check_dim(self.p(), v.len())?;
        let g = NElem::tensor(v, 0);
        let interp = Interpolator::for_degree(LINE_DEGREE);
        let mut w = None;
        let samples: Vec<Vec<Scalar>> = interp
            .nodes()
            .iter()
            .map(|z| {
                let (chart, wz) = self.chart_decompose(&g, z)?;
                w.get_or_insert(wz);
                Ok(chart.to_flat())
            })
            .collect::<Result<_>>()?;
        let coefficients = interp
            .coefficients(&samples)
            .iter()
            .map(|flat| ChartElem::from_flat(self.p(), flat))
            .collect::<Result<_>>()?;
        Ok(LineCoordinates { coefficients, w: w.unwrap_or_else(|| v.to_vec()) })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cubic::SymCubic;
    use crate::scalar::int;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn x3() -> NilpotentAlgebra {
        NilpotentAlgebra::new(SymCubic::from_entries(1, [((0, 0, 0), int(1))]).unwrap())
    }

    fn fermat() -> NilpotentAlgebra {
        NilpotentAlgebra::new(SymCubic::from_entries(3, (0..3).map(|i| ((i, i, i), int(1)))).unwrap())
    }

    fn random_elem(rng: &mut ChaCha8Rng, p: usize) -> NElem {
        NElem::from_flat(p, &scalar::random_vector(rng, NElem::total_dim(p))).unwrap()
    }

    #[test]
    fn bch_hand_example() {
        let n = x3();
        let one = vec![int(1)];
        let h = n.bch(&NElem::tensor(&one, 0), &NElem::tensor(&one, 1)).unwrap();
        assert_eq!(h.n1, [vec![int(1)], vec![int(1)]]);
        assert_eq!(h.n2, Covec(vec![ratio(1, 2)]));
        assert_eq!(h.n3, [ratio(-1, 12), ratio(1, 12)]);
    }

    #[test]
    fn bch_identity_and_inverse() {
        let n = fermat();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let x = random_elem(&mut rng, 3);
            assert_eq!(n.bch(&x, &NElem::zero(3)).unwrap(), x);
            assert!(n.bch(&x, &-&x).unwrap().is_zero());
        }
    }

    #[test]
    fn exp_diff_examples() {
        let n = x3();
        let one = vec![int(1)];
        let y = NElem::tensor(&one, 1);
        assert_eq!(n.exp_diff(&NElem::zero(1), &y).unwrap(), y);

        let x = NElem::tensor(&one, 0);
        let mut expected = y.clone();
        expected.n2 = Covec(vec![ratio(1, 2)]);
        expected.n3 = [ratio(-1, 12), int(0)];
        assert_eq!(n.exp_diff(&x, &y).unwrap(), expected);

        // elements of a_ℓ commute
        let y2 = NElem::tensor(&[int(5)], 0);
        assert_eq!(n.exp_diff(&x, &y2).unwrap(), y2);
    }

    #[test]
    fn exp_diff_inverse_general_coefficient_is_one_sixth() {
        // For X = X1, Z = Z1: Y3 = 1/6 [X1,[X1,Z1]] from back-substitution.
        let n = x3();
        let x = NElem::tensor(&[int(1)], 0);
        let z = NElem::tensor(&[int(1)], 1);
        let y = n.exp_diff_inv(&x, &z).unwrap();
        let xz = n.bracket(&x, &z).unwrap();
        let x_xz = n.bracket(&x, &xz).unwrap();
        let expected = &(&z - &xz.scale(&ratio(1, 2))) + &x_xz.scale(&ratio(1, 6));
        assert_eq!(y, expected);
        assert_eq!(n.exp_diff(&x, &y).unwrap(), z);
    }

    #[test]
    fn chart_roundtrip() {
        let n = fermat();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..10 {
            let g = random_elem(&mut rng, 3);
            let z = scalar::random_scalar(&mut rng, 4, 3);
            let (chart, w) = n.chart_decompose(&g, &z).unwrap();
            let back = n.bch(&chart.to_nelem(), &along_line(&w, &z)).unwrap();
            assert_eq!(back, g);
        }
    }

    #[test]
    fn line_coordinates_x3() {
        let n = x3();
        let line = n.solve_line_coordinates(&[int(1)]).unwrap();
        assert_eq!(line.w, vec![int(1)]);
        let lin = line.coefficient(1);
        assert_eq!(lin.x1, vec![int(-1)]);
        assert_eq!(lin.x2, Covec(vec![ratio(-1, 2)]));
        assert_eq!(lin.x3, [int(0), ratio(1, 6)]);
        assert_eq!(line.coefficient(0), &ChartElem::zero(1));
    }

    #[test]
    fn line_coordinates_zero_vector() {
        let line = fermat().solve_line_coordinates(&scalar::zeros(3)).unwrap();
        assert!(line.coefficients.iter().all(|c| *c == ChartElem::zero(3)));
        assert!(scalar::is_zero_vec(&line.w));
    }
}
