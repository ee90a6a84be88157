//! Chevalley bases with integer structure constants.
//!
//! Basis order: the simple coroots `h_1..h_r`, then `e_β` for every root in the
//! order of [`RootSystem::roots`]. Conventions:
//!
//! ```text
//! [h_i, e_β]     = ⟨β, α_i^∨⟩ e_β
//! [e_β, e_{-β}]  = h_β   (the coroot of β)
//! [e_α, e_β]     = N_{α,β} e_{α+β},   N_{-α,-β} = -N_{α,β}
//! ```
//!
//! with `N_{α,β} = +(r+1)` on every extraspecial pair, where `r` is the largest
//! integer with `β - rα` a root. Positive roots are ordered by height, then
//! lexicographically; the extraspecial pair of `ξ` is `(α, ξ - α)` for the least
//! `α` such that `ξ - α` is a positive root.

use std::collections::HashMap;

use num_rational::Ratio;
use serde::Serialize;

use crate::roots::RootSystem;
use crate::structure::{Sparse, StructureConstants};

#[derive(Clone, Debug)]
pub struct ChevalleyAlgebra {
    rs: RootSystem,
    /// `N_{a,b}` for root indices, zero when `a + b` is not a root
    n: Vec<i64>,
    table: StructureConstants<i64>,
}

struct Signs<'a> {
    rs: &'a RootSystem,
    memo: HashMap<(usize, usize), i64>,
}

impl Signs<'_> {
    fn exact_div(num: i64, den: i64) -> i64 {
        assert_eq!(num % den, 0, "structure constant is not integral");
        num / den
    }

    /// Largest `r` with `root(b) - r root(a)` a root.
    fn string_below(&self, a: usize, b: usize) -> i64 {
        let na = self.rs.negative(a);
        let mut r = 0;
        let mut cur = b;
        while let Some(next) = self.rs.sum(cur, na) {
            r += 1;
            cur = next;
        }
        r
    }

    fn get(&mut self, a: usize, b: usize) -> i64 {
        let rs = self.rs;
        let Some(sum) = rs.sum(a, b) else { return 0 };
        match (rs.is_positive(a), rs.is_positive(b)) {
            (true, true) => {
                if a < b {
                    self.special(a, b)
                } else {
                    -self.special(b, a)
                }
            }
            (false, false) => -self.get(rs.negative(a), rs.negative(b)),
            _ => {
                // a + b + c = 0: N_{a,b}/(c,c) = N_{b,c}/(a,a) = N_{c,a}/(b,b)
                let c = rs.negative(sum);
                let cc = rs.half_norm(c);
                // pick the pair among (b, c), (c, a) with equal signs
                if rs.is_positive(b) == rs.is_positive(c) {
                    Self::exact_div(cc * self.get(b, c), rs.half_norm(a))
                } else {
                    Self::exact_div(cc * self.get(c, a), rs.half_norm(b))
                }
            }
        }
    }

    /// `N_{a,b}` for positive roots `a ≺ b` with `a + b` a root.
    fn special(&mut self, a: usize, b: usize) -> i64 {
        if let Some(&v) = self.memo.get(&(a, b)) {
            return v;
        }
        let rs = self.rs;
        let xi = rs.sum(a, b).expect("special pair");
        let a0 = (0..rs.positive_count())
            .find(|&c| rs.sum(xi, rs.negative(c)).is_some_and(|d| rs.is_positive(d)))
            .expect("every non-simple positive root has an extraspecial pair");
        let value = if a0 == a {
            self.string_below(a, b) + 1
        } else {
            let b0 = rs.sum(xi, rs.negative(a0)).expect("extraspecial pair");
            let (na0, nb0) = (rs.negative(a0), rs.negative(b0));
            let mut bracket = Ratio::from_integer(0i64);
            if let Some(s) = rs.sum(b, na0) {
                bracket += Ratio::new(self.get(b, na0) * self.get(a, nb0), 2 * rs.half_norm(s));
            }
            if let Some(s) = rs.sum(a, na0) {
                bracket += Ratio::new(self.get(na0, a) * self.get(b, nb0), 2 * rs.half_norm(s));
            }
            let v = Ratio::from_integer(2 * rs.half_norm(xi)) / Ratio::from_integer(self.get(a0, b0)) * bracket;
            assert!(v.is_integer(), "structure constant is not integral");
            v.to_integer()
        };
        self.memo.insert((a, b), value);
        value
    }
}

impl ChevalleyAlgebra {
    pub fn new(rs: &RootSystem) -> Self {
        let rs = rs.clone();
        let m = rs.len();
        let mut signs = Signs { rs: &rs, memo: HashMap::new() };
        let mut n = vec![0i64; m * m];
        for a in 0..m {
            for b in 0..m {
                n[a * m + b] = signs.get(a, b);
            }
        }
        let rank = rs.rank();
        let table = StructureConstants::from_fn(rank + m, |x, y| -> Sparse<i64> {
            match (x.checked_sub(rank), y.checked_sub(rank)) {
                (None, None) => vec![],
                (None, Some(b)) => vec![(y, rs.simple_pairing(rs.root(b), x))],
                (Some(a), None) => vec![(x, -rs.simple_pairing(rs.root(a), y))],
                (Some(a), Some(b)) => {
                    if rs.negative(a) == b {
                        rs.coroot_coordinates(a).into_iter().enumerate().collect()
                    } else {
                        match rs.sum(a, b) {
                            Some(s) => vec![(rank + s, n[a * m + b])],
                            None => vec![],
                        }
                    }
                }
            }
        });
        Self { rs, n, table }
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    pub fn dim(&self) -> usize {
        self.table.dim()
    }

    pub fn rank(&self) -> usize {
        self.rs.rank()
    }

    pub fn structure_constants(&self) -> &StructureConstants<i64> {
        &self.table
    }

    /// Basis index of `e_β` for the root with index `i`.
    pub fn root_vector(&self, i: usize) -> usize {
        self.rs.rank() + i
    }

    /// `N_{a,b}` for root indices.
    pub fn n(&self, a: usize, b: usize) -> i64 {
        self.n[a * self.rs.len() + b]
    }

    pub fn bracket_basis(&self, x: usize, y: usize) -> &Sparse<i64> {
        self.table.get(x, y)
    }

    pub fn label(&self, idx: usize) -> String {
        match idx.checked_sub(self.rank()) {
            None => format!("h{}", idx + 1),
            Some(r) => format!("e{:?}", self.rs.root(r)),
        }
    }

    /// Jacobi check: exhaustive when `samples` is `None`, otherwise on seeded triples.
    pub fn jacobi_report(&self, samples: Option<(usize, u64)>) -> ChevalleyJacobiReport {
        let (violations, triples, exhaustive) = match samples {
            None => (self.table.jacobi_violations(), self.dim().pow(3), true),
            Some((s, seed)) => (self.table.jacobi_violations_sampled(s, seed), s, false),
        };
        ChevalleyJacobiReport {
            type_name: self.rs.name(),
            dim: self.dim(),
            triples_checked: triples,
            exhaustive,
            violations: violations.into_iter().map(|(a, b, c)| [a, b, c]).collect(),
            antisymmetry_violations: self.table.antisymmetry_violations().len(),
        }
    }
}

pub fn chevalley(rs: &RootSystem) -> ChevalleyAlgebra {
    ChevalleyAlgebra::new(rs)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChevalleyJacobiReport {
    pub type_name: String,
    pub dim: usize,
    pub triples_checked: usize,
    pub exhaustive: bool,
    pub violations: Vec<[usize; 3]>,
    pub antisymmetry_violations: usize,
}

impl ChevalleyJacobiReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty() && self.antisymmetry_violations == 0
    }
}

/// An element of the Cartan subalgebra, as coordinates in `h_1..h_r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CartanElem(pub Vec<i64>);

impl CartanElem {
    fn sparse(&self) -> Sparse<i64> {
        self.0.iter().copied().enumerate().filter(|(_, c)| *c != 0).collect()
    }

    /// Eigenvalue of `ad H` on `e_β`, read off the structure constants.
    pub fn eigenvalue(&self, alg: &ChevalleyAlgebra, root: usize) -> i64 {
        let e = alg.root_vector(root);
        let out = alg.table.bracket(&self.sparse(), &vec![(e, 1)]);
        match out.as_slice() {
            [] => 0,
            [(i, c)] if *i == e => *c,
            _ => panic!("e_β is not an eigenvector of ad H"),
        }
    }
}

/// `β^∨` as a combination of the simple coroots.
pub fn coroot_element(alg: &ChevalleyAlgebra, root: usize) -> CartanElem {
    CartanElem(alg.rs.coroot_coordinates(root))
}

/// The eigenspace decomposition of `ad H_ψ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiveStepGrading {
    /// basis indices of `g_{-2}, ..., g_2`
    pub pieces: [Vec<usize>; 5],
}

impl FiveStepGrading {
    pub fn dims(&self) -> [usize; 5] {
        [0, 1, 2, 3, 4].map(|i| self.pieces[i].len())
    }
}

pub fn five_step_grading(alg: &ChevalleyAlgebra) -> FiveStepGrading {
    let h = coroot_element(alg, alg.rs.highest_root());
    let mut pieces: [Vec<usize>; 5] = Default::default();
    pieces[2].extend(0..alg.rank());
    for r in 0..alg.rs.len() {
        let ev = h.eigenvalue(alg, r);
        assert!((-2..=2).contains(&ev), "ad H_ψ eigenvalue {ev} outside -2..2");
        pieces[(ev + 2) as usize].push(alg.root_vector(r));
    }
    FiveStepGrading { pieces }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::roots::CartanType;

    fn alg(k: CartanType, n: usize) -> ChevalleyAlgebra {
        chevalley(&RootSystem::new(k, n).unwrap())
    }

    #[test]
    fn a1_is_sl2() {
        let a = alg(CartanType::A, 1);
        assert_eq!(a.dim(), 3);
        // basis h, e, f
        assert_eq!(a.bracket_basis(1, 2), &vec![(0, 1)]);
        assert_eq!(a.bracket_basis(0, 1), &vec![(1, 2)]);
        assert_eq!(a.bracket_basis(0, 2), &vec![(2, -2)]);
    }

    #[test]
    fn jacobi_full_for_small_types() {
        for (k, n) in [
            (CartanType::A, 3),
            (CartanType::B, 3),
            (CartanType::C, 3),
            (CartanType::D, 4),
            (CartanType::G, 2),
            (CartanType::F, 4),
        ] {
            let r = alg(k, n).jacobi_report(None);
            assert!(r.passed(), "{k}{n}: {:?}", &r.violations[..r.violations.len().min(5)]);
        }
    }

    #[test]
    fn structure_constant_magnitudes() {
        let a = alg(CartanType::G, 2);
        let rs = a.root_system();
        for x in 0..rs.len() {
            for y in 0..rs.len() {
                if rs.sum(x, y).is_some() {
                    let r = {
                        let mut r = 0;
                        let mut cur = y;
                        while let Some(n) = rs.sum(cur, rs.negative(x)) {
                            r += 1;
                            cur = n;
                        }
                        r
                    };
                    assert_eq!(a.n(x, y).abs(), r + 1);
                }
            }
        }
    }

    #[test]
    fn coroots() {
        let a = alg(CartanType::A, 1);
        assert_eq!(coroot_element(&a, 0), CartanElem(vec![1]));
        for (k, n) in [(CartanType::G, 2), (CartanType::F, 4), (CartanType::E, 6)] {
            let a = alg(k, n);
            let psi = a.root_system().highest_root();
            assert_eq!(coroot_element(&a, psi).eigenvalue(&a, psi), 2);
        }
    }

    #[test]
    fn five_step_dims() {
        assert_eq!(five_step_grading(&alg(CartanType::G, 2)).dims(), [1, 4, 4, 4, 1]);
        assert_eq!(five_step_grading(&alg(CartanType::E, 8)).dims(), [1, 56, 134, 56, 1]);
        assert_eq!(five_step_grading(&alg(CartanType::F, 4)).dims()[4], 1);
    }
}
