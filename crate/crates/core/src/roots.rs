//! Root systems of the simple Lie algebras, in Bourbaki numbering.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum CartanType {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

impl FromStr for CartanType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "A" | "a" => Self::A,
            "B" | "b" => Self::B,
            "C" | "c" => Self::C,
            "D" | "d" => Self::D,
            "E" | "e" => Self::E,
            "F" | "f" => Self::F,
            "G" | "g" => Self::G,
            _ => return Err(Error::UnsupportedType(format!("unknown Cartan type {s:?}"))),
        })
    }
}

/// Splits a label such as `"E8"` into type and rank.
pub fn parse_type_label(label: &str) -> Result<(CartanType, usize)> {
    let label = label.trim();
    let (head, tail) = label.split_at(label.chars().next().map_or(0, char::len_utf8));
    let kind: CartanType = head.parse()?;
    let rank = tail
        .parse()
        .map_err(|_| Error::UnsupportedType(format!("missing or malformed rank in {label:?}")))?;
    Ok((kind, rank))
}

/// Number of roots from the classification tables.
pub fn expected_root_count(kind: CartanType, rank: usize) -> usize {
    let n = rank;
    match kind {
        CartanType::A => n * (n + 1),
        CartanType::B | CartanType::C => 2 * n * n,
        CartanType::D => 2 * n * (n - 1),
        CartanType::E => match n {
            6 => 72,
            7 => 126,
            _ => 240,
        },
        CartanType::F => 48,
        CartanType::G => 12,
    }
}

/// Roots are stored as integer coordinates in the simple-root basis: the positive
/// roots ordered by height and then lexicographically, followed by their negatives in
/// the same order.
#[derive(Clone, Debug)]
pub struct RootSystem {
    kind: CartanType,
    rank: usize,
    /// `cartan[i][j] = ⟨α_i, α_j^∨⟩`
    cartan: Vec<Vec<i64>>,
    /// `(α_i, α_i) / 2`; short simple roots have 1
    half_norms: Vec<i64>,
    roots: Vec<Vec<i64>>,
    index: HashMap<Vec<i64>, usize>,
    highest: usize,
}

/// Edges of the Dynkin diagram and the half squared lengths of the simple roots.
type Dynkin = (Vec<(usize, usize)>, Vec<i64>);

fn dynkin(kind: CartanType, n: usize) -> Result<Dynkin> {
    let bad = || Error::UnsupportedType(format!("{kind}{n} is not a simple type of rank at most 8"));
    if n == 0 || n > 8 {
        return Err(bad());
    }
    let chain = |len: usize| (0..len.saturating_sub(1)).map(|i| (i, i + 1)).collect::<Vec<_>>();
    Ok(match kind {
        CartanType::A => (chain(n), vec![1; n]),
        CartanType::B if n >= 2 => {
            let mut d = vec![2; n];
            d[n - 1] = 1;
            (chain(n), d)
        }
        CartanType::C if n >= 2 => {
            let mut d = vec![1; n];
            d[n - 1] = 2;
            (chain(n), d)
        }
        CartanType::D if n >= 4 => {
            let mut e = chain(n - 1);
            e.push((n - 3, n - 1));
            (e, vec![1; n])
        }
        CartanType::E if (6..=8).contains(&n) => {
            let mut e = vec![(0, 2), (1, 3)];
            e.extend((2..n - 1).map(|i| (i, i + 1)));
            (e, vec![1; n])
        }
        CartanType::F if n == 4 => (chain(4), vec![2, 2, 1, 1]),
        CartanType::G if n == 2 => (chain(2), vec![1, 3]),
        _ => return Err(bad()),
    })
}

impl RootSystem {
    pub fn new(kind: CartanType, rank: usize) -> Result<Self> {
        let (edges, half_norms) = dynkin(kind, rank)?;
        // Gram matrix: (α_i, α_i) = 2 d_i, adjacent (α_i, α_j) = -max(d_i, d_j)
        let mut gram = vec![vec![0i64; rank]; rank];
        for i in 0..rank {
            gram[i][i] = 2 * half_norms[i];
        }
        for &(i, j) in &edges {
            let g = -half_norms[i].max(half_norms[j]);
            gram[i][j] = g;
            gram[j][i] = g;
        }
        let cartan: Vec<Vec<i64>> = (0..rank)
            .map(|i| (0..rank).map(|j| gram[i][j] / half_norms[j]).collect())
            .collect();

        let simple = |i: usize| {
            let mut v = vec![0i64; rank];
            v[i] = 1;
            v
        };
        let pair = |beta: &[i64], j: usize| -> i64 { beta.iter().zip(&cartan).map(|(b, row)| b * row[j]).sum() };

        let mut positive: Vec<Vec<i64>> = (0..rank).map(simple).collect();
        let mut known: std::collections::HashSet<Vec<i64>> = positive.iter().cloned().collect();
        let mut layer = positive.clone();
        while !layer.is_empty() {
            let mut next = Vec::new();
            for beta in &layer {
                for i in 0..rank {
                    // α_i-string through β: β - rα_i, ..., β + qα_i with r - q = ⟨β, α_i^∨⟩
                    let mut r = 0;
                    let mut down = beta.clone();
                    loop {
                        down[i] -= 1;
                        if known.contains(&down) {
                            r += 1;
                        } else {
                            break;
                        }
                    }
                    if r - pair(beta, i) > 0 {
                        let mut up = beta.clone();
                        up[i] += 1;
                        if known.insert(up.clone()) {
                            next.push(up);
                        }
                    }
                }
            }
            positive.extend(next.iter().cloned());
            layer = next;
        }
        positive.sort_by(|a, b| {
            let (ha, hb): (i64, i64) = (a.iter().sum(), b.iter().sum());
            ha.cmp(&hb).then_with(|| a.cmp(b))
        });
        let mut roots = positive.clone();
        roots.extend(positive.iter().map(|r| r.iter().map(|x| -x).collect::<Vec<_>>()));
        let index = roots.iter().cloned().enumerate().map(|(i, r)| (r, i)).collect();
        let highest = positive.len() - 1;
        let rs = Self { kind, rank, cartan, half_norms, roots, index, highest };
        debug_assert_eq!(rs.roots.len(), expected_root_count(kind, rank));
        Ok(rs)
    }

    pub fn kind(&self) -> CartanType {
        self.kind
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn name(&self) -> String {
        format!("{}{}", self.kind, self.rank)
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn half_norms(&self) -> &[i64] {
        &self.half_norms
    }

    pub fn roots(&self) -> &[Vec<i64>] {
        &self.roots
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn positive_count(&self) -> usize {
        self.roots.len() / 2
    }

    pub fn is_positive(&self, i: usize) -> bool {
        i < self.positive_count()
    }

    pub fn root(&self, i: usize) -> &[i64] {
        &self.roots[i]
    }

    pub fn index_of(&self, beta: &[i64]) -> Option<usize> {
        self.index.get(beta).copied()
    }

    pub fn negative(&self, i: usize) -> usize {
        let n = self.positive_count();
        if i < n {
            i + n
        } else {
            i - n
        }
    }

    /// Index of `root(a) + root(b)` if it is a root.
    pub fn sum(&self, a: usize, b: usize) -> Option<usize> {
        let s: Vec<i64> = self.roots[a].iter().zip(&self.roots[b]).map(|(x, y)| x + y).collect();
        self.index_of(&s)
    }

    pub fn simple(&self, i: usize) -> usize {
        let mut v = vec![0; self.rank];
        v[i] = 1;
        self.index_of(&v).expect("simple roots are roots")
    }

    pub fn height(&self, i: usize) -> i64 {
        self.roots[i].iter().sum()
    }

    pub fn highest_root(&self) -> usize {
        self.highest
    }

    pub fn inner(&self, beta: &[i64], gamma: &[i64]) -> i64 {
        let mut acc = 0;
        for (i, b) in beta.iter().enumerate() {
            if *b == 0 {
                continue;
            }
            for (j, g) in gamma.iter().enumerate() {
                acc += b * g * self.cartan[i][j] * self.half_norms[j];
            }
        }
        acc
    }

    /// `(β, β) / 2` for the root with index `i`.
    pub fn half_norm(&self, i: usize) -> i64 {
        self.inner(&self.roots[i], &self.roots[i]) / 2
    }

    /// `⟨β, α_j^∨⟩`.
    pub fn simple_pairing(&self, beta: &[i64], j: usize) -> i64 {
        beta.iter().zip(&self.cartan).map(|(b, row)| b * row[j]).sum()
    }

    /// `⟨β, γ^∨⟩ = 2(β, γ)/(γ, γ)`.
    pub fn coroot_pairing(&self, beta: &[i64], gamma: &[i64]) -> i64 {
        let num = 2 * self.inner(beta, gamma);
        let den = self.inner(gamma, gamma);
        debug_assert_eq!(num % den, 0);
        num / den
    }

    /// Coordinates of `γ^∨` in the simple coroots: `k_i d_i / d_γ`.
    pub fn coroot_coordinates(&self, i: usize) -> Vec<i64> {
        let d = self.half_norm(i);
        self.roots[i]
            .iter()
            .zip(&self.half_norms)
            .map(|(k, di)| {
                debug_assert_eq!(k * di % d, 0);
                k * di / d
            })
            .collect()
    }
}

pub fn build_root_system(kind: CartanType, rank: usize) -> Result<RootSystem> {
    RootSystem::new(kind, rank)
}
