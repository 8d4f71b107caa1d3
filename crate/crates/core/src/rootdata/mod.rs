//! Root data of type `A_n`.
//!
//! Vectors live in the span of `ε_1, …, ε_{n+1}` and are stored by their
//! sum-zero representative, so the weight lattice `Λ` and the root lattice
//! `ZΦ` share one coordinate system and the Weyl group `S_{n+1}` acts by
//! permuting coordinates.

mod lattice;

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub use lattice::{
    closed_form_even_basis, contains, intersect_2lambda, lattice_equal, LatticeBasis,
};

use crate::error::{Error, Result};
use crate::rational::{self, Rational};

/// Type `A_n` root system with its Cartan matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RootSystem {
    rank: usize,
    cartan: Vec<Vec<i64>>,
}

impl RootSystem {
    pub fn new(rank: usize) -> Result<Self> {
        if rank == 0 {
            return Err(Error::ZeroRank);
        }
        let cartan = (0..rank)
            .map(|i| {
                (0..rank)
                    .map(|j| match i.abs_diff(j) {
                        0 => 2,
                        1 => -1,
                        _ => 0,
                    })
                    .collect()
            })
            .collect();
        Ok(RootSystem { rank, cartan })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    /// `a_ij` with 1-based indices.
    pub fn cartan_entry(&self, i: usize, j: usize) -> i64 {
        self.cartan[i - 1][j - 1]
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.rank {
            return Err(Error::IndexOutOfRange {
                index: i,
                max: self.rank,
            });
        }
        Ok(())
    }

    /// `α_i = ε_i - ε_{i+1}`.
    pub fn simple_root(&self, i: usize) -> Result<LatticeVector> {
        self.check_index(i)?;
        let mut c = vec![0; self.rank];
        c[i - 1] = 1;
        Ok(LatticeVector::from_alpha_coords(&c))
    }

    pub fn simple_roots(&self) -> Vec<LatticeVector> {
        (1..=self.rank)
            .map(|i| self.simple_root(i).unwrap())
            .collect()
    }

    /// `λ_i`, obtained by solving `(λ_i, α_j) = δ_ij` against the Cartan matrix.
    pub fn fundamental_weight(&self, i: usize) -> Result<LatticeVector> {
        self.check_index(i)?;
        // λ_i = Σ_j (A^{-1})_{ij} α_j; A is symmetric, so solve A x = e_i.
        let n = self.rank;
        let mut m: Vec<Vec<Rational>> = self
            .cartan
            .iter()
            .enumerate()
            .map(|(r, row)| {
                let mut v: Vec<Rational> = row.iter().map(|&a| rational::int(a)).collect();
                v.push(if r == i - 1 {
                    Rational::one()
                } else {
                    Rational::zero()
                });
                v
            })
            .collect();
        for col in 0..n {
            let piv = (col..n)
                .find(|&r| !m[r][col].is_zero())
                .expect("Cartan matrix is invertible");
            m.swap(col, piv);
            let inv = m[col][col].recip();
            for x in m[col].iter_mut() {
                *x *= &inv;
            }
            for r in 0..n {
                if r != col && !m[r][col].is_zero() {
                    let f = m[r][col].clone();
                    for k in col..=n {
                        let t = &f * &m[col][k];
                        m[r][k] -= t;
                    }
                }
            }
        }
        let alpha: Vec<Rational> = m.into_iter().map(|row| row[n].clone()).collect();
        Ok(LatticeVector::from_alpha_rational(&alpha))
    }

    pub fn fundamental_weights(&self) -> Vec<LatticeVector> {
        (1..=self.rank)
            .map(|i| self.fundamental_weight(i).unwrap())
            .collect()
    }

    /// `ρ = ½ Σ_i (n + 2 - 2i) ε_i`.
    pub fn rho(&self) -> LatticeVector {
        let n = self.rank as i64;
        LatticeVector::from_eps(
            (1..=n + 1)
                .map(|i| rational::frac(n + 2 - 2 * i, 2))
                .collect(),
        )
    }

    /// Positive roots `ε_i - ε_j`, `i < j`.
    pub fn positive_roots(&self) -> Vec<LatticeVector> {
        let dim = self.rank + 1;
        let mut out = Vec::new();
        for i in 0..dim {
            for j in i + 1..dim {
                let mut c = vec![Rational::zero(); dim];
                c[i] = Rational::one();
                c[j] = -Rational::one();
                out.push(LatticeVector::from_eps(c));
            }
        }
        out
    }

    pub fn simple_reflection(&self, i: usize) -> Result<WeylElement> {
        self.check_index(i)?;
        Ok(WeylElement::simple_reflection(self.rank, i))
    }

    pub fn simple_reflections(&self) -> Vec<WeylElement> {
        (1..=self.rank)
            .map(|i| WeylElement::simple_reflection(self.rank, i))
            .collect()
    }

    /// Every element of `W = S_{n+1}`, in lexicographic order of permutations.
    pub fn weyl_group(&self) -> Vec<WeylElement> {
        WeylElement::all(self.rank)
    }

    /// Integer λ-basis coordinates `A·k` of `Σ k_i α_i`.
    pub fn weight_coords(&self, alpha: &[i64]) -> Vec<i64> {
        self.cartan
            .iter()
            .map(|row| row.iter().zip(alpha).map(|(a, k)| a * k).sum())
            .collect()
    }
}

/// A vector `Σ c_i ε_i` with `Σ c_i = 0`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticeVector {
    coords: Vec<Rational>,
}

impl LatticeVector {
    /// Projects arbitrary ε-coordinates onto the sum-zero hyperplane.
    pub fn from_eps(mut coords: Vec<Rational>) -> Self {
        assert!(coords.len() >= 2, "need at least two ε-coordinates");
        let mean =
            coords.iter().fold(Rational::zero(), |a, b| a + b) / rational::int(coords.len() as i64);
        if !mean.is_zero() {
            for c in coords.iter_mut() {
                *c -= &mean;
            }
        }
        LatticeVector { coords }
    }

    pub fn from_eps_ints(coords: &[i64]) -> Self {
        Self::from_eps(coords.iter().map(|&c| rational::int(c)).collect())
    }

    /// `Σ c_i α_i` from integer root coordinates.
    pub fn from_alpha_coords(c: &[i64]) -> Self {
        LatticeVector {
            coords: alpha_to_eps(c).into_iter().map(rational::int).collect(),
        }
    }

    pub fn from_alpha_rational(c: &[Rational]) -> Self {
        let n = c.len();
        let coords = (0..=n)
            .map(|j| {
                let cur = if j < n {
                    c[j].clone()
                } else {
                    Rational::zero()
                };
                let prev = if j > 0 {
                    c[j - 1].clone()
                } else {
                    Rational::zero()
                };
                cur - prev
            })
            .collect();
        LatticeVector { coords }
    }

    pub fn zero(rank: usize) -> Self {
        LatticeVector {
            coords: vec![Rational::zero(); rank + 1],
        }
    }

    pub fn rank(&self) -> usize {
        self.coords.len() - 1
    }

    pub fn eps_coords(&self) -> &[Rational] {
        &self.coords
    }

    /// Coordinates in the basis of simple roots (partial sums of ε-coordinates).
    pub fn alpha_coords(&self) -> Vec<Rational> {
        let mut acc = Rational::zero();
        self.coords[..self.rank()]
            .iter()
            .map(|c| {
                acc += c;
                acc.clone()
            })
            .collect()
    }

    /// Root coordinates, when the vector lies in `ZΦ`.
    pub fn integer_alpha_coords(&self) -> Result<Vec<i64>> {
        self.alpha_coords()
            .into_iter()
            .map(|c| {
                if !rational::is_integer(&c) {
                    return Err(Error::NotInRootLattice);
                }
                i64::try_from(c.to_integer()).map_err(|_| Error::NotInRootLattice)
            })
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        LatticeVector {
            coords: self.coords.iter().map(|x| x * c).collect(),
        }
    }

    fn same_rank(&self, other: &Self) -> Result<()> {
        if self.rank() != other.rank() {
            return Err(Error::RankMismatch {
                left: self.rank(),
                right: other.rank(),
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.same_rank(other)?;
        Ok(LatticeVector {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }
}

/// Panics on rank mismatch; use [`LatticeVector::checked_add`] otherwise.
impl Add for &LatticeVector {
    type Output = LatticeVector;
    fn add(self, rhs: &LatticeVector) -> LatticeVector {
        self.checked_add(rhs).expect("rank mismatch")
    }
}

impl Neg for &LatticeVector {
    type Output = LatticeVector;
    fn neg(self) -> LatticeVector {
        LatticeVector {
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }
}

impl Sub for &LatticeVector {
    type Output = LatticeVector;
    fn sub(self, rhs: &LatticeVector) -> LatticeVector {
        self + &(-rhs)
    }
}

impl fmt::Debug for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "ε({})", parts.join(", "))
    }
}

impl Serialize for LatticeVector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<String> = self.coords.iter().map(rational::format_rational).collect();
        v.serialize(s)
    }
}

impl<'de> Deserialize<'de> for LatticeVector {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let v = Vec::<String>::deserialize(d)?;
        if v.len() < 2 {
            return Err(D::Error::custom("need at least two ε-coordinates"));
        }
        let coords = v
            .iter()
            .map(|s| rational::parse_rational(s))
            .collect::<Result<Vec<_>>>()
            .map_err(D::Error::custom)?;
        Ok(LatticeVector::from_eps(coords))
    }
}

/// The standard inner product of two vectors of the same rank.
pub fn inner_product(u: &LatticeVector, v: &LatticeVector) -> Result<Rational> {
    u.same_rank(v)?;
    Ok(u.coords
        .iter()
        .zip(&v.coords)
        .map(|(a, b)| a * b)
        .fold(Rational::zero(), |a, b| a + b))
}

/// Integer ε-coordinates of `Σ c_i α_i`.
pub(crate) fn alpha_to_eps(c: &[i64]) -> Vec<i64> {
    let n = c.len();
    (0..=n)
        .map(|j| {
            let cur = if j < n { c[j] } else { 0 };
            let prev = if j > 0 { c[j - 1] } else { 0 };
            cur - prev
        })
        .collect()
}

/// Inverse of [`alpha_to_eps`] for sum-zero integer vectors.
pub(crate) fn eps_to_alpha(e: &[i64]) -> Vec<i64> {
    let mut acc = 0;
    e[..e.len() - 1]
        .iter()
        .map(|x| {
            acc += x;
            acc
        })
        .collect()
}

/// An element of `W = S_{n+1}`, acting by `w(ε_i) = ε_{w(i)}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeylElement {
    // perm[i] = w(i), 0-based
    perm: Vec<usize>,
}

impl WeylElement {
    pub fn identity(rank: usize) -> Self {
        WeylElement {
            perm: (0..=rank).collect(),
        }
    }

    /// `s_i`, the transposition `(i, i+1)`.
    pub fn simple_reflection(rank: usize, i: usize) -> Self {
        assert!(i >= 1 && i <= rank, "reflection index out of range");
        let mut w = Self::identity(rank);
        w.perm.swap(i - 1, i);
        w
    }

    /// From a 0-based image list; `None` unless it is a permutation.
    pub fn from_perm(perm: Vec<usize>) -> Option<Self> {
        let mut seen = vec![false; perm.len()];
        for &p in &perm {
            if p >= perm.len() || std::mem::replace(&mut seen[p], true) {
                return None;
            }
        }
        (perm.len() >= 2).then_some(WeylElement { perm })
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn rank(&self) -> usize {
        self.perm.len() - 1
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(self.perm.len(), other.perm.len(), "rank mismatch");
        WeylElement {
            perm: other.perm.iter().map(|&j| self.perm[j]).collect(),
        }
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.perm.len()];
        for (i, &p) in self.perm.iter().enumerate() {
            inv[p] = i;
        }
        WeylElement { perm: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &p)| i == p)
    }

    pub fn act(&self, v: &LatticeVector) -> Result<LatticeVector> {
        if self.rank() != v.rank() {
            return Err(Error::RankMismatch {
                left: self.rank(),
                right: v.rank(),
            });
        }
        let mut out = vec![Rational::zero(); v.coords.len()];
        for (i, c) in v.coords.iter().enumerate() {
            out[self.perm[i]] = c.clone();
        }
        Ok(LatticeVector { coords: out })
    }

    /// The action on integer root coordinates.
    pub fn act_alpha(&self, c: &[i64]) -> Vec<i64> {
        debug_assert_eq!(c.len(), self.rank());
        let e = alpha_to_eps(c);
        let mut out = vec![0; e.len()];
        for (i, x) in e.into_iter().enumerate() {
            out[self.perm[i]] = x;
        }
        eps_to_alpha(&out)
    }

    /// All `(n+1)!` elements in lexicographic order.
    pub fn all(rank: usize) -> Vec<Self> {
        let mut perm: Vec<usize> = (0..=rank).collect();
        let mut out = vec![WeylElement { perm: perm.clone() }];
        // next-permutation iteration
        loop {
            let Some(i) = (0..perm.len() - 1).rev().find(|&i| perm[i] < perm[i + 1]) else {
                break;
            };
            let j = (i + 1..perm.len())
                .rev()
                .find(|&j| perm[j] > perm[i])
                .unwrap();
            perm.swap(i, j);
            perm[i + 1..].reverse();
            out.push(WeylElement { perm: perm.clone() });
        }
        out
    }
}

impl fmt::Debug for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let one_based: Vec<usize> = self.perm.iter().map(|p| p + 1).collect();
        write!(f, "W{one_based:?}")
    }
}

/// A dominant weight `λ = Σ m_i λ_i` with all `m_i ≥ 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct DominantWeight {
    m: Vec<i64>,
}

impl DominantWeight {
    pub fn new(m: Vec<i64>) -> Result<Self> {
        if m.is_empty() {
            return Err(Error::ZeroRank);
        }
        if let Some(bad) = m.iter().find(|&&x| x < 0) {
            return Err(Error::Malformed(format!(
                "dominant weight coordinate {bad} is negative"
            )));
        }
        Ok(DominantWeight { m })
    }

    pub fn zero(rank: usize) -> Self {
        DominantWeight { m: vec![0; rank] }
    }

    pub fn coords(&self) -> &[i64] {
        &self.m
    }

    pub fn rank(&self) -> usize {
        self.m.len()
    }

    /// `Σ m_i λ_i` as a lattice vector.
    pub fn to_vector(&self) -> LatticeVector {
        let sys = RootSystem::new(self.rank()).expect("nonzero rank");
        sys.fundamental_weights()
            .iter()
            .zip(&self.m)
            .fold(LatticeVector::zero(self.rank()), |acc, (w, &m)| {
                &acc + &w.scale(&rational::int(m))
            })
    }

    /// All weights with `0 ≤ m_i ≤ bound`, in lexicographic order.
    pub fn enumerate_box(rank: usize, bound: i64) -> Vec<Self> {
        let mut out = Vec::new();
        let mut cur = vec![0i64; rank];
        loop {
            out.push(DominantWeight { m: cur.clone() });
            let Some(pos) = (0..rank).rev().find(|&i| cur[i] < bound) else {
                break;
            };
            cur[pos] += 1;
            for x in cur[pos + 1..].iter_mut() {
                *x = 0;
            }
        }
        out
    }
}

impl<'de> Deserialize<'de> for DominantWeight {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        DominantWeight::new(Vec::<i64>::deserialize(d)?).map_err(D::Error::custom)
    }
}
