//! The natural `(n+1)`-dimensional representation of `U_q(sl_{n+1})`.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::rootdata::RootSystem;
use crate::torusring::QScalar;

/// Square matrix over `Q(q)`.
#[derive(Clone, PartialEq, Eq)]
pub struct QMatrix {
    dim: usize,
    entries: Vec<QScalar>,
}

impl QMatrix {
    pub fn zero(dim: usize) -> Self {
        QMatrix {
            dim,
            entries: vec![QScalar::zero(); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self::diagonal((0..dim).map(|_| QScalar::one()).collect())
    }

    pub fn diagonal(d: Vec<QScalar>) -> Self {
        let mut m = Self::zero(d.len());
        for (i, x) in d.into_iter().enumerate() {
            m.set(i, i, x);
        }
        m
    }

    /// Matrix unit `e_{ij}` (0-based).
    pub fn unit(dim: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zero(dim);
        m.set(i, j, QScalar::one());
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &QScalar {
        &self.entries[i * self.dim + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: QScalar) {
        self.entries[i * self.dim + j] = x;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(QScalar::is_zero)
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.dim).all(|i| (0..self.dim).all(|j| i == j || self.get(i, j).is_zero()))
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        let n = self.dim;
        let mut out = Self::zero(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let s = out.get(i, j) + &(a * b);
                        out.set(i, j, s);
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a - b)
    }

    pub fn scale(&self, c: &QScalar) -> Self {
        QMatrix {
            dim: self.dim,
            entries: self.entries.iter().map(|x| c * x).collect(),
        }
    }

    fn zip(&self, other: &Self, f: impl Fn(&QScalar, &QScalar) -> QScalar) -> Self {
        assert_eq!(self.dim, other.dim);
        QMatrix {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| f(a, b))
                .collect(),
        }
    }
}

impl fmt::Debug for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "QMatrix[{}]", self.dim)?;
        for i in 0..self.dim {
            let row: Vec<String> = (0..self.dim).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Matrices of `E_i`, `F_i`, `K_i`, `K_i⁻¹`; index `i - 1` holds generator `i`.
#[derive(Clone, Debug)]
pub struct NaturalRep {
    pub rank: usize,
    pub e: Vec<QMatrix>,
    pub f: Vec<QMatrix>,
    pub k: Vec<QMatrix>,
    pub k_inv: Vec<QMatrix>,
}

pub fn natural_rep(n: usize) -> Result<NaturalRep> {
    if n == 0 {
        return Err(Error::ZeroRank);
    }
    let dim = n + 1;
    let k_diag = |i: usize, s: i64| {
        QMatrix::diagonal(
            (0..dim)
                .map(|j| match j {
                    _ if j == i => QScalar::q_pow(s),
                    _ if j == i + 1 => QScalar::q_pow(-s),
                    _ => QScalar::one(),
                })
                .collect(),
        )
    };
    Ok(NaturalRep {
        rank: n,
        e: (0..n).map(|i| QMatrix::unit(dim, i, i + 1)).collect(),
        f: (0..n).map(|i| QMatrix::unit(dim, i + 1, i)).collect(),
        k: (0..n).map(|i| k_diag(i, 1)).collect(),
        k_inv: (0..n).map(|i| k_diag(i, -1)).collect(),
    })
}

/// Outcome per relation family, in the order of the defining relations.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelationReport {
    pub rank: usize,
    pub k_inverse: bool,
    pub k_commute: bool,
    pub k_e: bool,
    pub k_f: bool,
    pub e_f: bool,
    pub serre_e: bool,
    pub serre_f: bool,
}

impl RelationReport {
    pub fn all(&self) -> bool {
        self.k_inverse
            && self.k_commute
            && self.k_e
            && self.k_f
            && self.e_f
            && self.serre_e
            && self.serre_f
    }

    pub fn families(&self) -> [(&'static str, bool); 7] {
        [
            ("K_i K_i^-1 = 1 = K_i^-1 K_i", self.k_inverse),
            ("K_i K_j = K_j K_i", self.k_commute),
            ("K_i E_j K_i^-1 = q^a_ij E_j", self.k_e),
            ("K_i F_j K_i^-1 = q^-a_ij F_j", self.k_f),
            (
                "E_i F_j - F_j E_i = d_ij (K_i - K_i^-1)/(q - q^-1)",
                self.e_f,
            ),
            ("Serre relations in E", self.serre_e),
            ("Serre relations in F", self.serre_f),
        ]
    }
}

/// `x_i² x_j − (q + q⁻¹) x_i x_j x_i + x_j x_i²` for `|i − j| = 1`, else `x_i x_j − x_j x_i`.
fn serre(xs: &[QMatrix], i: usize, j: usize) -> QMatrix {
    let (a, b) = (&xs[i], &xs[j]);
    if i.abs_diff(j) == 1 {
        let qq = &QScalar::q() + &QScalar::q_pow(-1);
        a.mul(a)
            .mul(b)
            .sub(&a.mul(b).mul(a).scale(&qq))
            .add(&b.mul(a).mul(a))
    } else {
        a.mul(b).sub(&b.mul(a))
    }
}

/// Verifies the defining relations on the natural representation as exact
/// matrix identities.
pub fn check_relations(n: usize) -> Result<RelationReport> {
    let rep = natural_rep(n)?;
    let roots = RootSystem::new(n)?;
    let dim = n + 1;
    let id = QMatrix::identity(dim);
    let pairs = || (0..n).flat_map(|i| (0..n).map(move |j| (i, j)));
    let d = (&QScalar::q() - &QScalar::q_pow(-1)).recip()?;

    let k_inverse = (0..n)
        .all(|i| rep.k[i].mul(&rep.k_inv[i]) == id && rep.k_inv[i].mul(&rep.k[i]) == id)
        && rep.k.iter().all(QMatrix::is_diagonal);
    let k_commute = pairs().all(|(i, j)| rep.k[i].mul(&rep.k[j]) == rep.k[j].mul(&rep.k[i]));
    let k_e = pairs().all(|(i, j)| {
        let a = roots.cartan_entry(i + 1, j + 1);
        rep.k[i].mul(&rep.e[j]).mul(&rep.k_inv[i]) == rep.e[j].scale(&QScalar::q_pow(a))
    });
    let k_f = pairs().all(|(i, j)| {
        let a = roots.cartan_entry(i + 1, j + 1);
        rep.k[i].mul(&rep.f[j]).mul(&rep.k_inv[i]) == rep.f[j].scale(&QScalar::q_pow(-a))
    });
    let e_f = pairs().all(|(i, j)| {
        let lhs = rep.e[i].mul(&rep.f[j]).sub(&rep.f[j].mul(&rep.e[i]));
        if i == j {
            lhs == rep.k[i].sub(&rep.k_inv[i]).scale(&d)
        } else {
            lhs.is_zero()
        }
    });
    let serre_e = pairs()
        .filter(|(i, j)| i != j)
        .all(|(i, j)| serre(&rep.e, i, j).is_zero());
    let serre_f = pairs()
        .filter(|(i, j)| i != j)
        .all(|(i, j)| serre(&rep.f, i, j).is_zero());
    Ok(RelationReport {
        rank: n,
        k_inverse,
        k_commute,
        k_e,
        k_f,
        e_f,
        serre_e,
        serre_f,
    })
}
