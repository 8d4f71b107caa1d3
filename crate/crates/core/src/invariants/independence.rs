//! Jacobian criterion for algebraic independence at random rational points.
//!
//! A Jacobian of full row rank at one point proves the elements algebraically
//! independent. A rank drop at a point proves nothing, so the test resamples
//! and, after the attempt budget, reports [`IndependenceVerdict::Inconclusive`].

use num_traits::{One, Zero};
use rand::Rng;
use serde::Serialize;

use super::{sigma_indices, InvariantElement};
use crate::error::{Error, Result};
use crate::rational::{self, Rational};
use crate::torusring::TorusElement;

/// A rational point `(q, K_1, …, K_n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JacobianPoint {
    pub q: Rational,
    pub k: Vec<Rational>,
}

impl Serialize for JacobianPoint {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("JacobianPoint", 2)?;
        st.serialize_field("q", &rational::format_rational(&self.q))?;
        let k: Vec<String> = self.k.iter().map(rational::format_rational).collect();
        st.serialize_field("k", &k)?;
        st.end()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IndependenceVerdict {
    /// Full-rank Jacobian at `point`; `determinant` is reported for square systems.
    Independent {
        point: JacobianPoint,
        determinant: Option<Rational>,
        attempts: usize,
    },
    /// Rank deficient at every sampled point.
    Inconclusive { attempts: usize },
}

impl IndependenceVerdict {
    pub fn is_independent(&self) -> bool {
        matches!(self, IndependenceVerdict::Independent { .. })
    }

    pub fn attempts(&self) -> usize {
        match self {
            IndependenceVerdict::Independent { attempts, .. }
            | IndependenceVerdict::Inconclusive { attempts } => *attempts,
        }
    }
}

fn random_rational<R: Rng + ?Sized>(rng: &mut R) -> Rational {
    loop {
        let n: i64 = rng.gen_range(-12..=12);
        let d: i64 = rng.gen_range(1..=7);
        if n != 0 {
            return rational::frac(n, d);
        }
    }
}

/// Random point with `q ∉ {0, ±1}` and every `K_i ≠ 0`.
pub fn random_point<R: Rng + ?Sized>(rank: usize, rng: &mut R) -> JacobianPoint {
    let q = loop {
        let q = random_rational(rng);
        if q != Rational::one() && q != -Rational::one() {
            break q;
        }
    };
    let k = (0..rank).map(|_| random_rational(rng)).collect();
    JacobianPoint { q, k }
}

/// `J[r][i] = ∂ elements[r] / ∂K_{i+1}` evaluated at `point`.
pub fn jacobian_at(elements: &[TorusElement], point: &JacobianPoint) -> Result<Vec<Vec<Rational>>> {
    let rank = point.k.len();
    elements
        .iter()
        .map(|e| {
            if e.rank() != rank {
                return Err(Error::RankMismatch {
                    left: rank,
                    right: e.rank(),
                });
            }
            (1..=rank)
                .map(|i| e.partial_derivative(i)?.eval_point(&point.q, &point.k))
                .collect()
        })
        .collect()
}

/// Row rank and, for square input, the determinant (fraction-free enough for
/// the sizes used here).
fn rank_and_det(mut m: Vec<Vec<Rational>>) -> (usize, Option<Rational>) {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let square = rows == cols;
    let mut det = Rational::one();
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !m[r][c].is_zero()) else {
            det = Rational::zero();
            continue;
        };
        if p != rank {
            m.swap(p, rank);
            det = -det;
        }
        let piv = m[rank][c].clone();
        det *= &piv;
        for r in rank + 1..rows {
            if m[r][c].is_zero() {
                continue;
            }
            let f = &m[r][c] / &piv;
            for k in c..cols {
                let t = &f * &m[rank][k];
                m[r][k] -= t;
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    (
        rank,
        square.then_some(if rank == rows { det } else { Rational::zero() }),
    )
}

/// Jacobian rank test on arbitrary elements of one rank.
pub fn test_independence<R: Rng + ?Sized>(
    elements: &[TorusElement],
    rng: &mut R,
    max_attempts: usize,
) -> Result<IndependenceVerdict> {
    let Some(first) = elements.first() else {
        return Err(Error::Malformed("no elements to test".into()));
    };
    let rank = first.rank();
    if elements.len() > rank {
        // more elements than variables can never have full row rank
        return Ok(IndependenceVerdict::Inconclusive { attempts: 0 });
    }
    for attempt in 1..=max_attempts {
        let point = random_point(rank, rng);
        let jac = match jacobian_at(elements, &point) {
            Ok(j) => j,
            Err(Error::VanishingDenominator(_)) | Err(Error::DivisionByZero) => continue,
            Err(e) => return Err(e),
        };
        let (r, det) = rank_and_det(jac);
        if r == elements.len() {
            return Ok(IndependenceVerdict::Independent {
                point,
                determinant: det,
                attempts: attempt,
            });
        }
    }
    Ok(IndependenceVerdict::Inconclusive {
        attempts: max_attempts,
    })
}

/// Independence of `{σ_1, …, σ_{n-1}, σ_{n+1}}` for even `n`.
pub fn check_algebraic_independence<R: Rng + ?Sized>(
    n: usize,
    rng: &mut R,
    max_attempts: usize,
) -> Result<IndependenceVerdict> {
    if n == 0 {
        return Err(Error::ZeroRank);
    }
    if n % 2 == 1 {
        return Err(Error::OddRank(n));
    }
    let elements = sigma_indices(n)
        .into_iter()
        .map(|m| InvariantElement::sigma(n, m).map(InvariantElement::into_body))
        .collect::<Result<Vec<_>>>()?;
    test_independence(&elements, rng, max_attempts)
}
