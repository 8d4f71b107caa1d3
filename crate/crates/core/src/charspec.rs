//! Central characters of the `σ_m` and separation of parameters.
//!
//! The central element whose Harish-Chandra image is `σ_m` acts on the simple
//! module `L(λ)` by the scalar obtained from `K_i ↦ q^{m_i}`. If two parameters
//! `q`, `p` give different scalars at some dominant weight, the algebras
//! `U_q` and `U_p` cannot be isomorphic.

mod forcing;

use std::collections::BTreeSet;

use serde::Serialize;

pub use crate::rootdata::DominantWeight;
pub use forcing::{
    factor_biquadratic, factor_forcing_polynomial, forcing_polynomial, forcing_solutions,
    is_forced, linear_factor_roots, PPoly,
};

use crate::error::{Error, Result};
use crate::invariants::{fundamental_invariant_x, sigma_indices, InvariantElement};
use crate::rational::{self, Rational};
use crate::torusring::{LaurentPoly, QScalar, Specialization};

/// Scalar by which the central element attached to `inv` acts on `L(λ)`.
pub fn central_character(inv: &InvariantElement, lambda: &DominantWeight) -> Result<QScalar> {
    inv.body().evaluate_at_weight(lambda)
}

/// Independent route through the x-variables: evaluate
/// `s_1^m s_{n-m+1} / s_{n+1}` at `x_j = q^{2 c_j}` where `c` is the integer
/// representative `c_j = Σ_{i≥j} m_i + (n + 1 - j)` of `λ + ρ`.
pub fn x_side_character(n: usize, m: usize, lambda: &DominantWeight) -> Result<LaurentPoly> {
    if lambda.rank() != n {
        return Err(Error::RankMismatch {
            left: n,
            right: lambda.rank(),
        });
    }
    let x = fundamental_invariant_x(n, m)?;
    let w = lambda.coords();
    let powers: Vec<i64> = (1..=n + 1)
        .map(|j| {
            let tail: i64 = w[j - 1..].iter().sum();
            2 * (tail + (n + 1 - j) as i64)
        })
        .collect();
    Ok(x.eval_q_powers(&powers))
}

/// Central characters on the box `0 ≤ m_i ≤ bound`, rows in lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CharacterTable {
    pub rank: usize,
    pub indices: Vec<usize>,
    pub weights: Vec<DominantWeight>,
    /// `values[row][col]` belongs to `weights[row]` and `indices[col]`.
    pub values: Vec<Vec<QScalar>>,
}

fn check_indices(n: usize, indices: &[usize]) -> Result<()> {
    if let Some(&bad) = indices.iter().find(|&&m| m == 0 || m > n + 1) {
        return Err(Error::IndexOutOfRange {
            index: bad,
            max: n + 1,
        });
    }
    Ok(())
}

pub fn character_table(n: usize, indices: &[usize], bound: i64) -> Result<CharacterTable> {
    if n == 0 {
        return Err(Error::ZeroRank);
    }
    check_indices(n, indices)?;
    if bound < 0 {
        return Err(Error::Malformed(format!("negative weight bound {bound}")));
    }
    let invs = indices
        .iter()
        .map(|&m| InvariantElement::sigma(n, m))
        .collect::<Result<Vec<_>>>()?;
    let weights = DominantWeight::enumerate_box(n, bound);
    let values = weights
        .iter()
        .map(|w| {
            invs.iter()
                .map(|inv| central_character(inv, w))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CharacterTable {
        rank: n,
        indices: indices.to_vec(),
        weights,
        values,
    })
}

/// A weight and invariant index at which the specialized characters differ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeparationWitness {
    pub weight: DominantWeight,
    pub m_index: usize,
    pub q_value: Rational,
    pub p_value: Rational,
    pub lhs: Rational,
    pub rhs: Rational,
}

impl Serialize for SeparationWitness {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("SeparationWitness", 6)?;
        st.serialize_field("weight", &self.weight)?;
        st.serialize_field("m_index", &self.m_index)?;
        st.serialize_field("q_value", &rational::format_rational(&self.q_value))?;
        st.serialize_field("p_value", &rational::format_rational(&self.p_value))?;
        st.serialize_field("lhs", &rational::format_rational(&self.lhs))?;
        st.serialize_field("rhs", &rational::format_rational(&self.rhs))?;
        st.end()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Distinction {
    Witness(SeparationWitness),
    /// Every weight with coordinates `≤ max_coord` and every index agreed.
    Indistinguishable {
        max_coord: i64,
    },
}

impl Distinction {
    pub fn witness(&self) -> Option<&SeparationWitness> {
        match self {
            Distinction::Witness(w) => Some(w),
            Distinction::Indistinguishable { .. } => None,
        }
    }
}

/// Weights with `max_i m_i == shell`, in lexicographic order.
fn shell(n: usize, shell: i64) -> impl Iterator<Item = DominantWeight> {
    DominantWeight::enumerate_box(n, shell)
        .into_iter()
        .filter(move |w| w.coords().iter().copied().max() == Some(shell))
}

/// Searches shells `0..=max_coord` (then weights lexicographically, then the
/// indices in the given order) for the first weight where the central
/// characters specialized at `q` and at `p` differ.
pub fn distinguish(
    n: usize,
    q: &Specialization,
    p: &Specialization,
    max_coord: i64,
    indices: Option<&[usize]>,
) -> Result<Distinction> {
    if n == 0 {
        return Err(Error::ZeroRank);
    }
    if n % 2 == 1 {
        return Err(Error::OddRank(n));
    }
    let default = sigma_indices(n);
    let indices = indices.unwrap_or(&default);
    check_indices(n, indices)?;
    if max_coord < 0 {
        return Err(Error::Malformed(format!(
            "negative weight bound {max_coord}"
        )));
    }
    let invs = indices
        .iter()
        .map(|&m| InvariantElement::sigma(n, m))
        .collect::<Result<Vec<_>>>()?;
    for b in 0..=max_coord {
        for w in shell(n, b) {
            for (inv, &m) in invs.iter().zip(indices) {
                let chi = central_character(inv, &w)?;
                let lhs = chi.specialize(q)?;
                let rhs = chi.specialize(p)?;
                if lhs != rhs {
                    return Ok(Distinction::Witness(SeparationWitness {
                        weight: w,
                        m_index: m,
                        q_value: q.q().clone(),
                        p_value: p.q().clone(),
                        lhs,
                        rhs,
                    }));
                }
            }
        }
    }
    Ok(Distinction::Indistinguishable { max_coord })
}

/// `{q, -q, 1/q, -1/q}` as a set, for display and membership.
pub fn forced_set(q: &Specialization) -> BTreeSet<Rational> {
    let v = q.q().clone();
    [v.clone(), -v.clone(), v.recip(), -v.recip()]
        .into_iter()
        .collect()
}
