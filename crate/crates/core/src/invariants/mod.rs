//! Fundamental multiplicative invariants of `W = S_{n+1}` and their twisted
//! forms `σ_m`.
//!
//! With `y_i = x_i / x_{i+1}` standing for `K_i²`, the invariants
//! `s_1^m s_{n-m+1} / s_{n+1}` are degree-zero symmetric Laurent polynomials in
//! the `x_i`. Substituting `y_i = (qK_i)²` turns them into the elements `σ_m` of
//! `γ_ρ((U⁰_ev)^W)`.

mod independence;
mod xlaurent;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub use independence::{
    check_algebraic_independence, jacobian_at, random_point, test_independence,
    IndependenceVerdict, JacobianPoint,
};
pub use xlaurent::XLaurent;

use crate::error::{Error, Result};
use crate::rootdata::RootSystem;
use crate::torusring::{KMonomial, QScalar, TorusElement};

/// The `i`-th elementary symmetric polynomial in `x_1, …, x_{n+1}`.
pub fn elementary_symmetric(n: usize, i: usize) -> Result<XLaurent> {
    if n == 0 {
        return Err(Error::ZeroRank);
    }
    let nvars = n + 1;
    if i > nvars {
        return Err(Error::IndexOutOfRange {
            index: i,
            max: nvars,
        });
    }
    let mut out = XLaurent::zero(nvars);
    // walk all i-subsets in lexicographic order
    let mut idx: Vec<usize> = (0..i).collect();
    loop {
        let mut e = vec![0i64; nvars];
        for &j in &idx {
            e[j] = 1;
        }
        out.add_term(e, BigInt::one());
        let Some(pos) = (0..i).rev().find(|&p| idx[p] < nvars - i + p) else {
            break;
        };
        idx[pos] += 1;
        for p in pos + 1..i {
            idx[p] = idx[p - 1] + 1;
        }
    }
    Ok(out)
}

/// `s_1^m · s_{n-m+1} / s_{n+1}` for `1 ≤ m ≤ n+1`.
pub fn fundamental_invariant_x(n: usize, m: usize) -> Result<XLaurent> {
    if n == 0 {
        return Err(Error::ZeroRank);
    }
    if m == 0 || m > n + 1 {
        return Err(Error::IndexOutOfRange {
            index: m,
            max: n + 1,
        });
    }
    let s1 = elementary_symmetric(n, 1)?;
    let other = elementary_symmetric(n, n + 1 - m)?;
    Ok(s1.pow(m as u32).mul(&other).div_monomial(&vec![1; n + 1]))
}

/// Rewrites a degree-zero x-monomial `x^a` as `y^b` with `b_j = Σ_{i≤j} a_i`.
pub fn x_to_y_exponents(a: &[i64]) -> Result<Vec<i64>> {
    if a.iter().sum::<i64>() != 0 {
        return Err(Error::NotDegreeZero);
    }
    let mut acc = 0;
    Ok(a[..a.len() - 1]
        .iter()
        .map(|x| {
            acc += x;
            acc
        })
        .collect())
}

/// Substitutes `y_i = (qK_i)²` into a degree-zero x-Laurent polynomial.
pub fn x_to_sigma(x: &XLaurent) -> Result<TorusElement> {
    x_to_torus(x, true)
}

/// Substitutes `y_i = K_i²` (no twist).
pub fn x_to_torus_untwisted(x: &XLaurent) -> Result<TorusElement> {
    x_to_torus(x, false)
}

fn x_to_torus(x: &XLaurent, twisted: bool) -> Result<TorusElement> {
    let rank = x.nvars() - 1;
    let mut out = TorusElement::zero(rank);
    for (a, c) in x.terms() {
        let b = x_to_y_exponents(a)?;
        let qpow = if twisted {
            2 * b.iter().sum::<i64>()
        } else {
            0
        };
        let k: Vec<i64> = b.iter().map(|v| 2 * v).collect();
        out.add_term(KMonomial(k), QScalar::monomial(c.clone().into(), qpow));
    }
    Ok(out)
}

/// The indices `{1, …, n-1, n+1}` of the generators used for even `n`.
pub fn sigma_indices(n: usize) -> Vec<usize> {
    (1..n).chain(std::iter::once(n + 1)).collect()
}

/// An element of `γ_ρ((U⁰_ev)^W)`: either a `σ_m` or a hand-built body.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantElement {
    n: usize,
    m: Option<usize>,
    body: TorusElement,
}

impl InvariantElement {
    /// `σ_m` for rank `n`.
    pub fn sigma(n: usize, m: usize) -> Result<Self> {
        let body = x_to_sigma(&fundamental_invariant_x(n, m)?)?;
        Ok(InvariantElement {
            n,
            m: Some(m),
            body,
        })
    }

    /// Wraps an arbitrary torus element so the checks below can be run on it.
    pub fn custom(body: TorusElement) -> Self {
        InvariantElement {
            n: body.rank(),
            m: None,
            body,
        }
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn index(&self) -> Option<usize> {
        self.m
    }

    pub fn body(&self) -> &TorusElement {
        &self.body
    }

    pub fn into_body(self) -> TorusElement {
        self.body
    }
}

/// Same as [`InvariantElement::sigma`].
pub fn to_sigma(n: usize, m: usize) -> Result<InvariantElement> {
    InvariantElement::sigma(n, m)
}

#[derive(Serialize)]
struct InvariantRepr<'a> {
    n: usize,
    m: Option<usize>,
    body: &'a TorusElement,
}

#[derive(Deserialize)]
struct InvariantOwned {
    n: usize,
    m: Option<usize>,
    body: serde_json::Value,
}

impl Serialize for InvariantElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        InvariantRepr {
            n: self.n,
            m: self.m,
            body: &self.body,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for InvariantElement {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = InvariantOwned::deserialize(d)?;
        if raw.n == 0 {
            return Err(D::Error::custom(Error::ZeroRank));
        }
        let body = TorusElement::from_json(raw.n, &raw.body).map_err(D::Error::custom)?;
        Ok(InvariantElement {
            n: raw.n,
            m: raw.m,
            body,
        })
    }
}

/// `γ_ρ^{-1}(body)` is fixed by every simple reflection `s_1, …, s_n`.
pub fn check_w_invariance(inv: &InvariantElement) -> bool {
    let sys = RootSystem::new(inv.n).expect("positive rank");
    let Ok(untwisted) = inv.body.gamma_twist(&-&sys.rho()) else {
        return false;
    };
    sys.simple_reflections()
        .iter()
        .all(|s| untwisted.weyl_act(s).is_ok_and(|t| t == untwisted))
}

/// `body` is fixed by `qK_i ↦ (qK_i)^{-1}` for all `i` simultaneously.
///
/// Among the `σ_m` this holds only for `m = 1`: on the x-side the map sends
/// `s_1^m s_{n-m+1} / s_{n+1}` to `s_n^m s_m / s_{n+1}^m`.
pub fn check_self_reciprocity(inv: &InvariantElement) -> bool {
    inv.body.substitute_inverse_shifted() == inv.body
}

/// `body` is fixed by `qK_i ↦ (qK_{n+1-i})^{-1}`, the inversion composed with
/// the diagram flip. Every `σ_m` satisfies this.
pub fn check_diagram_reciprocity(inv: &InvariantElement) -> bool {
    let flipped = inv.body.substitute_inverse_shifted();
    let mut mirrored = TorusElement::zero(inv.n);
    for (k, c) in flipped.terms() {
        let mut e = k.exps().to_vec();
        e.reverse();
        mirrored.add_term(KMonomial(e), c.clone());
    }
    mirrored == inv.body
}

/// After `K_i ↦ K`, the result is fixed by `qK ↦ (qK)^{-1}`.
pub fn check_collapsed_reciprocity(inv: &InvariantElement) -> bool {
    inv.body.collapse_diagonal() == inv.body.substitute_inverse_shifted().collapse_diagonal()
}

/// Collapses `K_i ↦ K`, writes the result in `u = qK` and then as a polynomial
/// in `v = u + u^{-1}`. Returns the coefficients of `v^0, v^1, …`.
///
/// Fails unless the collapsed element is symmetric under `u ↦ u^{-1}`.
pub fn collapse_and_express(inv: &InvariantElement) -> Result<Vec<QScalar>> {
    let collapsed = inv.body.collapse_diagonal();
    // c·K^d = (c·q^{-d})·u^d
    let mut u_coeffs: std::collections::BTreeMap<i64, QScalar> = collapsed
        .terms()
        .map(|(m, c)| (m.exps()[0], c.shift(-m.exps()[0])))
        .collect();
    for (d, c) in &u_coeffs {
        if u_coeffs.get(&-d) != Some(c) {
            return Err(Error::NotSelfReciprocal);
        }
    }
    let top = u_coeffs.keys().next_back().copied().unwrap_or(0).max(0);
    let mut v_coeffs = vec![QScalar::zero(); top as usize + 1];
    // Peel off the leading u^d + u^{-d} using v^d = Σ_k C(d,k) u^{d-2k}.
    for d in (1..=top).rev() {
        let Some(c) = u_coeffs.get(&d).cloned() else {
            continue;
        };
        if c.is_zero() {
            continue;
        }
        let mut binom = BigInt::one();
        for k in 0..=d {
            let e = d - 2 * k;
            let delta = c.scale(&binom.clone().into());
            let slot = u_coeffs.entry(e).or_default();
            *slot = &*slot - &delta;
            binom = binom * (d - k) / (k + 1);
        }
        v_coeffs[d as usize] = c;
    }
    u_coeffs.retain(|_, c| !c.is_zero());
    debug_assert!(u_coeffs.keys().all(|&e| e == 0));
    v_coeffs[0] = u_coeffs.remove(&0).unwrap_or_default();
    Ok(v_coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qk(c: i64, e: &[i64]) -> TorusElement {
        TorusElement::monomial(QScalar::q_pow(c), e)
    }

    fn sum(ts: &[TorusElement]) -> TorusElement {
        ts.iter()
            .fold(TorusElement::zero(ts[0].rank()), |a, b| &a + b)
    }

    fn sigma1_n2() -> TorusElement {
        sum(&[
            qk(2, &[2, 0]),
            qk(4, &[2, 2]),
            qk(2, &[0, 2]),
            qk(-2, &[0, -2]),
            qk(-4, &[-2, -2]),
            qk(-2, &[-2, 0]),
            TorusElement::constant(2, QScalar::from_int(3)),
        ])
    }

    #[test]
    fn elementary_symmetric_examples() {
        let s = elementary_symmetric(2, 1).unwrap();
        let expected = XLaurent::var(3, 1)
            .add(&XLaurent::var(3, 2))
            .add(&XLaurent::var(3, 3));
        assert_eq!(s, expected);
        let s3 = elementary_symmetric(2, 3).unwrap();
        assert_eq!(s3, XLaurent::monomial(3, vec![1, 1, 1], BigInt::one()));
        assert_eq!(elementary_symmetric(4, 2).unwrap().num_terms(), 10);
        assert_eq!(elementary_symmetric(4, 0).unwrap(), XLaurent::one(5));
        assert!(elementary_symmetric(2, 4).is_err());
    }

    #[test]
    fn fundamental_invariant_examples() {
        let f = fundamental_invariant_x(2, 1).unwrap();
        assert_eq!(f.num_terms(), 7);
        assert_eq!(f.coeff(&[0, 0, 0]), BigInt::from(3));
        assert_eq!(f.coeff(&[1, -1, 0]), BigInt::one());
        let f3 = fundamental_invariant_x(2, 3).unwrap();
        assert_eq!(f3.coeff(&[2, -1, -1]), BigInt::one());
        assert_eq!(f3.coeff(&[0, 0, 0]), BigInt::from(6));
        for n in 1..=4 {
            for m in 1..=n + 1 {
                let f = fundamental_invariant_x(n, m).unwrap();
                assert!(f.is_symmetric() && f.is_degree_zero());
            }
        }
        assert!(fundamental_invariant_x(2, 0).is_err());
        assert!(fundamental_invariant_x(2, 4).is_err());
    }

    #[test]
    fn sigma_one_rank_two() {
        assert_eq!(InvariantElement::sigma(2, 1).unwrap().body, sigma1_n2());
    }

    #[test]
    fn sigma_three_rank_two() {
        let six_terms = &sigma1_n2() - &TorusElement::constant(2, QScalar::from_int(3));
        let expected = sum(&[
            qk(6, &[4, 2]),
            qk(0, &[-2, 2]),
            qk(-6, &[-2, -4]),
            six_terms.scalar_mul(&QScalar::from_int(3)),
            TorusElement::constant(2, QScalar::from_int(6)),
        ]);
        assert_eq!(InvariantElement::sigma(2, 3).unwrap().body, expected);
        assert_eq!(InvariantElement::sigma(2, 2).unwrap().body, expected);
    }

    #[test]
    fn twist_matches_gamma_rho() {
        for n in [2, 3, 4] {
            let rho = RootSystem::new(n).unwrap().rho();
            for m in 1..=n + 1 {
                let x = fundamental_invariant_x(n, m).unwrap();
                let plain = x_to_torus_untwisted(&x).unwrap();
                assert_eq!(plain.gamma_twist(&rho).unwrap(), x_to_sigma(&x).unwrap());
            }
        }
    }

    #[test]
    fn non_degree_zero_is_rejected() {
        let x = XLaurent::var(3, 1);
        assert_eq!(x_to_sigma(&x), Err(Error::NotDegreeZero));
    }

    #[test]
    fn invariance_checks() {
        assert!(check_w_invariance(&InvariantElement::sigma(2, 1).unwrap()));
        assert!(!check_w_invariance(&InvariantElement::custom(qk(
            2,
            &[2, 0]
        ))));
        assert!(check_w_invariance(&InvariantElement::sigma(4, 5).unwrap()));
        assert!(check_self_reciprocity(
            &InvariantElement::sigma(2, 1).unwrap()
        ));
        // The n = 2 display of σ_3 has q^6 K_1^4 K_2^2 but not q^-6 K_1^-4 K_2^-2.
        let s3 = InvariantElement::sigma(2, 3).unwrap();
        assert!(s3.body().coeff(&[-4, -2]).is_zero());
        assert!(!check_self_reciprocity(&s3));
        assert!(check_diagram_reciprocity(&s3));
        assert!(check_collapsed_reciprocity(&s3));
        let lopsided = sum(&[qk(2, &[2, 0]), qk(-2, &[-2, 0]), qk(0, &[0, 2])]);
        assert!(!check_self_reciprocity(&InvariantElement::custom(
            lopsided.clone()
        )));
        assert!(!check_diagram_reciprocity(&InvariantElement::custom(
            lopsided.clone()
        )));
        assert!(!check_collapsed_reciprocity(&InvariantElement::custom(
            lopsided
        )));
    }

    #[test]
    fn only_sigma_one_is_literally_self_reciprocal() {
        for n in [2, 3, 4] {
            for m in 1..=n + 1 {
                let inv = InvariantElement::sigma(n, m).unwrap();
                assert_eq!(check_self_reciprocity(&inv), m == 1, "n={n} m={m}");
                assert!(check_diagram_reciprocity(&inv));
                assert!(check_collapsed_reciprocity(&inv));
            }
        }
    }

    #[test]
    fn express_in_v() {
        let v = collapse_and_express(&InvariantElement::sigma(2, 1).unwrap()).unwrap();
        let ints: Vec<QScalar> = [1, 0, -2, 0, 1]
            .iter()
            .map(|&c| QScalar::from_int(c))
            .collect();
        assert_eq!(v, ints);
        let three = InvariantElement::custom(TorusElement::constant(2, QScalar::from_int(3)));
        assert_eq!(
            collapse_and_express(&three).unwrap(),
            vec![QScalar::from_int(3)]
        );
        // u² + u^{-2} with u = qK in rank 1
        let t = &qk(2, &[2]) + &qk(-2, &[-2]);
        let v = collapse_and_express(&InvariantElement::custom(t)).unwrap();
        assert_eq!(
            v,
            vec![QScalar::from_int(-2), QScalar::zero(), QScalar::one()]
        );
        assert!(collapse_and_express(&InvariantElement::sigma(2, 3).unwrap()).is_ok());
        let bad = InvariantElement::custom(qk(2, &[2]));
        assert_eq!(collapse_and_express(&bad), Err(Error::NotSelfReciprocal));
    }

    #[test]
    fn json_round_trip() {
        let inv = InvariantElement::sigma(2, 1).unwrap();
        let v = serde_json::to_value(&inv).unwrap();
        assert_eq!(v["n"], 2);
        assert_eq!(v["m"], 1);
        assert_eq!(v["body"].as_array().unwrap().len(), 7);
        let back: InvariantElement = serde_json::from_value(v).unwrap();
        assert_eq!(back, inv);
    }
}
