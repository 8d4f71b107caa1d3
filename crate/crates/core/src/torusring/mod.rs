//! The torus algebra `U⁰ = Q(q)[K_1^{±1}, …, K_n^{±1}]`.
//!
//! A monomial `K_1^{c_1} ⋯ K_n^{c_n}` is `K_μ` for `μ = Σ c_i α_i`, so exponent
//! vectors are root-lattice coordinates and the Weyl group acts on them
//! through [`WeylElement::act_alpha`].

mod laurent;
mod qscalar;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub use laurent::LaurentPoly;
pub use qscalar::{QScalar, Specialization};

use crate::error::{Error, Result};
use crate::rational::{self, Rational};
use crate::rootdata::{self, DominantWeight, LatticeVector, RootSystem, WeylElement};

/// Exponent vector of `K_1^{c_1} ⋯ K_n^{c_n}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct KMonomial(pub Vec<i64>);

impl KMonomial {
    pub fn one(rank: usize) -> Self {
        KMonomial(vec![0; rank])
    }

    pub fn exps(&self) -> &[i64] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    /// The root-lattice vector `μ` with `K_μ` equal to this monomial.
    pub fn weight(&self) -> LatticeVector {
        LatticeVector::from_alpha_coords(&self.0)
    }
}

/// A finite sum `Σ c_μ K_μ` with nonzero coefficients in `Q(q)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TorusElement {
    rank: usize,
    terms: BTreeMap<KMonomial, QScalar>,
}

impl TorusElement {
    pub fn zero(rank: usize) -> Self {
        assert!(rank > 0, "rank must be positive");
        TorusElement {
            rank,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(rank: usize) -> Self {
        Self::constant(rank, QScalar::one())
    }

    pub fn constant(rank: usize, c: QScalar) -> Self {
        let mut t = Self::zero(rank);
        t.add_term(KMonomial::one(rank), c);
        t
    }

    /// `c · K_1^{exps[0]} ⋯ K_n^{exps[n-1]}`.
    pub fn monomial(c: QScalar, exps: &[i64]) -> Self {
        let mut t = Self::zero(exps.len());
        t.add_term(KMonomial(exps.to_vec()), c);
        t
    }

    /// The generator `K_i^{power}` (1-based `i`).
    pub fn k(rank: usize, i: usize, power: i64) -> Self {
        assert!(i >= 1 && i <= rank, "generator index out of range");
        let mut e = vec![0; rank];
        e[i - 1] = power;
        Self::monomial(QScalar::one(), &e)
    }

    pub fn from_terms<I: IntoIterator<Item = (Vec<i64>, QScalar)>>(
        rank: usize,
        terms: I,
    ) -> Result<Self> {
        let mut t = Self::zero(rank);
        for (e, c) in terms {
            if e.len() != rank {
                return Err(Error::RankMismatch {
                    left: rank,
                    right: e.len(),
                });
            }
            t.add_term(KMonomial(e), c);
        }
        Ok(t)
    }

    pub fn add_term(&mut self, m: KMonomial, c: QScalar) {
        debug_assert_eq!(m.0.len(), self.rank);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get() + &c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in lexicographic order of exponent vectors.
    pub fn terms(&self) -> impl Iterator<Item = (&KMonomial, &QScalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: &[i64]) -> QScalar {
        self.terms
            .get(&KMonomial(exps.to_vec()))
            .cloned()
            .unwrap_or_default()
    }

    fn check_rank(&self, other: &Self) -> Result<()> {
        if self.rank != other.rank {
            return Err(Error::RankMismatch {
                left: self.rank,
                right: other.rank,
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_rank(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_rank(other)?;
        let mut out = Self::zero(self.rank);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let e = m1.0.iter().zip(&m2.0).map(|(a, b)| a + b).collect();
                out.add_term(KMonomial(e), c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn scalar_mul(&self, c: &QScalar) -> Self {
        let mut out = Self::zero(self.rank);
        if c.is_zero() {
            return out;
        }
        for (m, x) in &self.terms {
            out.add_term(m.clone(), x * c);
        }
        out
    }

    /// Applies `f` to every monomial, keeping coefficients; `f` must be injective
    /// for the result to be the image of an automorphism.
    fn map_monomials<F>(&self, rank: usize, mut f: F) -> Self
    where
        F: FnMut(&KMonomial, &QScalar) -> (Vec<i64>, QScalar),
    {
        let mut out = Self::zero(rank);
        for (m, c) in &self.terms {
            let (e, c) = f(m, c);
            out.add_term(KMonomial(e), c);
        }
        out
    }

    /// `w · K_μ = K_{w(μ)}`, extended linearly.
    pub fn weyl_act(&self, w: &WeylElement) -> Result<Self> {
        if w.rank() != self.rank {
            return Err(Error::RankMismatch {
                left: w.rank(),
                right: self.rank,
            });
        }
        Ok(self.map_monomials(self.rank, |m, c| (w.act_alpha(&m.0), c.clone())))
    }

    /// The automorphism `γ_ν : K_μ ↦ q^{(ν, μ)} K_μ`.
    pub fn gamma_twist(&self, nu: &LatticeVector) -> Result<Self> {
        if nu.rank() != self.rank {
            return Err(Error::RankMismatch {
                left: nu.rank(),
                right: self.rank,
            });
        }
        // (ν, α_j) for each simple root
        let sys = RootSystem::new(self.rank)?;
        let pair: Vec<Rational> = sys
            .simple_roots()
            .iter()
            .map(|a| rootdata::inner_product(nu, a))
            .collect::<Result<_>>()?;
        let mut out = Self::zero(self.rank);
        for (m, c) in &self.terms {
            let p: Rational =
                m.0.iter()
                    .zip(&pair)
                    .map(|(&k, a)| a * rational::int(k))
                    .fold(Rational::zero(), |x, y| x + y);
            if !rational::is_integer(&p) {
                return Err(Error::NonIntegralPairing(p.to_string()));
            }
            let e = i64::try_from(p.to_integer())
                .map_err(|_| Error::NonIntegralPairing(p.to_string()))?;
            out.add_term(m.clone(), c.shift(e));
        }
        Ok(out)
    }

    /// The homomorphism to `Q(q)` sending `K_μ ↦ q^{(λ, μ)}`, i.e. `K_i ↦ q^{m_i}`.
    pub fn evaluate_at_weight(&self, lambda: &DominantWeight) -> Result<QScalar> {
        if lambda.rank() != self.rank {
            return Err(Error::RankMismatch {
                left: self.rank,
                right: lambda.rank(),
            });
        }
        let m = lambda.coords();
        let mut poly = LaurentPoly::zero();
        let mut rest = QScalar::zero();
        for (mono, c) in &self.terms {
            let e: i64 = mono.0.iter().zip(m).map(|(a, b)| a * b).sum();
            match c.as_laurent() {
                Some(p) => poly = &poly + &p.shift(e),
                None => rest = &rest + &c.shift(e),
            }
        }
        Ok(&QScalar::from_laurent(poly) + &rest)
    }

    /// The involution `K_i ↦ q^{-2} K_i^{-1}`, i.e. `qK_i ↦ (qK_i)^{-1}`.
    pub fn substitute_inverse_shifted(&self) -> Self {
        self.map_monomials(self.rank, |m, c| {
            let total: i64 = m.0.iter().sum();
            (m.0.iter().map(|x| -x).collect(), c.shift(-2 * total))
        })
    }

    /// `K_i ↦ K` for every `i`; the result has rank 1.
    pub fn collapse_diagonal(&self) -> Self {
        self.map_monomials(1, |m, c| (vec![m.0.iter().sum()], c.clone()))
    }

    /// Every exponent vector lies in `ZΦ ∩ 2Λ`.
    pub fn is_even(&self) -> bool {
        let basis =
            rootdata::intersect_2lambda(&RootSystem::new(self.rank).expect("positive rank"));
        self.terms.keys().all(|m| basis.contains_alpha(&m.0))
    }

    /// Formal `∂/∂K_i` (1-based `i`).
    pub fn partial_derivative(&self, i: usize) -> Result<Self> {
        if i == 0 || i > self.rank {
            return Err(Error::IndexOutOfRange {
                index: i,
                max: self.rank,
            });
        }
        let mut out = Self::zero(self.rank);
        for (m, c) in &self.terms {
            let k = m.0[i - 1];
            if k == 0 {
                continue;
            }
            let mut e = m.0.clone();
            e[i - 1] -= 1;
            out.add_term(KMonomial(e), c.scale(&rational::int(k)));
        }
        Ok(out)
    }

    /// Value at `q = q_val`, `K_i = k_vals[i-1]` (all nonzero).
    pub fn eval_point(&self, q_val: &Rational, k_vals: &[Rational]) -> Result<Rational> {
        if k_vals.len() != self.rank {
            return Err(Error::RankMismatch {
                left: self.rank,
                right: k_vals.len(),
            });
        }
        if k_vals.iter().any(Zero::is_zero) || q_val.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut v = c.eval_at(q_val)?;
            for (&e, k) in m.0.iter().zip(k_vals) {
                if e != 0 {
                    v *= rational::pow(k, e);
                }
            }
            acc += v;
        }
        Ok(acc)
    }

    /// Applies `f` to every coefficient.
    pub fn map_coeffs<F: Fn(&QScalar) -> QScalar>(&self, f: F) -> Self {
        self.map_monomials(self.rank, |m, c| (m.0.clone(), f(c)))
    }
}

/// Panics on rank mismatch; see [`TorusElement::checked_add`].
impl Add for &TorusElement {
    type Output = TorusElement;
    fn add(self, rhs: &TorusElement) -> TorusElement {
        self.checked_add(rhs).expect("rank mismatch")
    }
}

impl Neg for &TorusElement {
    type Output = TorusElement;
    fn neg(self) -> TorusElement {
        self.map_coeffs(|c| -c)
    }
}

impl Sub for &TorusElement {
    type Output = TorusElement;
    fn sub(self, rhs: &TorusElement) -> TorusElement {
        self + &(-rhs)
    }
}

/// Panics on rank mismatch; see [`TorusElement::checked_mul`].
impl Mul for &TorusElement {
    type Output = TorusElement;
    fn mul(self, rhs: &TorusElement) -> TorusElement {
        self.checked_mul(rhs).expect("rank mismatch")
    }
}

impl fmt::Display for TorusElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(m, c)| {
                let mono: Vec<String> =
                    m.0.iter()
                        .enumerate()
                        .filter(|(_, &e)| e != 0)
                        .map(|(i, &e)| {
                            if e == 1 {
                                format!("K{}", i + 1)
                            } else {
                                format!("K{}^{}", i + 1, e)
                            }
                        })
                        .collect();
                let coeff = c.to_string();
                let simple = c.as_laurent().is_some_and(|p| p.num_terms() == 1);
                match (mono.is_empty(), c.is_one()) {
                    (true, _) => coeff,
                    (false, true) => mono.join("*"),
                    (false, false) if simple => format!("{}*{}", coeff, mono.join("*")),
                    (false, false) => format!("({})*{}", coeff, mono.join("*")),
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for TorusElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TorusElement[{}]({})", self.rank, self)
    }
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    exps: Vec<i64>,
    coeff: QScalar,
}

impl Serialize for TorusElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<TermRepr> = self
            .terms
            .iter()
            .map(|(m, c)| TermRepr {
                exps: m.0.clone(),
                coeff: c.clone(),
            })
            .collect();
        v.serialize(s)
    }
}

impl TorusElement {
    /// Reads the JSON term list for a known rank (needed for the empty list).
    pub fn from_json(rank: usize, value: &serde_json::Value) -> Result<Self> {
        let terms: Vec<TermRepr> =
            serde_json::from_value(value.clone()).map_err(|e| Error::Malformed(e.to_string()))?;
        Self::from_terms(rank, terms.into_iter().map(|t| (t.exps, t.coeff)))
    }
}

/// The rank is read off the first term; an empty list is rejected because its
/// rank is unknown (use [`TorusElement::from_json`]).
impl<'de> Deserialize<'de> for TorusElement {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let terms = Vec::<TermRepr>::deserialize(d)?;
        let rank = terms
            .first()
            .map(|t| t.exps.len())
            .filter(|&r| r > 0)
            .ok_or_else(|| D::Error::custom("cannot infer rank of an empty term list"))?;
        TorusElement::from_terms(rank, terms.into_iter().map(|t| (t.exps, t.coeff)))
            .map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k(rank: usize, i: usize) -> TorusElement {
        TorusElement::k(rank, i, 1)
    }

    fn qk(c: i64, exps: &[i64]) -> TorusElement {
        TorusElement::monomial(QScalar::q_pow(c), exps)
    }

    #[test]
    fn ring_examples() {
        let k1 = k(2, 1);
        let k1inv = TorusElement::k(2, 1, -1);
        assert_eq!(&k1 * &k1inv, TorusElement::one(2));
        let k2 = k(2, 2);
        let lhs = &(&k1 + &k2) * &(&k1 - &k2);
        let rhs = &TorusElement::k(2, 1, 2) - &TorusElement::k(2, 2, 2);
        assert_eq!(lhs, rhs);
        let qk1 = qk(1, &[1, 0]);
        assert_eq!(&qk1 * &qk1, qk(2, &[2, 0]));
        assert!(k(2, 1).checked_mul(&k(3, 1)).is_err());
        assert!((&k1 - &k1).is_zero());
    }

    #[test]
    fn weyl_examples() {
        let sys = RootSystem::new(2).unwrap();
        let s1 = sys.simple_reflection(1).unwrap();
        assert_eq!(k(2, 1).weyl_act(&s1).unwrap(), TorusElement::k(2, 1, -1));
        assert_eq!(
            k(2, 2).weyl_act(&s1).unwrap(),
            TorusElement::monomial(QScalar::one(), &[1, 1])
        );
        let bad = RootSystem::new(3).unwrap().simple_reflection(1).unwrap();
        assert!(k(2, 1).weyl_act(&bad).is_err());
    }

    #[test]
    fn gamma_examples() {
        let sys = RootSystem::new(2).unwrap();
        let rho = sys.rho();
        let t = TorusElement::k(2, 1, 2);
        assert_eq!(t.gamma_twist(&rho).unwrap(), qk(2, &[2, 0]));
        let t2 = TorusElement::monomial(QScalar::one(), &[2, 2]);
        assert_eq!(t2.gamma_twist(&rho).unwrap(), qk(4, &[2, 2]));
        let back = t2.gamma_twist(&rho).unwrap().gamma_twist(&-&rho).unwrap();
        assert_eq!(back, t2);
        // (λ_1, α_1) = 1 but (λ_1, α_1)/... half of ρ is not integral on α_1
        let half_rho = rho.scale(&rational::frac(1, 2));
        assert!(matches!(
            k(2, 1).gamma_twist(&half_rho),
            Err(Error::NonIntegralPairing(_))
        ));
    }

    #[test]
    fn evaluation_examples() {
        let lam = DominantWeight::new(vec![3, 5]).unwrap();
        assert_eq!(
            qk(2, &[2, 0]).evaluate_at_weight(&lam).unwrap(),
            QScalar::q_pow(2 + 6)
        );
        assert_eq!(
            qk(4, &[2, 2]).evaluate_at_weight(&lam).unwrap(),
            QScalar::q_pow(4 + 6 + 10)
        );
        assert_eq!(
            TorusElement::one(2).evaluate_at_weight(&lam).unwrap(),
            QScalar::one()
        );
        assert!(TorusElement::one(3).evaluate_at_weight(&lam).is_err());
    }

    #[test]
    fn inverse_shift_examples() {
        let t = qk(2, &[2, 0]);
        assert_eq!(t.substitute_inverse_shifted(), qk(-2, &[-2, 0]));
        let mixed = &(&t + &qk(-3, &[1, -4])) + &TorusElement::constant(2, QScalar::from_int(7));
        assert_eq!(
            mixed
                .substitute_inverse_shifted()
                .substitute_inverse_shifted(),
            mixed
        );
    }

    #[test]
    fn collapse_examples() {
        let t = TorusElement::monomial(QScalar::one(), &[1, -1]);
        assert_eq!(t.collapse_diagonal(), TorusElement::one(1));
        let t = TorusElement::monomial(QScalar::one(), &[2, 2]);
        assert_eq!(t.collapse_diagonal(), TorusElement::k(1, 1, 4));
    }

    #[test]
    fn evenness() {
        assert!(TorusElement::monomial(QScalar::one(), &[2, -2]).is_even());
        assert!(!TorusElement::monomial(QScalar::one(), &[1, 0]).is_even());
        assert!(TorusElement::monomial(QScalar::one(), &[1, 0, 1]).is_even());
    }

    #[test]
    fn derivative_and_point_evaluation() {
        let t = &qk(1, &[2, -1]) + &TorusElement::k(2, 2, 3);
        let d1 = t.partial_derivative(1).unwrap();
        assert_eq!(
            d1,
            TorusElement::monomial(QScalar::monomial(rational::int(2), 1), &[1, -1])
        );
        let v = t
            .eval_point(&rational::int(2), &[rational::int(3), rational::int(5)])
            .unwrap();
        assert_eq!(v, rational::frac(2 * 9, 5) + rational::int(125));
        assert!(t.partial_derivative(3).is_err());
    }

    #[test]
    fn json_round_trip() {
        let t = &qk(2, &[2, 0]) + &TorusElement::constant(2, QScalar::from_int(3));
        let v = serde_json::to_value(&t).unwrap();
        assert_eq!(
            v,
            serde_json::json!([
                {"exps": [0, 0], "coeff": {"num": [[0, "3/1"]], "den": [[0, "1/1"]]}},
                {"exps": [2, 0], "coeff": {"num": [[2, "1/1"]], "den": [[0, "1/1"]]}}
            ])
        );
        let back: TorusElement = serde_json::from_value(v.clone()).unwrap();
        assert_eq!(back, t);
        assert_eq!(
            TorusElement::from_json(2, &serde_json::json!([])).unwrap(),
            TorusElement::zero(2)
        );
        assert!(serde_json::from_value::<TorusElement>(serde_json::json!([])).is_err());
    }
}
