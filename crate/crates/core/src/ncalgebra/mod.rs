//! Rank-1 rewriting for `U_q(sl_2)` and the natural representation of `U_q(sl_{n+1})`.
//!
//! Words are rewritten to the normal order `F^a K^b E^c` with
//!
//! ```text
//! EF    -> FE + (K - K⁻¹)/(q - q⁻¹)
//! EK    -> q⁻² KE        EK⁻¹ -> q² K⁻¹E
//! KF    -> q⁻² FK        K⁻¹F -> q² FK⁻¹
//! KK⁻¹  -> 1             K⁻¹K -> 1
//! ```

mod parse;
mod rep;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Serialize, Serializer};

pub use parse::parse_element;
pub use rep::{check_relations, natural_rep, NaturalRep, QMatrix, RelationReport};

use crate::error::{Error, Result};
use crate::rootdata::RootSystem;
use crate::torusring::{QScalar, TorusElement};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Gen {
    F,
    K,
    KInv,
    E,
}

impl Gen {
    /// `+1` for `E`, `-1` for `F`, in units of the simple root.
    pub fn degree(self) -> i64 {
        match self {
            Gen::E => 1,
            Gen::F => -1,
            Gen::K | Gen::KInv => 0,
        }
    }

    fn symbol(self) -> &'static str {
        match self {
            Gen::E => "E",
            Gen::F => "F",
            Gen::K => "K",
            Gen::KInv => "K^-1",
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(pub Vec<Gen>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn gens(&self) -> &[Gen] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().map(|g| g.degree()).sum()
    }

    pub fn count(&self, g: Gen) -> usize {
        self.0.iter().filter(|&&h| h == g).count()
    }

    /// `F^a K^b E^c`.
    pub fn normal(a: usize, b: i64, c: usize) -> Self {
        let k = if b >= 0 { Gen::K } else { Gen::KInv };
        let mut w = vec![Gen::F; a];
        w.extend(std::iter::repeat_n(k, b.unsigned_abs() as usize));
        w.extend(std::iter::repeat_n(Gen::E, c));
        Word(w)
    }

    /// `(a, b, c)` if the word is `F^a K^b E^c`.
    pub fn as_normal(&self) -> Option<(usize, i64, usize)> {
        if self.redexes().next().is_some() {
            return None;
        }
        let a = self.count(Gen::F);
        let c = self.count(Gen::E);
        let b = self.count(Gen::K) as i64 - self.count(Gen::KInv) as i64;
        Some((a, b, c))
    }

    pub fn is_normal(&self) -> bool {
        self.redexes().next().is_none()
    }

    fn redexes(&self) -> impl DoubleEndedIterator<Item = usize> + '_ {
        (0..self.0.len().saturating_sub(1)).filter(|&i| rule(self.0[i], self.0[i + 1]).is_some())
    }

    /// Inverted pairs `(E,F)`, `(E,K^±)`, `(K^±,F)` plus the length; every rule
    /// lowers it on every produced word.
    pub fn measure(&self) -> u64 {
        let w = &self.0;
        let mut inv = 0u64;
        for i in 0..w.len() {
            for j in i + 1..w.len() {
                let bad = matches!(
                    (w[i], w[j]),
                    (Gen::E, Gen::F)
                        | (Gen::E, Gen::K)
                        | (Gen::E, Gen::KInv)
                        | (Gen::K, Gen::F)
                        | (Gen::KInv, Gen::F)
                );
                inv += u64::from(bad);
            }
        }
        inv + w.len() as u64
    }

    /// Pairs `i < j` with `E` at `i` and `F` at `j`.
    pub fn ef_inversions(&self) -> u32 {
        let mut es = 0;
        let mut inv = 0;
        for g in &self.0 {
            match g {
                Gen::E => es += 1,
                Gen::F => inv += es,
                _ => {}
            }
        }
        inv
    }

    /// Upper bound on rewrite steps from this word. Only `EF` branches (into
    /// three words), and it removes an `(E, F)` inversion that no rule creates,
    /// so a path branches at most [`Word::ef_inversions`] times and has length
    /// at most [`Word::measure`].
    pub fn step_bound(&self) -> u128 {
        u128::from(self.measure()) * 3u128.pow(self.ef_inversions())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let mut parts = Vec::new();
        let mut i = 0;
        while i < self.0.len() {
            let g = self.0[i];
            let run = self.0[i..].iter().take_while(|&&h| h == g).count();
            parts.push(match (g, run) {
                (_, 1) => g.symbol().to_string(),
                (Gen::KInv, r) => format!("K^-{r}"),
                (g, r) => format!("{}^{r}", g.symbol()),
            });
            i += run;
        }
        write!(f, "{}", parts.join("*"))
    }
}

fn q_minus_q_inv() -> QScalar {
    &QScalar::q() - &QScalar::q_pow(-1)
}

/// Replacement for the adjacent pair `(x, y)`: a list of `(coefficient, inserted word)`.
fn rule(x: Gen, y: Gen) -> Option<Vec<(QScalar, Vec<Gen>)>> {
    use Gen::*;
    Some(match (x, y) {
        (E, F) => {
            let c = q_minus_q_inv().recip().expect("q - q^-1 is nonzero");
            vec![
                (QScalar::one(), vec![F, E]),
                (c.clone(), vec![K]),
                (-c, vec![KInv]),
            ]
        }
        (E, K) => vec![(QScalar::q_pow(-2), vec![K, E])],
        (E, KInv) => vec![(QScalar::q_pow(2), vec![KInv, E])],
        (K, F) => vec![(QScalar::q_pow(-2), vec![F, K])],
        (KInv, F) => vec![(QScalar::q_pow(2), vec![F, KInv])],
        (K, KInv) | (KInv, K) => vec![(QScalar::one(), vec![])],
        _ => return None,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    Leftmost,
    Rightmost,
}

/// Finite linear combination of words with coefficients in `Q(q)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct NCElement {
    terms: BTreeMap<Word, QScalar>,
}

impl NCElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::scalar(QScalar::one())
    }

    pub fn scalar(c: QScalar) -> Self {
        Self::term(c, Word::empty())
    }

    pub fn term(c: QScalar, w: Word) -> Self {
        let mut e = Self::zero();
        e.add_term(w, c);
        e
    }

    pub fn gen(g: Gen) -> Self {
        Self::term(QScalar::one(), Word(vec![g]))
    }

    pub fn word(gens: &[Gen]) -> Self {
        Self::term(QScalar::one(), Word(gens.to_vec()))
    }

    /// `c · F^a K^b E^c`.
    pub fn normal_term(coeff: QScalar, a: usize, b: i64, c: usize) -> Self {
        Self::term(coeff, Word::normal(a, b, c))
    }

    pub fn add_term(&mut self, w: Word, c: QScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &QScalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &Word) -> QScalar {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    /// The scalar `c` if the element is `c · 1`.
    pub fn as_scalar(&self) -> Option<QScalar> {
        match self.terms.len() {
            0 => Some(QScalar::zero()),
            1 => self.terms.get(&Word::empty()).cloned(),
            _ => None,
        }
    }

    /// Set of degrees of the words that occur.
    pub fn degrees(&self) -> std::collections::BTreeSet<i64> {
        self.terms.keys().map(Word::degree).collect()
    }

    pub fn scale(&self, c: &QScalar) -> Self {
        let mut out = Self::zero();
        for (w, d) in &self.terms {
            out.add_term(w.clone(), c * d);
        }
        out
    }

    /// Concatenation product, not normalized.
    pub fn concat(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (w1, c1) in &self.terms {
            for (w2, c2) in &other.terms {
                let mut w = w1.0.clone();
                w.extend_from_slice(&w2.0);
                out.add_term(Word(w), c1 * c2);
            }
        }
        out
    }

    pub fn is_normal(&self) -> bool {
        self.terms.keys().all(Word::is_normal)
    }

    /// Rewrites to normal order; returns the result and the number of single
    /// rule applications.
    pub fn normalize_with(&self, strategy: Strategy) -> (Self, u64) {
        let mut done = Self::zero();
        let mut todo = self.terms.clone();
        let mut steps = 0u64;
        while let Some((w, c)) = todo.pop_first() {
            let pos = match strategy {
                Strategy::Leftmost => w.redexes().next(),
                Strategy::Rightmost => w.redexes().next_back(),
            };
            let Some(i) = pos else {
                done.add_term(w, c);
                continue;
            };
            steps += 1;
            let replacement = rule(w.0[i], w.0[i + 1]).expect("redex");
            for (k, middle) in replacement {
                let mut g = w.0[..i].to_vec();
                g.extend(middle);
                g.extend_from_slice(&w.0[i + 2..]);
                let coeff = &c * &k;
                let slot = todo.entry(Word(g)).or_default();
                *slot = &*slot + &coeff;
            }
            todo.retain(|_, v| !v.is_zero());
        }
        (done, steps)
    }

    pub fn normalize(&self) -> Self {
        self.normalize_with(Strategy::Leftmost).0
    }

    pub fn multiply(&self, other: &Self) -> Self {
        self.concat(other).normalize()
    }

    pub fn commutator(&self, other: &Self) -> Self {
        (self.concat(other) - other.concat(self)).normalize()
    }

    /// Commutes with `E`, `F`, `K` and `K⁻¹`.
    pub fn is_central(&self) -> bool {
        [Gen::E, Gen::F, Gen::K, Gen::KInv]
            .into_iter()
            .all(|g| self.commutator(&Self::gen(g)).is_zero())
    }

    /// `λ K^b` after normalization, with `λ ≠ 0`.
    pub fn is_unit(&self) -> bool {
        let n = self.normalize();
        let mut it = n.terms.keys();
        match (it.next(), it.next()) {
            (Some(w), None) => matches!(w.as_normal(), Some((0, _, 0))),
            _ => false,
        }
    }

    /// Projection of the degree-zero part onto the torus along `U⁻U⁰U⁺`:
    /// keeps the normal words `K^b`.
    pub fn pi_projection(&self) -> Result<TorusElement> {
        if let Some(d) = self.degrees().into_iter().find(|&d| d != 0) {
            return Err(Error::NonzeroDegree(d));
        }
        let mut out = TorusElement::zero(1);
        for (w, c) in self.normalize().terms {
            if let Some((0, b, 0)) = w.as_normal() {
                out = &out + &TorusElement::monomial(c, &[b]);
            }
        }
        Ok(out)
    }

    /// `c · K^b` for a rank-1 torus element.
    pub fn from_torus(t: &TorusElement) -> Result<Self> {
        if t.rank() != 1 {
            return Err(Error::RankMismatch {
                left: 1,
                right: t.rank(),
            });
        }
        let mut out = Self::zero();
        for (m, c) in t.terms() {
            out.add_term(Word::normal(0, m.exps()[0], 0), c.clone());
        }
        Ok(out)
    }

    /// Integer power; negative powers only for units.
    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut out = Self::one();
        for _ in 0..e.unsigned_abs() {
            out = out.multiply(&base);
        }
        Ok(out)
    }

    /// Inverse of a unit `λ K^b`.
    pub fn inverse(&self) -> Result<Self> {
        let n = self.normalize();
        let mut it = n.terms.iter();
        match (it.next(), it.next()) {
            (Some((w, c)), None) => match w.as_normal() {
                Some((0, b, 0)) => Ok(Self::normal_term(c.recip()?, 0, -b, 0)),
                _ => Err(Error::Malformed(format!("{n} is not invertible"))),
            },
            _ => Err(Error::Malformed(format!("{n} is not invertible"))),
        }
    }
}

impl std::ops::Add for NCElement {
    type Output = NCElement;
    fn add(mut self, rhs: NCElement) -> NCElement {
        for (w, c) in rhs.terms {
            self.add_term(w, c);
        }
        self
    }
}

impl std::ops::Neg for NCElement {
    type Output = NCElement;
    fn neg(self) -> NCElement {
        self.scale(&-QScalar::one())
    }
}

impl std::ops::Sub for NCElement {
    type Output = NCElement;
    fn sub(self, rhs: NCElement) -> NCElement {
        self + (-rhs)
    }
}

impl fmt::Display for NCElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(w, c)| match (w.is_empty(), c.is_one()) {
                (true, _) => format!("({c})"),
                (false, true) => w.to_string(),
                (false, false) => format!("({c})*{w}"),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl Serialize for NCElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Term<'a> {
            word: String,
            coeff: &'a QScalar,
        }
        let terms: Vec<Term<'_>> = self
            .terms
            .iter()
            .map(|(w, c)| Term {
                word: w.to_string(),
                coeff: c,
            })
            .collect();
        terms.serialize(s)
    }
}

/// `C = FE + (qK + q⁻¹K⁻¹)/(q − q⁻¹)²`.
pub fn casimir() -> NCElement {
    let d = q_minus_q_inv();
    let d2 = (&d * &d).recip().expect("nonzero");
    NCElement::word(&[Gen::F, Gen::E])
        + NCElement::normal_term(&QScalar::q() * &d2, 0, 1, 0)
        + NCElement::normal_term(&QScalar::q_pow(-1) * &d2, 0, -1, 0)
}

/// `γ_{-ρ}(π(C))`, the shifted Harish-Chandra image of the Casimir.
pub fn casimir_hc_image() -> Result<TorusElement> {
    let pi = casimir().pi_projection()?;
    let rho = RootSystem::new(1)?.rho();
    pi.gamma_twist(&(-&rho))
}

/// Action of `s_1` on rank-1 torus elements, `K ↦ K⁻¹`.
pub fn rank_one_reflection(t: &TorusElement) -> Result<TorusElement> {
    t.weyl_act(&crate::rootdata::WeylElement::simple_reflection(1, 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use Gen::*;

    fn el(g: &[Gen]) -> NCElement {
        NCElement::word(g)
    }

    fn ef_rhs() -> NCElement {
        let c = q_minus_q_inv().recip().unwrap();
        NCElement::normal_term(c.clone(), 0, 1, 0) + NCElement::normal_term(-c, 0, -1, 0)
    }

    fn random_word<R: Rng>(rng: &mut R, max_len: usize) -> Word {
        let len = rng.gen_range(0..=max_len);
        Word(
            (0..len)
                .map(|_| [E, F, K, KInv][rng.gen_range(0..4)])
                .collect(),
        )
    }

    #[test]
    fn ef_relation() {
        let n = el(&[E, F]).normalize();
        assert_eq!(n, el(&[F, E]) + ef_rhs());
        // [EF, F] = [E, F] F
        assert_eq!(
            el(&[E, F]).commutator(&el(&[F])),
            ef_rhs().multiply(&el(&[F]))
        );
        assert_eq!(el(&[E]).commutator(&el(&[F])), ef_rhs());
    }

    #[test]
    fn k_commutation() {
        assert_eq!(
            el(&[E, K]).normalize(),
            NCElement::normal_term(QScalar::q_pow(-2), 0, 1, 1)
        );
        // KE = q^2 EK
        assert_eq!(
            el(&[K, E]).normalize(),
            el(&[E, K]).scale(&QScalar::q_pow(2)).normalize()
        );
        assert_eq!(
            el(&[K, F]).normalize(),
            NCElement::normal_term(QScalar::q_pow(-2), 1, 1, 0)
        );
        assert_eq!(el(&[F, K]).normalize(), el(&[F, K]));
        assert_eq!(el(&[K, KInv]).normalize(), NCElement::one());
        assert!(el(&[K]).commutator(&el(&[KInv])).is_zero());
        assert_eq!(el(&[F, E]).multiply(&NCElement::one()), el(&[F, E]));
    }

    #[test]
    fn associativity_instance() {
        let a = el(&[E]).multiply(&el(&[F, E]));
        let b = el(&[E, F]).normalize().multiply(&el(&[E]));
        assert_eq!(a, b);
    }

    #[test]
    fn normal_form_is_idempotent_and_ordered() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let w = random_word(&mut rng, 8);
            let n = NCElement::term(QScalar::one(), w).normalize();
            assert!(n.is_normal());
            assert_eq!(n.normalize_with(Strategy::Leftmost).1, 0);
        }
    }

    #[test]
    fn strategies_agree_and_respect_bound() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..100 {
            let w = random_word(&mut rng, 12);
            let e = NCElement::term(QScalar::one(), w.clone());
            let (l, sl) = e.normalize_with(Strategy::Leftmost);
            let (r, sr) = e.normalize_with(Strategy::Rightmost);
            assert_eq!(l, r, "{w}");
            assert!(
                u128::from(sl.max(sr)) <= w.step_bound(),
                "{w}: {sl} {sr} > {}",
                w.step_bound()
            );
            assert!(l.degrees().iter().all(|&d| d == w.degree()));
        }
    }

    #[test]
    fn casimir_is_central() {
        let c = casimir();
        for g in [E, F, K, KInv] {
            assert!(c.commutator(&NCElement::gen(g)).is_zero(), "[C, {g:?}]");
        }
        assert!(c.is_central());
        assert!(!el(&[F, E]).is_central());
    }

    #[test]
    fn casimir_projection() {
        let d = q_minus_q_inv();
        let d2 = (&d * &d).recip().unwrap();
        let want = &TorusElement::monomial(&QScalar::q() * &d2, &[1])
            + &TorusElement::monomial(&QScalar::q_pow(-1) * &d2, &[-1]);
        assert_eq!(casimir().pi_projection().unwrap(), want);
        let hc = casimir_hc_image().unwrap();
        assert_eq!(
            hc,
            &TorusElement::monomial(d2.clone(), &[1]) + &TorusElement::monomial(d2, &[-1])
        );
        assert_eq!(rank_one_reflection(&hc).unwrap(), hc);
    }

    #[test]
    fn projection_examples() {
        assert!(el(&[F, E]).pi_projection().unwrap().is_zero());
        let pi_ef = el(&[E, F]).pi_projection().unwrap();
        assert_eq!(NCElement::from_torus(&pi_ef).unwrap(), ef_rhs());
        assert_eq!(
            el(&[K, K, K]).pi_projection().unwrap(),
            TorusElement::k(1, 1, 3)
        );
        assert_eq!(el(&[E]).pi_projection(), Err(Error::NonzeroDegree(1)));
    }

    #[test]
    fn projection_is_multiplicative_on_degree_zero() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(9);
        let mut degree_zero = || loop {
            let w = random_word(&mut rng, 6);
            if w.degree() == 0 {
                break NCElement::term(QScalar::from_int(rng.gen_range(1..4)), w);
            }
        };
        for _ in 0..20 {
            let a = degree_zero() + degree_zero();
            let b = degree_zero();
            let lhs = a.multiply(&b).pi_projection().unwrap();
            let rhs = &a.pi_projection().unwrap() * &b.pi_projection().unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn units() {
        assert!(NCElement::normal_term(QScalar::from_int(2), 0, 3, 0).is_unit());
        assert!(!el(&[E]).is_unit());
        assert!(!(NCElement::one() + el(&[K])).is_unit());
        assert!(el(&[K, KInv]).is_unit());
        assert!(!NCElement::zero().is_unit());
        let u = NCElement::normal_term(QScalar::q(), 0, -2, 0);
        assert_eq!(u.multiply(&u.inverse().unwrap()), NCElement::one());
        assert!(el(&[E]).inverse().is_err());
    }

    #[test]
    fn bound_examples() {
        let w = Word(vec![E, E, F, F]);
        assert_eq!(w.ef_inversions(), 4);
        let (_, steps) =
            NCElement::term(QScalar::one(), w.clone()).normalize_with(Strategy::Leftmost);
        assert!(u128::from(steps) <= w.step_bound());
        assert_eq!(Word::normal(2, 3, 1).step_bound(), 6);
    }

    #[test]
    fn display_and_json() {
        let e = NCElement::normal_term(QScalar::from_int(2), 2, -1, 1);
        assert_eq!(e.to_string(), "(2)*F^2*K^-1*E");
        assert_eq!(Word::normal(0, -3, 0).to_string(), "K^-3");
        let v = serde_json::to_value(&e).unwrap();
        assert_eq!(v[0]["word"], "F^2*K^-1*E");
    }
}
