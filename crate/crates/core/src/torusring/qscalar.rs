//! The coefficient field `Q(q)`.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::LaurentPoly;
use crate::error::{Error, Result};
use crate::rational::{self, Rational};

/// A rational function `num / den` in the formal parameter `q`.
///
/// Canonical form: `den` is a monic ordinary polynomial with nonzero constant
/// term, coprime to `num`; every power of `q` lives in `num`. Equality of
/// values is therefore structural equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QScalar {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl Default for QScalar {
    fn default() -> Self {
        Self::zero()
    }
}

impl QScalar {
    pub fn zero() -> Self {
        QScalar {
            num: LaurentPoly::zero(),
            den: LaurentPoly::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_laurent(LaurentPoly::one())
    }

    /// The parameter `q` itself.
    pub fn q() -> Self {
        Self::q_pow(1)
    }

    pub fn q_pow(e: i64) -> Self {
        Self::from_laurent(LaurentPoly::monomial(Rational::one(), e))
    }

    pub fn from_rational(c: Rational) -> Self {
        Self::from_laurent(LaurentPoly::constant(c))
    }

    pub fn from_int(c: i64) -> Self {
        Self::from_rational(rational::int(c))
    }

    /// `c · q^e`.
    pub fn monomial(c: Rational, e: i64) -> Self {
        Self::from_laurent(LaurentPoly::monomial(c, e))
    }

    pub fn from_laurent(num: LaurentPoly) -> Self {
        QScalar {
            num,
            den: LaurentPoly::one(),
        }
    }

    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: LaurentPoly, den: LaurentPoly) -> Self {
        debug_assert!(!den.is_zero());
        if num.is_zero() {
            return Self::zero();
        }
        let shift = num.low() - den.low();
        let n = num.shift(-num.low());
        let d = den.shift(-den.low());
        if d.high() == 0 {
            let inv = d.coeff(0).recip();
            return Self::from_laurent(n.scale(&inv).shift(shift));
        }
        let g = LaurentPoly::poly_gcd(&n, &d);
        let (n, d) = if g.high() > 0 {
            (n.poly_div_rem(&g).0, d.poly_div_rem(&g).0)
        } else {
            (n, d)
        };
        let inv = d.leading_coeff().expect("nonzero denominator").recip();
        QScalar {
            num: n.scale(&inv).shift(shift),
            den: d.scale(&inv),
        }
    }

    pub fn numer(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn denom(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num.is_one()
    }

    /// True when the value is a Laurent polynomial (denominator 1).
    pub fn is_laurent(&self) -> bool {
        self.den.is_one()
    }

    /// The value as a Laurent polynomial, if it is one.
    pub fn as_laurent(&self) -> Option<&LaurentPoly> {
        self.is_laurent().then_some(&self.num)
    }

    /// The value as a rational constant, if it is one.
    pub fn as_rational(&self) -> Option<Rational> {
        let constant = self.is_laurent() && self.num.low() == 0 && self.num.high() == 0;
        (constant || self.is_zero()).then(|| self.num.coeff(0))
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduce(self.den.clone(), self.num.clone()))
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.recip()? } else { self.clone() };
        let mut out = Self::one();
        for _ in 0..e.unsigned_abs() {
            out = &out * &base;
        }
        Ok(out)
    }

    /// Multiplies by `q^e`; cheap because powers of `q` live in the numerator.
    pub fn shift(&self, e: i64) -> Self {
        QScalar {
            num: self.num.shift(e),
            den: self.den.clone(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        QScalar {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    /// The field automorphism `q ↦ q^{-1}`.
    pub fn invert_q(&self) -> Self {
        Self::reduce(self.num.invert_variable(), self.den.invert_variable())
    }

    /// The field automorphism `q ↦ -q`.
    pub fn negate_q(&self) -> Self {
        Self::reduce(self.num.negate_variable(), self.den.negate_variable())
    }

    /// Exact value at `q = spec.q()`.
    pub fn specialize(&self, spec: &Specialization) -> Result<Rational> {
        self.eval_at(spec.q())
    }

    /// Exact value at an arbitrary nonzero rational `q`.
    pub fn eval_at(&self, q: &Rational) -> Result<Rational> {
        let vanishing = || Error::VanishingDenominator(rational::format_rational(q));
        let d = self.den.eval(q).ok_or_else(vanishing)?;
        if d.is_zero() {
            return Err(vanishing());
        }
        let n = self.num.eval(q).ok_or_else(vanishing)?;
        Ok(n / d)
    }
}

impl Add for &QScalar {
    type Output = QScalar;
    fn add(self, rhs: &QScalar) -> QScalar {
        if self.den == rhs.den {
            if self.den.is_one() {
                return QScalar::from_laurent(&self.num + &rhs.num);
            }
            return QScalar::reduce(&self.num + &rhs.num, self.den.clone());
        }
        QScalar::reduce(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Sub for &QScalar {
    type Output = QScalar;
    fn sub(self, rhs: &QScalar) -> QScalar {
        self + &(-rhs)
    }
}

impl Neg for &QScalar {
    type Output = QScalar;
    fn neg(self) -> QScalar {
        QScalar {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Mul for &QScalar {
    type Output = QScalar;
    fn mul(self, rhs: &QScalar) -> QScalar {
        if self.den.is_one() && rhs.den.is_one() {
            return QScalar::from_laurent(&self.num * &rhs.num);
        }
        QScalar::reduce(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

/// Panics on division by zero, like the primitive numeric types.
impl Div for &QScalar {
    type Output = QScalar;
    fn div(self, rhs: &QScalar) -> QScalar {
        assert!(!rhs.is_zero(), "QScalar division by zero");
        QScalar::reduce(&self.num * &rhs.den, &self.den * &rhs.num)
    }
}

macro_rules! forward_owned {
    ($($tr:ident :: $m:ident),*) => {$(
        impl $tr for QScalar {
            type Output = QScalar;
            fn $m(self, rhs: QScalar) -> QScalar {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&QScalar> for QScalar {
            type Output = QScalar;
            fn $m(self, rhs: &QScalar) -> QScalar {
                (&self).$m(rhs)
            }
        }
    )*};
}
forward_owned!(Add::add, Sub::sub, Mul::mul, Div::div);

impl Neg for QScalar {
    type Output = QScalar;
    fn neg(self) -> QScalar {
        -&self
    }
}

impl std::iter::Sum for QScalar {
    fn sum<I: Iterator<Item = QScalar>>(iter: I) -> QScalar {
        iter.fold(QScalar::zero(), |a, b| &a + &b)
    }
}

impl From<Rational> for QScalar {
    fn from(c: Rational) -> Self {
        QScalar::from_rational(c)
    }
}

impl From<LaurentPoly> for QScalar {
    fn from(p: LaurentPoly) -> Self {
        QScalar::from_laurent(p)
    }
}

impl fmt::Display for QScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for QScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QScalar({self})")
    }
}

#[derive(Serialize, Deserialize)]
struct QScalarRepr {
    num: Vec<(i64, String)>,
    den: Vec<(i64, String)>,
}

fn laurent_repr(p: &LaurentPoly) -> Vec<(i64, String)> {
    p.terms()
        .map(|(e, c)| (e, rational::format_rational(c)))
        .collect()
}

fn laurent_from_repr(terms: &[(i64, String)]) -> Result<LaurentPoly> {
    let parsed = terms
        .iter()
        .map(|(e, c)| Ok((*e, rational::parse_rational(c)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(LaurentPoly::from_terms(parsed))
}

impl Serialize for QScalar {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        QScalarRepr {
            num: laurent_repr(&self.num),
            den: laurent_repr(&self.den),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for QScalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = QScalarRepr::deserialize(d)?;
        let num = laurent_from_repr(&repr.num).map_err(D::Error::custom)?;
        let den = laurent_from_repr(&repr.den).map_err(D::Error::custom)?;
        QScalar::new(num, den).map_err(D::Error::custom)
    }
}

/// A rational value for `q` that is not a root of unity, i.e. not `0` or `±1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Specialization {
    q: Rational,
}

impl Specialization {
    pub fn new(q: Rational) -> Result<Self> {
        let one = Rational::one();
        if q.is_zero() || q == one || q == -one {
            return Err(Error::InvalidSpecialization(rational::format_rational(&q)));
        }
        Ok(Specialization { q })
    }

    pub fn parse(s: &str) -> Result<Self> {
        Self::new(rational::parse_rational(s)?)
    }

    pub fn q(&self) -> &Rational {
        &self.q
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    fn q_minus_qinv() -> QScalar {
        &QScalar::q() - &QScalar::q_pow(-1)
    }

    #[test]
    fn gcd_with_remainder_divisible_by_q() {
        // q^3 + q^2 + 2q + 1 = (q + 1)(q^2 + 1) + q: Euclid meets a remainder without constant term
        let num = LaurentPoly::from_terms([(3, int(1)), (2, int(1)), (1, int(2)), (0, int(1))]);
        let den = LaurentPoly::from_terms([(2, int(1)), (0, int(1))]);
        let x = QScalar::new(num, den.clone()).unwrap();
        let q_over = QScalar::new(LaurentPoly::monomial(int(1), 1), den).unwrap();
        assert_eq!(x, &(&QScalar::q() + &QScalar::one()) + &q_over);
    }

    #[test]
    fn canonical_form_makes_equality_structural() {
        // (q^2 - 1)/(q - 1) == q + 1
        let a = QScalar::new(
            LaurentPoly::from_terms([(2, int(1)), (0, int(-1))]),
            LaurentPoly::from_terms([(1, int(1)), (0, int(-1))]),
        )
        .unwrap();
        let b = &QScalar::q() + &QScalar::one();
        assert_eq!(a, b);
        assert!(a.is_laurent());

        // 1/(q - q^-1) = q/(q^2 - 1)
        let c = q_minus_qinv().recip().unwrap();
        assert_eq!(c.numer(), &LaurentPoly::monomial(int(1), 1));
        assert_eq!(
            c.denom(),
            &LaurentPoly::from_terms([(2, int(1)), (0, int(-1))])
        );
        assert_eq!(&c * &q_minus_qinv(), QScalar::one());
    }

    #[test]
    fn field_ops() {
        let x = &QScalar::q_pow(2) + &QScalar::from_int(3);
        let y = q_minus_qinv();
        let z = &(&x / &y) * &y;
        assert_eq!(z, x);
        assert_eq!(&(&x - &x), &QScalar::zero());
        assert!(QScalar::zero().recip().is_err());
        assert_eq!(QScalar::q().pow(-3).unwrap(), QScalar::q_pow(-3));
    }

    #[test]
    fn specialize_examples() {
        let two = Specialization::new(int(2)).unwrap();
        let s = &QScalar::q_pow(2) + &QScalar::q_pow(-2);
        assert_eq!(s.specialize(&two).unwrap(), frac(17, 4));
        let t = q_minus_qinv().recip().unwrap();
        assert_eq!(t.specialize(&two).unwrap(), frac(2, 3));
        assert!(Specialization::new(int(1)).is_err());
        assert!(Specialization::new(int(-1)).is_err());
        assert!(Specialization::new(int(0)).is_err());
    }

    #[test]
    fn vanishing_denominator_is_an_error() {
        // 1/(q - 2) at q = 2
        let s = QScalar::new(
            LaurentPoly::one(),
            LaurentPoly::from_terms([(1, int(1)), (0, int(-2))]),
        )
        .unwrap();
        let two = Specialization::new(int(2)).unwrap();
        assert!(matches!(
            s.specialize(&two),
            Err(Error::VanishingDenominator(_))
        ));
    }

    #[test]
    fn q_automorphisms() {
        let s = q_minus_qinv().recip().unwrap();
        assert_eq!(s.invert_q(), -&s);
        assert_eq!(s.negate_q(), -&s);
        assert_eq!(s.invert_q().invert_q(), s);
    }

    #[test]
    fn json_shape() {
        let s = q_minus_qinv().recip().unwrap();
        let v = serde_json::to_value(&s).unwrap();
        assert_eq!(
            v,
            serde_json::json!({"num": [[1, "1/1"]], "den": [[0, "-1/1"], [2, "1/1"]]})
        );
        let back: QScalar = serde_json::from_value(v).unwrap();
        assert_eq!(back, s);
    }

    #[test]
    fn rational_view() {
        assert_eq!(QScalar::from_int(5).as_rational(), Some(int(5)));
        assert_eq!(QScalar::zero().as_rational(), Some(int(0)));
        assert_eq!(QScalar::q().as_rational(), None);
    }
}
