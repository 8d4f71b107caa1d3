//! The equation `p² + p⁻² = q² + q⁻²` and its factorization.
//!
//! Agreement of `σ_1` on the trivial module already forces this equation, and
//! clearing denominators gives `p⁴q² + q² − p²q⁴ − p² = (p−q)(p+q)(pq−1)(pq+1)`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{self, int, Rational};
use crate::torusring::{LaurentPoly, QScalar, Specialization};

/// Polynomial in `p` with coefficients in `Q[q, q⁻¹]`; `coeffs[k]` multiplies `p^k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PPoly {
    coeffs: Vec<LaurentPoly>,
}

impl PPoly {
    pub fn new(mut coeffs: Vec<LaurentPoly>) -> Self {
        while coeffs.last().is_some_and(LaurentPoly::is_zero) {
            coeffs.pop();
        }
        PPoly { coeffs }
    }

    /// `α p + β`.
    pub fn linear(alpha: LaurentPoly, beta: LaurentPoly) -> Self {
        Self::new(vec![beta, alpha])
    }

    pub fn one() -> Self {
        Self::new(vec![LaurentPoly::one()])
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> LaurentPoly {
        self.coeffs
            .get(k)
            .cloned()
            .unwrap_or_else(LaurentPoly::zero)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Self::new(Vec::new());
        }
        let mut out = vec![LaurentPoly::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Self::new(out)
    }

    /// Value at `(p, q)`; `None` if `q = 0` and a negative power of `q` occurs.
    pub fn eval(&self, p: &Rational, q: &Rational) -> Option<Rational> {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * p + c.eval(q)?;
        }
        Some(acc)
    }
}

impl fmt::Display for PPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| match k {
                0 => format!("({c})"),
                1 => format!("({c})*p"),
                _ => format!("({c})*p^{k}"),
            })
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

fn q_laurent(terms: &[(i64, i64)]) -> LaurentPoly {
    LaurentPoly::from_terms(terms.iter().map(|&(e, c)| (e, int(c))))
}

/// `p² + p⁻² − q² − q⁻²` multiplied by the smallest monomial `p^a q^b` making it a polynomial.
pub fn forcing_polynomial() -> PPoly {
    let mut expr: BTreeMap<i64, LaurentPoly> = BTreeMap::new();
    expr.insert(2, LaurentPoly::one());
    expr.insert(-2, LaurentPoly::one());
    expr.insert(0, q_laurent(&[(2, -1), (-2, -1)]));
    let p_low = *expr.keys().next().expect("nonempty");
    let q_low = expr.values().map(LaurentPoly::low).min().expect("nonempty");
    let top = (expr.keys().last().expect("nonempty") - p_low) as usize;
    let mut coeffs = vec![LaurentPoly::zero(); top + 1];
    for (k, c) in expr {
        coeffs[(k - p_low) as usize] = c.shift(-q_low);
    }
    PPoly::new(coeffs)
}

/// Exact square root in `Q[q, q⁻¹]` with positive leading coefficient.
fn laurent_sqrt(f: &LaurentPoly) -> Option<LaurentPoly> {
    if f.is_zero() {
        return Some(LaurentPoly::zero());
    }
    let (lo, hi) = (f.low(), f.high());
    if lo % 2 != 0 || hi % 2 != 0 {
        return None;
    }
    let top = rational::rational_sqrt(f.leading_coeff()?)?;
    let half = (hi - lo) / 2;
    // s_k for exponent lo/2 + k, solved from the top down
    let mut s = vec![Rational::zero(); half as usize + 1];
    s[half as usize] = top.clone();
    let two_top = &top * int(2);
    for k in (0..half).rev() {
        let e = lo + half + k;
        let mut known = Rational::zero();
        for i in k + 1..=half {
            let j = half + k - i;
            if j > k && j <= half {
                known += &s[i as usize] * &s[j as usize];
            }
        }
        s[k as usize] = (f.coeff(e) - known) / &two_top;
    }
    let root = LaurentPoly::from_parts(lo / 2, s);
    (&root * &root == *f).then_some(root)
}

fn is_unit(f: &LaurentPoly) -> bool {
    f.num_terms() == 1
}

/// Splits `A p² − B` as `(αp − β)(αp + β)` when `A = α²`, `B = β²`.
fn split_difference_of_squares(a: &LaurentPoly, b: &LaurentPoly) -> Result<[PPoly; 2]> {
    let alpha = laurent_sqrt(a).ok_or_else(|| Error::Malformed(format!("{a} is not a square")))?;
    let beta = laurent_sqrt(b).ok_or_else(|| Error::Malformed(format!("{b} is not a square")))?;
    let neg = LaurentPoly::constant(-Rational::one());
    Ok([
        PPoly::linear(alpha.clone(), &beta * &neg),
        PPoly::linear(alpha, beta),
    ])
}

/// Factors a biquadratic `a p⁴ + b p² + c` whose leading coefficient is a unit
/// of `Q[q, q⁻¹]` into linear factors in `p`. The product is checked against
/// the input before returning.
pub fn factor_biquadratic(f: &PPoly) -> Result<Vec<PPoly>> {
    if f.degree() != Some(4) || !f.coeff(1).is_zero() || !f.coeff(3).is_zero() {
        return Err(Error::Malformed(format!("not a biquadratic in p: {f}")));
    }
    let (a, b, c) = (f.coeff(4), f.coeff(2), f.coeff(0));
    if !is_unit(&a) {
        return Err(Error::Malformed(format!(
            "leading coefficient {a} is not a unit"
        )));
    }
    let four = LaurentPoly::constant(int(4));
    let disc = &(&b * &b) - &(&four * &(&a * &c));
    let s = laurent_sqrt(&disc)
        .ok_or_else(|| Error::Malformed(format!("discriminant {disc} is not a square")))?;
    let half = Rational::new(1.into(), 2.into());
    let minus_b = b.scale(&-Rational::one());
    let r1 = (&minus_b + &s).scale(&half);
    let r2 = (&minus_b - &s).scale(&half);
    // a is a unit: F = (p² − r1/a)(a p² − r2)
    let (a_exp, a_coeff) = a.terms().next().map(|(e, c)| (e, c.clone())).expect("unit");
    let r1_over_a = r1.shift(-a_exp).scale(&a_coeff.recip());
    let mut factors = Vec::with_capacity(4);
    factors.extend(split_difference_of_squares(
        &LaurentPoly::one(),
        &r1_over_a,
    )?);
    factors.extend(split_difference_of_squares(&a, &r2)?);
    let product = factors.iter().fold(PPoly::one(), |acc, g| acc.mul(g));
    if product != *f {
        return Err(Error::Malformed(format!(
            "factorization check failed for {f}"
        )));
    }
    Ok(factors)
}

pub fn factor_forcing_polynomial() -> Result<Vec<PPoly>> {
    factor_biquadratic(&forcing_polynomial())
}

/// Roots `p = −β/α` of the linear factors `αp + β`, as elements of `Q(q)`.
pub fn linear_factor_roots(factors: &[PPoly]) -> Result<Vec<QScalar>> {
    factors
        .iter()
        .map(|g| {
            if g.degree() != Some(1) {
                return Err(Error::Malformed(format!("not linear in p: {g}")));
            }
            let beta = g.coeff(0).scale(&-Rational::one());
            QScalar::new(beta, g.coeff(1))
        })
        .collect()
}

/// Rational `p` with `p² + p⁻² = q² + q⁻²`, found by solving
/// `q² P² − (q⁴ + 1) P + q² = 0` for `P = p²` and taking square roots.
pub fn forcing_solutions(q: &Specialization) -> Result<BTreeSet<Rational>> {
    let q = q.q();
    let q2 = q * q;
    let a = q2.clone();
    let b = -(&q2 * &q2 + Rational::one());
    let c = q2;
    let disc = &b * &b - int(4) * &a * &c;
    let s = rational::rational_sqrt(&disc).ok_or_else(|| {
        Error::Malformed(format!(
            "discriminant {} has no rational root",
            rational::format_rational(&disc)
        ))
    })?;
    let mut out = BTreeSet::new();
    for big_p in [(-&b + &s) / (int(2) * &a), (-&b - &s) / (int(2) * &a)] {
        if !big_p.is_positive() {
            continue;
        }
        if let Some(r) = rational::rational_sqrt(&big_p) {
            out.insert(-r.clone());
            out.insert(r);
        }
    }
    Ok(out)
}

/// Whether `p² + p⁻² = q² + q⁻²`.
pub fn is_forced(p: &Rational, q: &Rational) -> bool {
    if p.is_zero() || q.is_zero() {
        return false;
    }
    let f = |x: &Rational| x * x + (x * x).recip();
    f(p) == f(q)
}
