//! The ring `R[√(s² − 1)]` over polynomials, where powers of
//! `ε = s − √(s² − 1)` live.

use std::fmt;

use serde::{Serialize, Serializer};

use num_traits::{One, Zero};

use super::Polynomial;
use crate::arith::Rational;
use crate::error::{Error, Result};

/// `u + w·√(s² − 1)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuadElement {
    pub u: Polynomial,
    pub w: Polynomial,
    s: Polynomial,
}

/// `ε = s − √(s² − 1)`.
pub fn epsilon(s: &Polynomial) -> Result<QuadElement> {
    QuadElement::new(s.clone(), Polynomial::from_int(-1), s.clone())
}

impl QuadElement {
    pub fn new(u: Polynomial, w: Polynomial, s: Polynomial) -> Result<Self> {
        if s.is_constant() {
            return Err(Error::ConstantParameter(s.to_string()));
        }
        Ok(QuadElement { u, w, s })
    }

    /// Embeds a polynomial with zero irrational part.
    pub fn from_poly(u: Polynomial, s: &Polynomial) -> Result<Self> {
        Self::new(u, Polynomial::zero(), s.clone())
    }

    pub fn one(s: &Polynomial) -> Result<Self> {
        Self::from_poly(Polynomial::one(), s)
    }

    pub fn s(&self) -> &Polynomial {
        &self.s
    }

    /// `s² − 1`.
    pub fn discriminant(&self) -> Polynomial {
        &(&self.s * &self.s) - &Polynomial::one()
    }

    pub fn is_zero(&self) -> bool {
        self.u.is_zero() && self.w.is_zero()
    }

    pub fn conj(&self) -> Self {
        QuadElement {
            u: self.u.clone(),
            w: -&self.w,
            s: self.s.clone(),
        }
    }

    /// `u² − (s² − 1)·w²`.
    pub fn norm(&self) -> Polynomial {
        &(&self.u * &self.u) - &(&self.discriminant() * &(&self.w * &self.w))
    }

    fn same_ring(&self, other: &Self) -> Result<()> {
        if self.s == other.s {
            Ok(())
        } else {
            Err(Error::MixedDiscriminant)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        Ok(QuadElement {
            u: &self.u + &other.u,
            w: &self.w + &other.w,
            s: self.s.clone(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        Ok(QuadElement {
            u: &self.u - &other.u,
            w: &self.w - &other.w,
            s: self.s.clone(),
        })
    }

    pub fn add_poly(&self, c: &Polynomial) -> Self {
        QuadElement {
            u: &self.u + c,
            w: self.w.clone(),
            s: self.s.clone(),
        }
    }

    pub fn scale(&self, c: &Polynomial) -> Self {
        QuadElement {
            u: &self.u * c,
            w: &self.w * c,
            s: self.s.clone(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        let d = self.discriminant();
        QuadElement {
            u: &(&self.u * &other.u) + &(&d * &(&self.w * &other.w)),
            w: &(&self.u * &other.w) + &(&self.w * &other.u),
            s: self.s.clone(),
        }
    }

    /// Integer powers; negative exponents need norm 1 and go through the
    /// conjugate.
    pub fn pow(&self, n: i64) -> Result<Self> {
        let base = if n < 0 {
            let norm = self.norm();
            if norm != Polynomial::one() {
                return Err(Error::NonUnitPower(norm.to_string()));
            }
            self.conj()
        } else {
            self.clone()
        };
        let mut e = n.unsigned_abs();
        let mut b = base;
        let mut acc = QuadElement::one(&self.s)?;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_unchecked(&b);
            }
            e >>= 1;
            if e > 0 {
                b = b.mul_unchecked(&b);
            }
        }
        Ok(acc)
    }
}

impl fmt::Display for QuadElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) + ({})*sqrt({})", self.u, self.w, self.discriminant())
    }
}

impl Serialize for QuadElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QuadDivision {
    Quotient(QuadElement),
    /// Remainders of the two components of `x·conj(m)` modulo `norm(m)`.
    Refusal {
        rem_u: Polynomial,
        rem_w: Polynomial,
    },
}

impl QuadDivision {
    pub fn is_divisible(&self) -> bool {
        matches!(self, QuadDivision::Quotient(_))
    }

    pub fn quotient(&self) -> Option<&QuadElement> {
        match self {
            QuadDivision::Quotient(q) => Some(q),
            QuadDivision::Refusal { .. } => None,
        }
    }
}

/// Divides `x` by `m` through `x·conj(m) / norm(m)`.
pub fn quad_divisible(x: &QuadElement, m: &QuadElement) -> Result<QuadDivision> {
    x.same_ring(m)?;
    if m.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let n = m.norm();
    if n.degree() == Some(1) {
        // remainders mod a linear norm are values at its root
        let r = -(n.coeff(0) / n.coeff(1));
        let c = m.conj();
        let d = x.s.eval(&r) * x.s.eval(&r) - Rational::one();
        let (xu, xw, cu, cw) = (x.u.eval(&r), x.w.eval(&r), c.u.eval(&r), c.w.eval(&r));
        let ru = &xu * &cu + &xw * &cw * &d;
        let rw = &xu * &cw + &xw * &cu;
        if !ru.is_zero() || !rw.is_zero() {
            return Ok(QuadDivision::Refusal {
                rem_u: Polynomial::constant(ru),
                rem_w: Polynomial::constant(rw),
            });
        }
    }
    let num = x.mul_unchecked(&m.conj());
    let (qu, ru) = num.u.divmod(&n)?;
    let (qw, rw) = num.w.divmod(&n)?;
    if ru.is_zero() && rw.is_zero() {
        Ok(QuadDivision::Quotient(QuadElement {
            u: qu,
            w: qw,
            s: x.s.clone(),
        }))
    } else {
        Ok(QuadDivision::Refusal { rem_u: ru, rem_w: rw })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(s: &str) -> Polynomial {
        s.parse().unwrap()
    }

    #[test]
    fn epsilon_powers() {
        let e = epsilon(&Polynomial::t()).unwrap();
        assert_eq!((e.u.clone(), e.w.clone()), (p("t"), p("-1")));
        let e2 = e.pow(2).unwrap();
        assert_eq!((e2.u.clone(), e2.w.clone()), (p("2t^2 - 1"), p("-2t")));
        let e0 = e.pow(0).unwrap();
        assert_eq!((e0.u, e0.w), (p("1"), p("0")));
        let inv = e.pow(-1).unwrap();
        assert_eq!(inv, e.conj());
        assert_eq!(e.mul(&inv).unwrap(), QuadElement::one(&p("t")).unwrap());
    }

    #[test]
    fn divisibility_examples() {
        let s = Polynomial::t();
        let e = epsilon(&s).unwrap();
        let one = Polynomial::one();
        let x = e.pow(2).unwrap().add_poly(&-&one);
        let m = e.add_poly(&-&one);
        let q = quad_divisible(&x, &m).unwrap();
        assert_eq!(q.quotient().unwrap(), &e.add_poly(&one));

        let m2 = e.add_poly(&Polynomial::from_int(-2));
        let x8 = e.pow(3).unwrap().add_poly(&Polynomial::from_int(-8));
        assert!(quad_divisible(&x8, &m2).unwrap().is_divisible());
        let x9 = e.pow(3).unwrap().add_poly(&Polynomial::from_int(-9));
        assert!(!quad_divisible(&x9, &m2).unwrap().is_divisible());
    }

    #[test]
    fn mixed_rings_rejected() {
        let a = epsilon(&p("t")).unwrap();
        let b = epsilon(&p("2t")).unwrap();
        assert_eq!(a.mul(&b), Err(Error::MixedDiscriminant));
        assert!(epsilon(&p("3")).is_err());
    }

    fn arb_elem() -> impl Strategy<Value = (Vec<i64>, Vec<i64>)> {
        (
            prop::collection::vec(-9i64..=9, 0..4),
            prop::collection::vec(-9i64..=9, 0..4),
        )
    }

    proptest! {
        #[test]
        fn norm_is_multiplicative(a in arb_elem(), b in arb_elem(), s in 0usize..3) {
            let s = [p("t"), p("2t"), p("t^2 + 1")][s].clone();
            let x = QuadElement::new(Polynomial::from_ints(&a.0), Polynomial::from_ints(&a.1), s.clone()).unwrap();
            let y = QuadElement::new(Polynomial::from_ints(&b.0), Polynomial::from_ints(&b.1), s).unwrap();
            prop_assert_eq!(x.mul(&y).unwrap().norm(), &x.norm() * &y.norm());
        }

        #[test]
        fn division_inverts_multiplication(a in arb_elem(), b in arb_elem()) {
            let s = p("t");
            let x = QuadElement::new(Polynomial::from_ints(&a.0), Polynomial::from_ints(&a.1), s.clone()).unwrap();
            let y = QuadElement::new(Polynomial::from_ints(&b.0), Polynomial::from_ints(&b.1), s).unwrap();
            prop_assume!(!y.is_zero());
            let prod = x.mul(&y).unwrap();
            let q = quad_divisible(&prod, &y).unwrap();
            prop_assert_eq!(q.quotient(), Some(&x));
        }
    }
}
