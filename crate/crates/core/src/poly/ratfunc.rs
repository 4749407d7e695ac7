//! Reduced quotients of polynomials.

use std::fmt;

use num_traits::One;

use super::Polynomial;
use crate::arith::Valuation;
use crate::error::{Error, Result};

/// `num / den` with `den` monic and coprime to `num`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

impl RationalFunction {
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Self::from_poly(num));
        }
        let g = num.gcd(&den);
        let num = num.divmod(&g)?.0;
        let den = den.divmod(&g)?.0;
        let lc = den.leading();
        Ok(RationalFunction {
            num: num.scale(&lc.recip()),
            den: den.monic(),
        })
    }

    pub fn from_poly(num: Polynomial) -> Self {
        RationalFunction {
            num,
            den: Polynomial::one(),
        }
    }

    pub fn num(&self) -> &Polynomial {
        &self.num
    }

    pub fn den(&self) -> &Polynomial {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    /// Order at the pole of `T`: `deg den − deg num`.
    pub fn ord_at_infinity(&self) -> Valuation {
        match self.num.degree() {
            None => Valuation::Infinite,
            Some(dn) => Valuation::Finite(self.den.degree().unwrap() as i64 - dn as i64),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(
            &(&self.num * &other.den) + &(&other.num * &self.den),
            &self.den * &other.den,
        )
        .expect("nonzero denominators")
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::new(&self.num * &other.num, &self.den * &other.den).expect("nonzero denominators")
    }

    pub fn is_one(&self) -> bool {
        self.num.is_constant() && self.den.is_constant() && self.num.leading().is_one()
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_polynomial() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Polynomial {
        s.parse().unwrap()
    }

    #[test]
    fn reduction_and_order() {
        let r = RationalFunction::new(p("T^2 - 1"), p("2T - 2")).unwrap();
        assert_eq!(r.num(), &p("1/2*T + 1/2"));
        assert_eq!(r.den(), &Polynomial::one());
        assert_eq!(r.ord_at_infinity(), Valuation::Finite(-1));
        let r = RationalFunction::new(p("1"), p("T^3 + 1")).unwrap();
        assert_eq!(r.ord_at_infinity(), Valuation::Finite(3));
        let z = RationalFunction::from_poly(Polynomial::zero());
        assert_eq!(z.ord_at_infinity(), Valuation::Infinite);
        assert!(RationalFunction::new(p("1"), Polynomial::zero()).is_err());
    }

    #[test]
    fn field_operations() {
        let a = RationalFunction::new(p("1"), p("T")).unwrap();
        let b = RationalFunction::new(p("1"), p("T + 1")).unwrap();
        let s = a.add(&b);
        assert_eq!(s.num(), &p("2T + 1"));
        assert_eq!(s.den(), &p("T^2 + T"));
        let inv = RationalFunction::new(p("T"), p("1")).unwrap();
        assert!(a.mul(&inv).is_one());
    }
}
