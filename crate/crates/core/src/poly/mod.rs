//! Dense univariate polynomials with exact rational coefficients.

mod factor;
mod quad;
mod ratfunc;
mod sturm;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_integer::Integer as _;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::arith::{rat_int, Integer, Rational};
use crate::error::{Error, Result};

pub use factor::{factor_small, rational_root, Factorization};
pub use quad::{epsilon, quad_divisible, QuadDivision, QuadElement};
pub use ratfunc::RationalFunction;
pub use sturm::{squarefree_part, sturm_real_roots, yun_decomposition, Interval};

/// Coefficients are stored in ascending degree order and kept trimmed, so the
/// zero polynomial is the empty vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    coeffs: Vec<Rational>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    pub fn from_int(c: i64) -> Self {
        Self::constant(Rational::from_integer(c.into()))
    }

    /// The variable `T`.
    pub fn t() -> Self {
        Self::monomial(Rational::one(), 1)
    }

    pub fn monomial(c: Rational, k: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Rational::from_integer(c.into())).collect())
    }

    pub fn from_integers(coeffs: &[Integer]) -> Self {
        Self::new(coeffs.iter().cloned().map(rat_int).collect())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    pub fn integer_coeffs(&self) -> Option<Vec<Integer>> {
        self.coeffs
            .iter()
            .map(|c| c.is_integer().then(|| c.numer().clone()))
            .collect()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        self.scale(&self.leading().recip())
    }

    /// Integer primitive associate with positive leading coefficient.
    pub fn primitive_part(&self) -> Vec<Integer> {
        if self.is_zero() {
            return Vec::new();
        }
        let lcm = self.coeffs.iter().fold(Integer::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<Integer> = self
            .coeffs
            .iter()
            .map(|c| (c * rat_int(lcm.clone())).to_integer())
            .collect();
        let mut g = ints.iter().fold(Integer::zero(), |acc, c| acc.gcd(c));
        if ints.last().unwrap().is_negative() {
            g = -g;
        }
        ints.into_iter().map(|c| c / &g).collect()
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_int(&self, x: i64) -> Rational {
        self.eval(&Rational::from_integer(x.into()))
    }

    /// `self(g)`.
    pub fn compose(&self, g: &Polynomial) -> Polynomial {
        let mut acc = Polynomial::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * g) + &Polynomial::constant(c.clone());
        }
        acc
    }

    /// `self(T^k)`.
    pub fn inflate(&self, k: usize) -> Polynomial {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![Rational::zero(); (self.coeffs.len() - 1) * k + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * k] = c.clone();
        }
        Self::new(coeffs)
    }

    pub fn derivative(&self) -> Polynomial {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rational::from_integer(i.into()))
                .collect(),
        )
    }

    /// Reduction modulo `T^k`.
    pub fn truncate(&self, k: usize) -> Polynomial {
        Self::new(self.coeffs.iter().take(k).cloned().collect())
    }

    pub fn pow(&self, mut e: u32) -> Polynomial {
        let mut base = self.clone();
        let mut acc = Polynomial::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Product modulo `T^k`, skipping the discarded coefficients.
    pub fn mul_trunc(&self, other: &Polynomial, k: usize) -> Polynomial {
        let n = (self.coeffs.len() + other.coeffs.len()).saturating_sub(1).min(k);
        let mut out = vec![Rational::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate().take(n) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(n - i) {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn divmod(&self, g: &Polynomial) -> Result<(Polynomial, Polynomial)> {
        let dg = g.degree().ok_or(Error::DivisionByZero)?;
        let lead_inv = g.leading().recip();
        let mut rem = self.coeffs.clone();
        let Some(df) = self.degree() else {
            return Ok((Self::zero(), Self::zero()));
        };
        if df < dg {
            return Ok((Self::zero(), self.clone()));
        }
        let mut quot = vec![Rational::zero(); df - dg + 1];
        for k in (0..=df - dg).rev() {
            let c = &rem[k + dg] * &lead_inv;
            if c.is_zero() {
                continue;
            }
            for (j, gc) in g.coeffs.iter().enumerate() {
                rem[k + j] -= &c * gc;
            }
            quot[k] = c;
        }
        rem.truncate(dg);
        Ok((Self::new(quot), Self::new(rem)))
    }

    /// Exact quotient, or `None` when `g` does not divide `self`.
    pub fn div_exact(&self, g: &Polynomial) -> Result<Option<Polynomial>> {
        let (q, r) = self.divmod(g)?;
        Ok(r.is_zero().then_some(q))
    }

    pub fn divides(&self, f: &Polynomial) -> Result<bool> {
        Ok(f.divmod(self)?.1.is_zero())
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Polynomial) -> Polynomial {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.divmod(&b).expect("nonzero divisor").1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Resultant, via the Euclidean remainder sequence.
    pub fn resultant(&self, g: &Polynomial) -> Result<Rational> {
        if self.is_zero() || g.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let mut f = self.clone();
        let mut g = g.clone();
        let mut acc = Rational::one();
        loop {
            let m = f.degree().unwrap();
            let n = g.degree().unwrap();
            if n == 0 {
                return Ok(acc * num_traits::pow(g.leading(), m));
            }
            if m == 0 {
                return Ok(acc * num_traits::pow(f.leading(), n));
            }
            // Res(f, g) = (-1)^{mn} lc(g)^{m - deg r} Res(g, r)
            let r = f.divmod(&g)?.1;
            let Some(dr) = r.degree() else {
                return Ok(Rational::zero());
            };
            if (m * n) % 2 == 1 {
                acc = -acc;
            }
            acc *= num_traits::pow(g.leading(), m - dr);
            f = g;
            g = r;
        }
    }

    pub fn to_text(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if out.is_empty() {
                if c.is_negative() {
                    out.push('-');
                }
            } else {
                out.push_str(if c.is_negative() { " - " } else { " + " });
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            if mono.is_empty() {
                out.push_str(&mag.to_string());
            } else if mag.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{mag}*{mono}"));
            }
        }
        out
    }

    pub fn parse(s: &str) -> Result<Self> {
        s.parse()
    }

    /// Largest absolute value among the coefficients.
    pub fn height(&self) -> Rational {
        self.coeffs.iter().map(|c| c.abs()).max().unwrap_or_else(Rational::zero)
    }

    /// Cauchy bound: every complex root has absolute value below it.
    pub fn cauchy_bound(&self) -> Rational {
        let Some(d) = self.degree() else {
            return Rational::one();
        };
        let lc = self.leading().abs();
        let m = self.coeffs[..d]
            .iter()
            .map(|c| c.abs() / &lc)
            .max()
            .unwrap_or_else(Rational::zero);
        m + Rational::one()
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text("T"))
    }
}

impl Serialize for Polynomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

fn parse_term(term: &str) -> Result<(Rational, usize)> {
    let bad = || Error::Parse(format!("bad term {term:?}"));
    let var_pos = term.find(['T', 't', 'x', 'W']);
    let (coef_part, mono_part) = match var_pos {
        Some(p) => (&term[..p], Some(&term[p + 1..])),
        None => (term, None),
    };
    let coef_part = coef_part.trim_end_matches('*');
    let coef = if coef_part.is_empty() {
        Rational::one()
    } else {
        crate::arith::parse_rational(coef_part).map_err(|_| bad())?
    };
    let exp = match mono_part {
        None => 0,
        Some("") => 1,
        Some(rest) => {
            let e = rest.strip_prefix('^').ok_or_else(bad)?;
            e.parse::<usize>().map_err(|_| bad())?
        }
    };
    Ok((coef, exp))
}

impl FromStr for Polynomial {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let mut terms = Vec::new();
        let mut current = String::new();
        let mut prev: Option<char> = None;
        for ch in compact.chars() {
            // a sign after '^', '/', '*' or at the start belongs to the number
            let unary = matches!(prev, None | Some('^') | Some('/') | Some('*'));
            if (ch == '+' || ch == '-') && !unary {
                terms.push(std::mem::take(&mut current));
            }
            current.push(ch);
            prev = Some(ch);
        }
        terms.push(current);

        let mut coeffs: Vec<Rational> = Vec::new();
        for raw in terms {
            let (neg, body) = match raw.strip_prefix('-') {
                Some(b) => (true, b),
                None => (false, raw.strip_prefix('+').unwrap_or(&raw)),
            };
            if body.is_empty() {
                return Err(Error::Parse(format!("dangling sign in {s:?}")));
            }
            let (c, e) = parse_term(body)?;
            if coeffs.len() <= e {
                coeffs.resize(e + 1, Rational::zero());
            }
            coeffs[e] += if neg { -c } else { c };
        }
        Ok(Polynomial::new(coeffs))
    }
}

impl Add<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::new(out)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $m(self, rhs: Polynomial) -> Polynomial {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $m(self, rhs: &Polynomial) -> Polynomial {
                (&self).$m(rhs)
            }
        }
        impl $tr<Polynomial> for &Polynomial {
            type Output = Polynomial;
            fn $m(self, rhs: Polynomial) -> Polynomial {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

/// Rational numbers whose numerator and denominator fit in `i64`, for
/// compact assertions.
pub fn small(c: &Rational) -> Option<(i64, i64)> {
    Some((c.numer().to_i64()?, c.denom().to_i64()?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use proptest::prelude::*;

    fn p(s: &str) -> Polynomial {
        s.parse().unwrap()
    }

    #[test]
    fn arithmetic_examples() {
        assert_eq!(p("T^2 - 1").gcd(&p("T - 1")), p("T - 1"));
        let (q, r) = p("T^3").divmod(&p("T - 1")).unwrap();
        assert_eq!(q, p("T^2 + T + 1"));
        assert_eq!(r, Polynomial::one());
        assert_eq!(p("T^2 - T + 1").eval_int(26), rat(651, 1));
        assert_eq!(p("T^2").divmod(&Polynomial::zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn parse_and_print() {
        assert_eq!(p("-1 + T^2").to_string(), "-1 + T^2");
        assert_eq!(p("1/2*t - 3t^3").to_string(), "1/2*T - 3*T^3");
        assert_eq!(p("0"), Polynomial::zero());
        assert_eq!(p("x^2 + x").degree(), Some(2));
        assert_eq!(p("-t"), -Polynomial::t());
        assert_eq!(p("-3/4"), Polynomial::constant(rat(-3, 4)));
        assert!("T^".parse::<Polynomial>().is_err());
        assert!("".parse::<Polynomial>().is_err());
        assert!("2 +".parse::<Polynomial>().is_err());
    }

    #[test]
    fn resultant_examples() {
        let phi2 = p("T + 1");
        let phi6 = p("T^2 - T + 1");
        assert_eq!(phi2.resultant(&phi6).unwrap(), rat(3, 1));
        let g = p("T^3 + 2T - 5");
        assert_eq!(p("T - 4").resultant(&g).unwrap(), g.eval_int(4));
        let phi4 = p("T^2 + 1");
        let phi20 = p("T^8 - T^6 + T^4 - T^2 + 1");
        assert_eq!(phi4.resultant(&phi20).unwrap(), rat(25, 1));
        assert!(phi4.resultant(&Polynomial::zero()).is_err());
    }

    #[test]
    fn resultant_matches_sylvester_on_small_cases() {
        // Res(f, g) = lc(f)^deg g * prod g(roots of f), with rational roots
        let f = p("2T^2 - 3T + 1"); // roots 1, 1/2
        let g = p("T^3 + T + 7");
        let expect = rat(4, 1) * g.eval(&rat(1, 1)) * g.eval(&rat(1, 2)) * rat(2, 1);
        assert_eq!(f.resultant(&g).unwrap(), expect);
    }

    fn arb_poly() -> impl Strategy<Value = Polynomial> {
        prop::collection::vec(-20i64..=20, 0..6).prop_map(|v| Polynomial::from_ints(&v))
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&(&a - &b) + &b, a.clone());
        }

        #[test]
        fn divmod_reconstructs(a in arb_poly(), b in arb_poly()) {
            prop_assume!(!b.is_zero());
            let (q, r) = a.divmod(&b).unwrap();
            prop_assert_eq!(&(&q * &b) + &r, a);
            prop_assert!(r.is_zero() || r.degree() < b.degree());
        }

        #[test]
        fn text_round_trip(a in arb_poly()) {
            prop_assert_eq!(p(&a.to_string()), a);
        }

        #[test]
        fn gcd_divides_both(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assume!(!c.is_zero());
            let fa = &a * &c;
            let fb = &b * &c;
            let g = fa.gcd(&fb);
            if !g.is_zero() {
                prop_assert!(g.divides(&fa).unwrap());
                prop_assert!(g.divides(&fb).unwrap());
                prop_assert!(c.monic().divides(&g).unwrap());
            }
        }
    }
}
