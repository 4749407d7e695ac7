//! Complete factorization over `Q` for degree at most 4.

use num_integer::Integer as _;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::Polynomial;
use crate::arith::{divisors, Integer, Rational};
use crate::error::{Error, Result};

pub const FACTOR_MAX_DEGREE: usize = 4;

/// `f = unit · ∏ factors`, each factor monic and irreducible over `Q`,
/// listed with repetition in ascending degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub unit: Rational,
    pub factors: Vec<Polynomial>,
}

impl Factorization {
    pub fn is_irreducible(&self) -> bool {
        self.factors.len() == 1
    }

    pub fn expand(&self) -> Polynomial {
        self.factors
            .iter()
            .fold(Polynomial::constant(self.unit.clone()), |acc, f| &acc * f)
    }
}

fn int_divisors(n: &Integer) -> Result<Vec<Integer>> {
    let v = n
        .abs()
        .to_u64()
        .filter(|&v| v <= 1u64 << 40)
        .ok_or_else(|| Error::OutOfRange(format!("coefficient {n}")))?;
    Ok(divisors(v).into_iter().map(Integer::from).collect())
}

/// Some rational root of `f`, found through the rational root theorem.
pub fn rational_root(f: &Polynomial) -> Result<Option<Rational>> {
    if f.is_zero() {
        return Ok(Some(Rational::zero()));
    }
    let ints = f.primitive_part();
    if ints[0].is_zero() {
        return Ok(Some(Rational::zero()));
    }
    let lead = ints.last().unwrap();
    for q in int_divisors(lead)? {
        for p in int_divisors(&ints[0])? {
            for cand in [
                Rational::new(p.clone(), q.clone()),
                Rational::new(-p.clone(), q.clone()),
            ] {
                if f.eval(&cand).is_zero() {
                    return Ok(Some(cand));
                }
            }
        }
    }
    Ok(None)
}

fn quadratic_split(f: &Polynomial) -> Result<Option<(Polynomial, Polynomial)>> {
    // f primitive in Z[T] of degree 4 without rational roots; by Gauss's lemma
    // any splitting is (pT^2 + qT + r)(sT^2 + uT + v) over Z.
    let a = f.primitive_part();
    let (a0, a1, a2, a3, a4) = (&a[0], &a[1], &a[2], &a[3], &a[4]);
    let check = |p: &Integer, q: &Integer, r: &Integer, s: &Integer, u: &Integer, v: &Integer| {
        &(p * u) + &(q * s) == *a3 && &(&(p * v) + &(q * u)) + &(r * s) == *a2 && &(q * v) + &(r * u) == *a1
    };
    for p in int_divisors(a4)? {
        let s = a4 / &p;
        for r0 in int_divisors(a0)? {
            for r in [r0.clone(), -r0] {
                let v = a0 / &r;
                // p u + s q = a3 and v q + r u = a1
                let det = &s * &r - &p * &v;
                if !det.is_zero() {
                    let qn = a3 * &r - &p * a1;
                    let un = &s * a1 - &v * a3;
                    if qn.is_multiple_of(&det) && un.is_multiple_of(&det) {
                        let q = &qn / &det;
                        let u = &un / &det;
                        if check(&p, &q, &r, &s, &u, &v) {
                            return Ok(Some(build(&p, &q, &r, &s, &u, &v)));
                        }
                    }
                } else {
                    // u = (a3 - s q) / p and q u = a2 - p v - r s
                    let k = a2 - &p * &v - &r * &s;
                    let quad = Polynomial::from_integers(&[&p * &k, -a3.clone(), s.clone()]);
                    let Some(q1) = rational_root(&quad)? else {
                        continue;
                    };
                    let q2 = Rational::new(a3.clone(), s.clone()) - &q1;
                    for q in [q1, q2] {
                        if !q.is_integer() {
                            continue;
                        }
                        let q = q.to_integer();
                        let un = a3 - &s * &q;
                        if un.is_multiple_of(&p) {
                            let u = &un / &p;
                            if check(&p, &q, &r, &s, &u, &v) {
                                return Ok(Some(build(&p, &q, &r, &s, &u, &v)));
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(None)
}

fn build(p: &Integer, q: &Integer, r: &Integer, s: &Integer, u: &Integer, v: &Integer) -> (Polynomial, Polynomial) {
    (
        Polynomial::from_integers(&[r.clone(), q.clone(), p.clone()]).monic(),
        Polynomial::from_integers(&[v.clone(), u.clone(), s.clone()]).monic(),
    )
}

pub fn factor_small(f: &Polynomial) -> Result<Factorization> {
    let degree = f.degree().ok_or(Error::ZeroPolynomial)?;
    if degree > FACTOR_MAX_DEGREE {
        return Err(Error::DegreeTooLarge {
            degree,
            max: FACTOR_MAX_DEGREE,
        });
    }
    let unit = f.leading();
    let mut rest = f.monic();
    let mut factors = Vec::new();
    while !rest.is_constant() {
        let Some(root) = rational_root(&rest)? else {
            break;
        };
        let lin = Polynomial::new(vec![-root, Rational::one()]);
        rest = rest.divmod(&lin)?.0;
        factors.push(lin);
    }
    match rest.degree() {
        Some(0) => {}
        Some(4) => match quadratic_split(&rest)? {
            Some((g, h)) => {
                factors.push(g);
                factors.push(h);
            }
            None => factors.push(rest),
        },
        _ => factors.push(rest),
    }
    factors.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| a.coeffs().cmp(b.coeffs())));
    let out = Factorization { unit, factors };
    debug_assert_eq!(out.expand(), *f);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(s: &str) -> Polynomial {
        s.parse().unwrap()
    }

    #[test]
    fn factor_examples() {
        let f = factor_small(&p("T^2 - 1")).unwrap();
        assert_eq!(f.factors, vec![p("T - 1"), p("T + 1")]);
        assert!(factor_small(&p("T^2 + 9T + 3")).unwrap().is_irreducible());
        let f = factor_small(&p("T^4 - 1")).unwrap();
        assert_eq!(f.factors, vec![p("T - 1"), p("T + 1"), p("T^2 + 1")]);
        assert!(matches!(factor_small(&p("T^5")), Err(Error::DegreeTooLarge { .. })));
    }

    #[test]
    fn quartic_splittings() {
        let f = factor_small(&p("T^4 + 1")).unwrap();
        assert!(f.is_irreducible());
        // (T^2 + 1)(T^2 + 2): det = 0 branch
        let f = factor_small(&p("T^4 + 3T^2 + 2")).unwrap();
        assert_eq!(f.factors, vec![p("T^2 + 1"), p("T^2 + 2")]);
        // (2T^2 + T + 3)(3T^2 - T + 5)
        let g = &p("2T^2 + T + 3") * &p("3T^2 - T + 5");
        let f = factor_small(&g).unwrap();
        assert_eq!(f.factors.len(), 2);
        assert_eq!(f.expand(), g);
        let f = factor_small(&p("T^4 - T^2 + 1")).unwrap();
        assert!(f.is_irreducible());
        // T^4 + 4 = (T^2 - 2T + 2)(T^2 + 2T + 2)
        let f = factor_small(&p("T^4 + 4")).unwrap();
        assert_eq!(f.factors, vec![p("T^2 - 2T + 2"), p("T^2 + 2T + 2")]);
    }

    proptest! {
        #[test]
        fn products_of_quadratics_split(
            a in prop::collection::vec(-6i64..=6, 3),
            b in prop::collection::vec(-6i64..=6, 3),
        ) {
            prop_assume!(a[2] != 0 && b[2] != 0 && a[0] != 0 && b[0] != 0);
            let f = &Polynomial::from_ints(&a) * &Polynomial::from_ints(&b);
            let fac = factor_small(&f).unwrap();
            prop_assert!(fac.factors.len() >= 2);
            prop_assert_eq!(fac.expand(), f);
        }
    }
}
