//! Integer and rational arithmetic: valuations, CRT, roots of unity modulo
//! prime powers, four-square decompositions and the localization facts used
//! by the non-zero and constant-defining systems.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

pub type Integer = BigInt;
pub type Rational = BigRational;

pub fn int(n: i64) -> Integer {
    Integer::from(n)
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(int(n), int(d))
}

pub fn rat_int(n: Integer) -> Rational {
    Rational::from_integer(n)
}

/// Order of a rational number at a prime. `Infinite` is reserved for zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Valuation {
    Finite(i64),
    Infinite,
}

impl Valuation {
    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, Valuation::Infinite)
    }
}

impl PartialOrd for Valuation {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Valuation {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        use std::cmp::Ordering::*;
        match (self, other) {
            (Valuation::Infinite, Valuation::Infinite) => Equal,
            (Valuation::Infinite, _) => Greater,
            (_, Valuation::Infinite) => Less,
            (Valuation::Finite(a), Valuation::Finite(b)) => a.cmp(b),
        }
    }
}

impl std::ops::Add for Valuation {
    type Output = Valuation;
    fn add(self, rhs: Valuation) -> Valuation {
        match (self, rhs) {
            (Valuation::Finite(a), Valuation::Finite(b)) => Valuation::Finite(a + b),
            _ => Valuation::Infinite,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => write!(f, "inf"),
        }
    }
}

impl Serialize for Valuation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod_u64(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin, exact for every `u64`.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for p in BASES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in BASES {
        let mut x = pow_mod_u64(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Primality for integers in the 64-bit range; larger inputs are rejected.
pub fn is_prime(n: &Integer) -> Result<bool> {
    if n.is_negative() {
        return Ok(false);
    }
    let v = n.to_u64().ok_or_else(|| Error::PrimeTooLarge(n.to_string()))?;
    Ok(is_prime_u64(v))
}

pub fn require_prime(p: &Integer) -> Result<()> {
    if is_prime(p)? {
        Ok(())
    } else {
        Err(Error::NotPrime(p.to_string()))
    }
}

pub fn next_prime_u64(n: u64) -> u64 {
    let mut k = n + 1;
    while !is_prime_u64(k) {
        k += 1;
    }
    k
}

/// Prime factorization by trial division, ascending primes with exponents.
pub fn factorize_u64(mut n: u64) -> Vec<(u64, u32)> {
    let mut primes = Vec::new();
    let mut p = 2u64;
    while p < 1000 && p * p <= n {
        while n.is_multiple_of(p) {
            n /= p;
            primes.push(p);
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        split_large(n, &mut primes);
    }
    primes.sort_unstable();
    let mut out: Vec<(u64, u32)> = Vec::new();
    for p in primes {
        match out.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => out.push((p, 1)),
        }
    }
    out
}

fn split_large(n: u64, out: &mut Vec<u64>) {
    if n == 1 {
        return;
    }
    if is_prime_u64(n) {
        out.push(n);
        return;
    }
    let f = (1..).find_map(|c| brent_rho(n, c)).expect("composite has a factor");
    split_large(f, out);
    split_large(n / f, out);
}

/// A nontrivial factor of the odd composite `n`, or `None` when the
/// sequence for this constant cycles first.
fn brent_rho(n: u64, c: u64) -> Option<u64> {
    let f = |x: u64| (mul_mod(x, x, n) + c) % n;
    let (mut x, mut y, mut g, mut q) = (0u64, 2u64, 1u64, 1u64);
    let mut ys = y;
    let mut r = 1u64;
    const M: u64 = 128;
    while g == 1 {
        x = y;
        for _ in 0..r {
            y = f(y);
        }
        let mut k = 0;
        while k < r && g == 1 {
            ys = y;
            for _ in 0..M.min(r - k) {
                y = f(y);
                q = mul_mod(q, x.abs_diff(y), n);
            }
            g = q.gcd(&n);
            k += M;
        }
        r *= 2;
    }
    if g == n {
        loop {
            ys = f(ys);
            g = x.abs_diff(ys).gcd(&n);
            if g > 1 {
                break;
            }
        }
    }
    (g != n).then_some(g)
}

pub fn euler_phi(n: u64) -> u64 {
    factorize_u64(n).into_iter().fold(n, |acc, (p, _)| acc / p * (p - 1))
}

/// All positive divisors, ascending.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut out = vec![1u64];
    for (p, e) in factorize_u64(n) {
        let len = out.len();
        let mut pk = 1;
        for _ in 0..e {
            pk *= p;
            for i in 0..len {
                out.push(out[i] * pk);
            }
        }
    }
    out.sort_unstable();
    out
}

pub fn mobius(n: u64) -> i32 {
    let f = factorize_u64(n);
    if f.iter().any(|&(_, e)| e > 1) {
        0
    } else if f.len().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

fn ord_integer(n: &Integer, p: &Integer) -> i64 {
    let mut v = 0;
    let mut n = n.clone();
    loop {
        let (q, r) = n.div_rem(p);
        if !r.is_zero() {
            return v;
        }
        n = q;
        v += 1;
    }
}

/// `ord_p(x)`: the exponent of `p` in `x`, `Infinite` for zero.
pub fn ord_p(x: &Rational, p: &Integer) -> Result<Valuation> {
    require_prime(p)?;
    Ok(ord_p_unchecked(x, p))
}

/// Valuation without the primality check, for hot loops over known primes.
pub(crate) fn ord_p_unchecked(x: &Rational, p: &Integer) -> Valuation {
    if x.is_zero() {
        return Valuation::Infinite;
    }
    Valuation::Finite(ord_integer(x.numer(), p) - ord_integer(x.denom(), p))
}

pub fn ord_p_int(x: &Integer, p: &Integer) -> Valuation {
    if x.is_zero() {
        Valuation::Infinite
    } else {
        Valuation::Finite(ord_integer(x, p))
    }
}

/// Extended gcd: returns `(g, s, t)` with `a*s + b*t = g >= 0`.
pub fn ext_gcd(a: &Integer, b: &Integer) -> (Integer, Integer, Integer) {
    let e = a.extended_gcd(b);
    if e.gcd.is_negative() {
        (-e.gcd, -e.x, -e.y)
    } else {
        (e.gcd, e.x, e.y)
    }
}

pub fn mod_inverse(a: &Integer, m: &Integer) -> Option<Integer> {
    let (g, s, _) = ext_gcd(a, m);
    if g.is_one() {
        Some(s.mod_floor(m))
    } else {
        None
    }
}

pub fn pow_mod(base: &Integer, exp: &Integer, m: &Integer) -> Integer {
    base.mod_floor(m).modpow(exp, m)
}

/// Chinese remaindering over pairwise coprime moduli; the result lies in
/// `[0, prod moduli)`.
pub fn crt(residues: &[Integer], moduli: &[Integer]) -> Result<Integer> {
    if residues.len() != moduli.len() {
        return Err(Error::LengthMismatch(residues.len(), moduli.len()));
    }
    let two = int(2);
    for m in moduli {
        if *m < two {
            return Err(Error::ModulusTooSmall(m.to_string()));
        }
    }
    for i in 0..moduli.len() {
        for j in i + 1..moduli.len() {
            if !moduli[i].gcd(&moduli[j]).is_one() {
                return Err(Error::NonCoprimeModuli(moduli[i].to_string(), moduli[j].to_string()));
            }
        }
    }
    let mut acc = Integer::zero();
    let mut modulus = Integer::one();
    for (r, m) in residues.iter().zip(moduli) {
        // acc + modulus * k ≡ r (mod m)
        let inv = mod_inverse(&modulus, m).expect("coprime moduli");
        let k = ((r - &acc) * inv).mod_floor(m);
        acc += &modulus * k;
        modulus *= m;
        acc = acc.mod_floor(&modulus);
    }
    Ok(acc)
}

fn prime_divisors(n: u64) -> Vec<u64> {
    factorize_u64(n).into_iter().map(|(p, _)| p).collect()
}

/// Whether `c` has multiplicative order exactly `m` modulo `modulus`.
pub fn has_exact_order(c: &Integer, m: u64, modulus: &Integer) -> bool {
    let one = Integer::one();
    if pow_mod(c, &Integer::from(m), modulus) != one.clone() % modulus {
        return false;
    }
    prime_divisors(m)
        .into_iter()
        .all(|q| pow_mod(c, &Integer::from(m / q), modulus) != one)
}

/// Smallest representative in `[0, p^k)` of a primitive `m`-th root of unity
/// modulo `p^k`, where `m | p - 1`.
pub fn hensel_root_of_unity(m: &Integer, p: &Integer, k: u32) -> Result<Integer> {
    require_prime(p)?;
    if k == 0 {
        return Err(Error::OutOfRange(format!("precision k = {k}")));
    }
    let pm1 = p - 1u32;
    if !m.is_positive() || !(&pm1 % m).is_zero() {
        return Err(Error::OrderDoesNotDivide {
            m: m.to_string(),
            p: p.to_string(),
        });
    }
    let m_u = m.to_u64().ok_or_else(|| Error::OutOfRange(m.to_string()))?;
    let exponent = &pm1 / m;
    // root of unity of exact order m modulo p
    let mut zeta = None;
    let mut g = int(1);
    while &g < p {
        let z = pow_mod(&g, &exponent, p);
        if has_exact_order(&z, m_u, p) {
            zeta = Some(z);
            break;
        }
        g += 1;
    }
    let mut zeta = zeta.ok_or_else(|| Error::Exhausted("no primitive root found".into()))?;

    // Newton iteration on T^m - 1; the root is simple since m is a unit mod p.
    let modulus = p.pow(k);
    let m_inv = mod_inverse(m, &modulus).expect("m | p-1 is prime to p");
    for _ in 0..k {
        let zm1 = pow_mod(&zeta, &(m - 1u32), &modulus);
        let f = (&zm1 * &zeta - 1u32).mod_floor(&modulus);
        if f.is_zero() {
            break;
        }
        let inv = mod_inverse(&zm1, &modulus).expect("unit");
        zeta = (&zeta - f * inv * &m_inv).mod_floor(&modulus);
    }

    let mut best: Option<Integer> = None;
    let mut power = int(1);
    for j in 1..=m_u {
        power = (&power * &zeta).mod_floor(&modulus);
        if num_integer::gcd(j, m_u) == 1 && best.as_ref().is_none_or(|b| &power < b) {
            best = Some(power.clone());
        }
    }
    Ok(best.expect("m >= 1"))
}

/// Lexicographically largest descending `(x1, x2, x3, x4)` with
/// `x1^2 + x2^2 + x3^2 + x4^2 = n`.
pub fn four_squares(n: &Integer) -> Result<[Integer; 4]> {
    if n.is_negative() {
        return Err(Error::Negative(n.to_string()));
    }
    fn search(rem: &Integer, cap: &Integer, slots: u32, out: &mut Vec<Integer>) -> bool {
        if slots == 0 {
            return rem.is_zero();
        }
        let top = rem.sqrt().min(cap.clone());
        let mut x = top;
        loop {
            let sq = &x * &x;
            // the remaining slots can hold at most slots * x^2
            if &sq * Integer::from(slots) < *rem {
                return false;
            }
            out.push(x.clone());
            if search(&(rem - &sq), &x, slots - 1, out) {
                return true;
            }
            out.pop();
            if x.is_zero() {
                return false;
            }
            x -= 1;
        }
    }
    let mut out = Vec::with_capacity(4);
    if !search(n, n, 4, &mut out) {
        unreachable!("Lagrange's theorem guarantees a decomposition");
    }
    Ok([out[0].clone(), out[1].clone(), out[2].clone(), out[3].clone()])
}

/// The constant ring underneath the polynomial ring: either all of `Q`, or
/// the rationals whose denominators avoid a finite set of primes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RingMode {
    FullRationals,
    LocalizedAt(Vec<Integer>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingDescriptor {
    mode: RingMode,
    variable: String,
}

impl RingDescriptor {
    pub fn full_rationals() -> Self {
        RingDescriptor {
            mode: RingMode::FullRationals,
            variable: "t".into(),
        }
    }

    pub fn localized_at(primes: Vec<Integer>) -> Result<Self> {
        if primes.is_empty() {
            return Err(Error::InvalidRing("empty prime list".into()));
        }
        for (i, p) in primes.iter().enumerate() {
            require_prime(p)?;
            if primes[..i].contains(p) {
                return Err(Error::InvalidRing(format!("repeated prime {p}")));
            }
        }
        Ok(RingDescriptor {
            mode: RingMode::LocalizedAt(primes),
            variable: "t".into(),
        })
    }

    pub fn with_variable(mut self, name: &str) -> Self {
        self.variable = name.into();
        self
    }

    pub fn mode(&self) -> &RingMode {
        &self.mode
    }

    pub fn variable(&self) -> &str {
        &self.variable
    }

    /// Rational primes without an inverse in the ring.
    pub fn non_invertible_primes(&self) -> &[Integer] {
        match &self.mode {
            RingMode::FullRationals => &[],
            RingMode::LocalizedAt(ps) => ps,
        }
    }

    /// Product of the non-invertible primes, or 1 when the ring contains `Q`.
    pub fn pi(&self) -> Integer {
        self.non_invertible_primes().iter().product()
    }

    pub fn contains(&self, q: &Rational) -> bool {
        self.non_invertible_primes().iter().all(|p| !(q.denom() % p).is_zero())
    }

    pub fn is_unit(&self, q: &Rational) -> bool {
        !q.is_zero()
            && self
                .non_invertible_primes()
                .iter()
                .all(|p| ord_p_unchecked(q, p) == Valuation::Finite(0))
    }
}

impl fmt::Display for RingDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.mode {
            RingMode::FullRationals => write!(f, "Q[{}]", self.variable),
            RingMode::LocalizedAt(ps) => {
                let list: Vec<String> = ps.iter().map(|p| p.to_string()).collect();
                write!(f, "Z_({})[{}]", list.join(","), self.variable)
            }
        }
    }
}

/// `1/b` for `q = a/b` in the ring, with Bézout coefficients `a*x1 + b*x2 = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InverseClosure {
    pub inverse: Rational,
    pub x1: Integer,
    pub x2: Integer,
}

pub fn local_inverse_closure(q: &Rational, ring: &RingDescriptor) -> Result<InverseClosure> {
    if !ring.contains(q) {
        return Err(Error::NotInRing {
            value: q.to_string(),
            ring: ring.to_string(),
        });
    }
    let a = q.numer();
    let b = q.denom();
    // x1 is the least non-negative solution of a*x1 ≡ 1 (mod b)
    let x1 = if b.is_one() {
        Integer::zero()
    } else {
        mod_inverse(a, b).expect("lowest terms")
    };
    let x2 = (Integer::one() - a * &x1) / b;
    debug_assert_eq!(a * &x1 + b * &x2, Integer::one());
    Ok(InverseClosure {
        inverse: Rational::new(Integer::one(), b.clone()),
        x1,
        x2,
    })
}

/// Result of `p*x - 1` in a ring where `p` has no inverse.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NonzeroGate {
    pub value: Rational,
    pub value_is_integer: bool,
    pub x_is_integer: bool,
}

pub fn nonzero_gate(x: &Rational, p: &Integer, ring: &RingDescriptor) -> Result<NonzeroGate> {
    require_prime(p)?;
    if !ring.non_invertible_primes().contains(p) {
        return Err(Error::Precondition(format!("{p} is invertible in {ring}")));
    }
    if !ring.contains(x) {
        return Err(Error::NotInRing {
            value: x.to_string(),
            ring: ring.to_string(),
        });
    }
    let value = x * rat_int(p.clone()) - Rational::one();
    Ok(NonzeroGate {
        value_is_integer: value.is_integer(),
        x_is_integer: x.is_integer(),
        value,
    })
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let parse_int = |t: &str| -> Result<Integer> {
        t.trim()
            .parse::<Integer>()
            .map_err(|_| Error::Parse(format!("bad number {t:?}")))
    };
    match s.split_once('/') {
        Some((n, d)) => {
            let d = parse_int(d)?;
            if d.is_zero() {
                return Err(Error::Parse("zero denominator".into()));
            }
            Ok(Rational::new(parse_int(n)?, d))
        }
        None => Ok(rat_int(parse_int(s)?)),
    }
}

pub fn abs_int(x: &Integer) -> Integer {
    x.abs()
}

/// Serde helper writing big numbers as decimal strings.
pub(crate) fn as_string<T: fmt::Display, S: Serializer>(v: &T, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn trial_factor(mut n: u64) -> Vec<(u64, u32)> {
        let mut out = Vec::new();
        let mut p = 2;
        while p * p <= n {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            if e > 0 {
                out.push((p, e));
            }
            p += 1;
        }
        if n > 1 {
            out.push((n, 1));
        }
        out
    }

    #[test]
    fn factor_large() {
        assert_eq!(factorize_u64(999_983 * 1_000_003), vec![(999_983, 1), (1_000_003, 1)]);
        assert_eq!(factorize_u64(1 << 63), vec![(2, 63)]);
        let p = 4_294_967_291u64;
        assert_eq!(factorize_u64(p * 3 * 3), vec![(3, 2), (p, 1)]);
        assert_eq!(
            factorize_u64(1_000_003 * 1_000_003 * 1009),
            vec![(1009, 1), (1_000_003, 2)]
        );
    }

    proptest! {
        #[test]
        fn factor_matches_trial_division(n in 1u64..2_000_000_000_000) {
            prop_assert_eq!(factorize_u64(n), trial_factor(n));
        }
    }

    #[test]
    fn ord_examples() {
        assert_eq!(ord_p(&rat(651, 1), &int(3)).unwrap(), Valuation::Finite(1));
        assert_eq!(ord_p(&rat(1, 1), &int(5)).unwrap(), Valuation::Finite(0));
        assert_eq!(ord_p(&rat(3, 8), &int(2)).unwrap(), Valuation::Finite(-3));
        assert_eq!(ord_p(&rat(0, 1), &int(7)).unwrap(), Valuation::Infinite);
        assert!(matches!(ord_p(&rat(4, 1), &int(6)), Err(Error::NotPrime(_))));
    }

    #[test]
    fn crt_examples() {
        assert_eq!(crt(&[int(8), int(1)], &[int(9), int(25)]).unwrap(), int(26));
        assert_eq!(crt(&[int(0)], &[int(7)]).unwrap(), int(0));
        assert_eq!(crt(&[int(8), int(1)], &[int(9), int(4)]).unwrap(), int(17));
        let err = crt(&[int(1), int(2)], &[int(6), int(9)]).unwrap_err();
        assert_eq!(err, Error::NonCoprimeModuli("6".into(), "9".into()));
    }

    #[test]
    fn hensel_examples() {
        assert_eq!(hensel_root_of_unity(&int(2), &int(3), 2).unwrap(), int(8));
        assert_eq!(hensel_root_of_unity(&int(4), &int(5), 3).unwrap(), int(57));
        assert_eq!(hensel_root_of_unity(&int(1), &int(7), 2).unwrap(), int(1));
        assert!(matches!(
            hensel_root_of_unity(&int(3), &int(5), 2),
            Err(Error::OrderDoesNotDivide { .. })
        ));
    }

    #[test]
    fn hensel_smallest_by_exhaustion() {
        for (m, p, k) in [(2u64, 5u64, 3u32), (4, 13, 2), (3, 7, 3), (6, 7, 2), (4, 5, 2)] {
            let modulus = int(p as i64).pow(k);
            let got = hensel_root_of_unity(&int(m as i64), &int(p as i64), k).unwrap();
            let first = (0..p.pow(k))
                .map(|c| int(c as i64))
                .find(|c| has_exact_order(c, m, &modulus))
                .unwrap();
            assert_eq!(got, first, "m={m} p={p} k={k}");
        }
    }

    #[test]
    fn four_square_examples() {
        let show = |n: i64| four_squares(&int(n)).unwrap().map(|x| x.to_i64().unwrap());
        assert_eq!(show(0), [0, 0, 0, 0]);
        assert_eq!(show(7), [2, 1, 1, 1]);
        assert_eq!(show(30), [5, 2, 1, 0]);
        assert!(matches!(four_squares(&int(-1)), Err(Error::Negative(_))));
    }

    #[test]
    fn inverse_closure_examples() {
        let full = RingDescriptor::full_rationals();
        let r = local_inverse_closure(&rat(3, 5), &full).unwrap();
        assert_eq!((r.inverse, r.x1, r.x2), (rat(1, 5), int(2), int(-1)));
        let r = local_inverse_closure(&rat(7, 1), &full).unwrap();
        assert_eq!((r.inverse, r.x1, r.x2), (rat(1, 1), int(0), int(1)));
        let z2 = RingDescriptor::localized_at(vec![int(2)]).unwrap();
        assert!(matches!(
            local_inverse_closure(&rat(1, 2), &z2),
            Err(Error::NotInRing { .. })
        ));
    }

    #[test]
    fn nonzero_gate_examples() {
        let z2 = RingDescriptor::localized_at(vec![int(2)]).unwrap();
        let g = nonzero_gate(&rat(3, 1), &int(2), &z2).unwrap();
        assert_eq!(g.value, rat(5, 1));
        let g = nonzero_gate(&rat(1, 3), &int(2), &z2).unwrap();
        assert_eq!(g.value, rat(-1, 3));
        assert!(!g.value_is_integer);
        assert!(nonzero_gate(&rat(1, 2), &int(2), &z2).is_err());
        assert!(nonzero_gate(&rat(1, 2), &int(2), &RingDescriptor::full_rationals()).is_err());
    }

    #[test]
    fn ring_descriptor_validation() {
        assert!(RingDescriptor::localized_at(vec![]).is_err());
        assert!(RingDescriptor::localized_at(vec![int(2), int(2)]).is_err());
        assert!(RingDescriptor::localized_at(vec![int(4)]).is_err());
        let r = RingDescriptor::localized_at(vec![int(2), int(3)]).unwrap();
        assert_eq!(r.pi(), int(6));
        assert!(r.is_unit(&rat(5, 7)));
        assert!(!r.is_unit(&rat(3, 7)));
    }

    #[test]
    fn primality_matches_trial_division() {
        for n in 0u64..5000 {
            let trial = n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0);
            assert_eq!(is_prime_u64(n), trial, "{n}");
        }
        assert!(is_prime_u64(18446744073709551557));
        assert!(is_prime(&(Integer::from(u64::MAX) + 1u32)).is_err());
    }
}
