//! The quaternary form `⟨1, −a, −b, ab⟩` over `Q`: Hilbert symbols with a
//! brute-force local oracle, Eisenstein certificates, the `ξ` constructors for
//! the p-adic and real cases, and the parity gate `h = T·g² + T²`.

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer as _;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use serde::{Serialize, Serializer};
use serde_json::json;

use crate::arith::{factorize_u64, int, is_prime_u64, ord_p, pow_mod, rat, rat_int, Integer, Rational, Valuation};
use crate::error::{Error, Result};
use crate::poly::{sturm_real_roots, Interval, Polynomial, RationalFunction};
use crate::report::Check;

/// Largest modulus the local oracle is willing to exhaust.
pub const ORACLE_MAX_MODULUS: u64 = 5_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Place {
    Finite(u64),
    Real,
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Finite(p) => write!(f, "p:{p}"),
            Place::Real => write!(f, "real"),
        }
    }
}

impl Serialize for Place {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

fn nonzero(x: &Rational) -> Result<()> {
    if x.is_zero() {
        Err(Error::Precondition("Hilbert symbol arguments must be nonzero".into()))
    } else {
        Ok(())
    }
}

/// `num·den`, an integer in the square class of `x`.
fn square_class_rep(x: &Rational) -> Integer {
    x.numer() * x.denom()
}

/// `x = p^v · u` with `u` a `p`-unit.
fn split(x: &Integer, p: u64) -> (u32, Integer) {
    let p = Integer::from(p);
    let mut v = 0;
    let mut u = x.clone();
    while (&u % &p).is_zero() {
        u /= &p;
        v += 1;
    }
    (v, u)
}

fn legendre(u: &Integer, p: u64) -> i8 {
    let pi = Integer::from(p);
    let r = pow_mod(&u.mod_floor(&pi), &Integer::from((p - 1) / 2), &pi);
    if r.is_one() {
        1
    } else {
        -1
    }
}

fn sign(odd: bool) -> i8 {
    if odd {
        -1
    } else {
        1
    }
}

/// `(a, b)_v` by the closed-form local rules over `Q`.
pub fn hilbert_symbol(a: &Rational, b: &Rational, v: Place) -> Result<i8> {
    nonzero(a)?;
    nonzero(b)?;
    let p = match v {
        Place::Real => return Ok(if a.is_negative() && b.is_negative() { -1 } else { 1 }),
        Place::Finite(p) => p,
    };
    if !is_prime_u64(p) {
        return Err(Error::NotPrime(p.to_string()));
    }
    let (al, u) = split(&square_class_rep(a), p);
    let (be, w) = split(&square_class_rep(b), p);
    if p == 2 {
        let eps = |x: &Integer| x.mod_floor(&int(4)) == int(3);
        let omega = |x: &Integer| {
            let r = x.mod_floor(&int(8));
            r == int(3) || r == int(5)
        };
        let e = (eps(&u) && eps(&w)) as u32 + (al % 2) * omega(&w) as u32 + (be % 2) * omega(&u) as u32;
        return Ok(sign(e % 2 == 1));
    }
    let mut s = sign((al * be) % 2 == 1 && p % 4 == 3);
    if be % 2 == 1 {
        s *= legendre(&u, p);
    }
    if al % 2 == 1 {
        s *= legendre(&w, p);
    }
    Ok(s)
}

/// `k ≥ 1 + 2·max(ord_p a, ord_p b)` for odd `p`, and `3 + 2·max` at 2.
pub fn oracle_precision(a: &Integer, b: &Integer, p: u64) -> u32 {
    let base = if p == 2 { 3 } else { 1 };
    base + 2 * split(a, p).0.max(split(b, p).0)
}

/// Brute force: `+1` iff `z² ≡ a x² + b y² (mod p^k)` has a primitive solution.
/// A primitive solution has a unit coordinate, which can be scaled to 1.
pub fn local_solubility_oracle(a: &Integer, b: &Integer, p: u64, k: u32) -> Result<i8> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::Precondition("oracle arguments must be nonzero".into()));
    }
    if !is_prime_u64(p) {
        return Err(Error::NotPrime(p.to_string()));
    }
    let need = oracle_precision(a, b, p);
    if k < need {
        return Err(Error::Precondition(format!("precision {k} below the required {need}")));
    }
    let m = p
        .checked_pow(k)
        .filter(|&m| m <= ORACLE_MAX_MODULUS)
        .ok_or_else(|| Error::OutOfRange(format!("{p}^{k} exceeds the oracle limit")))?;
    let mi = Integer::from(m);
    let ar = a.mod_floor(&mi).to_u64().unwrap();
    let br = b.mod_floor(&mi).to_u64().unwrap();
    let mulm = |x: u64, y: u64| ((x as u128 * y as u128) % m as u128) as u64;

    let mut square = vec![false; m as usize];
    let mut b_square = vec![false; m as usize];
    for z in 0..m {
        let z2 = mulm(z, z);
        square[z2 as usize] = true;
        b_square[mulm(br, z2) as usize] = true;
    }
    for t in 0..m {
        let t2 = mulm(t, t);
        // x = 1, y = t
        if square[((ar + mulm(br, t2)) % m) as usize] {
            return Ok(1);
        }
        // y = 1, x = t
        if square[((mulm(ar, t2) + br) % m) as usize] {
            return Ok(1);
        }
        // z = 1, x = t: need b y² ≡ 1 − a t²
        if b_square[((1 + m - mulm(ar, t2) % m) % m) as usize] {
            return Ok(1);
        }
    }
    Ok(-1)
}

/// Places where `(a, b)_v` can be `−1`: primes dividing `2·num·den` and the real place.
pub fn relevant_places(a: &Rational, b: &Rational) -> Result<Vec<Place>> {
    let mut primes = std::collections::BTreeSet::from([2u64]);
    for x in [a.numer(), a.denom(), b.numer(), b.denom()] {
        let v = x
            .abs()
            .to_u64()
            .ok_or_else(|| Error::OutOfRange(format!("{x} exceeds 64 bits")))?;
        primes.extend(factorize_u64(v).into_iter().map(|(p, _)| p));
    }
    let mut out: Vec<Place> = primes.into_iter().map(Place::Finite).collect();
    out.push(Place::Real);
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FormDiagnosis {
    #[serde(serialize_with = "crate::arith::as_string")]
    pub a: Rational,
    #[serde(serialize_with = "crate::arith::as_string")]
    pub b: Rational,
    pub symbols: BTreeMap<Place, i8>,
    pub anisotropic_places: Vec<Place>,
    pub globally_isotropic: bool,
    pub reciprocity_product: i8,
    pub local_statements: Vec<Check>,
}

fn is_unit_at(x: &Rational, p: u64) -> bool {
    ord_p(x, &Integer::from(p))
        .map(|v| v == Valuation::Finite(0))
        .unwrap_or(false)
}

fn unit_residue(x: &Rational, p: u64) -> Integer {
    let pi = Integer::from(p);
    let inv = crate::arith::mod_inverse(x.denom(), &pi).expect("unit denominator");
    (x.numer() * inv).mod_floor(&pi)
}

/// Symbols of `⟨1, −a, −b, ab⟩` at every relevant place, with the three
/// local rules (non-residue with odd order, two units, unit with even order)
/// re-checked wherever they apply.
pub fn anisotropy_report(a: &Rational, b: &Rational) -> Result<FormDiagnosis> {
    nonzero(a)?;
    nonzero(b)?;
    let places = relevant_places(a, b)?;
    let mut symbols = BTreeMap::new();
    for v in &places {
        symbols.insert(*v, hilbert_symbol(a, b, *v)?);
    }
    let anisotropic_places: Vec<Place> = symbols.iter().filter(|(_, s)| **s == -1).map(|(v, _)| *v).collect();
    let reciprocity_product = symbols.values().product();

    let (mut r1, mut r2, mut r3) = (Vec::new(), Vec::new(), Vec::new());
    let (mut ok1, mut ok2, mut ok3) = (true, true, true);
    for (v, s) in &symbols {
        let Place::Finite(p) = *v else { continue };
        if p == 2 || !is_unit_at(a, p) {
            continue;
        }
        let ob = ord_p(b, &Integer::from(p))?.finite().expect("b nonzero");
        if ob % 2 != 0 && legendre(&unit_residue(a, p), p) == -1 {
            r1.push(p);
            ok1 &= *s == -1;
        }
        if ob == 0 {
            r2.push(p);
            ok2 &= *s == 1;
        }
        if ob % 2 == 0 {
            r3.push(p);
            ok3 &= *s == 1;
        }
    }
    let local_statements = vec![
        Check::pass_if("nonresidue-odd-order-anisotropic", ok1, json!({ "primes": r1 })),
        Check::pass_if("units-isotropic", ok2, json!({ "primes": r2 })),
        Check::pass_if("even-order-isotropic", ok3, json!({ "primes": r3 })),
    ];
    Ok(FormDiagnosis {
        a: a.clone(),
        b: b.clone(),
        globally_isotropic: anisotropic_places.is_empty(),
        symbols,
        anisotropic_places,
        reciprocity_product,
        local_statements,
    })
}

/// No solution of `X² − aY² − bZ² + abW² = h` can have odd degree when the
/// form is anisotropic over `Q`: the top coefficients never cancel. Sampled
/// on random polynomials of degree ≤ 2.
pub fn odd_degree_spot_check<R: Rng>(a: &Rational, b: &Rational, samples: usize, rng: &mut R) -> Result<Check> {
    let diag = anisotropy_report(a, b)?;
    let mut odd = 0;
    for _ in 0..samples {
        let mut rand_poly =
            || Polynomial::from_ints(&[rng.gen_range(-4..=4), rng.gen_range(-4..=4), rng.gen_range(-4..=4)]);
        let (x, y, z, w) = (rand_poly(), rand_poly(), rand_poly(), rand_poly());
        let value = &(&(&x * &x) - &(&y * &y).scale(a)) - &(&(&z * &z).scale(b) - &(&w * &w).scale(&(a * b)));
        if value.degree().is_some_and(|d| d % 2 == 1) {
            odd += 1;
        }
    }
    Ok(Check::pass_if(
        format!("qform/({a},{b})/no-odd-degree-values"),
        diag.globally_isotropic || odd == 0,
        json!({ "samples": samples, "odd_degree_values": odd, "anisotropic": !diag.globally_isotropic }),
    ))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EisensteinCert {
    pub p: u64,
    pub degree: usize,
    pub r: Option<u32>,
    /// `ord_p` of each coefficient, constant term first.
    pub valuations: Vec<Valuation>,
    pub certified: bool,
}

/// Looks for `r > 1` with `ord a_m = 0`, `ord a_i ≥ r` for `0 < i < m`,
/// `ord a_0 = r − 1` and `gcd(m, r − 1) = 1`.
pub fn eisenstein_certify(f: &Polynomial, p: u64) -> Result<EisensteinCert> {
    let m = f
        .degree()
        .filter(|&m| m >= 2)
        .ok_or_else(|| Error::Precondition("Eisenstein certificates need degree at least 2".into()))?;
    let pi = Integer::from(p);
    let valuations: Vec<Valuation> = f.coeffs().iter().map(|c| ord_p(c, &pi)).collect::<Result<_>>()?;
    let top = valuations.iter().filter_map(|v| v.finite()).max().unwrap_or(0).max(1);
    let fits = |r: i64| {
        valuations[m] == Valuation::Finite(0)
            && valuations[1..m].iter().all(|v| *v >= Valuation::Finite(r))
            && valuations[0] == Valuation::Finite(r - 1)
            && (m as i64).gcd(&(r - 1)) == 1
    };
    let r = (2..=top + 1).find(|&r| fits(r));
    Ok(EisensteinCert {
        p,
        degree: m,
        r: r.map(|r| r as u32),
        valuations,
        certified: r.is_some(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct XiTriple {
    #[serde(serialize_with = "crate::arith::as_string")]
    pub xi1: Rational,
    #[serde(serialize_with = "crate::arith::as_string")]
    pub xi2: Rational,
    #[serde(serialize_with = "crate::arith::as_string")]
    pub xi3: Rational,
}

impl XiTriple {
    /// `ξ₁ f³ + ξ₂ T + ξ₃`.
    pub fn target(&self, f: &Polynomial) -> Polynomial {
        &(&f.pow(3).scale(&self.xi1) + &Polynomial::t().scale(&self.xi2)) + &Polynomial::constant(self.xi3.clone())
    }
}

/// The target rewritten in `W = p^r T` at one prime, with its certificate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LocalWitness {
    pub p: u64,
    pub shift: u32,
    pub h: Polynomial,
    pub cert: EisensteinCert,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PadicXi {
    pub xi: XiTriple,
    pub target: Polynomial,
    pub witnesses: Vec<LocalWitness>,
}

fn require_even_nonconstant(f: &Polynomial) -> Result<usize> {
    match f.degree() {
        None | Some(0) => Err(Error::Precondition("f is a constant".into())),
        Some(d) if d % 2 == 1 => Err(Error::Precondition(format!(
            "deg f = {d} is odd; that is the no-solution direction"
        ))),
        Some(d) => Ok(d),
    }
}

/// `ξ₁ = ξ₂ = ∏ pᵢ^{n·rᵢ} / a_n` and `ξ₃ = ∏ pᵢ`, so the target is `ξ₁·F + ξ₃`
/// with `F = f³ + T` of degree `n`; `rᵢ` is the least shift making every
/// `pᵢ^{rᵢ}·aⱼ/a_n` divisible by `pᵢ²`. Each prime gets its own Eisenstein
/// certificate in `W = pᵢ^{rᵢ}·T`.
pub fn padic_xi_construct(f: &Polynomial, primes: &[u64]) -> Result<PadicXi> {
    require_even_nonconstant(f)?;
    if primes.is_empty() {
        return Err(Error::Precondition("no anisotropic primes given".into()));
    }
    for &p in primes {
        if !is_prime_u64(p) {
            return Err(Error::NotPrime(p.to_string()));
        }
    }
    let big_f = &f.pow(3) + &Polynomial::t();
    let n = big_f.degree().expect("nonconstant");
    let an = big_f.leading();
    let mut shifts = Vec::new();
    for &p in primes {
        let pi = Integer::from(p);
        let mut r = 0i64;
        for c in &big_f.coeffs()[..n] {
            if let Valuation::Finite(v) = ord_p(&(c / &an), &pi)? {
                r = r.max(2 - v);
            }
        }
        shifts.push(r as u32);
    }
    let mut xi1 = an.recip();
    let mut xi3 = Rational::one();
    for (&p, &r) in primes.iter().zip(&shifts) {
        xi1 *= rat_int(Integer::from(p).pow(n as u32 * r));
        xi3 *= rat_int(Integer::from(p));
    }
    let xi = XiTriple {
        xi2: xi1.clone(),
        xi1,
        xi3,
    };
    let target = xi.target(f);
    let mut witnesses = Vec::new();
    for (&p, &r) in primes.iter().zip(&shifts) {
        let scale = rat_int(Integer::from(p).pow(r)).recip();
        let h = target.compose(&Polynomial::t().scale(&scale));
        let cert = eisenstein_certify(&h, p)?;
        witnesses.push(LocalWitness { p, shift: r, h, cert });
    }
    Ok(PadicXi { xi, target, witnesses })
}

/// The certificate conditions the acceptance gate asks for.
pub fn padic_xi_checks(f: &Polynomial, out: &PadicXi) -> Vec<Check> {
    out.witnesses
        .iter()
        .map(|w| {
            let r = w.cert.r.unwrap_or(0) as usize;
            let ok = w.cert.certified && w.cert.degree % 2 == 0 && r >= 2 && w.cert.degree.gcd(&(r - 1)) == 1;
            Check::pass_if(
                format!("padic-xi/{}/p{}", f.to_text("T"), w.p),
                ok,
                json!({ "xi": out.xi, "h": w.h, "cert": w.cert }),
            )
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RealXi {
    pub xi: XiTriple,
    pub h: Polynomial,
    pub sturm_count: usize,
    pub doublings: u32,
}

/// `ξ₁ = ±1` so the top coefficient of `ξ₁f³` is positive, `ξ₂ = 1`, and
/// `ξ₃` starts at `1 +` the Cauchy bound of `ξ₁f³ + T`, doubling until `h` has
/// no real root.
pub fn real_xi_construct(f: &Polynomial) -> Result<RealXi> {
    require_even_nonconstant(f)?;
    let xi1 = if f.leading().is_positive() {
        rat(1, 1)
    } else {
        rat(-1, 1)
    };
    let base = &f.pow(3).scale(&xi1) + &Polynomial::t();
    let mut xi3 = base.cauchy_bound() + Rational::one();
    let mut doublings = 0;
    loop {
        let h = &base + &Polynomial::constant(xi3.clone());
        let count = sturm_real_roots(&h, &Interval::WholeLine);
        if count == 0 {
            return Ok(RealXi {
                xi: XiTriple {
                    xi1,
                    xi2: Rational::one(),
                    xi3,
                },
                h,
                sturm_count: 0,
                doublings,
            });
        }
        if doublings >= 200 {
            return Err(Error::Exhausted("no root-free shift found".into()));
        }
        xi3 *= rat(2, 1);
        doublings += 1;
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EvenOrderGate {
    pub h: String,
    pub ord_g: Valuation,
    pub ord_h: Valuation,
    pub h_order_even: bool,
    pub biconditional: bool,
}

/// `h = T·g² + T²` and the orders of `g` and `h` at the pole of `T`.
pub fn even_order_gate(g: &RationalFunction) -> EvenOrderGate {
    let t = RationalFunction::from_poly(Polynomial::t());
    let t2 = RationalFunction::from_poly(Polynomial::t().pow(2));
    let h = t.mul(&g.mul(g)).add(&t2);
    let ord_g = g.ord_at_infinity();
    let ord_h = h.ord_at_infinity();
    let h_order_even = matches!(ord_h, Valuation::Finite(v) if v % 2 == 0);
    let g_nonneg = ord_g >= Valuation::Finite(0);
    EvenOrderGate {
        h: h.to_string(),
        ord_g,
        ord_h,
        h_order_even,
        biconditional: g_nonneg == h_order_even,
    }
}

/// `⟨1, −5, 3, −15⟩`: `a = 5`, `b = −3`, both `≡ 1 mod 4`, coprime, and
/// anisotropic exactly at 3 and 5.
pub fn test_form() -> (Rational, Rational) {
    (rat(5, 1), rat(-3, 1))
}

/// The finite anisotropic primes of `(a, b)`.
pub fn anisotropic_primes(a: &Rational, b: &Rational) -> Result<Vec<u64>> {
    Ok(anisotropy_report(a, b)?
        .anisotropic_places
        .into_iter()
        .filter_map(|v| match v {
            Place::Finite(p) => Some(p),
            Place::Real => None,
        })
        .collect())
}

/// Over `Q` the sum of four squares `⟨1,1,1,1⟩ = ⟨1, −a, −b, ab⟩` with
/// `a = b = −1` stays anisotropic at 2 as well as at the real place.
pub fn real_form_places() -> Result<Vec<Place>> {
    Ok(anisotropy_report(&rat(-1, 1), &rat(-1, 1))?.anisotropic_places)
}
