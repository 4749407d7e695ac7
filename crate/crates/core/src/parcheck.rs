//! Indexing of `ℤ[T]`, the `Pos` relation, bounded five-squares identities
//! and the `Par` relation over `ℚ`.

use std::collections::{BTreeSet, HashMap};

use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use serde::Serialize;
use serde_json::json;

use crate::arith::{as_string, rat_int, Integer, Rational};
use crate::error::{Error, Result};
use crate::pell::{pell_pair, PellPair};
use crate::poly::{squarefree_part, sturm_real_roots, yun_decomposition, Interval, Polynomial};
use crate::report::{Check, Status};

const MAX_CODE_BITS: usize = 1 << 22;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ThetaCode {
    #[serde(serialize_with = "as_string")]
    pub index: Integer,
    pub polynomial: Polynomial,
}

fn unzigzag(z: usize) -> Integer {
    let z = Integer::from(z);
    if (&z % 2u32).is_zero() {
        z / 2u32
    } else {
        -((z + 1u32) / 2u32)
    }
}

fn zigzag(c: &Integer) -> Result<usize> {
    let z = if c.is_negative() { -(c * 2u32) - 1u32 } else { c * 2u32 };
    z.to_usize()
        .filter(|z| *z < MAX_CODE_BITS)
        .ok_or_else(|| Error::OutOfRange(format!("coefficient {c}")))
}

/// `θ(n)`. See `docs/theta.md` for the bit layout.
pub fn theta(n: &Integer) -> Result<Polynomial> {
    if n < &Integer::one() {
        return Err(Error::OutOfRange(format!("theta index {n}")));
    }
    if n.is_one() {
        return Ok(Polynomial::zero());
    }
    let bits = (n - 1u32).to_str_radix(2);
    let mut z: Vec<usize> = bits[1..].split('0').map(str::len).collect();
    *z.last_mut().expect("split yields a block") += 1;
    Ok(Polynomial::from_integers(
        &z.into_iter().map(unzigzag).collect::<Vec<_>>(),
    ))
}

pub fn theta_inverse(p: &Polynomial) -> Result<Integer> {
    if p.is_zero() {
        return Ok(Integer::one());
    }
    let coeffs = p
        .integer_coeffs()
        .ok_or_else(|| Error::Precondition(format!("{p} does not have integer coefficients")))?;
    let mut z = coeffs.iter().map(zigzag).collect::<Result<Vec<_>>>()?;
    *z.last_mut().expect("nonzero polynomial") -= 1;
    let mut bits = String::from("1");
    for (i, zi) in z.iter().enumerate() {
        if i > 0 {
            bits.push('0');
        }
        bits.extend(std::iter::repeat_n('1', *zi));
    }
    Ok(Integer::parse_bytes(bits.as_bytes(), 2).expect("binary digits") + 1u32)
}

pub fn theta_code(n: &Integer) -> Result<ThetaCode> {
    Ok(ThetaCode {
        index: n.clone(),
        polynomial: theta(n)?,
    })
}

/// `(X_n, Y_n)` with `X_n − √(T² − 1)·Y_n = (T − √(T² − 1))ⁿ`.
pub fn chebyshev_y(n: u32) -> PellPair {
    pell_pair(&Polynomial::t(), n as i64).expect("T is nonconstant")
}

fn odd_multiplicity_part(f: &Polynomial) -> Polynomial {
    yun_decomposition(f)
        .into_iter()
        .enumerate()
        .filter(|(i, _)| i % 2 == 0)
        .fold(Polynomial::one(), |acc, (_, a)| &acc * &a)
}

/// `F(t) ≥ 0` for every real `t`.
pub fn pos_check(f: &Polynomial) -> bool {
    let Some(d) = f.degree() else {
        return true;
    };
    if d % 2 == 1 || f.leading().is_negative() {
        return false;
    }
    // cheap rejection before the Sturm count
    if (0..=(d / 2) as i64).any(|x| f.eval_int(x).is_negative()) {
        return false;
    }
    sturm_real_roots(&odd_multiplicity_part(f), &Interval::WholeLine) == 0
}

fn isolate(s: &Polynomial, lo: Rational, hi: Rational, out: &mut Vec<(Rational, Rational)>) {
    match sturm_real_roots(s, &Interval::Closed(lo.clone(), hi.clone())) {
        0 => {}
        1 => out.push((lo, hi)),
        _ => {
            let two = Rational::from_integer(2.into());
            let mut mid = (&lo + &hi) / &two;
            while s.eval(&mid).is_zero() {
                mid = (&mid + &hi) / &two;
            }
            isolate(s, lo, mid.clone(), out);
            isolate(s, mid, hi, out);
        }
    }
}

/// A rational point where `F` is negative, found by isolating every real
/// root and probing both sides of each one.
pub fn negative_point(f: &Polynomial) -> Option<Rational> {
    if f.is_zero() {
        return None;
    }
    let b = f.cauchy_bound() + Rational::one();
    let mut points = vec![-b.clone(), b.clone()];
    if !f.is_constant() {
        let mut intervals = Vec::new();
        isolate(&squarefree_part(f), -b.clone(), b, &mut intervals);
        for (lo, hi) in intervals {
            points.push(lo);
            points.push(hi);
        }
    }
    points.into_iter().find(|x| f.eval(x).is_negative())
}

/// Search limits for five-squares decompositions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FiveSquaresBounds {
    pub max_g: u32,
    /// Largest squared norm of a coefficient vector the enumeration accepts.
    pub max_norm: i64,
}

impl Default for FiveSquaresBounds {
    fn default() -> Self {
        FiveSquaresBounds { max_g: 2, max_norm: 64 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "kebab-case")]
pub enum FiveSquares {
    Found {
        g: u32,
        squares: Vec<Polynomial>,
        /// Decompositions at this `g`, counted up to signs and order.
        witness_count: usize,
    },
    NotFound {
        reason: String,
    },
    Exhausted {
        reason: String,
    },
}

pub fn five_squares_verify(g: &Integer, f: &Polynomial, squares: &[Polynomial]) -> bool {
    if g.is_zero() || squares.len() != 5 {
        return false;
    }
    let lhs = f.scale(&rat_int(g * g));
    let rhs = squares.iter().fold(Polynomial::zero(), |acc, s| &acc + &(s * s));
    lhs == rhs
}

/// Every vector in `ℤ⁵` of squared norm `n`.
fn vectors_of_norm(n: i64) -> Vec<[i64; 5]> {
    fn go(n: i64, i: usize, cur: &mut [i64; 5], out: &mut Vec<[i64; 5]>) {
        if i == 5 {
            if n == 0 {
                out.push(*cur);
            }
            return;
        }
        let mut x = 0i64;
        while x * x <= n {
            for v in if x == 0 { vec![0] } else { vec![x, -x] } {
                cur[i] = v;
                go(n - x * x, i + 1, cur, out);
            }
            x += 1;
        }
        cur[i] = 0;
    }
    let mut out = Vec::new();
    if n >= 0 {
        go(n, 0, &mut [0; 5], &mut out);
    }
    out
}

fn dot(a: &[i64; 5], b: &[i64; 5]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Representatives of the signed-permutation classes: entries non-negative
/// and non-increasing.
fn canonical(v: &[i64; 5]) -> bool {
    v.iter().all(|x| *x >= 0) && v.windows(2).all(|w| w[0] >= w[1])
}

/// Sorted list of the five polynomials, each with positive leading entry.
fn orbit_key(cols: &[[i64; 5]]) -> Vec<Vec<i64>> {
    let mut polys: Vec<Vec<i64>> = (0..5)
        .map(|i| {
            let mut p: Vec<i64> = cols.iter().map(|c| c[i]).collect();
            if p.iter().rev().find(|x| **x != 0).is_some_and(|x| *x < 0) {
                p.iter_mut().for_each(|x| *x = -*x);
            }
            p
        })
        .collect();
    polys.sort();
    polys
}

struct NormCache {
    max_norm: i64,
    vectors: HashMap<i64, Vec<[i64; 5]>>,
    truncated: bool,
}

impl NormCache {
    fn get(&mut self, n: i64) -> &[[i64; 5]] {
        if n > self.max_norm {
            self.truncated = true;
            return &[];
        }
        self.vectors.entry(n).or_insert_with(|| vectors_of_norm(n))
    }
}

/// All decompositions `g²F = ΣFᵢ²` with `Fᵢ ∈ ℤ[T]` for one `g`, as
/// coefficient columns (column `j` holds the `T^j` coefficients).
fn decompositions(target: &[i64], cache: &mut NormCache) -> BTreeSet<Vec<Vec<i64>>> {
    let mut found = BTreeSet::new();
    match target.len() {
        1 => {
            for v0 in cache.get(target[0]).to_vec() {
                found.insert(orbit_key(&[v0]));
            }
        }
        3 => {
            let tops: Vec<_> = cache.get(target[2]).iter().copied().filter(canonical).collect();
            let lows = cache.get(target[0]).to_vec();
            for v1 in &tops {
                for v0 in &lows {
                    if 2 * dot(v0, v1) == target[1] {
                        found.insert(orbit_key(&[*v0, *v1]));
                    }
                }
            }
        }
        5 => {
            let tops: Vec<_> = cache.get(target[4]).iter().copied().filter(canonical).collect();
            let lows = cache.get(target[0]).to_vec();
            for v2 in &tops {
                for v0 in &lows {
                    let n1 = target[2] - 2 * dot(v0, v2);
                    for v1 in cache.get(n1).to_vec() {
                        if 2 * dot(v0, &v1) == target[1] && 2 * dot(&v1, v2) == target[3] {
                            found.insert(orbit_key(&[*v0, v1, *v2]));
                        }
                    }
                }
            }
        }
        _ => unreachable!("even degree at most 4"),
    }
    found
}

/// Smallest `g ≤ bounds.max_g` with `g²F` a sum of five squares in `ℤ[T]`
/// of polynomials of degree `≤ deg F / 2`.
pub fn five_squares_search(f: &Polynomial, bounds: &FiveSquaresBounds) -> FiveSquares {
    if !pos_check(f) {
        return FiveSquares::NotFound {
            reason: "F takes negative values".into(),
        };
    }
    if f.is_zero() {
        return FiveSquares::Found {
            g: 1,
            squares: vec![Polynomial::zero(); 5],
            witness_count: 1,
        };
    }
    let d = f.degree().unwrap_or(0);
    if d > 4 {
        return FiveSquares::Exhausted {
            reason: format!("degree {d} above the search limit 4"),
        };
    }
    let coeffs: Option<Vec<i64>> = f
        .integer_coeffs()
        .and_then(|cs| cs.iter().map(ToPrimitive::to_i64).collect());
    let Some(coeffs) = coeffs else {
        return FiveSquares::Exhausted {
            reason: "coefficients are not small integers".into(),
        };
    };
    let mut cache = NormCache {
        max_norm: bounds.max_norm,
        vectors: HashMap::new(),
        truncated: false,
    };
    for g in 1..=bounds.max_g {
        let g2 = (g * g) as i64;
        let target: Vec<i64> = coeffs.iter().map(|c| c * g2).collect();
        let found = decompositions(&target, &mut cache);
        if let Some(first) = found.iter().next() {
            let squares = first.iter().map(|p| Polynomial::from_ints(p)).collect();
            return FiveSquares::Found {
                g,
                squares,
                witness_count: found.len(),
            };
        }
    }
    let note = if cache.truncated { ", norm bound reached" } else { "" };
    FiveSquares::Exhausted {
        reason: format!("no decomposition with g <= {}{note}", bounds.max_g),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ParTuple {
    pub n: u64,
    #[serde(serialize_with = "as_string")]
    pub b: Integer,
    #[serde(serialize_with = "as_string")]
    pub c: Integer,
    pub d: u64,
    /// `None` when the bounded search for the smallest `g` ran out.
    pub g: Option<u64>,
    #[serde(serialize_with = "as_string")]
    pub v: Integer,
}

impl ParTuple {
    /// The evaluation point `2b + 2c + d`.
    pub fn point(&self) -> Integer {
        &self.b * 2u32 + &self.c * 2u32 + self.d
    }
}

fn degree_or_zero(p: &Polynomial) -> u64 {
    p.degree().unwrap_or(0) as u64
}

/// `Y² + c − F² − 1`.
fn pos_target(y: &Polynomial, c: &Integer, f: &Polynomial) -> Polynomial {
    &(&(y * y) + &Polynomial::constant(rat_int(c - 1u32))) - &(f * f)
}

/// Smallest positive `c` with `Y² + c − P² − 1 ≥ 0`.
fn minimal_c(y: &Polynomial, p: &Polynomial) -> Integer {
    let ok = |c: &Integer| pos_check(&pos_target(y, c, p));
    let mut hi = Integer::one();
    while !ok(&hi) {
        hi *= 2u32;
    }
    let mut lo = &hi / 2u32;
    // invariant: ok(hi), !ok(lo) unless lo == 0
    while &hi - &lo > Integer::one() {
        let mid = (&lo + &hi) / 2u32;
        if ok(&mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}

fn y_bound(y: &Polynomial, d: u64) -> Integer {
    (0..=d as i64)
        .map(|x| y.eval_int(x).to_integer())
        .fold(Integer::zero(), |m, v| m.max(v))
}

/// The tuple the definition determines for `n`, with `g` from a bounded search.
pub fn find_par_tuple(n: u64, bounds: &FiveSquaresBounds) -> Result<ParTuple> {
    let p = theta(&Integer::from(n))?;
    let d = degree_or_zero(&p);
    let y = chebyshev_y(d as u32 + 2).g;
    let c = minimal_c(&y, &p);
    let g = match five_squares_search(&pos_target(&y, &c, &p), bounds) {
        FiveSquares::Found { g, .. } => Some(g as u64),
        _ => None,
    };
    let b = y_bound(&y, d);
    let mut t = ParTuple {
        n,
        b,
        c,
        d,
        g,
        v: Integer::zero(),
    };
    t.v = p.eval(&rat_int(t.point())).to_integer();
    Ok(t)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ParVerdict {
    pub tuple: ParTuple,
    pub accepted: bool,
    pub conditions: Vec<Check>,
}

/// Checks the seven conditions of `Par` one by one.
pub fn par_eval(t: &ParTuple, bounds: &FiveSquaresBounds) -> Result<ParVerdict> {
    let mut conditions = Vec::new();
    if t.n == 0 {
        return Err(Error::OutOfRange("theta index 0".into()));
    }
    let p = theta(&Integer::from(t.n))?;
    conditions.push(Check::pass_if("par/1-index", true, json!({ "P_n": p.to_string() })));
    let signs = !t.b.is_negative() && !t.c.is_negative();
    conditions.push(Check::pass_if(
        "par/2-signs",
        signs,
        json!({ "b": t.b.to_string(), "c": t.c.to_string() }),
    ));
    let deg = degree_or_zero(&p);
    conditions.push(Check::pass_if(
        "par/3-degree",
        deg == t.d,
        json!({ "deg P_n": deg, "d": t.d }),
    ));

    let y = chebyshev_y(t.d as u32 + 2).g;
    let at_c = pos_check(&pos_target(&y, &t.c, &p));
    let below = t.c.is_one() || !pos_check(&pos_target(&y, &(&t.c - 1u32), &p));
    conditions.push(Check::pass_if(
        "par/4-c-minimal",
        t.c.is_positive() && at_c && below,
        json!({ "Y": y.to_string(), "pos_at_c": at_c, "fails_below_c": below }),
    ));

    conditions.push(g_condition(t, &y, &p, bounds));

    let values: Vec<String> = (0..=t.d as i64).map(|x| y.eval_int(x).to_string()).collect();
    let bounded = (0..=t.d as i64).all(|x| y.eval_int(x) <= rat_int(t.b.clone()));
    conditions.push(Check::pass_if("par/6-b-bound", bounded, json!({ "Y(0..=d)": values })));

    let value = p.eval(&rat_int(t.point()));
    conditions.push(Check::pass_if(
        "par/7-value",
        value == rat_int(t.v.clone()),
        json!({ "point": t.point().to_string(), "P_n(point)": value.to_string(), "v": t.v.to_string() }),
    ));
    let accepted = conditions.iter().all(Check::passed);
    Ok(ParVerdict {
        tuple: t.clone(),
        accepted,
        conditions,
    })
}

fn g_condition(t: &ParTuple, y: &Polynomial, p: &Polynomial, bounds: &FiveSquaresBounds) -> Check {
    const NAME: &str = "par/5-g-minimal";
    let q = pos_target(y, &t.c, p);
    let Some(g) = t.g else {
        return Check::new(NAME, Status::Exhausted, json!({ "reason": "g not determined" }));
    };
    let limit = FiveSquaresBounds {
        max_g: u32::try_from(g).unwrap_or(u32::MAX).max(1),
        ..*bounds
    };
    match five_squares_search(&q, &limit) {
        FiveSquares::Found {
            g: found,
            squares,
            witness_count,
        } => Check::pass_if(
            NAME,
            found as u64 == g,
            json!({ "smallest_g": found, "squares": squares, "witness_count": witness_count }),
        ),
        FiveSquares::NotFound { reason } => Check::pass_if(NAME, false, json!({ "reason": reason })),
        FiveSquares::Exhausted { reason } => Check::new(NAME, Status::Exhausted, json!({ "reason": reason })),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReconstructVerdict {
    pub accepted: bool,
    pub checks: Vec<Check>,
}

/// Whether `F` meets the tuple's positivity and value conditions.
/// A five-squares witness `(g, F₁..F₅)` may stand in for the `Pos` test.
pub fn reconstruct_check(
    f: &Polynomial,
    t: &ParTuple,
    witness: Option<(&Integer, &[Polynomial])>,
) -> Result<ReconstructVerdict> {
    if !f.is_integral() {
        return Err(Error::Precondition(format!("{f} does not have integer coefficients")));
    }
    let y = chebyshev_y(t.d as u32 + 2).g;
    let q = pos_target(&y, &t.c, f);
    let (pos, via) = match witness {
        Some((g, squares)) if five_squares_verify(g, &q, squares) => (true, "five-squares"),
        _ => (pos_check(&q), "sturm"),
    };
    let value = f.eval(&rat_int(t.point()));
    let checks = vec![
        Check::pass_if("reconstruct/pos", pos, json!({ "via": via })),
        Check::pass_if(
            "reconstruct/value",
            value == rat_int(t.v.clone()),
            json!({ "F(point)": value.to_string(), "v": t.v.to_string() }),
        ),
    ];
    Ok(ReconstructVerdict {
        accepted: checks.iter().all(Check::passed),
        checks,
    })
}

/// `P + (2b + 2c + d − T)·S` for `count` random `S` of degree `≤ d` with
/// every coefficient in `[−3, 3] ∖ {0}`.
pub fn perturbations<R: Rng>(p: &Polynomial, t: &ParTuple, count: usize, rng: &mut R) -> Vec<Polynomial> {
    let shift = &Polynomial::constant(rat_int(t.point())) - &Polynomial::t();
    (0..count)
        .map(|_| {
            let deg = rng.gen_range(0..=t.d as usize);
            let coeffs: Vec<i64> = (0..=deg)
                .map(|_| {
                    let c: i64 = rng.gen_range(1..=3);
                    if rng.gen_bool(0.5) {
                        c
                    } else {
                        -c
                    }
                })
                .collect();
            p + &(&shift * &Polynomial::from_ints(&coeffs))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn p(s: &str) -> Polynomial {
        s.parse().unwrap()
    }

    fn th(n: i64) -> Polynomial {
        theta(&int(n)).unwrap()
    }

    #[test]
    fn theta_values() {
        assert!(th(1).is_zero());
        assert_eq!(th(2), p("-1"));
        assert_eq!(th(3), p("-T"));
        assert_eq!(th(4), p("1"));
        assert_eq!(th(6), p("T"));
        assert_eq!(th(30), p("T + 1"));
        assert_eq!(theta(&theta_inverse(&p("T + 1")).unwrap()).unwrap(), p("T + 1"));
        assert!(theta(&int(0)).is_err());
        assert!(theta_inverse(&p("1/2")).is_err());
    }

    #[test]
    fn theta_round_trip() {
        for n in 1..=100_000i64 {
            assert_eq!(theta_inverse(&th(n)).unwrap(), int(n));
        }
    }

    #[test]
    fn theta_surjective_small() {
        // height <= 8, degree <= 2 here; the acceptance suite covers degree 4
        let mut seen = BTreeSet::new();
        for a in -8..=8 {
            for b in -8..=8 {
                for c in -8..=8 {
                    let f = Polynomial::from_ints(&[a, b, c]);
                    let n = theta_inverse(&f).unwrap();
                    assert_eq!(theta(&n).unwrap(), f);
                    assert!(seen.insert(n));
                }
            }
        }
    }

    #[test]
    fn chebyshev_values() {
        let y = chebyshev_y(2);
        assert_eq!((y.f, y.g), (p("2T^2 - 1"), p("2T")));
        let y = chebyshev_y(0);
        assert_eq!((y.f, y.g), (p("1"), Polynomial::zero()));
        let y = chebyshev_y(3);
        assert_eq!((y.f, y.g), (p("4T^3 - 3T"), p("4T^2 - 1")));
    }

    #[test]
    fn pos_examples() {
        assert!(pos_check(&p("T^2 + 1")));
        assert!(!pos_check(&p("-1")));
        assert!(!pos_check(&p("T^2 - 3T + 2")));
        assert_eq!(p("T^2 - 3T + 2").eval(&rat(3, 2)), rat(-1, 4));
        assert!(pos_check(&p("T^2 - 2T + 1")));
        assert!(pos_check(&p("T^4 - 4T^3 + 4T^2")));
        assert!(!pos_check(&p("T^3")));
        assert!(pos_check(&Polynomial::zero()));
        assert!(negative_point(&p("T^2 - 3T + 2")).is_some());
    }

    #[test]
    fn five_squares_examples() {
        assert!(five_squares_verify(
            &int(1),
            &p("T^2 + 1"),
            &[p("T"), p("1"), p("0"), p("0"), p("0")]
        ));
        assert!(five_squares_verify(
            &int(1),
            &p("2T^2 + 2"),
            &[p("T + 1"), p("T - 1"), p("0"), p("0"), p("0")]
        ));
        assert!(!five_squares_verify(
            &int(0),
            &p("0"),
            &[p("0"), p("0"), p("0"), p("0"), p("0")]
        ));
        let b = FiveSquaresBounds::default();
        match five_squares_search(&p("T^2 + 1"), &b) {
            FiveSquares::Found {
                g,
                squares,
                witness_count,
            } => {
                assert_eq!(g, 1);
                assert!(five_squares_verify(&int(1), &p("T^2 + 1"), &squares));
                assert_eq!(witness_count, 1);
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            five_squares_search(&p("2T^2 + 2"), &b),
            FiveSquares::Found { g: 1, .. }
        ));
        let big = FiveSquaresBounds {
            max_g: 50,
            max_norm: 10_000,
        };
        assert!(matches!(
            five_squares_search(&p("-1"), &big),
            FiveSquares::NotFound { .. }
        ));
        assert!(matches!(
            five_squares_search(&p("T^6 + 1"), &b),
            FiveSquares::Exhausted { .. }
        ));
        // 7 is a sum of four but not three squares; five are plenty
        assert!(matches!(
            five_squares_search(&p("7"), &b),
            FiveSquares::Found { g: 1, .. }
        ));
        assert!(matches!(
            five_squares_search(&p("T^4 + T^2 + 1"), &b),
            FiveSquares::Found { g: 1, .. }
        ));
    }

    #[test]
    fn found_decompositions_are_positive() {
        let b = FiveSquaresBounds::default();
        for a in 0..=3 {
            for c in -3..=3 {
                for e in 0..=4 {
                    let f = Polynomial::from_ints(&[e, c, a]);
                    if let FiveSquares::Found { g, squares, .. } = five_squares_search(&f, &b) {
                        assert!(five_squares_verify(&int(g as i64), &f, &squares));
                        assert!(pos_check(&f), "{f}");
                    }
                }
            }
        }
    }

    #[test]
    fn par_examples() {
        let b = FiveSquaresBounds::default();
        let t = find_par_tuple(1, &b).unwrap();
        assert_eq!((t.d, t.v.clone()), (0, int(0)));
        let v = par_eval(&t, &b).unwrap();
        assert!(v.accepted, "{v:?}");

        let mut wrong = t.clone();
        wrong.v = int(1);
        let v = par_eval(&wrong, &b).unwrap();
        assert!(!v.accepted);
        assert!(v.conditions.iter().any(|c| c.name == "par/7-value" && !c.passed()));

        // P_6 = T: c = 1 leaves 16T^4 - 9T^2 negative near T^2 = 9/32
        let t = find_par_tuple(6, &b).unwrap();
        assert_eq!(t.d, 1);
        let y = chebyshev_y(3).g;
        assert!(!pos_check(&pos_target(&y, &int(1), &p("T"))));
        assert!(pos_check(&pos_target(&y, &int(2), &p("T"))));
        assert_eq!(t.c, int(2));
        assert!(par_eval(&t, &b).unwrap().accepted);

        let mut big_c = t.clone();
        big_c.c = int(3);
        assert!(!par_eval(&big_c, &b).unwrap().accepted);
    }

    #[test]
    fn constant_tuples_have_g_one() {
        let b = FiveSquaresBounds::default();
        for n in [1, 2, 4, 8, 16] {
            let t = find_par_tuple(n, &b).unwrap();
            assert_eq!(t.d, 0);
            assert_eq!(t.g, Some(1), "n = {n}");
            let v = par_eval(&t, &b).unwrap();
            assert!(v.conditions.iter().all(|c| c.status == Status::Pass), "{v:?}");
        }
    }

    #[test]
    fn reconstruct_examples() {
        let b = FiveSquaresBounds::default();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for n in [1u64, 6, 30, 77] {
            let t = find_par_tuple(n, &b).unwrap();
            let pn = th(n as i64);
            assert!(reconstruct_check(&pn, &t, None).unwrap().accepted);
            let shifted = &pn + &(&Polynomial::constant(rat_int(t.point())) - &Polynomial::t());
            assert!(!reconstruct_check(&shifted, &t, None).unwrap().accepted);
            let off = &pn + &Polynomial::one();
            let r = reconstruct_check(&off, &t, None).unwrap();
            assert!(r.checks.iter().any(|c| c.name == "reconstruct/value" && !c.passed()));
            for f in perturbations(&pn, &t, 10, &mut rng) {
                assert!(!reconstruct_check(&f, &t, None).unwrap().accepted, "n = {n}, {f}");
            }
        }
    }

    #[test]
    fn witness_stands_in_for_pos() {
        let b = FiveSquaresBounds::default();
        let t = find_par_tuple(4, &b).unwrap();
        let y = chebyshev_y(2).g;
        let q = pos_target(&y, &t.c, &th(4));
        let FiveSquares::Found { g, squares, .. } = five_squares_search(&q, &b) else {
            panic!("expected a decomposition");
        };
        let r = reconstruct_check(&th(4), &t, Some((&int(g as i64), &squares))).unwrap();
        assert!(r.accepted);
        assert_eq!(r.checks[0].details["via"], "five-squares");
    }

    fn small_poly() -> impl Strategy<Value = Polynomial> {
        prop::collection::vec(-10i64..=10, 1..=7).prop_map(|c| Polynomial::from_ints(&c))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn pos_agrees_with_root_probe(f in small_poly()) {
            let neg = negative_point(&f);
            if let Some(x) = &neg {
                prop_assert!(f.eval(x).is_negative());
            }
            prop_assert_eq!(pos_check(&f), neg.is_none());
            if pos_check(&f) {
                // exact grid over the root bound
                let b = f.cauchy_bound().ceil().to_integer().to_i64().unwrap();
                for k in -8 * b..=8 * b {
                    prop_assert!(!f.eval(&rat(k, 8)).is_negative());
                }
            }
        }

        #[test]
        fn theta_inverse_then_theta(f in small_poly()) {
            prop_assert_eq!(theta(&theta_inverse(&f).unwrap()).unwrap(), f);
        }
    }
}
