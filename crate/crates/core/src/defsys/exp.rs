//! Exponentiation through `ε`-powers, and the non-negativity gadget built on it.
//!
//! The system is parameterized as `(base, result, exponent)`: a witness is an
//! index `n` with `(ε − base) | (εⁿ ± result)` and
//! `(ε − 1)² | (exponent·(ε − 1) ∓ (εⁿ − 1))`.

use std::collections::BTreeMap;

use num_integer::Integer as _;
use num_traits::{One, Zero};
use serde_json::json;

use super::{Verdict, WitnessReport};
use crate::arith::{rat_int, Integer, Rational};
use crate::error::{Error, Result};
use crate::poly::{epsilon, quad_divisible, Polynomial, QuadElement};

pub const NONNEG_MIN_BOUND: u32 = 50;

/// `ε^n` for `n = −bound..=bound`, ascending.
fn eps_powers(bound: u32) -> Result<Vec<(i64, QuadElement)>> {
    let t = Polynomial::t();
    let e = epsilon(&t)?;
    let inv = e.conj();
    let mut out = vec![(0i64, QuadElement::one(&t)?)];
    let (mut pos, mut neg) = (out[0].1.clone(), out[0].1.clone());
    for n in 1..=bound as i64 {
        pos = pos.mul(&e)?;
        neg = neg.mul(&inv)?;
        out.push((n, pos.clone()));
        out.push((-n, neg.clone()));
    }
    out.sort_by_key(|(n, _)| *n);
    Ok(out)
}

/// When `norm(m)` is linear with root `r`, the values of `ε^n` at `r` as
/// pairs `(u, w)` over `Q(√(r² − 1))`; divisibility by `m` only depends on them.
#[allow(clippy::type_complexity)]
fn eps_values_at_root(
    m: &QuadElement,
    bound: u32,
) -> Option<(Rational, Rational, BTreeMap<i64, (Rational, Rational)>)> {
    let norm = m.norm();
    if norm.degree() != Some(1) {
        return None;
    }
    let r = -(norm.coeff(0) / norm.coeff(1));
    let d = &r * &r - Rational::one();
    let mut out = BTreeMap::new();
    out.insert(0, (Rational::one(), Rational::zero()));
    let (mut pos, mut neg) = ((Rational::one(), Rational::zero()), (Rational::one(), Rational::zero()));
    for n in 1..=bound as i64 {
        pos = (&pos.0 * &r - &pos.1 * &d, &pos.1 * &r - &pos.0);
        neg = (&neg.0 * &r + &neg.1 * &d, &neg.1 * &r + &neg.0);
        out.insert(n, pos.clone());
        out.insert(-n, neg.clone());
    }
    Some((r, d, out))
}

fn constant(c: &Integer) -> Polynomial {
    Polynomial::constant(rat_int(c.clone()))
}

/// Quotients `y` with `(ε − 1)² · y = exponent·(ε − 1) + s2·(εⁿ − 1)`, per sign.
fn second_condition(
    power: &QuadElement,
    exponent: &Integer,
    em1: &QuadElement,
    em1sq: &QuadElement,
) -> Result<Vec<(i8, QuadElement)>> {
    let one = Polynomial::one();
    let en_minus_1 = power.add_poly(&-&one);
    let lhs_d = em1.scale(&constant(exponent));
    let mut out = Vec::new();
    for s2 in [1i8, -1] {
        let shifted = if s2 == 1 {
            lhs_d.add(&en_minus_1)?
        } else {
            lhs_d.sub(&en_minus_1)?
        };
        if let Some(y) = quad_divisible(&shifted, em1sq)?.quotient() {
            out.push((s2, y.clone()));
        }
    }
    Ok(out)
}

pub fn exp_system(base: &Integer, result: &Integer, exponent: &Integer, bound: u32) -> Result<WitnessReport> {
    if base.is_zero() {
        return Err(Error::Precondition("base must be nonzero".into()));
    }
    let mut report = WitnessReport::new(
        "exp",
        json!({
            "base": base.to_string(),
            "result": result.to_string(),
            "exponent": exponent.to_string(),
            "bound": bound,
        }),
    );
    let t = Polynomial::t();
    let e = epsilon(&t)?;
    let m = e.add_poly(&-&constant(base));
    let em1 = e.add_poly(&-&Polynomial::one());
    let em1sq = em1.mul(&em1)?;
    let c = constant(result);

    let values = eps_values_at_root(&m, bound);
    let mc = m.conj();
    let mc_at = values.as_ref().map(|(r, _, _)| (mc.u.eval(r), mc.w.eval(r)));
    let cr = rat_int(result.clone());
    let mut seen: Vec<(i64, QuadElement, QuadElement)> = Vec::new();
    for (n, power) in eps_powers(bound)? {
        if let (Some((_, dr, vals)), Some((cu, cw))) = (&values, &mc_at) {
            let (pu, pw) = &vals[&n];
            let hit = [&cr, &-&cr].into_iter().any(|c| {
                let xu = pu + c;
                &xu * cu + pw * cw * dr == Rational::zero() && &xu * cw + pw * cu == Rational::zero()
            });
            if !hit {
                continue;
            }
        }
        let mut xs = Vec::new();
        for s1 in [1i8, -1] {
            let lhs = if s1 == 1 {
                power.add_poly(&c)
            } else {
                power.add_poly(&-&c)
            };
            if let Some(x) = quad_divisible(&lhs, &m)?.quotient() {
                xs.push((s1, x.clone()));
            }
        }
        if xs.is_empty() {
            continue;
        }
        let ys = second_condition(&power, exponent, &em1, &em1sq)?;
        for (s1, x) in &xs {
            for (s2, y) in &ys {
                if seen.iter().any(|(k, x0, y0)| *k == n && x0 == x && y0 == y) {
                    continue;
                }
                seen.push((n, x.clone(), y.clone()));
                report
                    .witnesses
                    .push(json!({ "n": n, "sign_result": s1, "sign_exponent": s2 }));
            }
        }
    }
    Ok(report.settle(bound as u64))
}

/// Accepted results for a fixed `(base, exponent)`, with witness counts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpGridCell {
    pub base: i64,
    pub exponent: i64,
    pub accepted: BTreeMap<Integer, usize>,
}

/// Solves the first divisibility for `result` instead of testing each value.
///
/// `norm(ε − base)` has degree 1, so the remainders of `εⁿ·conj(ε − base)`
/// and `conj(ε − base)` modulo it are constants `R0`, `R1`, and
/// `(ε − base) | (εⁿ + s·c)` holds exactly when `R0 + s·c·R1 = 0`. This pins
/// at most one `c` per `(n, s)`, so the full set of accepted results over all
/// integers comes out of `O(bound)` ring operations.
pub fn exp_accepted_results(base: i64, exponent: i64, bound: u32) -> Result<ExpGridCell> {
    if base == 0 {
        return Err(Error::Precondition("base must be nonzero".into()));
    }
    let t = Polynomial::t();
    let e = epsilon(&t)?;
    let b = Integer::from(base);
    let m = e.add_poly(&-&constant(&b));
    let conj_m = m.conj();
    let norm = m.norm();
    let rem = |p: &Polynomial| -> Result<Rational> { Ok(p.divmod(&norm)?.1.coeff(0)) };
    let r1 = (rem(&conj_m.u)?, rem(&conj_m.w)?);
    let em1 = e.add_poly(&-&Polynomial::one());
    let em1sq = em1.mul(&em1)?;
    let d = Integer::from(exponent);

    let mut accepted: BTreeMap<Integer, usize> = BTreeMap::new();
    for (n, power) in eps_powers(bound)? {
        let prod = power.mul(&conj_m)?;
        let r0 = (rem(&prod.u)?, rem(&prod.w)?);
        let ys = second_condition(&power, &d, &em1, &em1sq)?;
        if ys.is_empty() {
            continue;
        }
        // witnesses with n = 0 share y across both signs
        let y_count = if n == 0 { 1 } else { ys.len() };
        for s1 in [1i64, -1] {
            let s = Rational::from_integer(s1.into());
            let c = if !r1.1.is_zero() {
                -(&r0.1 / (&s * &r1.1))
            } else if !r1.0.is_zero() {
                -(&r0.0 / (&s * &r1.0))
            } else {
                continue;
            };
            let solves = &r0.0 + &s * &c * &r1.0 == Rational::zero() && &r0.1 + &s * &c * &r1.1 == Rational::zero();
            if !solves || !c.is_integer() || (c.is_zero() && s1 == -1) {
                continue;
            }
            *accepted.entry(c.to_integer()).or_insert(0) += y_count;
        }
    }
    Ok(ExpGridCell {
        base,
        exponent,
        accepted,
    })
}

pub fn nonneg_gadget(d: i64, bound: Option<u32>) -> Result<WitnessReport> {
    let di = Integer::from(d);
    let d4 = di.pow(4);
    let base = &d4 + Integer::one();
    let two_abs_d = 2 * d.unsigned_abs() as u32;
    let b = base.pow(two_abs_d);
    let exponent = Integer::from(2 * d);
    let bound = bound.unwrap_or(NONNEG_MIN_BOUND.max(two_abs_d));
    let exp = exp_system(&base, &b, &exponent, bound)?;

    let mut report = WitnessReport::new("nonneg", json!({ "d": d, "bound": bound }));
    report
        .notes
        .push(format!("b = (d^4 + 1)^(2|d|) has {} digits", b.to_string().len()));
    let congruence = if d == 0 {
        report
            .notes
            .push("d = 0 accepted by convention; the congruence modulus d^4 vanishes".into());
        true
    } else {
        let quotient = (&b - Integer::one()) / &d4;
        let residue = (&quotient - &exponent).mod_floor(&d4);
        report.notes.push(format!(
            "(b - 1)/d^4 mod d^4 = {}, 2d mod d^4 = {}",
            quotient.mod_floor(&d4),
            exponent.mod_floor(&d4)
        ));
        if d4.is_one() {
            report.notes.push("modulus d^4 = 1 makes the congruence vacuous".into());
        }
        residue.is_zero()
    };
    report.witnesses = exp.witnesses.clone();
    report.fold_count = if congruence { exp.fold_count } else { 0 };
    report.verdict = match (&exp.verdict, congruence) {
        (Verdict::Accepted, true) => Verdict::Accepted,
        (Verdict::Accepted, false) => Verdict::Refuted,
        (other, _) => other.clone(),
    };
    if !report.verdict.is_accepted() {
        report.witnesses.clear();
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;

    #[test]
    fn exp_examples() {
        let r = exp_system(&int(2), &int(8), &int(3), 10).unwrap();
        assert_eq!(r.verdict, Verdict::Accepted);
        assert_eq!(r.fold_count, 1);
        assert_eq!(r.witnesses[0]["n"], 3);
        for b in [-3, 2, 7] {
            let r = exp_system(&int(b), &int(1), &int(0), 10).unwrap();
            assert_eq!((r.verdict, r.fold_count), (Verdict::Accepted, 1), "b = {b}");
        }
        let r = exp_system(&int(2), &int(9), &int(3), 10).unwrap();
        assert_eq!(r.verdict, Verdict::RefutedToBound(10));
        assert!(exp_system(&int(0), &int(1), &int(1), 5).is_err());
    }

    #[test]
    fn signs_cover_absolute_values() {
        for (b, c, d) in [(2, -8, 3), (2, 8, -3), (-2, 8, 3), (-2, -8, -3), (3, 9, 2)] {
            let r = exp_system(&int(b), &int(c), &int(d), 8).unwrap();
            assert_eq!(r.fold_count, 1, "({b}, {c}, {d})");
        }
    }

    #[test]
    fn fast_solver_agrees_with_direct_search() {
        for b in [-3i64, -1, 1, 2, 5] {
            for d in -2i64..=2 {
                let cell = exp_accepted_results(b, d, 8).unwrap();
                for c in -30i64..=30 {
                    let direct = exp_system(&int(b), &int(c), &int(d), 8).unwrap();
                    let fast = cell.accepted.get(&int(c)).copied().unwrap_or(0);
                    assert_eq!(direct.fold_count, fast, "({b}, {c}, {d})");
                }
            }
        }
    }

    #[test]
    fn nonneg_examples() {
        let r = nonneg_gadget(2, None).unwrap();
        assert_eq!(r.verdict, Verdict::Accepted);
        assert!(r.notes.iter().any(|n| n.contains("= 4, 2d mod d^4 = 4")));
        let r = nonneg_gadget(-2, None).unwrap();
        assert_eq!(r.verdict, Verdict::Refuted);
        assert!(r.notes.iter().any(|n| n.contains("= 4, 2d mod d^4 = 12")));
        let r = nonneg_gadget(-1, None).unwrap();
        assert_eq!(r.verdict, Verdict::Accepted);
        assert!(r.notes.iter().any(|n| n.contains("vacuous")));
        assert_eq!(nonneg_gadget(0, None).unwrap().verdict, Verdict::Accepted);
    }
}
