//! The odd-integer system over `R[x]`: Pell pairs in the parameter `a·x`
//! tied together by divisibilities that force `a` to be an odd integer.

use num_integer::Integer as _;
use num_traits::{Signed, ToPrimitive};
use serde::Serialize;
use serde_json::json;

use super::{Verdict, WitnessReport};
use crate::arith::{Integer, Rational};
use crate::error::{Error, Result};
use crate::pell::{pell_identity, pell_pair, pell_pairs_upto};
use crate::poly::Polynomial;

pub const ODD_RELATIONS: [&str; 7] = [
    "pell-aux",
    "pell",
    "g3-divides-g",
    "t-divides-g3g2",
    "t-congruent-g",
    "ax-divides-f",
    "a-equals-t-over-g3",
];

const DEFAULT_SEARCH_BOUND: u32 = 30;

/// Full witness tuple; every entry is a polynomial in `x`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OddWitness {
    pub a: Polynomial,
    pub f: Polynomial,
    pub g: Polynomial,
    pub f2: Polynomial,
    pub g2: Polynomial,
    pub f3: Polynomial,
    pub g3: Polynomial,
    pub t: Polynomial,
}

fn divides(d: &Polynomial, n: &Polynomial) -> bool {
    if d.is_zero() {
        n.is_zero()
    } else {
        d.divides(n).expect("nonzero divisor")
    }
}

impl OddWitness {
    /// Each relation of the system with its truth value, in a fixed order.
    pub fn relations(&self) -> Vec<(&'static str, bool)> {
        let ax = &self.a * &Polynomial::t();
        let aux = !ax.is_constant()
            && [(2, &self.f2, &self.g2), (3, &self.f3, &self.g3)]
                .into_iter()
                .all(|(i, f, g)| {
                    let pair = pell_pair(&ax, i).expect("nonconstant parameter");
                    &pair.f == f && &pair.g == g
                });
        let values = [
            aux,
            !ax.is_constant() && pell_identity(&self.f, &self.g, &ax),
            divides(&self.g3, &self.g),
            divides(&self.t, &(&self.g3 * &self.g2)),
            divides(&(&self.g3 * &self.g3), &(&self.t - &self.g)),
            divides(&ax, &self.f),
            &self.a * &self.g3 == self.t,
        ];
        ODD_RELATIONS.iter().copied().zip(values).collect()
    }

    pub fn holds(&self) -> bool {
        self.relations().iter().all(|(_, ok)| *ok)
    }
}

fn odd_integer_of(a: &Polynomial) -> Option<Integer> {
    if !a.is_constant() {
        return None;
    }
    let c = a.leading();
    (c.is_integer() && c.numer().is_odd()).then(|| c.numer().clone())
}

/// The canonical witness for odd `r`: `(f, g) = (f_{3|r|}(rx), ±g_{3|r|}(rx))`
/// and `t = r·g_3(rx)`.
pub fn odd_integer_construct(r: i64) -> Result<OddWitness> {
    if r % 2 == 0 {
        return Err(Error::Precondition(format!("r = {r} is even")));
    }
    let a = Polynomial::from_int(r);
    let s = &a * &Polynomial::t();
    let m = 3 * r.abs();
    let main = pell_pair(&s, m)?;
    let p2 = pell_pair(&s, 2)?;
    let p3 = pell_pair(&s, 3)?;
    let g = if r < 0 { -&main.g } else { main.g };
    let t = &a * &p3.g;
    Ok(OddWitness {
        a,
        f: main.f,
        g,
        f2: p2.f,
        g2: p2.g,
        f3: p3.f,
        g3: p3.g,
        t,
    })
}

fn relation_json(w: &OddWitness) -> serde_json::Value {
    let map: serde_json::Map<String, serde_json::Value> = w
        .relations()
        .into_iter()
        .map(|(k, v)| (k.to_string(), json!(v)))
        .collect();
    serde_json::Value::Object(map)
}

/// Constructor mode: builds the canonical witness for `r` and re-verifies it.
pub fn odd_integer_system(r: i64) -> Result<WitnessReport> {
    let w = odd_integer_construct(r)?;
    let mut report = WitnessReport::new("odd-int", json!({ "mode": "construct", "r": r }));
    let rel = relation_json(&w);
    if w.holds() {
        report.witnesses.push(json!({
            "m": 3 * r.abs(),
            "f": w.f.to_text("x"),
            "g": w.g.to_text("x"),
            "t": w.t.to_text("x"),
            "relations": rel,
        }));
        report.fold_count = 1;
        report.verdict = Verdict::Accepted;
    } else {
        report.verdict = Verdict::Invalid(format!("constructed witness fails: {rel}"));
    }
    Ok(report)
}

/// Checker mode for an arbitrary tuple.
pub fn odd_integer_check(w: &OddWitness) -> WitnessReport {
    let mut report = WitnessReport::new("odd-int", json!({ "mode": "check", "a": w.a.to_text("x") }));
    let rel = relation_json(w);
    if w.holds() {
        match odd_integer_of(&w.a) {
            Some(r) => report.notes.push(format!("a = {r} is an odd integer")),
            None => report.notes.push("relations hold but a is not an odd integer".into()),
        }
        report.witnesses.push(json!({ "relations": rel }));
        report.fold_count = 1;
        report.verdict = Verdict::Accepted;
    } else {
        report.notes.push(format!("relations: {rel}"));
        report.verdict = Verdict::Refuted;
    }
    report
}

/// Search mode: every tuple built from `(±f_m(ax), ±g_m(ax))` with
/// `m ≤ bound` and `t = a·g_3(ax)`.
pub fn odd_integer_search(a: &Polynomial, bound: u32) -> Result<WitnessReport> {
    let mut report = WitnessReport::new(
        "odd-int",
        json!({ "mode": "search", "a": a.to_text("x"), "bound": bound }),
    );
    if a.is_zero() {
        report.notes.push("the system requires a != 0".into());
        report.verdict = Verdict::Refuted;
        return Ok(report);
    }
    let s = a * &Polynomial::t();
    let pairs = pell_pairs_upto(&s, bound.max(3))?;
    let (f2, g2) = (pairs[2].f.clone(), pairs[2].g.clone());
    let (f3, g3) = (pairs[3].f.clone(), pairs[3].g.clone());
    let t = a * &g3;
    for pair in pairs.iter().take(bound as usize + 1) {
        for sf in [1i8, -1] {
            for sg in [1i8, -1] {
                if pair.g.is_zero() && sg == -1 {
                    continue;
                }
                let w = OddWitness {
                    a: a.clone(),
                    f: if sf == 1 { pair.f.clone() } else { -&pair.f },
                    g: if sg == 1 { pair.g.clone() } else { -&pair.g },
                    f2: f2.clone(),
                    g2: g2.clone(),
                    f3: f3.clone(),
                    g3: g3.clone(),
                    t: t.clone(),
                };
                if w.holds() {
                    report
                        .witnesses
                        .push(json!({ "m": pair.n, "sign_f": sf, "sign_g": sg }));
                }
            }
        }
    }
    if !report.witnesses.is_empty() {
        if let Some(r) = odd_integer_of(a) {
            report.notes.push(format!("a = {r} is an odd integer"));
        }
    }
    Ok(report.settle(bound as u64))
}

/// `m` is an integer exactly when `2m + 1` passes the odd-integer search.
pub fn integer_via_odd(m: &Rational, bound: Option<u32>) -> Result<WitnessReport> {
    let a = m * Rational::from_integer(2.into()) + Rational::from_integer(1.into());
    let bound = bound.unwrap_or_else(|| {
        let need = if a.is_integer() {
            a.to_integer()
                .abs()
                .to_u32()
                .map_or(DEFAULT_SEARCH_BOUND, |v| 3 * v + 3)
        } else {
            0
        };
        DEFAULT_SEARCH_BOUND.max(need)
    });
    let mut report = odd_integer_search(&Polynomial::constant(a.clone()), bound)?;
    report.input = json!({ "mode": "integer", "m": m.to_string(), "a": a.to_string(), "bound": bound });
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn p(s: &str) -> Polynomial {
        s.parse().unwrap()
    }

    #[test]
    fn construct_examples() {
        let w = odd_integer_construct(1).unwrap();
        assert_eq!(w.f, p("4x^3 - 3x"));
        assert_eq!(w.g, p("4x^2 - 1"));
        assert_eq!(w.t, p("4x^2 - 1"));
        assert!(w.holds());
        let w = odd_integer_construct(3).unwrap();
        let s = p("3x");
        assert_eq!(w.f, pell_pair(&s, 9).unwrap().f);
        assert!(w.holds());
        assert!(odd_integer_construct(2).is_err());
        for r in [-9, -7, -5, -3, -1, 1, 3, 5, 7, 9] {
            let rep = odd_integer_system(r).unwrap();
            assert_eq!(rep.verdict, Verdict::Accepted, "r = {r}");
            assert!(odd_integer_check(&odd_integer_construct(r).unwrap())
                .verdict
                .is_accepted());
        }
    }

    #[test]
    fn checker_rejects_tampering() {
        let mut w = odd_integer_construct(3).unwrap();
        w.t = &w.t + &Polynomial::one();
        let rel = w.relations();
        assert!(!rel.iter().find(|(k, _)| *k == "a-equals-t-over-g3").unwrap().1);
        assert_eq!(odd_integer_check(&w).verdict, Verdict::Refuted);
    }

    #[test]
    fn search_examples() {
        let r = odd_integer_search(&p("2"), 12).unwrap();
        assert_eq!(r.verdict, Verdict::RefutedToBound(12));
        let r = odd_integer_search(&p("x"), 12).unwrap();
        assert_eq!(r.verdict, Verdict::RefutedToBound(12));
        let r = odd_integer_search(&p("-3"), 12).unwrap();
        assert_eq!(r.verdict, Verdict::Accepted);
        // f and -f are both divisible by ax, so the search sees two witnesses
        assert_eq!(r.fold_count, 2);
        assert!(r.witnesses.iter().all(|w| w["m"] == 9 && w["sign_g"] == -1));
    }

    #[test]
    fn integer_wrapper() {
        assert!(integer_via_odd(&rat(0, 1), None).unwrap().verdict.is_accepted());
        assert!(integer_via_odd(&rat(-2, 1), None).unwrap().verdict.is_accepted());
        let r = integer_via_odd(&rat(1, 2), Some(12)).unwrap();
        assert_eq!(r.verdict, Verdict::RefutedToBound(12));
        let r = integer_via_odd(&rat(1, 3), Some(12)).unwrap();
        assert_eq!(r.verdict, Verdict::RefutedToBound(12));
        assert_eq!(integer_via_odd(&rat(-1, 2), None).unwrap().verdict, Verdict::Refuted);
    }
}
