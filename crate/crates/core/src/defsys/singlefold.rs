//! Single-fold definition of `Z`: a Pell solution `u − √(t² − 1)·w` whose
//! `ε`-quotient is congruent to the constant `c`.

use serde_json::json;

use super::WitnessReport;
use crate::error::Result;
use crate::poly::{epsilon, quad_divisible, Polynomial, QuadElement};

struct Candidate {
    n: i64,
    sign: i8,
    norm_one: bool,
    /// `(e − 1)/(ε − 1)` when it is integral.
    quotient: Option<QuadElement>,
}

/// Candidates `±εⁿ` for `|n| ≤ bound`, shared across many values of `c`.
pub struct SinglefoldTable {
    bound: u64,
    em1: QuadElement,
    candidates: Vec<Candidate>,
}

impl SinglefoldTable {
    pub fn new(bound: u32) -> Result<Self> {
        let t = Polynomial::t();
        let e = epsilon(&t)?;
        let one = Polynomial::one();
        let em1 = e.add_poly(&-&one);
        let inv = e.conj();
        let mut candidates = Vec::new();
        let mut pos = QuadElement::one(&t)?;
        let mut neg = QuadElement::one(&t)?;
        let mut powers = vec![(0i64, pos.clone())];
        for n in 1..=bound as i64 {
            pos = pos.mul(&e)?;
            neg = neg.mul(&inv)?;
            powers.push((n, pos.clone()));
            powers.push((-n, neg.clone()));
        }
        powers.sort_by_key(|(n, _)| *n);
        for (n, pw) in powers {
            for sign in [1i8, -1] {
                let cand = if sign == 1 { pw.clone() } else { pw.scale(&-&one) };
                let norm_one = cand.norm() == one;
                let quotient = quad_divisible(&cand.add_poly(&-&one), &em1)?.quotient().cloned();
                candidates.push(Candidate {
                    n,
                    sign,
                    norm_one,
                    quotient,
                });
            }
        }
        Ok(SinglefoldTable {
            bound: bound as u64,
            em1,
            candidates,
        })
    }

    pub fn bound(&self) -> u64 {
        self.bound
    }

    pub fn check(&self, c: &Polynomial) -> Result<WitnessReport> {
        let mut report = WitnessReport::new("singlefold-int", json!({ "c": c.to_text("t"), "bound": self.bound }));
        let constant = c.is_constant();
        let mut nonconstant_hits = Vec::new();
        for cand in &self.candidates {
            if !cand.norm_one {
                continue;
            }
            let Some(q) = &cand.quotient else {
                continue;
            };
            let diff = q.add_poly(&-c);
            if !quad_divisible(&diff, &self.em1)?.is_divisible() {
                continue;
            }
            if constant {
                report.witnesses.push(json!({
                    "n": cand.n,
                    "sign": cand.sign,
                    "pell_identity": true,
                    "congruence": true,
                    "constant": true,
                }));
            } else {
                nonconstant_hits.push(cand.n);
            }
        }
        if !nonconstant_hits.is_empty() {
            report.notes.push(format!(
                "indices {nonconstant_hits:?} satisfy the Pell identity and the congruence; c is not constant"
            ));
        }
        Ok(report.settle(self.bound))
    }
}

/// Accepted exactly when `c` is an integer within the bound.
pub fn singlefold_int(c: &Polynomial, bound: u32) -> Result<WitnessReport> {
    SinglefoldTable::new(bound)?.check(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::defsys::Verdict;

    fn p(s: &str) -> Polynomial {
        s.parse().unwrap()
    }

    #[test]
    fn singlefold_examples() {
        let table = SinglefoldTable::new(12).unwrap();
        let r = table.check(&p("2")).unwrap();
        assert_eq!(r.verdict, Verdict::Accepted);
        assert_eq!(r.fold_count, 1);
        assert_eq!(r.witnesses[0]["n"], 2);
        let r = table.check(&p("0")).unwrap();
        assert_eq!(r.witnesses[0]["n"], 0);
        let r = table.check(&p("-5")).unwrap();
        assert_eq!((r.fold_count, r.witnesses[0]["n"].as_i64()), (1, Some(-5)));
        assert_eq!(table.check(&p("1/2")).unwrap().verdict, Verdict::RefutedToBound(12));
        let r = table.check(&p("t")).unwrap();
        assert_eq!(r.verdict, Verdict::RefutedToBound(12));
        assert_eq!(r.notes.len(), 1);
        assert_eq!(table.check(&p("13")).unwrap().verdict, Verdict::RefutedToBound(12));
    }
}
