//! The constant-defining system `j_k (π x² + kπ + 1) = 1`.

use serde_json::json;

use super::{Verdict, WitnessReport};
use crate::arith::{rat_int, RingDescriptor};
use crate::poly::Polynomial;

/// Units of `R[t]` are the constants that are units of `R`.
fn inverse_in(value: &Polynomial, ring: &RingDescriptor) -> Option<Polynomial> {
    if !value.is_constant() || value.is_zero() {
        return None;
    }
    let c = value.leading();
    ring.is_unit(&c).then(|| Polynomial::constant(c.recip()))
}

/// Elements `π x² + kπ + 1` for `k = 0..=s_size`; accepted when all of them
/// are invertible, and then the inverse tuple is the unique witness.
pub fn constants_system(x: &Polynomial, ring: &RingDescriptor, s_size: usize) -> WitnessReport {
    let mut report = WitnessReport::new(
        "constants",
        json!({ "x": x.to_text("t"), "ring": ring.to_string(), "s_size": s_size }),
    );
    if let Some(bad) = x.coeffs().iter().find(|c| !ring.contains(c)) {
        report.verdict = Verdict::Invalid(format!("coefficient {bad} is not in {ring}"));
        return report;
    }
    let pi = Polynomial::constant(rat_int(ring.pi()));
    let base = &(&pi * &(x * x)) + &Polynomial::one();
    let mut inverses = Vec::new();
    let mut blocked = Vec::new();
    for k in 0..=s_size {
        let value = &base + &pi.scale(&rat_int((k as u64).into()));
        match inverse_in(&value, ring) {
            Some(j) => {
                debug_assert_eq!(&j * &value, Polynomial::one());
                inverses.push(j.to_text("t"));
            }
            None => blocked.push(json!({ "k": k, "element": value.to_text("t") })),
        }
    }
    if blocked.is_empty() {
        report.witnesses.push(json!({ "j": inverses }));
        report.fold_count = 1;
        report.verdict = Verdict::Accepted;
    } else {
        report.verdict = Verdict::Refuted;
        report
            .notes
            .push(format!("non-units: {}", serde_json::Value::Array(blocked)));
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;

    fn p(s: &str) -> Polynomial {
        s.parse().unwrap()
    }

    #[test]
    fn constants_examples() {
        let q = RingDescriptor::full_rationals();
        let r = constants_system(&p("5"), &q, 1);
        assert_eq!(r.verdict, Verdict::Accepted);
        assert_eq!(r.witnesses[0]["j"], json!(["1/26", "1/27"]));
        assert_eq!(r.fold_count, 1);
        assert_eq!(constants_system(&p("t"), &q, 1).verdict, Verdict::Refuted);
        assert_eq!(constants_system(&p("0"), &q, 1).verdict, Verdict::Accepted);
    }

    #[test]
    fn localized_ring() {
        let z3 = RingDescriptor::localized_at(vec![int(3)]).unwrap();
        for x in -10..=10 {
            let r = constants_system(&Polynomial::from_int(x), &z3, 2);
            assert!(r.verdict.is_accepted(), "x = {x}");
        }
        // 3/4 + 1 and 3/4 + 4 are units of Z_(3); 1/3 is not even in the ring
        let r = constants_system(&p("1/2"), &z3, 1);
        assert!(r.verdict.is_accepted());
        let r = constants_system(&p("1/3"), &z3, 1);
        assert!(matches!(r.verdict, Verdict::Invalid(_)));
        let r = constants_system(&p("t + 1"), &z3, 1);
        assert_eq!(r.verdict, Verdict::Refuted);
    }
}
