//! Witness systems over the desk ring `Q[t]` (or `Z_(p)[t]`) with `a = t`.
//!
//! Every system is run as a verifier: candidate witnesses are enumerated up
//! to an explicit bound and each one is re-checked equation by equation.

mod constants;
mod exp;
mod odd;
mod singlefold;

use std::fmt;

use serde::{Serialize, Serializer};
use serde_json::Value;

use crate::arith::Rational;
use crate::error::{Error, Result};
use crate::poly::{rational_root, Polynomial};

pub use constants::constants_system;
pub use exp::{exp_accepted_results, exp_system, nonneg_gadget, ExpGridCell, NONNEG_MIN_BOUND};
pub use odd::{
    integer_via_odd, odd_integer_check, odd_integer_construct, odd_integer_search, odd_integer_system, OddWitness,
    ODD_RELATIONS,
};
pub use singlefold::{singlefold_int, SinglefoldTable};

pub const SYSTEM_IDS: [&str; 5] = ["constants", "singlefold-int", "exp", "odd-int", "nonneg"];

pub fn check_system_id(id: &str) -> Result<()> {
    if SYSTEM_IDS.contains(&id) {
        Ok(())
    } else {
        Err(Error::UnknownSystem(id.into()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Accepted,
    /// Exact refutation; nothing was searched.
    Refuted,
    RefutedToBound(u64),
    Invalid(String),
}

impl Verdict {
    pub fn is_accepted(&self) -> bool {
        matches!(self, Verdict::Accepted)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Accepted => write!(f, "accepted"),
            Verdict::Refuted => write!(f, "refuted"),
            Verdict::RefutedToBound(n) => write!(f, "refuted-to-bound({n})"),
            Verdict::Invalid(why) => write!(f, "invalid: {why}"),
        }
    }
}

impl Serialize for Verdict {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WitnessReport {
    pub system: String,
    pub input: Value,
    pub verdict: Verdict,
    pub witnesses: Vec<Value>,
    pub fold_count: usize,
    pub notes: Vec<String>,
}

impl WitnessReport {
    fn new(system: &str, input: Value) -> Self {
        WitnessReport {
            system: system.into(),
            input,
            verdict: Verdict::Invalid("not evaluated".into()),
            witnesses: Vec::new(),
            fold_count: 0,
            notes: Vec::new(),
        }
    }

    /// Accepted when any witness was found, otherwise refuted up to `bound`.
    fn settle(mut self, bound: u64) -> Self {
        self.fold_count = self.witnesses.len();
        self.verdict = if self.witnesses.is_empty() {
            Verdict::RefutedToBound(bound)
        } else {
            Verdict::Accepted
        };
        self
    }
}

/// `a_0 f^n + a_1 f^{n−1} g + … + g^n` for a monic `h = a_0 + … + T^n`
/// without rational roots. Roots of `h` in `Q(t)` are constants, so the
/// rational root test covers them.
pub fn combine_and(fval: &Polynomial, gval: &Polynomial, h: &[Rational]) -> Result<Polynomial> {
    let hp = Polynomial::new(h.to_vec());
    let n = hp.degree().ok_or(Error::ZeroPolynomial)?;
    if n == 0 || hp.leading() != Rational::from_integer(1.into()) {
        return Err(Error::Precondition("h must be monic of positive degree".into()));
    }
    if let Some(root) = rational_root(&hp)? {
        return Err(Error::HasRoot(root.to_string()));
    }
    let mut acc = Polynomial::zero();
    for (i, a) in hp.coeffs().iter().enumerate() {
        let term = &fval.pow((n - i) as u32) * &gval.pow(i as u32);
        acc = &acc + &term.scale(a);
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use proptest::prelude::*;

    fn p(s: &str) -> Polynomial {
        s.parse().unwrap()
    }

    fn h() -> Vec<Rational> {
        vec![rat(1, 1), rat(0, 1), rat(1, 1)]
    }

    #[test]
    fn combine_examples() {
        assert_eq!(combine_and(&p("0"), &p("0"), &h()).unwrap(), p("0"));
        assert_eq!(combine_and(&p("t"), &p("0"), &h()).unwrap(), p("t^2"));
        assert_eq!(combine_and(&p("t"), &p("1"), &h()).unwrap(), p("t^2 + 1"));
        let bad = vec![rat(-1, 1), rat(0, 1), rat(1, 1)];
        assert!(matches!(combine_and(&p("1"), &p("1"), &bad), Err(Error::HasRoot(_))));
        let not_monic = vec![rat(1, 1), rat(0, 1), rat(2, 1)];
        assert!(combine_and(&p("1"), &p("1"), &not_monic).is_err());
    }

    #[test]
    fn system_ids() {
        for id in SYSTEM_IDS {
            assert!(check_system_id(id).is_ok());
        }
        assert_eq!(check_system_id("nope"), Err(Error::UnknownSystem("nope".into())));
    }

    fn arb_poly() -> impl Strategy<Value = Polynomial> {
        prop_oneof![
            Just(Polynomial::zero()),
            prop::collection::vec(-5i64..=5, 0..4).prop_map(|v| Polynomial::from_ints(&v)),
        ]
    }

    proptest! {
        #[test]
        fn combine_vanishes_only_at_origin(f in arb_poly(), g in arb_poly(), cubic in prop::bool::ANY) {
            // T^2 + 1 and T^3 - 2 have no rational roots
            let h = if cubic { vec![rat(-2, 1), rat(0, 1), rat(0, 1), rat(1, 1)] } else { super::tests::h() };
            let v = combine_and(&f, &g, &h).unwrap();
            prop_assert_eq!(v.is_zero(), f.is_zero() && g.is_zero());
        }
    }
}
