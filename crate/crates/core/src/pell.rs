//! Polynomial Pell pairs `f_n − √(s² − 1)·g_n = (s − √(s² − 1))ⁿ`.

use serde::Serialize;
use serde_json::json;

use crate::error::{Error, Result};
use crate::poly::{epsilon, quad_divisible, Polynomial, QuadElement};
use crate::report::Check;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PellPair {
    pub n: i64,
    pub f: Polynomial,
    pub g: Polynomial,
    pub s: Polynomial,
}

impl PellPair {
    pub fn identity_holds(&self) -> bool {
        pell_identity(&self.f, &self.g, &self.s)
    }
}

/// `f² − (s² − 1)·g² = 1`.
pub fn pell_identity(f: &Polynomial, g: &Polynomial, s: &Polynomial) -> bool {
    let d = &(s * s) - &Polynomial::one();
    &(f * f) - &(&d * &(g * g)) == Polynomial::one()
}

/// Pair of index `n`; negative indices come from the conjugate, so
/// `f_{−n} = f_n` and `g_{−n} = −g_n`.
pub fn pell_pair(s: &Polynomial, n: i64) -> Result<PellPair> {
    let e = epsilon(s)?.pow(n)?;
    Ok(PellPair {
        n,
        f: e.u.clone(),
        g: -&e.w,
        s: s.clone(),
    })
}

/// Successive pairs `0..=bound`, by repeated multiplication with `ε`.
pub fn pell_pairs_upto(s: &Polynomial, bound: u32) -> Result<Vec<PellPair>> {
    let e = epsilon(s)?;
    let mut cur = QuadElement::one(s)?;
    let mut out = Vec::with_capacity(bound as usize + 1);
    for n in 0..=bound {
        out.push(PellPair {
            n: n as i64,
            f: cur.u.clone(),
            g: -&cur.w,
            s: s.clone(),
        });
        cur = cur.mul(&e)?;
    }
    Ok(out)
}

pub fn check_degree_law(pair: &PellPair) -> Check {
    let ds = pair.s.degree().unwrap_or(0);
    let n = pair.n.unsigned_abs() as usize;
    let df = pair.f.degree();
    let dg = pair.g.degree();
    let expect_g = if n == 0 { None } else { Some((n - 1) * ds) };
    Check::pass_if(
        format!("degree-law/s={}/n={}", pair.s, pair.n),
        df == Some(n * ds) && dg == expect_g,
        json!({ "deg_f": df, "deg_g": dg, "deg_s": ds }),
    )
}

/// `ℓ | n` exactly when `g_ℓ | g_n`.
pub fn check_divisibility_law(gl: &PellPair, gn: &PellPair) -> Result<Check> {
    let l = gl.n;
    let n = gn.n;
    if l < 1 || n < 1 {
        return Err(Error::OutOfRange(format!("indices ({l}, {n}) must be positive")));
    }
    let divides_index = n % l == 0;
    let divides_poly = gl.g.divides(&gn.g)?;
    Ok(Check::pass_if(
        format!("divisibility-law/s={}/l={l}/n={n}", gl.s),
        divides_index == divides_poly,
        json!({ "l_divides_n": divides_index, "g_l_divides_g_n": divides_poly }),
    ))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Recognized {
    /// Signed index: `(f, g) = sign · (f_n, g_n)`.
    pub n: i64,
    pub sign: i8,
}

pub fn recognize_solution(f: &Polynomial, g: &Polynomial, s: &Polynomial) -> Result<Recognized> {
    let ds = s
        .degree()
        .filter(|&d| d > 0)
        .ok_or_else(|| Error::ConstantParameter(s.to_string()))?;
    if !pell_identity(f, g, s) {
        return Err(Error::PellIdentityFails);
    }
    let df = f.degree().expect("f is nonzero when the identity holds");
    if !df.is_multiple_of(ds) {
        return Err(Error::Precondition(format!(
            "deg f = {df} is not a multiple of deg s = {ds}"
        )));
    }
    let n = (df / ds) as i64;
    let base = pell_pair(s, n)?;
    for (idx, cand) in [(n, base.g.clone()), (-n, -&base.g)] {
        for sign in [1i8, -1] {
            let fs = if sign == 1 { base.f.clone() } else { -&base.f };
            let gs = if sign == 1 { cand.clone() } else { -&cand };
            if &fs == f && &gs == g {
                return Ok(Recognized { n: idx, sign });
            }
        }
    }
    Err(Error::Precondition("solution outside the generated family".into()))
}

/// `w_n ≡ n (mod t − 1)` with `w_n = g_n` over `s = t`.
pub fn wn_congruence(n: i64) -> Result<Check> {
    let t = Polynomial::t();
    let pair = pell_pair(&t, n)?;
    let diff = &pair.g - &Polynomial::from_int(n);
    let modulus = Polynomial::from_ints(&[-1, 1]);
    let ok = modulus.divides(&diff)?;
    Ok(Check::pass_if(
        format!("wn-congruence/n={n}"),
        ok,
        json!({ "w_n": pair.g.to_text("t") }),
    ))
}

/// `q_n = (εⁿ − 1)/(ε − 1)` over `s = t`, with the check `q_n ≡ n (mod ε − 1)`.
pub fn eps_quotient(n: u32) -> Result<(QuadElement, Check)> {
    let t = Polynomial::t();
    let e = epsilon(&t)?;
    let one = Polynomial::one();
    let em1 = e.add_poly(&-&one);
    let num = e.pow(n as i64)?.add_poly(&-&one);
    let q = quad_divisible(&num, &em1)?
        .quotient()
        .cloned()
        .ok_or_else(|| Error::Precondition("ε − 1 must divide εⁿ − 1".into()))?;
    let shifted = q.add_poly(&-&Polynomial::from_int(n as i64));
    let congruent = quad_divisible(&shifted, &em1)?.is_divisible();
    let check = Check::pass_if(
        format!("eps-quotient/n={n}"),
        congruent,
        json!({ "q_u": q.u.to_text("t"), "q_w": q.w.to_text("t") }),
    );
    Ok((q, check))
}

/// Identity, degree, divisibility and round-trip laws for `1 ≤ ℓ, n ≤ bound`.
pub fn law_suite(s: &Polynomial, bound: u32) -> Result<Vec<Check>> {
    let pairs = pell_pairs_upto(s, bound)?;
    let mut checks = Vec::new();
    let mut identity_fail = Vec::new();
    let mut degree_fail = Vec::new();
    let mut roundtrip_fail = Vec::new();
    for p in &pairs {
        if !p.identity_holds() {
            identity_fail.push(p.n);
        }
        if p.n >= 1 && check_degree_law(p).status != crate::report::Status::Pass {
            degree_fail.push(p.n);
        }
        match recognize_solution(&p.f, &p.g, s) {
            Ok(r) if r == (Recognized { n: p.n, sign: 1 }) => {}
            _ => roundtrip_fail.push(p.n),
        }
    }
    let mut div_fail = Vec::new();
    for l in 1..=bound as usize {
        for n in 1..=bound as usize {
            if !check_divisibility_law(&pairs[l], &pairs[n])?.passed() {
                div_fail.push((l, n));
            }
        }
    }
    let tag = s.to_text("t");
    checks.push(Check::pass_if(
        format!("pell/{tag}/identity"),
        identity_fail.is_empty(),
        json!({ "bound": bound, "failures": identity_fail }),
    ));
    checks.push(Check::pass_if(
        format!("pell/{tag}/degree-law"),
        degree_fail.is_empty(),
        json!({ "bound": bound, "failures": degree_fail }),
    ));
    checks.push(Check::pass_if(
        format!("pell/{tag}/divisibility-law"),
        div_fail.is_empty(),
        json!({ "bound": bound, "failures": div_fail }),
    ));
    checks.push(Check::pass_if(
        format!("pell/{tag}/round-trip"),
        roundtrip_fail.is_empty(),
        json!({ "bound": bound, "failures": roundtrip_fail }),
    ));
    Ok(checks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(s: &str) -> Polynomial {
        s.parse().unwrap()
    }

    #[test]
    fn pair_examples() {
        let t = p("t");
        let pp = pell_pair(&t, 0).unwrap();
        assert_eq!((pp.f, pp.g), (p("1"), p("0")));
        let pp = pell_pair(&t, 2).unwrap();
        assert_eq!((pp.f, pp.g), (p("2t^2 - 1"), p("2t")));
        let pp = pell_pair(&t, 3).unwrap();
        assert_eq!((pp.f, pp.g), (p("4t^3 - 3t"), p("4t^2 - 1")));
        assert!(matches!(pell_pair(&p("5"), 2), Err(Error::ConstantParameter(_))));
    }

    #[test]
    fn law_examples() {
        let t = p("t");
        assert!(check_degree_law(&pell_pair(&t, 3).unwrap()).passed());
        let c = check_degree_law(&pell_pair(&p("t^2"), 2).unwrap());
        assert_eq!(c.details["deg_f"], 4);
        assert_eq!(c.details["deg_g"], 2);
        assert!(check_degree_law(&pell_pair(&t, 1).unwrap()).passed());

        let g = |n| pell_pair(&t, n).unwrap();
        let c = check_divisibility_law(&g(2), &g(6)).unwrap();
        assert!(c.passed() && c.details["g_l_divides_g_n"] == true);
        let c = check_divisibility_law(&g(2), &g(3)).unwrap();
        assert!(c.passed() && c.details["g_l_divides_g_n"] == false);
        assert!(check_divisibility_law(&g(1), &g(7)).unwrap().passed());
    }

    #[test]
    fn recognition_examples() {
        let t = p("t");
        assert_eq!(
            recognize_solution(&p("2t^2 - 1"), &p("2t"), &t).unwrap(),
            Recognized { n: 2, sign: 1 }
        );
        assert_eq!(
            recognize_solution(&p("1"), &p("0"), &t).unwrap(),
            Recognized { n: 0, sign: 1 }
        );
        assert_eq!(
            recognize_solution(&p("-t"), &p("-1"), &t).unwrap(),
            Recognized { n: 1, sign: -1 }
        );
        assert_eq!(
            recognize_solution(&p("t"), &p("-1"), &t).unwrap(),
            Recognized { n: -1, sign: 1 }
        );
        assert_eq!(recognize_solution(&p("t"), &p("2"), &t), Err(Error::PellIdentityFails));
    }

    #[test]
    fn congruence_examples() {
        for n in [1, 2, -3, 0, 17, -50] {
            assert!(wn_congruence(n).unwrap().passed(), "n = {n}");
        }
        let (q, c) = eps_quotient(2).unwrap();
        assert!(c.passed());
        assert_eq!((q.u, q.w), (p("t + 1"), p("-1")));
        let (q, c) = eps_quotient(0).unwrap();
        assert!(c.passed() && q.is_zero());
        assert!(eps_quotient(5).unwrap().1.passed());
    }

    #[test]
    fn laws_for_standard_parameters() {
        for s in ["t", "2t", "t^2", "3t + 1"] {
            for c in law_suite(&p(s), 12).unwrap() {
                assert!(c.passed(), "{} {:?}", c.name, c.details);
            }
        }
    }

    proptest! {
        #[test]
        fn recognize_inverts_generate(n in -15i64..=15, sign in prop::bool::ANY, s in 0usize..4) {
            let s = [p("t"), p("2t"), p("t^2"), p("3t + 1")][s].clone();
            let pair = pell_pair(&s, n).unwrap();
            prop_assert!(pair.identity_holds());
            let (f, g) = if sign { (pair.f, pair.g) } else { (-pair.f, -pair.g) };
            let r = recognize_solution(&f, &g, &s).unwrap();
            // index 0 has no sign on g; the pair (±1, 0) is recognized with n = 0
            prop_assert_eq!(r.n.abs(), n.abs());
            if n != 0 {
                prop_assert_eq!(r, Recognized { n, sign: if sign { 1 } else { -1 } });
            }
        }
    }
}
