//! The acceptance criteria as data, shared by the test harness and the
//! `verify-all` command.

use std::collections::BTreeSet;

use num_traits::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;

use crate::arith::{four_squares, int, rat, Integer, Rational};
use crate::cyclo::{
    ap1_checks, approx_checks, approx_point, doesnotdividep_checks, forweak_approx, forweak_checks, product_identity,
    SpecialFormIndex,
};
use crate::defsys::{
    exp_accepted_results, exp_system, nonneg_gadget, odd_integer_search, odd_integer_system, SinglefoldTable, Verdict,
};
use crate::error::{Error, Result};
use crate::parcheck::{
    find_par_tuple, par_eval, perturbations, reconstruct_check, theta, theta_inverse, FiveSquaresBounds,
};
use crate::pell::law_suite;
use crate::poly::{factor_small, Polynomial};
use crate::qforms::{
    anisotropic_primes, eisenstein_certify, hilbert_symbol, local_solubility_oracle, oracle_precision, padic_xi_checks,
    padic_xi_construct, real_xi_construct, relevant_places, test_form, Place,
};
use crate::report::{Check, Report};

pub const DEFAULT_SEED: u64 = 20_240_601;
pub const BOUND_ENV: &str = "WORKBENCH_BOUND";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Profile {
    Quick,
    Full,
}

impl std::str::FromStr for Profile {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "quick" => Ok(Profile::Quick),
            "full" => Ok(Profile::Full),
            other => Err(Error::Parse(format!("unknown profile {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteConfig {
    pub profile: Profile,
    pub seed: u64,
    /// Replaces the default search bound of the witness-system criteria.
    pub bound: Option<u32>,
}

impl SuiteConfig {
    pub fn new(profile: Profile, seed: u64) -> Self {
        SuiteConfig {
            profile,
            seed,
            bound: None,
        }
    }

    /// Picks up `WORKBENCH_BOUND` when it is set.
    pub fn with_env(mut self) -> Result<Self> {
        if let Ok(v) = std::env::var(BOUND_ENV) {
            let b = v
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("{BOUND_ENV}={v:?} is not a bound")))?;
            self.bound = Some(b);
        }
        Ok(self)
    }

    fn full(&self) -> bool {
        self.profile == Profile::Full
    }

    fn pick<T>(&self, quick: T, full: T) -> T {
        if self.full() {
            full
        } else {
            quick
        }
    }

    fn rng(&self, criterion: u8) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed ^ ((criterion as u64) << 56))
    }
}

pub struct Criterion {
    pub id: u8,
    pub slug: &'static str,
    pub title: &'static str,
    run: fn(&SuiteConfig) -> Result<Vec<Check>>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CriterionOutcome {
    pub id: u8,
    pub slug: String,
    pub title: String,
    pub passed: bool,
    pub checks: Vec<Check>,
}

impl CriterionOutcome {
    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.passed()).collect()
    }

    pub fn summary_line(&self) -> String {
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        let failing: Vec<&str> = self.failures().iter().map(|c| c.name.as_str()).collect();
        if failing.is_empty() {
            format!(
                "{verdict} [{:02}] {} ({} checks)",
                self.id,
                self.title,
                self.checks.len()
            )
        } else {
            let shown = failing.iter().take(3).copied().collect::<Vec<_>>().join(", ");
            let more = match failing.len() {
                n if n > 3 => format!(" and {} more", n - 3),
                _ => String::new(),
            };
            format!("{verdict} [{:02}] {} failing: {shown}{more}", self.id, self.title)
        }
    }
}

pub fn criteria() -> Vec<Criterion> {
    vec![
        Criterion {
            id: 1,
            slug: "pell-laws",
            title: "Pell laws",
            run: pell_laws,
        },
        Criterion {
            id: 2,
            slug: "singlefold",
            title: "single-fold integers",
            run: singlefold,
        },
        Criterion {
            id: 3,
            slug: "exp",
            title: "exponentiation system",
            run: exponentiation,
        },
        Criterion {
            id: 4,
            slug: "odd-int",
            title: "odd-integer system",
            run: odd_integer,
        },
        Criterion {
            id: 5,
            slug: "nonneg",
            title: "non-negativity gadget",
            run: nonneg,
        },
        Criterion {
            id: 6,
            slug: "cyclo-base",
            title: "cyclotomic base",
            run: cyclo_base,
        },
        Criterion {
            id: 7,
            slug: "forweak",
            title: "cyclotomic approximation mod T^d",
            run: forweak,
        },
        Criterion {
            id: 8,
            slug: "approx",
            title: "approximation point",
            run: approx,
        },
        Criterion {
            id: 9,
            slug: "resultants",
            title: "resultant divisibility",
            run: resultants,
        },
        Criterion {
            id: 10,
            slug: "hilbert",
            title: "Hilbert symbols",
            run: hilbert,
        },
        Criterion {
            id: 11,
            slug: "constructors",
            title: "xi constructors",
            run: constructors,
        },
        Criterion {
            id: 12,
            slug: "theta-par",
            title: "theta and Par",
            run: theta_par,
        },
        Criterion {
            id: 13,
            slug: "four-squares",
            title: "four squares",
            run: four_squares_all,
        },
    ]
}

pub fn run_criterion(c: &Criterion, cfg: &SuiteConfig) -> CriterionOutcome {
    let prefix = format!("c{:02}-{}", c.id, c.slug);
    let mut checks = match (c.run)(cfg) {
        Ok(checks) => checks,
        Err(e) => vec![Check::pass_if("error", false, json!(e.to_string()))],
    };
    for ch in &mut checks {
        ch.name = format!("{prefix}/{}", ch.name);
    }
    checks.sort_by(|a, b| a.name.cmp(&b.name));
    CriterionOutcome {
        id: c.id,
        slug: c.slug.into(),
        title: c.title.into(),
        passed: checks.iter().all(Check::passed),
        checks,
    }
}

pub fn run_by_id(id: u8, cfg: &SuiteConfig) -> Result<CriterionOutcome> {
    let all = criteria();
    let c = all
        .iter()
        .find(|c| c.id == id)
        .ok_or_else(|| Error::OutOfRange(format!("criterion {id}")))?;
    Ok(run_criterion(c, cfg))
}

pub fn run_all(cfg: &SuiteConfig) -> Report {
    let outcomes: Vec<CriterionOutcome> = criteria().iter().map(|c| run_criterion(c, cfg)).collect();
    let summary: Vec<_> = outcomes
        .iter()
        .map(|o| json!({ "id": o.id, "slug": o.slug, "passed": o.passed, "failing": o.failures().len() }))
        .collect();
    let checks = outcomes.into_iter().flat_map(|o| o.checks).collect();
    Report::new(
        "verify-all",
        json!({ "profile": cfg.profile, "seed": cfg.seed, "bound": cfg.bound }),
        json!({ "criteria": summary }),
        checks,
    )
}

fn failures_check<T: Serialize>(name: &str, tested: usize, failures: &[T]) -> Check {
    let shown: Vec<_> = failures.iter().take(20).map(|f| json!(f)).collect();
    Check::pass_if(
        name,
        failures.is_empty(),
        json!({ "tested": tested, "failures": failures.len(), "first": shown }),
    )
}

fn pell_laws(cfg: &SuiteConfig) -> Result<Vec<Check>> {
    let bound = cfg.pick(12, 20);
    let mut out = Vec::new();
    for s in ["t", "2t", "t^2", "3t + 1"] {
        out.extend(law_suite(&s.parse()?, bound)?);
    }
    Ok(out)
}

fn singlefold(cfg: &SuiteConfig) -> Result<Vec<Check>> {
    let bound = cfg.bound.unwrap_or(50);
    let table = SinglefoldTable::new(bound)?;
    let mut bad = Vec::new();
    for c in -10..=10 {
        let r = table.check(&Polynomial::from_int(c))?;
        if r.verdict != Verdict::Accepted || r.fold_count != 1 {
            bad.push(json!({ "c": c, "verdict": r.verdict, "fold_count": r.fold_count }));
        }
    }
    let mut not_refuted = Vec::new();
    for c in ["1/2", "t", "t^2 + 1"] {
        let r = table.check(&c.parse()?)?;
        if r.verdict != Verdict::RefutedToBound(bound as u64) {
            not_refuted.push(json!({ "c": c, "verdict": r.verdict }));
        }
    }
    Ok(vec![
        failures_check("integers-single-fold", 21, &bad),
        failures_check("non-integers-refuted", 3, &not_refuted),
    ])
}

fn exponentiation(cfg: &SuiteConfig) -> Result<Vec<Check>> {
    let bmax: i64 = cfg.pick(6, 16);
    let bound = cfg.bound.unwrap_or(8);
    let mut wrong_set = Vec::new();
    let mut disagree = Vec::new();
    let mut multi = Vec::new();
    let mut cells = 0;
    for base in (-bmax..=bmax).filter(|b| *b != 0) {
        for e in -4i64..=4 {
            cells += 1;
            let cell = exp_accepted_results(base, e, bound)?;
            let p = Integer::from(base.unsigned_abs()).pow(e.unsigned_abs() as u32);
            let expected: BTreeSet<Integer> = [p.clone(), -p.clone()].into();
            let got: BTreeSet<Integer> = cell.accepted.keys().cloned().collect();
            if got != expected {
                wrong_set.push(json!({ "base": base, "exp": e, "accepted": got.iter().map(|c| c.to_string()).collect::<Vec<_>>() }));
            }
            for (c, count) in &cell.accepted {
                if *count != 1 {
                    multi.push(json!({ "base": base, "exp": e, "result": c.to_string(), "fold_count": count }));
                }
            }
            // the direct search on accepted values, their neighbours and small values
            let mut probe: BTreeSet<Integer> = (-3..=3).map(Integer::from).collect();
            for c in &expected {
                probe.extend([c - 1, c.clone(), c + 1]);
            }
            for c in probe {
                let direct = exp_system(&int(base), &c, &int(e), bound)?;
                let fast = cell.accepted.get(&c).copied().unwrap_or(0);
                if direct.fold_count != fast {
                    disagree.push(json!({ "base": base, "exp": e, "result": c.to_string(), "direct": direct.fold_count, "fast": fast }));
                }
            }
        }
    }
    Ok(vec![
        failures_check("accepted-set", cells, &wrong_set),
        failures_check("brute-force-agreement", cells, &disagree),
        failures_check("single-fold", cells, &multi),
    ])
}

fn odd_integer(cfg: &SuiteConfig) -> Result<Vec<Check>> {
    let bound = cfg.bound.unwrap_or(12);
    let mut bad = Vec::new();
    for r in (-9i64..=9).filter(|r| r % 2 != 0) {
        let rep = odd_integer_system(r)?;
        if rep.verdict != Verdict::Accepted {
            bad.push(json!({ "r": r, "verdict": rep.verdict }));
        }
    }
    let mut not_refuted = Vec::new();
    let rejects = ["0", "2", "-4", "6", "1/3", "x", "2x + 1", "x^2"];
    for a in rejects {
        let rep = odd_integer_search(&a.parse()?, bound)?;
        if rep.verdict.is_accepted() {
            not_refuted.push(json!({ "a": a, "verdict": rep.verdict }));
        }
    }
    Ok(vec![
        failures_check("constructed-witnesses", 10, &bad),
        failures_check("even-and-nonconstant-refuted", rejects.len(), &not_refuted),
    ])
}

fn nonneg(_cfg: &SuiteConfig) -> Result<Vec<Check>> {
    let mut accepted = Vec::new();
    let mut wrong = Vec::new();
    let mut anomaly = None;
    for d in -20i64..=20 {
        let rep = nonneg_gadget(d, None)?;
        let ok = rep.verdict.is_accepted();
        if ok {
            accepted.push(d);
        }
        if d == -1 {
            anomaly = Some(json!({ "d": -1, "verdict": rep.verdict, "notes": rep.notes }));
        } else if ok != (d >= 0) {
            wrong.push(json!({ "d": d, "verdict": rep.verdict }));
        }
    }
    Ok(vec![
        failures_check("accepted-set-except-minus-one", 40, &wrong),
        Check::measured("accepted-set", json!(accepted)),
        Check::measured("minus-one", anomaly.unwrap_or_default()),
    ])
}

fn cyclo_base(cfg: &SuiteConfig) -> Result<Vec<Check>> {
    let n_max = cfg.pick(100, 200);
    let mut bad = Vec::new();
    for n in 1..=n_max {
        if !product_identity(n)? {
            bad.push(n);
        }
    }
    let mut out = vec![failures_check("product-identity", n_max as usize, &bad)];
    out.extend(ap1_checks(n_max, 13)?);
    Ok(out)
}

fn random_forweak_input<R: Rng>(rng: &mut R) -> (Polynomial, u64) {
    let deg = rng.gen_range(0..=6);
    let mut coeffs: Vec<i64> = (0..=deg).map(|_| rng.gen_range(-5..=5)).collect();
    coeffs[0] = if rng.gen_bool(0.5) { 1 } else { -1 };
    if deg > 0 && coeffs[deg] == 0 {
        coeffs[deg] = 1;
    }
    (Polynomial::from_ints(&coeffs), rng.gen_range(1..=8))
}

fn forweak(cfg: &SuiteConfig) -> Result<Vec<Check>> {
    let count = cfg.pick(40, 200);
    let mut rng = cfg.rng(7);
    let mut bad_congruence = Vec::new();
    let mut bad_member = Vec::new();
    let mut expanded = 0;
    let mut bad_expanded = Vec::new();
    for _ in 0..count {
        let (f, d) = random_forweak_input(&mut rng);
        let spec = forweak_approx(&f, d)?;
        let label = json!({ "F": f.to_text("T"), "d": d, "M": spec });
        for ch in forweak_checks(&f, d, &spec) {
            let ok = ch.passed();
            if ch.name.ends_with("/congruence") {
                if !ok {
                    bad_congruence.push(label.clone());
                }
            } else if ch.name.ends_with("/member") {
                if !ok {
                    bad_member.push(label.clone());
                }
            } else {
                expanded += 1;
                if !ok {
                    bad_expanded.push(json!({ "case": label, "check": ch.name }));
                }
            }
        }
    }
    Ok(vec![
        failures_check("congruence", count, &bad_congruence),
        failures_check("member", count, &bad_member),
        failures_check("expanded-squarefree-divisor", expanded, &bad_expanded),
    ])
}

const APPROX_POOL: [(u64, u64); 11] = [
    (2, 1),
    (3, 1),
    (3, 2),
    (5, 1),
    (5, 2),
    (7, 1),
    (7, 2),
    (5, 4),
    (7, 3),
    (7, 6),
    (13, 4),
];

fn approx(_cfg: &SuiteConfig) -> Result<Vec<Check>> {
    let pool: Vec<SpecialFormIndex> = APPROX_POOL
        .iter()
        .map(|&(p, m)| SpecialFormIndex::new(p, m))
        .collect::<Result<_>>()?;
    let mut sets: Vec<Vec<SpecialFormIndex>> = pool.iter().map(|i| vec![*i]).collect();
    for (i, a) in pool.iter().enumerate() {
        for b in &pool[i + 1..] {
            sets.push(vec![*a, *b]);
        }
    }
    let mut out = Vec::new();
    let mut skipped = Vec::new();
    for set in sets {
        match approx_point(&set) {
            Ok(point) => out.extend(approx_checks(&set, &point)),
            Err(Error::NonCoprimeModuli(..)) => skipped.push(crate::cyclo::index_set_label(&set)),
            Err(e) => return Err(e),
        }
    }
    out.push(Check::measured("non-coprime-sets-skipped", json!(skipped)));
    Ok(out)
}

fn resultants(_cfg: &SuiteConfig) -> Result<Vec<Check>> {
    doesnotdividep_checks(60, 13)
}

fn real_oracle(a: &Integer, b: &Integer) -> i8 {
    // z² = a x² + b y² with (x, y) ∈ {(1, 0), (0, 1), (1, 1)} covers every sign pattern
    if a.is_positive() || b.is_positive() || (a + b).is_positive() {
        1
    } else {
        -1
    }
}

fn hilbert(cfg: &SuiteConfig) -> Result<Vec<Check>> {
    let r: i64 = cfg.pick(8, 20);
    let mut disagree = Vec::new();
    let mut tested = 0;
    for a in (-r..=r).filter(|x| *x != 0) {
        for b in (-r..=r).filter(|x| *x != 0) {
            let (ai, bi) = (int(a), int(b));
            let (ar, br) = (rat(a, 1), rat(b, 1));
            for p in [2u64, 3, 5, 7, 11, 13] {
                tested += 1;
                let k = oracle_precision(&ai, &bi, p);
                let oracle = local_solubility_oracle(&ai, &bi, p, k)?;
                let closed = hilbert_symbol(&ar, &br, Place::Finite(p))?;
                if oracle != closed {
                    disagree
                        .push(json!({ "a": a, "b": b, "place": format!("p:{p}"), "closed": closed, "oracle": oracle }));
                }
            }
            tested += 1;
            let closed = hilbert_symbol(&ar, &br, Place::Real)?;
            if closed != real_oracle(&ai, &bi) {
                disagree.push(json!({ "a": a, "b": b, "place": "real", "closed": closed }));
            }
        }
    }
    let pairs = cfg.pick(100, 500);
    let mut rng = cfg.rng(10);
    let mut bad = Vec::new();
    let random_q = |rng: &mut ChaCha8Rng| loop {
        let n: i64 = rng.gen_range(-2000..=2000);
        let d: i64 = rng.gen_range(1..=60);
        if n != 0 {
            return Rational::new(int(n), int(d));
        }
    };
    for _ in 0..pairs {
        let a = random_q(&mut rng);
        let b = random_q(&mut rng);
        let mut product = 1i8;
        for v in relevant_places(&a, &b)? {
            product *= hilbert_symbol(&a, &b, v)?;
        }
        if product != 1 {
            bad.push(json!({ "a": a.to_string(), "b": b.to_string() }));
        }
    }
    Ok(vec![
        failures_check("closed-form-vs-oracle", tested, &disagree),
        failures_check("reciprocity", pairs, &bad),
    ])
}

fn constructors(cfg: &SuiteConfig) -> Result<Vec<Check>> {
    let (a, b) = test_form();
    let primes = anisotropic_primes(&a, &b)?;
    let mut out = Vec::new();
    for f in ["T^2", "T^2 + 1", "T^2 + T + 1"] {
        let f: Polynomial = f.parse()?;
        for &p in &primes {
            let xi = padic_xi_construct(&f, &[p])?;
            out.extend(padic_xi_checks(&f, &xi));
        }
        let real = real_xi_construct(&f)?;
        out.push(Check::pass_if(
            format!("real-xi/{}", f.to_text("T")),
            real.sturm_count == 0,
            json!({ "xi": real.xi, "h": real.h, "doublings": real.doublings }),
        ));
    }
    let h: i64 = cfg.pick(2, 3);
    let mut certified = 0;
    let mut reducible = Vec::new();
    let span = (2 * h + 1) as usize;
    for deg in 2..=4usize {
        let total = span.pow(deg as u32 + 1);
        for code in 0..total {
            let mut rest = code;
            let coeffs: Vec<i64> = (0..=deg)
                .map(|_| {
                    let c = (rest % span) as i64 - h;
                    rest /= span;
                    c
                })
                .collect();
            if coeffs[deg] == 0 {
                continue;
            }
            let f = Polynomial::from_ints(&coeffs);
            for p in [2u64, 3] {
                if eisenstein_certify(&f, p)?.certified {
                    certified += 1;
                    if !factor_small(&f)?.is_irreducible() {
                        reducible.push(json!({ "f": f.to_text("T"), "p": p }));
                    }
                }
            }
        }
    }
    out.push(failures_check("eisenstein-implies-irreducible", certified, &reducible));
    Ok(out)
}

fn theta_par(cfg: &SuiteConfig) -> Result<Vec<Check>> {
    let n_theta: i64 = cfg.pick(10_000, 100_000);
    let mut bad_round = Vec::new();
    for n in 1..=n_theta {
        let n = int(n);
        if theta_inverse(&theta(&n)?)? != n {
            bad_round.push(n.to_string());
        }
    }

    // every polynomial of height ≤ 8 and degree ≤ max_deg is hit
    let max_deg = cfg.pick(2u32, 4);
    let mut bad_onto = Vec::new();
    let total = 17usize.pow(max_deg + 1);
    for code in 0..total {
        let mut rest = code;
        let coeffs: Vec<i64> = (0..=max_deg)
            .map(|_| {
                let c = (rest % 17) as i64 - 8;
                rest /= 17;
                c
            })
            .collect();
        let f = Polynomial::from_ints(&coeffs);
        if theta(&theta_inverse(&f)?)? != f {
            bad_onto.push(f.to_text("T"));
        }
    }

    let n_par = cfg.pick(60u64, 200);
    let per_n = cfg.pick(5, 20);
    let bounds = FiveSquaresBounds::default();
    let mut rng = cfg.rng(12);
    let mut rejected_tuple = Vec::new();
    let mut rejected_self = Vec::new();
    let mut accepted_perturbation = Vec::new();
    let mut exhausted = 0;
    let mut perturbed = 0;
    for n in 1..=n_par {
        let t = find_par_tuple(n, &bounds)?;
        let verdict = par_eval(&t, &bounds)?;
        if !verdict.accepted {
            rejected_tuple.push(json!({ "n": n, "conditions": verdict.conditions }));
        }
        if t.g.is_none() {
            exhausted += 1;
        }
        let pn = theta(&int(n as i64))?;
        if !reconstruct_check(&pn, &t, None)?.accepted {
            rejected_self.push(n);
        }
        for f in perturbations(&pn, &t, per_n, &mut rng) {
            perturbed += 1;
            if reconstruct_check(&f, &t, None)?.accepted {
                accepted_perturbation.push(json!({ "n": n, "F": f.to_text("T") }));
            }
        }
    }
    Ok(vec![
        failures_check("theta-round-trip", n_theta as usize, &bad_round),
        failures_check("theta-onto-small", total, &bad_onto),
        failures_check("par-accepts", n_par as usize, &rejected_tuple),
        failures_check("reconstruct-accepts-p-n", n_par as usize, &rejected_self),
        failures_check("perturbations-rejected", perturbed, &accepted_perturbation),
        Check::measured("g-search-exhausted", json!({ "tuples": n_par, "exhausted": exhausted })),
    ])
}

fn four_squares_all(cfg: &SuiteConfig) -> Result<Vec<Check>> {
    let n_max: i64 = cfg.pick(2_000, 10_000);
    let mut bad = Vec::new();
    for n in 0..=n_max {
        let n = int(n);
        let xs = four_squares(&n)?;
        let sum: Integer = xs.iter().map(|x| x * x).sum();
        if sum != n || xs.iter().any(|x| x.is_negative()) {
            bad.push(n.to_string());
        }
    }
    Ok(vec![failures_check("decomposition", n_max as usize + 1, &bad)])
}
