//! Cyclotomic polynomials, special-form indices `n = p·m` with `m | p − 1`,
//! approximation of integer polynomials by products of special cyclotomics,
//! and small-range checks of the root-of-unity valuation lemmas.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::sync::{Mutex, OnceLock};

use num_integer::Integer as _;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};
use serde_json::json;

use crate::arith::{
    as_string, crt, divisors, euler_phi, factorize_u64, hensel_root_of_unity, int, is_prime_u64, ord_p_int, rat_int,
    Integer, Valuation,
};
use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::report::Check;

pub const MAX_INDEX: u64 = 10_000;
const PRIME_SEARCH_LIMIT: u64 = 1_000_000_000;
const FULL_EXPANSION_DEGREE: u64 = 600;

/// `Φ_n mod T^k` from `Φ_n = ∏_{d|n} (1 − T^d)^{μ(n/d)}` (valid for `n ≥ 2`).
/// Multiplications run first so every division by `1 − T^d` is exact.
fn series(n: u64, k: usize) -> Vec<i128> {
    if n == 1 {
        let mut v = vec![-1i128, 1];
        v.resize(k.max(2), 0);
        v.truncate(k);
        return v;
    }
    let mut a = vec![0i128; k];
    if k == 0 {
        return a;
    }
    a[0] = 1;
    // μ(n/d) ≠ 0 only for d = n / (product of distinct primes of n)
    let primes: Vec<u64> = factorize_u64(n).into_iter().map(|(p, _)| p).collect();
    let mut divs: Vec<(usize, i32)> = Vec::new();
    for mask in 0u32..(1 << primes.len()) {
        let q: u64 = primes
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, p)| p)
            .product();
        let d = n / q;
        if d < k as u64 {
            divs.push((d as usize, if mask.count_ones() % 2 == 0 { 1 } else { -1 }));
        }
    }
    for &(d, _) in divs.iter().filter(|(_, mu)| *mu == 1) {
        for i in (d..k).rev() {
            a[i] = a[i].checked_sub(a[i - d]).expect("cyclotomic coefficient overflow");
        }
    }
    for &(d, _) in divs.iter().filter(|(_, mu)| *mu == -1) {
        for i in d..k {
            a[i] = a[i].checked_add(a[i - d]).expect("cyclotomic coefficient overflow");
        }
    }
    a
}

/// Coefficients of `Φ_n mod T^k`, for any `n ≥ 1`.
pub fn cyclotomic_trunc(n: u64, k: usize) -> Result<Vec<Integer>> {
    if n == 0 {
        return Err(Error::OutOfRange("cyclotomic index 0".into()));
    }
    Ok(series(n, k).into_iter().map(Integer::from).collect())
}

fn cache() -> &'static Mutex<HashMap<u64, Polynomial>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Polynomial>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// `Φ_n` for `1 ≤ n ≤ 10⁴`, memoized.
pub fn cyclotomic(n: u64) -> Result<Polynomial> {
    if n == 0 || n > MAX_INDEX {
        return Err(Error::OutOfRange(format!(
            "cyclotomic index {n} (allowed 1..={MAX_INDEX})"
        )));
    }
    if let Some(p) = cache().lock().expect("cache lock").get(&n) {
        return Ok(p.clone());
    }
    let deg = euler_phi(n) as usize;
    let coeffs: Vec<Integer> = series(n, deg + 1).into_iter().map(Integer::from).collect();
    let p = Polynomial::from_integers(&coeffs);
    cache().lock().expect("cache lock").insert(n, p.clone());
    Ok(p)
}

/// Whether `∏_{d|n} Φ_d = Tⁿ − 1`, multiplied out in full.
pub fn product_identity(n: u64) -> Result<bool> {
    let mut acc = Polynomial::one();
    for d in divisors(n) {
        acc = &acc * &cyclotomic(d)?;
    }
    let target = &Polynomial::monomial(rat_int(int(1)), n as usize) - &Polynomial::one();
    Ok(acc == target)
}

fn eval_at(f: &Polynomial, c: &Integer) -> Integer {
    let coeffs = f.integer_coeffs().expect("integer polynomial");
    coeffs.iter().rev().fold(Integer::zero(), |acc, a| acc * c + a)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct SpecialFormIndex {
    pub n: u64,
    pub p: u64,
    pub m: u64,
}

impl SpecialFormIndex {
    pub fn new(p: u64, m: u64) -> Result<Self> {
        if !is_prime_u64(p) {
            return Err(Error::NotPrime(p.to_string()));
        }
        if m == 0 || !(p - 1).is_multiple_of(m) {
            return Err(Error::OrderDoesNotDivide {
                m: m.to_string(),
                p: p.to_string(),
            });
        }
        Ok(SpecialFormIndex { n: p * m, p, m })
    }
}

impl fmt::Display for SpecialFormIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.p, self.m)
    }
}

/// The decomposition `n = p·m`; `p` has to be the largest prime factor since
/// `m < p`.
pub fn special_form(n: u64) -> Option<SpecialFormIndex> {
    if n < 2 {
        return None;
    }
    let (p, e) = *factorize_u64(n).last()?;
    let m = n / p;
    (e == 1 && (p - 1) % m == 0).then_some(SpecialFormIndex { n, p, m })
}

/// `m = ∏ pᵢ^{eᵢ+1}` for `d = ∏ pᵢ^{eᵢ}`.
fn base_modulus(d: u64) -> (u64, i32) {
    let f = factorize_u64(d);
    let m = f.iter().map(|&(p, e)| p.pow(e + 1)).product();
    let mu_rad = if f.len().is_multiple_of(2) { 1 } else { -1 };
    (m, mu_rad)
}

fn congruent_to(n: u64, d: u64, s: i8) -> bool {
    let k = 2 * d as usize;
    let mut want = vec![0i128; k];
    want[0] = 1;
    want[d as usize] = s as i128;
    series(n, k) == want
}

/// Special-form `n` with `Φ_n ≡ 1 + s·T^d mod T^{2d}`, smallest first. The
/// candidates are `r·m` with `r` a prime `≡ 1 mod m`, or `r = p₁p₂` with
/// `p₂·m | p₁ − 1`; each one is confirmed by expansion.
pub fn find_special_congruent(d: u64, s: i8, count: usize) -> Result<Vec<u64>> {
    if d == 0 || d > 16 {
        return Err(Error::OutOfRange(format!("d = {d} (allowed 1..=16)")));
    }
    if s != 1 && s != -1 {
        return Err(Error::Precondition(format!("sign {s} is not +1 or -1")));
    }
    let (m, _) = base_modulus(d);
    let mut out = Vec::new();
    let mut limit = 64 * m;
    while out.len() < count {
        if limit > PRIME_SEARCH_LIMIT {
            return Err(Error::Exhausted(format!(
                "found {} of {count} indices below {PRIME_SEARCH_LIMIT}",
                out.len()
            )));
        }
        let mut cands = BTreeSet::new();
        for p in (1..).map(|k| k * m + 1).take_while(|&p| p * m <= limit) {
            if is_prime_u64(p) {
                cands.insert(p * m);
            }
        }
        for p2 in (2..).take_while(|&p2| p2 * m * (p2 * m + 1) <= limit) {
            if !is_prime_u64(p2) || m % p2 == 0 {
                continue;
            }
            let step = p2 * m;
            for p1 in (1..).map(|k| k * step + 1).take_while(|&p1| p1 * step <= limit) {
                if is_prime_u64(p1) {
                    cands.insert(p1 * step);
                }
            }
        }
        out = cands
            .into_iter()
            .filter(|&n| special_form(n).is_some() && congruent_to(n, d, s))
            .take(count)
            .collect();
        limit *= 4;
    }
    Ok(out)
}

/// `±∏ Φ_{nᵢ}` over distinct special-form indices, sorted by `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycloProductSpec {
    pub sign: i8,
    pub indices: Vec<SpecialFormIndex>,
}

impl Serialize for CycloProductSpec {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let ns: Vec<u64> = self.indices.iter().map(|i| i.n).collect();
        json!({ "sign": self.sign, "indices": ns }).serialize(s)
    }
}

impl CycloProductSpec {
    pub fn degree(&self) -> u64 {
        self.indices.iter().map(|i| euler_phi(i.n)).sum()
    }

    pub fn lcm_index(&self) -> Integer {
        self.indices
            .iter()
            .fold(Integer::one(), |acc, i| acc.lcm(&Integer::from(i.n)))
    }

    /// `lcm(nᵢ)` when it is at most `limit`.
    pub fn lcm_index_up_to(&self, limit: u64) -> Option<u64> {
        self.indices.iter().try_fold(1u64, |acc, i| {
            let l = (acc / acc.gcd(&i.n)).checked_mul(i.n)?;
            (l <= limit).then_some(l)
        })
    }

    pub fn expand_trunc(&self, k: usize) -> Vec<Integer> {
        let mut acc = vec![Integer::zero(); k];
        if k == 0 {
            return acc;
        }
        acc[0] = Integer::from(self.sign);
        for idx in &self.indices {
            acc = mul_trunc(&acc, &series(idx.n, k));
        }
        acc
    }

    pub fn expand(&self) -> Result<Polynomial> {
        let mut acc = Polynomial::from_int(self.sign as i64);
        for idx in &self.indices {
            acc = &acc * &cyclotomic(idx.n)?;
        }
        Ok(acc)
    }

    /// Distinct, valid special-form factors and a unit sign.
    pub fn is_member(&self) -> bool {
        (self.sign == 1 || self.sign == -1)
            && self.indices.windows(2).all(|w| w[0].n < w[1].n)
            && self.indices.iter().all(|i| special_form(i.n) == Some(*i))
    }
}

fn mul_trunc(a: &[Integer], b: &[i128]) -> Vec<Integer> {
    let k = a.len();
    let mut out = vec![Integer::zero(); k];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(k - i) {
            if *y != 0 {
                out[i + j] += x * Integer::from(*y);
            }
        }
    }
    out
}

/// Hands out special-form indices whose non-fixed primes have never been
/// used before in the same run.
struct FreshSupply {
    used: BTreeSet<u64>,
    /// Where the last scan for each step or modulus stopped; everything
    /// before it is composite or already used.
    cursor_1_mod: BTreeMap<u64, u64>,
    cursor_small: BTreeMap<u64, u64>,
}

impl FreshSupply {
    fn new() -> Self {
        FreshSupply {
            used: BTreeSet::new(),
            cursor_1_mod: BTreeMap::new(),
            cursor_small: BTreeMap::new(),
        }
    }

    fn next_prime_1_mod(&mut self, step: u64, avoid: u64) -> Result<u64> {
        let start = self.cursor_1_mod.get(&step).copied().unwrap_or(1);
        let k = (start..)
            .take_while(|&k| k * step < PRIME_SEARCH_LIMIT)
            .find(|&k| {
                let p = k * step + 1;
                p != avoid && !self.used.contains(&p) && is_prime_u64(p)
            })
            .ok_or_else(|| Error::Exhausted(format!("no fresh prime = 1 mod {step}")))?;
        self.cursor_1_mod.insert(step, k + 1);
        Ok(k * step + 1)
    }

    fn next_small_prime(&mut self, m: u64) -> Result<u64> {
        let start = self.cursor_small.get(&m).copied().unwrap_or(2);
        let q = (start..)
            .take_while(|&q| q <= PRIME_SEARCH_LIMIT)
            .find(|&q| !m.is_multiple_of(q) && !self.used.contains(&q) && is_prime_u64(q))
            .ok_or_else(|| Error::Exhausted("no fresh prime".into()))?;
        self.cursor_small.insert(m, q + 1);
        Ok(q)
    }

    /// A special-form index with `Φ_n ≡ 1 + s·T^e mod T^{2e}`.
    fn take(&mut self, e: u64, s: i8) -> Result<SpecialFormIndex> {
        let (m, mu_rad) = base_modulus(e);
        loop {
            // sign of Φ_{rm} at T^e is −μ(r)·μ(rad m)
            let idx = if mu_rad == s as i32 {
                let p = self.next_prime_1_mod(m, 0)?;
                self.used.insert(p);
                SpecialFormIndex::new(p, m)?
            } else {
                let p2 = self.next_small_prime(m)?;
                // p2 is consumed even if no partner turns up
                self.used.insert(p2);
                let p1 = self.next_prime_1_mod(p2 * m, p2)?;
                self.used.insert(p1);
                SpecialFormIndex::new(p1, p2 * m)?
            };
            if congruent_to(idx.n, e, s) {
                return Ok(idx);
            }
        }
    }
}

/// `M ∈ 𝒟` with `F ≡ M mod T^d`, built by cancelling coefficients left to right.
pub fn forweak_approx(f: &Polynomial, d: u64) -> Result<CycloProductSpec> {
    let coeffs = f
        .integer_coeffs()
        .ok_or_else(|| Error::Precondition("F must have integer coefficients".into()))?;
    if d == 0 || d > 12 {
        return Err(Error::OutOfRange(format!("d = {d} (allowed 1..=12)")));
    }
    if let Some(deg) = f.degree().filter(|&g| g > 16) {
        return Err(Error::DegreeTooLarge { degree: deg, max: 16 });
    }
    let f0 = coeffs.first().cloned().unwrap_or_default();
    if !(f0.is_one() || (-&f0).is_one()) {
        return Err(Error::Precondition(format!("F(0) = {f0} is not +1 or -1")));
    }
    let sigma: i8 = if f0.is_one() { 1 } else { -1 };
    let k = d as usize;
    let target: Vec<Integer> = (0..k).map(|i| coeffs.get(i).cloned().unwrap_or_default()).collect();

    let mut spec = CycloProductSpec {
        sign: sigma,
        indices: Vec::new(),
    };
    let mut current = spec.expand_trunc(k);
    let mut supply = FreshSupply::new();
    for e in 1..k {
        let c = &target[e] - &current[e];
        if c.is_zero() {
            continue;
        }
        // multiplying by 1 + s·T^e shifts coefficient e by s·σ
        let s = if c.is_positive() == (sigma == 1) { 1 } else { -1 };
        let times = c.abs().to_u64().ok_or_else(|| Error::OutOfRange(c.to_string()))?;
        for _ in 0..times {
            let idx = supply.take(e as u64, s)?;
            current = mul_trunc(&current, &series(idx.n, k));
            spec.indices.push(idx);
        }
        debug_assert_eq!(current[e], target[e]);
    }
    spec.indices.sort();
    Ok(spec)
}

/// Membership, the congruence, and (when small enough to expand) squarefreeness
/// and `M | T^u − 1` for `u` the lcm of the indices.
pub fn forweak_checks(f: &Polynomial, d: u64, spec: &CycloProductSpec) -> Vec<Check> {
    let k = d as usize;
    let got = spec.expand_trunc(k);
    let want: Vec<Integer> = (0..k).map(|i| f.coeff(i).to_integer()).collect();
    let tag = format!("forweak/{}/{d}", f.to_text("T"));
    let mut checks = vec![
        Check::pass_if(
            format!("{tag}/congruence"),
            got == want,
            json!({ "M mod T^d": got.iter().map(|c| c.to_string()).collect::<Vec<_>>() }),
        ),
        Check::pass_if(format!("{tag}/member"), spec.is_member(), json!(spec)),
    ];
    let small = spec.degree() <= FULL_EXPANSION_DEGREE;
    if let Some(u) = spec.lcm_index_up_to(4 * FULL_EXPANSION_DEGREE).filter(|_| small) {
        if let Ok(m) = spec.expand() {
            let sqfree = m.gcd(&m.derivative()).is_constant();
            let tu = &Polynomial::monomial(rat_int(int(1)), u as usize) - &Polynomial::one();
            let divides = m.divides(&tu).unwrap_or(false);
            checks.push(Check::pass_if(
                format!("{tag}/squarefree"),
                sqfree,
                json!({ "degree": spec.degree() }),
            ));
            checks.push(Check::pass_if(
                format!("{tag}/divides-T^u-1"),
                divides,
                json!({ "u": u }),
            ));
        }
    }
    checks
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OffIndex {
    pub j: u64,
    pub valuation: Valuation,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ApproxRecord {
    pub p: u64,
    pub m: u64,
    pub n: u64,
    #[serde(serialize_with = "as_string")]
    pub lift: Integer,
    /// `φ(m)`, the exponent asserted for `ord_p Φ_n(c)`.
    pub target: u64,
    pub measured: Valuation,
    /// `ord_p Φ(c)` for the full product `Φ = ∏ Φ_{nᵢ}`.
    pub measured_product: Valuation,
    pub off_index: Vec<OffIndex>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ApproxPoint {
    #[serde(serialize_with = "as_string")]
    pub c: Integer,
    #[serde(serialize_with = "as_string")]
    pub modulus: Integer,
    pub ell: u64,
    pub records: Vec<ApproxRecord>,
}

fn check_pairwise_coprime(indices: &[SpecialFormIndex]) -> Result<()> {
    let items: Vec<u64> = indices.iter().flat_map(|i| [i.p, i.m]).collect();
    for a in 0..items.len() {
        for b in a + 1..items.len() {
            if items[a].gcd(&items[b]) != 1 {
                return Err(Error::NonCoprimeModuli(items[a].to_string(), items[b].to_string()));
            }
        }
    }
    Ok(())
}

/// `c ≡ ξ_{mᵢ} mod pᵢ^{φ(mᵢ)+1}` by CRT, with the valuations of `Φ_j(c)` measured
/// for every `j | ℓ = ∏ nᵢ`.
pub fn approx_point(indices: &[SpecialFormIndex]) -> Result<ApproxPoint> {
    if indices.is_empty() {
        return Err(Error::Precondition("no indices".into()));
    }
    for i in indices {
        if special_form(i.n) != Some(*i) {
            return Err(Error::Precondition(format!("{i} is not of the special form")));
        }
    }
    check_pairwise_coprime(indices)?;
    let mut lifts = Vec::new();
    let mut moduli = Vec::new();
    for i in indices {
        let k = euler_phi(i.m) as u32 + 1;
        let p = Integer::from(i.p);
        lifts.push(hensel_root_of_unity(&Integer::from(i.m), &p, k)?);
        moduli.push(p.pow(k));
    }
    let c = if moduli.len() == 1 {
        lifts[0].clone()
    } else {
        crt(&lifts, &moduli)?
    };
    let modulus: Integer = moduli.iter().product();
    let ell: u64 = indices.iter().map(|i| i.n).product();
    let values: Vec<(u64, Integer)> = divisors(ell)
        .into_iter()
        .map(|j| Ok((j, eval_at(&cyclotomic(j)?, &c))))
        .collect::<Result<_>>()?;
    let mut records = Vec::new();
    for (i, lift) in indices.iter().zip(lifts) {
        let p = Integer::from(i.p);
        let ord = |j: u64| {
            let v = &values.iter().find(|(jj, _)| *jj == j).expect("divisor").1;
            ord_p_int(v, &p)
        };
        let measured_product = indices
            .iter()
            .map(|o| ord(o.n))
            .fold(Valuation::Finite(0), |a, b| a + b);
        records.push(ApproxRecord {
            p: i.p,
            m: i.m,
            n: i.n,
            lift,
            target: euler_phi(i.m),
            measured: ord(i.n),
            measured_product,
            off_index: values
                .iter()
                .filter(|(j, _)| *j != i.n)
                .map(|(j, _)| OffIndex {
                    j: *j,
                    valuation: ord(*j),
                })
                .collect(),
        });
    }
    Ok(ApproxPoint {
        c,
        modulus,
        ell,
        records,
    })
}

pub fn index_set_label(indices: &[SpecialFormIndex]) -> String {
    let parts: Vec<String> = indices.iter().map(ToString::to_string).collect();
    format!("[{}]", parts.join(","))
}

/// Off-index valuations must vanish; on-index ones must equal `φ(m)` for
/// `m ≤ 2`, and are only recorded beside the target for `m ≥ 3`. Divisors
/// `j ∉ {nᵢ, mᵢ}` get an extra check of their own.
pub fn approx_checks(indices: &[SpecialFormIndex], point: &ApproxPoint) -> Vec<Check> {
    let tag = format!("approx{}", index_set_label(indices));
    let mut checks = Vec::new();
    for r in &point.records {
        let base = format!("{tag}/p{}", r.p);
        let nonzero: Vec<_> = r
            .off_index
            .iter()
            .filter(|o| o.valuation != Valuation::Finite(0))
            .collect();
        checks.push(Check::pass_if(
            format!("{base}/off-index"),
            nonzero.is_empty(),
            json!({ "c": point.c.to_string(), "nonzero": nonzero }),
        ));
        let generic: Vec<_> = nonzero.iter().filter(|o| o.j != r.m).collect();
        checks.push(Check::pass_if(
            format!("{base}/off-index-except-m"),
            generic.is_empty(),
            json!({ "nonzero": generic }),
        ));
        let details = json!({
            "n": r.n,
            "target": r.target,
            "measured": r.measured,
            "measured_product": r.measured_product,
        });
        let name = format!("{base}/on-index");
        if r.m <= 2 {
            let ok = r.measured == Valuation::Finite(r.target as i64) && r.measured_product == r.measured;
            checks.push(Check::pass_if(name, ok, details));
        } else {
            checks.push(Check::measured(name, details));
        }
    }
    checks
}

/// The `Q(T)` shadow of the conditions on `α = ∏ Φ_{nᵢ}`.
pub fn alpha_shadow_check(indices: &[SpecialFormIndex]) -> Result<Vec<Check>> {
    let tag = format!("alpha{}", index_set_label(indices));
    let mut alpha = Polynomial::one();
    let mut at_one = rat_int(int(1));
    for i in indices {
        let phi = cyclotomic(i.n)?;
        at_one *= phi.eval_int(1);
        alpha = &alpha * &phi;
    }
    let ell: u64 = indices.iter().map(|i| i.n).product();
    let t_ell = &Polynomial::monomial(rat_int(int(1)), ell as usize) - &Polynomial::one();
    let deg: u64 = indices.iter().map(|i| euler_phi(i.n)).sum();
    let mut checks = vec![
        Check::pass_if(
            format!("{tag}/divides-T^l-1"),
            alpha.divides(&t_ell)?,
            json!({ "l": ell }),
        ),
        Check::pass_if(
            format!("{tag}/value-at-1"),
            alpha.eval_int(1) == at_one,
            json!({ "alpha(1)": alpha.eval_int(1).to_string() }),
        ),
        Check::pass_if(
            format!("{tag}/degree"),
            alpha.degree() == Some(deg as usize),
            json!({ "degree": alpha.degree(), "sum_phi": deg }),
        ),
        Check::pass_if(
            format!("{tag}/squarefree-unit-constant"),
            alpha.gcd(&alpha.derivative()).is_constant() && alpha.coeff(0).abs().is_one(),
            json!({ "alpha(0)": alpha.coeff(0).to_string() }),
        ),
    ];
    if check_pairwise_coprime(indices).is_ok() {
        let point = approx_point(indices)?;
        let b = eval_at(&alpha, &point.c);
        let vals: Vec<_> = point
            .records
            .iter()
            .map(|r| json!({ "p": r.p, "ord": ord_p_int(&b, &Integer::from(r.p)), "target": r.target }))
            .collect();
        checks.push(Check::measured(
            format!("{tag}/value-at-c"),
            json!({ "c": point.c.to_string(), "valuations": vals }),
        ));
    }
    Ok(checks)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AppendixRange {
    pub n_max: u64,
    pub p_max: u64,
    /// Bound on `r, m` in the resultant sweep.
    pub resultant_max: u64,
}

impl Default for AppendixRange {
    fn default() -> Self {
        AppendixRange {
            n_max: 200,
            p_max: 13,
            resultant_max: 60,
        }
    }
}

fn primes_upto(n: u64) -> Vec<u64> {
    (2..=n).filter(|&p| is_prime_u64(p)).collect()
}

/// `Φ_{p^s}(1) = p`, and `(Φ_r(1), p) = 1` when `r` has a prime factor other than `p`.
pub fn ap1_checks(n_max: u64, p_max: u64) -> Result<Vec<Check>> {
    let mut bad_pow = Vec::new();
    let mut tested_pow = 0;
    for p in primes_upto(p_max) {
        let mut q = p;
        while q <= n_max {
            tested_pow += 1;
            let v = cyclotomic(q)?.eval_int(1);
            if v != rat_int(Integer::from(p)) {
                bad_pow.push(json!({ "n": q, "value": v.to_string() }));
            }
            q *= p;
        }
    }
    let mut bad_cop = Vec::new();
    let mut tested_cop = 0;
    for r in 2..=n_max {
        let primes: Vec<u64> = factorize_u64(r).into_iter().map(|(q, _)| q).collect();
        let v = cyclotomic(r)?.eval_int(1).to_integer();
        for p in primes_upto(p_max) {
            if primes.iter().any(|&q| q != p) {
                tested_cop += 1;
                if !v.gcd(&Integer::from(p)).is_one() {
                    bad_cop.push(json!({ "r": r, "p": p, "value": v.to_string() }));
                }
            }
        }
    }
    Ok(vec![
        Check::pass_if(
            "appendix/prime-power-at-1",
            bad_pow.is_empty(),
            json!({ "tested": tested_pow, "failures": bad_pow }),
        ),
        Check::pass_if(
            "appendix/coprime-at-1",
            bad_cop.is_empty(),
            json!({ "tested": tested_cop, "failures": bad_cop }),
        ),
    ])
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ResultantHit {
    pub r: u64,
    pub m: u64,
    pub p: u64,
    #[serde(serialize_with = "as_string")]
    pub resultant: Integer,
    /// `r = m·p^a` for some `a ≥ 1`.
    pub shape: bool,
    /// `m | p^a − 1` for that `a`.
    pub order: bool,
}

/// Every `(r, m, p)` with `p ∤ m`, `r ≠ m` and `p | Res(Φ_m, Φ_r)`.
pub fn resultant_hits(rm_max: u64, p_max: u64) -> Result<Vec<ResultantHit>> {
    let primes = primes_upto(p_max);
    let mut hits = Vec::new();
    for m in 1..=rm_max {
        let fm = cyclotomic(m)?;
        for r in 1..=rm_max {
            if r == m {
                continue;
            }
            let res = fm.resultant(&cyclotomic(r)?)?.to_integer();
            for &p in &primes {
                if m % p == 0 || !(&res % p).is_zero() {
                    continue;
                }
                let mut a = 0;
                let mut rest = r;
                while rest % p == 0 {
                    rest /= p;
                    a += 1;
                }
                let shape = a >= 1 && rest == m;
                let order = shape && (p.pow(a) - 1) % m == 0;
                hits.push(ResultantHit {
                    r,
                    m,
                    p,
                    resultant: res.clone(),
                    shape,
                    order,
                });
            }
        }
    }
    Ok(hits)
}

/// `p | Res(Φ_m, Φ_r)` implies `r = m·p^a` with `m | p^a − 1`; the shape
/// part is also checked on its own.
pub fn doesnotdividep_checks(rm_max: u64, p_max: u64) -> Result<Vec<Check>> {
    let hits = resultant_hits(rm_max, p_max)?;
    let bad_shape: Vec<_> = hits.iter().filter(|h| !h.shape).collect();
    let bad: Vec<_> = hits.iter().filter(|h| !h.order).collect();
    let sample = |v: &[&ResultantHit]| v.iter().take(20).map(|h| json!(h)).collect::<Vec<_>>();
    Ok(vec![
        Check::pass_if(
            "appendix/resultant-implication",
            bad.is_empty(),
            json!({ "hits": hits.len(), "counterexamples": bad.len(), "first": sample(&bad) }),
        ),
        Check::pass_if(
            "appendix/resultant-shape",
            bad_shape.is_empty(),
            json!({ "hits": hits.len(), "counterexamples": bad_shape.len(), "first": sample(&bad_shape) }),
        ),
    ])
}

/// `ord_p Res(Φ_m, Φ_{pm})` for special `pm ≤ n_max`, beside the exponent
/// `φ(m)²` that a `p^{φ(m)}` factor in `Z[ξ_m]` would give.
pub fn pdivides_checks(n_max: u64) -> Result<Vec<Check>> {
    let mut rows = Vec::new();
    let mut small_ok = true;
    for n in 2..=n_max {
        let Some(i) = special_form(n) else { continue };
        let res = cyclotomic(i.m)?.resultant(&cyclotomic(n)?)?.to_integer();
        let measured = ord_p_int(&res, &Integer::from(i.p));
        let phi = euler_phi(i.m);
        if i.m <= 2 && measured != Valuation::Finite(phi as i64) {
            small_ok = false;
        }
        rows.push(json!({
            "n": n, "p": i.p, "m": i.m,
            "abs_resultant": res.abs().to_string(),
            "measured": measured,
            "implied": phi * phi,
        }));
    }
    Ok(vec![
        Check::pass_if("appendix/pdivides-m-le-2", small_ok, json!({ "n_max": n_max })),
        Check::measured("appendix/pdivides-measured", json!(rows)),
    ])
}

pub fn appendix_checks(range: &AppendixRange) -> Result<Vec<Check>> {
    let mut out = ap1_checks(range.n_max, range.p_max)?;
    out.extend(doesnotdividep_checks(range.resultant_max, range.p_max)?);
    out.extend(pdivides_checks(range.n_max)?);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(s: &str) -> Polynomial {
        s.parse().unwrap()
    }

    /// Oracle: divide `Tⁿ − 1` by every `Φ_d`, `d | n`, `d < n`.
    fn by_division(n: u64) -> Polynomial {
        let mut f = &Polynomial::monomial(rat_int(int(1)), n as usize) - &Polynomial::one();
        for d in divisors(n).into_iter().filter(|&d| d < n) {
            f = f.div_exact(&by_division(d)).unwrap().unwrap();
        }
        f
    }

    #[test]
    fn cyclotomic_examples() {
        assert_eq!(cyclotomic(1).unwrap(), p("T - 1"));
        assert_eq!(cyclotomic(6).unwrap(), p("T^2 - T + 1"));
        assert_eq!(cyclotomic(20).unwrap(), p("T^8 - T^6 + T^4 - T^2 + 1"));
        assert!(cyclotomic(0).is_err());
        assert!(cyclotomic(10_001).is_err());
        let phi105 = cyclotomic(105).unwrap();
        assert_eq!(phi105.coeff(7), rat_int(int(-2)));
        for n in 1..=40 {
            assert_eq!(cyclotomic(n).unwrap(), by_division(n), "n = {n}");
        }
        assert_eq!(cyclotomic_trunc(1, 1).unwrap(), vec![int(-1)]);
        assert_eq!(cyclotomic_trunc(1, 4).unwrap(), vec![int(-1), int(1), int(0), int(0)]);
    }

    #[test]
    fn special_form_examples() {
        assert_eq!(special_form(6), Some(SpecialFormIndex { n: 6, p: 3, m: 2 }));
        assert_eq!(special_form(20), Some(SpecialFormIndex { n: 20, p: 5, m: 4 }));
        assert_eq!(special_form(12), None);
        assert_eq!(special_form(2), Some(SpecialFormIndex { n: 2, p: 2, m: 1 }));
        assert_eq!(special_form(1), None);
        assert_eq!(special_form(9), None);
        // brute force over every factorization n = p·m
        for n in 2..=500u64 {
            let brute = (2..=n)
                .filter(|&q| n % q == 0 && is_prime_u64(q) && (q - 1) % (n / q) == 0)
                .map(|q| SpecialFormIndex { n, p: q, m: n / q })
                .collect::<Vec<_>>();
            assert!(brute.len() <= 1);
            assert_eq!(special_form(n), brute.first().copied(), "n = {n}");
        }
    }

    #[test]
    fn special_congruent_examples() {
        assert_eq!(find_special_congruent(1, -1, 1).unwrap(), vec![6]);
        assert_eq!(find_special_congruent(1, 1, 1).unwrap(), vec![2]);
        assert_eq!(find_special_congruent(2, -1, 1).unwrap(), vec![20]);
        assert!(find_special_congruent(1, 1, 3).unwrap().contains(&5));
        for d in 1..=6 {
            for s in [1, -1] {
                let ns = find_special_congruent(d, s, 3).unwrap();
                assert_eq!(ns.len(), 3);
                for n in ns {
                    let f = Polynomial::from_integers(&cyclotomic_trunc(n, 2 * d as usize).unwrap());
                    let want = &Polynomial::one() + &Polynomial::monomial(rat_int(int(s as i64)), d as usize);
                    assert_eq!(f, want, "d = {d}, s = {s}, n = {n}");
                    if n <= MAX_INDEX {
                        assert_eq!(cyclotomic(n).unwrap().truncate(2 * d as usize), want);
                    }
                }
            }
        }
        assert!(find_special_congruent(17, 1, 1).is_err());
    }

    #[test]
    fn forweak_examples() {
        let m = forweak_approx(&p("1 + T"), 2).unwrap();
        assert_eq!(m.indices, vec![SpecialFormIndex { n: 2, p: 2, m: 1 }]);
        assert_eq!(m.sign, 1);
        let m = forweak_approx(&p("1"), 7).unwrap();
        assert!(m.indices.is_empty());
        let m = forweak_approx(&p("1 - T + 5T^2"), 2).unwrap();
        assert_eq!(m.indices.iter().map(|i| i.n).collect::<Vec<_>>(), vec![6]);
        assert_eq!(json!(m), json!({ "sign": 1, "indices": [6] }));
        let f = p("-1 + 3T - 2T^3");
        let m = forweak_approx(&f, 5).unwrap();
        assert!(forweak_checks(&f, 5, &m).iter().all(Check::passed));
        assert!(forweak_approx(&p("2 + T"), 3).is_err());
        assert!(forweak_approx(&p("1/2 + T"), 3).is_err());
    }

    #[test]
    fn approx_examples() {
        let idx = |p, m| SpecialFormIndex::new(p, m).unwrap();
        let a = approx_point(&[idx(3, 2), idx(5, 1)]).unwrap();
        assert_eq!(a.c, int(26));
        assert_eq!(a.records[0].measured, Valuation::Finite(1));
        assert_eq!(a.records[1].measured, Valuation::Finite(1));
        // Φ_2(26) = 27 and Φ_1(26) = 25 vanish to high order at j = m
        let off3: Vec<_> = a.records[0]
            .off_index
            .iter()
            .filter(|o| o.valuation != Valuation::Finite(0))
            .collect();
        assert_eq!(
            off3,
            vec![&OffIndex {
                j: 2,
                valuation: Valuation::Finite(3)
            }]
        );
        let off5: Vec<_> = a.records[1]
            .off_index
            .iter()
            .filter(|o| o.valuation != Valuation::Finite(0))
            .collect();
        assert_eq!(
            off5,
            vec![&OffIndex {
                j: 1,
                valuation: Valuation::Finite(2)
            }]
        );
        let checks = approx_checks(&[idx(3, 2), idx(5, 1)], &a);
        let by = |s: &str| checks.iter().find(|c| c.name.ends_with(s)).unwrap().status;
        assert_eq!(by("p3/off-index-except-m"), crate::report::Status::Pass);
        assert_eq!(by("p3/on-index"), crate::report::Status::Pass);

        assert_eq!(approx_point(&[idx(3, 2)]).unwrap().c, int(8));
        let a = approx_point(&[idx(5, 4)]).unwrap();
        assert_eq!(a.c, int(57));
        assert_eq!((a.records[0].measured, a.records[0].target), (Valuation::Finite(1), 2));
        assert!(matches!(
            approx_point(&[idx(3, 2), idx(7, 2)]),
            Err(Error::NonCoprimeModuli(_, _))
        ));
    }

    #[test]
    fn alpha_examples() {
        let idx = |p, m| SpecialFormIndex::new(p, m).unwrap();
        for set in [vec![idx(3, 2), idx(5, 1)], vec![idx(2, 1)], vec![idx(5, 4)]] {
            let checks = alpha_shadow_check(&set).unwrap();
            assert!(checks.iter().all(Check::passed), "{checks:?}");
        }
    }

    #[test]
    fn appendix_examples() {
        assert_eq!(cyclotomic(3).unwrap().eval_int(1), rat_int(int(3)));
        assert_eq!(cyclotomic(9).unwrap().eval_int(1), rat_int(int(3)));
        let r = cyclotomic(2).unwrap().resultant(&cyclotomic(10).unwrap()).unwrap();
        assert_eq!(r.abs(), rat_int(int(5)));
        let r = cyclotomic(4).unwrap().resultant(&cyclotomic(20).unwrap()).unwrap();
        assert_eq!(r.abs(), rat_int(int(25)));
        let hits = resultant_hits(15, 5).unwrap();
        let h = hits.iter().find(|h| (h.r, h.m, h.p) == (10, 2, 5)).unwrap();
        assert!(h.order);
        let h = hits.iter().find(|h| (h.r, h.m, h.p) == (6, 3, 2)).unwrap();
        assert_eq!(h.resultant.abs(), int(4));
        assert!(h.shape && !h.order);
        assert!(ap1_checks(60, 7).unwrap().iter().all(Check::passed));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]

        #[test]
        fn forweak_matches(coeffs in prop::collection::vec(-3i64..=3, 0..6), neg in any::<bool>(), d in 1u64..=6) {
            let mut c = vec![if neg { -1 } else { 1 }];
            c.extend(coeffs);
            let f = Polynomial::from_ints(&c);
            let m = forweak_approx(&f, d).unwrap();
            for check in forweak_checks(&f, d, &m) {
                prop_assert!(check.passed(), "{:?}", check);
            }
        }

        #[test]
        fn product_of_divisors(n in 1u64..=120) {
            prop_assert!(product_identity(n).unwrap());
        }
    }
}
