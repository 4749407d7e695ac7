//! Squarefree decomposition and Sturm-sequence real root counting.

use num_traits::{Signed, Zero};

use super::Polynomial;
use crate::arith::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Interval {
    WholeLine,
    /// Closed interval `[lo, hi]`.
    Closed(Rational, Rational),
}

/// `f / gcd(f, f')`, monic.
pub fn squarefree_part(f: &Polynomial) -> Polynomial {
    if f.is_constant() {
        return f.monic();
    }
    let g = f.gcd(&f.derivative());
    f.divmod(&g).expect("gcd of nonzero f").0.monic()
}

/// Yun's algorithm: monic `a_1, a_2, …` with `f = lc · ∏ a_i^i`.
pub fn yun_decomposition(f: &Polynomial) -> Vec<Polynomial> {
    if f.is_constant() {
        return Vec::new();
    }
    let f = f.monic();
    let df = f.derivative();
    let a0 = f.gcd(&df);
    let mut b = f.divmod(&a0).unwrap().0;
    let mut c = df.divmod(&a0).unwrap().0;
    let mut d = &c - &b.derivative();
    let mut out = Vec::new();
    loop {
        let a = b.gcd(&d);
        b = b.divmod(&a).unwrap().0;
        c = d.divmod(&a).unwrap().0;
        out.push(a);
        if b.is_constant() {
            break;
        }
        d = &c - &b.derivative();
    }
    while out.last().is_some_and(|a| a.is_constant()) {
        out.pop();
    }
    out
}

fn sturm_chain(p: &Polynomial) -> Vec<Polynomial> {
    let mut chain = vec![p.clone(), p.derivative()];
    loop {
        let n = chain.len();
        if chain[n - 1].is_zero() {
            chain.pop();
            break;
        }
        let r = chain[n - 2].divmod(&chain[n - 1]).unwrap().1;
        if r.is_zero() {
            break;
        }
        chain.push(-&r);
    }
    chain
}

fn sign_changes(signs: impl Iterator<Item = i8>) -> usize {
    let mut last = 0i8;
    let mut count = 0;
    for s in signs.filter(|&s| s != 0) {
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

fn sign(q: &Rational) -> i8 {
    if q.is_zero() {
        0
    } else if q.is_positive() {
        1
    } else {
        -1
    }
}

fn changes_at(chain: &[Polynomial], x: &Rational) -> usize {
    sign_changes(chain.iter().map(|q| sign(&q.eval(x))))
}

fn changes_at_infinity(chain: &[Polynomial], positive: bool) -> usize {
    sign_changes(chain.iter().map(|q| {
        let s = sign(&q.leading());
        let odd = q.degree().unwrap_or(0) % 2 == 1;
        if !positive && odd {
            -s
        } else {
            s
        }
    }))
}

/// Number of distinct real roots of `f` in the interval. The zero polynomial
/// has no isolated roots and counts as 0.
pub fn sturm_real_roots(f: &Polynomial, interval: &Interval) -> usize {
    if f.is_constant() {
        return 0;
    }
    let p = squarefree_part(f);
    let chain = sturm_chain(&p);
    match interval {
        Interval::WholeLine => changes_at_infinity(&chain, false) - changes_at_infinity(&chain, true),
        Interval::Closed(lo, hi) => {
            if lo > hi {
                return 0;
            }
            // V(lo) - V(hi) counts roots in (lo, hi]
            let inner = changes_at(&chain, lo) - changes_at(&chain, hi);
            inner + usize::from(p.eval(lo).is_zero())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use proptest::prelude::*;

    fn p(s: &str) -> Polynomial {
        s.parse().unwrap()
    }

    #[test]
    fn sturm_examples() {
        assert_eq!(sturm_real_roots(&p("T^2 + 1"), &Interval::WholeLine), 0);
        assert_eq!(sturm_real_roots(&p("T^2 - 3T + 2"), &Interval::WholeLine), 2);
        assert_eq!(sturm_real_roots(&p("T^6 + T + 1"), &Interval::WholeLine), 0);
        assert_eq!(sturm_real_roots(&Polynomial::t().pow(3), &Interval::WholeLine), 1);
        let closed = Interval::Closed(rat(1, 1), rat(3, 2));
        assert_eq!(sturm_real_roots(&p("T^2 - 3T + 2"), &closed), 1);
        let closed = Interval::Closed(rat(1, 1), rat(2, 1));
        assert_eq!(sturm_real_roots(&p("T^2 - 3T + 2"), &closed), 2);
    }

    #[test]
    fn yun_examples() {
        // (T - 1)(T + 2)^2 (T^2 + 1)^3
        let f = &(&p("T - 1") * &p("T + 2").pow(2)) * &p("T^2 + 1").pow(3);
        let parts = yun_decomposition(&f.scale(&rat(5, 1)));
        assert_eq!(parts, vec![p("T - 1"), p("T + 2"), p("T^2 + 1")]);
        assert_eq!(squarefree_part(&f), p("T - 1") * p("T + 2") * p("T^2 + 1"));
    }

    proptest! {
        // Polynomials built from known distinct integer roots, with a
        // root-free quadratic factor mixed in.
        #[test]
        fn sturm_counts_planted_roots(
            roots in prop::collection::btree_set(-30i64..=30, 0..5),
            extra in 0i64..4,
            lo in -40i64..=40,
            width in 0i64..50,
        ) {
            let mut f = Polynomial::from_ints(&[1 + extra, 0, 1]);
            for &r in &roots {
                f = &f * &Polynomial::from_ints(&[-r, 1]);
            }
            prop_assert_eq!(sturm_real_roots(&f, &Interval::WholeLine), roots.len());
            let hi = lo + width;
            let expect = roots.iter().filter(|&&r| lo <= r && r <= hi).count();
            prop_assert_eq!(sturm_real_roots(&f, &Interval::Closed(rat(lo, 1), rat(hi, 1))), expect);
        }

        // Dense-grid sign changes see every root when roots are well separated.
        #[test]
        fn sturm_matches_grid(roots in prop::collection::btree_set(-10i64..=10, 0..5)) {
            let mut f = Polynomial::one();
            for &r in &roots {
                f = &f * &Polynomial::from_ints(&[-2 * r - 1, 2]); // root r + 1/2
            }
            let mut crossings = 0;
            let mut prev = f.eval(&rat(-50, 1));
            for k in -49..=50 {
                let cur = f.eval(&rat(k, 1));
                if sign(&cur) * sign(&prev) < 0 {
                    crossings += 1;
                }
                prev = cur;
            }
            prop_assert_eq!(sturm_real_roots(&f, &Interval::WholeLine), crossings);
        }

        #[test]
        fn yun_reassembles(parts in prop::collection::vec(prop::collection::vec(-5i64..=5, 2..4), 1..3)) {
            let mut f = Polynomial::one();
            for (i, c) in parts.iter().enumerate() {
                f = &f * &Polynomial::from_ints(c).pow(i as u32 + 1);
            }
            prop_assume!(!f.is_zero());
            let dec = yun_decomposition(&f);
            let mut g = Polynomial::constant(f.leading());
            for (i, a) in dec.iter().enumerate() {
                g = &g * &a.pow(i as u32 + 1);
            }
            prop_assert_eq!(g, f);
        }
    }
}
