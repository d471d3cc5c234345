//! Sturm sequences for counting distinct real roots.

use num_traits::{Signed, Zero};

use super::poly::RatPoly;
use super::rational::Rational;

/// The Sturm chain `p, p', -rem(p, p'), ...` of a nonzero polynomial.
pub fn sturm_chain(p: &RatPoly) -> Vec<RatPoly> {
    let mut chain = vec![p.clone(), p.derivative()];
    while !chain.last().unwrap().is_zero() {
        let n = chain.len();
        let r = -&chain[n - 2].rem(&chain[n - 1]);
        chain.push(r);
    }
    chain.pop();
    chain
}

fn variations(signs: impl Iterator<Item = i32>) -> usize {
    let mut count = 0;
    let mut last = 0;
    for s in signs.filter(|&s| s != 0) {
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

fn sign_of(q: &Rational) -> i32 {
    if q.is_zero() {
        0
    } else if q.is_positive() {
        1
    } else {
        -1
    }
}

fn sign_at(chain: &[RatPoly], x: &Rational) -> usize {
    variations(chain.iter().map(|p| sign_of(&p.eval(x))))
}

fn sign_at_infinity(chain: &[RatPoly], positive: bool) -> usize {
    variations(chain.iter().map(|p| {
        let s = sign_of(&p.leading());
        if positive || p.deg() % 2 == 0 {
            s
        } else {
            -s
        }
    }))
}

/// Distinct real roots in the half-open interval `(a, b]`.
pub fn count_roots_in(p: &RatPoly, a: &Rational, b: &Rational) -> usize {
    let chain = sturm_chain(p);
    sign_at(&chain, a) - sign_at(&chain, b)
}

/// Distinct real roots in `(-inf, 0)`.
pub fn count_negative_roots(p: &RatPoly) -> usize {
    let chain = sturm_chain(p);
    let mut n = sign_at_infinity(&chain, false) - sign_at(&chain, &Rational::zero());
    if p.eval(&Rational::zero()).is_zero() {
        n -= 1;
    }
    n
}

/// Distinct real roots overall.
pub fn count_real_roots(p: &RatPoly) -> usize {
    let chain = sturm_chain(p);
    sign_at_infinity(&chain, false) - sign_at_infinity(&chain, true)
}
