//! Sign counts of real roots of rational polynomials (coefficients constant term first).

use num_rational::BigRational;
use num_traits::{Signed, Zero};

fn trim(mut p: Vec<BigRational>) -> Vec<BigRational> {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

fn rem(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut r = a.to_vec();
    let lead = b.last().expect("nonzero divisor");
    while r.len() >= b.len() && !r.is_empty() {
        let shift = r.len() - b.len();
        let f = r.last().unwrap() / lead;
        for (i, c) in b.iter().enumerate() {
            r[shift + i] -= &f * c;
        }
        r.pop();
        r = trim(r);
    }
    r
}

fn derivative(p: &[BigRational]) -> Vec<BigRational> {
    p.iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * BigRational::from_integer(i.into()))
        .collect()
}

fn sturm_chain(p: &[BigRational]) -> Vec<Vec<BigRational>> {
    let mut chain = vec![trim(p.to_vec()), trim(derivative(p))];
    while !chain.last().unwrap().is_empty() {
        let n = chain.len();
        let r: Vec<BigRational> = rem(&chain[n - 2], &chain[n - 1])
            .into_iter()
            .map(|c| -c)
            .collect();
        chain.push(trim(r));
    }
    chain.pop();
    chain
}

fn sign_changes(signs: impl Iterator<Item = i8>) -> usize {
    let s: Vec<i8> = signs.filter(|&x| x != 0).collect();
    s.windows(2).filter(|w| w[0] != w[1]).count()
}

fn eval(p: &[BigRational], x: &BigRational) -> BigRational {
    p.iter()
        .rev()
        .fold(BigRational::zero(), |acc, c| acc * x + c)
}

fn sign(x: &BigRational) -> i8 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

/// Whether `p` has a real root `≤ 0`.
pub fn has_nonpositive_real_root(p: &[BigRational]) -> bool {
    if p.first().is_none_or(|c| c.is_zero()) {
        return true;
    }
    negative_real_roots(p) > 0
}

/// Number of distinct real roots in `(−∞, 0)`; requires `p(0) ≠ 0`.
pub fn negative_real_roots(p: &[BigRational]) -> usize {
    let chain = sturm_chain(p);
    let at_neg_inf = sign_changes(chain.iter().map(|q| {
        let s = sign(q.last().unwrap());
        if (q.len() - 1) % 2 == 1 {
            -s
        } else {
            s
        }
    }));
    let at_zero = sign_changes(chain.iter().map(|q| sign(&eval(q, &BigRational::zero()))));
    at_neg_inf - at_zero
}
