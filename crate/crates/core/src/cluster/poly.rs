use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::semifield::{GroupRingElement, TropicalElement};

/// Laurent polynomial in `n` cluster variables with coefficients in `ℤP`.
///
/// Terms are keyed by dense exponent vectors; the monomial order is lexicographic,
/// first on the `x`-exponents and then on the coefficient monomials.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ClusterPoly {
    n: usize,
    terms: BTreeMap<Vec<i32>, GroupRingElement>,
}

impl ClusterPoly {
    pub fn zero(n: usize) -> Self {
        Self {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(n: usize, c: GroupRingElement) -> Self {
        Self::monomial(vec![0; n], c)
    }

    pub fn one(n: usize) -> Self {
        Self::constant(n, GroupRingElement::one())
    }

    pub fn integer(n: usize, c: i64) -> Self {
        Self::constant(n, GroupRingElement::integer(c))
    }

    /// The cluster variable `x_i`.
    pub fn var(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        Self::monomial(e, GroupRingElement::one())
    }

    pub fn monomial(exps: Vec<i32>, c: GroupRingElement) -> Self {
        let n = exps.len();
        let mut out = Self::zero(n);
        if !c.is_zero() {
            out.terms.insert(exps, c);
        }
        out
    }

    /// `Π x_j^{e_j}` times a semifield monomial.
    pub fn x_monomial(exps: Vec<i32>, u: &TropicalElement) -> Self {
        Self::monomial(exps, GroupRingElement::from_semifield(u))
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of `(x-monomial, coefficient-monomial)` terms.
    pub fn num_terms(&self) -> usize {
        self.terms.values().map(GroupRingElement::num_terms).sum()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i32>, &GroupRingElement)> {
        self.terms.iter()
    }

    /// Minimal exponent of `x_i` over all terms.
    pub fn min_exponent(&self, i: usize) -> Option<i32> {
        self.terms.keys().map(|e| e[i]).min()
    }

    pub fn max_exponent(&self, i: usize) -> Option<i32> {
        self.terms.keys().map(|e| e[i]).max()
    }

    fn add_term(&mut self, e: Vec<i32>, c: &GroupRingElement) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c.clone());
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c);
        }
        out
    }

    pub fn neg(&self) -> Self {
        Self {
            n: self.n,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "cluster polynomials in different rings");
        let mut out = Self::zero(self.n);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<i32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, &(c1 * c2));
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::one(self.n);
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    /// Multiplies by `Π x_j^{e_j}·u`.
    pub fn mul_monomial(&self, exps: &[i32], u: &TropicalElement) -> Self {
        Self {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    (
                        e.iter().zip(exps).map(|(a, b)| a + b).collect(),
                        c.mul_monomial(u),
                    )
                })
                .collect(),
        }
    }

    /// The largest `(x-monomial, coefficient-monomial, integer)` term.
    fn leading(&self) -> Option<(&Vec<i32>, &TropicalElement, &BigInt)> {
        let (e, c) = self.terms.iter().next_back()?;
        let (m, k) = c.leading()?;
        Some((e, m, k))
    }

    fn exponent_box(&self) -> (Vec<(i32, i32)>, BTreeMap<String, (i64, i64)>) {
        let xs = (0..self.n)
            .map(|i| {
                (
                    self.min_exponent(i).unwrap_or(0),
                    self.max_exponent(i).unwrap_or(0),
                )
            })
            .collect();
        let mut names: Vec<String> = Vec::new();
        for c in self.terms.values() {
            for (m, _) in c.terms() {
                names.extend(m.generators().map(|(g, _)| g.to_string()));
            }
        }
        names.sort();
        names.dedup();
        let mut us = BTreeMap::new();
        for g in names {
            let mut lo = i64::MAX;
            let mut hi = i64::MIN;
            for c in self.terms.values() {
                for (m, _) in c.terms() {
                    let e = m.exponent(&g);
                    lo = lo.min(e);
                    hi = hi.max(e);
                }
            }
            us.insert(g, (lo, hi));
        }
        (xs, us)
    }

    /// Exact quotient `self / d`, or `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        assert_eq!(self.n, d.n, "cluster polynomials in different rings");
        let (dx, dm, dc) = {
            let (a, b, c) = d.leading()?;
            (a.clone(), b.clone(), c.clone())
        };
        if d.terms.len() == 1 && d.terms.values().next().is_some_and(|c| c.num_terms() == 1) {
            let inv: Vec<i32> = dx.iter().map(|e| -e).collect();
            let mut out = self.mul_monomial(&inv, &dm.inv());
            for c in out.terms.values_mut() {
                let mut scaled = GroupRingElement::zero();
                for (m, k) in c.terms() {
                    let (qt, rm) = k.div_rem(&dc);
                    if !rm.is_zero() {
                        return None;
                    }
                    scaled.add_term(m.clone(), qt);
                }
                *c = scaled;
            }
            return Some(out);
        }
        let (fx, fu) = self.exponent_box();
        let (gx, gu) = d.exponent_box();
        let in_box = |qx: &[i32], qm: &TropicalElement| {
            for i in 0..self.n {
                if qx[i] < fx[i].0 - gx[i].0 || qx[i] > fx[i].1 - gx[i].1 {
                    return false;
                }
            }
            let mut names: Vec<&String> = fu.keys().chain(gu.keys()).collect();
            names.sort();
            names.dedup();
            for g in names {
                let (flo, fhi) = fu.get(g).copied().unwrap_or((0, 0));
                let (glo, ghi) = gu.get(g).copied().unwrap_or((0, 0));
                let e = qm.exponent(g);
                if e < flo - glo || e > fhi - ghi {
                    return false;
                }
            }
            qm.generators()
                .all(|(g, _)| fu.contains_key(g) || gu.contains_key(g))
        };
        let mut rem = self.clone();
        let mut q = Self::zero(self.n);
        while let Some((rx, rm, rc)) = rem.leading() {
            let (qc, r) = rc.div_rem(&dc);
            if !r.is_zero() {
                return None;
            }
            let qx: Vec<i32> = rx.iter().zip(&dx).map(|(a, b)| a - b).collect();
            let qm = rm / &dm;
            if !in_box(&qx, &qm) {
                return None;
            }
            let term = Self::monomial(qx.clone(), GroupRingElement::monomial(qm, qc));
            rem = rem.sub(&term.mul(d));
            q.add_term(qx, term.terms.values().next().expect("nonzero"));
        }
        Some(q)
    }

    /// Sum of all coefficients, i.e. the value at `x = (1, ..., 1)`.
    pub fn eval_at_ones(&self) -> GroupRingElement {
        let mut acc = GroupRingElement::zero();
        for c in self.terms.values() {
            acc += c;
        }
        acc
    }

    /// Integer value at `x = 1` when all coefficients lie in `ℤ`.
    pub fn integer_value(&self) -> Option<BigInt> {
        let v = self.eval_at_ones();
        match v.num_terms() {
            0 => Some(BigInt::zero()),
            1 => {
                let (m, c) = v.leading()?;
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    /// Text in the form `(numerator)/(x-monomial)` with the given variable names.
    pub fn to_fraction_string(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let den: Vec<i32> = (0..self.n)
            .map(|i| (-self.min_exponent(i).unwrap_or(0)).max(0))
            .collect();
        let num = self.mul_monomial(&den, &TropicalElement::one());
        let mut parts: Vec<String> = Vec::new();
        for (e, c) in num.terms.iter().rev() {
            for (m, k) in c.terms() {
                let mut factors: Vec<String> = Vec::new();
                if !m.is_one() {
                    factors.push(m.to_string());
                }
                factors.extend(monomial_factors(e, names));
                let mag = k.abs();
                let body = match (factors.is_empty(), mag.is_one()) {
                    (true, _) => mag.to_string(),
                    (false, true) => factors.join("*"),
                    (false, false) => format!("{mag}*{}", factors.join("*")),
                };
                let sign = if k.is_negative() { "-" } else { "+" };
                parts.push(format!("{sign}{body}"));
            }
        }
        let mut text = parts.join(" ").replace(" +", " + ").replace(" -", " - ");
        if let Some(rest) = text.strip_prefix('+') {
            text = rest.to_string();
        }
        let den_factors = monomial_factors(&den, names);
        let multi = parts.len() > 1;
        match (den_factors.is_empty(), multi) {
            (true, _) => text,
            (false, true) => format!("({text})/({})", den_factors.join("*")),
            (false, false) => format!("{text}/({})", den_factors.join("*")),
        }
    }
}

fn monomial_factors(e: &[i32], names: &[String]) -> Vec<String> {
    e.iter()
        .enumerate()
        .filter(|(_, k)| **k != 0)
        .map(|(i, k)| {
            if *k == 1 {
                names[i].clone()
            } else {
                format!("{}^{k}", names[i])
            }
        })
        .collect()
}
