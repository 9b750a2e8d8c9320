//! Multivariate polynomials over the two-element field.

use std::collections::BTreeSet;

/// Exponent vector with trailing zeros removed; `Vec` ordering is then lex
/// with variable 0 most significant.
pub type Mono = Vec<u32>;

fn trim(mut m: Mono) -> Mono {
    while m.last() == Some(&0) {
        m.pop();
    }
    m
}

fn mono_mul(a: &[u32], b: &[u32]) -> Mono {
    let n = a.len().max(b.len());
    (0..n).map(|i| a.get(i).unwrap_or(&0) + b.get(i).unwrap_or(&0)).collect()
}

fn mono_div(a: &[u32], b: &[u32]) -> Option<Mono> {
    if b.len() > a.len() {
        return None;
    }
    let mut out = Vec::with_capacity(a.len());
    for i in 0..a.len() {
        let bi = *b.get(i).unwrap_or(&0);
        if a[i] < bi {
            return None;
        }
        out.push(a[i] - bi);
    }
    Some(trim(out))
}

fn exp(m: &[u32], v: usize) -> u32 {
    *m.get(v).unwrap_or(&0)
}

fn with_exp(m: &[u32], v: usize, e: u32) -> Mono {
    let mut out = m.to_vec();
    if out.len() <= v {
        out.resize(v + 1, 0);
    }
    out[v] = e;
    trim(out)
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Poly(BTreeSet<Mono>);

impl Poly {
    pub fn zero() -> Self {
        Poly(BTreeSet::new())
    }

    pub fn one() -> Self {
        Poly::monomial(Vec::new())
    }

    pub fn monomial(m: Mono) -> Self {
        Poly(BTreeSet::from([trim(m)]))
    }

    pub fn var(i: usize) -> Self {
        Poly::monomial(with_exp(&[], i, 1))
    }

    pub fn from_monomials(ms: impl IntoIterator<Item = Mono>) -> Self {
        let mut p = Poly::zero();
        for m in ms {
            p.toggle(trim(m));
        }
        p
    }

    fn toggle(&mut self, m: Mono) {
        if !self.0.remove(&m) {
            self.0.insert(m);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.0.len() == 1 && self.0.iter().next().unwrap().is_empty()
    }

    pub fn monomials(&self) -> impl DoubleEndedIterator<Item = &Mono> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn leading(&self) -> Option<&Mono> {
        self.0.iter().next_back()
    }

    pub fn add(&self, o: &Poly) -> Poly {
        Poly(self.0.symmetric_difference(&o.0).cloned().collect())
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        let mut out = Poly::zero();
        for a in &self.0 {
            for b in &o.0 {
                out.toggle(mono_mul(a, b));
            }
        }
        out
    }

    pub fn mul_mono(&self, m: &[u32]) -> Poly {
        Poly(self.0.iter().map(|a| mono_mul(a, m)).collect())
    }

    pub fn pow(&self, mut e: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Applies `f` to every exponent vector; `f` must be injective.
    pub fn map_monomials(&self, f: impl Fn(&[u32]) -> Mono) -> Poly {
        Poly::from_monomials(self.0.iter().map(|m| f(m)))
    }

    pub fn num_vars(&self) -> usize {
        self.0.iter().map(|m| m.len()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, v: usize) -> u32 {
        self.0.iter().map(|m| exp(m, v)).max().unwrap_or(0)
    }

    /// Exact quotient, if `o` divides `self`.
    pub fn div_exact(&self, o: &Poly) -> Option<Poly> {
        let lo = o.leading()?.clone();
        let mut r = self.clone();
        let mut q = Poly::zero();
        while let Some(lr) = r.leading().cloned() {
            let m = mono_div(&lr, &lo)?;
            r = r.add(&o.mul_mono(&m));
            q.toggle(m);
        }
        Some(q)
    }

    /// Coefficients as a polynomial in `x_v`, index = degree.
    fn univariate(&self, v: usize) -> Vec<Poly> {
        let mut out = vec![Poly::zero(); self.degree_in(v) as usize + 1];
        for m in &self.0 {
            out[exp(m, v) as usize].toggle(with_exp(m, v, 0));
        }
        out
    }

    fn leading_coeff_in(&self, v: usize) -> Poly {
        let d = self.degree_in(v);
        Poly::from_monomials(self.0.iter().filter(|m| exp(m, v) == d).map(|m| with_exp(m, v, 0)))
    }

    fn content_in(&self, v: usize) -> Poly {
        self.univariate(v).iter().fold(Poly::zero(), |g, c| gcd(&g, c))
    }

    fn primitive_in(&self, v: usize) -> Poly {
        let c = self.content_in(v);
        self.div_exact(&c).expect("content divides")
    }
}

fn main_var(a: &Poly, b: &Poly) -> Option<usize> {
    let n = a.num_vars().max(b.num_vars());
    (0..n).rev().find(|&v| a.degree_in(v) > 0 || b.degree_in(v) > 0)
}

fn prem(a: &Poly, b: &Poly, v: usize) -> Poly {
    let db = b.degree_in(v);
    let lb = b.leading_coeff_in(v);
    let mut r = a.clone();
    while !r.is_zero() && r.degree_in(v) >= db {
        let dr = r.degree_in(v);
        let lr = r.leading_coeff_in(v);
        r = r.mul(&lb).add(&b.mul(&lr).mul_mono(&with_exp(&[], v, dr - db)));
    }
    r
}

pub fn gcd(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return b.clone();
    }
    if b.is_zero() {
        return a.clone();
    }
    let Some(v) = main_var(a, b) else { return Poly::one() };
    if a.degree_in(v) == 0 {
        return gcd(a, &b.content_in(v));
    }
    if b.degree_in(v) == 0 {
        return gcd(&a.content_in(v), b);
    }
    let (ca, cb) = (a.content_in(v), b.content_in(v));
    let c = gcd(&ca, &cb);
    let (mut x, mut y) = (a.div_exact(&ca).unwrap(), b.div_exact(&cb).unwrap());
    if x.degree_in(v) < y.degree_in(v) {
        std::mem::swap(&mut x, &mut y);
    }
    let g = loop {
        let r = prem(&x, &y, v);
        if r.is_zero() {
            break y;
        }
        if r.degree_in(v) == 0 {
            break Poly::one();
        }
        x = y;
        y = r.primitive_in(v);
    };
    c.mul(&g.primitive_in(v))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> Poly {
        Poly::var(0)
    }
    fn y() -> Poly {
        Poly::var(1)
    }

    #[test]
    fn arithmetic() {
        let one = Poly::one();
        let a = x().add(&one);
        assert_eq!(a.mul(&a), x().mul(&x()).add(&one));
        assert_eq!(a.pow(2).div_exact(&a), Some(a.clone()));
        assert_eq!(x().div_exact(&a), None);
    }

    #[test]
    fn gcds() {
        let one = Poly::one();
        let a = x().add(&y());
        let b = x().add(&one);
        let p = a.mul(&b).mul(&y());
        let q = a.mul(&x()).mul(&b.pow(2));
        assert_eq!(gcd(&p, &q), a.mul(&b));
        assert!(gcd(&x(), &y()).is_one());
        assert_eq!(gcd(&Poly::zero(), &a), a);
    }
}
