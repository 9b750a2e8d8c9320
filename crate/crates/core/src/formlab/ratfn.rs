//! Rational functions over the two-element field in reduced form.

use super::gf2::{gcd, Poly};
use crate::linalg::Field;

/// `num / den` with `gcd(num, den) = 1` and `den != 0`. Over F2 this form is unique.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFn {
    num: Poly,
    den: Poly,
}

impl RatFn {
    pub fn new(num: Poly, den: Poly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return RatFn { num, den: Poly::one() };
        }
        let g = gcd(&num, &den);
        RatFn { num: num.div_exact(&g).unwrap(), den: den.div_exact(&g).unwrap() }
    }

    pub fn from_poly(p: Poly) -> Self {
        RatFn { num: p, den: Poly::one() }
    }

    pub fn var(i: usize) -> Self {
        RatFn::from_poly(Poly::var(i))
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn inv(&self) -> RatFn {
        RatFn::new(self.den.clone(), self.num.clone())
    }

    pub fn square(&self) -> RatFn {
        RatFn { num: self.num.mul(&self.num), den: self.den.mul(&self.den) }
    }

    pub fn pow(&self, e: i64) -> RatFn {
        let base = if e < 0 { self.inv() } else { self.clone() };
        let k = e.unsigned_abs() as u32;
        RatFn { num: base.num.pow(k), den: base.den.pow(k) }
    }

    /// Square root when every exponent on both sides is even.
    pub fn sqrt(&self) -> Option<RatFn> {
        let half = |p: &Poly| -> Option<Poly> {
            if p.monomials().all(|m| m.iter().all(|e| e % 2 == 0)) {
                Some(p.map_monomials(|m| m.iter().map(|e| e / 2).collect()))
            } else {
                None
            }
        };
        Some(RatFn { num: half(&self.num)?, den: half(&self.den)? })
    }

    /// Applies an injective, multiplicative exponent substitution.
    pub fn map_monomials(&self, f: impl Fn(&[u32]) -> Vec<u32>) -> RatFn {
        RatFn::new(self.num.map_monomials(&f), self.den.map_monomials(&f))
    }
}

impl Field for RatFn {
    fn zero() -> Self {
        RatFn::from_poly(Poly::zero())
    }
    fn one() -> Self {
        RatFn::from_poly(Poly::one())
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn add(&self, o: &Self) -> Self {
        if self.den == o.den {
            return RatFn::new(self.num.add(&o.num), self.den.clone());
        }
        RatFn::new(self.num.mul(&o.den).add(&o.num.mul(&self.den)), self.den.mul(&o.den))
    }
    fn sub(&self, o: &Self) -> Self {
        self.add(o)
    }
    fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return RatFn::zero();
        }
        RatFn::new(self.num.mul(&o.num), self.den.mul(&o.den))
    }
    fn div(&self, o: &Self) -> Self {
        assert!(!o.is_zero(), "division by zero");
        RatFn::new(self.num.mul(&o.den), self.den.mul(&o.num))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_ops() {
        let t = RatFn::var(0);
        let one = RatFn::one();
        let a = t.add(&one).div(&t);
        assert_eq!(a.mul(&t), t.add(&one));
        assert!(a.add(&a).is_zero());
        assert_eq!(t.square().sqrt(), Some(t.clone()));
        assert_eq!(t.sqrt(), None);
        assert_eq!(t.pow(-2), t.square().inv());
    }
}
