//! Towers of iterated square roots of transcendentals over F2.
//!
//! At level `e` the generator `u = t^(1/2^e)` replaces `t`, so every level
//! is again a rational function field and elements are [`RatFn`]s in the `u`s.

use serde::{Deserialize, Serialize};

use super::ratfn::RatFn;
use crate::linalg::Field;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TowerError {
    #[error("unknown variable {0}")]
    UnknownVariable(String),
    #[error("{0} is not a subfield of the target tower")]
    NotSubfield(String),
    #[error("element has no square root in this field")]
    NoSquareRoot,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TowerField {
    pub names: Vec<String>,
    pub levels: Vec<u32>,
}

impl TowerField {
    pub fn base(names: &[&str]) -> Self {
        TowerField { names: names.iter().map(|s| s.to_string()).collect(), levels: vec![0; names.len()] }
    }

    /// The prime field.
    pub fn prime() -> Self {
        TowerField { names: Vec::new(), levels: Vec::new() }
    }

    pub fn var_index(&self, name: &str) -> Result<usize, TowerError> {
        self.names.iter().position(|n| n == name).ok_or_else(|| TowerError::UnknownVariable(name.into()))
    }

    /// Adjoins the square root of the current generator for `name`.
    pub fn extend_sqrt(&self, name: &str) -> Result<Self, TowerError> {
        let i = self.var_index(name)?;
        let mut out = self.clone();
        out.levels[i] += 1;
        Ok(out)
    }

    /// Adjoins square roots of every generator.
    pub fn extend_all(&self) -> Self {
        TowerField { names: self.names.clone(), levels: self.levels.iter().map(|l| l + 1).collect() }
    }

    pub fn is_subfield_of(&self, other: &TowerField) -> bool {
        self.names.iter().zip(&self.levels).all(|(n, l)| other.var_index(n).is_ok_and(|j| other.levels[j] >= *l))
    }

    /// The transcendental `t` named `name`, i.e. `u^(2^level)`.
    pub fn transcendental(&self, name: &str) -> Result<RatFn, TowerError> {
        let i = self.var_index(name)?;
        Ok(RatFn::var(i).pow(1 << self.levels[i]))
    }

    /// The current generator `u` for `name`.
    pub fn generator(&self, name: &str) -> Result<RatFn, TowerError> {
        Ok(RatFn::var(self.var_index(name)?))
    }

    pub fn embed(&self, x: &RatFn, to: &TowerField) -> Result<RatFn, TowerError> {
        if !self.is_subfield_of(to) {
            return Err(TowerError::NotSubfield(format!("{:?}", self.names)));
        }
        let map: Vec<(usize, u32)> = self
            .names
            .iter()
            .zip(&self.levels)
            .map(|(n, l)| {
                let j = to.var_index(n).unwrap();
                (j, 1u32 << (to.levels[j] - l))
            })
            .collect();
        Ok(x.map_monomials(|m| {
            let mut out = vec![0u32; to.names.len()];
            for (i, &e) in m.iter().enumerate() {
                out[map[i].0] += e * map[i].1;
            }
            out
        }))
    }

    pub fn embed_matrix(&self, m: &[Vec<RatFn>], to: &TowerField) -> Result<Vec<Vec<RatFn>>, TowerError> {
        m.iter().map(|r| r.iter().map(|x| self.embed(x, to)).collect()).collect()
    }

    /// Preimage of `x` (an element of `self`) in the subfield `sub`, if it lies there.
    pub fn restrict(&self, x: &RatFn, sub: &TowerField) -> Option<RatFn> {
        if !sub.is_subfield_of(self) {
            return None;
        }
        let mut shift = vec![(0usize, 0u32); self.names.len()];
        for (j, n) in self.names.iter().enumerate() {
            match sub.var_index(n) {
                Ok(i) => shift[j] = (i, self.levels[j] - sub.levels[i]),
                Err(_) => shift[j] = (usize::MAX, 0),
            }
        }
        let ok = |p: &super::gf2::Poly| {
            p.monomials().all(|m| {
                m.iter().enumerate().all(|(j, &e)| {
                    e == 0 || (shift[j].0 != usize::MAX && e % (1 << shift[j].1) == 0)
                })
            })
        };
        if !ok(x.num()) || !ok(x.den()) {
            return None;
        }
        Some(x.map_monomials(|m| {
            let mut out = vec![0u32; sub.names.len()];
            for (j, &e) in m.iter().enumerate() {
                if e > 0 {
                    out[shift[j].0] += e >> shift[j].1;
                }
            }
            out
        }))
    }

    pub fn sqrt(&self, x: &RatFn) -> Result<RatFn, TowerError> {
        x.sqrt().ok_or(TowerError::NoSquareRoot)
    }

    fn generator_text(&self, i: usize) -> String {
        let mut s = self.names[i].clone();
        for _ in 0..self.levels[i] {
            s = format!("sqrt({s})");
        }
        s
    }

    fn poly_text(&self, p: &super::gf2::Poly) -> String {
        if p.is_zero() {
            return "0".into();
        }
        let terms: Vec<String> = p
            .monomials()
            .rev()
            .map(|m| {
                let factors: Vec<String> = m
                    .iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(i, &e)| if e == 1 { self.generator_text(i) } else { format!("{}^{e}", self.generator_text(i)) })
                    .collect();
                if factors.is_empty() {
                    "1".into()
                } else {
                    factors.join("*")
                }
            })
            .collect();
        terms.join(" + ")
    }

    /// Text accepted back by the parser for this tower.
    pub fn format(&self, x: &RatFn) -> String {
        let num = self.poly_text(x.num());
        if x.den().is_one() {
            return num;
        }
        let den = self.poly_text(x.den());
        let wrap = |s: String, multi: bool| if multi { format!("({s})") } else { s };
        format!("{}/{}", wrap(num, x.num().len() > 1), wrap(den.clone(), x.den().len() > 1 || den.contains('*')))
    }

    pub fn zero(&self) -> RatFn {
        RatFn::zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn embedding_and_restriction() {
        let k = TowerField::base(&["t"]);
        let e = k.extend_sqrt("t").unwrap();
        let t = k.transcendental("t").unwrap();
        let te = k.embed(&t, &e).unwrap();
        assert_eq!(te, e.transcendental("t").unwrap());
        let s = e.generator("t").unwrap();
        assert_eq!(s.square(), te);
        assert_eq!(e.restrict(&te, &k), Some(t));
        assert_eq!(e.restrict(&s, &k), None);
        assert_eq!(e.format(&s.inv()), "1/sqrt(t)");
    }
}
