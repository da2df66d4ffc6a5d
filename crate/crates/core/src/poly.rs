//! Sparse multivariate polynomials over an exact coefficient ring.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::fp::Fp;
use crate::ring::Ring;
use crate::scalar::PadicScalar;

/// An exponent vector, one entry per variable.
pub type Monomial = Vec<u32>;

pub fn total_degree(m: &[u32]) -> u32 {
    m.iter().sum()
}

/// Canonical variable list `x, y, z`.
pub fn xyz() -> Vec<String> {
    ["x", "y", "z"].iter().map(|s| s.to_string()).collect()
}

#[derive(Clone, PartialEq, Debug)]
pub struct MultiPoly<R: Ring> {
    vars: Vec<String>,
    ctx: R::Ctx,
    /// Never stores a zero coefficient.
    terms: BTreeMap<Monomial, R>,
}

impl<R: Ring> MultiPoly<R> {
    pub fn zero(vars: Vec<String>, ctx: R::Ctx) -> Self {
        MultiPoly { vars, ctx, terms: BTreeMap::new() }
    }

    pub fn constant(vars: Vec<String>, c: R) -> Self {
        let ctx = c.ctx();
        let mut p = Self::zero(vars, ctx);
        let n = p.vars.len();
        p.insert(vec![0; n], c);
        p
    }

    pub fn one(vars: Vec<String>, ctx: R::Ctx) -> Self {
        let one = R::one(&ctx);
        Self::constant(vars, one)
    }

    /// The variable `name` as a polynomial.
    pub fn var(vars: Vec<String>, ctx: R::Ctx, name: &str) -> Result<Self> {
        let i = vars.iter().position(|v| v == name).ok_or_else(|| Error::UnknownVariable(name.into()))?;
        let mut e = vec![0; vars.len()];
        e[i] = 1;
        let one = R::one(&ctx);
        Ok(Self::monomial(vars, e, one))
    }

    pub fn monomial(vars: Vec<String>, exps: Monomial, c: R) -> Self {
        assert_eq!(vars.len(), exps.len(), "exponent vector length");
        let ctx = c.ctx();
        let mut p = Self::zero(vars, ctx);
        p.insert(exps, c);
        p
    }

    /// Builds from `(exponents, coefficient)` pairs, summing duplicates.
    pub fn from_terms(vars: Vec<String>, ctx: R::Ctx, terms: impl IntoIterator<Item = (Monomial, R)>) -> Result<Self> {
        let mut p = Self::zero(vars, ctx);
        for (e, c) in terms {
            if e.len() != p.vars.len() {
                return Err(Error::DomainMismatch("exponent vector length differs from variable list".into()));
            }
            if c.ctx() != p.ctx {
                return Err(Error::DomainMismatch("coefficient from a different ring".into()));
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    fn insert(&mut self, e: Monomial, c: R) {
        if !c.is_zero() {
            self.terms.insert(e, c);
        }
    }

    fn add_term(&mut self, e: Monomial, c: R) {
        match self.terms.get(&e) {
            Some(old) => {
                let s = old.plus(&c);
                if s.is_zero() {
                    self.terms.remove(&e);
                } else {
                    self.terms.insert(e, s);
                }
            }
            None => self.insert(e, c),
        }
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn ctx(&self) -> &R::Ctx {
        &self.ctx
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &R)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, e: &[u32]) -> R {
        self.terms.get(e).cloned().unwrap_or_else(|| R::zero(&self.ctx))
    }

    pub fn var_index(&self, name: &str) -> Result<usize> {
        self.vars.iter().position(|v| v == name).ok_or_else(|| Error::UnknownVariable(name.into()))
    }

    /// Highest total degree; `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| total_degree(e)).max()
    }

    /// Lowest total degree among the terms (order of vanishing at the
    /// origin); `None` for zero.
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().map(|e| total_degree(e)).min()
    }

    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|e| e[var]).max()
    }

    pub fn homogeneous_part(&self, d: u32) -> Self {
        self.filter(|e| total_degree(e) == d)
    }

    /// Drops all terms of total degree `≥ m`.
    pub fn truncate_below(&self, m: u32) -> Self {
        self.filter(|e| total_degree(e) < m)
    }

    fn filter(&self, keep: impl Fn(&Monomial) -> bool) -> Self {
        MultiPoly {
            vars: self.vars.clone(),
            ctx: self.ctx.clone(),
            terms: self.terms.iter().filter(|(e, _)| keep(e)).map(|(e, c)| (e.clone(), c.clone())).collect(),
        }
    }

    pub fn map_coeffs<S: Ring>(&self, ctx: S::Ctx, f: impl Fn(&R) -> S) -> MultiPoly<S> {
        let mut out = MultiPoly::zero(self.vars.clone(), ctx);
        for (e, c) in &self.terms {
            out.insert(e.clone(), f(c));
        }
        out
    }

    fn check(&self, rhs: &Self) -> Result<()> {
        if self.vars != rhs.vars {
            return Err(Error::DomainMismatch(alloc::format!("variables {:?} vs {:?}", self.vars, rhs.vars)));
        }
        if self.ctx != rhs.ctx {
            return Err(Error::DomainMismatch(alloc::format!("coefficient rings {:?} vs {:?}", self.ctx, rhs.ctx)));
        }
        Ok(())
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        self.check(rhs)?;
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(self.ctx.clone(), R::negated)
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        self.check(rhs)?;
        let mut out = Self::zero(self.vars.clone(), self.ctx.clone());
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e: Monomial = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca.times(cb));
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &R) -> Self {
        self.map_coeffs(self.ctx.clone(), |a| a.times(c))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.vars.clone(), self.ctx.clone());
        for _ in 0..e {
            acc = acc.mul(self).expect("same domain");
        }
        acc
    }

    /// Formal partial derivative; the integer factor is mapped into the
    /// coefficient ring, so `∂(y^p)/∂y = 0` over `F_p`.
    pub fn partial_derivative(&self, var: &str) -> Result<Self> {
        let i = self.var_index(var)?;
        let mut out = Self::zero(self.vars.clone(), self.ctx.clone());
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut ne = e.clone();
            ne[i] -= 1;
            out.add_term(ne, c.times(&R::from_int(&self.ctx, e[i] as i64)));
        }
        Ok(out)
    }

    /// Simultaneous substitution. Every variable of `self` maps to its image
    /// in `map` or, when absent, to the same-named variable of `target_vars`.
    pub fn substitute(&self, target_vars: &[String], map: &BTreeMap<String, Self>) -> Result<Self> {
        let target = target_vars.to_vec();
        for img in map.values() {
            if img.vars != target || img.ctx != self.ctx {
                return Err(Error::DomainMismatch("substitution image lives in another ring".into()));
            }
        }
        let images: Vec<Self> = self
            .vars
            .iter()
            .map(|v| match map.get(v) {
                Some(img) => Ok(img.clone()),
                None => Self::var(target.clone(), self.ctx.clone(), v),
            })
            .collect::<Result<_>>()?;
        let mut powers: Vec<Vec<Self>> =
            images.iter().map(|img| vec![Self::one(target.clone(), self.ctx.clone()), img.clone()]).collect();
        let mut out = Self::zero(target.clone(), self.ctx.clone());
        for (e, c) in &self.terms {
            let mut term = Self::constant(target.clone(), c.clone());
            for (i, &k) in e.iter().enumerate() {
                while powers[i].len() <= k as usize {
                    let next = powers[i].last().unwrap().mul(&images[i])?;
                    powers[i].push(next);
                }
                if k > 0 {
                    term = term.mul(&powers[i][k as usize])?;
                }
            }
            out = out.add(&term)?;
        }
        Ok(out)
    }

    /// Convenience: substitute a single variable, keeping the variable list.
    pub fn substitute_var(&self, var: &str, image: &Self) -> Result<Self> {
        let mut map = BTreeMap::new();
        map.insert(var.to_string(), image.clone());
        self.substitute(&self.vars.clone(), &map)
    }

    /// Re-expresses the polynomial over a larger (or reordered) variable list.
    pub fn embed(&self, vars: &[String]) -> Result<Self> {
        let idx: Vec<usize> = self
            .vars
            .iter()
            .map(|v| vars.iter().position(|w| w == v).ok_or_else(|| Error::UnknownVariable(v.clone())))
            .collect::<Result<_>>()?;
        let mut out = Self::zero(vars.to_vec(), self.ctx.clone());
        for (e, c) in &self.terms {
            let mut ne = vec![0; vars.len()];
            for (i, &k) in e.iter().enumerate() {
                ne[idx[i]] = k;
            }
            out.insert(ne, c.clone());
        }
        Ok(out)
    }

    /// Sets the listed variables to zero and drops them from the list.
    pub fn restrict_to(&self, keep: &[String]) -> Result<Self> {
        let idx: Vec<usize> = keep.iter().map(|v| self.var_index(v)).collect::<Result<_>>()?;
        let mut out = Self::zero(keep.to_vec(), self.ctx.clone());
        for (e, c) in &self.terms {
            let dropped_nonzero = e.iter().enumerate().any(|(i, &k)| k > 0 && !idx.contains(&i));
            if !dropped_nonzero {
                out.add_term(idx.iter().map(|&i| e[i]).collect(), c.clone());
            }
        }
        Ok(out)
    }

    /// Coefficient of `var^k` as a polynomial in the remaining variables
    /// (the variable list is kept; `var` just no longer occurs).
    pub fn coefficient_of(&self, var: &str, k: u32) -> Result<Self> {
        let i = self.var_index(var)?;
        let mut out = Self::zero(self.vars.clone(), self.ctx.clone());
        for (e, c) in &self.terms {
            if e[i] == k {
                let mut ne = e.clone();
                ne[i] = 0;
                out.insert(ne, c.clone());
            }
        }
        Ok(out)
    }

    /// Value at the origin.
    pub fn constant_term(&self) -> R {
        self.coefficient(&vec![0; self.vars.len()])
    }
}

impl MultiPoly<PadicScalar> {
    /// Coefficient-wise reduction modulo π; zero residues are dropped.
    pub fn reduce_mod_pi(&self) -> MultiPoly<Fp> {
        self.map_coeffs(self.ctx.prime(), PadicScalar::residue)
    }
}

impl MultiPoly<Fp> {
    /// Digit-wise lift of an `F_p` polynomial to the π-adic scalars.
    pub fn lift(&self, cfg: crate::scalar::ScalarConfig) -> MultiPoly<PadicScalar> {
        self.map_coeffs(cfg, |c| PadicScalar::lift(cfg, *c))
    }
}

impl<R: Ring + fmt::Display> fmt::Display for MultiPoly<R> {
    /// Terms in descending degree-lexicographic order; a coefficient equal
    /// to one is omitted.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut terms: Vec<(&Monomial, &R)> = self.terms.iter().collect();
        terms.sort_by(|a, b| (total_degree(b.0), b.0).cmp(&(total_degree(a.0), a.0)));
        for (k, (e, c)) in terms.into_iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            let is_const = e.iter().all(|&d| d == 0);
            let mut first = true;
            if !c.is_one() || is_const {
                write!(f, "{c}")?;
                first = false;
            }
            for (v, &d) in self.vars.iter().zip(e.iter()) {
                if d == 0 {
                    continue;
                }
                if !first {
                    f.write_str("*")?;
                }
                first = false;
                if d == 1 {
                    write!(f, "{v}")?;
                } else {
                    write!(f, "{v}^{d}")?;
                }
            }
        }
        Ok(())
    }
}
