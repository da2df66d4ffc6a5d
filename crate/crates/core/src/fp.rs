//! The prime field `F_p` and univariate polynomials over it.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::ring::{Domain, Field, Ring};

/// Deterministic trial-division primality test; inputs here are small.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) {
        return false;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    acc
}

/// Element of `F_p`, stored as its representative in `[0, p)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Fp {
    value: u64,
    p: u64,
}

impl Fp {
    pub fn new(value: i64, p: u64) -> Self {
        let v = value.rem_euclid(p as i64) as u64;
        Fp { value: v, p }
    }

    pub fn from_u64(value: u64, p: u64) -> Self {
        Fp { value: value % p, p }
    }

    pub fn value(self) -> u64 {
        self.value
    }

    pub fn prime(self) -> u64 {
        self.p
    }

    pub fn is_square(self) -> bool {
        self.value == 0 || self.p == 2 || pow_mod(self.value, (self.p - 1) / 2, self.p) == 1
    }

    /// A square root by Tonelli-Shanks, if one exists.
    pub fn sqrt(self) -> Option<Fp> {
        let p = self.p;
        if self.value == 0 || p == 2 {
            return Some(self);
        }
        if !self.is_square() {
            return None;
        }
        let mut q = p - 1;
        let mut s = 0;
        while q.is_multiple_of(2) {
            q /= 2;
            s += 1;
        }
        let mut z = 2;
        while pow_mod(z, (p - 1) / 2, p) != p - 1 {
            z += 1;
        }
        let mut m = s;
        let mut c = pow_mod(z, q, p);
        let mut t = pow_mod(self.value, q, p);
        let mut r = pow_mod(self.value, q.div_ceil(2), p);
        while t != 1 {
            let mut i = 0;
            let mut t2 = t;
            while t2 != 1 {
                t2 = mul_mod(t2, t2, p);
                i += 1;
            }
            let b = pow_mod(c, 1 << (m - i - 1), p);
            m = i;
            c = mul_mod(b, b, p);
            t = mul_mod(t, c, p);
            r = mul_mod(r, b, p);
        }
        Some(Fp { value: r, p })
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Ring for Fp {
    type Ctx = u64;

    fn ctx(&self) -> u64 {
        self.p
    }
    fn zero(p: &u64) -> Self {
        Fp { value: 0, p: *p }
    }
    fn one(p: &u64) -> Self {
        Fp { value: 1 % p, p: *p }
    }
    fn from_int(p: &u64, n: i64) -> Self {
        Fp::new(n, *p)
    }
    fn is_zero(&self) -> bool {
        self.value == 0
    }
    fn plus(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.p, rhs.p);
        let s = self.value + rhs.value;
        Fp { value: if s >= self.p { s - self.p } else { s }, p: self.p }
    }
    fn times(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.p, rhs.p);
        Fp { value: mul_mod(self.value, rhs.value, self.p), p: self.p }
    }
    fn negated(&self) -> Self {
        Fp { value: if self.value == 0 { 0 } else { self.p - self.value }, p: self.p }
    }
}

impl Domain for Fp {
    fn div_exact(&self, rhs: &Self) -> Self {
        self.times(&rhs.inverse().expect("division by zero in F_p"))
    }
}

impl Field for Fp {
    fn inverse(&self) -> Option<Self> {
        if self.value == 0 {
            None
        } else {
            Some(Fp { value: pow_mod(self.value, self.p - 2, self.p), p: self.p })
        }
    }
}

/// Dense univariate polynomial over `F_p`, coefficients low degree first.
///
/// Also serves as the coordinate ring `F_p[π]` when the uniformizer is
/// treated as a transcendental.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FpPoly {
    p: u64,
    coeffs: Vec<u64>,
}

impl FpPoly {
    pub fn new(p: u64, coeffs: Vec<u64>) -> Self {
        let mut poly = FpPoly { p, coeffs: coeffs.into_iter().map(|c| c % p).collect() };
        poly.trim();
        poly
    }

    pub fn from_fp(coeffs: &[Fp], p: u64) -> Self {
        FpPoly::new(p, coeffs.iter().map(|c| c.value()).collect())
    }

    /// `c·t^k`.
    pub fn monomial(p: u64, c: u64, k: usize) -> Self {
        let mut coeffs = vec![0; k + 1];
        coeffs[k] = c % p;
        FpPoly::new(p, coeffs)
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn derivative(&self) -> Self {
        let coeffs =
            self.coeffs.iter().enumerate().skip(1).map(|(i, &c)| mul_mod(c, i as u64 % self.p, self.p)).collect();
        FpPoly::new(self.p, coeffs)
    }

    fn scale(&self, c: u64) -> Self {
        FpPoly::new(self.p, self.coeffs.iter().map(|&a| mul_mod(a, c, self.p)).collect())
    }

    pub fn monic(&self) -> Self {
        match self.degree() {
            None => self.clone(),
            Some(_) => self.scale(pow_mod(self.leading(), self.p - 2, self.p)),
        }
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by zero polynomial");
        let inv = pow_mod(d.leading(), self.p - 2, self.p);
        let mut rem = self.coeffs.clone();
        let mut quo = vec![0u64; self.coeffs.len().saturating_sub(dd).max(1)];
        while rem.len() > dd && !rem.is_empty() {
            let top = rem.len() - 1;
            let c = mul_mod(rem[top], inv, self.p);
            if c != 0 {
                let shift = top - dd;
                quo[shift] = c;
                for (i, &dc) in d.coeffs.iter().enumerate() {
                    let sub = mul_mod(c, dc, self.p);
                    rem[shift + i] = (rem[shift + i] + self.p - sub) % self.p;
                }
            }
            rem.pop();
            while rem.last() == Some(&0) {
                rem.pop();
            }
        }
        (FpPoly::new(self.p, quo), FpPoly::new(self.p, rem))
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while b.degree().is_some() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Separable means coprime to its derivative.
    pub fn is_separable(&self) -> bool {
        match self.degree() {
            None => false,
            Some(0) => true,
            Some(_) => self.gcd(&self.derivative()).degree() == Some(0),
        }
    }
}

impl Ring for FpPoly {
    type Ctx = u64;

    fn ctx(&self) -> u64 {
        self.p
    }
    fn zero(p: &u64) -> Self {
        FpPoly { p: *p, coeffs: Vec::new() }
    }
    fn one(p: &u64) -> Self {
        FpPoly::new(*p, vec![1])
    }
    fn from_int(p: &u64, n: i64) -> Self {
        FpPoly::new(*p, vec![n.rem_euclid(*p as i64) as u64])
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn plus(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n)
            .map(|i| {
                let a = self.coeffs.get(i).copied().unwrap_or(0);
                let b = rhs.coeffs.get(i).copied().unwrap_or(0);
                (a + b) % self.p
            })
            .collect();
        FpPoly::new(self.p, coeffs)
    }
    fn times(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return FpPoly::zero(&self.p);
        }
        let mut out = vec![0u64; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = (out[i + j] + mul_mod(a, b, self.p)) % self.p;
            }
        }
        FpPoly::new(self.p, out)
    }
    fn negated(&self) -> Self {
        FpPoly::new(self.p, self.coeffs.iter().map(|&c| (self.p - c) % self.p).collect())
    }
}

impl Domain for FpPoly {
    fn div_exact(&self, rhs: &Self) -> Self {
        let (q, r) = self.div_rem(rhs);
        debug_assert!(r.is_zero(), "inexact polynomial division");
        q
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes() {
        let small: Vec<u64> = (0..30).filter(|&n| is_prime(n)).collect();
        assert_eq!(small, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
    }

    #[test]
    fn sqrt_mod_p() {
        for p in [3u64, 5, 7, 11, 13, 17, 41] {
            for a in 0..p {
                let x = Fp::from_u64(a, p);
                match x.sqrt() {
                    Some(r) => assert_eq!(r.times(&r), x),
                    None => assert!(!x.is_square()),
                }
            }
        }
    }

    #[test]
    fn gcd_and_separability() {
        let p = 7;
        // (t - 1)^2 (t + 2)
        let a = FpPoly::new(p, vec![6, 1]);
        let b = FpPoly::new(p, vec![2, 1]);
        let f = a.times(&a).times(&b);
        assert!(!f.is_separable());
        assert_eq!(f.gcd(&f.derivative()), a);
        assert!(a.times(&b).is_separable());
        // t^7 is inseparable in characteristic 7
        assert!(!FpPoly::monomial(p, 1, 7).is_separable());
    }

    #[test]
    fn division_round_trip() {
        let p = 11;
        let f = FpPoly::new(p, vec![3, 0, 5, 7, 1]);
        let d = FpPoly::new(p, vec![4, 2, 1]);
        let (q, r) = f.div_rem(&d);
        assert_eq!(q.times(&d).plus(&r), f);
        assert!(r.degree().is_none_or(|k| k < 2));
    }
}
