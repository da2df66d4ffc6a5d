//! Truncated π-adic scalars: a desk-scale model of the coefficient ring `O_K`.
//!
//! An element is `Σ c_i π^(v+i)` with digits `c_i ∈ [0, p)`, `c_0 ≠ 0`, and
//! at most `precision` digits retained past the valuation (capped relative
//! precision). Two uniformizer models share the representation:
//!
//! * [`Uniformizer::Abstract`]: digits add and multiply in `F_p` with no
//!   carries, i.e. the power series ring `F_p[[π]]`.
//! * [`Uniformizer::Prime`]: `π = p`, digits are base-`p` digits and
//!   arithmetic carries, i.e. the `p`-adic integers `Z_p`. Integers embed
//!   through their base-`p` expansion.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::fp::{is_prime, Fp, FpPoly};
use crate::ring::Ring;

pub const DEFAULT_PRECISION: u32 = 32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Uniformizer {
    Abstract,
    Prime,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ScalarConfig {
    prime: u64,
    precision: u32,
    uniformizer: Uniformizer,
}

impl ScalarConfig {
    pub fn new(prime: u64, precision: u32) -> Result<Self> {
        Self::with_uniformizer(prime, precision, Uniformizer::Abstract)
    }

    pub fn with_uniformizer(prime: u64, precision: u32, uniformizer: Uniformizer) -> Result<Self> {
        if !is_prime(prime) {
            return Err(Error::InvalidArgument(alloc::format!("{prime} is not prime")));
        }
        if precision == 0 {
            return Err(Error::InvalidArgument("precision must be positive".into()));
        }
        if prime > u32::MAX as u64 {
            return Err(Error::InvalidArgument("prime too large for digit arithmetic".into()));
        }
        Ok(ScalarConfig { prime, precision, uniformizer })
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn uniformizer(&self) -> Uniformizer {
        self.uniformizer
    }
}

/// Valuation of a scalar; `Infinite` only for zero and sorts above every
/// finite value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Valuation {
    Finite(u32),
    Infinite,
}

impl Valuation {
    pub fn finite(self) -> Option<u32> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => f.write_str("inf"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PadicScalar {
    cfg: ScalarConfig,
    valuation: u32,
    /// Empty exactly for zero.
    digits: Vec<u64>,
}

impl PadicScalar {
    pub fn zero(cfg: ScalarConfig) -> Self {
        PadicScalar { cfg, valuation: 0, digits: Vec::new() }
    }

    pub fn one(cfg: ScalarConfig) -> Self {
        PadicScalar { cfg, valuation: 0, digits: vec![1] }
    }

    /// The uniformizer raised to `k`.
    pub fn pi_pow(cfg: ScalarConfig, k: u32) -> Self {
        PadicScalar { cfg, valuation: k, digits: vec![1] }
    }

    pub fn pi(cfg: ScalarConfig) -> Self {
        Self::pi_pow(cfg, 1)
    }

    /// Builds `Σ digits[i] π^(valuation+i)`; digits must lie in `[0, p)`.
    pub fn from_digits(cfg: ScalarConfig, digits: &[u64], valuation: u32) -> Result<Self> {
        if let Some(&d) = digits.iter().find(|&&d| d >= cfg.prime) {
            return Err(Error::InvalidArgument(alloc::format!("digit {d} outside [0, {})", cfg.prime)));
        }
        Ok(Self::normalize(cfg, valuation, digits.to_vec()))
    }

    /// The image of an integer. Under the abstract uniformizer integers map
    /// through `F_p`; with `π = p` they map to their base-`p` expansion.
    pub fn from_int(cfg: ScalarConfig, n: i64) -> Self {
        match cfg.uniformizer {
            Uniformizer::Abstract => Self::normalize(cfg, 0, vec![n.rem_euclid(cfg.prime as i64) as u64]),
            Uniformizer::Prime => {
                let mut m = n.unsigned_abs();
                let mut digits = Vec::new();
                while m > 0 {
                    digits.push(m % cfg.prime);
                    m /= cfg.prime;
                }
                let s = Self::normalize(cfg, 0, digits);
                if n < 0 {
                    s.neg()
                } else {
                    s
                }
            }
        }
    }

    /// `u·π^a`.
    pub fn unit_pi_pow(cfg: ScalarConfig, u: i64, a: u32) -> Self {
        Self::from_int(cfg, u).mul(&Self::pi_pow(cfg, a))
    }

    /// Lifts a residue-field element digit-wise.
    pub fn lift(cfg: ScalarConfig, c: Fp) -> Self {
        Self::normalize(cfg, 0, vec![c.value()])
    }

    fn normalize(cfg: ScalarConfig, mut valuation: u32, mut digits: Vec<u64>) -> Self {
        let lead = digits.iter().position(|&d| d != 0);
        match lead {
            None => return Self::zero(cfg),
            Some(k) => {
                digits.drain(..k);
                valuation += k as u32;
            }
        }
        digits.truncate(cfg.precision as usize);
        while digits.last() == Some(&0) {
            digits.pop();
        }
        PadicScalar { cfg, valuation, digits }
    }

    pub fn config(&self) -> ScalarConfig {
        self.cfg
    }

    pub fn digits(&self) -> &[u64] {
        &self.digits
    }

    pub fn is_zero(&self) -> bool {
        self.digits.is_empty()
    }

    pub fn valuation(&self) -> Valuation {
        if self.is_zero() {
            Valuation::Infinite
        } else {
            Valuation::Finite(self.valuation)
        }
    }

    /// Reduction modulo π.
    pub fn residue(&self) -> Fp {
        if !self.is_zero() && self.valuation == 0 {
            Fp::from_u64(self.digits[0], self.cfg.prime)
        } else {
            Fp::from_u64(0, self.cfg.prime)
        }
    }

    pub fn is_unit(&self) -> bool {
        self.valuation() == Valuation::Finite(0)
    }

    /// `self / π^v(self)`, a unit; zero stays zero.
    pub fn unit_part(&self) -> Self {
        PadicScalar { cfg: self.cfg, valuation: 0, digits: self.digits.clone() }
    }

    fn check(&self, rhs: &Self) -> Result<()> {
        if self.cfg != rhs.cfg {
            return Err(Error::ConfigMismatch(alloc::format!("{:?} vs {:?}", self.cfg, rhs.cfg)));
        }
        Ok(())
    }

    pub fn checked_add(&self, rhs: &Self) -> Result<Self> {
        self.check(rhs)?;
        Ok(self.add_unchecked(rhs))
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self> {
        self.check(rhs)?;
        Ok(self.mul_unchecked(rhs))
    }

    pub fn checked_sub(&self, rhs: &Self) -> Result<Self> {
        self.check(rhs)?;
        Ok(self.add_unchecked(&rhs.neg()))
    }

    /// Panics on mismatched configurations; see [`Self::checked_add`].
    pub fn add(&self, rhs: &Self) -> Self {
        self.checked_add(rhs).expect("scalar configuration mismatch")
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.checked_sub(rhs).expect("scalar configuration mismatch")
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        self.checked_mul(rhs).expect("scalar configuration mismatch")
    }

    fn add_unchecked(&self, rhs: &Self) -> Self {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let p = self.cfg.prime;
        let v = self.valuation.min(rhs.valuation);
        let end = (self.valuation as usize + self.digits.len()).max(rhs.valuation as usize + rhs.digits.len());
        let len = end - v as usize;
        let mut acc = vec![0u64; len + 1];
        for x in [self, rhs] {
            let off = (x.valuation - v) as usize;
            for (i, &d) in x.digits.iter().enumerate() {
                acc[off + i] += d;
            }
        }
        match self.cfg.uniformizer {
            Uniformizer::Abstract => acc.iter_mut().for_each(|d| *d %= p),
            Uniformizer::Prime => {
                let mut carry = 0;
                for d in acc.iter_mut() {
                    let t = *d + carry;
                    *d = t % p;
                    carry = t / p;
                }
            }
        }
        Self::normalize(self.cfg, v, acc)
    }

    fn mul_unchecked(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero(self.cfg);
        }
        let p = self.cfg.prime as u128;
        let n = (self.cfg.precision as usize).min(self.digits.len() + rhs.digits.len());
        // Digits are below 2^32, so each product fits in 64 bits and the
        // column sums comfortably fit in u128.
        let mut acc = vec![0u128; n];
        for (i, &a) in self.digits.iter().enumerate().take(n) {
            for (j, &b) in rhs.digits.iter().enumerate().take(n - i) {
                acc[i + j] += a as u128 * b as u128;
            }
        }
        let digits: Vec<u64> = match self.cfg.uniformizer {
            Uniformizer::Abstract => acc.iter().map(|&d| (d % p) as u64).collect(),
            Uniformizer::Prime => {
                let mut carry = 0u128;
                acc.iter()
                    .map(|&d| {
                        let t = d + carry;
                        carry = t / p;
                        (t % p) as u64
                    })
                    .collect()
            }
        };
        Self::normalize(self.cfg, self.valuation + rhs.valuation, digits)
    }

    pub fn neg(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let p = self.cfg.prime;
        let digits = match self.cfg.uniformizer {
            Uniformizer::Abstract => self.digits.iter().map(|&d| (p - d) % p).collect(),
            Uniformizer::Prime => {
                let n = self.cfg.precision as usize;
                (0..n)
                    .map(|i| {
                        let d = self.digits.get(i).copied().unwrap_or(0);
                        if i == 0 {
                            p - d
                        } else {
                            p - 1 - d
                        }
                    })
                    .collect()
            }
        };
        Self::normalize(self.cfg, self.valuation, digits)
    }

    /// Inverse of a unit to full precision.
    pub fn inverse_unit(&self) -> Option<Self> {
        if !self.is_unit() {
            return None;
        }
        let p = self.cfg.prime;
        let d0_inv = Fp::from_u64(self.digits[0], p).inverse_value();
        let one = Self::one(self.cfg);
        let mut b = Self::normalize(self.cfg, 0, vec![d0_inv]);
        // Digit-by-digit correction: each round fixes the lowest wrong digit.
        for _ in 0..self.cfg.precision {
            let r = one.sub(&self.mul(&b));
            if r.is_zero() {
                break;
            }
            let k = r.valuation;
            let c = (r.digits[0] as u128 * d0_inv as u128 % p as u128) as u64;
            b = b.add(&Self::normalize(self.cfg, k, vec![c]));
        }
        Some(b)
    }

    /// `self / u` for a unit `u`.
    pub fn div_unit(&self, u: &Self) -> Option<Self> {
        u.inverse_unit().map(|inv| self.mul(&inv))
    }

    /// Square root of a unit whose residue is a square in `F_p` (`p` odd).
    pub fn sqrt_unit(&self) -> Option<Self> {
        if !self.is_unit() || self.cfg.prime == 2 {
            return None;
        }
        let r0 = self.residue().sqrt()?;
        let half = Self::from_int(self.cfg, 2).inverse_unit()?;
        let mut r = Self::lift(self.cfg, r0);
        let mut correct = 1u32;
        while correct < self.cfg.precision + 1 {
            r = r.add(&self.div_unit(&r)?).mul(&half);
            correct *= 2;
        }
        // One extra round absorbs truncation in the final division.
        r = r.add(&self.div_unit(&r)?).mul(&half);
        Some(r)
    }

    pub fn pow(&self, e: u32) -> Self {
        Ring::pow(self, e)
    }

    /// The element read as a polynomial in π over `F_p` (abstract model).
    pub fn to_fp_poly(&self) -> FpPoly {
        let mut coeffs = vec![0u64; self.valuation as usize];
        coeffs.extend_from_slice(&self.digits);
        if self.is_zero() {
            coeffs.clear();
        }
        FpPoly::new(self.cfg.prime, coeffs)
    }

    /// Signed integer lift in the `π = p` model: the representative of the
    /// class modulo `p^(v+N)` closest to zero.
    pub fn to_signed_integer(&self) -> BigInt {
        if self.is_zero() {
            return <BigInt as num_traits::Zero>::zero();
        }
        let p = BigInt::from(self.cfg.prime);
        let mut value = <BigInt as num_traits::Zero>::zero();
        let mut place = num_traits::pow(p.clone(), self.valuation as usize);
        for &d in &self.digits {
            value += &place * BigInt::from(d);
            place *= &p;
        }
        let modulus = num_traits::pow(p, (self.valuation + self.cfg.precision) as usize);
        if &value * 2 > modulus {
            value -= modulus;
        }
        value
    }

    pub fn to_rational(&self) -> BigRational {
        BigRational::from_integer(self.to_signed_integer())
    }

    /// Canonical digit-list form `[c0,c1,...]@v`; zero prints as `0`.
    pub fn to_digit_string(&self) -> String {
        alloc::format!("{self}")
    }
}

impl Fp {
    fn inverse_value(self) -> u64 {
        use crate::ring::Field;
        self.inverse().map(Fp::value).unwrap_or(0)
    }
}

impl fmt::Display for PadicScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        f.write_str("[")?;
        for (i, d) in self.digits.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{d}")?;
        }
        write!(f, "]@{}", self.valuation)
    }
}

impl Ring for PadicScalar {
    type Ctx = ScalarConfig;

    fn ctx(&self) -> ScalarConfig {
        self.cfg
    }
    fn zero(ctx: &ScalarConfig) -> Self {
        PadicScalar::zero(*ctx)
    }
    fn one(ctx: &ScalarConfig) -> Self {
        PadicScalar::one(*ctx)
    }
    fn from_int(ctx: &ScalarConfig, n: i64) -> Self {
        PadicScalar::from_int(*ctx, n)
    }
    fn is_zero(&self) -> bool {
        self.digits.is_empty()
    }
    fn is_one(&self) -> bool {
        self.valuation == 0 && self.digits == [1]
    }
    fn plus(&self, rhs: &Self) -> Self {
        self.add(rhs)
    }
    fn times(&self, rhs: &Self) -> Self {
        self.mul(rhs)
    }
    fn negated(&self) -> Self {
        self.neg()
    }
}
