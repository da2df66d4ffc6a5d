//! Dimensions of local quotient rings `k[[x,y,z]]/I` by m-adic truncation.
//!
//! For an ideal `I` and truncation order `M`, the quotient
//! `k[x,y,z]/(I + m^M)` is computed by sparse row reduction of the span of
//! `monomial · generator` inside the monomials of degree `< M`. Pivots are
//! taken at the *lowest* monomial of each row under a degree-compatible
//! order, so the non-pivot monomials form a staircase (an order ideal) and
//! give a monomial basis of the quotient. When the dimensions at `M` and
//! `M + 1` agree, `m^M ⊆ I + m^(M+1)` and Nakayama gives `m^M ⊆ I` in the
//! local ring, so the truncated answer is the exact local one.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::fp::Fp;
use crate::poly::{total_degree, Monomial, MultiPoly};
use crate::ring::Field;

/// Default truncation cap for stabilization searches.
pub const DEFAULT_TRUNCATION_CAP: u32 = 24;
/// Default cap on the number of monomials in the truncated space.
pub const DEFAULT_MONOMIAL_CAP: usize = 20_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalQuotientReport {
    pub truncation: u32,
    pub dimension: usize,
    /// Standard monomials, ascending degree-lexicographic.
    pub basis: Vec<Monomial>,
    pub stabilized: bool,
}

/// A row-reduced copy of `(I + m^M)/m^M` that can reduce further vectors.
#[derive(Clone, Debug)]
pub struct TruncatedQuotient {
    p: u64,
    nvars: usize,
    truncation: u32,
    monomials: Vec<Monomial>,
    index: BTreeMap<Monomial, usize>,
    /// Pivot column -> normalized row (pivot coefficient 1, columns ascending).
    pivots: BTreeMap<usize, Vec<(usize, u64)>>,
}

/// All monomials in `nvars` variables of degree `< m`, ascending by degree
/// then lexicographically.
fn monomials_below(nvars: usize, m: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    for d in 0..m {
        let mut layer = Vec::new();
        compositions(nvars, d, &mut Vec::new(), &mut layer);
        layer.sort();
        out.extend(layer);
    }
    out
}

fn compositions(nvars: usize, d: u32, prefix: &mut Vec<u32>, out: &mut Vec<Monomial>) {
    if prefix.len() + 1 == nvars {
        prefix.push(d);
        out.push(prefix.clone());
        prefix.pop();
        return;
    }
    if nvars == 0 {
        if d == 0 {
            out.push(Vec::new());
        }
        return;
    }
    for k in 0..=d {
        prefix.push(k);
        compositions(nvars, d - k, prefix, out);
        prefix.pop();
    }
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1u64, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

impl TruncatedQuotient {
    pub fn new(generators: &[MultiPoly<Fp>], truncation: u32, monomial_cap: usize) -> Result<Self> {
        let first = generators.first().ok_or_else(|| Error::InvalidArgument("no generators".into()))?;
        let nvars = first.vars().len();
        let p = *first.ctx();
        if generators.iter().any(|g| g.vars() != first.vars() || *g.ctx() != p) {
            return Err(Error::DomainMismatch("generators live in different rings".into()));
        }
        if truncation == 0 {
            return Err(Error::InvalidArgument("truncation order must be positive".into()));
        }
        let size = binomial(truncation as u64 - 1 + nvars as u64, nvars as u64);
        if size > monomial_cap as u64 {
            return Err(Error::ResourceCap(alloc::format!(
                "{size} monomials below degree {truncation} exceed the cap of {monomial_cap}"
            )));
        }
        let monomials = monomials_below(nvars, truncation);
        let index = monomials.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let mut q = TruncatedQuotient { p, nvars, truncation, monomials, index, pivots: BTreeMap::new() };
        for g in generators {
            let g = g.truncate_below(truncation);
            let Some(ord) = g.order() else { continue };
            let multipliers: Vec<Monomial> =
                q.monomials.iter().filter(|m| total_degree(m) + ord < truncation).cloned().collect();
            for m in multipliers {
                let row = q.shifted_row(&g, &m);
                q.insert(row);
            }
        }
        Ok(q)
    }

    fn shifted_row(&self, g: &MultiPoly<Fp>, m: &[u32]) -> Vec<(usize, u64)> {
        let mut row: Vec<(usize, u64)> = g
            .terms()
            .filter_map(|(e, c)| {
                let sum: Monomial = e.iter().zip(m).map(|(a, b)| a + b).collect();
                self.index.get(&sum).map(|&col| (col, c.value()))
            })
            .collect();
        row.sort_unstable_by_key(|&(c, _)| c);
        row
    }

    fn vector_of(&self, f: &MultiPoly<Fp>) -> Vec<(usize, u64)> {
        let zero: Monomial = alloc::vec![0; self.nvars];
        self.shifted_row(f, &zero)
    }

    /// Fully eliminates every pivot column from `row`.
    fn reduce(&self, mut row: Vec<(usize, u64)>) -> Vec<(usize, u64)> {
        let p = self.p;
        let mut k = 0;
        while k < row.len() {
            let (col, c) = row[k];
            match self.pivots.get(&col) {
                Some(piv) => {
                    // row -= c * piv; piv has its pivot at `col` and only larger columns after it.
                    let mut merged = Vec::with_capacity(row.len() + piv.len());
                    merged.extend_from_slice(&row[..k]);
                    let (mut i, mut j) = (k, 0);
                    while i < row.len() || j < piv.len() {
                        let take_row = j >= piv.len() || (i < row.len() && row[i].0 < piv[j].0);
                        let take_piv = i >= row.len() || (j < piv.len() && piv[j].0 < row[i].0);
                        if take_row {
                            merged.push(row[i]);
                            i += 1;
                        } else if take_piv {
                            let v = (p - (c as u128 * piv[j].1 as u128 % p as u128) as u64) % p;
                            if v != 0 {
                                merged.push((piv[j].0, v));
                            }
                            j += 1;
                        } else {
                            let sub = (c as u128 * piv[j].1 as u128 % p as u128) as u64;
                            let v = (row[i].1 + p - sub) % p;
                            if v != 0 {
                                merged.push((row[i].0, v));
                            }
                            i += 1;
                            j += 1;
                        }
                    }
                    row = merged;
                }
                None => k += 1,
            }
        }
        row
    }

    fn insert(&mut self, row: Vec<(usize, u64)>) {
        let row = self.reduce(row);
        let Some(&(col, lead)) = row.first() else { return };
        let inv = Fp::from_u64(lead, self.p).inverse().expect("nonzero").value();
        let row: Vec<(usize, u64)> =
            row.into_iter().map(|(c, v)| (c, (v as u128 * inv as u128 % self.p as u128) as u64)).collect();
        self.pivots.insert(col, row);
    }

    pub fn dimension(&self) -> usize {
        self.monomials.len() - self.pivots.len()
    }

    pub fn truncation(&self) -> u32 {
        self.truncation
    }

    /// Standard monomials, ascending degree-lexicographic.
    pub fn basis(&self) -> Vec<Monomial> {
        (0..self.monomials.len()).filter(|c| !self.pivots.contains_key(c)).map(|c| self.monomials[c].clone()).collect()
    }

    /// Coordinates of the class of `f` in [`Self::basis`].
    pub fn coordinates(&self, f: &MultiPoly<Fp>) -> Vec<Fp> {
        let basis_cols: Vec<usize> = (0..self.monomials.len()).filter(|c| !self.pivots.contains_key(c)).collect();
        let reduced = self.reduce(self.vector_of(&f.truncate_below(self.truncation)));
        let lookup: BTreeMap<usize, u64> = reduced.into_iter().collect();
        basis_cols.iter().map(|c| Fp::from_u64(lookup.get(c).copied().unwrap_or(0), self.p)).collect()
    }
}

/// `dim k[x,y,z]/(I + m^M)` with its staircase basis; `stabilized` compares
/// against order `M + 1`.
pub fn truncated_quotient_dim(generators: &[MultiPoly<Fp>], m: u32) -> Result<LocalQuotientReport> {
    truncated_quotient_dim_with_cap(generators, m, DEFAULT_MONOMIAL_CAP)
}

pub fn truncated_quotient_dim_with_cap(
    generators: &[MultiPoly<Fp>],
    m: u32,
    monomial_cap: usize,
) -> Result<LocalQuotientReport> {
    let q = TruncatedQuotient::new(generators, m, monomial_cap)?;
    let next = TruncatedQuotient::new(generators, m + 1, monomial_cap)?;
    Ok(LocalQuotientReport {
        truncation: m,
        dimension: q.dimension(),
        basis: q.basis(),
        stabilized: q.dimension() == next.dimension(),
    })
}

/// A local quotient dimension, or a marker that it never stabilized below
/// the cap (a non-isolated singularity).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum LocalDimension {
    Finite(usize),
    Infinite,
}

impl LocalDimension {
    pub fn finite(self) -> Option<usize> {
        match self {
            LocalDimension::Finite(n) => Some(n),
            LocalDimension::Infinite => None,
        }
    }
}

impl core::fmt::Display for LocalDimension {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            LocalDimension::Finite(n) => write!(f, "{n}"),
            LocalDimension::Infinite => f.write_str("inf"),
        }
    }
}

/// Doubles the truncation order from 2 until two consecutive orders agree,
/// returning the stabilized quotient, or `None` once `cap` is passed.
pub fn stabilized_quotient(generators: &[MultiPoly<Fp>], cap: u32) -> Result<Option<TruncatedQuotient>> {
    let mut m = 2;
    loop {
        let q = TruncatedQuotient::new(generators, m, DEFAULT_MONOMIAL_CAP)?;
        let next = TruncatedQuotient::new(generators, m + 1, DEFAULT_MONOMIAL_CAP)?;
        if q.dimension() == next.dimension() {
            return Ok(Some(q));
        }
        if m >= cap {
            return Ok(None);
        }
        m = (2 * m).min(cap);
    }
}

fn jacobian(f: &MultiPoly<Fp>) -> Result<Vec<MultiPoly<Fp>>> {
    f.vars().iter().map(|v| f.partial_derivative(v)).collect()
}

/// Generators `(f, f_x, f_y, f_z)` of the Tjurina ideal.
pub fn tjurina_ideal(f: &MultiPoly<Fp>) -> Result<Vec<MultiPoly<Fp>>> {
    let mut gens = alloc::vec![f.clone()];
    gens.extend(jacobian(f)?);
    Ok(gens)
}

/// `dim k[[x,y,z]]/(f, f_x, f_y, f_z)`.
pub fn tjurina_number(f: &MultiPoly<Fp>) -> Result<LocalDimension> {
    local_dimension(&tjurina_ideal(f)?)
}

/// `dim k[[x,y,z]]/(f_x, f_y, f_z)`.
pub fn milnor_number(f: &MultiPoly<Fp>) -> Result<LocalDimension> {
    local_dimension(&jacobian(f)?)
}

fn local_dimension(gens: &[MultiPoly<Fp>]) -> Result<LocalDimension> {
    Ok(match stabilized_quotient(gens, DEFAULT_TRUNCATION_CAP)? {
        Some(q) => LocalDimension::Finite(q.dimension()),
        None => LocalDimension::Infinite,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::xyz;

    fn fp_poly(p: u64, terms: &[(&[u32], i64)]) -> MultiPoly<Fp> {
        MultiPoly::from_terms(xyz(), p, terms.iter().map(|(e, c)| (e.to_vec(), Fp::new(*c, p)))).unwrap()
    }

    fn a_n(n: u32, p: u64) -> MultiPoly<Fp> {
        fp_poly(p, &[(&[2, 0, 0], 1), (&[0, 0, 2], 1), (&[0, n + 1, 0], 1)])
    }

    #[test]
    fn monomial_counts() {
        assert_eq!(monomials_below(3, 4).len(), binomial(6, 3) as usize);
        assert_eq!(monomials_below(3, 1), alloc::vec![alloc::vec![0, 0, 0]]);
    }

    #[test]
    fn a2_quotient_at_order_six() {
        let f = a_n(2, 7);
        let r = truncated_quotient_dim(&tjurina_ideal(&f).unwrap(), 6).unwrap();
        assert_eq!(r.dimension, 2);
        assert_eq!(r.basis, alloc::vec![alloc::vec![0, 0, 0], alloc::vec![0, 1, 0]]);
        assert!(r.stabilized);
    }

    #[test]
    fn maximal_ideal() {
        let gens = [fp_poly(5, &[(&[1, 0, 0], 1)]), fp_poly(5, &[(&[0, 1, 0], 1)]), fp_poly(5, &[(&[0, 0, 1], 1)])];
        for m in 1..5 {
            let r = truncated_quotient_dim(&gens, m).unwrap();
            assert_eq!((r.dimension, r.basis.len()), (1, 1));
        }
    }

    #[test]
    fn e8_normal_form() {
        let f = fp_poly(11, &[(&[0, 0, 2], 1), (&[3, 0, 0], 1), (&[0, 5, 0], 1)]);
        assert_eq!(tjurina_number(&f).unwrap(), LocalDimension::Finite(8));
    }

    #[test]
    fn tjurina_of_a_n() {
        for n in 1..=5 {
            assert_eq!(tjurina_number(&a_n(n, 13)).unwrap(), LocalDimension::Finite(n as usize));
        }
    }

    #[test]
    fn smooth_and_non_isolated() {
        let smooth = fp_poly(7, &[(&[1, 0, 0], 1), (&[0, 2, 0], 1), (&[0, 0, 3], 1)]);
        assert_eq!(tjurina_number(&smooth).unwrap(), LocalDimension::Finite(0));
        let line = fp_poly(7, &[(&[2, 0, 0], 1)]);
        assert_eq!(tjurina_number(&line).unwrap(), LocalDimension::Infinite);
    }

    #[test]
    fn milnor_equals_tjurina_for_quasi_homogeneous() {
        let f = fp_poly(13, &[(&[0, 0, 2], 1), (&[3, 0, 0], 1), (&[1, 3, 0], 1)]);
        assert_eq!(milnor_number(&f).unwrap(), tjurina_number(&f).unwrap());
        assert_eq!(milnor_number(&f).unwrap(), LocalDimension::Finite(7));
    }

    #[test]
    fn resource_cap() {
        let f = a_n(2, 7);
        let err = truncated_quotient_dim_with_cap(&tjurina_ideal(&f).unwrap(), 40, 100).unwrap_err();
        assert!(matches!(err, Error::ResourceCap(_)));
    }

    #[test]
    fn coordinates_in_basis() {
        let f = a_n(3, 13);
        let q = stabilized_quotient(&tjurina_ideal(&f).unwrap(), 24).unwrap().unwrap();
        // y^3 ≡ 0 and x ≡ 0 modulo the Tjurina ideal; y^2 is a basis vector.
        let y2 = fp_poly(13, &[(&[0, 2, 0], 5), (&[1, 0, 0], 1), (&[0, 3, 0], 2)]);
        let coords: Vec<u64> = q.coordinates(&y2).into_iter().map(Fp::value).collect();
        assert_eq!(coords, alloc::vec![0, 0, 5]);
    }
}
