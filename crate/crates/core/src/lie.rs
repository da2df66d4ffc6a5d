//! Matrix models in `sl_{n+1}`: subregular and regular nilpotents, integral
//! sl2-triples, centralizers, fiberwise orbit checks and adjoint invariants.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::classify::{dynkin_data, SingularityClass};
use crate::error::{Error, Result};
use crate::fp::{Fp, FpPoly};
use crate::matrix::Matrix;
use crate::ring::{rational, Domain, Field, Ring};
use crate::roots::cartan_matrix;
use crate::scalar::{PadicScalar, Uniformizer};

/// `Σ_{i<n} E_{i,i+1}` in `sl_{n+1}`.
pub fn subregular_x<R: Ring>(ctx: &R::Ctx, n: usize) -> Result<Matrix<R>> {
    if n < 2 {
        return Err(Error::InvalidArgument(alloc::format!("no subregular representative in sl_{}", n + 1)));
    }
    Ok(superdiagonal(ctx, n + 1, n - 1))
}

/// `Σ_{i≤n} E_{i,i+1}` in `sl_{n+1}`.
pub fn regular_nilpotent<R: Ring>(ctx: &R::Ctx, n: usize) -> Matrix<R> {
    superdiagonal(ctx, n + 1, n)
}

fn superdiagonal<R: Ring>(ctx: &R::Ctx, size: usize, ones: usize) -> Matrix<R> {
    Matrix::from_fn(ctx, size, size, |i, j| if j == i + 1 && i < ones { R::one(ctx) } else { R::zero(ctx) })
}

fn solve_transposed_cartan(n: usize, d: &[BigRational]) -> Vec<BigRational> {
    let class = SingularityClass::a(n as u32).expect("n >= 1");
    let c = cartan_matrix(class).transpose().map(&(), |&v| BigRational::from_integer(v.into()));
    c.solve(d).expect("the A_n Cartan matrix is invertible")
}

/// Exact solution of `Σ_j a_j C_{j,i} = d_i` with `d = (2, …, 2, 0)`.
pub fn solve_cartan_system(n: usize) -> Result<Vec<BigRational>> {
    if n < 1 {
        return Err(Error::InvalidArgument("rank must be positive".into()));
    }
    let mut d = vec![rational(2, 1); n];
    d[n - 1] = rational(0, 1);
    Ok(solve_transposed_cartan(n, &d))
}

/// Coefficients `a_i` with `h = Σ a_i h_{α_i}` completing `subregular_x(n)`
/// to an sl2-triple: the Cartan system with `d = (2, …, 2, 1 − n)`, whose
/// solution is `a_i = i(n − i)`.
pub fn sl2_cartan_coefficients(n: usize) -> Result<Vec<BigRational>> {
    if n < 2 {
        return Err(Error::InvalidArgument("n must be at least 2".into()));
    }
    let mut d = vec![rational(2, 1); n];
    d[n - 1] = rational(1 - n as i64, 1);
    Ok(solve_transposed_cartan(n, &d))
}

#[derive(Clone, Debug, PartialEq)]
pub struct Sl2Triple<R: Ring> {
    pub x: Matrix<R>,
    pub h: Matrix<R>,
    pub y: Matrix<R>,
    pub coefficients: Vec<R>,
}

impl<R: Ring> Sl2Triple<R> {
    /// `[h, x] = 2x`, `[h, y] = −2y`, `[x, y] = h`.
    pub fn brackets_hold(&self) -> bool {
        let two = R::from_int(self.x.ctx(), 2);
        self.h.bracket(&self.x) == self.x.scale(&two)
            && self.h.bracket(&self.y) == self.y.scale(&two.negated())
            && self.x.bracket(&self.y) == self.h
    }
}

/// `h = Σ a_i (E_ii − E_{i+1,i+1})` and `y = Σ_{i<n} a_i E_{i+1,i}`.
pub fn triple_from_coefficients<R: Ring>(ctx: &R::Ctx, n: usize, a: &[R]) -> Result<Sl2Triple<R>> {
    let x = subregular_x(ctx, n)?;
    let mut h = Matrix::<R>::zeros(ctx, n + 1, n + 1);
    let mut y = Matrix::<R>::zeros(ctx, n + 1, n + 1);
    for (i, ai) in a.iter().enumerate() {
        h.set(i, i, h.get(i, i).plus(ai));
        h.set(i + 1, i + 1, h.get(i + 1, i + 1).minus(ai));
        if i + 1 < n {
            y.set(i + 1, i, ai.clone());
        }
    }
    Ok(Sl2Triple { x, h, y, coefficients: a.to_vec() })
}

pub fn complete_sl2(n: usize) -> Result<Sl2Triple<BigRational>> {
    triple_from_coefficients(&(), n, &sl2_cartan_coefficients(n)?)
}

fn reduce_rational(q: &BigRational, p: u64) -> Option<Fp> {
    let pm = BigInt::from(p);
    let num = q.numer().mod_floor(&pm);
    let den = q.denom().mod_floor(&pm);
    if Zero::is_zero(&den) {
        return None;
    }
    let to_fp = |v: BigInt| Fp::from_u64(u64::try_from(v).expect("reduced below p"), p);
    Some(to_fp(num).times(&to_fp(den).inverse()?))
}

impl Sl2Triple<BigRational> {
    /// Reduction modulo `p`; fails when a denominator is divisible by `p`.
    pub fn reduce_mod(&self, p: u64) -> Result<Sl2Triple<Fp>> {
        let red = |m: &Matrix<BigRational>| -> Result<Matrix<Fp>> {
            let rows = m
                .to_rows()
                .iter()
                .map(|r| r.iter().map(|q| reduce_rational(q, p).ok_or(Error::UnsupportedCharacteristic(p))).collect())
                .collect::<Result<_>>()?;
            Matrix::from_rows(&p, rows)
        };
        Ok(Sl2Triple {
            x: red(&self.x)?,
            h: red(&self.h)?,
            y: red(&self.y)?,
            coefficients: self
                .coefficients
                .iter()
                .map(|q| reduce_rational(q, p).ok_or(Error::UnsupportedCharacteristic(p)))
                .collect::<Result<_>>()?,
        })
    }

    /// Indices `i` (1-based, `i < n`) with `a_i ≡ 0 mod p`.
    pub fn vanishing_coefficients_mod(&self, p: u64) -> Vec<usize> {
        let n = self.coefficients.len();
        (0..n - 1)
            .filter(|&i| reduce_rational(&self.coefficients[i], p).is_none_or(|v| v.is_zero()))
            .map(|i| i + 1)
            .collect()
    }
}

/// `dim {z ∈ sl_N : [x, z] = 0}`.
pub fn centralizer_dim<R: Domain>(x: &Matrix<R>) -> usize {
    let n = x.rows();
    let ctx = x.ctx().clone();
    let one = R::one(&ctx);
    // Unknown z_{kl} sits in column k·n + l; row i·n + j is ([x, z])_{ij}.
    let mut m = Matrix::<R>::zeros(&ctx, n * n + 1, n * n);
    for i in 0..n {
        for j in 0..n {
            let row = i * n + j;
            for k in 0..n {
                // (xz)_{ij} = Σ_k x_{ik} z_{kj};  (zx)_{ij} = Σ_k z_{ik} x_{kj}
                let a = m.get(row, k * n + j).plus(x.get(i, k));
                m.set(row, k * n + j, a);
                let b = m.get(row, i * n + k).minus(x.get(k, j));
                m.set(row, i * n + k, b);
            }
        }
    }
    for i in 0..n {
        m.set(n * n, i * n + i, one.clone());
    }
    n * n - m.rank()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrbitLabel {
    Regular,
    Subregular,
    Other,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum JordanKind {
    Nilpotent,
    /// Distinct eigenvalues.
    RegularSemisimple,
    Mixed,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FiberOrbit {
    pub centralizer_dim: usize,
    pub orbit: OrbitLabel,
    pub kind: JordanKind,
}

impl fmt::Display for FiberOrbit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let orbit = match self.orbit {
            OrbitLabel::Regular => "regular",
            OrbitLabel::Subregular => "subregular",
            OrbitLabel::Other => "other",
        };
        let kind = match self.kind {
            JordanKind::Nilpotent => "nilpotent",
            JordanKind::RegularSemisimple => "semisimple",
            JordanKind::Mixed => "mixed",
        };
        write!(f, "{orbit} {kind}")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FiberwiseOrbits {
    pub generic: FiberOrbit,
    pub special: FiberOrbit,
}

/// Resultant-based discriminant test: the monic `χ` is squarefree iff
/// `Res(χ, χ') ≠ 0`.
fn squarefree_charpoly<R: Domain>(chi: &[R], ctx: &R::Ctx) -> bool {
    let n = chi.len() - 1;
    if n <= 1 {
        return true;
    }
    // χ(λ) = Σ chi[i] λ^(n−i); χ' has coefficients (n−i)·chi[i] for i < n.
    let der: Vec<R> = (0..n).map(|i| chi[i].times(&R::from_int(ctx, (n - i) as i64))).collect();
    let size = 2 * n - 1;
    let mut s = Matrix::zeros(ctx, size, size);
    for r in 0..n - 1 {
        for (k, c) in chi.iter().enumerate() {
            s.set(r, r + k, c.clone());
        }
    }
    for r in 0..n {
        for (k, c) in der.iter().enumerate() {
            s.set(n - 1 + r, r + k, c.clone());
        }
    }
    !s.det().is_zero()
}

fn fiber_orbit<R: Domain>(m: &Matrix<R>) -> FiberOrbit {
    let n = m.rows();
    let rank = n - 1;
    let dim = centralizer_dim(m);
    let orbit = if dim == rank {
        OrbitLabel::Regular
    } else if dim == rank + 2 {
        OrbitLabel::Subregular
    } else {
        OrbitLabel::Other
    };
    let chi = m.charpoly();
    let kind = if chi[1..].iter().all(Ring::is_zero) {
        JordanKind::Nilpotent
    } else if squarefree_charpoly(&chi, m.ctx()) {
        JordanKind::RegularSemisimple
    } else {
        JordanKind::Mixed
    };
    FiberOrbit { centralizer_dim: dim, orbit, kind }
}

/// Orbit data of `x` over the fraction field (π transcendental, or the
/// rationals when π = p) and over the residue field.
pub fn fiberwise_orbit_check(x: &Matrix<PadicScalar>) -> Result<FiberwiseOrbits> {
    if !x.is_square() || x.rows() < 2 {
        return Err(Error::InvalidArgument("need a square matrix of size at least 2".into()));
    }
    let cfg = *x.ctx();
    let p = cfg.prime();
    let generic = match cfg.uniformizer() {
        Uniformizer::Abstract => {
            let ctx = p;
            fiber_orbit(&x.map::<FpPoly>(&ctx, PadicScalar::to_fp_poly))
        }
        Uniformizer::Prime => fiber_orbit(&x.map::<BigRational>(&(), PadicScalar::to_rational)),
    };
    let special = fiber_orbit(&x.map::<Fp>(&p, PadicScalar::residue));
    Ok(FiberwiseOrbits { generic, special })
}

/// `σ_2, …, σ_N` with `det(λ − m) = λ^N + Σ (−1)^i σ_i λ^(N−i)`.
pub fn adjoint_invariants<R: Ring>(m: &Matrix<R>) -> Result<Vec<R>> {
    if !m.is_square() {
        return Err(Error::InvalidArgument("adjoint invariants need a square matrix".into()));
    }
    if !m.trace().is_zero() {
        return Err(Error::NonzeroTrace);
    }
    let chi = m.charpoly();
    Ok((2..chi.len()).map(|i| if i % 2 == 0 { chi[i].clone() } else { chi[i].negated() }).collect())
}

/// Elementary symmetric polynomials `e_1, …, e_N` of `values`.
pub fn elementary_symmetric<R: Ring>(ctx: &R::Ctx, values: &[R]) -> Vec<R> {
    let mut e = vec![R::one(ctx)];
    for v in values {
        let mut next = e.clone();
        next.push(R::zero(ctx));
        for k in 1..next.len() {
            next[k] = e.get(k).cloned().unwrap_or_else(|| R::zero(ctx)).plus(&e[k - 1].times(v));
        }
        e = next;
    }
    e.remove(0);
    e
}

/// The exceptional curves of the minimal resolution: one projective line
/// per node of the Dynkin diagram, meeting along its edges.
#[derive(Clone, Debug, PartialEq)]
pub struct SpringerFiber {
    pub class: SingularityClass,
    pub components: usize,
    pub dual_graph: Matrix<i64>,
    pub h2_dim: usize,
}

pub fn springer_fiber_data(class: SingularityClass) -> SpringerFiber {
    let r = class.rank() as usize;
    SpringerFiber { class, components: r, dual_graph: dynkin_data(class), h2_dim: r }
}

/// Whether the reduction mod `p` of [`complete_sl2`] is still an
/// sl2-triple, and the indices `i < n` with `a_i ≡ 0 mod p`.
pub fn sl2_reduction_report(n: usize, p: u64) -> Result<(bool, Vec<usize>)> {
    let t = complete_sl2(n)?;
    let reduced = t.reduce_mod(p)?;
    Ok((reduced.brackets_hold(), t.vanishing_coefficients_mod(p)))
}

/// Least common multiple of the denominators of `values`.
pub fn denominator_lcm(values: &[BigRational]) -> BigInt {
    crate::ring::denominator_lcm(values).abs()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ScalarConfig;
    use alloc::string::ToString;

    fn q(n: i64, d: i64) -> BigRational {
        rational(n, d)
    }

    #[test]
    fn subregular_shapes() {
        let x: Matrix<i64> = subregular_x(&(), 2).unwrap();
        assert_eq!(x, crate::matrix::int_matrix(&[&[0, 1, 0], &[0, 0, 0], &[0, 0, 0]]));
        let x: Matrix<i64> = subregular_x(&(), 4).unwrap();
        let sup: Vec<i64> = (0..4).map(|i| *x.get(i, i + 1)).collect();
        assert_eq!(sup, vec![1, 1, 1, 0]);
        for n in 2..=8 {
            let x: Matrix<BigRational> = subregular_x(&(), n).unwrap();
            assert_eq!(x.rank(), n - 1);
        }
        assert!(subregular_x::<i64>(&(), 1).is_err());
    }

    #[test]
    fn cartan_system_values() {
        assert_eq!(solve_cartan_system(2).unwrap(), vec![q(4, 3), q(2, 3)]);
        assert_eq!(solve_cartan_system(3).unwrap(), vec![q(5, 2), q(3, 1), q(3, 2)]);
        for n in 1..=8 {
            let a = solve_cartan_system(n).unwrap();
            let c = cartan_matrix(SingularityClass::a(n as u32).unwrap());
            for i in 0..n {
                let lhs: BigRational = (0..n).map(|j| &a[j] * BigRational::from_integer((*c.get(j, i)).into())).sum();
                assert_eq!(lhs, if i + 1 < n { q(2, 1) } else { q(0, 1) });
            }
            let l = denominator_lcm(&a);
            assert!(Zero::is_zero(&(BigInt::from(n as i64 + 1) % l)));
        }
    }

    #[test]
    fn corrected_coefficients_are_integral() {
        for n in 2..=8usize {
            let a = sl2_cartan_coefficients(n).unwrap();
            let expected: Vec<BigRational> = (1..=n).map(|i| q((i * (n - i)) as i64, 1)).collect();
            assert_eq!(a, expected);
        }
    }

    #[test]
    fn sl2_n2() {
        let t = complete_sl2(2).unwrap();
        assert!(t.brackets_hold());
        let h = t.x.bracket(&t.y);
        let diag: Vec<BigRational> = (0..3).map(|i| h.get(i, i).clone()).collect();
        assert_eq!(diag, vec![q(1, 1), q(-1, 1), q(0, 1)]);
        let r = t.reduce_mod(7).unwrap();
        assert!(r.brackets_hold());
    }

    #[test]
    fn literal_weights_do_not_give_a_triple() {
        for n in 2..=6 {
            let a = solve_cartan_system(n).unwrap();
            let t = triple_from_coefficients(&(), n, &a).unwrap();
            assert!(t.h.bracket(&t.x) == t.x.scale(&q(2, 1)));
            assert!(t.x.bracket(&t.y) != t.h, "n = {n}");
        }
    }

    #[test]
    fn brackets_over_q_and_mod_p() {
        for n in 2..=8usize {
            let t = complete_sl2(n).unwrap();
            assert!(t.brackets_hold());
            for p in [11u64, 13, 17, 19, 23, 29, 31] {
                if p > n as u64 + 1 {
                    assert!(t.reduce_mod(p).unwrap().brackets_hold());
                }
            }
        }
    }

    #[test]
    fn centralizers() {
        for n in 2..=6 {
            let sub: Matrix<BigRational> = subregular_x(&(), n).unwrap();
            let reg: Matrix<BigRational> = regular_nilpotent(&(), n);
            assert_eq!(centralizer_dim(&sub), n + 2);
            assert_eq!(centralizer_dim(&reg), n);
            let zero: Matrix<BigRational> = Matrix::zeros(&(), n + 1, n + 1);
            assert_eq!(centralizer_dim(&zero), (n + 1) * (n + 1) - 1);
        }
    }

    fn scalar_matrix(cfg: ScalarConfig, rows: &[&[PadicScalar]]) -> Matrix<PadicScalar> {
        Matrix::from_rows(&cfg, rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    #[test]
    fn fiberwise_labels_of_small_matrices() {
        for uniformizer in [Uniformizer::Abstract, Uniformizer::Prime] {
            let cfg = ScalarConfig::with_uniformizer(7, 8, uniformizer).unwrap();
            let z = PadicScalar::zero(cfg);
            let o = PadicScalar::one(cfg);
            let pi = PadicScalar::pi(cfg);
            let m1 = scalar_matrix(
                cfg,
                &[
                    &[z.clone(), o.clone(), z.clone()],
                    &[z.clone(), z.clone(), pi.clone()],
                    &[z.clone(), z.clone(), z.clone()],
                ],
            );
            let r = fiberwise_orbit_check(&m1).unwrap();
            assert_eq!((r.generic.orbit, r.generic.kind), (OrbitLabel::Regular, JordanKind::Nilpotent));
            assert_eq!((r.special.orbit, r.special.kind), (OrbitLabel::Subregular, JordanKind::Nilpotent));

            let m2 = scalar_matrix(cfg, &[&[pi.clone(), o.clone()], &[z.clone(), pi.neg()]]);
            let r = fiberwise_orbit_check(&m2).unwrap();
            assert_eq!((r.generic.orbit, r.generic.kind), (OrbitLabel::Regular, JordanKind::RegularSemisimple));
            assert_eq!((r.special.orbit, r.special.kind), (OrbitLabel::Regular, JordanKind::Nilpotent));

            let m3 = scalar_matrix(cfg, &[&[pi.clone(), z.clone()], &[z.clone(), pi.neg()]]);
            let r = fiberwise_orbit_check(&m3).unwrap();
            assert_eq!(r.generic.to_string(), "regular semisimple");
            assert_eq!(r.special.to_string(), "subregular nilpotent");
        }
    }

    #[test]
    fn invariants_examples() {
        let x: Matrix<BigRational> = subregular_x(&(), 3).unwrap();
        assert!(adjoint_invariants(&x).unwrap().iter().all(Zero::is_zero));
        let s = q(5, 2);
        let d = Matrix::from_rows(&(), vec![vec![s.clone(), q(0, 1)], vec![q(0, 1), -s.clone()]]).unwrap();
        assert_eq!(adjoint_invariants(&d).unwrap(), vec![-(&s * &s)]);
        let d3 = crate::matrix::int_matrix(&[&[1, 0, 0], &[0, 2, 0], &[0, 0, -3]]);
        assert_eq!(adjoint_invariants(&d3).unwrap(), vec![-7, -6]);
        let bad = crate::matrix::int_matrix(&[&[1, 0], &[0, 0]]);
        assert_eq!(adjoint_invariants(&bad), Err(Error::NonzeroTrace));
    }

    #[test]
    fn springer_examples() {
        let a2 = springer_fiber_data(SingularityClass::a(2).unwrap());
        assert_eq!((a2.components, a2.h2_dim), (2, 2));
        let e8 = springer_fiber_data("E8".parse().unwrap());
        assert_eq!((e8.components, e8.h2_dim), (8, 8));
        assert_eq!(e8.dual_graph, dynkin_data("E8".parse().unwrap()));
    }
}
