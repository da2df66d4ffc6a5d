//! Miniversal deformations `F = f + Σ t_i g_i`, parameter fitting and
//! weighted-homogeneity data.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_rational::BigRational;
use num_traits::Zero;

use crate::classify::{is_very_good, normal_form, Family, SingularityClass};
use crate::error::{Error, Result};
use crate::fp::{is_prime, Fp};
use crate::matrix::Matrix;
use crate::poly::{xyz, Monomial, MultiPoly};
use crate::quotient::{stabilized_quotient, tjurina_ideal, TruncatedQuotient, DEFAULT_TRUNCATION_CAP};
use crate::ring::{rational, Ring};
use crate::scalar::{PadicScalar, ScalarConfig, Valuation};

/// Names `t1..tr`.
pub fn parameter_names(r: usize) -> Vec<String> {
    (1..=r).map(|i| format!("t{i}")).collect()
}

#[derive(Clone, Debug)]
pub struct MiniversalFamily {
    class: SingularityClass,
    cfg: ScalarConfig,
    base: MultiPoly<Fp>,
    basis: Vec<MultiPoly<Fp>>,
    quotient: TruncatedQuotient,
    family: MultiPoly<PadicScalar>,
}

fn tjurina_quotient(f: &MultiPoly<Fp>) -> Result<TruncatedQuotient> {
    stabilized_quotient(&tjurina_ideal(f)?, DEFAULT_TRUNCATION_CAP)?
        .ok_or_else(|| Error::InvalidArgument("Tjurina algebra did not stabilize".into()))
}

impl MiniversalFamily {
    pub fn class(&self) -> SingularityClass {
        self.class
    }

    pub fn config(&self) -> ScalarConfig {
        self.cfg
    }

    /// The normal form `f` over `F_p`.
    pub fn base(&self) -> &MultiPoly<Fp> {
        &self.base
    }

    /// `g_1, …, g_r`.
    pub fn basis(&self) -> &[MultiPoly<Fp>] {
        &self.basis
    }

    /// Staircase monomials of the Tjurina algebra of `f`.
    pub fn staircase(&self) -> Vec<Monomial> {
        self.quotient.basis()
    }

    /// `F` in the variables `x, y, z, t1, …, tr`.
    pub fn family(&self) -> &MultiPoly<PadicScalar> {
        &self.family
    }

    pub fn parameter_count(&self) -> usize {
        self.basis.len()
    }

    /// `F` with `t_i ↦ values[i]`, as a polynomial in `x, y, z`.
    pub fn specialize(&self, values: &[PadicScalar]) -> Result<MultiPoly<PadicScalar>> {
        if values.len() != self.basis.len() {
            return Err(Error::InvalidArgument(format!(
                "expected {} parameter values, got {}",
                self.basis.len(),
                values.len()
            )));
        }
        let mut out = self.base.lift(self.cfg);
        for (g, t) in self.basis.iter().zip(values) {
            if t.config() != self.cfg {
                return Err(Error::ConfigMismatch("parameter value".into()));
            }
            out = out.add(&g.lift(self.cfg).scale(t))?;
        }
        Ok(out)
    }
}

/// The miniversal family of `class` with the staircase basis, `g_1 = 1`.
pub fn miniversal(class: SingularityClass, cfg: ScalarConfig) -> Result<MiniversalFamily> {
    let p = cfg.prime();
    if !is_very_good(class, p) {
        return Err(Error::PrimeNotVeryGood { class, p });
    }
    let f = normal_form(class, p);
    let q = tjurina_quotient(&f)?;
    let basis = q.basis().into_iter().map(|m| MultiPoly::monomial(xyz(), m, Fp::new(1, p))).collect();
    with_basis_inner(class, cfg, f, q, basis)
}

/// A family `f + Σ t_i g_i` with a caller-chosen basis of the Tjurina algebra.
pub fn with_basis(class: SingularityClass, cfg: ScalarConfig, basis: Vec<MultiPoly<Fp>>) -> Result<MiniversalFamily> {
    let p = cfg.prime();
    if !is_very_good(class, p) {
        return Err(Error::PrimeNotVeryGood { class, p });
    }
    let f = normal_form(class, p);
    let q = tjurina_quotient(&f)?;
    let basis: Vec<MultiPoly<Fp>> = basis.iter().map(|g| g.embed(&xyz())).collect::<Result<_>>()?;
    let fam = with_basis_inner(class, cfg, f, q, basis)?;
    if fam.basis.len() != fam.quotient.dimension() || kodaira_spencer_matrix(&fam).rank() != fam.basis.len() {
        return Err(Error::InvalidArgument("the g_i do not form a basis of the Tjurina algebra".into()));
    }
    Ok(fam)
}

fn with_basis_inner(
    class: SingularityClass,
    cfg: ScalarConfig,
    f: MultiPoly<Fp>,
    quotient: TruncatedQuotient,
    basis: Vec<MultiPoly<Fp>>,
) -> Result<MiniversalFamily> {
    let r = basis.len();
    let mut vars = xyz();
    vars.extend(parameter_names(r));
    let mut family = f.lift(cfg).embed(&vars)?;
    for (i, g) in basis.iter().enumerate() {
        let t = MultiPoly::var(vars.clone(), cfg, &format!("t{}", i + 1))?;
        family = family.add(&g.lift(cfg).embed(&vars)?.mul(&t)?)?;
    }
    Ok(MiniversalFamily { class, cfg, base: f, basis, quotient, family })
}

/// Column `i` holds the coordinates of `ḡ_i` in the staircase basis.
pub fn kodaira_spencer_matrix(fam: &MiniversalFamily) -> Matrix<Fp> {
    let p = fam.cfg.prime();
    let cols: Vec<Vec<Fp>> = fam.basis.iter().map(|g| fam.quotient.coordinates(g)).collect();
    let rows = fam.quotient.dimension();
    Matrix::from_fn(&p, rows, cols.len(), |i, j| cols[j][i])
}

/// One step of the normalization that brings a family to adapted shape.
#[derive(Clone, Debug, PartialEq)]
pub enum CoordinateChange {
    /// `var ↦ image`.
    Substitute { var: String, image: MultiPoly<PadicScalar> },
    /// The whole equation is multiplied by a unit.
    Multiply(PadicScalar),
}

impl fmt::Display for CoordinateChange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoordinateChange::Substitute { var, image } => write!(f, "{var} -> {image}"),
            CoordinateChange::Multiply(u) => write!(f, "F -> {u}*F"),
        }
    }
}

/// `x² + z² + h(y)` with `h` monic of degree `n + 1` and no `y^n` term,
/// plus the coordinate changes that produced it.
#[derive(Clone, Debug)]
pub struct AnShape {
    /// Coefficients of `h`, constant term first.
    pub y_poly: Vec<PadicScalar>,
    pub changes: Vec<CoordinateChange>,
}

/// Reasons the type-A normalization can stop.
#[derive(Clone, Debug)]
pub(crate) enum ShapeFailure {
    Shape(String),
    Prime(u64),
}

fn pad_to_xyz(f: &MultiPoly<PadicScalar>) -> core::result::Result<MultiPoly<PadicScalar>, ShapeFailure> {
    f.embed(&xyz()).map_err(|e| ShapeFailure::Shape(e.to_string()))
}

/// Writes `F = A v² + B v + C` and replaces it by `A v² + C − B²/(4A)`.
fn complete_square(
    f: &MultiPoly<PadicScalar>,
    var: &str,
    changes: &mut Vec<CoordinateChange>,
) -> core::result::Result<(MultiPoly<PadicScalar>, PadicScalar), ShapeFailure> {
    let cfg = *f.ctx();
    let i = f.var_index(var).map_err(|e| ShapeFailure::Shape(e.to_string()))?;
    if f.degree_in(i).unwrap_or(0) != 2 {
        return Err(ShapeFailure::Shape(format!("{var} does not occur exactly quadratically")));
    }
    let a_poly = f.coefficient_of(var, 2).map_err(|e| ShapeFailure::Shape(e.to_string()))?;
    let a = a_poly.constant_term();
    if a_poly.num_terms() != 1 || !a.is_unit() {
        return Err(ShapeFailure::Shape(format!("coefficient of {var}^2 is not a unit constant")));
    }
    let b = f.coefficient_of(var, 1).expect("variable exists");
    let c = f.coefficient_of(var, 0).expect("variable exists");
    let v2 = MultiPoly::monomial(xyz(), unit_vec(i, 2), a.clone());
    if b.is_zero() {
        return Ok((v2.add(&c).expect("same ring"), a));
    }
    let two_a_inv = a.mul(&PadicScalar::from_int(cfg, 2)).inverse_unit().ok_or(ShapeFailure::Prime(cfg.prime()))?;
    let shift = b.scale(&two_a_inv.neg());
    let v = MultiPoly::var(xyz(), cfg, var).expect("variable exists");
    changes.push(CoordinateChange::Substitute { var: var.to_string(), image: v.add(&shift).expect("same ring") });
    let four_a_inv = two_a_inv.mul(&PadicScalar::from_int(cfg, 2).inverse_unit().ok_or(ShapeFailure::Prime(2))?);
    let rest = c.sub(&b.mul(&b).expect("same ring").scale(&four_a_inv)).expect("same ring");
    Ok((v2.add(&rest).expect("same ring"), a))
}

fn unit_vec(i: usize, k: u32) -> Monomial {
    let mut e = vec![0; 3];
    e[i] = k;
    e
}

/// Taylor shift `h(y) ↦ h(y + s)`.
pub(crate) fn taylor_shift(h: &[PadicScalar], s: &PadicScalar) -> Vec<PadicScalar> {
    let mut out = h.to_vec();
    let d = out.len();
    for k in 0..d {
        for j in (k..d - 1).rev() {
            let t = out[j + 1].mul(s);
            out[j] = out[j].add(&t);
        }
    }
    out
}

/// Completes squares in `x` and `z`, makes the `y`-part monic of degree
/// `n + 1` and removes its `y^n` term. With `scale_squares`, `x` and `z` are
/// also rescaled so their squares have coefficient 1.
pub(crate) fn normalize_an(
    f: &MultiPoly<PadicScalar>,
    n: u32,
    scale_squares: bool,
) -> core::result::Result<AnShape, ShapeFailure> {
    let cfg = *f.ctx();
    let p = cfg.prime();
    if p == 2 || (n as u64 + 1).is_multiple_of(p) {
        return Err(ShapeFailure::Prime(p));
    }
    let mut changes = Vec::new();
    let g = pad_to_xyz(f)?;
    let (g, _) = complete_square(&g, "x", &mut changes)?;
    let (g, _) = complete_square(&g, "z", &mut changes)?;
    let ax = g.coefficient(&[2, 0, 0]);
    let az = g.coefficient(&[0, 0, 2]);
    let h_poly = g.coefficient_of("x", 0).and_then(|h| h.coefficient_of("z", 0)).expect("xyz variables");
    let dy = h_poly.degree().unwrap_or(0) as usize;
    if dy != n as usize + 1 {
        return Err(ShapeFailure::Shape(format!("y-part has degree {dy}, expected {}", n + 1)));
    }
    let mut h: Vec<PadicScalar> = (0..=dy as u32).map(|k| h_poly.coefficient(&[0, k, 0])).collect();
    let lead = h[dy].clone();
    let Some(lead_inv) = lead.inverse_unit() else {
        return Err(ShapeFailure::Shape(format!(
            "leading coefficient of the y-part has valuation {}",
            lead.valuation()
        )));
    };
    if !lead.is_one() {
        changes.push(CoordinateChange::Multiply(lead_inv.clone()));
        h = h.iter().map(|c| c.mul(&lead_inv)).collect();
        h[dy] = PadicScalar::one(cfg);
    }
    let c_n = h[dy - 1].clone();
    if !c_n.is_zero() {
        let inv = PadicScalar::from_int(cfg, n as i64 + 1).inverse_unit().ok_or(ShapeFailure::Prime(p))?;
        let s = c_n.mul(&inv).neg();
        let y = MultiPoly::var(xyz(), cfg, "y").expect("y");
        changes.push(CoordinateChange::Substitute {
            var: "y".into(),
            image: y.add(&MultiPoly::constant(xyz(), s.clone())).expect("same ring"),
        });
        h = taylor_shift(&h, &s);
        h[dy - 1] = PadicScalar::zero(cfg);
    }
    if scale_squares {
        for (name, a) in [("x", ax), ("z", az)] {
            let a = a.mul(&lead_inv);
            if a.is_one() {
                continue;
            }
            let Some(root) = a.sqrt_unit() else {
                return Err(ShapeFailure::Shape(format!("coefficient of {name}^2 is not a square modulo pi")));
            };
            let inv = root.inverse_unit().expect("square root of a unit");
            changes.push(CoordinateChange::Substitute {
                var: name.into(),
                image: MultiPoly::var(xyz(), cfg, name).expect("xyz").scale(&inv),
            });
        }
    }
    Ok(AnShape { y_poly: h, changes })
}

/// Parameter values `t_1..t_r` of a family together with the coordinate
/// changes used to reach adapted shape.
#[derive(Clone, Debug)]
pub struct FittedParameters {
    pub class: SingularityClass,
    pub values: Vec<PadicScalar>,
    pub changes: Vec<CoordinateChange>,
}

/// Recovers `t_1..t_r` so that the input is the miniversal family pulled
/// back along `t_i ↦ values[i]`.
pub fn fit_parameters(f: &MultiPoly<PadicScalar>, class: SingularityClass) -> Result<FittedParameters> {
    let cfg = *f.ctx();
    let p = cfg.prime();
    if !is_very_good(class, p) {
        return Err(Error::PrimeNotVeryGood { class, p });
    }
    let (values, changes) = match class.family() {
        Family::A => {
            let shape = normalize_an(f, class.rank(), true).map_err(|e| match e {
                ShapeFailure::Shape(s) => Error::UnfittableShape(s),
                ShapeFailure::Prime(_) => Error::PrimeNotVeryGood { class, p },
            })?;
            let n = class.rank() as usize;
            (shape.y_poly[..n].to_vec(), shape.changes)
        }
        Family::D | Family::E => (fit_adapted(f, class)?, Vec::new()),
    };
    for (i, t) in values.iter().enumerate() {
        if t.is_unit() {
            return Err(Error::NotADeformationOfThisClass { class, reason: format!("t{} = {t} is a unit", i + 1) });
        }
    }
    Ok(FittedParameters { class, values, changes })
}

/// Reads `a_i` off an input already of the form `f + Σ a_i g_i`.
fn fit_adapted(f: &MultiPoly<PadicScalar>, class: SingularityClass) -> Result<Vec<PadicScalar>> {
    let cfg = *f.ctx();
    let fam = miniversal(class, cfg)?;
    let g = f.embed(&xyz())?;
    let diff = g.sub(&fam.base.lift(cfg))?;
    let staircase = fam.staircase();
    let index: BTreeMap<&Monomial, usize> = staircase.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut values = vec![PadicScalar::zero(cfg); staircase.len()];
    for (e, c) in diff.terms() {
        match index.get(e) {
            Some(&i) => values[i] = c.clone(),
            None => {
                return Err(Error::UnfittableShape(format!(
                    "term {} is neither in the normal form nor in the staircase basis",
                    MultiPoly::monomial(xyz(), e.clone(), c.clone())
                )))
            }
        }
    }
    Ok(values)
}

/// Weights making `f` weighted-homogeneous of degree equal to the Coxeter
/// number, and the induced weights of the parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightData {
    pub class: SingularityClass,
    /// Weights of `x, y, z`.
    pub variable_weights: [BigRational; 3],
    pub degree: BigRational,
    /// `(t_i, weight)` sorted by weight, then by name.
    pub parameter_weights: Vec<(String, BigRational)>,
    /// Degrees of the fundamental invariants, ascending.
    pub invariant_degrees: Vec<u32>,
}

fn weighted_degree(e: &[u32], w: &[BigRational; 3]) -> BigRational {
    e.iter().zip(w).fold(<BigRational as Zero>::zero(), |acc, (&k, wi)| acc + wi * BigRational::from_integer(k.into()))
}

/// True when every term of `f` has weighted degree `degree`.
pub fn is_weighted_homogeneous<R: Ring>(f: &MultiPoly<R>, weights: &[BigRational], degree: &BigRational) -> bool {
    f.terms().all(|(e, _)| {
        let d: BigRational = e
            .iter()
            .zip(weights)
            .fold(<BigRational as Zero>::zero(), |acc, (&k, w)| acc + w * BigRational::from_integer(k.into()));
        &d == degree
    })
}

fn first_very_good_prime(class: SingularityClass) -> u64 {
    (7u64..)
        .find(|&p| is_prime(p) && is_very_good(class, p) && p > class.rank() as u64 + 1)
        .expect("primes are infinite")
}

pub fn weight_data(class: SingularityClass) -> Result<WeightData> {
    let h = class.coxeter_number() as i64;
    let n = class.rank() as i64;
    let variable_weights = match (class.family(), n) {
        (Family::A, _) => [rational(n + 1, 2), rational(1, 1), rational(n + 1, 2)],
        (Family::D, _) => [rational(n - 2, 1), rational(2, 1), rational(n - 1, 1)],
        (Family::E, 6) => [rational(4, 1), rational(3, 1), rational(6, 1)],
        (Family::E, 7) => [rational(6, 1), rational(4, 1), rational(9, 1)],
        (Family::E, _) => [rational(10, 1), rational(6, 1), rational(15, 1)],
    };
    let degree = rational(h, 1);
    let fam = miniversal(class, ScalarConfig::new(first_very_good_prime(class), 4)?)?;
    let mut parameter_weights: Vec<(String, BigRational)> = fam
        .staircase()
        .iter()
        .enumerate()
        .map(|(i, m)| (format!("t{}", i + 1), &degree - weighted_degree(m, &variable_weights)))
        .collect();
    parameter_weights.sort_by(|a, b| a.1.cmp(&b.1).then_with(|| a.0.cmp(&b.0)));
    let invariant_degrees = parameter_weights
        .iter()
        .map(|(_, w)| {
            u32::try_from(w.to_integer()).map_err(|_| Error::InvalidArgument("negative parameter weight".into()))
        })
        .collect::<Result<_>>()?;
    Ok(WeightData { class, variable_weights, degree, parameter_weights, invariant_degrees })
}

impl WeightData {
    /// Weights of `x, y, z, t1, …, tr`.
    pub fn family_weights(&self) -> Vec<BigRational> {
        let mut by_name: Vec<(String, BigRational)> = self.parameter_weights.clone();
        by_name.sort_by_key(|(name, _)| name[1..].parse::<usize>().unwrap_or(0));
        self.variable_weights.iter().cloned().chain(by_name.into_iter().map(|(_, w)| w)).collect()
    }
}

/// Valuation of every fitted parameter, `None` for zero.
pub fn parameter_valuations(fit: &FittedParameters) -> Vec<Option<u32>> {
    fit.values
        .iter()
        .map(|t| match t.valuation() {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        })
        .collect()
}
