//! Monodromy of `x² + z² + f(y) = 0` over the π-adic scalars.
//!
//! The Newton polygon of `f` splits its roots by valuation. A segment of
//! slope `−b/r` (lowest terms) and length `m·r` whose residual polynomial is
//! separable contributes `m` orbits of size `r` under tame inertia, and each
//! rational root contributes a fixed point. The resulting cycle type is the
//! conjugacy class of the monodromy operator in `S_{n+1}`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_integer::Integer;

use crate::classify::{classify, Classification, Family, SingularityClass};
use crate::deformation::{normalize_an, CoordinateChange, ShapeFailure};
use crate::error::{Error, Result};
use crate::fp::{Fp, FpPoly};
use crate::poly::{xyz, MultiPoly};
use crate::roots::{element_from_cycle_type, WeylElement};
use crate::scalar::{PadicScalar, ScalarConfig, Valuation};

/// A univariate polynomial in `y` over the π-adic scalars.
#[derive(Clone, Debug, PartialEq)]
pub struct ScalarPoly {
    cfg: ScalarConfig,
    /// Constant term first, no trailing zeros.
    coeffs: Vec<PadicScalar>,
}

impl ScalarPoly {
    pub fn new(cfg: ScalarConfig, coeffs: Vec<PadicScalar>) -> Result<Self> {
        if coeffs.iter().any(|c| c.config() != cfg) {
            return Err(Error::ConfigMismatch("coefficient of a univariate polynomial".into()));
        }
        let mut coeffs = coeffs;
        while coeffs.last().is_some_and(PadicScalar::is_zero) {
            coeffs.pop();
        }
        Ok(ScalarPoly { cfg, coeffs })
    }

    pub fn config(&self) -> ScalarConfig {
        self.cfg
    }

    pub fn coeffs(&self) -> &[PadicScalar] {
        &self.coeffs
    }

    pub fn coefficient(&self, i: usize) -> PadicScalar {
        self.coeffs.get(i).cloned().unwrap_or_else(|| PadicScalar::zero(self.cfg))
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.coeffs.is_empty() || rhs.coeffs.is_empty() {
            return ScalarPoly { cfg: self.cfg, coeffs: Vec::new() };
        }
        let mut out = vec![PadicScalar::zero(self.cfg); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        ScalarPoly::new(self.cfg, out).expect("same configuration")
    }

    /// Reads a polynomial that involves only the variable `y`.
    pub fn from_multipoly(f: &MultiPoly<PadicScalar>, var: &str) -> Result<Self> {
        let i = f.var_index(var)?;
        let mut coeffs = Vec::new();
        for (e, c) in f.terms() {
            if e.iter().enumerate().any(|(j, &k)| j != i && k > 0) {
                return Err(Error::UnsupportedShape(format!("term involves variables other than {var}")));
            }
            let k = e[i] as usize;
            if coeffs.len() <= k {
                coeffs.resize(k + 1, PadicScalar::zero(*f.ctx()));
            }
            coeffs[k] = c.clone();
        }
        ScalarPoly::new(*f.ctx(), coeffs)
    }

    /// `f(y)` as a polynomial in `x, y, z`.
    pub fn to_multipoly(&self) -> MultiPoly<PadicScalar> {
        MultiPoly::from_terms(
            xyz(),
            self.cfg,
            self.coeffs.iter().enumerate().map(|(k, c)| (vec![0, k as u32, 0], c.clone())),
        )
        .expect("well-formed terms")
    }
}

impl fmt::Display for ScalarPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_multipoly())
    }
}

/// Brings `F` to `x² + z² + f(y)` and returns the class of its special fiber
/// together with `f` and the coordinate changes used.
pub fn reduce_to_an_shape(
    big_f: &MultiPoly<PadicScalar>,
) -> Result<(SingularityClass, ScalarPoly, Vec<CoordinateChange>)> {
    let cfg = *big_f.ctx();
    let class = match classify(&big_f.reduce_mod_pi())? {
        Classification::Rdp(c) => c,
        Classification::NotRdp(reason) => {
            return Err(Error::UnsupportedShape(format!("special fiber is not a rational double point: {reason}")))
        }
    };
    if class.family() != Family::A {
        return Err(Error::NotImplementedForClass(class));
    }
    let shape = normalize_an(big_f, class.rank(), false).map_err(|e| match e {
        ShapeFailure::Shape(s) => Error::UnsupportedShape(s),
        ShapeFailure::Prime(p) => Error::PrimeNotVeryGood { class, p },
    })?;
    Ok((class, ScalarPoly::new(cfg, shape.y_poly)?, shape.changes))
}

/// One edge of the lower convex hull.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Segment {
    /// Left endpoint `(i, v(c_i))`.
    pub start: (u32, u32),
    pub end: (u32, u32),
    /// Slope `−b/r` in lowest terms.
    pub b: u32,
    pub r: u32,
    /// Horizontal length `m·r`.
    pub length: u32,
    /// Residual polynomial over `F_p` in the auxiliary variable, degree `m`.
    pub residual: FpPoly,
    pub separable: bool,
}

impl Segment {
    pub fn multiplicity(&self) -> u32 {
        self.length / self.r
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewtonPolygon {
    /// Multiplicity of the root `y = 0`, split off before the hull is taken.
    pub zero_roots: u32,
    /// `(i, v(c_i))` for the nonzero coefficients of `f / y^zero_roots`.
    pub points: Vec<(u32, u32)>,
    pub segments: Vec<Segment>,
}

fn finite_valuation(c: &PadicScalar) -> Option<u32> {
    match c.valuation() {
        Valuation::Finite(v) => Some(v),
        Valuation::Infinite => None,
    }
}

/// Lower convex hull of `(i, v(c_i))` after dividing out `y^k`.
pub fn newton_polygon(f: &ScalarPoly) -> Result<NewtonPolygon> {
    let zero_roots = f
        .coeffs
        .iter()
        .position(|c| !c.is_zero())
        .ok_or_else(|| Error::InvalidArgument("the zero polynomial has no Newton polygon".into()))?;
    let shifted = &f.coeffs[zero_roots..];
    let points: Vec<(u32, u32)> =
        shifted.iter().enumerate().filter_map(|(i, c)| finite_valuation(c).map(|v| (i as u32, v))).collect();
    // Monotone chain, lower hull only.
    let mut hull: Vec<(u32, u32)> = Vec::new();
    for &pt in &points {
        while hull.len() >= 2 {
            let (a, b) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            let cross = (b.0 as i64 - a.0 as i64) * (pt.1 as i64 - a.1 as i64)
                - (b.1 as i64 - a.1 as i64) * (pt.0 as i64 - a.0 as i64);
            if cross <= 0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(pt);
    }
    let p = f.cfg.prime();
    let segments = hull
        .windows(2)
        .map(|w| {
            let (start, end) = (w[0], w[1]);
            let length = end.0 - start.0;
            let drop = start.1 as i64 - end.1 as i64;
            let (b, r) = if drop <= 0 {
                (0, 1)
            } else {
                let g = (drop as u32).gcd(&length);
                (drop as u32 / g, length / g)
            };
            let m = length / r;
            let residual_coeffs: Vec<u64> = (0..=m)
                .map(|j| {
                    let i = (start.0 + j * r) as usize;
                    let expected = start.1 as i64 - (j * b) as i64;
                    let c = &shifted[i];
                    match finite_valuation(c) {
                        Some(v) if v as i64 == expected => c.digits()[0],
                        _ => 0,
                    }
                })
                .collect();
            let residual = FpPoly::new(p, residual_coeffs);
            let separable = residual.is_separable();
            Segment { start, end, b, r, length, residual, separable }
        })
        .collect();
    Ok(NewtonPolygon { zero_roots: zero_roots as u32, points, segments })
}

/// Cycle lengths contributed by one segment.
pub fn segment_cycles(segment: &Segment) -> Result<Vec<usize>> {
    let m = segment.multiplicity() as usize;
    if m == 1 {
        return Ok(vec![segment.r as usize]);
    }
    if segment.separable {
        Ok(vec![segment.r as usize; m])
    } else {
        Err(Error::AmbiguousResidual { b: segment.b, r: segment.r })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct MonodromyReport {
    pub class: SingularityClass,
    pub polygon: NewtonPolygon,
    /// Descending.
    pub cycle_type: Vec<usize>,
    pub base_change_degree: u64,
    pub matrix: WeylElement,
    pub order: u64,
    pub coxeter: bool,
    pub good_reduction: bool,
    pub invariant_dim: usize,
}

/// Monodromy class of `x² + z² + f(y)`, where `f` has degree `n + 1` and a
/// unit leading coefficient.
pub fn monodromy_report(f: &ScalarPoly, class: SingularityClass) -> Result<MonodromyReport> {
    if class.family() != Family::A {
        return Err(Error::NotImplementedForClass(class));
    }
    let n = class.rank() as usize;
    let p = f.cfg.prime();
    if p <= n as u64 + 1 {
        return Err(Error::WildRamificationUnsupported { p, bound: n as u64 + 1 });
    }
    if f.degree() != Some(n + 1) {
        return Err(Error::UnsupportedShape(format!("expected degree {}, got {:?}", n + 1, f.degree())));
    }
    if !f.coeffs[n + 1].is_unit() {
        return Err(Error::UnsupportedShape("leading coefficient is not a unit".into()));
    }
    let polygon = newton_polygon(f)?;
    if polygon.zero_roots >= 2 {
        return Err(Error::SingularGenericFiber(format!("y = 0 is a root of multiplicity {}", polygon.zero_roots)));
    }
    let mut cycle_type = vec![1usize; polygon.zero_roots as usize];
    for seg in &polygon.segments {
        cycle_type.extend(segment_cycles(seg)?);
    }
    cycle_type.sort_unstable_by(|a, b| b.cmp(a));
    let base_change_degree = cycle_type.iter().fold(1u64, |acc, &r| acc.lcm(&(r as u64)));
    let matrix = element_from_cycle_type(n, &cycle_type)?;
    let order = matrix.order();
    let invariant_dim = matrix.fixed_space_dim();
    Ok(MonodromyReport {
        class,
        coxeter: cycle_type == [n + 1],
        good_reduction: cycle_type.iter().all(|&r| r == 1),
        polygon,
        cycle_type,
        base_change_degree,
        matrix,
        order,
        invariant_dim,
    })
}

/// Full pipeline from a three-variable equation.
pub fn monodromy_of_family(big_f: &MultiPoly<PadicScalar>) -> Result<MonodromyReport> {
    let cfg = *big_f.ctx();
    if let Classification::Rdp(class) = classify(&big_f.reduce_mod_pi())? {
        if class.family() != Family::A {
            return Err(Error::NotImplementedForClass(class));
        }
        let bound = class.rank() as u64 + 1;
        if cfg.prime() <= bound {
            return Err(Error::WildRamificationUnsupported { p: cfg.prime(), bound });
        }
    }
    let (class, f, _) = reduce_to_an_shape(big_f)?;
    monodromy_report(&f, class)
}

/// `v(c_0) = 1`, all middle coefficients divisible by π, unit leading term.
pub fn is_transversal_eisenstein(f: &ScalarPoly) -> bool {
    let Some(d) = f.degree() else { return false };
    d >= 1
        && f.coeffs[d].is_unit()
        && f.coeffs[0].valuation() == Valuation::Finite(1)
        && f.coeffs[1..d].iter().all(|c| !c.is_unit())
}

/// `Π (y^{r_i} − v_i π^{b_i})`. When `units` is `None`, the members of each
/// `(r, b)` group get the units `1, 2, 3, …`.
pub fn realize_cycle_type(cfg: ScalarConfig, parts: &[usize], b: &[u32], units: Option<&[i64]>) -> Result<ScalarPoly> {
    if parts.is_empty() || parts.len() != b.len() || units.is_some_and(|u| u.len() != parts.len()) {
        return Err(Error::InvalidArgument("parts, valuations and units must have equal nonzero length".into()));
    }
    let p = cfg.prime() as i64;
    let mut groups: BTreeMap<(usize, u32), Vec<i64>> = BTreeMap::new();
    let mut out = ScalarPoly::new(cfg, vec![PadicScalar::one(cfg)])?;
    for (k, (&r, &bi)) in parts.iter().zip(b).enumerate() {
        if r == 0 || bi == 0 {
            return Err(Error::InvalidArgument("parts and valuations must be positive".into()));
        }
        if (r as u32).gcd(&bi) != 1 {
            return Err(Error::CoprimalityViolated { r: r as u32, b: bi });
        }
        let taken = groups.entry((r, bi)).or_default();
        let v = match units {
            Some(u) => u[k],
            None => taken.len() as i64 + 1,
        };
        let residue = v.rem_euclid(p);
        if residue == 0 {
            return Err(Error::InvalidArgument(format!("{v} is not a unit")));
        }
        if taken.contains(&residue) {
            return Err(Error::InvalidArgument(format!(
                "repeated unit {v} for (r, b) = ({r}, {bi}) makes the residual inseparable"
            )));
        }
        taken.push(residue);
        let mut factor = vec![PadicScalar::zero(cfg); r + 1];
        factor[r] = PadicScalar::one(cfg);
        factor[0] = PadicScalar::unit_pi_pow(cfg, v, bi).neg();
        out = out.mul(&ScalarPoly::new(cfg, factor)?);
    }
    Ok(out)
}

/// Residue of `v_i` used by [`realize_cycle_type`] when no units are given.
pub fn default_units(parts: &[usize], b: &[u32]) -> Vec<i64> {
    let mut seen: BTreeMap<(usize, u32), i64> = BTreeMap::new();
    parts
        .iter()
        .zip(b)
        .map(|(&r, &bi)| {
            let e = seen.entry((r, bi)).or_insert(0);
            *e += 1;
            *e
        })
        .collect()
}

/// Residue-field image of `f`, used to confirm the special fiber.
pub fn special_fiber(f: &ScalarPoly) -> Vec<Fp> {
    f.coeffs.iter().map(PadicScalar::residue).collect()
}
