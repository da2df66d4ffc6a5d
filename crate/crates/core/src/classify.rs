//! Recognition of rational double points over `F_p`.
//!
//! The classifier uses only coordinate-free invariants: multiplicity, the
//! rank of the quadratic part, the Tjurina number, and for corank 2 the
//! factorization pattern of the cubic part restricted to the radical of the
//! quadratic form. The splitting lemma only perturbs the residual function
//! in degree ≥ 4, so that restricted cubic is the residual cubic.

use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_bigint::BigUint;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::fp::{Fp, FpPoly};
use crate::matrix::Matrix;
use crate::poly::{xyz, MultiPoly};
use crate::quotient::{tjurina_number, LocalDimension};
use crate::ring::Ring;
use crate::roots::RootDatum;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A,
    D,
    E,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::A => "A",
            Family::D => "D",
            Family::E => "E",
        })
    }
}

/// An ADE label.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SingularityClass {
    family: Family,
    rank: u32,
}

impl SingularityClass {
    pub fn new(family: Family, rank: u32) -> Result<Self> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::D => rank >= 4,
            Family::E => (6..=8).contains(&rank),
        };
        if !ok {
            return Err(Error::InvalidArgument(alloc::format!("{family}{rank} is not a Dynkin type")));
        }
        Ok(SingularityClass { family, rank })
    }

    pub fn a(n: u32) -> Result<Self> {
        Self::new(Family::A, n)
    }

    pub fn family(self) -> Family {
        self.family
    }

    pub fn rank(self) -> u32 {
        self.rank
    }

    /// Equal to the rank for every rational double point.
    pub fn tjurina(self) -> u32 {
        self.rank
    }

    pub fn coxeter_number(self) -> u32 {
        match (self.family, self.rank) {
            (Family::A, n) => n + 1,
            (Family::D, n) => 2 * n - 2,
            (Family::E, 6) => 12,
            (Family::E, 7) => 18,
            (Family::E, _) => 30,
        }
    }

    /// Every class of rank at most `max_rank`.
    pub fn all_up_to(max_rank: u32) -> Vec<SingularityClass> {
        let mut out = Vec::new();
        for n in 1..=max_rank {
            out.push(SingularityClass { family: Family::A, rank: n });
        }
        for n in 4..=max_rank {
            out.push(SingularityClass { family: Family::D, rank: n });
        }
        for n in 6..=max_rank.min(8) {
            out.push(SingularityClass { family: Family::E, rank: n });
        }
        out
    }
}

impl fmt::Display for SingularityClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family, self.rank)
    }
}

impl FromStr for SingularityClass {
    type Err = Error;

    /// Accepts `A3`, `a3`, `A_3`, `E8`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::InvalidArgument(alloc::format!("cannot parse Dynkin label `{s}`"));
        let mut chars = s.chars();
        let family = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Family::A,
            Some('D') => Family::D,
            Some('E') => Family::E,
            _ => return Err(bad()),
        };
        let rest = chars.as_str().trim_start_matches('_');
        let rank: u32 = rest.parse().map_err(|_| bad())?;
        SingularityClass::new(family, rank)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeStatus {
    pub good: bool,
    pub very_good: bool,
    pub sufficiently_good: bool,
}

pub fn is_good(class: SingularityClass, p: u64) -> bool {
    match (class.family, class.rank) {
        (Family::A, _) => true,
        (Family::D, _) => p != 2,
        (Family::E, 6 | 7) => p != 2 && p != 3,
        (Family::E, _) => p != 2 && p != 3 && p != 5,
    }
}

pub fn is_very_good(class: SingularityClass, p: u64) -> bool {
    is_good(class, p) && (class.family != Family::A || !(class.rank as u64 + 1).is_multiple_of(p))
}

pub fn prime_status(class: SingularityClass, p: u64) -> PrimeStatus {
    let order = RootDatum::new(class).weyl_order().expect("ADE ranks here are at most 8");
    let good = is_good(class, p);
    let very_good = is_very_good(class, p);
    let sufficiently_good = very_good && !(order % BigUint::from(p)).is_zero();
    PrimeStatus { good, very_good, sufficiently_good }
}

/// Why a germ is not a rational double point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NotRdpReason {
    NotOnSurface,
    Smooth,
    /// Order of vanishing other than 2.
    Multiplicity(u32),
    NonIsolated,
    ZeroCubic,
    BeyondRdp(String),
}

impl fmt::Display for NotRdpReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NotRdpReason::NotOnSurface => f.write_str("origin is not on the surface"),
            NotRdpReason::Smooth => f.write_str("smooth point"),
            NotRdpReason::Multiplicity(m) => write!(f, "multiplicity {m}, not a double point"),
            NotRdpReason::NonIsolated => f.write_str("non-isolated singularity"),
            NotRdpReason::ZeroCubic => f.write_str("cubic term of the residual vanishes"),
            NotRdpReason::BeyondRdp(s) => write!(f, "beyond rational double points: {s}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Classification {
    Rdp(SingularityClass),
    NotRdp(NotRdpReason),
}

impl Classification {
    pub fn class(&self) -> Option<SingularityClass> {
        match self {
            Classification::Rdp(c) => Some(*c),
            Classification::NotRdp(_) => None,
        }
    }
}

/// Pads or renames into the ambient variables `x, y, z`; fewer than three
/// variables are padded with the unused canonical names.
fn into_three_space(g: &MultiPoly<Fp>) -> Result<MultiPoly<Fp>> {
    let vars = g.vars();
    if vars.len() > 3 {
        return Err(Error::InvalidArgument("surface germs need at most 3 variables".into()));
    }
    if vars.iter().all(|v| xyz().contains(v)) {
        return g.embed(&xyz());
    }
    let mut ambient: Vec<String> = vars.to_vec();
    for v in xyz() {
        if ambient.len() == 3 {
            break;
        }
        if !ambient.contains(&v) {
            ambient.push(v);
        }
    }
    g.embed(&ambient)
}

/// Symmetric Gram matrix of the quadratic part.
fn quadratic_form(g: &MultiPoly<Fp>) -> Matrix<Fp> {
    let p = *g.ctx();
    let half = Fp::new((p as i64 + 1) / 2, p);
    let mut q = Matrix::zeros(&p, 3, 3);
    for (e, c) in g.homogeneous_part(2).terms() {
        let idx: Vec<usize> = (0..3).flat_map(|i| core::iter::repeat_n(i, e[i] as usize)).collect();
        if idx[0] == idx[1] {
            q.set(idx[0], idx[0], *c);
        } else {
            let v = c.times(&half);
            q.set(idx[0], idx[1], v);
            q.set(idx[1], idx[0], v);
        }
    }
    q
}

/// Coefficients `[a_0, …, a_3]` of the cubic part restricted to the plane
/// spanned by `k1, k2`: `c(u, v) = Σ a_j u^(3−j) v^j`.
fn restricted_cubic(g: &MultiPoly<Fp>, k1: &[Fp], k2: &[Fp]) -> Result<Vec<Fp>> {
    let p = *g.ctx();
    let uv: Vec<String> = ["u", "v"].iter().map(|s| s.to_string()).collect();
    let u = MultiPoly::var(uv.clone(), p, "u")?;
    let v = MultiPoly::var(uv.clone(), p, "v")?;
    let mut map = alloc::collections::BTreeMap::new();
    for (i, name) in xyz().into_iter().enumerate() {
        let img = u.scale(&k1[i]).add(&v.scale(&k2[i]))?;
        map.insert(name, img);
    }
    let c = g.homogeneous_part(3).substitute(&uv, &map)?;
    Ok((0..4).map(|j| c.coefficient(&[3 - j as u32, j as u32])).collect())
}

/// Degree of `gcd(c, ∂c/∂u, ∂c/∂v)` for a nonzero binary form.
fn binary_form_gcd_degree(forms: &[Vec<Fp>]) -> usize {
    let forms: Vec<&Vec<Fp>> = forms.iter().filter(|f| f.iter().any(|c| !c.is_zero())).collect();
    // F(u, v) = Σ f_j u^(d−j) v^j; F = u^e·G with F(1, v) = G(1, v) of degree d − e.
    let mut u_mult = usize::MAX;
    let mut g: Option<FpPoly> = None;
    for f in forms {
        let d = f.len() - 1;
        let p = f[0].prime();
        let dehom = FpPoly::from_fp(f, p);
        let deg = dehom.degree().expect("nonzero form");
        u_mult = u_mult.min(d - deg);
        g = Some(match g {
            None => dehom.monic(),
            Some(acc) => acc.gcd(&dehom),
        });
    }
    u_mult + g.and_then(|g| g.degree()).unwrap_or(0)
}

fn derivatives_of_binary_cubic(c: &[Fp]) -> (Vec<Fp>, Vec<Fp>) {
    let p = c[0].prime();
    let k = |n: i64| Fp::new(n, p);
    // c = a0 u^3 + a1 u^2 v + a2 u v^2 + a3 v^3
    let du = vec![c[0].times(&k(3)), c[1].times(&k(2)), c[2]];
    let dv = vec![c[1], c[2].times(&k(2)), c[3].times(&k(3))];
    (du, dv)
}

/// Classifies the germ of `{g = 0}` at the origin over `F_p`.
pub fn classify(g: &MultiPoly<Fp>) -> Result<Classification> {
    let p = *g.ctx();
    if p == 2 {
        return Err(Error::UnsupportedCharacteristic(2));
    }
    let g = into_three_space(g)?;
    if !g.constant_term().is_zero() {
        return Ok(Classification::NotRdp(NotRdpReason::NotOnSurface));
    }
    match g.order() {
        None => return Ok(Classification::NotRdp(NotRdpReason::NonIsolated)),
        Some(1) => return Ok(Classification::NotRdp(NotRdpReason::Smooth)),
        Some(2) => {}
        Some(m) => return Ok(Classification::NotRdp(NotRdpReason::Multiplicity(m))),
    }
    let tau = match tjurina_number(&g)? {
        LocalDimension::Infinite => return Ok(Classification::NotRdp(NotRdpReason::NonIsolated)),
        LocalDimension::Finite(0) => return Ok(Classification::NotRdp(NotRdpReason::Smooth)),
        LocalDimension::Finite(t) => t as u32,
    };
    let q = quadratic_form(&g);
    let kernel = q.null_space();
    let beyond = |s: String| Ok(Classification::NotRdp(NotRdpReason::BeyondRdp(s)));
    let candidate = match kernel.len() {
        0 if tau == 1 => SingularityClass::a(1)?,
        0 => return beyond(alloc::format!("nondegenerate quadric with tau = {tau}")),
        1 if tau >= 2 => SingularityClass::a(tau)?,
        1 => return beyond(alloc::format!("corank 1 with tau = {tau}")),
        2 => {
            let cubic = restricted_cubic(&g, &kernel[0], &kernel[1])?;
            if cubic.iter().all(Fp::is_zero) {
                return Ok(Classification::NotRdp(NotRdpReason::ZeroCubic));
            }
            let (du, dv) = derivatives_of_binary_cubic(&cubic);
            match binary_form_gcd_degree(&[cubic, du, dv]) {
                0 if tau == 4 => SingularityClass::new(Family::D, 4)?,
                1 if tau >= 5 => SingularityClass::new(Family::D, tau)?,
                d if d >= 2 && (6..=8).contains(&tau) => SingularityClass::new(Family::E, tau)?,
                d => return beyond(alloc::format!("corank 2, cubic gcd degree {d}, tau = {tau}")),
            }
        }
        _ => return Ok(Classification::NotRdp(NotRdpReason::Multiplicity(3))),
    };
    if !is_good(candidate, p) {
        return Err(Error::CharacteristicNotGood { class: candidate, p });
    }
    Ok(Classification::Rdp(candidate))
}

/// The normal form of `class` with coefficients in any ring.
pub fn normal_form_in<R: Ring>(class: SingularityClass, ctx: &R::Ctx) -> MultiPoly<R> {
    let n = class.rank;
    let exps: Vec<[u32; 3]> = match (class.family, n) {
        (Family::A, n) => vec![[0, 0, 2], [2, 0, 0], [0, n + 1, 0]],
        (Family::D, n) => vec![[0, 0, 2], [2, 1, 0], [0, n - 1, 0]],
        (Family::E, 6) => vec![[0, 0, 2], [3, 0, 0], [0, 4, 0]],
        (Family::E, 7) => vec![[0, 0, 2], [3, 0, 0], [1, 3, 0]],
        (Family::E, _) => vec![[0, 0, 2], [3, 0, 0], [0, 5, 0]],
    };
    MultiPoly::from_terms(xyz(), ctx.clone(), exps.into_iter().map(|e| (e.to_vec(), R::one(ctx))))
        .expect("well-formed normal form")
}

/// The normal form of `class` over `F_p`.
pub fn normal_form(class: SingularityClass, p: u64) -> MultiPoly<Fp> {
    normal_form_in(class, &p)
}

/// Adjacency matrix of the dual graph of the minimal resolution.
pub fn dynkin_data(class: SingularityClass) -> Matrix<i64> {
    RootDatum::new(class).dynkin_adjacency()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fp_poly(p: u64, terms: &[(&[u32], i64)]) -> MultiPoly<Fp> {
        MultiPoly::from_terms(xyz(), p, terms.iter().map(|(e, c)| (e.to_vec(), Fp::new(*c, p)))).unwrap()
    }

    fn label(s: &str) -> SingularityClass {
        s.parse().unwrap()
    }

    #[test]
    fn table_examples() {
        let a1 = fp_poly(7, &[(&[0, 0, 2], 1), (&[2, 0, 0], 1), (&[0, 2, 0], 1)]);
        assert_eq!(classify(&a1).unwrap(), Classification::Rdp(label("A1")));
        let d5 = fp_poly(7, &[(&[0, 0, 2], 1), (&[2, 1, 0], 1), (&[0, 4, 0], 1)]);
        assert_eq!(classify(&d5).unwrap(), Classification::Rdp(label("D5")));
        let e7 = fp_poly(11, &[(&[0, 0, 2], 1), (&[3, 0, 0], 1), (&[1, 3, 0], 1)]);
        assert_eq!(classify(&e7).unwrap(), Classification::Rdp(label("E7")));
    }

    #[test]
    fn translated_a2() {
        // x^2 + z^2 + (y + x)^3 over F_7
        let f = fp_poly(7, &[(&[2, 0, 0], 1), (&[0, 0, 2], 1)]);
        let ypx = fp_poly(7, &[(&[0, 1, 0], 1), (&[1, 0, 0], 1)]);
        let g = f.add(&ypx.pow(3)).unwrap();
        assert_eq!(classify(&g).unwrap(), Classification::Rdp(label("A2")));
    }

    #[test]
    fn rejections() {
        let cusp_cyl = MultiPoly::from_terms(
            alloc::vec!["x".to_string(), "y".to_string()],
            7,
            [(alloc::vec![2, 0], Fp::new(1, 7)), (alloc::vec![0, 3], Fp::new(1, 7))],
        )
        .unwrap();
        assert_eq!(classify(&cusp_cyl).unwrap(), Classification::NotRdp(NotRdpReason::NonIsolated));
        let quartic = fp_poly(7, &[(&[4, 0, 0], 1), (&[0, 4, 0], 1), (&[0, 0, 4], 1)]);
        assert_eq!(classify(&quartic).unwrap(), Classification::NotRdp(NotRdpReason::Multiplicity(4)));
        let smooth = fp_poly(7, &[(&[1, 0, 0], 1), (&[0, 2, 0], 1)]);
        assert_eq!(classify(&smooth).unwrap(), Classification::NotRdp(NotRdpReason::Smooth));
        let a1 = fp_poly(3, &[(&[2, 0, 0], 1)]).map_coeffs(2, |c| Fp::new(c.value() as i64, 2));
        assert!(matches!(classify(&a1), Err(Error::UnsupportedCharacteristic(2))));
    }

    #[test]
    fn prime_status_examples() {
        let s = prime_status(label("A4"), 5);
        assert_eq!(s, PrimeStatus { good: true, very_good: false, sufficiently_good: false });
        let s = prime_status(label("E8"), 7);
        assert!(s.good && s.very_good && !s.sufficiently_good);
        let s = prime_status(label("A1"), 3);
        assert_eq!(s, PrimeStatus { good: true, very_good: true, sufficiently_good: true });
    }

    #[test]
    fn normal_forms() {
        assert_eq!(normal_form(label("A3"), 7), fp_poly(7, &[(&[0, 0, 2], 1), (&[2, 0, 0], 1), (&[0, 4, 0], 1)]));
        assert_eq!(normal_form(label("E6"), 7), fp_poly(7, &[(&[0, 0, 2], 1), (&[3, 0, 0], 1), (&[0, 4, 0], 1)]));
        assert_eq!(normal_form(label("D4"), 7), fp_poly(7, &[(&[0, 0, 2], 1), (&[2, 1, 0], 1), (&[0, 3, 0], 1)]));
    }

    #[test]
    fn dynkin_graphs() {
        let a2 = dynkin_data(label("A2"));
        assert_eq!(a2, crate::matrix::int_matrix(&[&[0, 1], &[1, 0]]));
        let d4 = dynkin_data(label("D4"));
        let degrees: Vec<i64> = (0..4).map(|i| (0..4).map(|j| *d4.get(i, j)).sum()).collect();
        assert_eq!(degrees, alloc::vec![1, 3, 1, 1]);
        let e8 = dynkin_data(label("E8"));
        let edges: i64 = (0..8).flat_map(|i| (0..8).map(move |j| (i, j))).map(|(i, j)| *e8.get(i, j)).sum();
        assert_eq!(edges, 14);
    }

    #[test]
    fn labels_round_trip() {
        for c in SingularityClass::all_up_to(8) {
            assert_eq!(c.to_string().parse::<SingularityClass>().unwrap(), c);
        }
        assert!("D3".parse::<SingularityClass>().is_err());
        assert!("E9".parse::<SingularityClass>().is_err());
    }
}
