//! Serializable report documents. Field order is declaration order, so the
//! JSON output is byte-stable for a fixed job.

use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use serde::{Serialize, Serializer};

use rdpmon_core::classify::{PrimeStatus, SingularityClass};
use rdpmon_core::matrix::Matrix;
use rdpmon_core::monodromy::{MonodromyReport, NewtonPolygon, Segment};

use crate::error::CliError;
use crate::job::JobSpec;

pub const TOOL: &str = "rdpmon";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// An exact rational: a JSON integer when integral and in `i64` range,
/// otherwise the string `"p/q"`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rational(pub BigRational);

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if self.0.denom().is_one() {
            if let Some(n) = self.0.numer().to_i64() {
                return s.serialize_i64(n);
            }
        }
        s.serialize_str(&format!("{}/{}", self.0.numer(), self.0.denom()))
    }
}

pub fn rationals(values: &[BigRational]) -> Vec<Rational> {
    values.iter().cloned().map(Rational).collect()
}

pub fn int_rows(m: &Matrix<i64>) -> Vec<Vec<i64>> {
    m.to_rows()
}

#[derive(Clone, Debug, Serialize)]
pub struct Envelope<T: Serialize> {
    pub tool: &'static str,
    pub version: &'static str,
    pub kind: &'static str,
    pub job: JobSpec,
    pub result: T,
}

impl<T: Serialize> Envelope<T> {
    pub fn new(kind: &'static str, job: JobSpec, result: T) -> Self {
        Envelope { tool: TOOL, version: VERSION, kind, job, result }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ErrorReport {
    pub category: &'static str,
    pub exit_code: u8,
    pub message: String,
    pub position: Option<usize>,
}

impl From<&CliError> for ErrorReport {
    fn from(e: &CliError) -> Self {
        let message = match e {
            CliError::Parse(p) => p.message.clone(),
            other => other.to_string(),
        };
        ErrorReport { category: e.category(), exit_code: e.exit_code(), message, position: e.position() }
    }
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct PrimeStatusReport {
    pub good: bool,
    pub very_good: bool,
    pub sufficiently_good: bool,
}

impl From<PrimeStatus> for PrimeStatusReport {
    fn from(s: PrimeStatus) -> Self {
        PrimeStatusReport { good: s.good, very_good: s.very_good, sufficiently_good: s.sufficiently_good }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassifyReport {
    pub special_fiber: String,
    pub rdp: bool,
    pub class: Option<String>,
    pub family: Option<String>,
    pub rank: Option<u32>,
    pub reason: Option<String>,
    pub tjurina_number: Option<usize>,
    pub coxeter_number: Option<u32>,
    pub prime_status: Option<PrimeStatusReport>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ParameterReport {
    pub name: String,
    pub value: String,
    pub valuation: Option<u32>,
}

#[derive(Clone, Debug, Serialize)]
pub struct NamedWeight {
    pub name: String,
    pub weight: Rational,
}

#[derive(Clone, Debug, Serialize)]
pub struct WeightsReport {
    pub variables: Vec<Rational>,
    pub degree: Rational,
    pub parameters: Vec<NamedWeight>,
    pub invariant_degrees: Vec<u32>,
}

#[derive(Clone, Debug, Serialize)]
pub struct DeformReport {
    pub class: String,
    pub family: String,
    pub basis: Vec<String>,
    pub kodaira_spencer: Vec<Vec<u64>>,
    pub kodaira_spencer_is_identity: bool,
    pub parameters: Vec<ParameterReport>,
    pub coordinate_changes: Vec<String>,
    pub weights: WeightsReport,
}

#[derive(Clone, Debug, Serialize)]
pub struct SegmentReport {
    pub start: [u32; 2],
    pub end: [u32; 2],
    pub slope: Rational,
    pub length: u32,
    pub multiplicity: u32,
    /// Coefficients over `F_p`, constant term first.
    pub residual: Vec<u64>,
    pub separable: bool,
}

impl From<&Segment> for SegmentReport {
    fn from(s: &Segment) -> Self {
        SegmentReport {
            start: [s.start.0, s.start.1],
            end: [s.end.0, s.end.1],
            slope: Rational(BigRational::new((-(s.b as i64)).into(), (s.r as i64).into())),
            length: s.length,
            multiplicity: s.multiplicity(),
            residual: s.residual.coeffs().to_vec(),
            separable: s.separable,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PolygonReport {
    pub zero_roots: u32,
    pub points: Vec<[u32; 2]>,
    pub segments: Vec<SegmentReport>,
}

impl From<&NewtonPolygon> for PolygonReport {
    fn from(p: &NewtonPolygon) -> Self {
        PolygonReport {
            zero_roots: p.zero_roots,
            points: p.points.iter().map(|&(i, v)| [i, v]).collect(),
            segments: p.segments.iter().map(SegmentReport::from).collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct MonodromyDoc {
    pub class: String,
    pub reduced_equation: String,
    pub coordinate_changes: Vec<String>,
    pub newton_polygon: PolygonReport,
    pub cycle_type: Vec<usize>,
    pub base_change_degree: u64,
    pub matrix: Vec<Vec<i64>>,
    pub charpoly: Vec<i64>,
    pub order: u64,
    pub coxeter: bool,
    pub good_reduction: bool,
    pub invariant_dim: usize,
}

impl MonodromyDoc {
    pub fn new(r: &MonodromyReport, reduced_equation: String, coordinate_changes: Vec<String>) -> Self {
        MonodromyDoc {
            class: r.class.to_string(),
            reduced_equation,
            coordinate_changes,
            newton_polygon: PolygonReport::from(&r.polygon),
            cycle_type: r.cycle_type.clone(),
            base_change_degree: r.base_change_degree,
            matrix: int_rows(r.matrix.matrix()),
            charpoly: r.matrix.charpoly(),
            order: r.order,
            coxeter: r.coxeter,
            good_reduction: r.good_reduction,
            invariant_dim: r.invariant_dim,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ElementReport {
    pub cycle_type: Vec<usize>,
    pub matrix: Vec<Vec<i64>>,
    pub charpoly: Vec<i64>,
    pub order: u64,
    pub fixed_space_dim: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct SpringerReport {
    pub components: usize,
    pub h2_dim: usize,
    pub dual_graph: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct WeylReport {
    pub class: String,
    pub rank: usize,
    pub cartan: Vec<Vec<i64>>,
    pub cartan_determinant: i64,
    pub weyl_order: u64,
    pub root_count: usize,
    pub coxeter_number: u64,
    pub coxeter_element: Vec<Vec<i64>>,
    pub coxeter_charpoly: Vec<i64>,
    pub simple_reflections: Vec<Vec<Vec<i64>>>,
    pub prime_status: PrimeStatusReport,
    pub springer: SpringerReport,
    pub element: Option<ElementReport>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ReductionReport {
    pub prime: u64,
    pub brackets_hold: Option<bool>,
    pub vanishing_coefficients: Vec<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SliceReport {
    pub class: String,
    pub n: usize,
    pub subregular: Vec<Vec<i64>>,
    pub regular: Vec<Vec<i64>>,
    pub centralizer_subregular: usize,
    pub centralizer_regular: usize,
    pub slice_dimension: usize,
    pub cartan_system: Vec<Rational>,
    pub cartan_system_denominator_lcm: Rational,
    pub sl2_coefficients: Vec<Rational>,
    pub sl2_h_diagonal: Vec<Rational>,
    pub brackets_hold: bool,
    pub reduction: ReductionReport,
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepRow {
    /// Exponents of `π` on `y^(n-1), …, y^0`.
    pub exponents: Vec<u32>,
    pub equation: String,
    pub cycle_type: Option<Vec<usize>>,
    pub base_change_degree: Option<u64>,
    pub coxeter: Option<bool>,
    pub good_reduction: Option<bool>,
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HistogramEntry {
    pub cycle_type: Vec<usize>,
    pub count: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepReport {
    pub class: String,
    pub points: usize,
    pub rows: Vec<SweepRow>,
    pub histogram: Vec<HistogramEntry>,
    pub errors: usize,
}

pub fn class_name(c: SingularityClass) -> String {
    c.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn rational_serialization() {
        let q = |n: i64, d: i64| Rational(BigRational::new(n.into(), d.into()));
        assert_eq!(serde_json::to_string(&q(4, 2)).unwrap(), "2");
        assert_eq!(serde_json::to_string(&q(-3, 6)).unwrap(), "\"-1/2\"");
        let big = Rational(BigRational::from_integer(BigInt::from(10).pow(30)));
        assert_eq!(serde_json::to_string(&big).unwrap(), format!("\"{}/1\"", BigInt::from(10).pow(30)));
    }
}
