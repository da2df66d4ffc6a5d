//! The analyses behind each subcommand. Every function is pure in its
//! `JobSpec`, so equal jobs give equal reports.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::ToPrimitive;
use rayon::prelude::*;

use rdpmon_core::classify::{classify, prime_status, Classification, Family, SingularityClass};
use rdpmon_core::deformation::{fit_parameters, kodaira_spencer_matrix, miniversal, parameter_names, weight_data};
use rdpmon_core::lie::{
    centralizer_dim, complete_sl2, denominator_lcm, regular_nilpotent, sl2_cartan_coefficients, solve_cartan_system,
    springer_fiber_data, subregular_x,
};
use rdpmon_core::matrix::Matrix;
use rdpmon_core::monodromy::{monodromy_of_family, monodromy_report, reduce_to_an_shape, ScalarPoly};
use rdpmon_core::poly::{xyz, MultiPoly};
use rdpmon_core::quotient::tjurina_number;
use rdpmon_core::roots::{element_from_cycle_type, RootDatum};
use rdpmon_core::scalar::PadicScalar;
use rdpmon_core::Error;

use crate::error::CliError;
use crate::job::{Grid, JobSpec};
use crate::parse::parse_poly;
use crate::report::*;

/// Parses the job input as an equation in `x, y, z` only.
pub fn surface_equation(job: &JobSpec) -> Result<MultiPoly<PadicScalar>, CliError> {
    let f = parse_poly(&job.input, job.config()?)?;
    let params: Vec<&String> = f.vars()[3..].iter().collect();
    if f.terms().any(|(e, _)| e[3..].iter().any(|&k| k > 0)) {
        let names: Vec<&str> = params.iter().map(|s| s.as_str()).collect();
        return Err(CliError::Job(format!(
            "expected an equation in x, y, z; substitute values for {}",
            names.join(", ")
        )));
    }
    Ok(f.restrict_to(&xyz())?)
}

pub fn parse_class(job: &JobSpec) -> Result<SingularityClass, CliError> {
    Ok(job.input.parse::<SingularityClass>()?)
}

pub fn run_classify(job: &JobSpec) -> Result<Envelope<ClassifyReport>, CliError> {
    let f = surface_equation(job)?;
    let special = f.reduce_mod_pi();
    let report = match classify(&special)? {
        Classification::Rdp(c) => ClassifyReport {
            special_fiber: special.to_string(),
            rdp: true,
            class: Some(c.to_string()),
            family: Some(c.family().to_string()),
            rank: Some(c.rank()),
            reason: None,
            tjurina_number: tjurina_number(&special)?.finite(),
            coxeter_number: Some(c.coxeter_number()),
            prime_status: Some(prime_status(c, job.prime).into()),
        },
        Classification::NotRdp(reason) => ClassifyReport {
            special_fiber: special.to_string(),
            rdp: false,
            class: None,
            family: None,
            rank: None,
            reason: Some(reason.to_string()),
            tjurina_number: None,
            coxeter_number: None,
            prime_status: None,
        },
    };
    Ok(Envelope::new("classify", job.clone(), report))
}

fn special_class(f: &MultiPoly<PadicScalar>) -> Result<SingularityClass, CliError> {
    match classify(&f.reduce_mod_pi())? {
        Classification::Rdp(c) => Ok(c),
        Classification::NotRdp(reason) => {
            Err(Error::UnsupportedShape(format!("special fiber is not a rational double point: {reason}")).into())
        }
    }
}

pub fn run_deform(job: &JobSpec) -> Result<Envelope<DeformReport>, CliError> {
    let f = surface_equation(job)?;
    let class = special_class(&f)?;
    let fam = miniversal(class, job.config()?)?;
    let ks = kodaira_spencer_matrix(&fam);
    let fit = fit_parameters(&f, class)?;
    let weights = weight_data(class)?;
    let parameters = parameter_names(fam.parameter_count())
        .into_iter()
        .zip(&fit.values)
        .map(|(name, v)| ParameterReport { name, value: v.to_string(), valuation: v.valuation().finite() })
        .collect();
    let report = DeformReport {
        class: class.to_string(),
        family: fam.family().to_string(),
        basis: fam.basis().iter().map(ToString::to_string).collect(),
        kodaira_spencer: ks.to_rows().iter().map(|r| r.iter().map(|c| c.value()).collect()).collect(),
        kodaira_spencer_is_identity: ks.is_identity(),
        parameters,
        coordinate_changes: fit.changes.iter().map(ToString::to_string).collect(),
        weights: WeightsReport {
            variables: rationals(&weights.variable_weights),
            degree: Rational(weights.degree.clone()),
            parameters: weights
                .parameter_weights
                .iter()
                .map(|(name, w)| NamedWeight { name: name.clone(), weight: Rational(w.clone()) })
                .collect(),
            invariant_degrees: weights.invariant_degrees.clone(),
        },
    };
    Ok(Envelope::new("deform", job.clone(), report))
}

pub fn run_monodromy(job: &JobSpec) -> Result<Envelope<MonodromyDoc>, CliError> {
    let f = surface_equation(job)?;
    let report = monodromy_of_family(&f)?;
    let (_, reduced, changes) = reduce_to_an_shape(&f)?;
    let equation = format!("x^2 + z^2 + {reduced}");
    let doc = MonodromyDoc::new(&report, equation, changes.iter().map(ToString::to_string).collect());
    Ok(Envelope::new("monodromy", job.clone(), doc))
}

pub fn run_weyl(job: &JobSpec) -> Result<Envelope<WeylReport>, CliError> {
    let class = parse_class(job)?;
    let rd = RootDatum::new(class);
    let weyl_order =
        rd.weyl_order()?.to_u64().ok_or_else(|| Error::ResourceCap(format!("|W({class})| does not fit in 64 bits")))?;
    let element = match &job.cycle_type {
        None => None,
        Some(parts) => {
            if class.family() != Family::A {
                return Err(Error::NotImplementedForClass(class).into());
            }
            let mut parts = parts.to_vec();
            parts.sort_unstable_by(|a, b| b.cmp(a));
            let w = element_from_cycle_type(rd.rank(), &parts)?;
            Some(ElementReport {
                cycle_type: parts,
                matrix: int_rows(w.matrix()),
                charpoly: w.charpoly(),
                order: w.order(),
                fixed_space_dim: w.fixed_space_dim(),
            })
        }
    };
    let cox = rd.coxeter_element();
    let springer = springer_fiber_data(class);
    let report = WeylReport {
        class: class.to_string(),
        rank: rd.rank(),
        cartan: int_rows(rd.cartan()),
        cartan_determinant: rd.cartan().det(),
        weyl_order,
        root_count: rd.roots().len(),
        coxeter_number: cox.order(),
        coxeter_element: int_rows(cox.matrix()),
        coxeter_charpoly: cox.charpoly(),
        simple_reflections: rd.simple_reflections().iter().map(int_rows).collect(),
        prime_status: prime_status(class, job.prime).into(),
        springer: SpringerReport {
            components: springer.components,
            h2_dim: springer.h2_dim,
            dual_graph: int_rows(&springer.dual_graph),
        },
        element,
    };
    Ok(Envelope::new("weyl", job.clone(), report))
}

pub fn run_slice(job: &JobSpec) -> Result<Envelope<SliceReport>, CliError> {
    let class = parse_class(job)?;
    if class.family() != Family::A {
        return Err(Error::NotImplementedForClass(class).into());
    }
    let n = class.rank() as usize;
    let sub: Matrix<BigRational> = subregular_x(&(), n)?;
    let reg: Matrix<BigRational> = regular_nilpotent(&(), n);
    let literal = solve_cartan_system(n)?;
    let lcm = denominator_lcm(&literal);
    let triple = complete_sl2(n)?;
    let p = job.prime;
    let reduction = ReductionReport {
        prime: p,
        brackets_hold: triple.reduce_mod(p).ok().map(|t| t.brackets_hold()),
        vanishing_coefficients: triple.vanishing_coefficients_mod(p),
    };
    let to_ints = |m: &Matrix<BigRational>| -> Vec<Vec<i64>> {
        m.to_rows().iter().map(|r| r.iter().map(|q| q.to_integer().to_i64().unwrap_or(0)).collect()).collect()
    };
    let centralizer_subregular = centralizer_dim(&sub);
    let report = SliceReport {
        class: class.to_string(),
        n,
        subregular: to_ints(&sub),
        regular: to_ints(&reg),
        centralizer_subregular,
        centralizer_regular: centralizer_dim(&reg),
        slice_dimension: centralizer_subregular,
        cartan_system: rationals(&literal),
        cartan_system_denominator_lcm: Rational(BigRational::from_integer(lcm)),
        sl2_coefficients: rationals(&sl2_cartan_coefficients(n)?),
        sl2_h_diagonal: (0..=n).map(|i| Rational(triple.h.get(i, i).clone())).collect(),
        brackets_hold: triple.brackets_hold(),
        reduction,
    };
    Ok(Envelope::new("slice", job.clone(), report))
}

/// Human-readable form of a sweep equation, parseable by [`parse_poly`].
fn sweep_equation(rank: u32, exponents: &[u32]) -> String {
    let mut s = format!("x^2 + z^2 + y^{}", rank + 1);
    for (k, &a) in exponents.iter().enumerate() {
        let i = rank as usize - 1 - k;
        match i {
            0 => s.push_str(&format!(" + pi^{a}")),
            1 => s.push_str(&format!(" + pi^{a}*y")),
            _ => s.push_str(&format!(" + pi^{a}*y^{i}")),
        }
    }
    s
}

/// Template `x^2 + z^2 + y^(n+1) + Σ pi^a_i*y^i` used as the sweep input.
pub fn sweep_template(rank: u32) -> String {
    let mut s = format!("x^2 + z^2 + y^{}", rank + 1);
    for i in (0..rank).rev() {
        match i {
            0 => s.push_str(" + pi^a0"),
            1 => s.push_str(" + pi^a1*y"),
            _ => s.push_str(&format!(" + pi^a{i}*y^{i}")),
        }
    }
    s
}

fn grid_points(grid: &Grid) -> Vec<Vec<u32>> {
    let n = grid.rank as usize;
    let a = grid.max_exponent;
    if a == 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut cur = vec![1u32; n];
    loop {
        out.push(cur.clone());
        let mut k = n;
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            if cur[k] < a {
                cur[k] += 1;
                break;
            }
            cur[k] = 1;
        }
    }
}

pub fn run_sweep(job: &JobSpec, jobs: Option<usize>) -> Result<Envelope<SweepReport>, CliError> {
    let grid = job.grid.clone().ok_or_else(|| CliError::Job("sweep needs a grid".into()))?;
    let class = SingularityClass::a(grid.rank)?;
    let bound = grid.rank as u64 + 1;
    if job.prime <= bound {
        return Err(Error::WildRamificationUnsupported { p: job.prime, bound }.into());
    }
    if grid.size() > grid.max_points {
        return Err(Error::ResourceCap(format!(
            "grid has {} points, cap is {}",
            if grid.size() == u64::MAX { "more than 2^64".to_string() } else { grid.size().to_string() },
            grid.max_points
        ))
        .into());
    }
    let cfg = job.config()?;
    let points = grid_points(&grid);
    let eval = |exponents: &Vec<u32>| -> SweepRow {
        let n = grid.rank as usize;
        let mut coeffs = vec![PadicScalar::zero(cfg); n + 2];
        coeffs[n + 1] = PadicScalar::one(cfg);
        for (k, &a) in exponents.iter().enumerate() {
            coeffs[n - 1 - k] = PadicScalar::pi_pow(cfg, a);
        }
        let equation = sweep_equation(grid.rank, exponents);
        let outcome = ScalarPoly::new(cfg, coeffs).and_then(|f| monodromy_report(&f, class));
        match outcome {
            Ok(r) => SweepRow {
                exponents: exponents.clone(),
                equation,
                cycle_type: Some(r.cycle_type),
                base_change_degree: Some(r.base_change_degree),
                coxeter: Some(r.coxeter),
                good_reduction: Some(r.good_reduction),
                error: None,
            },
            Err(e) => SweepRow {
                exponents: exponents.clone(),
                equation,
                cycle_type: None,
                base_change_degree: None,
                coxeter: None,
                good_reduction: None,
                error: Some(e.to_string()),
            },
        }
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.unwrap_or(0))
        .build()
        .map_err(|e| CliError::Job(format!("cannot start worker pool: {e}")))?;
    let rows: Vec<SweepRow> = pool.install(|| points.par_iter().map(eval).collect());
    let mut histogram: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    for row in &rows {
        if let Some(ct) = &row.cycle_type {
            *histogram.entry(ct.clone()).or_default() += 1;
        }
    }
    let report = SweepReport {
        class: class.to_string(),
        points: rows.len(),
        errors: rows.iter().filter(|r| r.error.is_some()).count(),
        histogram: histogram.into_iter().map(|(cycle_type, count)| HistogramEntry { cycle_type, count }).collect(),
        rows,
    };
    Ok(Envelope::new("sweep", job.clone(), report))
}
