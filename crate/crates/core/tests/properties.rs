use std::collections::BTreeMap;

use num_rational::BigRational;
use proptest::prelude::*;
use rdpmon_core::classify::{classify, normal_form, Classification, SingularityClass};
use rdpmon_core::deformation::{fit_parameters, miniversal};
use rdpmon_core::fp::Fp;
use rdpmon_core::lie::{adjoint_invariants, elementary_symmetric};
use rdpmon_core::matrix::Matrix;
use rdpmon_core::monodromy::{monodromy_report, realize_cycle_type};
use rdpmon_core::poly::{xyz, MultiPoly};
use rdpmon_core::quotient::{tjurina_ideal, tjurina_number, truncated_quotient_dim};
use rdpmon_core::ring::Ring;
use rdpmon_core::scalar::{PadicScalar, ScalarConfig};

fn fp_poly_strategy(p: u64) -> impl Strategy<Value = MultiPoly<Fp>> {
    proptest::collection::vec(((0u32..4, 0u32..4, 0u32..4), 0..p), 0..6).prop_map(move |terms| {
        MultiPoly::from_terms(xyz(), p, terms.into_iter().map(|((a, b, c), v)| (vec![a, b, c], Fp::from_u64(v, p))))
            .unwrap()
    })
}

fn gl3_strategy(p: u64) -> impl Strategy<Value = Matrix<Fp>> {
    proptest::collection::vec(0..p, 9)
        .prop_map(move |v| Matrix::from_fn(&p, 3, 3, |i, j| Fp::from_u64(v[3 * i + j], p)))
        .prop_filter("invertible", |m| !m.det().is_zero())
}

fn linear_change(f: &MultiPoly<Fp>, g: &Matrix<Fp>) -> MultiPoly<Fp> {
    let p = *f.ctx();
    let vars = xyz();
    let mut map = BTreeMap::new();
    for (i, v) in vars.iter().enumerate() {
        let mut img = MultiPoly::zero(vars.clone(), p);
        for (j, w) in vars.iter().enumerate() {
            img = img.add(&MultiPoly::var(vars.clone(), p, w).unwrap().scale(g.get(i, j))).unwrap();
        }
        map.insert(v.clone(), img);
    }
    f.substitute(&vars, &map).unwrap()
}

fn class_strategy(max_rank: u32) -> impl Strategy<Value = SingularityClass> {
    let all = SingularityClass::all_up_to(max_rank);
    (0..all.len()).prop_map(move |i| all[i])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn leibniz_rule(f in fp_poly_strategy(7), g in fp_poly_strategy(7), v in 0usize..3) {
        let var = &xyz()[v];
        let lhs = f.mul(&g).unwrap().partial_derivative(var).unwrap();
        let rhs = f.partial_derivative(var).unwrap().mul(&g).unwrap()
            .add(&f.mul(&g.partial_derivative(var).unwrap()).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn quotient_dimension_is_gl3_invariant(class in class_strategy(6), g in gl3_strategy(11)) {
        let f = normal_form(class, 11);
        let h = linear_change(&f, &g);
        let before = truncated_quotient_dim(&tjurina_ideal(&f).unwrap(), 5).unwrap();
        let after = truncated_quotient_dim(&tjurina_ideal(&h).unwrap(), 5).unwrap();
        prop_assert_eq!(before.dimension, after.dimension);
        prop_assert_eq!(tjurina_number(&f).unwrap(), tjurina_number(&h).unwrap());
    }

    #[test]
    fn quotient_dimension_is_monotone(gens in proptest::collection::vec(fp_poly_strategy(5), 1..4), extra in fp_poly_strategy(5)) {
        let base = truncated_quotient_dim(&gens, 4).unwrap().dimension;
        let mut more = gens.clone();
        more.push(extra);
        prop_assert!(truncated_quotient_dim(&more, 4).unwrap().dimension <= base);
    }

    #[test]
    fn classification_is_invariant(class in class_strategy(8), g in gl3_strategy(13), unit in 1i64..13) {
        let f = normal_form(class, 13).scale(&Fp::new(unit, 13));
        let h = linear_change(&f, &g);
        prop_assert_eq!(classify(&h).unwrap(), Classification::Rdp(class));
    }

    #[test]
    fn adjoint_invariants_are_conjugation_invariant(
        entries in proptest::collection::vec(-5i64..6, 9),
        g in proptest::collection::vec(-3i64..4, 9),
    ) {
        let q = |v: i64| BigRational::from_integer(v.into());
        let mut m = Matrix::from_fn(&(), 3, 3, |i, j| q(entries[3 * i + j]));
        let t = m.trace();
        m.set(2, 2, m.get(2, 2).minus(&t));
        let g = Matrix::from_fn(&(), 3, 3, |i, j| q(g[3 * i + j]));
        prop_assume!(!g.det().is_zero());
        let conj = g.mul(&m).mul(&g.inverse().unwrap());
        prop_assert_eq!(adjoint_invariants(&m).unwrap(), adjoint_invariants(&conj).unwrap());
    }

    #[test]
    fn adjoint_invariants_of_diagonals(s in proptest::collection::vec(-20i64..21, 1..6)) {
        let mut s = s;
        let total: i64 = s.iter().sum();
        s.push(-total);
        let n = s.len();
        let d = Matrix::from_fn(&(), n, n, |i, j| if i == j { s[i] } else { 0 });
        let e = elementary_symmetric(&(), &s);
        prop_assert_eq!(e[0], 0);
        prop_assert_eq!(adjoint_invariants(&d).unwrap(), e[1..].to_vec());
    }

    #[test]
    fn fit_round_trips(n in 1u32..7, seeds in proptest::collection::vec((1i64..100, 1u32..7), 7)) {
        let cfg = ScalarConfig::new(11, 24).unwrap();
        let class = SingularityClass::a(n).unwrap();
        let fam = miniversal(class, cfg).unwrap();
        let values: Vec<PadicScalar> = seeds.iter().take(n as usize).map(|&(u, v)| PadicScalar::unit_pi_pow(cfg, u, v)).collect();
        let f = fam.specialize(&values).unwrap();
        let fit = fit_parameters(&f, class).unwrap();
        prop_assert_eq!(fit.values, values);
    }

    #[test]
    fn realized_cycle_types_round_trip(parts in proptest::collection::vec(1usize..5, 1..4), bs in proptest::collection::vec(1u32..6, 4)) {
        let cfg = ScalarConfig::new(13, 32).unwrap();
        let b: Vec<u32> = parts.iter().zip(&bs).map(|(&r, &b)| {
            let mut b = b;
            while num_integer::gcd(r as u32, b) != 1 { b += 1; }
            b
        }).collect();
        let m: usize = parts.iter().sum();
        prop_assume!(m >= 2);
        let f = realize_cycle_type(cfg, &parts, &b, None).unwrap();
        let report = monodromy_report(&f, SingularityClass::a(m as u32 - 1).unwrap()).unwrap();
        let mut sorted = parts.clone();
        sorted.sort_unstable_by(|a, b| b.cmp(a));
        prop_assert_eq!(&report.cycle_type, &sorted);
        prop_assert_eq!(report.order, report.base_change_degree);
        prop_assert_eq!(report.invariant_dim, sorted.len() - 1);
        let trivial = report.matrix.matrix().is_identity();
        prop_assert_eq!(report.good_reduction, report.base_change_degree == 1);
        prop_assert_eq!(report.good_reduction, trivial);
    }
}
