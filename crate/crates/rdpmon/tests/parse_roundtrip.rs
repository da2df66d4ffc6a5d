use proptest::prelude::*;
use rdpmon::parse_poly;
use rdpmon_core::poly::MultiPoly;
use rdpmon_core::scalar::{PadicScalar, ScalarConfig, Uniformizer};

fn vars() -> Vec<String> {
    ["x", "y", "z", "t1", "t2"].iter().map(|s| s.to_string()).collect()
}

fn scalar(cfg: ScalarConfig) -> impl Strategy<Value = PadicScalar> {
    (proptest::collection::vec(0..cfg.prime(), 1..4), 0u32..5)
        .prop_map(move |(digits, v)| PadicScalar::from_digits(cfg, &digits, v).unwrap())
}

fn poly(cfg: ScalarConfig) -> impl Strategy<Value = MultiPoly<PadicScalar>> {
    proptest::collection::vec((proptest::collection::vec(0u32..4, 5), scalar(cfg)), 0..6)
        .prop_map(move |terms| MultiPoly::from_terms(vars(), cfg, terms).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn display_parses_back(f in poly(ScalarConfig::new(5, 8).unwrap())) {
        let text = f.to_string();
        let g = parse_poly(&text, *f.ctx()).unwrap();
        prop_assert_eq!(g.embed(&vars()).unwrap(), f);
    }

    #[test]
    fn display_parses_back_in_prime_model(f in poly(ScalarConfig::with_uniformizer(7, 8, Uniformizer::Prime).unwrap())) {
        let g = parse_poly(&f.to_string(), *f.ctx()).unwrap();
        prop_assert_eq!(g.embed(&vars()).unwrap(), f);
    }

    #[test]
    fn garbage_never_panics(s in "[xyzpit0-9+*^()\\[\\],@ -]{0,24}") {
        let cfg = ScalarConfig::new(7, 8).unwrap();
        if let Err(e) = parse_poly(&s, cfg) {
            prop_assert!(e.position <= s.chars().count());
        }
    }
}
