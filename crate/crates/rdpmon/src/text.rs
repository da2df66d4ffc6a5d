//! Plain-text rendering of reports.

use std::fmt::Write;

use serde_json::Value;

use crate::report::*;

fn list<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

fn matrix(m: &[Vec<i64>]) -> String {
    m.iter().map(|r| format!("[{}]", list(r))).collect::<Vec<_>>().join(" ")
}

fn rational(q: &Rational) -> String {
    match serde_json::to_value(q).expect("rationals serialize") {
        Value::String(s) => s,
        other => other.to_string(),
    }
}

fn status(s: &PrimeStatusReport) -> String {
    format!("good={} very_good={} sufficiently_good={}", s.good, s.very_good, s.sufficiently_good)
}

pub fn classify(r: &ClassifyReport) -> String {
    let mut out = format!("special fiber: {}\n", r.special_fiber);
    match (&r.class, &r.reason) {
        (Some(c), _) => {
            let _ = writeln!(out, "class: {c}");
            if let Some(t) = r.tjurina_number {
                let _ = writeln!(out, "tjurina number: {t}");
            }
            if let Some(h) = r.coxeter_number {
                let _ = writeln!(out, "coxeter number: {h}");
            }
            if let Some(s) = &r.prime_status {
                let _ = writeln!(out, "prime: {}", status(s));
            }
        }
        (None, reason) => {
            let _ = writeln!(out, "not a rational double point: {}", reason.as_deref().unwrap_or("unknown"));
        }
    }
    out
}

pub fn deform(r: &DeformReport) -> String {
    let mut out = format!("class: {}\nminiversal family: {}\n", r.class, r.family);
    let _ = writeln!(out, "kodaira-spencer identity: {}", r.kodaira_spencer_is_identity);
    for p in &r.parameters {
        let v = p.valuation.map_or("inf".to_string(), |v| v.to_string());
        let _ = writeln!(out, "{} = {} (valuation {v})", p.name, p.value);
    }
    for c in &r.coordinate_changes {
        let _ = writeln!(out, "change: {c}");
    }
    let weights: Vec<String> = r.weights.variables.iter().map(rational).collect();
    let _ = writeln!(out, "weights (x,y,z): ({}), degree {}", weights.join(","), rational(&r.weights.degree));
    out
}

pub fn monodromy(r: &MonodromyDoc) -> String {
    let mut out = format!("class: {}\nreduced equation: {}\n", r.class, r.reduced_equation);
    for s in &r.newton_polygon.segments {
        let _ = writeln!(
            out,
            "segment ({},{})-({},{}) slope {} residual [{}]{}",
            s.start[0],
            s.start[1],
            s.end[0],
            s.end[1],
            rational(&s.slope),
            list(&s.residual),
            if s.separable { "" } else { " inseparable" }
        );
    }
    let _ = writeln!(out, "cycle type: ({})", list(&r.cycle_type));
    let _ = writeln!(out, "base change degree: {}", r.base_change_degree);
    let _ = writeln!(out, "monodromy matrix: {}", matrix(&r.matrix));
    let _ = writeln!(out, "order: {}  coxeter: {}  good reduction: {}", r.order, r.coxeter, r.good_reduction);
    out
}

pub fn weyl(r: &WeylReport) -> String {
    let mut out = format!("class: {}\ncartan: {}\n", r.class, matrix(&r.cartan));
    let _ = writeln!(out, "det: {}  |W|: {}  roots: {}", r.cartan_determinant, r.weyl_order, r.root_count);
    let _ = writeln!(out, "coxeter number: {}  charpoly: [{}]", r.coxeter_number, list(&r.coxeter_charpoly));
    let _ = writeln!(out, "prime: {}", status(&r.prime_status));
    if let Some(e) = &r.element {
        let _ = writeln!(out, "element ({}): {} order {}", list(&e.cycle_type), matrix(&e.matrix), e.order);
    }
    out
}

pub fn slice(r: &SliceReport) -> String {
    let mut out = format!("class: {}\n", r.class);
    let _ = writeln!(out, "centralizers: subregular {}, regular {}", r.centralizer_subregular, r.centralizer_regular);
    let lit: Vec<String> = r.cartan_system.iter().map(rational).collect();
    let _ = writeln!(
        out,
        "cartan system: ({})  denominators divide {}",
        lit.join(","),
        rational(&r.cartan_system_denominator_lcm)
    );
    let a: Vec<String> = r.sl2_coefficients.iter().map(rational).collect();
    let _ = writeln!(out, "sl2 coefficients: ({})  brackets hold: {}", a.join(","), r.brackets_hold);
    let red = r.reduction.brackets_hold.map_or("undefined".to_string(), |b| b.to_string());
    let _ = writeln!(out, "mod {}: brackets hold: {red}", r.reduction.prime);
    out
}

pub fn sweep(r: &SweepReport) -> String {
    let mut out = format!("class: {}  points: {}  errors: {}\n", r.class, r.points, r.errors);
    for row in &r.rows {
        let outcome = match (&row.cycle_type, &row.error) {
            (Some(ct), _) => format!("({}) degree {}", list(ct), row.base_change_degree.unwrap_or(0)),
            (None, Some(e)) => format!("error: {e}"),
            _ => String::new(),
        };
        let _ = writeln!(out, "a=({})  {outcome}", list(&row.exponents));
    }
    for h in &r.histogram {
        let _ = writeln!(out, "({}): {}", list(&h.cycle_type), h.count);
    }
    out
}
