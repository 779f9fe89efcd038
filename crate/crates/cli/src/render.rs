//! Text and JSON rendering of engine values.
//!
//! JSON conventions: every rational is a string `n` or `n/d`, every series is
//! an object from monomial keys (`"1"`, `"x"`, `"x^2*y"`) to coefficient
//! strings, and factored rational functions keep their four fields explicit.
//! All maps are ordered, so rendered output is byte-stable.

use serde_json::{json, Map, Value};

use kzrat_core::exact::laurent::LaurentPoly;
use kzrat_core::exact::rational::FactoredRationalFn;
use kzrat_core::exact::scalar::fmt_rat;
use kzrat_core::pipeline::rational::{RationalChain, RationalDumbbell};
use kzrat_core::series::TruncatedSeries;

fn monomial_key(vars: &[String], exps: &[i64]) -> String {
    let mut parts = Vec::new();
    for (v, &e) in vars.iter().zip(exps.iter()) {
        match e {
            0 => {}
            1 => parts.push(v.clone()),
            _ => parts.push(format!("{}^{}", v, e)),
        }
    }
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join("*")
    }
}

/// Series as a sorted monomial map, optionally dropping terms above a total
/// degree bound (bracket entries are stored beyond the requested order).
pub fn series_json(s: &TruncatedSeries, max_degree: Option<i64>) -> Value {
    let mut map = Map::new();
    for (exps, c) in s.terms() {
        let degree: i64 = exps.iter().sum();
        if max_degree.is_some_and(|m| degree > m) {
            continue;
        }
        map.insert(monomial_key(s.vars(), exps), Value::String(fmt_rat(c)));
    }
    Value::Object(map)
}

pub fn laurent_json(p: &LaurentPoly) -> Value {
    let mut map = Map::new();
    for (exps, c) in p.terms() {
        map.insert(monomial_key(p.vars(), exps), Value::String(fmt_rat(c)));
    }
    Value::Object(map)
}

pub fn rational_fn_json(f: &FactoredRationalFn) -> Value {
    let num: Vec<Value> = f
        .num
        .terms()
        .iter()
        .map(|(e, c)| json!([e[0], fmt_rat(c)]))
        .collect();
    let den: Vec<Value> = f.den_factors.iter().map(|(n, m)| json!([n, m])).collect();
    json!({
        "scalar": fmt_rat(&f.scalar),
        "monomial_exp": f.monomial_exp,
        "num": num,
        "den_factors": den,
    })
}

pub fn dumbbell_json(d: &RationalDumbbell) -> Value {
    let terms: Vec<Value> = d
        .terms
        .iter()
        .map(|(c, a, b)| {
            json!({
                "coef": fmt_rat(c),
                "left": rational_fn_json(a),
                "right": rational_fn_json(b),
            })
        })
        .collect();
    json!({ "terms": terms })
}

pub fn chain_json(c: &RationalChain) -> Value {
    let terms: Vec<Value> = c
        .terms
        .iter()
        .map(|(k, e1, m, e2)| {
            json!({
                "coef": fmt_rat(k),
                "end1": rational_fn_json(e1),
                "middle": rational_fn_json(m),
                "end2": rational_fn_json(e2),
            })
        })
        .collect();
    json!({ "terms": terms })
}

pub fn dumbbell_text(d: &RationalDumbbell) -> Vec<String> {
    d.terms
        .iter()
        .map(|(c, a, b)| format!("({}) * {} (x) {}", fmt_rat(c), a, b))
        .collect()
}

pub fn chain_text(c: &RationalChain) -> Vec<String> {
    c.terms
        .iter()
        .map(|(k, e1, m, e2)| format!("({}) * {} (x) {} (x) {}", fmt_rat(k), e1, m, e2))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use kzrat_core::exact::scalar::{rat, rat_int};

    #[test]
    fn monomial_keys_follow_the_display_convention() {
        let vars = vec!["x".to_string(), "y".to_string()];
        assert_eq!(monomial_key(&vars, &[0, 0]), "1");
        assert_eq!(monomial_key(&vars, &[1, 0]), "x");
        assert_eq!(monomial_key(&vars, &[2, 1]), "x^2*y");
        assert_eq!(monomial_key(&vars, &[-2, 0]), "x^-2");
    }

    #[test]
    fn series_json_sorts_and_bounds() {
        let s = TruncatedSeries::monomial(&["x"], &[2], rat(-23, 48))
            .add(&TruncatedSeries::monomial(&["x"], &[4], rat_int(7)));
        let v = series_json(&s, None);
        assert_eq!(v["x^2"], "-23/48");
        assert_eq!(v["x^4"], "7");
        let bounded = series_json(&s, Some(2));
        assert_eq!(bounded["x^2"], "-23/48");
        assert!(bounded.get("x^4").is_none());
    }
}
