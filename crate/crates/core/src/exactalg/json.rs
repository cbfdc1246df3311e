//! Canonical JSON: variables sorted by name, every rational written as "num/den".

use std::collections::BTreeMap;

use serde_json::{json, Value};

use super::frac::FactoredRat;
use super::monomial::{Exp, Monomial};
use super::poly::{LaurentPoly, Rat};
use super::series::Series;

pub fn rat_str(c: &Rat) -> String {
    format!("{}/{}", c.numer(), c.denom())
}

pub fn exp_str(e: &Exp) -> String {
    format!("{}/{}", e.numer(), e.denom())
}

pub fn monomial_json(m: &Monomial) -> Value {
    let map: BTreeMap<String, String> = m.iter().map(|(v, e)| (v.name(), exp_str(e))).collect();
    json!(map)
}

pub fn poly_json(p: &LaurentPoly) -> Value {
    let mut terms: Vec<(String, Value)> = p
        .iter()
        .map(|(m, c)| {
            let mono = monomial_json(m);
            (mono.to_string(), json!({ "mono": mono, "coeff": rat_str(c) }))
        })
        .collect();
    terms.sort_by(|a, b| a.0.cmp(&b.0));
    Value::Array(terms.into_iter().map(|(_, v)| v).collect())
}

pub fn frac_json(x: &FactoredRat) -> Value {
    let mut den: Vec<(String, Value)> = x
        .den()
        .iter()
        .map(|(m, k)| {
            let mono = monomial_json(m);
            (mono.to_string(), json!({ "one_minus": mono, "mult": k }))
        })
        .collect();
    den.sort_by(|a, b| a.0.cmp(&b.0));
    json!({
        "unit": monomial_json(x.unit()),
        "num": poly_json(x.num()),
        "den": den.into_iter().map(|(_, v)| v).collect::<Vec<_>>(),
    })
}

pub fn qseries_json(s: &Series<FactoredRat>) -> Value {
    json!({
        "cap": s.cap().map(|c| exp_str(&c)),
        "terms": s.iter().map(|(e, c)| json!({ "exp": exp_str(e), "coeff": frac_json(c) })).collect::<Vec<_>>(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::monomial::{exp_frac, Var};

    #[test]
    fn variables_sorted_by_name() {
        let m = Monomial::from_pairs([(Var::T1, exp_frac(1, 2)), (Var::E(2), exp_frac(-1, 1))]);
        assert_eq!(monomial_json(&m).to_string(), r#"{"e2":"-1/1","t1":"1/2"}"#);
    }
}
