//! Browser bindings for the demo page in `www/`.
//!
//! Each binding returns a JSON string. The plain functions are usable and
//! tested natively; the `#[wasm_bindgen]` wrappers only convert errors.

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use ratspec::egf::EgfJson;
use ratspec::groupoid::parse_groupoid_json;
use ratspec::numbers;

/// Largest order the page will request, to keep the tab responsive.
pub const MAX_NUMBER_ORDER: usize = 20;
pub const MAX_POLY_ORDER: usize = 8;
pub const MAX_EGF_ORDER: usize = 12;

fn to_string(e: ratspec::Error) -> String {
    e.to_string()
}

/// Every available route for `kind` ("bernoulli" or "euler"), plus whether they agree.
pub fn number_tables(kind: &str, order: usize, poly: bool) -> Result<String, String> {
    let cap = if poly { MAX_POLY_ORDER } else { MAX_NUMBER_ORDER };
    if order > cap {
        return Err(format!("order {order} exceeds the demo limit {cap}"));
    }
    let (tables, agree): (Vec<Value>, bool) = match (kind, poly) {
        ("bernoulli", false) => {
            let ts = [
                numbers::bernoulli_species(order).map_err(to_string)?,
                numbers::bernoulli_series(order).map_err(to_string)?,
                numbers::bernoulli_closed_formula(order).map_err(to_string)?,
                numbers::bernoulli_oracle(order),
            ];
            (ts.iter().map(|t| json!(t)).collect(), ts.windows(2).all(|w| w[0].values == w[1].values))
        }
        ("euler", false) => {
            let ts = [
                numbers::euler_numbers_species(order).map_err(to_string)?,
                numbers::euler_numbers_series(order).map_err(to_string)?,
                numbers::euler_numbers_oracle(order),
            ];
            (ts.iter().map(|t| json!(t)).collect(), ts.windows(2).all(|w| w[0].values == w[1].values))
        }
        ("bernoulli", true) => {
            let exp = ratspec::builtins::make(&ratspec::builtins::Builtin::Exp).map_err(to_string)?;
            let f = ratspec::egf::TruncatedEGF::exp_series(2 * order + 1);
            let ts = [
                numbers::bernoulli_polynomials_species(&exp, 1, order).map_err(to_string)?,
                numbers::bernoulli_polynomials_series(&f, 1, order).map_err(to_string)?,
                numbers::bernoulli_polynomials_oracle(order),
            ];
            (ts.iter().map(polys_json).collect(), ts.windows(2).all(|w| w[0].polys == w[1].polys))
        }
        ("euler", true) => {
            let ts = [
                numbers::euler_polynomials_species(order).map_err(to_string)?,
                numbers::euler_polynomials_series(order).map_err(to_string)?,
                numbers::euler_polynomials_oracle(order),
            ];
            (ts.iter().map(polys_json).collect(), ts.windows(2).all(|w| w[0].polys == w[1].polys))
        }
        _ => return Err(format!("unknown kind: {kind}")),
    };
    Ok(json!({ "tables": tables, "match": agree }).to_string())
}

fn polys_json(t: &numbers::PolynomialTable) -> Value {
    let display: Vec<String> = t.polys.iter().map(|p| p.to_string()).collect();
    json!({ "route": t.route, "polys": t.polys, "display": display })
}

/// Coefficient table of a species expression.
pub fn egf_table(expr: &str, order: usize) -> Result<String, String> {
    if order > MAX_EGF_ORDER {
        return Err(format!("order {order} exceeds the demo limit {MAX_EGF_ORDER}"));
    }
    let species = ratspec::expr::species_from_str(expr).map_err(to_string)?;
    let series = species.egf(order).map_err(to_string)?;
    Ok(json!(EgfJson::from(&series)).to_string())
}

/// Cardinality of a JSON groupoid or action description.
pub fn cardinality(description: &str) -> Result<String, String> {
    let g = parse_groupoid_json(description).map_err(to_string)?;
    Ok(json!({ "cardinality": g.cardinality() }).to_string())
}

#[wasm_bindgen(js_name = numberTables)]
pub fn number_tables_js(kind: &str, order: usize, poly: bool) -> Result<String, JsError> {
    number_tables(kind, order, poly).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = egfTable)]
pub fn egf_table_js(expr: &str, order: usize) -> Result<String, JsError> {
    egf_table(expr, order).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = cardinality)]
pub fn cardinality_js(description: &str) -> Result<String, JsError> {
    cardinality(description).map_err(|e| JsError::new(&e))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: &str) -> Value {
        serde_json::from_str(s).unwrap()
    }

    #[test]
    fn bernoulli_routes_agree() {
        let v = parse(&number_tables("bernoulli", 6, false).unwrap());
        assert_eq!(v["match"], true);
        assert_eq!(v["tables"].as_array().unwrap().len(), 4);
        assert_eq!(v["tables"][0]["values"][2], "1/6");
    }

    #[test]
    fn polynomial_tables() {
        let v = parse(&number_tables("euler", 3, true).unwrap());
        assert_eq!(v["match"], true);
        assert_eq!(v["tables"][0]["display"][1], "x - 1/2");
        let v = parse(&number_tables("bernoulli", 2, true).unwrap());
        assert_eq!(v["tables"][2]["display"][2], "x^2 - x + 1/6");
    }

    #[test]
    fn egf_and_card() {
        let v = parse(&egf_table("binpow(1,2)", 3).unwrap());
        assert_eq!(v["coeffs"][3][1], "-15/8");
        let v = parse(&cardinality(r#"{"components": [[1,2],[1,2],[1,2]]}"#).unwrap());
        assert_eq!(v["cardinality"], "3/2");
    }

    #[test]
    fn errors_are_messages() {
        assert!(egf_table("sum(X,", 3).unwrap_err().contains("parse error at 6"));
        assert!(number_tables("bernoulli", 40, false).is_err());
        assert!(number_tables("catalan", 4, false).is_err());
        assert!(cardinality("{").is_err());
    }
}
