//! JSON schemas for quivers, dimension vectors, orbit multiplicities,
//! representations, and polynomials. serde_json maps are sorted, so output
//! is byte-stable for fixed input.

use crate::collapse::QuiverClassResult;
use crate::laurent::LaurentPoly;
use crate::linalg::RatMat;
use crate::poly::{MultiPoly, VarSet};
use crate::quiver::{DimVec, Multiplicities, Quiver, RawQuiver, RootOrder};
use crate::rep::Representation;
use crate::rootsys::Root;
use crate::{Error, Result};
use num_rational::BigRational;
use serde_json::{json, Map, Value};
use std::collections::BTreeMap;

fn bad(msg: impl Into<String>) -> Error {
    Error::InvalidInput(msg.into())
}

/// `{"vertices":[1,2,3],"arrows":[{"tail":1,"head":2}]}`
pub fn parse_quiver(v: &Value) -> Result<RawQuiver> {
    let obj = v.as_object().ok_or_else(|| bad("quiver must be an object"))?;
    let vertices: Vec<i64> = obj
        .get("vertices")
        .and_then(Value::as_array)
        .ok_or_else(|| bad("missing \"vertices\" array"))?
        .iter()
        .map(|x| x.as_i64().ok_or_else(|| bad("vertex labels must be integers")))
        .collect::<Result<_>>()?;
    let arrows: Vec<(i64, i64)> = obj
        .get("arrows")
        .and_then(Value::as_array)
        .ok_or_else(|| bad("missing \"arrows\" array"))?
        .iter()
        .map(|a| {
            let a = a.as_object().ok_or_else(|| bad("arrow must be an object"))?;
            let tail = a.get("tail").and_then(Value::as_i64).ok_or_else(|| bad("arrow missing tail"))?;
            let head = a.get("head").and_then(Value::as_i64).ok_or_else(|| bad("arrow missing head"))?;
            Ok((tail, head))
        })
        .collect::<Result<_>>()?;
    Ok(RawQuiver { vertices, arrows })
}

pub fn quiver_to_json(q: &Quiver) -> Value {
    json!({
        "series": q.diagram.series.to_string(),
        "rank": q.diagram.rank,
        "vertices": (1..=q.rank()).collect::<Vec<usize>>(),
        "arrows": q.arrows.iter().map(|&(t, h)| json!({"tail": t + 1, "head": h + 1})).collect::<Vec<_>>(),
    })
}

/// Dimension vector: either an object keyed by original vertex labels or an
/// array parallel to the quiver file's vertex list.
pub fn parse_dims(v: &Value, raw: &RawQuiver, relabel: &BTreeMap<i64, usize>) -> Result<DimVec> {
    let n = raw.vertices.len();
    let mut dims = vec![0usize; n];
    match v {
        Value::Array(entries) => {
            if entries.len() != n {
                return Err(bad(format!("expected {n} dimensions, got {}", entries.len())));
            }
            for (label, entry) in raw.vertices.iter().zip(entries) {
                let d = entry.as_u64().ok_or_else(|| bad("dimensions must be nonnegative integers"))?;
                dims[relabel[label]] = d as usize;
            }
        }
        Value::Object(map) => {
            if map.len() != n {
                return Err(bad(format!("expected {n} dimensions, got {}", map.len())));
            }
            for (key, entry) in map {
                let label: i64 = key.parse().map_err(|_| bad(format!("bad vertex label {key:?}")))?;
                let canon = *relabel.get(&label).ok_or_else(|| bad(format!("unknown vertex {label}")))?;
                let d = entry.as_u64().ok_or_else(|| bad("dimensions must be nonnegative integers"))?;
                dims[canon] = d as usize;
            }
        }
        _ => return Err(bad("dimension vector must be an array or an object")),
    }
    Ok(DimVec(dims))
}

/// Multiplicities keyed by root coefficient strings in canonical vertex
/// order, e.g. `{"0110": 1}`.
pub fn parse_multiplicities(v: &Value, ro: &RootOrder) -> Result<Multiplicities> {
    let obj = v.as_object().ok_or_else(|| bad("orbit must be an object keyed by root strings"))?;
    let nroots = ro.n_roots();
    let mut m = vec![0usize; nroots];
    for (key, entry) in obj {
        let coeffs: Vec<i64> = key
            .chars()
            .map(|c| c.to_digit(10).map(|d| d as i64).ok_or_else(|| bad(format!("bad root key {key:?}"))))
            .collect::<Result<_>>()?;
        let root = Root(coeffs);
        let k = ro
            .beta_index(&root)
            .ok_or_else(|| Error::InvalidInput(format!("{key} is not a positive root of this quiver")))?;
        let mult = entry.as_u64().ok_or_else(|| bad("multiplicities must be nonnegative integers"))?;
        m[k] = mult as usize;
    }
    Ok(Multiplicities(m))
}

pub fn multiplicities_to_json(m: &Multiplicities, ro: &RootOrder) -> Value {
    let mut map = Map::new();
    for (k, &mk) in m.0.iter().enumerate() {
        if mk > 0 {
            map.insert(ro.beta(k).coeff_string(), json!(mk));
        }
    }
    Value::Object(map)
}

fn parse_rational(s: &str) -> Result<BigRational> {
    s.parse::<BigRational>().map_err(|_| bad(format!("bad rational {s:?}")))
}

/// Representation JSON:
/// `{"dims": {"1": 2, ...}, "maps": [{"tail":1,"head":2,"matrix":[["1","0"],["1/2","1"]]}]}`
/// with matrices of shape dim(tail) x dim(head) acting on row vectors.
pub fn parse_representation(
    v: &Value,
    q: &Quiver,
    raw: &RawQuiver,
    relabel: &BTreeMap<i64, usize>,
) -> Result<Representation> {
    let obj = v.as_object().ok_or_else(|| bad("representation must be an object"))?;
    let dims_v = obj.get("dims").ok_or_else(|| bad("missing \"dims\""))?;
    let dims = parse_dims(dims_v, raw, relabel)?;
    let mut rep = Representation::zero_rep(q.arrows.clone(), dims.0.clone());
    let maps = obj.get("maps").and_then(Value::as_array).ok_or_else(|| bad("missing \"maps\" array"))?;
    for entry in maps {
        let e = entry.as_object().ok_or_else(|| bad("map entry must be an object"))?;
        let tail = e.get("tail").and_then(Value::as_i64).ok_or_else(|| bad("map missing tail"))?;
        let head = e.get("head").and_then(Value::as_i64).ok_or_else(|| bad("map missing head"))?;
        let t = *relabel.get(&tail).ok_or_else(|| bad(format!("unknown vertex {tail}")))?;
        let h = *relabel.get(&head).ok_or_else(|| bad(format!("unknown vertex {head}")))?;
        let idx = q
            .arrows
            .iter()
            .position(|&a| a == (t, h))
            .ok_or_else(|| bad(format!("no arrow {tail} -> {head} in the quiver")))?;
        let rows = e.get("matrix").and_then(Value::as_array).ok_or_else(|| bad("map missing matrix"))?;
        if rows.len() != dims.0[t] {
            return Err(Error::DimensionMismatch(format!(
                "matrix for {tail}->{head} has {} rows, want {}",
                rows.len(),
                dims.0[t]
            )));
        }
        let mut mat = RatMat::zeros(dims.0[t], dims.0[h]);
        for (r, row) in rows.iter().enumerate() {
            let row = row.as_array().ok_or_else(|| bad("matrix row must be an array"))?;
            if row.len() != dims.0[h] {
                return Err(Error::DimensionMismatch(format!(
                    "matrix for {tail}->{head} has a row of length {}, want {}",
                    row.len(),
                    dims.0[h]
                )));
            }
            for (c, cell) in row.iter().enumerate() {
                let s = cell.as_str().ok_or_else(|| bad("matrix entries are rational strings"))?;
                mat[(r, c)] = parse_rational(s)?;
            }
        }
        rep.maps[idx] = mat;
    }
    rep.check_shapes()?;
    Ok(rep)
}

/// Polynomial terms as a list of `{coeff, exponents}` in descending
/// graded-lexicographic order; exponents keyed by `x^(i)_k` names.
pub fn poly_to_json(p: &MultiPoly, vs: &VarSet) -> Value {
    let terms: Vec<Value> = p
        .terms
        .iter()
        .rev()
        .map(|(mono, coeff)| {
            let mut exps = Map::new();
            for (k, &e) in mono.0.iter().enumerate() {
                if e != 0 {
                    exps.insert(vs.var(k).name(), json!(e));
                }
            }
            json!({"coeff": coeff.to_string(), "exponents": Value::Object(exps)})
        })
        .collect();
    Value::Array(terms)
}

pub fn laurent_to_json(p: &LaurentPoly, vs: &VarSet) -> Value {
    let terms: Vec<Value> = p
        .terms
        .iter()
        .rev()
        .map(|(mono, coeff)| {
            let mut exps = Map::new();
            for (k, &e) in mono.0.iter().enumerate() {
                if e != 0 {
                    exps.insert(vs.var(k).t_name(), json!(e));
                }
            }
            json!({"coeff": coeff.to_string(), "exponents": Value::Object(exps)})
        })
        .collect();
    Value::Array(terms)
}

pub fn class_result_to_json(r: &QuiverClassResult, vs: &VarSet) -> Value {
    let mut out = Map::new();
    out.insert("multidegree".into(), poly_to_json(&r.multidegree, vs));
    if let Some(k) = &r.kpolynomial {
        out.insert("kpolynomial".into(), laurent_to_json(k, vs));
    }
    out.insert("codim".into(), json!(r.codim));
    out.insert("operators_applied".into(), json!(r.operators_applied));
    out.insert("skipped".into(), json!(r.skipped));
    out.insert("certified".into(), json!(r.certified));
    out.insert("warnings".into(), json!(r.warnings));
    Value::Object(out)
}

/// DOT rendering of an AR quiver: one node per root, ranked by column.
pub fn ar_quiver_dot(ar: &crate::quiver::ArQuiver, ro: &RootOrder) -> String {
    let mut out = String::from("digraph ar {\n  rankdir=LR;\n");
    let ncols = ar.placements.iter().map(|&(_, c)| c + 1).max().unwrap_or(0);
    for col in 0..ncols {
        out.push_str("  { rank=same;");
        for (j, &(_, c)) in ar.placements.iter().enumerate() {
            if c == col {
                out.push_str(&format!(" g{};", j + 1));
            }
        }
        out.push_str(" }\n");
    }
    for (j, &(row, col)) in ar.placements.iter().enumerate() {
        out.push_str(&format!(
            "  g{} [label=\"{} (row {}, col {})\"];\n",
            j + 1,
            ro.gammas[j],
            row + 1,
            col + 1
        ));
    }
    for &(j, k) in &ar.edges {
        out.push_str(&format!("  g{} -> g{};\n", j + 1, k + 1));
    }
    out.push_str("}\n");
    out
}

/// DOT rendering of a Hasse diagram over orbit labels.
pub fn poset_dot(labels: &[String], edges: &[(usize, usize)]) -> String {
    let mut out = String::from("digraph poset {\n  rankdir=BT;\n");
    for (i, label) in labels.iter().enumerate() {
        out.push_str(&format!("  o{} [label=\"{}\"];\n", i, label));
    }
    for &(a, b) in edges {
        out.push_str(&format!("  o{} -> o{};\n", a, b));
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::{validate_dynkin, QuiverContext};

    #[test]
    fn quiver_round_trip() {
        let v: Value = serde_json::from_str(
            r#"{"vertices":[1,2,3],"arrows":[{"tail":1,"head":2},{"tail":2,"head":3}]}"#,
        )
        .unwrap();
        let raw = parse_quiver(&v).unwrap();
        let (q, relabel) = validate_dynkin(&raw).unwrap();
        assert_eq!(q, Quiver::linear_a(3));
        assert_eq!(relabel[&1], 0);
        let out = quiver_to_json(&q);
        assert_eq!(out["series"], "A");
        assert_eq!(out["rank"], 3);
    }

    #[test]
    fn dims_by_object_and_array() {
        let raw = RawQuiver { vertices: vec![1, 2], arrows: vec![(1, 2)] };
        let (_, relabel) = validate_dynkin(&raw).unwrap();
        let v1: Value = serde_json::from_str(r#"{"1":2,"2":3}"#).unwrap();
        let v2: Value = serde_json::from_str("[2,3]").unwrap();
        assert_eq!(parse_dims(&v1, &raw, &relabel).unwrap(), DimVec(vec![2, 3]));
        assert_eq!(parse_dims(&v2, &raw, &relabel).unwrap(), DimVec(vec![2, 3]));
        let vbad: Value = serde_json::from_str("[2]").unwrap();
        assert!(parse_dims(&vbad, &raw, &relabel).is_err());
    }

    #[test]
    fn multiplicities_round_trip() {
        let ctx = QuiverContext::new(Quiver::linear_a(3));
        let v: Value = serde_json::from_str(r#"{"110":2,"011":1,"001":1}"#).unwrap();
        let m = parse_multiplicities(&v, &ctx.root_order).unwrap();
        let back = multiplicities_to_json(&m, &ctx.root_order);
        assert_eq!(back, v);
        let vbad: Value = serde_json::from_str(r#"{"200":1}"#).unwrap();
        assert!(parse_multiplicities(&vbad, &ctx.root_order).is_err());
    }

    #[test]
    fn representation_parsing_checks_shapes() {
        let raw = RawQuiver { vertices: vec![1, 2], arrows: vec![(1, 2)] };
        let (q, relabel) = validate_dynkin(&raw).unwrap();
        let v: Value = serde_json::from_str(
            r#"{"dims":{"1":1,"2":2},"maps":[{"tail":1,"head":2,"matrix":[["1","3/2"]]}]}"#,
        )
        .unwrap();
        let rep = parse_representation(&v, &q, &raw, &relabel).unwrap();
        assert_eq!(rep.dims, vec![1, 2]);
        let vbad: Value = serde_json::from_str(
            r#"{"dims":{"1":1,"2":2},"maps":[{"tail":1,"head":2,"matrix":[["1"]]}]}"#,
        )
        .unwrap();
        assert!(parse_representation(&vbad, &q, &raw, &relabel).is_err());
    }

    #[test]
    fn polynomial_json_is_sorted_and_stable() {
        let vs = VarSet::for_dims(&[1, 1]);
        let p = MultiPoly::from_linear(&crate::poly::LinearForm::difference(2, 0, 1));
        let v = poly_to_json(&p, &vs);
        let s = serde_json::to_string(&v).unwrap();
        assert_eq!(
            s,
            r#"[{"coeff":"1","exponents":{"x^(1)_1":1}},{"coeff":"-1","exponents":{"x^(2)_1":1}}]"#
        );
    }
}
