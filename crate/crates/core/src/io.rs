//! JSON formats for algebras, elements, systems, representations, labelled
//! graphs and pair lattices.
//!
//! A finite system looks like
//!
//! ```json
//! {
//!   "algebra": {"type": "finite", "atoms": ["v", "w"]},
//!   "labels": ["e"],
//!   "actions": {"e": {"dual": {"w": "v"}}},
//!   "ideals": {"e": {"principal": ["w"]}},
//!   "relative": {"principal": ["v"]}
//! }
//! ```
//!
//! `ideals` defaults to the range ideals and `relative` to `B_reg`. Shape
//! problems are reported as [`Error::Parse`]; everything that parses but
//! makes no sense (unknown atoms, `R_α ⊄ I_α`, …) gets its own variant.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use num::complex::Complex64;
use serde_json::{json, Map, Value as Json};

use crate::boolean::{ActionForm, Algebra, AtomSet, Element, FinCofin, Ideal, IdealForm, Value};
use crate::constructions::remark::builtin_bds;
use crate::constructions::LabelledGraph;
use crate::dynamics::{BooleanDynamicalSystem, GeneralizedBDS, RelativeGBDS};
use crate::error::{Error, Result};
use crate::lattice::PairLattice;
use crate::repr::{CMatrix, ConcreteRep};

fn parse_err(what: impl Into<String>) -> Error {
    Error::Parse(what.into())
}

fn field<'a>(obj: &'a Json, key: &str, ctx: &str) -> Result<&'a Json> {
    obj.get(key)
        .ok_or_else(|| parse_err(format!("{ctx}: missing field `{key}`")))
}

fn as_str<'a>(v: &'a Json, ctx: &str) -> Result<&'a str> {
    v.as_str().ok_or_else(|| parse_err(format!("{ctx}: expected a string")))
}

fn as_array<'a>(v: &'a Json, ctx: &str) -> Result<&'a Vec<Json>> {
    v.as_array().ok_or_else(|| parse_err(format!("{ctx}: expected an array")))
}

fn as_object<'a>(v: &'a Json, ctx: &str) -> Result<&'a Map<String, Json>> {
    v.as_object().ok_or_else(|| parse_err(format!("{ctx}: expected an object")))
}

fn strings(v: &Json, ctx: &str) -> Result<Vec<String>> {
    as_array(v, ctx)?
        .iter()
        .map(|x| as_str(x, ctx).map(str::to_string))
        .collect()
}

fn naturals(v: &Json, ctx: &str) -> Result<BTreeSet<u64>> {
    as_array(v, ctx)?
        .iter()
        .map(|x| x.as_u64().ok_or_else(|| parse_err(format!("{ctx}: expected natural numbers"))))
        .collect()
}

pub fn parse_json(text: &str) -> Result<Json> {
    Ok(serde_json::from_str(text)?)
}

/// Pretty JSON with a trailing newline.
pub fn to_pretty(v: &Json) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values always serialize");
    s.push('\n');
    s
}

pub fn algebra_to_json(alg: &Algebra) -> Json {
    match alg {
        Algebra::Finite(f) => json!({"type": "finite", "atoms": f.labels()}),
        Algebra::FinSubsets => json!({"type": "finsubsets"}),
        Algebra::FinCofin => json!({"type": "fincofin"}),
        Algebra::Product(l, r) => json!({
            "type": "product",
            "left": algebra_to_json(l),
            "right": algebra_to_json(r),
        }),
    }
}

pub fn algebra_from_json(v: &Json) -> Result<Arc<Algebra>> {
    let ctx = "algebra";
    match as_str(field(v, "type", ctx)?, ctx)? {
        "finite" => Algebra::finite(&strings(field(v, "atoms", ctx)?, "algebra atoms")?),
        "finsubsets" => Ok(Algebra::fin_subsets()),
        "fincofin" => Ok(Algebra::fin_cofin()),
        "product" => Ok(Algebra::product(
            algebra_from_json(field(v, "left", ctx)?)?,
            algebra_from_json(field(v, "right", ctx)?)?,
        )),
        other => Err(parse_err(format!("unknown algebra type `{other}`"))),
    }
}

fn value_to_json(alg: &Algebra, v: &Value) -> Json {
    match (alg, v) {
        (Algebra::Finite(f), Value::Atoms(s)) => json!(f.labels_of(*s)),
        (_, Value::Finite(s)) => json!(s),
        (_, Value::FinCofin(fc)) => json!({
            "mode": if fc.cofinite { "cofinite" } else { "finite" },
            "support": fc.support,
        }),
        (Algebra::Product(l, r), Value::Pair(a, b)) => json!({
            "left": value_to_json(l, a),
            "right": value_to_json(r, b),
        }),
        _ => Json::Null,
    }
}

fn value_from_json(alg: &Algebra, v: &Json) -> Result<Value> {
    match alg {
        Algebra::Finite(f) => Ok(Value::Atoms(f.mask_of(&strings(v, "element")?)?)),
        Algebra::FinSubsets => Ok(Value::Finite(naturals(v, "finite subset")?)),
        Algebra::FinCofin => {
            let ctx = "finite/cofinite subset";
            let support = naturals(field(v, "support", ctx)?, ctx)?;
            match as_str(field(v, "mode", ctx)?, ctx)? {
                "finite" => Ok(Value::FinCofin(FinCofin::finite(support))),
                "cofinite" => Ok(Value::FinCofin(FinCofin::cofinite(support))),
                other => Err(parse_err(format!("{ctx}: unknown mode `{other}`"))),
            }
        }
        Algebra::Product(l, r) => Ok(Value::Pair(
            Box::new(value_from_json(l, field(v, "left", "pair")?)?),
            Box::new(value_from_json(r, field(v, "right", "pair")?)?),
        )),
    }
}

pub fn element_to_json(e: &Element) -> Json {
    value_to_json(e.algebra(), e.value())
}

pub fn element_from_json(alg: &Arc<Algebra>, v: &Json) -> Result<Element> {
    Element::new(alg.clone(), value_from_json(alg, v)?)
}

/// `{"principal": element}` or `{"range": label}`. Rule-based ideals other
/// than range ideals have no JSON form.
pub fn ideal_to_json(i: &Ideal) -> Result<Json> {
    match i.form() {
        IdealForm::Principal(g) => Ok(json!({"principal": element_to_json(g)})),
        IdealForm::Range { label, .. } => Ok(json!({"range": label})),
        IdealForm::Predicate(rule) => Err(Error::UnsupportedIdealForm(format!(
            "`{}` has no JSON form",
            rule.description
        ))),
    }
}

fn ideal_from_json(bds: &BooleanDynamicalSystem, v: &Json) -> Result<Ideal> {
    let ctx = "ideal";
    let obj = as_object(v, ctx)?;
    if let Some(g) = obj.get("principal") {
        return Ok(Ideal::principal(element_from_json(bds.algebra(), g)?));
    }
    if let Some(l) = obj.get("range") {
        return bds.range_ideal(bds.label_index(as_str(l, ctx)?)?);
    }
    Err(parse_err("ideal: expected `principal` or `range`"))
}

/// Writes a system. On infinite backends the relative ideal is written as
/// `"regular"` when it is the closed-form regular ideal.
pub fn system_to_json(sys: &RelativeGBDS) -> Result<Json> {
    let bds = sys.bds();
    let alg = sys.algebra();
    let mut actions = Map::new();
    let mut ideals = Map::new();
    for (l, label) in bds.labels().iter().enumerate() {
        let a = match bds.action(l).form() {
            ActionForm::Dual(d) => {
                let f = alg.as_finite().expect("dual maps live on finite algebras");
                let map: BTreeMap<&str, &str> = d
                    .images()
                    .iter()
                    .enumerate()
                    .filter_map(|(x, y)| y.map(|y| (f.label(x), f.label(y))))
                    .collect();
                json!({"dual": map})
            }
            ActionForm::Callable(c) => match &c.builtin {
                Some(name) => json!({"builtin": name}),
                None => {
                    return Err(Error::UnsupportedBackend(format!(
                        "action `{}` is not a builtin and cannot be written",
                        c.description
                    )))
                }
            },
        };
        actions.insert(label.clone(), a);
        ideals.insert(label.clone(), ideal_to_json(sys.generalized().ideal(l))?);
    }
    let relative = match sys.relative().form() {
        IdealForm::Predicate(rule)
            if !alg.is_finite() && bds.regular_ideal()?.describe() == rule.description =>
        {
            json!("regular")
        }
        _ => ideal_to_json(sys.relative())?,
    };
    Ok(json!({
        "algebra": algebra_to_json(alg),
        "labels": bds.labels(),
        "actions": actions,
        "ideals": ideals,
        "relative": relative,
    }))
}

pub fn system_from_json(v: &Json) -> Result<RelativeGBDS> {
    let alg = algebra_from_json(field(v, "algebra", "system")?)?;
    let labels = strings(field(v, "labels", "system")?, "labels")?;
    let actions = as_object(field(v, "actions", "system")?, "actions")?;
    for k in actions.keys() {
        if !labels.contains(k) {
            return Err(Error::UnknownLabel(k.clone()));
        }
    }
    let mut builtins = Vec::new();
    let mut acts = Vec::new();
    for label in &labels {
        let entry = actions
            .get(label)
            .ok_or_else(|| parse_err(format!("actions: missing label `{label}`")))?;
        let ctx = format!("action `{label}`");
        if let Some(map) = entry.get("dual") {
            let map: BTreeMap<String, String> = as_object(map, &ctx)?
                .iter()
                .map(|(k, v)| Ok((k.clone(), as_str(v, &ctx)?.to_string())))
                .collect::<Result<_>>()?;
            acts.push((label.clone(), crate::boolean::Action::dual_from_labels(&alg, &map)?));
        } else if let Some(name) = entry.get("builtin") {
            builtins.push((label.clone(), as_str(name, &ctx)?.to_string()));
        } else {
            return Err(parse_err(format!("{ctx}: expected `dual` or `builtin`")));
        }
    }
    let bds = match (builtins.as_slice(), acts.is_empty()) {
        ([], _) => BooleanDynamicalSystem::new(alg.clone(), acts)?,
        ([(label, name)], true) => builtin_bds(&alg, label, name)?,
        _ => {
            return Err(Error::UnsupportedBackend(
                "a builtin action must be the only action of its system".into(),
            ))
        }
    };
    let ideals = match v.get("ideals") {
        None => None,
        Some(obj) => {
            let obj = as_object(obj, "ideals")?;
            for k in obj.keys() {
                if !labels.contains(k) {
                    return Err(Error::UnknownLabel(k.clone()));
                }
            }
            Some(
                (0..labels.len())
                    .map(|l| match obj.get(&labels[l]) {
                        Some(i) => ideal_from_json(&bds, i),
                        None => bds.range_ideal(l),
                    })
                    .collect::<Result<Vec<_>>>()?,
            )
        }
    };
    let gen = match ideals {
        None => GeneralizedBDS::with_range_ideals(bds)?,
        Some(i) => GeneralizedBDS::new(bds, i)?,
    };
    match v.get("relative") {
        None => RelativeGBDS::with_regular(gen),
        Some(Json::String(s)) if s == "regular" => RelativeGBDS::with_regular(gen),
        Some(j) => {
            let j = ideal_from_json(gen.base(), j)?;
            RelativeGBDS::new(gen, j)
        }
    }
}

pub fn parse_system(text: &str) -> Result<RelativeGBDS> {
    system_from_json(&parse_json(text)?)
}

fn complex_from_json(v: &Json, ctx: &str) -> Result<Complex64> {
    if let Some(x) = v.as_f64() {
        return Ok(Complex64::new(x, 0.0));
    }
    match v.as_array().map(Vec::as_slice) {
        Some([re, im]) => match (re.as_f64(), im.as_f64()) {
            (Some(re), Some(im)) => Ok(Complex64::new(re, im)),
            _ => Err(parse_err(format!("{ctx}: expected [re, im]"))),
        },
        _ => Err(parse_err(format!("{ctx}: expected a number or [re, im]"))),
    }
}

fn matrix_from_json(v: &Json, dim: usize, ctx: &str) -> Result<CMatrix> {
    let rows = as_array(v, ctx)?;
    if rows.len() != dim {
        return Err(Error::ShapeError(format!("{ctx}: {} rows, expected {dim}", rows.len())));
    }
    let mut m = CMatrix::zeros(dim, dim);
    for (i, row) in rows.iter().enumerate() {
        let row = as_array(row, ctx)?;
        if row.len() != dim {
            return Err(Error::ShapeError(format!(
                "{ctx}: row {i} has {} entries, expected {dim}",
                row.len()
            )));
        }
        for (j, x) in row.iter().enumerate() {
            m[(i, j)] = complex_from_json(x, ctx)?;
        }
    }
    Ok(m)
}

pub fn matrix_to_json(m: &CMatrix) -> Json {
    Json::Array(
        m.row_iter()
            .map(|r| {
                Json::Array(
                    r.iter()
                        .map(|z| if z.im == 0.0 { json!(z.re) } else { json!([z.re, z.im]) })
                        .collect(),
                )
            })
            .collect(),
    )
}

/// `{"dim": n, "P": {atom: matrix}, "S": {"label|atom": matrix}}`, matrices
/// as arrays of rows with real entries or `[re, im]` pairs.
pub fn rep_from_json(sys: &RelativeGBDS, v: &Json) -> Result<ConcreteRep> {
    let f = sys
        .algebra()
        .as_finite()
        .ok_or_else(|| Error::UnsupportedBackend("matrix representations need a finite backend".into()))?;
    let dim = field(v, "dim", "representation")?
        .as_u64()
        .ok_or_else(|| parse_err("representation: `dim` must be a natural number"))? as usize;
    let pobj = as_object(field(v, "P", "representation")?, "P")?;
    let mut p = vec![None; f.len()];
    for (atom, m) in pobj {
        p[f.atom_index(atom)?] = Some(matrix_from_json(m, dim, &format!("P_{atom}"))?);
    }
    let p = p
        .into_iter()
        .enumerate()
        .map(|(a, m)| m.ok_or_else(|| Error::ShapeError(format!("missing P for atom `{}`", f.label(a)))))
        .collect::<Result<Vec<_>>>()?;
    let mut s = BTreeMap::new();
    for (key, m) in as_object(field(v, "S", "representation")?, "S")? {
        let (label, atom) = key
            .split_once('|')
            .ok_or_else(|| parse_err(format!("S key `{key}` is not of the form label|atom")))?;
        let l = sys.bds().label_index(label)?;
        s.insert((l, f.atom_index(atom)?), matrix_from_json(m, dim, &format!("S_{key}"))?);
    }
    ConcreteRep::new(sys, dim, p, s)
}

pub fn rep_to_json(sys: &RelativeGBDS, r: &ConcreteRep) -> Result<Json> {
    let f = sys
        .algebra()
        .as_finite()
        .ok_or_else(|| Error::UnsupportedBackend("matrix representations need a finite backend".into()))?;
    let p: Map<String, Json> = (0..f.len())
        .map(|a| (f.label(a).to_string(), matrix_to_json(r.atom_projection(a))))
        .collect();
    let s: Map<String, Json> = r
        .isometries()
        .map(|(&(l, b), m)| (format!("{}|{}", sys.labels()[l], f.label(b)), matrix_to_json(m)))
        .collect();
    Ok(json!({"dim": r.dim(), "P": p, "S": s}))
}

pub fn graph_from_json(v: &Json) -> Result<LabelledGraph> {
    Ok(serde_json::from_value(v.clone())?)
}

pub fn graph_to_json(g: &LabelledGraph) -> Json {
    serde_json::to_value(g).expect("graphs always serialize")
}

fn atoms_json(sys: &RelativeGBDS, s: AtomSet) -> Json {
    match sys.algebra().as_finite() {
        Some(f) => json!(f.labels_of(s)),
        None => json!(s.to_vec()),
    }
}

/// `{"pairs": [{"H": [...], "S": [...]}], "order": [[i, j]], "covers": [[i, j]]}`
/// where `order` lists every strictly comparable pair and `covers` its
/// transitive reduction.
pub fn lattice_to_json(sys: &RelativeGBDS, lat: &PairLattice) -> Json {
    let pairs: Vec<Json> = lat
        .pairs()
        .iter()
        .map(|p| json!({"H": atoms_json(sys, p.h), "S": atoms_json(sys, p.s)}))
        .collect();
    json!({
        "pairs": pairs,
        "order": lat.order(),
        "covers": lat.covers(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::remark_example;

    const SYS1: &str = r#"{
        "algebra": {"type": "finite", "atoms": ["v", "w"]},
        "labels": ["e"],
        "actions": {"e": {"dual": {"w": "v"}}}
    }"#;

    #[test]
    fn defaults_and_round_trip() {
        let sys = parse_system(SYS1).unwrap();
        let fv = sys.finite().unwrap();
        assert_eq!(fv.ideal(0), AtomSet::singleton(1));
        assert_eq!(fv.relative(), AtomSet::singleton(0));
        let out = system_to_json(&sys).unwrap();
        assert_eq!(out["ideals"]["e"]["principal"], json!(["w"]));
        let again = system_to_json(&system_from_json(&out).unwrap()).unwrap();
        assert_eq!(out, again);
    }

    #[test]
    fn remark_round_trip() {
        let ex = remark_example().unwrap();
        for sys in [&ex.range_system, &ex.principal_system] {
            let out = system_to_json(sys).unwrap();
            assert_eq!(out["relative"], json!("regular"));
            let back = system_from_json(&out).unwrap();
            assert_eq!(system_to_json(&back).unwrap(), out);
        }
        let out = system_to_json(&ex.principal_system).unwrap();
        assert_eq!(
            out["ideals"]["a"]["principal"],
            json!({"left": [], "right": {"mode": "cofinite", "support": []}})
        );
    }

    #[test]
    fn shape_errors_are_parse_errors() {
        assert!(matches!(parse_system("{"), Err(Error::Parse(_))));
        assert!(matches!(parse_system(r#"{"algebra": {"type": "finite"}}"#), Err(Error::Parse(_))));
        let bad = SYS1.replace("\"w\": \"v\"", "\"w\": \"x\"");
        assert!(matches!(parse_system(&bad), Err(Error::UnknownAtom(_))));
    }

    #[test]
    fn range_exceeding_ideal_is_reported() {
        let text = SYS1.replace(
            "\"actions\"",
            "\"ideals\": {\"e\": {\"principal\": []}}, \"actions\"",
        );
        match parse_system(&text) {
            Err(Error::InvalidSystem(r)) => assert_eq!(r.violations.len(), 1),
            other => panic!("expected InvalidSystem, got {other:?}"),
        }
    }
}
