use std::collections::BTreeMap;

use artinian::exactla::{Field, FieldDescriptor, Matrix, PrimeField, Rationals, Subspace};
use artinian::modules::{validate_module, ModuleError, ModulePresentation};
use artinian::rings::{
    validate_algebra, validate_ring_map, AlgebraPresentation, AlgebraRef, RingError, RingMap,
};
use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::scalar::JsonScalar;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum InputError {
    #[error("SyntaxError: {0}")]
    Syntax(String),
    #[error("SchemaError at {path}: {message}")]
    Schema { path: String, message: String },
    #[error("ValidationError: {kind} at {path} ({message})")]
    Validation {
        path: String,
        kind: String,
        message: String,
    },
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
}

fn schema(path: &str, message: impl Into<String>) -> InputError {
    let path = if path.is_empty() {
        "document".to_string()
    } else {
        path.to_string()
    };
    InputError::Schema {
        path,
        message: message.into(),
    }
}

/// Leading identifier of a `Debug` rendering: the variant name.
fn variant_name(debug: String) -> String {
    debug
        .chars()
        .take_while(|c| c.is_alphanumeric() || *c == '_')
        .collect()
}

fn ring_violation(base: &str, e: RingError) -> InputError {
    let path = match &e {
        RingError::NotCommutative { i, j } | RingError::NotAssociative { i, j, .. } => {
            format!("{base}.mul[{i}][{j}]")
        }
        RingError::BadUnit { .. } | RingError::NotUnital => format!("{base}.unit"),
        RingError::NotAnIdeal | RingError::NotLocal(_) | RingError::LocalnessUndecided => {
            format!("{base}.maximal_ideal")
        }
        _ => base.to_string(),
    };
    let path = match &e {
        RingError::NotUnital
        | RingError::NotMultiplicative { .. }
        | RingError::NotLocalMap
        | RingError::FieldMismatch => format!("{base}.matrix"),
        _ => path,
    };
    InputError::Validation {
        path,
        kind: variant_name(format!("{e:?}")),
        message: e.to_string(),
    }
}

fn module_violation(base: &str, e: ModuleError) -> InputError {
    let path = match &e {
        ModuleError::NotAModule { i, .. } => format!("{base}.actions[{i}]"),
        _ => format!("{base}.actions"),
    };
    InputError::Validation {
        path,
        kind: variant_name(format!("{e:?}")),
        message: e.to_string(),
    }
}

#[derive(Debug, Clone)]
pub struct AlgebraEntry<F: Field> {
    pub algebra: AlgebraRef<F>,
    /// Whether the file states the maximal ideal explicitly.
    pub asserted_ideal: bool,
}

#[derive(Debug, Clone)]
pub struct MapEntry<F: Field> {
    pub from: String,
    pub to: String,
    pub map: RingMap<F>,
}

#[derive(Debug, Clone)]
pub struct ModuleEntry<F: Field> {
    pub algebra: String,
    pub module: ModulePresentation<F>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RequestEntry {
    pub map: String,
    pub modules: Vec<String>,
}

/// A validated instance file; names are kept in sorted order.
#[derive(Debug, Clone)]
pub struct InstanceFile<F: Field> {
    pub field: F,
    pub algebras: BTreeMap<String, AlgebraEntry<F>>,
    pub maps: BTreeMap<String, MapEntry<F>>,
    pub modules: BTreeMap<String, ModuleEntry<F>>,
    pub requests: BTreeMap<String, RequestEntry>,
}

#[derive(Debug, Clone)]
pub enum AnyInstance {
    Rational(InstanceFile<Rationals>),
    Prime(InstanceFile<PrimeField>),
}

impl AnyInstance {
    pub fn to_json(&self) -> Value {
        match self {
            AnyInstance::Rational(i) => i.to_json(),
            AnyInstance::Prime(i) => i.to_json(),
        }
    }

    pub fn descriptor(&self) -> FieldDescriptor {
        match self {
            AnyInstance::Rational(i) => i.field.descriptor(),
            AnyInstance::Prime(i) => i.field.descriptor(),
        }
    }
}

/// Pretty JSON with sorted keys and a trailing newline.
pub fn canonical_string(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

pub fn parse_instance(bytes: &[u8]) -> Result<AnyInstance, InputError> {
    let text = std::str::from_utf8(bytes).map_err(|e| InputError::Syntax(e.to_string()))?;
    if text.trim().is_empty() {
        return Err(schema("", "document is empty"));
    }
    let doc: Value = serde_json::from_str(text).map_err(|e| InputError::Syntax(e.to_string()))?;
    let top = object(&doc, "")?;
    check_keys(
        top,
        "",
        &["field", "algebras"],
        &["maps", "modules", "requests"],
    )?;
    let field = object(&top["field"], "field")?;
    match field.get("kind").and_then(Value::as_str) {
        Some("Q") => {
            check_keys(field, "field", &["kind"], &[])?;
            Ok(AnyInstance::Rational(parse_with(Rationals, top)?))
        }
        Some("Fp") => {
            check_keys(field, "field", &["kind", "p"], &[])?;
            let p = field["p"]
                .as_u64()
                .ok_or_else(|| schema("field.p", "expected a prime integer"))?;
            let f = PrimeField::new(p).map_err(|e| schema("field.p", e.to_string()))?;
            Ok(AnyInstance::Prime(parse_with(f, top)?))
        }
        _ => Err(schema("field.kind", "expected \"Q\" or \"Fp\"")),
    }
}

fn object<'a>(v: &'a Value, path: &str) -> Result<&'a Map<String, Value>, InputError> {
    v.as_object()
        .ok_or_else(|| schema(path, "expected an object"))
}

fn array<'a>(v: &'a Value, path: &str) -> Result<&'a Vec<Value>, InputError> {
    v.as_array()
        .ok_or_else(|| schema(path, "expected an array"))
}

fn string<'a>(v: &'a Value, path: &str) -> Result<&'a str, InputError> {
    v.as_str().ok_or_else(|| schema(path, "expected a string"))
}

fn count(v: &Value, path: &str) -> Result<usize, InputError> {
    v.as_u64()
        .map(|n| n as usize)
        .ok_or_else(|| schema(path, "expected a nonnegative integer"))
}

fn check_keys(
    map: &Map<String, Value>,
    path: &str,
    required: &[&str],
    optional: &[&str],
) -> Result<(), InputError> {
    for key in required {
        if !map.contains_key(*key) {
            return Err(schema(path, format!("missing key \"{key}\"")));
        }
    }
    for key in map.keys() {
        if !required.contains(&key.as_str()) && !optional.contains(&key.as_str()) {
            return Err(schema(&join(path, key), "unknown key"));
        }
    }
    Ok(())
}

fn join(path: &str, key: &str) -> String {
    if path.is_empty() {
        key.to_string()
    } else {
        format!("{path}.{key}")
    }
}

fn vector<F: JsonScalar>(
    f: &F,
    v: &Value,
    len: usize,
    path: &str,
) -> Result<Vec<F::Elem>, InputError> {
    let items = array(v, path)?;
    if items.len() != len {
        return Err(schema(
            path,
            format!("expected {len} entries, found {}", items.len()),
        ));
    }
    items
        .iter()
        .enumerate()
        .map(|(i, x)| {
            f.scalar_from_json(x)
                .map_err(|m| schema(&format!("{path}[{i}]"), m))
        })
        .collect()
}

fn matrix<F: JsonScalar>(
    f: &F,
    v: &Value,
    rows: usize,
    cols: usize,
    path: &str,
) -> Result<Matrix<F>, InputError> {
    let items = array(v, path)?;
    if items.len() != rows {
        return Err(schema(
            path,
            format!("expected {rows} rows, found {}", items.len()),
        ));
    }
    let rows = items
        .iter()
        .enumerate()
        .map(|(i, r)| vector(f, r, cols, &format!("{path}[{i}]")))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Matrix::from_rows(f.clone(), cols, rows))
}

fn parse_with<F: JsonScalar>(
    f: F,
    top: &Map<String, Value>,
) -> Result<InstanceFile<F>, InputError> {
    let mut algebras = BTreeMap::new();
    for (name, v) in object(&top["algebras"], "algebras")? {
        algebras.insert(
            name.clone(),
            parse_algebra(&f, v, &format!("algebras.{name}"))?,
        );
    }
    if algebras.is_empty() {
        return Err(schema("algebras", "at least one algebra is required"));
    }

    let empty = Value::Object(Map::new());
    let mut maps = BTreeMap::new();
    for (name, v) in object(top.get("maps").unwrap_or(&empty), "maps")? {
        let path = format!("maps.{name}");
        let m = object(v, &path)?;
        check_keys(m, &path, &["from", "to", "matrix"], &[])?;
        let lookup = |key: &str| -> Result<(String, AlgebraRef<F>), InputError> {
            let n = string(&m[key], &join(&path, key))?;
            let entry = algebras
                .get(n)
                .ok_or_else(|| schema(&join(&path, key), format!("unknown algebra \"{n}\"")))?;
            Ok((n.to_string(), entry.algebra.clone()))
        };
        let (from, source) = lookup("from")?;
        let (to, target) = lookup("to")?;
        let mat = matrix(
            &f,
            &m["matrix"],
            target.dim(),
            source.dim(),
            &join(&path, "matrix"),
        )?;
        let map = validate_ring_map(source, target, mat).map_err(|e| ring_violation(&path, e))?;
        maps.insert(name.clone(), MapEntry { from, to, map });
    }

    let mut modules = BTreeMap::new();
    for (name, v) in object(top.get("modules").unwrap_or(&empty), "modules")? {
        let path = format!("modules.{name}");
        let m = object(v, &path)?;
        check_keys(m, &path, &["algebra", "dim", "actions"], &[])?;
        let alg_name = string(&m["algebra"], &join(&path, "algebra"))?;
        let algebra = algebras
            .get(alg_name)
            .ok_or_else(|| {
                schema(
                    &join(&path, "algebra"),
                    format!("unknown algebra \"{alg_name}\""),
                )
            })?
            .algebra
            .clone();
        let dim = count(&m["dim"], &join(&path, "dim"))?;
        let acts = array(&m["actions"], &join(&path, "actions"))?;
        if acts.len() != algebra.dim() {
            return Err(schema(
                &join(&path, "actions"),
                format!(
                    "expected {} action matrices, found {}",
                    algebra.dim(),
                    acts.len()
                ),
            ));
        }
        let actions = acts
            .iter()
            .enumerate()
            .map(|(i, a)| matrix(&f, a, dim, dim, &format!("{path}.actions[{i}]")))
            .collect::<Result<Vec<_>, _>>()?;
        let module =
            validate_module(algebra, dim, actions).map_err(|e| module_violation(&path, e))?;
        modules.insert(
            name.clone(),
            ModuleEntry {
                algebra: alg_name.to_string(),
                module,
            },
        );
    }

    let mut requests = BTreeMap::new();
    for (name, v) in object(top.get("requests").unwrap_or(&empty), "requests")? {
        let path = format!("requests.{name}");
        let r = object(v, &path)?;
        check_keys(r, &path, &["map"], &["modules"])?;
        let map = string(&r["map"], &join(&path, "map"))?;
        let entry = maps
            .get(map)
            .ok_or_else(|| schema(&join(&path, "map"), format!("unknown map \"{map}\"")))?;
        let mut names = Vec::new();
        if let Some(list) = r.get("modules") {
            for (i, item) in array(list, &join(&path, "modules"))?.iter().enumerate() {
                let item_path = format!("{path}.modules[{i}]");
                let n = string(item, &item_path)?;
                let module = modules
                    .get(n)
                    .ok_or_else(|| schema(&item_path, format!("unknown module \"{n}\"")))?;
                if module.algebra != entry.from && module.algebra != entry.to {
                    return Err(schema(&item_path, "module is over neither end of the map"));
                }
                names.push(n.to_string());
            }
        }
        requests.insert(
            name.clone(),
            RequestEntry {
                map: map.to_string(),
                modules: names,
            },
        );
    }

    Ok(InstanceFile {
        field: f,
        algebras,
        maps,
        modules,
        requests,
    })
}

fn parse_algebra<F: JsonScalar>(
    f: &F,
    v: &Value,
    path: &str,
) -> Result<AlgebraEntry<F>, InputError> {
    let a = object(v, path)?;
    check_keys(
        a,
        path,
        &["dim", "unit", "mul"],
        &["maximal_ideal", "provenance", "labels"],
    )?;
    let dim = count(&a["dim"], &join(path, "dim"))?;
    if dim == 0 {
        return Err(schema(
            &join(path, "dim"),
            "an algebra has positive dimension",
        ));
    }
    let unit = vector(f, &a["unit"], dim, &join(path, "unit"))?;
    let mul_path = join(path, "mul");
    let rows = array(&a["mul"], &mul_path)?;
    if rows.len() != dim {
        return Err(schema(
            &mul_path,
            format!("expected {dim} rows, found {}", rows.len()),
        ));
    }
    let mut mul = Vec::with_capacity(dim);
    for (i, row) in rows.iter().enumerate() {
        let row_path = format!("{mul_path}[{i}]");
        let entries = array(row, &row_path)?;
        if entries.len() != dim {
            return Err(schema(
                &row_path,
                format!("expected {dim} products, found {}", entries.len()),
            ));
        }
        mul.push(
            entries
                .iter()
                .enumerate()
                .map(|(j, e)| vector(f, e, dim, &format!("{row_path}[{j}]")))
                .collect::<Result<Vec<_>, _>>()?,
        );
    }
    let mut pres =
        AlgebraPresentation::new(f.clone(), unit, mul).map_err(|e| ring_violation(path, e))?;
    if let Some(labels) = a.get("labels") {
        let lp = join(path, "labels");
        let items = array(labels, &lp)?;
        if items.len() != dim {
            return Err(schema(
                &lp,
                format!("expected {dim} labels, found {}", items.len()),
            ));
        }
        let labels = items
            .iter()
            .enumerate()
            .map(|(i, l)| string(l, &format!("{lp}[{i}]")).map(str::to_string))
            .collect::<Result<Vec<_>, _>>()?;
        pres = pres.with_labels(labels);
    }
    if let Some(p) = a.get("provenance") {
        pres = pres.with_provenance(string(p, &join(path, "provenance"))?);
    }
    let asserted = match a.get("maximal_ideal") {
        None => None,
        Some(list) => {
            let lp = join(path, "maximal_ideal");
            let vs = array(list, &lp)?
                .iter()
                .enumerate()
                .map(|(i, x)| vector(f, x, dim, &format!("{lp}[{i}]")))
                .collect::<Result<Vec<_>, _>>()?;
            Some(Subspace::from_spanning(f.clone(), dim, vs))
        }
    };
    let asserted_ideal = asserted.is_some();
    let algebra = validate_algebra(pres, asserted).map_err(|e| ring_violation(path, e))?;
    Ok(AlgebraEntry {
        algebra,
        asserted_ideal,
    })
}

impl<F: JsonScalar> InstanceFile<F> {
    pub fn new(field: F) -> Self {
        InstanceFile {
            field,
            algebras: BTreeMap::new(),
            maps: BTreeMap::new(),
            modules: BTreeMap::new(),
            requests: BTreeMap::new(),
        }
    }

    pub fn vector_json(&self, v: &[F::Elem]) -> Value {
        Value::Array(v.iter().map(|x| self.field.scalar_to_json(x)).collect())
    }

    pub fn matrix_json(&self, m: &Matrix<F>) -> Value {
        Value::Array((0..m.rows()).map(|r| self.vector_json(m.row(r))).collect())
    }

    pub fn algebra_json(&self, entry: &AlgebraEntry<F>) -> Value {
        let p = entry.algebra.presentation();
        let mut out = Map::new();
        out.insert("dim".into(), json!(p.dim()));
        out.insert("unit".into(), self.vector_json(p.unit()));
        let mul = p
            .structure_constants()
            .iter()
            .map(|row| Value::Array(row.iter().map(|v| self.vector_json(v)).collect()))
            .collect();
        out.insert("mul".into(), Value::Array(mul));
        if let Some(labels) = p.labels() {
            out.insert("labels".into(), json!(labels));
        }
        if let Some(prov) = p.provenance() {
            out.insert("provenance".into(), json!(prov));
        }
        if entry.asserted_ideal {
            let vs = entry.algebra.maximal_ideal().vectors();
            out.insert(
                "maximal_ideal".into(),
                Value::Array(vs.iter().map(|v| self.vector_json(v)).collect()),
            );
        }
        Value::Object(out)
    }

    pub fn module_json(&self, algebra: &str, m: &ModulePresentation<F>) -> Value {
        json!({
            "algebra": algebra,
            "dim": m.dim(),
            "actions": m.actions().iter().map(|a| self.matrix_json(a)).collect::<Vec<_>>(),
        })
    }

    pub fn to_json(&self) -> Value {
        let algebras: Map<String, Value> = self
            .algebras
            .iter()
            .map(|(n, a)| (n.clone(), self.algebra_json(a)))
            .collect();
        let maps: Map<String, Value> = self
            .maps
            .iter()
            .map(|(n, m)| {
                (
                    n.clone(),
                    json!({"from": m.from, "to": m.to, "matrix": self.matrix_json(m.map.matrix())}),
                )
            })
            .collect();
        let modules: Map<String, Value> = self
            .modules
            .iter()
            .map(|(n, m)| (n.clone(), self.module_json(&m.algebra, &m.module)))
            .collect();
        let requests: Map<String, Value> = self
            .requests
            .iter()
            .map(|(n, r)| (n.clone(), json!({"map": r.map, "modules": r.modules})))
            .collect();
        json!({
            "field": self.field.field_to_json(),
            "algebras": algebras,
            "maps": maps,
            "modules": modules,
            "requests": requests,
        })
    }

    /// Name of the algebra entry holding exactly this `Arc`.
    pub fn algebra_name(&self, a: &AlgebraRef<F>) -> Option<&str> {
        self.algebras
            .iter()
            .find(|(_, e)| std::sync::Arc::ptr_eq(&e.algebra, a))
            .map(|(n, _)| n.as_str())
    }
}
