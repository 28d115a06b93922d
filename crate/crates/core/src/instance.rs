//! JSON instance files.
//!
//! Three shapes are recognised by their keys:
//!
//! ```text
//! pair:    {"alternatives": [..], "u": {x: r, ..}, "v": {x: r, ..}, "lottery"?: {x: r, ..}}
//! family:  {"poset": P, "functions": {name: {θ: r, ..}, ..}}
//! param:   {"alternatives": [..], "poset": P, "U": {x: {θ: r, ..}, ..}}
//! P:       {"elements": [..], "relation"?: [[θ, θ'], ..]}
//! ```
//!
//! `r` is a JSON integer or a string `"p/q"`. Fields may appear in any order;
//! unknown fields and duplicate keys are rejected. Member and alternative
//! order follows the input. A pair's optional `lottery` may omit
//! zero-weight alternatives.

use std::fmt;
use std::marker::PhantomData;

use serde::de::{self, Deserializer, MapAccess, Visitor};
use serde::Deserialize;
use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::crossing::FunctionFamily;
use crate::poset::Poset;
use crate::rational::Rational;
use crate::table::{Alternatives, Lottery, ParamUtilityTable, TableError, UtilityTable};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InstanceError {
    #[error("parse error at {path} (line {line}, column {column}): {message}")]
    Parse {
        path: String,
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid instance at {path}: {message}")]
    Invariant { path: String, message: String },
}

impl InstanceError {
    fn invariant(path: impl Into<String>, message: impl fmt::Display) -> Self {
        InstanceError::Invariant {
            path: path.into(),
            message: message.to_string(),
        }
    }
}

/// Two utility tables on the same alternatives, and optionally a lottery to
/// spot-check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UtilityPair {
    pub u: UtilityTable,
    pub v: UtilityTable,
    pub lottery: Option<Lottery>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyInstance {
    pub family: FunctionFamily,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParamInstance {
    pub table: ParamUtilityTable,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Instance {
    Pair(UtilityPair),
    Family(FamilyInstance),
    Param(ParamInstance),
}

impl Instance {
    pub fn kind(&self) -> &'static str {
        match self {
            Instance::Pair(_) => "utility pair",
            Instance::Family(_) => "function family",
            Instance::Param(_) => "parameterised utility",
        }
    }
}

/// A JSON object read into a vector, keeping key order and rejecting
/// duplicate keys.
struct OrderedMap<V>(Vec<(String, V)>);

impl<'de, V: Deserialize<'de>> Deserialize<'de> for OrderedMap<V> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct MapVisitor<V>(PhantomData<V>);

        impl<'de, V: Deserialize<'de>> Visitor<'de> for MapVisitor<V> {
            type Value = OrderedMap<V>;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an object")
            }

            fn visit_map<A: MapAccess<'de>>(self, mut access: A) -> Result<Self::Value, A::Error> {
                let mut out: Vec<(String, V)> = Vec::new();
                while let Some(key) = access.next_key::<String>()? {
                    if out.iter().any(|(k, _)| *k == key) {
                        return Err(de::Error::custom(format!("duplicate key {key:?}")));
                    }
                    let value = access.next_value()?;
                    out.push((key, value));
                }
                Ok(OrderedMap(out))
            }
        }

        deserializer.deserialize_map(MapVisitor(PhantomData))
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPoset {
    elements: Vec<String>,
    #[serde(default)]
    relation: Vec<(String, String)>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPair {
    alternatives: Vec<String>,
    u: OrderedMap<Rational>,
    v: OrderedMap<Rational>,
    #[serde(default)]
    lottery: Option<OrderedMap<Rational>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFamily {
    poset: RawPoset,
    functions: OrderedMap<OrderedMap<Rational>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawParam {
    alternatives: Vec<String>,
    poset: RawPoset,
    #[serde(rename = "U")]
    table: OrderedMap<OrderedMap<Rational>>,
}

fn parse_error(path: &str, e: &serde_json::Error) -> InstanceError {
    let message = e.to_string();
    // serde_json appends " at line L column C"; keep just the cause
    let message = match message.rfind(" at line ") {
        Some(i) => message[..i].to_string(),
        None => message,
    };
    InstanceError::Parse {
        path: path.to_string(),
        line: e.line(),
        column: e.column(),
        message,
    }
}

fn deserialize_tracked<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T, InstanceError> {
    let mut de = serde_json::Deserializer::from_str(text);
    let value = serde_path_to_error::deserialize(&mut de).map_err(|e| {
        let path = e.path().to_string();
        parse_error(&path, e.inner())
    })?;
    de.end().map_err(|e| parse_error(".", &e))?;
    Ok(value)
}

/// Aligns a label-keyed map with `domain`, requiring exactly its keys.
fn values_for(
    domain: &[String],
    map: &OrderedMap<Rational>,
    path: &str,
) -> Result<Vec<Rational>, InstanceError> {
    for (k, _) in &map.0 {
        if !domain.contains(k) {
            return Err(InstanceError::invariant(
                format!("{path}.{k}"),
                format!("unknown label {k:?}"),
            ));
        }
    }
    domain
        .iter()
        .map(|label| {
            map.0
                .iter()
                .find(|(k, _)| k == label)
                .map(|(_, v)| v.clone())
                .ok_or_else(|| {
                    InstanceError::invariant(path, format!("no value given for {label:?}"))
                })
        })
        .collect()
}

fn build_alternatives(labels: &[String]) -> Result<Alternatives, InstanceError> {
    Alternatives::new(labels).map_err(|e| InstanceError::invariant("alternatives", e))
}

fn build_poset(raw: &RawPoset) -> Result<Poset, InstanceError> {
    Poset::new(&raw.elements, &raw.relation).map_err(|e| InstanceError::invariant("poset", e))
}

fn table_error(path: &str, e: TableError) -> InstanceError {
    let message = match &e {
        TableError::WeightsDoNotSumToOne(total) => format!("weights sum to {total}, not 1"),
        _ => e.to_string(),
    };
    InstanceError::invariant(path, message)
}

fn build_pair(raw: RawPair) -> Result<UtilityPair, InstanceError> {
    let domain = build_alternatives(&raw.alternatives)?;
    let u = UtilityTable::new(domain.clone(), values_for(&raw.alternatives, &raw.u, "u")?)
        .map_err(|e| table_error("u", e))?;
    let v = UtilityTable::new(domain.clone(), values_for(&raw.alternatives, &raw.v, "v")?)
        .map_err(|e| table_error("v", e))?;
    let lottery = match raw.lottery {
        None => None,
        Some(map) => {
            for (k, _) in &map.0 {
                if domain.index_of(k).is_none() {
                    return Err(InstanceError::invariant(
                        format!("lottery.{k}"),
                        format!("unknown label {k:?}"),
                    ));
                }
            }
            let weights = raw
                .alternatives
                .iter()
                .map(|l| {
                    map.0
                        .iter()
                        .find(|(k, _)| k == l)
                        .map(|(_, w)| w.clone())
                        .unwrap_or_else(Rational::zero)
                })
                .collect();
            Some(Lottery::new(domain, weights).map_err(|e| table_error("lottery", e))?)
        }
    };
    Ok(UtilityPair { u, v, lottery })
}

fn build_family(raw: RawFamily) -> Result<FamilyInstance, InstanceError> {
    let poset = build_poset(&raw.poset)?;
    let rows = raw
        .functions
        .0
        .iter()
        .map(|(name, map)| {
            Ok((
                name.clone(),
                values_for(poset.elements(), map, &format!("functions.{name}"))?,
            ))
        })
        .collect::<Result<Vec<_>, InstanceError>>()?;
    let family = FunctionFamily::from_rows(poset, &rows)
        .map_err(|e| InstanceError::invariant("functions", e))?;
    Ok(FamilyInstance { family })
}

fn build_param(raw: RawParam) -> Result<ParamInstance, InstanceError> {
    let alternatives = build_alternatives(&raw.alternatives)?;
    let poset = build_poset(&raw.poset)?;
    for (k, _) in &raw.table.0 {
        if alternatives.index_of(k).is_none() {
            return Err(InstanceError::invariant(
                format!("U.{k}"),
                format!("unknown alternative {k:?}"),
            ));
        }
    }
    let rows = raw
        .alternatives
        .iter()
        .map(|x| {
            let (_, map) = raw.table.0.iter().find(|(k, _)| k == x).ok_or_else(|| {
                InstanceError::invariant("U", format!("no row given for {x:?}"))
            })?;
            values_for(poset.elements(), map, &format!("U.{x}"))
        })
        .collect::<Result<Vec<_>, InstanceError>>()?;
    let table = ParamUtilityTable::new(alternatives, poset, rows).map_err(|e| table_error("U", e))?;
    Ok(ParamInstance { table })
}

/// Parses and validates any of the three instance shapes.
pub fn parse_instance(text: &[u8]) -> Result<Instance, InstanceError> {
    let text = std::str::from_utf8(text).map_err(|e| InstanceError::Parse {
        path: ".".into(),
        line: 0,
        column: 0,
        message: format!("input is not UTF-8: {e}"),
    })?;
    let value: Value = serde_json::from_str(text).map_err(|e| parse_error(".", &e))?;
    let Some(obj) = value.as_object() else {
        return Err(InstanceError::Parse {
            path: ".".into(),
            line: 1,
            column: 1,
            message: "top level must be an object".into(),
        });
    };
    if obj.contains_key("functions") {
        Ok(Instance::Family(build_family(deserialize_tracked(text)?)?))
    } else if obj.contains_key("U") {
        Ok(Instance::Param(build_param(deserialize_tracked(text)?)?))
    } else if obj.contains_key("u") || obj.contains_key("v") {
        Ok(Instance::Pair(build_pair(deserialize_tracked(text)?)?))
    } else {
        Err(InstanceError::Parse {
            path: ".".into(),
            line: 1,
            column: 1,
            message: "cannot tell instance kind: expected key \"u\"/\"v\", \"functions\" or \"U\""
                .into(),
        })
    }
}

fn label_map(labels: &[String], values: &[Rational]) -> Value {
    let mut m = Map::new();
    for (l, v) in labels.iter().zip(values) {
        m.insert(l.clone(), serde_json::to_value(v).expect("rational serialises"));
    }
    Value::Object(m)
}

fn poset_json(p: &Poset) -> Value {
    let relation: Vec<Value> = p
        .declared_labels()
        .into_iter()
        .map(|(a, b)| json!([a, b]))
        .collect();
    json!({ "elements": p.elements(), "relation": relation })
}

pub fn pair_to_json(pair: &UtilityPair) -> Value {
    let labels = pair.u.domain().labels();
    let mut obj = Map::new();
    obj.insert("alternatives".into(), json!(labels));
    obj.insert("u".into(), label_map(labels, pair.u.values()));
    obj.insert("v".into(), label_map(labels, pair.v.values()));
    if let Some(p) = &pair.lottery {
        obj.insert("lottery".into(), label_map(labels, p.weights()));
    }
    Value::Object(obj)
}

pub fn family_to_json(family: &FunctionFamily) -> Value {
    let mut functions = Map::new();
    for (name, f) in family.members() {
        functions.insert(name.clone(), label_map(family.params().elements(), f.values()));
    }
    json!({ "poset": poset_json(family.params()), "functions": functions })
}

pub fn param_to_json(table: &ParamUtilityTable) -> Value {
    let mut rows = Map::new();
    for (x, label) in table.alternatives().labels().iter().enumerate() {
        rows.insert(label.clone(), label_map(table.params().elements(), &table.rows()[x]));
    }
    json!({
        "alternatives": table.alternatives().labels(),
        "poset": poset_json(table.params()),
        "U": rows,
    })
}

pub fn instance_to_json(instance: &Instance) -> Value {
    match instance {
        Instance::Pair(p) => pair_to_json(p),
        Instance::Family(f) => family_to_json(&f.family),
        Instance::Param(p) => param_to_json(&p.table),
    }
}
