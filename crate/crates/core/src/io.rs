//! Instance and plan documents in a canonical compact JSON form, and DOT
//! rendering of token configurations.

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::decision::Decision;
use crate::error::{Error, Result};
use crate::independence::{IndependentSet, Instance, Move, Plan};
use crate::tree::Tree;

pub const SCHEMA_VERSION: u64 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceDocument {
    pub schema_version: u64,
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
    pub start: Vec<usize>,
    pub target: Vec<usize>,
}

impl InstanceDocument {
    pub fn from_instance(inst: &Instance) -> Self {
        InstanceDocument {
            schema_version: SCHEMA_VERSION,
            n: inst.tree().len(),
            edges: inst.tree().edges().map(|(u, v)| [u, v]).collect(),
            start: inst.start().members().to_vec(),
            target: inst.target().members().to_vec(),
        }
    }

    pub fn into_instance(self) -> Result<Instance> {
        let edges: Vec<(usize, usize)> = self.edges.iter().map(|e| (e[0], e[1])).collect();
        let tree = Tree::new(self.n, &edges)?;
        Instance::new(tree, self.start, self.target)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlanDocument {
    pub schema_version: u64,
    pub verdict: String,
    pub certificate: String,
    pub moves: Vec<[usize; 2]>,
    pub move_count: usize,
    pub sequence_length: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed_us: Option<u64>,
}

impl PlanDocument {
    pub fn new(decision: &Decision, plan: &Plan, elapsed_us: Option<u64>) -> Self {
        PlanDocument {
            schema_version: SCHEMA_VERSION,
            verdict: decision.verdict.to_string(),
            certificate: decision.certificate.kind().to_string(),
            moves: plan.moves.iter().map(|m| [m.from, m.to]).collect(),
            move_count: plan.len(),
            sequence_length: plan.sequence_length(),
            elapsed_us,
        }
    }

    pub fn plan(&self) -> Plan {
        self.moves.iter().map(|m| Move::new(m[0], m[1])).collect()
    }
}

fn syntax(e: serde_json::Error) -> Error {
    Error::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    }
}

fn schema(field: &str, reason: impl Into<String>) -> Error {
    Error::Schema {
        field: field.to_string(),
        reason: reason.into(),
    }
}

fn object(text: &str) -> Result<Map<String, Value>> {
    match serde_json::from_str::<Value>(text).map_err(syntax)? {
        Value::Object(map) => Ok(map),
        _ => Err(schema("$", "expected an object")),
    }
}

fn field<'a>(doc: &'a Map<String, Value>, name: &str) -> Result<&'a Value> {
    doc.get(name).ok_or_else(|| schema(name, "required"))
}

fn integer(v: &Value, name: &str) -> Result<usize> {
    v.as_u64()
        .and_then(|x| usize::try_from(x).ok())
        .ok_or_else(|| schema(name, "expected a non-negative integer"))
}

fn integer_list(v: &Value, name: &str) -> Result<Vec<usize>> {
    v.as_array()
        .ok_or_else(|| schema(name, "expected a list"))?
        .iter()
        .map(|x| integer(x, name))
        .collect()
}

fn pair_list(v: &Value, name: &str) -> Result<Vec<[usize; 2]>> {
    v.as_array()
        .ok_or_else(|| schema(name, "expected a list of pairs"))?
        .iter()
        .map(|p| match integer_list(p, name)?.as_slice() {
            &[a, b] => Ok([a, b]),
            _ => Err(schema(name, "expected a pair")),
        })
        .collect()
}

fn check_version(doc: &Map<String, Value>) -> Result<u64> {
    let version = integer(field(doc, "schema_version")?, "schema_version")? as u64;
    if version != SCHEMA_VERSION {
        return Err(schema(
            "schema_version",
            format!("unsupported version {version}, expected {SCHEMA_VERSION}"),
        ));
    }
    Ok(version)
}

/// Parses an instance document into its raw fields, without validating the
/// tree or the token sets.
pub fn parse_instance_document(text: &str) -> Result<InstanceDocument> {
    let doc = object(text)?;
    Ok(InstanceDocument {
        schema_version: check_version(&doc)?,
        n: integer(field(&doc, "n")?, "n")?,
        edges: pair_list(field(&doc, "edges")?, "edges")?,
        start: integer_list(field(&doc, "start")?, "start")?,
        target: integer_list(field(&doc, "target")?, "target")?,
    })
}

pub fn parse_instance(text: &str) -> Result<Instance> {
    parse_instance_document(text)?.into_instance()
}

/// Canonical form: compact, fixed key order, edges as `[u, v]` with `u < v`
/// in ascending order, token sets ascending.
pub fn emit_instance(inst: &Instance) -> String {
    serde_json::to_string(&InstanceDocument::from_instance(inst)).expect("documents serialize")
}

pub fn parse_plan(text: &str) -> Result<PlanDocument> {
    let doc = object(text)?;
    let text_field = |name: &str| -> Result<String> {
        field(&doc, name)?
            .as_str()
            .map(str::to_string)
            .ok_or_else(|| schema(name, "expected a string"))
    };
    let elapsed_us = match doc.get("elapsed_us") {
        None | Some(Value::Null) => None,
        Some(v) => Some(integer(v, "elapsed_us")? as u64),
    };
    Ok(PlanDocument {
        schema_version: check_version(&doc)?,
        verdict: text_field("verdict")?,
        certificate: text_field("certificate")?,
        moves: pair_list(field(&doc, "moves")?, "moves")?,
        move_count: integer(field(&doc, "move_count")?, "move_count")?,
        sequence_length: integer(field(&doc, "sequence_length")?, "sequence_length")?,
        elapsed_us,
    })
}

pub fn emit_plan(doc: &PlanDocument) -> String {
    serde_json::to_string(doc).expect("documents serialize")
}

/// Renders `t` in DOT. Token vertices are filled and the edge of
/// `highlight`, if any, is bold.
pub fn emit_dot(t: &Tree, tokens: Option<&IndependentSet>, highlight: Option<Move>) -> String {
    let mut out = String::from("graph T {\n");
    for v in 0..t.len() {
        if tokens.is_some_and(|i| i.contains(v)) {
            out.push_str(&format!("  {v} [style=filled, fillcolor=black, fontcolor=white];\n"));
        } else {
            out.push_str(&format!("  {v};\n"));
        }
    }
    let bold = highlight.map(|m| (m.from.min(m.to), m.from.max(m.to)));
    for (u, v) in t.edges() {
        if bold == Some((u, v)) {
            out.push_str(&format!("  {u} -- {v} [style=bold, penwidth=3];\n"));
        } else {
            out.push_str(&format!("  {u} -- {v};\n"));
        }
    }
    out.push_str("}\n");
    out
}
