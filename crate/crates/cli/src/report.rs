//! Versioned reports and their text rendering.

use crate::ast::Span;
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};
use std::fmt::Write;

pub const SCHEMA: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    Fail,
    InputError,
    GuardExhausted,
}

impl Status {
    pub fn name(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::Fail => "fail",
            Status::InputError => "input-error",
            Status::GuardExhausted => "guard-exhausted",
        }
    }

    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::Fail => 1,
            Status::InputError => 2,
            Status::GuardExhausted => 3,
        }
    }
}

/// Why a command produced no result.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CmdError {
    Input { span: Option<Span>, message: String },
    Guard(String),
}

impl CmdError {
    pub fn input(message: impl Into<String>) -> Self {
        CmdError::Input { span: None, message: message.into() }
    }
}

impl From<crate::build::BuildError> for CmdError {
    fn from(e: crate::build::BuildError) -> Self {
        let span = (e.span.line > 0).then_some(e.span);
        CmdError::Input { span, message: e.message }
    }
}

impl From<crate::parse::ParseError> for CmdError {
    fn from(e: crate::parse::ParseError) -> Self {
        let message = if e.expected.is_empty() { e.message } else { format!("{} (expected {})", e.message, e.expected.join(", ")) };
        CmdError::Input { span: Some(e.span), message }
    }
}

impl From<modelbench::cat::GuardExceeded> for CmdError {
    fn from(e: modelbench::cat::GuardExceeded) -> Self {
        CmdError::Guard(e.to_string())
    }
}

impl From<modelbench::lifting::AmbientError> for CmdError {
    fn from(e: modelbench::lifting::AmbientError) -> Self {
        match e {
            modelbench::lifting::AmbientError::Guard(g) => g.into(),
            other => CmdError::input(other.to_string()),
        }
    }
}

impl From<modelbench::dg::DgError> for CmdError {
    fn from(e: modelbench::dg::DgError) -> Self {
        CmdError::input(e.to_string())
    }
}

/// What a command found: `ok` is false when the property asked about fails.
pub struct Outcome {
    pub ok: bool,
    pub result: Value,
}

impl Outcome {
    pub fn new(ok: bool, result: Value) -> Self {
        Outcome { ok, result }
    }
}

pub struct Report {
    pub command: String,
    pub inputs: String,
    pub status: Status,
    pub body: Value,
}

pub fn digest(parts: &[&[u8]]) -> String {
    let mut h = Sha256::new();
    for p in parts {
        h.update((p.len() as u64).to_le_bytes());
        h.update(p);
    }
    hex::encode(h.finalize())
}

impl Report {
    pub fn from_result(command: &str, inputs: String, r: Result<Outcome, CmdError>) -> Report {
        let (status, body) = match r {
            Ok(o) => (if o.ok { Status::Ok } else { Status::Fail }, json!({ "result": o.result })),
            Err(CmdError::Input { span, message }) => {
                let mut e = Map::new();
                if let Some(s) = span {
                    e.insert("line".into(), json!(s.line));
                    e.insert("col".into(), json!(s.col));
                }
                e.insert("message".into(), json!(message));
                (Status::InputError, json!({ "error": e }))
            }
            Err(CmdError::Guard(m)) => (Status::GuardExhausted, json!({ "error": { "message": m } })),
        };
        Report { command: command.into(), inputs, status, body }
    }

    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        m.insert("schema".into(), json!(SCHEMA));
        m.insert("command".into(), json!(self.command));
        m.insert("inputs".into(), json!(self.inputs));
        m.insert("status".into(), json!(self.status.name()));
        if let Value::Object(b) = &self.body {
            for (k, v) in b {
                m.insert(k.clone(), v.clone());
            }
        }
        Value::Object(m)
    }

    pub fn render(&self, text: bool) -> String {
        let v = self.to_json();
        if text {
            render_text(&v)
        } else {
            let mut s = serde_json::to_string_pretty(&v).expect("json values serialize");
            s.push('\n');
            s
        }
    }
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("none".into()),
        Value::Bool(b) => Some(if *b { "yes" } else { "no" }.into()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(a) if a.iter().all(|x| !x.is_array() && !x.is_object()) => Some(format!("[{}]", a.iter().filter_map(scalar).collect::<Vec<_>>().join(", "))),
        _ => None,
    }
}

fn text_into(v: &Value, depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                match scalar(x) {
                    Some(s) => writeln!(out, "{pad}{k}: {s}").unwrap(),
                    None => {
                        writeln!(out, "{pad}{k}:").unwrap();
                        text_into(x, depth + 1, out);
                    }
                }
            }
        }
        Value::Array(a) => {
            for x in a {
                match scalar(x) {
                    Some(s) => writeln!(out, "{pad}- {s}").unwrap(),
                    None => {
                        writeln!(out, "{pad}-").unwrap();
                        text_into(x, depth + 1, out);
                    }
                }
            }
        }
        other => writeln!(out, "{pad}{}", scalar(other).unwrap_or_default()).unwrap(),
    }
}

pub fn render_text(v: &Value) -> String {
    let mut out = String::new();
    text_into(v, 0, &mut out);
    out
}
