//! Reports and their serialization. Field order is insertion order and
//! floats are written with 17 significant digits, so identical input gives
//! byte-identical output.

use std::fmt::Write as _;

use serde_json::Value;

use crate::error::Error;

#[derive(Debug, Clone, PartialEq)]
pub enum Out {
    Null,
    Bool(bool),
    Int(i128),
    Num(f64),
    Str(String),
    List(Vec<Out>),
    Obj(Fields),
}

/// Ordered key/value pairs.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Fields(pub Vec<(String, Out)>);

impl Fields {
    pub fn new() -> Self {
        Fields(Vec::new())
    }

    pub fn put(&mut self, key: &str, value: impl Into<Out>) -> &mut Self {
        self.0.push((key.to_string(), value.into()));
        self
    }

    pub fn get(&self, key: &str) -> Option<&Out> {
        self.0.iter().find(|(k, _)| k == key).map(|(_, v)| v)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl From<bool> for Out {
    fn from(b: bool) -> Self {
        Out::Bool(b)
    }
}

impl From<f64> for Out {
    fn from(x: f64) -> Self {
        Out::Num(x)
    }
}

macro_rules! int_out {
    ($($t:ty),*) => {$(
        impl From<$t> for Out {
            fn from(k: $t) -> Self {
                Out::Int(k as i128)
            }
        }
    )*};
}
int_out!(usize, u32, u64, i64);

impl From<&str> for Out {
    fn from(s: &str) -> Self {
        Out::Str(s.to_string())
    }
}

impl From<String> for Out {
    fn from(s: String) -> Self {
        Out::Str(s)
    }
}

impl From<Fields> for Out {
    fn from(f: Fields) -> Self {
        Out::Obj(f)
    }
}

impl<T: Into<Out>> From<Vec<T>> for Out {
    fn from(v: Vec<T>) -> Self {
        Out::List(v.into_iter().map(Into::into).collect())
    }
}

impl From<&Value> for Out {
    fn from(v: &Value) -> Self {
        match v {
            Value::Null => Out::Null,
            Value::Bool(b) => Out::Bool(*b),
            Value::Number(n) => match (n.as_i64(), n.as_u64()) {
                (Some(k), _) => Out::Int(k as i128),
                (_, Some(k)) => Out::Int(k as i128),
                _ => Out::Num(n.as_f64().unwrap_or(f64::NAN)),
            },
            Value::String(s) => Out::Str(s.clone()),
            Value::Array(items) => Out::List(items.iter().map(Out::from).collect()),
            Value::Object(map) => Out::Obj(Fields(
                map.iter().map(|(k, v)| (k.clone(), Out::from(v))).collect(),
            )),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Status {
    Ok,
    Error { code: String, message: String, exit_code: i32 },
}

impl Status {
    pub fn from_error(e: &Error) -> Self {
        Status::Error {
            code: e.code().to_string(),
            message: e.to_string(),
            exit_code: e.class().exit_code(),
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::Error { exit_code, .. } => *exit_code,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub index: usize,
    pub name: Option<String>,
    pub kind: Option<String>,
    pub scenario: Out,
    pub results: Fields,
    pub oracle: Option<Fields>,
    pub status: Status,
}

impl Report {
    pub fn result(&self, key: &str) -> Option<&Out> {
        self.results.get(key)
    }

    fn to_out(&self) -> Out {
        let mut f = Fields::new();
        f.put("index", self.index);
        if let Some(name) = &self.name {
            f.put("name", name.as_str());
        }
        f.put("kind", self.kind.clone().map_or(Out::Null, Out::Str));
        f.put("scenario", self.scenario.clone());
        f.put("results", self.results.clone());
        if let Some(oracle) = &self.oracle {
            f.put("oracle", oracle.clone());
        }
        let mut status = Fields::new();
        match &self.status {
            Status::Ok => {
                status.put("state", "ok");
            }
            Status::Error { code, message, .. } => {
                status
                    .put("state", "error")
                    .put("code", code.as_str())
                    .put("message", message.as_str());
            }
        }
        f.put("status", status);
        Out::Obj(f)
    }

    /// One-line JSON.
    pub fn to_json(&self) -> String {
        let mut s = String::new();
        write_json(&mut s, &self.to_out());
        s
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let label = self.name.clone().unwrap_or_else(|| format!("#{}", self.index));
        let kind = self.kind.as_deref().unwrap_or("?");
        match &self.status {
            Status::Ok => writeln!(s, "{label} [{kind}]: ok").unwrap(),
            Status::Error { code, message, .. } => {
                writeln!(s, "{label} [{kind}]: error {code}: {message}").unwrap()
            }
        }
        for (k, v) in &self.results.0 {
            writeln!(s, "  {k} = {}", text_value(v)).unwrap();
        }
        if let Some(oracle) = &self.oracle {
            for (k, v) in &oracle.0 {
                writeln!(s, "  oracle.{k} = {}", text_value(v)).unwrap();
            }
        }
        s
    }
}

pub fn format_number(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        "null".to_string()
    }
}

fn write_json(s: &mut String, v: &Out) {
    match v {
        Out::Null => s.push_str("null"),
        Out::Bool(b) => s.push_str(if *b { "true" } else { "false" }),
        Out::Int(k) => write!(s, "{k}").unwrap(),
        Out::Num(x) => s.push_str(&format_number(*x)),
        Out::Str(t) => s.push_str(&serde_json::to_string(t).expect("strings serialize")),
        Out::List(items) => {
            s.push('[');
            for (i, item) in items.iter().enumerate() {
                if i > 0 {
                    s.push(',');
                }
                write_json(s, item);
            }
            s.push(']');
        }
        Out::Obj(fields) => {
            s.push('{');
            for (i, (k, item)) in fields.0.iter().enumerate() {
                if i > 0 {
                    s.push(',');
                }
                s.push_str(&serde_json::to_string(k).expect("strings serialize"));
                s.push(':');
                write_json(s, item);
            }
            s.push('}');
        }
    }
}

fn text_value(v: &Out) -> String {
    match v {
        Out::Str(t) => t.clone(),
        Out::Num(x) => format!("{x:.17}")
            .trim_end_matches('0')
            .trim_end_matches('.')
            .to_string(),
        other => {
            let mut s = String::new();
            write_json(&mut s, other);
            s
        }
    }
}
