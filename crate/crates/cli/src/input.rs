//! Number lists from flags and request files.

use std::io::Read;

use serde::Deserialize;
use serde_json::Value;
use soddy_core::{parse_rational, Error, Matrix, Rational, Result, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exact,
    Float,
}

/// Request file contents. Every field is optional; flags given on the
/// command line take precedence.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Request {
    pub mode: Option<Mode>,
    pub n: Option<usize>,
    pub matrix: Option<Vec<Vec<Value>>>,
    pub curvatures: Option<Vec<Value>>,
    pub radii: Option<Vec<Value>>,
    pub random: Option<usize>,
    pub seed: Option<Vec<Value>>,
    pub rng_seed: Option<u64>,
    pub depth: Option<usize>,
    pub lenient: Option<bool>,
}

pub fn read_request(path: &str) -> Result<Request> {
    let text = if path == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Error::InvalidInput(format!("reading standard input: {e}")))?;
        s
    } else {
        std::fs::read_to_string(path).map_err(|e| Error::InvalidInput(format!("reading {path}: {e}")))?
    };
    serde_json::from_str(&text).map_err(|e| Error::InvalidInput(format!("request: {e}")))
}

/// Numbers in a list: a comma-separated flag value or a JSON array whose
/// entries are numbers, strings like `"1/3"`, or `{"num", "den"}` objects.
#[derive(Debug, Clone)]
pub enum NumberList {
    Text(String),
    Json(Vec<Value>),
}

impl NumberList {
    pub fn from_parts(flag: Option<String>, request: Option<Vec<Value>>) -> Option<Self> {
        flag.map(NumberList::Text).or(request.map(NumberList::Json))
    }

    pub fn rationals(&self) -> Result<Vec<Rational>> {
        match self {
            NumberList::Text(s) => s.split(',').map(parse_rational).collect(),
            NumberList::Json(values) => values.iter().map(json_rational).collect(),
        }
    }

    pub fn scalars<T: Scalar>(&self) -> Result<Vec<T>> {
        self.rationals()?
            .iter()
            .map(|r| {
                let v = T::from_rational(r);
                v.check_finite()?;
                Ok(v)
            })
            .collect()
    }
}

fn json_rational(v: &Value) -> Result<Rational> {
    match v {
        Value::Number(n) => parse_rational(&n.to_string()),
        Value::String(s) => parse_rational(s),
        Value::Object(_) => serde_json::from_value::<soddy_core::json::OwnedJsonRational>(v.clone())
            .map(|r| r.0)
            .map_err(|e| Error::InvalidInput(format!("bad rational object: {e}"))),
        other => Err(Error::InvalidInput(format!("expected a number, got {other}"))),
    }
}

/// `"a,b;c,d"` or a JSON array of rows.
pub fn parse_matrix<T: Scalar>(flag: Option<&str>, request: Option<&[Vec<Value>]>) -> Result<Matrix<T>> {
    let rows: Vec<NumberList> = match (flag, request) {
        (Some(s), _) => s.split(';').map(|r| NumberList::Text(r.to_string())).collect(),
        (None, Some(rows)) => rows.iter().map(|r| NumberList::Json(r.clone())).collect(),
        (None, None) => return Err(Error::InvalidInput("--matrix is required".into())),
    };
    let rows = rows.iter().map(NumberList::scalars).collect::<Result<Vec<Vec<T>>>>()?;
    Matrix::from_rows(rows)
}
