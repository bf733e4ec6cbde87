//! JSON problem descriptions and reports.

use std::io;
use std::sync::Arc;

use num_traits::ToPrimitive;
use serde::ser::SerializeMap;
use serde::Serialize;
use serde_json::ser::{Formatter, PrettyFormatter};
use serde_json::Value;

use crate::arith::{format_rational, parse_rational, Rational, SquareClass};
use crate::error::{Error, Result};
use crate::hermitian::{AnySpace, HermitianSpace};
use crate::linalg::StarField;
use crate::number_field::{CmElement, CmField, FieldElement, NumberField};
use crate::quadratic::QuadraticSpace;

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Options {
    pub tolerance: Option<f64>,
    pub seed: Option<u64>,
}

#[derive(Debug, Clone)]
pub struct Problem {
    pub space: AnySpace,
    pub options: Options,
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidInput(msg.into())
}

fn field_of<'a>(v: &'a Value, key: &str, context: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| invalid(format!("{context}: missing \"{key}\"")))
}

pub fn parse_scalar(v: &Value) -> Result<Rational> {
    match v {
        Value::String(s) => parse_rational(s),
        Value::Number(n) if n.is_i64() || n.is_u64() => parse_rational(&n.to_string()),
        Value::Number(n) => Err(invalid(format!("{n} is not exact; write rationals as \"p/q\" strings"))),
        other => Err(invalid(format!("expected a rational, found {other}"))),
    }
}

fn parse_vector(v: &Value, context: &str) -> Result<Vec<Rational>> {
    v.as_array()
        .ok_or_else(|| invalid(format!("{context}: expected an array")))?
        .iter()
        .map(parse_scalar)
        .collect()
}

/// An element given as a coefficient array, or as a bare rational.
fn parse_coeffs(v: &Value, degree: usize) -> Result<Vec<Rational>> {
    if v.is_array() {
        parse_vector(v, "element")
    } else {
        let mut c = vec![Rational::from_integer(0.into()); degree];
        c[0] = parse_scalar(v)?;
        Ok(c)
    }
}

enum FieldSpec {
    Plain(Arc<NumberField>),
    Cm(Arc<CmField>),
}

fn parse_field(v: &Value) -> Result<FieldSpec> {
    let kind = field_of(v, "type", "field")?.as_str().ok_or_else(|| invalid("field: \"type\" must be a string"))?;
    match kind {
        "totally_real" | "generic" => {
            let f = NumberField::new(parse_vector(field_of(v, "minpoly", "field")?, "minpoly")?)?;
            if kind == "totally_real" && !f.is_totally_real() {
                return Err(Error::NotTotallyReal);
            }
            Ok(FieldSpec::Plain(f))
        }
        "cm" => {
            if v.get("base_minpoly").is_none() {
                return Err(invalid("cm fields are given by \"base_minpoly\" and \"theta_squared\""));
            }
            let base = NumberField::new(parse_vector(field_of(v, "base_minpoly", "field")?, "base_minpoly")?)?;
            let t = parse_coeffs(field_of(v, "theta_squared", "field")?, base.degree())?;
            let t = base.element(t)?;
            Ok(FieldSpec::Cm(CmField::new(base, t)?))
        }
        other => Err(invalid(format!("unknown field type \"{other}\""))),
    }
}

fn parse_form<K: StarField>(form: &Value, elem: impl Fn(&Value) -> Result<K>) -> Result<Vec<Vec<K>>> {
    if let Some(diag) = form.get("diagonal") {
        let entries: Vec<K> = diag
            .as_array()
            .ok_or_else(|| invalid("form.diagonal must be an array"))?
            .iter()
            .map(&elem)
            .collect::<Result<_>>()?;
        let zero = entries.first().ok_or_else(|| invalid("form dimension must be at least 1"))?.zero_like();
        let m = entries.len();
        Ok((0..m)
            .map(|i| (0..m).map(|j| if i == j { entries[i].clone() } else { zero.clone() }).collect())
            .collect())
    } else if let Some(gram) = form.get("gram") {
        gram.as_array()
            .ok_or_else(|| invalid("form.gram must be an array of rows"))?
            .iter()
            .map(|row| {
                row.as_array()
                    .ok_or_else(|| invalid("form.gram rows must be arrays"))?
                    .iter()
                    .map(&elem)
                    .collect::<Result<Vec<K>>>()
            })
            .collect()
    } else {
        Err(invalid("form needs \"diagonal\" or \"gram\""))
    }
}

fn parse_options(v: Option<&Value>) -> Result<Options> {
    let Some(v) = v else { return Ok(Options::default()) };
    let tolerance = match v.get("tolerance") {
        None | Some(Value::Null) => None,
        Some(t) => Some(t.as_f64().filter(|t| *t > 0.0).ok_or_else(|| invalid("options.tolerance must be positive"))?),
    };
    let seed = match v.get("seed") {
        None | Some(Value::Null) => None,
        Some(s) => Some(s.as_u64().ok_or_else(|| invalid("options.seed must be a nonnegative integer"))?),
    };
    Ok(Options { tolerance, seed })
}

fn parse_json(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| invalid(format!("malformed JSON: {e}")))
}

pub fn parse_problem(text: &str) -> Result<Problem> {
    problem_from_value(&parse_json(text)?)
}

pub fn problem_from_value(v: &Value) -> Result<Problem> {
    let field = parse_field(field_of(v, "field", "problem")?)?;
    let form = field_of(v, "form", "problem")?;
    let space = match field {
        FieldSpec::Plain(f) => {
            let gram = parse_form(form, |e| f.element(parse_coeffs(e, f.degree())?))?;
            AnySpace::TotallyReal(HermitianSpace::<FieldElement>::new(gram)?)
        }
        FieldSpec::Cm(f) => {
            let gram = parse_form(form, |e| -> Result<CmElement> { f.element_from_coeffs(parse_coeffs(e, f.degree())?) })?;
            AnySpace::Cm(HermitianSpace::new(gram)?)
        }
    };
    Ok(Problem { space, options: parse_options(v.get("options"))? })
}

/// A raw `{"gram": [[…]]}` over Q.
pub fn parse_raw_gram(v: &Value) -> Result<QuadraticSpace> {
    let rows = field_of(v, "gram", "input")?.as_array().ok_or_else(|| invalid("gram must be an array of rows"))?;
    let gram = rows.iter().map(|r| parse_vector(r, "gram row")).collect::<Result<Vec<_>>>()?;
    QuadraticSpace::new(gram)
}

/// Either a raw Q-gram or a hermitian problem, whose trace form is taken.
pub fn parse_quadratic_or_problem(text: &str) -> Result<QuadraticSpace> {
    let v = parse_json(text)?;
    if v.get("field").is_none() && v.get("gram").is_some() {
        parse_raw_gram(&v)
    } else {
        problem_from_value(&v)?.space.trace_form()
    }
}

fn square_class_json(c: &SquareClass) -> Value {
    match c.representative().to_i64() {
        Some(i) => Value::from(i),
        None => Value::from(c.representative().to_string()),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InvariantsReport {
    pub rank: usize,
    pub signature: [usize; 2],
    pub disc: Value,
    pub hasse: HasseJson,
}

/// Hasse invariants keyed by prime, in numeric order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HasseJson(pub Vec<(String, i8)>);

impl Serialize for HasseJson {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            map.serialize_entry(k, v)?;
        }
        map.end()
    }
}

impl InvariantsReport {
    pub fn of(space: &QuadraticSpace) -> Self {
        let (p, q) = space.signature();
        let mut hasse: Vec<(u64, String, i8)> = space
            .hasse()
            .iter()
            .map(|(p, v)| (p.value().to_u64().unwrap_or(u64::MAX), p.to_string(), v))
            .collect();
        hasse.sort();
        InvariantsReport {
            rank: space.rank(),
            signature: [p, q],
            disc: square_class_json(space.disc()),
            hasse: HasseJson(hasse.into_iter().map(|(_, p, v)| (p, v)).collect()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GramReport {
    pub rank: usize,
    pub gram: Vec<Vec<String>>,
}

impl GramReport {
    pub fn of(space: &QuadraticSpace) -> Self {
        GramReport {
            rank: space.rank(),
            gram: space.gram().iter().map(|r| r.iter().map(format_rational).collect()).collect(),
        }
    }
}

/// Pretty printing with floats written as `{:.16e}` (17 significant digits).
struct ExactFloats(PrettyFormatter<'static>);

impl Formatter for ExactFloats {
    fn write_f64<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        if value.is_finite() {
            write!(writer, "{value:.16e}")
        } else {
            writer.write_all(b"null")
        }
    }
    fn write_f32<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(writer, f64::from(value))
    }
    fn begin_array<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_array(w)
    }
    fn end_array<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array(w)
    }
    fn begin_array_value<W: ?Sized + io::Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_array_value(w, first)
    }
    fn end_array_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array_value(w)
    }
    fn begin_object<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object(w)
    }
    fn end_object<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object(w)
    }
    fn begin_object_key<W: ?Sized + io::Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_object_key(w, first)
    }
    fn begin_object_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object_value(w)
    }
    fn end_object_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object_value(w)
    }
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, ExactFloats(PrettyFormatter::new()));
    value.serialize(&mut ser).expect("reports serialize");
    String::from_utf8(out).expect("serde_json writes UTF-8")
}
