//! Deterministic text serialization for result tables.
//!
//! Every float is rendered with exactly 12 significant digits so that
//! repeated runs produce byte-identical files: fixed-point notation
//! while the exponent stays in `[-4, 11]`, scientific notation outside.
//! Undefined values print as `nan` in CSV and `null` in JSON.

/// Pinned header for trade-off/boundary tables.
pub const BOUNDARY_CSV_HEADER: &str = "eta,p_ab,p_ac,boundary,classical_ab,classical_joint";

/// Renders a float with 12 significant digits.
///
/// Non-finite values print as `nan`, `inf`, or `-inf`; negative zero is
/// normalized to zero first.
pub fn fmt_float(x: f64) -> String {
    if x.is_nan() {
        return "nan".to_string();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".to_string() } else { "-inf".to_string() };
    }
    let x = if x == 0.0 { 0.0 } else { x };
    // One scientific rendering fixes the decimal exponent after
    // rounding; re-render in fixed point when it is small enough.
    let sci = format!("{x:.11e}");
    let epos = sci.rfind('e').expect("scientific float formatting always contains an exponent");
    let exp: i32 = sci[epos + 1..].parse().expect("float exponent parses");
    if !(-4..=11).contains(&exp) {
        return sci;
    }
    let decimals = (11 - exp) as usize;
    format!("{x:.decimals$}")
}

/// CSV rendering of an optional float: `nan` when absent.
pub fn fmt_float_opt(x: Option<f64>) -> String {
    match x {
        Some(v) => fmt_float(v),
        None => "nan".to_string(),
    }
}

/// One typed cell of a result table; knows how to print itself as a CSV
/// field or a JSON value.
#[derive(Debug, Clone)]
pub enum Scalar {
    /// A float, 12 significant digits.
    Float(f64),
    /// An optional float (`nan` / `null` when absent).
    MaybeFloat(Option<f64>),
    /// An integer (counts, dimensions, iterations).
    Int(i64),
    /// A flag.
    Bool(bool),
    /// A label; must not contain commas, quotes, or control characters.
    Text(String),
}

impl Scalar {
    /// CSV field rendering.
    pub fn csv(&self) -> String {
        match self {
            Scalar::Float(x) => fmt_float(*x),
            Scalar::MaybeFloat(x) => fmt_float_opt(*x),
            Scalar::Int(n) => n.to_string(),
            Scalar::Bool(b) => b.to_string(),
            Scalar::Text(s) => s.clone(),
        }
    }

    /// JSON value rendering (undefined floats become `null`).
    pub fn json(&self) -> String {
        match self {
            Scalar::Float(x) if x.is_finite() => fmt_float(*x),
            Scalar::Float(_) => "null".to_string(),
            Scalar::MaybeFloat(Some(x)) if x.is_finite() => fmt_float(*x),
            Scalar::MaybeFloat(_) => "null".to_string(),
            Scalar::Int(n) => n.to_string(),
            Scalar::Bool(b) => b.to_string(),
            Scalar::Text(s) => format!("\"{}\"", escape_json(s)),
        }
    }
}

fn escape_json(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            c if (c as u32) < 0x20 => out.push_str(&format!("\\u{:04x}", c as u32)),
            c => out.push(c),
        }
    }
    out
}

/// Joins cells into one CSV record (no trailing newline).
pub fn csv_row(fields: &[Scalar]) -> String {
    fields.iter().map(Scalar::csv).collect::<Vec<_>>().join(",")
}

/// Renders one JSON object from named cells, keys in the given order.
pub fn json_object(pairs: &[(&str, Scalar)]) -> String {
    let body = pairs
        .iter()
        .map(|(k, v)| format!("\"{}\":{}", escape_json(k), v.json()))
        .collect::<Vec<_>>()
        .join(",");
    format!("{{{body}}}")
}

/// Renders a JSON array of pre-rendered objects, one per line, for
/// diff-friendly output.
pub fn json_array(objects: &[String]) -> String {
    if objects.is_empty() {
        return "[]".to_string();
    }
    let mut out = String::from("[\n");
    for (i, obj) in objects.iter().enumerate() {
        out.push_str("  ");
        out.push_str(obj);
        if i + 1 < objects.len() {
            out.push(',');
        }
        out.push('\n');
    }
    out.push(']');
    out
}
