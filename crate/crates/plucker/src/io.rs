//! File formats: JSON tensor interchange and bare CSV.
//!
//! Indices in files are 1-based; conversion to the crate's 0-based indexing
//! happens here and nowhere else. Serialization is canonical: fixed key
//! order, no whitespace, every float printed with 17 significant digits
//! (`{:.16e}`), sparse entries sorted lexicographically by index. Parsing a
//! canonical string and re-serializing reproduces it byte for byte.
//!
//! Formats:
//!
//! * dense tensor   `{"shape":[…],"layout":"dense","values":[…]}`
//! * sparse tensor  `{"shape":[…],"layout":"sparse","entries":[{"index":[…],"value":v},…]}`
//! * antisymmetric  `{"order":m,"dim":n,"coords":[{"index":[…],"value":v},…]}`
//! * line matrix    `{"matrix":[[…]×4],"generators":[[…],[…]]}` (generators optional)
//! * polytope       `{"A":[[column]…],"b":[…]}`
//! * CSV            one row per line, comma-separated, no header

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::grassmann::AntisymTensor;
use crate::multiview::{PlueckerMatrix, Polytope};
use crate::tensor::DenseTensor;

/// Canonical float form: 17 significant digits, scientific notation.
/// Negative zero is normalized away.
pub fn format_float(v: f64) -> String {
    let v = if v == 0.0 { 0.0 } else { v };
    format!("{:.16e}", v)
}

fn ensure_finite(v: f64, context: &str) -> Result<f64> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::Parse(format!("non-finite value in {}", context)))
    }
}

// ---------------------------------------------------------------------------
// Parsing
// ---------------------------------------------------------------------------

#[derive(Deserialize)]
struct IndexValueJson {
    index: Vec<usize>,
    value: f64,
}

#[derive(Deserialize)]
#[serde(tag = "layout", rename_all = "lowercase")]
enum TensorJson {
    Dense {
        shape: Vec<usize>,
        values: Vec<f64>,
    },
    Sparse {
        shape: Vec<usize>,
        entries: Vec<IndexValueJson>,
    },
}

#[derive(Deserialize)]
struct AntisymJson {
    order: usize,
    dim: usize,
    coords: Vec<IndexValueJson>,
}

#[derive(Deserialize)]
struct PlueckerJson {
    matrix: Vec<Vec<f64>>,
    #[serde(default)]
    generators: Option<Vec<Vec<f64>>>,
}

#[derive(Deserialize)]
struct PolytopeJson {
    #[serde(rename = "A")]
    a: Vec<Vec<f64>>,
    b: Vec<f64>,
}

fn from_json<'a, T: Deserialize<'a>>(text: &'a str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

/// Converts a 1-based file index to the 0-based in-memory form.
fn to_zero_based(index: &[usize], context: &str) -> Result<Vec<usize>> {
    index
        .iter()
        .map(|&i| {
            i.checked_sub(1).ok_or_else(|| {
                Error::Parse(format!("index 0 in {}: file indices are 1-based", context))
            })
        })
        .collect()
}

/// Parses either tensor layout into a dense tensor.
pub fn parse_dense(text: &str) -> Result<DenseTensor> {
    match from_json::<TensorJson>(text)? {
        TensorJson::Dense { shape, values } => {
            for &v in &values {
                ensure_finite(v, "dense tensor values")?;
            }
            DenseTensor::from_values(&shape, values)
        }
        TensorJson::Sparse { shape, entries } => {
            let mut t = DenseTensor::zeros(&shape)?;
            let mut seen: BTreeMap<Vec<usize>, ()> = BTreeMap::new();
            for entry in entries {
                let idx = to_zero_based(&entry.index, "sparse tensor entry")?;
                if idx.len() != shape.len() || idx.iter().zip(&shape).any(|(&i, &d)| i >= d) {
                    return Err(Error::Parse(format!(
                        "sparse entry index {:?} does not fit shape {:?}",
                        entry.index, shape
                    )));
                }
                if seen.insert(idx.clone(), ()).is_some() {
                    return Err(Error::Parse(format!(
                        "sparse entry index {:?} repeats",
                        entry.index
                    )));
                }
                t.set(&idx, ensure_finite(entry.value, "sparse tensor entry")?);
            }
            Ok(t)
        }
    }
}

/// Parses the antisymmetric coordinate form.
pub fn parse_antisym(text: &str) -> Result<AntisymTensor> {
    let raw = from_json::<AntisymJson>(text)?;
    let mut coords = BTreeMap::new();
    for entry in raw.coords {
        let idx = to_zero_based(&entry.index, "antisymmetric coordinates")?;
        if coords
            .insert(
                idx,
                ensure_finite(entry.value, "antisymmetric coordinates")?,
            )
            .is_some()
        {
            return Err(Error::Parse(format!(
                "coordinate index {:?} repeats",
                entry.index
            )));
        }
    }
    AntisymTensor::new(raw.order, raw.dim, coords).map_err(|e| Error::Parse(e.to_string()))
}

/// A tensor read from disk: dense/sparse layouts stay dense, the
/// antisymmetric coordinate form keeps its compact type.
pub enum TensorInput {
    Dense(DenseTensor),
    Antisym(AntisymTensor),
}

impl TensorInput {
    /// The dense view, expanding the antisymmetric form if needed.
    pub fn into_dense(self) -> Result<DenseTensor> {
        match self {
            TensorInput::Dense(t) => Ok(t),
            TensorInput::Antisym(a) => a.to_dense(),
        }
    }
}

/// Dispatches JSON on its fields: `coords` marks the antisymmetric form,
/// `layout` the generic tensor form.
pub fn parse_tensor_json(text: &str) -> Result<TensorInput> {
    let probe: serde_json::Value = from_json(text)?;
    if probe.get("coords").is_some() {
        Ok(TensorInput::Antisym(parse_antisym(text)?))
    } else if probe.get("layout").is_some() {
        Ok(TensorInput::Dense(parse_dense(text)?))
    } else {
        Err(Error::Parse(
            "unrecognized tensor JSON: expected a \"layout\" or \"coords\" field".into(),
        ))
    }
}

pub fn parse_plucker(text: &str) -> Result<PlueckerMatrix> {
    let raw = from_json::<PlueckerJson>(text)?;
    if raw.matrix.len() != 4 || raw.matrix.iter().any(|r| r.len() != 4) {
        return Err(Error::Parse("a line matrix must be 4x4".into()));
    }
    let mut entries = [[0.0; 4]; 4];
    for (dst, src) in entries.iter_mut().zip(&raw.matrix) {
        for (e, &v) in dst.iter_mut().zip(src) {
            *e = ensure_finite(v, "line matrix")?;
        }
    }
    match raw.generators {
        None => PlueckerMatrix::from_matrix(entries),
        Some(gens) => {
            if gens.len() != 2 || gens.iter().any(|g| g.len() != 4) {
                return Err(Error::Parse(
                    "generators must be two homogeneous 4-vectors".into(),
                ));
            }
            let x: [f64; 4] = [gens[0][0], gens[0][1], gens[0][2], gens[0][3]];
            let y: [f64; 4] = [gens[1][0], gens[1][1], gens[1][2], gens[1][3]];
            let p = PlueckerMatrix::from_points(x, y);
            // The stored matrix is authoritative; generators must agree.
            let scale = p.max_abs().max(1.0);
            let agree = p
                .matrix()
                .iter()
                .flatten()
                .zip(entries.iter().flatten())
                .all(|(a, b)| (a - b).abs() <= 1e-9 * scale);
            if !agree {
                return Err(Error::Parse(
                    "the stored matrix disagrees with its generators".into(),
                ));
            }
            Ok(p)
        }
    }
}

pub fn parse_polytope(text: &str) -> Result<Polytope> {
    let raw = from_json::<PolytopeJson>(text)?;
    for col in &raw.a {
        for &v in col {
            ensure_finite(v, "polytope normals")?;
        }
    }
    for &v in &raw.b {
        ensure_finite(v, "polytope offsets")?;
    }
    Polytope::new(raw.a, raw.b)
}

/// Parses bare CSV: one row per line, comma-separated floats, no header.
/// Errors name the offending line and field.
pub fn parse_csv(text: &str) -> Result<Vec<Vec<f64>>> {
    let line_count = text.lines().count();
    let mut rows = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            if lineno + 1 < line_count {
                return Err(Error::Parse(format!("line {}: empty row", lineno + 1)));
            }
            continue;
        }
        let mut row = Vec::new();
        for (field, raw) in line.split(',').enumerate() {
            let v: f64 = raw.trim().parse().map_err(|_| {
                Error::Parse(format!(
                    "line {}, field {}: cannot parse {:?} as a number",
                    lineno + 1,
                    field + 1,
                    raw.trim()
                ))
            })?;
            row.push(ensure_finite(v, &format!("line {}", lineno + 1))?);
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(Error::Parse("empty CSV input".into()));
    }
    let width = rows[0].len();
    if let Some(bad) = rows.iter().position(|r| r.len() != width) {
        return Err(Error::Parse(format!(
            "line {}: expected {} fields, found {}",
            bad + 1,
            width,
            rows[bad].len()
        )));
    }
    Ok(rows)
}

/// One CSV row is a vector, several rows are a matrix.
pub fn csv_to_tensor(rows: &[Vec<f64>]) -> Result<DenseTensor> {
    if rows.len() == 1 {
        Ok(DenseTensor::vector(&rows[0]))
    } else {
        DenseTensor::from_rows(rows)
    }
}

// ---------------------------------------------------------------------------
// Serialization
// ---------------------------------------------------------------------------

fn write_float_list(out: &mut String, values: impl IntoIterator<Item = f64>) {
    out.push('[');
    for (k, v) in values.into_iter().enumerate() {
        if k > 0 {
            out.push(',');
        }
        out.push_str(&format_float(v));
    }
    out.push(']');
}

fn write_index_list(out: &mut String, index: &[usize]) {
    out.push('[');
    for (k, i) in index.iter().enumerate() {
        if k > 0 {
            out.push(',');
        }
        let _ = write!(out, "{}", i + 1);
    }
    out.push(']');
}

/// Canonical dense form.
pub fn dense_to_json(t: &DenseTensor) -> String {
    let mut out = String::from("{\"shape\":[");
    for (k, d) in t.shape().iter().enumerate() {
        if k > 0 {
            out.push(',');
        }
        let _ = write!(out, "{}", d);
    }
    out.push_str("],\"layout\":\"dense\",\"values\":");
    write_float_list(&mut out, t.values().iter().copied());
    out.push('}');
    out
}

/// Canonical sparse form: nonzero entries in row-major (lexicographic) order.
pub fn sparse_to_json(t: &DenseTensor) -> String {
    let mut out = String::from("{\"shape\":[");
    for (k, d) in t.shape().iter().enumerate() {
        if k > 0 {
            out.push(',');
        }
        let _ = write!(out, "{}", d);
    }
    out.push_str("],\"layout\":\"sparse\",\"entries\":[");
    let mut first = true;
    let mut pos = 0usize;
    crate::tensor::each_index(t.shape(), |idx| {
        let v = t.values()[pos];
        pos += 1;
        if v != 0.0 {
            if !first {
                out.push(',');
            }
            first = false;
            out.push_str("{\"index\":");
            write_index_list(&mut out, idx);
            out.push_str(",\"value\":");
            out.push_str(&format_float(v));
            out.push('}');
        }
    });
    out.push_str("]}");
    out
}

/// Canonical antisymmetric coordinate form: nonzero coordinates only,
/// lexicographic by index.
pub fn antisym_to_json(a: &AntisymTensor) -> String {
    let mut out = String::new();
    let _ = write!(
        out,
        "{{\"order\":{},\"dim\":{},\"coords\":[",
        a.order(),
        a.dim()
    );
    for (k, (index, &value)) in a.coords().iter().enumerate() {
        if k > 0 {
            out.push(',');
        }
        out.push_str("{\"index\":");
        write_index_list(&mut out, index);
        out.push_str(",\"value\":");
        out.push_str(&format_float(value));
        out.push('}');
    }
    out.push_str("]}");
    out
}

/// Canonical line-matrix form; generators are included when known.
pub fn plucker_to_json(p: &PlueckerMatrix) -> String {
    let mut out = String::from("{\"matrix\":[");
    for (i, row) in p.matrix().iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        write_float_list(&mut out, row.iter().copied());
    }
    out.push(']');
    if let Some((x, y)) = p.generators() {
        out.push_str(",\"generators\":[");
        write_float_list(&mut out, x);
        out.push(',');
        write_float_list(&mut out, y);
        out.push(']');
    }
    out.push('}');
    out
}

/// Canonical polytope form.
pub fn polytope_to_json(w: &Polytope) -> String {
    let mut out = String::from("{\"A\":[");
    for (k, col) in w.columns().iter().enumerate() {
        if k > 0 {
            out.push(',');
        }
        write_float_list(&mut out, col.iter().copied());
    }
    out.push_str("],\"b\":");
    write_float_list(&mut out, w.offsets().iter().copied());
    out.push('}');
    out
}

/// CSV with canonical floats, one row per line, trailing newline.
pub fn rows_to_csv(rows: &[Vec<f64>]) -> String {
    let mut out = String::new();
    for row in rows {
        let mut first = true;
        for &v in row {
            if !first {
                out.push(',');
            }
            first = false;
            out.push_str(&format_float(v));
        }
        out.push('\n');
    }
    out
}
