//! JSON formats for matrices and schemes.
//!
//! A matrix literal is `{"q": 7, "entries": [[...], ...]}`. A scheme file
//! holds `q, K, N, L, T` and the integer matrices `F, D, E`; when `T > 1`
//! a `layout` note records that row `t * N + n` (0-based) of `E` is server
//! `n` in slot `t`. Output is formatted by hand, one matrix row per line,
//! so the same scheme always serializes to the same bytes.

use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fq::{FieldSpec, FqMatrix};
use crate::scheme::{Provenance, Scheme};

pub const LAYOUT_NOTE: &str = "row t*N + n of E (0-based) is server n in slot t";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixLiteral {
    pub q: u32,
    pub entries: Vec<Vec<i64>>,
    /// Only needed for matrices with no rows.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cols: Option<usize>,
}

impl MatrixLiteral {
    pub fn from_matrix(m: &FqMatrix) -> Self {
        MatrixLiteral {
            q: m.field().q(),
            entries: m.to_rows().into_iter().map(|r| r.into_iter().map(i64::from).collect()).collect(),
            cols: (m.rows() == 0).then_some(m.cols()),
        }
    }

    /// Entries must already lie in `[0, q)`.
    pub fn to_matrix(&self) -> Result<FqMatrix> {
        let field = FieldSpec::new(self.q)?;
        let cols = self.entries.first().map(Vec::len).or(self.cols).unwrap_or(0);
        matrix_from_ints(field, &self.entries, self.entries.len(), cols, "matrix")
    }
}

fn matrix_from_ints(field: FieldSpec, rows: &[Vec<i64>], r: usize, c: usize, name: &str) -> Result<FqMatrix> {
    if rows.len() != r {
        return Err(Error::shape(format!("{name} has {} rows, expected {r}", rows.len())));
    }
    let mut data = Vec::with_capacity(r * c);
    for (i, row) in rows.iter().enumerate() {
        if row.len() != c {
            return Err(Error::shape(format!("{name} row {i} has {} entries, expected {c}", row.len())));
        }
        for &v in row {
            if v < 0 || v >= field.q() as i64 {
                return Err(Error::Invalid(format!("{name} entry {v} outside [0, {})", field.q())));
            }
            data.push(v as u32);
        }
    }
    FqMatrix::from_flat(field, r, c, data)
}

pub fn read_matrix(path: &Path) -> Result<FqMatrix> {
    let text = std::fs::read_to_string(path)?;
    serde_json::from_str::<MatrixLiteral>(&text)?.to_matrix()
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SchemeFile {
    q: u32,
    #[serde(rename = "K")]
    k: usize,
    #[serde(rename = "N")]
    n: usize,
    #[serde(rename = "L")]
    l: usize,
    #[serde(rename = "T", default = "one")]
    t: usize,
    #[serde(rename = "F")]
    f: Vec<Vec<i64>>,
    #[serde(rename = "D")]
    d: Vec<Vec<i64>>,
    #[serde(rename = "E")]
    e: Vec<Vec<i64>>,
    /// Accepted and ignored; the layout is fixed.
    #[serde(default)]
    #[allow(dead_code)]
    layout: Option<String>,
    #[serde(default)]
    provenance: Provenance,
}

fn one() -> usize {
    1
}

pub fn scheme_from_json(text: &str) -> Result<Scheme> {
    let sf: SchemeFile = serde_json::from_str(text)?;
    let field = FieldSpec::new(sf.q)?;
    if sf.t == 0 || sf.n == 0 {
        return Err(Error::shape("N and T must be positive"));
    }
    let nt = sf.n * sf.t;
    let f = matrix_from_ints(field, &sf.f, sf.k, sf.l, "F")?;
    let d = matrix_from_ints(field, &sf.d, sf.k, nt, "D")?;
    let e = matrix_from_ints(field, &sf.e, nt, sf.l, "E")?;
    Scheme::new(f, d, e, sf.t, sf.provenance)
}

fn write_matrix(out: &mut String, name: &str, m: &FqMatrix) {
    let _ = write!(out, "  \"{name}\": [");
    for r in 0..m.rows() {
        let row: Vec<String> = m.row_slice(r).iter().map(u32::to_string).collect();
        let sep = if r + 1 < m.rows() { "," } else { "" };
        let _ = write!(out, "\n    [{}]{sep}", row.join(", "));
    }
    if m.rows() > 0 {
        out.push_str("\n  ");
    }
    out.push_str("],\n");
}

pub fn scheme_to_json(s: &Scheme) -> String {
    let mut out = String::from("{\n");
    let _ = writeln!(out, "  \"q\": {},", s.q());
    let _ = writeln!(out, "  \"K\": {},", s.k());
    let _ = writeln!(out, "  \"N\": {},", s.n());
    let _ = writeln!(out, "  \"L\": {},", s.l());
    let _ = writeln!(out, "  \"T\": {},", s.t());
    write_matrix(&mut out, "F", s.f());
    write_matrix(&mut out, "D", s.d());
    write_matrix(&mut out, "E", s.e());
    if s.t() > 1 {
        let _ = writeln!(out, "  \"layout\": \"{LAYOUT_NOTE}\",");
    }
    let prov = serde_json::to_string_pretty(&s.provenance).expect("provenance serializes");
    let _ = writeln!(out, "  \"provenance\": {}", prov.replace('\n', "\n  "));
    out.push_str("}\n");
    out
}

pub fn read_scheme(path: &Path) -> Result<Scheme> {
    scheme_from_json(&std::fs::read_to_string(path)?)
}

pub fn write_scheme(path: &Path, s: &Scheme) -> Result<()> {
    std::fs::write(path, scheme_to_json(s))?;
    Ok(())
}
