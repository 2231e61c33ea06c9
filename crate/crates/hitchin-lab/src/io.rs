//! Deterministic result tables: CSV, a JSON mirror with sorted keys, and
//! gnuplot `.dat` columns for t-sweeps.

use crate::asymptotics::TableRow;
use crate::error::{LabError, Result};
use crate::fields::{FormDegree, MatrixField};
use crate::linalg::BlockTridiag;
use serde_json::{Map, Value};
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::str::FromStr;

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(i64),
    Text(String),
    Missing,
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Num(v)
    }
}

impl From<Option<f64>> for Cell {
    fn from(v: Option<f64>) -> Self {
        v.map_or(Cell::Missing, Cell::Num)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Text(v)
    }
}

/// 17 significant digits, enough to round-trip any `f64`.
pub fn format_float(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else {
        format!("{v}")
    }
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Num(v) => format_float(*v),
            Cell::Int(v) => v.to_string(),
            Cell::Text(s) if s.contains([',', '"', '\n']) => format!("\"{}\"", s.replace('"', "\"\"")),
            Cell::Text(s) => s.clone(),
            Cell::Missing => String::new(),
        }
    }

    fn dat(&self) -> String {
        match self {
            Cell::Num(v) => format_float(*v),
            Cell::Int(v) => v.to_string(),
            Cell::Text(s) => format!("\"{s}\""),
            Cell::Missing => "NaN".into(),
        }
    }

    fn json(&self) -> Value {
        match self {
            // Non-finite values have no JSON spelling.
            Cell::Num(v) => serde_json::Number::from_f64(*v).map_or(Value::Null, Value::Number),
            Cell::Int(v) => Value::from(*v),
            Cell::Text(s) => Value::String(s.clone()),
            Cell::Missing => Value::Null,
        }
    }
}

/// A named table of rows with fixed columns.
#[derive(Debug, Clone, PartialEq)]
pub struct ResultTable {
    pub name: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl ResultTable {
    pub fn new(name: &str, columns: &[&str]) -> Self {
        ResultTable {
            name: name.to_string(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) -> Result<()> {
        if row.len() != self.columns.len() {
            return Err(LabError::Config(format!(
                "row of {} cells for {} columns in {}",
                row.len(),
                self.columns.len(),
                self.name
            )));
        }
        self.rows.push(row);
        Ok(())
    }

    /// Sorts rows by their CSV rendering so output order never depends on
    /// evaluation order.
    pub fn sorted(mut self) -> Self {
        self.rows.sort_by_cached_key(|r| r.iter().map(Cell::csv).collect::<Vec<_>>().join(","));
        self
    }

    /// A t-sweep has a leading `t` column and gets a `.dat` companion.
    pub fn is_sweep(&self) -> bool {
        self.columns.first().is_some_and(|c| c == "t")
    }

    pub fn to_csv(&self) -> String {
        let mut s = self.columns.join(",");
        s.push('\n');
        for row in &self.rows {
            s.push_str(&row.iter().map(Cell::csv).collect::<Vec<_>>().join(","));
            s.push('\n');
        }
        s
    }

    pub fn to_json(&self) -> String {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let obj: Map<String, Value> = self.columns.iter().cloned().zip(row.iter().map(Cell::json)).collect();
                Value::Object(obj)
            })
            .collect();
        let mut top = Map::new();
        top.insert("columns".into(), Value::from(self.columns.clone()));
        top.insert("name".into(), Value::String(self.name.clone()));
        top.insert("rows".into(), Value::Array(rows));
        let mut s = serde_json::to_string_pretty(&Value::Object(top)).expect("JSON values serialize");
        s.push('\n');
        s
    }

    pub fn to_dat(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "# {}", self.name);
        let _ = writeln!(s, "# {}", self.columns.join(" "));
        for row in &self.rows {
            s.push_str(&row.iter().map(Cell::dat).collect::<Vec<_>>().join(" "));
            s.push('\n');
        }
        s
    }
}

/// Metric-difference rows in the table layout.
pub fn table_rows(rows: &[TableRow]) -> ResultTable {
    let mut t = ResultTable::new(
        "metric_difference",
        &["direction", "t_lo", "t_hi", "exponent", "coefficient", "r_squared", "expected", "decay", "floor"],
    );
    for r in rows {
        t.rows.push(vec![
            r.direction.name().into(),
            r.t_lo.into(),
            r.t_hi.into(),
            r.exponent.into(),
            r.coefficient.into(),
            r.r_squared.into(),
            r.expected.into(),
            format!("{:?}", r.decay).into(),
            r.floor.into(),
        ]);
    }
    t
}

/// The `(t, value)` samples behind each row, as one sweep.
pub fn table_samples(rows: &[TableRow]) -> ResultTable {
    let mut t = ResultTable::new("metric_difference_samples", &["t", "direction", "difference"]);
    for r in rows {
        for &(tt, v) in &r.samples {
            t.rows.push(vec![tt.into(), r.direction.name().into(), v.into()]);
        }
    }
    t
}

fn component_names(degree: FormDegree) -> &'static [&'static str] {
    match degree {
        FormDegree::Zero => &["scalar"],
        FormDegree::One => &["dr", "dtheta"],
        FormDegree::OneZero => &["dz"],
        FormDegree::ZeroOne => &["dzbar"],
        FormDegree::Two => &["dr_dtheta"],
    }
}

/// Node values of a matrix field, one row per node and form component.
/// The `(2,2)` entry is omitted; every field dumped is traceless.
pub fn field_table(field: &MatrixField, name: &str) -> ResultTable {
    let mut t = ResultTable::new(
        name,
        &["component", "r", "theta", "re_m11", "im_m11", "re_m12", "im_m12", "re_m21", "im_m21"],
    );
    let g = &field.grid;
    for (c, label) in field.components.iter().zip(component_names(field.degree)) {
        for k in 0..g.n_r {
            for j in 0..g.n_theta {
                let m = c[g.index(k, j)];
                t.rows.push(vec![
                    (*label).into(),
                    g.r(k).into(),
                    g.theta(j).into(),
                    m[(0, 0)].re.into(),
                    m[(0, 0)].im.into(),
                    m[(0, 1)].re.into(),
                    m[(0, 1)].im.into(),
                    m[(1, 0)].re.into(),
                    m[(1, 0)].im.into(),
                ]);
            }
        }
    }
    t
}

/// `row col value` lines of a block-tridiagonal matrix, row-major.
pub fn triplet_dump(m: &BlockTridiag) -> String {
    let mut s = String::new();
    for (i, j, v) in m.triplets() {
        let _ = writeln!(s, "{i} {j} {}", format_float(v));
    }
    s
}

/// Writes `text` to `path`, creating parent directories.
pub fn write_text(path: &Path, text: &str) -> Result<()> {
    write_file(path, text)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = LabError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            _ => Err(LabError::Parse(format!("unknown output format {s:?} (expected csv or json)"))),
        }
    }
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).map_err(|e| LabError::io(dir, e))?;
    }
    std::fs::write(path, text).map_err(|e| LabError::io(path, e))
}

/// Writes `table` to `path` in `format`; sweeps also get `path.dat`.
/// Returns every path written.
pub fn write_outputs(table: &ResultTable, format: Format, path: &Path) -> Result<Vec<PathBuf>> {
    let text = match format {
        Format::Csv => table.to_csv(),
        Format::Json => table.to_json(),
    };
    write_file(path, &text)?;
    let mut written = vec![path.to_path_buf()];
    if table.is_sweep() {
        let dat = path.with_extension("dat");
        write_file(&dat, &table.to_dat())?;
        written.push(dat);
    }
    Ok(written)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_table_has_header() {
        let t = ResultTable::new("x", &["t", "v"]);
        assert_eq!(t.to_csv(), "t,v\n");
        let v: Value = serde_json::from_str(&t.to_json()).unwrap();
        assert_eq!(v["rows"].as_array().unwrap().len(), 0);
    }

    #[test]
    fn floats_round_trip_through_csv() {
        for v in [0.1, 1.0 / 3.0, 6.02214076e23, -2.5e-300, f64::MIN_POSITIVE] {
            assert_eq!(format_float(v).parse::<f64>().unwrap(), v);
        }
    }

    #[test]
    fn text_with_commas_is_quoted() {
        assert_eq!(Cell::from("a,b").csv(), "\"a,b\"");
    }

    #[test]
    fn wrong_width_row_is_rejected() {
        let mut t = ResultTable::new("x", &["a"]);
        assert!(t.push(vec![1.0.into(), 2.0.into()]).is_err());
    }
}
