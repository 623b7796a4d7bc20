//! Column-oriented numeric output. CSV carries headers on line one, units on
//! line two, then rows at full round-trip precision; JSON carries the same
//! data plus the resolved config so a run can be replayed from its own
//! output.

use serde::Serialize;

#[derive(Debug, Clone, Serialize)]
pub struct Column {
    pub name: String,
    pub unit: String,
}

impl Column {
    pub fn new(name: &str, unit: &str) -> Self {
        Column {
            name: name.to_string(),
            unit: unit.to_string(),
        }
    }
}

/// One named scalar attached to a table, e.g. a derived time scale.
#[derive(Debug, Clone, Serialize)]
pub struct MetaEntry {
    pub name: String,
    pub value: f64,
    pub unit: String,
}

impl MetaEntry {
    pub fn new(name: &str, value: f64, unit: &str) -> Self {
        MetaEntry {
            name: name.to_string(),
            value,
            unit: unit.to_string(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct CurveTable {
    pub columns: Vec<Column>,
    pub rows: Vec<Vec<f64>>,
    pub meta: Vec<MetaEntry>,
}

impl CurveTable {
    pub fn new(columns: Vec<Column>) -> Self {
        CurveTable {
            columns,
            rows: Vec::new(),
            meta: Vec::new(),
        }
    }

    pub fn push_row(&mut self, row: Vec<f64>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }
}

/// 17 significant digits, always in scientific form; enough to reproduce the
/// exact f64 on read-back, independent of locale.
fn fmt(v: f64) -> String {
    format!("{:.16e}", v)
}

pub fn to_csv(table: &CurveTable) -> String {
    let mut out = String::new();
    let names: Vec<&str> = table.columns.iter().map(|c| c.name.as_str()).collect();
    out.push_str(&names.join(","));
    out.push('\n');
    let units: Vec<&str> = table.columns.iter().map(|c| c.unit.as_str()).collect();
    out.push_str(&units.join(","));
    out.push('\n');
    for row in &table.rows {
        let cells: Vec<String> = row.iter().map(|&v| fmt(v)).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    for m in &table.meta {
        out.push_str(&format!("# {} = {} {}\n", m.name, fmt(m.value), m.unit));
    }
    out
}

#[derive(Serialize)]
struct JsonDocument<'a, C: Serialize> {
    config: &'a C,
    #[serde(skip_serializing_if = "<[_]>::is_empty")]
    meta: &'a [MetaEntry],
    columns: &'a [Column],
    rows: &'a [Vec<f64>],
}

/// Non-finite values have no JSON number representation and serialize as
/// null, which keeps the document parseable.
pub fn to_json<C: Serialize>(table: &CurveTable, config: &C) -> String {
    let doc = JsonDocument {
        config,
        meta: &table.meta,
        columns: &table.columns,
        rows: &table.rows,
    };
    let mut s = serde_json::to_string_pretty(&doc).expect("table serialization cannot fail");
    s.push('\n');
    s
}
