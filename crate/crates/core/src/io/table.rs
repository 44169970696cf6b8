use sha2::{Digest, Sha256};

use crate::data::Dataset;
use crate::{Error, Result};

/// Parses a comma-separated table: a header row, then one row per point with
/// the label first and numeric descriptors after it.
///
/// Rows and columns in errors are 1-based; the header is row 1.
pub fn parse_table(text: &str) -> Result<Dataset> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());

    let mut rows = reader.records();
    let header = match rows.next() {
        Some(r) => r.map_err(|e| csv_error(1, e))?,
        None => return Err(parse_error(1, 1, "empty input")),
    };
    if header.len() < 2 {
        return Err(parse_error(1, header.len().max(1), "header needs a label and at least one descriptor column"));
    }
    let columns: Vec<String> = header.iter().skip(1).map(str::to_owned).collect();
    let width = header.len();

    let mut labels: Vec<String> = Vec::new();
    let mut values = Vec::new();
    for (i, record) in rows.enumerate() {
        let row = i + 2;
        let record = record.map_err(|e| csv_error(row, e))?;
        if record.len() == 1 && record[0].is_empty() {
            continue;
        }
        if record.len() != width {
            return Err(parse_error(
                row,
                record.len().min(width) + 1,
                format!("expected {width} cells, found {}", record.len()),
            ));
        }
        let label = &record[0];
        if label.is_empty() {
            return Err(parse_error(row, 1, "empty label"));
        }
        if labels.iter().any(|l| l == label) {
            return Err(parse_error(row, 1, format!("duplicate label `{label}`")));
        }
        let mut cells = Vec::with_capacity(width - 1);
        for (k, cell) in record.iter().enumerate().skip(1) {
            let v: f64 = cell
                .parse()
                .map_err(|_| parse_error(row, k + 1, format!("`{cell}` is not a number")))?;
            if !v.is_finite() {
                return Err(parse_error(row, k + 1, format!("`{cell}` is not finite")));
            }
            cells.push(v);
        }
        labels.push(label.to_owned());
        values.push(cells);
    }
    if labels.is_empty() {
        return Err(parse_error(2, 1, "no data rows"));
    }
    Dataset::new(labels, columns, values)
}

fn parse_error(row: usize, column: usize, reason: impl Into<String>) -> Error {
    Error::Parse {
        row,
        column,
        reason: reason.into(),
    }
}

fn csv_error(row: usize, e: csv::Error) -> Error {
    parse_error(row, 1, e.to_string())
}

/// Writes `data` in the format read by [`parse_table`]. Values use the
/// shortest representation that parses back to the same `f64`.
pub fn write_table(data: &Dataset) -> String {
    let mut out = String::from("label");
    for c in data.column_names() {
        out.push(',');
        out.push_str(c);
    }
    out.push('\n');
    for (label, row) in data.labels().iter().zip(data.values()) {
        out.push_str(label);
        for v in row {
            out.push(',');
            out.push_str(&v.to_string());
        }
        out.push('\n');
    }
    out
}

/// Hex SHA-256 of the canonical table text of `data`.
pub fn dataset_sha256(data: &Dataset) -> String {
    hex::encode(Sha256::digest(write_table(data).as_bytes()))
}
