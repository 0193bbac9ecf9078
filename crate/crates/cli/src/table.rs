use std::path::Path;

use serde::Serialize;

use crate::config::Format;
use crate::CliError;

/// A homogeneous record type with a fixed column order.
pub trait Table: Serialize {
    const HEADER: &'static [&'static str];
    fn cells(&self) -> Vec<String>;
}

/// Shortest decimal that round-trips to the same double.
pub fn num(x: f64) -> String {
    format!("{x:?}")
}

pub fn render_csv<T: Table>(records: &[T]) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| CliError::Io(e.to_string());
    w.write_record(T::HEADER).map_err(io)?;
    for r in records {
        w.write_record(r.cells()).map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Io(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| CliError::Io(e.to_string()))
}

pub fn render_json<T: Serialize + ?Sized>(value: &T) -> Result<String, CliError> {
    let mut s = serde_json::to_string_pretty(value).map_err(|e| CliError::Io(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

/// Right-aligned columns under a header.
pub fn render_text<T: Table>(records: &[T]) -> String {
    let rows: Vec<Vec<String>> = records.iter().map(Table::cells).collect();
    let widths: Vec<usize> = T::HEADER
        .iter()
        .enumerate()
        .map(|(i, h)| rows.iter().map(|r| r[i].len()).fold(h.len(), usize::max))
        .collect();
    let line = |cells: Vec<&str>| {
        let mut s = cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:>w$}"))
            .collect::<Vec<_>>()
            .join("  ");
        s.push('\n');
        s
    };
    let mut out = line(T::HEADER.to_vec());
    for r in &rows {
        out += &line(r.iter().map(String::as_str).collect());
    }
    out
}

pub fn render_table<T: Table>(records: &[T], format: Format) -> Result<String, CliError> {
    match format {
        Format::Csv => render_csv(records),
        Format::Json => render_json(records),
        Format::Text => Ok(render_text(records)),
    }
}

/// Writes `text` to `path`, or to stdout when `path` is `None`.
pub fn emit(text: &str, path: Option<&Path>) -> Result<(), CliError> {
    match path {
        Some(p) => {
            std::fs::write(p, text).map_err(|e| CliError::Io(format!("cannot write {}: {e}", p.display())))
        }
        None => {
            use std::io::Write;
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|e| CliError::Io(format!("cannot write to stdout: {e}")))
        }
    }
}

/// Renders `records` in `format` and writes them to `path` (stdout if `None`).
pub fn write_table<T: Table>(records: &[T], format: Format, path: Option<&Path>) -> Result<(), CliError> {
    emit(&render_table(records, format)?, path)
}
