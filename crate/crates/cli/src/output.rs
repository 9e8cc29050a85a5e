use std::fs;
use std::io::Write;

use serde::Serialize;

use crate::{Failure, Format, RunArgs};

pub fn emit(args: &RunArgs, body: &str) -> Result<(), Failure> {
    match &args.out {
        Some(path) => fs::write(path, body).map_err(|e| Failure::Config(format!("{}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(body.as_bytes()).map_err(|e| Failure::Config(format!("stdout: {e}")))
        }
    }
}

pub fn json<T: Serialize + ?Sized>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

pub fn csv<T: Serialize>(rows: &[T]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in rows {
        w.serialize(row).expect("flat record");
    }
    String::from_utf8(w.into_inner().expect("in-memory writer")).expect("utf-8")
}

/// Left-aligned columns, from the same records as the csv form.
pub fn text_table<T: Serialize>(rows: &[T]) -> String {
    let data = csv(rows);
    let mut reader = csv::ReaderBuilder::new().has_headers(false).from_reader(data.as_bytes());
    let cells: Vec<Vec<String>> =
        reader.records().map(|r| r.expect("own output").iter().map(str::to_string).collect()).collect();
    let cols = cells.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> =
        (0..cols).map(|c| cells.iter().filter_map(|r| r.get(c)).map(|s| s.chars().count()).max().unwrap_or(0)).collect();
    let mut out = String::new();
    for row in &cells {
        let line: Vec<String> = row.iter().zip(&widths).map(|(s, &w)| format!("{s:<w$}")).collect();
        out.push_str(line.join("  ").trim_end());
        out.push('\n');
    }
    out
}

pub fn table<T: Serialize>(format: Format, rows: &[T]) -> String {
    match format {
        Format::Csv => csv(rows),
        Format::Json => json(rows),
        Format::Text => text_table(rows),
    }
}
