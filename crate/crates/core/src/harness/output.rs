//! JSON and CSV output. JSON keeps struct field order; CSV writes a header
//! row and one row per record.

use std::fs::File;
use std::io::{self, Write};
use std::path::Path;

use serde::Serialize;

use super::config::Format;
use crate::error::{Error, Result};

fn io_err(e: impl std::fmt::Display) -> Error {
    Error::Io(e.to_string())
}

pub fn write_json<T: Serialize + ?Sized, W: Write>(value: &T, mut out: W) -> Result<()> {
    serde_json::to_writer_pretty(&mut out, value).map_err(io_err)?;
    writeln!(out).map_err(io_err)
}

pub fn write_csv<T: Serialize, W: Write>(rows: &[T], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for row in rows {
        w.serialize(row).map_err(io_err)?;
    }
    w.flush().map_err(io_err)
}

/// Writes `value` as JSON or `rows` as CSV, to `path` or standard output.
pub fn emit<T: Serialize + ?Sized, R: Serialize>(
    value: &T,
    rows: &[R],
    format: Format,
    path: Option<&Path>,
) -> Result<()> {
    let out: Box<dyn Write> = match path {
        Some(p) => Box::new(File::create(p).map_err(io_err)?),
        None => Box::new(io::stdout().lock()),
    };
    match format {
        Format::Json => write_json(value, out),
        Format::Csv => write_csv(rows, out),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[derive(Serialize)]
    struct Row {
        p: u64,
        value: String,
        flag: Option<bool>,
    }

    #[test]
    fn csv_has_header_and_rows() {
        let rows = [
            Row { p: 5, value: "1/2".into(), flag: Some(true) },
            Row { p: 7, value: "3".into(), flag: None },
        ];
        let mut buf = Vec::new();
        write_csv(&rows, &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "p,value,flag\n5,1/2,true\n7,3,\n");
    }

    #[test]
    fn json_keeps_field_order() {
        let mut buf = Vec::new();
        write_json(&Row { p: 5, value: "x".into(), flag: None }, &mut buf).unwrap();
        let s = String::from_utf8(buf).unwrap();
        assert!(s.find("\"p\"").unwrap() < s.find("\"value\"").unwrap());
    }
}
