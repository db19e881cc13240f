//! Serialization: compact JSON and headed CSV, every float at 17
//! significant digits so that files round-trip exactly.

use std::io::{self, Write};

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// `1.2345678901234567e0`: one leading digit and sixteen after the point.
pub fn float(value: f64) -> String {
    if value.is_finite() {
        format!("{value:.16e}")
    } else {
        // CSV has no null; JSON never reaches this branch
        format!("{value}")
    }
}

pub fn optional_float(value: Option<f64>) -> String {
    value.map(float).unwrap_or_default()
}

/// serde_json formatter that fixes the float representation.
#[derive(Debug, Default, Clone, Copy)]
pub struct FixedPrecision;

impl serde_json::ser::Formatter for FixedPrecision {
    fn write_f64<W: ?Sized + Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        writer.write_all(float(value).as_bytes())
    }

    fn write_f32<W: ?Sized + Write>(&mut self, writer: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(writer, f64::from(value))
    }
}

pub fn write_json<T: Serialize + ?Sized>(out: &mut dyn Write, value: &T) -> io::Result<()> {
    let mut serializer = serde_json::Serializer::with_formatter(&mut *out, FixedPrecision);
    value.serialize(&mut serializer).map_err(io::Error::from)?;
    out.write_all(b"\n")
}

/// Header row followed by data rows, all already stringified.
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: Vec<&'static str>) -> Self {
        Self {
            header,
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn write(&self, out: &mut dyn Write) -> io::Result<()> {
        let mut writer = csv::Writer::from_writer(out);
        writer.write_record(&self.header)?;
        for row in &self.rows {
            writer.write_record(row)?;
        }
        writer.flush()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seventeen_significant_digits() {
        assert_eq!(float(80.0), "8.0000000000000000e1");
        assert_eq!(float(-0.125), "-1.2500000000000000e-1");
        let x = 0.1 + 0.2;
        assert_eq!(float(x).parse::<f64>().unwrap(), x);
    }

    #[test]
    fn json_uses_fixed_floats() {
        #[derive(Serialize)]
        struct Row {
            value: f64,
            missing: Option<f64>,
            count: usize,
        }
        let mut buf = Vec::new();
        let row = Row {
            value: 2.0,
            missing: None,
            count: 3,
        };
        write_json(&mut buf, &row).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "{\"value\":2.0000000000000000e0,\"missing\":null,\"count\":3}\n"
        );
    }

    #[test]
    fn csv_has_header() {
        let mut t = Table::new(vec!["a", "c"]);
        t.push(vec![float(1.0), float(0.5)]);
        let mut buf = Vec::new();
        t.write(&mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "a,c\n1.0000000000000000e0,5.0000000000000000e-1\n"
        );
    }
}
