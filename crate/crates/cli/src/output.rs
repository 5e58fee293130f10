//! Output records and their CSV / JSON-lines rendering.

use std::io::Write;

use clap::ValueEnum;
use serde::ser::{Serialize, SerializeMap, Serializer};

use pstirling::sums::IdentityReport;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// Ordered string pairs, serialized as a JSON object.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Fields(pub Vec<(String, String)>);

impl Fields {
    pub fn push(&mut self, key: &str, value: impl ToString) {
        self.0.push((key.to_string(), value.to_string()));
    }
}

impl Serialize for Fields {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            map.serialize_entry(k, v)?;
        }
        map.end()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RecordKind {
    Table,
    Identity,
    Mc,
}

/// One line of output. Rationals are always rendered as `num/den` strings.
#[derive(Clone, Debug, serde::Serialize)]
pub struct OutputRecord {
    pub schema_version: u32,
    pub kind: RecordKind,
    pub name: String,
    pub params: Fields,
    pub values: Fields,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pass: Option<bool>,
}

impl OutputRecord {
    pub fn new(kind: RecordKind, name: impl Into<String>, params: Fields, values: Fields, pass: Option<bool>) -> Self {
        OutputRecord {
            schema_version: SCHEMA_VERSION,
            kind,
            name: name.into(),
            params,
            values,
            pass,
        }
    }

    pub fn from_report(rep: &IdentityReport) -> Self {
        let mut values = Fields::default();
        values.push("lhs", &rep.lhs);
        values.push("middle", &rep.middle);
        values.push("rhs", &rep.rhs);
        OutputRecord::new(
            RecordKind::Identity,
            rep.identity.clone(),
            Fields(rep.params.clone()),
            values,
            Some(rep.pass),
        )
    }

    /// Table rows carry only their values; reports lead with name and params.
    fn csv_header(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.kind != RecordKind::Table {
            out.push("name".to_string());
            out.extend(self.params.0.iter().map(|(k, _)| k.clone()));
        }
        out.extend(self.values.0.iter().map(|(k, _)| k.clone()));
        if self.pass.is_some() {
            out.push("pass".into());
        }
        out
    }

    fn csv_row(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.kind != RecordKind::Table {
            out.push(self.name.clone());
            out.extend(self.params.0.iter().map(|(_, v)| v.clone()));
        }
        out.extend(self.values.0.iter().map(|(_, v)| v.clone()));
        if let Some(p) = self.pass {
            out.push(p.to_string());
        }
        out
    }
}

pub fn write_records(out: impl Write, records: &[OutputRecord], format: Format, header: bool) -> std::io::Result<()> {
    match format {
        Format::Json => {
            let mut out = out;
            for r in records {
                serde_json::to_writer(&mut out, r)?;
                out.write_all(b"\n")?;
            }
            out.flush()
        }
        Format::Csv => {
            let mut w = csv::WriterBuilder::new().flexible(true).from_writer(out);
            if header {
                if let Some(first) = records.first() {
                    w.write_record(first.csv_header())?;
                }
            }
            for r in records {
                w.write_record(r.csv_row())?;
            }
            w.flush()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> OutputRecord {
        let mut params = Fields::default();
        params.push("dist", "finite:0:1/2,2:1/2");
        let mut values = Fields::default();
        values.push("lhs", "7/2");
        OutputRecord::new(RecordKind::Identity, "corollary8", params, values, Some(true))
    }

    #[test]
    fn json_keeps_field_order() {
        let mut buf = Vec::new();
        write_records(&mut buf, &[sample()], Format::Json, false).unwrap();
        let line = String::from_utf8(buf).unwrap();
        assert_eq!(
            line,
            "{\"schema_version\":1,\"kind\":\"identity\",\"name\":\"corollary8\",\
             \"params\":{\"dist\":\"finite:0:1/2,2:1/2\"},\"values\":{\"lhs\":\"7/2\"},\"pass\":true}\n"
        );
    }

    #[test]
    fn csv_quotes_commas() {
        let mut buf = Vec::new();
        write_records(&mut buf, &[sample()], Format::Csv, true).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text, "name,dist,lhs,pass\ncorollary8,\"finite:0:1/2,2:1/2\",7/2,true\n");
    }
}
