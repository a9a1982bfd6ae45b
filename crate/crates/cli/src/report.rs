//! Reports: ordered records, tallies and verdicts, rendered as JSON or CSV.

use serde::Serialize;
use serde_json::{Map, Value};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    /// Comma-separated rows.
    Rows,
    /// One structured JSON document.
    #[default]
    Records,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub command: String,
    pub config: Vec<(String, String)>,
    pub columns: Vec<String>,
    pub records: Vec<Vec<String>>,
    pub tallies: Vec<(String, String)>,
    pub verdicts: Vec<Verdict>,
    /// Verdicts are informative only and never fail the run.
    pub census_only: bool,
}

impl Report {
    pub fn new(command: &str, columns: &[&str]) -> Report {
        Report {
            command: command.to_string(),
            config: Vec::new(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            records: Vec::new(),
            tallies: Vec::new(),
            verdicts: Vec::new(),
            census_only: false,
        }
    }

    pub fn config(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.config.push((key.to_string(), value.to_string()));
        self
    }

    pub fn record(&mut self, values: Vec<String>) {
        assert_eq!(values.len(), self.columns.len(), "record arity");
        self.records.push(values);
    }

    pub fn tally(&mut self, key: &str, value: impl ToString) {
        self.tallies.push((key.to_string(), value.to_string()));
    }

    pub fn verdict(&mut self, name: &str, pass: bool, detail: impl Into<String>) {
        self.verdicts.push(Verdict {
            name: name.to_string(),
            pass,
            detail: detail.into(),
        });
    }

    /// Folds another report's tallies and verdicts in under its command name.
    /// Verdicts of a census-only report become tallies.
    pub fn absorb(&mut self, other: Report) {
        let prefix = other.command;
        self.tally(&format!("{prefix}.records"), other.records.len());
        for (k, v) in other.tallies {
            self.tally(&format!("{prefix}.{k}"), v);
        }
        for v in other.verdicts {
            let name = format!("{prefix}.{}", v.name);
            if other.census_only {
                let state = if v.pass { "holds" } else { "violated" };
                self.tally(&name, format!("{state}: {}", v.detail));
            } else {
                self.verdict(&name, v.pass, v.detail);
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.verdicts.iter().all(|v| v.pass)
    }

    pub fn exit_code(&self) -> i32 {
        if self.census_only || self.passed() {
            0
        } else {
            1
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Records => self.render_json(),
            Format::Rows => self.render_csv(),
        }
    }

    fn render_json(&self) -> String {
        let pairs = |v: &[(String, String)]| {
            Value::Object(v.iter().map(|(k, x)| (k.clone(), Value::String(x.clone()))).collect())
        };
        let records: Vec<Value> = self
            .records
            .iter()
            .map(|r| {
                Value::Object(
                    self.columns
                        .iter()
                        .zip(r)
                        .map(|(c, x)| (c.clone(), Value::String(x.clone())))
                        .collect::<Map<_, _>>(),
                )
            })
            .collect();
        let mut doc = Map::new();
        doc.insert("command".into(), Value::String(self.command.clone()));
        doc.insert("config".into(), pairs(&self.config));
        doc.insert("records".into(), Value::Array(records));
        doc.insert("tallies".into(), pairs(&self.tallies));
        doc.insert("verdicts".into(), serde_json::to_value(&self.verdicts).unwrap());
        doc.insert("census_only".into(), Value::Bool(self.census_only));
        doc.insert("pass".into(), Value::Bool(self.passed()));
        let mut s = serde_json::to_string_pretty(&Value::Object(doc)).unwrap();
        s.push('\n');
        s
    }

    fn render_csv(&self) -> String {
        let mut w = csv::WriterBuilder::new().flexible(true).from_writer(Vec::new());
        w.write_record(["command", &self.command]).unwrap();
        for (k, v) in &self.config {
            w.write_record(["config", k, v]).unwrap();
        }
        let mut header = vec!["record".to_string()];
        header.extend(self.columns.iter().cloned());
        w.write_record(&header).unwrap();
        for r in &self.records {
            let mut row = vec!["record".to_string()];
            row.extend(r.iter().cloned());
            w.write_record(&row).unwrap();
        }
        for (k, v) in &self.tallies {
            w.write_record(["tally", k, v]).unwrap();
        }
        for v in &self.verdicts {
            w.write_record(["verdict", &v.name, if v.pass { "pass" } else { "fail" }, &v.detail])
                .unwrap();
        }
        w.write_record(["census_only", if self.census_only { "true" } else { "false" }]).unwrap();
        String::from_utf8(w.into_inner().unwrap()).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn renders_both_formats() {
        let mut r = Report::new("demo", &["a", "b"]);
        r.config("q", 13);
        r.record(vec!["1".into(), "x,y".into()]);
        r.tally("total", 1);
        r.verdict("ok", true, "bound 3 >= 1");
        let csv = r.render(Format::Rows);
        assert!(csv.contains("record,1,\"x,y\""));
        assert!(csv.contains("verdict,ok,pass,bound 3 >= 1"));
        let json: Value = serde_json::from_str(&r.render(Format::Records)).unwrap();
        assert_eq!(json["records"][0]["b"], "x,y");
        assert_eq!(r.exit_code(), 0);
        r.verdict("bad", false, "");
        assert_eq!(r.exit_code(), 1);
        r.census_only = true;
        assert_eq!(r.exit_code(), 0);
    }
}
