//! Tabular reports: CSV with a header, or one `name: key=value …` line per
//! row.

use std::fmt::Write;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Lines,
}

#[derive(Clone, Debug, Default)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

impl Table {
    pub fn new(header: &[&str]) -> Table {
        Table { header: header.iter().map(|h| h.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn render(&self, format: Format) -> String {
        let mut out = String::new();
        match format {
            Format::Csv => {
                let line = |cells: &[String]| cells.iter().map(|c| csv_field(c)).collect::<Vec<_>>().join(",");
                writeln!(out, "{}", line(&self.header)).unwrap();
                for r in &self.rows {
                    writeln!(out, "{}", line(r)).unwrap();
                }
            }
            Format::Lines => {
                for r in &self.rows {
                    let rest: Vec<String> =
                        self.header.iter().zip(r).skip(1).map(|(h, v)| format!("{h}={v}")).collect();
                    writeln!(out, "{}: {}", r[0], rest.join(" ")).unwrap();
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn both_formats() {
        let mut t = Table::new(&["name", "size"]);
        t.push(vec!["a,b".into(), "3".into()]);
        assert_eq!(t.render(Format::Csv), "name,size\n\"a,b\",3\n");
        assert_eq!(t.render(Format::Lines), "a,b: size=3\n");
    }
}
