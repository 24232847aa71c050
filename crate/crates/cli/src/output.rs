//! CSV assembly: one provenance comment, a header row, then data rows.

use std::fmt::Write as _;

/// Shortest text that round-trips: 17 significant digits in scientific form.
pub fn num(v: f64) -> String {
    format!("{v:.16e}")
}

#[derive(Debug, Clone, PartialEq)]
pub struct Csv {
    comment: String,
    header: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl Csv {
    pub fn new(subcommand: &str, hash: &str, tol: f64, header: &[&str]) -> Self {
        Csv {
            comment: format!("# lr2d {subcommand} config_sha256={hash} tol={tol:e}"),
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        writeln!(out, "{}", self.comment).unwrap();
        writeln!(out, "{}", self.header.join(",")).unwrap();
        for row in &self.rows {
            writeln!(out, "{}", row.join(",")).unwrap();
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numbers_round_trip() {
        for v in [0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23] {
            assert_eq!(num(v).parse::<f64>().unwrap(), v);
        }
    }

    #[test]
    fn layout() {
        let mut c = Csv::new("x", "ab", 1e-10, &["a", "b"]);
        c.push(vec!["1".into(), num(0.5)]);
        assert_eq!(
            c.render(),
            "# lr2d x config_sha256=ab tol=1e-10\na,b\n1,5.0000000000000000e-1\n"
        );
    }
}
