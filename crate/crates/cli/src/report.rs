use std::fmt::{self, Display, Write};

use monoid_holes::linalg::{IntMatrix, IntVector};

/// Plain-text report: `key: value` lines, lists as a count followed by indented items.
#[derive(Debug, Default)]
pub struct Report {
    text: String,
}

impl Report {
    pub fn new(command: &str) -> Self {
        let mut r = Report::default();
        r.field("command", command);
        r
    }

    pub fn field(&mut self, key: &str, value: impl Display) {
        writeln!(self.text, "{key}: {value}").expect("writing to a String");
    }

    pub fn list<I, T>(&mut self, key: &str, items: I)
    where
        I: IntoIterator<Item = T>,
        T: Display,
    {
        let items: Vec<String> = items.into_iter().map(|x| x.to_string()).collect();
        self.field(key, items.len());
        for item in items {
            writeln!(self.text, "  {item}").expect("writing to a String");
        }
    }

    pub fn vectors(&mut self, key: &str, items: &[IntVector]) {
        self.list(key, items);
    }

    pub fn matrix(&mut self, key: &str, m: &IntMatrix) {
        self.field(key, format_args!("{} {}", m.nrows(), m.ncols()));
        for row in m.rows() {
            writeln!(self.text, "  {row}").expect("writing to a String");
        }
    }
}

impl Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text)
    }
}
