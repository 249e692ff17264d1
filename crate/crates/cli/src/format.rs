//! CSV rendering: `#` comment lines, a header row, numbers at 12 significant
//! digits in the style of C's `%.12g`.

use std::io::Write;
use std::path::Path;

use crate::error::{CliError, CliResult};

pub const SIGNIFICANT_DIGITS: usize = 12;

fn trim_fraction(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// `%.12g`: fixed notation for exponents in `[-4, 12)`, scientific otherwise,
/// trailing zeros removed.
pub fn fmt_g(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("scientific format");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -4 || exp >= SIGNIFICANT_DIGITS as i32 {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{sign}{:02}", trim_fraction(mantissa), exp.abs())
    } else {
        let decimals = (SIGNIFICANT_DIGITS as i32 - 1 - exp) as usize;
        trim_fraction(&format!("{x:.decimals$}")).to_string()
    }
}

/// A CSV document. Row blocks are separated by one blank line.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Table {
    pub comments: Vec<String>,
    pub header: Vec<&'static str>,
    pub blocks: Vec<Vec<Vec<f64>>>,
    pub footer: Vec<String>,
}

impl Table {
    pub fn new(record: String, header: Vec<&'static str>) -> Self {
        Self {
            comments: vec![record],
            header,
            ..Self::default()
        }
    }

    pub fn rows(&self) -> impl Iterator<Item = &Vec<f64>> {
        self.blocks.iter().flatten()
    }

    /// Values of the named column across all blocks.
    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let k = self.header.iter().position(|h| *h == name)?;
        Some(self.rows().map(|r| r[k]).collect())
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for c in &self.comments {
            out.push_str("# ");
            out.push_str(c);
            out.push('\n');
        }
        out.push_str(&self.header.join(","));
        out.push('\n');
        for (b, block) in self.blocks.iter().enumerate() {
            if b > 0 {
                out.push('\n');
            }
            for row in block {
                let cells: Vec<String> = row.iter().map(|&x| fmt_g(x)).collect();
                out.push_str(&cells.join(","));
                out.push('\n');
            }
        }
        for f in &self.footer {
            out.push_str("# ");
            out.push_str(f);
            out.push('\n');
        }
        out
    }
}

/// Writes to `path`, or to stdout when `path` is `None`.
pub fn write_text(path: Option<&Path>, text: &str) -> CliResult<()> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| CliError::io(p, e)),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|e| CliError::io("<stdout>", e))
        }
    }
}
