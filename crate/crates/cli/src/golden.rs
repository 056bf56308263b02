//! Reference tables shipped with the binary.

use crate::error::{CliError, CliResult};

pub const TABLE1: &str = include_str!("../golden/table1.csv");
pub const TABLE2: &str = include_str!("../golden/table2.csv");
pub const TABLE3: &str = include_str!("../golden/table3.csv");

/// A CSV table with `#` comment lines skipped.
#[derive(Debug, Clone)]
pub struct Reference {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Reference {
    pub fn parse(text: &str) -> CliResult<Self> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header: Vec<String> = lines
            .next()
            .ok_or_else(|| CliError::validation("reference table has no header"))?
            .split(',')
            .map(|h| h.trim().to_string())
            .collect();
        let mut rows = Vec::new();
        for line in lines {
            let row: Vec<String> = line.split(',').map(|c| c.trim().to_string()).collect();
            if row.len() != header.len() {
                return Err(CliError::validation(format!("reference row {line:?} has {} cells, header has {}", row.len(), header.len())));
            }
            rows.push(row);
        }
        Ok(Self { header, rows })
    }

    /// Built-in table by name, otherwise a file path.
    pub fn load(name: &str) -> CliResult<Self> {
        match name {
            "table1" => Self::parse(TABLE1),
            "table2" => Self::parse(TABLE2),
            "table3" => Self::parse(TABLE3),
            path => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| CliError::validation(format!("cannot read reference {path}: {e}")))?;
                Self::parse(&text)
            }
        }
    }

    pub fn column(&self, name: &str) -> Option<usize> {
        self.header.iter().position(|h| h == name)
    }

    pub fn number(&self, row: usize, col: usize) -> CliResult<f64> {
        let cell = &self.rows[row][col];
        cell.parse()
            .map_err(|_| CliError::validation(format!("reference cell {cell:?} ({}) is not a number", self.header[col])))
    }

    /// Index of every row; the key columns rho1, rho2 and x must be present.
    pub fn keyed(&self) -> CliResult<Vec<(f64, f64, f64, usize)>> {
        let cols = ["rho1", "rho2", "x"].map(|c| self.column(c));
        let [Some(a), Some(b), Some(x)] = cols else {
            return Err(CliError::validation("reference table needs rho1, rho2 and x columns"));
        };
        (0..self.rows.len()).map(|i| Ok((self.number(i, a)?, self.number(i, b)?, self.number(i, x)?, i))).collect()
    }
}
