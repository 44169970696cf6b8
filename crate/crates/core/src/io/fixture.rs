//! Hansch π and Hammett σ constants for 25 aromatic substituents at the
//! *para* and *meta* positions.

use std::fmt;
use std::str::FromStr;

use super::parse_table;
use crate::data::Dataset;

/// The bundled substituent table, all four descriptor columns.
pub const SUBSTITUENTS_CSV: &str = include_str!("../../fixtures/table1.csv");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Fixture {
    /// Columns `pi_p`, `sigma_p`.
    Para,
    /// Columns `pi_m`, `sigma_m`.
    Meta,
}

impl Fixture {
    pub fn as_str(self) -> &'static str {
        match self {
            Fixture::Para => "para",
            Fixture::Meta => "meta",
        }
    }

    pub fn columns(self) -> [&'static str; 2] {
        match self {
            Fixture::Para => ["pi_p", "sigma_p"],
            Fixture::Meta => ["pi_m", "sigma_m"],
        }
    }

    /// The full four-column table.
    pub fn table() -> Dataset {
        parse_table(SUBSTITUENTS_CSV).expect("bundled fixture parses")
    }

    /// The two columns for this substitution site.
    pub fn dataset(self) -> Dataset {
        let table = Self::table();
        let cols: Vec<usize> = self
            .columns()
            .iter()
            .map(|c| table.column_index(c).expect("fixture column"))
            .collect();
        table.select_columns(&cols).expect("fixture columns")
    }
}

impl fmt::Display for Fixture {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Fixture {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "para" => Ok(Fixture::Para),
            "meta" => Ok(Fixture::Meta),
            other => Err(format!("unknown fixture `{other}` (expected para or meta)")),
        }
    }
}
