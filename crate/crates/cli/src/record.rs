use std::io::Write;

use anyhow::Result;
use cswap_core::swaptest::ControlDistribution;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Float(f64),
    Int(i64),
    Text(String),
    Bool(bool),
    Empty,
}

impl Cell {
    /// Floats carry 17 significant digits.
    pub fn render(&self) -> String {
        match self {
            Cell::Float(v) => format!("{v:.16e}"),
            Cell::Int(v) => v.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Bool(b) => b.to_string(),
            Cell::Empty => String::new(),
        }
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Float(v)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<u64> for Cell {
    fn from(v: u64) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Bool(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.into())
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Text(v)
    }
}

impl<T: Into<Cell>> From<Option<T>> for Cell {
    fn from(v: Option<T>) -> Self {
        v.map_or(Cell::Empty, Into::into)
    }
}

macro_rules! cells {
    ($($x:expr),* $(,)?) => { vec![$($crate::record::Cell::from($x)),*] };
}
pub(crate) use cells;

/// One output line before the grid and seed columns are prepended.
#[derive(Debug, Clone)]
pub struct Row {
    pub params: Vec<Cell>,
    pub outputs: Vec<Cell>,
    /// Distribution to draw shots from, when the row has one.
    pub dist: Option<ControlDistribution<f64>>,
}

impl Row {
    pub fn new(params: Vec<Cell>, outputs: Vec<Cell>) -> Self {
        Self { params, outputs, dist: None }
    }

    pub fn with_dist(mut self, dist: ControlDistribution<f64>) -> Self {
        self.dist = Some(dist);
        self
    }
}

pub fn csv_writer<W: Write>(w: W) -> csv::Writer<W> {
    csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(w)
}

pub fn write_line<W: Write>(w: &mut csv::Writer<W>, fields: impl IntoIterator<Item = String>) -> Result<()> {
    w.write_record(fields.into_iter().collect::<Vec<_>>())?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn float_format_is_fixed() {
        assert_eq!(Cell::from(0.25).render(), "2.5000000000000000e-1");
        assert_eq!(Cell::from(1.0 / 3.0).render(), "3.3333333333333331e-1");
        assert_eq!(Cell::from(None::<f64>).render(), "");
        let v: f64 = Cell::from(0.1).render().parse().unwrap();
        assert_eq!(v, 0.1);
    }
}
