use std::io::{Read, Write};
use std::ops::{Deref, DerefMut};
use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::DiscreteMeasureSpace;
use crate::error::{invalid, io_err, Error, Result};

/// Real samples over the points of a space.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GridFunction {
    values: Vec<f64>,
}

impl GridFunction {
    /// Wraps the values, rejecting non-finite entries.
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite(i));
        }
        Ok(GridFunction { values })
    }

    /// Wraps without checking; used for outputs already known to be finite.
    pub(crate) fn from_vec(values: Vec<f64>) -> Self {
        GridFunction { values }
    }

    pub fn constant(space: &DiscreteMeasureSpace, c: f64) -> Self {
        GridFunction { values: vec![c; space.len()] }
    }

    pub fn zeros(space: &DiscreteMeasureSpace) -> Self {
        Self::constant(space, 0.0)
    }

    /// Samples `f` at each point index.
    pub fn from_fn(space: &DiscreteMeasureSpace, f: impl FnMut(usize) -> f64) -> Result<Self> {
        Self::new((0..space.len()).map(f).collect())
    }

    /// Samples `f` at the coordinates of a one-dimensional space.
    pub fn from_coords(space: &DiscreteMeasureSpace, f: impl Fn(f64) -> f64) -> Result<Self> {
        let mut values = Vec::with_capacity(space.len());
        for i in 0..space.len() {
            let x = space
                .coord(i)
                .ok_or_else(|| Error::UnsupportedSpace("space has no coordinates".into()))?;
            values.push(f(x));
        }
        Self::new(values)
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.values
    }

    pub fn check_space(&self, space: &DiscreteMeasureSpace) -> Result<()> {
        crate::error::check_len(space.len(), self.values.len())
    }

    pub fn map(&self, f: impl Fn(f64) -> f64) -> GridFunction {
        GridFunction { values: self.values.iter().map(|&v| f(v)).collect() }
    }

    pub fn abs(&self) -> GridFunction {
        self.map(f64::abs)
    }

    pub fn scale(&self, c: f64) -> GridFunction {
        self.map(|v| c * v)
    }

    pub fn mul(&self, other: &[f64]) -> GridFunction {
        GridFunction { values: self.values.iter().zip(other).map(|(a, b)| a * b).collect() }
    }

    pub fn sup_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn read_csv(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let file = std::fs::File::open(path).map_err(io_err(path))?;
        Self::read_csv_from(file)
    }

    /// One value per line, no header.
    pub fn read_csv_from(reader: impl Read) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new().has_headers(false).from_reader(reader);
        let mut values = Vec::new();
        for rec in rdr.records() {
            let rec = rec?;
            let field = rec.get(0).ok_or_else(|| invalid("empty CSV line"))?;
            let v: f64 = field
                .trim()
                .parse()
                .map_err(|_| invalid(format!("cannot parse {field:?} as a number")))?;
            values.push(v);
        }
        Self::new(values)
    }

    pub fn write_csv(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        let file = std::fs::File::create(path).map_err(io_err(path))?;
        self.write_csv_to(file)
    }

    pub fn write_csv_to(&self, writer: impl Write) -> Result<()> {
        let mut wtr = csv::WriterBuilder::new().has_headers(false).from_writer(writer);
        for v in &self.values {
            wtr.write_record([format!("{v:?}")])?;
        }
        wtr.flush().map_err(|e| Error::Csv(e.into()))?;
        Ok(())
    }
}

impl Deref for GridFunction {
    type Target = [f64];

    fn deref(&self) -> &[f64] {
        &self.values
    }
}

impl DerefMut for GridFunction {
    fn deref_mut(&mut self) -> &mut [f64] {
        &mut self.values
    }
}

impl From<GridFunction> for Vec<f64> {
    fn from(g: GridFunction) -> Vec<f64> {
        g.values
    }
}

/// Complex samples over the points of a space.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ComplexGridFunction {
    values: Vec<Complex64>,
}

impl ComplexGridFunction {
    pub fn new(values: Vec<Complex64>) -> Result<Self> {
        if let Some(i) = values.iter().position(|v| !v.re.is_finite() || !v.im.is_finite()) {
            return Err(Error::NonFinite(i));
        }
        Ok(ComplexGridFunction { values })
    }

    pub fn from_real(values: &[f64]) -> Self {
        ComplexGridFunction { values: values.iter().map(|&v| Complex64::new(v, 0.0)).collect() }
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn re(&self) -> GridFunction {
        GridFunction::from_vec(self.values.iter().map(|z| z.re).collect())
    }

    pub fn im(&self) -> GridFunction {
        GridFunction::from_vec(self.values.iter().map(|z| z.im).collect())
    }

    pub fn abs(&self) -> GridFunction {
        GridFunction::from_vec(self.values.iter().map(|z| z.norm()).collect())
    }

    pub fn read_csv_from(reader: impl Read) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new()
            .has_headers(false)
            .flexible(true)
            .from_reader(reader);
        let mut values = Vec::new();
        for rec in rdr.records() {
            let rec = rec?;
            let parse = |k: usize| -> Result<f64> {
                match rec.get(k) {
                    None => Ok(0.0),
                    Some(s) => s.trim().parse().map_err(|_| invalid(format!("cannot parse {s:?} as a number"))),
                }
            };
            values.push(Complex64::new(parse(0)?, parse(1)?));
        }
        Self::new(values)
    }

    /// `re,im` per line.
    pub fn write_csv_to(&self, writer: impl Write) -> Result<()> {
        let mut wtr = csv::WriterBuilder::new().has_headers(false).from_writer(writer);
        for z in &self.values {
            wtr.write_record([format!("{:?}", z.re), format!("{:?}", z.im)])?;
        }
        wtr.flush().map_err(|e| Error::Csv(e.into()))?;
        Ok(())
    }

    pub fn read_csv(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let file = std::fs::File::open(path).map_err(io_err(path))?;
        Self::read_csv_from(file)
    }

    pub fn write_csv(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        let file = std::fs::File::create(path).map_err(io_err(path))?;
        self.write_csv_to(file)
    }
}

impl Deref for ComplexGridFunction {
    type Target = [Complex64];

    fn deref(&self) -> &[Complex64] {
        &self.values
    }
}
