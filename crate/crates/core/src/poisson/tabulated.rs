//! Boundary data given by samples on the sphere, evaluated by nearest neighbour.

use std::io::Read;
use std::path::Path;

use crate::error::{Error, Result};
use crate::real::{norm, Real};

/// Deviation from `|ζ| = 1` above which a sample is renormalized with a warning.
pub const RENORMALIZE_WARN: f64 = 1e-6;

/// Samples `(ζ_k, φ(ζ_k))` in file order; lookups break ties toward the lower index.
#[derive(Clone, Debug, PartialEq)]
pub struct TabulatedData<T> {
    n: usize,
    m: usize,
    points: Vec<T>,
    values: Vec<T>,
}

impl<T: Real> TabulatedData<T> {
    /// Builds a table from unit points (renormalized if needed) and `m` values per point.
    pub fn new(n: usize, m: usize, points: Vec<Vec<T>>, values: Vec<Vec<T>>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::BoundaryData("tabulated data needs at least one sample".into()));
        }
        if points.len() != values.len() {
            return Err(Error::BoundaryData("point and value counts differ".into()));
        }
        let mut flat_points = Vec::with_capacity(points.len() * n);
        let mut flat_values = Vec::with_capacity(points.len() * m);
        for (k, (p, v)) in points.iter().zip(&values).enumerate() {
            if p.len() != n || v.len() != m {
                return Err(Error::BoundaryData(format!(
                    "sample {k} has {} coordinates and {} values, expected {n} and {m}",
                    p.len(),
                    v.len()
                )));
            }
            if p.iter().chain(v).any(|c| !c.is_finite()) {
                return Err(Error::BoundaryData(format!("sample {k} has non-finite entries")));
            }
            let r = norm(p);
            if r == T::zero() {
                return Err(Error::BoundaryData(format!("sample {k} is the zero vector")));
            }
            if (r - T::one()).abs() > T::lit(RENORMALIZE_WARN) {
                log::warn!("tabulated sample {k} has |zeta| = {r}; renormalizing");
            }
            flat_points.extend(p.iter().map(|&c| c / r));
            flat_values.extend_from_slice(v);
        }
        Ok(Self { n, m, points: flat_points, values: flat_values })
    }

    /// Parses CSV with a mandatory header: `n` coordinates then `m` values per row,
    /// where `m` (1 or `n`) is inferred from the column count.
    pub fn from_csv_reader<R: Read>(reader: R, n: usize) -> Result<Self> {
        let mut csv = csv::ReaderBuilder::new().has_headers(true).trim(csv::Trim::All).from_reader(reader);
        let width = csv.headers()?.len();
        if width != n + 1 && width != 2 * n {
            return Err(Error::BoundaryData(format!(
                "expected {} or {} columns for n = {n}, header has {width}",
                n + 1,
                2 * n
            )));
        }
        let m = width - n;
        let mut points = Vec::new();
        let mut values = Vec::new();
        for (line, record) in csv.records().enumerate() {
            let record = record?;
            let parsed: Vec<T> = record
                .iter()
                .map(|field| {
                    field
                        .parse::<f64>()
                        .map(T::lit)
                        .map_err(|e| Error::BoundaryData(format!("row {}: {field:?}: {e}", line + 2)))
                })
                .collect::<Result<_>>()?;
            points.push(parsed[..n].to_vec());
            values.push(parsed[n..].to_vec());
        }
        Self::new(n, m, points, values)
    }

    pub fn from_csv_path(path: impl AsRef<Path>, n: usize) -> Result<Self> {
        let file = std::fs::File::open(path)?;
        Self::from_csv_reader(std::io::BufReader::new(file), n)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn value_dim(&self) -> usize {
        self.m
    }

    pub fn len(&self) -> usize {
        self.points.len() / self.n
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Index of the sample nearest to `zeta` (largest inner product; lowest index on ties).
    pub fn nearest(&self, zeta: &[T]) -> usize {
        let mut best = (0, T::neg_infinity());
        for (k, p) in self.points.chunks_exact(self.n).enumerate() {
            let ip: T = p.iter().zip(zeta).map(|(&a, &b)| a * b).sum();
            if ip > best.1 {
                best = (k, ip);
            }
        }
        best.0
    }

    pub fn value(&self, k: usize) -> &[T] {
        &self.values[k * self.m..(k + 1) * self.m]
    }

    pub fn eval(&self, zeta: &[T], out: &mut [T]) {
        out.copy_from_slice(self.value(self.nearest(zeta)));
    }

    /// Largest Euclidean norm over the stored values.
    pub fn sup_norm(&self) -> T {
        self.values
            .chunks_exact(self.m)
            .map(norm)
            .fold(T::zero(), T::max)
    }
}
