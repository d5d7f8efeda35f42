//! Parsing of the textual flag values into library types.

use alpha_harmonic::kernel::{c_n_alpha, ProblemParams, UnitDirection};
use alpha_harmonic::matrix::Matrix;
use alpha_harmonic::poisson::{BoundaryData, TabulatedData};
use alpha_harmonic::sharp_bounds::ExponentPair;
use num_rational::Ratio;

/// A bad flag value; reported with exit code 2.
#[derive(Debug, thiserror::Error)]
#[error("{0}")]
pub struct UsageError(pub String);

fn usage(msg: impl Into<String>) -> anyhow::Error {
    UsageError(msg.into()).into()
}

/// A number typed on the command line, kept exact when it is a ratio or a short decimal.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Number {
    pub value: f64,
    pub exact: Option<Ratio<i64>>,
}

impl Number {
    pub fn parse(text: &str) -> anyhow::Result<Self> {
        let s = text.trim();
        if matches!(s, "inf" | "infinity" | "∞") {
            return Ok(Self { value: f64::INFINITY, exact: None });
        }
        if let Some((a, b)) = s.split_once('/') {
            let num: i64 = a.trim().parse().map_err(|_| usage(format!("bad numerator in {s:?}")))?;
            let den: i64 = b.trim().parse().map_err(|_| usage(format!("bad denominator in {s:?}")))?;
            if den == 0 {
                return Err(usage(format!("zero denominator in {s:?}")));
            }
            let r = Ratio::new(num, den);
            return Ok(Self { value: num as f64 / den as f64, exact: Some(r) });
        }
        let value: f64 = s.parse().map_err(|_| usage(format!("not a number: {s:?}")))?;
        Ok(Self { value, exact: decimal_ratio(s) })
    }
}

/// `"-1.25"` as `-5/4`; `None` for exponents or too many digits.
fn decimal_ratio(s: &str) -> Option<Ratio<i64>> {
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    if int.len() + frac.len() > 17 || !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) || int.len() + frac.len() == 0 {
        return None;
    }
    let digits: i64 = format!("{int}{frac}").parse().ok()?;
    let r = Ratio::new(digits, 10_i64.checked_pow(frac.len() as u32)?);
    Some(if neg { -r } else { r })
}

pub fn parse_list(text: &str) -> anyhow::Result<Vec<Number>> {
    text.split(',').filter(|s| !s.trim().is_empty()).map(Number::parse).collect()
}

pub fn params(n: usize, alpha: &Number) -> anyhow::Result<ProblemParams<f64>> {
    ProblemParams::new(n, alpha.value).map_err(|e| usage(e.to_string()))
}

/// An exponent pair from `--p` or `--q` (exactly one may be given).
pub fn exponent(p: Option<&Number>, q: Option<&Number>) -> anyhow::Result<ExponentPair<f64>> {
    let pair = match (p, q) {
        (Some(p), None) => match p.exact {
            Some(r) if r > Ratio::from_integer(1) => ExponentPair::from_q_ratio(r / (r - Ratio::from_integer(1))),
            _ => ExponentPair::from_p(p.value),
        },
        (None, Some(q)) => match q.exact {
            Some(r) => ExponentPair::from_q_ratio(r),
            None => ExponentPair::from_q(q.value),
        },
        (None, None) => ExponentPair::from_p(f64::INFINITY),
        (Some(_), Some(_)) => return Err(usage("give either --p or --q, not both")),
    };
    pair.map_err(|e| usage(e.to_string()))
}

/// `radial` (= e₁), `e<i>` (zero-based axis), `beta:<angle>` in the (e₁, e₂)-plane, or
/// comma-separated coordinates.
pub fn direction(spec: &str, n: usize) -> anyhow::Result<UnitDirection<f64>> {
    let spec = spec.trim();
    if spec == "radial" {
        return Ok(UnitDirection::axis(n, 0));
    }
    if spec == "tangential" {
        return Ok(UnitDirection::axis(n, 1));
    }
    if let Some(i) = spec.strip_prefix('e').and_then(|s| s.parse::<usize>().ok()) {
        if i >= n {
            return Err(usage(format!("axis e{i} does not exist for n = {n}")));
        }
        return Ok(UnitDirection::axis(n, i));
    }
    if let Some(b) = spec.strip_prefix("beta:") {
        return Ok(UnitDirection::l_beta(n, Number::parse(b)?.value));
    }
    let coords: Vec<f64> = parse_list(spec)?.iter().map(|v| v.value).collect();
    if coords.len() != n {
        return Err(usage(format!("direction {spec:?} has {} coordinates, expected {n}", coords.len())));
    }
    UnitDirection::new(coords).map_err(|e| usage(e.to_string()))
}

/// Boundary data from a family spec:
/// `coordinate:<i>`, `signed[:<dir>]`, `cap:<h>[:<dir>]`, `constant:<c,...>`,
/// `linear:identity`, `linear:normalized`, `linear:<row-major entries>`, `csv:<path>`.
pub fn boundary(spec: &str, params: &ProblemParams<f64>) -> anyhow::Result<BoundaryData<f64>> {
    let n = params.n();
    let (kind, rest) = spec.split_once(':').unwrap_or((spec, ""));
    let wrap = |r: alpha_harmonic::Result<BoundaryData<f64>>| r.map_err(|e| usage(e.to_string()));
    match kind {
        "coordinate" => {
            let i: usize = if rest.is_empty() { 0 } else { rest.parse().map_err(|_| usage(format!("bad index in {spec:?}")))? };
            wrap(BoundaryData::coordinate(n, i))
        }
        "signed" => Ok(BoundaryData::signed(direction(if rest.is_empty() { "radial" } else { rest }, n)?)),
        "cap" => {
            let (h, dir) = rest.split_once(':').unwrap_or((rest, "radial"));
            wrap(BoundaryData::cap(direction(dir, n)?, Number::parse(h)?.value))
        }
        "constant" => wrap(BoundaryData::constant(n, parse_list(rest)?.iter().map(|v| v.value).collect())),
        "linear" => {
            let matrix = match rest {
                "identity" => Matrix::identity(n),
                "normalized" => Matrix::identity(n).scaled(n as f64 / (params.n_minus_alpha() * c_n_alpha(params))),
                _ => {
                    let entries: Vec<f64> = parse_list(rest)?.iter().map(|v| v.value).collect();
                    let rows = if entries.len() == n { 1 } else { n };
                    Matrix::new(rows, n, entries).map_err(|e| usage(e.to_string()))?
                }
            };
            wrap(BoundaryData::linear(matrix))
        }
        "csv" => {
            let table = TabulatedData::from_csv_path(rest, n).map_err(|e| usage(format!("{rest}: {e}")))?;
            Ok(BoundaryData::tabulated(table))
        }
        _ => Err(usage(format!(
            "unknown boundary family {kind:?}; expected coordinate, signed, cap, constant, linear or csv"
        ))),
    }
}
