use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use crate::error::{Error, ParseError, ParseErrorKind, Result};
use crate::integrand::{FourierSeries, HarmonicSeries, Integrand, PeriodicSpline};
use crate::sphere_geometry::{Icosphere, Vector};

/// Degree of the least-squares harmonic fit used for sampled n = 2 data.
pub const SAMPLED_HARMONIC_DEGREE: usize = 16;

/// Parsed content of an integrand definition file.
#[derive(Clone, Debug, PartialEq)]
pub struct IntegrandSpec {
    pub dim: usize,
    pub body: SpecBody,
    /// Line of the `kind` entry; build-time errors are reported there.
    pub kind_line: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub enum SpecBody {
    Fourier {
        a0: f64,
        cos: BTreeMap<usize, f64>,
        sin: BTreeMap<usize, f64>,
    },
    Harmonic {
        terms: BTreeMap<(usize, i64), f64>,
    },
    Sampled {
        values: PathBuf,
    },
}

enum Key {
    Dim,
    Kind,
    A0,
    Cos(usize),
    Sin(usize),
    Y(usize, i64),
    Values,
}

fn parse_key(raw: &str) -> Option<Key> {
    let words: Vec<&str> = raw.split_whitespace().collect();
    match words.as_slice() {
        ["dim"] => Some(Key::Dim),
        ["kind"] => Some(Key::Kind),
        ["a0"] => Some(Key::A0),
        ["values"] => Some(Key::Values),
        ["y", l, m] => {
            let l: usize = l.parse().ok()?;
            let m: i64 = m.parse().ok()?;
            (m.unsigned_abs() as usize <= l).then_some(Key::Y(l, m))
        }
        [w] => {
            let k = |prefix: &str| -> Option<usize> {
                let d = w.strip_prefix(prefix)?;
                let k: usize = d.parse().ok()?;
                (k >= 1 && d.chars().all(|c| c.is_ascii_digit())).then_some(k)
            };
            k("cos").map(Key::Cos).or_else(|| k("sin").map(Key::Sin))
        }
        _ => None,
    }
}

fn number(raw: &str, line: usize) -> std::result::Result<f64, ParseError> {
    match raw.parse::<f64>() {
        Ok(v) if v.is_finite() => Ok(v),
        _ => Err(ParseError {
            line,
            kind: ParseErrorKind::NonFinite(raw.to_string()),
        }),
    }
}

/// Parses the line-oriented definition format.
pub fn parse_spec(text: &str) -> std::result::Result<IntegrandSpec, ParseError> {
    let err = |line, kind| ParseError { line, kind };
    let mut dim: Option<(usize, usize)> = None;
    let mut kind: Option<(String, usize)> = None;
    let mut a0: Option<f64> = None;
    let mut cos = BTreeMap::new();
    let mut sin = BTreeMap::new();
    let mut terms = BTreeMap::new();
    let mut values: Option<PathBuf> = None;
    let mut seen: BTreeMap<String, usize> = BTreeMap::new();
    let mut last_line = 0;
    let mut coefficient_lines: Vec<(usize, &'static str)> = Vec::new();

    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        last_line = line;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (k, v) = content.split_once('=').ok_or(err(line, ParseErrorKind::Malformed))?;
        let (k, v) = (k.trim(), v.trim());
        if k.is_empty() || v.is_empty() {
            return Err(err(line, ParseErrorKind::Malformed));
        }
        let key = parse_key(k).ok_or_else(|| err(line, ParseErrorKind::UnknownKey(k.to_string())))?;
        let canonical = k.split_whitespace().collect::<Vec<_>>().join(" ");
        if seen.insert(canonical.clone(), line).is_some() {
            return Err(err(line, ParseErrorKind::Duplicate(canonical)));
        }
        match key {
            Key::Dim => {
                let d = match v {
                    "1" => 1,
                    "2" => 2,
                    _ => return Err(err(line, ParseErrorKind::BadDim(v.to_string()))),
                };
                dim = Some((d, line));
            }
            Key::Kind => {
                if !matches!(v, "fourier" | "harmonic" | "sampled") {
                    return Err(err(line, ParseErrorKind::BadKind(v.to_string())));
                }
                kind = Some((v.to_string(), line));
            }
            Key::A0 => {
                a0 = Some(number(v, line)?);
                coefficient_lines.push((line, "fourier"));
            }
            Key::Cos(k) => {
                cos.insert(k, number(v, line)?);
                coefficient_lines.push((line, "fourier"));
            }
            Key::Sin(k) => {
                sin.insert(k, number(v, line)?);
                coefficient_lines.push((line, "fourier"));
            }
            Key::Y(l, m) => {
                terms.insert((l, m), number(v, line)?);
                coefficient_lines.push((line, "harmonic"));
            }
            Key::Values => {
                values = Some(PathBuf::from(v));
                coefficient_lines.push((line, "sampled"));
            }
        }
    }

    let (dim, dim_line) = dim.ok_or(err(last_line, ParseErrorKind::Missing("dim")))?;
    let (kind, kind_line) = kind.ok_or(err(last_line, ParseErrorKind::Missing("kind")))?;
    let valid = matches!((dim, kind.as_str()), (1, "fourier") | (2, "harmonic") | (_, "sampled"));
    if !valid {
        return Err(err(
            kind_line.max(dim_line),
            ParseErrorKind::DimKindMismatch { dim, kind },
        ));
    }
    // Coefficient keys belonging to another kind are unknown for this one.
    if let Some(&(line, _)) = coefficient_lines.iter().find(|(_, k)| *k != kind) {
        let key = seen
            .iter()
            .find(|(_, &l)| l == line)
            .map(|(k, _)| k.clone())
            .unwrap_or_default();
        return Err(err(line, ParseErrorKind::UnknownKey(key)));
    }
    let body = match kind.as_str() {
        "fourier" => SpecBody::Fourier {
            a0: a0.ok_or(err(last_line, ParseErrorKind::Missing("a0")))?,
            cos,
            sin,
        },
        "harmonic" => SpecBody::Harmonic { terms },
        _ => SpecBody::Sampled {
            values: values.ok_or(err(last_line, ParseErrorKind::Missing("values")))?,
        },
    };
    Ok(IntegrandSpec { dim, body, kind_line })
}

/// Canonical text form; `parse_spec(render_spec(s))` reproduces `s` up to
/// line numbers.
pub fn render_spec(spec: &IntegrandSpec) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "dim = {}", spec.dim);
    match &spec.body {
        SpecBody::Fourier { a0, cos, sin } => {
            let _ = writeln!(out, "kind = fourier");
            let _ = writeln!(out, "a0 = {a0:?}");
            for (k, v) in cos {
                let _ = writeln!(out, "cos{k} = {v:?}");
            }
            for (k, v) in sin {
                let _ = writeln!(out, "sin{k} = {v:?}");
            }
        }
        SpecBody::Harmonic { terms } => {
            let _ = writeln!(out, "kind = harmonic");
            for ((l, m), v) in terms {
                let _ = writeln!(out, "y {l} {m} = {v:?}");
            }
        }
        SpecBody::Sampled { values } => {
            let _ = writeln!(out, "kind = sampled");
            let _ = writeln!(out, "values = {}", values.display());
        }
    }
    out
}

impl IntegrandSpec {
    /// Builds with relative sample paths resolved against the working
    /// directory.
    pub fn build(&self) -> Result<Integrand> {
        self.build_in(Path::new("."))
    }

    /// Builds with relative sample paths resolved against `base`.
    pub fn build_in(&self, base: &Path) -> Result<Integrand> {
        let positivity = |e: Error| match e {
            Error::NotPositive { min } => Error::Parse(ParseError {
                line: self.kind_line,
                kind: ParseErrorKind::Positivity { min },
            }),
            other => other,
        };
        match &self.body {
            SpecBody::Fourier { a0, cos, sin } => {
                let deg = cos.keys().chain(sin.keys()).copied().max().unwrap_or(0);
                let mut c = vec![0.0; deg];
                let mut s = vec![0.0; deg];
                for (&k, &v) in cos {
                    c[k - 1] = v;
                }
                for (&k, &v) in sin {
                    s[k - 1] = v;
                }
                Integrand::fourier(FourierSeries::new(*a0, &c, &s)?).map_err(positivity)
            }
            SpecBody::Harmonic { terms } => {
                let t: Vec<(usize, i64, f64)> = terms.iter().map(|(&(l, m), &v)| (l, m, v)).collect();
                Integrand::harmonic(HarmonicSeries::new(&t)?).map_err(positivity)
            }
            SpecBody::Sampled { values } => {
                let path = if values.is_absolute() {
                    values.clone()
                } else {
                    base.join(values)
                };
                let rows = read_rows(&path, self.dim + if self.dim == 1 { 1 } else { 2 }).map_err(|e| match e {
                    Error::Parse(p) => Error::Parse(ParseError {
                        line: self.kind_line,
                        kind: p.kind,
                    }),
                    other => other,
                })?;
                self.build_sampled(&rows).map_err(positivity)
            }
        }
    }

    fn build_sampled(&self, rows: &[Vec<f64>]) -> Result<Integrand> {
        if self.dim == 1 {
            let angles: Vec<f64> = rows.iter().map(|r| r[0]).collect();
            let values: Vec<f64> = rows.iter().map(|r| r[1]).collect();
            return Integrand::spline(PeriodicSpline::new(&angles, &values)?);
        }
        let pts: Vec<Vector> = rows
            .iter()
            .map(|r| Vector::new(&r[..3]).normalized().ok_or(Error::DegenerateVector))
            .collect::<Result<_>>()?;
        let values: Vec<f64> = rows.iter().map(|r| r[3]).collect();
        let ico = Icosphere::cached(crate::integrand::ICO_LEVEL);
        let on_grid = pts.len() == ico.len()
            && pts
                .iter()
                .zip(&ico.vertices)
                .all(|(p, v)| p.max_abs_diff(&v.coords()) < 1e-9);
        let series = if on_grid {
            HarmonicSeries::fit_icosphere(crate::integrand::ICO_LEVEL, &values, SAMPLED_HARMONIC_DEGREE)?
        } else {
            HarmonicSeries::fit(&pts, &values, SAMPLED_HARMONIC_DEGREE)?
        };
        Integrand::harmonic(series)
    }
}

/// Reads numeric CSV rows with exactly `cols` columns; a non-numeric first
/// line is treated as a header.
pub(crate) fn read_rows(path: &Path, cols: usize) -> Result<Vec<Vec<f64>>> {
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let bad = |line: usize, msg: String| {
        Error::Parse(ParseError {
            line,
            kind: ParseErrorKind::Samples(format!("{}:{line}: {msg}", path.display())),
        })
    };
    let mut rows = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let l = raw.trim();
        if l.is_empty() || l.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = l.split(',').map(str::trim).collect();
        let parsed: std::result::Result<Vec<f64>, _> = fields.iter().map(|f| f.parse::<f64>()).collect();
        match parsed {
            Ok(v) => {
                if v.len() != cols {
                    return Err(bad(i + 1, format!("expected {cols} columns, found {}", v.len())));
                }
                if v.iter().any(|x| !x.is_finite()) {
                    return Err(bad(i + 1, "non-finite value".into()));
                }
                rows.push(v);
            }
            Err(_) if rows.is_empty() && i == 0 => continue,
            Err(_) => return Err(bad(i + 1, format!("unparsable row `{l}`"))),
        }
    }
    if rows.is_empty() {
        return Err(bad(0, "no samples".into()));
    }
    Ok(rows)
}

/// Reads and builds a definition file; relative sample paths resolve against
/// the file's directory.
pub fn load(path: &Path) -> Result<Integrand> {
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let spec = parse_spec(&text)?;
    spec.build_in(path.parent().unwrap_or(Path::new(".")))
}
