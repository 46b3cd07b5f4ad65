//! Plain-text q-expansion files.
//!
//! ```text
//! # weight: 12
//! # level: 1
//! # character: trivial
//! # label: delta
//! 1 1
//! 2 -24
//! ```
//!
//! Header lines start with `#` and precede the body. The body holds one
//! `<n> <a(n)>` pair per line, `n` running contiguously from 1. Lines end in
//! LF. An optional `# constant: <int>` header carries a nonzero `a(0)` (only
//! the Eisenstein series need it).

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use num_bigint::BigInt;
use num_traits::Zero;

use super::{FormSource, FormSpec};
use crate::error::{Error, Result};
use crate::series::QSeries;

/// Reads and parses a q-expansion file.
pub fn ingest_qexp(path: &Path) -> Result<(FormSpec, QSeries)> {
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_qexp(&text, path)
}

/// Parses q-expansion text; `path` is used for the form's source and for
/// error messages.
pub fn parse_qexp(text: &str, path: &Path) -> Result<(FormSpec, QSeries)> {
    let err = |line: usize, msg: String| Error::Parse {
        path: path.to_path_buf(),
        line,
        msg,
    };
    let mut weight = None;
    let mut level = None;
    let mut character = None;
    let mut label = None;
    let mut constant = BigInt::zero();
    let mut coeffs = vec![BigInt::zero()];
    let mut in_body = false;

    for (i, raw) in text.split_terminator('\n').enumerate() {
        let lineno = i + 1;
        if raw.contains('\r') {
            return Err(err(lineno, "CR line ending".into()));
        }
        if let Some(rest) = raw.strip_prefix('#') {
            if in_body {
                return Err(err(lineno, "header line after body".into()));
            }
            let (key, value) = rest
                .trim_start()
                .split_once(':')
                .ok_or_else(|| err(lineno, format!("malformed header `{raw}`")))?;
            let value = value.trim();
            let int = |v: &str| {
                v.parse::<u64>()
                    .map_err(|_| err(lineno, format!("malformed header value `{v}`")))
            };
            match key.trim() {
                "weight" => weight = Some(int(value)?),
                "level" => level = Some(int(value)?),
                "character" => character = Some(value.to_string()),
                "label" => label = Some(value.to_string()),
                "constant" => {
                    constant = value
                        .parse()
                        .map_err(|_| err(lineno, format!("non-integer constant `{value}`")))?
                }
                other => return Err(err(lineno, format!("unknown header key `{other}`"))),
            }
            continue;
        }
        in_body = true;
        let mut fields = raw.split(' ');
        let (Some(n), Some(a), None) = (fields.next(), fields.next(), fields.next()) else {
            return Err(err(lineno, format!("expected `<n> <a(n)>`, got `{raw}`")));
        };
        let n: usize = n
            .parse()
            .map_err(|_| err(lineno, format!("malformed index `{n}`")))?;
        let a: BigInt = a
            .parse()
            .map_err(|_| err(lineno, format!("non-integer coefficient `{a}`")))?;
        let expected = coeffs.len();
        if n > expected {
            return Err(Error::MissingIndex {
                path: path.to_path_buf(),
                index: expected,
            });
        }
        if n != expected {
            return Err(err(lineno, format!("index {n} out of order (expected {expected})")));
        }
        coeffs.push(a);
    }

    let weight = weight.ok_or_else(|| err(0, "missing `# weight:` header".into()))?;
    let level = level.ok_or_else(|| err(0, "missing `# level:` header".into()))?;
    let character = character.ok_or_else(|| err(0, "missing `# character:` header".into()))?;
    if character != "trivial" {
        return Err(Error::UnsupportedCharacter {
            path: path.to_path_buf(),
            character,
        });
    }
    if coeffs.len() < 2 {
        return Err(Error::MissingIndex {
            path: path.to_path_buf(),
            index: 1,
        });
    }
    let weight = u32::try_from(weight).map_err(|_| err(0, "weight out of range".into()))?;
    let label = label.unwrap_or_else(|| path.display().to_string());
    let spec = FormSpec::new(
        weight,
        level,
        label,
        FormSource::File(PathBuf::from(path)),
    )?;
    coeffs[0] = constant;
    Ok((spec, QSeries::from_coeffs(coeffs)?))
}

/// Renders a form and its coefficients `1..=B` in the file format.
pub fn write_qexp(spec: &FormSpec, series: &QSeries) -> String {
    let mut out = String::new();
    writeln!(out, "# weight: {}", spec.weight()).unwrap();
    writeln!(out, "# level: {}", spec.level()).unwrap();
    writeln!(out, "# character: {}", spec.character()).unwrap();
    writeln!(out, "# label: {}", spec.label()).unwrap();
    let a0 = &series.coeffs()[0];
    if !a0.is_zero() {
        writeln!(out, "# constant: {a0}").unwrap();
    }
    for (n, a) in series.coeffs().iter().enumerate().skip(1) {
        writeln!(out, "{n} {a}").unwrap();
    }
    out
}
