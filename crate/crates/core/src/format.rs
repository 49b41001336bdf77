//! Plain-text dataset format.
//!
//! ```text
//! n d p
//! y x_1 ... x_d        (n lines, y ∈ {-1, 1})
//! # known_margin=<real>
//! # exact=<true|false>
//! # w_star=<v_1>,<v_2>,...,<v_d>
//! ```
//!
//! Reals are written with 17 significant digits so a write/read cycle is
//! exact for `f64`.

use std::fmt::Write as _;
use std::io::{BufRead, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::model::{build_dataset, Dataset};
use crate::scalar::{c, Scalar};

/// 17 significant digits, round-trip exact for `f64`.
pub fn fmt_real(v: f64) -> String {
    if v.is_nan() {
        "NaN".to_string()
    } else if v.is_infinite() {
        if v > 0.0 { "inf" } else { "-inf" }.to_string()
    } else {
        format!("{v:.16e}")
    }
}

pub fn to_text<T: Scalar>(ds: &Dataset<T>) -> String {
    let mut s = String::new();
    let x = ds.features();
    let _ = writeln!(
        s,
        "{} {} {}",
        ds.n(),
        ds.dim(),
        fmt_real(ds.norm_exponent().to_f64_lossy())
    );
    for (row, &y) in x.iter_rows().zip(ds.labels()) {
        s.push_str(if y > 0 { "1" } else { "-1" });
        for v in row {
            s.push(' ');
            s.push_str(&fmt_real(v.to_f64_lossy()));
        }
        s.push('\n');
    }
    if let Some(g) = ds.known_margin() {
        let _ = writeln!(s, "# known_margin={}", fmt_real(g.to_f64_lossy()));
        let _ = writeln!(s, "# exact={}", ds.exact_margin());
    }
    if let Some(w) = ds.w_star() {
        let parts: Vec<String> = w.iter().map(|v| fmt_real(v.to_f64_lossy())).collect();
        let _ = writeln!(s, "# w_star={}", parts.join(","));
    }
    s
}

pub fn write_dataset<T: Scalar, W: Write>(ds: &Dataset<T>, mut out: W) -> Result<()> {
    out.write_all(to_text(ds).as_bytes())?;
    Ok(())
}

pub fn save_dataset<T: Scalar>(ds: &Dataset<T>, path: impl AsRef<Path>) -> Result<()> {
    std::fs::write(path, to_text(ds))?;
    Ok(())
}

pub fn load_dataset<T: Scalar>(path: impl AsRef<Path>) -> Result<Dataset<T>> {
    let f = std::fs::File::open(path)?;
    read_dataset(std::io::BufReader::new(f))
}

fn parse_real<T: Scalar>(tok: &str, line: usize) -> Result<T> {
    tok.parse::<f64>().map(c).map_err(|_| Error::Parse {
        line,
        msg: format!("not a number: {tok:?}"),
    })
}

pub fn read_dataset<T: Scalar, R: BufRead>(input: R) -> Result<Dataset<T>> {
    let mut header: Option<(usize, usize, T)> = None;
    let mut rows: Vec<Vec<T>> = Vec::new();
    let mut labels: Vec<T> = Vec::new();
    let mut known_margin: Option<T> = None;
    let mut exact = false;
    let mut w_star: Option<Vec<T>> = None;

    for (idx, line) in input.lines().enumerate() {
        let lineno = idx + 1;
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        if let Some(comment) = trimmed.strip_prefix('#') {
            let Some((key, value)) = comment.trim().split_once('=') else {
                continue;
            };
            let value = value.trim();
            match key.trim() {
                "known_margin" => known_margin = Some(parse_real(value, lineno)?),
                "exact" => {
                    exact = value.parse::<bool>().map_err(|_| Error::Parse {
                        line: lineno,
                        msg: format!("bad boolean {value:?}"),
                    })?
                }
                "w_star" => {
                    w_star = Some(
                        value
                            .split(',')
                            .map(|t| parse_real(t.trim(), lineno))
                            .collect::<Result<_>>()?,
                    )
                }
                _ => {}
            }
            continue;
        }
        let toks: Vec<&str> = trimmed.split_whitespace().collect();
        match header {
            None => {
                if toks.len() != 3 {
                    return Err(Error::Parse {
                        line: lineno,
                        msg: "header must be `n d p`".into(),
                    });
                }
                let n = toks[0].parse::<usize>().map_err(|_| Error::Parse {
                    line: lineno,
                    msg: "bad n".into(),
                })?;
                let d = toks[1].parse::<usize>().map_err(|_| Error::Parse {
                    line: lineno,
                    msg: "bad d".into(),
                })?;
                header = Some((n, d, parse_real(toks[2], lineno)?));
            }
            Some((_, d, _)) => {
                if toks.len() != d + 1 {
                    return Err(Error::Parse {
                        line: lineno,
                        msg: format!("expected {} fields, found {}", d + 1, toks.len()),
                    });
                }
                labels.push(parse_real(toks[0], lineno)?);
                rows.push(
                    toks[1..]
                        .iter()
                        .map(|t| parse_real(t, lineno))
                        .collect::<Result<_>>()?,
                );
            }
        }
    }
    let (n, _, p) = header.ok_or(Error::Parse {
        line: 0,
        msg: "missing header".into(),
    })?;
    if rows.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: rows.len(),
        });
    }
    let ds = build_dataset(&Matrix::from_rows(&rows)?, &labels, p)?;
    match known_margin {
        Some(g) => ds.with_certificate(g, exact, w_star),
        None => Ok(ds),
    }
}
