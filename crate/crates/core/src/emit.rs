//! CSV, JSON and SVG output for scan records.

use std::fmt::Write as _;
use std::fs::File;
use std::io::{BufRead, BufWriter, Read, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::decision::{threshold, Certificate, Decision, Verdict};
use crate::error::{Error, Result};
use crate::scan::ScanRecord;

pub const CSV_VERSION_LINE: &str = "# cone-min-lab v1";
pub const CSV_COLUMNS: [&str; 7] = [
    "n",
    "lambda",
    "verdict",
    "certificate",
    "margin",
    "lambda_star",
    "wall_time_ms",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
    Svg,
}

impl std::str::FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Self::Csv),
            "json" => Ok(Self::Json),
            "svg" => Ok(Self::Svg),
            other => Err(Error::Domain(format!("unknown format {other:?}"))),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct CsvRow {
    n: u32,
    lambda: f64,
    verdict: Verdict,
    certificate: Option<Certificate>,
    margin: f64,
    lambda_star: f64,
    wall_time_ms: u64,
}

fn csv_error(e: csv::Error) -> Error {
    Error::Io(e.to_string())
}

pub fn write_csv<W: Write>(records: &[ScanRecord], mut out: W) -> Result<()> {
    writeln!(out, "{CSV_VERSION_LINE}")?;
    let mut w = csv::WriterBuilder::new()
        .has_headers(false)
        .from_writer(out);
    w.write_record(CSV_COLUMNS).map_err(csv_error)?;
    for r in records {
        w.serialize(CsvRow {
            n: r.n,
            lambda: r.lambda,
            verdict: r.decision.verdict,
            certificate: r.decision.certificate,
            margin: r.decision.margin,
            lambda_star: r.lambda_star,
            wall_time_ms: r.wall_time_ms,
        })
        .map_err(csv_error)?;
    }
    w.flush()?;
    Ok(())
}

/// Reads records written by [`write_csv`]; diagnostics are not part of the
/// CSV schema and come back empty.
pub fn read_csv<R: BufRead>(mut input: R) -> Result<Vec<ScanRecord>> {
    let mut first = String::new();
    input.read_line(&mut first)?;
    if first.trim_end() != CSV_VERSION_LINE {
        return Err(Error::Parse {
            line: 1,
            message: format!("expected {CSV_VERSION_LINE:?}"),
        });
    }
    let mut r = csv::Reader::from_reader(input);
    let header = r.headers().map_err(csv_error)?;
    if header.iter().ne(CSV_COLUMNS) {
        return Err(Error::Parse {
            line: 2,
            message: format!("unexpected header {header:?}"),
        });
    }
    let mut out = Vec::new();
    for (i, row) in r.deserialize::<CsvRow>().enumerate() {
        let row = row.map_err(|e| Error::Parse {
            line: i + 3,
            message: e.to_string(),
        })?;
        out.push(ScanRecord {
            n: row.n,
            lambda: row.lambda,
            decision: Decision {
                verdict: row.verdict,
                certificate: row.certificate,
                margin: row.margin,
                diagnostics: None,
            },
            lambda_star: row.lambda_star,
            wall_time_ms: row.wall_time_ms,
        });
    }
    Ok(out)
}

pub fn write_json<W: Write>(records: &[ScanRecord], mut out: W) -> Result<()> {
    serde_json::to_writer_pretty(&mut out, records).map_err(|e| Error::Io(e.to_string()))?;
    writeln!(out)?;
    Ok(())
}

pub fn read_json<R: Read>(input: R) -> Result<Vec<ScanRecord>> {
    serde_json::from_reader(input).map_err(|e| Error::Parse {
        line: e.line(),
        message: e.to_string(),
    })
}

const WIDTH: f64 = 720.0;
const HEIGHT: f64 = 480.0;
const PAD: f64 = 60.0;

fn colour(v: Verdict) -> &'static str {
    match v {
        Verdict::Minimizing => "#2b8a3e",
        Verdict::NotMinimizing => "#c92a2a",
        Verdict::Undetermined => "#868e96",
    }
}

/// Standalone SVG of the `(n, λ)` plane: one dot per record, coloured by
/// verdict and faded where the margin is small, with the curve `λ*(n)`.
pub fn write_svg<W: Write>(records: &[ScanRecord], mut out: W) -> Result<()> {
    let (mut n_lo, mut n_hi) = records
        .iter()
        .fold((u32::MAX, 0), |(lo, hi), r| (lo.min(r.n), hi.max(r.n)));
    if records.is_empty() {
        (n_lo, n_hi) = (2, 6);
    }
    if n_lo == n_hi {
        n_lo = n_lo.saturating_sub(1).max(2);
        n_hi = n_lo.max(n_hi) + 1;
    }
    let (l_lo, l_hi) = records
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), r| {
            (lo.min(r.lambda), hi.max(r.lambda))
        });
    let (l_lo, l_hi) = if l_lo < l_hi {
        (l_lo, l_hi)
    } else {
        (0.0, 1.0)
    };
    let x = |n: f64| PAD + (n - f64::from(n_lo)) / f64::from(n_hi - n_lo) * (WIDTH - 2.0 * PAD);
    let y = |l: f64| HEIGHT - PAD - (l - l_lo) / (l_hi - l_lo) * (HEIGHT - 2.0 * PAD);

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<g stroke="black" stroke-width="1"><line x1="{PAD}" y1="{b}" x2="{r}" y2="{b}"/><line x1="{PAD}" y1="{PAD}" x2="{PAD}" y2="{b}"/></g>"#,
        b = HEIGHT - PAD,
        r = WIDTH - PAD
    );
    let _ = writeln!(
        s,
        r#"<g font-family="sans-serif" font-size="12" text-anchor="middle">"#
    );
    for n in n_lo..=n_hi {
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="{:.2}">{n}</text>"#,
            x(f64::from(n)),
            HEIGHT - PAD + 18.0
        );
    }
    for k in 0..=4 {
        let l = l_lo + (l_hi - l_lo) * f64::from(k) / 4.0;
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="end">{l:.4}</text>"#,
            PAD - 6.0,
            y(l) + 4.0
        );
    }
    let _ = writeln!(
        s,
        r#"<text x="{:.2}" y="{:.2}">n</text>"#,
        WIDTH / 2.0,
        HEIGHT - 15.0
    );
    let _ = writeln!(
        s,
        r#"<text x="15" y="{:.2}" transform="rotate(-90 15 {:.2})">λ</text>"#,
        HEIGHT / 2.0,
        HEIGHT / 2.0
    );
    let _ = writeln!(s, "</g>");

    let _ = writeln!(s, r#"<g stroke="none">"#);
    for r in records {
        let m = r.decision.margin.abs();
        let opacity = if r.decision.verdict == Verdict::Undetermined {
            1.0
        } else {
            0.25 + 0.75 * (1e3 * m).tanh()
        };
        let _ = writeln!(
            s,
            r#"<circle cx="{:.2}" cy="{:.2}" r="3" fill="{}" fill-opacity="{opacity:.3}"/>"#,
            x(f64::from(r.n)),
            y(r.lambda),
            colour(r.decision.verdict)
        );
    }
    let _ = writeln!(s, "</g>");

    let mut path = String::new();
    let steps = 200;
    for k in 0..=steps {
        let n = f64::from(n_lo) + f64::from(n_hi - n_lo) * f64::from(k) / f64::from(steps);
        let star = 2.0 * (n - 1.0).sqrt() / n;
        let _ = write!(
            path,
            "{}{:.2},{:.2} ",
            if k == 0 { "M" } else { "L" },
            x(n),
            y(star)
        );
    }
    let _ = writeln!(
        s,
        r##"<path d="{}" fill="none" stroke="#1c7ed6" stroke-width="2"/>"##,
        path.trim_end()
    );
    for n in n_lo..=n_hi {
        let star = threshold(n)?;
        if (l_lo..=l_hi).contains(&star) {
            let _ = writeln!(
                s,
                r##"<circle cx="{:.2}" cy="{:.2}" r="2" fill="#1c7ed6"/>"##,
                x(f64::from(n)),
                y(star)
            );
        }
    }
    let _ = writeln!(s, "</svg>");
    out.write_all(s.as_bytes())?;
    Ok(())
}

/// Writes `records` to `path` in `format`.
pub fn emit(records: &[ScanRecord], format: Format, path: &Path) -> Result<()> {
    let file = File::create(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    let mut w = BufWriter::new(file);
    match format {
        Format::Csv => write_csv(records, &mut w)?,
        Format::Json => write_json(records, &mut w)?,
        Format::Svg => write_svg(records, &mut w)?,
    }
    w.flush()?;
    Ok(())
}
