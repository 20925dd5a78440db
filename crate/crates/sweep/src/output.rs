use std::fmt::Write as _;
use std::io::Write;

use crate::error::{Result, SweepError};
use crate::sweep::SweepRow;

pub const CSV_HEADER: &str = "param,D,occupied_bins,M,skip,window";

/// `x` to 12 significant digits in the style of C's `%.12g`: fixed notation
/// for decimal exponents in `-4..12`, scientific otherwise, trailing zeros
/// dropped.
pub fn format_sig(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{x:.11e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-4..12).contains(&exp) {
        let decimals = (11 - exp) as usize;
        trim_zeros(format!("{x:.decimals$}"))
    } else {
        let sign = if exp < 0 { '-' } else { '+' };
        format!(
            "{}e{sign}{:02}",
            trim_zeros(mantissa.to_string()),
            exp.abs()
        )
    }
}

fn trim_zeros(s: String) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

pub fn write_csv<W: Write>(rows: &[SweepRow], mut out: W) -> std::io::Result<()> {
    out.write_all(csv_string(rows).as_bytes())?;
    out.flush()
}

pub fn csv_string(rows: &[SweepRow]) -> String {
    let mut s = String::with_capacity(48 * (rows.len() + 1));
    s.push_str(CSV_HEADER);
    s.push('\n');
    for r in rows {
        let _ = writeln!(
            s,
            "{},{},{},{},{},{}",
            format_sig(r.param),
            format_sig(r.degree),
            r.occupied_bins,
            r.bins,
            r.skip,
            r.window
        );
    }
    s
}

/// Reads back the output of [`csv_string`].
pub fn parse_csv(text: &str) -> Result<Vec<SweepRow>> {
    let mut lines = text.split('\n').enumerate();
    match lines.next() {
        Some((_, h)) if h == CSV_HEADER => {}
        _ => {
            return Err(SweepError::Csv {
                line: 1,
                reason: "missing header".into(),
            })
        }
    }
    if !text.ends_with('\n') {
        return Err(SweepError::Csv {
            line: text.lines().count(),
            reason: "no trailing newline".into(),
        });
    }
    let mut rows = Vec::new();
    for (i, line) in lines {
        let line_no = i + 1;
        if line.is_empty() {
            if i == text.matches('\n').count() {
                break;
            }
            return Err(SweepError::Csv {
                line: line_no,
                reason: "blank line".into(),
            });
        }
        let bad = |reason: String| SweepError::Csv {
            line: line_no,
            reason,
        };
        let fields: Vec<&str> = line.split(',').collect();
        let [param, d, occ, m, skip, window] = fields.as_slice() else {
            return Err(bad(format!("expected 6 fields, found {}", fields.len())));
        };
        let real = |t: &str| t.parse::<f64>().map_err(|e| bad(format!("{t:?}: {e}")));
        let int = |t: &str| t.parse::<u64>().map_err(|e| bad(format!("{t:?}: {e}")));
        rows.push(SweepRow {
            param: real(param)?,
            degree: real(d)?,
            occupied_bins: int(occ)? as usize,
            bins: u32::try_from(int(m)?).map_err(|e| bad(e.to_string()))?,
            skip: int(skip)? as usize,
            window: int(window)? as usize,
        });
    }
    Ok(rows)
}

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 400.0;
const MARGIN: f64 = 60.0;

/// Line plot of `D` against the swept parameter.
///
/// Axes span the data with 5% padding; the `D` axis never starts below zero.
/// A single grid point is drawn as a circle.
pub fn render_svg(rows: &[SweepRow], x_label: &str) -> String {
    let (x_lo, x_hi) = padded(rows.iter().map(|r| r.param), false);
    let (y_lo, y_hi) = padded(rows.iter().map(|r| r.degree), true);
    let px = |x: f64| MARGIN + (x - x_lo) / (x_hi - x_lo) * (WIDTH - 2.0 * MARGIN);
    let py = |y: f64| HEIGHT - MARGIN - (y - y_lo) / (y_hi - y_lo) * (HEIGHT - 2.0 * MARGIN);
    let (left, right, top, bottom) = (MARGIN, WIDTH - MARGIN, MARGIN, HEIGHT - MARGIN);

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<path class="axes" d="M{left},{top} V{bottom} H{right}" fill="none" stroke="black"/>"#
    );
    let text = |s: &mut String, x: f64, y: f64, anchor: &str, body: &str| {
        let _ = writeln!(
            s,
            r#"<text x="{x:.2}" y="{y:.2}" text-anchor="{anchor}" font-family="sans-serif" font-size="12">{}</text>"#,
            escape(body)
        );
    };
    text(&mut s, left, bottom + 18.0, "start", &format_sig(x_lo));
    text(&mut s, right, bottom + 18.0, "end", &format_sig(x_hi));
    text(&mut s, left - 6.0, bottom, "end", &format_sig(y_lo));
    text(&mut s, left - 6.0, top + 4.0, "end", &format_sig(y_hi));
    text(
        &mut s,
        (left + right) / 2.0,
        HEIGHT - 16.0,
        "middle",
        x_label,
    );
    let _ = writeln!(
        s,
        r#"<text x="18" y="{:.2}" transform="rotate(-90 18 {:.2})" text-anchor="middle" font-family="sans-serif" font-size="12">D</text>"#,
        (top + bottom) / 2.0,
        (top + bottom) / 2.0
    );

    match rows {
        [] => {}
        [only] => {
            let _ = writeln!(
                s,
                r#"<circle class="ecd" cx="{:.2}" cy="{:.2}" r="3" fill="steelblue"/>"#,
                px(only.param),
                py(only.degree)
            );
        }
        _ => {
            let points: Vec<String> = rows
                .iter()
                .map(|r| format!("{:.2},{:.2}", px(r.param), py(r.degree)))
                .collect();
            let _ = writeln!(
                s,
                r#"<polyline class="ecd" points="{}" fill="none" stroke="steelblue" stroke-width="1.5"/>"#,
                points.join(" ")
            );
        }
    }
    s.push_str("</svg>\n");
    s
}

fn padded(values: impl Iterator<Item = f64>, floor_at_zero: bool) -> (f64, f64) {
    let (mut lo, mut hi) = values
        .filter(|v| v.is_finite())
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| {
            (lo.min(v), hi.max(v))
        });
    if lo > hi {
        (lo, hi) = (0.0, 1.0);
    }
    if hi == lo {
        hi = lo + 1.0;
    }
    let pad = 0.05 * (hi - lo);
    let low = if floor_at_zero && lo >= 0.0 {
        (lo - pad).max(0.0)
    } else {
        lo - pad
    };
    (low, hi + pad)
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

pub fn write_file(path: &std::path::Path, contents: &str) -> Result<()> {
    std::fs::write(path, contents).map_err(|source| SweepError::Io {
        path: path.to_owned(),
        source,
    })
}
