use std::fmt::Write;

use tracerange::range::RangeApproximation;
use tracerange::Rational;

const WIDTH: f64 = 800.0;
const MARGIN: f64 = 60.0;
const BAND: f64 = 18.0;
const STRIDE: f64 = 28.0;

/// Fixed six-decimal rendering keeps output byte-identical across runs.
fn coord(x: f64) -> String {
    let s = format!("{x:.6}");
    if s == "-0.000000" {
        "0.000000".to_owned()
    } else {
        s
    }
}

fn x_of(r: &Rational) -> f64 {
    MARGIN + WIDTH * r.to_f64()
}

/// A strip chart with one band per approximation, drawn over `[0, 1]`.
///
/// Coordinates are the only floating-point values anywhere in the tool and
/// are for display only.
pub fn emit_svg(approximations: &[RangeApproximation]) -> String {
    let height = 2.0 * MARGIN / 3.0 + STRIDE * approximations.len() as f64;
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{}" height="{}" viewBox="0 0 {} {}">"#,
        coord(WIDTH + 2.0 * MARGIN),
        coord(height),
        coord(WIDTH + 2.0 * MARGIN),
        coord(height)
    );
    out.push_str("<desc>presentation only: coordinates rounded to 6 decimals; exact intervals come from --format json</desc>\n");
    for (row, approx) in approximations.iter().enumerate() {
        let y = MARGIN / 3.0 + STRIDE * row as f64;
        let _ = writeln!(
            out,
            r#"<g class="band" data-depth="{}" data-exact="{}">"#,
            approx.depth(),
            approx.exact()
        );
        let _ = writeln!(
            out,
            r#"<text x="{}" y="{}" font-size="12" text-anchor="end">N={}</text>"#,
            coord(MARGIN - 8.0),
            coord(y + BAND * 0.75),
            approx.depth()
        );
        for part in approx.union().parts() {
            let (lo, hi) = (x_of(part.lo()), x_of(part.hi()));
            if part.is_point() {
                let _ = writeln!(
                    out,
                    r#"<line x1="{x}" y1="{}" x2="{x}" y2="{}" stroke="black"/>"#,
                    coord(y),
                    coord(y + BAND),
                    x = coord(lo)
                );
            } else {
                let _ = writeln!(
                    out,
                    r#"<rect x="{}" y="{}" width="{}" height="{}" fill="black"/>"#,
                    coord(lo),
                    coord(y),
                    coord(hi - lo),
                    coord(BAND)
                );
            }
        }
        out.push_str("</g>\n");
    }
    out.push_str("</svg>\n");
    out
}
