use std::fmt::Write as _;

use icewave_core::dispersion::CurveTrace;

const SIZE: f64 = 600.0;
const HALF: f64 = SIZE / 2.0;
const INNER: f64 = 0.9 * HALF;

/// Plot of the dispersion curve: every branch in its four reflections, the
/// coordinate axes, and a marker at each axis root `(+-r, 0)`.
pub fn trace_svg(branches: &[CurveTrace], axis_roots: &[f64]) -> String {
    let extent = branches
        .iter()
        .flat_map(|b| b.samples.iter().map(|s| s.l1.max(s.l2)))
        .chain(axis_roots.iter().copied())
        .fold(0.0, f64::max);
    let extent = if extent > 0.0 { extent } else { 1.0 };
    let px = |x: f64| HALF + INNER * x / extent;
    let py = |y: f64| HALF - INNER * y / extent;

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    );
    let _ = writeln!(
        out,
        r#"<rect width="{SIZE}" height="{SIZE}" fill="white"/>"#
    );
    let _ = writeln!(
        out,
        r##"<path class="axes" d="M0 {HALF} H{SIZE} M{HALF} 0 V{SIZE}" stroke="#999" stroke-width="1" fill="none"/>"##
    );
    for b in branches {
        for (sx, sy) in [(1.0, 1.0), (-1.0, 1.0), (-1.0, -1.0), (1.0, -1.0)] {
            let mut d = String::new();
            for (i, s) in b.samples.iter().enumerate() {
                let cmd = if i == 0 { 'M' } else { 'L' };
                let _ = write!(d, "{cmd}{:.3} {:.3} ", px(sx * s.l1), py(sy * s.l2));
            }
            let _ = writeln!(
                out,
                r##"<path class="branch" data-branch="{}" d="{}" stroke="#1f4e9c" stroke-width="1.5" fill="none"/>"##,
                b.branch_id,
                d.trim_end()
            );
        }
    }
    for &r in axis_roots {
        for sx in [1.0, -1.0] {
            let _ = writeln!(
                out,
                r##"<circle class="axis-root" data-l1="{:e}" cx="{:.3}" cy="{HALF}" r="4" fill="#c0392b"/>"##,
                sx * r,
                px(sx * r)
            );
        }
    }
    out.push_str("</svg>\n");
    out
}
