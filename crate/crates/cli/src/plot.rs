use std::f64::consts::PI;
use std::fmt::Write as _;

const PALETTE: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"];

/// Line plot of `g` against `θ`, one polyline per radius. `curves` holds
/// `(r, [(θ, g)])` with `θ` increasing.
pub fn intensity_svg(curves: &[(f64, Vec<(f64, f64)>)]) -> String {
    let (w, h, pad) = (720.0, 420.0, 40.0);
    let g_max = curves
        .iter()
        .flat_map(|(_, pts)| pts.iter().map(|p| p.1))
        .filter(|g| g.is_finite())
        .fold(1.0_f64, f64::max)
        * 1.05;
    let px = |t: f64| pad + (t + PI) / (2.0 * PI) * (w - 2.0 * pad);
    let py = |g: f64| h - pad - g / g_max * (h - 2.0 * pad);

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<rect x="{pad}" y="{pad}" width="{}" height="{}" fill="none" stroke="black" stroke-width="1"/>"#,
        w - 2.0 * pad,
        h - 2.0 * pad
    );
    for (t, label) in [(-PI, "-π"), (-PI / 2.0, "-π/2"), (0.0, "0"), (PI / 2.0, "π/2"), (PI, "π")] {
        let x = px(t);
        let _ = writeln!(
            s,
            r##"<line x1="{x:.2}" y1="{pad}" x2="{x:.2}" y2="{:.2}" stroke="#dddddd" stroke-width="0.5"/>"##,
            h - pad
        );
        let _ = writeln!(
            s,
            r#"<text x="{x:.2}" y="{:.2}" font-size="12" text-anchor="middle">{label}</text>"#,
            h - pad + 16.0
        );
    }
    let _ = writeln!(
        s,
        r#"<text x="{:.2}" y="{:.2}" font-size="12" text-anchor="end">{g_max:.3}</text>"#,
        pad - 4.0,
        pad + 4.0
    );
    for (i, (r, pts)) in curves.iter().enumerate() {
        let colour = PALETTE[i % PALETTE.len()];
        let mut d = String::new();
        for &(t, g) in pts.iter().filter(|p| p.1.is_finite()) {
            let _ = write!(d, "{:.2},{:.2} ", px(t), py(g));
        }
        let _ = writeln!(
            s,
            r#"<polyline points="{}" fill="none" stroke="{colour}" stroke-width="1.5"/>"#,
            d.trim_end()
        );
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="{:.2}" font-size="12" fill="{colour}">r = {r}</text>"#,
            w - pad - 70.0,
            pad + 16.0 * (i + 1) as f64
        );
    }
    s.push_str("</svg>\n");
    s
}
