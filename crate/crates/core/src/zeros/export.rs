use std::fmt::Write as _;
use std::io::{self, Write};

use super::count::{CountHistogram, RootClass};
use super::roots::ZeroSet;

/// Writes `run_id,seed,re,im,abs,class` rows, classifying against the unit
/// circle with each set's own boundary tolerance.
pub fn write_zeros_csv<'a, W: Write>(
    mut w: W,
    sets: impl IntoIterator<Item = (u64, &'a ZeroSet)>,
) -> io::Result<()> {
    writeln!(w, "run_id,seed,re,im,abs,class")?;
    for (run, zs) in sets {
        for &z in &zs.roots {
            let class = RootClass::of(z, 1.0, zs.boundary_tol);
            writeln!(
                w,
                "{run},{},{},{},{},{}",
                zs.provenance.seed,
                z.re,
                z.im,
                z.norm(),
                class.code()
            )?;
        }
    }
    Ok(())
}

/// Writes `count,frequency` rows in increasing count order.
pub fn write_histogram_csv<W: Write>(mut w: W, h: &CountHistogram) -> io::Result<()> {
    writeln!(w, "count,frequency")?;
    for (k, f) in &h.frequencies {
        writeln!(w, "{k},{f}")?;
    }
    Ok(())
}

const INSIDE_FILL: &str = "#d62728";
const OUTSIDE_FILL: &str = "#1f77b4";

/// Scatter plot of zero sets over the unit circle: red inside, blue on or
/// outside. The view covers `|Re z|, |Im z| <= extent`.
pub fn zeros_svg<'a>(sets: impl IntoIterator<Item = &'a ZeroSet>, extent: f64) -> String {
    let size = 600.0;
    let scale = size / (2.0 * extent);
    let px = |x: f64| (x + extent) * scale;
    let py = |y: f64| (extent - y) * scale;
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" viewBox="0 0 {size} {size}">"#
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        s,
        r##"<line x1="0" y1="{c:.2}" x2="{size}" y2="{c:.2}" stroke="#bbbbbb" stroke-width="0.5"/>"##,
        c = py(0.0)
    );
    let _ = writeln!(
        s,
        r##"<line x1="{c:.2}" y1="0" x2="{c:.2}" y2="{size}" stroke="#bbbbbb" stroke-width="0.5"/>"##,
        c = px(0.0)
    );
    let _ = writeln!(
        s,
        r#"<circle cx="{:.2}" cy="{:.2}" r="{:.2}" fill="none" stroke="black" stroke-width="1"/>"#,
        px(0.0),
        py(0.0),
        scale
    );
    for zs in sets {
        for &z in &zs.roots {
            if z.re.abs() > extent || z.im.abs() > extent {
                continue;
            }
            let fill = match RootClass::of(z, 1.0, zs.boundary_tol) {
                RootClass::Inside => INSIDE_FILL,
                _ => OUTSIDE_FILL,
            };
            let _ = writeln!(
                s,
                r#"<circle cx="{:.2}" cy="{:.2}" r="1.6" fill="{fill}"/>"#,
                px(z.re),
                py(z.im)
            );
        }
    }
    s.push_str("</svg>\n");
    s
}
