//! Deterministic SVG output for gaskets.

use std::fmt::Write;

use crate::error::{Error, Result};
use crate::gasket::Gasket;

#[derive(Debug, Clone, PartialEq)]
pub struct SvgOptions {
    pub width_px: u32,
    pub stroke: String,
    pub stroke_width_px: f64,
    /// Fill color per generation, cycled. The enclosing circle is never filled.
    pub palette: Vec<String>,
}

impl Default for SvgOptions {
    fn default() -> Self {
        SvgOptions {
            width_px: 800,
            stroke: "#1f2933".into(),
            stroke_width_px: 1.0,
            palette: ["#f6e8c3", "#dfc27d", "#80cdc1", "#35978f", "#01665e", "#bf812d"].map(String::from).to_vec(),
        }
    }
}

/// Six decimals, with negative zero folded into zero.
fn fmt6(v: f64) -> String {
    let s = format!("{v:.6}");
    if s == "-0.000000" {
        "0.000000".into()
    } else {
        s
    }
}

/// Renders one `<circle>` per gasket circle in gasket order. The y axis is
/// flipped so the picture has the usual mathematical orientation.
pub fn render_svg(g: &Gasket, options: &SvgOptions) -> Result<String> {
    if g.circles.is_empty() {
        return Err(Error::EmptyGasket);
    }
    if options.width_px == 0 {
        return Err(Error::InvalidInput("width must be positive".into()));
    }
    let (mut min_x, mut min_y) = (f64::INFINITY, f64::INFINITY);
    let (mut max_x, mut max_y) = (f64::NEG_INFINITY, f64::NEG_INFINITY);
    for c in &g.circles {
        let r = c.radius.abs();
        let y = -c.center[1];
        min_x = min_x.min(c.center[0] - r);
        max_x = max_x.max(c.center[0] + r);
        min_y = min_y.min(y - r);
        max_y = max_y.max(y + r);
    }
    let margin = 0.02 * (max_x - min_x).max(max_y - min_y);
    let (vx, vy) = (min_x - margin, min_y - margin);
    let (vw, vh) = (max_x - min_x + 2.0 * margin, max_y - min_y + 2.0 * margin);
    let height_px = ((options.width_px as f64) * vh / vw).round().max(1.0) as u32;
    let stroke_width = options.stroke_width_px * vw / options.width_px as f64;

    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>\n");
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{}\" height=\"{}\" viewBox=\"{} {} {} {}\">",
        options.width_px,
        height_px,
        fmt6(vx),
        fmt6(vy),
        fmt6(vw),
        fmt6(vh)
    );
    let _ = writeln!(out, "<g stroke=\"{}\" stroke-width=\"{}\">", options.stroke, fmt6(stroke_width));
    for c in &g.circles {
        let fill = if c.radius < 0.0 || options.palette.is_empty() {
            "none"
        } else {
            options.palette[c.depth % options.palette.len()].as_str()
        };
        let _ = writeln!(
            out,
            "<circle cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"{}\"/>",
            fmt6(c.center[0]),
            fmt6(-c.center[1]),
            fmt6(c.radius.abs()),
            fill
        );
    }
    out.push_str("</g>\n</svg>\n");
    Ok(out)
}
