//! SVG pictures of a geography region. Output is byte-for-byte
//! deterministic: `e` grows to the right, `b` upward, one lattice unit is
//! `GRID` pixels.

use std::fmt::Write;

use crate::geography::{gl_wedge, GeographyRegion, Wedge};

pub const GRID: i64 = 20;
pub const GENERATOR: &str = concat!("crossgeo-svg ", env!("CARGO_PKG_VERSION"));
const MARGIN: i64 = 30;

#[derive(Clone, Debug, Default)]
pub struct SvgOptions {
    /// Draw the boundary of `W(2σ, 0)`.
    pub sigma: Option<i64>,
    /// Points drawn as open dots, e.g. dominated generators.
    pub notable: Vec<(i64, i64)>,
}

struct Frame {
    e0: i64,
    e1: i64,
    b1: i64,
}

impl Frame {
    fn x(&self, e: i64) -> i64 {
        MARGIN + (e - self.e0) * GRID
    }
    fn y(&self, b: i64) -> i64 {
        MARGIN + (self.b1 - b) * GRID
    }
}

/// Both boundary rays of a wedge, clipped to the frame top.
fn wedge_path(f: &Frame, w: &Wedge) -> String {
    let h = f.b1 - w.apex_b;
    format!(
        "M{} {} L{} {} L{} {}",
        f.x(w.apex_e - 2 * h),
        f.y(f.b1),
        f.x(w.apex_e),
        f.y(w.apex_b),
        f.x(w.apex_e + 2 * h),
        f.y(f.b1)
    )
}

pub fn render_region(region: &GeographyRegion, opts: &SvgOptions) -> String {
    let mut es: Vec<i64> = region.generators.iter().map(|w| w.apex_e).collect();
    let mut bs: Vec<i64> = region.generators.iter().map(|w| w.apex_b).collect();
    es.extend(opts.notable.iter().map(|p| p.0));
    bs.extend(opts.notable.iter().map(|p| p.1));
    if let Some(s) = opts.sigma {
        es.push(2 * s);
    }
    es.push(0);
    let (emin, emax) = (es.iter().min().copied().unwrap_or(0), es.iter().max().copied().unwrap_or(0));
    let bmax = bs.iter().max().copied().unwrap_or(0) + 3;
    let f = Frame {
        e0: emin - 2 * 3,
        e1: emax + 2 * 3,
        b1: bmax,
    };
    let width = 2 * MARGIN + (f.e1 - f.e0) * GRID;
    let height = 2 * MARGIN + f.b1 * GRID;

    let mut s = String::new();
    let _ = writeln!(s, "<?xml version=\"1.0\" encoding=\"UTF-8\"?>");
    let _ = writeln!(s, "<!-- generator: {GENERATOR} -->");
    let _ = writeln!(
        s,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width}\" height=\"{height}\" viewBox=\"0 0 {width} {height}\">"
    );
    let _ = writeln!(s, "<rect width=\"{width}\" height=\"{height}\" fill=\"white\"/>");
    // axes
    let _ = writeln!(
        s,
        "<line class=\"axis\" x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"black\"/>",
        f.x(f.e0),
        f.y(0),
        f.x(f.e1),
        f.y(0)
    );
    let _ = writeln!(
        s,
        "<line class=\"axis\" x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"black\"/>",
        f.x(0),
        f.y(0),
        f.x(0),
        f.y(f.b1)
    );
    let _ = writeln!(s, "<text x=\"{}\" y=\"{}\" font-size=\"12\">e</text>", f.x(f.e1) + 4, f.y(0) + 4);
    let _ = writeln!(s, "<text x=\"{}\" y=\"{}\" font-size=\"12\">b</text>", f.x(0) - 4, f.y(f.b1) - 8);
    // lattice points with e ≡ 2b (mod 4)
    for b in 0..=f.b1 {
        for e in f.e0..=f.e1 {
            if (e - 2 * b).rem_euclid(4) == 0 {
                let fill = if region.contains(e, b) { "#9ab" } else { "#ddd" };
                let _ = writeln!(
                    s,
                    "<circle class=\"lattice\" cx=\"{}\" cy=\"{}\" r=\"2\" fill=\"{fill}\"/>",
                    f.x(e),
                    f.y(b)
                );
            }
        }
    }
    for w in &region.apexes {
        let _ = writeln!(
            s,
            "<path class=\"wedge\" d=\"{}\" fill=\"none\" stroke=\"#38c\"/>",
            wedge_path(&f, w)
        );
    }
    if let Some(sigma) = opts.sigma {
        let _ = writeln!(
            s,
            "<path class=\"w-sigma\" d=\"{}\" fill=\"none\" stroke=\"#c33\" stroke-dasharray=\"4 3\"/>",
            wedge_path(&f, &gl_wedge(sigma))
        );
    }
    for &(e, b) in &opts.notable {
        let _ = writeln!(
            s,
            "<circle class=\"notable\" cx=\"{}\" cy=\"{}\" r=\"5\" fill=\"white\" stroke=\"black\"/>",
            f.x(e),
            f.y(b)
        );
    }
    for w in &region.apexes {
        let _ = writeln!(
            s,
            "<circle class=\"apex\" cx=\"{}\" cy=\"{}\" r=\"5\" fill=\"black\"><title>({}, {})</title></circle>",
            f.x(w.apex_e),
            f.y(w.apex_b),
            w.apex_e,
            w.apex_b
        );
    }
    s.push_str("</svg>\n");
    s
}

/// Picture with the dominated generators as open dots.
pub fn render_with_generators(region: &GeographyRegion, sigma: Option<i64>) -> String {
    let notable = region
        .generators
        .iter()
        .filter(|g| !region.apexes.contains(g))
        .map(|g| (g.apex_e, g.apex_b))
        .collect();
    render_region(region, &SvgOptions { sigma, notable })
}
