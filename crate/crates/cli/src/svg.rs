//! Static scatter plots of (monogamy score, GGM) with the cone boundaries.

use std::fmt::Write;

use monocone::cone::{discord_bound, entanglement_boundary};
use monocone::Family;

/// Points per boundary polyline.
pub const CURVE_POINTS: usize = 512;

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 480.0;
const MARGIN_LEFT: f64 = 70.0;
const MARGIN_RIGHT: f64 = 20.0;
const MARGIN_TOP: f64 = 30.0;
const MARGIN_BOTTOM: f64 = 55.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlotKind {
    /// Entanglement score on `[0, 1]`.
    Tangle,
    /// Discord score on `[-1, 1]` bits.
    Discord,
}

impl PlotKind {
    fn x_range(self) -> (f64, f64) {
        match self {
            PlotKind::Tangle => (0.0, 1.0),
            PlotKind::Discord => (-1.0, 1.0),
        }
    }

    fn x_label(self) -> &'static str {
        match self {
            PlotKind::Tangle => "entanglement monogamy score",
            PlotKind::Discord => "discord monogamy score (bits)",
        }
    }
}

/// One scattered state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlotPoint {
    pub score: f64,
    pub ggm: f64,
    pub family: Family,
}

fn color(family: Family) -> &'static str {
    match family {
        Family::Haar => "#1f77b4",
        Family::GhzClass => "#d62728",
        Family::WClass => "#2ca02c",
        Family::GenGhz => "#9467bd",
        Family::Explicit => "#7f7f7f",
    }
}

struct Frame {
    x: (f64, f64),
    y: (f64, f64),
}

impl Frame {
    fn px(&self, x: f64) -> f64 {
        MARGIN_LEFT + (x - self.x.0) / (self.x.1 - self.x.0) * (WIDTH - MARGIN_LEFT - MARGIN_RIGHT)
    }

    fn py(&self, y: f64) -> f64 {
        HEIGHT - MARGIN_BOTTOM - (y - self.y.0) / (self.y.1 - self.y.0) * (HEIGHT - MARGIN_TOP - MARGIN_BOTTOM)
    }

    fn polyline(&self, out: &mut String, points: impl Iterator<Item = (f64, f64)>, style: &str) {
        out.push_str("<polyline fill=\"none\" ");
        out.push_str(style);
        out.push_str(" points=\"");
        for (i, (x, y)) in points.enumerate() {
            if i > 0 {
                out.push(' ');
            }
            let _ = write!(out, "{:.2},{:.2}", self.px(x), self.py(y));
        }
        out.push_str("\"/>\n");
    }
}

/// Boundary curves of the cone as `(score, ggm)` polylines.
pub fn boundary_curves(kind: PlotKind) -> Vec<Vec<(f64, f64)>> {
    let t = |i: usize| i as f64 / (CURVE_POINTS - 1) as f64;
    match kind {
        PlotKind::Tangle => vec![
            (0..CURVE_POINTS)
                .map(|i| (t(i), entanglement_boundary(t(i)).expect("in [0, 1]")))
                .collect(),
            vec![(0.0, 0.0), (0.0, 0.5)],
        ],
        PlotKind::Discord => [1.0, -1.0]
            .iter()
            .map(|&sign| {
                (0..CURVE_POINTS)
                    .map(|i| {
                        let e = 0.5 * t(i);
                        (sign * discord_bound(e).expect("in [0, 1/2]"), e)
                    })
                    .collect()
            })
            .collect(),
    }
}

/// Renders a complete SVG document.
pub fn render(kind: PlotKind, points: &[PlotPoint]) -> String {
    let frame = Frame {
        x: kind.x_range(),
        y: (0.0, 0.5),
    };
    let mut out = String::new();
    let _ = writeln!(
        out,
        "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{HEIGHT}\" viewBox=\"0 0 {WIDTH} {HEIGHT}\" font-family=\"sans-serif\" font-size=\"12\">"
    );
    out.push_str("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");

    // axes and ticks
    let (x0, x1) = frame.x;
    let _ = writeln!(
        out,
        "<g stroke=\"black\" stroke-width=\"1\"><line x1=\"{:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\"/><line x1=\"{:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\"/></g>",
        frame.px(x0), frame.py(0.0), frame.px(x1), frame.py(0.0),
        frame.px(x0), frame.py(0.0), frame.px(x0), frame.py(0.5),
    );
    out.push_str("<g text-anchor=\"middle\">\n");
    let ticks = 4 * ((x1 - x0).round() as usize);
    for i in 0..=ticks {
        let x = x0 + (x1 - x0) * i as f64 / ticks as f64;
        let _ = writeln!(out, "<text x=\"{:.2}\" y=\"{:.2}\">{x:.2}</text>", frame.px(x), frame.py(0.0) + 18.0);
    }
    let _ = writeln!(
        out,
        "<text x=\"{:.2}\" y=\"{:.2}\">{}</text>",
        frame.px(0.5 * (x0 + x1)),
        HEIGHT - 12.0,
        kind.x_label()
    );
    out.push_str("</g>\n<g text-anchor=\"end\">\n");
    for i in 0..=5 {
        let y = 0.1 * i as f64;
        let _ = writeln!(out, "<text x=\"{:.2}\" y=\"{:.2}\">{y:.1}</text>", frame.px(x0) - 6.0, frame.py(y) + 4.0);
    }
    out.push_str("</g>\n");
    let _ = writeln!(
        out,
        "<text x=\"18\" y=\"{:.2}\" text-anchor=\"middle\" transform=\"rotate(-90 18 {:.2})\">generalized geometric measure</text>",
        frame.py(0.25),
        frame.py(0.25)
    );

    out.push_str("<g stroke=\"none\" fill-opacity=\"0.6\">\n");
    for p in points.iter().filter(|p| p.score.is_finite() && p.ggm.is_finite()) {
        let _ = writeln!(
            out,
            "<circle cx=\"{:.2}\" cy=\"{:.2}\" r=\"1.2\" fill=\"{}\"/>",
            frame.px(p.score.clamp(x0, x1)),
            frame.py(p.ggm.clamp(0.0, 0.5)),
            color(p.family)
        );
    }
    out.push_str("</g>\n");

    for curve in boundary_curves(kind) {
        frame.polyline(&mut out, curve.into_iter(), "stroke=\"black\" stroke-width=\"1.5\"");
    }

    // legend
    let mut families: Vec<Family> = Vec::new();
    for p in points {
        if !families.contains(&p.family) {
            families.push(p.family);
        }
    }
    for (i, f) in families.iter().enumerate() {
        let y = MARGIN_TOP + 16.0 * i as f64;
        let x = WIDTH - MARGIN_RIGHT - 110.0;
        let _ = writeln!(
            out,
            "<circle cx=\"{x:.2}\" cy=\"{y:.2}\" r=\"4\" fill=\"{}\"/><text x=\"{:.2}\" y=\"{:.2}\">{f}</text>",
            color(*f),
            x + 10.0,
            y + 4.0
        );
    }
    out.push_str("</svg>\n");
    out
}
