//! ASCII and SVG renderings of tilings.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use wangtile::{Color, Tiling};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Ascii,
    Svg,
}

/// Fill colors handed out in interning order; white is always `#ffffff`.
pub const PALETTE: [&str; 12] = [
    "#2e8b57", "#d62728", "#f2c417", "#1f77b4", "#9467bd", "#ff7f0e", "#17becf", "#8c564b",
    "#e377c2", "#7f7f7f", "#bcbd22", "#393b79",
];

const GLYPHS: &str = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LegendEntry {
    pub color: Color,
    pub fill: String,
    pub glyph: char,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RenderSpec {
    pub format: Format,
    pub legend: Vec<LegendEntry>,
    pub cell_size: u32,
}

impl RenderSpec {
    /// Legend over the tiling's colors in interning order: row-major cells,
    /// sides left, top, right, bottom.
    pub fn auto(tiling: &Tiling, format: Format, cell_size: u32) -> Self {
        let mut spec = RenderSpec {
            format,
            legend: Vec::new(),
            cell_size,
        };
        spec.complete(tiling);
        spec
    }

    /// Append entries for colors of `tiling` missing from the legend.
    pub fn complete(&mut self, tiling: &Tiling) {
        for t in tiling.cells() {
            for c in t.sides() {
                if self.entry(c).is_none() {
                    let entry = self.next_entry(c);
                    self.legend.push(entry);
                }
            }
        }
    }

    fn next_entry(&self, c: &Color) -> LegendEntry {
        if c.is_white() {
            return LegendEntry {
                color: c.clone(),
                fill: "#ffffff".into(),
                glyph: '.',
            };
        }
        let k = self.legend.iter().filter(|e| !e.color.is_white()).count();
        LegendEntry {
            color: c.clone(),
            fill: fill_for(k),
            glyph: GLYPHS.chars().nth(k).unwrap_or('?'),
        }
    }

    pub fn entry(&self, c: &Color) -> Option<&LegendEntry> {
        self.legend.iter().find(|e| &e.color == c)
    }
}

/// Palette entry `k`, then golden-angle hues at fixed saturation and lightness.
fn fill_for(k: usize) -> String {
    if let Some(f) = PALETTE.get(k) {
        return f.to_string();
    }
    let hue = (k as f64 * 137.507_764) % 360.0;
    let (s, l) = (0.55, if k.is_multiple_of(2) { 0.45 } else { 0.65 });
    let c = (1.0 - (2.0 * l - 1.0f64).abs()) * s;
    let x = c * (1.0 - ((hue / 60.0) % 2.0 - 1.0).abs());
    let (r, g, b) = match (hue / 60.0) as u32 {
        0 => (c, x, 0.0),
        1 => (x, c, 0.0),
        2 => (0.0, c, x),
        3 => (0.0, x, c),
        4 => (x, 0.0, c),
        _ => (c, 0.0, x),
    };
    let m = l - c / 2.0;
    let byte = |v: f64| ((v + m) * 255.0).round() as u8;
    format!("#{:02x}{:02x}{:02x}", byte(r), byte(g), byte(b))
}

pub fn render(tiling: &Tiling, spec: &RenderSpec) -> String {
    let mut spec = spec.clone();
    spec.complete(tiling);
    match spec.format {
        Format::Ascii => render_ascii(tiling, &spec),
        Format::Svg => render_svg(tiling, &spec),
    }
}

fn render_ascii(tiling: &Tiling, spec: &RenderSpec) -> String {
    let g = |c: &Color| spec.entry(c).map_or('?', |e| e.glyph);
    let mut out = String::new();
    for row in tiling.rows() {
        let mut lines = [String::new(), String::new(), String::new()];
        for t in row {
            let _ = write!(lines[0], " {} ", g(&t.top));
            let _ = write!(lines[1], "{}+{}", g(&t.left), g(&t.right));
            let _ = write!(lines[2], " {} ", g(&t.bottom));
        }
        for l in lines {
            out += l.trim_end();
            out.push('\n');
        }
    }
    out.push('\n');
    for e in &spec.legend {
        let _ = writeln!(out, "{} {}", e.glyph, e.color);
    }
    out
}

fn escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for ch in s.chars() {
        match ch {
            '&' => out += "&amp;",
            '<' => out += "&lt;",
            '>' => out += "&gt;",
            '"' => out += "&quot;",
            '\'' => out += "&apos;",
            _ => out.push(ch),
        }
    }
    out
}

fn render_svg(tiling: &Tiling, spec: &RenderSpec) -> String {
    let s = spec.cell_size.max(4);
    let (h, w) = (tiling.height() as u32, tiling.width() as u32);
    let line = 16u32;
    let legend_h = line * spec.legend.len() as u32 + 8;
    let (width, height) = ((w * s).max(160) + 2, h * s + legend_h + 2);
    let fill = |c: &Color| spec.entry(c).map_or("#000000", |e| e.fill.as_str()).to_string();
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    );
    out += "<g stroke=\"#000000\" stroke-width=\"0.5\">\n";
    for (r, row) in tiling.rows().enumerate() {
        for (c, t) in row.iter().enumerate() {
            let (x0, y0) = (1 + c as u32 * s, 1 + r as u32 * s);
            let (x1, y1) = (x0 + s, y0 + s);
            let (cx, cy) = (x0 + s / 2, y0 + s / 2);
            let tri = [
                (&t.left, [(x0, y0), (x0, y1)]),
                (&t.top, [(x0, y0), (x1, y0)]),
                (&t.right, [(x1, y0), (x1, y1)]),
                (&t.bottom, [(x0, y1), (x1, y1)]),
            ];
            for (color, [(ax, ay), (bx, by)]) in tri {
                let _ = writeln!(
                    out,
                    r#"<polygon points="{ax},{ay} {bx},{by} {cx},{cy}" fill="{}"/>"#,
                    fill(color)
                );
            }
        }
    }
    out += "</g>\n<g font-family=\"monospace\" font-size=\"12\">\n";
    for (i, e) in spec.legend.iter().enumerate() {
        let y = h * s + 8 + i as u32 * line;
        let _ = writeln!(
            out,
            r##"<rect x="1" y="{y}" width="12" height="12" fill="{}" stroke="#000000" stroke-width="0.5"/><text x="18" y="{}">{}</text>"##,
            e.fill,
            y + 11,
            escape(e.color.as_str())
        );
    }
    out += "</g>\n</svg>\n";
    out
}
