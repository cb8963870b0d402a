//! SVG drawing of a pallet configuration: one plan view per distinct bottom
//! height, then a side elevation seen from the `-y` side.

use std::fmt::Write;

use sha2::{Digest, Sha256};

use crate::model::{Pallet, Placement};

const PANEL: f64 = 240.0;
const MARGIN: f64 = 24.0;
const PALETTE: [&str; 12] = [
    "#4e79a7", "#f28e2b", "#e15759", "#76b7b2", "#59a14f", "#edc948", "#b07aa1", "#ff9da7", "#9c755f",
    "#bab0ac", "#86bcb6", "#d37295",
];

fn color(id: &str) -> &'static str {
    let hash = Sha256::digest(id.as_bytes());
    PALETTE[hash[0] as usize % PALETTE.len()]
}

fn escape(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for c in text.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            _ => out.push(c),
        }
    }
    out
}

struct Canvas {
    body: String,
    scale: f64,
}

impl Canvas {
    fn outline(&mut self, ox: f64, oy: f64, w: f64, h: f64, title: &str) {
        let _ = writeln!(
            self.body,
            r##"<rect class="pallet" x="{ox:.2}" y="{oy:.2}" width="{w:.2}" height="{h:.2}" fill="none" stroke="#333" stroke-width="1.5"/>"##
        );
        let _ = writeln!(
            self.body,
            r#"<text x="{:.2}" y="{:.2}" font-size="11" font-family="monospace">{}</text>"#,
            ox,
            oy - 6.0,
            escape(title)
        );
    }

    /// Rectangle for one unit; `(u0, v0)` is its corner in panel millimeters
    /// with `v` growing downwards.
    #[allow(clippy::too_many_arguments)]
    fn unit(&mut self, ox: f64, oy: f64, u0: u32, v0: u32, du: u32, dv: u32, id: &str) {
        let (x, y) = (ox + u0 as f64 * self.scale, oy + v0 as f64 * self.scale);
        let (w, h) = (du as f64 * self.scale, dv as f64 * self.scale);
        let _ = writeln!(
            self.body,
            r##"<rect class="unit" data-id="{id}" x="{x:.2}" y="{y:.2}" width="{w:.2}" height="{h:.2}" fill="{fill}" fill-opacity="0.85" stroke="#222" stroke-width="0.75"/>"##,
            id = escape(id),
            fill = color(id),
        );
        let _ = writeln!(
            self.body,
            r#"<text x="{:.2}" y="{:.2}" font-size="9" font-family="monospace" text-anchor="middle" dominant-baseline="central">{}</text>"#,
            x + w / 2.0,
            y + h / 2.0,
            escape(id)
        );
    }
}

pub fn render_svg(pallet: &Pallet, placements: &[Placement]) -> String {
    let longest = pallet.width.max(pallet.depth).max(pallet.max_height) as f64;
    let scale = PANEL / longest;
    let (pw, pd, ph) = (
        pallet.width as f64 * scale,
        pallet.depth as f64 * scale,
        pallet.max_height as f64 * scale,
    );

    let mut levels: Vec<u32> = placements.iter().map(|p| p.position.z).collect();
    levels.sort_unstable();
    levels.dedup();

    let mut canvas = Canvas { body: String::new(), scale };
    let top = MARGIN + 14.0;
    let mut ox = MARGIN;
    if levels.is_empty() {
        canvas.outline(ox, top, pw, pd, "empty pallet");
        ox += pw + MARGIN;
    }
    for &z in &levels {
        canvas.outline(ox, top, pw, pd, &format!("plan z={z}"));
        for p in placements.iter().filter(|p| p.position.z == z) {
            // Plan view: x to the right, y downwards.
            canvas.unit(ox, top, p.position.x, p.position.y, p.dims.w, p.dims.d, &p.unit_id);
        }
        ox += pw + MARGIN;
    }
    if !placements.is_empty() {
        canvas.outline(ox, top, pw, ph, "side x-z");
        // Far units first so nearer ones are drawn over them.
        let mut order: Vec<&Placement> = placements.iter().collect();
        order.sort_by_key(|p| std::cmp::Reverse(p.position.y));
        for p in order {
            let v0 = pallet.max_height - p.z_max();
            canvas.unit(ox, top, p.position.x, v0, p.dims.w, p.dims.h, &p.unit_id);
        }
        ox += pw + MARGIN;
    }

    let height = top + pd.max(if placements.is_empty() { 0.0 } else { ph }) + MARGIN;
    let mut svg = String::new();
    let _ = writeln!(svg, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{ox:.2}" height="{height:.2}" viewBox="0 0 {ox:.2} {height:.2}">"#
    );
    svg.push_str(&canvas.body);
    svg.push_str("</svg>\n");
    svg
}
