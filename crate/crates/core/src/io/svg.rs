//! SVG 1.1 rendering of a partition of the unit square.
//!
//! Coordinates stay exact until emission: `x = α·W`, `y = (1 - β)·W`, so `β`
//! grows upward.

use std::fmt::Write;

use crate::exact::Rational;
use crate::farey::FareyIter;
use crate::geometry::{Partition, Point};

/// Fixed decimals for emitted coordinates.
const DECIMALS: usize = 6;

fn px(r: &Rational, width: u32) -> f64 {
    r.to_f64() * width as f64
}

fn xy(p: &Point, width: u32) -> (f64, f64) {
    (px(&p.alpha, width), px(&(Rational::one() - &p.beta), width))
}

pub fn render_svg(part: &Partition, width_px: u32, label_threshold: usize) -> String {
    let w = width_px;
    let n = part.n;
    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{w}" viewBox="0 0 {w} {w}">"#
    );
    let _ = writeln!(
        s,
        "<style>.domain{{stroke:none}}.triangle_left{{fill:#8ecae6}}.triangle_right{{fill:#ffb703}}\
         .trapezoid{{fill:#90be6d}}.farey{{stroke:#000;stroke-width:1}}.diagonal{{stroke:#333;stroke-width:0.5}}\
         text{{font-family:sans-serif;text-anchor:middle;dominant-baseline:middle}}</style>"
    );
    let _ = writeln!(s, r#"<title>Sós permutation domains, n = {n}</title>"#);

    let _ = writeln!(s, r#"<g id="domains">"#);
    for d in &part.domains {
        let mut path = String::new();
        for (i, v) in d.vertices.iter().enumerate() {
            let (x, y) = xy(v, w);
            let _ = write!(path, "{}{x:.DECIMALS$} {y:.DECIMALS$} ", if i == 0 { "M" } else { "L" });
        }
        path.push('Z');
        let _ = writeln!(
            s,
            r#"<path class="domain {}" data-perm="{}" d="{}"/>"#,
            d.shape.as_str(),
            d.perm,
            path
        );
    }
    let _ = writeln!(s, "</g>");

    let _ = writeln!(s, r#"<g id="lines">"#);
    for f in FareyIter::new(n as u64) {
        let x = px(&f.to_rational(), w);
        let _ = writeln!(s, r#"<line class="farey" x1="{x:.DECIMALS$}" y1="0" x2="{x:.DECIMALS$}" y2="{w}"/>"#);
    }
    // i·α + β = j runs from (α, β) = ((j-1)/i, 1) to (j/i, 0).
    for i in 1..=n as i64 {
        for j in 1..=i {
            let x1 = px(&Rational::frac(j - 1, i), w);
            let x2 = px(&Rational::frac(j, i), w);
            let _ = writeln!(
                s,
                r#"<line class="diagonal" x1="{x1:.DECIMALS$}" y1="0" x2="{x2:.DECIMALS$}" y2="{w}"/>"#
            );
        }
    }
    let _ = writeln!(s, "</g>");

    if part.domains.len() <= label_threshold {
        let size = (w as f64 / (4.0 * (n as f64 + 2.0))).max(6.0);
        let _ = writeln!(s, r#"<g id="labels" font-size="{size:.1}">"#);
        for d in &part.domains {
            let k = Rational::from(d.vertices.len() as u64);
            let ca = d.vertices.iter().map(|v| &v.alpha).sum::<Rational>() / k.clone();
            let cb = d.vertices.iter().map(|v| &v.beta).sum::<Rational>() / k;
            let (x, y) = xy(&Point::new(ca, cb), w);
            let _ = writeln!(s, r#"<text x="{x:.DECIMALS$}" y="{y:.DECIMALS$}">{}</text>"#, d.perm);
        }
        let _ = writeln!(s, "</g>");
    }
    let _ = writeln!(s, "</svg>");
    s
}
