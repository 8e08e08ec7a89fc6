//! Deterministic SVG rendering of planar frontiers.

use std::fmt::Write;

use setopt_core::rational::{self, to_f64, Rational, Vector};
use setopt_core::{Frontier, Result, SimplicialCone};

const SIZE: f64 = 480.0;
const MARGIN: f64 = 40.0;

/// One frontier to draw, with its stroke colour and dash pattern.
pub struct Layer<'a> {
    pub label: String,
    pub value: &'a Frontier,
    pub color: &'static str,
    pub dashed: bool,
}

/// Boundary of the upper closure of an antichain in the plane, as a
/// polyline that starts and ends far outside the box along the two cone
/// directions. Consecutive generators are joined through their corner
/// `(z₁ of the next, z₂ of the current)` in cone coordinates.
pub fn staircase(cone: &SimplicialCone, gens: &[Vector], reach: &Rational) -> Result<Vec<Vector>> {
    let mut zs = gens.iter().map(|g| cone.coords(g)).collect::<Result<Vec<_>>>()?;
    zs.sort();
    let (d1, d2) = (cone.generator(0), cone.generator(1));
    let first = cone.from_coords(&zs[0]);
    let mut path = vec![rational::axpy(&first, reach, &d2), first];
    for w in zs.windows(2) {
        path.push(cone.from_coords(&[w[1][0].clone(), w[0][1].clone()]));
        path.push(cone.from_coords(&w[1]));
    }
    let last = path.last().expect("nonempty path").clone();
    path.push(rational::axpy(&last, reach, &d1));
    Ok(path)
}

struct Frame {
    lo: f64,
    hi: f64,
}

impl Frame {
    fn x(&self, v: &Rational) -> f64 {
        MARGIN + (to_f64(v) - self.lo) / (self.hi - self.lo) * (SIZE - 2.0 * MARGIN)
    }

    fn y(&self, v: &Rational) -> f64 {
        SIZE - MARGIN - (to_f64(v) - self.lo) / (self.hi - self.lo) * (SIZE - 2.0 * MARGIN)
    }
}

/// Renders the layers over the square `[lo, hi]²`. Output depends only on
/// the inputs; coordinates are printed with two decimals.
pub fn render(layers: &[Layer<'_>], lo: &Rational, hi: &Rational) -> Result<String> {
    let frame = Frame { lo: to_f64(lo), hi: to_f64(hi) };
    let reach = (hi - lo) * rational::int(4);
    let mut s = String::new();
    let inner = SIZE - 2.0 * MARGIN;
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    );
    let _ = writeln!(
        s,
        r#"<defs><clipPath id="box"><rect x="{MARGIN}" y="{MARGIN}" width="{inner}" height="{inner}"/></clipPath></defs>"#
    );
    let _ = writeln!(s, r#"<rect x="0" y="0" width="{SIZE}" height="{SIZE}" fill="white"/>"#);
    let _ = writeln!(
        s,
        r##"<rect x="{MARGIN}" y="{MARGIN}" width="{inner}" height="{inner}" fill="none" stroke="#999"/>"##
    );
    let zero = rational::int(0);
    if lo < &zero && &zero < hi {
        let (x0, y0) = (frame.x(&zero), frame.y(&zero));
        let _ = writeln!(
            s,
            r##"<g stroke="#ccc"><line x1="{x0:.2}" y1="{MARGIN}" x2="{x0:.2}" y2="{:.2}"/><line x1="{MARGIN}" y1="{y0:.2}" x2="{:.2}" y2="{y0:.2}"/></g>"##,
            SIZE - MARGIN,
            SIZE - MARGIN
        );
    }
    let _ = writeln!(s, r#"<text x="{MARGIN}" y="{:.2}" font-size="11">[{lo}, {hi}]²</text>"#, SIZE - 12.0);
    let mut legend_y = 20.0;
    for layer in layers {
        let _ = writeln!(
            s,
            r#"<text x="{MARGIN}" y="{legend_y:.2}" font-size="12" fill="{}">{}</text>"#,
            layer.color,
            escape(&layer.label)
        );
        legend_y += 14.0;
        let Some(gens) = layer.value.generators() else { continue };
        let path = staircase(layer.value.cone(), gens, &reach)?;
        let pts: Vec<String> = path.iter().map(|p| format!("{:.2},{:.2}", frame.x(&p[0]), frame.y(&p[1]))).collect();
        let dash = if layer.dashed { r#" stroke-dasharray="6 4""# } else { "" };
        let _ = writeln!(
            s,
            r#"<polyline clip-path="url(#box)" fill="none" stroke="{}" stroke-width="2"{dash} points="{}"/>"#,
            layer.color,
            pts.join(" ")
        );
        for g in gens {
            let _ = writeln!(
                s,
                r#"<circle clip-path="url(#box)" cx="{:.2}" cy="{:.2}" r="4" fill="{}"/>"#,
                frame.x(&g[0]),
                frame.y(&g[1]),
                layer.color
            );
        }
    }
    s.push_str("</svg>\n");
    Ok(s)
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

#[cfg(test)]
mod tests {
    use super::*;
    use setopt_core::rational::{int, vector};

    #[test]
    fn orthant_staircase() {
        let cone = SimplicialCone::orthant(2);
        let path = staircase(&cone, &[vector(&[1, 0]), vector(&[0, 1])], &int(10)).unwrap();
        assert_eq!(path, vec![vector(&[0, 11]), vector(&[0, 1]), vector(&[1, 1]), vector(&[1, 0]), vector(&[11, 0])]);
    }

    #[test]
    fn single_generator_has_two_rays() {
        let cone = SimplicialCone::orthant(2);
        let path = staircase(&cone, &[vector(&[2, 2])], &int(5)).unwrap();
        assert_eq!(path, vec![vector(&[2, 7]), vector(&[2, 2]), vector(&[7, 2])]);
    }

    #[test]
    fn skewed_cone_corners() {
        let cone = SimplicialCone::from_columns(&[vector(&[1, 0]), vector(&[1, 1])]).unwrap();
        // coordinates (0,1) and (1,0) give the corner (1,1) in coordinates.
        let a = cone.from_coords(&[int(0), int(1)]);
        let b = cone.from_coords(&[int(1), int(0)]);
        let path = staircase(&cone, &[b.clone(), a.clone()], &int(1)).unwrap();
        assert_eq!(path[1], a);
        assert_eq!(path[2], cone.from_coords(&[int(1), int(1)]));
        assert_eq!(path[3], b);
    }
}
