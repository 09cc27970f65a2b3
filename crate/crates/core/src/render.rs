//! Planar cross-sections of the curve cones of a Picard-rank-3 variety.
//!
//! All cones are cut by the same affine plane `level · c = 1`, with `level`
//! taken from the interior of the dual of NE, so the polygons nest. CSV output
//! is exact; SVG coordinates are rounded only at drawing time.

use std::fmt::Write as _;
use std::str::FromStr;

use num_traits::{Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::cone::{Cone, ConeError};
use crate::linalg::{add, dot, scale, sub};
use crate::variety::{VarietyData, VarietyError};
use crate::{QVec, Rat};

pub const VIEWPORT: f64 = 512.0;
const MARGIN: f64 = 48.0;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SectionCone {
    Ne,
    Mov,
    Sme,
}

impl FromStr for SectionCone {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "ne" => Ok(SectionCone::Ne),
            "mov" => Ok(SectionCone::Mov),
            "sme" => Ok(SectionCone::Sme),
            other => Err(format!("unknown cone `{other}`; expected ne, mov or sme")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RenderError {
    #[error("cross-sections need Picard number 3, `{name}` has {rho}; use the ne/mov/sme subcommands to list rays instead")]
    NotRankThree { name: String, rho: usize },
    #[error(transparent)]
    Variety(#[from] VarietyError),
    #[error(transparent)]
    Cone(#[from] ConeError),
}

fn cone_of(v: &VarietyData, which: SectionCone) -> Result<Cone, RenderError> {
    Ok(match which {
        SectionCone::Ne => v.mori_cone(),
        SectionCone::Mov => v.moving_cone(),
        SectionCone::Sme => v.sme_cone()?,
    })
}

fn level_of(v: &VarietyData) -> Result<QVec, RenderError> {
    if v.rho() != 3 {
        return Err(RenderError::NotRankThree { name: v.name().to_string(), rho: v.rho() });
    }
    Ok(v.mori_cone().interior_level())
}

/// Vertices of the cross-section in counterclockwise order.
pub fn section_vertices(v: &VarietyData, which: SectionCone) -> Result<Vec<QVec>, RenderError> {
    let level = level_of(v)?;
    Ok(cone_of(v, which)?.cross_section(&level)?)
}

/// One vertex per line, coordinates as exact rationals.
pub fn section_csv(v: &VarietyData, which: SectionCone) -> Result<String, RenderError> {
    let mut out = String::new();
    for vertex in section_vertices(v, which)? {
        let fields: Vec<String> = vertex.iter().map(ToString::to_string).collect();
        out.push_str(&fields.join(","));
        out.push('\n');
    }
    Ok(out)
}

/// Points where the line `f = 0` meets the boundary of a convex polygon.
fn chord(polygon: &[QVec], f: &[Rat]) -> Vec<QVec> {
    let mut points: Vec<QVec> = Vec::new();
    let n = polygon.len();
    for i in 0..n {
        let (p, q) = (&polygon[i], &polygon[(i + 1) % n]);
        let (a, b) = (dot(f, p), dot(f, q));
        let hit = if a.is_zero() {
            Some(p.clone())
        } else if a.is_positive() != b.is_positive() && !b.is_zero() {
            let t = &a / (&a - &b);
            Some(add(p, &scale(&sub(q, p), &t)))
        } else {
            None
        };
        if let Some(x) = hit {
            if !points.contains(&x) {
                points.push(x);
            }
        }
    }
    points
}

fn to_f64(v: &[Rat]) -> [f64; 3] {
    let f = |x: &Rat| x.to_f64().unwrap_or(0.0);
    [f(&v[0]), f(&v[1]), f(&v[2])]
}

fn cross3(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

fn dot3(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn unit3(a: [f64; 3]) -> [f64; 3] {
    let n = dot3(a, a).sqrt();
    [a[0] / n, a[1] / n, a[2] / n]
}

/// Maps points of the level plane to viewport coordinates.
struct Projection {
    origin: [f64; 3],
    u: [f64; 3],
    w: [f64; 3],
    scale: f64,
}

impl Projection {
    fn fit(outline: &[QVec], level: &[Rat]) -> Self {
        let pts: Vec<[f64; 3]> = outline.iter().map(|p| to_f64(p)).collect();
        let n = pts.len() as f64;
        let origin = [0, 1, 2].map(|k| pts.iter().map(|p| p[k]).sum::<f64>() / n);
        let normal = unit3(to_f64(level));
        let d = [0, 1, 2].map(|k| pts[0][k] - origin[k]);
        let along = dot3(d, normal);
        let u = unit3([0, 1, 2].map(|k| d[k] - along * normal[k]));
        let w = cross3(normal, u);
        let mut p = Projection { origin, u, w, scale: 1.0 };
        let extent = pts
            .iter()
            .map(|q| {
                let (x, y) = p.plane(*q);
                x.abs().max(y.abs())
            })
            .fold(0.0, f64::max);
        p.scale = if extent > 0.0 { (VIEWPORT / 2.0 - MARGIN) / extent } else { 1.0 };
        p
    }

    fn plane(&self, q: [f64; 3]) -> (f64, f64) {
        let d = [0, 1, 2].map(|k| q[k] - self.origin[k]);
        (dot3(d, self.u), dot3(d, self.w))
    }

    fn screen(&self, q: &[Rat]) -> (f64, f64) {
        let (x, y) = self.plane(to_f64(q));
        (VIEWPORT / 2.0 + self.scale * x, VIEWPORT / 2.0 - self.scale * y)
    }

    fn points(&self, polygon: &[QVec]) -> String {
        let pts: Vec<String> = polygon
            .iter()
            .map(|q| {
                let (x, y) = self.screen(q);
                format!("{x:.2},{y:.2}")
            })
            .collect();
        pts.join(" ")
    }
}

/// NE outlined, the chosen cone filled, and a dashed chord for `E^⊥` of each
/// exceptional divisor.
pub fn section_svg(v: &VarietyData, which: SectionCone) -> Result<String, RenderError> {
    let level = level_of(v)?;
    let outline = v.mori_cone().cross_section(&level)?;
    let filled = cone_of(v, which)?.cross_section(&level)?;
    let projection = Projection::fit(&outline, &level);

    let mut svg = String::new();
    let size = VIEWPORT as u32;
    writeln!(svg, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" viewBox="0 0 {size} {size}">"#).unwrap();
    writeln!(svg, r#"  <rect width="{size}" height="{size}" fill="white"/>"#).unwrap();
    if !filled.is_empty() {
        writeln!(
            svg,
            r##"  <polygon class="section" points="{}" fill="#9ecae1" fill-opacity="0.8" stroke="#3182bd" stroke-width="1.5"/>"##,
            projection.points(&filled)
        )
        .unwrap();
    }
    writeln!(
        svg,
        r#"  <polygon class="ne" points="{}" fill="none" stroke="black" stroke-width="2"/>"#,
        projection.points(&outline)
    )
    .unwrap();
    for e in v.exceptional_divisors() {
        let ends = chord(&outline, &v.divisor_functional(&e.coords));
        if ends.len() < 2 {
            continue;
        }
        let (x1, y1) = projection.screen(&ends[0]);
        let (x2, y2) = projection.screen(&ends[1]);
        writeln!(
            svg,
            r##"  <line class="chord" x1="{x1:.2}" y1="{y1:.2}" x2="{x2:.2}" y2="{y2:.2}" stroke="#de2d26" stroke-width="1.5" stroke-dasharray="6 4"/>"##
        )
        .unwrap();
        let (lx, ly) = ((x1 + x2) / 2.0 + 6.0, (y1 + y2) / 2.0 - 6.0);
        writeln!(
            svg,
            r##"  <text x="{lx:.2}" y="{ly:.2}" font-family="sans-serif" font-size="14" fill="#de2d26">({})⊥</text>"##,
            v.describe_divisor(&e.coords)
        )
        .unwrap();
    }
    for (vertex, ray) in outline.iter().zip(v.mori_cone().generators()) {
        let (x, y) = projection.screen(vertex);
        writeln!(
            svg,
            r#"  <text x="{:.2}" y="{:.2}" font-family="sans-serif" font-size="12" text-anchor="middle">{}</text>"#,
            x,
            y + if y > VIEWPORT / 2.0 { 16.0 } else { -8.0 },
            v.describe_curve(ray)
        )
        .unwrap();
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}
