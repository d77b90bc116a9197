//! Deterministic SVG figures: weight heatmaps, covariance ellipses,
//! rescaled rectangles and degree histograms.
//!
//! All arithmetic upstream is exact; floats appear only here, when
//! coordinates are written out. Every document is a pure function of its
//! inputs, so repeated runs are byte-identical.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::asymptotics::rescaled_points;
use crate::demazure::{marginal, WeightDistribution};
use crate::error::{Error, Result};
use crate::lattice::Functional;
use crate::moments::{
    planar_covariance, planar_expectation, pushforward, CoordinateMap, CovarianceMatrix,
    PlanarMeasure, RawMoments,
};
use crate::scalar::Scalar;
use crate::Rational;

const MARGIN: f64 = 40.0;
const LIGHT: [f64; 3] = [239.0, 243.0, 255.0];
const DARK: [f64; 3] = [8.0, 48.0, 107.0];

/// The covariance ellipse `{x : (x − c)ᵗ Σ⁻¹ (x − c) = 1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct Ellipse {
    center: (Rational, Rational),
    matrix: CovarianceMatrix<Rational>,
}

impl Ellipse {
    /// Fails unless `matrix` is positive definite.
    pub fn new(center: (Rational, Rational), matrix: CovarianceMatrix<Rational>) -> Result<Self> {
        if !matrix.determinant().is_positive() || !matrix.xx().is_positive() {
            return Err(Error::DegenerateCovariance);
        }
        Ok(Ellipse { center, matrix })
    }

    /// Ellipse of `mu` in heatmap coordinates `(a − b, a)`, centered at the mean.
    pub fn of_distribution(mu: &WeightDistribution) -> Result<Self> {
        let m = RawMoments::new(mu, 2)?;
        let (x, y) = (
            Functional::<Rational>::a_minus_b(),
            Functional::<Rational>::a(),
        );
        let matrix = CovarianceMatrix::new(m.variance(&x)?, m.covariance(&x, &y)?, m.variance(&y)?);
        Ellipse::new((m.expectation(&x)?, m.expectation(&y)?), matrix)
    }

    pub fn center(&self) -> &(Rational, Rational) {
        &self.center
    }

    pub fn matrix(&self) -> &CovarianceMatrix<Rational> {
        &self.matrix
    }

    /// `(x − c)ᵗ Σ⁻¹ (x − c)`, evaluated in floating point.
    pub fn quadric(&self, x: f64, y: f64) -> f64 {
        let (dx, dy) = (x - self.center.0.as_f64(), y - self.center.1.as_f64());
        let det = self.matrix.determinant().as_f64();
        let (sxx, sxy, syy) = (
            self.matrix.xx().as_f64(),
            self.matrix.xy().as_f64(),
            self.matrix.yy().as_f64(),
        );
        (syy * dx * dx - 2.0 * sxy * dx * dy + sxx * dy * dy) / det
    }
}

/// `samples` points `c + L(cos t, sin t)` with `LLᵗ = Σ` (Cholesky), `t`
/// evenly spaced from 0.
pub fn ellipse_points(e: &Ellipse, samples: usize) -> Result<Vec<(f64, f64)>> {
    if samples == 0 {
        return Err(Error::InvalidArgument(
            "ellipse needs at least one sample".into(),
        ));
    }
    let m = &e.matrix;
    let l11 = m.xx().as_f64().sqrt();
    let l21 = m.xy().as_f64() / l11;
    let l22 = (m.determinant() / m.xx().clone()).as_f64().sqrt();
    let (cx, cy) = (e.center.0.as_f64(), e.center.1.as_f64());
    Ok((0..samples)
        .map(|k| {
            let t = std::f64::consts::TAU * k as f64 / samples as f64;
            let (c, s) = (t.cos(), t.sin());
            (cx + l11 * c, cy + l21 * c + l22 * s)
        })
        .collect())
}

/// Closed SVG path through [`ellipse_points`], in the ellipse's own coordinates.
pub fn ellipse_path(e: &Ellipse, samples: usize) -> Result<String> {
    let points = ellipse_points(e, samples)?;
    Ok(path_of(points.into_iter()))
}

fn path_of(points: impl Iterator<Item = (f64, f64)>) -> String {
    let mut out = String::new();
    for (k, (x, y)) in points.enumerate() {
        let _ = write!(out, "{}{x} {y} ", if k == 0 { "M" } else { "L" });
    }
    out.push('Z');
    out
}

/// `ln(1 + |v|)`, finite for any size of `v`.
fn log1p_big(v: &BigInt) -> f64 {
    let v = v.abs();
    match v.to_f64() {
        Some(f) if f.is_finite() => f.ln_1p(),
        _ => {
            let shift = v.bits().saturating_sub(64);
            let top = (&v >> shift).to_f64().unwrap_or(f64::MAX);
            top.ln() + shift as f64 * std::f64::consts::LN_2
        }
    }
}

/// Shade in `[0, 1]`: `ln(1 + |v|) / ln(1 + max)`.
fn shade(v: &BigInt, max_log: f64) -> f64 {
    if max_log == 0.0 {
        0.0
    } else {
        (log1p_big(v) / max_log).clamp(0.0, 1.0)
    }
}

fn color(s: f64) -> String {
    let c: Vec<u8> = LIGHT
        .iter()
        .zip(DARK)
        .map(|(l, d)| (l + (d - l) * s).round() as u8)
        .collect();
    format!("#{:02x}{:02x}{:02x}", c[0], c[1], c[2])
}

fn open_svg(out: &mut String, width: f64, height: f64, title: &str) {
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    );
    let _ = writeln!(out, "<title>{title}</title>");
    let _ = writeln!(
        out,
        r#"<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>"#
    );
}

#[derive(Debug, Clone, PartialEq)]
pub struct HeatmapOptions {
    /// Cell side in SVG units.
    pub cell: f64,
    /// Draw the `(a − b, a)` covariance ellipse when it is nondegenerate.
    pub overlay_ellipse: bool,
    pub ellipse_samples: usize,
}

impl Default for HeatmapOptions {
    fn default() -> Self {
        HeatmapOptions {
            cell: 20.0,
            overlay_ellipse: false,
            ellipse_samples: 128,
        }
    }
}

/// Geometry of a heatmap: lattice window and cell size.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HeatmapFrame {
    pub min_x: i64,
    pub max_x: i64,
    pub min_a: i64,
    pub max_a: i64,
    pub cell: f64,
}

impl HeatmapFrame {
    pub fn of(mu: &WeightDistribution, cell: f64) -> Result<Self> {
        let mut it = mu.iter().map(|(p, _)| (p.a_minus_b(), p.a));
        let (x0, a0) = it.next().ok_or(Error::EmptyDistribution)?;
        let (mut min_x, mut max_x, mut min_a, mut max_a) = (x0, x0, a0, a0);
        for (x, a) in it {
            min_x = min_x.min(x);
            max_x = max_x.max(x);
            min_a = min_a.min(a);
            max_a = max_a.max(a);
        }
        Ok(HeatmapFrame {
            min_x,
            max_x,
            min_a,
            max_a,
            cell,
        })
    }

    /// Top-left corner of the cell for `(a − b, a)`.
    pub fn cell_origin(&self, x: i64, a: i64) -> (f64, f64) {
        (
            MARGIN + (x - self.min_x) as f64 * self.cell,
            MARGIN + (a - self.min_a) as f64 * self.cell,
        )
    }

    /// Inverse of [`cell_origin`](Self::cell_origin), as a lattice point `(a, b)`.
    pub fn lattice_point(&self, px: f64, py: f64) -> (i64, i64) {
        let x = self.min_x + ((px - MARGIN) / self.cell).round() as i64;
        let a = self.min_a + ((py - MARGIN) / self.cell).round() as i64;
        (a, a - x)
    }

    /// Continuous `(a − b, a)` to SVG coordinates (cell centers at integers).
    fn place(&self, x: f64, a: f64) -> (f64, f64) {
        (
            MARGIN + (x - self.min_x as f64 + 0.5) * self.cell,
            MARGIN + (a - self.min_a as f64 + 0.5) * self.cell,
        )
    }

    fn size(&self) -> (f64, f64) {
        (
            2.0 * MARGIN + (self.max_x - self.min_x + 1) as f64 * self.cell,
            2.0 * MARGIN + (self.max_a - self.min_a + 1) as f64 * self.cell,
        )
    }
}

/// Heatmap with `a − b` to the right and `a` increasing downward; one
/// `<rect class="cell">` per support point, shaded by `ln(1 + mult)`.
pub fn heatmap(mu: &WeightDistribution, options: &HeatmapOptions) -> Result<String> {
    if options.cell.is_nan() || options.cell <= 0.0 {
        return Err(Error::InvalidArgument("cell size must be positive".into()));
    }
    let frame = HeatmapFrame::of(mu, options.cell)?;
    let max_log = mu.iter().map(|(_, v)| log1p_big(v)).fold(0.0, f64::max);
    let (width, height) = frame.size();
    let mut out = String::new();
    open_svg(
        &mut out,
        width,
        height,
        &format!("weight distribution, {}", mu.highest_weight()),
    );
    let _ = writeln!(
        out,
        r#"<text x="{}" y="{}" font-size="12" text-anchor="middle">a-b</text>"#,
        width / 2.0,
        MARGIN / 2.0
    );
    let _ = writeln!(
        out,
        r#"<text x="{}" y="{}" font-size="12" text-anchor="middle">a</text>"#,
        MARGIN / 2.0,
        height / 2.0
    );
    let _ = writeln!(out, r#"<g class="cells" stroke="none">"#);
    for (p, v) in mu.sorted_by_ab() {
        let (x, y) = frame.cell_origin(p.a_minus_b(), p.a);
        let _ = writeln!(
            out,
            r#"<rect class="cell" x="{x}" y="{y}" width="{c}" height="{c}" fill="{}" data-a="{}" data-b="{}" data-mult="{v}"/>"#,
            color(shade(v, max_log)),
            p.a,
            p.b,
            c = frame.cell,
        );
    }
    let _ = writeln!(out, "</g>");
    if options.overlay_ellipse {
        match Ellipse::of_distribution(mu) {
            Ok(e) => {
                let pts = ellipse_points(&e, options.ellipse_samples)?;
                let d = path_of(pts.into_iter().map(|(x, a)| frame.place(x, a)));
                let _ = writeln!(
                    out,
                    r#"<path class="ellipse" d="{d}" fill="none" stroke="red" stroke-width="1.5"/>"#
                );
            }
            // A point or segment has no ellipse to draw.
            Err(Error::DegenerateCovariance) => {}
            Err(e) => return Err(e),
        }
    }
    out.push_str("</svg>\n");
    Ok(out)
}

/// Bar chart of the degree marginal, bars ordered by degree.
pub fn degree_histogram(mu: &WeightDistribution) -> Result<String> {
    let bars: Vec<(i64, BigInt)> = marginal(mu, &Functional::<Rational>::a())
        .into_iter()
        .map(|(d, v)| (d.to_integer().to_i64().expect("degree fits i64"), v))
        .collect();
    histogram(
        &format!("degree distribution, {}", mu.highest_weight()),
        &bars,
    )
}

/// `v / max` in floating point for integers of any size.
fn big_ratio(v: &BigInt, max: &BigInt) -> f64 {
    let shift = max.bits().saturating_sub(60);
    let (v, max) = ((v.abs() >> shift).to_f64(), (max >> shift).to_f64());
    match (v, max) {
        (Some(v), Some(m)) if m > 0.0 => v / m,
        _ => 0.0,
    }
}

/// Above this many bars a histogram is drawn as one outline path.
const MAX_BARS: usize = 2000;

/// Bar chart of `(degree, count)` pairs; zero counts are dropped, so the
/// output agrees with [`degree_histogram`] on the same marginal. Long
/// marginals become a single filled outline of fixed width.
pub fn histogram(title: &str, bars: &[(i64, BigInt)]) -> Result<String> {
    let mut bars: Vec<&(i64, BigInt)> = bars.iter().filter(|(_, v)| !v.is_zero()).collect();
    if bars.is_empty() {
        return Err(Error::EmptyDistribution);
    }
    bars.sort_by_key(|(d, _)| *d);
    let plot_h = 240.0;
    let max = bars.iter().map(|(_, v)| v.abs()).max().unwrap_or_default();
    let bar_w = if bars.len() > MAX_BARS {
        960.0 / bars.len() as f64
    } else {
        16.0
    };
    let width = 2.0 * MARGIN + bars.len() as f64 * bar_w;
    let height = 2.0 * MARGIN + plot_h;
    let mut out = String::new();
    open_svg(&mut out, width, height, title);
    if bars.len() > MAX_BARS {
        let base = MARGIN + plot_h;
        let mut d = format!("M{MARGIN} {base} ");
        for (k, (_, v)) in bars.iter().enumerate() {
            let _ = write!(
                d,
                "L{} {} ",
                MARGIN + (k as f64 + 0.5) * bar_w,
                base - plot_h * big_ratio(v, &max)
            );
        }
        let _ = write!(d, "L{} {base} Z", MARGIN + bars.len() as f64 * bar_w);
        let _ = writeln!(
            out,
            r#"<path class="outline" d="{d}" fill="{}" stroke="none" data-first-degree="{}" data-last-degree="{}"/>"#,
            color(0.8),
            bars[0].0,
            bars[bars.len() - 1].0,
        );
    } else {
        let _ = writeln!(out, r#"<g class="bars" stroke="none">"#);
        for (k, (deg, v)) in bars.iter().enumerate() {
            let h = plot_h * big_ratio(v, &max);
            let x = MARGIN + k as f64 * bar_w;
            let y = MARGIN + plot_h - h;
            let _ = writeln!(
                out,
                r#"<rect class="bar" x="{x}" y="{y}" width="{}" height="{h}" fill="{}" data-degree="{deg}" data-mult="{v}"/>"#,
                bar_w - 2.0,
                color(0.8),
            );
        }
        let _ = writeln!(out, "</g>");
    }
    let _ = writeln!(
        out,
        r#"<text x="{}" y="{}" font-size="12" text-anchor="middle">degree</text>"#,
        width / 2.0,
        height - MARGIN / 3.0
    );
    out.push_str("</svg>\n");
    Ok(out)
}

/// Pushforward of `mu` under `((a − b)², a)`: one cell per image point,
/// `(a − b)²` to the right and `a` downward.
pub fn stretched_heatmap(mu: &WeightDistribution, cell: f64) -> Result<String> {
    if cell.is_nan() || cell <= 0.0 {
        return Err(Error::InvalidArgument("cell size must be positive".into()));
    }
    let d = Functional::<Rational>::a_minus_b();
    let nu = pushforward(mu, &CoordinateMap::new(d.pow(2), Functional::a()));
    let cells: Vec<((i64, i64), &BigInt)> = nu
        .iter()
        .map(|((x, y), v)| {
            (
                (
                    x.to_integer().to_i64().expect("fits"),
                    y.to_integer().to_i64().expect("fits"),
                ),
                v,
            )
        })
        .collect();
    let (min_y, max_y) = match (
        cells.iter().map(|c| c.0 .1).min(),
        cells.iter().map(|c| c.0 .1).max(),
    ) {
        (Some(lo), Some(hi)) => (lo, hi),
        _ => return Err(Error::EmptyDistribution),
    };
    let max_x = cells.iter().map(|c| c.0 .0).max().unwrap_or(0);
    let max_log = cells.iter().map(|(_, v)| log1p_big(v)).fold(0.0, f64::max);
    let width = 2.0 * MARGIN + (max_x + 1) as f64 * cell;
    let height = 2.0 * MARGIN + (max_y - min_y + 1) as f64 * cell;
    let mut out = String::new();
    open_svg(
        &mut out,
        width,
        height,
        &format!("stretched weight distribution, {}", mu.highest_weight()),
    );
    let _ = writeln!(
        out,
        r#"<text x="{}" y="{}" font-size="12" text-anchor="middle">(a-b)^2</text>"#,
        width / 2.0,
        MARGIN / 2.0
    );
    let _ = writeln!(out, r#"<g class="cells" stroke="none">"#);
    for ((x, y), v) in cells {
        let _ = writeln!(
            out,
            r#"<rect class="cell" x="{}" y="{}" width="{cell}" height="{cell}" fill="{}" data-x="{x}" data-y="{y}" data-mult="{v}"/>"#,
            MARGIN + x as f64 * cell,
            MARGIN + (y - min_y) as f64 * cell,
            color(shade(v, max_log)),
        );
    }
    let _ = writeln!(out, "</g>");
    out.push_str("</svg>\n");
    Ok(out)
}

/// Rescaled support in the rectangle `[−1, 1] × [0, 1]` (finite weight to
/// the right, rescaled degree downward) with the rescaled covariance
/// ellipse around the mean.
pub fn rescaled_heatmap(mu: &WeightDistribution, samples: usize) -> Result<String> {
    let points = rescaled_points::<Rational>(mu);
    if points.is_empty() {
        return Err(Error::EmptyDistribution);
    }
    let nu: PlanarMeasure<Rational> = points.into_iter().map(|((d, f), v)| ((f, d), v)).collect();
    let (side, dot) = (200.0, 3.0);
    let (width, height) = (2.0 * MARGIN + 2.0 * side, 2.0 * MARGIN + side);
    let place = |f: f64, d: f64| (MARGIN + (f + 1.0) * side, MARGIN + d * side);
    let max_log = nu.values().map(log1p_big).fold(0.0, f64::max);

    let mut out = String::new();
    open_svg(
        &mut out,
        width,
        height,
        &format!("rescaled weight distribution, {}", mu.highest_weight()),
    );
    let _ = writeln!(
        out,
        r#"<rect class="frame" x="{MARGIN}" y="{MARGIN}" width="{}" height="{side}" fill="none" stroke="black"/>"#,
        2.0 * side
    );
    let _ = writeln!(out, r#"<g class="points" stroke="none">"#);
    for ((f, d), v) in &nu {
        let (x, y) = place(f.as_f64(), d.as_f64());
        let _ = writeln!(
            out,
            r#"<rect class="point" x="{}" y="{}" width="{dot}" height="{dot}" fill="{}" data-mult="{v}"/>"#,
            x - dot / 2.0,
            y - dot / 2.0,
            color(shade(v, max_log)),
        );
    }
    let _ = writeln!(out, "</g>");
    let ef = planar_expectation(&nu, |f, _| f.clone())?;
    let ed = planar_expectation(&nu, |_, d| d.clone())?;
    let matrix = CovarianceMatrix::new(
        planar_covariance(&nu, |f, _| f.clone(), |f, _| f.clone())?,
        planar_covariance(&nu, |f, _| f.clone(), |_, d| d.clone())?,
        planar_covariance(&nu, |_, d| d.clone(), |_, d| d.clone())?,
    );
    let (mx, my) = place(ef.as_f64(), ed.as_f64());
    let _ = writeln!(
        out,
        r#"<circle class="mean" cx="{mx}" cy="{my}" r="2" fill="red"/>"#
    );
    match Ellipse::new((ef, ed), matrix) {
        Ok(e) => {
            let pts = ellipse_points(&e, samples)?;
            let d = path_of(pts.into_iter().map(|(f, d)| place(f, d)));
            let _ = writeln!(
                out,
                r#"<path class="ellipse" d="{d}" fill="none" stroke="red" stroke-width="1"/>"#
            );
        }
        Err(Error::DegenerateCovariance) => {}
        Err(e) => return Err(e),
    }
    out.push_str("</svg>\n");
    Ok(out)
}
