//! Heatmap rendering of pattern maps: azimuth on x, elevation on y (up),
//! values in dB on a fixed viridis scale.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use image::{Rgb, RgbImage};

use crate::error::Result;
use crate::sweep::PatternMap;

const VIRIDIS: [[u8; 3]; 9] = [
    [68, 1, 84],
    [71, 44, 122],
    [59, 81, 139],
    [44, 113, 142],
    [33, 144, 141],
    [39, 173, 129],
    [92, 200, 99],
    [170, 220, 50],
    [253, 231, 37],
];

/// Viridis color at `t ∈ [0, 1]`, linearly interpolated between stops.
pub fn viridis(t: f64) -> [u8; 3] {
    let t = if t.is_nan() { 0.0 } else { t.clamp(0.0, 1.0) };
    let x = t * (VIRIDIS.len() - 1) as f64;
    let i = (x.floor() as usize).min(VIRIDIS.len() - 2);
    let f = x - i as f64;
    let mut out = [0u8; 3];
    for (c, o) in out.iter_mut().enumerate() {
        let a = VIRIDIS[i][c] as f64;
        let b = VIRIDIS[i + 1][c] as f64;
        *o = (a + (b - a) * f).round() as u8;
    }
    out
}

/// Color range of a map; flat maps get a ±1 dB window so they render mid-scale.
fn value_range(values: &[f64]) -> (f64, f64) {
    let finite = values.iter().copied().filter(|v| v.is_finite());
    let lo = finite.clone().fold(f64::INFINITY, f64::min);
    let hi = finite.fold(f64::NEG_INFINITY, f64::max);
    if !lo.is_finite() {
        return (-1.0, 1.0);
    }
    if hi - lo < 1e-9 {
        (lo - 1.0, hi + 1.0)
    } else {
        (lo, hi)
    }
}

fn hex(c: [u8; 3]) -> String {
    format!("#{:02x}{:02x}{:02x}", c[0], c[1], c[2])
}

/// SVG heatmap with axis extents and a labelled dB colorbar.
pub fn render_svg(map: &PatternMap) -> String {
    let db = map.to_db();
    let (n_el, n_az) = db.dims();
    let (lo, hi) = value_range(&db.values);
    let (plot_w, plot_h) = (540.0, 360.0);
    let (left, top) = (70.0, 40.0);
    let (cw, ch) = (plot_w / n_az as f64, plot_h / n_el as f64);
    let bar_x = left + plot_w + 30.0;

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{}" height="{}" font-family="sans-serif" font-size="12">"#,
        bar_x + 90.0,
        top + plot_h + 60.0
    );
    let _ = writeln!(
        s,
        r#"<text x="{}" y="24" text-anchor="middle">{} [dB], config {}</text>"#,
        left + plot_w / 2.0,
        db.quantity,
        db.config_id
    );
    for i_el in 0..n_el {
        // elevation increases upward
        let y = top + plot_h - (i_el + 1) as f64 * ch;
        for i_az in 0..n_az {
            let c = viridis((db.get(i_el, i_az) - lo) / (hi - lo));
            let _ = writeln!(
                s,
                r#"<rect x="{:.3}" y="{:.3}" width="{:.3}" height="{:.3}" fill="{}"/>"#,
                left + i_az as f64 * cw,
                y,
                cw + 0.05,
                ch + 0.05,
                hex(c)
            );
        }
    }
    let az = db.grid.azimuth();
    let el = db.grid.elevation();
    let _ = writeln!(
        s,
        r#"<rect x="{left}" y="{top}" width="{plot_w}" height="{plot_h}" fill="none" stroke="black"/>"#
    );
    for (x, a) in [(left, az[0]), (left + plot_w, az[az.len() - 1])] {
        let _ = writeln!(
            s,
            r#"<text x="{x}" y="{}" text-anchor="middle">{:.1}</text>"#,
            top + plot_h + 16.0,
            a.to_degrees()
        );
    }
    let _ = writeln!(
        s,
        r#"<text x="{}" y="{}" text-anchor="middle">azimuth [deg]</text>"#,
        left + plot_w / 2.0,
        top + plot_h + 36.0
    );
    for (y, e) in [(top + plot_h, el[0]), (top + 10.0, el[el.len() - 1])] {
        let _ = writeln!(s, r#"<text x="{}" y="{y}" text-anchor="end">{:.1}</text>"#, left - 6.0, e.to_degrees());
    }
    let _ = writeln!(
        s,
        r#"<text x="20" y="{}" transform="rotate(-90 20 {})" text-anchor="middle">elevation [deg]</text>"#,
        top + plot_h / 2.0,
        top + plot_h / 2.0
    );

    let steps = 64;
    let sh = plot_h / steps as f64;
    for k in 0..steps {
        let t = (k as f64 + 0.5) / steps as f64;
        let _ = writeln!(
            s,
            r#"<rect x="{bar_x}" y="{:.3}" width="20" height="{:.3}" fill="{}"/>"#,
            top + plot_h - (k + 1) as f64 * sh,
            sh + 0.05,
            hex(viridis(t))
        );
    }
    for k in 0..=4 {
        let t = k as f64 / 4.0;
        let _ = writeln!(
            s,
            r#"<text x="{}" y="{:.3}">{:.2}</text>"#,
            bar_x + 26.0,
            top + plot_h - t * plot_h + 4.0,
            lo + t * (hi - lo)
        );
    }
    s.push_str("</svg>\n");
    s
}

pub fn write_svg(path: &Path, map: &PatternMap) -> Result<()> {
    fs::write(path, render_svg(map))?;
    Ok(())
}

/// Raster heatmap with a colorbar strip on the right (no text).
pub fn render_png(map: &PatternMap) -> RgbImage {
    let db = map.to_db();
    let (n_el, n_az) = db.dims();
    let (lo, hi) = value_range(&db.values);
    let cell_w = (720 / n_az).max(1) as u32;
    let cell_h = (480 / n_el).max(1) as u32;
    let (plot_w, plot_h) = (cell_w * n_az as u32, cell_h * n_el as u32);
    let (gap, bar_w) = (16u32, 24u32);
    let mut img = RgbImage::from_pixel(plot_w + gap + bar_w, plot_h, Rgb([255, 255, 255]));
    for i_el in 0..n_el {
        for i_az in 0..n_az {
            let c = Rgb(viridis((db.get(i_el, i_az) - lo) / (hi - lo)));
            let y0 = plot_h - (i_el as u32 + 1) * cell_h;
            let x0 = i_az as u32 * cell_w;
            for y in y0..y0 + cell_h {
                for x in x0..x0 + cell_w {
                    img.put_pixel(x, y, c);
                }
            }
        }
    }
    for y in 0..plot_h {
        let c = Rgb(viridis(1.0 - (y as f64 + 0.5) / plot_h as f64));
        for x in plot_w + gap..plot_w + gap + bar_w {
            img.put_pixel(x, y, c);
        }
    }
    img
}

pub fn write_png(path: &Path, map: &PatternMap) -> Result<()> {
    render_png(map).save_with_format(path, image::ImageFormat::Png)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ris::Direction;
    use crate::sweep::{make_grid, PatternMap, Quantity, Scale};

    fn map(values: Vec<f64>) -> PatternMap {
        PatternMap {
            grid: make_grid(-1.0, 1.0, 3, -0.5, 0.5, 2).unwrap(),
            values,
            scale: Scale::Linear,
            quantity: Quantity::AfH,
            config_id: "t".into(),
            aoa: Direction::boresight(),
        }
    }

    #[test]
    fn colormap_endpoints() {
        assert_eq!(viridis(0.0), VIRIDIS[0]);
        assert_eq!(viridis(1.0), VIRIDIS[8]);
        assert_eq!(viridis(-3.0), VIRIDIS[0]);
        assert_eq!(viridis(0.5), VIRIDIS[4]);
    }

    #[test]
    fn svg_has_one_cell_per_sample() {
        let svg = render_svg(&map(vec![1.0, 2.0, 4.0, 8.0, 16.0, 32.0]));
        assert!(svg.starts_with("<svg"));
        assert_eq!(svg.matches("<rect").count(), 6 + 1 + 64);
        // lowest value in the bottom-left cell
        assert!(svg.contains(&hex(VIRIDIS[0])));
    }

    #[test]
    fn png_dims_and_flat_map() {
        let img = render_png(&map(vec![5.0; 6]));
        assert_eq!(img.height(), 480);
        assert_eq!(img.width(), 720 + 16 + 24);
        assert_eq!(img.get_pixel(0, 0).0, viridis(0.5));
    }
}
