//! Minimal static SVG: axes, ticks and one polyline per series.

use std::fmt::Write;

use super::{format_fixed, ChartDocument};

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 500.0;
const MARGIN: f64 = 60.0;
const COLORS: [&str; 6] = [
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b",
];
const TICKS: usize = 6;

struct Bounds {
    x_min: f64,
    x_max: f64,
    y_min: f64,
    y_max: f64,
}

impl Bounds {
    fn of(doc: &ChartDocument) -> Self {
        let mut b = Bounds {
            x_min: f64::INFINITY,
            x_max: f64::NEG_INFINITY,
            y_min: 0.0,
            y_max: f64::NEG_INFINITY,
        };
        for s in &doc.series {
            for (&x, &y) in s.x.iter().zip(&s.y) {
                b.x_min = b.x_min.min(x);
                b.x_max = b.x_max.max(x);
                b.y_min = b.y_min.min(y);
                b.y_max = b.y_max.max(y);
            }
        }
        if !b.x_min.is_finite() {
            b = Bounds {
                x_min: 0.0,
                x_max: 1.0,
                y_min: 0.0,
                y_max: 1.0,
            };
        }
        if b.x_max <= b.x_min {
            b.x_max = b.x_min + 1.0;
        }
        if b.y_max <= b.y_min {
            b.y_max = b.y_min + 1.0;
        }
        b
    }

    fn px(&self, x: f64) -> f64 {
        MARGIN + (x - self.x_min) / (self.x_max - self.x_min) * (WIDTH - 2.0 * MARGIN)
    }

    fn py(&self, y: f64) -> f64 {
        HEIGHT - MARGIN - (y - self.y_min) / (self.y_max - self.y_min) * (HEIGHT - 2.0 * MARGIN)
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

pub fn render_svg(doc: &ChartDocument) -> String {
    let b = Bounds::of(doc);
    let (x_label, y_label) = doc
        .series
        .first()
        .map(|s| (s.x_label.as_str(), s.y_label.as_str()))
        .unwrap_or(("x", "y"));
    let f = |v: f64| format_fixed(v, 2);

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#,
        w = WIDTH,
        h = HEIGHT
    );
    let _ = writeln!(
        out,
        r#"<text x="{}" y="24" font-family="sans-serif" font-size="16" text-anchor="middle">{} chart, latitude {}</text>"#,
        WIDTH / 2.0,
        doc.chart.as_str(),
        f(doc.latitude_deg)
    );

    // axes
    let (x0, y0) = (MARGIN, HEIGHT - MARGIN);
    let _ = writeln!(
        out,
        r#"<line x1="{x0}" y1="{y0}" x2="{}" y2="{y0}" stroke="black"/>"#,
        WIDTH - MARGIN
    );
    let _ = writeln!(
        out,
        r#"<line x1="{x0}" y1="{y0}" x2="{x0}" y2="{MARGIN}" stroke="black"/>"#
    );
    for i in 0..=TICKS {
        let t = i as f64 / TICKS as f64;
        let xv = b.x_min + t * (b.x_max - b.x_min);
        let yv = b.y_min + t * (b.y_max - b.y_min);
        let (px, py) = (b.px(xv), b.py(yv));
        let _ = writeln!(
            out,
            r#"<text x="{}" y="{}" font-family="sans-serif" font-size="11" text-anchor="middle">{}</text>"#,
            f(px),
            f(y0 + 16.0),
            f(xv)
        );
        let _ = writeln!(
            out,
            r#"<text x="{}" y="{}" font-family="sans-serif" font-size="11" text-anchor="end">{}</text>"#,
            f(x0 - 6.0),
            f(py + 4.0),
            f(yv)
        );
    }
    let _ = writeln!(
        out,
        r#"<text x="{}" y="{}" font-family="sans-serif" font-size="12" text-anchor="middle">{}</text>"#,
        WIDTH / 2.0,
        HEIGHT - 16.0,
        escape(x_label)
    );
    let _ = writeln!(
        out,
        r#"<text x="16" y="{}" font-family="sans-serif" font-size="12" text-anchor="middle" transform="rotate(-90 16 {})">{}</text>"#,
        HEIGHT / 2.0,
        HEIGHT / 2.0,
        escape(y_label)
    );

    for (i, s) in doc.series.iter().enumerate() {
        if s.is_empty() {
            continue;
        }
        let points: Vec<String> =
            s.x.iter()
                .zip(&s.y)
                .map(|(&x, &y)| format!("{},{}", f(b.px(x)), f(b.py(y))))
                .collect();
        let _ = writeln!(
            out,
            r#"<polyline fill="none" stroke="{}" stroke-width="1.5" points="{}"><title>{}</title></polyline>"#,
            COLORS[i % COLORS.len()],
            points.join(" "),
            escape(&s.name)
        );
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::output::{ChartKind, ChartSeries, SeriesMetadata};

    #[test]
    fn renders_one_polyline_per_series() {
        let meta = SeriesMetadata {
            latitude_deg: 30.0,
            mode: None,
            units: "deg".into(),
        };
        let s = ChartSeries::new(
            "a<b",
            "day",
            "tilt",
            vec![1.0, 2.0, 3.0],
            vec![5.0, 6.0, 5.5],
            0,
            meta,
        )
        .unwrap();
        let doc = ChartDocument {
            chart: ChartKind::Tilt,
            latitude_deg: 30.0,
            mode: None,
            series: vec![s.clone(), s],
        };
        let svg = render_svg(&doc);
        assert!(svg.starts_with("<svg"));
        assert!(svg.ends_with("</svg>\n"));
        assert_eq!(svg.matches("<polyline").count(), 2);
        assert!(svg.contains("a&lt;b"));
        assert_eq!(svg, render_svg(&doc));
    }
}
