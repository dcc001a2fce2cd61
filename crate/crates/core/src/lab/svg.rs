use std::fmt::Write;

const WIDTH: f64 = 960.0;
const HEIGHT: f64 = 540.0;
const LEFT: f64 = 90.0;
const RIGHT: f64 = 180.0;
const TOP: f64 = 50.0;
const BOTTOM: f64 = 70.0;
const COLORS: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"];

/// One line with an optional `(low, high)` band around it.
#[derive(Debug, Clone, PartialEq)]
pub struct Series {
    pub label: String,
    pub points: Vec<(f64, f64)>,
    pub band: Option<Vec<(f64, f64)>>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LineChart {
    pub title: String,
    pub x_label: String,
    pub y_label: String,
    /// Plot `log10(y)`; nonpositive values are clamped to the smallest
    /// positive value in the data.
    pub log_y: bool,
    pub series: Vec<Series>,
}

impl LineChart {
    pub fn render(&self) -> String {
        let floor = self
            .series
            .iter()
            .flat_map(|s| s.points.iter().map(|p| p.1).chain(s.band.iter().flatten().flat_map(|b| [b.0, b.1])))
            .filter(|v| *v > 0.0 && v.is_finite())
            .fold(f64::INFINITY, f64::min);
        let floor = if floor.is_finite() { floor } else { 1.0 };
        let ty = |v: f64| if self.log_y { v.max(floor).log10() } else { v };

        let mut xs = Bounds::default();
        let mut ys = Bounds::default();
        for s in &self.series {
            for &(x, y) in &s.points {
                xs.add(x);
                ys.add(ty(y));
            }
            for &(lo, hi) in s.band.iter().flatten() {
                ys.add(ty(lo));
                ys.add(ty(hi));
            }
        }
        let (x0, x1) = xs.range();
        let (y0, y1) = if self.log_y {
            let (a, b) = ys.range();
            (a.floor(), b.ceil().max(a.floor() + 1.0))
        } else {
            ys.range()
        };
        let pw = WIDTH - LEFT - RIGHT;
        let ph = HEIGHT - TOP - BOTTOM;
        let px = |x: f64| LEFT + (x - x0) / (x1 - x0) * pw;
        let py = |y: f64| TOP + (1.0 - (y - y0) / (y1 - y0)) * ph;

        let mut out = String::new();
        let _ = writeln!(
            out,
            r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {WIDTH} {HEIGHT}" width="{WIDTH}" height="{HEIGHT}" font-family="sans-serif" font-size="13">"#
        );
        let _ = writeln!(out, r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#);
        let _ = writeln!(out, r#"<text x="{}" y="28" text-anchor="middle" font-size="16">{}</text>"#, WIDTH / 2.0, escape(&self.title));

        let ticks = if self.log_y {
            (y0 as i64..=y1 as i64).map(|k| (k as f64, format!("1e{k}"))).collect::<Vec<_>>()
        } else {
            (0..=5).map(|k| y0 + (y1 - y0) * k as f64 / 5.0).map(|v| (v, format!("{v:.3}"))).collect()
        };
        for (v, label) in ticks {
            let y = py(v);
            let _ = writeln!(out, r##"<line x1="{LEFT}" y1="{y:.2}" x2="{:.2}" y2="{y:.2}" stroke="#e0e0e0"/>"##, LEFT + pw);
            let _ = writeln!(out, r#"<text x="{:.2}" y="{:.2}" text-anchor="end">{label}</text>"#, LEFT - 6.0, y + 4.0);
        }
        for k in 0..=5 {
            let v = x0 + (x1 - x0) * k as f64 / 5.0;
            let x = px(v);
            let _ = writeln!(out, r#"<text x="{x:.2}" y="{:.2}" text-anchor="middle">{}</text>"#, TOP + ph + 20.0, trim(v));
        }
        let _ = writeln!(out, r#"<rect x="{LEFT}" y="{TOP}" width="{pw}" height="{ph}" fill="none" stroke="black"/>"#);
        let _ = writeln!(out, r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">{}</text>"#, LEFT + pw / 2.0, HEIGHT - 20.0, escape(&self.x_label));
        let _ = writeln!(
            out,
            r#"<text transform="translate(24 {:.2}) rotate(-90)" text-anchor="middle">{}</text>"#,
            TOP + ph / 2.0,
            escape(&self.y_label)
        );

        for (idx, s) in self.series.iter().enumerate() {
            let color = COLORS[idx % COLORS.len()];
            if let Some(band) = &s.band {
                let upper = s.points.iter().zip(band).map(|(p, b)| format!("{:.2},{:.2}", px(p.0), py(ty(b.1))));
                let lower = s.points.iter().zip(band).rev().map(|(p, b)| format!("{:.2},{:.2}", px(p.0), py(ty(b.0))));
                let poly: Vec<String> = upper.chain(lower).collect();
                let _ = writeln!(out, r#"<polygon points="{}" fill="{color}" fill-opacity="0.15" stroke="none"/>"#, poly.join(" "));
            }
            let line: Vec<String> = s.points.iter().map(|p| format!("{:.2},{:.2}", px(p.0), py(ty(p.1)))).collect();
            let _ = writeln!(out, r#"<polyline points="{}" fill="none" stroke="{color}" stroke-width="1.5"/>"#, line.join(" "));
            let ly = TOP + 20.0 + 22.0 * idx as f64;
            let lx = LEFT + pw + 16.0;
            let _ = writeln!(out, r#"<line x1="{lx}" y1="{ly}" x2="{}" y2="{ly}" stroke="{color}" stroke-width="3"/>"#, lx + 24.0);
            let _ = writeln!(out, r#"<text x="{}" y="{}">{}</text>"#, lx + 30.0, ly + 4.0, escape(&s.label));
        }
        out.push_str("</svg>\n");
        out
    }
}

#[derive(Default)]
struct Bounds {
    lo: Option<f64>,
    hi: Option<f64>,
}

impl Bounds {
    fn add(&mut self, v: f64) {
        if v.is_finite() {
            self.lo = Some(self.lo.map_or(v, |l| l.min(v)));
            self.hi = Some(self.hi.map_or(v, |h| h.max(v)));
        }
    }

    fn range(&self) -> (f64, f64) {
        match (self.lo, self.hi) {
            (Some(l), Some(h)) if h > l => (l, h),
            (Some(l), _) => (l - 0.5, l + 0.5),
            _ => (0.0, 1.0),
        }
    }
}

fn trim(v: f64) -> String {
    if v.fract() == 0.0 { format!("{v:.0}") } else { format!("{v:.2}") }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn renders_a_log_chart() {
        let chart = LineChart {
            title: "gap <demo>".into(),
            x_label: "iteration".into(),
            y_label: "phi".into(),
            log_y: true,
            series: vec![Series {
                label: "a".into(),
                points: vec![(0.0, 1.0), (1.0, 1e-3), (2.0, 0.0)],
                band: Some(vec![(0.5, 2.0), (1e-4, 1e-2), (0.0, 0.0)]),
            }],
        };
        let svg = chart.render();
        assert!(svg.starts_with("<svg") && svg.trim_end().ends_with("</svg>"));
        assert!(svg.contains(r#"viewBox="0 0 960 540""#));
        assert!(svg.contains("gap &lt;demo&gt;"));
        assert!(svg.contains(">1e-4<") && svg.contains(">1e1<"));
        assert!(!svg.contains("NaN") && !svg.contains("inf"));
    }

    #[test]
    fn constant_series_has_a_range() {
        let chart = LineChart {
            title: String::new(),
            x_label: String::new(),
            y_label: String::new(),
            log_y: false,
            series: vec![Series { label: "c".into(), points: vec![(0.0, 2.0), (1.0, 2.0)], band: None }],
        };
        assert!(!chart.render().contains("NaN"));
    }
}
