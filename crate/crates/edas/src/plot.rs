//! Hand-emitted SVG scatter plots plus the point CSV that is the actual
//! data contract. No charting dependency; primitive markup only.

/// One labeled point.
#[derive(Debug, Clone, PartialEq)]
pub struct ScatterPoint {
    pub label: String,
    pub x: f64,
    pub y: f64,
}

/// The `model,x,y` CSV for a point set, full precision.
pub fn points_csv(points: &[ScatterPoint]) -> String {
    let mut out = String::from("model,x,y\n");
    for point in points {
        out.push_str(&format!("{},{},{}\n", point.label, point.x, point.y));
    }
    out
}

const WIDTH: f64 = 720.0;
const HEIGHT: f64 = 480.0;
const MARGIN_LEFT: f64 = 72.0;
const MARGIN_RIGHT: f64 = 24.0;
const MARGIN_TOP: f64 = 24.0;
const MARGIN_BOTTOM: f64 = 56.0;
const TICKS: usize = 5;

struct Axis {
    min: f64,
    max: f64,
}

impl Axis {
    fn from_values(values: impl Iterator<Item = f64>) -> Self {
        let mut min = f64::INFINITY;
        let mut max = f64::NEG_INFINITY;
        for v in values {
            min = min.min(v);
            max = max.max(v);
        }
        if !min.is_finite() {
            return Self { min: 0.0, max: 1.0 };
        }
        if min == max {
            // Degenerate span: pad so the lone value sits mid-axis.
            let pad = if min == 0.0 { 0.5 } else { min.abs() * 0.1 };
            return Self {
                min: min - pad,
                max: max + pad,
            };
        }
        let pad = (max - min) * 0.05;
        Self {
            min: min - pad,
            max: max + pad,
        }
    }

    fn fraction(&self, value: f64) -> f64 {
        (value - self.min) / (self.max - self.min)
    }

    fn ticks(&self) -> Vec<f64> {
        (0..=TICKS)
            .map(|i| self.min + (self.max - self.min) * i as f64 / TICKS as f64)
            .collect()
    }
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

/// Renders a linear-axis scatter plot with one labeled point per entry.
pub fn scatter_svg(points: &[ScatterPoint], x_label: &str, y_label: &str) -> String {
    let x_axis = Axis::from_values(points.iter().map(|p| p.x));
    let y_axis = Axis::from_values(points.iter().map(|p| p.y));
    let plot_width = WIDTH - MARGIN_LEFT - MARGIN_RIGHT;
    let plot_height = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM;
    let px = |value: f64| MARGIN_LEFT + x_axis.fraction(value) * plot_width;
    let py = |value: f64| MARGIN_TOP + (1.0 - y_axis.fraction(value)) * plot_height;

    let mut svg = String::new();
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{HEIGHT}\" \
         viewBox=\"0 0 {WIDTH} {HEIGHT}\">\n"
    ));
    svg.push_str("  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");

    // Frame.
    svg.push_str(&format!(
        "  <rect x=\"{MARGIN_LEFT}\" y=\"{MARGIN_TOP}\" width=\"{plot_width}\" \
         height=\"{plot_height}\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n"
    ));

    // Ticks, gridlines, tick labels.
    for tick in x_axis.ticks() {
        let x = px(tick);
        let y0 = MARGIN_TOP + plot_height;
        svg.push_str(&format!(
            "  <line x1=\"{x:.2}\" y1=\"{MARGIN_TOP}\" x2=\"{x:.2}\" y2=\"{y0:.2}\" \
             stroke=\"#dddddd\" stroke-width=\"0.5\"/>\n"
        ));
        svg.push_str(&format!(
            "  <line x1=\"{x:.2}\" y1=\"{y0:.2}\" x2=\"{x:.2}\" y2=\"{:.2}\" \
             stroke=\"black\" stroke-width=\"1\"/>\n",
            y0 + 6.0
        ));
        svg.push_str(&format!(
            "  <text x=\"{x:.2}\" y=\"{:.2}\" font-family=\"sans-serif\" font-size=\"11\" \
             text-anchor=\"middle\">{tick:.4}</text>\n",
            y0 + 20.0
        ));
    }
    for tick in y_axis.ticks() {
        let y = py(tick);
        let x1 = MARGIN_LEFT + plot_width;
        svg.push_str(&format!(
            "  <line x1=\"{MARGIN_LEFT}\" y1=\"{y:.2}\" x2=\"{x1:.2}\" y2=\"{y:.2}\" \
             stroke=\"#dddddd\" stroke-width=\"0.5\"/>\n"
        ));
        svg.push_str(&format!(
            "  <line x1=\"{:.2}\" y1=\"{y:.2}\" x2=\"{MARGIN_LEFT}\" y2=\"{y:.2}\" \
             stroke=\"black\" stroke-width=\"1\"/>\n",
            MARGIN_LEFT - 6.0
        ));
        svg.push_str(&format!(
            "  <text x=\"{:.2}\" y=\"{:.2}\" font-family=\"sans-serif\" font-size=\"11\" \
             text-anchor=\"end\">{tick:.4}</text>\n",
            MARGIN_LEFT - 10.0,
            y + 4.0
        ));
    }

    // Axis titles.
    svg.push_str(&format!(
        "  <text x=\"{:.2}\" y=\"{:.2}\" font-family=\"sans-serif\" font-size=\"13\" \
         text-anchor=\"middle\">{}</text>\n",
        MARGIN_LEFT + plot_width / 2.0,
        HEIGHT - 12.0,
        escape(x_label)
    ));
    svg.push_str(&format!(
        "  <text x=\"16\" y=\"{:.2}\" font-family=\"sans-serif\" font-size=\"13\" \
         text-anchor=\"middle\" transform=\"rotate(-90 16 {:.2})\">{}</text>\n",
        MARGIN_TOP + plot_height / 2.0,
        MARGIN_TOP + plot_height / 2.0,
        escape(y_label)
    ));

    // Points with labels.
    for point in points {
        let x = px(point.x);
        let y = py(point.y);
        svg.push_str(&format!(
            "  <circle cx=\"{x:.2}\" cy=\"{y:.2}\" r=\"4\" fill=\"#2a6fdb\" fill-opacity=\"0.85\"/>\n"
        ));
        svg.push_str(&format!(
            "  <text x=\"{:.2}\" y=\"{:.2}\" font-family=\"sans-serif\" font-size=\"10\">{}</text>\n",
            x + 6.0,
            y - 4.0,
            escape(&point.label)
        ));
    }

    svg.push_str("</svg>\n");
    svg
}
