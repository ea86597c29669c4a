//! Static SVG figures of arctic curves.

use svg::node::element::path::Data;
use svg::node::element::{Circle, Group, Path, Polygon, Rectangle, Title};
use svg::node::Text;
use svg::Document;

const WIDTH: f64 = 640.0;
const MARGIN: f64 = 24.0;
const PALETTE: [&str; 8] = ["#1b9e77", "#d95f02", "#7570b3", "#e7298a", "#66a61e", "#e6ab02", "#a6761d", "#666666"];

#[derive(Clone, Debug, Default)]
pub struct Figure {
    pub title: String,
    pub outline: Option<Vec<[f64; 2]>>,
    /// Curves with a palette index.
    pub curves: Vec<(Vec<[f64; 2]>, usize)>,
    pub markers: Vec<[f64; 2]>,
}

impl Figure {
    fn bounds(&self) -> [f64; 4] {
        let pts = self.outline.iter().flatten().chain(self.curves.iter().flat_map(|c| &c.0)).chain(&self.markers);
        let mut b = [f64::INFINITY, f64::INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY];
        for p in pts.filter(|p| p[0].is_finite() && p[1].is_finite()) {
            b = [b[0].min(p[0]), b[1].min(p[1]), b[2].max(p[0]), b[3].max(p[1])];
        }
        if !b[0].is_finite() {
            return [0.0, 0.0, 1.0, 1.0];
        }
        b
    }

    pub fn render(&self) -> String {
        let [x0, y0, x1, y1] = self.bounds();
        let span = (x1 - x0).max(y1 - y0).max(1e-12);
        let k = (WIDTH - 2.0 * MARGIN) / span;
        let height = (y1 - y0) * k + 2.0 * MARGIN;
        let map = |p: &[f64; 2]| (round(MARGIN + (p[0] - x0) * k), round(height - MARGIN - (p[1] - y0) * k));

        let mut doc = Document::new()
            .set("width", WIDTH)
            .set("height", round(height))
            .set("viewBox", (0, 0, WIDTH, round(height)))
            .add(Title::new("").add(Text::new(self.title.clone())))
            .add(Rectangle::new().set("width", "100%").set("height", "100%").set("fill", "white"));

        if let Some(outline) = &self.outline {
            let points: Vec<String> = outline.iter().map(&map).map(|(x, y)| format!("{x},{y}")).collect();
            doc = doc.add(
                Polygon::new()
                    .set("points", points.join(" "))
                    .set("fill", "none")
                    .set("stroke", "black")
                    .set("stroke-width", 1.5),
            );
        }

        let mut arcs = Group::new().set("fill", "none").set("stroke-width", 2);
        for (curve, color) in &self.curves {
            let mut data = Data::new();
            for (i, p) in curve.iter().filter(|p| p[0].is_finite() && p[1].is_finite()).enumerate() {
                let q = map(p);
                data = if i == 0 { data.move_to(q) } else { data.line_to(q) };
            }
            arcs = arcs.add(Path::new().set("d", data).set("stroke", PALETTE[color % PALETTE.len()]));
        }
        doc = doc.add(arcs);

        let mut marks = Group::new().set("fill", "black");
        for p in &self.markers {
            let (cx, cy) = map(p);
            marks = marks.add(Circle::new().set("cx", cx).set("cy", cy).set("r", 3));
        }
        doc.add(marks).to_string() + "\n"
    }
}

fn round(v: f64) -> f64 {
    (v * 1000.0).round() / 1000.0
}

#[cfg(test)]
mod tests {
    use super::*;

    fn figure() -> Figure {
        Figure {
            title: "square".into(),
            outline: Some(vec![[0.0, 0.0], [0.0, 1.0], [1.0, 1.0], [1.0, 0.0]]),
            curves: vec![(vec![[0.0, 0.5], [0.5, 1.0]], 0), (vec![[0.5, 1.0], [1.0, 0.5]], 9)],
            markers: vec![[0.5, 1.0]],
        }
    }

    #[test]
    fn renders_all_parts() {
        let s = figure().render();
        assert!(s.starts_with("<svg"));
        assert!(s.contains("<title>square</title>"));
        assert_eq!(s.matches("<path").count(), 2);
        assert_eq!(s.matches("<circle").count(), 1);
        assert!(s.contains(PALETTE[1]));
    }

    #[test]
    fn y_axis_points_up() {
        let s = figure().render();
        // (0,0) is the lower-left corner of the drawing
        assert!(s.contains("24,616"), "{s}");
    }

    #[test]
    fn identical_renders() {
        assert_eq!(figure().render(), figure().render());
    }
}
