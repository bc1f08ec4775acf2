//! SVG drawings of floor diagrams and markings: vertices on a horizontal line
//! in their linear order, edges as arcs labelled by weight.

use std::fmt::Write;

use super::floor::{FloorDiagram, MarkedDiagram, VertexColour};

const STEP: f64 = 60.0;
const MARGIN: f64 = 40.0;
const RADIUS: f64 = 8.0;

struct Canvas {
    width: f64,
    height: f64,
    axis: f64,
    body: String,
}

impl Canvas {
    fn new(vertices: usize, max_span: usize) -> Self {
        let arc = max_span as f64 * STEP / 2.0;
        let width = 2.0 * MARGIN + STEP * vertices.saturating_sub(1) as f64;
        let height = 2.0 * MARGIN + arc + RADIUS;
        Self {
            width,
            height,
            axis: height - MARGIN,
            body: String::new(),
        }
    }

    fn x(&self, pos: usize) -> f64 {
        MARGIN + STEP * pos as f64
    }

    fn arc(&mut self, from: usize, to: usize, weight: u32) {
        let (x1, x2) = (self.x(from), self.x(to));
        let r = (x2 - x1) / 2.0;
        let y = self.axis;
        let _ = writeln!(
            self.body,
            r#"<path d="M {x1:.1} {y:.1} A {r:.1} {r:.1} 0 0 1 {x2:.1} {y:.1}" fill="none" stroke="black"/>"#
        );
        if weight != 1 {
            let _ = writeln!(
                self.body,
                r#"<text x="{:.1}" y="{:.1}" font-size="12" text-anchor="middle">{weight}</text>"#,
                (x1 + x2) / 2.0,
                y - r - 4.0
            );
        }
        // arrowhead at the target
        let _ = writeln!(
            self.body,
            r#"<path d="M {:.1} {:.1} L {x2:.1} {:.1} L {:.1} {:.1}" fill="none" stroke="black"/>"#,
            x2 - 4.0,
            y - RADIUS - 6.0,
            y - RADIUS,
            x2 + 4.0,
            y - RADIUS - 6.0
        );
    }

    fn vertex(&mut self, pos: usize, colour: VertexColour, label: Option<String>) {
        let fill = match colour {
            VertexColour::White => "white",
            VertexColour::Black => "black",
        };
        let _ = writeln!(
            self.body,
            r#"<circle cx="{:.1}" cy="{:.1}" r="{RADIUS}" fill="{fill}" stroke="black"/>"#,
            self.x(pos),
            self.axis
        );
        if let Some(label) = label {
            let _ = writeln!(
                self.body,
                r#"<text x="{:.1}" y="{:.1}" font-size="11" text-anchor="middle">{label}</text>"#,
                self.x(pos),
                self.axis + RADIUS + 14.0
            );
        }
    }

    fn finish(self) -> String {
        format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{:.0}\" height=\"{:.0}\" viewBox=\"0 0 {:.0} {:.0}\">\n{}</svg>\n",
            self.width, self.height, self.width, self.height, self.body
        )
    }
}

/// Floors only, labelled `R_j - L_j` and `s_j`.
pub fn render_floor_diagram(d: &FloorDiagram) -> String {
    let h = d.height();
    let span = d
        .edges
        .iter()
        .map(|e| e.target - e.source)
        .max()
        .unwrap_or(0);
    let mut c = Canvas::new(h, span);
    for e in &d.edges {
        c.arc(e.source - 1, e.target - 1, e.weight);
    }
    for j in 1..=h {
        let label = format!("{}|{}", d.right[j - 1] - d.left[j - 1], d.s_seq[j - 1]);
        c.vertex(j - 1, VertexColour::White, Some(label));
    }
    c.finish()
}

pub fn render_marked_diagram(m: &MarkedDiagram) -> String {
    let span = m.edges.iter().map(|e| e.1 - e.0).max().unwrap_or(0);
    let mut c = Canvas::new(m.vertex_count(), span);
    for &(a, b, w) in &m.edges {
        c.arc(a, b, w);
    }
    for (pos, &colour) in m.colours.iter().enumerate() {
        c.vertex(pos, colour, None);
    }
    c.finish()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::floor::{enumerate_floor_diagrams, enumerate_markings};
    use crate::polygon::Preset;

    #[test]
    fn renders_every_vertex_and_edge() {
        let p = Preset::P2 { d: 2 }.polygon().unwrap();
        for d in enumerate_floor_diagrams(&p, 0).unwrap() {
            let s = render_floor_diagram(&d);
            assert!(s.starts_with("<svg"));
            assert_eq!(s.matches("<circle").count(), d.height());
            for m in enumerate_markings(&d) {
                let s = render_marked_diagram(&m);
                assert_eq!(s.matches("<circle").count(), m.vertex_count());
                assert_eq!(s.matches("A ").count(), m.edges.len());
            }
        }
    }
}
