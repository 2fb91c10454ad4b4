//! Standalone SVG scatter plots of planar point sets modulo `n`.

use std::fmt::Write as _;

/// Below this modulus points are drawn as dots rather than unit squares.
const DOT_THRESHOLD: u64 = 64;

/// Renders `points` on an `n x n` grid with the origin at the bottom left and
/// `y` increasing upward. Each point becomes one element with class `pt`.
pub fn render_svg(points: &[(u64, u64)], n: u64) -> String {
    let n = n.max(1);
    let mut out = String::new();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {n} {n}" width="512" height="512" shape-rendering="crispEdges">"#
    )
    .unwrap();
    writeln!(out, r#"<rect x="0" y="0" width="{n}" height="{n}" fill="white" stroke="black" stroke-width="{}"/>"#, frame_width(n)).unwrap();
    writeln!(out, r#"<g fill="black">"#).unwrap();
    for &(x, y) in points {
        debug_assert!(x < n && y < n);
        // flip so larger y is drawn higher up
        let top = n - 1 - y;
        if n < DOT_THRESHOLD {
            writeln!(
                out,
                r#"<circle class="pt" cx="{}.5" cy="{}.5" r="0.4"/>"#,
                x, top
            )
            .unwrap();
        } else {
            writeln!(
                out,
                r#"<rect class="pt" x="{x}" y="{top}" width="1" height="1"/>"#
            )
            .unwrap();
        }
    }
    out.push_str("</g>\n</svg>\n");
    out
}

fn frame_width(n: u64) -> String {
    format!("{}", (n as f64 / 256.0).max(0.05))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_modulus_uses_dots() {
        let svg = render_svg(&[(1, 1), (2, 3), (3, 2), (4, 4)], 5);
        assert_eq!(svg.matches(r#"class="pt""#).count(), 4);
        assert!(svg.contains(r#"<circle class="pt" cx="1.5" cy="3.5" r="0.4"/>"#));
        assert!(svg.contains(r#"viewBox="0 0 5 5""#));
    }

    #[test]
    fn large_modulus_uses_unit_squares() {
        let svg = render_svg(&[(1, 1)], 100);
        assert!(svg.contains(r#"<rect class="pt" x="1" y="98" width="1" height="1"/>"#));
    }

    #[test]
    fn empty_plot_is_valid() {
        let svg = render_svg(&[], 10);
        roxmltree::Document::parse(&svg).unwrap();
        assert_eq!(svg.matches(r#"class="pt""#).count(), 0);
    }
}
