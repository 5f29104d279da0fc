use std::fmt::Write;

use crate::board::{Board, Coord, JumpSequence};

const CELL: i32 = 20;
const MARGIN: i32 = 20;

/// Renders the board as a standalone SVG document. Row `height - 1` is drawn
/// at the top. An optional jump sequence is drawn as a polyline from the ball.
pub fn render_svg(b: &Board, overlay: Option<&JumpSequence>) -> String {
    let w = b.width();
    let h = b.height();
    // room for an off-board winning landing above the top row
    let top = MARGIN + CELL;
    let px = |c: Coord| (MARGIN + c.x * CELL, top + (h - 1 - c.y) * CELL);
    let total_w = 2 * MARGIN + (w - 1) * CELL;
    let total_h = top + MARGIN + (h - 1) * CELL;

    let mut s = String::new();
    let _ = writeln!(
        s,
        r##"<svg xmlns="http://www.w3.org/2000/svg" width="{total_w}" height="{total_h}" viewBox="0 0 {total_w} {total_h}">"##
    );
    let _ = writeln!(s, r##"<rect width="100%" height="100%" fill="#e8c98f"/>"##);
    for x in 0..w {
        let (x0, y0) = px(Coord::new(x, h - 1));
        let (_, y1) = px(Coord::new(x, 0));
        let _ = writeln!(
            s,
            r##"<line x1="{x0}" y1="{y0}" x2="{x0}" y2="{y1}" stroke="#7a5a2a"/>"##
        );
    }
    for y in 0..h {
        let (x0, y0) = px(Coord::new(0, y));
        let (x1, _) = px(Coord::new(w - 1, y));
        let stroke = if y == h - 1 || y == 0 { 3 } else { 1 };
        let _ = writeln!(
            s,
            r##"<line x1="{x0}" y1="{y0}" x2="{x1}" y2="{y0}" stroke="#7a5a2a" stroke-width="{stroke}"/>"##
        );
    }
    for &m in b.men() {
        let (cx, cy) = px(m);
        let _ = writeln!(
            s,
            r##"<circle cx="{cx}" cy="{cy}" r="8" fill="white" stroke="black"/>"##
        );
    }
    let (bx, by) = px(b.ball());
    let _ = writeln!(s, r##"<circle cx="{bx}" cy="{by}" r="8" fill="black"/>"##);
    if let Some(seq) = overlay.filter(|s| !s.is_empty()) {
        let mut pts = format!("{bx},{by}");
        for &c in &seq.landings {
            let (x, y) = px(c);
            let _ = write!(pts, " {x},{y}");
        }
        let _ = writeln!(
            s,
            r##"<polyline points="{pts}" fill="none" stroke="red" stroke-width="3" stroke-opacity="0.7"/>"##
        );
    }
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn draws_men_ball_and_overlay() {
        let b = Board::new(3, 3, Coord::new(1, 0), [Coord::new(1, 1)]).unwrap();
        let seq = JumpSequence::new(vec![Coord::new(1, 2)]);
        let svg = render_svg(&b, Some(&seq));
        assert!(svg.starts_with("<svg"));
        assert!(svg.trim_end().ends_with("</svg>"));
        assert_eq!(svg.matches("<circle").count(), 2);
        assert_eq!(svg.matches("<polyline").count(), 1);
        assert_eq!(render_svg(&b, None).matches("<polyline").count(), 0);
    }
}
