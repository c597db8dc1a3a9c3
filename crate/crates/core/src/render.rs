//! Square diagrams of origamis.
//!
//! Squares are laid out on a grid by breadth-first search from square 1,
//! trying right, up, left, down in that order. An edge glued to the square
//! drawn next to it is left blank; every other edge carries the number of the
//! square it is glued to (a right edge labelled `k` is glued to the left edge
//! of square `k`). Squares that find no free neighbouring cell start a new
//! region to the right of everything placed so far.

use std::collections::{HashMap, VecDeque};
use std::fmt::Write;

use thiserror::Error;

use crate::origami::Origami;
use crate::perm::Permutation;

/// Largest degree accepted by the renderers.
pub const MAX_RENDER_DEGREE: usize = 200;

const INNER_WIDTH: usize = 13;
const CELL_WIDTH: usize = INNER_WIDTH + 2;
const CELL_HEIGHT: usize = 5;
const SVG_CELL: i64 = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RenderError {
    #[error("too large to render: {degree} squares (limit {MAX_RENDER_DEGREE})")]
    TooLarge { degree: usize },
    #[error("bad diagram at line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// Grid positions of the squares plus their unmatched edge labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Layout {
    /// `(x, y)` per square, `y` growing upwards; all coordinates non-negative.
    pub positions: Vec<(i64, i64)>,
    /// Label per square and side (right, top, left, bottom), 0-based partner.
    pub labels: Vec<[Option<usize>; 4]>,
}

/// A parsed box: square number and its four side labels.
type Cell = (usize, [Option<usize>; 4]);

const STEPS: [(i64, i64); 4] = [(1, 0), (0, 1), (-1, 0), (0, -1)];

impl Layout {
    pub fn of(o: &Origami) -> Result<Layout, RenderError> {
        let d = o.degree();
        if d > MAX_RENDER_DEGREE {
            return Err(RenderError::TooLarge { degree: d });
        }
        let neighbours = neighbour_tables(o);
        let mut positions: Vec<Option<(i64, i64)>> = vec![None; d];
        let mut occupied: HashMap<(i64, i64), usize> = HashMap::new();
        let mut queue = VecDeque::new();
        let mut region_x = 0;
        while let Some(start) = positions.iter().position(Option::is_none) {
            let cell = (region_x, 0);
            positions[start] = Some(cell);
            occupied.insert(cell, start);
            queue.push_back(start);
            while let Some(s) = queue.pop_front() {
                let (x, y) = positions[s].unwrap();
                for (side, &(dx, dy)) in STEPS.iter().enumerate() {
                    let t = neighbours[side][s];
                    let cell = (x + dx, y + dy);
                    if positions[t].is_none() && !occupied.contains_key(&cell) {
                        positions[t] = Some(cell);
                        occupied.insert(cell, t);
                        queue.push_back(t);
                    }
                }
            }
            region_x = occupied.keys().map(|&(x, _)| x).max().unwrap() + 2;
        }
        let min_x = occupied.keys().map(|&(x, _)| x).min().unwrap();
        let min_y = occupied.keys().map(|&(_, y)| y).min().unwrap();
        let positions: Vec<(i64, i64)> = positions
            .into_iter()
            .map(|p| {
                let (x, y) = p.unwrap();
                (x - min_x, y - min_y)
            })
            .collect();
        let at: HashMap<(i64, i64), usize> =
            positions.iter().enumerate().map(|(s, &p)| (p, s)).collect();
        let labels = (0..d)
            .map(|s| {
                let (x, y) = positions[s];
                let mut row = [None; 4];
                for (side, &(dx, dy)) in STEPS.iter().enumerate() {
                    let t = neighbours[side][s];
                    if at.get(&(x + dx, y + dy)) != Some(&t) {
                        row[side] = Some(t);
                    }
                }
                row
            })
            .collect();
        Ok(Layout { positions, labels })
    }

    fn width(&self) -> i64 {
        self.positions.iter().map(|p| p.0).max().unwrap_or(0) + 1
    }

    fn height(&self) -> i64 {
        self.positions.iter().map(|p| p.1).max().unwrap_or(0) + 1
    }
}

/// `[right, up, left, down]` neighbour of each square (0-based).
fn neighbour_tables(o: &Origami) -> [Vec<usize>; 4] {
    let table = |p: &Permutation| p.images().iter().map(|&i| i as usize).collect::<Vec<_>>();
    [
        table(o.sigma_a()),
        table(o.sigma_b()),
        table(&o.sigma_a().inverse()),
        table(&o.sigma_b().inverse()),
    ]
}

fn label(l: Option<usize>) -> String {
    l.map(|s| (s + 1).to_string()).unwrap_or_default()
}

/// ASCII diagram, one 15×5 character box per square.
pub fn render_ascii(o: &Origami) -> Result<String, RenderError> {
    let layout = Layout::of(o)?;
    let (w, h) = (layout.width() as usize, layout.height() as usize);
    let mut canvas = vec![vec![' '; w * CELL_WIDTH]; h * CELL_HEIGHT];
    for (s, &(x, y)) in layout.positions.iter().enumerate() {
        let col = x as usize * CELL_WIDTH;
        let row = (h - 1 - y as usize) * CELL_HEIGHT;
        let [r, t, l, b] = layout.labels[s].map(label);
        let border = format!("+{}+", "-".repeat(INNER_WIDTH));
        let lines = [
            border.clone(),
            format!("|{t:^INNER_WIDTH$}|"),
            format!("|{l:<3} {:^5} {r:>3}|", format!("[{}]", s + 1)),
            format!("|{b:^INNER_WIDTH$}|"),
            border,
        ];
        for (i, line) in lines.iter().enumerate() {
            for (j, c) in line.chars().enumerate() {
                canvas[row + i][col + j] = c;
            }
        }
    }
    let mut out = String::new();
    for line in canvas {
        let line: String = line.into_iter().collect();
        out.push_str(line.trim_end());
        out.push('\n');
    }
    Ok(out)
}

/// Reads the gluings back from [`render_ascii`] output.
pub fn parse_ascii_render(text: &str) -> Result<Origami, RenderError> {
    let lines: Vec<Vec<char>> = text.lines().map(|l| l.chars().collect()).collect();
    let char_at = |row: usize, col: usize| -> char {
        lines
            .get(row)
            .and_then(|l| l.get(col))
            .copied()
            .unwrap_or(' ')
    };
    let slice = |row: usize, col: usize, len: usize| -> String {
        (col..col + len).map(|c| char_at(row, c)).collect()
    };
    let rows = lines.len().div_ceil(CELL_HEIGHT);
    let cols = lines
        .iter()
        .map(Vec::len)
        .max()
        .unwrap_or(0)
        .div_ceil(CELL_WIDTH);
    let mut cells: HashMap<(i64, i64), Cell> = HashMap::new();
    for r in 0..rows {
        for c in 0..cols {
            let (row, col) = (r * CELL_HEIGHT, c * CELL_WIDTH);
            if char_at(row + 2, col) != '|' {
                continue;
            }
            let err = |message: &str| RenderError::Parse {
                line: row + 3,
                message: message.to_string(),
            };
            let number = |s: &str| -> Result<Option<usize>, RenderError> {
                let s = s.trim();
                if s.is_empty() {
                    return Ok(None);
                }
                match s.parse::<usize>() {
                    Ok(n) if n >= 1 => Ok(Some(n - 1)),
                    _ => Err(err(&format!("bad label '{s}'"))),
                }
            };
            let middle = slice(row + 2, col + 1, INNER_WIDTH);
            if !middle.is_ascii() {
                return Err(err("unexpected character"));
            }
            let square = middle[4..9]
                .trim()
                .strip_prefix('[')
                .and_then(|s| s.strip_suffix(']'))
                .ok_or_else(|| err("missing square number"))?;
            let square = number(square)?.ok_or_else(|| err("missing square number"))?;
            let labels = [
                number(&middle[10..])?,
                number(&slice(row + 1, col + 1, INNER_WIDTH))?,
                number(&middle[..3])?,
                number(&slice(row + 3, col + 1, INNER_WIDTH))?,
            ];
            let pos = (c as i64, (rows - 1 - r) as i64);
            cells.insert(pos, (square, labels));
        }
    }
    let d = cells.len();
    if d == 0 {
        return Err(RenderError::Parse {
            line: 1,
            message: "no squares found".into(),
        });
    }
    let mut images = [vec![u32::MAX; d], vec![u32::MAX; d]];
    for (&(x, y), &(s, labels)) in &cells {
        if s >= d || images[0][s] != u32::MAX {
            return Err(RenderError::Parse {
                line: 1,
                message: format!("square numbers must be 1..{d} without repeats"),
            });
        }
        for side in 0..2 {
            let (dx, dy) = STEPS[side];
            let t = match labels[side] {
                Some(t) => t,
                None => cells
                    .get(&(x + dx, y + dy))
                    .map(|&(t, _)| t)
                    .ok_or_else(|| RenderError::Parse {
                        line: 1,
                        message: format!("square {} has an unlabelled open edge", s + 1),
                    })?,
            };
            images[side][s] = t as u32;
        }
    }
    let bad = |_| RenderError::Parse {
        line: 1,
        message: "gluings do not form permutations".into(),
    };
    let [a, b] = images;
    let a = Permutation::from_images(a).map_err(bad)?;
    let b = Permutation::from_images(b).map_err(bad)?;
    Origami::new(a, b).map_err(|e| RenderError::Parse {
        line: 1,
        message: e.to_string(),
    })
}

/// SVG diagram with the same layout and labels as [`render_ascii`].
pub fn render_svg(o: &Origami) -> Result<String, RenderError> {
    let layout = Layout::of(o)?;
    let margin = SVG_CELL / 2;
    let (w, h) = (layout.width(), layout.height());
    let (width, height) = (w * SVG_CELL + 2 * margin, h * SVG_CELL + 2 * margin);
    let mut out = String::new();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}" font-family="sans-serif" text-anchor="middle" dominant-baseline="central">"#
    )
    .unwrap();
    for (s, &(x, y)) in layout.positions.iter().enumerate() {
        let left = margin + x * SVG_CELL;
        let top = margin + (h - 1 - y) * SVG_CELL;
        let (cx, cy) = (left + SVG_CELL / 2, top + SVG_CELL / 2);
        writeln!(
            out,
            r##"<rect x="{left}" y="{top}" width="{SVG_CELL}" height="{SVG_CELL}" fill="#f4f1e8" stroke="#333" stroke-width="1.5"/>"##
        )
        .unwrap();
        writeln!(
            out,
            r#"<text x="{cx}" y="{cy}" font-size="16" font-weight="bold">{}</text>"#,
            s + 1
        )
        .unwrap();
        let inset = SVG_CELL / 2 - 9;
        let spots = [
            (cx + inset, cy),
            (cx, cy - inset),
            (cx - inset, cy),
            (cx, cy + inset),
        ];
        for (side, &(lx, ly)) in spots.iter().enumerate() {
            if let Some(t) = layout.labels[s][side] {
                writeln!(
                    out,
                    r##"<text x="{lx}" y="{ly}" font-size="11" fill="#a33">{}</text>"##,
                    t + 1
                )
                .unwrap();
            }
        }
    }
    out.push_str("</svg>\n");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::origami::{known, random_origami};

    #[test]
    fn square_torus_is_self_labelled() {
        let text = render_ascii(&Origami::square_torus()).unwrap();
        let expected = "\
+-------------+
|      1      |
|1    [1]    1|
|      1      |
+-------------+
";
        assert_eq!(text, expected);
        assert_eq!(parse_ascii_render(&text).unwrap(), Origami::square_torus());
    }

    #[test]
    fn wollmilchsau_layout() {
        let o = known::eierlegende_wollmilchsau();
        let layout = Layout::of(&o).unwrap();
        assert_eq!(layout.positions.len(), 8);
        let text = render_ascii(&o).unwrap();
        for s in 1..=8 {
            assert!(text.contains(&format!("[{s}]")));
        }
        assert_eq!(parse_ascii_render(&text).unwrap(), o);
    }

    #[test]
    fn reparse_reconstructs_the_gluing() {
        for seed in 0..200 {
            let o = random_origami(1 + seed as usize % 30, seed);
            let back = parse_ascii_render(&render_ascii(&o).unwrap()).unwrap();
            assert_eq!(back, o, "seed {seed}");
        }
        for o in [known::escalator(), known::a4_origami()] {
            assert!(parse_ascii_render(&render_ascii(&o).unwrap())
                .unwrap()
                .is_equivalent(&o));
        }
    }

    #[test]
    fn layout_is_deterministic_and_injective() {
        let o = random_origami(60, 7);
        let l = Layout::of(&o).unwrap();
        assert_eq!(l, Layout::of(&o).unwrap());
        let mut seen = std::collections::HashSet::new();
        assert!(l.positions.iter().all(|p| seen.insert(*p)));
    }

    #[test]
    fn size_limit() {
        let big = random_origami(201, 1);
        assert_eq!(
            render_ascii(&big),
            Err(RenderError::TooLarge { degree: 201 })
        );
        assert!(render_svg(&big).is_err());
        assert!(render_ascii(&random_origami(200, 1)).is_ok());
    }

    #[test]
    fn svg_output() {
        let svg = render_svg(&known::escalator()).unwrap();
        assert!(svg.starts_with("<svg"));
        assert_eq!(svg.matches("<rect").count(), 8);
        assert!(svg.trim_end().ends_with("</svg>"));
    }
}
