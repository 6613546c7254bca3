//! Marching-squares contours rendered to SVG, plus a sign shading layer.
//!
//! Output bytes are deterministic for a fixed input: segment endpoints on a
//! shared cell edge are interpolated in a canonical direction, chaining uses
//! ordered maps, and floats print with fixed precision.

use std::collections::BTreeMap;
use std::fmt::Write as _;

/// Scalar samples on a rectangular grid; `values[ix * resolution + iy]`.
#[derive(Debug, Clone)]
pub struct ScalarGrid {
    pub bounds: [(f64, f64); 2],
    pub resolution: usize,
    pub values: Vec<f64>,
}

#[derive(Debug)]
pub enum ContourError {
    DegenerateGrid,
    ShapeMismatch,
}

impl std::fmt::Display for ContourError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ContourError::DegenerateGrid => write!(f, "grid must be at least 2x2"),
            ContourError::ShapeMismatch => write!(f, "value count does not match resolution"),
        }
    }
}

impl std::error::Error for ContourError {}

impl ScalarGrid {
    fn coordinate(&self, axis: usize, index: usize) -> f64 {
        let (lo, hi) = self.bounds[axis];
        lo + (hi - lo) * (index as f64) / ((self.resolution - 1) as f64)
    }

    fn value(&self, ix: usize, iy: usize) -> f64 {
        self.values[ix * self.resolution + iy]
    }

    fn validate(&self) -> Result<(), ContourError> {
        if self.resolution < 2 {
            return Err(ContourError::DegenerateGrid);
        }
        if self.values.len() != self.resolution * self.resolution {
            return Err(ContourError::ShapeMismatch);
        }
        Ok(())
    }
}

type Point = (f64, f64);

/// Marching-squares polylines of one level set, chained into maximal paths
/// (closed loops where the level set closes).
pub fn march(grid: &ScalarGrid, level: f64) -> Result<Vec<Vec<Point>>, ContourError> {
    grid.validate()?;
    let n = grid.resolution;
    let mut segments: Vec<(Point, Point)> = Vec::new();

    // interpolate along an edge, always from the lexicographically smaller
    // grid index, so both adjacent cells produce bit-identical points
    let interp = |ax: usize, ay: usize, bx: usize, by: usize| -> Point {
        let (ax, ay, bx, by) = if (ax, ay) <= (bx, by) {
            (ax, ay, bx, by)
        } else {
            (bx, by, ax, ay)
        };
        let va = grid.value(ax, ay);
        let vb = grid.value(bx, by);
        let t = if vb == va { 0.5 } else { (level - va) / (vb - va) };
        let pa = (grid.coordinate(0, ax), grid.coordinate(1, ay));
        let pb = (grid.coordinate(0, bx), grid.coordinate(1, by));
        (pa.0 + t * (pb.0 - pa.0), pa.1 + t * (pb.1 - pa.1))
    };

    for ix in 0..n - 1 {
        for iy in 0..n - 1 {
            let corners = [
                (ix, iy),
                (ix + 1, iy),
                (ix + 1, iy + 1),
                (ix, iy + 1),
            ];
            // classify nodes exactly on the level as "above" so that a
            // contour through a grid node is seen consistently by all four
            // neighboring cells
            let above: Vec<bool> = corners
                .iter()
                .map(|&(cx, cy)| grid.value(cx, cy) >= level)
                .collect();
            let code = above
                .iter()
                .enumerate()
                .fold(0usize, |acc, (bit, &high)| acc | ((high as usize) << bit));
            if code == 0 || code == 15 {
                continue;
            }
            // edge k joins corner k and corner (k + 1) % 4
            let edge = |k: usize| {
                let (ax, ay) = corners[k];
                let (bx, by) = corners[(k + 1) % 4];
                interp(ax, ay, bx, by)
            };
            let mut push = |a: usize, b: usize| {
                let (p, q) = (edge(a), edge(b));
                if quantize(p) != quantize(q) {
                    segments.push((p, q));
                }
            };
            match code {
                1 | 14 => push(3, 0),
                2 | 13 => push(0, 1),
                4 | 11 => push(1, 2),
                8 | 7 => push(2, 3),
                3 | 12 => push(3, 1),
                6 | 9 => push(0, 2),
                5 | 10 => {
                    // saddle: split by the cell-center value
                    let center = corners
                        .iter()
                        .map(|&(cx, cy)| grid.value(cx, cy))
                        .sum::<f64>()
                        / 4.0;
                    let joined = (center >= level) == (code == 5);
                    if joined {
                        push(3, 0);
                        push(1, 2);
                    } else {
                        push(0, 1);
                        push(2, 3);
                    }
                }
                _ => unreachable!(),
            }
        }
    }
    Ok(chain_segments(segments))
}

fn quantize(p: Point) -> (i64, i64) {
    ((p.0 * 1e7).round() as i64, (p.1 * 1e7).round() as i64)
}

fn chain_segments(segments: Vec<(Point, Point)>) -> Vec<Vec<Point>> {
    let mut by_endpoint: BTreeMap<(i64, i64), Vec<usize>> = BTreeMap::new();
    for (i, (a, b)) in segments.iter().enumerate() {
        by_endpoint.entry(quantize(*a)).or_default().push(i);
        by_endpoint.entry(quantize(*b)).or_default().push(i);
    }
    let mut used = vec![false; segments.len()];
    let mut paths = Vec::new();
    for start in 0..segments.len() {
        if used[start] {
            continue;
        }
        used[start] = true;
        let (a, b) = segments[start];
        let mut path = vec![a, b];
        // extend forward from the tail, then backward from the head
        for forward in [true, false] {
            loop {
                let tip = if forward {
                    *path.last().expect("nonempty")
                } else {
                    path[0]
                };
                let Some(candidates) = by_endpoint.get(&quantize(tip)) else {
                    break;
                };
                let next = candidates.iter().copied().find(|&i| !used[i]);
                let Some(i) = next else { break };
                used[i] = true;
                let (p, q) = segments[i];
                let extension = if quantize(p) == quantize(tip) { q } else { p };
                if forward {
                    path.push(extension);
                } else {
                    path.insert(0, extension);
                }
            }
        }
        paths.push(path);
    }
    paths
}

/// Renders contour polylines at the given levels over a shading layer that
/// marks cells with positive values.
pub fn render_contours(grid: &ScalarGrid, levels: &[f64]) -> Result<String, ContourError> {
    grid.validate()?;
    let n = grid.resolution;
    let (xlo, xhi) = grid.bounds[0];
    let (ylo, yhi) = grid.bounds[1];
    let width = xhi - xlo;
    let height = yhi - ylo;
    let stroke = 0.004 * width.max(height);

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{} {} {} {}">"#,
        fmt(xlo),
        fmt(-yhi),
        fmt(width),
        fmt(height)
    );
    // flip y so the positive axis points up
    let _ = writeln!(svg, r#"<g transform="scale(1,-1)">"#);

    // shading layer: horizontal runs of positive cells merged into rects
    let cell = |i: usize| grid.coordinate(0, i);
    let celly = |i: usize| grid.coordinate(1, i);
    for iy in 0..n - 1 {
        let mut run_start: Option<usize> = None;
        for ix in 0..=n - 1 {
            let positive = ix < n - 1 && {
                let center = (grid.value(ix, iy)
                    + grid.value(ix + 1, iy)
                    + grid.value(ix, iy + 1)
                    + grid.value(ix + 1, iy + 1))
                    / 4.0;
                center > 0.0
            };
            match (positive, run_start) {
                (true, None) => run_start = Some(ix),
                (false, Some(s)) => {
                    let _ = writeln!(
                        svg,
                        r##"<rect x="{}" y="{}" width="{}" height="{}" fill="#d0d0d0"/>"##,
                        fmt(cell(s)),
                        fmt(celly(iy)),
                        fmt(cell(ix) - cell(s)),
                        fmt(celly(iy + 1) - celly(iy))
                    );
                    run_start = None;
                }
                _ => {}
            }
        }
    }

    for &level in levels {
        for path in march(grid, level)? {
            let points: Vec<String> = path
                .iter()
                .map(|&(x, y)| format!("{},{}", fmt(x), fmt(y)))
                .collect();
            let _ = writeln!(
                svg,
                r#"<polyline points="{}" fill="none" stroke="black" stroke-width="{}"/>"#,
                points.join(" "),
                fmt(stroke)
            );
        }
    }
    let _ = writeln!(svg, "</g>");
    let _ = writeln!(svg, "</svg>");
    Ok(svg)
}

fn fmt(v: f64) -> String {
    // enough digits for sub-cell geometry at desk resolutions
    let s = format!("{v:.6}");
    // normalize negative zero for byte determinism
    if s == "-0.000000" {
        "0.000000".to_string()
    } else {
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn is_closed(path: &[Point]) -> bool {
        path.len() > 2 && quantize(path[0]) == quantize(*path.last().expect("nonempty"))
    }

    /// Winding number of a closed path around a point (0 means outside).
    fn winding_number(path: &[Point], around: Point) -> i32 {
        let mut total = 0.0;
        for pair in path.windows(2) {
            let a = (pair[0].0 - around.0, pair[0].1 - around.1);
            let b = (pair[1].0 - around.0, pair[1].1 - around.1);
            total += (a.0 * b.1 - a.1 * b.0).atan2(a.0 * b.0 + a.1 * b.1);
        }
        (total / (2.0 * std::f64::consts::PI)).round() as i32
    }

    fn grid_from(f: impl Fn(f64, f64) -> f64, resolution: usize) -> ScalarGrid {
        let bounds = [(-1.0, 1.0), (-1.0, 1.0)];
        let coord = |i: usize| -1.0 + 2.0 * (i as f64) / ((resolution - 1) as f64);
        let mut values = Vec::with_capacity(resolution * resolution);
        for ix in 0..resolution {
            for iy in 0..resolution {
                values.push(f(coord(ix), coord(iy)));
            }
        }
        ScalarGrid {
            bounds,
            resolution,
            values,
        }
    }

    #[test]
    fn constant_grid_has_no_contours() {
        let grid = grid_from(|_, _| 3.0, 11);
        assert!(march(&grid, 0.0).unwrap().is_empty());
        let svg = render_contours(&grid, &[0.0]).unwrap();
        assert!(!svg.contains("polyline"));
    }

    #[test]
    fn vertical_line_for_plane_function() {
        let grid = grid_from(|x, _| x, 11);
        let paths = march(&grid, 0.0).unwrap();
        assert_eq!(paths.len(), 1);
        let cell_width = 2.0 / 10.0;
        for &(x, _) in &paths[0] {
            assert!(x.abs() < cell_width);
        }
        // spans the whole window vertically
        let ys: Vec<f64> = paths[0].iter().map(|p| p.1).collect();
        let (min, max) = ys
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| {
                (lo.min(v), hi.max(v))
            });
        assert!(min <= -0.99 && max >= 0.99);
    }

    #[test]
    fn circle_level_set_closes_around_origin() {
        let grid = grid_from(|x, y| x * x + y * y, 41);
        let paths = march(&grid, 0.25).unwrap();
        assert_eq!(paths.len(), 1);
        assert!(is_closed(&paths[0]));
        assert_eq!(winding_number(&paths[0], (0.0, 0.0)).abs(), 1);
    }

    #[test]
    fn degenerate_grid_rejected() {
        let grid = ScalarGrid {
            bounds: [(-1.0, 1.0), (-1.0, 1.0)],
            resolution: 1,
            values: vec![0.0],
        };
        assert!(march(&grid, 0.0).is_err());
    }

    #[test]
    fn svg_bytes_are_deterministic() {
        let grid = grid_from(|x, y| x * x - y, 21);
        let a = render_contours(&grid, &[0.0, 0.3]).unwrap();
        let b = render_contours(&grid, &[0.0, 0.3]).unwrap();
        assert_eq!(a, b);
        assert!(a.contains("rect"));
    }

    #[test]
    fn gauge_shifted_potential_levels_close_around_origin() {
        // positive-definite near 0: closed level curves at small levels
        let v2 = hhd_lyap::Polynomial::parse(
            "1/2*x^2 + 1/2*y^2 - 29/24*x^4 - 11/96*y^4 + 0.5*x^4 - 3*x^2*y^2 + 0.5*y^4",
            &["x", "y"],
        )
        .unwrap();
        let compiled = v2.compile();
        let grid = grid_from(|x, y| compiled.evaluate(&[x, y]), 161);
        // the potential's ridge along the x axis tops out at
        // max(x^2/2 - 17/24 x^4) = 3/34 ~ 0.088, so level sets close around
        // the origin below that and open up beyond it
        for level in [0.02, 0.05] {
            let paths = march(&grid, level).unwrap();
            let around_origin: Vec<_> = paths
                .iter()
                .filter(|p| is_closed(p) && winding_number(p, (0.0, 0.0)).abs() == 1)
                .collect();
            assert!(
                !around_origin.is_empty(),
                "no closed curve around the origin at level {level}"
            );
        }
        assert!(!march(&grid, 0.09).unwrap().is_empty());
    }
}
