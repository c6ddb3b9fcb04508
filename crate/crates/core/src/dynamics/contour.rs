//! Zero-level contours of a scalar field on a rectangular grid.
//!
//! Marching squares locates sign changes along grid edges, each crossing is
//! refined by bisection on the field itself, and segments sharing an edge
//! are chained into polylines.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

/// A chained contour; `closed` when its last point joins the first.
#[derive(Clone, Debug, PartialEq)]
pub struct Polyline {
    pub points: Vec<(f64, f64)>,
    pub closed: bool,
}

/// Axis-aligned sampling grid, `nx × ny` nodes including both ends.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    pub x_min: f64,
    pub x_max: f64,
    pub y_min: f64,
    pub y_max: f64,
    pub nx: usize,
    pub ny: usize,
}

impl Grid {
    pub fn square(half_width: f64, n: usize) -> Self {
        Grid { x_min: -half_width, x_max: half_width, y_min: -half_width, y_max: half_width, nx: n, ny: n }
    }

    pub fn x(&self, i: usize) -> f64 {
        if self.nx == 1 {
            return self.x_min;
        }
        self.x_min + (self.x_max - self.x_min) * i as f64 / (self.nx - 1) as f64
    }

    pub fn y(&self, j: usize) -> f64 {
        if self.ny == 1 {
            return self.y_min;
        }
        self.y_min + (self.y_max - self.y_min) * j as f64 / (self.ny - 1) as f64
    }

    pub fn dx(&self) -> f64 {
        (self.x_max - self.x_min) / (self.nx - 1) as f64
    }

    pub fn dy(&self) -> f64 {
        (self.y_max - self.y_min) / (self.ny - 1) as f64
    }

    /// Nodes in row-major order: `x` fastest.
    pub fn nodes(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.ny).flat_map(move |j| (0..self.nx).map(move |i| (i, j)))
    }
}

const BISECTION_STEPS: usize = 48;

fn bisect<F: Fn(f64, f64) -> f64>(f: &F, p: (f64, f64), q: (f64, f64), fp: f64) -> (f64, f64) {
    let (mut lo, mut hi) = (0.0, 1.0);
    let at = |s: f64| (p.0 + s * (q.0 - p.0), p.1 + s * (q.1 - p.1));
    for _ in 0..BISECTION_STEPS {
        let mid = 0.5 * (lo + hi);
        let (x, y) = at(mid);
        let v = f(x, y);
        if (v < 0.0) == (fp < 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    at(0.5 * (lo + hi))
}

/// Zero contours of `field`, given its precomputed grid `values` (row-major).
pub fn zero_contours<F>(grid: &Grid, values: &[f64], field: F) -> Vec<Polyline>
where
    F: Fn(f64, f64) -> f64,
{
    let nx = grid.nx;
    let val = |i: usize, j: usize| values[j * nx + i];
    let negative = |i: usize, j: usize| val(i, j) < 0.0;

    // Edge ids: horizontal (i,j)-(i+1,j) → 2·node, vertical (i,j)-(i,j+1) → 2·node + 1.
    let h_edge = |i: usize, j: usize| 2 * (j * nx + i);
    let v_edge = |i: usize, j: usize| 2 * (j * nx + i) + 1;

    let mut crossing: HashMap<usize, (f64, f64)> = HashMap::new();
    let mut crossing_at = |id: usize, a: (usize, usize), b: (usize, usize)| {
        *crossing.entry(id).or_insert_with(|| {
            let p = (grid.x(a.0), grid.y(a.1));
            let q = (grid.x(b.0), grid.y(b.1));
            bisect(&field, p, q, val(a.0, a.1))
        })
    };

    let mut adjacency: HashMap<usize, Vec<usize>> = HashMap::new();
    let mut link = |e1: usize, e2: usize| {
        adjacency.entry(e1).or_default().push(e2);
        adjacency.entry(e2).or_default().push(e1);
    };

    for j in 0..grid.ny.saturating_sub(1) {
        for i in 0..nx.saturating_sub(1) {
            // corners counter-clockwise: (i,j) (i+1,j) (i+1,j+1) (i,j+1)
            let c = [negative(i, j), negative(i + 1, j), negative(i + 1, j + 1), negative(i, j + 1)];
            let bottom = h_edge(i, j);
            let right = v_edge(i + 1, j);
            let top = h_edge(i, j + 1);
            let left = v_edge(i, j);
            let edges = [
                (bottom, (i, j), (i + 1, j), c[0] != c[1]),
                (right, (i + 1, j), (i + 1, j + 1), c[1] != c[2]),
                (top, (i, j + 1), (i + 1, j + 1), c[3] != c[2]),
                (left, (i, j), (i, j + 1), c[0] != c[3]),
            ];
            let cut: Vec<usize> = edges.iter().filter(|e| e.3).map(|e| e.0).collect();
            for e in edges.iter().filter(|e| e.3) {
                crossing_at(e.0, e.1, e.2);
            }
            match cut.len() {
                2 => link(cut[0], cut[1]),
                4 => {
                    // saddle: the cell centre decides which corners connect
                    let cx = 0.5 * (grid.x(i) + grid.x(i + 1));
                    let cy = 0.5 * (grid.y(j) + grid.y(j + 1));
                    let centre_negative = field(cx, cy) < 0.0;
                    if centre_negative == c[0] {
                        // corner 0 joins the centre: cut off corners 1 and 3
                        link(bottom, right);
                        link(top, left);
                    } else {
                        link(bottom, left);
                        link(right, top);
                    }
                }
                _ => {}
            }
        }
    }

    let mut ids: Vec<usize> = adjacency.keys().copied().collect();
    ids.sort_unstable();
    let mut visited: HashMap<usize, bool> = HashMap::new();
    let mut lines = Vec::new();

    // open chains start at degree-1 ends, then the remaining pieces are closed loops
    let mut starts: Vec<usize> = ids.iter().copied().filter(|id| adjacency[id].len() == 1).collect();
    starts.extend(ids.iter().copied().filter(|id| adjacency[id].len() != 1));
    for start in starts {
        if visited.contains_key(&start) {
            continue;
        }
        let mut chain = vec![start];
        visited.insert(start, true);
        let mut current = start;
        let closed = loop {
            let next = adjacency[&current].iter().copied().find(|n| !visited.contains_key(n));
            match next {
                Some(n) => {
                    visited.insert(n, true);
                    chain.push(n);
                    current = n;
                }
                None => break chain.len() > 2 && adjacency[&current].contains(&start),
            }
        };
        lines.push(Polyline { points: chain.iter().map(|id| crossing[id]).collect(), closed });
    }
    lines
}
