// Copyright 2026 stirap Contributors
// SPDX-License-Identifier: Apache-2.0

//! Level-set extraction from a rectangular grid (marching squares) and
//! point-in-region queries on the result.
//!
//! Cells are scanned in a fixed order and crossing points are keyed by grid
//! edge, so repeated runs on the same grid produce identical polylines.

use std::collections::BTreeMap;

/// One extracted polyline at a fixed level. `closed` lines repeat their
/// first point at the end.
#[derive(Clone, Debug, PartialEq)]
pub struct ContourLine {
    pub level: f64,
    pub points: Vec<(f64, f64)>,
    pub closed: bool,
}

/// Grid edge identifiers; `H(i, j)` joins nodes (i, j)-(i+1, j) and
/// `V(i, j)` joins (i, j)-(i, j+1).
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum EdgeId {
    H(usize, usize),
    V(usize, usize),
}

/// Extract iso-lines of `values` (laid out `values[i * ys.len() + j]` for
/// x-index `i`, y-index `j`) at `level`. Lines that reach the grid boundary
/// stay open.
pub fn extract_contours(
    xs: &[f64],
    ys: &[f64],
    values: &[f64],
    level: f64,
) -> Vec<ContourLine> {
    assert_eq!(values.len(), xs.len() * ys.len(), "grid size mismatch");
    march(xs, ys, values, level)
}

/// Same as [`extract_contours`] but with the grid framed by a below-level
/// border first, so every polyline closes. Regions that touch the grid
/// boundary get clipped half a step outside it.
pub fn extract_closed_contours(
    xs: &[f64],
    ys: &[f64],
    values: &[f64],
    level: f64,
) -> Vec<ContourLine> {
    assert_eq!(values.len(), xs.len() * ys.len(), "grid size mismatch");
    let pad_x0 = if xs.len() > 1 { (xs[1] - xs[0]) / 2.0 } else { 1.0 };
    let pad_x1 = if xs.len() > 1 {
        (xs[xs.len() - 1] - xs[xs.len() - 2]) / 2.0
    } else {
        1.0
    };
    let pad_y0 = if ys.len() > 1 { (ys[1] - ys[0]) / 2.0 } else { 1.0 };
    let pad_y1 = if ys.len() > 1 {
        (ys[ys.len() - 1] - ys[ys.len() - 2]) / 2.0
    } else {
        1.0
    };
    let mut px = Vec::with_capacity(xs.len() + 2);
    px.push(xs[0] - pad_x0);
    px.extend_from_slice(xs);
    px.push(xs[xs.len() - 1] + pad_x1);
    let mut py = Vec::with_capacity(ys.len() + 2);
    py.push(ys[0] - pad_y0);
    py.extend_from_slice(ys);
    py.push(ys[ys.len() - 1] + pad_y1);

    let border = level - level.abs().max(1.0);
    let mut padded = vec![border; px.len() * py.len()];
    for i in 0..xs.len() {
        for j in 0..ys.len() {
            padded[(i + 1) * py.len() + (j + 1)] = values[i * ys.len() + j];
        }
    }
    march(&px, &py, &padded, level)
}

fn march(xs: &[f64], ys: &[f64], values: &[f64], level: f64) -> Vec<ContourLine> {
    let nx = xs.len();
    let ny = ys.len();
    let value = |i: usize, j: usize| values[i * ny + j];
    let inside = |i: usize, j: usize| value(i, j) > level;

    // Crossing position on an edge, linear in the two node values.
    let cross_point = |edge: EdgeId| -> (f64, f64) {
        match edge {
            EdgeId::H(i, j) => {
                let v0 = value(i, j);
                let v1 = value(i + 1, j);
                let t = (level - v0) / (v1 - v0);
                (xs[i] + t * (xs[i + 1] - xs[i]), ys[j])
            }
            EdgeId::V(i, j) => {
                let v0 = value(i, j);
                let v1 = value(i, j + 1);
                let t = (level - v0) / (v1 - v0);
                (xs[i], ys[j] + t * (ys[j + 1] - ys[j]))
            }
        }
    };

    let mut segments: Vec<(EdgeId, EdgeId)> = Vec::new();
    for i in 0..nx.saturating_sub(1) {
        for j in 0..ny.saturating_sub(1) {
            let b = EdgeId::H(i, j);
            let t = EdgeId::H(i, j + 1);
            let l = EdgeId::V(i, j);
            let r = EdgeId::V(i + 1, j);
            let mut case = 0u8;
            if inside(i, j) {
                case |= 1;
            }
            if inside(i + 1, j) {
                case |= 2;
            }
            if inside(i + 1, j + 1) {
                case |= 4;
            }
            if inside(i, j + 1) {
                case |= 8;
            }
            match case {
                0 | 15 => {}
                1 | 14 => segments.push((b, l)),
                2 | 13 => segments.push((b, r)),
                3 | 12 => segments.push((l, r)),
                4 | 11 => segments.push((r, t)),
                6 | 9 => segments.push((b, t)),
                7 | 8 => segments.push((l, t)),
                5 | 10 => {
                    // Saddle: disambiguate with the cell-center average.
                    let center = 0.25
                        * (value(i, j) + value(i + 1, j) + value(i, j + 1) + value(i + 1, j + 1));
                    let center_inside = center > level;
                    let pair_through = (case == 5) == center_inside;
                    if pair_through {
                        segments.push((b, r));
                        segments.push((t, l));
                    } else {
                        segments.push((b, l));
                        segments.push((r, t));
                    }
                }
                _ => unreachable!(),
            }
        }
    }

    // Chain segments into polylines: every crossed edge touches at most two
    // segments, so the adjacency graph is a union of simple paths and loops.
    let mut adjacency: BTreeMap<EdgeId, Vec<(usize, EdgeId)>> = BTreeMap::new();
    for (idx, (a, b)) in segments.iter().enumerate() {
        adjacency.entry(*a).or_default().push((idx, *b));
        adjacency.entry(*b).or_default().push((idx, *a));
    }

    let mut used = vec![false; segments.len()];
    let mut lines = Vec::new();
    // Open paths first (seeded at degree-1 edges), then the remaining loops.
    let endpoints: Vec<EdgeId> = adjacency
        .iter()
        .filter(|(_, n)| n.len() == 1)
        .map(|(e, _)| *e)
        .collect();
    let loop_seeds: Vec<EdgeId> = adjacency.keys().copied().collect();
    for seed in endpoints.into_iter().chain(loop_seeds) {
        let Some(first) = adjacency[&seed].iter().find(|(idx, _)| !used[*idx]) else {
            continue;
        };
        let (first_idx, mut current) = *first;
        used[first_idx] = true;
        let mut chain = vec![seed, current];
        while let Some(&(seg_idx, next)) =
            adjacency[&current].iter().find(|(idx, _)| !used[*idx])
        {
            used[seg_idx] = true;
            current = next;
            chain.push(current);
        }
        let closed = chain.len() > 2 && chain.first() == chain.last();
        let points = chain.iter().map(|e| cross_point(*e)).collect();
        lines.push(ContourLine {
            level,
            points,
            closed,
        });
    }
    lines
}

/// Even-odd membership of `point` in the union region bounded by the given
/// closed contour lines. Open lines are ignored.
pub fn region_encloses(lines: &[ContourLine], point: (f64, f64)) -> bool {
    let (px, py) = point;
    let mut inside = false;
    for line in lines.iter().filter(|l| l.closed) {
        for w in line.points.windows(2) {
            let (x1, y1) = w[0];
            let (x2, y2) = w[1];
            if (y1 > py) != (y2 > py) {
                let x_cross = x1 + (py - y1) * (x2 - x1) / (y2 - y1);
                if px < x_cross {
                    inside = !inside;
                }
            }
        }
    }
    inside
}
