//! Edges of the ASM graph and their 16 corner types.

use crate::asm::Asm;
use crate::error::{Error, Result};

use super::essential::{dual_essential_rects, is_dual_essential, shift};
use super::Rect;

/// Corner values `(x_ik, x_il, x_jk, x_jl)` of an edge `A → B`: the target
/// `B` first, then the source `A`, for each of the 16 edge types.
pub const EDGE_TYPES: [([i8; 4], [i8; 4]); 16] = [
    ([0, 1, 1, 0], [1, 0, 0, 1]),
    ([0, 0, 1, 0], [1, -1, 0, 1]),
    ([0, 1, 0, 0], [1, 0, -1, 1]),
    ([0, 0, 0, 0], [1, -1, -1, 1]),
    ([0, 1, 1, -1], [1, 0, 0, 0]),
    ([0, 0, 1, -1], [1, -1, 0, 0]),
    ([0, 1, 0, -1], [1, 0, -1, 0]),
    ([0, 0, 0, -1], [1, -1, -1, 0]),
    ([-1, 1, 1, 0], [0, 0, 0, 1]),
    ([-1, 0, 1, 0], [0, -1, 0, 1]),
    ([-1, 1, 0, 0], [0, 0, -1, 1]),
    ([-1, 0, 0, 0], [0, -1, -1, 1]),
    ([-1, 1, 1, -1], [0, 0, 0, 0]),
    ([-1, 0, 1, -1], [0, -1, 0, 0]),
    ([-1, 1, 0, -1], [0, 0, -1, 0]),
    ([-1, 0, 0, -1], [0, -1, -1, 0]),
];

/// The corner difference `a - b` shared by every edge.
pub const CORNER_DIFFERENCE: [i8; 4] = [1, -1, -1, 1];

/// Checks that every row of [`EDGE_TYPES`] has corner difference
/// [`CORNER_DIFFERENCE`] and that the 16 target patterns are distinct.
pub fn verify_edge_table() -> bool {
    let diffs_ok = EDGE_TYPES
        .iter()
        .all(|(b, a)| (0..4).all(|t| a[t] - b[t] == CORNER_DIFFERENCE[t]));
    let distinct = (0..16).all(|x| (x + 1..16).all(|y| EDGE_TYPES[x].0 != EDGE_TYPES[y].0));
    diffs_ok && distinct
}

/// A directed edge `source →_ij^kl target` of the ASM graph.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Edge {
    pub source: Asm,
    pub target: Asm,
    pub rect: Rect,
    pub edge_type: u8,
}

fn corner_values(a: &Asm, r: &Rect) -> [i8; 4] {
    r.corners().map(|(p, q)| a.get(p, q))
}

fn type_of_target_corners(b: [i8; 4]) -> Option<u8> {
    EDGE_TYPES.iter().position(|(tb, _)| *tb == b).map(|t| t as u8 + 1)
}

/// Determines the Table-1 type of `source → target` along `rect`.
///
/// The corner difference must be `(1, -1, -1, 1)` and every entry off the
/// four corners must agree; otherwise the pair is rejected.
pub fn classify_edge(source: &Asm, target: &Asm, rect: &Rect) -> Result<u8> {
    let n = source.n();
    if target.n() != n {
        return Err(Error::SizeMismatch { left: n, right: target.n() });
    }
    if !rect.fits(n) {
        return Err(Error::NotAnEdge(format!("{rect} does not fit in size {n}")));
    }
    let corners = rect.corners();
    for p in 1..=n {
        for q in 1..=n {
            if !corners.contains(&(p, q)) && source.get(p, q) != target.get(p, q) {
                return Err(Error::NotAnEdge(format!("entries differ off the corners at ({p},{q})")));
            }
        }
    }
    let a = corner_values(source, rect);
    let b = corner_values(target, rect);
    if (0..4).any(|t| a[t] - b[t] != CORNER_DIFFERENCE[t]) {
        return Err(Error::NotAnEdge(format!("corner difference {:?} is not (1,-1,-1,1)", [
            a[0] - b[0],
            a[1] - b[1],
            a[2] - b[2],
            a[3] - b[3]
        ])));
    }
    type_of_target_corners(b).ok_or_else(|| Error::NotAnEdge(format!("target corners {b:?} match no edge type")))
}

/// All edges leaving `a`, one per dual essential rectangle.
pub fn edges_from(a: &Asm) -> Vec<Edge> {
    let c = a.corner_sum();
    dual_essential_rects(a)
        .into_iter()
        .map(|rect| {
            let target = shift(&c, &rect, -1).to_asm();
            let edge_type = classify_edge(a, &target, &rect).expect("rectangular moves satisfy the corner rule");
            Edge { source: a.clone(), target, rect, edge_type }
        })
        .collect()
}

/// Builds the edge `source → target` if it exists.
pub fn edge_between(source: &Asm, target: &Asm) -> Result<Edge> {
    let rect = differing_rect(source, target)?;
    let edge_type = classify_edge(source, target, &rect)?;
    if !is_dual_essential(&source.corner_sum(), &rect) {
        return Err(Error::NotAnEdge(format!("{rect} is not dual essential for the source")));
    }
    Ok(Edge { source: source.clone(), target: target.clone(), rect, edge_type })
}

/// The rectangle whose corners are exactly the positions where two ASMs differ.
fn differing_rect(a: &Asm, b: &Asm) -> Result<Rect> {
    if a.n() != b.n() {
        return Err(Error::SizeMismatch { left: a.n(), right: b.n() });
    }
    let n = a.n();
    let diff: Vec<(usize, usize)> = (1..=n)
        .flat_map(|p| (1..=n).map(move |q| (p, q)))
        .filter(|&(p, q)| a.get(p, q) != b.get(p, q))
        .collect();
    if diff.len() != 4 {
        return Err(Error::NotAnEdge(format!("{} entries differ, expected 4", diff.len())));
    }
    let (i, k) = diff[0];
    let (j, l) = diff[3];
    let rect = Rect::new(i, j, k, l).map_err(|_| Error::NotAnEdge("differences do not span a rectangle".into()))?;
    if diff != rect.corners() {
        return Err(Error::NotAnEdge("differences are not the corners of a rectangle".into()));
    }
    Ok(rect)
}
