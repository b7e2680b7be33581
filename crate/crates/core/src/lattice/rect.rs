use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The rectangle `R_ij^kl = {(p, q) : i ≤ p < j, k ≤ q < l}` of corner-sum
/// positions. Its four corners `(i,k), (i,l), (j,k), (j,l)` are the matrix
/// entries that change along the corresponding edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Rect {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub l: usize,
}

impl Rect {
    pub fn new(i: usize, j: usize, k: usize, l: usize) -> Result<Rect> {
        if i == 0 || k == 0 || i >= j || k >= l {
            return Err(Error::Parse(format!("rectangle needs 1 ≤ i < j and 1 ≤ k < l, got ({i},{j},{k},{l})")));
        }
        Ok(Rect { i, j, k, l })
    }

    /// The 1×1 rectangle at `(i, k)`.
    pub fn point(i: usize, k: usize) -> Rect {
        Rect { i, j: i + 1, k, l: k + 1 }
    }

    pub fn area(&self) -> usize {
        (self.j - self.i) * (self.l - self.k)
    }

    pub fn is_point(&self) -> bool {
        self.area() == 1
    }

    pub fn contains(&self, p: usize, q: usize) -> bool {
        self.i <= p && p < self.j && self.k <= q && q < self.l
    }

    /// Corners in the order `(i,k), (i,l), (j,k), (j,l)`.
    pub fn corners(&self) -> [(usize, usize); 4] {
        [(self.i, self.k), (self.i, self.l), (self.j, self.k), (self.j, self.l)]
    }

    pub(crate) fn fits(&self, n: usize) -> bool {
        self.j <= n && self.l <= n
    }

    /// Every rectangle of an `n × n` matrix in lexicographic `(i, j, k, l)` order.
    pub fn all(n: usize) -> impl Iterator<Item = Rect> {
        (1..=n).flat_map(move |i| {
            (i + 1..=n).flat_map(move |j| (1..=n).flat_map(move |k| (k + 1..=n).map(move |l| Rect { i, j, k, l })))
        })
    }
}

impl fmt::Display for Rect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "R({},{};{},{})", self.i, self.j, self.k, self.l)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn membership_and_area() {
        let r = Rect::new(1, 3, 1, 4).unwrap();
        assert_eq!(r.area(), 6);
        assert!(r.contains(1, 1) && r.contains(2, 3));
        assert!(!r.contains(3, 1) && !r.contains(1, 4));
        assert!(Rect::new(2, 2, 1, 2).is_err());
        assert!(Rect::point(3, 2).is_point());
    }

    #[test]
    fn enumerates_all_rectangles() {
        // C(n,2)^2 rectangles.
        assert_eq!(Rect::all(4).count(), 36);
        assert_eq!(Rect::all(1).count(), 0);
    }
}
