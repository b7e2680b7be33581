//! Essential and dual essential rectangles, and the rectangular operator.

use crate::asm::{Asm, CornerSum};

use super::Rect;

/// True iff `r` satisfies the essential boundary conditions on `c`.
pub fn is_essential(c: &CornerSum, r: &Rect) -> bool {
    r.fits(c.n())
        && (r.i..r.j).all(|p| c.get(p, r.k) == c.get(p, r.k - 1) && c.get(p, r.l) == c.get(p, r.l - 1) + 1)
        && (r.k..r.l).all(|q| c.get(r.i, q) == c.get(r.i - 1, q) && c.get(r.j, q) == c.get(r.j - 1, q) + 1)
}

/// True iff `r` satisfies the dual essential boundary conditions on `c`.
pub fn is_dual_essential(c: &CornerSum, r: &Rect) -> bool {
    r.fits(c.n())
        && (r.i..r.j).all(|p| c.get(p, r.k) == c.get(p, r.k - 1) + 1 && c.get(p, r.l) == c.get(p, r.l - 1))
        && (r.k..r.l).all(|q| c.get(r.i, q) == c.get(r.i - 1, q) + 1 && c.get(r.j, q) == c.get(r.j - 1, q))
}

/// `E(A)`: rectangles whose operator moves `a` down (lowers β).
pub fn essential_rects(a: &Asm) -> Vec<Rect> {
    let c = a.corner_sum();
    Rect::all(a.n()).filter(|r| is_essential(&c, r)).collect()
}

/// `E*(A)`: rectangles whose operator moves `a` up (raises β).
pub fn dual_essential_rects(a: &Asm) -> Vec<Rect> {
    let c = a.corner_sum();
    Rect::all(a.n()).filter(|r| is_dual_essential(&c, r)).collect()
}

/// Essential points `(i, k)`: the 1×1 essential rectangles `R_{i,i+1}^{k,k+1}`,
/// in lexicographic order.
pub fn essential_points(a: &Asm) -> Vec<(usize, usize)> {
    let c = a.corner_sum();
    let n = a.n();
    let mut out = Vec::new();
    for i in 1..n {
        for k in 1..n {
            if is_essential(&c, &Rect::point(i, k)) {
                out.push((i, k));
            }
        }
    }
    out
}

/// Adds (`sign = 1`) or subtracts (`sign = -1`) the indicator of `r`.
pub(crate) fn shift(c: &CornerSum, r: &Rect, sign: i32) -> CornerSum {
    let n = c.n();
    let mut out = c.clone();
    let e = out.entries_mut();
    for p in r.i..r.j {
        for q in r.k..r.l {
            e[(p - 1) * n + (q - 1)] += sign;
        }
    }
    out
}

/// The rectangular operator `r_ij^kl`.
///
/// On `E(a)` the corner sums gain the indicator of `r`, on `E*(a)` they lose
/// it, and any other rectangle leaves `a` unchanged.
pub fn apply_rect(a: &Asm, r: &Rect) -> Asm {
    let c = a.corner_sum();
    if is_essential(&c, r) {
        shift(&c, r, 1).to_asm()
    } else if is_dual_essential(&c, r) {
        shift(&c, r, -1).to_asm()
    } else {
        a.clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::asm::{validate_asm, Permutation};

    fn perm(s: &str) -> Asm {
        s.parse::<Permutation>().unwrap().to_asm()
    }

    #[test]
    fn rectangles_of_4312_and_1342() {
        let r = Rect::new(1, 3, 1, 4).unwrap();
        assert!(essential_rects(&perm("4312")).contains(&r));
        assert!(dual_essential_rects(&perm("1342")).contains(&r));
        assert!(!essential_rects(&perm("1342")).contains(&r));
        assert_eq!(apply_rect(&perm("4312"), &r), perm("1342"));
        assert_eq!(apply_rect(&perm("1342"), &r), perm("4312"));
    }

    #[test]
    fn identity_has_no_essential_rectangles() {
        for n in 1..=5 {
            assert!(essential_rects(&Asm::identity(n)).is_empty());
            assert!(essential_points(&Asm::identity(n)).is_empty());
        }
    }

    #[test]
    fn non_essential_rectangle_is_a_no_op() {
        let a = perm("2143");
        let r = Rect::new(1, 4, 1, 4).unwrap();
        assert!(!essential_rects(&a).contains(&r) && !dual_essential_rects(&a).contains(&r));
        assert_eq!(apply_rect(&a, &r), a);
    }

    #[test]
    fn essential_point_of_1342() {
        assert_eq!(essential_points(&perm("1342")), vec![(3, 2)]);
    }

    #[test]
    fn five_by_five_type_nine_move() {
        let b = validate_asm(&[
            vec![0, 1, 0, 0, 0],
            vec![0, 0, 1, 0, 0],
            vec![1, -1, 0, 0, 1],
            vec![0, 1, -1, 1, 0],
            vec![0, 0, 1, 0, 0],
        ])
        .unwrap();
        let a = validate_asm(&[
            vec![0, 1, 0, 0, 0],
            vec![0, 0, 1, 0, 0],
            vec![1, -1, 0, 0, 1],
            vec![0, 1, 0, 0, 0],
            vec![0, 0, 0, 1, 0],
        ])
        .unwrap();
        let r = Rect::point(4, 3);
        assert!(essential_rects(&b).contains(&r));
        assert_eq!(apply_rect(&b, &r), a);
        assert_eq!(apply_rect(&a, &r), b);
    }
}
