//! ASM (Bruhat) order, coverings, and the bigrassmannian statistic.

use crate::asm::{Asm, Permutation};
use crate::enumerate::enumerate_permutations;
use crate::error::{Error, Result};

use super::essential::{essential_points, is_essential, shift};
use super::Rect;

fn same_size(a: &Asm, b: &Asm) -> Result<()> {
    if a.n() != b.n() {
        return Err(Error::SizeMismatch { left: a.n(), right: b.n() });
    }
    Ok(())
}

/// `a ≤ b` iff `Ã(i,j) ≥ B̃(i,j)` for all `i, j` (note the reversal).
pub fn asm_leq(a: &Asm, b: &Asm) -> Result<bool> {
    same_size(a, b)?;
    let (ca, cb) = (a.corner_sum(), b.corner_sum());
    Ok(ca.entries().iter().zip(cb.entries()).all(|(x, y)| x >= y))
}

/// `β(a) = Σ min(i,j) - Σ Ã(i,j)`.
pub fn beta(a: &Asm) -> u32 {
    beta_corner_sum(a)
}

pub fn beta_corner_sum(a: &Asm) -> u32 {
    let n = a.n() as i64;
    // Σ_{i,j ≤ n} min(i,j) = n(n+1)(2n+1)/6
    let base = n * (n + 1) * (2 * n + 1) / 6;
    (base - a.corner_sum().sum()) as u32
}

/// `2β(a) = Σ (i-j)^2 a_ij`, computed from the entries alone.
pub fn beta_twice_entry_formula(a: &Asm) -> i64 {
    let n = a.n();
    let mut s = 0i64;
    for i in 1..=n {
        for j in 1..=n {
            let d = i as i64 - j as i64;
            s += d * d * i64::from(a.get(i, j));
        }
    }
    s
}

/// `β(a) = Σ (i-j)^2/2 · a_ij`.
pub fn beta_entry_formula(a: &Asm) -> u32 {
    let twice = beta_twice_entry_formula(a);
    assert!(twice >= 0 && twice % 2 == 0, "2β must be a nonnegative even integer, got {twice}");
    (twice / 2) as u32
}

/// `β(a)` as the number of bigrassmannian permutations below `a`.
pub fn beta_bigrassmannian_count(a: &Asm) -> Result<u32> {
    let below = bigrassmannians(a.n())?
        .into_iter()
        .filter(|w| asm_leq(&w.to_asm(), a).expect("same size"))
        .count();
    Ok(below as u32)
}

/// A permutation with exactly one descent in both `w` and `w⁻¹`.
pub fn is_bigrassmannian(w: &Permutation) -> bool {
    w.descents().len() == 1 && w.inverse().descents().len() == 1
}

pub fn bigrassmannians(n: usize) -> Result<Vec<Permutation>> {
    Ok(enumerate_permutations(n)?.into_iter().filter(is_bigrassmannian).collect())
}

/// Fulton's essential set
/// `{(i,j) ∈ [n-1]^2 : i < w⁻¹(j), j < w(i), w(i+1) ≤ j, w⁻¹(j+1) ≤ i}`,
/// evaluated from the permutation alone.
pub fn fulton_essential_set(w: &Permutation) -> Vec<(usize, usize)> {
    let inv = w.inverse();
    let n = w.n();
    let mut out = Vec::new();
    for i in 1..n {
        for j in 1..n {
            if i < inv.at(j) && j < w.at(i) && w.at(i + 1) <= j && inv.at(j + 1) <= i {
                out.push((i, j));
            }
        }
    }
    out
}

/// Elements covered by `b`, one per essential point, paired with that point.
pub fn covered_by(b: &Asm) -> Vec<(Asm, (usize, usize))> {
    let c = b.corner_sum();
    essential_points(b)
        .into_iter()
        .map(|(i, k)| (shift(&c, &Rect::point(i, k), 1).to_asm(), (i, k)))
        .collect()
}

/// A saturated chain `a = A_0 ⋖ A_1 ⋖ ⋯ ⋖ A_k = b`.
///
/// Built downward from `b`: each step drops along the lexicographically
/// smallest essential point of the current element whose lower cover is
/// still above `a`.
pub fn covering_chain(a: &Asm, b: &Asm) -> Result<Vec<Asm>> {
    if !asm_leq(a, b)? {
        return Err(Error::Incomparable);
    }
    let target = a.corner_sum();
    let mut current = b.corner_sum();
    let mut chain = vec![b.clone()];
    while current != target {
        let n = a.n();
        let step = (1..n)
            .flat_map(|i| (1..n).map(move |k| Rect::point(i, k)))
            .filter(|r| is_essential(&current, r))
            .map(|r| shift(&current, &r, 1))
            .find(|lower| lower.entries().iter().zip(target.entries()).all(|(x, y)| x <= y))
            .expect("an interval of a graded lattice has a lower cover of its top");
        chain.push(step.to_asm());
        current = step;
    }
    chain.reverse();
    Ok(chain)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::asm::validate_asm;
    use crate::enumerate::enumerate_asms;

    fn perm(s: &str) -> Asm {
        s.parse::<Permutation>().unwrap().to_asm()
    }

    fn center() -> Asm {
        validate_asm(&[vec![0, 1, 0], vec![1, -1, 1], vec![0, 1, 0]]).unwrap()
    }

    #[test]
    fn beta_examples() {
        assert_eq!(beta(&perm("4312")), 9);
        assert_eq!(beta_entry_formula(&perm("4312")), 9);
        assert_eq!(beta(&Asm::identity(4)), 0);
        assert_eq!(beta(&center()), 2);
        assert_eq!(beta_entry_formula(&center()), 2);
        assert_eq!(beta_bigrassmannian_count(&center()).unwrap(), 2);
    }

    #[test]
    fn identity_is_below_everything() {
        for a in enumerate_asms(4).unwrap() {
            assert!(asm_leq(&Asm::identity(4), &a).unwrap());
        }
        assert!(asm_leq(&Asm::identity(3), &Asm::identity(4)).is_err());
    }

    #[test]
    fn height_one_siblings_are_incomparable() {
        let (u, v) = (perm("132"), perm("213"));
        assert!(!asm_leq(&u, &v).unwrap() && !asm_leq(&v, &u).unwrap());
        assert_eq!(covering_chain(&u, &v), Err(Error::Incomparable));
    }

    #[test]
    fn bigrassmannian_detection() {
        assert!(is_bigrassmannian(&"1342".parse().unwrap()));
        assert!(!is_bigrassmannian(&Permutation::identity(4)));
        assert!(!is_bigrassmannian(&"4321".parse().unwrap()));
        assert_eq!(bigrassmannians(4).unwrap().len(), 10);
    }

    #[test]
    fn fulton_set_examples() {
        assert_eq!(fulton_essential_set(&"1342".parse().unwrap()), vec![(3, 2)]);
        assert!(fulton_essential_set(&Permutation::identity(5)).is_empty());
    }

    #[test]
    fn chains() {
        let e = Asm::identity(3);
        let chain = covering_chain(&e, &center()).unwrap();
        assert_eq!(chain.len(), 3);
        assert_eq!(chain.first(), Some(&e));
        assert_eq!(chain.last(), Some(&center()));
        assert_eq!(covering_chain(&center(), &center()).unwrap(), vec![center()]);
        let top = covering_chain(&e, &perm("321")).unwrap();
        let betas: Vec<u32> = top.iter().map(beta).collect();
        assert_eq!(betas, vec![0, 1, 2, 3, 4]);
    }

    #[test]
    fn covers_of_center() {
        let covers: Vec<Asm> = covered_by(&center()).into_iter().map(|(a, _)| a).collect();
        assert_eq!(covers.len(), 2);
        assert!(covers.contains(&perm("132")) && covers.contains(&perm("213")));
    }
}
