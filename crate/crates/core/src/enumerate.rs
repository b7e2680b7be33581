//! Exhaustive generation of `A_n` and `S_n`.

use itertools::Itertools;
use rayon::prelude::*;

use crate::asm::{Asm, CornerSum, Permutation};
use crate::error::{Limit, Result};

/// Default guard for [`enumerate_asms`]; `|A_7| = 218348`.
pub const MAX_ASM_N: usize = 7;
/// Default guard for [`enumerate_permutations`].
pub const MAX_PERM_N: usize = 9;

/// All ASMs of size `n` in canonical (lexicographic entry) order.
pub fn enumerate_asms(n: usize) -> Result<Vec<Asm>> {
    enumerate_asms_with(n, Limit::Default)
}

pub fn enumerate_asms_with(n: usize, limit: Limit) -> Result<Vec<Asm>> {
    if n == 0 {
        return Err(crate::Error::Empty);
    }
    limit.check("ASM enumeration", n, MAX_ASM_N)?;
    // The first corner-sum row is 0..0 1..1; branch on where the 1 starts.
    let mut out: Vec<Asm> = (1..=n)
        .into_par_iter()
        .flat_map_iter(|start| {
            let mut grid = vec![0i32; n * n];
            for j in start..=n {
                grid[j - 1] = 1;
            }
            let mut found = Vec::new();
            complete(n, &mut grid, 2, 1, &mut found);
            found
        })
        .collect();
    out.sort_unstable();
    Ok(out)
}

/// Depth-first completion of a corner sum matrix, cell by cell from row `i`,
/// column `j`, under the Robbins–Rumsey step rules.
fn complete(n: usize, grid: &mut [i32], i: usize, j: usize, out: &mut Vec<Asm>) {
    if i > n {
        out.push(CornerSum::from_raw(n, grid.to_vec()).to_asm());
        return;
    }
    let (next_i, next_j) = if j == n { (i + 1, 1) } else { (i, j + 1) };
    let left = if j == 1 { 0 } else { grid[(i - 1) * n + j - 2] };
    let up = grid[(i - 2) * n + j - 1];
    for v in [left, left + 1] {
        if v != up && v != up + 1 {
            continue;
        }
        // The row must still be able to climb to X(i, n) = i.
        if v + ((n - j) as i32) < i as i32 || v > i as i32 {
            continue;
        }
        if j == n && v != i as i32 {
            continue;
        }
        if i == n && v != j as i32 {
            continue;
        }
        grid[(i - 1) * n + j - 1] = v;
        complete(n, grid, next_i, next_j, out);
    }
}

/// All permutations of `1..=n` in lexicographic one-line order.
pub fn enumerate_permutations(n: usize) -> Result<Vec<Permutation>> {
    enumerate_permutations_with(n, Limit::Default)
}

pub fn enumerate_permutations_with(n: usize, limit: Limit) -> Result<Vec<Permutation>> {
    if n == 0 {
        return Err(crate::Error::Empty);
    }
    limit.check("permutation enumeration", n, MAX_PERM_N)?;
    Ok((1..=n)
        .permutations(n)
        .map(|images| Permutation::new(images).expect("itertools yields bijections"))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::asm::validate_asm;

    #[test]
    fn small_counts() {
        assert_eq!(enumerate_asms(1).unwrap(), vec![Asm::identity(1)]);
        assert_eq!(enumerate_asms(2).unwrap().len(), 2);
        assert_eq!(enumerate_asms(3).unwrap().len(), 7);
    }

    #[test]
    fn a3_matches_the_known_list() {
        let rows = |r: [[i64; 3]; 3]| validate_asm(&r.map(|x| x.to_vec())).unwrap();
        let mut expected = vec![
            rows([[0, 0, 1], [0, 1, 0], [1, 0, 0]]),
            rows([[0, 1, 0], [0, 0, 1], [1, 0, 0]]),
            rows([[0, 0, 1], [1, 0, 0], [0, 1, 0]]),
            rows([[0, 1, 0], [1, -1, 1], [0, 1, 0]]),
            rows([[1, 0, 0], [0, 0, 1], [0, 1, 0]]),
            rows([[0, 1, 0], [1, 0, 0], [0, 0, 1]]),
            rows([[1, 0, 0], [0, 1, 0], [0, 0, 1]]),
        ];
        expected.sort();
        assert_eq!(enumerate_asms(3).unwrap(), expected);
    }

    #[test]
    fn size_guard() {
        assert!(matches!(enumerate_asms(8), Err(crate::Error::SizeLimitExceeded { .. })));
        assert!(matches!(enumerate_permutations(10), Err(crate::Error::SizeLimitExceeded { .. })));
    }

    #[test]
    fn permutations_in_lex_order() {
        let s3: Vec<String> = enumerate_permutations(3).unwrap().iter().map(|p| p.to_string()).collect();
        assert_eq!(s3, ["123", "132", "213", "231", "312", "321"]);
        assert_eq!(enumerate_permutations(1).unwrap(), vec![Permutation::identity(1)]);
        assert_eq!(enumerate_permutations(4).unwrap().len(), 24);
    }
}
