//! Fraction-free (Bareiss) elimination over `Q(i)`.

use alloc::vec::Vec;

use crate::rational::GaussianRational;

/// Dense row-major matrix.
pub type Matrix = Vec<Vec<GaussianRational>>;

/// Runs Bareiss elimination in place and returns the rank together with the
/// sign of the row permutation and the last pivot.
fn bareiss(m: &mut Matrix, cols: usize) -> (usize, bool, GaussianRational) {
    let rows = m.len();
    let mut prev = GaussianRational::one();
    let mut rank = 0;
    let mut swapped = false;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        if p != rank {
            m.swap(p, rank);
            swapped = !swapped;
        }
        let pivot = m[rank][col].clone();
        for r in rank + 1..rows {
            let factor = m[r][col].clone();
            for c in col..cols {
                let v = &(&(&pivot * &m[r][c]) - &(&factor * &m[rank][c])) / &prev;
                m[r][c] = v;
            }
        }
        prev = pivot;
        rank += 1;
    }
    (rank, swapped, prev)
}

pub fn rank(m: &Matrix) -> usize {
    if m.is_empty() {
        return 0;
    }
    let cols = m[0].len();
    let mut work = m.clone();
    bareiss(&mut work, cols).0
}

/// Exact determinant of a square matrix (1 for the empty matrix).
pub fn determinant(m: &Matrix) -> GaussianRational {
    let n = m.len();
    if n == 0 {
        return GaussianRational::one();
    }
    assert!(m.iter().all(|r| r.len() == n), "determinant of a non-square matrix");
    let mut work = m.clone();
    let (rank, swapped, last) = bareiss(&mut work, n);
    if rank < n {
        return GaussianRational::zero();
    }
    if swapped {
        -last
    } else {
        last
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn q(n: i64) -> GaussianRational {
        GaussianRational::from_integer(n)
    }

    #[test]
    fn determinant_matches_cofactor_expansion() {
        let m = vec![vec![q(2), q(-1), q(0)], vec![q(1), q(3), q(4)], vec![q(0), q(5), q(-2)]];
        // 2*(3*-2 - 4*5) + 1*(1*-2 - 4*0) = -52 - 2
        assert_eq!(determinant(&m), q(-54));
        let swapped = vec![m[1].clone(), m[0].clone(), m[2].clone()];
        assert_eq!(determinant(&swapped), q(54));
    }

    #[test]
    fn rank_of_singular_matrix() {
        let m = vec![vec![q(1), q(2)], vec![q(2), q(4)], vec![q(0), q(0)]];
        assert_eq!(rank(&m), 1);
        assert_eq!(determinant(&vec![vec![q(1), q(2)], vec![q(2), q(4)]]), q(0));
    }

    #[test]
    fn complex_entries() {
        let i = GaussianRational::i();
        let m = vec![vec![i.clone(), q(1)], vec![q(1), i.clone()]];
        // i*i - 1 = -2
        assert_eq!(determinant(&m), q(-2));
    }
}
