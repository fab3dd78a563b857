//! Dense exact linear algebra over a cyclotomic field: row reduction, rank,
//! kernels, and full-column-rank solves. Small matrices only; everything is
//! Gauss-Jordan with exact division.

use crate::exactnum::Cyclotomic;

/// Reduce `rows` to reduced row echelon form in place.
/// Returns the pivot column of each nonzero row, in order.
pub fn rref(rows: &mut Vec<Vec<Cyclotomic>>) -> Vec<usize> {
    if rows.is_empty() {
        return Vec::new();
    }
    let ncols = rows[0].len();
    let mut pivots = Vec::new();
    let mut r = 0usize;
    for col in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][col].inverse().expect("pivot is nonzero");
        for c in col..ncols {
            rows[r][c] = &rows[r][c] * &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][col].is_zero() {
                let f = rows[i][col].clone();
                for c in col..ncols {
                    let t = &f * &rows[r][c];
                    rows[i][c] = &rows[i][c] - &t;
                }
            }
        }
        pivots.push(col);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

/// Rank of the row span.
pub fn rank(rows: &[Vec<Cyclotomic>]) -> usize {
    let mut copy = rows.to_vec();
    rref(&mut copy).len()
}

/// Basis of the kernel `{x : rows * x = 0}`.
pub fn kernel(rows: &[Vec<Cyclotomic>], ncols: usize, order: u32) -> Vec<Vec<Cyclotomic>> {
    let mut copy = rows.to_vec();
    let pivots = rref(&mut copy);
    let mut basis = Vec::new();
    let pivot_set: Vec<bool> = {
        let mut v = vec![false; ncols];
        for &p in &pivots {
            v[p] = true;
        }
        v
    };
    for free in 0..ncols {
        if pivot_set[free] {
            continue;
        }
        let mut vec = vec![Cyclotomic::zero(order); ncols];
        vec[free] = Cyclotomic::one(order);
        for (row, &p) in copy.iter().zip(pivots.iter()) {
            vec[p] = -&row[free];
        }
        basis.push(vec);
    }
    basis
}

/// Outcome of an exact least-norm-free linear solve.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveOutcome {
    /// Unique solution (full column rank, consistent system).
    Unique(Vec<Cyclotomic>),
    /// Column rank deficit: more than one solution would fit.
    Underdetermined,
    /// No solution fits the right-hand side.
    Inconsistent,
}

/// Solve `A x = b` exactly, demanding full column rank for uniqueness.
pub fn solve_exact(a: &[Vec<Cyclotomic>], b: &[Cyclotomic], order: u32) -> SolveOutcome {
    assert_eq!(a.len(), b.len());
    let ncols = a.first().map_or(0, |r| r.len());
    let mut aug: Vec<Vec<Cyclotomic>> = a
        .iter()
        .zip(b.iter())
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.contains(&ncols) {
        return SolveOutcome::Inconsistent;
    }
    if pivots.len() < ncols {
        return SolveOutcome::Underdetermined;
    }
    let mut x = vec![Cyclotomic::zero(order); ncols];
    for (row, &p) in aug.iter().zip(pivots.iter()) {
        x[p] = row[ncols].clone();
    }
    SolveOutcome::Unique(x)
}
