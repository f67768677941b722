//! Exact dense simplex for packing linear programs
//! `max c·x  s.t.  A x <= b, x >= 0` with `b >= 0`.
//!
//! The origin is feasible, so a single phase suffices. Pivoting follows
//! Bland's rule (lowest eligible index for both entering and leaving
//! variables), which guarantees termination and makes the optimum witness
//! deterministic.

use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LpSolution {
    pub value: Rational,
    pub x: Vec<Rational>,
}

/// Returns `None` if the objective is unbounded.
///
/// # Panics
/// If dimensions disagree or some `b_i < 0`.
pub fn maximize_packing(c: &[Rational], a: &[Vec<Rational>], b: &[Rational]) -> Option<LpSolution> {
    let n = c.len();
    let m = b.len();
    assert_eq!(a.len(), m, "one row per constraint");
    assert!(a.iter().all(|row| row.len() == n), "one column per variable");
    assert!(b.iter().all(|v| !v.is_negative()), "right-hand side must be nonnegative");

    // Columns 0..n are structural, n..n+m slack. Row i holds constraint i.
    let width = n + m;
    let mut t: Vec<Vec<Rational>> = (0..m)
        .map(|i| {
            let mut row = a[i].clone();
            row.extend((0..m).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            row
        })
        .collect();
    let mut rhs = b.to_vec();
    // Reduced profits: objective row as c_j - z_j.
    let mut profit: Vec<Rational> = c.iter().cloned().chain((0..m).map(|_| Rational::zero())).collect();
    let mut value = Rational::zero();
    let mut basis: Vec<usize> = (n..width).collect();

    while let Some(enter) = (0..width).find(|&j| profit[j].is_positive()) {
        let mut leave: Option<(usize, Rational)> = None;
        for i in 0..m {
            if !t[i][enter].is_positive() {
                continue;
            }
            let ratio = &rhs[i] / &t[i][enter];
            let better = match &leave {
                None => true,
                Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
            };
            if better {
                leave = Some((i, ratio));
            }
        }
        let (r, _) = leave?;

        let pivot = t[r][enter].clone();
        for v in t[r].iter_mut() {
            *v = &*v / &pivot;
        }
        rhs[r] = &rhs[r] / &pivot;
        let pivot_row = t[r].clone();
        let pivot_rhs = rhs[r].clone();
        for i in 0..m {
            if i == r || t[i][enter].is_zero() {
                continue;
            }
            let f = t[i][enter].clone();
            for j in 0..width {
                if !pivot_row[j].is_zero() {
                    t[i][j] -= &f * &pivot_row[j];
                }
            }
            rhs[i] -= &f * &pivot_rhs;
        }
        let f = profit[enter].clone();
        for j in 0..width {
            if !pivot_row[j].is_zero() {
                profit[j] -= &f * &pivot_row[j];
            }
        }
        value += &f * &pivot_rhs;
        basis[r] = enter;
    }

    let mut x = vec![Rational::zero(); n];
    for (i, &j) in basis.iter().enumerate() {
        if j < n {
            x[j] = rhs[i].clone();
        }
    }
    Some(LpSolution { value, x })
}
