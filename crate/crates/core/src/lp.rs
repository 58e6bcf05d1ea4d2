//! Exact rational feasibility for `A x = b, x >= 0`.
//!
//! Phase one of the simplex method on a dense tableau with Bland's rule, so
//! termination is guaranteed and every pivot is exact.

use num_traits::{One, Signed, Zero};

use crate::exact::Rational;

/// Outcome of [`feasible_point`].
#[derive(Debug, Clone, PartialEq)]
pub enum Feasibility {
    Feasible(Vec<Rational>),
    Infeasible,
}

impl Feasibility {
    pub fn point(self) -> Option<Vec<Rational>> {
        match self {
            Feasibility::Feasible(x) => Some(x),
            Feasibility::Infeasible => None,
        }
    }
}

/// Finds `x >= 0` with `a x = b`, where `a` has `cols` columns.
///
/// # Panics
///
/// If a row of `a` does not have `cols` entries or `b.len() != a.len()`.
pub fn feasible_point(a: &[Vec<Rational>], b: &[Rational], cols: usize) -> Feasibility {
    assert_eq!(a.len(), b.len(), "row count mismatch");
    let rows = a.len();
    if rows == 0 {
        return Feasibility::Feasible(vec![Rational::zero(); cols]);
    }
    // Columns: original variables, then one artificial per row, then rhs.
    let width = cols + rows + 1;
    let mut t: Vec<Vec<Rational>> = Vec::with_capacity(rows + 1);
    for (i, (row, bi)) in a.iter().zip(b).enumerate() {
        assert_eq!(row.len(), cols, "row {i} has wrong width");
        let flip = bi.is_negative();
        let mut r = vec![Rational::zero(); width];
        for (j, v) in row.iter().enumerate() {
            r[j] = if flip { -v.clone() } else { v.clone() };
        }
        r[cols + i] = Rational::one();
        r[width - 1] = if flip { -bi.clone() } else { bi.clone() };
        t.push(r);
    }
    // Objective row: minimise the sum of artificials, expressed in reduced form.
    let mut obj = vec![Rational::zero(); width];
    for r in &t {
        for j in 0..cols {
            obj[j] -= &r[j];
        }
        obj[width - 1] -= &r[width - 1];
    }
    t.push(obj);
    let mut basis: Vec<usize> = (cols..cols + rows).collect();

    // Bland: lowest-index column with negative reduced cost.
    while let Some(enter) = (0..cols + rows).find(|&j| t[rows][j].is_negative()) {
        let mut leave: Option<(usize, Rational)> = None;
        for (i, row) in t.iter().enumerate().take(rows) {
            if row[enter].is_positive() {
                let ratio = &row[width - 1] / &row[enter];
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        let Some((pr, _)) = leave else {
            // Unbounded cannot happen in phase one (objective bounded below by 0).
            unreachable!("phase-one objective is bounded");
        };
        pivot(&mut t, pr, enter);
        basis[pr] = enter;
    }

    if !t[rows][width - 1].is_zero() {
        return Feasibility::Infeasible;
    }
    let mut x = vec![Rational::zero(); cols];
    for (i, &bv) in basis.iter().enumerate() {
        if bv < cols {
            x[bv] = t[i][width - 1].clone();
        }
    }
    Feasibility::Feasible(x)
}

fn pivot(t: &mut [Vec<Rational>], pr: usize, pc: usize) {
    let p = t[pr][pc].clone();
    for v in t[pr].iter_mut() {
        *v /= &p;
    }
    let prow = t[pr].clone();
    for (i, row) in t.iter_mut().enumerate() {
        if i == pr || row[pc].is_zero() {
            continue;
        }
        let f = row[pc].clone();
        for (v, pv) in row.iter_mut().zip(&prow) {
            if !pv.is_zero() {
                *v -= &f * pv;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int;

    fn m(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect()
    }

    fn check(a: &[Vec<Rational>], b: &[Rational], x: &[Rational]) {
        for (row, bi) in a.iter().zip(b) {
            let lhs: Rational = row.iter().zip(x).map(|(p, q)| p * q).sum();
            assert_eq!(&lhs, bi);
        }
        assert!(x.iter().all(|v| !v.is_negative()));
    }

    #[test]
    fn simple_feasible() {
        let a = m(&[&[1, 1, 0], &[0, 1, -1]]);
        let b = vec![int(3), int(1)];
        let x = feasible_point(&a, &b, 3).point().unwrap();
        check(&a, &b, &x);
    }

    #[test]
    fn negative_rhs_and_redundant_rows() {
        let a = m(&[&[1, -1], &[2, -2], &[-1, 1]]);
        let b = vec![int(-2), int(-4), int(2)];
        let x = feasible_point(&a, &b, 2).point().unwrap();
        check(&a, &b, &x);
    }

    #[test]
    fn infeasible() {
        // x + y = -1 with x, y >= 0.
        let a = m(&[&[1, 1]]);
        assert_eq!(feasible_point(&a, &[int(-1)], 2), Feasibility::Infeasible);
        // x - y = 1 and y - x = 1.
        let a = m(&[&[1, -1], &[-1, 1]]);
        assert_eq!(feasible_point(&a, &[int(1), int(1)], 2), Feasibility::Infeasible);
    }
}
