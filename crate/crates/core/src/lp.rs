//! Exact phase-1 simplex over the rationals.

use num::{Signed, Zero};

use crate::Rational;

/// A basic feasible solution of `A x = b, x >= 0`, or `None` when the system
/// is infeasible. `b` must be nonnegative. Pivoting follows Bland's rule, so
/// the result is deterministic and the method terminates.
pub(crate) fn basic_feasible_point(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    debug_assert!(b.iter().all(|x| !x.is_negative()));
    let width = cols + rows + 1;
    // tableau rows, then the phase-1 cost row; last column is the rhs
    let mut t: Vec<Vec<Rational>> = Vec::with_capacity(rows + 1);
    for (i, row) in a.iter().enumerate() {
        let mut r = row.clone();
        r.extend((0..rows).map(|j| if i == j { one() } else { Rational::zero() }));
        r.push(b[i].clone());
        t.push(r);
    }
    let mut cost = vec![Rational::zero(); width];
    for r in &t {
        for j in (0..cols).chain(std::iter::once(width - 1)) {
            cost[j] -= &r[j];
        }
    }
    t.push(cost);
    let mut basis: Vec<usize> = (cols..cols + rows).collect();

    while let Some(enter) = (0..cols + rows).find(|&j| t[rows][j].is_negative()) {
        let mut leave: Option<(usize, Rational)> = None;
        for i in 0..rows {
            if !t[i][enter].is_positive() {
                continue;
            }
            let ratio = &t[i][width - 1] / &t[i][enter];
            let better = match &leave {
                None => true,
                Some((l, best)) => ratio < *best || (ratio == *best && basis[i] < basis[*l]),
            };
            if better {
                leave = Some((i, ratio));
            }
        }
        let (p, _) = leave?;
        pivot(&mut t, p, enter);
        basis[p] = enter;
    }
    if !t[rows][width - 1].is_zero() {
        return None;
    }
    let mut x = vec![Rational::zero(); cols];
    for (i, &j) in basis.iter().enumerate() {
        if j < cols {
            x[j] = t[i][width - 1].clone();
        }
    }
    Some(x)
}

fn one() -> Rational {
    Rational::from_integer(1.into())
}

fn pivot(t: &mut [Vec<Rational>], p: usize, q: usize) {
    let inv = one() / &t[p][q];
    for x in t[p].iter_mut() {
        *x *= &inv;
    }
    let pivot_row = t[p].clone();
    for (i, row) in t.iter_mut().enumerate() {
        if i == p || row[q].is_zero() {
            continue;
        }
        let f = row[q].clone();
        for (x, y) in row.iter_mut().zip(&pivot_row) {
            if !y.is_zero() {
                *x -= &f * y;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(p: i64, q: i64) -> Rational {
        Rational::new(p.into(), q.into())
    }

    #[test]
    fn solves_small_system() {
        // x + y = 1, x - y = 1/2 -> x = 3/4, y = 1/4
        let a = vec![vec![r(1, 1), r(1, 1)], vec![r(1, 1), r(-1, 1)]];
        let x = basic_feasible_point(&a, &[r(1, 1), r(1, 2)]).unwrap();
        assert_eq!(x, vec![r(3, 4), r(1, 4)]);
    }

    #[test]
    fn detects_infeasibility() {
        // x + y = 1, x + y = 2
        let a = vec![vec![r(1, 1), r(1, 1)], vec![r(1, 1), r(1, 1)]];
        assert!(basic_feasible_point(&a, &[r(1, 1), r(2, 1)]).is_none());
    }

    #[test]
    fn redundant_rows_are_fine() {
        let a = vec![vec![r(1, 1), r(1, 1), r(0, 1)], vec![r(2, 1), r(2, 1), r(0, 1)], vec![r(0, 1), r(0, 1), r(1, 1)]];
        let x = basic_feasible_point(&a, &[r(1, 1), r(2, 1), r(1, 3)]).unwrap();
        assert_eq!(&x[0] + &x[1], r(1, 1));
        assert_eq!(x[2], r(1, 3));
        assert!(x.iter().all(|v| !v.is_negative()));
    }
}
