//! Dense exact-rational simplex for `max c·x  s.t.  A x ≤ b, x ≥ 0` with
//! `b ≥ 0`, so the all-slack basis is feasible and one phase suffices.
//! Bland's rule keeps degenerate pivots from cycling.

use num_traits::{Signed, Zero};

use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq)]
pub(crate) enum Outcome {
    Optimal { x: Vec<Rational>, value: Rational },
    Unbounded,
}

pub(crate) fn maximize(objective: &[Rational], rows: &[Vec<Rational>], rhs: &[Rational]) -> Outcome {
    let vars = objective.len();
    let m = rows.len();
    let width = vars + m + 1;
    debug_assert!(rhs.iter().all(|b| !b.is_negative()));

    let mut tab: Vec<Vec<Rational>> = Vec::with_capacity(m + 1);
    for (i, row) in rows.iter().enumerate() {
        debug_assert_eq!(row.len(), vars);
        let mut line = vec![Rational::zero(); width];
        line[..vars].clone_from_slice(row);
        line[vars + i] = Rational::from_integer(1.into());
        line[width - 1] = rhs[i].clone();
        tab.push(line);
    }
    let mut cost = vec![Rational::zero(); width];
    for (j, c) in objective.iter().enumerate() {
        cost[j] = -c.clone();
    }
    tab.push(cost);
    let mut basis: Vec<usize> = (vars..vars + m).collect();

    loop {
        let Some(enter) = (0..width - 1).find(|&j| tab[m][j].is_negative()) else {
            break;
        };
        let mut leave: Option<(usize, Rational)> = None;
        for i in 0..m {
            if !tab[i][enter].is_positive() {
                continue;
            }
            let ratio = &tab[i][width - 1] / &tab[i][enter];
            let better = match &leave {
                None => true,
                Some((r, best)) => ratio < *best || (ratio == *best && basis[i] < basis[*r]),
            };
            if better {
                leave = Some((i, ratio));
            }
        }
        let Some((row, _)) = leave else {
            return Outcome::Unbounded;
        };
        pivot(&mut tab, row, enter);
        basis[row] = enter;
    }

    let mut x = vec![Rational::zero(); vars];
    for (i, &var) in basis.iter().enumerate() {
        if var < vars {
            x[var] = tab[i][width - 1].clone();
        }
    }
    Outcome::Optimal { x, value: tab[m][width - 1].clone() }
}

fn pivot(tab: &mut [Vec<Rational>], row: usize, col: usize) {
    let p = tab[row][col].clone();
    for v in tab[row].iter_mut() {
        *v = &*v / &p;
    }
    let pivot_row = tab[row].clone();
    for (i, line) in tab.iter_mut().enumerate() {
        if i == row || line[col].is_zero() {
            continue;
        }
        let factor = line[col].clone();
        for (v, pv) in line.iter_mut().zip(&pivot_row) {
            if !pv.is_zero() {
                *v -= &factor * pv;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    #[test]
    fn solves_textbook_problem() {
        // max 3x + 5y  s.t. x ≤ 4, 2y ≤ 12, 3x + 2y ≤ 18  →  (2, 6), 36
        let rows = vec![vec![int(1), int(0)], vec![int(0), int(2)], vec![int(3), int(2)]];
        let out = maximize(&[int(3), int(5)], &rows, &[int(4), int(12), int(18)]);
        assert_eq!(out, Outcome::Optimal { x: vec![int(2), int(6)], value: int(36) });
    }

    #[test]
    fn reports_unbounded() {
        let rows = vec![vec![int(1), int(-1)]];
        assert_eq!(maximize(&[int(1), int(0)], &rows, &[int(1)]), Outcome::Unbounded);
    }

    #[test]
    fn keeps_fractions_exact() {
        // max x + y  s.t. 3x + y ≤ 1, x + 3y ≤ 1  →  x = y = 1/4
        let rows = vec![vec![int(3), int(1)], vec![int(1), int(3)]];
        let Outcome::Optimal { x, value } = maximize(&[int(1), int(1)], &rows, &[int(1), int(1)]) else {
            panic!("bounded problem")
        };
        assert_eq!(x, vec![ratio(1, 4), ratio(1, 4)]);
        assert_eq!(value, ratio(1, 2));
    }
}
