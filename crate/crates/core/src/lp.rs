//! Dense two-phase simplex over exact rationals with Bland's anti-cycling rule.
//!
//! Problems are `maximize c·x subject to A x = b, x ≥ 0`. The sizes that occur
//! here are tiny (tens of rows, a few hundred columns), so the tableau is dense
//! and reduced costs are recomputed each pivot.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Debug, PartialEq)]
pub enum LpOutcome {
    Optimal { x: Vec<BigRational>, value: BigRational },
    Infeasible,
    Unbounded,
}

struct Tableau {
    rows: Vec<Vec<BigRational>>,
    rhs: Vec<BigRational>,
    basis: Vec<usize>,
}

impl Tableau {
    fn pivot(&mut self, r: usize, col: usize) {
        let inv = self.rows[r][col].recip();
        for v in self.rows[r].iter_mut() {
            *v *= &inv;
        }
        self.rhs[r] *= &inv;
        let pivot_row = self.rows[r].clone();
        let pivot_rhs = self.rhs[r].clone();
        for i in 0..self.rows.len() {
            if i == r || self.rows[i][col].is_zero() {
                continue;
            }
            let factor = self.rows[i][col].clone();
            for (v, p) in self.rows[i].iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *v -= &factor * p;
                }
            }
            self.rhs[i] -= &factor * &pivot_rhs;
        }
        self.basis[r] = col;
    }

    fn reduced_cost(&self, cost: &[BigRational], j: usize) -> BigRational {
        let mut r = cost[j].clone();
        for (i, &b) in self.basis.iter().enumerate() {
            if !cost[b].is_zero() && !self.rows[i][j].is_zero() {
                r -= &cost[b] * &self.rows[i][j];
            }
        }
        r
    }

    /// Runs simplex iterations for `cost`, letting only columns `< eligible` enter.
    /// Returns `false` on unboundedness.
    fn optimize(&mut self, cost: &[BigRational], eligible: usize) -> bool {
        loop {
            // Bland: lowest-index improving column.
            let Some(col) = (0..eligible)
                .find(|&j| !self.basis.contains(&j) && self.reduced_cost(cost, j).is_positive())
            else {
                return true;
            };
            let mut leave: Option<(usize, BigRational)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][col];
                if !a.is_positive() {
                    continue;
                }
                let ratio = &self.rhs[i] / a;
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && self.basis[i] < self.basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            match leave {
                Some((r, _)) => self.pivot(r, col),
                None => return false,
            }
        }
    }
}

/// Maximizes `c·x` subject to `a x = b`, `x ≥ 0`.
pub fn maximize(c: &[BigRational], a: &[Vec<BigRational>], b: &[BigRational]) -> LpOutcome {
    let m = a.len();
    let n = c.len();
    assert_eq!(b.len(), m);
    assert!(a.iter().all(|row| row.len() == n), "constraint rows must have {n} columns");

    // Columns: n structural, then m artificials.
    let mut rows = Vec::with_capacity(m);
    let mut rhs = Vec::with_capacity(m);
    for (i, (row, bi)) in a.iter().zip(b).enumerate() {
        let flip = bi.is_negative();
        let mut full: Vec<BigRational> = row
            .iter()
            .map(|v| if flip { -v.clone() } else { v.clone() })
            .collect();
        full.extend((0..m).map(|k| if k == i { BigRational::one() } else { BigRational::zero() }));
        rows.push(full);
        rhs.push(if flip { -bi.clone() } else { bi.clone() });
    }
    let mut tab = Tableau {
        rows,
        rhs,
        basis: (n..n + m).collect(),
    };

    // Phase 1: maximize −Σ artificials.
    let mut phase1 = vec![BigRational::zero(); n + m];
    for v in &mut phase1[n..] {
        *v = -BigRational::one();
    }
    tab.optimize(&phase1, n + m);
    let infeasibility: BigRational = tab
        .basis
        .iter()
        .zip(&tab.rhs)
        .filter(|(&bv, _)| bv >= n)
        .map(|(_, v)| v.clone())
        .sum();
    if infeasibility.is_positive() {
        return LpOutcome::Infeasible;
    }

    // Drive zero-valued artificials out of the basis; drop redundant rows.
    let mut r = 0;
    while r < tab.rows.len() {
        if tab.basis[r] >= n {
            match (0..n).find(|&j| !tab.rows[r][j].is_zero()) {
                Some(col) => tab.pivot(r, col),
                None => {
                    tab.rows.remove(r);
                    tab.rhs.remove(r);
                    tab.basis.remove(r);
                    continue;
                }
            }
        }
        r += 1;
    }

    let mut cost = c.to_vec();
    cost.extend((0..m).map(|_| BigRational::zero()));
    if !tab.optimize(&cost, n) {
        return LpOutcome::Unbounded;
    }
    let mut x = vec![BigRational::zero(); n];
    for (i, &bv) in tab.basis.iter().enumerate() {
        if bv < n {
            x[bv] = tab.rhs[i].clone();
        }
    }
    let value = c.iter().zip(&x).map(|(ci, xi)| ci * xi).sum();
    LpOutcome::Optimal { x, value }
}
