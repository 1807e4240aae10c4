//! Dense two-phase primal simplex over exact rationals.
//!
//! Solves `min c.x  s.t.  A x = b, x >= 0` with Bland's rule, so it never cycles.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Linear program in equality standard form with nonnegative variables.
#[derive(Clone, Debug, Default)]
pub(crate) struct StandardLp {
    pub num_vars: usize,
    pub rows: Vec<Vec<BigRational>>,
    pub rhs: Vec<BigRational>,
    pub cost: Vec<BigRational>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Outcome {
    Optimal { x: Vec<BigRational>, value: BigRational },
    Infeasible,
    Unbounded,
}

impl StandardLp {
    pub fn new(num_vars: usize) -> Self {
        StandardLp {
            num_vars,
            rows: Vec::new(),
            rhs: Vec::new(),
            cost: vec![BigRational::zero(); num_vars],
        }
    }

    /// Appends a fresh variable (with zero cost) and returns its index.
    pub fn add_var(&mut self) -> usize {
        for row in &mut self.rows {
            row.push(BigRational::zero());
        }
        self.cost.push(BigRational::zero());
        self.num_vars += 1;
        self.num_vars - 1
    }

    pub fn add_eq(&mut self, row: Vec<BigRational>, rhs: BigRational) {
        assert_eq!(row.len(), self.num_vars);
        self.rows.push(row);
        self.rhs.push(rhs);
    }

    /// Adds `row . x <= rhs` through a new slack variable.
    pub fn add_le(&mut self, mut row: Vec<BigRational>, rhs: BigRational) {
        let s = self.add_var();
        row.push(BigRational::zero());
        row[s] = BigRational::one();
        self.add_eq(row, rhs);
    }

    /// Adds `row . x >= rhs` through a new surplus variable.
    pub fn add_ge(&mut self, mut row: Vec<BigRational>, rhs: BigRational) {
        let s = self.add_var();
        row.push(BigRational::zero());
        row[s] = -BigRational::one();
        self.add_eq(row, rhs);
    }

    pub fn solve(&self) -> Outcome {
        Tableau::solve(self)
    }
}

struct Tableau {
    /// Constraint rows; the last entry of each row is the right-hand side.
    rows: Vec<Vec<BigRational>>,
    /// Reduced costs, last entry is minus the objective value.
    obj: Vec<BigRational>,
    basis: Vec<usize>,
    width: usize,
}

impl Tableau {
    fn rhs(&self) -> usize {
        self.width - 1
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let inv = self.rows[r][c].recip();
        let nz: Vec<usize> = (0..self.width).filter(|&j| !self.rows[r][j].is_zero()).collect();
        for &j in &nz {
            self.rows[r][j] *= &inv;
        }
        let pivot_row = std::mem::take(&mut self.rows[r]);
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for &j in &nz {
                row[j] -= &f * &pivot_row[j];
            }
        }
        if !self.obj[c].is_zero() {
            let f = self.obj[c].clone();
            for &j in &nz {
                self.obj[j] -= &f * &pivot_row[j];
            }
        }
        self.rows[r] = pivot_row;
        self.basis[r] = c;
    }

    /// Runs Bland's rule over columns `< eligible`. Returns false if unbounded.
    fn optimize(&mut self, eligible: usize) -> bool {
        let rhs = self.rhs();
        loop {
            let Some(c) = (0..eligible).find(|&j| self.obj[j].is_negative()) else {
                return true;
            };
            let mut best: Option<(usize, BigRational)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if !row[c].is_positive() {
                    continue;
                }
                let ratio = &row[rhs] / &row[c];
                let better = match &best {
                    None => true,
                    Some((bi, br)) => ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi]),
                };
                if better {
                    best = Some((i, ratio));
                }
            }
            let Some((r, _)) = best else {
                return false;
            };
            self.pivot(r, c);
        }
    }

    fn solve(lp: &StandardLp) -> Outcome {
        let n = lp.num_vars;
        let m = lp.rows.len();
        let width = n + m + 1;
        let mut rows = Vec::with_capacity(m);
        for (i, (row, b)) in lp.rows.iter().zip(&lp.rhs).enumerate() {
            let flip = b.is_negative();
            let mut t = Vec::with_capacity(width);
            t.extend(row.iter().map(|x| if flip { -x.clone() } else { x.clone() }));
            t.extend((0..m).map(|k| if k == i { BigRational::one() } else { BigRational::zero() }));
            t.push(if flip { -b.clone() } else { b.clone() });
            rows.push(t);
        }
        // phase one: minimise the sum of artificials
        let mut obj = vec![BigRational::zero(); width];
        for row in &rows {
            for j in 0..n {
                obj[j] -= &row[j];
            }
            obj[width - 1] -= &row[width - 1];
        }
        let mut t = Tableau {
            rows,
            obj,
            basis: (n..n + m).collect(),
            width,
        };
        t.optimize(n + m);
        if !t.obj[width - 1].is_zero() {
            return Outcome::Infeasible;
        }
        // drive remaining artificials out of the basis, dropping redundant rows
        let mut r = 0;
        while r < t.rows.len() {
            if t.basis[r] >= n {
                if let Some(c) = (0..n).find(|&j| !t.rows[r][j].is_zero()) {
                    t.pivot(r, c);
                } else {
                    t.rows.remove(r);
                    t.basis.remove(r);
                    continue;
                }
            }
            r += 1;
        }
        // phase two on the original columns only
        let width = n + 1;
        for row in &mut t.rows {
            let rhs = row.pop().expect("nonempty row");
            row.truncate(n);
            row.push(rhs);
        }
        t.width = width;
        let mut obj: Vec<BigRational> = lp.cost.clone();
        obj.push(BigRational::zero());
        for (row, &b) in t.rows.iter().zip(&t.basis) {
            let cb = &lp.cost[b];
            if cb.is_zero() {
                continue;
            }
            for j in 0..width {
                if !row[j].is_zero() {
                    obj[j] -= cb * &row[j];
                }
            }
        }
        t.obj = obj;
        if !t.optimize(n) {
            return Outcome::Unbounded;
        }
        let mut x = vec![BigRational::zero(); n];
        for (row, &b) in t.rows.iter().zip(&t.basis) {
            x[b] = row[n].clone();
        }
        let value = -t.obj[n].clone();
        Outcome::Optimal { x, value }
    }
}
