//! Dense two-phase simplex method for the small linear programs used by the
//! geometry code (axial diameters, membership in a vertex polytope).
//!
//! Problems are stated as "maximize `c·x`" over rows `a·x {<=,>=,=} b`, with each
//! variable either free or nonnegative. Bland's rule is used throughout, so the
//! method terminates on degenerate problems.

use thiserror::Error;

use crate::scalar::Real;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum LpError {
    #[error("the linear program is infeasible")]
    Infeasible,
    #[error("the linear program is unbounded")]
    Unbounded,
    #[error("iteration limit reached")]
    IterationLimit,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

#[derive(Debug, Clone)]
struct Constraint<T> {
    coeffs: Vec<T>,
    relation: Relation,
    rhs: T,
}

#[derive(Debug, Clone)]
pub struct LinearProgram<T> {
    objective: Vec<T>,
    free: Vec<bool>,
    constraints: Vec<Constraint<T>>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LpSolution<T> {
    pub objective: T,
    pub x: Vec<T>,
}

impl<T: Real> LinearProgram<T> {
    /// A maximization problem over `objective.len()` nonnegative variables.
    pub fn maximize(objective: Vec<T>) -> Self {
        let n = objective.len();
        Self {
            objective,
            free: vec![false; n],
            constraints: Vec::new(),
        }
    }

    /// A pure feasibility problem over `n` nonnegative variables.
    pub fn feasibility(n: usize) -> Self {
        Self::maximize(vec![T::zero(); n])
    }

    pub fn set_free(&mut self, var: usize) -> &mut Self {
        self.free[var] = true;
        self
    }

    pub fn constrain(&mut self, coeffs: Vec<T>, relation: Relation, rhs: T) -> &mut Self {
        assert_eq!(coeffs.len(), self.objective.len(), "constraint width");
        self.constraints.push(Constraint {
            coeffs,
            relation,
            rhs,
        });
        self
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn solve(&self) -> Result<LpSolution<T>, LpError> {
        // Column layout: for each user variable one column (x+) and, if free, a second (x-);
        // then one slack per inequality row.
        let mut col_of = Vec::with_capacity(self.objective.len());
        let mut ncols = 0;
        for &f in &self.free {
            col_of.push(ncols);
            ncols += if f { 2 } else { 1 };
        }
        let n_struct = ncols;
        let n_slack = self
            .constraints
            .iter()
            .filter(|c| c.relation != Relation::Eq)
            .count();
        ncols += n_slack;

        let m = self.constraints.len();
        let mut a = vec![vec![T::zero(); ncols]; m];
        let mut b = vec![T::zero(); m];
        let mut slack = n_struct;
        for (r, c) in self.constraints.iter().enumerate() {
            for (v, &coef) in c.coeffs.iter().enumerate() {
                let col = col_of[v];
                a[r][col] = coef;
                if self.free[v] {
                    a[r][col + 1] = -coef;
                }
            }
            match c.relation {
                Relation::Le => {
                    a[r][slack] = T::one();
                    slack += 1;
                }
                Relation::Ge => {
                    a[r][slack] = -T::one();
                    slack += 1;
                }
                Relation::Eq => {}
            }
            b[r] = c.rhs;
        }
        let mut cost = vec![T::zero(); ncols];
        for (v, &c) in self.objective.iter().enumerate() {
            cost[col_of[v]] = c;
            if self.free[v] {
                cost[col_of[v] + 1] = -c;
            }
        }

        let sol = solve_standard(a, b, &cost)?;
        let x = (0..self.objective.len())
            .map(|v| {
                let col = col_of[v];
                if self.free[v] {
                    sol.x[col] - sol.x[col + 1]
                } else {
                    sol.x[col]
                }
            })
            .collect();
        Ok(LpSolution {
            objective: sol.objective,
            x,
        })
    }
}

/// Maximizes `cost·x` subject to `a x = b`, `x >= 0`.
pub fn solve_standard<T: Real>(
    mut a: Vec<Vec<T>>,
    mut b: Vec<T>,
    cost: &[T],
) -> Result<LpSolution<T>, LpError> {
    let m = a.len();
    let n = cost.len();
    let tol = T::kernel_tol();

    for r in 0..m {
        if b[r] < T::zero() {
            b[r] = -b[r];
            a[r].iter_mut().for_each(|v| *v = -*v);
        }
    }

    // Tableau columns: n structural, m artificial, then rhs.
    let width = n + m + 1;
    let rhs = n + m;
    let mut t: Vec<Vec<T>> = Vec::with_capacity(m);
    for r in 0..m {
        let mut row = vec![T::zero(); width];
        row[..n].copy_from_slice(&a[r]);
        row[n + r] = T::one();
        row[rhs] = b[r];
        t.push(row);
    }
    let mut basis: Vec<usize> = (n..n + m).collect();

    // Phase 1: maximize -sum(artificials). Reduced costs in `obj`, obj[rhs] = -(objective value).
    let mut obj = vec![T::zero(); width];
    for row in &t {
        for j in 0..n {
            obj[j] += row[j];
        }
        obj[rhs] += row[rhs];
    }
    run_simplex(&mut t, &mut obj, &mut basis, n + m, tol)?;
    let scale = b.iter().fold(T::one(), |s, v| s.max(v.abs()));
    if obj[rhs] > tol * scale {
        return Err(LpError::Infeasible);
    }

    // Drive artificial variables out of the basis; drop redundant rows.
    let mut r = 0;
    while r < t.len() {
        if basis[r] >= n {
            match (0..n).find(|&j| t[r][j].abs() > tol) {
                Some(j) => {
                    pivot(&mut t, &mut obj, &mut basis, r, j);
                    r += 1;
                }
                None => {
                    t.remove(r);
                    basis.remove(r);
                }
            }
        } else {
            r += 1;
        }
    }

    // Phase 2 over structural columns only.
    let mut obj = vec![T::zero(); width];
    obj[..n].copy_from_slice(cost);
    for (row, &bv) in t.iter().zip(&basis) {
        let cb = cost[bv];
        if cb != T::zero() {
            for j in 0..width {
                obj[j] -= cb * row[j];
            }
        }
    }
    run_simplex(&mut t, &mut obj, &mut basis, n, tol)?;

    let mut x = vec![T::zero(); n];
    for (row, &bv) in t.iter().zip(&basis) {
        x[bv] = row[rhs];
    }
    let objective = cost.iter().zip(&x).map(|(c, v)| *c * *v).sum();
    Ok(LpSolution { objective, x })
}

fn run_simplex<T: Real>(
    t: &mut [Vec<T>],
    obj: &mut [T],
    basis: &mut [usize],
    enter_limit: usize,
    tol: T,
) -> Result<(), LpError> {
    let rhs = obj.len() - 1;
    let max_iter = 50 * (t.len() + enter_limit + 10);
    for _ in 0..max_iter {
        // Bland: lowest-index column with positive reduced cost.
        let Some(enter) = (0..enter_limit).find(|&j| obj[j] > tol) else {
            return Ok(());
        };
        let mut leave: Option<(usize, T)> = None;
        for (r, row) in t.iter().enumerate() {
            if row[enter] > tol {
                let ratio = row[rhs] / row[enter];
                leave = match leave {
                    None => Some((r, ratio)),
                    Some((lr, lratio)) => {
                        if ratio < lratio - tol
                            || ((ratio - lratio).abs() <= tol && basis[r] < basis[lr])
                        {
                            Some((r, ratio))
                        } else {
                            Some((lr, lratio))
                        }
                    }
                };
            }
        }
        let Some((row, _)) = leave else {
            return Err(LpError::Unbounded);
        };
        pivot(t, obj, basis, row, enter);
    }
    Err(LpError::IterationLimit)
}

fn pivot<T: Real>(t: &mut [Vec<T>], obj: &mut [T], basis: &mut [usize], row: usize, col: usize) {
    let p = t[row][col];
    t[row].iter_mut().for_each(|v| *v /= p);
    let prow = t[row].clone();
    for (r, other) in t.iter_mut().enumerate() {
        if r == row {
            continue;
        }
        let f = other[col];
        if f != T::zero() {
            for (v, pv) in other.iter_mut().zip(&prow) {
                *v -= f * *pv;
            }
        }
    }
    let f = obj[col];
    if f != T::zero() {
        for (v, pv) in obj.iter_mut().zip(&prow) {
            *v -= f * *pv;
        }
    }
    basis[row] = col;
}
