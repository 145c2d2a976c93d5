//! Dense two-phase simplex with Bland's anti-cycling rule.
//!
//! Problems are stated over variables with optional bounds, inequality rows
//! `a.z <= b` and equality rows `a.z = b`. Internally everything is converted
//! to standard form (nonnegative variables, equality rows, artificial basis).
//! The solver is deterministic: the same problem always walks the same pivots.

use log::trace;

use crate::error::Error;
use crate::vector::Vector;

/// Entries smaller than this never serve as pivots.
pub const PIVOT_TOL: f64 = 1e-10;
/// Reduced costs above `-RCOST_TOL` count as optimal.
const RCOST_TOL: f64 = 1e-9;
/// Returned witnesses must satisfy every constraint to this tolerance.
pub const WITNESS_TOL: f64 = 1e-7;
/// Phase-1 objective above this is infeasibility.
const FEAS_TOL: f64 = 1e-7;

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct VarBound {
    pub lower: Option<f64>,
    pub upper: Option<f64>,
}

impl VarBound {
    pub fn free() -> Self {
        Self::default()
    }

    pub fn nonnegative() -> Self {
        Self {
            lower: Some(0.0),
            upper: None,
        }
    }
}

/// `minimize objective . z` subject to the rows and bounds.
#[derive(Clone, Debug)]
pub struct LPProblem {
    pub objective: Vec<f64>,
    pub ineq: Vec<(Vec<f64>, f64)>,
    pub eq: Vec<(Vec<f64>, f64)>,
    /// One entry per variable; an empty list means every variable is free.
    pub bounds: Vec<VarBound>,
}

impl LPProblem {
    pub fn minimize(objective: Vec<f64>) -> Self {
        Self {
            objective,
            ineq: Vec::new(),
            eq: Vec::new(),
            bounds: Vec::new(),
        }
    }

    pub fn n_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn with_leq(mut self, row: Vec<f64>, rhs: f64) -> Self {
        self.ineq.push((row, rhs));
        self
    }

    pub fn with_eq(mut self, row: Vec<f64>, rhs: f64) -> Self {
        self.eq.push((row, rhs));
        self
    }

    pub fn with_bounds(mut self, bounds: Vec<VarBound>) -> Self {
        self.bounds = bounds;
        self
    }

    /// Constrain every variable to `z >= 0`.
    pub fn with_nonnegative_vars(mut self) -> Self {
        self.bounds = vec![VarBound::nonnegative(); self.n_vars()];
        self
    }

    fn validate(&self) -> Result<(), Error> {
        let n = self.n_vars();
        if n == 0 {
            return Err(Error::InvalidInput("LP needs at least one variable".into()));
        }
        for (row, _) in self.ineq.iter().chain(&self.eq) {
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: row.len(),
                });
            }
        }
        if !self.bounds.is_empty() && self.bounds.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: self.bounds.len(),
            });
        }
        for b in &self.bounds {
            if let (Some(l), Some(u)) = (b.lower, b.upper) {
                if l > u {
                    return Err(Error::InvalidInput(format!(
                        "variable bound [{l}, {u}] is empty"
                    )));
                }
            }
        }
        Ok(())
    }

    fn bound(&self, j: usize) -> VarBound {
        self.bounds.get(j).copied().unwrap_or_default()
    }
}

#[derive(Clone, Debug)]
pub enum LPOutcome {
    Optimal {
        value: f64,
        witness: Vec<f64>,
    },
    /// Best-effort row multipliers certifying the empty feasible set.
    Infeasible {
        row_certificate: Option<Vec<f64>>,
    },
    Unbounded,
}

impl LPOutcome {
    pub fn optimal(&self) -> Option<(f64, &[f64])> {
        match self {
            LPOutcome::Optimal { value, witness } => Some((*value, witness)),
            _ => None,
        }
    }

    pub fn is_infeasible(&self) -> bool {
        matches!(self, LPOutcome::Infeasible { .. })
    }
}

/// How each original variable maps into the nonnegative standard-form columns.
#[derive(Clone, Copy)]
enum VarMap {
    /// `z = p - q`.
    Free { pos: usize, neg: usize },
    /// `z = lo + p`.
    Lower { col: usize, lo: f64 },
    /// `z = hi - p`.
    Upper { col: usize, hi: f64 },
}

struct StandardForm {
    rows: Vec<Vec<f64>>,
    rhs: Vec<f64>,
    cost: Vec<f64>,
    maps: Vec<VarMap>,
    n_cols: usize,
    /// Index of the original row each standard row came from (inequalities
    /// first, then equalities), or `None` for synthetic upper-bound rows.
    provenance: Vec<Option<usize>>,
}

fn standardize(p: &LPProblem) -> StandardForm {
    let n = p.n_vars();
    let mut maps = Vec::with_capacity(n);
    let mut n_cols = 0usize;
    let mut ub_rows: Vec<(usize, f64)> = Vec::new();
    for j in 0..n {
        let b = p.bound(j);
        let map = match (b.lower, b.upper) {
            (None, None) => {
                let m = VarMap::Free {
                    pos: n_cols,
                    neg: n_cols + 1,
                };
                n_cols += 2;
                m
            }
            (Some(lo), None) => {
                let m = VarMap::Lower { col: n_cols, lo };
                n_cols += 1;
                m
            }
            (Some(lo), Some(hi)) => {
                let m = VarMap::Lower { col: n_cols, lo };
                ub_rows.push((n_cols, hi - lo));
                n_cols += 1;
                m
            }
            (None, Some(hi)) => {
                let m = VarMap::Upper { col: n_cols, hi };
                n_cols += 1;
                m
            }
        };
        maps.push(map);
    }

    let expand = |row: &[f64]| -> (Vec<f64>, f64) {
        let mut out = vec![0.0; n_cols];
        let mut shift = 0.0;
        for (j, &a) in row.iter().enumerate() {
            match maps[j] {
                VarMap::Free { pos, neg } => {
                    out[pos] += a;
                    out[neg] -= a;
                }
                VarMap::Lower { col, lo } => {
                    out[col] += a;
                    shift += a * lo;
                }
                VarMap::Upper { col, hi } => {
                    out[col] -= a;
                    shift += a * hi;
                }
            }
        }
        (out, shift)
    };

    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    let mut provenance = Vec::new();

    // Collect inequality rows (slack pending), synthetic upper-bound rows,
    // then equality rows.
    let mut pending: Vec<(Vec<f64>, f64, bool, Option<usize>)> = Vec::new();
    for (i, (row, b)) in p.ineq.iter().enumerate() {
        let (r, shift) = expand(row);
        pending.push((r, b - shift, true, Some(i)));
    }
    for (col, ub) in ub_rows {
        let mut r = vec![0.0; n_cols];
        r[col] = 1.0;
        pending.push((r, ub, true, None));
    }
    for (i, (row, b)) in p.eq.iter().enumerate() {
        let (r, shift) = expand(row);
        pending.push((r, b - shift, false, Some(p.ineq.len() + i)));
    }

    let n_slack = pending.iter().filter(|(_, _, ineq, _)| *ineq).count();
    let total = n_cols + n_slack;
    let mut slack_at = n_cols;
    for (mut r, mut b, is_ineq, from) in pending {
        r.resize(total, 0.0);
        if is_ineq {
            r[slack_at] = 1.0;
            slack_at += 1;
        }
        // Normalize to a nonnegative right-hand side for the artificial basis.
        if b < 0.0 {
            for a in r.iter_mut() {
                *a = -*a;
            }
            b = -b;
        }
        rows.push(r);
        rhs.push(b);
        provenance.push(from);
    }

    let mut cost = vec![0.0; total];
    for (j, &c) in p.objective.iter().enumerate() {
        match maps[j] {
            VarMap::Free { pos, neg } => {
                cost[pos] += c;
                cost[neg] -= c;
            }
            VarMap::Lower { col, .. } => cost[col] += c,
            VarMap::Upper { col, .. } => cost[col] -= c,
        }
    }

    StandardForm {
        rows,
        rhs,
        cost,
        maps,
        n_cols: total,
        provenance,
    }
}

enum SimplexEnd {
    Optimal,
    Unbounded,
    Breakdown(String),
}

struct Tableau {
    a: Vec<Vec<f64>>,
    rhs: Vec<f64>,
    basis: Vec<usize>,
}

impl Tableau {
    fn m(&self) -> usize {
        self.a.len()
    }

    fn n(&self) -> usize {
        if self.a.is_empty() {
            0
        } else {
            self.a[0].len()
        }
    }

    /// Objective value of the current basis under `cost`.
    fn objective(&self, cost: &[f64]) -> f64 {
        self.basis
            .iter()
            .zip(&self.rhs)
            .map(|(&b, &v)| cost[b] * v)
            .sum()
    }

    /// Reduced cost of column `j` under `cost`.
    fn reduced_cost(&self, cost: &[f64], j: usize) -> f64 {
        let mut r = cost[j];
        for (i, &b) in self.basis.iter().enumerate() {
            let cb = cost[b];
            if cb != 0.0 {
                r -= cb * self.a[i][j];
            }
        }
        r
    }

    fn run(&mut self, cost: &[f64], banned: &[bool]) -> SimplexEnd {
        let cap = 200 * (self.m() + self.n() + 10);
        for _ in 0..cap {
            // Bland's rule: the lowest-index column with a negative reduced cost.
            let entering = (0..self.n()).find(|&j| {
                !banned[j]
                    && !self.basis.contains(&j)
                    && self.reduced_cost(cost, j) < -RCOST_TOL
            });
            let Some(col) = entering else {
                return SimplexEnd::Optimal;
            };

            // Ratio test; ties broken by the smallest basis variable index.
            let mut leaving: Option<(usize, f64)> = None;
            for i in 0..self.m() {
                let a = self.a[i][col];
                if a > PIVOT_TOL {
                    let ratio = self.rhs[i] / a;
                    match leaving {
                        None => leaving = Some((i, ratio)),
                        Some((best_i, best)) => {
                            if ratio < best - 1e-12
                                || (ratio < best + 1e-12 && self.basis[i] < self.basis[best_i])
                            {
                                leaving = Some((i, ratio));
                            }
                        }
                    }
                }
            }
            let Some((row, _)) = leaving else {
                return SimplexEnd::Unbounded;
            };
            if self.a[row][col].abs() <= PIVOT_TOL {
                return SimplexEnd::Breakdown(format!(
                    "pivot {:.3e} below tolerance",
                    self.a[row][col]
                ));
            }
            self.apply_pivot(row, col);
        }
        SimplexEnd::Breakdown("iteration cap exceeded".into())
    }

    fn apply_pivot(&mut self, row: usize, col: usize) {
        let inv = 1.0 / self.a[row][col];
        for v in self.a[row].iter_mut() {
            *v *= inv;
        }
        self.rhs[row] *= inv;
        let pivot_row = self.a[row].clone();
        let pivot_rhs = self.rhs[row];
        for i in 0..self.m() {
            if i == row {
                continue;
            }
            let f = self.a[i][col];
            if f == 0.0 {
                continue;
            }
            for (v, pv) in self.a[i].iter_mut().zip(&pivot_row) {
                *v -= f * pv;
            }
            // Clamp the pivot column to an exact zero to keep the tableau clean.
            self.a[i][col] = 0.0;
            self.rhs[i] -= f * pivot_rhs;
        }
        self.basis[row] = col;
    }
}

fn solve_once(p: &LPProblem, rhs_nudge: f64) -> Result<LPOutcome, Error> {
    let sf = standardize(p);
    let m = sf.rows.len();
    let n = sf.n_cols;

    if m == 0 {
        // No constraints: optimal at the bound corners if the cost points
        // into them, otherwise unbounded.
        let mut witness = vec![0.0; p.n_vars()];
        for (j, map) in sf.maps.iter().enumerate() {
            let c = p.objective[j];
            match *map {
                VarMap::Free { .. } => {
                    if c.abs() > RCOST_TOL {
                        return Ok(LPOutcome::Unbounded);
                    }
                    witness[j] = 0.0;
                }
                VarMap::Lower { lo, .. } => {
                    if c < -RCOST_TOL {
                        return Ok(LPOutcome::Unbounded);
                    }
                    witness[j] = lo;
                }
                VarMap::Upper { hi, .. } => {
                    if c > RCOST_TOL {
                        return Ok(LPOutcome::Unbounded);
                    }
                    witness[j] = hi;
                }
            }
        }
        let value = dot(&p.objective, &witness);
        return Ok(LPOutcome::Optimal { value, witness });
    }

    // Artificial columns form the initial identity basis.
    let total = n + m;
    let mut t = Tableau {
        a: Vec::with_capacity(m),
        rhs: Vec::with_capacity(m),
        basis: (n..total).collect(),
    };
    for (i, row) in sf.rows.iter().enumerate() {
        let mut r = vec![0.0; total];
        r[..n].copy_from_slice(row);
        r[n + i] = 1.0;
        t.a.push(r);
        let nudge = if rhs_nudge == 0.0 {
            0.0
        } else {
            rhs_nudge * (1.0 + sf.rhs[i].abs()) * if i % 2 == 0 { 1.0 } else { -1.0 }
        };
        t.rhs.push(sf.rhs[i] + nudge);
    }

    // Phase 1: minimize the sum of artificials.
    let mut cost1 = vec![0.0; total];
    for c in cost1[n..].iter_mut() {
        *c = 1.0;
    }
    let banned_none = vec![false; total];
    match t.run(&cost1, &banned_none) {
        SimplexEnd::Optimal => {}
        SimplexEnd::Unbounded => {
            return Err(Error::SolverBreakdown(
                "phase 1 reported unbounded".into(),
            ))
        }
        SimplexEnd::Breakdown(msg) => return Err(Error::SolverBreakdown(msg)),
    }
    let art_sum = t.objective(&cost1);
    if art_sum > FEAS_TOL {
        // The artificial columns started as the identity, so in the final
        // tableau they hold B^{-1}; the phase-1 basis costs against them give
        // the row multipliers of the infeasibility certificate.
        let mut cert = vec![0.0; m];
        for (i, c) in cert.iter_mut().enumerate() {
            *c = (0..m)
                .map(|k| cost1[t.basis[k]] * t.a[k][n + i])
                .sum::<f64>();
        }
        // Fold back onto original rows (synthetic bound rows are dropped).
        let mut by_row = vec![0.0; p.ineq.len() + p.eq.len()];
        let mut meaningful = false;
        for (i, from) in sf.provenance.iter().enumerate() {
            if let Some(orig) = from {
                by_row[*orig] = cert[i];
                meaningful = true;
            }
        }
        trace!("phase 1 infeasible, artificial mass {art_sum:.3e}");
        return Ok(LPOutcome::Infeasible {
            row_certificate: if meaningful { Some(by_row) } else { None },
        });
    }

    // Drive leftover artificials out of the basis, dropping redundant rows.
    let mut drop_rows = Vec::new();
    for i in 0..t.m() {
        if t.basis[i] >= n {
            let col = (0..n).find(|&j| t.a[i][j].abs() > PIVOT_TOL);
            match col {
                Some(j) => t.apply_pivot(i, j),
                None => drop_rows.push(i),
            }
        }
    }
    for &i in drop_rows.iter().rev() {
        t.a.remove(i);
        t.rhs.remove(i);
        t.basis.remove(i);
    }

    // Phase 2 over the real objective, artificials banned.
    let mut cost2 = vec![0.0; total];
    cost2[..n].copy_from_slice(&sf.cost);
    let mut banned = vec![false; total];
    for b in banned[n..].iter_mut() {
        *b = true;
    }
    match t.run(&cost2, &banned) {
        SimplexEnd::Optimal => {}
        SimplexEnd::Unbounded => return Ok(LPOutcome::Unbounded),
        SimplexEnd::Breakdown(msg) => return Err(Error::SolverBreakdown(msg)),
    }

    // Read off the standard-form solution and map it back.
    let mut std_values = vec![0.0; n];
    for (i, &b) in t.basis.iter().enumerate() {
        if b < n {
            std_values[b] = t.rhs[i];
        }
    }
    let mut witness = vec![0.0; p.n_vars()];
    for (j, map) in sf.maps.iter().enumerate() {
        witness[j] = match *map {
            VarMap::Free { pos, neg } => std_values[pos] - std_values[neg],
            VarMap::Lower { col, lo } => lo + std_values[col],
            VarMap::Upper { col, hi } => hi - std_values[col],
        };
    }
    let value = dot(&p.objective, &witness);
    trace!(
        "phase 2 optimal, value {value:.6e}, basis {:?}",
        t.basis
    );
    Ok(LPOutcome::Optimal { value, witness })
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn witness_violation(p: &LPProblem, z: &[f64]) -> f64 {
    let mut worst: f64 = 0.0;
    for (row, b) in &p.ineq {
        worst = worst.max((dot(row, z) - b) / (1.0 + b.abs()));
    }
    for (row, b) in &p.eq {
        worst = worst.max((dot(row, z) - b).abs() / (1.0 + b.abs()));
    }
    for (j, &v) in z.iter().enumerate() {
        let bound = p.bound(j);
        if let Some(lo) = bound.lower {
            worst = worst.max(lo - v);
        }
        if let Some(hi) = bound.upper {
            worst = worst.max(v - hi);
        }
    }
    worst
}

/// Solve the problem. Infeasibility and unboundedness are ordinary outcomes;
/// numeric failure (tiny pivots, unverifiable witnesses) is an error, never
/// reported as infeasibility.
pub fn solve(p: &LPProblem) -> Result<LPOutcome, Error> {
    p.validate()?;
    let first = solve_once(p, 0.0);
    let needs_retry = match &first {
        Ok(LPOutcome::Optimal { witness, .. }) => witness_violation(p, witness) > WITNESS_TOL,
        Ok(_) => false,
        Err(Error::SolverBreakdown(_)) => true,
        Err(_) => return first,
    };
    if !needs_retry {
        return first;
    }
    trace!("retrying with perturbed right-hand sides");
    let second = solve_once(p, 1e-9)?;
    if let LPOutcome::Optimal { witness, .. } = &second {
        let v = witness_violation(p, witness);
        if v > WITNESS_TOL {
            return Err(Error::SolverBreakdown(format!(
                "witness violates constraints by {v:.3e} after perturbation retry"
            )));
        }
    }
    Ok(second)
}

/// Decide whether some convex combination of `points` satisfies the given
/// linear equalities: find `lambda >= 0`, `sum lambda = 1` with
/// `<w, sum_i lambda_i g_i> = r` for every pair `(w, r)`.
pub fn convex_hull_membership(
    points: &[Vector],
    equalities: &[(Vector, f64)],
) -> Result<LPOutcome, Error> {
    if points.is_empty() {
        return Err(Error::InvalidInput("need at least one point".into()));
    }
    let dim = points[0].dim();
    for pt in points {
        pt.check_dim(dim)?;
    }
    let k = points.len();
    let mut lp = LPProblem::minimize(vec![0.0; k])
        .with_nonnegative_vars()
        .with_eq(vec![1.0; k], 1.0);
    for (w, r) in equalities {
        w.check_dim(dim)?;
        let row = points.iter().map(|g| g.dot(w)).collect();
        lp = lp.with_eq(row, *r);
    }
    solve(&lp)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_dimensional_optimum() {
        // min x s.t. 1 <= x <= 3.
        let lp = LPProblem::minimize(vec![1.0]).with_bounds(vec![VarBound {
            lower: Some(1.0),
            upper: Some(3.0),
        }]);
        let out = solve(&lp).unwrap();
        let (value, witness) = out.optimal().expect("optimal");
        assert!((value - 1.0).abs() < 1e-9);
        assert!((witness[0] - 1.0).abs() < 1e-9);
    }

    #[test]
    fn detects_infeasibility() {
        // x <= 0 and x >= 1.
        let lp = LPProblem::minimize(vec![0.0])
            .with_leq(vec![1.0], 0.0)
            .with_leq(vec![-1.0], -1.0);
        assert!(solve(&lp).unwrap().is_infeasible());
    }

    #[test]
    fn detects_unboundedness() {
        // min -x s.t. x >= 0.
        let lp = LPProblem::minimize(vec![-1.0]).with_nonnegative_vars();
        assert!(matches!(solve(&lp).unwrap(), LPOutcome::Unbounded));
    }

    #[test]
    fn equality_with_free_variables() {
        // min x + y s.t. x + y = 2, x - y = 0 => x = y = 1.
        let lp = LPProblem::minimize(vec![1.0, 1.0])
            .with_eq(vec![1.0, 1.0], 2.0)
            .with_eq(vec![1.0, -1.0], 0.0);
        let out = solve(&lp).unwrap();
        let (value, witness) = out.optimal().unwrap();
        assert!((value - 2.0).abs() < 1e-9);
        assert!((witness[0] - 1.0).abs() < 1e-9);
        assert!((witness[1] - 1.0).abs() < 1e-9);
    }

    #[test]
    fn hull_membership_on_a_segment() {
        // 0 is the midpoint of {1, -1}.
        let points = [Vector::new(vec![1.0]), Vector::new(vec![-1.0])];
        let eqs = [(Vector::new(vec![1.0]), 0.0)];
        let out = convex_hull_membership(&points, &eqs).unwrap();
        let (_, lambda) = out.optimal().expect("feasible");
        assert!((lambda[0] - 0.5).abs() < 1e-9);
        assert!((lambda[1] - 0.5).abs() < 1e-9);
    }

    #[test]
    fn hull_membership_rejects_outside_points() {
        let points = [Vector::new(vec![1.0])];
        let eqs = [(Vector::new(vec![1.0]), 0.0)];
        assert!(convex_hull_membership(&points, &eqs).unwrap().is_infeasible());
    }

    #[test]
    fn hull_membership_interior_point_of_a_triangle() {
        // The origin is the barycenter of {(1,0), (0,1), (-1,-1)}.
        let points = [
            Vector::new(vec![1.0, 0.0]),
            Vector::new(vec![0.0, 1.0]),
            Vector::new(vec![-1.0, -1.0]),
        ];
        let eqs = [
            (Vector::new(vec![1.0, 0.0]), 0.0),
            (Vector::new(vec![0.0, 1.0]), 0.0),
        ];
        let out = convex_hull_membership(&points, &eqs).unwrap();
        let (_, lambda) = out.optimal().expect("feasible");
        for l in lambda {
            assert!((l - 1.0 / 3.0).abs() < 1e-9, "lambda {lambda:?}");
        }
    }

    #[test]
    fn deterministic_resolves() {
        let lp = LPProblem::minimize(vec![1.0, -2.0, 0.5])
            .with_leq(vec![1.0, 1.0, 1.0], 4.0)
            .with_leq(vec![-1.0, 2.0, 0.0], 3.0)
            .with_nonnegative_vars();
        let a = solve(&lp).unwrap();
        let b = solve(&lp).unwrap();
        let (va, wa) = a.optimal().unwrap();
        let (vb, wb) = b.optimal().unwrap();
        assert_eq!(va.to_bits(), vb.to_bits());
        assert_eq!(
            wa.iter().map(|x| x.to_bits()).collect::<Vec<_>>(),
            wb.iter().map(|x| x.to_bits()).collect::<Vec<_>>()
        );
    }

    // Brute-force oracle: enumerate candidate vertices as solutions of
    // n-subsets of active constraints and keep the feasible minimum.
    mod oracle {
        pub fn gaussian_solve(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Option<Vec<f64>> {
            let n = b.len();
            for col in 0..n {
                let piv = (col..n).max_by(|&i, &j| {
                    a[i][col].abs().partial_cmp(&a[j][col].abs()).unwrap()
                })?;
                if a[piv][col].abs() < 1e-9 {
                    return None;
                }
                a.swap(col, piv);
                b.swap(col, piv);
                let inv = 1.0 / a[col][col];
                for v in a[col].iter_mut() {
                    *v *= inv;
                }
                b[col] *= inv;
                let pivot_row = a[col].clone();
                for i in 0..n {
                    if i != col {
                        let f = a[i][col];
                        if f != 0.0 {
                            for (v, pv) in a[i].iter_mut().zip(&pivot_row) {
                                *v -= f * pv;
                            }
                            b[i] -= f * b[col];
                        }
                    }
                }
            }
            Some(b)
        }
    }

    /// All constraints of a box-bounded instance as `row . z <= rhs` pairs,
    /// with equalities split in two.
    fn constraint_rows(lp: &LPProblem) -> Vec<(Vec<f64>, f64)> {
        let n = lp.n_vars();
        let mut rows = Vec::new();
        for (r, b) in &lp.ineq {
            rows.push((r.clone(), *b));
        }
        for (r, b) in &lp.eq {
            rows.push((r.clone(), *b));
            rows.push((r.iter().map(|x| -x).collect(), -b));
        }
        for j in 0..n {
            let bound = lp.bound(j);
            if let Some(hi) = bound.upper {
                let mut r = vec![0.0; n];
                r[j] = 1.0;
                rows.push((r, hi));
            }
            if let Some(lo) = bound.lower {
                let mut r = vec![0.0; n];
                r[j] = -1.0;
                rows.push((r, -lo));
            }
        }
        rows
    }

    fn vertex_enumeration_min(lp: &LPProblem) -> Option<f64> {
        let n = lp.n_vars();
        let rows = constraint_rows(lp);
        let idx: Vec<usize> = (0..rows.len()).collect();
        let mut best: Option<f64> = None;
        let mut chosen = vec![0usize; n];
        fn rec(
            rows: &[(Vec<f64>, f64)],
            idx: &[usize],
            start: usize,
            depth: usize,
            chosen: &mut [usize],
            lp: &LPProblem,
            best: &mut Option<f64>,
        ) {
            let n = lp.n_vars();
            if depth == n {
                let a: Vec<Vec<f64>> = chosen.iter().map(|&i| rows[i].0.clone()).collect();
                let b: Vec<f64> = chosen.iter().map(|&i| rows[i].1).collect();
                if let Some(z) = oracle::gaussian_solve(a, b) {
                    let feasible = rows
                        .iter()
                        .all(|(r, rhs)| super::dot(r, &z) <= rhs + 1e-7);
                    if feasible {
                        let v = super::dot(&lp.objective, &z);
                        *best = Some(best.map_or(v, |b: f64| b.min(v)));
                    }
                }
                return;
            }
            for i in start..idx.len() {
                chosen[depth] = idx[i];
                rec(rows, idx, i + 1, depth + 1, chosen, lp, best);
            }
        }
        rec(&rows, &idx, 0, 0, &mut chosen, lp, &mut best);
        best
    }

    #[test]
    fn agrees_with_vertex_enumeration_on_random_boxes() {
        use rand::Rng;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2024);
        let mut checked_optimal = 0;
        for case in 0..40 {
            let n = rng.gen_range(2..=4);
            let n_rows = rng.gen_range(0..=5);
            let mut lp = LPProblem::minimize(
                (0..n).map(|_| rng.gen_range(-2.0..=2.0)).collect(),
            )
            .with_bounds(
                (0..n)
                    .map(|_| VarBound {
                        lower: Some(-5.0),
                        upper: Some(5.0),
                    })
                    .collect(),
            );
            for _ in 0..n_rows {
                let row: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..=1.0)).collect();
                let rhs = rng.gen_range(-3.0..=3.0);
                lp = lp.with_leq(row, rhs);
            }
            let simplex = solve(&lp).unwrap();
            let brute = vertex_enumeration_min(&lp);
            match (simplex, brute) {
                (LPOutcome::Optimal { value, .. }, Some(expected)) => {
                    assert!(
                        (value - expected).abs() < 1e-6,
                        "case {case}: simplex {value} vs oracle {expected}"
                    );
                    checked_optimal += 1;
                }
                (LPOutcome::Infeasible { .. }, None) => {}
                (got, want) => panic!("case {case}: simplex {got:?} vs oracle {want:?}"),
            }
        }
        assert!(checked_optimal >= 20, "too few optimal cases: {checked_optimal}");
    }
}
