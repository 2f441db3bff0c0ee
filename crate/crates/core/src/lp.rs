//! Exact rational linear programming.
//!
//! Problems have the form `minimize c·x subject to Ax ≥ b, x ≥ 0` and are
//! solved by a dense tableau simplex with Bland's rule. When `c ≥ 0` the dual
//! `maximize b·y subject to Aᵀy ≤ c, y ≥ 0` is feasible at the origin, so it is
//! solved in a single phase and the primal optimum is read off its final
//! tableau. Otherwise the primal is solved with two phases.
//!
//! In the single-phase case a floating-point run first proposes an optimal
//! basis. The exact tableau is pivoted straight to that basis and accepted
//! only if it is feasible and optimal in rational arithmetic; otherwise Bland's
//! rule continues exactly from wherever the exact tableau stands.

use std::fmt;

use crate::rational::{Rational, DEFAULT_BIT_ALARM};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpProblem {
    pub objective: Vec<Rational>,
    pub constraints: Vec<Vec<Rational>>,
    pub rhs: Vec<Rational>,
}

impl LpProblem {
    /// Panics when the dimensions are inconsistent.
    pub fn new(objective: Vec<Rational>, constraints: Vec<Vec<Rational>>, rhs: Vec<Rational>) -> Self {
        assert_eq!(constraints.len(), rhs.len(), "one right-hand side per constraint");
        for row in &constraints {
            assert_eq!(row.len(), objective.len(), "constraint width must match the objective");
        }
        LpProblem { objective, constraints, rhs }
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn num_constraints(&self) -> usize {
        self.constraints.len()
    }

    /// The same problem with every entry multiplied by `s > 0`.
    pub fn scaled(&self, s: &Rational) -> Self {
        let mul = |v: &Vec<Rational>| v.iter().map(|x| x * s).collect::<Vec<_>>();
        LpProblem {
            objective: mul(&self.objective),
            constraints: self.constraints.iter().map(mul).collect(),
            rhs: mul(&self.rhs),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

impl fmt::Display for LpStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LpStatus::Optimal => "optimal",
            LpStatus::Infeasible => "infeasible",
            LpStatus::Unbounded => "unbounded",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpSolution {
    pub status: LpStatus,
    /// `c·x` at the optimum; `None` unless optimal.
    pub optimum: Option<Rational>,
    /// Primal optimum `x`.
    pub witness: Vec<Rational>,
    /// Dual optimum `y` with `Aᵀy ≤ c`, `y ≥ 0` and `b·y = c·x`.
    pub dual: Vec<Rational>,
    pub pivots: usize,
    /// Largest numerator or denominator bit length seen in the final tableau.
    pub max_bits: u64,
    pub bit_alarm: bool,
}

impl LpSolution {
    fn without_optimum(status: LpStatus, pivots: usize) -> Self {
        LpSolution { status, optimum: None, witness: vec![], dual: vec![], pivots, max_bits: 0, bit_alarm: false }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Strategy {
    /// Dual single phase when `c ≥ 0`, two-phase primal otherwise.
    #[default]
    Auto,
    /// As `Auto` but without the floating-point basis guess.
    ExactOnly,
    Primal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LpOptions {
    pub strategy: Strategy,
    pub bit_alarm: u64,
}

impl Default for LpOptions {
    fn default() -> Self {
        LpOptions { strategy: Strategy::Auto, bit_alarm: DEFAULT_BIT_ALARM }
    }
}

pub fn solve(problem: &LpProblem) -> LpSolution {
    solve_with(problem, LpOptions::default())
}

pub fn solve_with(problem: &LpProblem, options: LpOptions) -> LpSolution {
    let nonneg_costs = problem.objective.iter().all(|c| !c.is_negative());
    let mut sol = if options.strategy != Strategy::Primal && nonneg_costs {
        solve_via_dual(problem, options.strategy == Strategy::Auto)
    } else {
        solve_primal(problem)
    };
    sol.bit_alarm = sol.max_bits > options.bit_alarm;
    sol
}

/// Dense simplex tableau for `maximize` problems in equality form.
struct Tableau {
    rows: Vec<Vec<Rational>>,
    /// Reduced costs `c_B B⁻¹ A_j - c_j`; the last entry is the objective value.
    obj: Vec<Rational>,
    basis: Vec<usize>,
    width: usize,
    pivots: usize,
}

enum Outcome {
    Optimal,
    Unbounded,
}

impl Tableau {
    fn rhs(&self, i: usize) -> &Rational {
        &self.rows[i][self.width]
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let inv = self.rows[r][c].recip();
        let row = &mut self.rows[r];
        for v in row.iter_mut() {
            if !v.is_zero() {
                *v = &*v * &inv;
            }
        }
        let support: Vec<usize> = (0..=self.width).filter(|&j| !self.rows[r][j].is_zero()).collect();
        let pivot_row = self.rows[r].clone();
        let eliminate = |target: &mut Vec<Rational>| {
            let f = target[c].clone();
            if f.is_zero() {
                return;
            }
            for &j in &support {
                target[j] -= &(&f * &pivot_row[j]);
            }
        };
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i != r {
                eliminate(row);
            }
        }
        if !self.obj.is_empty() {
            eliminate(&mut self.obj);
        }
        self.basis[r] = c;
        self.pivots += 1;
    }

    /// Bland's rule over the columns allowed to enter.
    fn run(&mut self, allowed: &dyn Fn(usize) -> bool) -> Outcome {
        loop {
            let entering = (0..self.width).find(|&j| allowed(j) && self.obj[j].is_negative());
            let Some(c) = entering else { return Outcome::Optimal };
            let mut best: Option<(usize, Rational)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][c];
                if !a.is_positive() {
                    continue;
                }
                let ratio = self.rhs(i) / a;
                let better = match &best {
                    None => true,
                    Some((bi, br)) => ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi]),
                };
                if better {
                    best = Some((i, ratio));
                }
            }
            match best {
                None => return Outcome::Unbounded,
                Some((r, _)) => self.pivot(r, c),
            }
        }
    }

    fn set_objective(&mut self, costs: &[Rational]) {
        let mut obj: Vec<Rational> = costs.iter().map(|c| -c).collect();
        obj.push(Rational::zero());
        for (i, &b) in self.basis.iter().enumerate() {
            let cb = &costs[b];
            if cb.is_zero() {
                continue;
            }
            for (j, v) in self.rows[i].iter().enumerate() {
                if !v.is_zero() {
                    obj[j] += &(cb * v);
                }
            }
        }
        self.obj = obj;
    }

    fn max_bits(&self) -> u64 {
        self.rows.iter().chain(std::iter::once(&self.obj)).flatten().map(|v| v.bits()).max().unwrap_or(0)
    }
}

/// Floating-point Dantzig simplex on the same dual tableau; returns the final
/// basis, or `None` if it does not settle.
fn float_basis(rows: &[Vec<Rational>], costs: &[Rational], basis: &[usize], width: usize) -> Option<Vec<usize>> {
    const EPS: f64 = 1e-9;
    let mut t: Vec<Vec<f64>> = rows.iter().map(|r| r.iter().map(Rational::to_f64).collect()).collect();
    let mut obj: Vec<f64> = costs.iter().map(|c| -c.to_f64()).collect();
    obj.push(0.0);
    let mut basis = basis.to_vec();
    for (i, &b) in basis.iter().enumerate() {
        let cb = costs[b].to_f64();
        for j in 0..=width {
            obj[j] += cb * t[i][j];
        }
    }
    for _ in 0..50 * (width + rows.len()) {
        let mut c = None;
        let mut most = -EPS;
        for (j, &v) in obj[..width].iter().enumerate() {
            if v < most {
                most = v;
                c = Some(j);
            }
        }
        let Some(c) = c else { return Some(basis) };
        let mut r = None;
        let mut best = f64::INFINITY;
        for (i, row) in t.iter().enumerate() {
            if row[c] > EPS {
                let ratio = row[width] / row[c];
                if ratio < best {
                    best = ratio;
                    r = Some(i);
                }
            }
        }
        let r = r?;
        let inv = 1.0 / t[r][c];
        t[r].iter_mut().for_each(|v| *v *= inv);
        let pr = t[r].clone();
        for (i, row) in t.iter_mut().enumerate() {
            let f = row[c];
            if i != r && f != 0.0 {
                row.iter_mut().zip(&pr).for_each(|(v, p)| *v -= f * p);
            }
        }
        let f = obj[c];
        obj.iter_mut().zip(&pr).for_each(|(v, p)| *v -= f * p);
        basis[r] = c;
    }
    None
}

impl Tableau {
    /// Pivots each column of `target` into the basis where possible.
    fn move_to_basis(&mut self, target: &[usize]) {
        for &c in target {
            if self.basis.contains(&c) {
                continue;
            }
            let row = (0..self.rows.len())
                .filter(|&i| !target.contains(&self.basis[i]) && !self.rows[i][c].is_zero())
                .max_by_key(|&i| self.rows[i][c].is_positive());
            if let Some(r) = row {
                self.pivot(r, c);
            }
        }
    }

    fn is_primal_feasible(&self) -> bool {
        (0..self.rows.len()).all(|i| !self.rhs(i).is_negative())
    }
}

fn solve_via_dual(p: &LpProblem, guess: bool) -> LpSolution {
    let (n, m) = (p.num_vars(), p.num_constraints());
    // maximize b·y  s.t.  Aᵀy + w = c; columns y_0..y_m then w_0..w_n.
    let width = m + n;
    let rows: Vec<Vec<Rational>> = (0..n)
        .map(|j| {
            let mut row = vec![Rational::zero(); width + 1];
            for i in 0..m {
                row[i] = p.constraints[i][j].clone();
            }
            row[m + j] = Rational::one();
            row[width] = p.objective[j].clone();
            row
        })
        .collect();
    let mut costs: Vec<Rational> = p.rhs.clone();
    costs.extend(std::iter::repeat(Rational::zero()).take(n));
    let start: Vec<usize> = (m..m + n).collect();
    let target = if guess { float_basis(&rows, &costs, &start, width) } else { None };
    let mut tab = Tableau { rows: rows.clone(), obj: vec![], basis: start.clone(), width, pivots: 0 };
    if let Some(target) = target {
        tab.move_to_basis(&target);
        if !tab.is_primal_feasible() {
            tab = Tableau { rows, obj: vec![], basis: start, width, pivots: 0 };
        }
    }
    tab.set_objective(&costs);
    match tab.run(&|_| true) {
        Outcome::Unbounded => LpSolution::without_optimum(LpStatus::Infeasible, tab.pivots),
        Outcome::Optimal => {
            let mut y = vec![Rational::zero(); m];
            for (i, &b) in tab.basis.iter().enumerate() {
                if b < m {
                    y[b] = tab.rhs(i).clone();
                }
            }
            let x: Vec<Rational> = (0..n).map(|j| tab.obj[m + j].clone()).collect();
            let optimum = tab.obj[width].clone();
            LpSolution {
                status: LpStatus::Optimal,
                optimum: Some(optimum),
                witness: x,
                dual: y,
                pivots: tab.pivots,
                max_bits: tab.max_bits(),
                bit_alarm: false,
            }
        }
    }
}

fn solve_primal(p: &LpProblem) -> LpSolution {
    let (n, m) = (p.num_vars(), p.num_constraints());
    // Columns: x (n), surplus s (m), artificials (one per row with b > 0).
    let needs_art: Vec<bool> = p.rhs.iter().map(|b| b.is_positive()).collect();
    let art_cols: Vec<Option<usize>> = {
        let mut next = n + m;
        needs_art
            .iter()
            .map(|&a| {
                if a {
                    next += 1;
                    Some(next - 1)
                } else {
                    None
                }
            })
            .collect()
    };
    let width = n + m + needs_art.iter().filter(|&&a| a).count();
    let sign: Vec<Rational> = needs_art.iter().map(|&a| if a { Rational::one() } else { -Rational::one() }).collect();
    let mut rows = Vec::with_capacity(m);
    let mut basis = Vec::with_capacity(m);
    for i in 0..m {
        let mut row = vec![Rational::zero(); width + 1];
        for j in 0..n {
            row[j] = &sign[i] * &p.constraints[i][j];
        }
        row[n + i] = -&sign[i];
        row[width] = &sign[i] * &p.rhs[i];
        match art_cols[i] {
            Some(c) => {
                row[c] = Rational::one();
                basis.push(c);
            }
            None => basis.push(n + i),
        }
        rows.push(row);
    }
    let mut tab = Tableau { rows, obj: vec![], basis, width, pivots: 0 };
    let is_art = |j: usize| j >= n + m;

    if art_cols.iter().any(|c| c.is_some()) {
        let costs: Vec<Rational> = (0..width).map(|j| if is_art(j) { -Rational::one() } else { Rational::zero() }).collect();
        tab.set_objective(&costs);
        tab.run(&|_| true);
        if tab.obj[width].is_negative() {
            return LpSolution::without_optimum(LpStatus::Infeasible, tab.pivots);
        }
        // Drive artificials out of the basis; drop rows that are redundant.
        let mut i = 0;
        while i < tab.rows.len() {
            if is_art(tab.basis[i]) {
                match (0..n + m).find(|&j| !tab.rows[i][j].is_zero()) {
                    Some(j) => tab.pivot(i, j),
                    None => {
                        tab.rows.remove(i);
                        tab.basis.remove(i);
                        continue;
                    }
                }
            }
            i += 1;
        }
    }

    let mut costs: Vec<Rational> = p.objective.iter().map(|c| -c).collect();
    costs.extend(std::iter::repeat(Rational::zero()).take(width - n));
    tab.set_objective(&costs);
    if let Outcome::Unbounded = tab.run(&|j| !is_art(j)) {
        return LpSolution::without_optimum(LpStatus::Unbounded, tab.pivots);
    }
    let mut x = vec![Rational::zero(); n];
    for (i, &b) in tab.basis.iter().enumerate() {
        if b < n {
            x[b] = tab.rhs(i).clone();
        }
    }
    let optimum: Rational = x.iter().zip(&p.objective).map(|(a, b)| a * b).sum();
    // The reduced cost of surplus column s_i is the dual value y_i.
    let y: Vec<Rational> = (0..m).map(|i| tab.obj[n + i].clone()).collect();
    LpSolution {
        status: LpStatus::Optimal,
        optimum: Some(optimum),
        witness: x,
        dual: y,
        pivots: tab.pivots,
        max_bits: tab.max_bits(),
        bit_alarm: false,
    }
}

/// Reason a claimed optimum fails the certificate check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CertificateViolation {
    NotOptimal,
    WrongDimension,
    NegativePrimal(usize),
    PrimalConstraint(usize),
    NegativeDual(usize),
    DualConstraint(usize),
    ObjectiveMismatch,
    DualityGap,
}

/// Checks primal feasibility, dual feasibility and equal objective values,
/// using only the problem data and the claimed solution.
pub fn verify_certificate(p: &LpProblem, s: &LpSolution) -> Result<(), CertificateViolation> {
    use CertificateViolation::*;
    if s.status != LpStatus::Optimal {
        return Err(NotOptimal);
    }
    let Some(optimum) = &s.optimum else { return Err(NotOptimal) };
    if s.witness.len() != p.num_vars() || s.dual.len() != p.num_constraints() {
        return Err(WrongDimension);
    }
    if let Some(j) = s.witness.iter().position(|x| x.is_negative()) {
        return Err(NegativePrimal(j));
    }
    for (i, row) in p.constraints.iter().enumerate() {
        let lhs: Rational = row.iter().zip(&s.witness).map(|(a, x)| a * x).sum();
        if lhs < p.rhs[i] {
            return Err(PrimalConstraint(i));
        }
    }
    if let Some(i) = s.dual.iter().position(|y| y.is_negative()) {
        return Err(NegativeDual(i));
    }
    for j in 0..p.num_vars() {
        let lhs: Rational = p.constraints.iter().zip(&s.dual).map(|(row, y)| &row[j] * y).sum();
        if lhs > p.objective[j] {
            return Err(DualConstraint(j));
        }
    }
    let primal: Rational = p.objective.iter().zip(&s.witness).map(|(c, x)| c * x).sum();
    if &primal != optimum {
        return Err(ObjectiveMismatch);
    }
    let dual: Rational = p.rhs.iter().zip(&s.dual).map(|(b, y)| b * y).sum();
    if dual != primal {
        return Err(DualityGap);
    }
    Ok(())
}
