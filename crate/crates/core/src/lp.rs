//! Exact rational linear programming: dense two-phase tableau simplex with
//! Bland's rule.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{dot, Rat, RatVector};

/// Hard ceiling on pivots per solve. Bland's rule terminates, so hitting this
/// indicates a bug rather than cycling.
pub const MAX_PIVOTS: usize = 200_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Minimize,
    Maximize,
}

/// Optimize `<objective, x>` over `x` free subject to `<a, x> <= b` and `<a, x> = b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearProgram {
    pub dim: usize,
    pub constraints: Vec<(RatVector, Rat)>,
    pub equalities: Vec<(RatVector, Rat)>,
    pub objective: RatVector,
    pub sense: Sense,
}

impl LinearProgram {
    pub fn new(dim: usize, sense: Sense, objective: RatVector) -> Self {
        LinearProgram { dim, constraints: Vec::new(), equalities: Vec::new(), objective, sense }
    }

    pub fn le(mut self, a: RatVector, b: Rat) -> Self {
        self.constraints.push((a, b));
        self
    }

    pub fn eq(mut self, a: RatVector, b: Rat) -> Self {
        self.equalities.push((a, b));
        self
    }

    /// Inequality rows as solved: the constraints followed by each equality as
    /// the pair `<a,x> <= b`, `<-a,x> <= -b`. Farkas witnesses index into this list.
    pub fn inequality_rows(&self) -> Vec<(RatVector, Rat)> {
        let mut rows = self.constraints.clone();
        for (a, b) in &self.equalities {
            rows.push((a.clone(), b.clone()));
            rows.push((a.iter().map(|x| -x).collect(), -b));
        }
        rows
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpStatus {
    Optimal { value: Rat, point: RatVector },
    /// `y >= 0` with `y^T A = 0` and `y^T b < 0` over [`LinearProgram::inequality_rows`].
    Infeasible { farkas: RatVector },
    Unbounded,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpSolution {
    pub status: LpStatus,
    pub pivots: usize,
}

struct Tableau {
    rows: Vec<RatVector>,
    basis: Vec<usize>,
    width: usize,
    pivots: usize,
}

enum Phase {
    Optimal,
    Unbounded,
}

impl Tableau {
    fn rhs(&self, i: usize) -> &Rat {
        &self.rows[i][self.width]
    }

    fn pivot(&mut self, r: usize, c: usize) -> Result<()> {
        self.pivots += 1;
        if self.pivots > MAX_PIVOTS {
            return Err(Error::PivotLimit(MAX_PIVOTS));
        }
        let inv = self.rows[r][c].recip();
        for x in self.rows[r].iter_mut() {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x -= &f * p;
                }
            }
        }
        self.basis[r] = c;
        Ok(())
    }

    /// Maximizes `cost` over the allowed columns.
    fn optimize(&mut self, cost: &[Rat], allowed: &[bool]) -> Result<Phase> {
        loop {
            let entering = (0..self.width).find(|&j| {
                if !allowed[j] || self.basis.contains(&j) {
                    return false;
                }
                let reduced = self
                    .rows
                    .iter()
                    .zip(&self.basis)
                    .fold(cost[j].clone(), |acc, (row, &b)| if row[j].is_zero() { acc } else { acc - &cost[b] * &row[j] });
                reduced.is_positive()
            });
            let Some(j) = entering else { return Ok(Phase::Optimal) };
            let mut best: Option<(usize, Rat)> = None;
            for i in 0..self.rows.len() {
                if !self.rows[i][j].is_positive() {
                    continue;
                }
                let ratio = self.rhs(i) / &self.rows[i][j];
                let better = match &best {
                    None => true,
                    Some((bi, br)) => ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi]),
                };
                if better {
                    best = Some((i, ratio));
                }
            }
            match best {
                Some((r, _)) => self.pivot(r, j)?,
                None => return Ok(Phase::Unbounded),
            }
        }
    }
}

pub fn solve(lp: &LinearProgram) -> Result<LpSolution> {
    let n = lp.dim;
    let rows = lp.inequality_rows();
    if lp.objective.len() != n || rows.iter().any(|(a, _)| a.len() != n) {
        return Err(Error::Dimension("LP data does not match its dimension".into()));
    }
    let m = rows.len();
    // columns: x+ (n), x- (n), slack (m), artificial (one per negative rhs)
    let negative: Vec<bool> = rows.iter().map(|(_, b)| b.is_negative()).collect();
    let n_art = negative.iter().filter(|&&x| x).count();
    let width = 2 * n + m + n_art;
    let art_start = 2 * n + m;

    let mut table = Vec::with_capacity(m);
    let mut basis = Vec::with_capacity(m);
    let mut initial = Vec::with_capacity(m);
    let mut art = art_start;
    for (i, (a, b)) in rows.iter().enumerate() {
        let sign = if negative[i] { -Rat::one() } else { Rat::one() };
        let mut row = vec![Rat::zero(); width + 1];
        for k in 0..n {
            row[k] = &sign * &a[k];
            row[n + k] = -&row[k];
        }
        row[2 * n + i] = sign.clone();
        row[width] = &sign * b;
        if negative[i] {
            row[art] = Rat::one();
            basis.push(art);
            initial.push(art);
            art += 1;
        } else {
            basis.push(2 * n + i);
            initial.push(2 * n + i);
        }
        table.push(row);
    }
    let mut t = Tableau { rows: table, basis, width, pivots: 0 };

    if n_art > 0 {
        let cost: Vec<Rat> = (0..width).map(|j| if j >= art_start { -Rat::one() } else { Rat::zero() }).collect();
        t.optimize(&cost, &vec![true; width])?;
        let value = t.rows.iter().zip(&t.basis).fold(Rat::zero(), |acc, (row, &b)| acc + &cost[b] * &row[width]);
        if value.is_negative() {
            // simplex multipliers from the columns of the starting basis
            let farkas: RatVector = (0..m)
                .map(|i| {
                    let col = initial[i];
                    let pi = t.rows.iter().zip(&t.basis).fold(Rat::zero(), |acc, (row, &b)| acc + &cost[b] * &row[col]);
                    if negative[i] {
                        -pi
                    } else {
                        pi
                    }
                })
                .collect();
            return Ok(LpSolution { status: LpStatus::Infeasible { farkas }, pivots: t.pivots });
        }
        // drive zero-level artificials out of the basis, dropping redundant rows
        let mut i = 0;
        while i < t.rows.len() {
            if t.basis[i] >= art_start {
                match (0..art_start).find(|&j| !t.rows[i][j].is_zero()) {
                    Some(j) => t.pivot(i, j)?,
                    None => {
                        t.rows.remove(i);
                        t.basis.remove(i);
                        continue;
                    }
                }
            }
            i += 1;
        }
    }

    let sign = match lp.sense {
        Sense::Maximize => Rat::one(),
        Sense::Minimize => -Rat::one(),
    };
    let mut cost = vec![Rat::zero(); width];
    for k in 0..n {
        cost[k] = &sign * &lp.objective[k];
        cost[n + k] = -&cost[k];
    }
    let allowed: Vec<bool> = (0..width).map(|j| j < art_start).collect();
    let status = match t.optimize(&cost, &allowed)? {
        Phase::Unbounded => LpStatus::Unbounded,
        Phase::Optimal => {
            let mut z = vec![Rat::zero(); width];
            for (row, &b) in t.rows.iter().zip(&t.basis) {
                z[b] = row[width].clone();
            }
            let point: RatVector = (0..n).map(|k| &z[k] - &z[n + k]).collect();
            LpStatus::Optimal { value: dot(&lp.objective, &point), point }
        }
    };
    Ok(LpSolution { status, pivots: t.pivots })
}

/// Some point satisfying every inequality and equality, or `None` if the system is empty.
pub fn feasible_point(dim: usize, constraints: &[(RatVector, Rat)], equalities: &[(RatVector, Rat)]) -> Result<Option<RatVector>> {
    let lp = LinearProgram {
        dim,
        constraints: constraints.to_vec(),
        equalities: equalities.to_vec(),
        objective: vec![Rat::zero(); dim],
        sense: Sense::Maximize,
    };
    match solve(&lp)?.status {
        LpStatus::Optimal { point, .. } => Ok(Some(point)),
        LpStatus::Infeasible { .. } => Ok(None),
        LpStatus::Unbounded => unreachable!("zero objective is bounded"),
    }
}

/// Checks a Farkas certificate against the rows it refers to.
pub fn is_farkas_certificate(rows: &[(RatVector, Rat)], y: &[Rat]) -> bool {
    if rows.len() != y.len() || y.iter().any(Signed::is_negative) {
        return false;
    }
    let n = rows.first().map_or(0, |(a, _)| a.len());
    let combo_zero = (0..n).all(|k| rows.iter().zip(y).fold(Rat::zero(), |acc, ((a, _), yi)| acc + yi * &a[k]).is_zero());
    let rhs = rows.iter().zip(y).fold(Rat::zero(), |acc, ((_, b), yi)| acc + yi * b);
    combo_zero && rhs.is_negative()
}
