//! Exact rational linear programming: dense two-phase tableau simplex with
//! Bland's anti-cycling rule.

use num_traits::{Signed, Zero};

use crate::rational::Rational;

type SparseRow = Vec<(usize, Rational)>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

/// `Σ coeffs · x  (relation)  rhs`, with sparse coefficients.
#[derive(Clone, Debug)]
pub struct Constraint {
    pub coeffs: Vec<(usize, Rational)>,
    pub relation: Relation,
    pub rhs: Rational,
}

/// Maximize `objective · x` subject to `constraints` and `x ≥ 0`.
#[derive(Clone, Debug)]
pub struct LinearProgram {
    pub num_vars: usize,
    pub objective: Vec<Rational>,
    pub constraints: Vec<Constraint>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal { value: Rational, x: Vec<Rational> },
    Infeasible,
    Unbounded,
}

impl LpOutcome {
    pub fn value(&self) -> Option<&Rational> {
        match self {
            LpOutcome::Optimal { value, .. } => Some(value),
            _ => None,
        }
    }
}

struct Tableau {
    rows: Vec<Vec<Rational>>,
    obj: Vec<Rational>,
    basis: Vec<usize>,
    /// Columns allowed to enter the basis.
    allowed: Vec<bool>,
}

enum Step {
    Optimal,
    Unbounded,
}

impl Tableau {
    fn width(&self) -> usize {
        self.obj.len() - 1
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let piv = self.rows[r][c].clone();
        for x in self.rows[r].iter_mut() {
            if !x.is_zero() {
                *x /= &piv;
            }
        }
        let prow = std::mem::take(&mut self.rows[r]);
        let nz: Vec<usize> = (0..prow.len()).filter(|&j| !prow[j].is_zero()).collect();
        let eliminate = |row: &mut Vec<Rational>| {
            let f = row[c].clone();
            if f.is_zero() {
                return;
            }
            for &j in &nz {
                let delta = &f * &prow[j];
                row[j] -= delta;
            }
        };
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i != r {
                eliminate(row);
            }
        }
        eliminate(&mut self.obj);
        self.rows[r] = prow;
        self.basis[r] = c;
    }

    fn run(&mut self) -> Step {
        loop {
            let w = self.width();
            let Some(c) = (0..w).find(|&j| self.allowed[j] && self.obj[j].is_negative()) else {
                return Step::Optimal;
            };
            let mut leave: Option<(usize, Rational)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if !row[c].is_positive() {
                    continue;
                }
                let ratio = &row[w] / &row[c];
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => {
                        ratio < *lr || (ratio == *lr && self.basis[i] < self.basis[*li])
                    }
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            match leave {
                None => return Step::Unbounded,
                Some((r, _)) => self.pivot(r, c),
            }
        }
    }
}

impl LinearProgram {
    pub fn maximize(&self) -> LpOutcome {
        let n = self.num_vars;
        let m = self.constraints.len();
        // Normalize to nonnegative right-hand sides.
        let rows: Vec<(SparseRow, Relation, Rational)> = self
            .constraints
            .iter()
            .map(|c| {
                if c.rhs.is_negative() {
                    let rel = match c.relation {
                        Relation::Le => Relation::Ge,
                        Relation::Ge => Relation::Le,
                        Relation::Eq => Relation::Eq,
                    };
                    let coeffs = c.coeffs.iter().map(|(j, a)| (*j, -a)).collect();
                    (coeffs, rel, -&c.rhs)
                } else {
                    (c.coeffs.clone(), c.relation, c.rhs.clone())
                }
            })
            .collect();
        let n_slack = rows.iter().filter(|r| r.1 != Relation::Eq).count();
        let n_art = rows.iter().filter(|r| r.1 != Relation::Le).count();
        let width = n + n_slack + n_art;
        let mut t = Tableau {
            rows: Vec::with_capacity(m),
            obj: vec![Rational::zero(); width + 1],
            basis: Vec::with_capacity(m),
            allowed: vec![true; width],
        };
        let (mut s, mut a) = (n, n + n_slack);
        for (coeffs, rel, rhs) in rows {
            let mut row = vec![Rational::zero(); width + 1];
            for (j, v) in coeffs {
                row[j] += v;
            }
            row[width] = rhs;
            match rel {
                Relation::Le => {
                    row[s] = Rational::from_integer(1.into());
                    t.basis.push(s);
                    s += 1;
                }
                Relation::Ge => {
                    row[s] = Rational::from_integer((-1).into());
                    row[a] = Rational::from_integer(1.into());
                    t.basis.push(a);
                    s += 1;
                    a += 1;
                }
                Relation::Eq => {
                    row[a] = Rational::from_integer(1.into());
                    t.basis.push(a);
                    a += 1;
                }
            }
            t.rows.push(row);
        }
        let is_art = |j: usize| j >= n + n_slack && j < width;

        if n_art > 0 {
            // Phase 1: maximize −Σ artificials.
            for j in n + n_slack..width {
                t.obj[j] = Rational::from_integer(1.into());
            }
            for i in 0..m {
                if is_art(t.basis[i]) {
                    let row = t.rows[i].clone();
                    for (o, v) in t.obj.iter_mut().zip(&row) {
                        *o -= v;
                    }
                }
            }
            t.run();
            if t.obj[width].is_negative() {
                return LpOutcome::Infeasible;
            }
            // Drive zero-level artificials out of the basis; drop redundant rows.
            let mut i = 0;
            while i < t.rows.len() {
                if is_art(t.basis[i]) {
                    match (0..n + n_slack).find(|&j| !t.rows[i][j].is_zero()) {
                        Some(j) => {
                            t.pivot(i, j);
                            i += 1;
                        }
                        None => {
                            t.rows.remove(i);
                            t.basis.remove(i);
                        }
                    }
                } else {
                    i += 1;
                }
            }
            for j in n + n_slack..width {
                t.allowed[j] = false;
            }
        }

        // Phase 2.
        for o in t.obj.iter_mut() {
            *o = Rational::zero();
        }
        for (j, c) in self.objective.iter().enumerate() {
            t.obj[j] = -c;
        }
        for i in 0..t.rows.len() {
            let b = t.basis[i];
            let f = t.obj[b].clone();
            if !f.is_zero() {
                let row = t.rows[i].clone();
                for (o, v) in t.obj.iter_mut().zip(&row) {
                    *o -= &f * v;
                }
            }
        }
        match t.run() {
            Step::Unbounded => LpOutcome::Unbounded,
            Step::Optimal => {
                let mut x = vec![Rational::zero(); n];
                for (i, &b) in t.basis.iter().enumerate() {
                    if b < n {
                        x[b] = t.rows[i][width].clone();
                    }
                }
                LpOutcome::Optimal {
                    value: t.obj[width].clone(),
                    x,
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    fn c(coeffs: &[(usize, i64)], relation: Relation, rhs: i64) -> Constraint {
        Constraint {
            coeffs: coeffs.iter().map(|&(j, a)| (j, int(a))).collect(),
            relation,
            rhs: int(rhs),
        }
    }

    #[test]
    fn textbook_maximum() {
        // max 3x + 5y  s.t. x ≤ 4, 2y ≤ 12, 3x + 2y ≤ 18  →  36 at (2, 6)
        let lp = LinearProgram {
            num_vars: 2,
            objective: vec![int(3), int(5)],
            constraints: vec![
                c(&[(0, 1)], Relation::Le, 4),
                c(&[(1, 2)], Relation::Le, 12),
                c(&[(0, 3), (1, 2)], Relation::Le, 18),
            ],
        };
        assert_eq!(
            lp.maximize(),
            LpOutcome::Optimal {
                value: int(36),
                x: vec![int(2), int(6)]
            }
        );
    }

    #[test]
    fn equality_and_ge_rows() {
        // max x + y  s.t. x + y = 1, x ≥ 1/3 (as 3x ≥ 1), y ≤ 1/2 (as 2y ≤ 1)
        let lp = LinearProgram {
            num_vars: 2,
            objective: vec![int(0), int(1)],
            constraints: vec![
                c(&[(0, 1), (1, 1)], Relation::Eq, 1),
                c(&[(0, 3)], Relation::Ge, 1),
                c(&[(1, 2)], Relation::Le, 1),
            ],
        };
        assert_eq!(lp.maximize().value(), Some(&frac(1, 2)));
    }

    #[test]
    fn infeasible_and_unbounded() {
        let lp = LinearProgram {
            num_vars: 1,
            objective: vec![int(1)],
            constraints: vec![c(&[(0, 1)], Relation::Ge, 2), c(&[(0, 1)], Relation::Le, 1)],
        };
        assert_eq!(lp.maximize(), LpOutcome::Infeasible);
        let lp = LinearProgram {
            num_vars: 2,
            objective: vec![int(1), int(0)],
            constraints: vec![c(&[(1, 1)], Relation::Le, 1)],
        };
        assert_eq!(lp.maximize(), LpOutcome::Unbounded);
    }

    #[test]
    fn redundant_equalities() {
        // x + y = 1 stated twice, plus a negative right-hand side row.
        let lp = LinearProgram {
            num_vars: 2,
            objective: vec![int(2), int(1)],
            constraints: vec![
                c(&[(0, 1), (1, 1)], Relation::Eq, 1),
                c(&[(0, 1), (1, 1)], Relation::Eq, 1),
                c(&[(0, -1)], Relation::Ge, -1),
            ],
        };
        assert_eq!(lp.maximize().value(), Some(&int(2)));
    }
}
