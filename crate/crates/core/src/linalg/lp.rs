//! Exact two-phase simplex over `BigRational` with Bland's pivoting rule.
//!
//! Sized for the small programs this crate builds (a few dozen variables and
//! constraints). No floating point is involved anywhere.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    LessEq,
    GreaterEq,
    Equal,
}

#[derive(Clone, Debug)]
pub struct Constraint {
    pub coeffs: Vec<BigRational>,
    pub relation: Relation,
    pub rhs: BigRational,
}

/// Maximize `objective · x` subject to the constraints. Variables are free unless
/// marked nonnegative.
#[derive(Clone, Debug)]
pub struct LinearProgram {
    num_vars: usize,
    objective: Vec<BigRational>,
    constraints: Vec<Constraint>,
    nonnegative: Vec<bool>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum LpOutcome {
    Optimal {
        value: BigRational,
        point: Vec<BigRational>,
    },
    Infeasible,
    Unbounded,
}

pub fn rat(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

impl LinearProgram {
    pub fn new(num_vars: usize) -> Self {
        Self {
            num_vars,
            objective: vec![BigRational::zero(); num_vars],
            constraints: Vec::new(),
            nonnegative: vec![false; num_vars],
        }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn set_objective(&mut self, objective: Vec<BigRational>) {
        assert_eq!(objective.len(), self.num_vars);
        self.objective = objective;
    }

    pub fn set_nonnegative(&mut self, var: usize) {
        self.nonnegative[var] = true;
    }

    pub fn add_constraint(&mut self, coeffs: Vec<BigRational>, relation: Relation, rhs: BigRational) {
        assert_eq!(coeffs.len(), self.num_vars);
        self.constraints.push(Constraint {
            coeffs,
            relation,
            rhs,
        });
    }

    pub fn solve(&self) -> LpOutcome {
        // column layout: split variables, then slack/surplus, then artificials
        let mut var_cols: Vec<(usize, Option<usize>)> = Vec::with_capacity(self.num_vars);
        let mut ncols = 0;
        for v in 0..self.num_vars {
            if self.nonnegative[v] {
                var_cols.push((ncols, None));
                ncols += 1;
            } else {
                var_cols.push((ncols, Some(ncols + 1)));
                ncols += 2;
            }
        }
        let structural = ncols;

        let mut rows: Vec<Vec<BigRational>> = Vec::new();
        let mut rhs: Vec<BigRational> = Vec::new();
        let mut relations = Vec::new();
        for c in &self.constraints {
            let mut row = vec![BigRational::zero(); structural];
            for (v, coeff) in c.coeffs.iter().enumerate() {
                let (p, n) = var_cols[v];
                row[p] = coeff.clone();
                if let Some(n) = n {
                    row[n] = -coeff.clone();
                }
            }
            let (mut row, mut b, mut rel) = (row, c.rhs.clone(), c.relation);
            if b.is_negative() {
                row.iter_mut().for_each(|x| *x = -x.clone());
                b = -b;
                rel = match rel {
                    Relation::LessEq => Relation::GreaterEq,
                    Relation::GreaterEq => Relation::LessEq,
                    Relation::Equal => Relation::Equal,
                };
            }
            rows.push(std::mem::take(&mut row));
            rhs.push(b);
            relations.push(rel);
        }

        let m = rows.len();
        let slack_count = relations
            .iter()
            .filter(|r| **r != Relation::Equal)
            .count();
        let artificial_count = relations
            .iter()
            .filter(|r| **r != Relation::LessEq)
            .count();
        let total = structural + slack_count + artificial_count;
        let first_artificial = structural + slack_count;

        let mut tableau: Vec<Vec<BigRational>> = Vec::with_capacity(m);
        let mut basis = Vec::with_capacity(m);
        let (mut next_slack, mut next_art) = (structural, first_artificial);
        for (i, row) in rows.into_iter().enumerate() {
            let mut full = row;
            full.resize(total + 1, BigRational::zero());
            full[total] = rhs[i].clone();
            match relations[i] {
                Relation::LessEq => {
                    full[next_slack] = BigRational::one();
                    basis.push(next_slack);
                    next_slack += 1;
                }
                Relation::GreaterEq => {
                    full[next_slack] = -BigRational::one();
                    next_slack += 1;
                    full[next_art] = BigRational::one();
                    basis.push(next_art);
                    next_art += 1;
                }
                Relation::Equal => {
                    full[next_art] = BigRational::one();
                    basis.push(next_art);
                    next_art += 1;
                }
            }
            tableau.push(full);
        }

        let mut tab = Tableau {
            rows: tableau,
            basis,
            width: total,
        };

        if artificial_count > 0 {
            let mut phase1 = vec![BigRational::zero(); total];
            for c in phase1.iter_mut().skip(first_artificial) {
                *c = -BigRational::one();
            }
            let allowed: Vec<bool> = vec![true; total];
            tab.optimize(&phase1, &allowed)
                .expect("phase one objective is bounded");
            if tab.objective_value(&phase1).is_negative() {
                return LpOutcome::Infeasible;
            }
            tab.drive_out_artificials(first_artificial);
        }

        let mut cost = vec![BigRational::zero(); total];
        for (v, obj) in self.objective.iter().enumerate() {
            let (p, n) = var_cols[v];
            cost[p] = obj.clone();
            if let Some(n) = n {
                cost[n] = -obj.clone();
            }
        }
        let allowed: Vec<bool> = (0..total).map(|j| j < first_artificial).collect();
        if tab.optimize(&cost, &allowed).is_err() {
            return LpOutcome::Unbounded;
        }

        let mut values = vec![BigRational::zero(); total];
        for (i, &b) in tab.basis.iter().enumerate() {
            values[b] = tab.rows[i][total].clone();
        }
        let point: Vec<BigRational> = var_cols
            .iter()
            .map(|&(p, n)| match n {
                Some(n) => &values[p] - &values[n],
                None => values[p].clone(),
            })
            .collect();
        let value = self
            .objective
            .iter()
            .zip(&point)
            .map(|(c, x)| c * x)
            .fold(BigRational::zero(), |a, b| a + b);
        LpOutcome::Optimal { value, point }
    }
}

struct Tableau {
    rows: Vec<Vec<BigRational>>,
    basis: Vec<usize>,
    width: usize,
}

#[derive(Debug)]
struct UnboundedDirection;

impl Tableau {
    fn objective_value(&self, cost: &[BigRational]) -> BigRational {
        self.basis
            .iter()
            .enumerate()
            .map(|(i, &b)| &cost[b] * &self.rows[i][self.width])
            .fold(BigRational::zero(), |a, b| a + b)
    }

    fn optimize(&mut self, cost: &[BigRational], allowed: &[bool]) -> Result<(), UnboundedDirection> {
        loop {
            let entering = (0..self.width).find(|&j| {
                allowed[j] && !self.basis.contains(&j) && self.reduced_cost(cost, j).is_positive()
            });
            let Some(j) = entering else {
                return Ok(());
            };
            let mut leave: Option<(usize, BigRational)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][j];
                if !a.is_positive() {
                    continue;
                }
                let ratio = &self.rows[i][self.width] / a;
                let better = match &leave {
                    None => true,
                    Some((k, best)) => {
                        ratio < *best || (ratio == *best && self.basis[i] < self.basis[*k])
                    }
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            let Some((i, _)) = leave else {
                return Err(UnboundedDirection);
            };
            self.pivot(i, j);
        }
    }

    fn reduced_cost(&self, cost: &[BigRational], j: usize) -> BigRational {
        let z = self
            .basis
            .iter()
            .enumerate()
            .map(|(i, &b)| &cost[b] * &self.rows[i][j])
            .fold(BigRational::zero(), |a, b| a + b);
        &cost[j] - z
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let p = self.rows[r][c].clone();
        for x in self.rows[r].iter_mut() {
            *x = &*x / &p;
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x = &*x - &f * y;
                }
            }
        }
        self.basis[r] = c;
    }

    /// After phase one, swaps zero-valued artificial variables out of the basis and drops
    /// rows that turn out to be redundant.
    fn drive_out_artificials(&mut self, first_artificial: usize) {
        let mut i = 0;
        while i < self.rows.len() {
            if self.basis[i] >= first_artificial {
                match (0..first_artificial).find(|&j| !self.rows[i][j].is_zero()) {
                    Some(j) => self.pivot(i, j),
                    None => {
                        self.rows.remove(i);
                        self.basis.remove(i);
                        continue;
                    }
                }
            }
            i += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn textbook_maximum() {
        // max 3x + 5y, x <= 4, 2y <= 12, 3x + 2y <= 18, x,y >= 0 -> 36 at (2,6)
        let mut lp = LinearProgram::new(2);
        lp.set_objective(vec![rat(3), rat(5)]);
        lp.set_nonnegative(0);
        lp.set_nonnegative(1);
        lp.add_constraint(vec![rat(1), rat(0)], Relation::LessEq, rat(4));
        lp.add_constraint(vec![rat(0), rat(2)], Relation::LessEq, rat(12));
        lp.add_constraint(vec![rat(3), rat(2)], Relation::LessEq, rat(18));
        assert_eq!(
            lp.solve(),
            LpOutcome::Optimal {
                value: rat(36),
                point: vec![rat(2), rat(6)]
            }
        );
    }

    #[test]
    fn infeasible_and_unbounded() {
        let mut lp = LinearProgram::new(1);
        lp.add_constraint(vec![rat(1)], Relation::GreaterEq, rat(2));
        lp.add_constraint(vec![rat(1)], Relation::LessEq, rat(1));
        assert_eq!(lp.solve(), LpOutcome::Infeasible);

        let mut lp = LinearProgram::new(1);
        lp.set_objective(vec![rat(1)]);
        lp.add_constraint(vec![rat(1)], Relation::GreaterEq, rat(0));
        assert_eq!(lp.solve(), LpOutcome::Unbounded);
    }

    #[test]
    fn free_variables_and_equalities() {
        // min x + y (max -x - y) with x - y = 3, y >= -5 -> x = -2, y = -5, value 7
        let mut lp = LinearProgram::new(2);
        lp.set_objective(vec![rat(-1), rat(-1)]);
        lp.add_constraint(vec![rat(1), rat(-1)], Relation::Equal, rat(3));
        lp.add_constraint(vec![rat(0), rat(1)], Relation::GreaterEq, rat(-5));
        match lp.solve() {
            LpOutcome::Optimal { value, point } => {
                assert_eq!(value, rat(7));
                assert_eq!(point, vec![rat(-2), rat(-5)]);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn redundant_equalities() {
        let mut lp = LinearProgram::new(2);
        lp.set_objective(vec![rat(1), rat(0)]);
        lp.add_constraint(vec![rat(1), rat(1)], Relation::Equal, rat(2));
        lp.add_constraint(vec![rat(2), rat(2)], Relation::Equal, rat(4));
        lp.add_constraint(vec![rat(1), rat(0)], Relation::LessEq, rat(5));
        match lp.solve() {
            LpOutcome::Optimal { value, .. } => assert_eq!(value, rat(5)),
            other => panic!("unexpected {other:?}"),
        }
    }
}
