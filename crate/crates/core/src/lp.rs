//! Exact simplex for box-bounded covering programs:
//!
//! minimize   c·p
//! subject to Σ_{j ∈ S_k} p_j ≥ h_k   for every row k
//!            0 ≤ p_j ≤ u_j
//!
//! Core polytopes have this shape, and `p = u` (everyone pays their bid) is
//! feasible whenever the allocation is efficient. Substituting `q = u - p`
//! turns every row into `Σ q_j ≤ Σ u_j - h_k` with a non-negative right-hand
//! side, so the all-slack basis is feasible and no phase one is needed.
//! Bland's rule keeps the pivoting finite under degeneracy.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoveringRow {
    /// Bitmask over variable positions.
    pub members: u64,
    pub bound: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LpSolution {
    pub value: Rational,
    pub point: Vec<Rational>,
}

pub fn minimize_covering(upper: &[Rational], rows: &[CoveringRow], cost: &[Rational]) -> Result<LpSolution> {
    let d = upper.len();
    if cost.len() != d {
        return Err(Error::Solver(format!("{} costs for {d} variables", cost.len())));
    }
    if d > 64 {
        return Err(Error::Capacity {
            what: "LP dimension",
            size: d,
            limit: 64,
        });
    }

    // Rows of the substituted system: covering rows first, then q_j <= u_j.
    let m = rows.len() + d;
    let width = d + m + 1;
    let mut tableau: Vec<Vec<Rational>> = Vec::with_capacity(m);
    for (k, row) in rows.iter().enumerate() {
        let mut line = vec![Rational::zero(); width];
        let mut rhs = -row.bound;
        for j in 0..d {
            if row.members >> j & 1 == 1 {
                line[j] = Rational::from_integer(1);
                rhs += upper[j];
            }
        }
        if rhs < Rational::zero() {
            return Err(Error::Solver(format!(
                "covering row {k} cannot be met even when every variable is at its upper bound"
            )));
        }
        line[d + k] = Rational::from_integer(1);
        line[width - 1] = rhs;
        tableau.push(line);
    }
    for j in 0..d {
        let mut line = vec![Rational::zero(); width];
        line[j] = Rational::from_integer(1);
        line[d + rows.len() + j] = Rational::from_integer(1);
        line[width - 1] = upper[j];
        tableau.push(line);
    }
    // Maximize c·q: reduced costs start at -c.
    let mut objective: Vec<Rational> = vec![Rational::zero(); width];
    for j in 0..d {
        objective[j] = -cost[j];
    }
    let mut basis: Vec<usize> = (d..d + m).collect();

    while let Some(entering) = (0..width - 1).find(|&j| objective[j] < Rational::zero()) {
        let mut leaving: Option<(usize, Rational)> = None;
        for (i, line) in tableau.iter().enumerate() {
            if line[entering] > Rational::zero() {
                let ratio = line[width - 1] / line[entering];
                let better = match &leaving {
                    None => true,
                    Some((best_row, best_ratio)) => {
                        ratio < *best_ratio || (ratio == *best_ratio && basis[i] < basis[*best_row])
                    }
                };
                if better {
                    leaving = Some((i, ratio));
                }
            }
        }
        // q is boxed, so the program is bounded and some row always blocks.
        let Some((pivot_row, _)) = leaving else {
            return Err(Error::Solver("unbounded covering program".into()));
        };
        pivot(&mut tableau, &mut objective, pivot_row, entering);
        basis[pivot_row] = entering;
    }

    let mut q = vec![Rational::zero(); d];
    for (i, &var) in basis.iter().enumerate() {
        if var < d {
            q[var] = tableau[i][width - 1];
        }
    }
    let point: Vec<Rational> = upper.iter().zip(&q).map(|(u, q)| u - q).collect();
    let value = cost
        .iter()
        .zip(&point)
        .fold(Rational::zero(), |acc, (c, p)| acc + c * p);
    Ok(LpSolution { value, point })
}

fn pivot(tableau: &mut [Vec<Rational>], objective: &mut [Rational], row: usize, col: usize) {
    let factor = tableau[row][col];
    for v in tableau[row].iter_mut() {
        *v /= factor;
    }
    let pivot_line = tableau[row].clone();
    for (i, line) in tableau.iter_mut().enumerate() {
        if i == row || line[col].is_zero() {
            continue;
        }
        let f = line[col];
        for (v, p) in line.iter_mut().zip(&pivot_line) {
            if !p.is_zero() {
                *v -= f * p;
            }
        }
    }
    let f = objective[col];
    if !f.is_zero() {
        for (v, p) in objective.iter_mut().zip(&pivot_line) {
            if !p.is_zero() {
                *v -= f * p;
            }
        }
    }
}
