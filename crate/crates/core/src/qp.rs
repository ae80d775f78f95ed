//! Exact Euclidean projection onto a polyhedron.
//!
//! Dual active-set method (Goldfarb–Idnani) specialised to the identity
//! Hessian: start at the unconstrained minimiser, repeatedly pick a violated
//! constraint and move along the projection of its normal onto the null
//! space of the active normals, dropping active inequalities whose
//! multipliers would turn negative. Each full step strictly increases the
//! dual objective, so with exact arithmetic the method terminates.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::rational::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sense {
    AtLeast,
    Equal,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearConstraint {
    pub coeffs: Vec<Rational>,
    pub rhs: Rational,
    pub sense: Sense,
}

impl LinearConstraint {
    pub fn at_least(coeffs: Vec<Rational>, rhs: Rational) -> Self {
        LinearConstraint {
            coeffs,
            rhs,
            sense: Sense::AtLeast,
        }
    }

    pub fn equal(coeffs: Vec<Rational>, rhs: Rational) -> Self {
        LinearConstraint {
            coeffs,
            rhs,
            sense: Sense::Equal,
        }
    }

    /// `a·x - rhs`; non-negative when an inequality is satisfied.
    pub fn slack(&self, x: &[Rational]) -> Rational {
        dot(&self.coeffs, x) - self.rhs
    }

    pub fn is_satisfied(&self, x: &[Rational]) -> bool {
        let s = self.slack(x);
        match self.sense {
            Sense::AtLeast => s >= Rational::zero(),
            Sense::Equal => s.is_zero(),
        }
    }
}

pub(crate) fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

struct Active {
    normal: Vec<Rational>,
    is_equality: bool,
    multiplier: Rational,
}

const MAX_ITERATIONS: usize = 100_000;

/// The point of `{x : constraints hold}` closest to `target`.
pub fn project(target: &[Rational], constraints: &[LinearConstraint]) -> Result<Vec<Rational>> {
    let d = target.len();
    if let Some(c) = constraints.iter().find(|c| c.coeffs.len() != d) {
        return Err(Error::Solver(format!(
            "constraint has {} coefficients for a {d}-dimensional point",
            c.coeffs.len()
        )));
    }
    let mut x = target.to_vec();
    let mut active: Vec<Active> = Vec::new();
    let mut iterations = 0usize;

    loop {
        // First violated constraint in input order.
        let violated = constraints.iter().find_map(|c| {
            let s = c.slack(&x);
            match c.sense {
                Sense::AtLeast if s < Rational::zero() => Some((c.coeffs.clone(), c.rhs, false)),
                Sense::Equal if s < Rational::zero() => Some((c.coeffs.clone(), c.rhs, true)),
                Sense::Equal if s > Rational::zero() => Some((c.coeffs.iter().map(|v| -v).collect(), -c.rhs, true)),
                _ => None,
            }
        });
        let Some((normal, rhs, is_equality)) = violated else {
            return Ok(x);
        };

        let mut added_multiplier = Rational::zero();
        loop {
            iterations += 1;
            if iterations > MAX_ITERATIONS {
                return Err(Error::Solver("projection did not terminate".into()));
            }
            let (r, z) = decompose(&active, &normal, d)?;
            let z_norm = dot(&z, &z);

            // Largest step before an active inequality's multiplier hits zero.
            let mut blocking: Option<(usize, Rational)> = None;
            for (k, a) in active.iter().enumerate() {
                if a.is_equality || r[k] <= Rational::zero() {
                    continue;
                }
                let t = a.multiplier / r[k];
                if blocking.as_ref().is_none_or(|(_, best)| t < *best) {
                    blocking = Some((k, t));
                }
            }

            if z_norm.is_zero() {
                // Normal lies in the span of the active set: only a drop helps.
                let Some((k, t)) = blocking else {
                    return Err(Error::Solver("constraints are infeasible".into()));
                };
                for (a, rk) in active.iter_mut().zip(&r) {
                    a.multiplier -= t * rk;
                }
                added_multiplier += t;
                active.remove(k);
                continue;
            }

            let slack = dot(&normal, &x) - rhs;
            let full_step = -slack / z_norm;
            let (step, drop) = match blocking {
                Some((k, t)) if t < full_step => (t, Some(k)),
                _ => (full_step, None),
            };
            for (xi, zi) in x.iter_mut().zip(&z) {
                *xi += step * zi;
            }
            for (a, rk) in active.iter_mut().zip(&r) {
                a.multiplier -= step * rk;
            }
            added_multiplier += step;
            match drop {
                Some(k) => {
                    active.remove(k);
                }
                None => {
                    active.push(Active {
                        normal,
                        is_equality,
                        multiplier: added_multiplier,
                    });
                    break;
                }
            }
        }
    }
}

/// Splits `n` into `N r + z` with `z` orthogonal to the active normals.
fn decompose(active: &[Active], n: &[Rational], d: usize) -> Result<(Vec<Rational>, Vec<Rational>)> {
    let k = active.len();
    if k == 0 {
        return Ok((Vec::new(), n.to_vec()));
    }
    let mut gram: Vec<Vec<Rational>> = (0..k)
        .map(|i| {
            let mut line: Vec<Rational> = (0..k).map(|j| dot(&active[i].normal, &active[j].normal)).collect();
            line.push(dot(&active[i].normal, n));
            line
        })
        .collect();
    let r = solve_in_place(&mut gram)
        .ok_or_else(|| Error::Solver("active constraints became linearly dependent".into()))?;
    let mut z = n.to_vec();
    for (a, rk) in active.iter().zip(&r) {
        if rk.is_zero() {
            continue;
        }
        for j in 0..d {
            z[j] -= rk * a.normal[j];
        }
    }
    Ok((r, z))
}

/// Gauss–Jordan on an augmented `k × (k+1)` system; `None` if singular.
pub(crate) fn solve_in_place(m: &mut [Vec<Rational>]) -> Option<Vec<Rational>> {
    let k = m.len();
    for c in 0..k {
        let p = (c..k).find(|&r| !m[r][c].is_zero())?;
        m.swap(c, p);
        let f = m[c][c];
        for v in m[c].iter_mut() {
            *v /= f;
        }
        let line = m[c].clone();
        for (r, other) in m.iter_mut().enumerate() {
            if r == c || other[c].is_zero() {
                continue;
            }
            let g = other[c];
            for (v, l) in other.iter_mut().zip(&line) {
                if !l.is_zero() {
                    *v -= g * l;
                }
            }
        }
    }
    Some(m.iter().map(|line| line[k]).collect())
}

/// Reference solver: enumerate candidate active sets of size at most `d`,
/// project onto each affine hull, keep the feasible candidate closest to
/// the target. Exponential; only for cross-checking small instances.
#[cfg(test)]
pub(crate) fn project_by_enumeration(target: &[Rational], constraints: &[LinearConstraint]) -> Vec<Rational> {
    let d = target.len();
    let count = constraints.len();
    let mandatory: Vec<usize> = (0..count).filter(|&i| constraints[i].sense == Sense::Equal).collect();
    let optional: Vec<usize> = (0..count).filter(|&i| constraints[i].sense == Sense::AtLeast).collect();
    let mut best: Option<(Rational, Vec<Rational>)> = None;
    let feasible = |x: &[Rational]| constraints.iter().all(|c| c.is_satisfied(x));

    let mut consider = |set: &[usize]| {
        let k = set.len();
        let mut system: Vec<Vec<Rational>> = set
            .iter()
            .map(|&i| {
                let mut line: Vec<Rational> = set
                    .iter()
                    .map(|&j| dot(&constraints[i].coeffs, &constraints[j].coeffs))
                    .collect();
                line.push(constraints[i].rhs - dot(&constraints[i].coeffs, target));
                line
            })
            .collect();
        let Some(lambda) = (if k == 0 {
            Some(Vec::new())
        } else {
            solve_in_place(&mut system)
        }) else {
            return;
        };
        let mut x = target.to_vec();
        for (&i, l) in set.iter().zip(&lambda) {
            for j in 0..d {
                x[j] += l * constraints[i].coeffs[j];
            }
        }
        if !feasible(&x) {
            return;
        }
        let dist = x
            .iter()
            .zip(target)
            .fold(Rational::zero(), |s, (a, b)| s + (a - b) * (a - b));
        if best.as_ref().is_none_or(|(b, _)| dist < *b) {
            best = Some((dist, x));
        }
    };

    let limit = d.saturating_sub(mandatory.len());
    let mut stack: Vec<usize> = Vec::new();
    fn walk(
        start: usize,
        limit: usize,
        optional: &[usize],
        mandatory: &[usize],
        stack: &mut Vec<usize>,
        consider: &mut dyn FnMut(&[usize]),
    ) {
        let mut set = mandatory.to_vec();
        set.extend_from_slice(stack);
        consider(&set);
        if stack.len() == limit {
            return;
        }
        for i in start..optional.len() {
            stack.push(optional[i]);
            walk(i + 1, limit, optional, mandatory, stack, consider);
            stack.pop();
        }
    }
    walk(0, limit, &optional, &mandatory, &mut stack, &mut consider);
    best.expect("feasible region is non-empty").1
}
