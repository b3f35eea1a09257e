//! Dense two-phase primal simplex in exact rational arithmetic, with Bland's
//! rule for entering and leaving variables. Sized for desk-scale covering
//! LPs (tens of rows, up to a few thousand columns); every returned optimum
//! is exact and the final reduced costs certify it.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::Rational;

/// `minimise c.x  subject to  A x >= b, x >= 0`.
pub struct CoveringLp {
    pub rows: Vec<Vec<Rational>>,
    pub rhs: Vec<Rational>,
    pub objective: Vec<Rational>,
}

pub struct LpSolution {
    pub value: Rational,
    pub x: Vec<Rational>,
}

struct Tableau {
    m: usize,
    ncols: usize,
    tab: Vec<Vec<Rational>>,
    rhs: Vec<Rational>,
    basis: Vec<usize>,
    cost: Vec<Rational>,
    obj: Rational,
    live: Vec<bool>,
}

impl Tableau {
    fn pivot(&mut self, row: usize, col: usize) {
        let p = self.tab[row][col].clone();
        debug_assert!(!p.is_zero());
        for j in 0..self.ncols {
            self.tab[row][j] = &self.tab[row][j] / &p;
        }
        self.rhs[row] = &self.rhs[row] / &p;
        for i in 0..self.m {
            if i == row || !self.live[i] {
                continue;
            }
            let f = self.tab[i][col].clone();
            if f.is_zero() {
                continue;
            }
            for j in 0..self.ncols {
                let delta = &f * &self.tab[row][j];
                self.tab[i][j] = &self.tab[i][j] - &delta;
            }
            let delta = &f * &self.rhs[row];
            self.rhs[i] = &self.rhs[i] - &delta;
        }
        let f = self.cost[col].clone();
        if !f.is_zero() {
            for j in 0..self.ncols {
                let delta = &f * &self.tab[row][j];
                self.cost[j] = &self.cost[j] - &delta;
            }
            let delta = &f * &self.rhs[row];
            self.obj = &self.obj - &delta;
        }
        self.basis[row] = col;
    }

    /// Prices the basis out of the freshly installed cost row.
    fn price_out(&mut self, costs: &[Rational]) {
        self.cost = costs.to_vec();
        self.obj = Rational::zero();
        for i in 0..self.m {
            if !self.live[i] {
                continue;
            }
            let cb = costs[self.basis[i]].clone();
            if cb.is_zero() {
                continue;
            }
            for j in 0..self.ncols {
                let delta = &cb * &self.tab[i][j];
                self.cost[j] = &self.cost[j] - &delta;
            }
            let delta = &cb * &self.rhs[i];
            self.obj = &self.obj - &delta;
        }
    }

    /// Bland's rule iterations until optimal; `allowed` masks the columns
    /// permitted to enter.
    fn run(&mut self, allowed: &[bool]) -> Result<()> {
        loop {
            let entering = (0..self.ncols)
                .find(|&j| allowed[j] && self.cost[j].is_negative());
            let Some(col) = entering else {
                return Ok(());
            };
            let mut leave: Option<(usize, Rational)> = None;
            for i in 0..self.m {
                if !self.live[i] || !self.tab[i][col].is_positive() {
                    continue;
                }
                let ratio = &self.rhs[i] / &self.tab[i][col];
                let better = match &leave {
                    None => true,
                    Some((r, best)) => {
                        ratio < *best || (ratio == *best && self.basis[i] < self.basis[*r])
                    }
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            let Some((row, _)) = leave else {
                return Err(Error::Internal("unbounded linear program".into()));
            };
            self.pivot(row, col);
        }
    }
}

/// Solves the covering LP exactly. The constraint system is brought to
/// standard form with surplus and artificial variables; phase one drives the
/// artificials to zero, phase two optimises the real objective.
pub fn solve_covering(lp: &CoveringLp) -> Result<LpSolution> {
    let m = lp.rows.len();
    let n = lp.objective.len();
    if m == 0 {
        return Ok(LpSolution { value: Rational::zero(), x: vec![Rational::zero(); n] });
    }
    let ncols = n + 2 * m; // structural, surplus, artificial
    let mut tab = vec![vec![Rational::zero(); ncols]; m];
    let mut rhs = lp.rhs.clone();
    for i in 0..m {
        debug_assert_eq!(lp.rows[i].len(), n);
        // Normalise to rhs >= 0 so the artificial start is feasible.
        let flip = rhs[i].is_negative();
        for j in 0..n {
            tab[i][j] = if flip { -lp.rows[i][j].clone() } else { lp.rows[i][j].clone() };
        }
        tab[i][n + i] = if flip { Rational::one() } else { -Rational::one() };
        tab[i][n + m + i] = Rational::one();
        if flip {
            rhs[i] = -rhs[i].clone();
        }
    }
    let mut t = Tableau {
        m,
        ncols,
        tab,
        rhs,
        basis: (0..m).map(|i| n + m + i).collect(),
        cost: vec![Rational::zero(); ncols],
        obj: Rational::zero(),
        live: vec![true; m],
    };

    // Phase one.
    let mut phase1 = vec![Rational::zero(); ncols];
    for j in (n + m)..ncols {
        phase1[j] = Rational::one();
    }
    t.price_out(&phase1);
    let allowed: Vec<bool> = vec![true; ncols];
    t.run(&allowed)?;
    if !t.obj.is_zero() {
        return Err(Error::Internal("infeasible covering program".into()));
    }
    // Drive artificials out of the basis; drop redundant rows.
    for i in 0..m {
        if t.basis[i] >= n + m && t.live[i] {
            let col = (0..n + m).find(|&j| !t.tab[i][j].is_zero());
            match col {
                Some(c) => t.pivot(i, c),
                None => t.live[i] = false,
            }
        }
    }

    // Phase two.
    let mut phase2 = vec![Rational::zero(); ncols];
    phase2[..n].clone_from_slice(&lp.objective);
    t.price_out(&phase2);
    let allowed: Vec<bool> = (0..ncols).map(|j| j < n + m).collect();
    t.run(&allowed)?;

    let mut x = vec![Rational::zero(); n];
    for i in 0..m {
        if t.live[i] && t.basis[i] < n {
            x[t.basis[i]] = t.rhs[i].clone();
        }
    }
    Ok(LpSolution { value: -t.obj.clone(), x })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, ratio};

    fn covering(rows: Vec<Vec<i64>>, rhs: Vec<i64>, obj: Vec<i64>) -> CoveringLp {
        CoveringLp {
            rows: rows
                .into_iter()
                .map(|r| r.into_iter().map(rat).collect())
                .collect(),
            rhs: rhs.into_iter().map(rat).collect(),
            objective: obj.into_iter().map(rat).collect(),
        }
    }

    #[test]
    fn c5_fractional_cover_is_five_halves() {
        // Vertex cover by the five maximal stable sets of C5.
        // Stable sets {i, i+2}: each vertex lies in exactly two of them.
        let mut rows = vec![vec![0i64; 5]; 5];
        for s in 0..5 {
            rows[s][s] = 1;
            rows[(s + 2) % 5][s] = 1;
        }
        let lp = covering(rows, vec![1; 5], vec![1; 5]);
        let sol = solve_covering(&lp).unwrap();
        assert_eq!(sol.value, ratio(5, 2));
        for i in 0..5 {
            let coverage: Rational = (0..5)
                .map(|j| &lp.rows[i][j] * &sol.x[j])
                .fold(Rational::zero(), |a, b| a + b);
            assert!(coverage >= rat(1));
        }
    }

    #[test]
    fn duplicate_rows_are_handled() {
        let lp = covering(vec![vec![1, 1], vec![1, 1], vec![0, 1]], vec![1, 1, 1], vec![1, 1]);
        let sol = solve_covering(&lp).unwrap();
        assert_eq!(sol.value, rat(1));
    }

    #[test]
    fn simple_two_variable_program() {
        // min x + 2y s.t. x + y >= 3, y >= 1.
        let lp = covering(vec![vec![1, 1], vec![0, 1]], vec![3, 1], vec![1, 2]);
        let sol = solve_covering(&lp).unwrap();
        assert_eq!(sol.value, rat(4));
        assert_eq!(sol.x, vec![rat(2), rat(1)]);
    }
}
