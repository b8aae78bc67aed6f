//! Exact rational linear programming and zero-sum matrix games.
//!
//! The solver is a dense two-phase simplex over [`Rational`] entries with
//! Bland's pivoting rule, so it terminates on every input and never rounds.
//! Instances here are small (at most a few dozen rows and columns), which
//! makes the dense tableau the right trade: correctness over speed.
//!
//! A matrix game is solved by shifting the payoff matrix to strictly
//! positive entries and solving `max Σx` subject to `M'x ≤ 1, x ≥ 0`; the
//! column player's optimal mixture is the rescaled primal solution, the row
//! player's is the rescaled dual, and both certificates are checked exactly
//! before the solution is returned.

use crate::rational::Rational;

/// Constraint sense in a linear program.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

/// One linear constraint `coeffs · x  (≤|=|≥)  rhs`.
#[derive(Clone, Debug)]
pub struct Constraint {
    pub coeffs: Vec<Rational>,
    pub relation: Relation,
    pub rhs: Rational,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Sense {
    Maximize,
    Minimize,
}

/// Linear program over nonnegative variables.
#[derive(Clone, Debug)]
pub struct LinearProgram {
    pub sense: Sense,
    pub objective: Vec<Rational>,
    pub constraints: Vec<Constraint>,
}

/// Exact optimum with its dual certificate.
#[derive(Clone, Debug)]
pub struct LpSolution {
    pub variables: Vec<Rational>,
    pub objective: Rational,
    /// One dual value per constraint, in input order, signed for the
    /// original (un-normalized) constraint senses.
    pub duals: Vec<Rational>,
}

#[derive(Clone, Debug)]
pub enum LpOutcome {
    Optimal(LpSolution),
    Infeasible,
    Unbounded,
}

/// Rectangular payoff matrix of a zero-sum game. Rows maximize, columns
/// minimize.
#[derive(Clone, Debug)]
pub struct GameMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Vec<Rational>>,
}

impl GameMatrix {
    pub fn new(entries: Vec<Vec<Rational>>) -> Self {
        let rows = entries.len();
        assert!(rows > 0, "game needs at least one row");
        let cols = entries[0].len();
        assert!(cols > 0, "game needs at least one column");
        assert!(
            entries.iter().all(|r| r.len() == cols),
            "ragged game matrix"
        );
        GameMatrix { rows, cols, entries }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entry(&self, r: usize, c: usize) -> &Rational {
        &self.entries[r][c]
    }
}

/// Value and optimal mixed strategies of a matrix game, satisfying
/// `max_r (M·p)_r = value = min_c (qᵀM)_c` exactly, where `p` is the column
/// strategy and `q` the row strategy.
#[derive(Clone, Debug)]
pub struct GameSolution {
    pub value: Rational,
    pub row_strategy: Vec<Rational>,
    pub col_strategy: Vec<Rational>,
}

struct Tableau {
    rows: usize,
    cols: usize, // structural + slack + artificial
    n_struct: usize,
    a: Vec<Vec<Rational>>,
    b: Vec<Rational>,
    basis: Vec<usize>,
    is_artificial: Vec<bool>,
    /// For each row, the column whose initial coefficient vector is e_row.
    identity_col: Vec<usize>,
    /// True where the original constraint row was negated to make rhs ≥ 0.
    negated: Vec<bool>,
}

enum PivotResult {
    Optimal,
    Unbounded,
}

impl Tableau {
    fn build(lp: &LinearProgram) -> Tableau {
        let n_struct = lp.objective.len();
        let m = lp.constraints.len();

        // Normalize rows to nonnegative rhs.
        let mut rows_data: Vec<(Vec<Rational>, Relation, Rational, bool)> = Vec::with_capacity(m);
        for c in &lp.constraints {
            assert_eq!(c.coeffs.len(), n_struct, "ragged constraint");
            if c.rhs.is_negative() {
                let coeffs: Vec<Rational> = c.coeffs.iter().map(|x| -x).collect();
                let relation = match c.relation {
                    Relation::Le => Relation::Ge,
                    Relation::Ge => Relation::Le,
                    Relation::Eq => Relation::Eq,
                };
                rows_data.push((coeffs, relation, -&c.rhs, true));
            } else {
                rows_data.push((c.coeffs.clone(), c.relation, c.rhs.clone(), false));
            }
        }

        let n_slack = rows_data
            .iter()
            .filter(|(_, r, _, _)| *r != Relation::Eq)
            .count();
        let n_art = rows_data
            .iter()
            .filter(|(_, r, _, _)| *r != Relation::Le)
            .count();
        let cols = n_struct + n_slack + n_art;

        let mut a = vec![vec![Rational::zero(); cols]; m];
        let mut b = Vec::with_capacity(m);
        let mut basis = Vec::with_capacity(m);
        let mut identity_col = vec![0usize; m];
        let mut negated = vec![false; m];
        let mut is_artificial = vec![false; cols];

        let mut next_slack = n_struct;
        let mut next_art = n_struct + n_slack;
        for (i, (coeffs, relation, rhs, was_negated)) in rows_data.into_iter().enumerate() {
            for (j, v) in coeffs.into_iter().enumerate() {
                a[i][j] = v;
            }
            b.push(rhs);
            negated[i] = was_negated;
            match relation {
                Relation::Le => {
                    a[i][next_slack] = Rational::one();
                    basis.push(next_slack);
                    identity_col[i] = next_slack;
                    next_slack += 1;
                }
                Relation::Ge => {
                    a[i][next_slack] = -Rational::one();
                    next_slack += 1;
                    a[i][next_art] = Rational::one();
                    is_artificial[next_art] = true;
                    basis.push(next_art);
                    identity_col[i] = next_art;
                    next_art += 1;
                }
                Relation::Eq => {
                    a[i][next_art] = Rational::one();
                    is_artificial[next_art] = true;
                    basis.push(next_art);
                    identity_col[i] = next_art;
                    next_art += 1;
                }
            }
        }

        Tableau {
            rows: m,
            cols,
            n_struct,
            a,
            b,
            basis,
            is_artificial,
            identity_col,
            negated,
        }
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let p = self.a[row][col].clone();
        for v in self.a[row].iter_mut() {
            *v /= &p;
        }
        self.b[row] /= &p;
        for i in 0..self.rows {
            if i == row || self.a[i][col].is_zero() {
                continue;
            }
            let f = self.a[i][col].clone();
            for j in 0..self.cols {
                let delta = &f * &self.a[row][j];
                self.a[i][j] -= delta;
            }
            let delta = &f * &self.b[row];
            self.b[i] -= delta;
        }
        self.basis[row] = col;
    }

    /// Reduced costs `z_j = c_B B⁻¹ A_j − c_j` for the given column costs,
    /// together with the current objective value `c_B B⁻¹ b`.
    fn reduced_costs(&self, cost: &[Rational]) -> (Vec<Rational>, Rational) {
        let mut z = vec![Rational::zero(); self.cols];
        let mut val = Rational::zero();
        for i in 0..self.rows {
            let cb = &cost[self.basis[i]];
            if cb.is_zero() {
                continue;
            }
            for (zj, aij) in z.iter_mut().zip(&self.a[i]) {
                if !aij.is_zero() {
                    *zj += cb * aij;
                }
            }
            val += cb * &self.b[i];
        }
        for j in 0..self.cols {
            z[j] -= &cost[j];
        }
        (z, val)
    }

    /// Maximizes `cost · (all columns)` by primal simplex with Bland's rule.
    /// `allow_artificial` permits artificial columns to enter (phase 1 only).
    fn run(&mut self, cost: &[Rational], allow_artificial: bool) -> PivotResult {
        loop {
            let (z, _) = self.reduced_costs(cost);
            // Bland: entering column = lowest index with negative reduced cost.
            let entering = (0..self.cols).find(|&j| {
                (allow_artificial || !self.is_artificial[j])
                    && !self.basis.contains(&j)
                    && z[j].is_negative()
            });
            let col = match entering {
                Some(c) => c,
                None => return PivotResult::Optimal,
            };
            // Ratio test; ties broken by smallest basic variable index (Bland).
            let mut leave: Option<(usize, Rational)> = None;
            for i in 0..self.rows {
                if !self.a[i][col].is_positive() {
                    continue;
                }
                let ratio = &self.b[i] / &self.a[i][col];
                leave = match leave {
                    None => Some((i, ratio)),
                    Some((bi, br)) => {
                        if ratio < br || (ratio == br && self.basis[i] < self.basis[bi]) {
                            Some((i, ratio))
                        } else {
                            Some((bi, br))
                        }
                    }
                };
            }
            match leave {
                Some((row, _)) => self.pivot(row, col),
                None => return PivotResult::Unbounded,
            }
        }
    }
}

/// Solves a standard-form LP (nonnegative variables, mixed constraint
/// senses) exactly. Returns the optimum with a dual certificate, or the
/// verdict `Infeasible` / `Unbounded`.
pub fn simplex_solve(lp: &LinearProgram) -> LpOutcome {
    let minimize = lp.sense == Sense::Minimize;
    let objective: Vec<Rational> = if minimize {
        lp.objective.iter().map(|c| -c).collect()
    } else {
        lp.objective.clone()
    };

    let mut t = Tableau::build(lp);

    // Phase 1: drive artificial variables to zero.
    if t.is_artificial.iter().any(|&x| x) {
        let phase1_cost: Vec<Rational> = (0..t.cols)
            .map(|j| {
                if t.is_artificial[j] {
                    -Rational::one()
                } else {
                    Rational::zero()
                }
            })
            .collect();
        match t.run(&phase1_cost, true) {
            PivotResult::Optimal => {}
            PivotResult::Unbounded => unreachable!("phase 1 objective is bounded by zero"),
        }
        let (_, val) = t.reduced_costs(&phase1_cost);
        if !val.is_zero() {
            return LpOutcome::Infeasible;
        }
        // Pivot artificials out of the basis when a nonzero non-artificial
        // entry exists in their row; otherwise the row is redundant and the
        // artificial stays basic at value zero.
        for i in 0..t.rows {
            if t.is_artificial[t.basis[i]] {
                if let Some(j) =
                    (0..t.cols).find(|&j| !t.is_artificial[j] && !t.a[i][j].is_zero())
                {
                    t.pivot(i, j);
                }
            }
        }
    }

    // Phase 2 with the real objective (artificial columns barred).
    let mut cost = vec![Rational::zero(); t.cols];
    cost[..t.n_struct].clone_from_slice(&objective);
    match t.run(&cost, false) {
        PivotResult::Optimal => {}
        PivotResult::Unbounded => return LpOutcome::Unbounded,
    }

    let (z, val) = t.reduced_costs(&cost);
    let mut variables = vec![Rational::zero(); t.n_struct];
    for i in 0..t.rows {
        if t.basis[i] < t.n_struct {
            variables[t.basis[i]] = t.b[i].clone();
        }
    }
    // Dual of row i is the reduced cost of its initial identity column
    // (those columns carry zero cost in phase 2).
    let mut duals = Vec::with_capacity(t.rows);
    for i in 0..t.rows {
        let mut y = z[t.identity_col[i]].clone();
        if t.negated[i] {
            y = -y;
        }
        if minimize {
            y = -y;
        }
        duals.push(y);
    }
    let objective_value = if minimize { -val } else { val };
    LpOutcome::Optimal(LpSolution {
        variables,
        objective: objective_value,
        duals,
    })
}

/// Exact value and optimal strategies of a zero-sum matrix game.
///
/// Internally shifts the payoffs so every entry is at least one, solves the
/// standard LP pair, and asserts the minimax certificate before returning:
/// strategies are probability vectors and
/// `max_r (M·p)_r = value = min_c (qᵀM)_c` holds as a rational identity.
pub fn solve_matrix_game(game: &GameMatrix) -> GameSolution {
    let min_entry = (0..game.rows)
        .flat_map(|r| (0..game.cols).map(move |c| game.entry(r, c).clone()))
        .reduce(Rational::min)
        .expect("nonempty game");
    let shift = if min_entry < Rational::one() {
        Rational::one() - &min_entry
    } else {
        Rational::zero()
    };

    // max Σx  s.t.  (M + shift)·x ≤ 1,  x ≥ 0.
    let constraints = (0..game.rows)
        .map(|r| Constraint {
            coeffs: (0..game.cols)
                .map(|c| game.entry(r, c) + &shift)
                .collect(),
            relation: Relation::Le,
            rhs: Rational::one(),
        })
        .collect();
    let lp = LinearProgram {
        sense: Sense::Maximize,
        objective: vec![Rational::one(); game.cols],
        constraints,
    };
    let solution = match simplex_solve(&lp) {
        LpOutcome::Optimal(s) => s,
        _ => unreachable!("the shifted game LP is feasible and bounded"),
    };

    let scale: Rational = solution.variables.iter().sum();
    assert!(scale.is_positive(), "shifted game value must be positive");
    let shifted_value = scale.recip();
    let value = &shifted_value - &shift;
    let col_strategy: Vec<Rational> =
        solution.variables.iter().map(|x| x / &scale).collect();
    let row_strategy: Vec<Rational> = solution.duals.iter().map(|y| y / &scale).collect();

    // Certificate checks, all exact.
    let one = Rational::one();
    assert!(col_strategy.iter().all(|p| !p.is_negative()));
    assert!(row_strategy.iter().all(|q| !q.is_negative()));
    assert_eq!(col_strategy.iter().sum::<Rational>(), one);
    assert_eq!(row_strategy.iter().sum::<Rational>(), one);
    let max_row = (0..game.rows)
        .map(|r| {
            (0..game.cols)
                .map(|c| game.entry(r, c) * &col_strategy[c])
                .sum::<Rational>()
        })
        .reduce(Rational::max)
        .expect("nonempty");
    let min_col = (0..game.cols)
        .map(|c| {
            (0..game.rows)
                .map(|r| game.entry(r, c) * &row_strategy[r])
                .sum::<Rational>()
        })
        .reduce(Rational::min)
        .expect("nonempty");
    assert_eq!(max_row, value, "column strategy fails its guarantee");
    assert_eq!(min_col, value, "row strategy fails its guarantee");

    GameSolution {
        value,
        row_strategy,
        col_strategy,
    }
}
