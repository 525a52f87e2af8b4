//! Exhaustive basic-solution enumeration for `{p ≥ 0 : A p = b}` with at most
//! four equality rows.

use rayon::prelude::*;

use crate::bounds::moments::MomentSpec;
use crate::error::{BoundsError, Result};
use crate::tolerance::{MAX_CONDITION, PROB_CLAMP};

pub(crate) const MAX_ROWS: usize = 4;

/// Equality constraints restricted to a linearly independent row set.
///
/// Column `j` is grid point `j`: `(1, z, z², 1{x ≤ c})` with `z = (x − m)/σ`.
/// Working in standardized coordinates keeps the systems well scaled; the
/// rows span the same space as the raw-moment rows.
pub(crate) struct Constraints {
    columns: Vec<[f64; MAX_ROWS]>,
    rhs: [f64; MAX_ROWS],
    rank: usize,
}

impl Constraints {
    /// `tail` is `(c, target)` for the constraint `P(X ≤ c) = target`.
    pub(crate) fn new(spec: MomentSpec, grid: &[f64], tail: Option<(f64, f64)>) -> Result<Self> {
        let mut rows: Vec<Vec<f64>> = vec![
            grid.iter().map(|_| 1.0).collect(),
            grid.iter().map(|&x| spec.to_std(x)).collect(),
            grid.iter().map(|&x| spec.to_std(x).powi(2)).collect(),
        ];
        let mut rhs = vec![1.0, 0.0, 1.0];
        if let Some((c, target)) = tail {
            rows.push(
                grid.iter()
                    .map(|&x| if x <= c { 1.0 } else { 0.0 })
                    .collect(),
            );
            rhs.push(target);
        }
        let keep = independent_rows(&rows, &rhs)?;

        let mut columns = vec![[0.0; MAX_ROWS]; grid.len()];
        let mut b = [0.0; MAX_ROWS];
        for (slot, &r) in keep.iter().enumerate() {
            for (col, v) in columns.iter_mut().zip(&rows[r]) {
                col[slot] = *v;
            }
            b[slot] = rhs[r];
        }
        Ok(Self {
            columns,
            rhs: b,
            rank: keep.len(),
        })
    }

    pub(crate) fn len(&self) -> usize {
        self.columns.len()
    }
}

/// Selects a maximal independent subset of rows, in order. A dependent row
/// whose right-hand side disagrees with the same combination of earlier rows
/// makes the system inconsistent.
fn independent_rows(rows: &[Vec<f64>], rhs: &[f64]) -> Result<Vec<usize>> {
    // Reduced copies of the kept rows, with their pivot columns.
    let mut basis: Vec<(Vec<f64>, f64, usize)> = Vec::new();
    let mut keep = Vec::new();
    for (i, row) in rows.iter().enumerate() {
        let mut r = row.clone();
        let mut b = rhs[i];
        let scale = r.iter().fold(0.0f64, |a, v| a.max(v.abs())).max(1.0);
        for (br, bb, piv) in &basis {
            let f = r[*piv] / br[*piv];
            if f != 0.0 {
                for (x, y) in r.iter_mut().zip(br) {
                    *x -= f * y;
                }
                b -= f * bb;
            }
        }
        let (piv, mag) = r.iter().enumerate().fold((0, 0.0f64), |acc, (j, v)| {
            if v.abs() > acc.1 {
                (j, v.abs())
            } else {
                acc
            }
        });
        if mag <= 1e-10 * scale {
            if b.abs() > 1e-10 * scale.max(rhs[i].abs()) {
                return Err(BoundsError::Infeasible);
            }
            continue;
        }
        basis.push((r, b, piv));
        keep.push(i);
    }
    Ok(keep)
}

/// One basic feasible solution: the support indices (ascending) and their
/// probabilities, zeros included.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Vertex {
    pub(crate) support: [usize; MAX_ROWS],
    pub(crate) probs: [f64; MAX_ROWS],
    pub(crate) len: usize,
}

impl Vertex {
    pub(crate) fn atoms(&self) -> impl Iterator<Item = (usize, f64)> + '_ {
        self.support[..self.len]
            .iter()
            .copied()
            .zip(self.probs[..self.len].iter().copied())
    }
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct Best {
    pub(crate) value: f64,
    pub(crate) vertex: Vertex,
}

/// Outcome of minimizing several linear objectives over the same polytope.
pub(crate) struct Minima {
    /// One entry per objective, in the order given.
    pub(crate) best: Vec<Best>,
    pub(crate) feasible_vertices: usize,
    pub(crate) skipped_systems: usize,
}

struct Accumulator {
    best: Vec<Option<Best>>,
    feasible: usize,
    usable: usize,
    skipped: usize,
}

impl Accumulator {
    fn new(objectives: usize) -> Self {
        Self {
            best: vec![None; objectives],
            feasible: 0,
            usable: 0,
            skipped: 0,
        }
    }

    /// `later` covers subsets that come after `self` lexicographically;
    /// on exact ties the earlier vertex is kept.
    fn merge(mut self, later: Accumulator) -> Self {
        for (mine, theirs) in self.best.iter_mut().zip(later.best) {
            if let Some(t) = theirs {
                match mine {
                    Some(m) if m.value <= t.value => {}
                    _ => *mine = Some(t),
                }
            }
        }
        self.feasible += later.feasible;
        self.usable += later.usable;
        self.skipped += later.skipped;
        self
    }
}

/// Minimizes each objective `Σ pⱼ·costs[k][j]` over every basic feasible solution.
///
/// Work is split by the first support index and reduced in index order, so
/// the result does not depend on thread scheduling.
pub(crate) fn minimize(cons: &Constraints, costs: &[Vec<f64>]) -> Result<Minima> {
    let n = cons.len();
    let r = cons.rank;
    debug_assert!(costs.iter().all(|c| c.len() == n));
    if n < r {
        return Err(BoundsError::Infeasible);
    }

    let acc = (0..=n - r)
        .into_par_iter()
        .map(|first| {
            let mut acc = Accumulator::new(costs.len());
            let mut idx = [0usize; MAX_ROWS];
            idx[0] = first;
            enumerate_tail(cons, costs, &mut idx, 1, &mut acc);
            acc
        })
        .collect::<Vec<_>>()
        .into_iter()
        .fold(Accumulator::new(costs.len()), Accumulator::merge);

    if acc.usable == 0 {
        return Err(BoundsError::IllConditioned {
            skipped: acc.skipped,
        });
    }
    if acc.feasible == 0 {
        return Err(BoundsError::Infeasible);
    }
    Ok(Minima {
        best: acc
            .best
            .into_iter()
            .map(|b| b.expect("a feasible vertex was seen"))
            .collect(),
        feasible_vertices: acc.feasible,
        skipped_systems: acc.skipped,
    })
}

fn enumerate_tail(
    cons: &Constraints,
    costs: &[Vec<f64>],
    idx: &mut [usize; MAX_ROWS],
    depth: usize,
    acc: &mut Accumulator,
) {
    let r = cons.rank;
    if depth == r {
        visit(cons, costs, idx, acc);
        return;
    }
    let n = cons.len();
    for j in idx[depth - 1] + 1..=n - (r - depth) {
        idx[depth] = j;
        enumerate_tail(cons, costs, idx, depth + 1, acc);
    }
}

fn visit(cons: &Constraints, costs: &[Vec<f64>], idx: &[usize; MAX_ROWS], acc: &mut Accumulator) {
    let r = cons.rank;
    let mut mat = [[0.0; MAX_ROWS]; MAX_ROWS];
    for (k, &j) in idx[..r].iter().enumerate() {
        for (row, v) in mat.iter_mut().zip(cons.columns[j]).take(r) {
            row[k] = v;
        }
    }
    let Some(mut p) = solve_square(&mat, &cons.rhs, r) else {
        acc.skipped += 1;
        return;
    };
    acc.usable += 1;
    for v in p[..r].iter_mut() {
        if *v < -PROB_CLAMP {
            return;
        }
        // Rounding noise on a structurally zero weight, either sign.
        if v.abs() <= PROB_CLAMP {
            *v = 0.0;
        }
    }
    acc.feasible += 1;

    let vertex = Vertex {
        support: *idx,
        probs: p,
        len: r,
    };
    for (cost, slot) in costs.iter().zip(acc.best.iter_mut()) {
        let value: f64 = vertex.atoms().map(|(j, pj)| pj * cost[j]).sum();
        match slot {
            Some(b) if b.value <= value => {}
            _ => *slot = Some(Best { value, vertex }),
        }
    }
}

/// Solves the leading `r × r` block of `a` against `b` by Gauss-Jordan
/// inversion with partial pivoting and one step of iterative refinement.
/// Returns `None` for singular systems and for a 1-norm condition estimate
/// above the configured maximum.
pub(crate) fn solve_square(
    a: &[[f64; MAX_ROWS]; MAX_ROWS],
    b: &[f64; MAX_ROWS],
    r: usize,
) -> Option<[f64; MAX_ROWS]> {
    let mut m = *a;
    let mut inv = [[0.0; MAX_ROWS]; MAX_ROWS];
    for (i, row) in inv.iter_mut().enumerate().take(r) {
        row[i] = 1.0;
    }
    for col in 0..r {
        let piv = (col..r).max_by(|&i, &j| m[i][col].abs().total_cmp(&m[j][col].abs()))?;
        if m[piv][col] == 0.0 || !m[piv][col].is_finite() {
            return None;
        }
        m.swap(col, piv);
        inv.swap(col, piv);
        let d = m[col][col];
        for k in 0..r {
            m[col][k] /= d;
            inv[col][k] /= d;
        }
        for i in 0..r {
            if i != col {
                let f = m[i][col];
                if f != 0.0 {
                    for k in 0..r {
                        m[i][k] -= f * m[col][k];
                        inv[i][k] -= f * inv[col][k];
                    }
                }
            }
        }
    }

    let norm1 = |x: &[[f64; MAX_ROWS]; MAX_ROWS]| {
        (0..r)
            .map(|k| (0..r).map(|i| x[i][k].abs()).sum::<f64>())
            .fold(0.0, f64::max)
    };
    let cond = norm1(a) * norm1(&inv);
    if !cond.is_finite() || cond > MAX_CONDITION {
        return None;
    }

    let apply = |x: &[f64; MAX_ROWS]| {
        let mut y = [0.0; MAX_ROWS];
        for i in 0..r {
            y[i] = (0..r).map(|k| inv[i][k] * x[k]).sum();
        }
        y
    };
    let mut p = apply(b);
    let mut res = [0.0; MAX_ROWS];
    for i in 0..r {
        res[i] = b[i] - (0..r).map(|k| a[i][k] * p[k]).sum::<f64>();
    }
    let dp = apply(&res);
    for i in 0..r {
        p[i] += dp[i];
    }
    Some(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solve_square_identity_and_singular() {
        let mut a = [[0.0; MAX_ROWS]; MAX_ROWS];
        a[0] = [2.0, 1.0, 0.0, 0.0];
        a[1] = [1.0, 3.0, 0.0, 0.0];
        let p = solve_square(&a, &[3.0, 5.0, 0.0, 0.0], 2).unwrap();
        assert!((p[0] - 0.8).abs() < 1e-15 && (p[1] - 1.4).abs() < 1e-15);

        a[1] = [4.0, 2.0, 0.0, 0.0];
        assert!(solve_square(&a, &[3.0, 6.0, 0.0, 0.0], 2).is_none());
    }

    #[test]
    fn ill_conditioned_is_skipped() {
        let mut a = [[0.0; MAX_ROWS]; MAX_ROWS];
        a[0] = [1.0, 1.0, 0.0, 0.0];
        a[1] = [1.0, 1.0 + 1e-14, 0.0, 0.0];
        assert!(solve_square(&a, &[1.0, 1.0, 0.0, 0.0], 2).is_none());
    }

    #[test]
    fn dependent_tail_row_is_dropped_or_infeasible() {
        let spec = MomentSpec::new(1.0, 1.0).unwrap();
        let grid = [0.0, 1.0, 2.0, 3.0];
        // Every grid point is ≤ c, so the tail row repeats the ones row.
        let c = Constraints::new(spec, &grid, Some((5.0, 1.0))).unwrap();
        assert_eq!(c.rank, 3);
        assert!(matches!(
            Constraints::new(spec, &grid, Some((5.0, 0.5))),
            Err(BoundsError::Infeasible)
        ));
        let c = Constraints::new(spec, &grid, Some((1.5, 0.5))).unwrap();
        assert_eq!(c.rank, 4);
    }
}
