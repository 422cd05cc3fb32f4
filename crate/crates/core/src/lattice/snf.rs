use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::IntMatrix;

/// Smith normal form `U·M·V = D` with `U`, `V` unimodular and the diagonal of
/// `D` a nonnegative divisibility chain.
#[derive(Clone, Debug)]
pub struct Snf {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    rank: usize,
}

impl Snf {
    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Nonzero diagonal entries, in order.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.rank).map(|i| self.d[(i, i)].clone()).collect()
    }
}

/// Elementary row/column reduction, pivoting on the entry of least absolute value.
pub fn smith_normal_form(m: &IntMatrix) -> Snf {
    let (rows, cols) = (m.rows(), m.cols());
    let mut d = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);
    let mut t = 0;
    while t < rows.min(cols) {
        let Some((pi, pj)) = min_abs_entry(&d, t) else { break };
        d.swap_rows(t, pi);
        u.swap_rows(t, pi);
        d.swap_cols(t, pj);
        v.swap_cols(t, pj);
        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if d[(i, t)].is_zero() {
                    continue;
                }
                let q = -d[(i, t)].div_floor(&d[(t, t)]);
                d.add_row_multiple(i, t, &q);
                u.add_row_multiple(i, t, &q);
                if !d[(i, t)].is_zero() {
                    dirty = true;
                }
            }
            for j in t + 1..cols {
                if d[(t, j)].is_zero() {
                    continue;
                }
                let q = -d[(t, j)].div_floor(&d[(t, t)]);
                d.add_col_multiple(j, t, &q);
                v.add_col_multiple(j, t, &q);
                if !d[(t, j)].is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                // A remainder smaller than the pivot survived; move it to the pivot.
                let (pi, pj) = min_abs_in_cross(&d, t);
                d.swap_rows(t, pi);
                u.swap_rows(t, pi);
                d.swap_cols(t, pj);
                v.swap_cols(t, pj);
                continue;
            }
            // Row and column are clear; enforce divisibility on the remainder.
            let pivot = d[(t, t)].clone();
            let bad = (t + 1..rows)
                .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| !d[(i, j)].is_multiple_of(&pivot));
            match bad {
                Some((i, _)) => {
                    let one = BigInt::one();
                    d.add_row_multiple(t, i, &one);
                    u.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }
        if d[(t, t)].is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
        t += 1;
    }
    let rank = (0..rows.min(cols)).take_while(|&i| !d[(i, i)].is_zero()).count();
    Snf { u, d, v, rank }
}

fn min_abs_entry(d: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..d.rows() {
        for j in t..d.cols() {
            let x = &d[(i, j)];
            if x.is_zero() {
                continue;
            }
            if best.is_none_or(|(bi, bj)| x.abs() < d[(bi, bj)].abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

fn min_abs_in_cross(d: &IntMatrix, t: usize) -> (usize, usize) {
    let mut best = (t, t);
    for i in t..d.rows() {
        let x = &d[(i, t)];
        if !x.is_zero() && (d[best].is_zero() || x.abs() < d[best].abs()) {
            best = (i, t);
        }
    }
    for j in t..d.cols() {
        let x = &d[(t, j)];
        if !x.is_zero() && (d[best].is_zero() || x.abs() < d[best].abs()) {
            best = (t, j);
        }
    }
    best
}

/// Basis of the integer kernel `{x ∈ ℤ^cols : M x = 0}`, as columns.
pub fn integer_kernel(m: &IntMatrix) -> IntMatrix {
    let snf = smith_normal_form(m);
    let idx: Vec<usize> = (snf.rank..m.cols()).collect();
    snf.v.select_cols(&idx)
}

/// Reusable solver for integer systems `M x = b`.
#[derive(Clone, Debug)]
pub struct IntSolver {
    snf: Snf,
    rows: usize,
}

impl IntSolver {
    pub fn new(m: &IntMatrix) -> Self {
        IntSolver { snf: smith_normal_form(m), rows: m.rows() }
    }

    /// An integer solution of `M x = b`, or `None` when there is none.
    pub fn solve(&self, b: &[BigInt]) -> Option<Vec<BigInt>> {
        assert_eq!(b.len(), self.rows, "right-hand side length mismatch");
        let ub = self.snf.u.mul_vec(b);
        let cols = self.snf.v.rows();
        let mut y = vec![BigInt::zero(); cols];
        for (i, c) in ub.iter().enumerate() {
            if i < self.snf.rank {
                let (q, r) = c.div_rem(&self.snf.d[(i, i)]);
                if !r.is_zero() {
                    return None;
                }
                y[i] = q;
            } else if !c.is_zero() {
                return None;
            }
        }
        Some(self.snf.v.mul_vec(&y))
    }

    pub fn contains(&self, b: &[BigInt]) -> bool {
        self.solve(b).is_some()
    }
}

/// A basis (as columns) of the lattice spanned by the columns of `m`,
/// in column echelon form.
pub fn column_basis(m: &IntMatrix) -> IntMatrix {
    let mut a = m.clone();
    let rows = a.rows();
    let mut k = 0;
    for i in 0..rows {
        if k >= a.cols() {
            break;
        }
        loop {
            // pick smallest nonzero |a[i][j]| with j >= k
            let mut piv: Option<usize> = None;
            for j in k..a.cols() {
                if a[(i, j)].is_zero() {
                    continue;
                }
                if piv.is_none_or(|p| a[(i, j)].abs() < a[(i, p)].abs()) {
                    piv = Some(j);
                }
            }
            let Some(p) = piv else { break };
            a.swap_cols(k, p);
            let mut done = true;
            for j in k + 1..a.cols() {
                if a[(i, j)].is_zero() {
                    continue;
                }
                let q = -a[(i, j)].div_floor(&a[(i, k)]);
                a.add_col_multiple(j, k, &q);
                if !a[(i, j)].is_zero() {
                    done = false;
                }
            }
            if done {
                if a[(i, k)].is_negative() {
                    a.negate_col(k);
                }
                // reduce earlier columns against this pivot for a canonical shape
                for j in 0..k {
                    let q = -a[(i, j)].div_floor(&a[(i, k)]);
                    a.add_col_multiple(j, k, &q);
                }
                k += 1;
                break;
            }
        }
    }
    let idx: Vec<usize> = (0..k).collect();
    a.select_cols(&idx)
}

/// Rank over ℚ.
pub fn rank(m: &IntMatrix) -> usize {
    column_basis(m).cols()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(m: &IntMatrix) -> Snf {
        let s = smith_normal_form(m);
        assert_eq!(&(&s.u * m) * &s.v, s.d, "U M V != D for {m:?}");
        assert!(s.u.is_unimodular());
        assert!(s.v.is_unimodular());
        for i in 0..s.d.rows() {
            for j in 0..s.d.cols() {
                if i != j {
                    assert!(s.d[(i, j)].is_zero());
                }
            }
        }
        let diag = s.diagonal();
        for w in diag.windows(2) {
            assert!(w[1].is_multiple_of(&w[0]));
        }
        s
    }

    #[test]
    fn identity_and_diagonal() {
        let s = check(&IntMatrix::identity(2));
        assert_eq!(s.d, IntMatrix::identity(2));
        let s = check(&IntMatrix::from_rows(&[[2, 0], [0, 2]]));
        assert_eq!(s.d, IntMatrix::from_rows(&[[2, 0], [0, 2]]));
    }

    #[test]
    fn divisibility_is_enforced() {
        let s = check(&IntMatrix::from_rows(&[[2, 0], [0, 3]]));
        assert_eq!(s.diagonal(), vec![BigInt::from(1), BigInt::from(6)]);
        let s = check(&IntMatrix::from_rows(&[[4, 6, 0], [6, 9, 3]]));
        assert_eq!(s.rank(), 2);
    }

    #[test]
    fn kernel_and_solver() {
        let m = IntMatrix::from_rows(&[[1, 2, 3], [2, 4, 6]]);
        let k = integer_kernel(&m);
        assert_eq!(k.cols(), 2);
        assert!((&m * &k).is_zero());
        let solver = IntSolver::new(&IntMatrix::from_rows(&[[2, 0], [0, 3]]));
        assert!(solver.solve(&[BigInt::from(4), BigInt::from(9)]).is_some());
        assert!(solver.solve(&[BigInt::from(1), BigInt::from(9)]).is_none());
    }

    #[test]
    fn column_basis_spans() {
        let m = IntMatrix::from_rows(&[[2, 4, 6], [0, 2, 2]]);
        let b = column_basis(&m);
        assert_eq!(b.cols(), 2);
        let solver = IntSolver::new(&b);
        for j in 0..m.cols() {
            assert!(solver.contains(&m.col(j)));
        }
        let det = b.determinant().abs();
        assert_eq!(det, BigInt::from(4));
    }
}
