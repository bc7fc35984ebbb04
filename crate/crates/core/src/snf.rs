//! Diagonal normal forms and the linear solves built on them.
//!
//! Over a chain ring the entry of least valuation divides every other entry,
//! so elimination never needs remainders. Over the integers the Euclidean
//! reduction runs with overflow control. Both paths track the transforms
//! and their inverses, so invertibility is certified by construction.

use crate::matrix::Matrix;
use crate::ring::Ring;
use crate::zlattice;

/// Result of diagonalizing `A`: `left * A * right = diag(diagonal)` padded
/// with zeros, with explicit inverses of both transforms.
#[derive(Clone, Debug)]
pub struct DiagonalReport {
    pub diagonal: Vec<i64>,
    pub left: Matrix,
    pub left_inv: Matrix,
    pub right: Matrix,
    pub right_inv: Matrix,
}

impl DiagonalReport {
    pub fn ring(&self) -> Ring {
        self.left.ring()
    }

    /// The diagonal matrix with the shape of the input.
    pub fn diagonal_matrix(&self) -> Matrix {
        let (r, c) = (self.left.rows(), self.right.rows());
        let mut d = Matrix::zeros(self.ring(), r, c);
        for (i, &x) in self.diagonal.iter().enumerate() {
            d.set(i, i, x);
        }
        d
    }

    /// Rechecks every identity the report claims.
    pub fn verify(&self, a: &Matrix) -> bool {
        let r = self.ring();
        let (m, n) = (a.rows(), a.cols());
        self.left.mul(a).mul(&self.right) == self.diagonal_matrix()
            && self.left.mul(&self.left_inv) == Matrix::identity(r, m)
            && self.left_inv.mul(&self.left) == Matrix::identity(r, m)
            && self.right.mul(&self.right_inv) == Matrix::identity(r, n)
            && self.right_inv.mul(&self.right) == Matrix::identity(r, n)
            && self.is_divisor_chain()
    }

    /// Each diagonal entry divides the next.
    pub fn is_divisor_chain(&self) -> bool {
        let r = self.ring();
        self.diagonal.windows(2).all(|w| r.divides(w[0], w[1]))
    }
}

struct Work {
    ring: Ring,
    a: Matrix,
    u: Matrix,
    ui: Matrix,
    v: Matrix,
    vi: Matrix,
}

impl Work {
    fn row_swap(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        self.u.swap_rows(i, j);
        self.ui.swap_cols(i, j);
    }

    fn col_swap(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        self.v.swap_cols(i, j);
        self.vi.swap_rows(i, j);
    }

    fn row_add(&mut self, dst: usize, src: usize, c: i64) {
        if c == 0 {
            return;
        }
        self.a.add_row_multiple(dst, src, c);
        self.u.add_row_multiple(dst, src, c);
        self.ui.add_col_multiple(src, dst, self.ring.neg(c));
    }

    fn col_add(&mut self, dst: usize, src: usize, c: i64) {
        if c == 0 {
            return;
        }
        self.a.add_col_multiple(dst, src, c);
        self.v.add_col_multiple(dst, src, c);
        self.vi.add_row_multiple(src, dst, self.ring.neg(c));
    }

    fn row_scale(&mut self, i: usize, unit: i64) {
        let inv = self.ring.inv(unit);
        self.a.scale_row(i, unit);
        self.u.scale_row(i, unit);
        self.ui.scale_col(i, inv);
    }

    fn finish(self) -> DiagonalReport {
        let t = self.a.rows().min(self.a.cols());
        DiagonalReport {
            diagonal: (0..t).map(|i| self.a.get(i, i)).collect(),
            left: self.u,
            left_inv: self.ui,
            right: self.v,
            right_inv: self.vi,
        }
    }
}

/// Diagonalizes `a` with canonical divisor representatives on the diagonal.
pub fn matrix_normal_form(a: &Matrix) -> DiagonalReport {
    let ring = a.ring();
    let (m, n) = (a.rows(), a.cols());
    if ring.is_integers() {
        let r = zlattice::diagonalize(a);
        return DiagonalReport {
            diagonal: r.diagonal,
            left: r.left,
            left_inv: r.left_inv,
            right: r.right,
            right_inv: r.right_inv,
        };
    }
    let mut w = Work {
        ring,
        a: a.clone(),
        u: Matrix::identity(ring, m),
        ui: Matrix::identity(ring, m),
        v: Matrix::identity(ring, n),
        vi: Matrix::identity(ring, n),
    };
    chain_diagonalize(&mut w);
    w.finish()
}

fn chain_diagonalize(w: &mut Work) {
    let ring = w.ring;
    let (m, n) = (w.a.rows(), w.a.cols());
    for t in 0..m.min(n) {
        let mut best: Option<(u32, usize, usize)> = None;
        'search: for i in t..m {
            for j in t..n {
                let x = w.a.get(i, j);
                if x != 0 {
                    let v = ring.valuation(x);
                    if best.map_or(true, |b| v < b.0) {
                        best = Some((v, i, j));
                        if v == 0 {
                            break 'search;
                        }
                    }
                }
            }
        }
        let Some((_, i, j)) = best else { break };
        w.row_swap(t, i);
        w.col_swap(t, j);
        let (_, unit) = ring.canonical(w.a.get(t, t));
        w.row_scale(t, ring.inv(unit));
        let pivot = w.a.get(t, t);
        for i in t + 1..m {
            let x = w.a.get(i, t);
            if x != 0 {
                let c = ring.divide(x, pivot).expect("pivot of least valuation divides");
                w.row_add(i, t, ring.neg(c));
            }
        }
        for j in t + 1..n {
            let x = w.a.get(t, j);
            if x != 0 {
                let c = ring.divide(x, pivot).expect("pivot of least valuation divides");
                w.col_add(j, t, ring.neg(c));
            }
        }
    }
}

/// Solves `x * A = b` for row vectors, reusing one reduction of `A`.
///
/// Over a chain ring the reduction is the normal form. Over the integers it
/// is a row echelon form, whose solutions and kernel bases stay much smaller
/// than those read off from normal form transforms.
#[derive(Clone, Debug)]
pub struct Solver(Kind);

#[derive(Clone, Debug)]
enum Kind {
    Normal(NormalSolver),
    Echelon(zlattice::Echelon),
}

impl Solver {
    pub fn new(a: &Matrix) -> Solver {
        if a.ring().is_integers() {
            Solver(Kind::Echelon(zlattice::Echelon::new(a)))
        } else {
            Solver(Kind::Normal(NormalSolver::new(a)))
        }
    }

    pub fn solve(&self, b: &[i64]) -> Option<Vec<i64>> {
        match &self.0 {
            Kind::Normal(s) => s.solve(b),
            Kind::Echelon(e) => e.solve(b),
        }
    }

    pub fn contains(&self, b: &[i64]) -> bool {
        self.solve(b).is_some()
    }

    /// Generators (as rows) of `{ z : z * A = 0 }`.
    pub fn left_kernel(&self) -> Matrix {
        match &self.0 {
            Kind::Normal(s) => s.left_kernel(),
            Kind::Echelon(e) => e.left_kernel(),
        }
    }
}

/// Solver read off from the normal form and its transforms.
#[derive(Clone, Debug)]
pub(crate) struct NormalSolver {
    report: DiagonalReport,
    rows: usize,
    cols: usize,
}

impl NormalSolver {
    pub(crate) fn new(a: &Matrix) -> NormalSolver {
        NormalSolver { report: matrix_normal_form(a), rows: a.rows(), cols: a.cols() }
    }

    pub(crate) fn solve(&self, b: &[i64]) -> Option<Vec<i64>> {
        assert_eq!(b.len(), self.cols, "right-hand side length");
        let ring = self.report.ring();
        let w = self.report.right.apply(b);
        let t = self.report.diagonal.len();
        let mut y = vec![0; self.rows];
        for (j, &wj) in w.iter().enumerate() {
            if j < t {
                y[j] = ring.divide(wj, self.report.diagonal[j])?;
            } else if wj != 0 {
                return None;
            }
        }
        Some(self.report.left.apply(&y))
    }

    pub(crate) fn left_kernel(&self) -> Matrix {
        let ring = self.report.ring();
        let t = self.report.diagonal.len();
        let mut rows = Vec::new();
        for j in 0..self.rows {
            let scale = if j < t { ring.ann(self.report.diagonal[j]) } else { Some(1) };
            if let Some(c) = scale {
                let row: Vec<i64> = self.report.left.row(j).iter().map(|&x| ring.mul(c, x)).collect();
                if row.iter().any(|&x| x != 0) {
                    rows.push(row);
                }
            }
        }
        Matrix::from_rows(ring, self.rows, &rows)
    }
}

/// One solution of `x * a = b` for a single right-hand side.
pub fn solve_once(a: &Matrix, b: &[i64]) -> Option<Vec<i64>> {
    assert_eq!(b.len(), a.cols(), "right-hand side length");
    Solver::new(a).solve(b)
}

/// Generators of the left kernel `{ z : z * A = 0 }`.
pub fn left_kernel(a: &Matrix) -> Matrix {
    Solver::new(a).left_kernel()
}
