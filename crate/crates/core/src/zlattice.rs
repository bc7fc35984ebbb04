//! Integer elimination with overflow control.
//!
//! The transforms of a Smith-style reduction over the integers can grow far
//! past the entries of the input. Elimination first runs in checked 128-bit
//! arithmetic; if anything overflows, or a transform does not fit back into
//! machine words, it is redone on big integers with an extra size reduction
//! of the kernel rows. In both passes the kernel parts of the transforms are
//! brought to Hermite form and used to size-reduce the remaining rows.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::matrix::Matrix;
use crate::ring::Ring;

trait Num: Clone + Ord {
    fn from_i64(x: i64) -> Self;
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn abs(&self) -> Option<Self>;
    fn neg(&self) -> Option<Self>;
    /// `self + c * b`
    fn add_mul(&self, c: &Self, b: &Self) -> Option<Self>;
    fn div_floor(&self, p: &Self) -> Self;
    fn divisible_by(&self, p: &Self) -> bool;
    fn is_negative(&self) -> bool;
    fn to_i64(&self) -> Option<i64>;
    fn to_big(&self) -> BigInt;

    // nearest-integer quotient, keeping remainders at most half the divisor
    fn round_div(&self, p: &Self) -> Option<Self> {
        let q = self.div_floor(p);
        let rem = self.add_mul(&q.neg()?, p)?;
        let twice = rem.add_mul(&Self::one(), &rem)?;
        if twice.abs()? > p.abs()? {
            q.add_mul(&Self::one(), &Self::one())
        } else {
            Some(q)
        }
    }
}

impl Num for i128 {
    fn from_i64(x: i64) -> Self {
        x as i128
    }
    fn zero() -> Self {
        0
    }
    fn one() -> Self {
        1
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn abs(&self) -> Option<Self> {
        self.checked_abs()
    }
    fn neg(&self) -> Option<Self> {
        self.checked_neg()
    }
    fn add_mul(&self, c: &Self, b: &Self) -> Option<Self> {
        c.checked_mul(*b).and_then(|v| self.checked_add(v))
    }
    fn div_floor(&self, p: &Self) -> Self {
        Integer::div_floor(self, p)
    }
    fn divisible_by(&self, p: &Self) -> bool {
        self % p == 0
    }
    fn is_negative(&self) -> bool {
        *self < 0
    }
    fn to_i64(&self) -> Option<i64> {
        i64::try_from(*self).ok()
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl Num for BigInt {
    fn from_i64(x: i64) -> Self {
        BigInt::from(x)
    }
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn abs(&self) -> Option<Self> {
        Some(Signed::abs(self))
    }
    fn neg(&self) -> Option<Self> {
        Some(-self)
    }
    fn add_mul(&self, c: &Self, b: &Self) -> Option<Self> {
        Some(self + c * b)
    }
    fn div_floor(&self, p: &Self) -> Self {
        Integer::div_floor(self, p)
    }
    fn divisible_by(&self, p: &Self) -> bool {
        self.is_multiple_of(p)
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn to_i64(&self) -> Option<i64> {
        ToPrimitive::to_i64(self)
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
}

type Rows<T> = Vec<Vec<T>>;

fn identity<T: Num>(n: usize) -> Rows<T> {
    (0..n).map(|i| (0..n).map(|j| if i == j { T::one() } else { T::zero() }).collect()).collect()
}

fn transpose<T: Num>(a: &Rows<T>, cols: usize) -> Rows<T> {
    (0..cols).map(|j| a.iter().map(|r| r[j].clone()).collect()).collect()
}

fn add_row<T: Num>(a: &mut Rows<T>, dst: usize, src: usize, c: &T) -> Option<()> {
    let s = a[src].clone();
    for (d, x) in a[dst].iter_mut().zip(&s) {
        if !x.is_zero() {
            *d = d.add_mul(c, x)?;
        }
    }
    Some(())
}

fn add_col<T: Num>(a: &mut Rows<T>, dst: usize, src: usize, c: &T) -> Option<()> {
    for r in a.iter_mut() {
        if !r[src].is_zero() {
            r[dst] = r[dst].add_mul(c, &r[src])?;
        }
    }
    Some(())
}

fn swap_cols<T>(a: &mut Rows<T>, i: usize, j: usize) {
    for r in a.iter_mut() {
        r.swap(i, j);
    }
}

fn neg_row<T: Num>(a: &mut Rows<T>, i: usize) -> Option<()> {
    for x in a[i].iter_mut() {
        *x = x.neg()?;
    }
    Some(())
}

fn neg_col<T: Num>(a: &mut Rows<T>, i: usize) -> Option<()> {
    for r in a.iter_mut() {
        r[i] = r[i].neg()?;
    }
    Some(())
}

/// `left * a * right = diag` with explicit inverses.
pub(crate) struct Report {
    pub diagonal: Vec<i64>,
    pub left: Matrix,
    pub left_inv: Matrix,
    pub right: Matrix,
    pub right_inv: Matrix,
}

struct Work<T> {
    a: Rows<T>,
    u: Rows<T>,
    ui: Rows<T>,
    v: Rows<T>,
    vi: Rows<T>,
}

impl<T: Num> Work<T> {
    fn row_swap(&mut self, i: usize, j: usize) {
        self.a.swap(i, j);
        self.u.swap(i, j);
        swap_cols(&mut self.ui, i, j);
    }

    fn col_swap(&mut self, i: usize, j: usize) {
        swap_cols(&mut self.a, i, j);
        swap_cols(&mut self.v, i, j);
        self.vi.swap(i, j);
    }

    fn row_add(&mut self, dst: usize, src: usize, c: &T) -> Option<()> {
        if c.is_zero() {
            return Some(());
        }
        add_row(&mut self.a, dst, src, c)?;
        add_row(&mut self.u, dst, src, c)?;
        add_col(&mut self.ui, src, dst, &c.neg()?)
    }

    fn col_add(&mut self, dst: usize, src: usize, c: &T) -> Option<()> {
        if c.is_zero() {
            return Some(());
        }
        add_col(&mut self.a, dst, src, c)?;
        add_col(&mut self.v, dst, src, c)?;
        add_row(&mut self.vi, src, dst, &c.neg()?)
    }
}

fn abs_of<T: Num>(x: &T) -> T {
    x.abs().unwrap_or_else(|| x.clone())
}

fn diagonal_work<T: Num>(a: &Matrix) -> Option<(Vec<T>, Work<T>)> {
    let (m, n) = (a.rows(), a.cols());
    let rows: Rows<T> = (0..m).map(|i| a.row(i).iter().map(|&x| T::from_i64(x)).collect()).collect();
    let mut w = Work { a: rows, u: identity(m), ui: identity(m), v: identity(n), vi: identity(n) };
    for t in 0..m.min(n) {
        let best = (t..m)
            .flat_map(|i| (t..n).map(move |j| (i, j)))
            .filter(|&(i, j)| !w.a[i][j].is_zero())
            .min_by_key(|&(i, j)| abs_of(&w.a[i][j]));
        let Some((i, j)) = best else { break };
        w.row_swap(t, i);
        w.col_swap(t, j);
        loop {
            loop {
                let p = w.a[t][t].clone();
                for i in t + 1..m {
                    if !w.a[i][t].is_zero() {
                        let q = w.a[i][t].round_div(&p)?;
                        w.row_add(i, t, &q.neg()?)?;
                    }
                }
                for j in t + 1..n {
                    if !w.a[t][j].is_zero() {
                        let q = w.a[t][j].round_div(&p)?;
                        w.col_add(j, t, &q.neg()?)?;
                    }
                }
                let row = (t + 1..m).filter(|&i| !w.a[i][t].is_zero()).min_by_key(|&i| abs_of(&w.a[i][t]));
                let col = (t + 1..n).filter(|&j| !w.a[t][j].is_zero()).min_by_key(|&j| abs_of(&w.a[t][j]));
                match (row, col) {
                    (None, None) => break,
                    (Some(i), None) => w.row_swap(t, i),
                    (None, Some(j)) => w.col_swap(t, j),
                    (Some(i), Some(j)) => {
                        if abs_of(&w.a[i][t]) <= abs_of(&w.a[t][j]) {
                            w.row_swap(t, i)
                        } else {
                            w.col_swap(t, j)
                        }
                    }
                }
            }
            let p = w.a[t][t].clone();
            let offender = (t + 1..m).find(|&i| (t + 1..n).any(|j| !w.a[i][j].divisible_by(&p)));
            match offender {
                Some(i) => w.row_add(t, i, &T::one())?,
                None => break,
            }
        }
        if w.a[t][t].is_negative() {
            neg_row(&mut w.a, t)?;
            neg_row(&mut w.u, t)?;
            neg_col(&mut w.ui, t)?;
        }
    }
    let diagonal: Vec<T> = (0..m.min(n)).map(|i| w.a[i][i].clone()).collect();
    Some((diagonal, w))
}

fn eliminate<T: Num>(a: &Matrix, pairwise: bool) -> Option<Report> {
    let (m, n) = (a.rows(), a.cols());
    let (diagonal, w) = diagonal_work::<T>(a)?;
    let r = diagonal.iter().filter(|d| !d.is_zero()).count();
    let (left, left_inv) = reduce_against_kernel(w.u, w.ui, r, pairwise)?;
    let (vt, vit) = reduce_against_kernel(transpose(&w.v, n), transpose(&w.vi, n), r, pairwise)?;
    Some(Report {
        diagonal: diagonal.iter().map(T::to_i64).collect::<Option<_>>()?,
        left: narrow(&left, m)?,
        left_inv: narrow(&left_inv, m)?,
        right: narrow(&transpose(&vt, n), n)?,
        right_inv: narrow(&transpose(&vit, n), n)?,
    })
}

/// Invariant factors of `Z^n / rowspace(a)` other than `1` (with `0` for
/// free summands), and maps to and from the normal decomposition.
pub(crate) struct Cokernel {
    pub factors: Vec<i64>,
    /// `n x k`, column `j` reduced modulo factor `j`.
    pub to: Matrix,
    /// `k x n`, one representative for each normal generator.
    pub from: Matrix,
}

// Only the kernel columns of the right transform are kept as they come out of
// the reduction. The representatives of free generators are solved for
// against them, the torsion columns are corrected to be orthogonal to those
// representatives and reduced modulo their factors, and the torsion
// representatives are solved for last, so nothing large survives.
fn cokernel_in<T: Num>(a: &Matrix, pairwise: bool) -> Option<Cokernel> {
    let n = a.cols();
    let (diagonal, w) = diagonal_work::<T>(a)?;
    let r = diagonal.iter().filter(|d| !d.is_zero()).count();
    let (vt, _) = reduce_against_kernel(transpose(&w.v, n), transpose(&w.vi, n), r, pairwise)?;
    let torsion: Vec<usize> = (0..r).filter(|&j| diagonal[j] != T::one()).collect();
    let free = &vt[r..];
    let f = free.len();
    let vf = narrow(&transpose(&free.to_vec(), n), f)?;
    let ech = Echelon::new(&vf);
    let x: Vec<Vec<i64>> = (0..f)
        .map(|j| ech.solve(&(0..f).map(|i| i64::from(i == j)).collect::<Vec<_>>()))
        .collect::<Option<_>>()
        .expect("kernel columns extend to a basis");
    let mut cols: Rows<T> = Vec::new();
    for &i in &torsion {
        let d = &diagonal[i];
        let mut col = vt[i].clone();
        for (xj, fj) in x.iter().zip(free) {
            let c = xj.iter().zip(&vt[i]).try_fold(T::zero(), |acc, (&p, q)| acc.add_mul(&T::from_i64(p), q))?;
            if !c.is_zero() {
                let minus = c.neg()?;
                for (v, y) in col.iter_mut().zip(fj) {
                    *v = v.add_mul(&minus, y)?;
                }
            }
        }
        for v in col.iter_mut() {
            let q = v.div_floor(d);
            *v = v.add_mul(&q.neg()?, d)?;
        }
        cols.push(col);
    }
    let t = torsion.len();
    let factors: Vec<i64> = torsion.iter().map(|&i| diagonal[i].to_i64()).chain((0..f).map(|_| Some(0))).collect::<Option<_>>()?;
    cols.extend(free.iter().cloned());
    let to = narrow(&transpose(&cols, n), t + f)?;
    // x * to = e_i up to multiples of the factors
    let mut system: Vec<Vec<i64>> = (0..n).map(|k| to.row(k).to_vec()).collect();
    system.extend(factors[..t].iter().enumerate().map(|(i, &d)| (0..t + f).map(|k| if k == i { d } else { 0 }).collect()));
    let ech = Echelon::new(&Matrix::from_rows(Ring::Integers, t + f, &system));
    let mut from: Vec<Vec<i64>> = (0..t)
        .map(|i| {
            let mut y = ech.solve(&(0..t + f).map(|k| i64::from(k == i)).collect::<Vec<_>>())?;
            y.truncate(n);
            Some(y)
        })
        .collect::<Option<_>>()
        .expect("the normal decomposition is surjective");
    from.extend(x);
    let mut from = Matrix::from_rows(Ring::Integers, n, &from);
    // representatives only matter modulo the relations
    if from.entries().iter().any(|v| v.abs() > SHORT) {
        from = shorten_modulo(a, &from);
    }
    Some(Cokernel { factors, to, from })
}

/// The cokernel of `a` in normal form.
pub(crate) fn cokernel(a: &Matrix) -> Cokernel {
    cokernel_in::<i128>(a, false)
        .or_else(|| cokernel_in::<BigInt>(a, true))
        .expect("integer overflow in exact arithmetic")
}

/// Diagonalizes an integer matrix, leaving a divisor chain of nonnegative
/// entries on the diagonal.
pub(crate) fn diagonalize(a: &Matrix) -> Report {
    eliminate::<i128>(a, false)
        .or_else(|| eliminate::<BigInt>(a, true))
        .expect("integer overflow in exact arithmetic")
}

/// Row echelon form of `[a | I]` for repeated solves of `x * a = b`.
///
/// A row whose left part has become zero is never touched again, so only
/// the pivot rows carry transform entries that keep changing; `x` is read
/// off from those by forward substitution. The frozen rows form a basis of
/// the left kernel; once something large shows up they are LLL-reduced and
/// solutions are shortened against them.
#[derive(Clone, Debug)]
pub(crate) struct Echelon {
    a: Matrix,
    small: Option<Reduced<i128>>,
    big: OnceLock<Reduced<BigInt>>,
    kernel: OnceLock<ShortBasis>,
}

#[derive(Clone, Debug)]
struct Reduced<T> {
    rows: Rows<T>,
    pivots: Vec<(usize, usize)>,
    free: Vec<usize>,
}

// solutions with larger entries are shortened against the kernel
const SHORT: i64 = 1 << 16;

impl Echelon {
    pub(crate) fn new(a: &Matrix) -> Echelon {
        Echelon { a: a.clone(), small: reduce::<i128>(a).ok(), big: OnceLock::new(), kernel: OnceLock::new() }
    }

    fn big(&self) -> &Reduced<BigInt> {
        self.big.get_or_init(|| reduce::<BigInt>(&self.a).expect("elimination over big integers"))
    }

    fn short_kernel(&self) -> &ShortBasis {
        self.kernel.get_or_init(|| {
            let n = self.a.cols();
            let rows = match &self.small {
                Some(r) => r.kernel_rows(n).iter().map(|x| x.iter().map(Num::to_big).collect()).collect(),
                None => self.big().kernel_rows(n),
            };
            ShortBasis::new(rows)
        })
    }

    pub(crate) fn solve(&self, b: &[i64]) -> Option<Vec<i64>> {
        let n = self.a.cols();
        let x: Vec<BigInt> = match self.small.as_ref().map(|r| r.solve(n, b)) {
            Some(Ok(x)) => x?.iter().map(Num::to_big).collect(),
            _ => self.big().solve(n, b).expect("elimination over big integers")?,
        };
        let fits = x.iter().all(|v| Num::to_i64(v).is_some_and(|v| v.abs() <= SHORT));
        let x = if fits { x } else { self.short_kernel().shorten(x) };
        Some(x.iter().map(|v| Num::to_i64(v).expect("integer overflow in exact arithmetic")).collect())
    }

    /// Basis of `{ z : z * a = 0 }`.
    pub(crate) fn left_kernel(&self) -> Matrix {
        let m = self.a.rows();
        if let Some(r) = &self.small {
            let rows = r.kernel_rows(self.a.cols());
            if rows.iter().flatten().all(|v| v.unsigned_abs() <= SHORT as u128) {
                return narrow(&rows, m).expect("small entries");
            }
        }
        narrow(&self.short_kernel().rows, m).expect("integer overflow in exact arithmetic")
    }
}

// Err on overflow
fn reduce<T: Num>(a: &Matrix) -> Result<Reduced<T>, ()> {
    let (m, n) = (a.rows(), a.cols());
    let mut rows: Rows<T> = (0..m)
        .map(|i| {
            let unit = (0..m).map(|k| if k == i { T::one() } else { T::zero() });
            (0..n).map(|j| T::from_i64(a.get(i, j))).chain(unit).collect()
        })
        .collect();
    // rows[dst] += c * rows[src]
    let row_add = |rows: &mut Rows<T>, dst: usize, src: usize, c: &T| -> Result<(), ()> {
        let (d, s) = if dst < src {
            let (lo, hi) = rows.split_at_mut(src);
            (&mut lo[dst], &hi[0])
        } else {
            let (lo, hi) = rows.split_at_mut(dst);
            (&mut hi[0], &lo[src])
        };
        for (x, y) in d.iter_mut().zip(s.iter()) {
            if !y.is_zero() {
                *x = x.add_mul(c, y).ok_or(())?;
            }
        }
        Ok(())
    };
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut free: Vec<usize> = (0..m).collect();
    for col in 0..n {
        loop {
            let Some(&k) = free.iter().filter(|&&i| !rows[i][col].is_zero()).min_by_key(|&&i| rows[i][col].abs()) else { break };
            let mut clean = true;
            for &i in &free {
                if i == k || rows[i][col].is_zero() {
                    continue;
                }
                let q = rows[i][col].round_div(&rows[k][col]).ok_or(())?;
                row_add(&mut rows, i, k, &q.neg().ok_or(())?)?;
                clean &= rows[i][col].is_zero();
            }
            if clean {
                free.retain(|&i| i != k);
                if rows[k][col].is_negative() {
                    for v in rows[k].iter_mut() {
                        *v = v.neg().ok_or(())?;
                    }
                }
                // keep earlier pivot rows small against the new one
                for &(i, _) in &pivots {
                    let q = rows[i][col].div_floor(&rows[k][col]);
                    if !q.is_zero() {
                        row_add(&mut rows, i, k, &q.neg().ok_or(())?)?;
                    }
                }
                pivots.push((k, col));
                break;
            }
        }
    }
    Ok(Reduced { rows, pivots, free })
}

impl<T: Num> Reduced<T> {
    fn kernel_rows(&self, n: usize) -> Rows<T> {
        self.free.iter().map(|&i| self.rows[i][n..].to_vec()).collect()
    }

    // Err on overflow, Ok(None) when the system has no solution
    fn solve(&self, n: usize, b: &[i64]) -> Result<Option<Vec<T>>, ()> {
        let rows = &self.rows;
        let m = rows.len();
        let mut rest: Vec<T> = b.iter().map(|&v| T::from_i64(v)).collect();
        let mut x: Vec<T> = vec![T::zero(); m];
        for &(k, col) in &self.pivots {
            if rest[col].is_zero() {
                continue;
            }
            let p = &rows[k][col];
            if !rest[col].divisible_by(p) {
                return Ok(None);
            }
            let y = rest[col].div_floor(p);
            let minus = y.neg().ok_or(())?;
            for j in col..n {
                if !rows[k][j].is_zero() {
                    rest[j] = rest[j].add_mul(&minus, &rows[k][j]).ok_or(())?;
                }
            }
            for i in 0..m {
                if !rows[k][n + i].is_zero() {
                    x[i] = x[i].add_mul(&y, &rows[k][n + i]).ok_or(())?;
                }
            }
        }
        if rest.iter().any(|v| !v.is_zero()) {
            return Ok(None);
        }
        Ok(Some(x))
    }
}

/// Given an invertible `u` whose rows from `r` on span a lattice that may be
/// freely rebased, puts those rows in Hermite form and reduces the first `r`
/// rows against them, updating the inverse to match.
fn reduce_against_kernel<T: Num>(mut u: Rows<T>, mut ui: Rows<T>, r: usize, pairwise: bool) -> Option<(Rows<T>, Rows<T>)> {
    let m = u.len();
    let cols = if m == 0 { 0 } else { u[0].len() };
    let mut lead = r;
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    for c in 0..cols {
        if lead >= m {
            break;
        }
        loop {
            let best = (lead..m).filter(|&i| !u[i][c].is_zero()).min_by_key(|&i| abs_of(&u[i][c]));
            let Some(b) = best else { break };
            u.swap(lead, b);
            swap_cols(&mut ui, lead, b);
            let mut clean = true;
            for i in lead + 1..m {
                if !u[i][c].is_zero() {
                    let q = u[i][c].div_floor(&u[lead][c]);
                    add_row(&mut u, i, lead, &q.neg()?)?;
                    add_col(&mut ui, lead, i, &q)?;
                    clean &= u[i][c].is_zero();
                }
            }
            if clean {
                break;
            }
        }
        if u[lead][c].is_zero() {
            continue;
        }
        if u[lead][c].is_negative() {
            neg_row(&mut u, lead)?;
            neg_col(&mut ui, lead)?;
        }
        pivots.push((lead, c));
        lead += 1;
    }
    for &(k, c) in pivots.iter() {
        for i in 0..k {
            let q = u[i][c].div_floor(&u[k][c]);
            if !q.is_zero() {
                add_row(&mut u, i, k, &q.neg()?)?;
                add_col(&mut ui, k, i, &q)?;
            }
        }
    }
    if pairwise {
        pairwise_reduce(&mut u, &mut ui, r)?;
    }
    Some((u, ui))
}

fn dot<T: Num>(a: &[T], b: &[T]) -> Option<T> {
    a.iter().zip(b).try_fold(T::zero(), |acc, (x, y)| acc.add_mul(x, y))
}

// Shortens rows by subtracting rounded projections onto kernel rows until
// no step changes anything.
fn pairwise_reduce<T: Num>(u: &mut Rows<T>, ui: &mut Rows<T>, r: usize) -> Option<()> {
    let m = u.len();
    for _ in 0..32 {
        let mut changed = false;
        for j in r..m {
            let nj = dot(&u[j], &u[j])?;
            if nj.is_zero() {
                continue;
            }
            for i in 0..m {
                if i == j {
                    continue;
                }
                let q = dot(&u[i], &u[j])?.round_div(&nj)?;
                if !q.is_zero() {
                    add_row(u, i, j, &q.neg()?)?;
                    add_col(ui, j, i, &q)?;
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    Some(())
}

/// LLL-reduced basis (parameter 3/4) of the lattice spanned by some
/// independent rows, kept with its integral Gram-Schmidt data so vectors can
/// be shortened modulo the lattice.
#[derive(Clone, Debug)]
pub(crate) struct ShortBasis {
    rows: Rows<BigInt>,
    /// `d[j]` is the Gram determinant of the first `j` rows.
    d: Vec<BigInt>,
    /// `lam[i][j] = d[j + 1] * mu[i][j]`.
    lam: Vec<Vec<BigInt>>,
}

fn cross(a: &BigInt, b: &BigInt, c: &BigInt, e: &BigInt, f: &BigInt) -> BigInt {
    (a * b - c * e) / f
}

// |2 lam| > d
fn too_long(lam: &BigInt, d: &BigInt) -> bool {
    Signed::abs(&(lam * 2)) > *d
}

impl ShortBasis {
    fn new(rows: Rows<BigInt>) -> ShortBasis {
        let k = rows.len();
        let mut b = ShortBasis { rows, d: vec![<BigInt as One>::one(); k + 1], lam: vec![Vec::new(); k] };
        if k == 0 {
            return b;
        }
        b.d[1] = dot(&b.rows[0], &b.rows[0]).expect("big integers");
        let (mut kk, mut kmax) = (1, 0);
        while kk < k {
            if kk > kmax {
                kmax = kk;
                let c = b.coefficients(&b.rows[kk], kk + 1, true);
                b.d[kk + 1] = c[kk].clone();
                b.lam[kk] = c[..kk].to_vec();
                assert!(!Zero::is_zero(&b.d[kk + 1]), "rows must be independent");
            }
            b.reduce(kk, kk - 1);
            let lam = &b.lam[kk][kk - 1];
            if &b.d[kk + 1] * &b.d[kk - 1] * 4 < &b.d[kk] * &b.d[kk] * 3 - lam * lam * 4 {
                b.swap(kk, kmax);
                kk = (kk - 1).max(1);
            } else {
                for l in (0..kk - 1).rev() {
                    b.reduce(kk, l);
                }
                kk += 1;
            }
        }
        b
    }

    /// Spanned by the rows of `gens`, which may be dependent.
    fn spanned_by(gens: &Matrix) -> ShortBasis {
        let e = reduce::<BigInt>(gens).expect("big integers");
        let n = gens.cols();
        ShortBasis::new(e.pivots.iter().map(|&(k, _)| e.rows[k][..n].to_vec()).collect())
    }

    // `lam` values of `x` against the first `upto` rows; when `x` is row
    // `upto - 1` itself the last value is its Gram determinant
    fn coefficients(&self, x: &[BigInt], upto: usize, own: bool) -> Vec<BigInt> {
        let mut out: Vec<BigInt> = Vec::with_capacity(upto);
        for j in 0..upto {
            let mut v = dot(x, &self.rows[j]).expect("big integers");
            for i in 0..j {
                let lj = if own && j + 1 == upto { &out[i] } else { &self.lam[j][i] };
                v = cross(&self.d[i + 1], &v, &out[i], lj, &self.d[i]);
            }
            out.push(v);
        }
        out
    }

    fn reduce(&mut self, kk: usize, l: usize) {
        if !too_long(&self.lam[kk][l], &self.d[l + 1]) {
            return;
        }
        let q = self.lam[kk][l].round_div(&self.d[l + 1]).expect("big integers");
        let row = self.rows[l].clone();
        for (x, y) in self.rows[kk].iter_mut().zip(&row) {
            *x -= &q * y;
        }
        self.lam[kk][l] -= &q * &self.d[l + 1];
        for i in 0..l {
            let t = &q * &self.lam[l][i];
            self.lam[kk][i] -= t;
        }
    }

    fn swap(&mut self, kk: usize, kmax: usize) {
        self.rows.swap(kk, kk - 1);
        for j in 0..kk - 1 {
            let t = self.lam[kk][j].clone();
            self.lam[kk][j] = std::mem::replace(&mut self.lam[kk - 1][j], t);
        }
        let lam = self.lam[kk][kk - 1].clone();
        let b = (&self.d[kk - 1] * &self.d[kk + 1] + &lam * &lam) / &self.d[kk];
        for i in kk + 1..=kmax {
            let t = self.lam[i][kk].clone();
            let new_k = cross(&self.d[kk + 1], &self.lam[i][kk - 1], &lam, &t, &self.d[kk]);
            self.lam[i][kk - 1] = (&b * &t + &lam * &new_k) / &self.d[kk + 1];
            self.lam[i][kk] = new_k;
        }
        self.d[kk] = b;
    }

    /// `x` minus a nearby lattice vector, or `x` itself if that is shorter.
    fn shorten(&self, x: Vec<BigInt>) -> Vec<BigInt> {
        let k = self.rows.len();
        let mut y = x.clone();
        let mut c = self.coefficients(&y, k, false);
        for l in (0..k).rev() {
            if !too_long(&c[l], &self.d[l + 1]) {
                continue;
            }
            let q = c[l].round_div(&self.d[l + 1]).expect("big integers");
            for (v, b) in y.iter_mut().zip(&self.rows[l]) {
                *v -= &q * b;
            }
            c[l] -= &q * &self.d[l + 1];
            for j in 0..l {
                let t = &q * &self.lam[l][j];
                c[j] -= t;
            }
        }
        let size = |v: &[BigInt]| v.iter().map(|t| Signed::abs(t)).max().unwrap_or_default();
        if size(&y) <= size(&x) {
            y
        } else {
            x
        }
    }
}

/// Rows of `xs` shortened modulo the lattice spanned by the rows of `gens`.
pub(crate) fn shorten_modulo(gens: &Matrix, xs: &Matrix) -> Matrix {
    let basis = ShortBasis::spanned_by(gens);
    let rows: Rows<BigInt> = (0..xs.rows()).map(|i| basis.shorten(xs.row(i).iter().map(|&v| BigInt::from(v)).collect())).collect();
    narrow(&rows, xs.cols()).expect("shortening does not lengthen")
}

fn narrow<T: Num>(a: &Rows<T>, cols: usize) -> Option<Matrix> {
    let rows: Vec<Vec<i64>> = a.iter().map(|r| r.iter().map(T::to_i64).collect::<Option<_>>()).collect::<Option<_>>()?;
    Some(Matrix::from_rows(Ring::Integers, cols, &rows))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::snf::NormalSolver;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn solve(a: &Matrix, b: &[i64]) -> Option<Vec<i64>> {
        Echelon::new(a).solve(b)
    }

    fn check(a: &Matrix, b: &[i64]) {
        let x = solve(a, b);
        assert_eq!(x.is_some(), NormalSolver::new(a).solve(b).is_some(), "{a:?} {b:?}");
        if let Some(x) = x {
            assert_eq!(a.apply(&x), b);
        }
        let k = Echelon::new(a).left_kernel();
        assert!(k.mul(a).is_zero());
        assert_eq!(k.rows(), NormalSolver::new(a).left_kernel().rows());
    }

    #[test]
    fn short_basis_is_reduced_and_spans() {
        let z = Ring::Integers;
        let a = Matrix::from_rows(z, 3, &[vec![1, 1, 1], vec![-1, 0, 2], vec![3, 5, 6], vec![2, 6, 9]]);
        let b = ShortBasis::spanned_by(&a);
        assert_eq!(b.rows.len(), 3);
        let basis = narrow(&b.rows, 3).unwrap();
        // same lattice: each side solves into the other
        for i in 0..a.rows() {
            assert!(Echelon::new(&basis).solve(a.row(i)).is_some());
        }
        for i in 0..basis.rows() {
            assert!(Echelon::new(&a).solve(basis.row(i)).is_some());
        }
        let skew = ShortBasis::new(vec![vec![BigInt::from(1), BigInt::from(1000)], vec![BigInt::from(2), BigInt::from(2001)]]);
        assert!(skew.rows.iter().flatten().all(|v| Signed::abs(v) <= BigInt::from(2)));
        // size reduced
        for i in 0..3 {
            for j in 0..i {
                assert!(!too_long(&b.lam[i][j], &b.d[j + 1]));
            }
        }
    }

    #[test]
    fn shortening_stays_in_the_coset() {
        let z = Ring::Integers;
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..50 {
            let (m, n) = (rng.gen_range(1..5), rng.gen_range(2..6));
            let e: Vec<i64> = (0..m * n).map(|_| rng.gen_range(-6..=6)).collect();
            let a = Matrix::from_entries(z, m, n, &e).unwrap();
            let big: Vec<i64> = (0..m).map(|_| rng.gen_range(-1_000_000..=1_000_000)).collect();
            let small: Vec<i64> = (0..n).map(|_| rng.gen_range(-3..=3)).collect();
            let x: Vec<i64> = a.apply(&big).iter().zip(&small).map(|(u, v)| u + v).collect();
            let xs = Matrix::from_rows(z, n, &[x.clone()]);
            let y = shorten_modulo(&a, &xs);
            let diff: Vec<i64> = x.iter().zip(y.row(0)).map(|(u, v)| u - v).collect();
            assert!(Echelon::new(&a).solve(&diff).is_some());
            assert!(y.row(0).iter().all(|v| v.abs() <= x.iter().map(|v| v.abs()).max().unwrap()));
        }
    }

    #[test]
    fn uses_every_row() {
        let z = Ring::Integers;
        let a = Matrix::from_rows(z, 1, &[vec![2], vec![3]]);
        assert_eq!(a.apply(&solve(&a, &[1]).unwrap()), vec![1]);
        assert!(solve(&Matrix::from_rows(z, 1, &[vec![4], vec![6]]), &[1]).is_none());
        assert_eq!(solve(&Matrix::zeros(z, 0, 2), &[0, 0]), Some(vec![]));
    }

    #[test]
    fn agrees_with_the_normal_form() {
        let z = Ring::Integers;
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..300 {
            let (m, n) = (rng.gen_range(0..6), rng.gen_range(1..6));
            let e: Vec<i64> = (0..m * n).map(|_| rng.gen_range(-4..=4)).collect();
            let a = Matrix::from_entries(z, m, n, &e).unwrap();
            let b: Vec<i64> = if rng.gen_bool(0.5) {
                let x: Vec<i64> = (0..m).map(|_| rng.gen_range(-3..=3)).collect();
                a.apply(&x)
            } else {
                (0..n).map(|_| rng.gen_range(-5..=5)).collect()
            };
            check(&a, &b);
        }
    }
}
