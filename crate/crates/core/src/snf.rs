//! Smith normal form over the integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::matrix::Matrix;

/// `left * a * right = diagonal(invariants)` with `left`, `right` unimodular.
#[derive(Clone, Debug)]
pub struct SmithForm {
    /// Diagonal entries d1 | d2 | ..., all nonnegative, length min(rows, cols).
    pub invariants: Vec<BigInt>,
    pub left: Matrix<BigInt>,
    pub right: Matrix<BigInt>,
}

struct Work {
    a: Vec<Vec<BigInt>>,
    l: Vec<Vec<BigInt>>,
    r: Vec<Vec<BigInt>>,
}

impl Work {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap(i, j);
        self.l.swap(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        for row in self.a.iter_mut().chain(self.r.iter_mut()) {
            row.swap(i, j);
        }
    }

    /// row_i <- p row_i + q row_j, row_j <- s row_i + t row_j, with pt - qs = ±1.
    fn mix_rows(&mut self, i: usize, j: usize, [p, q, s, t]: [&BigInt; 4]) {
        for m in [&mut self.a, &mut self.l] {
            for k in 0..m[i].len() {
                let (x, y) = (m[i][k].clone(), m[j][k].clone());
                m[i][k] = p * &x + q * &y;
                m[j][k] = s * &x + t * &y;
            }
        }
    }

    fn mix_cols(&mut self, i: usize, j: usize, [p, q, s, t]: [&BigInt; 4]) {
        for m in [&mut self.a, &mut self.r] {
            for row in m.iter_mut() {
                let (x, y) = (row[i].clone(), row[j].clone());
                row[i] = p * &x + q * &y;
                row[j] = s * &x + t * &y;
            }
        }
    }
}

fn identity(n: usize) -> Vec<Vec<BigInt>> {
    (0..n)
        .map(|i| (0..n).map(|j| BigInt::from((i == j) as i32)).collect())
        .collect()
}

pub fn smith_form(m: &Matrix<BigInt>) -> SmithForm {
    let (rows, cols) = (m.rows(), m.cols());
    let mut w = Work {
        a: m.row_vecs(),
        l: identity(rows),
        r: identity(cols),
    };
    let n = rows.min(cols);
    for k in 0..n {
        // smallest nonzero entry in the trailing block becomes the pivot
        let pick = (k..rows)
            .flat_map(|i| (k..cols).map(move |j| (i, j)))
            .filter(|&(i, j)| !w.a[i][j].is_zero())
            .min_by_key(|&(i, j)| w.a[i][j].abs());
        let Some((pi, pj)) = pick else { break };
        w.swap_rows(k, pi);
        w.swap_cols(k, pj);
        loop {
            let mut changed = false;
            for i in k + 1..rows {
                if !w.a[i][k].is_zero() {
                    eliminate_row(&mut w, k, i);
                    changed = true;
                }
            }
            for j in k + 1..cols {
                if !w.a[k][j].is_zero() {
                    eliminate_col(&mut w, k, j);
                    changed = true;
                }
            }
            if changed {
                continue;
            }
            // divisibility: fold an offending row into the pivot row
            let bad = (k + 1..rows)
                .find(|&i| (k + 1..cols).any(|j| !w.a[i][j].is_multiple_of(&w.a[k][k])));
            match bad {
                Some(i) => {
                    let one = BigInt::from(1);
                    let zero = BigInt::zero();
                    w.mix_rows(k, i, [&one, &one, &zero, &one]);
                }
                None => break,
            }
        }
        if w.a[k][k].is_negative() {
            for x in w.a[k].iter_mut().chain(w.l[k].iter_mut()) {
                *x = -&*x;
            }
        }
    }
    let invariants = (0..n).map(|k| w.a[k][k].clone()).collect();
    SmithForm {
        invariants,
        left: Matrix::from_rows(rows, w.l),
        right: Matrix::from_rows(cols, w.r),
    }
}

/// Clears `a[i][k]` using the pivot `a[k][k]` via a Bezout row combination.
fn eliminate_row(w: &mut Work, k: usize, i: usize) {
    let (a, b) = (w.a[k][k].clone(), w.a[i][k].clone());
    let [x, y, s, t] = bezout(&a, &b);
    w.mix_rows(k, i, [&x, &y, &s, &t]);
}

fn eliminate_col(w: &mut Work, k: usize, j: usize) {
    let (a, b) = (w.a[k][k].clone(), w.a[k][j].clone());
    let [x, y, s, t] = bezout(&a, &b);
    w.mix_cols(k, j, [&x, &y, &s, &t]);
}

/// A unimodular `[x, y, s, t]` sending `(a, b)` to `(g, 0)`, with
/// `x = 1, y = 0` whenever `a` already divides `b`.
fn bezout(a: &BigInt, b: &BigInt) -> [BigInt; 4] {
    if b.is_multiple_of(a) {
        return [BigInt::from(1), BigInt::zero(), -(b / a), BigInt::from(1)];
    }
    let e = a.extended_gcd(b);
    let s = -(b / &e.gcd);
    let t = a / &e.gcd;
    [e.x, e.y, s, t]
}

/// gcd of all maximal minors, computed from the invariant factors.
pub fn maximal_minor_gcd(m: &Matrix<BigInt>) -> BigInt {
    smith_form(m).invariants.iter().product()
}
