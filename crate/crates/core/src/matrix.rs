//! Dense matrices over a ring: minors, module-preserving unit elimination and
//! rank over prime fields.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::ring::{ModInt, Ring};

/// Limits on minor enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    /// Maximum number of partial-determinant states visited by one minor
    /// enumeration.
    pub max_minor_states: u64,
    /// Maximum bit length of any integer coefficient in a computed minor.
    pub max_coeff_bits: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_minor_states: 20_000_000,
            max_coeff_bits: 4096,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BudgetExceeded {
    #[error("minor enumeration needs {needed} states, budget is {budget}")]
    MinorStates { needed: u128, budget: u64 },
    #[error("coefficient of {bits} bits exceeds budget of {budget}")]
    CoefficientBits { bits: u64, budget: u64 },
    #[error("matrix has {0} columns; minor enumeration supports at most 63")]
    TooWide(usize),
}

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix<R> {
    rows: usize,
    cols: usize,
    data: Vec<R>,
}

impl<R: Ring> Matrix<R> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![R::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, R::one());
        }
        m
    }

    /// Panics if the rows are ragged.
    pub fn from_rows(cols: usize, rows: Vec<Vec<R>>) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix rows");
            data.extend(r);
        }
        Matrix {
            rows: n,
            cols,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &R {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: R) {
        self.data[i * self.cols + j] = x;
    }

    pub fn add_to(&mut self, i: usize, j: usize, x: R) {
        let slot = &mut self.data[i * self.cols + j];
        *slot = slot.clone() + x;
    }

    pub fn row(&self, i: usize) -> &[R] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<R>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn map<S: Ring>(&self, mut f: impl FnMut(&R) -> S) -> Matrix<S> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(&mut f).collect(),
        }
    }

    pub fn try_map<S: Ring, Err>(
        &self,
        mut f: impl FnMut(&R) -> Result<S, Err>,
    ) -> Result<Matrix<S>, Err> {
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(&mut f).collect::<Result<_, _>>()?,
        })
    }

    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols.len());
        for &i in rows {
            for &j in cols {
                data.push(self.get(i, j).clone());
            }
        }
        Matrix {
            rows: rows.len(),
            cols: cols.len(),
            data,
        }
    }

    pub fn without_columns(&self, drop: &[usize]) -> Self {
        let keep: Vec<usize> = (0..self.cols).filter(|j| !drop.contains(j)).collect();
        let all: Vec<usize> = (0..self.rows).collect();
        self.select(&all, &keep)
    }

    pub fn with_row(&self, row: Vec<R>) -> Self {
        assert_eq!(row.len(), self.cols);
        let mut data = self.data.clone();
        data.extend(row);
        Matrix {
            rows: self.rows + 1,
            cols: self.cols,
            data,
        }
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows);
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    out.add_to(i, j, a.clone() * rhs.get(k, j).clone());
                }
            }
        }
        out
    }

    pub fn is_zero_matrix(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    fn row_is_zero(&self, i: usize) -> bool {
        self.row(i).iter().all(Zero::is_zero)
    }

    /// All `size x size` minors (row subsets in lexicographic order, column
    /// subsets likewise). Size 0 yields `[1]`; sizes beyond either dimension
    /// yield nothing.
    pub fn minors(&self, size: usize, budget: &Budget) -> Result<Vec<R>, BudgetExceeded> {
        if size == 0 {
            return Ok(vec![R::one()]);
        }
        if size > self.rows || size > self.cols {
            return Ok(Vec::new());
        }
        if self.cols > 63 {
            return Err(BudgetExceeded::TooWide(self.cols));
        }
        let layer_total: u128 = (1..=size).map(|d| binomial(self.cols, d)).sum();
        let needed = binomial(self.rows, size) * layer_total;
        if needed > budget.max_minor_states as u128 {
            return Err(BudgetExceeded::MinorStates {
                needed,
                budget: budget.max_minor_states,
            });
        }
        let col_sets: Vec<u64> = combinations(self.cols, size)
            .into_iter()
            .map(|cs| cs.into_iter().fold(0u64, |m, j| m | (1 << j)))
            .collect();
        let mut out = Vec::new();
        for rows in combinations(self.rows, size) {
            let layer = self.laplace_layers(&rows);
            for mask in &col_sets {
                let minor = layer.get(mask).cloned().unwrap_or_else(R::zero);
                check_bits(&minor, budget)?;
                out.push(minor);
            }
        }
        Ok(out)
    }

    /// Minors of size `|rows|` for every column subset, by expansion along
    /// successive rows with memoisation over column masks. Zero entries are
    /// omitted from the returned map.
    fn laplace_layers(&self, rows: &[usize]) -> HashMap<u64, R> {
        let mut layer: HashMap<u64, R> = HashMap::from([(0u64, R::one())]);
        for &r in rows {
            let mut next: HashMap<u64, R> = HashMap::new();
            for (mask, det) in &layer {
                for j in 0..self.cols {
                    if mask & (1 << j) != 0 {
                        continue;
                    }
                    let entry = self.get(r, j);
                    if entry.is_zero() {
                        continue;
                    }
                    let above = (mask >> j).count_ones();
                    let mut term = entry.clone() * det.clone();
                    if above % 2 == 1 {
                        term = -term;
                    }
                    let slot = next.entry(mask | (1 << j)).or_insert_with(R::zero);
                    *slot = slot.clone() + term;
                }
            }
            next.retain(|_, d| !d.is_zero());
            layer = next;
        }
        layer
    }

    pub fn determinant(&self) -> R {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        if self.rows == 0 {
            return R::one();
        }
        let rows: Vec<usize> = (0..self.rows).collect();
        let full = (1u64 << self.cols) - 1;
        self.laplace_layers(&rows)
            .remove(&full)
            .unwrap_or_else(R::zero)
    }

    /// Eliminates unit pivots: for a unit entry at (r, c), clears column c with
    /// row operations, then drops row r and column c. The cokernel module, and
    /// hence every elementary ideal (indexed from the column count), is
    /// unchanged. Zero rows are dropped. Returns the surviving original column
    /// indices alongside the reduced matrix.
    pub fn reduce_units(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut labels: Vec<usize> = (0..self.cols).collect();
        loop {
            let keep: Vec<usize> = (0..m.rows).filter(|&i| !m.row_is_zero(i)).collect();
            if keep.len() != m.rows {
                let all: Vec<usize> = (0..m.cols).collect();
                m = m.select(&keep, &all);
            }
            let Some((r, c)) = m.cheapest_unit_pivot() else {
                break;
            };
            let inv = m.get(r, c).unit_inverse().expect("pivot is a unit");
            let pivot_row = m.row(r).to_vec();
            for i in 0..m.rows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let factor = m.get(i, c).clone() * inv.clone();
                for (j, p) in pivot_row.iter().enumerate() {
                    if p.is_zero() {
                        continue;
                    }
                    let x = m.get(i, j).clone() - factor.clone() * p.clone();
                    m.set(i, j, x);
                }
            }
            let rows: Vec<usize> = (0..m.rows).filter(|&i| i != r).collect();
            let cols: Vec<usize> = (0..m.cols).filter(|&j| j != c).collect();
            m = m.select(&rows, &cols);
            labels.remove(c);
        }
        (m, labels)
    }

    fn cheapest_unit_pivot(&self) -> Option<(usize, usize)> {
        let row_nnz: Vec<usize> = (0..self.rows)
            .map(|i| self.row(i).iter().filter(|x| !x.is_zero()).count())
            .collect();
        let col_nnz: Vec<usize> = (0..self.cols)
            .map(|j| {
                (0..self.rows)
                    .filter(|&i| !self.get(i, j).is_zero())
                    .count()
            })
            .collect();
        let mut best: Option<((usize, usize), (usize, usize))> = None;
        for i in 0..self.rows {
            for j in 0..self.cols {
                let x = self.get(i, j);
                if x.is_zero() || x.unit_inverse().is_none() {
                    continue;
                }
                let fill = (row_nnz[i] - 1) * (col_nnz[j] - 1);
                let row_weight: usize = self.row(i).iter().map(Ring::weight).sum();
                let cost = (fill, row_weight);
                if best.is_none_or(|(c, _)| cost < c) {
                    best = Some((cost, (i, j)));
                }
            }
        }
        best.map(|(_, at)| at)
    }
}

impl Matrix<BigInt> {
    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        Self::from_rows(
            cols,
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    /// Fraction-free (Bareiss) determinant.
    pub fn bareiss_determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.row_vecs();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                let Some(p) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                    return BigInt::zero();
                };
                a.swap(k, p);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = num / &prev;
                }
                a[i][k] = BigInt::zero();
            }
            prev = a[k][k].clone();
        }
        sign * a[n - 1][n - 1].clone()
    }
}

impl<R: Ring + fmt::Display> fmt::Display for Matrix<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let cells: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

impl<R: Ring> fmt::Debug for Matrix<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Matrix")
            .field("rows", &self.rows)
            .field("cols", &self.cols)
            .field("data", &self.row_vecs())
            .finish()
    }
}

fn check_bits<R: Ring>(x: &R, budget: &Budget) -> Result<(), BudgetExceeded> {
    let bits = x.coeff_bits();
    if bits > budget.max_coeff_bits {
        return Err(BudgetExceeded::CoefficientBits {
            bits,
            budget: budget.max_coeff_bits,
        });
    }
    Ok(())
}

pub(crate) fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// k-subsets of 0..n in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    go(0, n, k, &mut cur, &mut out);
    out
}

/// Rank over Z/p for prime p.
pub fn rank_mod_p(rows: &[Vec<ModInt>]) -> usize {
    let mut a: Vec<Vec<ModInt>> = rows.to_vec();
    let Some(ncols) = a.first().map(Vec::len) else {
        return 0;
    };
    let mut rank = 0;
    for c in 0..ncols {
        let Some(p) = (rank..a.len()).find(|&i| a[i][c].value() != 0) else {
            continue;
        };
        a.swap(rank, p);
        let inv = a[rank][c]
            .inverse()
            .expect("nonzero element of a prime field");
        let pivot: Vec<ModInt> = a[rank].iter().map(|x| x.mul(inv)).collect();
        for i in 0..a.len() {
            if i == rank || a[i][c].value() == 0 {
                continue;
            }
            let f = a[i][c];
            let m = f.modulus();
            for j in 0..ncols {
                let sub = pivot[j].mul(f);
                a[i][j] = a[i][j].add(ModInt::new(-(sub.value() as i64), m));
            }
        }
        a[rank] = pivot;
        rank += 1;
    }
    rank
}
