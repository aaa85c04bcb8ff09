//! Numerical and polynomial invariants computed from presentation matrices.
//!
//! Elementary ideals follow one convention throughout: for a matrix with `g`
//! columns (generators), `E_k` is generated by the `(g - k)`-minors.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::alexander::{
    extended_presentation, merged_end_columns, merged_one_variable_matrix, End, GroupPresentationZ2,
};
use crate::diagram::{Diagram, DiagramError, Kind, Role};
use crate::laurent::{LaurentPoly1, LaurentPoly2, SpecializeError};
use crate::matrix::{combinations, rank_mod_p, Budget, BudgetExceeded, Matrix};
use crate::ring::{gcd_all, GcdDomain, ModInt, Ring};
use crate::snf::smith_form;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum InvariantError {
    #[error("modulus must be at least 2, got {0}")]
    ModulusTooSmall(u64),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{s} is not a unit modulo {p}")]
    NonUnit { s: i64, p: u64 },
    #[error(transparent)]
    Budget(#[from] BudgetExceeded),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}

pub fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

/// Generators of `E_k`: all `(g - k)`-minors, or `[1]` once `k >= g`.
pub fn elementary_minors<R: Ring>(
    m: &Matrix<R>,
    k: usize,
    budget: &Budget,
) -> Result<Vec<R>, BudgetExceeded> {
    let size = m.cols().saturating_sub(k);
    m.minors(size, budget)
}

/// Canonical generator of the smallest principal ideal containing `E_k`.
///
/// Unit pivots are eliminated first; this changes neither the module nor its
/// elementary ideals. The gcd of no minors is 0.
pub fn char_poly<R: GcdDomain>(
    m: &Matrix<R>,
    k: usize,
    budget: &Budget,
) -> Result<R, BudgetExceeded> {
    let (reduced, _) = m.reduce_units();
    let minors = elementary_minors(&reduced, k, budget)?;
    Ok(gcd_all(minors.iter()).normalized())
}

/// All `size`-minors of an integer matrix, by fraction-free elimination.
pub fn integer_minors(m: &Matrix<BigInt>, size: usize) -> Vec<BigInt> {
    if size == 0 {
        return vec![BigInt::one()];
    }
    if size > m.rows() || size > m.cols() {
        return Vec::new();
    }
    let mut out = Vec::new();
    for rows in combinations(m.rows(), size) {
        for cols in combinations(m.cols(), size) {
            out.push(m.select(&rows, &cols).bareiss_determinant());
        }
    }
    out
}

fn at_integer(m: &Matrix<LaurentPoly1>, t: i64) -> Matrix<BigInt> {
    m.map(|x| {
        x.specialize(&BigInt::from(t))
            .expect("t = 1 and t = -1 are units")
    })
}

/// gcd of the maximal minors of the merged one-variable matrix at t = -1.
pub fn determinant_long(d: &Diagram) -> Result<BigInt, InvariantError> {
    d.expect_kind(Kind::Long)?;
    let a = at_integer(&merged_one_variable_matrix(d), -1);
    Ok(smith_form(&a).invariants.iter().product::<BigInt>().abs())
}

/// Every `(N - 1)`-minor of the merged one-variable matrix at t = 1 is ±1,
/// where `N` is its column count.
pub fn unit_minor_check(d: &Diagram) -> bool {
    let a = at_integer(&merged_one_variable_matrix(d), 1);
    let size = a.cols().saturating_sub(1);
    integer_minors(&a, size).iter().all(|x| x.abs().is_one())
}

/// Integer coloring matrix: one row per crossing, one column per arc of the
/// diagram with arcs divided only at under passages. A crossing row holds
/// +2 on its over arc and -1 on each of its two under arcs.
pub fn coloring_matrix(d: &Diagram) -> Matrix<BigInt> {
    let ps = d.passages();
    let m = ps.len();
    let unders = ps.iter().filter(|p| p.role == Role::Under).count();
    // arc j runs from the j-th under passage to the next one
    let cols = match d.kind() {
        Kind::Long => unders + 1,
        Kind::Closed => unders.max(1),
    };
    let mut arc_of = vec![0usize; m];
    let mut current = 0;
    for (i, p) in ps.iter().enumerate() {
        arc_of[i] = current % cols;
        if p.role == Role::Under {
            current += 1;
        }
    }
    let after = |i: usize| match d.kind() {
        Kind::Long => arc_of[i] + 1,
        Kind::Closed => (arc_of[i] + 1) % cols,
    };
    let mut a = Matrix::zeros(d.crossing_count(), cols);
    for (x, (o, u)) in d.positions().into_iter().enumerate() {
        a.add_to(x, arc_of[o], BigInt::from(2));
        a.add_to(x, arc_of[u], BigInt::from(-1));
        a.add_to(x, after(u), BigInt::from(-1));
    }
    a
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColoringReport {
    pub modulus: u64,
    pub matrix: Matrix<BigInt>,
    pub count: BigUint,
    pub nontrivial: bool,
}

/// Number of assignments of Z/p to arcs satisfying every crossing row.
pub fn coloring_count(d: &Diagram, p: u64) -> Result<ColoringReport, InvariantError> {
    if p < 2 {
        return Err(InvariantError::ModulusTooSmall(p));
    }
    let matrix = coloring_matrix(d);
    let count = solution_count(&matrix, p);
    let nontrivial = count > BigUint::from(p);
    Ok(ColoringReport {
        modulus: p,
        matrix,
        count,
        nontrivial,
    })
}

/// `#{x in (Z/p)^cols : A x = 0}` from the Smith invariants of `A`.
pub fn solution_count(a: &Matrix<BigInt>, p: u64) -> BigUint {
    let snf = smith_form(a);
    let pb = BigInt::from(p);
    let mut count = BigUint::one();
    for s in &snf.invariants {
        let g = if s.is_zero() {
            pb.clone()
        } else {
            Integer::gcd(s, &pb)
        };
        count *= g.to_biguint().expect("gcd is nonnegative");
    }
    let free = a.cols() - snf.invariants.len();
    count * BigUint::from(p).pow(free as u32)
}

/// Same count for prime `p`, by Gaussian elimination over Z/p.
pub fn solution_count_mod_prime(a: &Matrix<BigInt>, p: u64) -> BigUint {
    let rows: Vec<Vec<ModInt>> = a
        .row_vecs()
        .iter()
        .map(|r| r.iter().map(|x| ModInt::from_bigint(x, p)).collect())
        .collect();
    let rank = rank_mod_p(&rows);
    BigUint::from(p).pow((a.cols() - rank) as u32)
}

pub fn has_nontrivial_coloring(d: &Diagram, p: u64) -> Result<bool, InvariantError> {
    Ok(coloring_count(d, p)?.nontrivial)
}

fn check_prime_unit(p: u64, s: i64) -> Result<ModInt, InvariantError> {
    if !is_prime(p) {
        return Err(InvariantError::NotPrime(p));
    }
    let x = ModInt::new(s, p);
    if x.value() == 0 {
        return Err(InvariantError::NonUnit { s, p });
    }
    Ok(x)
}

/// Number of module maps to Z/p on which t acts as multiplication by `s`.
pub fn hom_count_to_cyclic(
    m: &Matrix<LaurentPoly1>,
    p: u64,
    s: i64,
) -> Result<BigUint, InvariantError> {
    let t = check_prime_unit(p, s)?;
    let rows: Vec<Vec<ModInt>> = m
        .row_vecs()
        .iter()
        .map(|r| {
            r.iter()
                .map(|x| x.specialize(&t).expect("t is a unit"))
                .collect()
        })
        .collect();
    let rank = rank_mod_p(&rows);
    Ok(BigUint::from(p).pow((m.cols() - rank) as u32))
}

/// Specializes a two-variable matrix at `u = su`, `v = sv` modulo a prime.
pub fn specialize_mod_p(
    m: &Matrix<LaurentPoly2>,
    p: u64,
    su: i64,
    sv: i64,
) -> Result<Vec<Vec<ModInt>>, InvariantError> {
    let u = check_prime_unit(p, su)?;
    let v = check_prime_unit(p, sv)?;
    Ok(m.row_vecs()
        .iter()
        .map(|r| {
            r.iter()
                .map(|x| {
                    x.specialize(&u, &v)
                        .unwrap_or_else(|e: SpecializeError| unreachable!("{e}"))
                })
                .collect()
        })
        .collect())
}

/// Whether the vector `w` lies in the row span of `rows` over Z/p.
pub fn in_row_span(rows: &[Vec<ModInt>], w: &[ModInt]) -> bool {
    let mut extended = rows.to_vec();
    extended.push(w.to_vec());
    rank_mod_p(rows) == rank_mod_p(&extended)
}

/// Whether the two end elements coincide in the module specialized at
/// `u = su, v = sv` over Z/p. `None` for closed presentations.
pub fn ends_equal_at(
    pres: &GroupPresentationZ2,
    p: u64,
    su: i64,
    sv: i64,
) -> Result<Option<bool>, InvariantError> {
    let Some((minus, plus)) = pres.end_generator_columns() else {
        return Ok(None);
    };
    let m = pres.abelianize();
    let rows = specialize_mod_p(&m, p, su, sv)?;
    let diff: Vec<LaurentPoly2> = minus.iter().zip(&plus).map(|(a, b)| a - b).collect();
    let diff = specialize_mod_p(&Matrix::from_rows(diff.len(), vec![diff]), p, su, sv)?;
    Ok(Some(in_row_span(&rows, &diff[0])))
}

/// Same question in the merged one-variable module at `t = s`.
pub fn merged_ends_equal_at(d: &Diagram, p: u64, s: i64) -> Result<Option<bool>, InvariantError> {
    let Some((a, b)) = merged_end_columns(d) else {
        return Ok(None);
    };
    let t = check_prime_unit(p, s)?;
    let m = merged_one_variable_matrix(d);
    let rows: Vec<Vec<ModInt>> = m
        .row_vecs()
        .iter()
        .map(|r| r.iter().map(|x| x.specialize(&t).expect("unit")).collect())
        .collect();
    let mut diff = vec![ModInt::new(0, p); m.cols()];
    diff[a] = diff[a].add(ModInt::new(1, p));
    diff[b] = diff[b].add(ModInt::new(-1, p));
    Ok(Some(in_row_span(&rows, &diff)))
}

/// The 2x2 integer matrices governing colorings of the D_n family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransferMatrices {
    pub s: [[i64; 2]; 2],
    pub t: [[i64; 2]; 2],
    pub u: [[i64; 2]; 2],
}

impl Default for TransferMatrices {
    fn default() -> Self {
        TransferMatrices {
            s: [[1, 2], [0, -1]],
            t: [[-1, 0], [2, 1]],
            u: [[0, -1], [1, 2]],
        }
    }
}

fn mat_mul_mod(a: [[i64; 2]; 2], b: [[i64; 2]; 2], p: i64) -> [[i64; 2]; 2] {
    let mut c = [[0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            c[i][j] = (a[i][0] * b[0][j] + a[i][1] * b[1][j]).rem_euclid(p);
        }
    }
    c
}

impl TransferMatrices {
    /// `S (T S)^(n-1) U` reduced modulo `p`.
    pub fn chain(&self, n: usize, p: u64) -> [[i64; 2]; 2] {
        let p = p as i64;
        let ts = mat_mul_mod(self.t, self.s, p);
        let mut m = self.s.map(|r| r.map(|x| x.rem_euclid(p)));
        for _ in 1..n {
            m = mat_mul_mod(m, ts, p);
        }
        mat_mul_mod(m, self.u, p)
    }
}

/// Whether some α ≠ β in Z/p and some δ satisfy `(α, β) S (TS)^(n-1) U = (δ, β)`.
pub fn transfer_condition(n: usize, p: u64) -> bool {
    let m = TransferMatrices::default().chain(n, p);
    let q = p as i64;
    (0..q).any(|alpha| {
        (0..q).any(|beta| alpha != beta && (alpha * m[0][1] + beta * m[1][1]).rem_euclid(q) == beta)
    })
}

/// The closed form of the same condition: `gcd(2n + 1, p) > 1`.
pub fn transfer_condition_closed_form(n: usize, p: u64) -> bool {
    (2 * n as u64 + 1).gcd(&p) > 1
}

/// Invariants compared across Reidemeister moves.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantSuite {
    pub kind: Kind,
    /// `E_0` and `E_1` of the whole module and, for long diagrams, of the
    /// quotients killing the minus end, the plus end and both ends.
    pub polynomials: Vec<LaurentPoly2>,
    pub determinant: Option<BigInt>,
    pub colorings: Vec<BigUint>,
}

pub const SUITE_PRIMES: [u64; 3] = [3, 5, 7];

pub fn invariant_suite(d: &Diagram, budget: &Budget) -> Result<InvariantSuite, InvariantError> {
    let pres = extended_presentation(d);
    let modules = match d.kind() {
        Kind::Long => {
            let minus = pres.kill_end(End::Minus);
            let plus = pres.kill_end(End::Plus);
            let both = minus.kill_end(End::Plus);
            vec![pres, minus, plus, both]
        }
        Kind::Closed => vec![pres],
    };
    let mut polynomials = Vec::new();
    for m in &modules {
        let a = m.abelianize();
        for k in 0..=1 {
            polynomials.push(char_poly(&a, k, budget)?);
        }
    }
    let determinant = match d.kind() {
        Kind::Long => Some(determinant_long(d)?),
        Kind::Closed => None,
    };
    let colorings = SUITE_PRIMES
        .iter()
        .map(|&p| coloring_count(d, p).map(|r| r.count))
        .collect::<Result<_, _>>()?;
    Ok(InvariantSuite {
        kind: d.kind(),
        polynomials,
        determinant,
        colorings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diag(s: &str) -> Diagram {
        s.parse().unwrap()
    }

    #[test]
    fn minor_conventions() {
        let p: LaurentPoly2 = "u - 2".parse().unwrap();
        let m = Matrix::from_rows(1, vec![vec![p.clone()]]);
        let b = Budget::default();
        assert_eq!(elementary_minors(&m, 0, &b).unwrap(), vec![p.clone()]);
        assert_eq!(
            elementary_minors(&m, 1, &b).unwrap(),
            vec![LaurentPoly2::one()]
        );
        let z = LaurentPoly2::zero();
        let d = Matrix::from_rows(
            2,
            vec![vec![p.clone(), z.clone()], vec![z.clone(), p.clone()]],
        );
        assert_eq!(
            elementary_minors(&d, 1, &b).unwrap(),
            vec![p.clone(), z.clone(), z, p]
        );
        let empty: Matrix<BigInt> = Matrix::zeros(0, 2);
        assert!(char_poly(&empty, 0, &b).unwrap().is_zero());
    }

    #[test]
    fn determinants() {
        assert_eq!(
            determinant_long(&Diagram::trivial()).unwrap(),
            BigInt::one()
        );
        assert_eq!(
            determinant_long(&diag("O1+ U2+ U1+ O2+")).unwrap(),
            BigInt::from(3)
        );
        let trefoil = diag("O1+ U2+ O3+ U1+ O2+ U3+");
        assert_eq!(determinant_long(&trefoil).unwrap(), BigInt::from(3));
        assert!(determinant_long(&trefoil.close().unwrap()).is_err());
        assert!(unit_minor_check(&Diagram::trivial()));
        assert!(unit_minor_check(&diag("O1+ U2+ U1+ O2+")));
        assert!(unit_minor_check(&trefoil.close().unwrap()));
    }

    #[test]
    fn colorings() {
        let r = coloring_count(&Diagram::trivial(), 5).unwrap();
        assert_eq!(r.count, BigUint::from(5u32));
        assert!(!r.nontrivial);
        let closed = diag("closed\nO1+ U2+ O3+ U1+ O2+ U3+");
        let r = coloring_count(&closed, 3).unwrap();
        assert_eq!(r.count, BigUint::from(9u32));
        assert!(r.nontrivial);
        assert_eq!(
            coloring_count(&closed, 6).unwrap().count,
            BigUint::from(18u32)
        );
        assert_eq!(
            coloring_count(&closed, 1),
            Err(InvariantError::ModulusTooSmall(1))
        );
        assert_eq!(solution_count_mod_prime(&r.matrix, 3), r.count);
    }

    #[test]
    fn hom_counts() {
        let free: Matrix<LaurentPoly1> = Matrix::zeros(0, 1);
        assert_eq!(
            hom_count_to_cyclic(&free, 7, 2).unwrap(),
            BigUint::from(7u32)
        );
        assert!(hom_count_to_cyclic(&free, 7, 0).is_err());
        assert!(hom_count_to_cyclic(&free, 8, 3).is_err());
    }

    #[test]
    fn transfer() {
        let m = TransferMatrices::default();
        assert_eq!(m.chain(1, 1000), [[2, 3], [999, 998]]);
        assert!(transfer_condition(1, 3));
        assert!(!transfer_condition(1, 2));
        assert!(transfer_condition(2, 5));
        for n in 1..=6 {
            for p in 2..=15 {
                assert_eq!(
                    transfer_condition(n, p),
                    transfer_condition_closed_form(n, p)
                );
            }
        }
    }

    #[test]
    fn end_comparison() {
        let trefoil = diag("O1+ U2+ O3+ U1+ O2+ U3+");
        let pres = extended_presentation(&trefoil);
        for s in 1..5 {
            assert_eq!(ends_equal_at(&pres, 5, s, 1).unwrap(), Some(true));
            assert_eq!(merged_ends_equal_at(&trefoil, 5, s).unwrap(), Some(true));
        }
        let k1 = diag("O1+ U2+ U1+ O2+");
        assert_eq!(merged_ends_equal_at(&k1, 3, 2).unwrap(), Some(false));
        assert_eq!(merged_ends_equal_at(&k1, 3, 1).unwrap(), Some(true));
    }
}
