mod common;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use vka::alexander::{extended_presentation, merged_one_variable_matrix, End};
use vka::diagram::{Diagram, Kind};
use vka::invariants::{
    char_poly, coloring_count, determinant_long, elementary_minors, hom_count_to_cyclic,
    integer_minors, solution_count, solution_count_mod_prime, InvariantError,
};
use vka::laurent::{LaurentPoly1, LaurentPoly2};
use vka::matrix::{Budget, BudgetExceeded, Matrix};
use vka::ring::{gcd_all, ModInt};

const P: u64 = 101;

fn matrix2(rows: usize, cols: usize) -> impl Strategy<Value = Matrix<LaurentPoly2>> {
    prop::collection::vec(common::laurent2(), rows * cols)
        .prop_map(move |xs| Matrix::from_rows(cols, xs.chunks(cols).map(<[_]>::to_vec).collect()))
}

fn int_matrix() -> impl Strategy<Value = Matrix<BigInt>> {
    (1usize..=4, 1usize..=4).prop_flat_map(|(r, c)| {
        prop::collection::vec(-5i64..=5, r * c).prop_map(move |xs| {
            Matrix::from_i64_rows(&xs.chunks(c).map(<[_]>::to_vec).collect::<Vec<_>>())
        })
    })
}

/// Determinant over Z/p by elimination on u64.
fn det_mod(mut a: Vec<Vec<u64>>, p: u64) -> u64 {
    let n = a.len();
    let pow = |mut b: u64, mut e: u64| {
        let mut r = 1;
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % p;
            }
            b = b * b % p;
            e >>= 1;
        }
        r
    };
    let mut det = 1;
    for k in 0..n {
        let Some(piv) = (k..n).find(|&i| a[i][k] != 0) else {
            return 0;
        };
        if piv != k {
            a.swap(piv, k);
            det = (p - det) % p;
        }
        det = det * a[k][k] % p;
        let inv = pow(a[k][k], p - 2);
        for i in k + 1..n {
            let f = a[i][k] * inv % p;
            for j in k..n {
                a[i][j] = (a[i][j] + p - f * a[k][j] % p) % p;
            }
        }
    }
    det
}

fn at(x: &LaurentPoly2, u: i64, v: i64) -> u64 {
    x.specialize(&ModInt::new(u, P), &ModInt::new(v, P))
        .unwrap()
        .value()
}

/// Enumerates `#{x : A x = 0 mod n}` directly.
fn brute_solutions(a: &Matrix<BigInt>, n: u64) -> u64 {
    let cols = a.cols();
    let rows: Vec<Vec<i64>> = a
        .row_vecs()
        .iter()
        .map(|r| r.iter().map(|x| i64::try_from(x).unwrap()).collect())
        .collect();
    let mut count = 0;
    for code in 0..n.pow(cols as u32) {
        let x: Vec<i64> = (0..cols)
            .map(|j| (code / n.pow(j as u32) % n) as i64)
            .collect();
        if rows.iter().all(|r| {
            r.iter()
                .zip(&x)
                .map(|(a, b)| a * b)
                .sum::<i64>()
                .rem_euclid(n as i64)
                == 0
        }) {
            count += 1;
        }
    }
    count
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 200, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn specialization_commutes_with_minors(m in matrix2(3, 3), u in 1i64..101, v in 1i64..101) {
        let minors = m.minors(2, &Budget::default()).unwrap();
        let subsets = [[0, 1], [0, 2], [1, 2]];
        let mut k = 0;
        for rs in subsets {
            for cs in subsets {
                let small: Vec<Vec<u64>> = rs
                    .iter()
                    .map(|&i| cs.iter().map(|&j| at(m.get(i, j), u, v)).collect())
                    .collect();
                prop_assert_eq!(at(&minors[k], u, v), det_mod(small, P));
                k += 1;
            }
        }
        let full: Vec<Vec<u64>> = m.row_vecs().iter().map(|r| r.iter().map(|x| at(x, u, v)).collect()).collect();
        prop_assert_eq!(at(&m.determinant(), u, v), det_mod(full, P));
    }

    #[test]
    fn char_poly_is_invariant_under_elementary_operations(
        m in matrix2(2, 3),
        c in common::laurent2(),
        unit in common::unit_monomial2(),
        k in 0usize..=2,
    ) {
        let b = Budget::default();
        let base = char_poly(&m, k, &b).unwrap();
        let mut rows = m.row_vecs();
        // add a multiple of row 0 to row 1
        let shifted: Vec<_> = rows[1].iter().zip(&rows[0]).map(|(x, y)| x + &(&c * y)).collect();
        rows[1] = shifted;
        // scale row 0 by a unit
        rows[0] = rows[0].iter().map(|x| x * &unit).collect();
        // permute columns
        for r in rows.iter_mut() {
            r.rotate_left(1);
        }
        let moved = Matrix::from_rows(3, rows);
        prop_assert_eq!(char_poly(&moved, k, &b).unwrap(), base.clone());
        // appending a zero row leaves every ideal alone
        let padded = m.with_row(vec![LaurentPoly2::zero(); 3]);
        prop_assert_eq!(char_poly(&padded, k, &b).unwrap(), base);
    }

    #[test]
    fn smith_counts_agree_with_elimination(a in int_matrix()) {
        for p in [2u64, 3, 5, 7] {
            prop_assert_eq!(solution_count(&a, p), solution_count_mod_prime(&a, p));
        }
        for n in [4u64, 6] {
            prop_assert_eq!(solution_count(&a, n), BigUint::from(brute_solutions(&a, n)));
        }
    }
}

fn small_diagrams(seed: u64, count: usize, max_c: usize, kind: Kind) -> Vec<Diagram> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let c = rng.gen_range(0..=max_c);
            common::random_diagram(&mut rng, c, kind)
        })
        .collect()
}

#[test]
fn colorings_match_enumeration() {
    let mut ds = small_diagrams(1, 40, 4, Kind::Long);
    ds.extend(small_diagrams(2, 40, 4, Kind::Closed));
    for d in ds {
        for p in [2u64, 3, 4, 5] {
            let report = coloring_count(&d, p).unwrap();
            assert_eq!(
                report.count,
                BigUint::from(common::brute_force_colorings(&d, p as i64)),
                "{d} p={p}"
            );
        }
    }
}

#[test]
fn hom_counts_match_enumeration() {
    for d in small_diagrams(3, 30, 3, Kind::Long) {
        let m = extended_presentation(&d)
            .kill_end(End::Minus)
            .abelianize()
            .map(LaurentPoly2::diagonal);
        for (p, s) in [(3u64, 2i64), (5, 2), (5, 4)] {
            let want = common::brute_force_quotient_homs(&d, p as i64, s);
            assert_eq!(
                hom_count_to_cyclic(&m, p, s).unwrap(),
                BigUint::from(want),
                "{d} p={p} s={s}"
            );
        }
    }
}

#[test]
fn determinant_is_gcd_of_maximal_minors_at_minus_one() {
    for d in small_diagrams(4, 60, 5, Kind::Long) {
        let m = merged_one_variable_matrix(&d)
            .map(|x: &LaurentPoly1| x.specialize(&BigInt::from(-1)).unwrap());
        let size = m.rows().min(m.cols());
        let g = gcd_all(&integer_minors(&m, size));
        assert_eq!(determinant_long(&d).unwrap(), g, "{d}");
    }
}

#[test]
fn conventions_for_large_k() {
    let m = extended_presentation(&common::load("k1")).abelianize();
    let b = Budget::default();
    assert_eq!(
        elementary_minors(&m, m.cols(), &b).unwrap(),
        vec![LaurentPoly2::one()]
    );
    assert!(char_poly(&m, m.cols() + 3, &b).unwrap().is_one());
    // more columns than rows: E_0 is the empty ideal
    assert!(char_poly(&m, 0, &b).unwrap().is_zero());
}

#[test]
fn errors_are_reported() {
    let d = common::load("k1");
    let m = merged_one_variable_matrix(&d);
    assert_eq!(
        hom_count_to_cyclic(&m, 6, 1),
        Err(InvariantError::NotPrime(6))
    );
    assert_eq!(
        hom_count_to_cyclic(&m, 5, 10),
        Err(InvariantError::NonUnit { s: 10, p: 5 })
    );
    assert_eq!(
        coloring_count(&d, 0).unwrap_err(),
        InvariantError::ModulusTooSmall(0)
    );
    assert!(determinant_long(&d.close().unwrap()).is_err());
    let tight = Budget {
        max_minor_states: 3,
        ..Budget::default()
    };
    let big = extended_presentation(&common::load("d3")).abelianize();
    assert!(matches!(
        elementary_minors(&big, 1, &tight),
        Err(BudgetExceeded::MinorStates { .. })
    ));
    let narrow = Budget {
        max_coeff_bits: 1,
        ..Budget::default()
    };
    let twos = Matrix::from_i64_rows(&[vec![2, 0], vec![0, 3]]);
    assert!(matches!(
        elementary_minors(&twos, 0, &narrow),
        Err(BudgetExceeded::CoefficientBits { .. })
    ));
}
