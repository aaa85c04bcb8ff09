//! Helpers shared by the integration tests: generators, corpus access and
//! brute-force oracles that do not go through the library's algebra.
#![allow(dead_code)]

use std::path::PathBuf;

use num_bigint::BigInt;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;
use vka::diagram::{Diagram, Kind, Passage, Role, Sign};
use vka::laurent::{LaurentPoly1, LaurentPoly2, Monomial2};

pub fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

pub fn corpus() -> Vec<(String, Diagram)> {
    let mut entries: Vec<_> = std::fs::read_dir(corpus_dir())
        .expect("corpus directory")
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "gauss"))
        .collect();
    entries.sort();
    entries
        .into_iter()
        .map(|p| {
            let text = std::fs::read_to_string(&p).unwrap();
            let name = p.file_stem().unwrap().to_string_lossy().into_owned();
            let d = text.parse().unwrap_or_else(|e| panic!("{name}: {e}"));
            (name, d)
        })
        .collect()
}

pub fn load(name: &str) -> Diagram {
    let text = std::fs::read_to_string(corpus_dir().join(format!("{name}.gauss"))).unwrap();
    text.parse().unwrap()
}

/// A uniformly shuffled Gauss code with `c` crossings and random roles and signs.
pub fn random_diagram(rng: &mut impl Rng, c: usize, kind: Kind) -> Diagram {
    let mut passages = Vec::with_capacity(2 * c);
    for id in 1..=c {
        let sign = if rng.gen() {
            Sign::Positive
        } else {
            Sign::Negative
        };
        passages.push(Passage::new(id, Role::Over, sign));
        passages.push(Passage::new(id, Role::Under, sign));
    }
    passages.shuffle(rng);
    Diagram::new(kind, passages).unwrap()
}

pub fn laurent2() -> impl Strategy<Value = LaurentPoly2> {
    prop::collection::vec(((-3i64..=3, -3i64..=3), -6i64..=6), 0..5).prop_map(|terms| {
        LaurentPoly2::from_terms(
            terms
                .into_iter()
                .map(|((a, b), c)| (Monomial2::new(a, b), BigInt::from(c))),
        )
    })
}

pub fn laurent1() -> impl Strategy<Value = LaurentPoly1> {
    prop::collection::vec((-4i64..=4, -6i64..=6), 0..6).prop_map(|terms| {
        LaurentPoly1::from_terms(terms.into_iter().map(|(e, c)| (e, BigInt::from(c))))
    })
}

pub fn unit_monomial2() -> impl Strategy<Value = LaurentPoly2> {
    ((-3i64..=3, -3i64..=3), prop::bool::ANY).prop_map(|((a, b), neg)| {
        LaurentPoly2::monomial(Monomial2::new(a, b), if neg { -1 } else { 1 })
    })
}

/// Arc incidences computed directly from the passage list: passage `i` sits
/// between arcs `i` and `i + 1`. Returns `(over_in, under_in, sign)` per crossing.
pub fn naive_crossings(d: &Diagram) -> Vec<(usize, usize, i64)> {
    let mut out = vec![(usize::MAX, usize::MAX, 0); d.crossing_count()];
    for (i, p) in d.passages().iter().enumerate() {
        let slot = &mut out[p.crossing - 1];
        slot.2 = p.sign.value();
        match p.role {
            Role::Over => slot.0 = i,
            Role::Under => slot.1 = i,
        }
    }
    out
}

/// Counts assignments of Z/p to the arcs of a long diagram, with the first
/// arc forced to 0, that satisfy every abelianized crossing relation at
/// `u = v = s`. Positive crossings impose `O + s W - W' - s O' = 0` and
/// `s O - O' = 0`; negative ones `W + s O - O' - s W' = 0` and `s O' - O = 0`.
pub fn brute_force_quotient_homs(d: &Diagram, p: i64, s: i64) -> u64 {
    let arcs = d.passages().len() + 1;
    let xs = naive_crossings(d);
    let free = arcs - 1;
    let mut count = 0u64;
    let total = (p as u64).pow(free as u32);
    let mut x = vec![0i64; arcs];
    for code in 0..total {
        let mut c = code;
        for slot in x.iter_mut().skip(1) {
            *slot = (c % p as u64) as i64;
            c /= p as u64;
        }
        let ok = xs.iter().all(|&(o, w, sign)| {
            let (oi, oo, wi, wo) = (x[o], x[o + 1], x[w], x[w + 1]);
            let (main, pair) = if sign > 0 {
                (oi + s * wi - wo - s * oo, s * oi - oo)
            } else {
                (wi + s * oi - oo - s * wo, s * oo - oi)
            };
            main.rem_euclid(p) == 0 && pair.rem_euclid(p) == 0
        });
        if ok {
            count += 1;
        }
    }
    count
}

/// Number of p-colorings by enumeration over all arc assignments, arcs being
/// divided at under passages only.
pub fn brute_force_colorings(d: &Diagram, p: i64) -> u64 {
    let ps = d.passages();
    let long = d.kind() == Kind::Long;
    let unders = ps.iter().filter(|q| q.role == Role::Under).count();
    let arcs = if long { unders + 1 } else { unders.max(1) };
    let mut arc_at = Vec::with_capacity(ps.len());
    let mut k = 0;
    for q in ps {
        arc_at.push(k % arcs);
        if q.role == Role::Under {
            k += 1;
        }
    }
    let total = (p as u64).pow(arcs as u32);
    let mut count = 0;
    let mut x = vec![0i64; arcs];
    for code in 0..total {
        let mut c = code;
        for slot in x.iter_mut() {
            *slot = (c % p as u64) as i64;
            c /= p as u64;
        }
        let ok = (1..=d.crossing_count()).all(|id| {
            let o = ps
                .iter()
                .position(|q| q.crossing == id && q.role == Role::Over)
                .unwrap();
            let u = ps
                .iter()
                .position(|q| q.crossing == id && q.role == Role::Under)
                .unwrap();
            let before = arc_at[u];
            let after = if long {
                before + 1
            } else {
                (before + 1) % arcs
            };
            (2 * x[arc_at[o]] - x[before] - x[after]).rem_euclid(p) == 0
        });
        if ok {
            count += 1;
        }
    }
    count
}

pub mod ring_props {
    use num_traits::{One, Zero};
    use proptest::prelude::*;
    use proptest::test_runner::{Config, TestCaseError, TestRunner};
    use vka::laurent::{LaurentPoly1, LaurentPoly2};
    use vka::ring::{GcdDomain, ModInt};

    type R = Result<(), TestCaseError>;

    pub fn axioms(a: &LaurentPoly2, b: &LaurentPoly2, c: &LaurentPoly2) -> R {
        prop_assert_eq!(a + b, b + a);
        prop_assert_eq!(a * b, b * a);
        prop_assert_eq!(&(a + b) + c, a + &(b + c));
        prop_assert_eq!(&(a * b) * c, a * &(b * c));
        prop_assert_eq!(a * &(b + c), &(a * b) + &(a * c));
        prop_assert_eq!(a + &LaurentPoly2::zero(), a.clone());
        prop_assert_eq!(a * &LaurentPoly2::one(), a.clone());
        prop_assert!((a - a).is_zero());
        prop_assert_eq!(-(-a.clone()), a.clone());
        Ok(())
    }

    pub fn gcd_divides(a: &LaurentPoly2, b: &LaurentPoly2, c: &LaurentPoly2) -> R {
        let g = a.gcd(b);
        if g.is_zero() {
            prop_assert!(a.is_zero() && b.is_zero());
            return Ok(());
        }
        let qa = a.div_exact(&g);
        let qb = b.div_exact(&g);
        prop_assert!(qa.is_some() && qb.is_some(), "gcd {} fails to divide", g);
        prop_assert_eq!(&(&qa.unwrap() * &g), a);
        // gcd(ac, bc) = gcd(a, b) c up to units
        if !c.is_zero() {
            prop_assert_eq!((a * c).gcd(&(b * c)), (&g * c).canonical());
        }
        prop_assert_eq!(a.gcd(b), b.gcd(a));
        Ok(())
    }

    pub fn canonical_idempotent(a: &LaurentPoly2, unit: &LaurentPoly2) -> R {
        let c = a.canonical();
        prop_assert_eq!(c.canonical(), c.clone());
        prop_assert_eq!((a * unit).canonical(), c);
        Ok(())
    }

    pub fn one_variable(a: &LaurentPoly1, b: &LaurentPoly1) -> R {
        prop_assert_eq!(a * b, b * a);
        let g = a.gcd(b);
        if !g.is_zero() {
            prop_assert!(a.div_exact(&g).is_some() && b.div_exact(&g).is_some());
        }
        let text = a.to_string();
        prop_assert_eq!(text.parse::<LaurentPoly1>().unwrap(), a.clone());
        Ok(())
    }

    pub fn specialization(a: &LaurentPoly2, b: &LaurentPoly2, su: i64, sv: i64) -> R {
        let p = 101;
        let (u, v) = (ModInt::new(su, p), ModInt::new(sv, p));
        let f = |x: &LaurentPoly2| x.specialize(&u, &v).unwrap();
        prop_assert_eq!(f(&(a + b)), f(a).add(f(b)));
        prop_assert_eq!(f(&(a * b)), f(a).mul(f(b)));
        // through Z[t^±1] and back down to Z/p agrees with the direct route
        let diag = a.diagonal().specialize(&u).unwrap();
        prop_assert_eq!(diag, a.specialize(&u, &u).unwrap());
        prop_assert_eq!(a.to_string().parse::<LaurentPoly2>().unwrap(), a.clone());
        Ok(())
    }

    /// Runs every ring property `cases` times; returns the first failure.
    pub fn run_all(cases: u32) -> Result<(), String> {
        let mut runner = TestRunner::new(Config {
            cases,
            failure_persistence: None,
            ..Config::default()
        });
        let triple = (super::laurent2(), super::laurent2(), super::laurent2());
        runner
            .run(&triple, |(a, b, c)| axioms(&a, &b, &c))
            .map_err(|e| format!("ring axioms: {e}"))?;
        runner
            .run(&triple, |(a, b, c)| gcd_divides(&a, &b, &c))
            .map_err(|e| format!("gcd divisibility: {e}"))?;
        runner
            .run(&(super::laurent2(), super::unit_monomial2()), |(a, u)| {
                canonical_idempotent(&a, &u)
            })
            .map_err(|e| format!("canonical form: {e}"))?;
        runner
            .run(&(super::laurent1(), super::laurent1()), |(a, b)| {
                one_variable(&a, &b)
            })
            .map_err(|e| format!("one variable: {e}"))?;
        runner
            .run(
                &(super::laurent2(), super::laurent2(), 1i64..101, 1i64..101),
                |(a, b, su, sv)| specialization(&a, &b, su, sv),
            )
            .map_err(|e| format!("specialization: {e}"))?;
        Ok(())
    }
}
