use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;

use nc3_core::catalog::{enumerate_partitions, instantiate, FamilyId, Part, PartitionSpec};
use nc3_core::construction::{ample_margin, sequential_blowup, AmpleMarginProblem};
use nc3_core::exactlat::{adjunction_euler, kernel_dimension, IntersectionLattice, LatticeVector, RationalMatrix};
use nc3_core::invariants::hodge;
use nc3_core::ncconfig::{mu_apply, mu_matrix, ng2_generators};
use nc3_core::Error;

fn symmetric_gram(n: usize, entries: &[i64]) -> Vec<Vec<i64>> {
    let mut g = vec![vec![0; n]; n];
    let mut k = 0;
    for i in 0..n {
        for j in i..n {
            g[i][j] = entries[k];
            g[j][i] = entries[k];
            k += 1;
        }
    }
    g
}

fn lattice_and_vectors(count: usize) -> impl Strategy<Value = (Vec<Vec<i64>>, Vec<Vec<i64>>)> {
    (1usize..=4).prop_flat_map(move |n| {
        (
            prop::collection::vec(-5i64..=5, n * (n + 1) / 2).prop_map(move |e| symmetric_gram(n, &e)),
            prop::collection::vec(prop::collection::vec(-20i64..=20, n), count),
        )
    })
}

fn lattice(gram: &[Vec<i64>]) -> IntersectionLattice {
    let labels: Vec<String> = (0..gram.len()).map(|i| format!("x{i}")).collect();
    let refs: Vec<&str> = labels.iter().map(String::as_str).collect();
    IntersectionLattice::from_i64("L", gram, &refs).unwrap()
}

/// Determinant by cofactor expansion; only used on tiny matrices.
fn det(m: &[Vec<BigRational>]) -> BigRational {
    if m.is_empty() {
        return BigRational::from_integer(1.into());
    }
    let mut total = BigRational::zero();
    for (j, a) in m[0].iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        let minor: Vec<Vec<BigRational>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, x)| x.clone()).collect())
            .collect();
        let term = a * det(&minor);
        if j % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// Rank as the size of the largest non-vanishing minor.
fn rank_by_minors(m: &[Vec<BigRational>], cols: usize) -> usize {
    let rows = m.len();
    for k in (1..=rows.min(cols)).rev() {
        for rs in subsets(rows, k) {
            for cs in subsets(cols, k) {
                let sub: Vec<Vec<BigRational>> =
                    rs.iter().map(|&r| cs.iter().map(|&c| m[r][c].clone()).collect()).collect();
                if !det(&sub).is_zero() {
                    return k;
                }
            }
        }
    }
    0
}

fn lv(c: &[i64]) -> LatticeVector {
    LatticeVector::from_i64(c)
}

proptest! {
    #[test]
    fn pairing_is_bilinear_and_symmetric((g, vs) in lattice_and_vectors(3), k in -7i64..=7) {
        let l = lattice(&g);
        let (u, v, w) = (lv(&vs[0]), lv(&vs[1]), lv(&vs[2]));
        prop_assert_eq!(l.pair(&u, &v).unwrap(), l.pair(&v, &u).unwrap());
        prop_assert_eq!(
            l.pair(&(&u + &v), &w).unwrap(),
            l.pair(&u, &w).unwrap() + l.pair(&v, &w).unwrap()
        );
        let kb = BigInt::from(k);
        prop_assert_eq!(l.pair(&u.scale(&kb), &w).unwrap(), kb * l.pair(&u, &w).unwrap());
    }

    #[test]
    fn adjunction_parity((g, vs) in lattice_and_vectors(2)) {
        let l = lattice(&g);
        let (c, k) = (lv(&vs[0]), lv(&vs[1]));
        let sum = l.square(&c).unwrap() + l.pair(&c, &k).unwrap();
        match adjunction_euler(&c, &k, &l) {
            Ok(e) => prop_assert_eq!(e, -sum),
            Err(Error::OddAdjunction { .. }) => prop_assert!(!c.is_zero() && (sum % 2) != BigInt::zero()),
            Err(Error::ZeroClass { .. }) => prop_assert!(c.is_zero()),
            Err(e) => prop_assert!(false, "unexpected error {e}"),
        }
    }

    #[test]
    fn rank_matches_minor_oracle(
        rows in 0usize..=4,
        cols in 0usize..=5,
        seed in prop::collection::vec((-4i64..=4, 1i64..=3), 20),
    ) {
        let m: Vec<Vec<BigRational>> = (0..rows)
            .map(|r| (0..cols).map(|c| {
                let (n, d) = seed[r * 5 + c];
                BigRational::new(n.into(), d.into())
            }).collect())
            .collect();
        let matrix = RationalMatrix::from_rows(m.clone(), cols).unwrap();
        let expected = rank_by_minors(&m, cols);
        prop_assert_eq!(matrix.rank(), expected);
        prop_assert_eq!(kernel_dimension(&matrix), cols - expected);
    }

    #[test]
    fn ample_margin_is_positive(k in 1usize..=6, entries in prop::collection::vec(0i64..=9, 36)) {
        let table: Vec<Vec<i64>> = (0..k)
            .map(|l| (0..k).map(|l2| match l2.cmp(&l) {
                std::cmp::Ordering::Less => 0,
                std::cmp::Ordering::Equal => -1,
                std::cmp::Ordering::Greater => entries[l * 6 + l2],
            }).collect())
            .collect();
        let cert = ample_margin(&AmpleMarginProblem::new(table.clone()).unwrap()).unwrap();
        let beta = table.iter().flatten().copied().max().unwrap().max(0);
        prop_assert_eq!(cert.beta, beta);
        prop_assert_eq!(cert.m, beta + 2);
        prop_assert!(cert.values.iter().all(|v| *v > BigInt::zero()));
    }
}

const PERMUTATIONS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];

fn all_cases() -> Vec<(FamilyId, PartitionSpec)> {
    FamilyId::ALL
        .iter()
        .flat_map(|&id| enumerate_partitions(id).into_iter().map(move |p| (id, p)))
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn hodge_is_order_independent(
        case in 0usize..63,
        perm in 0usize..6,
        shuffle in Just(()).prop_perturb(|_, mut rng| rng.random::<u64>()),
    ) {
        let (id, p) = all_cases().swap_remove(case);
        let (y, c) = instantiate(id, &p, None).unwrap();
        let base = hodge(&y, &c).unwrap();

        let mut parts: Vec<Part> = p.parts().to_vec();
        let mut s = shuffle;
        for i in (1..parts.len()).rev() {
            parts.swap(i, (s % (i as u64 + 1)) as usize);
            s /= i as u64 + 1;
        }
        let shuffled = PartitionSpec::new(parts).unwrap();
        let (y2, c2) = instantiate(id, &shuffled, Some(PERMUTATIONS[perm])).unwrap();
        let other = hodge(&y2, &c2).unwrap();
        prop_assert_eq!((base.euler, base.h11, base.h12), (other.euler, other.h11, other.h12));
    }
}

#[test]
fn ng2_and_kernel_growth_on_every_instantiation() {
    for (id, p) in all_cases() {
        let (y, c) = instantiate(id, &p, None).unwrap();
        let (blown, _) = sequential_blowup(&y, &c).unwrap();
        let g = ng2_generators(&blown).unwrap();
        for e in [&g.e1, &g.e2] {
            assert!(mu_apply(&blown, e).unwrap().iter().all(LatticeVector::is_zero), "{id} {p}");
        }
        assert_eq!(
            kernel_dimension(&mu_matrix(&blown).unwrap()),
            kernel_dimension(&mu_matrix(&y).unwrap()) + 2 * c.alpha(),
            "{id} {p}"
        );
    }
}

#[test]
fn euler_even_and_h12_non_negative() {
    for (id, p) in all_cases() {
        let (y, c) = instantiate(id, &p, None).unwrap();
        let h = hodge(&y, &c).unwrap();
        assert_eq!(h.euler % 2, 0, "{id} {p}");
        assert!(h.h12 >= 0, "{id} {p}");
        assert_eq!(h.euler, 2 * (h.h11 - h.h12));
    }
}
