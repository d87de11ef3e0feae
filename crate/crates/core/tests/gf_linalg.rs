mod common;

use hopfmod_core::{Field, Matrix};
use proptest::prelude::*;

/// Row reduction over `Z/p` on plain vectors, independent of `Matrix`.
fn naive_rank(p: u32, mut rows: Vec<Vec<u32>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let inv = |a: u32| (1..p).find(|b| a * b % p == 1).unwrap();
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..rows.len()).find(|&r| rows[r][c] != 0) else {
            continue;
        };
        rows.swap(rank, piv);
        let s = inv(rows[rank][c]);
        let pivot: Vec<u32> = rows[rank].iter().map(|x| x * s % p).collect();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row[c] != 0 {
                let k = row[c];
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x = (*x + p * p - k * y % p) % p;
                }
            }
        }
        rows[rank] = pivot;
        rank += 1;
    }
    rank
}

fn naive_kron(a: &Matrix, b: &Matrix) -> Vec<Vec<u32>> {
    let p = a.field().p();
    let (br, bc) = (b.rows(), b.cols());
    (0..a.rows() * br)
        .map(|i| {
            (0..a.cols() * bc)
                .map(|j| a.get(i / br, j / bc) * b.get(i % br, j % bc) % p)
                .collect()
        })
        .collect()
}

fn field_and_shape() -> impl Strategy<Value = (Field, usize, usize)> {
    (
        prop::sample::select(&[(2u32, 1u32), (3, 1), (5, 1), (2, 2), (2, 3), (3, 2)][..]),
        1usize..=6,
        1usize..=6,
    )
        .prop_map(|((p, e), r, c)| (Field::standard(p, e).unwrap(), r, c))
}

proptest! {
    #[test]
    fn rank_plus_nullity_is_cols(m in field_and_shape().prop_flat_map(|(f, r, c)| common::matrix(f, r, c))) {
        let k = m.kernel_basis();
        prop_assert_eq!(m.rank() + k.cols(), m.cols());
        prop_assert!(m.mul(&k).unwrap().is_zero());
        prop_assert_eq!(k.rank(), k.cols());
    }

    #[test]
    fn kron_rank_is_product(
        (a, b) in (prop::sample::select(&[2u32, 3, 5][..]), 2usize..=4, 2usize..=4, 2usize..=4, 2usize..=4)
            .prop_flat_map(|(p, r1, c1, r2, c2)| {
                let f = Field::prime(p).unwrap();
                (common::matrix(f.clone(), r1, c1), common::matrix(f, r2, c2))
            })
    ) {
        let k = a.kron(&b).unwrap();
        let naive = naive_kron(&a, &b);
        prop_assert_eq!(k.to_rows(), naive.clone());
        let p = a.field().p();
        prop_assert_eq!(naive_rank(p, naive), naive_rank(p, a.to_rows()) * naive_rank(p, b.to_rows()));
        prop_assert_eq!(k.rank(), a.rank() * b.rank());
    }

    #[test]
    fn rank_matches_naive_elimination(
        m in (prop::sample::select(&[2u32, 3, 5, 7][..]), 1usize..=7, 1usize..=7)
            .prop_flat_map(|(p, r, c)| common::matrix(Field::prime(p).unwrap(), r, c))
    ) {
        prop_assert_eq!(m.rank(), naive_rank(m.field().p(), m.to_rows()));
    }

    #[test]
    fn inverse_is_two_sided(m in (prop::sample::select(&[(2u32, 1u32), (3, 1), (2, 2), (3, 2)][..]), 1usize..=5)
        .prop_flat_map(|((p, e), n)| common::matrix(Field::standard(p, e).unwrap(), n, n)))
    {
        match m.inverse() {
            Ok(inv) => {
                prop_assert!(m.mul(&inv).unwrap().is_identity());
                prop_assert!(inv.mul(&m).unwrap().is_identity());
            }
            Err(_) => prop_assert!(m.rank() < m.rows()),
        }
    }

    #[test]
    fn mixed_product(
        (a, b, c, d) in prop::sample::select(&[2u32, 3][..]).prop_flat_map(|p| {
            let f = Field::prime(p).unwrap();
            (common::matrix(f.clone(), 2, 3), common::matrix(f.clone(), 2, 2),
             common::matrix(f.clone(), 3, 2), common::matrix(f, 2, 3))
        })
    ) {
        let lhs = a.kron(&b).unwrap().mul(&c.kron(&d).unwrap()).unwrap();
        let rhs = a.mul(&c).unwrap().kron(&b.mul(&d).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]
    #[test]
    fn embedding_preserves_rank(
        ((p, e), m) in prop::sample::select(&[(2u32, 2u32), (2, 3), (3, 2), (5, 2)][..])
            .prop_flat_map(|(p, e)| (Just((p, e)), 1usize..=6, 1usize..=6))
            .prop_flat_map(|(pe, r, c)| (Just(pe), common::matrix(Field::prime(pe.0).unwrap(), r, c)))
    ) {
        let big = Field::standard(p, e).unwrap();
        let x = m.embed(&big).unwrap();
        prop_assert_eq!(x.rank(), m.rank());
        prop_assert_eq!(x.field(), &big);
    }
}

#[test]
fn field_axioms_exhaustive() {
    for (p, e) in [(2, 2), (2, 3), (3, 2)] {
        let f = Field::standard(p, e).unwrap();
        let q = f.order();
        assert_eq!(q, p.pow(e));
        let all: Vec<u32> = f.elements().collect();
        assert_eq!(all.len(), q as usize);
        for &a in &all {
            assert_eq!(f.add(a, 0), a);
            assert_eq!(f.mul(a, 1), a);
            assert_eq!(f.add(a, f.neg(a)), 0);
            assert_eq!(f.pow(a, q as u64), a);
            if a != 0 {
                assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
            } else {
                assert!(f.inv(0).is_none());
            }
            for &b in &all {
                assert_eq!(f.add(a, b), f.add(b, a));
                assert_eq!(f.mul(a, b), f.mul(b, a));
                assert_eq!(f.sub(f.add(a, b), b), a);
                if a != 0 && b != 0 {
                    assert_ne!(f.mul(a, b), 0);
                }
                for &c in &all {
                    assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                    assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                    assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                }
            }
        }
        let has_generator = all
            .iter()
            .any(|&g| g != 0 && (1..q - 1).all(|k| f.pow(g, k as u64) != 1));
        assert!(has_generator, "GF({p}^{e}) multiplicative group not cyclic");
    }
}

#[test]
fn element_encoding_round_trips() {
    for (p, e) in [(2, 2), (3, 2), (5, 2), (2, 4)] {
        let f = Field::standard(p, e).unwrap();
        for a in f.elements() {
            assert_eq!(f.from_coefficients(&f.coefficients(a)), a);
            assert_eq!(f.parse(&f.format(a)), Some(a));
        }
    }
}
