//! Proptest strategies for groups, `L`-actions and modules.
#![allow(dead_code)]

use std::sync::Arc;

use hopfmod_core::{AModule, Automorphism, Field, GroupSpec, KGModule, LGroup, Matrix};
use proptest::collection::vec;
use proptest::prelude::*;

pub fn group(primes: &'static [u32], max_n: usize) -> impl Strategy<Value = GroupSpec> {
    (prop::sample::select(primes), 1..=max_n).prop_map(|(p, n)| GroupSpec::new(p, n).unwrap())
}

pub fn matrix(field: Field, rows: usize, cols: usize) -> impl Strategy<Value = Matrix> {
    let q = field.order();
    vec(0..q, rows * cols).prop_map(move |d| Matrix::from_data(&field, rows, cols, d))
}

#[derive(Clone, Debug)]
enum Recipe {
    Trivial,
    Regular,
    Quotient(Vec<bool>),
    RegularQuotient(Vec<Vec<u32>>),
    Submodule(Vec<u32>),
}

fn radical(g: &GroupSpec, mut v: Vec<u32>) -> Vec<u32> {
    let f = g.field();
    let rest = v[1..].iter().fold(0, |acc, &x| f.add(acc, x));
    v[0] = f.neg(rest);
    v
}

fn build(g: &GroupSpec, r: Recipe) -> KGModule {
    match r {
        Recipe::Trivial => KGModule::trivial(g),
        Recipe::Regular => KGModule::regular(g),
        Recipe::Quotient(mask) => {
            let fixed: Vec<usize> = (1..=g.n()).filter(|i| mask[i - 1]).collect();
            KGModule::quotient(g, &fixed).unwrap()
        }
        Recipe::RegularQuotient(vs) => {
            let vs: Vec<Vec<u32>> = vs.into_iter().map(|v| radical(g, v)).collect();
            KGModule::regular(g).quotient_by(&vs)
        }
        Recipe::Submodule(v) => KGModule::regular(g).submodule(&[radical(g, v)]),
    }
}

fn recipe(g: &GroupSpec) -> impl Strategy<Value = Recipe> {
    let (p, ord, n) = (g.p(), g.order(), g.n());
    prop_oneof![
        Just(Recipe::Trivial),
        Just(Recipe::Regular),
        vec(any::<bool>(), n).prop_map(Recipe::Quotient),
        vec(vec(0..p, ord), 1..=2).prop_map(Recipe::RegularQuotient),
        vec(0..p, ord).prop_map(Recipe::Submodule),
    ]
}

/// A nonzero `kG`-module of dimension at most `max_dim`, possibly a direct sum
/// and possibly in a scrambled basis.
pub fn kg_module(g: GroupSpec, max_dim: usize) -> BoxedStrategy<KGModule> {
    let f = g.field().clone();
    (
        recipe(&g),
        proptest::option::of(recipe(&g)),
        proptest::option::of(matrix(f, max_dim, max_dim)),
    )
        .prop_map(move |(a, b, basis)| {
            let mut m = build(&g, a);
            if m.dim() == 0 || m.dim() > max_dim {
                m = KGModule::trivial(&g);
            }
            if let Some(b) = b {
                let extra = build(&g, b);
                if extra.dim() > 0 && m.dim() + extra.dim() <= max_dim {
                    m = m.direct_sum(&extra).unwrap();
                }
            }
            if let Some(basis) = basis {
                let d = m.dim();
                let rows: Vec<Vec<u32>> = (0..d).map(|i| basis.row(i)[..d].to_vec()).collect();
                let c = Matrix::from_rows(g.field(), &rows).unwrap();
                if c.is_invertible() {
                    m = m.change_basis(&c).unwrap();
                }
            }
            m
        })
        .boxed()
}

/// Cyclic `L` acting through a random automorphism of `G` whose order is at
/// most `max_order`; the order of `L` is a multiple of it, still at most
/// `max_order`.
pub fn lgroup(g: GroupSpec, max_order: usize) -> BoxedStrategy<Arc<LGroup>> {
    let f = g.field().clone();
    let n = g.n();
    (matrix(f, n, n), 1..=max_order)
        .prop_filter_map("automorphism order too large", move |(a, mult)| {
            let mut gen = Automorphism::new(&g, a).ok()?;
            let mut k = 1;
            let mut cur = gen.clone();
            while !cur.is_identity() {
                cur = cur.compose(&gen);
                k += 1;
                if k > max_order {
                    gen = Automorphism::identity(&g);
                    k = 1;
                    break;
                }
            }
            let order = k * (1..=mult).rev().find(|j| k * j <= max_order).unwrap_or(1);
            Some(Arc::new(LGroup::cyclic(&g, order, gen).unwrap()))
        })
        .boxed()
}

pub fn a_module(l: Arc<LGroup>, max_dim: usize) -> BoxedStrategy<AModule> {
    let order = l.order();
    let g = l.group().clone();
    (
        vec(proptest::option::of(kg_module(g, max_dim)), order),
        0..order,
    )
        .prop_map(move |(comps, fallback)| {
            let mut comps: Vec<(usize, KGModule)> = comps
                .into_iter()
                .enumerate()
                .filter_map(|(i, c)| c.map(|c| (i, c)))
                .collect();
            if comps.is_empty() {
                comps.push((fallback, KGModule::trivial(l.group())));
            }
            AModule::new(&l, comps).unwrap()
        })
        .boxed()
}

/// An `L`-action together with `count` modules over it.
pub fn setting(
    primes: &'static [u32],
    max_n: usize,
    max_order: usize,
    max_dim: usize,
    count: usize,
) -> impl Strategy<Value = (Arc<LGroup>, Vec<AModule>)> {
    group(primes, max_n)
        .prop_flat_map(move |g| lgroup(g, max_order))
        .prop_flat_map(move |l| (Just(l.clone()), vec(a_module(l, max_dim), count)))
}

pub fn klein_l() -> Arc<LGroup> {
    let g = GroupSpec::new(2, 2).unwrap();
    let ell = Automorphism::from_rows(&g, &[vec![0, 1], vec![1, 1]]).unwrap();
    Arc::new(LGroup::cyclic(&g, 3, ell).unwrap())
}

/// `Z/n` permuting the generators of `(Z/p)^n` cyclically.
pub fn shift_l(p: u32, n: usize) -> Arc<LGroup> {
    let g = GroupSpec::new(p, n).unwrap();
    let rows: Vec<Vec<u32>> = (0..n)
        .map(|i| (0..n).map(|j| u32::from((j + 1) % n == i)).collect())
        .collect();
    Arc::new(LGroup::cyclic(&g, n, Automorphism::from_rows(&g, &rows).unwrap()).unwrap())
}
