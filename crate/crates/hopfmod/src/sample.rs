//! Seeded random instances: groups `L` acting on `(Z/p)^n`, `kG`-modules
//! built as quotients and submodules of the regular module, and graded
//! families of them.

use std::sync::Arc;

use hopfmod_core::{AModule, Automorphism, Field, GroupSpec, KGModule, LGroup, Matrix};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const MAX_TRIES: usize = 64;

pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    pub fn group(&mut self, primes: &[u32], max_n: usize) -> GroupSpec {
        let p = *primes.choose(&mut self.rng).expect("nonempty");
        let n = self.rng.gen_range(1..=max_n);
        GroupSpec::new(p, n).expect("prime")
    }

    pub fn matrix(&mut self, field: &Field, rows: usize, cols: usize) -> Matrix {
        let p = field.p();
        let data = (0..rows * cols).map(|_| self.rng.gen_range(0..p)).collect();
        Matrix::from_data(field, rows, cols, data)
    }

    pub fn invertible(&mut self, field: &Field, dim: usize) -> Matrix {
        loop {
            let m = self.matrix(field, dim, dim);
            if m.is_invertible() {
                return m;
            }
        }
    }

    /// `Z/m` with `m ≤ max_order`, acting through a random automorphism whose
    /// order `k` divides `m`. Falls back to the trivial action.
    pub fn lgroup(&mut self, group: &GroupSpec, max_order: usize) -> Arc<LGroup> {
        let f = group.field();
        for _ in 0..MAX_TRIES {
            let gen = Automorphism::new(group, self.invertible(f, group.n())).expect("invertible");
            let Some(k) = automorphism_order(&gen, max_order) else {
                continue;
            };
            let m = k * self.rng.gen_range(1..=max_order / k);
            return Arc::new(LGroup::cyclic(group, m, gen).expect("order divides m"));
        }
        let m = self.rng.gen_range(1..=max_order);
        Arc::new(LGroup::cyclic(group, m, Automorphism::identity(group)).expect("trivial action"))
    }

    /// A vector of `kG` in the augmentation ideal.
    fn radical_vector(&mut self, group: &GroupSpec) -> Vec<u32> {
        let f = group.field();
        let mut v: Vec<u32> = (0..group.order())
            .map(|_| self.rng.gen_range(0..f.p()))
            .collect();
        let rest = v[1..].iter().fold(0, |acc, &x| f.add(acc, x));
        v[0] = f.neg(rest);
        v
    }

    fn base_module(&mut self, group: &GroupSpec) -> KGModule {
        let n = group.n();
        match self.rng.gen_range(0..4) {
            0 => KGModule::trivial(group),
            1 => {
                let fixed: Vec<usize> = (1..=n).filter(|_| self.rng.gen_bool(0.5)).collect();
                KGModule::quotient(group, &fixed).expect("valid indices")
            }
            2 => {
                let count = self.rng.gen_range(1..=2);
                let vs: Vec<Vec<u32>> = (0..count).map(|_| self.radical_vector(group)).collect();
                KGModule::regular(group).quotient_by(&vs)
            }
            _ => {
                let v = self.radical_vector(group);
                KGModule::regular(group).submodule(&[v])
            }
        }
    }

    /// A nonzero module of dimension at most `max_dim`, in a random basis.
    pub fn kg_module(&mut self, group: &GroupSpec, max_dim: usize) -> KGModule {
        let mut m = KGModule::trivial(group);
        for _ in 0..MAX_TRIES {
            let candidate = self.base_module(group);
            if (1..=max_dim).contains(&candidate.dim()) {
                m = candidate;
                break;
            }
        }
        if m.dim() < max_dim && self.rng.gen_bool(0.25) {
            let extra = self.kg_module(group, max_dim - m.dim());
            m = m.direct_sum(&extra).expect("same group");
        }
        if self.rng.gen_bool(0.5) {
            let basis = self.invertible(group.field(), m.dim());
            m = m.change_basis(&basis).expect("invertible");
        }
        m
    }

    /// Components at a random nonempty set of labels, each of dimension at most
    /// `max_dim`.
    pub fn a_module(&mut self, lgroup: &Arc<LGroup>, max_dim: usize) -> AModule {
        let group = lgroup.group().clone();
        let mut labels: Vec<usize> = (0..lgroup.order())
            .filter(|_| self.rng.gen_bool(0.5))
            .collect();
        if labels.is_empty() {
            labels.push(self.rng.gen_range(0..lgroup.order()));
        }
        let comps: Vec<(usize, KGModule)> = labels
            .into_iter()
            .map(|l| (l, self.kg_module(&group, max_dim)))
            .collect();
        AModule::new(lgroup, comps).expect("labels in range")
    }
}

fn automorphism_order(a: &Automorphism, bound: usize) -> Option<usize> {
    let mut cur = a.clone();
    for k in 1..=bound {
        if cur.is_identity() {
            return Some(k);
        }
        cur = cur.compose(a);
    }
    None
}
