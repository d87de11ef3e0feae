mod common;

use std::collections::BTreeMap;

use hopfmod_core::{amod::check_tensor_support_formula, AModule, KGModule};
use proptest::prelude::*;

fn dims(m: &AModule) -> BTreeMap<usize, usize> {
    m.components()
        .map(|(l, c)| (l, c.dim()))
        .filter(|&(_, d)| d > 0)
        .collect()
}

fn flags(m: &AModule) -> BTreeMap<usize, (usize, bool)> {
    m.components()
        .filter(|(_, c)| c.dim() > 0)
        .map(|(l, c)| (l, (c.dim(), c.is_projective())))
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn tensor_component_dimensions((l, ms) in common::setting(&[2, 3], 2, 4, 4, 2)) {
        let (m, n) = (&ms[0], &ms[1]);
        let t = m.tensor(n).unwrap();
        let mut want: BTreeMap<usize, usize> = BTreeMap::new();
        for (y, my) in m.components() {
            for (z, nz) in n.components() {
                *want.entry(l.mul(y, z)).or_default() += my.dim() * nz.dim();
            }
        }
        want.retain(|_, d| *d > 0);
        prop_assert_eq!(dims(&t), want);
        prop_assert_eq!(t.total_dim(), m.total_dim() * n.total_dim());
    }

    #[test]
    fn projectives_form_an_ideal(
        (l, ms) in common::setting(&[2, 3], 2, 4, 4, 1),
        label in 0usize..4,
    ) {
        let label = label % l.order();
        let p = AModule::concentrated(&l, label, KGModule::regular(l.group())).unwrap();
        prop_assert!(p.is_projective());
        prop_assert!(ms[0].tensor(&p).unwrap().is_projective());
        prop_assert!(p.tensor(&ms[0]).unwrap().is_projective());
    }

    #[test]
    fn support_of_sum_is_union((_, ms) in common::setting(&[2, 3], 2, 4, 4, 2), e in 1u32..=2) {
        let (m, n) = (&ms[0], &ms[1]);
        let s = m.direct_sum(n).unwrap().support(e).unwrap();
        prop_assert_eq!(s, m.support(e).unwrap().union(&n.support(e).unwrap()));
    }

    #[test]
    fn dual_support_is_transported((l, ms) in common::setting(&[2, 3], 2, 4, 4, 1), e in 1u32..=2) {
        let m = &ms[0];
        let sm = m.support(e).unwrap();
        let sd = m.dual().support(e).unwrap();
        for x in 0..l.order() {
            prop_assert_eq!(sd.at(x), sm.at(l.inv(x)).transport(l.action(x)));
        }
    }

    #[test]
    fn double_dual_is_identity((_, ms) in common::setting(&[2, 3], 2, 4, 4, 1)) {
        prop_assert_eq!(&ms[0].dual().dual(), &ms[0]);
    }

    #[test]
    fn tensor_is_associative_on_invariants((_, ms) in common::setting(&[2, 3], 2, 3, 3, 3)) {
        let (a, b, c) = (&ms[0], &ms[1], &ms[2]);
        let left = a.tensor(b).unwrap().tensor(c).unwrap();
        let right = a.tensor(&b.tensor(c).unwrap()).unwrap();
        prop_assert_eq!(flags(&left), flags(&right));
        prop_assert_eq!(left.is_projective(), right.is_projective());
    }

    #[test]
    fn unit_is_neutral((l, ms) in common::setting(&[2, 3], 2, 4, 4, 1)) {
        let one = AModule::unit(&l);
        prop_assert_eq!(flags(&one.tensor(&ms[0]).unwrap()), flags(&ms[0]));
        prop_assert_eq!(flags(&ms[0].tensor(&one).unwrap()), flags(&ms[0]));
    }

    #[test]
    fn tensor_support_formula((_, ms) in common::setting(&[2], 3, 3, 4, 2), e in 1u32..=2) {
        let r = check_tensor_support_formula(&ms[0], &ms[1], e).unwrap();
        prop_assert!(r.holds(), "failing labels {:?}", r.failing_labels());
    }
}

#[test]
fn klein_tensor_depends_on_order() {
    let l = common::klein_l();
    let g = l.group().clone();
    let u = KGModule::quotient(&g, &[1]).unwrap();
    let m = AModule::concentrated(&l, 1, u.clone()).unwrap();
    let n = AModule::concentrated(&l, 0, u).unwrap();
    assert!(m.tensor(&n).unwrap().is_projective());
    assert!(!n.tensor(&m).unwrap().is_projective());
    let mm = m.tensor(&m).unwrap();
    assert!(mm.is_projective() && !m.is_projective());
    assert_eq!(dims(&mm), BTreeMap::from([(2, 4)]));
}
