//! Built-in end-to-end assertions on the Klein four configuration and on
//! `(Z/p)^n` with `Z/n` permuting the generators.

use std::sync::Arc;

use hopfmod_core::hopf::{verify_phi_iso, verify_psi_iso};
use hopfmod_core::strata::{ideal_membership, Side, StrataSpace};
use hopfmod_core::{
    amod::check_tensor_support_formula, AModule, Automorphism, Field, GroupSpec, HopfAlgebraA,
    KGModule, LGroup, ProjPoint,
};
use serde_json::{json, Value};

use crate::config::{canonical_json, klein_config, SessionConfig};
use crate::report::{sha256_hex, Report, TaskResult};

/// `Z/n` acting on `(Z/p)^n` by `g_i ↦ g_{i+1}`, indices mod `n`.
pub fn cyclic_shift_lgroup(p: u32, n: usize) -> Arc<LGroup> {
    let g = GroupSpec::new(p, n).expect("prime p");
    let rows: Vec<Vec<u32>> = (0..n)
        .map(|i| (0..n).map(|j| u32::from((j + 1) % n == i)).collect())
        .collect();
    let shift = Automorphism::from_rows(&g, &rows).expect("permutation matrix");
    Arc::new(LGroup::cyclic(&g, n, shift).expect("shift has order n"))
}

/// `kG/(g_1 − 1, …, g_{n−1} − 1)` placed at the generator of `Z/n`.
pub fn shifted_induced_module(lgroup: &Arc<LGroup>) -> AModule {
    let n = lgroup.group().n();
    let u = KGModule::quotient(lgroup.group(), &(1..n).collect::<Vec<_>>()).expect("valid indices");
    AModule::concentrated(lgroup, 1, u).expect("label 1 exists")
}

struct Checks(Vec<TaskResult>);

impl Checks {
    fn push(&mut self, name: &str, pass: bool, result: Value) {
        self.0.push(TaskResult {
            task: name.to_string(),
            params: json!({}),
            result,
            pass,
        });
    }
}

fn point(field: &Field, coords: &[u32]) -> ProjPoint {
    ProjPoint::normalize(field, coords).expect("nonzero")
}

fn profile_row(m: &AModule, nmax: usize) -> (Vec<(usize, bool, u32)>, bool, Value) {
    let entries = m.tensor_power_profile(nmax, 1).expect("within budget");
    let rows = entries
        .iter()
        .map(|x| (x.power, x.projective, x.complexity))
        .collect();
    let agree = entries.iter().all(|x| x.estimators_agree);
    let value = json!(entries
        .iter()
        .map(|x| json!({
            "power": x.power,
            "projective": x.projective,
            "complexity": x.complexity,
            "estimators_agree": x.estimators_agree,
        }))
        .collect::<Vec<_>>());
    (rows, agree, value)
}

pub fn verify_examples() -> Report {
    let config = klein_config();
    let hash = sha256_hex(&canonical_json(&config));
    let mut c = Checks(Vec::new());

    let session = SessionConfig::from_file(config);
    c.push(
        "klein_config_valid",
        session.is_ok(),
        json!({ "valid": session.is_ok() }),
    );
    let klein_l = {
        let g = GroupSpec::new(2, 2).expect("prime");
        let ell = Automorphism::from_rows(&g, &[vec![0, 1], vec![1, 1]]).expect("invertible");
        Arc::new(LGroup::cyclic(&g, 3, ell).expect("order 3"))
    };
    let g = klein_l.group().clone();
    let l_inv = klein_l.inv(1);

    // Hopf structure.
    let a = HopfAlgebraA::build(&klein_l).expect("dim 12");
    let ra = a.check_axioms();
    c.push(
        "hopf_axioms_klein",
        ra.all_passed(),
        json!({ "dim": ra.dim }),
    );
    let l3 = cyclic_shift_lgroup(2, 3);
    let a3 = HopfAlgebraA::build(&l3).expect("dim 24");
    let r3 = a3.check_axioms();
    c.push(
        "hopf_axioms_rank_three",
        r3.all_passed(),
        json!({ "dim": r3.dim }),
    );
    let mut broken = a.clone();
    broken.replace_antipode(a.untwisted_antipode());
    let rb = broken.check_axioms();
    let antipode_fails = !rb.get("antipode").is_some_and(|x| x.passed);
    c.push(
        "untwisted_antipode_rejected",
        antipode_fails,
        json!({ "all_passed": rb.all_passed() }),
    );

    let u = KGModule::quotient(&g, &[1]).expect("valid");
    let lu = u.conjugate(klein_l.action(1)).expect("same group");
    let u_at_1 = AModule::concentrated(&klein_l, 0, u.clone()).expect("label");
    let u_at_l = AModule::concentrated(&klein_l, 1, u.clone()).expect("label");
    let k_at_l = AModule::concentrated(&klein_l, 1, KGModule::trivial(&g)).expect("label");

    // First pair: M = U ⊗ k_1, N = k ⊗ k_ℓ.
    let (m1, n1) = (&u_at_1, &k_at_l);
    let mut ok = true;
    let mut detail = Vec::new();
    for e in [1, 2] {
        let f = Field::standard(2, e).expect("field");
        let mn = m1
            .tensor(n1)
            .expect("same structure")
            .support(e)
            .expect("budget");
        let nm = n1
            .tensor(m1)
            .expect("same structure")
            .support(e)
            .expect("budget");
        let want_mn = vec![(point(&f, &[1, 0]), 1)];
        let want_nm = vec![(point(&f, &[0, 1]), 1)];
        ok &= mn.pairs() == want_mn && nm.pairs() == want_nm && mn != nm;
        detail.push(json!({
            "e": e,
            "m_tensor_n": mn.pairs().iter().map(|(x, l)| json!([x.format(&f), l])).collect::<Vec<_>>(),
            "n_tensor_m": nm.pairs().iter().map(|(x, l)| json!([x.format(&f), l])).collect::<Vec<_>>(),
        }));
    }
    c.push("tensor_support_depends_on_order", ok, json!(detail));

    let mut ok = true;
    for e in [1, 2] {
        let sm = m1.support(e).expect("budget").pair_set();
        let sn = n1.support(e).expect("budget").pair_set();
        ok &= !sm.is_empty() && !sn.is_empty() && sm.is_disjoint(&sn);
    }
    c.push("factor_supports_disjoint", ok, json!({}));

    // Second pair: M = U ⊗ k_ℓ, N = U ⊗ k_1.
    let (m2, n2) = (&u_at_l, &u_at_1);
    let mn = m2.tensor(n2).expect("same structure");
    let nm = n2.tensor(m2).expect("same structure");
    let expect_mn =
        AModule::concentrated(&klein_l, 1, u.tensor(&lu).expect("same group")).expect("label");
    let expect_nm =
        AModule::concentrated(&klein_l, 1, u.tensor(&u).expect("same group")).expect("label");
    c.push(
        "tensor_projective_in_one_order",
        mn == expect_mn && mn.is_projective(),
        json!({ "components": crate::tasks::components_json(&mn) }),
    );
    c.push(
        "tensor_not_projective_in_other_order",
        nm == expect_nm && !nm.is_projective(),
        json!({ "components": crate::tasks::components_json(&nm) }),
    );

    let mm = m2.tensor(m2).expect("same structure");
    c.push(
        "square_projective_base_not",
        mm.is_projective() && !m2.is_projective() && mm.component(2).is_some(),
        json!({ "square": crate::tasks::components_json(&mm) }),
    );

    let mut ok = true;
    let mut detail = Vec::new();
    for e in [1, 2] {
        let f = Field::standard(2, e).expect("field");
        let got = m2.dual().support(e).expect("budget").pairs();
        let want = vec![(point(&f, &[0, 1]), l_inv)];
        ok &= got == want;
        detail.push(json!({
            "e": e,
            "expected": [[point(&f, &[0, 1]).format(&f), l_inv]],
            "actual": got.iter().map(|(x, l)| json!([x.format(&f), l])).collect::<Vec<_>>(),
        }));
    }
    c.push("dual_support_conjugate_at_inverse", ok, json!(detail));

    let differs = [1, 2].iter().all(|&e| {
        m2.dual().support(e).expect("budget").pair_set()
            != m2.support(e).expect("budget").pair_set()
    });
    c.push("dual_support_differs", differs, json!({}));

    let mut ok = true;
    for (x, y) in [(m1, n1), (n1, m1), (m2, n2), (n2, m2), (m2, m2)] {
        for e in [1, 2] {
            ok &= check_tensor_support_formula(x, y, e)
                .expect("same structure")
                .holds();
        }
    }
    c.push("tensor_support_formula_klein", ok, json!({}));

    let mut ok = true;
    for (x, y) in [(m1, n1), (n1, m1), (m2, n2), (n2, m2)] {
        ok &= verify_phi_iso(x, y, &a).expect("small");
    }
    for x in [m1, n1, m2] {
        ok &= verify_psi_iso(x, &a).expect("small");
    }
    c.push("tensor_and_dual_isomorphisms_klein", ok, json!({}));

    let (rows, agree, value) = profile_row(m2, 2);
    c.push(
        "power_profile_klein",
        rows == [(1, false, 1), (2, true, 0)] && agree,
        value,
    );
    for (p, n) in [(2u32, 3usize), (3, 2)] {
        let lg = cyclic_shift_lgroup(p, n);
        let m = shifted_induced_module(&lg);
        let (rows, agree, value) = profile_row(&m, n);
        let expected: Vec<(usize, bool, u32)> =
            (1..=n).map(|i| (i, i == n, (n - i) as u32)).collect();
        c.push(
            &format!("power_profile_p{p}_n{n}"),
            rows == expected && agree,
            value,
        );
    }

    let mut ok = true;
    let mut detail = Vec::new();
    for (e, want) in [(1, [3, 3, 1]), (2, [5, 5, 3])] {
        let space = StrataSpace::new(&klein_l, e).expect("small");
        let got: Vec<usize> = Side::ALL.iter().map(|&s| space.orbits(s).count()).collect();
        let checks = space.orbit_count_checks();
        ok &= got == want && checks.passed() && checks.left_right_differ;
        detail.push(json!({ "e": e, "left_right_two_sided": got }));
    }
    c.push("orbit_counts_klein", ok, json!(detail));

    let twisted = AModule::concentrated(&klein_l, 1, lu.clone()).expect("label");
    let left = ideal_membership(&u_at_1, &twisted, Side::Left, 1).expect("same structure");
    let right = ideal_membership(&u_at_1, &twisted, Side::Right, 1).expect("same structure");
    c.push(
        "left_member_not_right_member",
        left && !right,
        json!({ "left": left, "right": right }),
    );

    let mut ok = true;
    for x in [m1, n1, m2, &mn, &nm, &mm] {
        ok &= x.support(1).expect("budget").is_empty() == x.is_projective();
    }
    c.push("projective_iff_empty_support", ok, json!({}));

    Report::new(hash, c.0)
}
