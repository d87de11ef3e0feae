//! Execution of configured tasks into report entries.

use hopfmod_core::hopf::{verify_phi_iso, verify_psi_iso, MAX_ISO_DIM};
use hopfmod_core::strata::{ideal_membership, Side, StrataSpace};
use hopfmod_core::{
    amod::check_tensor_support_formula, AModule, ASupport, HopfAlgebraA, HopfReport, OrbitReport,
};
use serde_json::{json, Value};

use crate::config::{SessionConfig, TaskConfig};
use crate::error::{ErrorKind, HopfmodError};
use crate::report::TaskResult;

fn run_error(task: &str, err: hopfmod_core::Error) -> HopfmodError {
    let kind = match err {
        hopfmod_core::Error::BudgetExceeded { .. } => ErrorKind::BudgetExceeded,
        hopfmod_core::Error::UnsupportedField { .. } => ErrorKind::UnsupportedField,
        _ => ErrorKind::InvalidModule,
    };
    HopfmodError::Invalid {
        kind,
        location: format!("task {task}"),
        message: err.to_string(),
    }
}

pub fn support_json(s: &ASupport) -> Value {
    let comps: Vec<Value> = s
        .iter()
        .map(|(l, v)| json!({ "label": l, "points": v.formatted() }))
        .collect();
    json!({ "e": s.ext_degree(), "components": comps })
}

pub fn components_json(m: &AModule) -> Value {
    Value::Array(
        m.components()
            .map(|(l, c)| json!({ "label": l, "dim": c.dim(), "projective": c.is_projective() }))
            .collect(),
    )
}

pub fn hopf_json(r: &HopfReport) -> Value {
    let checks: Vec<Value> = r
        .checks
        .iter()
        .map(|c| {
            let failure = c.first_failure.as_ref().map(|f| {
                f.iter()
                    .map(|(g, l)| json!({ "g": g, "label": l }))
                    .collect::<Vec<_>>()
            });
            json!({ "name": c.name, "pass": c.passed, "first_failure": failure })
        })
        .collect();
    json!({ "dim": r.dim, "checks": checks })
}

pub fn orbits_json(r: &OrbitReport, field: &hopfmod_core::Field) -> Value {
    let orbits: Vec<Value> = r
        .orbits
        .iter()
        .map(|o| Value::Array(o.iter().map(|(x, l)| json!([x.format(field), l])).collect()))
        .collect();
    json!({ "side": r.side.name(), "count": r.count(), "orbits": orbits })
}

pub fn run_task(session: &SessionConfig, task: &TaskConfig) -> Result<TaskResult, HopfmodError> {
    let name = task.name();
    let err = |e| run_error(name, e);
    let points = session.file.budgets.points as u128;
    let (result, pass) = match task {
        TaskConfig::HopfCheck => {
            let a = HopfAlgebraA::build(&session.lgroup).map_err(err)?;
            let r = a.check_axioms();
            (hopf_json(&r), r.all_passed())
        }
        TaskConfig::Tensor { left, right, e } => {
            let m = session.a_module(left)?;
            let n = session.a_module(right)?;
            let t = m.tensor(&n).map_err(err)?;
            let formula = check_tensor_support_formula(&m, &n, *e).map_err(err)?;
            let support = t.support_with_budget(*e, points).map_err(err)?;
            let phi = if m.total_dim() * n.total_dim() <= MAX_ISO_DIM {
                let a = HopfAlgebraA::build(&session.lgroup).map_err(err)?;
                Some(verify_phi_iso(&m, &n, &a).map_err(err)?)
            } else {
                None
            };
            let result = json!({
                "total_dim": t.total_dim(),
                "components": components_json(&t),
                "projective": t.is_projective(),
                "support": support_json(&support),
                "support_formula": {
                    "holds": formula.holds(),
                    "failing_labels": formula.failing_labels(),
                },
                "phi_isomorphism": phi,
            });
            (result, formula.holds() && phi != Some(false))
        }
        TaskConfig::Dual { module, e } => {
            let m = session.a_module(module)?;
            let d = m.dual();
            let l = &session.lgroup;
            let sm = m.support_with_budget(*e, points).map_err(err)?;
            let sd = d.support_with_budget(*e, points).map_err(err)?;
            let transported =
                (0..l.order()).all(|x| sd.at(x) == sm.at(l.inv(x)).transport(l.action(x)));
            let psi = if m.total_dim() * m.total_dim() <= MAX_ISO_DIM {
                let a = HopfAlgebraA::build(l).map_err(err)?;
                Some(verify_psi_iso(&m, &a).map_err(err)?)
            } else {
                None
            };
            let double = d.dual() == m;
            let result = json!({
                "total_dim": d.total_dim(),
                "components": components_json(&d),
                "support": support_json(&sd),
                "support_transported": transported,
                "double_dual_equal": double,
                "psi_isomorphism": psi,
            });
            (result, transported && double && psi != Some(false))
        }
        TaskConfig::Projective { module } => {
            let m = session.a_module(module)?;
            let result = json!({
                "projective": m.is_projective(),
                "total_dim": m.total_dim(),
                "components": components_json(&m),
            });
            (result, true)
        }
        TaskConfig::Support { module, e } => {
            let m = session.a_module(module)?;
            let s = m.support_with_budget(*e, points).map_err(err)?;
            let result = json!({
                "support": support_json(&s),
                "pairs": s.pairs().len(),
                "projective": m.is_projective(),
            });
            (result, s.is_empty() == m.is_projective())
        }
        TaskConfig::Complexity { module } => {
            let m = session.a_module(module)?;
            let mut all_agree = true;
            let mut overall = 0;
            let mut comps = Vec::new();
            for (l, c) in m.components() {
                let est = c.complexity_estimate_with_budget(points).map_err(err)?;
                all_agree &= est.agree();
                overall = overall.max(est.value());
                comps.push(json!({
                    "label": l,
                    "point_counts": est.point_counts,
                    "variety_dims": est.variety_dims,
                    "by_variety": est.by_variety,
                    "variety_stable": est.variety_stable,
                    "betti": est.betti,
                    "by_betti": est.by_betti,
                    "agree": est.agree(),
                }));
            }
            let result = json!({ "complexity": overall, "components": comps, "estimators_agree": all_agree });
            (result, all_agree)
        }
        TaskConfig::Profile { module, nmax, e } => {
            let m = session.a_module(module)?;
            let entries = m
                .tensor_power_profile_with_budget(*nmax, *e, session.file.budgets.dim, points)
                .map_err(err)?;
            let agree = entries.iter().all(|x| x.estimators_agree);
            let rows: Vec<Value> = entries
                .iter()
                .map(|x| {
                    json!({
                        "power": x.power,
                        "total_dim": x.total_dim,
                        "projective": x.projective,
                        "complexity": x.complexity,
                        "estimators_agree": x.estimators_agree,
                        "support_points": x.support_points,
                    })
                })
                .collect();
            (json!({ "entries": rows }), agree)
        }
        TaskConfig::Orbits { e, side } => {
            let space = StrataSpace::new(&session.lgroup, *e).map_err(err)?;
            let sides: Vec<Side> = match side {
                Some(s) => vec![(*s).into()],
                None => Side::ALL.to_vec(),
            };
            let tables: Vec<Value> = sides
                .iter()
                .map(|&s| orbits_json(&space.orbits(s), space.field()))
                .collect();
            let checks = space.orbit_count_checks();
            let result = json!({
                "e": e,
                "points": space.points().len(),
                "pairs": space.pair_count(),
                "sides": tables,
                "checks": {
                    "left": checks.left,
                    "right": checks.right,
                    "two_sided": checks.two_sided,
                    "point_orbits": checks.point_orbits,
                    "left_right_differ": checks.left_right_differ,
                    "two_sided_coarsest": checks.two_sided_coarsest,
                    "pass": checks.passed(),
                },
            });
            (result, checks.passed())
        }
        TaskConfig::Membership {
            generator,
            candidate,
            side,
            e,
        } => {
            let g = session.a_module(generator)?;
            let c = session.a_module(candidate)?;
            let member = ideal_membership(&g, &c, (*side).into(), *e).map_err(err)?;
            let result = json!({
                "member": member,
                "generator_support": support_json(&g.support_with_budget(*e, points).map_err(err)?),
                "candidate_support": support_json(&c.support_with_budget(*e, points).map_err(err)?),
            });
            (result, true)
        }
    };
    let params = serde_json::to_value(task).expect("serializable");
    Ok(TaskResult {
        task: name.to_string(),
        params,
        result,
        pass,
    })
}

pub fn run_all(
    session: &SessionConfig,
    tasks: &[TaskConfig],
) -> Result<Vec<TaskResult>, HopfmodError> {
    tasks.iter().map(|t| run_task(session, t)).collect()
}
