//! Session configuration: the group `(Z/p)^n`, the group `L` with its action,
//! named module definitions, and a task list.
//!
//! ```json
//! {
//!   "p": 2, "n": 2,
//!   "lgroup": { "spec": "cyclic:3", "action": [[0, 1], [1, 1]] },
//!   "modules": {
//!     "U": { "quotient": [1] },
//!     "M": { "graded": { "1": "U" } }
//!   },
//!   "tasks": [ { "task": "tensor", "left": "M", "right": "M", "e": 1 } ]
//! }
//! ```

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use hopfmod_core::strata::Side;
use hopfmod_core::{
    AModule, Automorphism, Error as CoreError, GroupSpec, KGModule, LGroup, Matrix,
};
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::error::{ErrorKind, HopfmodError};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub p: u32,
    pub n: usize,
    #[serde(default)]
    pub lgroup: LGroupConfig,
    #[serde(default)]
    pub modules: BTreeMap<String, ModuleExpr>,
    #[serde(default)]
    pub tasks: Vec<TaskConfig>,
    #[serde(default)]
    pub budgets: Budgets,
}

/// `spec` is `"trivial"`, `"cyclic:m"` (with `action`, the generator's
/// matrix) or `"table"` (with the Cayley `table` and one matrix per element in
/// `actions`).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LGroupConfig {
    pub spec: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub action: Option<Vec<Vec<u32>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub actions: Option<Vec<Vec<Vec<u32>>>>,
}

impl Default for LGroupConfig {
    fn default() -> Self {
        LGroupConfig {
            spec: "trivial".into(),
            action: None,
            table: None,
            actions: None,
        }
    }
}

/// A module expression: a name (`"trivial"`, `"regular"`, or a key of
/// `modules`) or a single-key constructor object.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ModuleExpr {
    Name(String),
    Op(Box<ModuleOp>),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum ModuleOp {
    /// `kG/(g_i − 1 : i ∈ S)`, 1-based indices.
    Quotient(Vec<usize>),
    Tensor(Vec<ModuleExpr>),
    Dual(ModuleExpr),
    Conjugate {
        module: ModuleExpr,
        by: usize,
    },
    Sum(Vec<ModuleExpr>),
    /// Components keyed by element of `L`.
    Graded(BTreeMap<String, ModuleExpr>),
    /// Explicit generator matrices, one per generator of `G`.
    Matrices(Vec<Vec<Vec<u32>>>),
}

impl fmt::Display for ModuleExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModuleExpr::Name(s) => f.write_str(s),
            ModuleExpr::Op(op) => {
                let text = serde_json::to_string(op).map_err(|_| fmt::Error)?;
                f.write_str(&text)
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SideName {
    Left,
    Right,
    TwoSided,
}

impl From<SideName> for Side {
    fn from(s: SideName) -> Side {
        match s {
            SideName::Left => Side::Left,
            SideName::Right => Side::Right,
            SideName::TwoSided => Side::TwoSided,
        }
    }
}

fn one() -> u32 {
    1
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "task", rename_all = "kebab-case", deny_unknown_fields)]
pub enum TaskConfig {
    HopfCheck,
    Tensor {
        left: ModuleExpr,
        right: ModuleExpr,
        #[serde(default = "one")]
        e: u32,
    },
    Dual {
        module: ModuleExpr,
        #[serde(default = "one")]
        e: u32,
    },
    Projective {
        module: ModuleExpr,
    },
    Support {
        module: ModuleExpr,
        #[serde(default = "one")]
        e: u32,
    },
    Complexity {
        module: ModuleExpr,
    },
    Profile {
        module: ModuleExpr,
        nmax: usize,
        #[serde(default = "one")]
        e: u32,
    },
    Orbits {
        #[serde(default = "one")]
        e: u32,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        side: Option<SideName>,
    },
    Membership {
        generator: ModuleExpr,
        candidate: ModuleExpr,
        side: SideName,
        #[serde(default = "one")]
        e: u32,
    },
}

impl TaskConfig {
    pub fn name(&self) -> &'static str {
        match self {
            TaskConfig::HopfCheck => "hopf-check",
            TaskConfig::Tensor { .. } => "tensor",
            TaskConfig::Dual { .. } => "dual",
            TaskConfig::Projective { .. } => "projective",
            TaskConfig::Support { .. } => "support",
            TaskConfig::Complexity { .. } => "complexity",
            TaskConfig::Profile { .. } => "profile",
            TaskConfig::Orbits { .. } => "orbits",
            TaskConfig::Membership { .. } => "membership",
        }
    }

    fn modules(&self) -> Vec<(&'static str, &ModuleExpr)> {
        match self {
            TaskConfig::HopfCheck | TaskConfig::Orbits { .. } => vec![],
            TaskConfig::Tensor { left, right, .. } => vec![("left", left), ("right", right)],
            TaskConfig::Dual { module, .. }
            | TaskConfig::Projective { module }
            | TaskConfig::Support { module, .. }
            | TaskConfig::Complexity { module }
            | TaskConfig::Profile { module, .. } => vec![("module", module)],
            TaskConfig::Membership {
                generator,
                candidate,
                ..
            } => vec![("generator", generator), ("candidate", candidate)],
        }
    }

    fn ext_degree(&self) -> Option<u32> {
        match *self {
            TaskConfig::Tensor { e, .. }
            | TaskConfig::Dual { e, .. }
            | TaskConfig::Support { e, .. }
            | TaskConfig::Profile { e, .. }
            | TaskConfig::Orbits { e, .. }
            | TaskConfig::Membership { e, .. } => Some(e),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Budgets {
    /// Projective points enumerated per variety.
    #[serde(default = "Budgets::default_points")]
    pub points: u64,
    /// Total dimension of tensor powers.
    #[serde(default = "Budgets::default_dim")]
    pub dim: usize,
}

impl Budgets {
    fn default_points() -> u64 {
        hopfmod_core::DEFAULT_POINT_BUDGET as u64
    }

    fn default_dim() -> usize {
        hopfmod_core::amod::DEFAULT_DIM_BUDGET
    }
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets {
            points: Self::default_points(),
            dim: Self::default_dim(),
        }
    }
}

/// A module value: either over `kG` or graded by `L`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModuleValue {
    Kg(KGModule),
    A(AModule),
}

impl ModuleValue {
    /// `A`-module view; a `kG`-module sits at the identity of `L`.
    pub fn into_a(self, lgroup: &Arc<LGroup>) -> AModule {
        match self {
            ModuleValue::A(m) => m,
            ModuleValue::Kg(m) => AModule::concentrated(lgroup, 0, m).expect("shared group"),
        }
    }
}

/// A validated configuration with every module evaluated.
#[derive(Clone, Debug)]
pub struct SessionConfig {
    pub file: ConfigFile,
    pub group: GroupSpec,
    pub lgroup: Arc<LGroup>,
    pub modules: BTreeMap<String, ModuleValue>,
}

fn invalid(
    kind: ErrorKind,
    location: impl Into<String>,
    message: impl fmt::Display,
) -> HopfmodError {
    HopfmodError::Invalid {
        kind,
        location: location.into(),
        message: message.to_string(),
    }
}

fn core_error(location: &str, err: CoreError) -> HopfmodError {
    let kind = match err {
        CoreError::NotPrime(_) => ErrorKind::NotPrime,
        CoreError::SingularMatrix => ErrorKind::SingularAction,
        CoreError::NotHomomorphism { .. } => ErrorKind::NotHomomorphism,
        CoreError::InvalidLGroup(_) => ErrorKind::InvalidLGroup,
        CoreError::BudgetExceeded { .. } => ErrorKind::BudgetExceeded,
        CoreError::UnsupportedField { .. } => ErrorKind::UnsupportedField,
        _ => ErrorKind::InvalidModule,
    };
    invalid(kind, location, err)
}

pub fn parse_config(text: &str) -> Result<SessionConfig, HopfmodError> {
    let file: ConfigFile = serde_json::from_str(text).map_err(|e| HopfmodError::Json {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    SessionConfig::from_file(file)
}

fn matrix(group: &GroupSpec, rows: &[Vec<u32>], location: &str) -> Result<Matrix, HopfmodError> {
    let p = group.p();
    if let Some(&bad) = rows.iter().flatten().find(|&&x| x >= p) {
        return Err(invalid(
            ErrorKind::InvalidModule,
            location,
            format!("entry {bad} is not reduced mod {p}"),
        ));
    }
    Matrix::from_rows(group.field(), rows).map_err(|e| core_error(location, e))
}

fn automorphism(
    group: &GroupSpec,
    rows: &[Vec<u32>],
    location: &str,
) -> Result<Automorphism, HopfmodError> {
    let m = matrix(group, rows, location)?;
    if m.rows() != group.n() || m.cols() != group.n() {
        return Err(invalid(
            ErrorKind::InvalidLGroup,
            location,
            format!("action matrix must be {n}x{n}", n = group.n()),
        ));
    }
    Automorphism::new(group, m).map_err(|e| core_error(location, e))
}

fn build_lgroup(group: &GroupSpec, cfg: &LGroupConfig) -> Result<LGroup, HopfmodError> {
    let spec = cfg.spec.as_str();
    if spec == "trivial" {
        return Ok(LGroup::trivial(group));
    }
    if let Some(order) = spec.strip_prefix("cyclic:") {
        let order: usize = order.parse().ok().filter(|&m| m > 0).ok_or_else(|| {
            invalid(
                ErrorKind::InvalidLGroup,
                "lgroup.spec",
                format!("bad order in {spec:?}"),
            )
        })?;
        let rows = cfg.action.as_ref().ok_or_else(|| {
            invalid(
                ErrorKind::InvalidLGroup,
                "lgroup.action",
                "cyclic L needs an action matrix",
            )
        })?;
        let gen = automorphism(group, rows, "lgroup.action")?;
        return LGroup::cyclic(group, order, gen).map_err(|e| core_error("lgroup", e));
    }
    if spec == "table" {
        let table = cfg.table.clone().ok_or_else(|| {
            invalid(
                ErrorKind::InvalidLGroup,
                "lgroup.table",
                "missing Cayley table",
            )
        })?;
        let actions = cfg
            .actions
            .as_ref()
            .ok_or_else(|| {
                invalid(
                    ErrorKind::InvalidLGroup,
                    "lgroup.actions",
                    "missing action matrices",
                )
            })?
            .iter()
            .enumerate()
            .map(|(i, rows)| automorphism(group, rows, &format!("lgroup.actions[{i}]")))
            .collect::<Result<Vec<_>, _>>()?;
        return LGroup::new(group, table, actions).map_err(|e| core_error("lgroup", e));
    }
    Err(invalid(
        ErrorKind::InvalidLGroup,
        "lgroup.spec",
        format!("unknown spec {spec:?}; expected \"trivial\", \"cyclic:m\" or \"table\""),
    ))
}

struct Evaluator<'a> {
    group: &'a GroupSpec,
    lgroup: &'a Arc<LGroup>,
    defs: &'a BTreeMap<String, ModuleExpr>,
    done: BTreeMap<String, ModuleValue>,
    stack: Vec<String>,
}

impl Evaluator<'_> {
    fn name(&mut self, name: &str, location: &str) -> Result<ModuleValue, HopfmodError> {
        match name {
            "trivial" => return Ok(ModuleValue::Kg(KGModule::trivial(self.group))),
            "regular" => return Ok(ModuleValue::Kg(KGModule::regular(self.group))),
            _ => {}
        }
        if let Some(v) = self.done.get(name) {
            return Ok(v.clone());
        }
        if let Some(pos) = self.stack.iter().position(|s| s == name) {
            let mut cycle = self.stack[pos..].to_vec();
            cycle.push(name.to_string());
            return Err(invalid(
                ErrorKind::Cycle,
                location,
                format!("cycle {}", cycle.join(" -> ")),
            ));
        }
        let expr = self.defs.get(name).ok_or_else(|| {
            invalid(
                ErrorKind::UnresolvedName,
                location,
                format!("unknown module {name:?}"),
            )
        })?;
        self.stack.push(name.to_string());
        let value = self.expr(expr, &format!("modules.{name}"))?;
        self.stack.pop();
        self.done.insert(name.to_string(), value.clone());
        Ok(value)
    }

    fn label(&self, text: &str, location: &str) -> Result<usize, HopfmodError> {
        text.parse::<usize>()
            .ok()
            .filter(|&l| l < self.lgroup.order())
            .ok_or_else(|| {
                invalid(
                    ErrorKind::InvalidModule,
                    location,
                    format!(
                        "{text:?} is not an element of L (0..{})",
                        self.lgroup.order()
                    ),
                )
            })
    }

    fn list(
        &mut self,
        items: &[ModuleExpr],
        location: &str,
    ) -> Result<Vec<ModuleValue>, HopfmodError> {
        if items.is_empty() {
            return Err(invalid(
                ErrorKind::InvalidModule,
                location,
                "empty operand list",
            ));
        }
        items
            .iter()
            .enumerate()
            .map(|(i, e)| self.expr(e, &format!("{location}[{i}]")))
            .collect()
    }

    fn fold(
        &self,
        values: Vec<ModuleValue>,
        location: &str,
        kg: impl Fn(&KGModule, &KGModule) -> hopfmod_core::Result<KGModule>,
        a: impl Fn(&AModule, &AModule) -> hopfmod_core::Result<AModule>,
    ) -> Result<ModuleValue, HopfmodError> {
        let all_kg = values.iter().all(|v| matches!(v, ModuleValue::Kg(_)));
        let mut iter = values.into_iter();
        let first = iter.next().expect("nonempty");
        if all_kg {
            let mut acc = match first {
                ModuleValue::Kg(m) => m,
                ModuleValue::A(_) => unreachable!(),
            };
            for v in iter {
                if let ModuleValue::Kg(m) = v {
                    acc = kg(&acc, &m).map_err(|e| core_error(location, e))?;
                }
            }
            return Ok(ModuleValue::Kg(acc));
        }
        let mut acc = first.into_a(self.lgroup);
        for v in iter {
            acc = a(&acc, &v.into_a(self.lgroup)).map_err(|e| core_error(location, e))?;
        }
        Ok(ModuleValue::A(acc))
    }

    fn expr(&mut self, expr: &ModuleExpr, location: &str) -> Result<ModuleValue, HopfmodError> {
        let op = match expr {
            ModuleExpr::Name(name) => return self.name(name, location),
            ModuleExpr::Op(op) => op,
        };
        match &**op {
            ModuleOp::Quotient(fixed) => KGModule::quotient(self.group, fixed)
                .map(ModuleValue::Kg)
                .map_err(|e| core_error(&format!("{location}.quotient"), e)),
            ModuleOp::Tensor(items) => {
                let loc = format!("{location}.tensor");
                let values = self.list(items, &loc)?;
                self.fold(values, &loc, |x, y| x.tensor(y), |x, y| x.tensor(y))
            }
            ModuleOp::Sum(items) => {
                let loc = format!("{location}.sum");
                let values = self.list(items, &loc)?;
                self.fold(values, &loc, |x, y| x.direct_sum(y), |x, y| x.direct_sum(y))
            }
            ModuleOp::Dual(inner) => Ok(match self.expr(inner, &format!("{location}.dual"))? {
                ModuleValue::Kg(m) => ModuleValue::Kg(m.dual()),
                ModuleValue::A(m) => ModuleValue::A(m.dual()),
            }),
            ModuleOp::Conjugate { module, by } => {
                let loc = format!("{location}.conjugate");
                let by = self.label(&by.to_string(), &format!("{loc}.by"))?;
                match self.expr(module, &format!("{loc}.module"))? {
                    ModuleValue::Kg(m) => m
                        .conjugate(self.lgroup.action(by))
                        .map(ModuleValue::Kg)
                        .map_err(|e| core_error(&loc, e)),
                    ModuleValue::A(_) => Err(invalid(
                        ErrorKind::InvalidModule,
                        loc,
                        "conjugation applies to kG-modules",
                    )),
                }
            }
            ModuleOp::Graded(parts) => {
                let loc = format!("{location}.graded");
                let mut comps = Vec::new();
                for (key, e) in parts {
                    let here = format!("{loc}.{key}");
                    let label = self.label(key, &here)?;
                    match self.expr(e, &here)? {
                        ModuleValue::Kg(m) => comps.push((label, m)),
                        ModuleValue::A(_) => {
                            return Err(invalid(
                                ErrorKind::InvalidModule,
                                here,
                                "graded components must be kG-modules",
                            ))
                        }
                    }
                }
                AModule::new(self.lgroup, comps)
                    .map(ModuleValue::A)
                    .map_err(|e| core_error(&loc, e))
            }
            ModuleOp::Matrices(mats) => {
                let loc = format!("{location}.matrices");
                let gens = mats
                    .iter()
                    .enumerate()
                    .map(|(i, rows)| matrix(self.group, rows, &format!("{loc}[{i}]")))
                    .collect::<Result<Vec<_>, _>>()?;
                KGModule::new(self.group, gens)
                    .map(ModuleValue::Kg)
                    .map_err(|e| core_error(&loc, e))
            }
        }
    }
}

impl SessionConfig {
    pub fn from_file(file: ConfigFile) -> Result<Self, HopfmodError> {
        let group = GroupSpec::new(file.p, file.n).map_err(|e| {
            let loc = if matches!(e, CoreError::NotPrime(_)) {
                "p"
            } else {
                "n"
            };
            core_error(loc, e)
        })?;
        let lgroup = Arc::new(build_lgroup(&group, &file.lgroup)?);
        let mut eval = Evaluator {
            group: &group,
            lgroup: &lgroup,
            defs: &file.modules,
            done: BTreeMap::new(),
            stack: Vec::new(),
        };
        for name in file.modules.keys() {
            if name == "trivial" || name == "regular" {
                return Err(invalid(
                    ErrorKind::InvalidModule,
                    format!("modules.{name}"),
                    "reserved module name",
                ));
            }
            eval.name(name, &format!("modules.{name}"))?;
        }
        for (i, task) in file.tasks.iter().enumerate() {
            for (field, expr) in task.modules() {
                eval.expr(expr, &format!("tasks[{i}].{field}"))?;
            }
            if let Some(e) = task.ext_degree() {
                hopfmod_core::Field::standard(file.p, e)
                    .map_err(|err| core_error(&format!("tasks[{i}].e"), err))?;
            }
        }
        let modules = eval.done;
        Ok(SessionConfig {
            file,
            group,
            lgroup,
            modules,
        })
    }

    /// Evaluates an expression against the defined modules.
    pub fn module(&self, expr: &ModuleExpr) -> Result<ModuleValue, HopfmodError> {
        let mut eval = Evaluator {
            group: &self.group,
            lgroup: &self.lgroup,
            defs: &self.file.modules,
            done: self.modules.clone(),
            stack: Vec::new(),
        };
        eval.expr(expr, "module")
    }

    pub fn a_module(&self, expr: &ModuleExpr) -> Result<AModule, HopfmodError> {
        Ok(self.module(expr)?.into_a(&self.lgroup))
    }

    /// Canonical JSON of the configuration (keys sorted).
    pub fn canonical_json(&self) -> String {
        canonical_json(&self.file)
    }
}

pub fn canonical_json(file: &ConfigFile) -> String {
    let value = serde_json::to_value(file).expect("serializable");
    serde_json::to_string(&value).expect("serializable")
}

/// The small-group configuration used throughout the examples: `G` the Klein
/// four group, `L = Z/3` acting by `[[0,1],[1,1]]`, `U = kG/(g_1 − 1)`.
pub fn klein_config() -> ConfigFile {
    serde_json::from_value(json!({
        "p": 2,
        "n": 2,
        "lgroup": { "spec": "cyclic:3", "action": [[0, 1], [1, 1]] },
        "modules": {
            "U": { "quotient": [1] },
            "U_at_1": { "graded": { "0": "U" } },
            "U_at_l": { "graded": { "1": "U" } },
            "k_at_l": { "graded": { "1": "trivial" } }
        }
    }))
    .expect("valid built-in configuration")
}
