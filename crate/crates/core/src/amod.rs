//! Modules over `A = kG ⊗ k[L]`.
//!
//! `k[L]` is semisimple with one-dimensional simples `k_ℓ`, so an `A`-module is
//! the same thing as an `L`-graded family of `kG`-modules,
//! `M = ⊕_ℓ M_ℓ ⊗ k_ℓ`. The coproduct of `A` twists the second factor of a
//! tensor product:
//!
//! ```text
//! (M ⊗ N)_ℓ = ⊕_{ℓ1 ℓ2 = ℓ} M_{ℓ1} ⊗ ^{ℓ1}N_{ℓ2}
//! ```
//!
//! where `^{y}N` is [`KGModule::conjugate`] by `ρ(y)`: `g` acts as `ρ(y)^{-1} g`.
//! The dual is `(M*)_ℓ = conjugate(M_{ℓ^{-1}}*, ρ(ℓ))`, i.e. on the component at
//! `ℓ = y^{-1}` the element `g` acts as the contragredient of `ρ(y) g`. This is
//! what the antipode `S(g ⊗ p_ℓ) = ρ(ℓ^{-1})(−g) ⊗ p_{ℓ^{-1}}` forces; see
//! [`crate::hopf::verify_psi_iso`].
//!
//! Projectivity is componentwise: `A ≅ ⊕_ℓ kG ⊗ k_ℓ` as an algebra.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::gf::Field;
use crate::kg::{
    Automorphism, ComplexityEstimate, GroupSpec, KGModule, ProjPoint, VarietySample,
    DEFAULT_POINT_BUDGET,
};

/// A finite group `L` (elements `0..m`, `0` the identity) with an action
/// `ρ: L → Aut(G)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LGroup {
    group: GroupSpec,
    table: Vec<Vec<usize>>,
    inverse: Vec<usize>,
    action: Vec<Automorphism>,
    generators: Vec<usize>,
}

impl LGroup {
    pub const MAX_ORDER: usize = 64;

    /// Validates the Cayley table exhaustively and checks that `ρ` is a
    /// homomorphism.
    pub fn new(
        group: &GroupSpec,
        table: Vec<Vec<usize>>,
        action: Vec<Automorphism>,
    ) -> Result<Self> {
        let m = table.len();
        if m == 0 || m > Self::MAX_ORDER {
            return Err(Error::InvalidLGroup(format!(
                "order {m} outside 1..={}",
                Self::MAX_ORDER
            )));
        }
        if table
            .iter()
            .any(|row| row.len() != m || row.iter().any(|&x| x >= m))
        {
            return Err(Error::InvalidLGroup(
                "Cayley table must be m×m over 0..m".into(),
            ));
        }
        if action.len() != m {
            return Err(Error::InvalidLGroup(format!(
                "expected {m} action matrices, got {}",
                action.len()
            )));
        }
        for (a, row) in table.iter().enumerate() {
            if table[0][a] != a || row[0] != a {
                return Err(Error::InvalidLGroup("element 0 is not the identity".into()));
            }
        }
        for a in 0..m {
            for b in 0..m {
                for c in 0..m {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::InvalidLGroup(format!(
                            "not associative at ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }
        let mut inverse = vec![0; m];
        for a in 0..m {
            inverse[a] = (0..m)
                .find(|&b| table[a][b] == 0 && table[b][a] == 0)
                .ok_or_else(|| Error::InvalidLGroup(format!("element {a} has no inverse")))?;
        }
        for (a, phi) in action.iter().enumerate() {
            if phi.matrix().rows() != group.n() || phi.matrix().field() != group.field() {
                return Err(Error::InvalidLGroup(format!(
                    "action matrix for {a} has the wrong shape"
                )));
            }
        }
        if !action[0].is_identity() {
            return Err(Error::InvalidLGroup(
                "ρ(identity) is not the identity".into(),
            ));
        }
        for a in 0..m {
            for b in 0..m {
                if action[a].compose(&action[b]) != action[table[a][b]] {
                    return Err(Error::NotHomomorphism { a, b });
                }
            }
        }
        let generators = greedy_generators(&table);
        Ok(LGroup {
            group: group.clone(),
            table,
            inverse,
            action,
            generators,
        })
    }

    /// `Z/m` with generator acting by `generator`; element `i` is `ℓ^i`.
    pub fn cyclic(group: &GroupSpec, order: usize, generator: Automorphism) -> Result<Self> {
        if order == 0 {
            return Err(Error::InvalidLGroup("order must be positive".into()));
        }
        let table = (0..order)
            .map(|a| (0..order).map(|b| (a + b) % order).collect())
            .collect();
        let mut action = Vec::with_capacity(order);
        let mut current = Automorphism::identity(group);
        for _ in 0..order {
            action.push(current.clone());
            current = current.compose(&generator);
        }
        if !current.is_identity() {
            return Err(Error::NotHomomorphism { a: order - 1, b: 1 });
        }
        Self::new(group, table, action)
    }

    pub fn trivial(group: &GroupSpec) -> Self {
        Self::new(group, vec![vec![0]], vec![Automorphism::identity(group)]).expect("trivial group")
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    /// `ρ(a)`.
    pub fn action(&self, a: usize) -> &Automorphism {
        &self.action[a]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    /// A generating set, chosen greedily in label order.
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn acts_trivially(&self) -> bool {
        self.action.iter().all(Automorphism::is_identity)
    }
}

fn greedy_generators(table: &[Vec<usize>]) -> Vec<usize> {
    let m = table.len();
    let mut gens = Vec::new();
    let mut reached = vec![false; m];
    reached[0] = true;
    for a in 1..m {
        if reached[a] {
            continue;
        }
        gens.push(a);
        // Closure of the subgroup under right multiplication by all generators.
        let mut stack: Vec<usize> = (0..m).filter(|&x| reached[x]).collect();
        while let Some(x) = stack.pop() {
            for &s in &gens {
                let y = table[x][s];
                if !reached[y] {
                    reached[y] = true;
                    stack.push(y);
                }
            }
        }
    }
    gens
}

/// An `A`-module as its canonical decomposition. Zero components are not
/// stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AModule {
    lgroup: Arc<LGroup>,
    components: BTreeMap<usize, KGModule>,
}

/// Refusal threshold for [`AModule::tensor_power_profile`].
pub const DEFAULT_DIM_BUDGET: usize = 10_000;

impl AModule {
    pub fn new(
        lgroup: &Arc<LGroup>,
        components: impl IntoIterator<Item = (usize, KGModule)>,
    ) -> Result<Self> {
        let mut out = AModule::zero(lgroup);
        for (label, m) in components {
            if label >= lgroup.order() {
                return Err(Error::IndexOutOfRange {
                    index: label,
                    len: lgroup.order(),
                });
            }
            if m.group() != lgroup.group() {
                return Err(Error::GroupMismatch);
            }
            out.add_component(label, m);
        }
        Ok(out)
    }

    pub fn zero(lgroup: &Arc<LGroup>) -> Self {
        AModule {
            lgroup: lgroup.clone(),
            components: BTreeMap::new(),
        }
    }

    /// `k ⊗ k_1`, the tensor unit.
    pub fn unit(lgroup: &Arc<LGroup>) -> Self {
        Self::concentrated(lgroup, 0, KGModule::trivial(lgroup.group())).expect("valid")
    }

    /// `module ⊗ k_label`.
    pub fn concentrated(lgroup: &Arc<LGroup>, label: usize, module: KGModule) -> Result<Self> {
        Self::new(lgroup, [(label, module)])
    }

    fn add_component(&mut self, label: usize, m: KGModule) {
        if m.dim() == 0 {
            return;
        }
        let merged = match self.components.remove(&label) {
            Some(prev) => prev.direct_sum(&m).expect("same group"),
            None => m,
        };
        self.components.insert(label, merged);
    }

    pub fn lgroup(&self) -> &Arc<LGroup> {
        &self.lgroup
    }

    pub fn group(&self) -> &GroupSpec {
        self.lgroup.group()
    }

    pub fn component(&self, label: usize) -> Option<&KGModule> {
        self.components.get(&label)
    }

    pub fn component_or_zero(&self, label: usize) -> KGModule {
        self.component(label)
            .cloned()
            .unwrap_or_else(|| KGModule::zero(self.group()))
    }

    /// Nonzero components in label order.
    pub fn components(&self) -> impl Iterator<Item = (usize, &KGModule)> {
        self.components.iter().map(|(&l, m)| (l, m))
    }

    pub fn total_dim(&self) -> usize {
        self.components.values().map(KGModule::dim).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    fn same_structure(&self, other: &AModule) -> Result<()> {
        if Arc::ptr_eq(&self.lgroup, &other.lgroup) || self.lgroup == other.lgroup {
            Ok(())
        } else {
            Err(Error::StructureMismatch)
        }
    }

    pub fn direct_sum(&self, other: &AModule) -> Result<AModule> {
        self.same_structure(other)?;
        let mut out = self.clone();
        for (l, m) in other.components() {
            out.add_component(l, m.clone());
        }
        Ok(out)
    }

    /// `(M ⊗ N)_ℓ = ⊕_{ℓ1 ℓ2 = ℓ} M_{ℓ1} ⊗ ^{ℓ1}N_{ℓ2}`, summands in increasing
    /// `ℓ1`.
    pub fn tensor(&self, other: &AModule) -> Result<AModule> {
        self.tensor_with_twist(other, |l, y| l.action(y).clone())
    }

    /// Same shape as [`AModule::tensor`] with the twist applied to `N_{ℓ2}`
    /// supplied by the caller. Used to check that wrong twists are caught.
    pub fn tensor_with_twist(
        &self,
        other: &AModule,
        twist: impl Fn(&LGroup, usize) -> Automorphism,
    ) -> Result<AModule> {
        self.same_structure(other)?;
        let l = &*self.lgroup;
        let mut out = AModule::zero(&self.lgroup);
        for (y, my) in self.components() {
            let phi = twist(l, y);
            for (z, nz) in other.components() {
                let summand = my.tensor(&nz.conjugate(&phi)?)?;
                out.add_component(l.mul(y, z), summand);
            }
        }
        Ok(out)
    }

    /// `(M*)_ℓ = conjugate(dual(M_{ℓ^{-1}}), ρ(ℓ))`.
    pub fn dual(&self) -> AModule {
        let l = &*self.lgroup;
        let mut out = AModule::zero(&self.lgroup);
        for (y, my) in self.components() {
            let label = l.inv(y);
            let c = my.dual().conjugate(l.action(label)).expect("same group");
            out.add_component(label, c);
        }
        out
    }

    pub fn is_projective(&self) -> bool {
        self.components.values().all(KGModule::is_projective)
    }

    pub fn support(&self, e: u32) -> Result<ASupport> {
        self.support_with_budget(e, DEFAULT_POINT_BUDGET)
    }

    pub fn support_with_budget(&self, e: u32, budget: u128) -> Result<ASupport> {
        let field = Field::standard(self.group().p(), e)?;
        self.support_over(&field, budget)
    }

    pub fn support_over(&self, field: &Field, budget: u128) -> Result<ASupport> {
        let mut map = BTreeMap::new();
        for (l, m) in self.components() {
            let v = m.enumerate_variety_over(field, budget)?;
            if !v.is_empty() {
                map.insert(l, v);
            }
        }
        Ok(ASupport {
            group: self.group().clone(),
            field: field.clone(),
            map,
        })
    }

    /// Per-component complexity estimates.
    pub fn complexity_estimates(&self) -> Result<BTreeMap<usize, ComplexityEstimate>> {
        self.components()
            .map(|(l, m)| Ok((l, m.complexity_estimate()?)))
            .collect()
    }

    /// Tensor powers `M, M⊗M, …` (right multiplication by `M`) up to `nmax`,
    /// with projectivity and complexity (max over components) of each.
    pub fn tensor_power_profile(&self, nmax: usize, e: u32) -> Result<Vec<PowerProfileEntry>> {
        self.tensor_power_profile_with_budget(nmax, e, DEFAULT_DIM_BUDGET, DEFAULT_POINT_BUDGET)
    }

    pub fn tensor_power_profile_with_budget(
        &self,
        nmax: usize,
        e: u32,
        dim_budget: usize,
        point_budget: u128,
    ) -> Result<Vec<PowerProfileEntry>> {
        if nmax == 0 {
            return Err(Error::InvalidModule(
                "tensor power bound must be ≥ 1".into(),
            ));
        }
        let field = Field::standard(self.group().p(), e)?;
        let mut out = Vec::with_capacity(nmax);
        let mut power = self.clone();
        for i in 1..=nmax {
            if i > 1 {
                let next_dim = power.total_dim() * self.total_dim();
                if next_dim > dim_budget {
                    return Err(Error::BudgetExceeded {
                        what: "tensor power dimension",
                        requested: next_dim as u128,
                        limit: dim_budget as u128,
                    });
                }
                power = power.tensor(self)?;
            }
            let mut complexity = 0;
            let mut agree = true;
            for (_, m) in power.components() {
                let c = m.complexity_estimate_with_budget(point_budget)?;
                complexity = complexity.max(c.value());
                agree &= c.agree();
            }
            let support = power.support_over(&field, point_budget)?;
            out.push(PowerProfileEntry {
                power: i,
                total_dim: power.total_dim(),
                projective: power.is_projective(),
                complexity,
                estimators_agree: agree,
                support_points: support.pairs().len(),
            });
        }
        Ok(out)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerProfileEntry {
    pub power: usize,
    pub total_dim: usize,
    pub projective: bool,
    /// Max over components of the variety-based complexity estimate.
    pub complexity: u32,
    /// Both estimators agreed on every component.
    pub estimators_agree: bool,
    /// Number of `(point, ℓ)` pairs in the support over `GF(p^e)`.
    pub support_points: usize,
}

/// `V_A(M) = ⊔_ℓ V_G(M_ℓ) × ℓ`, restricted to `GF(p^e)`-points. Labels with
/// empty varieties are omitted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ASupport {
    group: GroupSpec,
    field: Field,
    map: BTreeMap<usize, VarietySample>,
}

impl ASupport {
    pub fn empty(group: &GroupSpec, field: &Field) -> Self {
        ASupport {
            group: group.clone(),
            field: field.clone(),
            map: BTreeMap::new(),
        }
    }

    pub fn from_samples(
        group: &GroupSpec,
        field: &Field,
        samples: impl IntoIterator<Item = (usize, VarietySample)>,
    ) -> Self {
        let map = samples.into_iter().filter(|(_, v)| !v.is_empty()).collect();
        ASupport {
            group: group.clone(),
            field: field.clone(),
            map,
        }
    }

    pub fn ext_degree(&self) -> u32 {
        self.field.e()
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn get(&self, label: usize) -> Option<&VarietySample> {
        self.map.get(&label)
    }

    /// Sample at `label`, empty if absent.
    pub fn at(&self, label: usize) -> VarietySample {
        self.map
            .get(&label)
            .cloned()
            .unwrap_or_else(|| VarietySample::empty(&self.group, &self.field))
    }

    pub fn labels(&self) -> impl Iterator<Item = usize> + '_ {
        self.map.keys().copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &VarietySample)> {
        self.map.iter().map(|(&l, v)| (l, v))
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    /// All `(point, ℓ)` pairs, sorted by label then point.
    pub fn pairs(&self) -> Vec<(ProjPoint, usize)> {
        self.map
            .iter()
            .flat_map(|(&l, v)| v.points().iter().map(move |x| (x.clone(), l)))
            .collect()
    }

    pub fn pair_set(&self) -> BTreeSet<(ProjPoint, usize)> {
        self.pairs().into_iter().collect()
    }

    pub fn union(&self, other: &ASupport) -> ASupport {
        let labels: BTreeSet<usize> = self.labels().chain(other.labels()).collect();
        Self::from_samples(
            &self.group,
            &self.field,
            labels
                .into_iter()
                .map(|l| (l, self.at(l).union(&other.at(l)))),
        )
    }
}

/// Both sides of `V_{G,ℓ}(M⊗N) = ∪_{ℓ1ℓ2=ℓ} V_{G,ℓ1}(M) ∩ ρ(ℓ1)·V_{G,ℓ2}(N)`.
#[derive(Clone, Debug)]
pub struct TensorSupportReport {
    pub ext_degree: u32,
    /// `(ℓ, left side, right side)` for every `ℓ ∈ L`.
    pub per_label: Vec<(usize, VarietySample, VarietySample)>,
}

impl TensorSupportReport {
    pub fn holds(&self) -> bool {
        self.per_label.iter().all(|(_, l, r)| l == r)
    }

    pub fn failing_labels(&self) -> Vec<usize> {
        self.per_label
            .iter()
            .filter(|(_, l, r)| l != r)
            .map(|(l, _, _)| *l)
            .collect()
    }
}

/// Computes the support of `M ⊗ N` directly and from the supports of `M` and
/// `N` with conjugation transport.
pub fn check_tensor_support_formula(
    m: &AModule,
    n: &AModule,
    e: u32,
) -> Result<TensorSupportReport> {
    m.same_structure(n)?;
    let field = Field::standard(m.group().p(), e)?;
    let budget = DEFAULT_POINT_BUDGET;
    let lhs = m.tensor(n)?.support_over(&field, budget)?;
    let sm = m.support_over(&field, budget)?;
    let sn = n.support_over(&field, budget)?;
    let l = &*m.lgroup;
    let group = m.group();
    let mut rhs: Vec<VarietySample> = (0..l.order())
        .map(|_| VarietySample::empty(group, &field))
        .collect();
    for (y, vy) in sm.iter() {
        for (z, vz) in sn.iter() {
            let part = vy.intersection(&vz.transport(l.action(y)));
            let target = l.mul(y, z);
            rhs[target] = rhs[target].union(&part);
        }
    }
    let per_label = rhs
        .into_iter()
        .enumerate()
        .map(|(label, r)| (label, lhs.at(label), r))
        .collect();
    Ok(TensorSupportReport {
        ext_degree: e,
        per_label,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn klein_l() -> Arc<LGroup> {
        let g = GroupSpec::new(2, 2).unwrap();
        let ell = Automorphism::from_rows(&g, &[vec![0, 1], vec![1, 1]]).unwrap();
        Arc::new(LGroup::cyclic(&g, 3, ell).unwrap())
    }

    #[test]
    fn cyclic_group_structure() {
        let l = klein_l();
        assert_eq!(l.order(), 3);
        assert_eq!(l.mul(1, 2), 0);
        assert_eq!(l.inv(1), 2);
        assert_eq!(l.generators(), [1]);
        assert!(!l.acts_trivially());
    }

    #[test]
    fn rejects_bad_groups() {
        let g = GroupSpec::new(2, 2).unwrap();
        let ell = Automorphism::from_rows(&g, &[vec![0, 1], vec![1, 1]]).unwrap();
        // ℓ has order 3, not dividing 2.
        assert!(matches!(
            LGroup::cyclic(&g, 2, ell.clone()),
            Err(Error::NotHomomorphism { .. })
        ));
        let id = Automorphism::identity(&g);
        let not_a_group = vec![vec![0, 1], vec![1, 1]];
        assert!(matches!(
            LGroup::new(&g, not_a_group, vec![id.clone(), id.clone()]),
            Err(Error::InvalidLGroup(_))
        ));
        // Z/2 table with an order-3 action is not a homomorphism.
        let z2 = vec![vec![0, 1], vec![1, 0]];
        assert!(matches!(
            LGroup::new(&g, z2, vec![id, ell]),
            Err(Error::NotHomomorphism { a: 1, b: 1 })
        ));
    }

    #[test]
    fn unit_is_neutral() {
        let l = klein_l();
        let g = l.group().clone();
        let u = KGModule::quotient(&g, &[1]).unwrap();
        let m = AModule::new(&l, [(1, u.clone()), (2, KGModule::regular(&g))]).unwrap();
        let one = AModule::unit(&l);
        assert_eq!(one.tensor(&m).unwrap(), m);
        assert_eq!(m.tensor(&one).unwrap(), m);
        assert_eq!(one.dual(), one);
    }

    #[test]
    fn klein_pairs() {
        let l = klein_l();
        let g = l.group().clone();
        let u = KGModule::quotient(&g, &[1]).unwrap();
        let m = AModule::concentrated(&l, 1, u.clone()).unwrap();
        let n = AModule::concentrated(&l, 0, u.clone()).unwrap();
        let mn = m.tensor(&n).unwrap();
        assert_eq!(mn.components().map(|(l, _)| l).collect::<Vec<_>>(), [1]);
        assert!(mn.is_projective());
        let nm = n.tensor(&m).unwrap();
        assert_eq!(nm.component(1), Some(&u.tensor(&u).unwrap()));
        assert!(!nm.is_projective());
        assert!(check_tensor_support_formula(&m, &n, 1).unwrap().holds());
        assert!(check_tensor_support_formula(&n, &m, 2).unwrap().holds());
    }

    #[test]
    fn klein_first_pair_supports() {
        let l = klein_l();
        let g = l.group().clone();
        let u = KGModule::quotient(&g, &[1]).unwrap();
        let m = AModule::concentrated(&l, 0, u).unwrap();
        let n = AModule::concentrated(&l, 1, KGModule::trivial(&g)).unwrap();
        let f = Field::prime(2).unwrap();
        let smn = m.tensor(&n).unwrap().support(1).unwrap();
        let snm = n.tensor(&m).unwrap().support(1).unwrap();
        let fmt = |s: &ASupport| -> Vec<(alloc::string::String, usize)> {
            s.pairs().iter().map(|(x, l)| (x.format(&f), *l)).collect()
        };
        assert_eq!(fmt(&smn), [("1:0".into(), 1)]);
        assert_eq!(fmt(&snm), [("0:1".into(), 1)]);
        assert_ne!(smn, snm);
        let sm = m.support(1).unwrap();
        let sn = n.support(1).unwrap();
        assert!(sm.labels().all(|a| sn.get(a).is_none()));
    }

    #[test]
    fn profile_of_projective_module() {
        let l = klein_l();
        let m = AModule::concentrated(&l, 1, KGModule::regular(l.group())).unwrap();
        let prof = m.tensor_power_profile(2, 1).unwrap();
        assert!(prof.iter().all(|e| e.projective && e.complexity == 0));
    }

    #[test]
    fn profile_budget() {
        let l = klein_l();
        let m = AModule::concentrated(&l, 1, KGModule::regular(l.group())).unwrap();
        assert!(matches!(
            m.tensor_power_profile_with_budget(3, 1, 20, DEFAULT_POINT_BUDGET),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn structure_mismatch() {
        let l = klein_l();
        let other = Arc::new(LGroup::trivial(l.group()));
        let a = AModule::unit(&l);
        let b = AModule::unit(&other);
        assert_eq!(a.tensor(&b), Err(Error::StructureMismatch));
        assert!(matches!(
            AModule::concentrated(&l, 5, KGModule::trivial(l.group())),
            Err(Error::IndexOutOfRange { .. })
        ));
    }
}
