//! Rank varieties as finite point sets.
//!
//! For `α ∈ k^n \ {0}` the shifted cyclic subgroup is generated by
//! `u_α = 1 + Σ α_i x_i` with `x_i = g_i − 1`. A module `M` is free over it iff
//! `rank((u_α − 1)^{p−1}) = dim M / p`; the rank variety is the set of `α` where
//! this fails. Freeness is a rank condition, so it does not change under field
//! extension and the `GF(p^e)`-points computed here are exactly the
//! `GF(p^e)`-rational points of the variety over the algebraic closure.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::{Automorphism, GroupSpec, KGModule};
use crate::error::{Error, Result};
use crate::gf::{Field, Matrix};

/// Default refusal threshold for point enumeration.
pub const DEFAULT_POINT_BUDGET: u128 = 10_000_000;

/// A point of `P^{n−1}(GF(p^e))`, normalised so the first nonzero coordinate
/// is 1. Coordinates are element codes of the ambient field.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ProjPoint(Vec<u32>);

impl ProjPoint {
    pub fn normalize(field: &Field, coords: &[u32]) -> Result<Self> {
        let lead = coords
            .iter()
            .copied()
            .find(|&c| c != 0)
            .ok_or(Error::ZeroPoint)?;
        let inv = field.inv(lead).expect("nonzero");
        Ok(ProjPoint(
            coords.iter().map(|&c| field.mul(c, inv)).collect(),
        ))
    }

    pub fn coords(&self) -> &[u32] {
        &self.0
    }

    /// Image under an automorphism of `G` (a prime-field matrix).
    pub fn transport(&self, field: &Field, phi: &Automorphism) -> ProjPoint {
        let m = phi.matrix().embed(field).expect("same characteristic");
        ProjPoint::normalize(field, &m.mul_vec(&self.0)).expect("automorphisms are injective")
    }

    /// Colon-separated coordinates in the field's textual encoding.
    pub fn format(&self, field: &Field) -> String {
        let mut s = String::new();
        for (i, &c) in self.0.iter().enumerate() {
            if i > 0 {
                s.push(':');
            }
            s.push_str(&field.format(c));
        }
        s
    }

    pub fn parse(field: &Field, text: &str) -> Result<Self> {
        let coords = text
            .split(':')
            .map(|t| {
                field
                    .parse(t)
                    .ok_or(Error::InvalidModule(alloc::format!("bad coordinate {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::normalize(field, &coords)
    }
}

/// Number of points of `P^{n−1}(GF(q))`.
pub fn projective_point_count(q: u32, n: usize) -> u128 {
    let q = q as u128;
    (0..n as u32).map(|i| q.pow(i)).sum()
}

/// All points of `P^{n−1}(GF(q))`, sorted.
pub fn projective_points(field: &Field, n: usize, budget: u128) -> Result<Vec<ProjPoint>> {
    let count = projective_point_count(field.order(), n);
    if count > budget {
        return Err(Error::BudgetExceeded {
            what: "projective point enumeration",
            requested: count,
            limit: budget,
        });
    }
    let q = field.order() as usize;
    let mut out = Vec::with_capacity(count as usize);
    // Leading 1 at position `lead`, zeros before it, anything after.
    for lead in (0..n).rev() {
        let tail = n - lead - 1;
        for t in 0..q.pow(tail as u32) {
            let mut v = vec![0u32; n];
            v[lead] = 1;
            let mut rest = t;
            for slot in (lead + 1..n).rev() {
                v[slot] = (rest % q) as u32;
                rest /= q;
            }
            out.push(ProjPoint(v));
        }
    }
    debug_assert!(out.windows(2).all(|w| w[0] < w[1]));
    Ok(out)
}

/// The `GF(p^e)`-points of the rank variety of a `kG`-module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VarietySample {
    group: GroupSpec,
    field: Field,
    points: Vec<ProjPoint>,
}

impl VarietySample {
    pub fn new(group: &GroupSpec, field: &Field, mut points: Vec<ProjPoint>) -> Self {
        points.sort();
        points.dedup();
        VarietySample {
            group: group.clone(),
            field: field.clone(),
            points,
        }
    }

    pub fn empty(group: &GroupSpec, field: &Field) -> Self {
        Self::new(group, field, Vec::new())
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn ext_degree(&self) -> u32 {
        self.field.e()
    }

    pub fn points(&self) -> &[ProjPoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, x: &ProjPoint) -> bool {
        self.points.binary_search(x).is_ok()
    }

    pub fn union(&self, other: &VarietySample) -> VarietySample {
        let mut pts = self.points.clone();
        pts.extend(other.points.iter().cloned());
        Self::new(&self.group, &self.field, pts)
    }

    pub fn intersection(&self, other: &VarietySample) -> VarietySample {
        let pts = self
            .points
            .iter()
            .filter(|x| other.contains(x))
            .cloned()
            .collect();
        Self::new(&self.group, &self.field, pts)
    }

    /// `phi · V`.
    pub fn transport(&self, phi: &Automorphism) -> VarietySample {
        let pts = self
            .points
            .iter()
            .map(|x| x.transport(&self.field, phi))
            .collect();
        Self::new(&self.group, &self.field, pts)
    }

    pub fn formatted(&self) -> Vec<String> {
        self.points.iter().map(|x| x.format(&self.field)).collect()
    }
}

/// Precomputed `x_i = g_i − 1` over an extension field, for repeated point
/// membership tests.
pub struct RankVarietyOracle {
    field: Field,
    xs: Vec<Matrix>,
    dim: usize,
    p: u32,
}

impl RankVarietyOracle {
    pub fn new(module: &KGModule, field: &Field) -> Result<Self> {
        if field.p() != module.group().p() {
            return Err(Error::FieldMismatch);
        }
        let xs = module
            .augmentation_generators()
            .iter()
            .map(|x| x.embed(field))
            .collect::<Result<Vec<_>>>()?;
        Ok(RankVarietyOracle {
            field: field.clone(),
            xs,
            dim: module.dim(),
            p: module.group().p(),
        })
    }

    pub fn contains(&self, alpha: &[u32]) -> Result<bool> {
        if alpha.len() != self.xs.len() {
            return Err(Error::ShapeMismatch {
                op: "rank variety point",
                left: (alpha.len(), 1),
                right: (self.xs.len(), 1),
            });
        }
        if alpha.iter().all(|&a| a == 0) {
            return Err(Error::ZeroPoint);
        }
        if self.dim == 0 {
            return Ok(false);
        }
        let f = &self.field;
        let mut n_alpha = Matrix::zero(f, self.dim, self.dim);
        for (x, &a) in self.xs.iter().zip(alpha) {
            if a != 0 {
                n_alpha = n_alpha.add(&x.scale(a))?;
            }
        }
        let r = n_alpha.pow((self.p - 1) as u64)?.rank();
        Ok(r * (self.p as usize) < self.dim)
    }
}

impl KGModule {
    /// Whether `α` (coordinates in `field`) lies in the rank variety.
    pub fn point_in_rank_variety(&self, field: &Field, alpha: &[u32]) -> Result<bool> {
        RankVarietyOracle::new(self, field)?.contains(alpha)
    }

    pub fn enumerate_variety(&self, e: u32) -> Result<VarietySample> {
        self.enumerate_variety_with_budget(e, DEFAULT_POINT_BUDGET)
    }

    pub fn enumerate_variety_with_budget(&self, e: u32, budget: u128) -> Result<VarietySample> {
        let field = Field::standard(self.group().p(), e)?;
        self.enumerate_variety_over(&field, budget)
    }

    pub fn enumerate_variety_over(&self, field: &Field, budget: u128) -> Result<VarietySample> {
        let all = projective_points(field, self.group().n(), budget)?;
        if self.is_projective() {
            return Ok(VarietySample::empty(self.group(), field));
        }
        let oracle = RankVarietyOracle::new(self, field)?;
        let mut pts = Vec::new();
        for x in all {
            if oracle.contains(x.coords())? {
                pts.push(x);
            }
        }
        Ok(VarietySample::new(self.group(), field, pts))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn klein() -> GroupSpec {
        GroupSpec::new(2, 2).unwrap()
    }

    #[test]
    fn klein_u_points() {
        let g = klein();
        let f = g.field().clone();
        let u = KGModule::quotient(&g, &[1]).unwrap();
        assert!(u.point_in_rank_variety(&f, &[1, 0]).unwrap());
        assert!(!u.point_in_rank_variety(&f, &[0, 1]).unwrap());
        assert_eq!(u.point_in_rank_variety(&f, &[0, 0]), Err(Error::ZeroPoint));
        let v = u.enumerate_variety(1).unwrap();
        assert_eq!(v.formatted(), ["1:0"]);
    }

    #[test]
    fn regular_and_trivial() {
        let g = GroupSpec::new(2, 3).unwrap();
        assert!(KGModule::regular(&g)
            .enumerate_variety(2)
            .unwrap()
            .is_empty());
        let f4 = Field::standard(2, 2).unwrap();
        let kg = KGModule::regular(&g);
        for x in projective_points(&f4, 3, DEFAULT_POINT_BUDGET).unwrap() {
            assert!(!kg.point_in_rank_variety(&f4, x.coords()).unwrap());
        }
        let k = KGModule::trivial(&g);
        assert_eq!(k.enumerate_variety(2).unwrap().len(), 21);
    }

    #[test]
    fn point_enumeration() {
        let f4 = Field::standard(2, 2).unwrap();
        let pts = projective_points(&f4, 2, DEFAULT_POINT_BUDGET).unwrap();
        assert_eq!(pts.len(), 5);
        assert_eq!(projective_point_count(8, 3), 73);
        assert!(matches!(
            projective_points(&f4, 20, DEFAULT_POINT_BUDGET),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn formatting() {
        let f4 = Field::standard(2, 2).unwrap();
        let x = ProjPoint::normalize(&f4, &[2, 3]).unwrap();
        let s = x.format(&f4);
        assert_eq!(s, "1+0*t:0+1*t");
        assert_eq!(ProjPoint::parse(&f4, &s).unwrap(), x);
    }
}
