//! The action of `L × L` on `P^{n−1}(GF(p^e)) × L`,
//! `(ℓ1, ℓ2)·(x, ℓ) = (ρ(ℓ1)x, ℓ1 ℓ ℓ2^{-1})`, its orbits for the subgroups
//! `L×1`, `1×L` and `L×L`, and ideal membership decided by closing supports
//! under these orbits.
//!
//! Only the finite shadow is modelled: the ambient variety is the whole
//! projective space over `GF(p^e)`, and a subset of it is a finite point set.

use alloc::collections::BTreeSet;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use crate::amod::{AModule, LGroup};
use crate::error::{Error, Result};
use crate::gf::Field;
use crate::kg::{projective_point_count, projective_points};
use crate::kg::{ProjPoint, DEFAULT_POINT_BUDGET};
use crate::union_find::UnionFind;

pub const MAX_PAIRS: u128 = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
    TwoSided,
}

impl Side {
    pub const ALL: [Side; 3] = [Side::Left, Side::Right, Side::TwoSided];

    pub fn name(self) -> &'static str {
        match self {
            Side::Left => "left",
            Side::Right => "right",
            Side::TwoSided => "two-sided",
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl core::str::FromStr for Side {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "left" => Ok(Side::Left),
            "right" => Ok(Side::Right),
            "two-sided" | "two_sided" | "both" => Ok(Side::TwoSided),
            _ => Err(Error::InvalidModule(alloc::format!("unknown side {s:?}"))),
        }
    }
}

/// `P^{n−1}(GF(p^e)) × L` with the action tabulated.
#[derive(Clone, Debug)]
pub struct StrataSpace {
    lgroup: Arc<LGroup>,
    field: Field,
    points: Vec<ProjPoint>,
    /// `moves[ℓ][i]` is the index of `ρ(ℓ)·points[i]`.
    moves: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitReport {
    pub side: Side,
    /// Each orbit sorted; orbits ordered by their first (minimal) pair.
    pub orbits: Vec<Vec<(ProjPoint, usize)>>,
}

impl OrbitReport {
    pub fn count(&self) -> usize {
        self.orbits.len()
    }

    pub fn representatives(&self) -> Vec<&(ProjPoint, usize)> {
        self.orbits.iter().map(|o| &o[0]).collect()
    }

    fn as_partition(&self) -> BTreeSet<Vec<(ProjPoint, usize)>> {
        self.orbits.iter().cloned().collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitCheckReport {
    pub points: usize,
    pub left: usize,
    pub right: usize,
    pub two_sided: usize,
    /// Orbits of `ρ(L)` on the points alone.
    pub point_orbits: usize,
    /// Whether some `ρ(ℓ)` moves some point.
    pub acts_on_points: bool,
    pub left_right_differ: bool,
    pub two_sided_coarsest: bool,
}

impl OrbitCheckReport {
    pub fn left_ok(&self) -> bool {
        self.left == self.points
    }

    pub fn right_ok(&self) -> bool {
        self.right == self.points
    }

    pub fn two_sided_ok(&self) -> bool {
        self.two_sided == self.point_orbits
    }

    pub fn differ_ok(&self) -> bool {
        self.left_right_differ == self.acts_on_points
    }

    pub fn passed(&self) -> bool {
        self.left_ok()
            && self.right_ok()
            && self.two_sided_ok()
            && self.differ_ok()
            && self.two_sided_coarsest
    }
}

impl StrataSpace {
    pub fn new(lgroup: &Arc<LGroup>, e: u32) -> Result<Self> {
        let group = lgroup.group();
        let field = Field::standard(group.p(), e)?;
        let count = projective_point_count(field.order(), group.n()) * lgroup.order() as u128;
        if count > MAX_PAIRS {
            return Err(Error::BudgetExceeded {
                what: "orbit pair set",
                requested: count,
                limit: MAX_PAIRS,
            });
        }
        let points = projective_points(&field, group.n(), DEFAULT_POINT_BUDGET)?;
        let moves = (0..lgroup.order())
            .map(|l| {
                points
                    .iter()
                    .map(|x| {
                        let y = x.transport(&field, lgroup.action(l));
                        points
                            .binary_search(&y)
                            .expect("closed under automorphisms")
                    })
                    .collect()
            })
            .collect();
        Ok(StrataSpace {
            lgroup: lgroup.clone(),
            field,
            points,
            moves,
        })
    }

    pub fn lgroup(&self) -> &Arc<LGroup> {
        &self.lgroup
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

    pub fn pair_count(&self) -> usize {
        self.points.len() * self.lgroup.order()
    }

    fn pair_index(&self, point: usize, label: usize) -> usize {
        label * self.points.len() + point
    }

    fn pair_at(&self, idx: usize) -> (ProjPoint, usize) {
        let n = self.points.len();
        (self.points[idx % n].clone(), idx / n)
    }

    fn point_index(&self, x: &ProjPoint) -> Result<usize> {
        self.points.binary_search(x).map_err(|_| {
            Error::InvalidModule(alloc::format!(
                "{x:?} is not a normalised point of the space"
            ))
        })
    }

    fn act_index(&self, idx: usize, l1: usize, l2: usize) -> usize {
        let n = self.points.len();
        let (i, l) = (idx % n, idx / n);
        let lg = &self.lgroup;
        self.pair_index(self.moves[l1][i], lg.mul(lg.mul(l1, l), lg.inv(l2)))
    }

    /// `(ℓ1, ℓ2)·(x, ℓ)`.
    pub fn act(
        &self,
        pair: &(ProjPoint, usize),
        l1: usize,
        l2: usize,
    ) -> Result<(ProjPoint, usize)> {
        let m = self.lgroup.order();
        if pair.1 >= m || l1 >= m || l2 >= m {
            return Err(Error::IndexOutOfRange {
                index: pair.1.max(l1).max(l2),
                len: m,
            });
        }
        let idx = self.pair_index(self.point_index(&pair.0)?, pair.1);
        Ok(self.pair_at(self.act_index(idx, l1, l2)))
    }

    /// Identity and compatibility on every pair and every element of `L×L`
    /// (cost `|L|^4 · |pairs|`).
    pub fn is_group_action(&self) -> bool {
        let m = self.lgroup.order();
        let lg = &self.lgroup;
        (0..self.pair_count()).all(|idx| {
            self.act_index(idx, 0, 0) == idx
                && (0..m).all(|a| {
                    (0..m).all(|b| {
                        let once = self.act_index(idx, a, b);
                        (0..m).all(|c| {
                            (0..m).all(|d| {
                                self.act_index(once, c, d)
                                    == self.act_index(idx, lg.mul(c, a), lg.mul(d, b))
                            })
                        })
                    })
                })
        })
    }

    fn side_moves(&self, side: Side) -> Vec<(usize, usize)> {
        let gens = self.lgroup.generators();
        let left = gens.iter().map(|&g| (g, 0));
        let right = gens.iter().map(|&g| (0, g));
        match side {
            Side::Left => left.collect(),
            Side::Right => right.collect(),
            Side::TwoSided => left.chain(right).collect(),
        }
    }

    fn partition(&self, side: Side) -> UnionFind {
        let mut uf = UnionFind::new(self.pair_count());
        let moves = self.side_moves(side);
        for idx in 0..self.pair_count() {
            for &(l1, l2) in &moves {
                uf.union(idx, self.act_index(idx, l1, l2));
            }
        }
        uf
    }

    pub fn orbits(&self, side: Side) -> OrbitReport {
        let mut uf = self.partition(side);
        let mut classes: alloc::collections::BTreeMap<usize, Vec<(ProjPoint, usize)>> =
            alloc::collections::BTreeMap::new();
        for idx in 0..self.pair_count() {
            classes
                .entry(uf.find(idx))
                .or_default()
                .push(self.pair_at(idx));
        }
        let mut orbits: Vec<Vec<(ProjPoint, usize)>> = classes
            .into_values()
            .map(|mut o| {
                o.sort();
                o
            })
            .collect();
        orbits.sort();
        OrbitReport { side, orbits }
    }

    /// Smallest union of `side`-orbits containing `pairs`.
    pub fn closure(
        &self,
        pairs: impl IntoIterator<Item = (ProjPoint, usize)>,
        side: Side,
    ) -> Result<BTreeSet<(ProjPoint, usize)>> {
        let mut uf = self.partition(side);
        let mut roots = BTreeSet::new();
        for (x, l) in pairs {
            if l >= self.lgroup.order() {
                return Err(Error::IndexOutOfRange {
                    index: l,
                    len: self.lgroup.order(),
                });
            }
            let idx = self.pair_index(self.point_index(&x)?, l);
            roots.insert(uf.find(idx));
        }
        Ok((0..self.pair_count())
            .filter(|&idx| roots.contains(&uf.find(idx)))
            .map(|idx| self.pair_at(idx))
            .collect())
    }

    pub fn orbit_count_checks(&self) -> OrbitCheckReport {
        let left = self.orbits(Side::Left);
        let right = self.orbits(Side::Right);
        let two = self.orbits(Side::TwoSided);

        let mut uf = UnionFind::new(self.points.len());
        for &g in self.lgroup.generators() {
            for i in 0..self.points.len() {
                uf.union(i, self.moves[g][i]);
            }
        }
        let point_orbits = (0..self.points.len()).filter(|&i| uf.find(i) == i).count();
        let acts_on_points = self
            .moves
            .iter()
            .any(|mv| mv.iter().enumerate().any(|(i, &j)| i != j));

        let two_part = two.as_partition();
        let refines = |r: &OrbitReport| {
            r.orbits.iter().all(|o| {
                two_part
                    .iter()
                    .any(|big| o.iter().all(|pr| big.binary_search(pr).is_ok()))
            })
        };
        OrbitCheckReport {
            points: self.points.len(),
            left: left.count(),
            right: right.count(),
            two_sided: two.count(),
            point_orbits,
            acts_on_points,
            left_right_differ: left.as_partition() != right.as_partition(),
            two_sided_coarsest: refines(&left) && refines(&right),
        }
    }
}

/// Whether the support of `candidate` lies in the `side`-closure of the
/// support of `generator`, over `GF(p^e)`.
pub fn ideal_membership(
    generator: &AModule,
    candidate: &AModule,
    side: Side,
    e: u32,
) -> Result<bool> {
    if generator.lgroup() != candidate.lgroup() {
        return Err(Error::StructureMismatch);
    }
    let space = StrataSpace::new(generator.lgroup(), e)?;
    let closure = space.closure(generator.support(e)?.pairs(), side)?;
    Ok(candidate
        .support(e)?
        .pairs()
        .iter()
        .all(|pr| closure.contains(pr)))
}
