//! Modules for the group algebra `kG` of `G = (Z/p)^n`.
//!
//! A module is stored as the `n` matrices by which the standard generators
//! `g_1..g_n` act. Group elements are exponent vectors in `(Z/p)^n`; the
//! element with index `Σ v_i p^(i-1)` is `g_1^{v_1}⋯g_n^{v_n}`, which fixes the
//! basis order of the regular module.

mod complexity;
mod resolution;
mod variety;

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

pub use complexity::{ComplexityEstimate, BETTI_FIT_RANGE};
pub use variety::{
    projective_point_count, projective_points, ProjPoint, RankVarietyOracle, VarietySample,
    DEFAULT_POINT_BUDGET,
};

use crate::error::{Error, Result};
use crate::gf::{axpy, Field, Matrix};

/// `G = (Z/p)^n`.
#[derive(Clone, Debug)]
pub struct GroupSpec {
    p: u32,
    n: usize,
    field: Field,
}

impl PartialEq for GroupSpec {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.n == other.n
    }
}

impl Eq for GroupSpec {}

impl GroupSpec {
    pub fn new(p: u32, n: usize) -> Result<Self> {
        let field = Field::prime(p)?;
        if n == 0 {
            return Err(Error::InvalidModule("G must have rank n ≥ 1".into()));
        }
        Ok(GroupSpec { p, n, field })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `GF(p)`.
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn order(&self) -> usize {
        (self.p as usize).pow(self.n as u32)
    }

    pub fn element(&self, index: usize) -> Vec<u32> {
        let p = self.p as usize;
        let mut idx = index;
        (0..self.n)
            .map(|_| {
                let d = (idx % p) as u32;
                idx /= p;
                d
            })
            .collect()
    }

    pub fn index(&self, v: &[u32]) -> usize {
        let p = self.p as usize;
        v.iter()
            .rev()
            .fold(0, |acc, &d| acc * p + (d % self.p) as usize)
    }

    pub fn elements(&self) -> impl Iterator<Item = Vec<u32>> + '_ {
        (0..self.order()).map(|i| self.element(i))
    }

    pub fn add(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        a.iter().zip(b).map(|(&x, &y)| (x + y) % self.p).collect()
    }

    pub fn neg(&self, a: &[u32]) -> Vec<u32> {
        a.iter().map(|&x| (self.p - x) % self.p).collect()
    }

    pub fn unit_vector(&self, i: usize) -> Vec<u32> {
        let mut v = vec![0; self.n];
        v[i] = 1;
        v
    }
}

/// An automorphism of `G`, as an invertible `n × n` matrix over `GF(p)` acting
/// on exponent (column) vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Automorphism {
    matrix: Matrix,
    inverse: Matrix,
}

impl Automorphism {
    pub fn new(group: &GroupSpec, matrix: Matrix) -> Result<Self> {
        if matrix.field() != group.field() {
            return Err(Error::FieldMismatch);
        }
        if matrix.rows() != group.n() || matrix.cols() != group.n() {
            return Err(Error::ShapeMismatch {
                op: "automorphism",
                left: (matrix.rows(), matrix.cols()),
                right: (group.n(), group.n()),
            });
        }
        let inverse = matrix.inverse()?;
        Ok(Automorphism { matrix, inverse })
    }

    pub fn from_rows(group: &GroupSpec, rows: &[Vec<u32>]) -> Result<Self> {
        Self::new(group, Matrix::from_rows(group.field(), rows)?)
    }

    pub fn identity(group: &GroupSpec) -> Self {
        let id = Matrix::identity(group.field(), group.n());
        Automorphism {
            matrix: id.clone(),
            inverse: id,
        }
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn inverse(&self) -> Automorphism {
        Automorphism {
            matrix: self.inverse.clone(),
            inverse: self.matrix.clone(),
        }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Automorphism) -> Automorphism {
        Automorphism {
            matrix: self.matrix.mul(&other.matrix).expect("same shape"),
            inverse: other.inverse.mul(&self.inverse).expect("same shape"),
        }
    }

    pub fn apply(&self, v: &[u32]) -> Vec<u32> {
        self.matrix.mul_vec(v)
    }

    pub fn is_identity(&self) -> bool {
        self.matrix.is_identity()
    }
}

/// A finite-dimensional `kG`-module, `k = GF(p)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KGModule {
    group: GroupSpec,
    dim: usize,
    gens: Vec<Matrix>,
}

/// Above this dimension the commuting/order checks of internally built
/// modules are skipped even in debug builds.
const DEBUG_CHECK_DIM: usize = 256;

impl KGModule {
    /// Validates that the generators commute and have order dividing `p`.
    pub fn new(group: &GroupSpec, gens: Vec<Matrix>) -> Result<Self> {
        if gens.len() != group.n() {
            return Err(Error::InvalidModule(format!(
                "expected {} generator matrices, got {}",
                group.n(),
                gens.len()
            )));
        }
        let dim = gens[0].rows();
        for (i, g) in gens.iter().enumerate() {
            if g.field() != group.field() {
                return Err(Error::FieldMismatch);
            }
            if g.rows() != dim || g.cols() != dim {
                return Err(Error::InvalidModule(format!(
                    "generator {} is {}x{}, expected {dim}x{dim}",
                    i + 1,
                    g.rows(),
                    g.cols()
                )));
            }
        }
        let m = KGModule {
            group: group.clone(),
            dim,
            gens,
        };
        m.validate()?;
        Ok(m)
    }

    fn validate(&self) -> Result<()> {
        for (i, g) in self.gens.iter().enumerate() {
            if !g.pow(self.group.p() as u64)?.is_identity() {
                return Err(Error::InvalidModule(format!(
                    "generator {} does not have order dividing p",
                    i + 1
                )));
            }
            for (j, h) in self.gens.iter().enumerate().skip(i + 1) {
                if g.mul(h)? != h.mul(g)? {
                    return Err(Error::InvalidModule(format!(
                        "generators {} and {} do not commute",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        Ok(())
    }

    /// Construction from matrices known to satisfy the module relations.
    pub(crate) fn from_parts(group: &GroupSpec, dim: usize, gens: Vec<Matrix>) -> Self {
        let m = KGModule {
            group: group.clone(),
            dim,
            gens,
        };
        if cfg!(debug_assertions) && dim <= DEBUG_CHECK_DIM {
            m.validate().expect("module relations");
        }
        m
    }

    pub fn zero(group: &GroupSpec) -> Self {
        let z = Matrix::zero(group.field(), 0, 0);
        Self::from_parts(group, 0, vec![z; group.n()])
    }

    pub fn trivial(group: &GroupSpec) -> Self {
        Self::quotient(group, &(1..=group.n()).collect::<Vec<_>>()).expect("valid indices")
    }

    pub fn regular(group: &GroupSpec) -> Self {
        Self::quotient(group, &[]).expect("valid indices")
    }

    /// `kG / (g_i − 1 : i ∈ fixed)`, with `fixed ⊆ {1..n}` (1-based). This is
    /// the permutation module on `G / ⟨g_i : i ∈ fixed⟩`: generators in `fixed`
    /// act trivially and the others cyclically shift their coordinate.
    pub fn quotient(group: &GroupSpec, fixed: &[usize]) -> Result<Self> {
        let n = group.n();
        if let Some(&bad) = fixed.iter().find(|&&i| i == 0 || i > n) {
            return Err(Error::IndexOutOfRange {
                index: bad,
                len: n + 1,
            });
        }
        let free: Vec<usize> = (0..n).filter(|i| !fixed.contains(&(i + 1))).collect();
        let p = group.p() as usize;
        let dim = p.pow(free.len() as u32);
        let f = group.field();
        let gens = (0..n)
            .map(|i| match free.iter().position(|&j| j == i) {
                None => Matrix::identity(f, dim),
                Some(slot) => {
                    // Basis vector b ↦ b with digit `slot` incremented mod p.
                    let stride = p.pow(slot as u32);
                    let mut m = Matrix::zero(f, dim, dim);
                    for b in 0..dim {
                        let digit = (b / stride) % p;
                        let image = b - digit * stride + ((digit + 1) % p) * stride;
                        m.set(image, b, 1);
                    }
                    m
                }
            })
            .collect();
        Ok(Self::from_parts(group, dim, gens))
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[Matrix] {
        &self.gens
    }

    /// Action of `g_1^{v_1}⋯g_n^{v_n}`.
    pub fn group_element_matrix(&self, v: &[u32]) -> Matrix {
        assert_eq!(v.len(), self.group.n());
        let f = self.group.field();
        let mut acc = Matrix::identity(f, self.dim);
        for (g, &k) in self.gens.iter().zip(v) {
            let k = k % self.group.p();
            if k > 0 {
                acc = acc.mul(&g.pow(k as u64).expect("square")).expect("square");
            }
        }
        acc
    }

    /// `x_i = g_i − 1`.
    pub fn augmentation_generators(&self) -> Vec<Matrix> {
        let id = Matrix::identity(self.group.field(), self.dim);
        self.gens
            .iter()
            .map(|g| g.sub(&id).expect("square"))
            .collect()
    }

    /// The module twisted by `phi`: generator `g_j` acts as the element
    /// `phi^{-1}(g_j)` acted on the original module.
    pub fn conjugate(&self, phi: &Automorphism) -> Result<KGModule> {
        if phi.matrix().rows() != self.group.n() || phi.matrix().field() != self.group.field() {
            return Err(Error::GroupMismatch);
        }
        if phi.is_identity() {
            return Ok(self.clone());
        }
        let inv = phi.inverse();
        let gens = (0..self.group.n())
            .map(|j| self.group_element_matrix(&inv.apply(&self.group.unit_vector(j))))
            .collect();
        Ok(Self::from_parts(&self.group, self.dim, gens))
    }

    /// Diagonal action: `g ↦ g ⊗ g`.
    pub fn tensor(&self, other: &KGModule) -> Result<KGModule> {
        self.same_group(other)?;
        let gens = self
            .gens
            .iter()
            .zip(&other.gens)
            .map(|(a, b)| a.kron(b))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_parts(&self.group, self.dim * other.dim, gens))
    }

    /// Contragredient: `g` acts on `M*` by the transpose of `g^{-1} = g^{p-1}`.
    pub fn dual(&self) -> KGModule {
        let p = self.group.p() as u64;
        let gens = self
            .gens
            .iter()
            .map(|g| g.pow(p - 1).expect("square").transpose())
            .collect();
        Self::from_parts(&self.group, self.dim, gens)
    }

    pub fn direct_sum(&self, other: &KGModule) -> Result<KGModule> {
        self.same_group(other)?;
        let gens = self
            .gens
            .iter()
            .zip(&other.gens)
            .map(|(a, b)| a.block_diag(b))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_parts(&self.group, self.dim + other.dim, gens))
    }

    /// Conjugates every generator by an invertible change of basis `P`
    /// (`g ↦ P g P^{-1}`).
    pub fn change_basis(&self, basis: &Matrix) -> Result<KGModule> {
        let inv = basis.inverse()?;
        if basis.rows() != self.dim || basis.field() != self.group.field() {
            return Err(Error::ShapeMismatch {
                op: "change_basis",
                left: (basis.rows(), basis.cols()),
                right: (self.dim, self.dim),
            });
        }
        let gens = self
            .gens
            .iter()
            .map(|g| basis.mul(g)?.mul(&inv))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_parts(&self.group, self.dim, gens))
    }

    fn same_group(&self, other: &KGModule) -> Result<()> {
        if self.group == other.group {
            Ok(())
        } else {
            Err(Error::GroupMismatch)
        }
    }

    /// Number of free summands: the rank of `z = ∏ (g_i − 1)^{p−1}`, which
    /// spans the socle of `kG`.
    pub fn free_rank(&self) -> usize {
        if self.dim == 0 {
            return 0;
        }
        let p = self.group.p() as u64;
        let mut z = Matrix::identity(self.group.field(), self.dim);
        for x in self.augmentation_generators() {
            z = z.mul(&x.pow(p - 1).expect("square")).expect("square");
        }
        z.rank()
    }

    pub fn is_projective(&self) -> bool {
        self.dim == self.free_rank() * self.group.order()
    }

    /// Reduced row-echelon basis (as rows) of the submodule generated by
    /// `vectors`, with its pivot columns.
    fn submodule_echelon(&self, vectors: &[Vec<u32>]) -> (Vec<Vec<u32>>, Vec<usize>) {
        let f = self.group.field();
        let mut rows: Vec<Vec<u32>> = Vec::new();
        let mut pivots: Vec<usize> = Vec::new();
        let mut queue: Vec<Vec<u32>> = vectors.to_vec();
        while let Some(mut v) = queue.pop() {
            assert_eq!(v.len(), self.dim);
            for (row, &pc) in rows.iter().zip(&pivots) {
                let c = v[pc];
                if c != 0 {
                    axpy(f, &mut v, f.neg(c), row);
                }
            }
            let Some(pc) = v.iter().position(|&x| x != 0) else {
                continue;
            };
            let inv = f.inv(v[pc]).expect("nonzero");
            for x in &mut v {
                *x = f.mul(*x, inv);
            }
            for row in &mut rows {
                let c = row[pc];
                if c != 0 {
                    axpy(f, row, f.neg(c), &v);
                }
            }
            for g in &self.gens {
                queue.push(g.mul_vec(&v));
            }
            let at = pivots.partition_point(|&q| q < pc);
            pivots.insert(at, pc);
            rows.insert(at, v);
        }
        (rows, pivots)
    }

    /// The submodule generated by the given vectors, in its reduced echelon
    /// basis.
    pub fn submodule(&self, vectors: &[Vec<u32>]) -> KGModule {
        let (rows, pivots) = self.submodule_echelon(vectors);
        let k = rows.len();
        let f = self.group.field();
        let gens = self
            .gens
            .iter()
            .map(|g| {
                let mut x = Matrix::zero(f, k, k);
                for (c, row) in rows.iter().enumerate() {
                    let image = g.mul_vec(row);
                    for (r, &pc) in pivots.iter().enumerate() {
                        x.set(r, c, image[pc]);
                    }
                }
                x
            })
            .collect();
        Self::from_parts(&self.group, k, gens)
    }

    /// The quotient by the submodule generated by `vectors`; its basis is the
    /// images of the standard basis vectors at non-pivot positions.
    pub fn quotient_by(&self, vectors: &[Vec<u32>]) -> KGModule {
        let (rows, pivots) = self.submodule_echelon(vectors);
        let f = self.group.field();
        let free = crate::gf::free_columns(self.dim, &pivots);
        let k = free.len();
        let gens = self
            .gens
            .iter()
            .map(|g| {
                let mut x = Matrix::zero(f, k, k);
                for (c, &fc) in free.iter().enumerate() {
                    let mut image = g.column(fc);
                    for (row, &pc) in rows.iter().zip(&pivots) {
                        let coef = image[pc];
                        if coef != 0 {
                            axpy(f, &mut image, f.neg(coef), row);
                        }
                    }
                    for (r, &fr) in free.iter().enumerate() {
                        x.set(r, c, image[fr]);
                    }
                }
                x
            })
            .collect();
        Self::from_parts(&self.group, k, gens)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn klein() -> GroupSpec {
        GroupSpec::new(2, 2).unwrap()
    }

    fn mat(g: &GroupSpec, rows: &[&[u32]]) -> Matrix {
        let rows: Vec<Vec<u32>> = rows.iter().map(|r| r.to_vec()).collect();
        Matrix::from_rows(g.field(), &rows).unwrap()
    }

    #[test]
    fn quotient_module_examples() {
        let g = klein();
        let k = KGModule::quotient(&g, &[1, 2]).unwrap();
        assert_eq!(k.dim(), 1);
        assert!(k.generators().iter().all(Matrix::is_identity));

        let kg = KGModule::quotient(&g, &[]).unwrap();
        assert_eq!(kg.dim(), 4);
        assert!(kg.is_projective());

        let u = KGModule::quotient(&g, &[1]).unwrap();
        assert_eq!(u.dim(), 2);
        assert!(u.generators()[0].is_identity());
        assert_eq!(u.generators()[1], mat(&g, &[&[0, 1], &[1, 0]]));

        assert_eq!(
            KGModule::quotient(&g, &[3]),
            Err(Error::IndexOutOfRange { index: 3, len: 3 })
        );
    }

    #[test]
    fn group_element_matrices() {
        let g = klein();
        let kg = KGModule::regular(&g);
        assert!(kg.group_element_matrix(&[0, 0]).is_identity());
        // Basis {1, g1, g2, g1g2}: g1 swaps 1↔g1 and g2↔g1g2.
        let expected = mat(
            &g,
            &[&[0, 1, 0, 0], &[1, 0, 0, 0], &[0, 0, 0, 1], &[0, 0, 1, 0]],
        );
        assert_eq!(kg.group_element_matrix(&[1, 0]), expected);
        for v in g.elements() {
            for w in g.elements() {
                let lhs = kg.group_element_matrix(&g.add(&v, &w));
                let rhs = kg
                    .group_element_matrix(&v)
                    .mul(&kg.group_element_matrix(&w))
                    .unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn klein_conjugation() {
        let g = klein();
        let u = KGModule::quotient(&g, &[1]).unwrap();
        let ell = Automorphism::from_rows(&g, &[vec![0, 1], vec![1, 1]]).unwrap();
        let c = u.conjugate(&ell).unwrap();
        assert_eq!(c.generators()[0], mat(&g, &[&[0, 1], &[1, 0]]));
        assert!(c.generators()[1].is_identity());
        assert_eq!(u.conjugate(&Automorphism::identity(&g)).unwrap(), u);
        // Conjugation composes: ^φ(^ψ m) = ^{φψ} m.
        let twice = c.conjugate(&ell).unwrap();
        assert_eq!(twice, u.conjugate(&ell.compose(&ell)).unwrap());
    }

    #[test]
    fn klein_tensor_products() {
        let g = klein();
        let u = KGModule::quotient(&g, &[1]).unwrap();
        let ell = Automorphism::from_rows(&g, &[vec![0, 1], vec![1, 1]]).unwrap();
        let mixed = u.tensor(&u.conjugate(&ell).unwrap()).unwrap();
        assert_eq!(mixed.dim(), 4);
        assert_eq!(mixed.free_rank(), 1);
        assert!(mixed.is_projective());
        let square = u.tensor(&u).unwrap();
        assert_eq!(square.dim(), 4);
        assert_eq!(square.free_rank(), 0);
        assert!(!square.is_projective());
        assert!(!u.is_projective());
    }

    #[test]
    fn unit_and_zero() {
        let g = GroupSpec::new(3, 2).unwrap();
        let k = KGModule::trivial(&g);
        let u = KGModule::quotient(&g, &[2]).unwrap();
        let ku = k.tensor(&u).unwrap();
        assert_eq!(ku, u);
        let z = KGModule::zero(&g);
        assert_eq!(u.direct_sum(&z).unwrap(), u);
        assert!(z.is_projective());
        assert_eq!(z.free_rank(), 0);
        assert_eq!(k.free_rank(), 0);
        assert_eq!(KGModule::regular(&g).free_rank(), 1);
    }

    #[test]
    fn duals() {
        let g = klein();
        let k = KGModule::trivial(&g);
        assert_eq!(k.dual(), k);
        let kg = KGModule::regular(&g);
        assert!(kg.dual().is_projective());
        assert_eq!(kg.dual().free_rank(), 1);
        let u = KGModule::quotient(&g, &[2]).unwrap();
        assert_eq!(u.dual().dual(), u);
    }

    #[test]
    fn rejects_invalid_generators() {
        let g = klein();
        let bad_order = mat(&g, &[&[1, 1, 0], &[0, 1, 1], &[0, 0, 1]]);
        let id = Matrix::identity(g.field(), 3);
        assert!(matches!(
            KGModule::new(&g, vec![bad_order, id.clone()]),
            Err(Error::InvalidModule(_))
        ));
        let a = mat(&g, &[&[0, 1, 0], &[1, 0, 0], &[0, 0, 1]]);
        let b = mat(&g, &[&[1, 0, 0], &[0, 0, 1], &[0, 1, 0]]);
        assert!(matches!(
            KGModule::new(&g, vec![a, b]),
            Err(Error::InvalidModule(_))
        ));
        assert!(matches!(
            KGModule::new(&g, vec![id]),
            Err(Error::InvalidModule(_))
        ));
    }

    #[test]
    fn singular_automorphism_rejected() {
        let g = klein();
        assert_eq!(
            Automorphism::from_rows(&g, &[vec![1, 1], vec![1, 1]]),
            Err(Error::SingularMatrix)
        );
    }

    #[test]
    fn submodules_and_quotients() {
        let g = klein();
        let kg = KGModule::regular(&g);
        // (g1 - 1)·kG has dimension 2 and kG/(g1 - 1) ≅ U.
        let x1 = kg.augmentation_generators()[0].column(0);
        let sub = kg.submodule(core::slice::from_ref(&x1));
        assert_eq!(sub.dim(), 2);
        let quo = kg.quotient_by(&[x1]);
        assert_eq!(quo.dim(), 2);
        assert!(quo.generators()[0].is_identity());
        assert_eq!(quo.free_rank(), 0);
        // Submodule generated by 1 is everything.
        let mut one = vec![0; 4];
        one[0] = 1;
        assert_eq!(kg.submodule(&[one.clone()]).dim(), 4);
        assert_eq!(kg.quotient_by(&[one]).dim(), 0);
    }
}
