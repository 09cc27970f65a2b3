//! Closed convex polyhedral cones over the rationals.
//!
//! A [`Cone`] stores both descriptions in canonical form:
//!
//! * `lineality_basis`: canonical basis of the largest subspace in the cone;
//! * `equations`: canonical basis of the orthogonal complement of its span;
//! * `generators`: extreme rays, projected onto the complement of the
//!   lineality space;
//! * `facet_normals`: irredundant inequalities, projected into the span of
//!   the cone.
//!
//! Every vector is a primitive integer vector and every list is sorted, so
//! two cones are equal iff their canonical forms agree field by field.
//! Duality swaps generators with facet normals and lineality with equations.

mod canonical;
mod dd;
mod section;

pub use canonical::primitive;
pub use dd::double_description;

use num_traits::{Signed, Zero};
use thiserror::Error;

use canonical::{project_out, sort_dedup, subspace_basis};
use crate::linalg::{add, dot, kernel_basis, rank, Matrix};
use crate::{QVec, Rat};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConeError {
    #[error("cone has lineality (dimension {0}); operation needs a pointed cone")]
    HasLineality(usize),
    #[error("vector is not a member of the cone")]
    NotAMember,
    #[error("face generator {0} is not contained in the cone")]
    NotContained(usize),
    #[error("level not strictly positive on cone (generator {0})")]
    LevelNotPositive(usize),
    #[error("cross-sections need a cone in 3-space, got dimension {0}")]
    NotThreeDimensional(usize),
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cone {
    ambient_dim: usize,
    generators: Vec<QVec>,
    facet_normals: Vec<QVec>,
    lineality_basis: Vec<QVec>,
    equations: Vec<QVec>,
}

fn check_dims(dim: usize, vectors: &[QVec]) {
    for (i, v) in vectors.iter().enumerate() {
        assert_eq!(v.len(), dim, "vector {i} has length {}, expected {dim}", v.len());
    }
}

/// Keeps the members of `candidates` that are extreme: projected away from
/// `shift` (a subspace basis) they are nonzero, and the rank of the `blockers`
/// vanishing on them, together with `fixed`, is `target`.
fn extreme_members(
    dim: usize,
    candidates: &[QVec],
    shift: &[QVec],
    blockers: &[QVec],
    fixed: &[QVec],
    target: usize,
) -> Vec<QVec> {
    let reduced = sort_dedup(candidates.iter().filter_map(|c| primitive(&project_out(c, shift))).collect());
    reduced
        .into_iter()
        .filter(|r| {
            let active: Vec<&QVec> = blockers.iter().filter(|b| dot(b, r).is_zero()).collect();
            active.len() + fixed.len() >= target
                && rank(&Matrix::from_rows(dim, active.into_iter().chain(fixed).cloned())) == target
        })
        .collect()
}

impl Cone {
    /// Builds the canonical cone from a complete (possibly redundant) V- and
    /// H-description of the same cone.
    fn assemble(dim: usize, rays: &[QVec], lineality: &[QVec], inequalities: &[QVec], equations: &[QVec]) -> Self {
        let lineality_basis = subspace_basis(dim, lineality);
        let equations = subspace_basis(dim, equations);
        let ray_target = (dim - lineality_basis.len()).saturating_sub(1);
        let facet_target = (dim - equations.len()).saturating_sub(1);
        let generators = if lineality_basis.len() + equations.len() == dim {
            Vec::new()
        } else {
            extreme_members(dim, rays, &lineality_basis, inequalities, &equations, ray_target)
        };
        let facet_normals = if lineality_basis.len() + equations.len() == dim {
            Vec::new()
        } else {
            extreme_members(dim, inequalities, &equations, rays, &lineality_basis, facet_target)
        };
        Cone { ambient_dim: dim, generators, facet_normals, lineality_basis, equations }
    }

    /// The nonnegative hull of `rays`. An empty list gives the zero cone.
    pub fn from_generators(rays: &[QVec], dim: usize) -> Self {
        check_dims(dim, rays);
        let (inequalities, equations) = double_description(dim, rays);
        let mut hrep = inequalities.clone();
        hrep.extend(equations.iter().cloned());
        let lineality = kernel_basis(&Matrix::from_rows(dim, hrep));
        Self::assemble(dim, rays, &lineality, &inequalities, &equations)
    }

    /// The solution set of `n·x ≥ 0` for every normal. No normals gives the
    /// whole space.
    pub fn from_inequalities(normals: &[QVec], dim: usize) -> Self {
        check_dims(dim, normals);
        let (rays, lineality) = double_description(dim, normals);
        let mut vrep = rays.clone();
        vrep.extend(lineality.iter().cloned());
        let equations = kernel_basis(&Matrix::from_rows(dim, vrep));
        Self::assemble(dim, &rays, &lineality, normals, &equations)
    }

    pub fn zero(dim: usize) -> Self {
        Self::from_generators(&[], dim)
    }

    pub fn full(dim: usize) -> Self {
        Self::from_inequalities(&[], dim)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    /// Extreme rays modulo the lineality space (all extreme rays when pointed).
    pub fn generators(&self) -> &[QVec] {
        &self.generators
    }

    pub fn facet_normals(&self) -> &[QVec] {
        &self.facet_normals
    }

    pub fn lineality_basis(&self) -> &[QVec] {
        &self.lineality_basis
    }

    /// Basis of the linear forms vanishing on the whole cone.
    pub fn equations(&self) -> &[QVec] {
        &self.equations
    }

    pub fn is_pointed(&self) -> bool {
        self.lineality_basis.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.equations.len() == self.ambient_dim
    }

    /// Linear dimension of the cone.
    pub fn dimension(&self) -> usize {
        self.ambient_dim - self.equations.len()
    }

    /// A complete inequality description: the facet normals and both signs of
    /// each equation.
    pub fn inequalities(&self) -> Vec<QVec> {
        let mut out = self.facet_normals.clone();
        for e in &self.equations {
            out.push(e.clone());
            out.push(e.iter().map(|x| -x).collect());
        }
        out
    }

    /// A complete generating set: the generators and both signs of each
    /// lineality vector.
    pub fn spanning_rays(&self) -> Vec<QVec> {
        let mut out = self.generators.clone();
        for l in &self.lineality_basis {
            out.push(l.clone());
            out.push(l.iter().map(|x| -x).collect());
        }
        out
    }

    /// `{y : y·x ≥ 0 for all x in the cone}`. Both descriptions are already
    /// canonical, so this only swaps them.
    pub fn dual(&self) -> Self {
        Cone {
            ambient_dim: self.ambient_dim,
            generators: self.facet_normals.clone(),
            facet_normals: self.generators.clone(),
            lineality_basis: self.equations.clone(),
            equations: self.lineality_basis.clone(),
        }
    }

    pub fn extremal_rays(&self) -> Result<Vec<QVec>, ConeError> {
        if !self.is_pointed() {
            return Err(ConeError::HasLineality(self.lineality_basis.len()));
        }
        Ok(self.generators.clone())
    }

    pub fn contains(&self, v: &[Rat]) -> bool {
        assert_eq!(v.len(), self.ambient_dim, "membership test with wrong dimension");
        self.facet_normals.iter().all(|n| !dot(n, v).is_negative())
            && self.equations.iter().all(|e| dot(e, v).is_zero())
    }

    pub fn contains_cone(&self, other: &Cone) -> bool {
        other.spanning_rays().iter().all(|r| self.contains(r))
    }

    /// Equality of cones; panics when the ambient dimensions differ.
    pub fn equals(&self, other: &Cone) -> bool {
        assert_eq!(self.ambient_dim, other.ambient_dim, "comparing cones of different ambient dimension");
        self == other
    }

    /// `C ∩ {x : n·x ≥ 0 for all n}`.
    pub fn intersect_halfspaces(&self, normals: &[QVec]) -> Self {
        check_dims(self.ambient_dim, normals);
        if normals.is_empty() {
            return self.clone();
        }
        let mut all = self.inequalities();
        all.extend(normals.iter().cloned());
        Self::from_inequalities(&all, self.ambient_dim)
    }

    /// The smallest face whose relative interior contains `v`.
    pub fn smallest_face(&self, v: &[Rat]) -> Result<Self, ConeError> {
        if v.len() != self.ambient_dim {
            return Err(ConeError::DimensionMismatch { expected: self.ambient_dim, found: v.len() });
        }
        if !self.contains(v) {
            return Err(ConeError::NotAMember);
        }
        let mut all = self.inequalities();
        for n in &self.facet_normals {
            if dot(n, v).is_zero() {
                all.push(n.iter().map(|x| -x).collect());
            }
        }
        Ok(Self::from_inequalities(&all, self.ambient_dim))
    }

    /// Whether the cone spanned by `face_gens` is an extremal face. For
    /// polyhedral cones extremal faces are exactly the exposed ones, so this
    /// compares against the smallest face containing the sum of the generators.
    pub fn is_extremal_face(&self, face_gens: &[QVec]) -> Result<bool, ConeError> {
        for (i, g) in face_gens.iter().enumerate() {
            if g.len() != self.ambient_dim {
                return Err(ConeError::DimensionMismatch { expected: self.ambient_dim, found: g.len() });
            }
            if !self.contains(g) {
                return Err(ConeError::NotContained(i));
            }
        }
        let sum = face_gens.iter().fold(vec![Rat::zero(); self.ambient_dim], |acc, g| add(&acc, g));
        let face = self.smallest_face(&sum)?;
        Ok(face.equals(&Self::from_generators(face_gens, self.ambient_dim)))
    }

    /// Vertices of `C ∩ {x : level·x = 1}` in counterclockwise order seen from
    /// the tip of `level`. Needs a pointed cone in 3-space.
    pub fn cross_section(&self, level: &[Rat]) -> Result<Vec<QVec>, ConeError> {
        section::cross_section(self, level)
    }

    /// The sum of the facet normals. For a pointed cone it is strictly
    /// positive on every generator.
    pub fn interior_level(&self) -> QVec {
        self.facet_normals
            .iter()
            .fold(vec![Rat::zero(); self.ambient_dim], |acc, n| add(&acc, n))
    }
}
