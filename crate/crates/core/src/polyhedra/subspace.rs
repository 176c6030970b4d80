use num_traits::{One, Signed, Zero};

use super::{dual_cone_rays, LatticePolytope};
use crate::error::{Error, Result};
use crate::exact::{clear_denominators, dot, rank, to_rat, IntVector, Matrix, Rat, RatVector};

/// `P ∩ span(basis)`, in coordinates with respect to `basis`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubspacePolytope {
    basis: Vec<RatVector>,
    /// Inequalities `<a, t> >= b` induced from every facet of the ambient polytope.
    constraints: Vec<(RatVector, Rat)>,
    vertices: Vec<RatVector>,
    /// Irredundant facets as `<a, t> <= 1`.
    facets: Vec<RatVector>,
}

impl SubspacePolytope {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[RatVector] {
        &self.basis
    }

    pub fn constraints(&self) -> &[(RatVector, Rat)] {
        &self.constraints
    }

    pub fn vertices(&self) -> &[RatVector] {
        &self.vertices
    }

    pub fn facets(&self) -> &[RatVector] {
        &self.facets
    }

    pub fn is_origin_only(&self) -> bool {
        self.vertices.iter().all(|v| v.iter().all(Zero::is_zero))
    }

    /// Maps subspace coordinates back to the ambient space.
    pub fn embed(&self, t: &[Rat]) -> RatVector {
        let n = self.basis.first().map_or(0, Vec::len);
        let mut x = vec![Rat::zero(); n];
        for (c, b) in t.iter().zip(&self.basis) {
            for (xi, bi) in x.iter_mut().zip(b) {
                *xi += c * bi;
            }
        }
        x
    }

    pub fn ambient_vertices(&self, ambient_dim: usize) -> Vec<RatVector> {
        if self.basis.is_empty() {
            return vec![vec![Rat::zero(); ambient_dim]];
        }
        self.vertices.iter().map(|v| self.embed(v)).collect()
    }
}

/// Intersects `p` with the linear span of `basis`. The origin must be interior to `p`.
pub fn restrict_to_subspace(p: &LatticePolytope, basis: &[RatVector]) -> Result<SubspacePolytope> {
    let n = p.dim();
    if basis.iter().any(|b| b.len() != n) {
        return Err(Error::Dimension("basis vector length differs from polytope dimension".into()));
    }
    let k = basis.len();
    if k > 0 {
        let rows: Vec<IntVector> = basis.iter().map(|b| clear_denominators(b)).collect();
        if rank(&Matrix::from_rows(rows)) < k {
            return Err(Error::Dimension("subspace basis is linearly dependent".into()));
        }
    }
    if !p.origin_interior() {
        return Err(Error::DegenerateRestriction);
    }

    let constraints: Vec<(RatVector, Rat)> = p
        .facets()
        .iter()
        .map(|f| {
            let u = to_rat(&f.normal);
            (basis.iter().map(|b| dot(b, &u)).collect(), Rat::from_integer(f.rhs.clone()))
        })
        .collect();

    if k == 0 {
        return Ok(SubspacePolytope { basis: Vec::new(), constraints, vertices: vec![Vec::new()], facets: Vec::new() });
    }

    // <a, t> >= r with r < 0 becomes <a / r, t> <= 1; the vertices are the
    // facets of the polar point set conv{a / r}.
    let mut polar: Vec<RatVector> = constraints
        .iter()
        .map(|(a, r)| a.iter().map(|x| x / r).collect::<RatVector>())
        .filter(|c| c.iter().any(|x| !x.is_zero()))
        .collect();
    polar.sort();
    polar.dedup();

    let gens: Vec<IntVector> = polar
        .iter()
        .map(|c| clear_denominators(&std::iter::once(Rat::one()).chain(c.iter().cloned()).collect::<RatVector>()))
        .collect();
    if gens.is_empty() {
        return Err(Error::DegenerateRestriction);
    }
    let rays = dual_cone_rays(&gens).ok_or(Error::DegenerateRestriction)?;

    let mut vertices = Vec::with_capacity(rays.len());
    for r in &rays {
        if !r.vector[0].is_positive() {
            return Err(Error::DegenerateRestriction);
        }
        let y0 = Rat::from_integer(r.vector[0].clone());
        vertices.push(r.vector[1..].iter().map(|a| -Rat::from_integer(a.clone()) / &y0).collect::<RatVector>());
    }
    vertices.sort();

    let facets = polar
        .iter()
        .enumerate()
        .filter(|&(i, _)| {
            let tight: Vec<IntVector> = rays.iter().filter(|r| r.tight.contains(i)).map(|r| r.vector[1..].to_vec()).collect();
            !tight.is_empty() && rank(&Matrix::from_rows(tight)) == k
        })
        .map(|(_, c)| c.clone())
        .collect();

    Ok(SubspacePolytope { basis: basis.to_vec(), constraints, vertices, facets })
}
