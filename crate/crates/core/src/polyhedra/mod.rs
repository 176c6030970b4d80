//! Lattice polytopes with paired vertex and facet descriptions.
//!
//! Facets are stored as `<normal, x> >= rhs` with a primitive integer normal.
//! For a reflexive polytope every `rhs` is `-1`.

mod hull;
mod subspace;

use std::collections::HashMap;
use std::fmt;

use fixedbitset::FixedBitSet;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{content, det, dot, primitive, rank, Int, IntMatrix, IntVector, Matrix};

pub use subspace::{restrict_to_subspace, SubspacePolytope};

pub(crate) use hull::dual_cone_rays;

/// A facet inequality `<normal, x> >= rhs`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Facet {
    pub normal: IntVector,
    pub rhs: Int,
}

impl Facet {
    /// `<normal, x> - rhs`; zero on the facet, positive inside.
    pub fn slack(&self, x: &[Int]) -> Int {
        dot(&self.normal, x) - &self.rhs
    }
}

#[derive(Clone)]
pub struct LatticePolytope {
    dim: usize,
    vertices: Vec<IntVector>,
    facets: Vec<Facet>,
    incidence: Vec<FixedBitSet>,
}

impl PartialEq for LatticePolytope {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.vertices == other.vertices
    }
}

impl Eq for LatticePolytope {}

impl fmt::Debug for LatticePolytope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LatticePolytope")
            .field("dim", &self.dim)
            .field("vertices", &self.vertices.iter().map(|v| vec_string(v)).collect::<Vec<_>>())
            .field("facets", &self.facets.len())
            .finish()
    }
}

pub(crate) fn vec_string(v: &[Int]) -> String {
    let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(","))
}

/// Why a polytope fails to be a smooth Fano polytope.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SmoothnessViolation {
    OriginNotInterior { facet: usize },
    NonPrimitiveVertex { vertex: usize },
    NotSimplicial { facet: usize, vertices: usize },
    NonUnimodular { facet: usize, det: String },
}

impl fmt::Display for SmoothnessViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::OriginNotInterior { facet } => write!(f, "origin lies on or outside facet {facet}"),
            Self::NonPrimitiveVertex { vertex } => write!(f, "vertex {vertex} is not primitive"),
            Self::NotSimplicial { facet, vertices } => write!(f, "facet {facet} has {vertices} vertices"),
            Self::NonUnimodular { facet, det } => write!(f, "facet {facet} has vertex determinant {det}"),
        }
    }
}

/// A codimension-two face: the intersection of exactly two facets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ridge {
    pub vertices: FixedBitSet,
    pub facets: (usize, usize),
}

impl LatticePolytope {
    /// Builds the canonical form: vertices sorted, facets sorted, incidence recomputed.
    fn from_parts(dim: usize, mut vertices: Vec<IntVector>, mut facets: Vec<Facet>) -> Self {
        vertices.sort();
        vertices.dedup();
        facets.sort();
        facets.dedup();
        let incidence = facets
            .iter()
            .map(|f| {
                let mut s = FixedBitSet::with_capacity(vertices.len());
                for (j, v) in vertices.iter().enumerate() {
                    if f.slack(v).is_zero() {
                        s.insert(j);
                    }
                }
                s
            })
            .collect();
        LatticePolytope { dim, vertices, facets, incidence }
    }

    /// Convex hull of full-dimensional integer points.
    pub fn hull(points: &[IntVector]) -> Result<Self> {
        let dim = points.first().map_or(0, Vec::len);
        if points.iter().any(|p| p.len() != dim) {
            return Err(Error::Dimension("points of differing lengths".into()));
        }
        let mut pts: Vec<IntVector> = points.to_vec();
        pts.sort();
        pts.dedup();
        let affine_rank = affine_rank(&pts);
        if pts.is_empty() || affine_rank < dim {
            return Err(Error::DimensionDeficient { rank: affine_rank, dim });
        }
        if dim == 0 {
            return Ok(Self::from_parts(0, pts, Vec::new()));
        }
        let gens: Vec<IntVector> = pts
            .iter()
            .map(|p| std::iter::once(Int::one()).chain(p.iter().cloned()).collect())
            .collect();
        let rays = dual_cone_rays(&gens).ok_or(Error::DimensionDeficient { rank: affine_rank, dim })?;
        let facets: Vec<Facet> = rays
            .iter()
            .map(|r| {
                let normal = r.vector[1..].to_vec();
                let g = content(&normal);
                Facet { normal: normal.iter().map(|x| x / &g).collect(), rhs: -&r.vector[0] / &g }
            })
            .collect();
        let vertices: Vec<IntVector> = pts
            .iter()
            .enumerate()
            .filter(|&(i, _)| {
                let tight: Vec<IntVector> =
                    rays.iter().zip(&facets).filter(|(r, _)| r.tight.contains(i)).map(|(_, f)| f.normal.clone()).collect();
                !tight.is_empty() && rank(&Matrix::from_rows(tight)) == dim
            })
            .map(|(_, p)| p.clone())
            .collect();
        Ok(Self::from_parts(dim, vertices, facets))
    }

    pub fn from_i64(points: &[&[i64]]) -> Result<Self> {
        Self::hull(&points.iter().map(|p| crate::exact::int_vec(p)).collect::<Vec<_>>())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Vertices in lexicographic order.
    pub fn vertices(&self) -> &[IntVector] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    /// Vertex set of facet `i`.
    pub fn facet_vertices(&self, i: usize) -> &FixedBitSet {
        &self.incidence[i]
    }

    pub fn incidence(&self) -> &[FixedBitSet] {
        &self.incidence
    }

    pub fn contains(&self, x: &[Int]) -> bool {
        self.facets.iter().all(|f| !f.slack(x).is_negative())
    }

    pub fn origin_interior(&self) -> bool {
        self.facets.iter().all(|f| f.rhs.is_negative())
    }

    /// Every facet at lattice distance one from the origin.
    pub fn is_reflexive(&self) -> bool {
        self.facets.iter().all(|f| f.rhs == -Int::one())
    }

    /// Dimension of the face spanned by a vertex set (-1 when empty).
    pub fn face_dim(&self, set: &FixedBitSet) -> isize {
        let pts: Vec<IntVector> = set.ones().map(|j| self.vertices[j].clone()).collect();
        if pts.is_empty() {
            return -1;
        }
        affine_rank(&pts) as isize
    }

    pub fn smoothness(&self) -> std::result::Result<(), SmoothnessViolation> {
        if let Some(facet) = self.facets.iter().position(|f| !f.rhs.is_negative()) {
            return Err(SmoothnessViolation::OriginNotInterior { facet });
        }
        if let Some(vertex) = self.vertices.iter().position(|v| !content(v).is_one()) {
            return Err(SmoothnessViolation::NonPrimitiveVertex { vertex });
        }
        for (facet, inc) in self.incidence.iter().enumerate() {
            let count = inc.count_ones(..);
            if count != self.dim {
                return Err(SmoothnessViolation::NotSimplicial { facet, vertices: count });
            }
            let cols: Vec<IntVector> = inc.ones().map(|j| self.vertices[j].clone()).collect();
            let d = det(&Matrix::from_columns(&cols)).expect("square facet matrix");
            if !d.abs().is_one() {
                return Err(SmoothnessViolation::NonUnimodular { facet, det: d.to_string() });
            }
        }
        Ok(())
    }

    pub fn is_smooth_fano(&self) -> bool {
        self.smoothness().is_ok()
    }

    /// Ridges, as pairs of facets meeting in a nonempty face of dimension
    /// `dim - 2`. A segment has none.
    pub fn faces_codim2(&self) -> Vec<Ridge> {
        let target = self.dim as isize - 2;
        let mut out = Vec::new();
        if target < 0 {
            return out;
        }
        for i in 0..self.facets.len() {
            for j in i + 1..self.facets.len() {
                let mut s = self.incidence[i].clone();
                s.intersect_with(&self.incidence[j]);
                if (s.count_ones(..) as isize) < target + 1 {
                    continue;
                }
                if self.face_dim(&s) == target {
                    out.push(Ridge { vertices: s, facets: (i, j) });
                }
            }
        }
        out
    }

    /// Polar `{y : <y, x> >= -1 for all x in self}` as a lattice polytope.
    pub fn polar(&self) -> Result<LatticePolytope> {
        if !self.origin_interior() {
            return Err(Error::OriginNotInterior);
        }
        let mut vertices = Vec::with_capacity(self.facets.len());
        for f in &self.facets {
            if !f.rhs.is_one() && !(-&f.rhs).is_one() {
                let scaled: Vec<String> = f.normal.iter().map(|x| format!("{}/{}", x, -&f.rhs)).collect();
                return Err(Error::NonIntegralDual(format!("({})", scaled.join(","))));
            }
            vertices.push(f.normal.clone());
        }
        let facets = self
            .vertices
            .iter()
            .map(|v| {
                let normal = primitive(v);
                let rhs = vertices.iter().map(|w| dot(&normal, w)).min().expect("nonempty");
                Facet { normal, rhs }
            })
            .collect();
        Ok(Self::from_parts(self.dim, vertices, facets))
    }

    /// Image under `x -> a x` for an integer matrix `a` with det ±1.
    pub fn transform(&self, a: &IntMatrix) -> Result<LatticePolytope> {
        let inv = crate::exact::unimodular_inverse(a)?;
        let vertices = self.vertices.iter().map(|v| a.mul_vec(v)).collect();
        let inv_t = inv.transpose();
        let facets = self.facets.iter().map(|f| Facet { normal: inv_t.mul_vec(&f.normal), rhs: f.rhs.clone() }).collect();
        Ok(Self::from_parts(self.dim, vertices, facets))
    }

    pub fn vertex_index(&self) -> HashMap<&IntVector, usize> {
        self.vertices.iter().enumerate().map(|(i, v)| (v, i)).collect()
    }

    pub fn negated(&self) -> LatticePolytope {
        let vertices = self.vertices.iter().map(|v| v.iter().map(|x| -x).collect()).collect();
        let facets = self
            .facets
            .iter()
            .map(|f| Facet { normal: f.normal.iter().map(|x| -x).collect(), rhs: f.rhs.clone() })
            .collect();
        Self::from_parts(self.dim, vertices, facets)
    }
}

/// Dimension of the affine span of a nonempty point set.
pub fn affine_rank(points: &[IntVector]) -> usize {
    let Some(p0) = points.first() else { return 0 };
    let diffs: Vec<IntVector> = points[1..].iter().map(|p| p.iter().zip(p0).map(|(a, b)| a - b).collect()).collect();
    if diffs.is_empty() {
        return 0;
    }
    rank(&Matrix::from_rows(diffs))
}

/// A lattice polytope that passed the smoothness check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FanoPolytope(LatticePolytope);

impl FanoPolytope {
    pub fn new(q: LatticePolytope) -> Result<Self> {
        q.smoothness().map_err(Error::NotSmoothFano)?;
        Ok(FanoPolytope(q))
    }

    pub fn polytope(&self) -> &LatticePolytope {
        &self.0
    }

    pub fn into_inner(self) -> LatticePolytope {
        self.0
    }
}

impl std::ops::Deref for FanoPolytope {
    type Target = LatticePolytope;
    fn deref(&self) -> &LatticePolytope {
        &self.0
    }
}

/// `q` together with `p = q*`. Facet `i` of `p` has normal `q.vertices()[i]`
/// and vertex `j` of `p` is the normal of facet `j` of `q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualPair {
    pub q: LatticePolytope,
    pub p: LatticePolytope,
}

impl DualPair {
    pub fn new(q: &LatticePolytope) -> Result<Self> {
        let p = q.polar()?;
        debug_assert!(p.facets.iter().zip(&q.vertices).all(|(f, v)| &f.normal == v));
        debug_assert!(p.vertices.iter().zip(&q.facets).all(|(w, f)| w == &f.normal));
        Ok(DualPair { q: q.clone(), p })
    }

    pub fn dim(&self) -> usize {
        self.q.dim
    }
}

pub fn dual(q: &LatticePolytope) -> Result<DualPair> {
    DualPair::new(q)
}

/// The segment `[-1, 1]`.
pub fn segment() -> LatticePolytope {
    LatticePolytope::from_i64(&[&[-1], &[1]]).expect("segment")
}

/// `conv(q1 x {0} ∪ {0} x q2)`; for Fano polytopes this is the fan of the product variety.
pub fn free_sum(q1: &LatticePolytope, q2: &LatticePolytope) -> Result<LatticePolytope> {
    if !q1.origin_interior() || !q2.origin_interior() {
        return Err(Error::OriginNotInterior);
    }
    let (n1, n2) = (q1.dim, q2.dim);
    let zeros = |n: usize| vec![Int::zero(); n];
    let mut vertices = Vec::with_capacity(q1.vertices.len() + q2.vertices.len());
    for v in &q1.vertices {
        vertices.push(v.iter().cloned().chain(zeros(n2)).collect());
    }
    for w in &q2.vertices {
        vertices.push(zeros(n1).into_iter().chain(w.iter().cloned()).collect());
    }
    let mut facets = Vec::with_capacity(q1.facets.len() * q2.facets.len());
    for f1 in &q1.facets {
        for f2 in &q2.facets {
            let normal: IntVector =
                f1.normal.iter().map(|a| a * -&f2.rhs).chain(f2.normal.iter().map(|b| b * -&f1.rhs)).collect();
            let rhs = -(&f1.rhs * &f2.rhs);
            let g = content(&normal);
            facets.push(Facet { normal: normal.iter().map(|x| x / &g).collect(), rhs: rhs / &g });
        }
    }
    Ok(LatticePolytope::from_parts(n1 + n2, vertices, facets))
}

/// Cartesian product in block coordinates.
pub fn direct_product(p1: &LatticePolytope, p2: &LatticePolytope) -> LatticePolytope {
    let (n1, n2) = (p1.dim, p2.dim);
    let vertices = p1
        .vertices
        .iter()
        .flat_map(|v| p2.vertices.iter().map(move |w| v.iter().chain(w).cloned().collect()))
        .collect();
    let zeros = |n: usize| vec![Int::zero(); n];
    let facets = p1
        .facets
        .iter()
        .map(|f| Facet { normal: f.normal.iter().cloned().chain(zeros(n2)).collect(), rhs: f.rhs.clone() })
        .chain(
            p2.facets
                .iter()
                .map(|f| Facet { normal: zeros(n1).into_iter().chain(f.normal.iter().cloned()).collect(), rhs: f.rhs.clone() }),
        )
        .collect();
    LatticePolytope::from_parts(n1 + n2, vertices, facets)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int_vec;
    use proptest::prelude::*;

    fn triangle() -> LatticePolytope {
        LatticePolytope::from_i64(&[&[1, 0], &[0, 1], &[-1, -1]]).unwrap()
    }

    fn cross(n: usize) -> LatticePolytope {
        let mut pts = Vec::new();
        for i in 0..n {
            for s in [-1, 1] {
                let mut v = vec![0i64; n];
                v[i] = s;
                pts.push(int_vec(&v));
            }
        }
        LatticePolytope::hull(&pts).unwrap()
    }

    fn cube(n: usize) -> LatticePolytope {
        let pts: Vec<IntVector> = (0..1u32 << n)
            .map(|m| (0..n).map(|i| if m >> i & 1 == 1 { Int::one() } else { -Int::one() }).collect())
            .collect();
        LatticePolytope::hull(&pts).unwrap()
    }

    #[test]
    fn hull_of_square_cross_polytope() {
        let c = cross(2);
        assert_eq!(c.vertices().len(), 4);
        assert_eq!(c.facets().len(), 4);
        for f in c.facets() {
            assert_eq!(f.rhs, int_vec(&[-1])[0]);
            assert!(f.normal.iter().all(|x| x.abs().is_one()));
        }
    }

    #[test]
    fn hull_drops_interior_point() {
        let t = LatticePolytope::from_i64(&[&[1, 0], &[0, 1], &[-1, -1], &[0, 0]]).unwrap();
        assert_eq!(t.vertices().len(), 3);
        assert_eq!(t, triangle());
    }

    #[test]
    fn hull_drops_edge_midpoint() {
        let s = LatticePolytope::from_i64(&[&[-1, -1], &[1, -1], &[1, 1], &[-1, 1], &[0, 1]]).unwrap();
        assert_eq!(s.vertices().len(), 4);
    }

    #[test]
    fn hull_rejects_flat_input() {
        let err = LatticePolytope::from_i64(&[&[0, 0], &[1, 1], &[2, 2]]).unwrap_err();
        assert_eq!(err, Error::DimensionDeficient { rank: 1, dim: 2 });
    }

    #[test]
    fn dual_of_p2_triangle() {
        let dp = dual(&triangle()).unwrap();
        let expected = LatticePolytope::from_i64(&[&[2, -1], &[-1, 2], &[-1, -1]]).unwrap();
        assert_eq!(dp.p, expected);
        assert!(dp.p.is_reflexive());
        assert_eq!(dp.p.polar().unwrap(), dp.q);
    }

    #[test]
    fn dual_of_cube_is_cross_polytope() {
        for n in 1..=4 {
            assert_eq!(cube(n).polar().unwrap(), cross(n));
            assert_eq!(cross(n).polar().unwrap(), cube(n));
        }
    }

    #[test]
    fn dual_requires_interior_origin() {
        let off = LatticePolytope::from_i64(&[&[0, 0], &[1, 0], &[0, 1]]).unwrap();
        assert_eq!(dual(&off).unwrap_err(), Error::OriginNotInterior);
    }

    #[test]
    fn smoothness_checks() {
        assert!(triangle().is_smooth_fano());
        let blowup = LatticePolytope::from_i64(&[&[1, 0], &[0, 1], &[-1, -1], &[1, 1]]).unwrap();
        assert!(blowup.is_smooth_fano());
        let bad = LatticePolytope::from_i64(&[&[1, 0], &[0, 1], &[-2, -1]]).unwrap();
        match bad.smoothness() {
            Err(SmoothnessViolation::NonUnimodular { det, .. }) => assert!(det == "2" || det == "-2"),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(cube(2).smoothness(), Err(SmoothnessViolation::NonUnimodular { .. })));
        assert!(matches!(cube(3).smoothness(), Err(SmoothnessViolation::NotSimplicial { .. })));
    }

    #[test]
    fn ridges_of_square_and_cube() {
        assert_eq!(cube(2).faces_codim2().len(), 4);
        assert_eq!(cube(3).faces_codim2().len(), 12);
        for r in cube(3).faces_codim2() {
            assert_eq!(r.vertices.count_ones(..), 2);
        }
    }

    #[test]
    fn free_sum_of_segments() {
        let s = segment();
        let sum = free_sum(&s, &s).unwrap();
        assert_eq!(sum, cross(2));
        assert!(sum.is_reflexive());
    }

    #[test]
    fn product_of_segments_and_duality() {
        let s = segment();
        assert_eq!(direct_product(&s, &s), cube(2));
        let t = triangle();
        let tri_dual = t.polar().unwrap();
        let prism = direct_product(&tri_dual, &s);
        assert_eq!(prism.vertices().len(), 6);
        assert_eq!(free_sum(&t, &s).unwrap().polar().unwrap(), prism);
        assert_eq!(LatticePolytope::hull(prism.vertices()).unwrap().facets(), prism.facets());
    }

    #[test]
    fn transform_is_consistent_with_hull() {
        let a = IntMatrix::from_i64(&[&[1, 1], &[0, 1]]);
        let t = triangle().transform(&a).unwrap();
        let direct = LatticePolytope::hull(&triangle().vertices().iter().map(|v| a.mul_vec(v)).collect::<Vec<_>>()).unwrap();
        assert_eq!(t.facets(), direct.facets());
    }

    proptest! {
        #[test]
        fn hull_is_order_insensitive(perm in Just((0..8).collect::<Vec<usize>>()).prop_shuffle(),
                                     extra in prop::collection::vec(prop::collection::vec(-2i64..=2, 3), 0..4)) {
            let c = cube(3);
            let base: Vec<IntVector> = c.vertices().to_vec();
            let mut shuffled: Vec<IntVector> = perm.iter().map(|&i| base[i].clone()).collect();
            shuffled.extend(extra.iter().filter(|p| p.iter().all(|x| x.abs() <= 1)).map(|p| int_vec(p)));
            let h = LatticePolytope::hull(&shuffled).unwrap();
            prop_assert_eq!(h.vertices(), c.vertices());
            prop_assert_eq!(h.facets(), c.facets());
        }

        #[test]
        fn hull_facets_are_valid(pts in prop::collection::vec(prop::collection::vec(-3i64..=3, 3), 4..12)) {
            let pts: Vec<IntVector> = pts.iter().map(|p| int_vec(p)).collect();
            if let Ok(h) = LatticePolytope::hull(&pts) {
                for p in &pts {
                    prop_assert!(h.contains(p));
                }
                for (i, f) in h.facets().iter().enumerate() {
                    prop_assert!(content(&f.normal).is_one());
                    prop_assert_eq!(h.face_dim(h.facet_vertices(i)), 2);
                }
                for v in h.vertices() {
                    let others: Vec<IntVector> = h.vertices().iter().filter(|w| *w != v).cloned().collect();
                    if let Ok(sub) = LatticePolytope::hull(&others) {
                        prop_assert!(!sub.contains(v));
                    }
                }
            }
        }
    }
}
