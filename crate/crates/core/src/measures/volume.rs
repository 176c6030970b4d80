//! Volumes and centroids of faces by a memoized cone decomposition.
//!
//! A face `G` of dimension `k` is the union of the pyramids with apex `a`
//! (its first vertex) over the facets `F` of `G` not containing `a`, so
//!
//! ```text
//! relvol(G) = Σ_F h(a, F) · relvol(F) / k
//! ```
//!
//! where `h` is the lattice distance from `a` to `aff(F)` inside the lattice of
//! `aff(G)`. The centroid of such a pyramid is `(a + k · c(F)) / (k + 1)`.
//! Unrolling the recursion gives a pulling triangulation; memoizing on faces
//! keeps the work proportional to the number of faces instead of simplices.

use std::collections::HashMap;

use fixedbitset::FixedBitSet;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{content, dot, smith_normal_form, to_rat, unimodular_inverse, Int, IntVector, Matrix, Rat, RatVector};
use crate::polyhedra::LatticePolytope;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VolumeAndBarycenter {
    pub volume: Rat,
    pub barycenter: RatVector,
}

/// Relative volume and first moment (`relvol · centroid`) of a face.
#[derive(Debug, Clone)]
struct Measure {
    relvol: Rat,
    moment: RatVector,
}

/// Face measures of one polytope, sharing a cache across queries.
pub struct FaceMeasures<'a> {
    p: &'a LatticePolytope,
    memo: HashMap<FixedBitSet, Measure>,
}

impl<'a> FaceMeasures<'a> {
    pub fn new(p: &'a LatticePolytope) -> Self {
        FaceMeasures { p, memo: HashMap::new() }
    }

    /// Relative lattice volume of the face with vertex set `face` and dimension `dim`.
    pub fn relative_volume(&mut self, face: &FixedBitSet, dim: usize) -> Rat {
        self.measure(face, dim).relvol
    }

    /// Relative volume and centroid of a face.
    pub fn volume_and_centroid(&mut self, face: &FixedBitSet, dim: usize) -> (Rat, RatVector) {
        let m = self.measure(face, dim);
        let c = m.moment.iter().map(|x| x / &m.relvol).collect();
        (m.relvol, c)
    }

    pub fn whole(&self) -> FixedBitSet {
        let mut all = FixedBitSet::with_capacity(self.p.vertices().len());
        all.insert_range(..);
        all
    }

    /// Basis of the lattice parallel to the face's affine hull.
    pub fn lattice_basis(&self, face: &FixedBitSet) -> Vec<IntVector> {
        let p = self.p;
        let normals: Vec<IntVector> = p
            .incidence()
            .iter()
            .zip(p.facets())
            .filter(|(inc, _)| face.is_subset(inc))
            .map(|(_, f)| f.normal.clone())
            .collect();
        saturated_kernel(&normals, p.dim())
    }

    /// Sum of the relative volumes of all facets.
    pub fn boundary_volume(&mut self) -> Rat {
        let n = self.p.dim();
        let facets: Vec<FixedBitSet> = self.p.incidence().to_vec();
        facets.iter().fold(Rat::zero(), |acc, f| acc + self.relative_volume(f, n - 1))
    }

    fn measure(&mut self, face: &FixedBitSet, dim: usize) -> Measure {
        if let Some(m) = self.memo.get(face) {
            return m.clone();
        }
        let p = self.p;
        let first = face.ones().next().expect("faces are nonempty");
        let apex = &p.vertices()[first];
        let m = if dim == 0 {
            Measure { relvol: Rat::one(), moment: to_rat(apex) }
        } else {
            let containing: Vec<usize> = (0..p.facets().len()).filter(|&i| face.is_subset(&p.incidence()[i])).collect();
            let basis = self.lattice_basis(face);
            debug_assert_eq!(basis.len(), dim);

            let mut relvol = Rat::zero();
            let mut moment = vec![Rat::zero(); p.dim()];
            let apex_r = to_rat(apex);
            let k = Rat::from_integer(Int::from(dim));
            let k1 = Rat::from_integer(Int::from(dim + 1));
            for (sub, i) in facets_of(p, face, &containing) {
                if sub.contains(first) {
                    continue;
                }
                let f = &p.facets()[i];
                let scale = content(&basis.iter().map(|b| dot(b, &f.normal)).collect::<IntVector>());
                let h = Rat::new(f.slack(apex), scale);
                debug_assert!(h.is_positive() && h.is_integer());
                let sm = self.measure(&sub, dim - 1);
                let w = &h / &k;
                relvol += &w * &sm.relvol;
                for ((m, a), c) in moment.iter_mut().zip(&apex_r).zip(&sm.moment) {
                    *m += &w * (a * &sm.relvol + &k * c) / &k1;
                }
            }
            Measure { relvol, moment }
        };
        self.memo.insert(face.clone(), m.clone());
        m
    }
}

/// Facets of `face`, each paired with one facet of `p` cutting it out.
///
/// Every face of `face` is its intersection with some facets of `p`; the
/// inclusion-maximal proper intersections are exactly its facets.
fn facets_of(p: &LatticePolytope, face: &FixedBitSet, containing: &[usize]) -> Vec<(FixedBitSet, usize)> {
    let mut cands: Vec<(FixedBitSet, usize)> = Vec::new();
    for (i, inc) in p.incidence().iter().enumerate() {
        if containing.contains(&i) {
            continue;
        }
        let mut s = face.clone();
        s.intersect_with(inc);
        if s.is_clear() || cands.iter().any(|(t, _)| *t == s) {
            continue;
        }
        cands.push((s, i));
    }
    let maximal: Vec<bool> =
        cands.iter().map(|(s, _)| !cands.iter().any(|(t, _)| t != s && s.is_subset(t))).collect();
    cands.into_iter().zip(maximal).filter(|(_, m)| *m).map(|(c, _)| c).collect()
}

/// Basis of the lattice `Z^n ∩ {x : <r, x> = 0 for all rows r}`.
fn saturated_kernel(rows: &[IntVector], n: usize) -> Vec<IntVector> {
    if rows.is_empty() {
        return (0..n).map(|i| (0..n).map(|j| Int::from((i == j) as i64)).collect()).collect();
    }
    let s = smith_normal_form(&Matrix::from_rows(rows.to_vec()));
    (s.rank..n).map(|j| s.right.column(j)).collect()
}

/// Basis of the lattice `Z^n ∩ span(rows)`.
fn saturated_span(rows: &[IntVector]) -> Vec<IntVector> {
    if rows.is_empty() {
        return Vec::new();
    }
    let s = smith_normal_form(&Matrix::from_rows(rows.to_vec()));
    let vinv = unimodular_inverse(&s.right).expect("unimodular");
    (0..s.rank).map(|i| vinv.row(i).to_vec()).collect()
}

/// Exact Euclidean volume and barycenter of a full-dimensional polytope.
pub fn volume_and_barycenter(p: &LatticePolytope) -> VolumeAndBarycenter {
    let mut fm = FaceMeasures::new(p);
    let all = fm.whole();
    let (volume, barycenter) = fm.volume_and_centroid(&all, p.dim());
    VolumeAndBarycenter { volume, barycenter }
}

/// Relative lattice volume of `conv(points)`, measured in unimodular
/// coordinates of the lattice of its affine hull. A single point has volume 1.
pub fn relative_volume(points: &[IntVector]) -> Result<Rat> {
    let p0 = points.first().ok_or(Error::DegenerateFace)?;
    let diffs: Vec<IntVector> =
        points.iter().map(|v| v.iter().zip(p0).map(|(a, b)| a - b).collect::<IntVector>()).collect();
    let basis = saturated_span(&diffs);
    let d = basis.len();
    if d == 0 {
        return Ok(Rat::one());
    }
    // coordinates c with Σ c_i basis_i = v - p0; integral because the basis is saturated
    let bt = Matrix::from_columns(&basis).to_rat();
    let pivot_rows = independent_rows(&bt, d);
    let square = Matrix::from_rows(pivot_rows.iter().map(|&r| bt.row(r).to_vec()).collect());
    let coords: Vec<IntVector> = diffs
        .iter()
        .map(|v| {
            let rhs: RatVector = pivot_rows.iter().map(|&r| Rat::from_integer(v[r].clone())).collect();
            let c = crate::exact::solve_exact(&square, &rhs).expect("independent rows");
            c.into_iter().map(|x| x.to_integer()).collect()
        })
        .collect();
    let local = LatticePolytope::hull(&coords)?;
    Ok(volume_and_barycenter(&local).volume)
}

/// Indices of `k` linearly independent rows of `m`.
fn independent_rows(m: &Matrix<Rat>, k: usize) -> Vec<usize> {
    let mut chosen: Vec<usize> = Vec::with_capacity(k);
    for i in 0..m.nrows() {
        let mut rows: Vec<IntVector> =
            chosen.iter().chain(std::iter::once(&i)).map(|&r| crate::exact::clear_denominators(m.row(r))).collect();
        if crate::exact::rank(&Matrix::from_rows(std::mem::take(&mut rows))) == chosen.len() + 1 {
            chosen.push(i);
            if chosen.len() == k {
                break;
            }
        }
    }
    chosen
}

/// Sum of relative volumes of all codimension-two faces.
pub fn codim2_volume(p: &LatticePolytope) -> Rat {
    let mut fm = FaceMeasures::new(p);
    let n = p.dim();
    p.faces_codim2().iter().fold(Rat::zero(), |acc, r| acc + fm.relative_volume(&r.vertices, n - 2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{det, int_vec, rat, IntMatrix};
    use crate::io::fixtures::{cross_polytope, cube, projective_space};
    use crate::polyhedra::{direct_product, free_sum, segment};
    use proptest::prelude::*;

    /// Explicit pulling triangulation: simplices as vertex lists.
    fn pulling(p: &LatticePolytope, face: &FixedBitSet, dim: usize, out: &mut Vec<Vec<IntVector>>) {
        let first = face.ones().next().unwrap();
        if dim == 0 {
            out.push(vec![p.vertices()[first].clone()]);
            return;
        }
        let containing: Vec<usize> = (0..p.facets().len()).filter(|&i| face.is_subset(&p.incidence()[i])).collect();
        for (sub, _) in facets_of(p, face, &containing) {
            if sub.contains(first) {
                continue;
            }
            let mut inner = Vec::new();
            pulling(p, &sub, dim - 1, &mut inner);
            for mut s in inner {
                s.push(p.vertices()[first].clone());
                out.push(s);
            }
        }
    }

    /// Volume and centroid from explicit simplices: |det| / n! and vertex averages.
    fn oracle(p: &LatticePolytope) -> (Rat, RatVector) {
        let n = p.dim();
        let mut all = FixedBitSet::with_capacity(p.vertices().len());
        all.insert_range(..);
        let mut simplices = Vec::new();
        pulling(p, &all, n, &mut simplices);
        let fact = Rat::from_integer(crate::measures::factorial(n));
        let mut vol = Rat::zero();
        let mut moment = vec![Rat::zero(); n];
        for s in &simplices {
            let cols: Vec<IntVector> = s[1..].iter().map(|v| v.iter().zip(&s[0]).map(|(a, b)| a - b).collect()).collect();
            let v = Rat::from_integer(det(&Matrix::from_columns(&cols)).unwrap().abs()) / &fact;
            for j in 0..n {
                let sum: Int = s.iter().map(|x| x[j].clone()).sum();
                moment[j] += &v * Rat::new(sum, Int::from(n + 1));
            }
            vol += v;
        }
        let c = moment.iter().map(|m| m / &vol).collect();
        (vol, c)
    }

    fn zero(n: usize) -> RatVector {
        vec![Rat::zero(); n]
    }

    #[test]
    fn square_and_cubes() {
        let r = volume_and_barycenter(&cube(2));
        assert_eq!(r, VolumeAndBarycenter { volume: rat(4, 1), barycenter: zero(2) });
        assert_eq!(volume_and_barycenter(&cube(4)).volume, rat(16, 1));
        assert_eq!(volume_and_barycenter(&cross_polytope(3)).volume, rat(4, 3));
    }

    #[test]
    fn p2_dual_triangle() {
        let p = projective_space(2).polar().unwrap();
        assert_eq!(p.vertices(), &[int_vec(&[-1, -1]), int_vec(&[-1, 2]), int_vec(&[2, -1])]);
        let r = volume_and_barycenter(&p);
        assert_eq!(r.volume, rat(9, 2));
        assert_eq!(r.barycenter, zero(2));
    }

    #[test]
    fn simplex_duals_have_ehrhart_volume() {
        for n in 1..=5 {
            let p = projective_space(n).polar().unwrap();
            let r = volume_and_barycenter(&p);
            let expect = Rat::from_integer(Int::from(n + 1).pow(n as u32)) / Rat::from_integer(crate::measures::factorial(n));
            assert_eq!(r.volume, expect, "n = {n}");
            assert_eq!(r.barycenter, zero(n));
        }
    }

    #[test]
    fn off_center_triangle() {
        // conv{(0,0),(3,0),(0,3)}: area 9/2, centroid (1,1)
        let p = LatticePolytope::from_i64(&[&[0, 0], &[3, 0], &[0, 3]]).unwrap();
        let r = volume_and_barycenter(&p);
        assert_eq!(r.volume, rat(9, 2));
        assert_eq!(r.barycenter, vec![rat(1, 1), rat(1, 1)]);
    }

    #[test]
    fn blowup_of_p2_dual_is_off_center() {
        let q = LatticePolytope::from_i64(&[&[1, 0], &[0, 1], &[-1, -1], &[1, 1]]).unwrap();
        let p = q.polar().unwrap();
        let r = volume_and_barycenter(&p);
        let (v, c) = oracle(&p);
        assert_eq!((r.volume.clone(), r.barycenter.clone()), (v, c));
        assert_eq!(r.volume, rat(4, 1));
        assert!(r.barycenter.iter().any(|x| !x.is_zero()));
    }

    #[test]
    fn matches_explicit_triangulation_on_small_polytopes() {
        let polys = [
            cube(3),
            cross_polytope(3),
            projective_space(3),
            projective_space(3).polar().unwrap(),
            free_sum(&projective_space(2), &segment()).unwrap().polar().unwrap(),
            direct_product(&projective_space(2).polar().unwrap(), &segment()),
            LatticePolytope::from_i64(&[&[0, 0, 0], &[2, 0, 1], &[0, 3, 0], &[1, 1, 4], &[-1, 2, 2], &[3, 3, -1]]).unwrap(),
        ];
        for p in &polys {
            let r = volume_and_barycenter(p);
            assert_eq!((r.volume, r.barycenter), oracle(p), "{p:?}");
        }
    }

    #[test]
    fn boundary_and_codim2() {
        let p = projective_space(2).polar().unwrap();
        let mut fm = FaceMeasures::new(&p);
        for f in p.incidence() {
            assert_eq!(fm.relative_volume(f, 1), rat(3, 1));
        }
        assert_eq!(fm.boundary_volume(), rat(9, 1));
        assert_eq!(codim2_volume(&p), rat(3, 1));
        assert_eq!(codim2_volume(&cube(2)), rat(4, 1));
        assert_eq!(codim2_volume(&cube(3)), rat(24, 1));
        // cube facets: 6 squares of lattice area 4
        assert_eq!(FaceMeasures::new(&cube(3)).boundary_volume(), rat(24, 1));
    }

    #[test]
    fn relative_volume_of_point_sets() {
        assert_eq!(relative_volume(&[int_vec(&[-1, -1]), int_vec(&[2, -1])]).unwrap(), rat(3, 1));
        assert_eq!(relative_volume(&[int_vec(&[5, 7, 1])]).unwrap(), rat(1, 1));
        // skew segment: lattice length is the gcd of the direction
        assert_eq!(relative_volume(&[int_vec(&[0, 0]), int_vec(&[4, 6])]).unwrap(), rat(2, 1));
        // unimodular triangle in a skew plane of Z^3
        let t = [int_vec(&[0, 0, 0]), int_vec(&[1, 1, 0]), int_vec(&[0, 1, 1])];
        assert_eq!(relative_volume(&t).unwrap(), rat(1, 2));
        assert!(relative_volume(&[]).is_err());
    }

    #[test]
    fn face_relative_volumes_agree_with_point_set_version() {
        let p = free_sum(&projective_space(2), &segment()).unwrap().polar().unwrap();
        let mut fm = FaceMeasures::new(&p);
        for r in p.faces_codim2() {
            let pts: Vec<IntVector> = r.vertices.ones().map(|j| p.vertices()[j].clone()).collect();
            assert_eq!(fm.relative_volume(&r.vertices, 1), relative_volume(&pts).unwrap());
        }
        for f in p.incidence() {
            let pts: Vec<IntVector> = f.ones().map(|j| p.vertices()[j].clone()).collect();
            assert_eq!(fm.relative_volume(f, 2), relative_volume(&pts).unwrap());
        }
    }

    fn unimodular() -> impl Strategy<Value = IntMatrix> {
        // products of elementary matrices
        prop::collection::vec((0usize..3, 0usize..3, -2i64..=2), 1..6).prop_map(|ops| {
            let mut m = IntMatrix::identity(3);
            for (i, j, c) in ops {
                if i != j {
                    let e = {
                        let mut e = IntMatrix::identity(3);
                        e[(i, j)] = Int::from(c);
                        e
                    };
                    m = e.mul(&m);
                }
            }
            m
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn barycenter_is_equivariant(a in unimodular()) {
            let base = LatticePolytope::from_i64(&[&[0, 0, 0], &[2, 0, 1], &[0, 3, 0], &[1, 1, 4], &[-1, 2, 2]]).unwrap();
            let r = volume_and_barycenter(&base);
            let t = volume_and_barycenter(&base.transform(&a).unwrap());
            prop_assert_eq!(&t.volume, &r.volume);
            prop_assert_eq!(t.barycenter, a.to_rat().mul_vec(&r.barycenter));
        }
    }
}
