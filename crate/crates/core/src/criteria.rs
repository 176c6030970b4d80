//! Kähler–Einstein, symmetry, alpha-invariant and log canonical threshold verdicts.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::exact::{as_string, dot, to_rat, Int, IntVector, Rat, RatVector};
use crate::measures::{coefficient_of_asymmetry, volume_and_barycenter};
use crate::polyhedra::{restrict_to_subspace, DualPair, SubspacePolytope};
use crate::symmetry::{automorphism_group, fixed_space, parallel, vertex_sum, Automorphisms, SearchOptions, SymmetryGroup};

/// Every verdict for one dual pair, computed from a single group search.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KEVerdict {
    pub is_ke: bool,
    #[serde(with = "as_string::rat_vec")]
    pub barycenter: RatVector,
    pub is_symmetric: bool,
    /// Dimension of the subspace fixed by `W(P)`.
    pub fixed_dim: usize,
    /// Basis of that subspace.
    #[serde(with = "as_string::int_vecs")]
    pub fixed_basis: Vec<IntVector>,
    /// Whether the subspace fixed by `W(Q)` is the line spanned by the vertex sum of `Q`.
    pub fixed_parallel_to_vertex_sum: bool,
    /// `|W(P)|`, equal to `|W(Q)|`.
    pub group_order: usize,
    /// Dimension of the subspace fixed by `W(Q)`.
    pub q_fixed_dim: usize,
    /// Basis of that subspace, in the coordinates of `Q`.
    #[serde(with = "as_string::int_vecs")]
    pub q_fixed_basis: Vec<IntVector>,
    #[serde(with = "as_string::rat")]
    pub alpha: Rat,
    #[serde(with = "as_string::rat")]
    pub lct: Rat,
    pub tian_holds: bool,
}

/// Barycenter test: `X` is Kähler–Einstein iff the barycenter of `P` is the origin.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KeTest {
    pub is_ke: bool,
    pub volume: Rat,
    pub barycenter: RatVector,
}

pub fn ke_test(dp: &DualPair) -> KeTest {
    let r = volume_and_barycenter(&dp.p);
    KeTest { is_ke: r.barycenter.iter().all(Zero::is_zero), volume: r.volume, barycenter: r.barycenter }
}

/// `P_G = P ∩ Fix(G)` in coordinates of the fixed-space basis.
pub fn fixed_restriction(dp: &DualPair, g: &SymmetryGroup) -> SubspacePolytope {
    let basis: Vec<RatVector> = fixed_space(g).basis.iter().map(|b| to_rat(b)).collect();
    restrict_to_subspace(&dp.p, &basis).expect("origin is interior to a reflexive polytope")
}

/// Song's form: 1 for symmetric `P`, else `1 / (1 + ca(P_W, 0))`.
pub fn alpha_for_group(dp: &DualPair, w: &SymmetryGroup) -> Rat {
    let pg = fixed_restriction(dp, w);
    if pg.dim() == 0 {
        return Rat::one();
    }
    let ca = coefficient_of_asymmetry(&pg).expect("positive-dimensional restriction");
    Rat::one() / (Rat::one() + ca)
}

/// Cheltsov–Shramov form: `1 / (1 + max { <w, v> : w ∈ vert(P_G), v ∈ vert(Q) })`.
pub fn lct(dp: &DualPair, g: &SymmetryGroup) -> Rat {
    let pg = fixed_restriction(dp, g);
    let qv: Vec<RatVector> = dp.q.vertices().iter().map(|v| to_rat(v)).collect();
    let max = pg
        .ambient_vertices(dp.dim())
        .iter()
        .flat_map(|w| qv.iter().map(move |v| dot(w, v)))
        .max()
        .expect("nonempty vertex sets");
    Rat::one() / (Rat::one() + max)
}

/// Tian's sufficient condition `α_G > n/(n+1)`, which here means `P_G = {0}`.
pub fn tian_condition(dp: &DualPair, g: &SymmetryGroup) -> bool {
    fixed_restriction(dp, g).is_origin_only()
}

pub fn alpha_invariant(dp: &DualPair) -> Rat {
    let groups = automorphism_group(dp, SearchOptions::default());
    alpha_for_group(dp, &groups.p)
}

/// Assembles the verdict from precomputed groups and barycenter test.
pub fn verdict_from(dp: &DualPair, groups: &Automorphisms, ke: &KeTest) -> KEVerdict {
    let fixed = fixed_space(&groups.p);
    let q_fixed = fixed_space(&groups.q);
    let vsum = vertex_sum(&dp.q);
    let fixed_parallel_to_vertex_sum = q_fixed.dim == 1 && parallel(&q_fixed.basis[0], &vsum);
    KEVerdict {
        is_ke: ke.is_ke,
        barycenter: ke.barycenter.clone(),
        is_symmetric: fixed.dim == 0,
        fixed_dim: fixed.dim,
        fixed_basis: fixed.basis,
        fixed_parallel_to_vertex_sum,
        group_order: groups.p.order(),
        q_fixed_dim: q_fixed.dim,
        q_fixed_basis: q_fixed.basis,
        alpha: alpha_for_group(dp, &groups.p),
        lct: lct(dp, &groups.p),
        tian_holds: tian_condition(dp, &groups.p),
    }
}

pub fn verdict(dp: &DualPair) -> KEVerdict {
    let groups = automorphism_group(dp, SearchOptions::default());
    verdict_from(dp, &groups, &ke_test(dp))
}

/// `n / (n + 1)`, Tian's threshold.
pub fn tian_threshold(n: usize) -> Rat {
    Rat::new(Int::from(n), Int::from(n + 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use crate::io::fixtures::{cross_polytope, cube, projective_space};
    use crate::polyhedra::{dual, free_sum, segment, LatticePolytope};

    fn blowup() -> LatticePolytope {
        LatticePolytope::from_i64(&[&[1, 0], &[0, 1], &[-1, -1], &[1, 1]]).unwrap()
    }

    fn hexagon() -> LatticePolytope {
        LatticePolytope::from_i64(&[&[1, 0], &[-1, 0], &[0, 1], &[0, -1], &[1, 1], &[-1, -1]]).unwrap()
    }

    /// max <w, v> over all vertex pairs of P and Q.
    fn brute_trivial_lct(dp: &DualPair) -> Rat {
        let m = dp
            .p
            .vertices()
            .iter()
            .flat_map(|w| dp.q.vertices().iter().map(move |v| dot(w, v)))
            .max()
            .unwrap();
        Rat::one() / Rat::from_integer(Int::one() + m)
    }

    #[test]
    fn projective_plane() {
        let dp = dual(&projective_space(2)).unwrap();
        let trivial = SymmetryGroup::trivial(&dp.p);
        assert_eq!(lct(&dp, &trivial), rat(1, 3));
        assert_eq!(brute_trivial_lct(&dp), rat(1, 3));
        assert!(!tian_condition(&dp, &trivial));
        let v = verdict(&dp);
        assert!(v.is_ke && v.is_symmetric && v.tian_holds);
        assert_eq!(v.alpha, rat(1, 1));
        assert_eq!(v.lct, rat(1, 1));
        assert_eq!(v.group_order, 6);
    }

    #[test]
    fn blowup_is_not_ke() {
        let dp = dual(&blowup()).unwrap();
        let v = verdict(&dp);
        assert!(!v.is_ke);
        assert!(!v.is_symmetric);
        assert_eq!(v.fixed_dim, 1);
        assert!(v.fixed_parallel_to_vertex_sum);
        assert!(v.alpha <= rat(1, 2));
        assert_eq!(v.alpha, v.lct);
        assert!(!v.tian_holds);
    }

    #[test]
    fn symmetric_examples() {
        for q in [cube(2), cross_polytope(3), hexagon(), projective_space(3), free_sum(&projective_space(2), &segment()).unwrap()] {
            let dp = dual(&q).unwrap();
            let v = verdict(&dp);
            assert!(v.is_symmetric && v.is_ke, "{q:?}");
            assert_eq!((v.alpha.clone(), v.lct.clone()), (rat(1, 1), rat(1, 1)));
            assert!(v.tian_holds);
            assert_eq!(v.fixed_dim, v.q_fixed_dim);
        }
    }

    #[test]
    fn tian_equivalences_and_monotonicity() {
        for q in [projective_space(2), blowup(), hexagon(), cube(2)] {
            let dp = dual(&q).unwrap();
            let groups = automorphism_group(&dp, SearchOptions::default());
            let n = dp.dim();
            let trivial = SymmetryGroup::trivial(&dp.p);
            let mut subgroups = vec![trivial, groups.p.clone()];
            for i in 0..groups.p.order() {
                subgroups.push(groups.p.subgroup(&[i]));
            }
            for g in &subgroups {
                let l = lct(&dp, g);
                let t = tian_condition(&dp, g);
                assert_eq!(t, l > tian_threshold(n));
                assert_eq!(t, l == rat(1, 1));
                // enlarging to the full group never decreases the threshold
                assert!(lct(&dp, &groups.p) >= l);
            }
            assert_eq!(lct(&dp, &SymmetryGroup::trivial(&dp.p)), brute_trivial_lct(&dp));
        }
    }

    #[test]
    fn song_and_cheltsov_forms_agree_for_subgroups() {
        for q in [blowup(), projective_space(2), projective_space(3)] {
            let dp = dual(&q).unwrap();
            let groups = automorphism_group(&dp, SearchOptions::default());
            for i in 0..groups.p.order() {
                let g = groups.p.subgroup(&[i]);
                assert_eq!(alpha_for_group(&dp, &g), lct(&dp, &g));
            }
        }
    }
}
