//! Exact volumes, barycenters, lattice-point counts and related invariants.
//!
//! Volumes use the Euclidean normalization (unit cube = 1). Faces are measured
//! in unimodular coordinates of the lattice in their affine hull.

mod ehrhart;
mod volume;

use num_integer::Integer;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact::{Int, Rat, RatVector};
use crate::polyhedra::{LatticePolytope, SubspacePolytope};

pub use ehrhart::{count_lattice_points, ehrhart, interior_point_count, EhrhartPolynomial};
pub use volume::{codim2_volume, relative_volume, volume_and_barycenter, FaceMeasures, VolumeAndBarycenter};

/// Anticanonical degree `n! · vol(P)`.
pub fn degree(volume: &Rat, n: usize) -> Rat {
    volume * Rat::from_integer(factorial(n))
}

pub fn factorial(n: usize) -> Int {
    (1..=n).fold(Int::from(1), |acc, k| acc * Int::from(k))
}

/// `max { <a, -w> }` over facets `<a, t> <= 1` and vertices `w`; the least
/// `λ` with `-S ⊆ λ S`.
pub fn coefficient_of_asymmetry(s: &SubspacePolytope) -> Result<Rat> {
    if s.dim() == 0 || s.facets().is_empty() {
        return Err(Error::DegenerateRestriction);
    }
    let mut best: Option<Rat> = None;
    for a in s.facets() {
        for w in s.vertices() {
            let v = -crate::exact::dot(a, w);
            if best.as_ref().is_none_or(|b| v > *b) {
                best = Some(v);
            }
        }
    }
    Ok(best.expect("nonempty"))
}

/// Largest `i` with `(P - v) / i` a lattice polytope, using vertex `base`.
pub fn fano_index_from(p: &LatticePolytope, base: usize) -> Int {
    let v0 = &p.vertices()[base];
    p.vertices().iter().flat_map(|w| w.iter().zip(v0).map(|(a, b)| a - b)).fold(Int::zero(), |g, x| g.gcd(&x))
}

pub fn fano_index(p: &LatticePolytope) -> Int {
    fano_index_from(p, 0)
}

/// Barycenter is exactly the origin.
pub fn is_centered(barycenter: &RatVector) -> bool {
    barycenter.iter().all(Zero::is_zero)
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat, IntMatrix};
    use crate::io::fixtures::{cross_polytope, cube, projective_space};
    use crate::polyhedra::restrict_to_subspace;

    fn identity_restriction(p: &LatticePolytope) -> SubspacePolytope {
        let n = p.dim();
        let basis: Vec<RatVector> =
            (0..n).map(|i| (0..n).map(|j| if i == j { rat(1, 1) } else { rat(0, 1) }).collect()).collect();
        restrict_to_subspace(p, &basis).unwrap()
    }

    #[test]
    fn asymmetry_of_symmetric_bodies() {
        for p in [cube(2), cube(3), cross_polytope(3)] {
            assert_eq!(coefficient_of_asymmetry(&identity_restriction(&p)).unwrap(), rat(1, 1));
        }
    }

    #[test]
    fn asymmetry_of_segment() {
        let seg = LatticePolytope::from_i64(&[&[-1], &[2]]).unwrap();
        assert_eq!(coefficient_of_asymmetry(&identity_restriction(&seg)).unwrap(), rat(2, 1));
    }

    #[test]
    fn asymmetry_of_p2_dual_matches_vertex_pairs() {
        let p = projective_space(2).polar().unwrap();
        let ca = coefficient_of_asymmetry(&identity_restriction(&p)).unwrap();
        // brute force over vertex pairs of P and Q
        let q = projective_space(2);
        let brute = p
            .vertices()
            .iter()
            .flat_map(|w| q.vertices().iter().map(move |v| crate::exact::dot(w, v)))
            .max()
            .unwrap();
        assert_eq!(brute, int(2));
        assert_eq!(ca, rat(2, 1));
    }

    #[test]
    fn asymmetry_at_least_one_with_equality_iff_symmetric() {
        let asym = [projective_space(2).polar().unwrap(), projective_space(3).polar().unwrap()];
        for p in &asym {
            let ca = coefficient_of_asymmetry(&identity_restriction(p)).unwrap();
            assert!(ca > rat(1, 1));
            assert_ne!(p.negated(), *p);
        }
        for p in [cube(2), cross_polytope(2)] {
            assert_eq!(p.negated(), p);
        }
    }

    #[test]
    fn fano_indices() {
        for n in 1..=4 {
            let p = projective_space(n).polar().unwrap();
            for b in 0..p.vertices().len() {
                assert_eq!(fano_index_from(&p, b), int(n as i64 + 1));
            }
        }
        assert_eq!(fano_index(&cube(2)), int(2));
    }

    #[test]
    fn degree_is_factorial_times_volume() {
        assert_eq!(degree(&rat(9, 2), 2), rat(9, 1));
        assert_eq!(factorial(5), int(120));
    }

    #[test]
    fn fano_index_invariant_under_unimodular_maps() {
        let a = IntMatrix::from_i64(&[&[1, 2], &[0, 1]]);
        let p = projective_space(2).polar().unwrap().transform(&a).unwrap();
        assert_eq!(fano_index(&p), int(3));
    }
}
