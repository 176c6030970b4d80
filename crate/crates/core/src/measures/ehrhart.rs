//! Lattice-point counting by coordinate slicing, and Ehrhart interpolation.
//!
//! The admissible range of coordinate `j` given a fixed prefix `x_1..x_{j-1}`
//! is the fiber of the projection of `kP` onto the first `j` coordinates. Those
//! projections are computed once as hulls of the projected vertices, so every
//! slice bound is an exact integer ceiling/floor of a facet inequality.

use num_integer::Integer;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::exact::{solve_exact, Int, IntVector, Matrix, Rat};
use crate::polyhedra::{Facet, LatticePolytope};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EhrhartPolynomial {
    /// `a_0, …, a_n`.
    pub coefficients: Vec<Rat>,
}

impl EhrhartPolynomial {
    pub fn degree(&self) -> usize {
        self.coefficients.len().saturating_sub(1)
    }

    pub fn eval(&self, t: &Rat) -> Rat {
        self.coefficients.iter().rev().fold(Rat::zero(), |acc, a| acc * t + a)
    }

    pub fn coefficient(&self, i: usize) -> &Rat {
        &self.coefficients[i]
    }
}

/// Facets of the projections of `p` onto its first `1, 2, …, n` coordinates.
fn projections(p: &LatticePolytope) -> Vec<Vec<Facet>> {
    let n = p.dim();
    (1..=n)
        .map(|j| {
            if j == n {
                return p.facets().to_vec();
            }
            let pts: Vec<IntVector> = p.vertices().iter().map(|v| v[..j].to_vec()).collect();
            LatticePolytope::hull(&pts).expect("projection of a full-dimensional polytope").facets().to_vec()
        })
        .collect()
}

struct Slicer {
    levels: Vec<Vec<Facet>>,
    k: Int,
    strict: bool,
}

impl Slicer {
    /// Integer range of the next coordinate, or `None` if empty.
    fn range(&self, prefix: &[Int]) -> Option<(Int, Int)> {
        let j = prefix.len();
        let strict = self.strict && j + 1 == self.levels.len();
        let mut lo: Option<Int> = None;
        let mut hi: Option<Int> = None;
        for f in &self.levels[j] {
            // <u', prefix> + c t >= k rhs   (strict: >)
            let partial: Int = f.normal[..j].iter().zip(prefix).map(|(a, b)| a * b).sum();
            let need = &self.k * &f.rhs - partial;
            let c = &f.normal[j];
            if c.is_zero() {
                let ok = if strict { need < Int::zero() } else { need <= Int::zero() };
                if !ok {
                    return None;
                }
            } else if *c > Int::zero() {
                let b = if strict { need.div_floor(c) + 1 } else { need.div_ceil(c) };
                if lo.as_ref().is_none_or(|l| b > *l) {
                    lo = Some(b);
                }
            } else {
                // c t >= need  <=>  t <= need / c
                let b = if strict { need.div_ceil(c) - 1 } else { need.div_floor(c) };
                if hi.as_ref().is_none_or(|h| b < *h) {
                    hi = Some(b);
                }
            }
        }
        let (lo, hi) = (lo.expect("bounded polytope"), hi.expect("bounded polytope"));
        (lo <= hi).then_some((lo, hi))
    }

    fn count(&self, prefix: &mut Vec<Int>) -> Int {
        let Some((lo, hi)) = self.range(prefix) else { return Int::zero() };
        if prefix.len() + 1 == self.levels.len() {
            return hi - lo + 1;
        }
        let mut total = Int::zero();
        let mut t = lo;
        while t <= hi {
            prefix.push(t.clone());
            total += self.count(prefix);
            prefix.pop();
            t += 1;
        }
        total
    }
}

fn count_with(levels: Vec<Vec<Facet>>, k: u64, strict: bool) -> Int {
    Slicer { levels, k: Int::from(k), strict }.count(&mut Vec::new())
}

/// `|kP ∩ Z^n|`.
pub fn count_lattice_points(p: &LatticePolytope, k: u64) -> Int {
    if k == 0 {
        return Int::one();
    }
    count_with(projections(p), k, false)
}

/// Number of lattice points in the interior of `p`.
pub fn interior_point_count(p: &LatticePolytope) -> Int {
    count_with(projections(p), 1, true)
}

/// Ehrhart polynomial by exact interpolation through the counts at `k = 0..n`.
pub fn ehrhart(p: &LatticePolytope) -> EhrhartPolynomial {
    let n = p.dim();
    let levels = projections(p);
    let counts: Vec<Int> = (0..=n as u64)
        .into_par_iter()
        .map(|k| if k == 0 { Int::one() } else { count_with(levels.clone(), k, false) })
        .collect();
    interpolate(&counts)
}

/// Coefficients of the degree-`m` polynomial through `(k, values[k])`, `k = 0..=m`.
pub(crate) fn interpolate(values: &[Int]) -> EhrhartPolynomial {
    let m = values.len();
    let rows: Vec<Vec<Rat>> = (0..m)
        .map(|k| (0..m).map(|i| Rat::from_integer(Int::from(k).pow(i as u32))).collect())
        .collect();
    let rhs: Vec<Rat> = values.iter().map(|v| Rat::from_integer(v.clone())).collect();
    let coefficients = solve_exact(&Matrix::from_rows(rows), &rhs).expect("Vandermonde matrix is invertible");
    EhrhartPolynomial { coefficients }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};
    use crate::io::fixtures::{cross_polytope, cube, projective_space};
    use crate::measures::{volume_and_barycenter, FaceMeasures};
    use crate::polyhedra::{free_sum, segment};

    fn brute_force(p: &LatticePolytope, k: i64, strict: bool) -> Int {
        let n = p.dim();
        let kk = Int::from(k);
        let lo: Vec<i64> = (0..n).map(|j| p.vertices().iter().map(|v| i64::try_from(&v[j]).unwrap()).min().unwrap() * k).collect();
        let hi: Vec<i64> = (0..n).map(|j| p.vertices().iter().map(|v| i64::try_from(&v[j]).unwrap()).max().unwrap() * k).collect();
        let mut count = 0i64;
        let mut x = lo.clone();
        loop {
            let xv: IntVector = x.iter().map(|&a| Int::from(a)).collect();
            let inside = p.facets().iter().all(|f| {
                let s = crate::exact::dot(&f.normal, &xv) - &kk * &f.rhs;
                if strict { s > Int::zero() } else { s >= Int::zero() }
            });
            count += inside as i64;
            let mut i = 0;
            loop {
                if i == n {
                    return Int::from(count);
                }
                x[i] += 1;
                if x[i] <= hi[i] {
                    break;
                }
                x[i] = lo[i];
                i += 1;
            }
        }
    }

    fn small_polytopes() -> Vec<LatticePolytope> {
        vec![
            segment(),
            cube(2),
            projective_space(2).polar().unwrap(),
            LatticePolytope::from_i64(&[&[1, 0], &[0, 1], &[-1, -1], &[1, 1]]).unwrap().polar().unwrap(),
            cube(3),
            cross_polytope(3),
            projective_space(3).polar().unwrap(),
            free_sum(&projective_space(2), &segment()).unwrap().polar().unwrap(),
            LatticePolytope::from_i64(&[&[0, 0, 0], &[2, 0, 1], &[0, 3, 0], &[1, 1, 4], &[-1, 2, 2]]).unwrap(),
        ]
    }

    #[test]
    fn known_counts() {
        assert_eq!(count_lattice_points(&cube(2), 1), int(9));
        let p = projective_space(2).polar().unwrap();
        assert_eq!(count_lattice_points(&p, 1), int(10));
        assert_eq!(count_lattice_points(&p, 2), int(28));
        assert_eq!(count_lattice_points(&p, 0), int(1));
    }

    #[test]
    fn slicing_matches_box_enumeration() {
        for p in small_polytopes() {
            for k in 1..=3 {
                assert_eq!(count_lattice_points(&p, k), brute_force(&p, k as i64, false), "{p:?} k={k}");
            }
            assert_eq!(interior_point_count(&p), brute_force(&p, 1, true), "{p:?}");
        }
    }

    #[test]
    fn known_polynomials() {
        let seg = ehrhart(&segment());
        assert_eq!(seg.coefficients, vec![rat(1, 1), rat(2, 1)]);
        assert_eq!(ehrhart(&cube(2)).coefficients, vec![rat(1, 1), rat(4, 1), rat(4, 1)]);
        let p2 = ehrhart(&projective_space(2).polar().unwrap());
        assert_eq!(p2.coefficients, vec![rat(1, 1), rat(9, 2), rat(9, 2)]);
        assert_eq!(p2.eval(&rat(3, 1)), rat(55, 1));
        assert_eq!(p2.degree(), 2);
    }

    #[test]
    fn reflexive_polytopes_have_one_interior_point() {
        for p in [cube(3), cross_polytope(3), projective_space(4).polar().unwrap()] {
            assert_eq!(interior_point_count(&p), int(1));
        }
    }

    #[test]
    fn leading_and_subleading_coefficients() {
        for p in small_polytopes() {
            let n = p.dim();
            let e = ehrhart(&p);
            assert_eq!(e.coefficients[0], rat(1, 1));
            assert_eq!(e.coefficients[n], volume_and_barycenter(&p).volume);
            let boundary = FaceMeasures::new(&p).boundary_volume();
            assert_eq!(e.coefficients[n - 1], boundary / rat(2, 1), "{p:?}");
        }
    }

    #[test]
    fn interpolation_reproduces_counts() {
        let p = free_sum(&projective_space(2), &segment()).unwrap().polar().unwrap();
        let e = ehrhart(&p);
        for k in 0..=5u64 {
            assert_eq!(e.eval(&Rat::from_integer(Int::from(k))), Rat::from_integer(count_lattice_points(&p, k)));
        }
    }
}
