//! Embedded fixture polytopes.

use super::parse::{parse, PolytopeEntry, PolytopeFile};
use crate::exact::{Int, IntVector};
use crate::polyhedra::{free_sum, segment, LatticePolytope};

/// The transcribed corpus, one vertex per row.
pub const CORPUS_TEXT: &str = include_str!("../../fixtures/corpus.txt");

fn embedded() -> PolytopeFile {
    parse(CORPUS_TEXT).expect("embedded corpus parses")
}

fn from_entry(e: &PolytopeEntry) -> LatticePolytope {
    LatticePolytope::hull(&e.vertices).expect("fixture is full-dimensional")
}

pub fn fixture(name: &str) -> Option<LatticePolytope> {
    embedded().get(name).map(from_entry)
}

pub fn q1() -> LatticePolytope {
    fixture("Q1").expect("Q1 fixture")
}

/// The bipyramid over `Q1`.
pub fn q2() -> LatticePolytope {
    free_sum(&q1(), &segment()).expect("free sum")
}

pub fn q3() -> LatticePolytope {
    fixture("Q3").expect("Q3 fixture")
}

pub fn conj11_counterexample() -> LatticePolytope {
    fixture("conj11_counterexample").expect("counterexample fixture")
}

/// `Q1 ⊕ [-1,1]^{⊕(n-7)}`, the fan of `(P^1)^{n-7} × X_1`.
pub fn product_family(n: usize) -> LatticePolytope {
    assert!(n >= 7, "the family starts in dimension 7");
    (7..n).fold(q1(), |q, _| free_sum(&q, &segment()).expect("free sum"))
}

/// `conv{e_1, …, e_n, -(e_1 + … + e_n)}`.
pub fn projective_space(n: usize) -> LatticePolytope {
    let mut pts: Vec<IntVector> = (0..n).map(|i| (0..n).map(|j| Int::from((i == j) as i64)).collect()).collect();
    pts.push(vec![Int::from(-1); n]);
    LatticePolytope::hull(&pts).expect("simplex")
}

/// `conv{±e_i}`.
pub fn cross_polytope(n: usize) -> LatticePolytope {
    let pts: Vec<IntVector> = (0..n)
        .flat_map(|i| {
            [1, -1].map(|s| (0..n).map(|j| Int::from(if i == j { s } else { 0 })).collect::<IntVector>())
        })
        .collect();
    LatticePolytope::hull(&pts).expect("cross-polytope")
}

/// `[-1, 1]^n`.
pub fn cube(n: usize) -> LatticePolytope {
    let pts: Vec<IntVector> =
        (0..1u32 << n).map(|m| (0..n).map(|i| Int::from(if m >> i & 1 == 1 { 1 } else { -1 })).collect()).collect();
    LatticePolytope::hull(&pts).expect("cube")
}

/// The full fixture corpus in file form, with the generated `Q2` placed after `Q1`.
pub fn corpus() -> PolytopeFile {
    let mut file = embedded();
    let q2 = q2();
    let entry = PolytopeEntry { name: "Q2".into(), dim: q2.dim(), vertices: q2.vertices().to_vec() };
    let at = file.entries.iter().position(|e| e.name == "Q1").map_or(0, |i| i + 1);
    file.entries.insert(at, entry);
    file
}
