//! Lattice automorphism groups of polytopes and their fixed subspaces.
//!
//! The search fixes one facet `F0` of `Q` together with `n` linearly
//! independent vertices of it. Every automorphism is determined by their images,
//! which must again lie in a common facet. Images are assigned vertex by
//! vertex; candidates are pruned by facet-value profiles and by how many facets
//! two vertices share.

use std::collections::{HashMap, HashSet, VecDeque};

use fixedbitset::FixedBitSet;
use num_traits::{One, Zero};

use crate::exact::{inverse, kernel_basis, rank, to_integral, Int, IntMatrix, IntVector, Matrix};
use crate::polyhedra::{DualPair, LatticePolytope};

/// An integer matrix of determinant ±1 with the vertex permutation it induces.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct UnimodularMap {
    pub matrix: IntMatrix,
    /// `perm[i]` is the index of the image of vertex `i`.
    pub perm: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetryGroup {
    dim: usize,
    elements: Vec<UnimodularMap>,
    generators: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixedSpace {
    pub basis: Vec<IntVector>,
    pub dim: usize,
}

#[derive(Debug, Clone, Copy)]
pub struct SearchOptions {
    /// Prune partial assignments by vertex profiles and shared-facet counts.
    pub prune: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { prune: true }
    }
}

/// `W(Q)` and the transported group `W(P)` acting on the dual side.
#[derive(Debug, Clone)]
pub struct Automorphisms {
    pub q: SymmetryGroup,
    pub p: SymmetryGroup,
}

fn compose(a: &[usize], b: &[usize]) -> Vec<usize> {
    b.iter().map(|&i| a[i]).collect()
}

impl SymmetryGroup {
    /// Sorts elements canonically and picks a greedy generating set.
    fn from_elements(dim: usize, mut elements: Vec<UnimodularMap>) -> Self {
        elements.sort_by(|a, b| a.matrix.rows().cmp(b.matrix.rows()));
        let mut generators = Vec::new();
        let mut closure: HashSet<Vec<usize>> = HashSet::new();
        let m = elements.first().map_or(0, |e| e.perm.len());
        closure.insert((0..m).collect());
        for (i, e) in elements.iter().enumerate() {
            if closure.contains(&e.perm) {
                continue;
            }
            generators.push(i);
            let gens: Vec<&[usize]> = generators.iter().map(|&g| elements[g].perm.as_slice()).collect();
            closure = generate(m, &gens);
        }
        SymmetryGroup { dim, elements, generators }
    }

    pub fn trivial(p: &LatticePolytope) -> Self {
        let id = UnimodularMap { matrix: IntMatrix::identity(p.dim()), perm: (0..p.vertices().len()).collect() };
        SymmetryGroup { dim: p.dim(), elements: vec![id], generators: Vec::new() }
    }

    /// The subgroup of `self` generated by the elements at `indices`.
    pub fn subgroup(&self, indices: &[usize]) -> Self {
        let by_perm: HashMap<&[usize], usize> =
            self.elements.iter().enumerate().map(|(i, e)| (e.perm.as_slice(), i)).collect();
        let m = self.elements.first().map_or(0, |e| e.perm.len());
        let gens: Vec<&[usize]> = indices.iter().map(|&i| self.elements[i].perm.as_slice()).collect();
        let members = generate(m, &gens);
        let elements = members.iter().map(|perm| self.elements[by_perm[perm.as_slice()]].clone()).collect();
        SymmetryGroup::from_elements(self.dim, elements)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[UnimodularMap] {
        &self.elements
    }

    pub fn generators(&self) -> impl Iterator<Item = &UnimodularMap> {
        self.generators.iter().map(|&i| &self.elements[i])
    }

    pub fn generator_indices(&self) -> &[usize] {
        &self.generators
    }

    pub fn contains_matrix(&self, a: &IntMatrix) -> bool {
        self.elements.iter().any(|e| &e.matrix == a)
    }
}

fn generate(m: usize, gens: &[&[usize]]) -> HashSet<Vec<usize>> {
    let id: Vec<usize> = (0..m).collect();
    let mut seen = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = compose(g, &x);
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    seen
}

struct Search<'a> {
    q: &'a LatticePolytope,
    opts: SearchOptions,
    base: Vec<usize>,
    base_inv: Matrix<crate::exact::Rat>,
    profiles: Vec<Vec<Int>>,
    shared: Vec<Vec<usize>>,
    facets_of_vertex: Vec<FixedBitSet>,
    index: HashMap<&'a IntVector, usize>,
    found: Vec<UnimodularMap>,
}

impl Search<'_> {
    fn extend(&mut self, images: &mut Vec<usize>, used: &mut FixedBitSet, facets: &FixedBitSet) {
        let k = images.len();
        if k == self.base.len() {
            self.finish(images);
            return;
        }
        let src = self.base[k];
        for w in 0..self.q.vertices().len() {
            if used.contains(w) {
                continue;
            }
            if self.opts.prune {
                if self.profiles[w] != self.profiles[src] {
                    continue;
                }
                if (0..k).any(|j| self.shared[w][images[j]] != self.shared[src][self.base[j]]) {
                    continue;
                }
            }
            let mut common = facets.clone();
            common.intersect_with(&self.facets_of_vertex[w]);
            if common.is_clear() {
                continue;
            }
            images.push(w);
            used.insert(w);
            self.extend(images, used, &common);
            used.set(w, false);
            images.pop();
        }
    }

    fn finish(&mut self, images: &[usize]) {
        let verts = self.q.vertices();
        let n = self.q.dim();
        // A = W · B^{-1}
        let mut rows = Vec::with_capacity(n);
        for i in 0..n {
            let row: Vec<crate::exact::Rat> = (0..n)
                .map(|j| {
                    images.iter().enumerate().fold(crate::exact::Rat::zero(), |acc, (k, &w)| {
                        acc + crate::exact::Rat::from_integer(verts[w][i].clone()) * &self.base_inv[(k, j)]
                    })
                })
                .collect();
            match to_integral(&row) {
                Some(r) => rows.push(r),
                None => return,
            }
        }
        let a = IntMatrix::from_rows(rows);
        let mut perm = Vec::with_capacity(verts.len());
        for v in verts {
            match self.index.get(&a.mul_vec(v)) {
                Some(&j) => perm.push(j),
                None => return,
            }
        }
        // A permutes a spanning set, so A^k = I for some k and A^{-1} = A^{k-1} is integral.
        self.found.push(UnimodularMap { matrix: a, perm });
    }
}

/// All lattice automorphisms of a full-dimensional lattice polytope.
pub fn lattice_automorphisms(q: &LatticePolytope, opts: SearchOptions) -> SymmetryGroup {
    let n = q.dim();
    let verts = q.vertices();
    if n == 0 {
        return SymmetryGroup::trivial(q);
    }
    // smallest facet, then n linearly independent vertices of it
    let f0 = (0..q.facets().len()).min_by_key(|&i| q.facet_vertices(i).count_ones(..)).expect("polytope has facets");
    let mut base: Vec<usize> = Vec::with_capacity(n);
    let mut candidates: Vec<usize> = q.facet_vertices(f0).ones().collect();
    candidates.extend((0..verts.len()).filter(|v| !q.facet_vertices(f0).contains(*v)));
    for v in candidates {
        let mut rows: Vec<IntVector> = base.iter().map(|&b| verts[b].clone()).collect();
        rows.push(verts[v].clone());
        if rank(&Matrix::from_rows(rows)) == base.len() + 1 {
            base.push(v);
        }
        if base.len() == n {
            break;
        }
    }
    let base_matrix = Matrix::from_columns(&base.iter().map(|&b| verts[b].clone()).collect::<Vec<_>>());
    let base_inv = inverse(&base_matrix.to_rat()).expect("independent base vertices");

    let m = verts.len();
    let nf = q.facets().len();
    let mut facets_of_vertex = vec![FixedBitSet::with_capacity(nf); m];
    for (f, inc) in q.incidence().iter().enumerate() {
        for v in inc.ones() {
            facets_of_vertex[v].insert(f);
        }
    }
    let profiles: Vec<Vec<Int>> = verts
        .iter()
        .map(|v| {
            let mut p: Vec<Int> = q.facets().iter().map(|f| crate::exact::dot(&f.normal, v)).collect();
            p.sort();
            p
        })
        .collect();
    let shared: Vec<Vec<usize>> = (0..m)
        .map(|a| {
            (0..m)
                .map(|b| {
                    let mut s = facets_of_vertex[a].clone();
                    s.intersect_with(&facets_of_vertex[b]);
                    s.count_ones(..)
                })
                .collect()
        })
        .collect();

    let mut all = FixedBitSet::with_capacity(nf);
    all.insert_range(..);
    let mut search = Search {
        q,
        opts,
        base,
        base_inv,
        profiles,
        shared,
        facets_of_vertex,
        index: q.vertex_index(),
        found: Vec::new(),
    };
    let in_one_facet = {
        let mut s = all.clone();
        for &b in &search.base {
            s.intersect_with(&search.facets_of_vertex[b]);
        }
        !s.is_clear()
    };
    if !in_one_facet {
        // base spills over several facets; the common-facet constraint no longer applies
        search.facets_of_vertex = vec![all.clone(); m];
    }
    search.extend(&mut Vec::with_capacity(n), &mut FixedBitSet::with_capacity(m), &all);
    SymmetryGroup::from_elements(n, search.found)
}

/// `W(Q)` and `W(P) = { A^{-T} : A in W(Q) }` for a dual pair.
pub fn automorphism_group(dp: &DualPair, opts: SearchOptions) -> Automorphisms {
    let q_group = lattice_automorphisms(&dp.q, opts);
    let p_index = dp.p.vertex_index();
    let by_perm: HashMap<&[usize], usize> =
        q_group.elements.iter().enumerate().map(|(i, e)| (e.perm.as_slice(), i)).collect();
    let p_elements = q_group
        .elements
        .iter()
        .map(|e| {
            let mut inv_perm = vec![0; e.perm.len()];
            for (i, &j) in e.perm.iter().enumerate() {
                inv_perm[j] = i;
            }
            let inv = &q_group.elements[by_perm[inv_perm.as_slice()]].matrix;
            let matrix = inv.transpose();
            let perm = dp.p.vertices().iter().map(|w| p_index[&matrix.mul_vec(w)]).collect();
            UnimodularMap { matrix, perm }
        })
        .collect();
    let p_group = SymmetryGroup::from_elements(dp.dim(), p_elements);
    Automorphisms { q: q_group, p: p_group }
}

/// Common fixed subspace of the group, as primitive integer vectors.
pub fn fixed_space(g: &SymmetryGroup) -> FixedSpace {
    let n = g.dim;
    let mut rows: Vec<IntVector> = Vec::new();
    for e in g.generators() {
        for i in 0..n {
            let mut r = e.matrix.row(i).to_vec();
            r[i] -= Int::one();
            rows.push(r);
        }
    }
    if rows.is_empty() {
        rows.push(vec![Int::zero(); n]);
    }
    let basis = kernel_basis(&Matrix::from_rows(rows));
    FixedSpace { dim: basis.len(), basis }
}

/// Sum of all vertices.
pub fn vertex_sum(q: &LatticePolytope) -> IntVector {
    let mut s = vec![Int::zero(); q.dim()];
    for v in q.vertices() {
        for (a, b) in s.iter_mut().zip(v) {
            *a += b;
        }
    }
    s
}

/// Symmetric iff no nonzero point is fixed by every lattice automorphism of `P`.
pub fn is_symmetric(dp: &DualPair) -> bool {
    let groups = automorphism_group(dp, SearchOptions::default());
    fixed_space(&groups.p).dim == 0
}

/// Whether `v` is a rational multiple of `w` (both nonzero).
pub fn parallel(v: &[Int], w: &[Int]) -> bool {
    if v.iter().all(Zero::is_zero) || w.iter().all(Zero::is_zero) {
        return false;
    }
    rank(&Matrix::from_rows(vec![v.to_vec(), w.to_vec()])) == 1
}
