//! Incremental double description over the integers.
//!
//! Given homogeneous generators `g_i` spanning `R^d`, computes the extreme rays
//! of the dual cone `{y : <y, g_i> >= 0 for all i}` together with the set of
//! generators each ray is tight on.

use fixedbitset::FixedBitSet;
use num_traits::{Signed, Zero};

use crate::exact::{clear_denominators, dot, inverse, primitive, rank, Int, IntMatrix, IntVector, Matrix, RatVector};

#[derive(Debug, Clone)]
pub(crate) struct Ray {
    pub vector: IntVector,
    pub tight: FixedBitSet,
}

/// Extreme rays of the dual cone. `None` if the generators do not span `R^d`.
pub(crate) fn dual_cone_rays(gens: &[IntVector]) -> Option<Vec<Ray>> {
    let d = gens.first()?.len();
    let m = gens.len();

    // greedy choice of d linearly independent generators
    let mut basis: Vec<usize> = Vec::with_capacity(d);
    for i in 0..m {
        if basis.len() == d {
            break;
        }
        let mut rows: Vec<IntVector> = basis.iter().map(|&b| gens[b].clone()).collect();
        rows.push(gens[i].clone());
        if rank(&Matrix::from_rows(rows)) == basis.len() + 1 {
            basis.push(i);
        }
    }
    if basis.len() < d {
        return None;
    }

    let g = IntMatrix::from_rows(basis.iter().map(|&b| gens[b].clone()).collect());
    let ginv = inverse(&g.to_rat()).ok()?;
    let mut rays: Vec<Ray> = (0..d)
        .map(|j| {
            let col: RatVector = ginv.column(j);
            let mut tight = FixedBitSet::with_capacity(m);
            for (k, &b) in basis.iter().enumerate() {
                if k != j {
                    tight.insert(b);
                }
            }
            Ray { vector: clear_denominators(&col), tight }
        })
        .collect();

    let mut processed = FixedBitSet::with_capacity(m);
    for &b in &basis {
        processed.insert(b);
    }

    for i in 0..m {
        if processed.contains(i) {
            continue;
        }
        let values: Vec<Int> = rays.iter().map(|r| dot(&r.vector, &gens[i])).collect();
        let plus: Vec<usize> = (0..rays.len()).filter(|&k| values[k].is_positive()).collect();
        let minus: Vec<usize> = (0..rays.len()).filter(|&k| values[k].is_negative()).collect();
        processed.insert(i);
        if minus.is_empty() {
            for (k, r) in rays.iter_mut().enumerate() {
                if values[k].is_zero() {
                    r.tight.insert(i);
                }
            }
            continue;
        }

        let mut fresh = Vec::new();
        for &p in &plus {
            for &q in &minus {
                let mut common = rays[p].tight.clone();
                common.intersect_with(&rays[q].tight);
                if common.count_ones(..) + 2 < d {
                    continue;
                }
                let adjacent = rays
                    .iter()
                    .enumerate()
                    .all(|(k, r)| k == p || k == q || !common.is_subset(&r.tight));
                if !adjacent {
                    continue;
                }
                let (sp, sq) = (&values[p], &values[q]);
                let vector: IntVector =
                    rays[q].vector.iter().zip(&rays[p].vector).map(|(a, b)| sp * a - sq * b).collect();
                common.insert(i);
                fresh.push(Ray { vector: primitive(&vector), tight: common });
            }
        }

        let mut next: Vec<Ray> = Vec::with_capacity(rays.len() + fresh.len());
        for (k, mut r) in rays.into_iter().enumerate() {
            if values[k].is_negative() {
                continue;
            }
            if values[k].is_zero() {
                r.tight.insert(i);
            }
            next.push(r);
        }
        next.extend(fresh);
        rays = next;
    }
    Some(rays)
}
