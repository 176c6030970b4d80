//! Checkers for inequalities and conjectures on duals of smooth Fano polytopes:
//!
//! * `a_{n-2} <= vol(P^(2)) / 3` for the Ehrhart coefficient `a_{n-2}` and the
//!   union `P^(2)` of codimension-two faces;
//! * the facet criterion: every facet `F` of `P` contains a point `x_F` of its
//!   affine hull with `<u_G, x_F> <= 1/2` for every facet `G` adjacent to `F`;
//! * Ehrhart's volume bound `vol(P) <= (n+1)^n / n!` and the weaker known bound
//!   `(n+1)^n (1 - ((n-1)/n)^n)`;
//! * the bound `I · (-K)^n <= (n+1)^{n+1}` with `I` the Fano index.

use std::collections::BTreeMap;

use num_traits::{One, Pow, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{as_string, det, to_rat, Int, IntVector, Matrix, Rat, RatVector};
use crate::lp::{self, LinearProgram, LpStatus, Sense};
use crate::measures::{
    degree, ehrhart, factorial, fano_index, interior_point_count, volume_and_barycenter, EhrhartPolynomial, FaceMeasures,
};
use crate::polyhedra::DualPair;

/// Default largest dimension for which Ehrhart-based checks run.
pub const DEFAULT_EHRHART_MAX_DIM: usize = 5;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Eq1Record {
    #[serde(with = "as_string::rat")]
    pub a_n_minus_2: Rat,
    /// Sum of relative lattice volumes of the codimension-two faces.
    #[serde(with = "as_string::rat")]
    pub codim2_volume: Rat,
    #[serde(with = "as_string::rat")]
    pub third_of_codim2_vol: Rat,
    pub holds: bool,
    pub equality: bool,
    /// Euclidean `(n-2)`-volume of the same faces, as an exact sum `Σ c·sqrt(r)`.
    pub codim2_euclidean: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FacetVerdict {
    /// Index of the facet of `P`, equal to the index of its dual vertex of `Q`.
    pub facet: usize,
    /// The facet normal `u_F`, i.e. the dual vertex of `Q`.
    #[serde(with = "as_string::int_vec")]
    pub normal: IntVector,
    pub feasible: bool,
    /// A point `x_F` when feasible.
    #[serde(with = "as_string::opt_rat_vec", default)]
    pub witness: Option<RatVector>,
    /// Farkas multipliers proving infeasibility, over the rows
    /// `<u_G, x> <= 1/2` (adjacent `G`, in order), then `<u_F, x> <= -1`, `<-u_F, x> <= 1`.
    #[serde(with = "as_string::opt_rat_vec", default)]
    pub farkas: Option<RatVector>,
    pub adjacent: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Conj11Report {
    /// The criterion presumes a centered `P`; false flags a run outside its hypothesis.
    pub barycenter_zero: bool,
    pub facets: Vec<FacetVerdict>,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EhrhartBoundRecord {
    #[serde(with = "as_string::rat")]
    pub volume: Rat,
    #[serde(with = "as_string::rat")]
    pub bound: Rat,
    pub holds: bool,
    pub equality: bool,
    /// Whether `P` has `n + 1` vertices; reported only in the equality case. This
    /// is the simplex shape of the extremal case, not a full equivalence test.
    pub simplex_shape: Option<bool>,
    #[serde(with = "as_string::rat")]
    pub known_bound: Rat,
    pub known_bound_holds: bool,
    /// Interior lattice points of `P`; 1 for reflexive `P`.
    #[serde(with = "as_string::int")]
    pub interior_points: Int,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BishopRecord {
    #[serde(with = "as_string::int")]
    pub index: Int,
    #[serde(with = "as_string::rat")]
    pub degree: Rat,
    #[serde(with = "as_string::rat")]
    pub lhs: Rat,
    #[serde(with = "as_string::int")]
    pub bound: Int,
    pub holds: bool,
    pub sharp: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjectureReport {
    pub eq1: Option<Eq1Record>,
    /// Why `eq1` was not computed.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eq1_skipped: Option<String>,
    pub conj11: Conj11Report,
    pub ehrhart_bound: EhrhartBoundRecord,
    pub bishop: BishopRecord,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConjectureOptions {
    pub ehrhart_max_dim: usize,
}

impl Default for ConjectureOptions {
    fn default() -> Self {
        ConjectureOptions { ehrhart_max_dim: DEFAULT_EHRHART_MAX_DIM }
    }
}

fn check_cap(n: usize, cap: usize) -> Result<()> {
    if n > cap {
        return Err(Error::DimensionCap { dim: n, cap });
    }
    Ok(())
}

/// `a_{n-2}` against a third of the codimension-two volume.
pub fn check_eq1(dp: &DualPair, opts: ConjectureOptions) -> Result<Eq1Record> {
    let n = dp.dim();
    if n < 2 {
        return Err(Error::Dimension(format!("needs dimension at least 2, got {n}")));
    }
    check_cap(n, opts.ehrhart_max_dim)?;
    let e = ehrhart(&dp.p);
    Ok(eq1_from(dp, &e))
}

fn eq1_from(dp: &DualPair, e: &EhrhartPolynomial) -> Eq1Record {
    let n = dp.dim();
    let p = &dp.p;
    let mut fm = FaceMeasures::new(p);
    let mut relvol = Rat::zero();
    let mut euclid: BTreeMap<Int, Rat> = BTreeMap::new();
    for r in p.faces_codim2() {
        let v = fm.relative_volume(&r.vertices, n - 2);
        let basis = fm.lattice_basis(&r.vertices);
        let gram = if basis.is_empty() {
            Int::one()
        } else {
            let b = Matrix::from_rows(basis);
            det(&b.mul(&b.transpose())).expect("square Gram matrix")
        };
        let (s, radicand) = squarefree_split(&gram);
        *euclid.entry(radicand).or_insert_with(Rat::zero) += &v * Rat::from_integer(s);
        relvol += v;
    }
    let a = e.coefficient(n - 2).clone();
    let third = &relvol / Rat::from_integer(Int::from(3));
    Eq1Record {
        holds: a <= third,
        equality: a == third,
        a_n_minus_2: a,
        codim2_volume: relvol,
        third_of_codim2_vol: third,
        codim2_euclidean: surd_string(&euclid),
    }
}

/// `g = s^2 · r` with `r` squarefree.
fn squarefree_split(g: &Int) -> (Int, Int) {
    let mut r = g.clone();
    let mut s = Int::one();
    let mut f = Int::from(2);
    while &f * &f <= r {
        let f2 = &f * &f;
        while (&r % &f2).is_zero() {
            r /= &f2;
            s *= &f;
        }
        f += 1;
    }
    (s, r)
}

fn surd_string(terms: &BTreeMap<Int, Rat>) -> String {
    let parts: Vec<String> = terms
        .iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|(r, c)| {
            let c = crate::exact::rat_string(c);
            if r.is_one() { c } else { format!("{c}*sqrt({r})") }
        })
        .collect();
    if parts.is_empty() { "0".into() } else { parts.join(" + ") }
}

/// Per-facet feasibility of `{x ∈ aff(F) : <u_G, x> <= 1/2 for G adjacent to F}`.
pub fn check_conj11(dp: &DualPair) -> Result<Conj11Report> {
    let p = &dp.p;
    let m = p.facets().len();
    let mut adjacent: Vec<Vec<usize>> = vec![Vec::new(); m];
    for r in p.faces_codim2() {
        let (i, j) = r.facets;
        adjacent[i].push(j);
        adjacent[j].push(i);
    }
    for a in &mut adjacent {
        a.sort_unstable();
        a.dedup();
    }
    let half = Rat::new(Int::one(), Int::from(2));
    let facets: Vec<FacetVerdict> = (0..m)
        .into_par_iter()
        .map(|i| -> Result<FacetVerdict> {
            let f = &p.facets()[i];
            // facets of P are <u, x> >= -1, so aff(F) is <u_F, x> = -1
            let mut lp = LinearProgram::new(p.dim(), Sense::Maximize, vec![Rat::zero(); p.dim()]);
            for &j in &adjacent[i] {
                lp = lp.le(to_rat(&p.facets()[j].normal), half.clone());
            }
            lp = lp.eq(to_rat(&f.normal), Rat::from_integer(f.rhs.clone()));
            let (feasible, witness, farkas) = match lp::solve(&lp)?.status {
                LpStatus::Optimal { point, .. } => (true, Some(point), None),
                LpStatus::Infeasible { farkas } => (false, None, Some(farkas)),
                LpStatus::Unbounded => unreachable!("zero objective is bounded"),
            };
            Ok(FacetVerdict { facet: i, normal: f.normal.clone(), feasible, witness, farkas, adjacent: adjacent[i].clone() })
        })
        .collect::<Result<_>>()?;
    let barycenter_zero = volume_and_barycenter(p).barycenter.iter().all(Zero::is_zero);
    let holds = facets.iter().all(|f| f.feasible);
    Ok(Conj11Report { barycenter_zero, facets, holds })
}

/// `(n+1)^n / n!`.
pub fn ehrhart_volume_bound(n: usize) -> Rat {
    Rat::new(Int::from(n + 1).pow(n as u32), factorial(n))
}

/// `(n+1)^n (1 - ((n-1)/n)^n)`.
pub fn known_volume_bound(n: usize) -> Rat {
    let r = Rat::new(Int::from(n) - 1, Int::from(n));
    Rat::from_integer(Int::from(n + 1).pow(n as u32)) * (Rat::one() - Pow::pow(r, n as u32))
}

pub fn check_ehrhart_bound(dp: &DualPair) -> EhrhartBoundRecord {
    ehrhart_bound_from(dp, volume_and_barycenter(&dp.p).volume)
}

fn ehrhart_bound_from(dp: &DualPair, volume: Rat) -> EhrhartBoundRecord {
    let n = dp.dim();
    let bound = ehrhart_volume_bound(n);
    let known_bound = known_volume_bound(n);
    let equality = volume == bound;
    let interior_points = interior_point_count(&dp.p);
    EhrhartBoundRecord {
        holds: volume <= bound,
        equality,
        simplex_shape: equality.then(|| dp.p.vertices().len() == n + 1),
        known_bound_holds: volume <= known_bound,
        volume,
        bound,
        known_bound,
        interior_points,
    }
}

/// `(n+1)^{n+1}`.
pub fn bishop_bound(n: usize) -> Int {
    Int::from(n + 1).pow(n as u32 + 1)
}

pub fn check_bishop(dp: &DualPair) -> BishopRecord {
    bishop_from(dp, &volume_and_barycenter(&dp.p).volume)
}

fn bishop_from(dp: &DualPair, volume: &Rat) -> BishopRecord {
    let n = dp.dim();
    let index = fano_index(&dp.p);
    let degree = degree(volume, n);
    let lhs = Rat::from_integer(index.clone()) * &degree;
    let bound = bishop_bound(n);
    let b = Rat::from_integer(bound.clone());
    BishopRecord { holds: lhs <= b, sharp: lhs == b, index, degree, lhs, bound }
}

/// All checks; Ehrhart-based ones are skipped above `opts.ehrhart_max_dim`.
/// A precomputed Ehrhart polynomial of `P` is reused when given.
pub fn check_all(
    dp: &DualPair,
    volume: &Rat,
    ehrhart_poly: Option<&EhrhartPolynomial>,
    opts: ConjectureOptions,
) -> Result<ConjectureReport> {
    let n = dp.dim();
    let (eq1, eq1_skipped) = match check_cap(n, opts.ehrhart_max_dim).and_then(|_| {
        if n < 2 {
            Err(Error::Dimension(format!("needs dimension at least 2, got {n}")))
        } else {
            Ok(())
        }
    }) {
        Ok(()) => {
            let e = match ehrhart_poly {
                Some(e) => e.clone(),
                None => ehrhart(&dp.p),
            };
            (Some(eq1_from(dp, &e)), None)
        }
        Err(e) => (None, Some(e.to_string())),
    };
    Ok(ConjectureReport {
        eq1,
        eq1_skipped,
        conj11: check_conj11(dp)?,
        ehrhart_bound: ehrhart_bound_from(dp, volume.clone()),
        bishop: bishop_from(dp, volume),
    })
}
