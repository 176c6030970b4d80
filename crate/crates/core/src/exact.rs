//! Exact scalars, vectors and matrices over `BigInt` / `BigRational`, with
//! fraction-free integer elimination and integer normal forms.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Int = BigInt;
pub type Rat = BigRational;
pub type IntVector = Vec<BigInt>;
pub type RatVector = Vec<BigRational>;

pub fn int(v: i64) -> Int {
    BigInt::from(v)
}

pub fn rat(n: i64, d: i64) -> Rat {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int_vec(v: &[i64]) -> IntVector {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

pub fn to_rat(v: &[Int]) -> RatVector {
    v.iter().map(|x| Rat::from_integer(x.clone())).collect()
}

pub fn dot<T>(a: &[T], b: &[T]) -> T
where
    T: Zero + Clone,
    for<'x> &'x T: std::ops::Mul<&'x T, Output = T>,
{
    a.iter().zip(b).fold(T::zero(), |acc, (x, y)| acc + x * y)
}

/// Gcd of all entries (0 for the zero vector).
pub fn content(v: &[Int]) -> Int {
    v.iter().fold(Int::zero(), |g, x| g.gcd(x))
}

/// Divides out the content. The zero vector is returned unchanged.
pub fn primitive(v: &[Int]) -> IntVector {
    let g = content(v);
    if g.is_zero() || g.is_one() {
        return v.to_vec();
    }
    v.iter().map(|x| x / &g).collect()
}

/// Smallest positive integer multiple of `v` with content 1.
pub fn clear_denominators(v: &[Rat]) -> IntVector {
    let l = v.iter().fold(Int::one(), |l, x| l.lcm(x.denom()));
    let scaled: IntVector = v.iter().map(|x| (x * Rat::from_integer(l.clone())).to_integer()).collect();
    primitive(&scaled)
}

/// Integer vector of a rational vector, if every entry is integral.
pub fn to_integral(v: &[Rat]) -> Option<IntVector> {
    v.iter().map(|x| x.is_integer().then(|| x.to_integer())).collect()
}

/// Canonical string form: `p/q` in lowest terms, or the integer.
pub fn rat_string(x: &Rat) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn parse_rat(s: &str) -> Option<Rat> {
    match s.split_once('/') {
        Some((n, d)) => {
            let d: Int = d.parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Rat::new(n.parse().ok()?, d))
        }
        None => Some(Rat::from_integer(s.parse().ok()?)),
    }
}

/// Dense row-major matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: Vec<Vec<T>>,
    cols: usize,
}

pub type IntMatrix = Matrix<Int>;
pub type RatMatrix = Matrix<Rat>;

impl<T: fmt::Display> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for r in &self.rows {
            let cells: Vec<String> = r.iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        write!(f, "]")
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.rows[i][j]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.rows[i][j]
    }
}

impl<T: Clone + Zero + One> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows: vec![vec![T::zero(); cols]; rows], cols }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.rows[i][i] = T::one();
        }
        m
    }
}

impl<T: Clone> Matrix<T> {
    /// Builds a matrix from rows. Panics if rows are ragged.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix rows");
        Matrix { rows, cols }
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[Vec<T>]) -> Self {
        let n = cols.first().map_or(0, Vec::len);
        let rows = (0..n).map(|i| cols.iter().map(|c| c[i].clone()).collect()).collect();
        Matrix { rows, cols: cols.len() }
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows.len() == self.cols
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.rows[i]
    }

    pub fn rows(&self) -> &[Vec<T>] {
        &self.rows
    }

    pub fn into_rows(self) -> Vec<Vec<T>> {
        self.rows
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        self.rows.iter().map(|r| r[j].clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_columns(&self.rows)
    }

    pub fn map<U, F: Fn(&T) -> U>(&self, f: F) -> Matrix<U> {
        Matrix { rows: self.rows.iter().map(|r| r.iter().map(&f).collect()).collect(), cols: self.cols }
    }
}

impl<T> Matrix<T>
where
    T: Clone + Zero,
    for<'x> &'x T: std::ops::Mul<&'x T, Output = T>,
{
    pub fn mul(&self, other: &Matrix<T>) -> Matrix<T> {
        assert_eq!(self.cols, other.nrows(), "matrix product shape mismatch");
        let rows = self
            .rows
            .iter()
            .map(|r| {
                (0..other.cols)
                    .map(|j| r.iter().zip(&other.rows).fold(T::zero(), |acc, (a, orow)| acc + a * &orow[j]))
                    .collect()
            })
            .collect();
        Matrix { rows, cols: other.cols }
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape mismatch");
        self.rows.iter().map(|r| dot(r, v)).collect()
    }
}

impl IntMatrix {
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Matrix::from_rows(rows.iter().map(|r| int_vec(r)).collect())
    }

    pub fn to_rat(&self) -> RatMatrix {
        self.map(|x| Rat::from_integer(x.clone()))
    }
}

/// Determinant by fraction-free (Bareiss) elimination.
pub fn det(m: &IntMatrix) -> Result<Int> {
    if !m.is_square() {
        return Err(Error::Dimension(format!("determinant of a {}x{} matrix", m.nrows(), m.ncols())));
    }
    let n = m.nrows();
    if n == 0 {
        return Ok(Int::one());
    }
    let mut a = m.rows.clone();
    let mut negate = false;
    let mut prev = Int::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    negate = !negate;
                }
                None => return Ok(Int::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    Ok(if negate { -d } else { d })
}

/// Rank by fraction-free elimination.
pub fn rank(m: &IntMatrix) -> usize {
    let mut a = m.rows.clone();
    let (rows, cols) = (a.len(), m.cols);
    let mut r = 0;
    let mut prev = Int::one();
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        for i in r + 1..rows {
            for j in c + 1..cols {
                let v = (&a[i][j] * &a[r][c] - &a[i][c] * &a[r][j]) / &prev;
                a[i][j] = v;
            }
            a[i][c] = Int::zero();
        }
        prev = a[r][c].clone();
        r += 1;
    }
    r
}

/// Reduced row echelon form over the rationals, pivoting only in the first
/// `cols` columns; returns pivot columns.
fn rref(a: &mut [Vec<Rat>], cols: usize) -> Vec<usize> {
    let rows = a.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        let inv = a[r][c].recip();
        for x in a[r].iter_mut().skip(c) {
            *x = &*x * &inv;
        }
        for i in 0..rows {
            if i == r || a[i][c].is_zero() {
                continue;
            }
            let f = a[i][c].clone();
            for j in c..a[i].len() {
                let v = &a[i][j] - &f * &a[r][j];
                a[i][j] = v;
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Unique solution of the square system `a x = b`.
pub fn solve_exact(a: &RatMatrix, b: &[Rat]) -> Result<RatVector> {
    if !a.is_square() || a.nrows() != b.len() {
        return Err(Error::Dimension(format!(
            "system {}x{} with right-hand side of length {}",
            a.nrows(),
            a.ncols(),
            b.len()
        )));
    }
    let n = a.nrows();
    let mut aug: Vec<Vec<Rat>> = a
        .rows
        .iter()
        .zip(b)
        .map(|(r, bi)| {
            let mut r = r.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug, n);
    if pivots.len() < n {
        return Err(Error::Singular);
    }
    Ok(aug.into_iter().map(|mut r| r.pop().unwrap()).collect())
}

pub fn inverse(a: &RatMatrix) -> Result<RatMatrix> {
    if !a.is_square() {
        return Err(Error::Dimension("inverse of a non-square matrix".into()));
    }
    let n = a.nrows();
    let mut aug: Vec<Vec<Rat>> = a
        .rows
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut r = r.clone();
            r.extend((0..n).map(|j| if i == j { Rat::one() } else { Rat::zero() }));
            r
        })
        .collect();
    if rref(&mut aug, n).len() < n {
        return Err(Error::Singular);
    }
    Ok(Matrix::from_rows(aug.into_iter().map(|r| r[n..].to_vec()).collect()))
}

/// Inverse of an integer matrix with determinant ±1.
pub fn unimodular_inverse(a: &IntMatrix) -> Result<IntMatrix> {
    let inv = inverse(&a.to_rat())?;
    let rows: Option<Vec<IntVector>> = inv.rows.iter().map(|r| to_integral(r)).collect();
    rows.map(Matrix::from_rows).ok_or(Error::Singular)
}

/// Right kernel over the rationals, as primitive integer vectors.
///
/// Empty iff `m` has full column rank.
pub fn kernel_basis(m: &IntMatrix) -> Vec<IntVector> {
    kernel_basis_rat(&m.to_rat())
}

pub fn kernel_basis_rat(m: &RatMatrix) -> Vec<IntVector> {
    let cols = m.ncols();
    let mut a = m.rows.clone();
    let pivots = rref(&mut a, cols);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rat::zero(); cols];
            v[f] = Rat::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -a[r][f].clone();
            }
            clear_denominators(&v)
        })
        .collect()
}

/// `transform · m = hermite`, with `hermite` in row Hermite normal form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HermiteForm {
    pub hermite: IntMatrix,
    pub transform: IntMatrix,
    pub rank: usize,
}

/// `left · m · right = smith`, with `smith` diagonal and each entry dividing the next.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithForm {
    pub smith: IntMatrix,
    pub left: IntMatrix,
    pub right: IntMatrix,
    pub rank: usize,
}

impl SmithForm {
    pub fn invariant_factors(&self) -> Vec<Int> {
        (0..self.rank).map(|i| self.smith[(i, i)].clone()).collect()
    }
}

fn row_axpy(rows: &mut [Vec<Int>], target: usize, source: usize, q: &Int) {
    if q.is_zero() {
        return;
    }
    let src = rows[source].clone();
    for (t, s) in rows[target].iter_mut().zip(&src) {
        *t -= q * s;
    }
}

fn col_axpy(rows: &mut [Vec<Int>], target: usize, source: usize, q: &Int) {
    if q.is_zero() {
        return;
    }
    for r in rows.iter_mut() {
        let s = r[source].clone();
        r[target] -= q * s;
    }
}

fn swap_cols(rows: &mut [Vec<Int>], a: usize, b: usize) {
    for r in rows.iter_mut() {
        r.swap(a, b);
    }
}

pub fn hermite_normal_form(m: &IntMatrix) -> HermiteForm {
    let (rows, cols) = (m.nrows(), m.ncols());
    let mut h = m.rows.clone();
    let mut u = IntMatrix::identity(rows).rows;
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        loop {
            let best = (r..rows).filter(|&i| !h[i][c].is_zero()).min_by_key(|&i| h[i][c].abs());
            let Some(p) = best else { break };
            h.swap(r, p);
            u.swap(r, p);
            let mut clean = true;
            for i in r + 1..rows {
                let q = h[i][c].div_floor(&h[r][c]);
                row_axpy(&mut h, i, r, &q);
                row_axpy(&mut u, i, r, &q);
                clean &= h[i][c].is_zero();
            }
            if clean {
                break;
            }
        }
        if h[r][c].is_zero() {
            continue;
        }
        if h[r][c].is_negative() {
            for x in h[r].iter_mut().chain(u[r].iter_mut()) {
                *x = -&*x;
            }
        }
        for i in 0..r {
            let q = h[i][c].div_floor(&h[r][c]);
            row_axpy(&mut h, i, r, &q);
            row_axpy(&mut u, i, r, &q);
        }
        r += 1;
    }
    HermiteForm { hermite: Matrix { rows: h, cols }, transform: Matrix { rows: u, cols: rows }, rank: r }
}

pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let (rows, cols) = (m.nrows(), m.ncols());
    let mut s = m.rows.clone();
    let mut u = IntMatrix::identity(rows).rows;
    let mut v = IntMatrix::identity(cols).rows;
    let mut rank = 0;
    for t in 0..rows.min(cols) {
        loop {
            let pivot = (t..rows)
                .flat_map(|i| (t..cols).map(move |j| (i, j)))
                .filter(|&(i, j)| !s[i][j].is_zero())
                .min_by_key(|&(i, j)| s[i][j].abs());
            let Some((pi, pj)) = pivot else {
                return SmithForm {
                    smith: Matrix { rows: s, cols },
                    left: Matrix { rows: u, cols: rows },
                    right: Matrix { rows: v, cols },
                    rank,
                };
            };
            s.swap(t, pi);
            u.swap(t, pi);
            swap_cols(&mut s, t, pj);
            swap_cols(&mut v, t, pj);
            let mut clean = true;
            for i in t + 1..rows {
                let q = s[i][t].div_floor(&s[t][t]);
                row_axpy(&mut s, i, t, &q);
                row_axpy(&mut u, i, t, &q);
                clean &= s[i][t].is_zero();
            }
            for j in t + 1..cols {
                let q = s[t][j].div_floor(&s[t][t]);
                col_axpy(&mut s, j, t, &q);
                col_axpy(&mut v, j, t, &q);
                clean &= s[t][j].is_zero();
            }
            if !clean {
                continue;
            }
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !s[i][j].is_multiple_of(&s[t][t])));
            match bad {
                Some(i) => {
                    let minus_one = -Int::one();
                    row_axpy(&mut s, t, i, &minus_one);
                    row_axpy(&mut u, t, i, &minus_one);
                }
                None => break,
            }
        }
        if s[t][t].is_negative() {
            for x in s[t].iter_mut().chain(u[t].iter_mut()) {
                *x = -&*x;
            }
        }
        rank += 1;
    }
    SmithForm {
        smith: Matrix { rows: s, cols },
        left: Matrix { rows: u, cols: rows },
        right: Matrix { rows: v, cols },
        rank,
    }
}

pub fn hermite_smith(m: &IntMatrix) -> (HermiteForm, SmithForm) {
    (hermite_normal_form(m), smith_normal_form(m))
}

/// Serde adapters writing exact numbers as strings (`"p/q"`, `"-3"`, `"0"`).
pub mod as_string {
    use serde::de::Error as _;
    use serde::{Deserialize, Deserializer, Serializer};

    use super::{parse_rat, rat_string, Int, Rat};

    pub mod rat {
        use super::*;

        pub fn serialize<S: Serializer>(x: &Rat, s: S) -> Result<S::Ok, S::Error> {
            s.serialize_str(&rat_string(x))
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rat, D::Error> {
            let s = String::deserialize(d)?;
            parse_rat(&s).ok_or_else(|| D::Error::custom(format!("`{s}` is not a rational")))
        }
    }

    pub mod rat_vec {
        use super::*;

        pub fn serialize<S: Serializer>(v: &[Rat], s: S) -> Result<S::Ok, S::Error> {
            s.collect_seq(v.iter().map(rat_string))
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rat>, D::Error> {
            Vec::<String>::deserialize(d)?
                .iter()
                .map(|s| parse_rat(s).ok_or_else(|| D::Error::custom(format!("`{s}` is not a rational"))))
                .collect()
        }
    }

    pub mod int {
        use super::*;

        pub fn serialize<S: Serializer>(x: &Int, s: S) -> Result<S::Ok, S::Error> {
            s.serialize_str(&x.to_string())
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Int, D::Error> {
            let s = String::deserialize(d)?;
            s.parse().map_err(|_| D::Error::custom(format!("`{s}` is not an integer")))
        }
    }

    pub mod int_vec {
        use super::*;

        pub fn serialize<S: Serializer>(v: &[Int], s: S) -> Result<S::Ok, S::Error> {
            s.collect_seq(v.iter().map(ToString::to_string))
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Int>, D::Error> {
            Vec::<String>::deserialize(d)?
                .iter()
                .map(|s| s.parse().map_err(|_| D::Error::custom(format!("`{s}` is not an integer"))))
                .collect()
        }
    }

    pub mod int_vecs {
        use super::*;

        pub fn serialize<S: Serializer>(v: &[Vec<Int>], s: S) -> Result<S::Ok, S::Error> {
            s.collect_seq(v.iter().map(|r| r.iter().map(ToString::to_string).collect::<Vec<_>>()))
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<Int>>, D::Error> {
            Vec::<Vec<String>>::deserialize(d)?
                .iter()
                .map(|r| r.iter().map(|s| s.parse().map_err(|_| D::Error::custom(format!("`{s}` is not an integer")))).collect())
                .collect()
        }
    }

    pub mod opt_int_vec {
        use super::*;

        pub fn serialize<S: Serializer>(v: &Option<Vec<Int>>, s: S) -> Result<S::Ok, S::Error> {
            match v {
                Some(v) => s.collect_seq(v.iter().map(ToString::to_string)),
                None => s.serialize_none(),
            }
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Vec<Int>>, D::Error> {
            Option::<Vec<String>>::deserialize(d)?
                .map(|v| v.iter().map(|s| s.parse().map_err(|_| D::Error::custom(format!("`{s}` is not an integer")))).collect())
                .transpose()
        }
    }

    pub mod opt_rat_vec {
        use super::*;

        pub fn serialize<S: Serializer>(v: &Option<Vec<Rat>>, s: S) -> Result<S::Ok, S::Error> {
            match v {
                Some(v) => s.collect_seq(v.iter().map(rat_string)),
                None => s.serialize_none(),
            }
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Vec<Rat>>, D::Error> {
            Option::<Vec<String>>::deserialize(d)?
                .map(|v| {
                    v.iter().map(|s| parse_rat(s).ok_or_else(|| D::Error::custom(format!("`{s}` is not a rational")))).collect()
                })
                .transpose()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn cofactor_det(m: &[Vec<i64>]) -> i64 {
        let n = m.len();
        if n == 0 {
            return 1;
        }
        (0..n)
            .map(|j| {
                let minor: Vec<Vec<i64>> =
                    m[1..].iter().map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &x)| x).collect()).collect();
                let sign = if j % 2 == 0 { 1 } else { -1 };
                sign * m[0][j] * cofactor_det(&minor)
            })
            .sum()
    }

    fn to_int(m: &[Vec<i64>]) -> IntMatrix {
        Matrix::from_rows(m.iter().map(|r| int_vec(r)).collect())
    }

    #[test]
    fn det_small_cases() {
        assert_eq!(det(&IntMatrix::identity(7)).unwrap(), int(1));
        assert_eq!(det(&IntMatrix::from_i64(&[&[2, 1], &[1, 1]])).unwrap(), int(1));
        assert_eq!(det(&IntMatrix::from_i64(&[&[0, 1], &[1, 0]])).unwrap(), int(-1));
        assert!(matches!(det(&IntMatrix::from_i64(&[&[1, 2, 3]])), Err(Error::Dimension(_))));
    }

    #[test]
    fn solve_dual_vertex_of_triangle() {
        let a = IntMatrix::from_i64(&[&[1, 0], &[0, 1]]).to_rat();
        let y = solve_exact(&a, &[rat(-1, 1), rat(-1, 1)]).unwrap();
        assert_eq!(y, vec![rat(-1, 1), rat(-1, 1)]);
        let sing = IntMatrix::from_i64(&[&[1, 2], &[2, 4]]).to_rat();
        assert_eq!(solve_exact(&sing, &[rat(1, 1), rat(0, 1)]), Err(Error::Singular));
    }

    #[test]
    fn kernel_trivial_cases() {
        assert_eq!(kernel_basis(&IntMatrix::zeros(3, 3)).len(), 3);
        assert!(kernel_basis(&IntMatrix::identity(4)).is_empty());
        let k = kernel_basis(&IntMatrix::from_i64(&[&[2, 4, 6]]));
        assert_eq!(k.len(), 2);
        assert!(k.iter().all(|v| content(v) == int(1)));
    }

    #[test]
    fn smith_of_diagonal() {
        let snf = smith_normal_form(&IntMatrix::from_i64(&[&[2, 0], &[0, 3]]));
        assert_eq!(snf.invariant_factors(), vec![int(1), int(6)]);
        let id = smith_normal_form(&IntMatrix::identity(3));
        assert_eq!(id.smith, IntMatrix::identity(3));
    }

    #[test]
    fn smith_of_rank_two_sublattice() {
        // rows generate {(x, y, 0) : x + y even}, index 2 inside the plane z = 0
        let m = IntMatrix::from_i64(&[&[1, 1, 0], &[1, -1, 0], &[2, 0, 0]]);
        let snf = smith_normal_form(&m);
        assert_eq!(snf.rank, 2);
        assert_eq!(snf.invariant_factors(), vec![int(1), int(2)]);
        assert_eq!(snf.left.mul(&m).mul(&snf.right), snf.smith);
    }

    #[test]
    fn hermite_is_reduced() {
        let m = IntMatrix::from_i64(&[&[2, 3, 5], &[4, 1, 0], &[6, 4, 5]]);
        let h = hermite_normal_form(&m);
        assert_eq!(h.rank, 2);
        assert_eq!(h.transform.mul(&m), h.hermite);
        assert!(det(&h.transform).unwrap().abs().is_one());
        assert!(h.hermite.row(2).iter().all(Zero::is_zero));
    }

    fn small_matrix(max_dim: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
        (1..=max_dim).prop_flat_map(|n| prop::collection::vec(prop::collection::vec(-4i64..=4, n), n))
    }

    fn rect_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
        (1usize..=4, 1usize..=4).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-5i64..=5, c), r))
    }

    proptest! {
        #[test]
        fn bareiss_matches_cofactor(m in small_matrix(4)) {
            prop_assert_eq!(det(&to_int(&m)).unwrap(), int(cofactor_det(&m)));
        }

        #[test]
        fn solve_substitutes_back(m in small_matrix(4), b in prop::collection::vec(-6i64..=6, 4)) {
            let a = to_int(&m).to_rat();
            let b: RatVector = b[..m.len()].iter().map(|&x| rat(x, 1)).collect();
            if let Ok(x) = solve_exact(&a, &b) {
                prop_assert_eq!(a.mul_vec(&x), b);
            } else {
                prop_assert!(det(&to_int(&m)).unwrap().is_zero());
            }
        }

        #[test]
        fn smith_transforms_are_unimodular(m in rect_matrix()) {
            let m = to_int(&m);
            let s = smith_normal_form(&m);
            prop_assert!(det(&s.left).unwrap().abs().is_one());
            prop_assert!(det(&s.right).unwrap().abs().is_one());
            prop_assert_eq!(&s.left.mul(&m).mul(&s.right), &s.smith);
            for i in 0..s.smith.nrows() {
                for j in 0..s.smith.ncols() {
                    if i != j { prop_assert!(s.smith[(i, j)].is_zero()); }
                }
            }
            let f = s.invariant_factors();
            for w in f.windows(2) { prop_assert!(w[1].is_multiple_of(&w[0])); }
            prop_assert_eq!(s.rank, rank(&m));
        }

        #[test]
        fn kernel_annihilates(m in rect_matrix()) {
            let m = to_int(&m);
            let k = kernel_basis(&m);
            prop_assert_eq!(k.len(), m.ncols() - rank(&m));
            for v in &k {
                prop_assert!(m.mul_vec(v).iter().all(Zero::is_zero));
            }
        }
    }
}
