//! Exact rational scalars and dense linear algebra over ℚ.
//!
//! Small matrices are eliminated fraction-free on primitive integer rows
//! (each row re-normalized by its content after every update). Larger ones
//! go through a multi-modular RREF that is certified exactly before use, so
//! both routes return the same, unique, reduced row echelon form.
//!
//! Subspaces are stored in canonical form (RREF of the row space), so two
//! [`QSubspace`] values are equal exactly when they describe the same space.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};

mod modular;

pub type Rat = BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// `"p/q"`, or `"p"` when the denominator is one.
pub fn fmt_rat(r: &Rat) -> String {
    r.to_string()
}

pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let n: BigInt = n
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("bad rational numerator in {s:?}")))?;
    let d: BigInt = d
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("bad rational denominator in {s:?}")))?;
    if d.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(Rat::new(n, d))
}

/// Dense row-major matrix of rationals.
#[derive(Clone, PartialEq, Eq)]
pub struct QMat {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl QMat {
    pub fn new(rows: usize, cols: usize, data: Vec<Rat>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                got: data.len(),
            });
        }
        Ok(QMat { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMat {
            rows,
            cols,
            data: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rat::one();
        }
        m
    }

    /// Builds a matrix from rows; all rows must have length `cols`.
    pub fn from_rows(cols: usize, rows: Vec<Vec<Rat>>) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    got: r.len(),
                });
            }
            data.extend(r);
        }
        Ok(QMat {
            rows: n,
            cols,
            data,
        })
    }

    pub fn from_i64(rows: usize, cols: usize, entries: &[i64]) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count");
        QMat {
            rows,
            cols,
            data: entries.iter().map(|&e| int(e)).collect(),
        }
    }

    pub fn from_columns(rows: usize, columns: &[Vec<Rat>]) -> Result<Self> {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            if c.len() != rows {
                return Err(Error::DimensionMismatch {
                    expected: rows,
                    got: c.len(),
                });
            }
            for (i, v) in c.iter().enumerate() {
                m[(i, j)] = v.clone();
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[Rat] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[Rat] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Rat> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn row_vectors(&self) -> Vec<Vec<Rat>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> QMat {
        let mut t = QMat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &QMat) -> Result<QMat> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                got: other.rows,
            });
        }
        let mut out = QMat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Rat]) -> Result<Vec<Rat>> {
        if self.cols != v.len() {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                got: v.len(),
            });
        }
        Ok((0..self.rows)
            .map(|i| dot(self.row(i), v))
            .collect())
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &QMat) -> Result<QMat> {
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                got: other.cols,
            });
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(QMat {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    /// Places `other` to the right of `self`.
    pub fn hstack(&self, other: &QMat) -> Result<QMat> {
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                got: other.rows,
            });
        }
        let cols = self.cols + other.cols;
        let mut data = Vec::with_capacity(self.rows * cols);
        for i in 0..self.rows {
            data.extend_from_slice(self.row(i));
            data.extend_from_slice(other.row(i));
        }
        Ok(QMat {
            rows: self.rows,
            cols,
            data,
        })
    }

    /// Square determinant via elimination.
    pub fn det(&self) -> Result<Rat> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                got: self.cols,
            });
        }
        Ok(det_rational(self.row_vectors()))
    }
}

impl Index<(usize, usize)> for QMat {
    type Output = Rat;
    fn index(&self, (i, j): (usize, usize)) -> &Rat {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for QMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rat {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for QMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "QMat {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(fmt_rat).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

pub fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    let mut acc = Rat::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc += x * y;
        }
    }
    acc
}

fn det_rational(mut rows: Vec<Vec<Rat>>) -> Rat {
    let n = rows.len();
    let mut det = Rat::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !rows[r][col].is_zero()) else {
            return Rat::zero();
        };
        if p != col {
            rows.swap(p, col);
            det = -det;
        }
        let pivot = rows[col][col].clone();
        det *= &pivot;
        for r in col + 1..n {
            if rows[r][col].is_zero() {
                continue;
            }
            let f = &rows[r][col] / &pivot;
            for j in col..n {
                let sub = &f * &rows[col][j];
                rows[r][j] -= sub;
            }
        }
    }
    det
}

/// Result of reducing a matrix to reduced row echelon form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    /// Same shape as the input; zero rows at the bottom.
    pub matrix: QMat,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

/// Below this many entries exact elimination beats the modular route.
const MODULAR_THRESHOLD: usize = 600;

pub fn rref(m: &QMat) -> Rref {
    if m.rows * m.cols >= MODULAR_THRESHOLD {
        let rows: Vec<Vec<BigInt>> = (0..m.rows).map(|i| primitive_row(m.row(i))).collect();
        if let Some((pivots, r)) = modular::rref_multimodular(&rows, m.cols) {
            let mut data = Vec::with_capacity(m.rows * m.cols);
            for row in &r {
                data.extend(row.iter().cloned());
            }
            data.resize(m.rows * m.cols, Rat::zero());
            return Rref {
                matrix: QMat {
                    rows: m.rows,
                    cols: m.cols,
                    data,
                },
                rank: pivots.len(),
                pivots,
            };
        }
    }
    rref_exact(m)
}

/// RREF by fraction-free elimination alone.
pub fn rref_exact(m: &QMat) -> Rref {
    rref_limited(m, m.cols)
}

/// RREF where pivots are only taken in the first `pivot_limit` columns.
///
/// With an augmented matrix `[A | B]` and `pivot_limit = cols(A)` this solves
/// `A X = B`: the system is consistent iff every row without a pivot is zero.
pub fn rref_limited(m: &QMat, pivot_limit: usize) -> Rref {
    let pivot_limit = pivot_limit.min(m.cols);
    let mut rows: Vec<Vec<BigInt>> = (0..m.rows).map(|i| primitive_row(m.row(i))).collect();
    let pivots = gauss_jordan(&mut rows, pivot_limit);
    let mut data = Vec::with_capacity(m.rows * m.cols);
    for (r, row) in rows.iter().enumerate() {
        if r < pivots.len() {
            let p = &row[pivots[r]];
            data.extend(row.iter().map(|e| Rat::new(e.clone(), p.clone())));
        } else {
            data.extend(row.iter().map(|e| Rat::from_integer(e.clone())));
        }
    }
    Rref {
        matrix: QMat {
            rows: m.rows,
            cols: m.cols,
            data,
        },
        rank: pivots.len(),
        pivots,
    }
}

pub fn rank(m: &QMat) -> usize {
    rref(m).rank
}

/// `{v : m·v = 0}`.
pub fn kernel(m: &QMat) -> QSubspace {
    let r = rref(m);
    let n = m.cols;
    let mut is_pivot = vec![false; n];
    for &p in &r.pivots {
        is_pivot[p] = true;
    }
    let mut basis = Vec::with_capacity(n - r.rank);
    for f in (0..n).filter(|&c| !is_pivot[c]) {
        let mut v = vec![Rat::zero(); n];
        v[f] = Rat::one();
        for (row, &p) in r.pivots.iter().enumerate() {
            let e = &r.matrix[(row, f)];
            if !e.is_zero() {
                v[p] = -e.clone();
            }
        }
        basis.push(v);
    }
    QSubspace::span(n, &basis).expect("kernel vectors have ambient length")
}

fn primitive_row(row: &[Rat]) -> Vec<BigInt> {
    let mut l = BigInt::one();
    for e in row {
        if !e.is_zero() && !e.denom().is_one() {
            l = l.lcm(e.denom());
        }
    }
    let mut out: Vec<BigInt> = row
        .iter()
        .map(|e| {
            if e.is_zero() {
                BigInt::zero()
            } else {
                e.numer() * (&l / e.denom())
            }
        })
        .collect();
    normalize_content(&mut out);
    out
}

fn normalize_content(row: &mut [BigInt]) {
    let mut g = BigInt::zero();
    for e in row.iter() {
        if !e.is_zero() {
            g = g.gcd(e);
            if g.is_one() {
                return;
            }
        }
    }
    if g.is_zero() || g.is_one() {
        return;
    }
    for e in row.iter_mut() {
        if !e.is_zero() {
            *e = &*e / &g;
        }
    }
}

/// Fraction-free Gauss–Jordan on primitive integer rows. Returns pivot
/// columns; pivot row `r` ends up at index `r`.
fn gauss_jordan(rows: &mut [Vec<BigInt>], pivot_limit: usize) -> Vec<usize> {
    let n = rows.len();
    let mut pivots = Vec::new();
    let mut pr = 0;
    for col in 0..pivot_limit {
        if pr == n {
            break;
        }
        let Some(found) = (pr..n).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(pr, found);
        if rows[pr][col].is_negative() {
            for e in rows[pr].iter_mut() {
                *e = -&*e;
            }
        }
        let pivot_row = rows[pr].clone();
        let p = &pivot_row[col];
        let eliminate = |i: usize, row: &mut Vec<BigInt>| {
            if i == pr || row[col].is_zero() {
                return;
            }
            let a = row[col].clone();
            let g = p.gcd(&a);
            let pm = p / &g;
            let am = &a / &g;
            let scale = !pm.is_one();
            for (e, q) in row.iter_mut().zip(&pivot_row) {
                if scale && !e.is_zero() {
                    *e *= &pm;
                }
                if !q.is_zero() {
                    *e -= &am * q;
                }
            }
            normalize_content(row);
        };
        if n * (rows[0].len()) > 20_000 {
            rows.par_iter_mut()
                .enumerate()
                .for_each(|(i, row)| eliminate(i, row));
        } else {
            rows.iter_mut()
                .enumerate()
                .for_each(|(i, row)| eliminate(i, row));
        }
        pivots.push(col);
        pr += 1;
    }
    pivots
}

/// A linear subspace of ℚⁿ in canonical (RREF) form.
#[derive(Clone, PartialEq, Eq)]
pub struct QSubspace {
    ambient_dim: usize,
    basis: QMat,
    pivots: Vec<usize>,
}

impl QSubspace {
    pub fn zero(ambient_dim: usize) -> Self {
        QSubspace {
            ambient_dim,
            basis: QMat::zeros(0, ambient_dim),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        QSubspace {
            ambient_dim,
            basis: QMat::identity(ambient_dim),
            pivots: (0..ambient_dim).collect(),
        }
    }

    /// Row space of the given vectors.
    pub fn span(ambient_dim: usize, vectors: &[Vec<Rat>]) -> Result<Self> {
        let m = QMat::from_rows(ambient_dim, vectors.to_vec())?;
        Ok(Self::row_space(&m))
    }

    pub fn row_space(m: &QMat) -> Self {
        let r = rref(m);
        let data = r.matrix.data[..r.rank * m.cols].to_vec();
        QSubspace {
            ambient_dim: m.cols,
            basis: QMat {
                rows: r.rank,
                cols: m.cols,
                data,
            },
            pivots: r.pivots,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.rows
    }

    pub fn basis(&self) -> &QMat {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vec<Rat>> {
        self.basis.row_vectors()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Canonical representative of `v` modulo this subspace: the unique
    /// element of `v + self` vanishing at every pivot column.
    pub fn reduce(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(v.len(), self.ambient_dim, "ambient dimension");
        let mut out = v.to_vec();
        for (r, &p) in self.pivots.iter().enumerate() {
            if out[p].is_zero() {
                continue;
            }
            let f = out[p].clone();
            for (o, b) in out.iter_mut().zip(self.basis.row(r)) {
                if !b.is_zero() {
                    *o -= &f * b;
                }
            }
        }
        out
    }

    pub fn contains(&self, v: &[Rat]) -> bool {
        self.reduce(v).iter().all(Zero::is_zero)
    }

    pub fn contains_subspace(&self, other: &QSubspace) -> bool {
        (0..other.dim()).all(|i| self.contains(other.basis.row(i)))
    }

    pub fn join(&self, other: &QSubspace) -> QSubspace {
        subspace_join(self, other)
    }

    pub fn meet(&self, other: &QSubspace) -> QSubspace {
        subspace_meet(self, other)
    }
}

impl fmt::Debug for QSubspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "QSubspace(dim {} in Q^{}) {:?}",
            self.dim(),
            self.ambient_dim,
            self.basis
        )
    }
}

pub fn subspace_join(a: &QSubspace, b: &QSubspace) -> QSubspace {
    assert_eq!(a.ambient_dim, b.ambient_dim, "ambient dimension");
    let stacked = a.basis.vstack(&b.basis).expect("same ambient");
    QSubspace::row_space(&stacked)
}

/// Intersection via the kernel of `(α, β) ↦ αA − βB`.
pub fn subspace_meet(a: &QSubspace, b: &QSubspace) -> QSubspace {
    assert_eq!(a.ambient_dim, b.ambient_dim, "ambient dimension");
    let n = a.ambient_dim;
    if a.dim() == 0 || b.dim() == 0 {
        return QSubspace::zero(n);
    }
    let stacked = a.basis.vstack(&b.basis).expect("same ambient");
    let relations = kernel(&stacked.transpose());
    let mut vectors = Vec::with_capacity(relations.dim());
    for rel in relations.basis_vectors() {
        let mut v = vec![Rat::zero(); n];
        for (i, c) in rel[..a.dim()].iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (o, e) in v.iter_mut().zip(a.basis.row(i)) {
                if !e.is_zero() {
                    *o += c * e;
                }
            }
        }
        vectors.push(v);
    }
    QSubspace::span(n, &vectors).expect("ambient length")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: usize, cols: usize, e: &[i64]) -> QMat {
        QMat::from_i64(rows, cols, e)
    }

    #[test]
    fn rref_identity_and_zero() {
        let id = QMat::identity(3);
        let r = rref(&id);
        assert_eq!(r.matrix, id);
        assert_eq!(r.rank, 3);
        assert_eq!(r.pivots, vec![0, 1, 2]);

        let z = QMat::zeros(2, 4);
        let r = rref(&z);
        assert_eq!(r.matrix, z);
        assert_eq!(r.rank, 0);
        assert!(r.pivots.is_empty());
    }

    #[test]
    fn rref_hand_example() {
        let r = rref(&m(2, 2, &[2, 4, 1, 2]));
        assert_eq!(r.matrix, m(2, 2, &[1, 2, 0, 0]));
        assert_eq!(r.rank, 1);
        assert_eq!(r.pivots, vec![0]);
    }

    #[test]
    fn rref_with_fractions() {
        let a = QMat::from_rows(
            3,
            vec![
                vec![rat(1, 2), rat(1, 3), int(0)],
                vec![int(0), rat(2, 3), int(1)],
            ],
        )
        .unwrap();
        let r = rref(&a);
        // x = -1/3·... by hand: row2 → (0,1,3/2); row1 → (1, 0, -1)
        let expect = QMat::from_rows(
            3,
            vec![vec![int(1), int(0), int(-1)], vec![int(0), int(1), rat(3, 2)]],
        )
        .unwrap();
        assert_eq!(r.matrix, expect);
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(kernel(&QMat::identity(4)).dim(), 0);
        let k = kernel(&QMat::zeros(1, 3));
        assert_eq!(k, QSubspace::full(3));
        let a = m(1, 3, &[1, 1, 0]);
        let k = kernel(&a);
        assert_eq!(k.dim(), 2);
        for v in k.basis_vectors() {
            assert!(a.mul_vec(&v).unwrap().iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn meet_join_basic() {
        let a = QSubspace::span(4, &[vec![int(1), int(0), int(0), int(0)], vec![int(0), int(1), int(0), int(0)]]).unwrap();
        let b = QSubspace::span(4, &[vec![int(0), int(0), int(1), int(0)], vec![int(0), int(0), int(0), int(1)]]).unwrap();
        assert_eq!(a.meet(&a), a);
        assert_eq!(a.join(&a), a);
        assert_eq!(a.meet(&b).dim(), 0);
        assert_eq!(a.join(&b), QSubspace::full(4));
    }

    #[test]
    fn parse_and_format() {
        assert_eq!(fmt_rat(&rat(6, -4)), "-3/2");
        assert_eq!(fmt_rat(&int(7)), "7");
        assert_eq!(parse_rat("-3/2").unwrap(), rat(-3, 2));
        assert_eq!(parse_rat("12").unwrap(), int(12));
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
    }

    #[test]
    fn determinant() {
        let a = m(3, 3, &[2, 0, 1, 1, 3, 2, 1, 1, 1]);
        // 2(3-2) - 0 + 1(1-3) = 0
        assert_eq!(a.det().unwrap(), int(0));
        let b = m(2, 2, &[1, 2, 3, 4]);
        assert_eq!(b.det().unwrap(), int(-2));
    }

    #[test]
    fn limited_rref_detects_inconsistency() {
        // x + y = 1, 2x + 2y = 3
        let aug = m(2, 3, &[1, 1, 1, 2, 2, 3]);
        let r = rref_limited(&aug, 2);
        assert_eq!(r.rank, 1);
        assert!(!r.matrix.row(1).iter().all(Zero::is_zero));
    }
}
