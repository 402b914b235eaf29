//! Exterior algebra over ℚⁿ with lex-ordered bases.
//!
//! Bases of ∧ᵏℚⁿ are the strictly increasing index tuples in lex order. In
//! particular ∧²ℚ⁵ is indexed by the 10 pairs `(0,1), (0,2), …, (3,4)`, and
//! ∧⁵(∧²ℚ⁵) = ∧⁵ℚ¹⁰ by the 252 lex 5-subsets of those pair indices.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactq::{fmt_rat, QMat, QSubspace, Rat};

/// Number of variables / dimension of V.
pub const DIM_V: usize = 5;
/// dim ∧²V.
pub const DIM_W2: usize = 10;
/// dim ∧⁵(∧²V).
pub const DIM_XI: usize = 252;

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc = 1usize;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// All k-subsets of `0..n` in lex order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::with_capacity(binomial(n, k));
    if k > n {
        return out;
    }
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        let Some(i) = (0..k).rev().find(|&i| cur[i] < n - k + i) else {
            break;
        };
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
    out
}

/// Position of a strictly increasing tuple among the lex-ordered k-subsets of `0..n`.
pub fn subset_rank(n: usize, idx: &[usize]) -> usize {
    let k = idx.len();
    let mut rank = 0;
    let mut prev = 0;
    for (i, &c) in idx.iter().enumerate() {
        for skipped in prev..c {
            rank += binomial(n - 1 - skipped, k - 1 - i);
        }
        prev = c + 1;
    }
    rank
}

/// Index of the basis bivector `e_i ∧ e_j` (i < j) in ∧²ℚ⁵.
pub fn pair_index(i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < DIM_V);
    subset_rank(DIM_V, &[i, j])
}

/// The pair `(i, j)` behind a ∧²ℚ⁵ basis index.
pub fn pair_of(index: usize) -> (usize, usize) {
    let c = &combinations(DIM_V, 2)[index];
    (c[0], c[1])
}

/// Sign of the permutation sorting `a ++ b`, or 0 if they share an index.
/// Both inputs must be strictly increasing.
pub fn merge_sign(a: &[usize], b: &[usize]) -> i32 {
    let mut inversions = 0usize;
    for &x in a {
        for &y in b {
            if x == y {
                return 0;
            }
            if y < x {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Sorted union of two disjoint increasing tuples.
pub fn merge(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut v: Vec<usize> = a.iter().chain(b).copied().collect();
    v.sort_unstable();
    v
}

/// Sorts an index tuple, returning the sign of the sorting permutation, or
/// `None` when an index repeats.
pub fn sort_with_sign(idx: &[usize]) -> Option<(Vec<usize>, i32)> {
    let mut v = idx.to_vec();
    let mut sign = 1;
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        None
    } else {
        Some((v, sign))
    }
}

/// A basis index of ∧ᵏ: strictly increasing, ordered lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExtIndex(Vec<usize>);

impl ExtIndex {
    /// Panics unless `indices` is strictly increasing.
    pub fn new(indices: Vec<usize>) -> Self {
        assert!(
            indices.windows(2).all(|w| w[0] < w[1]),
            "ExtIndex must be strictly increasing: {indices:?}"
        );
        ExtIndex(indices)
    }

    pub fn grade(&self) -> usize {
        self.0.len()
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }
}

/// A grade-k element of ∧ᵏℚⁿ, stored sparsely.
#[derive(Clone, PartialEq, Eq)]
pub struct ExtVec {
    ambient_n: usize,
    grade: usize,
    coeffs: BTreeMap<ExtIndex, Rat>,
}

impl ExtVec {
    pub fn zero(ambient_n: usize, grade: usize) -> Self {
        ExtVec {
            ambient_n,
            grade,
            coeffs: BTreeMap::new(),
        }
    }

    /// The basis element `e_{i1} ∧ … ∧ e_{ik}` (indices sorted, with sign).
    pub fn basis(ambient_n: usize, indices: &[usize]) -> Self {
        let mut v = ExtVec::zero(ambient_n, indices.len());
        if let Some((sorted, sign)) = sort_with_sign(indices) {
            assert!(sorted.iter().all(|&i| i < ambient_n), "index out of range");
            v.coeffs.insert(ExtIndex(sorted), Rat::from_integer(sign.into()));
        }
        v
    }

    /// A grade-1 vector.
    pub fn from_vector(v: &[Rat]) -> Self {
        ExtVec::from_dense(v.len(), 1, v).expect("grade-1 length matches")
    }

    /// From coordinates in the lex basis of ∧ᵏℚⁿ.
    pub fn from_dense(ambient_n: usize, grade: usize, coords: &[Rat]) -> Result<Self> {
        let basis = combinations(ambient_n, grade);
        if coords.len() != basis.len() {
            return Err(Error::DimensionMismatch {
                expected: basis.len(),
                got: coords.len(),
            });
        }
        let coeffs = basis
            .into_iter()
            .zip(coords)
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (ExtIndex(i), c.clone()))
            .collect();
        Ok(ExtVec {
            ambient_n,
            grade,
            coeffs,
        })
    }

    pub fn to_dense(&self) -> Vec<Rat> {
        let mut out = vec![Rat::zero(); binomial(self.ambient_n, self.grade)];
        for (k, c) in &self.coeffs {
            out[subset_rank(self.ambient_n, &k.0)] = c.clone();
        }
        out
    }

    pub fn ambient_n(&self) -> usize {
        self.ambient_n
    }

    pub fn grade(&self) -> usize {
        self.grade
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ExtIndex, &Rat)> {
        self.coeffs.iter()
    }

    pub fn coeff(&self, indices: &[usize]) -> Rat {
        self.coeffs
            .get(&ExtIndex(indices.to_vec()))
            .cloned()
            .unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn add_term(&mut self, idx: ExtIndex, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.coeffs.entry(idx) {
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
            Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    pub fn add(&self, other: &ExtVec) -> ExtVec {
        assert_eq!(
            (self.ambient_n, self.grade),
            (other.ambient_n, other.grade),
            "ExtVec shape"
        );
        let mut out = self.clone();
        for (k, c) in &other.coeffs {
            out.add_term(k.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, s: &Rat) -> ExtVec {
        if s.is_zero() {
            return ExtVec::zero(self.ambient_n, self.grade);
        }
        ExtVec {
            ambient_n: self.ambient_n,
            grade: self.grade,
            coeffs: self.coeffs.iter().map(|(k, c)| (k.clone(), c * s)).collect(),
        }
    }

    pub fn wedge(&self, other: &ExtVec) -> ExtVec {
        wedge(self, other)
    }

    /// Equal up to a nonzero scalar (both zero counts as equal).
    pub fn projectively_equal(&self, other: &ExtVec) -> bool {
        proportional(&self.to_dense(), &other.to_dense())
    }
}

impl fmt::Debug for ExtVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .map(|(k, c)| {
                let idx: Vec<String> = k.0.iter().map(|i| i.to_string()).collect();
                format!("{}·e{}", fmt_rat(c), idx.join(""))
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

/// Exterior product; the zero vector of the right grade when it would exceed n.
pub fn wedge(a: &ExtVec, b: &ExtVec) -> ExtVec {
    assert_eq!(a.ambient_n, b.ambient_n, "wedge of different ambients");
    let mut out = ExtVec::zero(a.ambient_n, a.grade + b.grade);
    if a.grade + b.grade > a.ambient_n {
        return out;
    }
    for (ka, ca) in &a.coeffs {
        for (kb, cb) in &b.coeffs {
            let s = merge_sign(&ka.0, &kb.0);
            if s == 0 {
                continue;
            }
            let c = ca * cb;
            out.add_term(ExtIndex(merge(&ka.0, &kb.0)), if s > 0 { c } else { -c });
        }
    }
    out
}

/// Wedge of a list of grade-1 vectors.
pub fn wedge_vectors(ambient_n: usize, vectors: &[Vec<Rat>]) -> ExtVec {
    let mut acc = ExtVec::zero(ambient_n, 0);
    acc.coeffs.insert(ExtIndex(Vec::new()), Rat::one());
    for v in vectors {
        acc = wedge(&acc, &ExtVec::from_vector(v));
    }
    acc
}

/// Coefficient of `e0∧e1∧e2∧e3∧e4` in a grade-5 element of ∧⁵ℚ⁵.
pub fn vol5(a: &ExtVec) -> Result<Rat> {
    if a.ambient_n != DIM_V {
        return Err(Error::DimensionMismatch {
            expected: DIM_V,
            got: a.ambient_n,
        });
    }
    if a.grade != DIM_V {
        return Err(Error::GradeMismatch {
            expected: DIM_V,
            got: a.grade,
        });
    }
    Ok(a.coeff(&[0, 1, 2, 3, 4]))
}

/// Plücker vector `u ∧ v` of the plane spanned by two vectors of ℚ⁵.
pub fn plucker_of_plane(u: &[Rat], v: &[Rat]) -> Result<ExtVec> {
    if u.len() != DIM_V || v.len() != DIM_V {
        return Err(Error::DimensionMismatch {
            expected: DIM_V,
            got: u.len().max(v.len()),
        });
    }
    let w = wedge(&ExtVec::from_vector(u), &ExtVec::from_vector(v));
    if w.is_zero() {
        let rank = usize::from(u.iter().any(|x| !x.is_zero()) || v.iter().any(|x| !x.is_zero()));
        return Err(Error::DependentVectors { rank });
    }
    Ok(w)
}

/// A bivector is decomposable iff `ω ∧ ω = 0`.
pub fn is_decomposable(omega: &ExtVec) -> bool {
    assert_eq!(omega.grade, 2, "is_decomposable expects a bivector");
    wedge(omega, omega).is_zero()
}

/// Matrix of ∧ᵏ(f) in lex bases: entry (I, J) is the minor on rows I, columns J.
pub fn induced_wedge_map(f: &QMat, k: usize) -> QMat {
    let row_sets = combinations(f.rows(), k);
    let col_sets = combinations(f.cols(), k);
    let mut out = QMat::zeros(row_sets.len(), col_sets.len());
    for (a, rs) in row_sets.iter().enumerate() {
        for (b, cs) in col_sets.iter().enumerate() {
            out[(a, b)] = minor(f, rs, cs);
        }
    }
    out
}

pub fn minor(f: &QMat, rows: &[usize], cols: &[usize]) -> Rat {
    let k = rows.len();
    if k == 0 {
        return Rat::one();
    }
    let entries: Vec<Rat> = rows
        .iter()
        .flat_map(|&r| cols.iter().map(move |&c| f[(r, c)].clone()))
        .collect();
    QMat::new(k, k, entries)
        .and_then(|m| m.det())
        .expect("square minor")
}

/// Index of the first nonzero coordinate.
pub fn chart_index(x: &[Rat]) -> Result<usize> {
    x.iter().position(|c| !c.is_zero()).ok_or(Error::ZeroVector)
}

/// The 4×5 matrix of the projection `p_x : ℚ⁵ → ℚ⁴` along `x`, dropping the
/// first nonzero coordinate `c` of `x`: `e_j ↦ ē_j` for `j ≠ c` and
/// `e_c ↦ −(1/x_c)·(x_j)_{j≠c}`.
pub fn projection_along(x: &[Rat]) -> Result<QMat> {
    if x.len() != DIM_V {
        return Err(Error::DimensionMismatch {
            expected: DIM_V,
            got: x.len(),
        });
    }
    let c = chart_index(x)?;
    let inv = Rat::one() / &x[c];
    let mut p = QMat::zeros(DIM_V - 1, DIM_V);
    for (row, j) in (0..DIM_V).filter(|&j| j != c).enumerate() {
        p[(row, j)] = Rat::one();
        p[(row, c)] = -(&x[j] * &inv);
    }
    Ok(p)
}

/// The 6×10 matrix of ∧²(p_x) : ∧²ℚ⁵ → ∧²ℚ⁴. Its kernel is `x ∧ ℚ⁵`.
pub fn quotient_map_at(x: &[Rat]) -> Result<QMat> {
    Ok(induced_wedge_map(&projection_along(x)?, 2))
}

/// `a = c·b` for some nonzero `c` (two zero vectors count as proportional).
pub fn proportional(a: &[Rat], b: &[Rat]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let Some(i) = a.iter().position(|c| !c.is_zero()) else {
        return b.iter().all(Zero::is_zero);
    };
    if b[i].is_zero() {
        return false;
    }
    let ratio = &a[i] / &b[i];
    a.iter().zip(b).all(|(x, y)| *x == &ratio * y)
}

/// A 5-dimensional subspace W ⊂ ∧²ℚ⁵ with its Plücker vector ∧⁵W ∈ ∧⁵ℚ¹⁰.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WSubspace {
    space: QSubspace,
    plucker: ExtVec,
}

impl WSubspace {
    /// Span of vectors in ∧²ℚ⁵ ≅ ℚ¹⁰; fails unless the span is 5-dimensional.
    pub fn from_vectors(vectors: &[Vec<Rat>]) -> Result<Self> {
        let space = QSubspace::span(DIM_W2, vectors)?;
        Self::from_space(space)
    }

    pub fn from_space(space: QSubspace) -> Result<Self> {
        if space.ambient_dim() != DIM_W2 {
            return Err(Error::DimensionMismatch {
                expected: DIM_W2,
                got: space.ambient_dim(),
            });
        }
        if space.dim() != 5 {
            return Err(Error::DimensionMismatch {
                expected: 5,
                got: space.dim(),
            });
        }
        let plucker = wedge_vectors(DIM_W2, &space.basis_vectors());
        Ok(WSubspace { space, plucker })
    }

    pub fn space(&self) -> &QSubspace {
        &self.space
    }

    /// The five RREF basis rows.
    pub fn generators(&self) -> Vec<Vec<Rat>> {
        self.space.basis_vectors()
    }

    pub fn plucker(&self) -> &ExtVec {
        &self.plucker
    }

    pub fn contains(&self, w: &[Rat]) -> bool {
        self.space.contains(w)
    }
}
