use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactq::Rat;
use crate::exterior::{binomial, combinations, merge, merge_sign, sort_with_sign, ExtIndex, ExtVec, DIM_V};

use super::poly::{monomials, Poly};

/// A multivector field Σ_I m^I(x) ∂_I on ℚ⁵ whose coefficients are
/// homogeneous of one common degree.
#[derive(Clone, PartialEq, Eq)]
pub struct PolyMultivector {
    grade: usize,
    degree: usize,
    components: BTreeMap<ExtIndex, Poly>,
}

/// Dimension of the coefficient space of grade-g, degree-d fields.
pub fn coeff_dim(grade: usize, degree: usize) -> usize {
    binomial(DIM_V, grade) * monomials(degree).len()
}

impl PolyMultivector {
    pub fn zero(grade: usize, degree: usize) -> Self {
        PolyMultivector {
            grade,
            degree,
            components: BTreeMap::new(),
        }
    }

    /// Builds a field from `(indices, coefficient)` pairs. Indices need not be
    /// sorted; repeated indices contribute nothing.
    pub fn from_components(
        grade: usize,
        degree: usize,
        components: impl IntoIterator<Item = (Vec<usize>, Poly)>,
    ) -> Result<Self> {
        let mut m = PolyMultivector::zero(grade, degree);
        for (idx, poly) in components {
            if idx.len() != grade {
                return Err(Error::GradeMismatch {
                    expected: grade,
                    got: idx.len(),
                });
            }
            if idx.iter().any(|&i| i >= DIM_V) {
                return Err(Error::DimensionMismatch {
                    expected: DIM_V,
                    got: idx.iter().copied().max().unwrap_or(0) + 1,
                });
            }
            if let Some(d) = poly.degree() {
                if d != degree || !poly.is_homogeneous() {
                    return Err(Error::DegreeMismatch {
                        expected: degree,
                        got: d,
                    });
                }
            }
            let Some((sorted, sign)) = sort_with_sign(&idx) else {
                continue;
            };
            let poly = if sign < 0 { poly.neg() } else { poly };
            m.add_component(ExtIndex::new(sorted), &poly);
        }
        Ok(m)
    }

    /// The Euler field E = Σ xᵢ ∂ᵢ.
    pub fn euler() -> Self {
        PolyMultivector::from_components(1, 1, (0..DIM_V).map(|i| (vec![i], Poly::var(i))))
            .expect("well-formed")
    }

    /// Linear vector field x ↦ A·x, i.e. Σ_i (Σ_j A_ij x_j) ∂_i.
    pub fn linear_vector_field(a: &[Vec<Rat>]) -> Self {
        PolyMultivector::from_components(
            1,
            1,
            a.iter().enumerate().map(|(i, row)| (vec![i], Poly::linear(row))),
        )
        .expect("well-formed")
    }

    /// A constant multivector field.
    pub fn constant(v: &ExtVec) -> Self {
        assert_eq!(v.ambient_n(), DIM_V, "constant field over Q^5");
        let mut m = PolyMultivector::zero(v.grade(), 0);
        for (k, c) in v.terms() {
            m.add_component(k.clone(), &Poly::constant(c.clone()));
        }
        m
    }

    fn add_component(&mut self, idx: ExtIndex, poly: &Poly) {
        if poly.is_zero() {
            return;
        }
        let slot = self.components.entry(idx.clone()).or_default();
        slot.add_assign_ref(poly);
        if slot.is_zero() {
            self.components.remove(&idx);
        }
    }

    pub fn grade(&self) -> usize {
        self.grade
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn components(&self) -> impl Iterator<Item = (&ExtIndex, &Poly)> {
        self.components.iter()
    }

    /// Coefficient m^I for an arbitrary index tuple, extended antisymmetrically.
    pub fn component(&self, idx: &[usize]) -> Poly {
        match sort_with_sign(idx) {
            None => Poly::zero(),
            Some((sorted, sign)) => match self.components.get(&ExtIndex::new(sorted)) {
                None => Poly::zero(),
                Some(p) if sign > 0 => p.clone(),
                Some(p) => p.neg(),
            },
        }
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    fn check_shape(&self, other: &Self) {
        assert_eq!(
            (self.grade, self.degree),
            (other.grade, other.degree),
            "multivector shape"
        );
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_shape(other);
        let mut out = self.clone();
        for (k, p) in &other.components {
            out.add_component(k.clone(), p);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Rat::one()))
    }

    pub fn scale(&self, s: &Rat) -> Self {
        let mut out = PolyMultivector::zero(self.grade, self.degree);
        if s.is_zero() {
            return out;
        }
        for (k, p) in &self.components {
            out.components.insert(k.clone(), p.scale(s));
        }
        out
    }

    /// Value at a point, as an element of ∧ᵍℚ⁵.
    pub fn eval(&self, x: &[Rat]) -> ExtVec {
        let basis = combinations(DIM_V, self.grade);
        let coords: Vec<Rat> = basis
            .iter()
            .map(|idx| {
                self.components
                    .get(&ExtIndex::new(idx.clone()))
                    .map(|p| p.eval(x))
                    .unwrap_or_else(Rat::zero)
            })
            .collect();
        ExtVec::from_dense(DIM_V, self.grade, &coords).expect("dense length")
    }

    /// Flattened coefficients: (ExtIndex lex) × (monomial lex).
    pub fn to_coeff_vec(&self) -> Vec<Rat> {
        let nm = monomials(self.degree).len();
        let mut out = vec![Rat::zero(); coeff_dim(self.grade, self.degree)];
        for (k, p) in &self.components {
            let base = crate::exterior::subset_rank(DIM_V, k.indices()) * nm;
            for (j, c) in p.to_coeff_vec(self.degree).into_iter().enumerate() {
                out[base + j] = c;
            }
        }
        out
    }

    pub fn from_coeff_vec(grade: usize, degree: usize, coeffs: &[Rat]) -> Result<Self> {
        let expected = coeff_dim(grade, degree);
        if coeffs.len() != expected {
            return Err(Error::DimensionMismatch {
                expected,
                got: coeffs.len(),
            });
        }
        let nm = monomials(degree).len();
        let mut m = PolyMultivector::zero(grade, degree);
        for (r, idx) in combinations(DIM_V, grade).into_iter().enumerate() {
            let p = Poly::from_coeff_vec(degree, &coeffs[r * nm..(r + 1) * nm]);
            m.add_component(ExtIndex::new(idx), &p);
        }
        Ok(m)
    }

    /// E ∧ self.
    pub fn euler_wedge(&self) -> Self {
        mv_wedge(&PolyMultivector::euler(), self)
    }
}

impl fmt::Debug for PolyMultivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PolyMultivector(grade {}, degree {}) {{", self.grade, self.degree)?;
        for (k, p) in &self.components {
            let idx: Vec<String> = k.indices().iter().map(|i| i.to_string()).collect();
            write!(f, " ∂{}: {:?};", idx.join(""), p)?;
        }
        write!(f, " }}")
    }
}

pub fn mv_wedge(a: &PolyMultivector, b: &PolyMultivector) -> PolyMultivector {
    let mut out = PolyMultivector::zero(a.grade + b.grade, a.degree + b.degree);
    if a.grade + b.grade > DIM_V {
        return out;
    }
    for (ka, pa) in &a.components {
        for (kb, pb) in &b.components {
            let s = merge_sign(ka.indices(), kb.indices());
            if s == 0 {
                continue;
            }
            let mut prod = Poly::zero();
            pa.mul_acc(pb, &Rat::from_integer(s.into()), &mut prod);
            out.add_component(ExtIndex::new(merge(ka.indices(), kb.indices())), &prod);
        }
    }
    out
}

fn antisym_table(p: &PolyMultivector) -> Vec<Vec<Poly>> {
    (0..DIM_V)
        .map(|i| (0..DIM_V).map(|j| p.component(&[i, j])).collect())
        .collect()
}

/// Schouten bracket of two bivector fields:
///
/// `[p,q]^{ijk} = Σ_l ( p^{il} ∂_l q^{jk} + p^{jl} ∂_l q^{ki} + p^{kl} ∂_l q^{ij} ) + (p ↔ q)`.
///
/// With this sign, `⟨[p,p], df∧dg∧dh⟩ = 2·({f,{g,h}} + {g,{h,f}} + {h,{f,g}})`
/// for `{f,g} = Σ p^{ij} ∂_i f ∂_j g`.
pub fn schouten_bracket(p: &PolyMultivector, q: &PolyMultivector) -> Result<PolyMultivector> {
    for m in [p, q] {
        if m.grade != 2 {
            return Err(Error::GradeMismatch {
                expected: 2,
                got: m.grade,
            });
        }
    }
    let degree = (p.degree + q.degree).saturating_sub(1);
    let mut out = PolyMultivector::zero(3, degree);
    if p.degree + q.degree == 0 {
        return Ok(out);
    }
    let pt = antisym_table(p);
    let qt = antisym_table(q);
    let dp: Vec<Vec<Vec<Poly>>> = derivative_table(&pt);
    let dq: Vec<Vec<Vec<Poly>>> = derivative_table(&qt);
    let one = Rat::one();
    for idx in combinations(DIM_V, 3) {
        let (i, j, k) = (idx[0], idx[1], idx[2]);
        let mut acc = Poly::zero();
        for l in 0..DIM_V {
            for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
                pt[a][l].mul_acc(&dq[l][b][c], &one, &mut acc);
                qt[a][l].mul_acc(&dp[l][b][c], &one, &mut acc);
            }
        }
        out.add_component(ExtIndex::new(idx), &acc);
    }
    Ok(out)
}

// d[l][a][b] = ∂_l t[a][b]
fn derivative_table(t: &[Vec<Poly>]) -> Vec<Vec<Vec<Poly>>> {
    (0..DIM_V)
        .map(|l| {
            t.iter()
                .map(|row| row.iter().map(|p| p.derivative(l)).collect())
                .collect()
        })
        .collect()
}

/// Lie derivative `L_X m = [X, m]` of a multivector field along a vector field:
///
/// `(L_X m)^I = X^l ∂_l m^I − Σ_s m^{I[i_s→l]} ∂_l X^{i_s}`.
pub fn lie_derivative(x: &PolyMultivector, m: &PolyMultivector) -> Result<PolyMultivector> {
    if x.grade != 1 {
        return Err(Error::GradeMismatch {
            expected: 1,
            got: x.grade,
        });
    }
    let degree = (x.degree + m.degree).saturating_sub(1);
    let mut out = PolyMultivector::zero(m.grade, degree);
    if x.degree + m.degree == 0 {
        return Ok(out);
    }
    let xs: Vec<Poly> = (0..DIM_V).map(|i| x.component(&[i])).collect();
    let one = Rat::one();
    let minus = -Rat::one();
    for idx in combinations(DIM_V, m.grade) {
        let mi = m.component(&idx);
        let mut acc = Poly::zero();
        for l in 0..DIM_V {
            xs[l].mul_acc(&mi.derivative(l), &one, &mut acc);
            for s in 0..idx.len() {
                let mut swapped = idx.clone();
                swapped[s] = l;
                let c = m.component(&swapped);
                if !c.is_zero() {
                    c.mul_acc(&xs[idx[s]].derivative(l), &minus, &mut acc);
                }
            }
        }
        out.add_component(ExtIndex::new(idx), &acc);
    }
    Ok(out)
}

/// `{f,g} = Σ_{i<j} p^{ij} (∂_i f ∂_j g − ∂_j f ∂_i g)`.
pub fn poisson_of_functions(p: &PolyMultivector, f: &Poly, g: &Poly) -> Result<Poly> {
    if p.grade != 2 {
        return Err(Error::GradeMismatch {
            expected: 2,
            got: p.grade,
        });
    }
    let df: Vec<Poly> = (0..DIM_V).map(|i| f.derivative(i)).collect();
    let dg: Vec<Poly> = (0..DIM_V).map(|i| g.derivative(i)).collect();
    let mut acc = Poly::zero();
    for (k, pij) in &p.components {
        let (i, j) = (k.indices()[0], k.indices()[1]);
        let cross = df[i].mul(&dg[j]).sub(&df[j].mul(&dg[i]));
        pij.mul_acc(&cross, &Rat::one(), &mut acc);
    }
    Ok(acc)
}
