//! Sparse polynomials in the five homogeneous coordinates x0..x4.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::OnceLock;

use num_traits::{One, Zero};

use crate::exactq::{fmt_rat, Rat};
use crate::exterior::DIM_V;

pub type Exponent = [u8; DIM_V];

/// Highest degree with a cached monomial table.
pub const MAX_TABLE_DEGREE: usize = 6;

struct MonomialTable {
    list: Vec<Exponent>,
    rank: HashMap<Exponent, usize>,
}

fn tables() -> &'static [MonomialTable] {
    static TABLES: OnceLock<Vec<MonomialTable>> = OnceLock::new();
    TABLES.get_or_init(|| {
        (0..=MAX_TABLE_DEGREE)
            .map(|d| {
                let mut list = Vec::new();
                let mut cur = [0u8; DIM_V];
                enumerate(d as u8, 0, &mut cur, &mut list);
                // lex with x0 > x1 > … : larger exponent vectors first
                list.sort_unstable_by(|a, b| b.cmp(a));
                let rank = list.iter().enumerate().map(|(i, e)| (*e, i)).collect();
                MonomialTable { list, rank }
            })
            .collect()
    })
}

fn enumerate(left: u8, var: usize, cur: &mut Exponent, out: &mut Vec<Exponent>) {
    if var == DIM_V - 1 {
        cur[var] = left;
        out.push(*cur);
        return;
    }
    for e in 0..=left {
        cur[var] = e;
        enumerate(left - e, var + 1, cur, out);
    }
    cur[var] = 0;
}

/// Degree-d monomials in lex order (x0 > x1 > … > x4), largest first.
pub fn monomials(degree: usize) -> &'static [Exponent] {
    &tables()[degree].list
}

pub fn monomial_rank(exp: &Exponent) -> usize {
    let d: usize = exp.iter().map(|&e| e as usize).sum();
    tables()[d].rank[exp]
}

#[derive(Clone, PartialEq, Eq, Default)]
pub struct Poly {
    terms: BTreeMap<Exponent, Rat>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn constant(c: Rat) -> Self {
        Poly::monomial([0; DIM_V], c)
    }

    pub fn var(i: usize) -> Self {
        let mut e = [0; DIM_V];
        e[i] = 1;
        Poly::monomial(e, Rat::one())
    }

    pub fn monomial(exp: Exponent, c: Rat) -> Self {
        let mut p = Poly::zero();
        p.add_term(exp, c);
        p
    }

    /// Linear form Σ cᵢ xᵢ.
    pub fn linear(coeffs: &[Rat]) -> Self {
        let mut p = Poly::zero();
        for (i, c) in coeffs.iter().enumerate() {
            let mut e = [0; DIM_V];
            e[i] = 1;
            p.add_term(e, c.clone());
        }
        p
    }

    pub fn add_term(&mut self, exp: Exponent, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
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

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &Rat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, exp: &Exponent) -> Rat {
        self.terms.get(exp).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree of the highest term; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.terms
            .keys()
            .map(|e| e.iter().map(|&x| x as usize).sum())
            .max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|e| e.iter().map(|&x| x as usize).sum::<usize>());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|x| x == d),
        }
    }

    pub fn add_assign_ref(&mut self, other: &Poly) {
        for (e, c) in &other.terms {
            self.add_term(*e, c.clone());
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        out.add_assign_ref(other);
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, -c.clone());
        }
        out
    }

    pub fn neg(&self) -> Poly {
        self.scale(&-Rat::one())
    }

    pub fn scale(&self, s: &Rat) -> Poly {
        if s.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(e, c)| (*e, c * s)).collect(),
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero();
        self.mul_acc(other, &Rat::one(), &mut out);
        out
    }

    /// `acc += s · self · other`.
    pub fn mul_acc(&self, other: &Poly, s: &Rat, acc: &mut Poly) {
        if s.is_zero() {
            return;
        }
        for (ea, ca) in &self.terms {
            let ca = ca * s;
            for (eb, cb) in &other.terms {
                let mut e = *ea;
                for i in 0..DIM_V {
                    e[i] += eb[i];
                }
                acc.add_term(e, &ca * cb);
            }
        }
    }

    /// ∂/∂x_i.
    pub fn derivative(&self, i: usize) -> Poly {
        let mut out = Poly::zero();
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut d = *e;
            d[i] -= 1;
            out.add_term(d, c * Rat::from_integer(e[i].into()));
        }
        out
    }

    pub fn eval(&self, x: &[Rat]) -> Rat {
        assert_eq!(x.len(), DIM_V, "evaluation point");
        let mut acc = Rat::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for i in 0..DIM_V {
                for _ in 0..e[i] {
                    t *= &x[i];
                }
            }
            acc += t;
        }
        acc
    }

    /// Coefficients in the degree-d monomial basis.
    pub fn to_coeff_vec(&self, degree: usize) -> Vec<Rat> {
        let mut out = vec![Rat::zero(); monomials(degree).len()];
        for (e, c) in &self.terms {
            out[monomial_rank(e)] = c.clone();
        }
        out
    }

    pub fn from_coeff_vec(degree: usize, coeffs: &[Rat]) -> Poly {
        let mut p = Poly::zero();
        for (e, c) in monomials(degree).iter().zip(coeffs) {
            p.add_term(*e, c.clone());
        }
        p
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(e, c)| {
                let mono: Vec<String> = e
                    .iter()
                    .enumerate()
                    .filter(|(_, &p)| p > 0)
                    .map(|(i, &p)| if p == 1 { format!("x{i}") } else { format!("x{i}^{p}") })
                    .collect();
                if mono.is_empty() {
                    fmt_rat(c)
                } else {
                    format!("{}*{}", fmt_rat(c), mono.join("*"))
                }
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactq::int;

    #[test]
    fn monomial_counts_and_order() {
        let counts: Vec<usize> = (0..=5).map(|d| monomials(d).len()).collect();
        assert_eq!(counts, vec![1, 5, 15, 35, 70, 126]);
        assert_eq!(monomials(2)[0], [2, 0, 0, 0, 0]);
        assert_eq!(monomials(2)[1], [1, 1, 0, 0, 0]);
        assert_eq!(monomials(2)[14], [0, 0, 0, 0, 2]);
        for d in 0..=5 {
            for (i, e) in monomials(d).iter().enumerate() {
                assert_eq!(monomial_rank(e), i);
            }
        }
    }

    #[test]
    fn arithmetic() {
        let x0 = Poly::var(0);
        let x1 = Poly::var(1);
        let s = x0.add(&x1);
        let sq = s.mul(&s);
        assert_eq!(sq.coeff(&[1, 1, 0, 0, 0]), int(2));
        assert_eq!(sq.degree(), Some(2));
        assert!(sq.is_homogeneous());
        assert!(s.sub(&s).is_zero());
        assert_eq!(sq.derivative(0), x0.scale(&int(2)).add(&x1.scale(&int(2))));
        let pt = vec![int(2), int(3), int(0), int(0), int(0)];
        assert_eq!(sq.eval(&pt), int(25));
        let v = sq.to_coeff_vec(2);
        assert_eq!(Poly::from_coeff_vec(2, &v), sq);
        assert!(!x0.add(&Poly::constant(int(1))).is_homogeneous());
    }
}
