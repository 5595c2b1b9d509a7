use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use super::{fmt_sum, Coeff, Monomial, MonomialOrder, Ring};
use crate::error::{Error, Result};

/// An ordered list of variable names shared between polynomials of one ring.
pub type Vars = Arc<[String]>;

pub fn vars<S: AsRef<str>>(names: &[S]) -> Vars {
    names.iter().map(|s| s.as_ref().to_string()).collect()
}

/// A sparse multivariate polynomial. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MPoly {
    vars: Vars,
    ring: Ring,
    terms: BTreeMap<Monomial, Coeff>,
}

impl MPoly {
    pub fn zero(vars: Vars, ring: Ring) -> Self {
        MPoly {
            vars,
            ring,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: Vars, c: Coeff) -> Self {
        let ring = c.ring();
        let m = Monomial::one(vars.len());
        Self::from_terms(vars, ring, [(m, c)])
    }

    pub fn one(vars: Vars, ring: Ring) -> Self {
        Self::constant(vars, ring.one())
    }

    pub fn var(vars: Vars, ring: Ring, index: usize) -> Result<Self> {
        if index >= vars.len() {
            return Err(Error::IndexOutOfRange {
                index,
                limit: vars.len(),
            });
        }
        let m = Monomial::var(vars.len(), index);
        Ok(Self::from_terms(vars, ring, [(m, ring.one())]))
    }

    pub fn monomial(vars: Vars, m: Monomial, c: Coeff) -> Self {
        let ring = c.ring();
        Self::from_terms(vars, ring, [(m, c)])
    }

    /// Sums the given terms; repeated monomials are combined and zeros dropped.
    ///
    /// Panics if a coefficient is not in `ring` or a monomial has the wrong
    /// number of variables.
    pub fn from_terms(
        vars: Vars,
        ring: Ring,
        terms: impl IntoIterator<Item = (Monomial, Coeff)>,
    ) -> Self {
        let mut map: BTreeMap<Monomial, Coeff> = BTreeMap::new();
        for (m, c) in terms {
            assert_eq!(m.nvars(), vars.len(), "monomial arity");
            assert_eq!(c.ring(), ring, "coefficient ring");
            if c.is_zero() {
                continue;
            }
            match map.entry(m) {
                std::collections::btree_map::Entry::Vacant(e) => {
                    e.insert(c);
                }
                std::collections::btree_map::Entry::Occupied(mut e) => {
                    let s = e.get() + &c;
                    if s.is_zero() {
                        e.remove();
                    } else {
                        *e.get_mut() = s;
                    }
                }
            }
        }
        MPoly {
            vars,
            ring,
            terms: map,
        }
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_one())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in storage order (lexicographic on exponents, ascending).
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Coeff)> {
        self.terms.iter()
    }

    /// Terms sorted descending under `order`.
    pub fn sorted_terms(&self, order: &MonomialOrder) -> Vec<(&Monomial, &Coeff)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| order.cmp(b.0, a.0));
        v
    }

    pub fn coeff(&self, m: &Monomial) -> Coeff {
        self.terms.get(m).cloned().unwrap_or_else(|| self.ring.zero())
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u64> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    pub fn leading_term(&self, order: &MonomialOrder) -> Option<(&Monomial, &Coeff)> {
        self.terms
            .iter()
            .max_by(|a, b| order.cmp(a.0, b.0))
    }

    pub fn same_ring(&self, other: &MPoly) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch(self.ring, other.ring));
        }
        if !Arc::ptr_eq(&self.vars, &other.vars) && self.vars != other.vars {
            return Err(Error::VariableMismatch);
        }
        Ok(())
    }

    pub fn try_add(&self, other: &MPoly) -> Result<MPoly> {
        self.same_ring(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &MPoly) -> Result<MPoly> {
        self.try_add(&-other)
    }

    /// Product of two polynomials over the same ring and variables.
    pub fn try_mul(&self, other: &MPoly) -> Result<MPoly> {
        self.same_ring(other)?;
        let mut out = MPoly::zero(self.vars.clone(), self.ring);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        Ok(out)
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: Coeff) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get() + &c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn scale(&self, c: &Coeff) -> MPoly {
        let terms = self.terms.iter().map(|(m, a)| (m.clone(), a * c));
        MPoly::from_terms(self.vars.clone(), self.ring, terms)
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Coeff) -> MPoly {
        let terms = self.terms.iter().map(|(u, a)| (u.mul(m), a * c));
        MPoly::from_terms(self.vars.clone(), self.ring, terms)
    }

    pub fn pow(&self, k: u32) -> MPoly {
        let mut acc = MPoly::one(self.vars.clone(), self.ring);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Formal partial derivative in variable `index`.
    pub fn partial(&self, index: usize) -> Result<MPoly> {
        if index >= self.nvars() {
            return Err(Error::IndexOutOfRange {
                index,
                limit: self.nvars(),
            });
        }
        let terms = self.terms.iter().filter_map(|(m, c)| {
            let e = m.exponents()[index];
            if e == 0 {
                return None;
            }
            let mut m = m.clone();
            m.exponents_mut()[index] = e - 1;
            Some((m, c.scale_int(e as u64)))
        });
        Ok(MPoly::from_terms(self.vars.clone(), self.ring, terms))
    }

    /// Divides by the leading coefficient under `order`.
    pub fn monic(&self, order: &MonomialOrder) -> Result<MPoly> {
        match self.leading_term(order) {
            None => Ok(self.clone()),
            Some((_, c)) => Ok(self.scale(&c.inv()?)),
        }
    }

    /// Evaluates at `point`, mapping coefficients into the ring of the point
    /// coordinates via [`Ring::embed`].
    pub fn eval(&self, point: &[Coeff], target: Ring) -> Result<Coeff> {
        if point.len() != self.nvars() {
            return Err(Error::DimensionMismatch {
                expected: self.nvars(),
                got: point.len(),
            });
        }
        let mut acc = target.zero();
        for (m, c) in &self.terms {
            let mut t = target.embed(c)?;
            for (x, &e) in point.iter().zip(m.exponents()) {
                if e > 0 {
                    t = t.try_mul(&x.pow(e as u64))?;
                }
            }
            acc = acc.try_add(&t)?;
        }
        Ok(acc)
    }

    /// Applies `f` to every coefficient, landing in `ring`.
    pub fn map_coeffs(&self, ring: Ring, f: impl Fn(&Coeff) -> Result<Coeff>) -> Result<MPoly> {
        let mut terms = Vec::with_capacity(self.len());
        for (m, c) in &self.terms {
            terms.push((m.clone(), f(c)?));
        }
        Ok(MPoly::from_terms(self.vars.clone(), ring, terms))
    }

    /// Same polynomial viewed in a ring with more variables appended.
    pub fn extend_vars(&self, vars: Vars) -> MPoly {
        let n = vars.len();
        let terms = self.terms.iter().map(|(m, c)| {
            let mut e = m.exponents().to_vec();
            e.resize(n, 0);
            (Monomial::from_exponents(&e), c.clone())
        });
        MPoly::from_terms(vars, self.ring, terms)
    }

    /// Splits into parts that are homogeneous for the integer weight vector,
    /// keyed by weight.
    pub fn weighted_parts(&self, weights: &[i64]) -> BTreeMap<i64, MPoly> {
        let mut parts: BTreeMap<i64, Vec<(Monomial, Coeff)>> = BTreeMap::new();
        for (m, c) in &self.terms {
            let w: i64 = m
                .exponents()
                .iter()
                .zip(weights)
                .map(|(&e, w)| e as i64 * w)
                .sum();
            parts.entry(w).or_default().push((m.clone(), c.clone()));
        }
        parts
            .into_iter()
            .map(|(w, t)| (w, MPoly::from_terms(self.vars.clone(), self.ring, t)))
            .collect()
    }
}

pub(crate) fn fmt_monomial(m: &Monomial, names: &[String]) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.exponents().iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(names[i].clone()),
            e => parts.push(format!("{}^{}", names[i], e)),
        }
    }
    parts.join("*")
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.sorted_terms(&MonomialOrder::GrevLex);
        let rendered: Vec<_> = terms
            .into_iter()
            .map(|(m, c)| (c.clone(), fmt_monomial(m, &self.vars)))
            .collect();
        fmt_sum(&rendered, f)
    }
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MPoly[{}]({})", self.ring, self)
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        MPoly {
            vars: self.vars.clone(),
            ring: self.ring,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        -&self
    }
}

macro_rules! forward_poly_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&MPoly> for &MPoly {
            type Output = MPoly;
            fn $method(self, rhs: &MPoly) -> MPoly {
                self.$checked(rhs).expect("polynomial ring mismatch")
            }
        }
        impl $tr<MPoly> for MPoly {
            type Output = MPoly;
            fn $method(self, rhs: MPoly) -> MPoly {
                (&self).$checked(&rhs).expect("polynomial ring mismatch")
            }
        }
    };
}

forward_poly_binop!(Add, add, try_add);
forward_poly_binop!(Sub, sub, try_sub);
forward_poly_binop!(Mul, mul, try_mul);
