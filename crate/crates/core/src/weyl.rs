//! Normal-ordered arithmetic in the Weyl algebra `A_n(R)`.
//!
//! An element is stored as `Σ c_{a,b} x^a ∂^b` with every `x` to the left of
//! every `∂`. Monomials are joint exponent vectors of length `2n`: the first
//! `n` entries are the `x` exponents, the last `n` the `∂` exponents.

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::rc::Rc;

use num_bigint::BigUint;
use num_traits::One;

use crate::algebra::{fmt_monomial, fmt_sum, Coeff, Monomial, MonomialOrder, Ring};
use crate::error::{Error, Result};

/// An element of the Weyl algebra in normal (PBW) form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct WeylOp {
    n: usize,
    ring: Ring,
    terms: BTreeMap<Monomial, Coeff>,
}

/// One of the algebra generators `x_i` or `∂_i` (0-based index).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Generator {
    X(usize),
    D(usize),
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::X(i) => write!(f, "x{}", i + 1),
            Generator::D(i) => write!(f, "d{}", i + 1),
        }
    }
}

/// Outcome of [`WeylOp::is_central`]. On failure `witness` holds a generator
/// `g` together with the nonzero commutator `[g, f]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Centrality {
    pub central: bool,
    pub witness: Option<(Generator, WeylOp)>,
}

type ReorderCache = HashMap<(Ring, u32, u32), Rc<Vec<Coeff>>>;

thread_local! {
    static REORDER: RefCell<ReorderCache> = RefCell::new(HashMap::new());
}

/// Coefficients `j!·C(m,j)·C(k,j)`, `j = 0..=min(m,k)`, of the identity
/// `∂^m x^k = Σ_j j!·C(m,j)·C(k,j) x^{k-j} ∂^{m-j}`, computed over the
/// integers and then reduced into `ring`.
pub fn reorder_coefficients(ring: Ring, m: u32, k: u32) -> Rc<Vec<Coeff>> {
    REORDER.with(|cache| {
        if let Some(v) = cache.borrow().get(&(ring, m, k)) {
            return v.clone();
        }
        let mut out = Vec::with_capacity(m.min(k) as usize + 1);
        let mut t = BigUint::one();
        out.push(ring.one());
        for j in 1..=m.min(k) {
            t = t * BigUint::from(m - j + 1) * BigUint::from(k - j + 1) / BigUint::from(j);
            out.push(ring.from_bigint(&t.clone().into()));
        }
        let v = Rc::new(out);
        cache.borrow_mut().insert((ring, m, k), v.clone());
        v
    })
}

impl WeylOp {
    pub fn zero(n: usize, ring: Ring) -> Self {
        WeylOp {
            n,
            ring,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(n: usize, ring: Ring) -> Self {
        Self::constant(n, ring.one())
    }

    pub fn constant(n: usize, c: Coeff) -> Self {
        let ring = c.ring();
        Self::from_terms(n, ring, [(Monomial::one(2 * n), c)])
    }

    /// `x_i` (0-based).
    pub fn x(n: usize, ring: Ring, i: usize) -> Result<Self> {
        Self::generator(n, ring, Generator::X(i))
    }

    /// `∂_i` (0-based).
    pub fn d(n: usize, ring: Ring, i: usize) -> Result<Self> {
        Self::generator(n, ring, Generator::D(i))
    }

    pub fn generator(n: usize, ring: Ring, g: Generator) -> Result<Self> {
        let (i, slot) = match g {
            Generator::X(i) => (i, i),
            Generator::D(i) => (i, n + i),
        };
        if i >= n {
            return Err(Error::IndexOutOfRange { index: i, limit: n });
        }
        Ok(Self::from_terms(
            n,
            ring,
            [(Monomial::var(2 * n, slot), ring.one())],
        ))
    }

    /// `c · x^a ∂^b`.
    pub fn monomial(a: &[u32], b: &[u32], c: Coeff) -> Self {
        assert_eq!(a.len(), b.len());
        let n = a.len();
        let mut e = a.to_vec();
        e.extend_from_slice(b);
        let ring = c.ring();
        Self::from_terms(n, ring, [(Monomial::from_exponents(&e), c)])
    }

    /// Builds `Σ c x^a ∂^b` from joint `(a, b)` exponent monomials, combining
    /// repeats and dropping zeros.
    pub fn from_terms(n: usize, ring: Ring, terms: impl IntoIterator<Item = (Monomial, Coeff)>) -> Self {
        let mut op = WeylOp::zero(n, ring);
        for (m, c) in terms {
            assert_eq!(m.nvars(), 2 * n, "monomial arity");
            assert_eq!(c.ring(), ring, "coefficient ring");
            op.add_term(m, c);
        }
        op
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

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Coeff)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Coeff {
        self.terms.get(m).cloned().unwrap_or_else(|| self.ring.zero())
    }

    /// Terms sorted descending under `order` (on joint exponents).
    pub fn sorted_terms(&self, order: &MonomialOrder) -> Vec<(&Monomial, &Coeff)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| order.cmp(b.0, a.0));
        v
    }

    pub fn leading_term(&self, order: &MonomialOrder) -> Option<(&Monomial, &Coeff)> {
        self.terms.iter().max_by(|a, b| order.cmp(a.0, b.0))
    }

    /// Order as a differential operator: the largest total `∂`-degree, or
    /// `None` for zero.
    pub fn order(&self) -> Option<u64> {
        self.terms
            .keys()
            .map(|m| m.exponents()[self.n..].iter().map(|&e| e as u64).sum())
            .max()
    }

    fn compatible(&self, other: &WeylOp) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: other.n,
            });
        }
        if self.ring != other.ring {
            return Err(Error::RingMismatch(self.ring, other.ring));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &WeylOp) -> Result<WeylOp> {
        self.compatible(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &WeylOp) -> Result<WeylOp> {
        self.try_add(&-other)
    }

    /// Normal-ordered product `self · other`.
    pub fn try_mul(&self, other: &WeylOp) -> Result<WeylOp> {
        self.compatible(other)?;
        let mut acc: HashMap<Monomial, Coeff> = HashMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let c = c1 * c2;
                if c.is_zero() {
                    continue;
                }
                multiply_monomials(self.n, self.ring, m1, m2, &c, &mut acc);
            }
        }
        Ok(WeylOp::from_terms(self.n, self.ring, acc))
    }

    /// `self · other - other · self`.
    pub fn commutator(&self, other: &WeylOp) -> Result<WeylOp> {
        self.try_mul(other)?.try_sub(&other.try_mul(self)?)
    }

    pub fn pow(&self, k: u32) -> WeylOp {
        let mut acc = WeylOp::one(self.n, self.ring);
        let mut base = self.clone();
        let mut e = k;
        // Powers of a single element commute, so square-and-multiply is valid.
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn scale(&self, c: &Coeff) -> WeylOp {
        WeylOp::from_terms(self.n, self.ring, self.terms.iter().map(|(m, a)| (m.clone(), a * c)))
    }

    /// Left multiplication by the monomial `c · x^a ∂^b` given as a joint
    /// exponent vector.
    pub fn mul_monomial_left(&self, m: &Monomial, c: &Coeff) -> WeylOp {
        let mut acc: HashMap<Monomial, Coeff> = HashMap::new();
        for (u, a) in &self.terms {
            multiply_monomials(self.n, self.ring, m, u, &(c * a), &mut acc);
        }
        WeylOp::from_terms(self.n, self.ring, acc)
    }

    /// Checks `[g, f] = 0` for every generator `g`, trying `x_1, ∂_1, x_2, ...`.
    pub fn is_central(&self) -> Centrality {
        for i in 0..self.n {
            for g in [Generator::X(i), Generator::D(i)] {
                let gen = WeylOp::generator(self.n, self.ring, g).expect("index in range");
                let c = gen.commutator(self).expect("same algebra");
                if !c.is_zero() {
                    return Centrality {
                        central: false,
                        witness: Some((g, c)),
                    };
                }
            }
        }
        Centrality {
            central: true,
            witness: None,
        }
    }

    /// Applies `f` to every coefficient, landing in `ring`.
    pub fn map_coeffs(&self, ring: Ring, f: impl Fn(&Coeff) -> Result<Coeff>) -> Result<WeylOp> {
        let mut terms = Vec::with_capacity(self.len());
        for (m, c) in &self.terms {
            terms.push((m.clone(), f(c)?));
        }
        Ok(WeylOp::from_terms(self.n, ring, terms))
    }

    pub fn variable_names(n: usize) -> Vec<String> {
        let mut names: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
        names.extend((1..=n).map(|i| format!("d{i}")));
        names
    }
}

/// Accumulates `c · (x^a ∂^b)(x^e ∂^f)` in normal order into `acc`.
pub(crate) fn multiply_monomials(
    n: usize,
    ring: Ring,
    left: &Monomial,
    right: &Monomial,
    c: &Coeff,
    acc: &mut HashMap<Monomial, Coeff>,
) {
    let l = left.exponents();
    let r = right.exponents();
    // Base term x^{a+e} ∂^{b+f}; each variable i contributes a sum over j_i of
    // lowering both its x and ∂ exponent by j_i.
    let mut base: Vec<u32> = l.iter().zip(r).map(|(a, b)| a + b).collect();
    let factors: Vec<(usize, Rc<Vec<Coeff>>)> = (0..n)
        .filter(|&i| l[n + i] > 0 && r[i] > 0)
        .map(|i| (i, reorder_coefficients(ring, l[n + i], r[i])))
        .collect();
    fn rec(
        n: usize,
        factors: &[(usize, Rc<Vec<Coeff>>)],
        exps: &mut Vec<u32>,
        c: Coeff,
        acc: &mut HashMap<Monomial, Coeff>,
    ) {
        let Some(((i, coeffs), rest)) = factors.split_first() else {
            let m = Monomial::from_exponents(exps);
            match acc.get_mut(&m) {
                Some(v) => *v = &*v + &c,
                None => {
                    acc.insert(m, c);
                }
            }
            return;
        };
        for (j, k) in coeffs.iter().enumerate() {
            if k.is_zero() {
                continue;
            }
            let cj = &c * k;
            if cj.is_zero() {
                continue;
            }
            exps[*i] -= j as u32;
            exps[n + *i] -= j as u32;
            rec(n, rest, exps, cj, acc);
            exps[*i] += j as u32;
            exps[n + *i] += j as u32;
        }
    }
    rec(n, &factors, &mut base, c.clone(), acc);
}

impl fmt::Display for WeylOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = WeylOp::variable_names(self.n);
        let rendered: Vec<_> = self
            .sorted_terms(&MonomialOrder::GrevLex)
            .into_iter()
            .map(|(m, c)| (c.clone(), fmt_monomial(m, &names)))
            .collect();
        fmt_sum(&rendered, f)
    }
}

impl fmt::Debug for WeylOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "WeylOp[n={}, {}]({})", self.n, self.ring, self)
    }
}

impl Neg for &WeylOp {
    type Output = WeylOp;
    fn neg(self) -> WeylOp {
        WeylOp {
            n: self.n,
            ring: self.ring,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for WeylOp {
    type Output = WeylOp;
    fn neg(self) -> WeylOp {
        -&self
    }
}

macro_rules! forward_weyl_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&WeylOp> for &WeylOp {
            type Output = WeylOp;
            fn $method(self, rhs: &WeylOp) -> WeylOp {
                self.$checked(rhs).expect("Weyl algebra mismatch")
            }
        }
        impl $tr<WeylOp> for WeylOp {
            type Output = WeylOp;
            fn $method(self, rhs: WeylOp) -> WeylOp {
                (&self).$checked(&rhs).expect("Weyl algebra mismatch")
            }
        }
    };
}

forward_weyl_binop!(Add, add, try_add);
forward_weyl_binop!(Sub, sub, try_sub);
forward_weyl_binop!(Mul, mul, try_mul);

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;
    use proptest::prelude::*;

    fn x(ring: Ring) -> WeylOp {
        WeylOp::x(1, ring, 0).unwrap()
    }
    fn d(ring: Ring) -> WeylOp {
        WeylOp::d(1, ring, 0).unwrap()
    }
    fn c(ring: Ring, v: i64) -> WeylOp {
        WeylOp::constant(1, ring.from_i64(v))
    }
    fn mono(ring: Ring, a: u32, b: u32, v: i64) -> WeylOp {
        WeylOp::monomial(&[a], &[b], ring.from_i64(v))
    }

    #[test]
    fn defining_relation() {
        let r = Ring::Rational;
        assert_eq!(&d(r) * &x(r), mono(r, 1, 1, 1) + c(r, 1));
        assert_eq!(&x(r) * &d(r), mono(r, 1, 1, 1));
        assert_eq!(d(r).commutator(&x(r)).unwrap(), c(r, 1));
        assert!(x(r).commutator(&x(r)).unwrap().is_zero());
    }

    #[test]
    fn second_order_reordering() {
        let z = Ring::Rational;
        let full = &d(z).pow(2) * &x(z).pow(2);
        assert_eq!(full, mono(z, 2, 2, 1) + mono(z, 1, 1, 4) + c(z, 2));
        let r = Ring::IntMod(4);
        assert_eq!(&d(r).pow(2) * &x(r).pow(2), mono(r, 2, 2, 1) + c(r, 2));
        assert_eq!(d(r).pow(2).commutator(&x(r).pow(2)).unwrap(), c(r, 2));
    }

    #[test]
    fn third_order_commutator_mod_nine() {
        let r = Ring::IntMod(9);
        assert_eq!(d(r).pow(3).commutator(&x(r).pow(3)).unwrap(), c(r, 6));
        let z = Ring::Rational;
        let expect = mono(z, 2, 2, 9) + mono(z, 1, 1, 18) + c(z, 6);
        assert_eq!(d(z).pow(3).commutator(&x(z).pow(3)).unwrap(), expect);
    }

    #[test]
    fn powers() {
        let r = Ring::IntMod(11);
        let f = &x(r) + &d(r);
        assert_eq!(f.pow(1), f);
        assert_eq!(f.pow(0), WeylOp::one(1, r));
        let e = mono(r, 1, 1, 1);
        assert_eq!(e.pow(2), mono(r, 2, 2, 1) + mono(r, 1, 1, 1));
        let f3 = Ring::IntMod(3);
        assert_eq!((&d(f3) - &c(f3, 1)).pow(3), &d(f3).pow(3) - &c(f3, 1));
    }

    #[test]
    fn centrality_examples() {
        for p in [2u64, 3, 5, 7] {
            let r = Ring::IntMod(p);
            assert!(x(r).pow(p as u32).is_central().central);
            assert!(d(r).pow(p as u32).is_central().central);
            let res = x(r).is_central();
            assert!(!res.central);
            assert_eq!(res.witness, Some((Generator::D(0), c(r, 1))));
        }
        let r = Ring::IntMod(2);
        let res = mono(r, 1, 1, 1).is_central();
        assert_eq!(res.witness, Some((Generator::X(0), x(r))));
    }

    #[test]
    fn mismatches_are_errors() {
        let a = x(Ring::IntMod(3));
        let b = x(Ring::IntMod(9));
        assert!(matches!(a.try_mul(&b), Err(Error::RingMismatch(..))));
        let c2 = WeylOp::x(2, Ring::IntMod(3), 0).unwrap();
        assert!(matches!(a.try_mul(&c2), Err(Error::DimensionMismatch { .. })));
        assert!(WeylOp::d(1, Ring::IntMod(3), 1).is_err());
    }

    #[test]
    fn euler_operator_p_th_power() {
        for p in [2u64, 3, 5, 7] {
            let r = Ring::IntMod(p);
            let e = mono(r, 1, 1, 1);
            assert_eq!(e.pow(p as u32), mono(r, p as u32, p as u32, 1) + e.clone(), "p={p}");
        }
    }

    fn binom(n: u32, k: u32) -> BigUint {
        let mut b = BigUint::one();
        for i in 0..k {
            b = b * BigUint::from(n - i) / BigUint::from(i + 1);
        }
        b
    }

    #[test]
    fn closed_form_matches_iterated_relation() {
        let z = Ring::Rational;
        for m in 0..=6u32 {
            for k in 0..=6u32 {
                // oracle: iterate ∂·(x^a ∂^b) = x^a ∂^{b+1} + a x^{a-1} ∂^b one factor at a time
                let mut cur = x(z).pow(k);
                for _ in 0..m {
                    let mut next = WeylOp::zero(1, z);
                    for (mon, cf) in cur.terms() {
                        let (a, b) = (mon.exponents()[0], mon.exponents()[1]);
                        next = next + WeylOp::monomial(&[a], &[b + 1], cf.clone());
                        if a > 0 {
                            next = next + WeylOp::monomial(&[a - 1], &[b], cf.scale_int(a as u64));
                        }
                    }
                    cur = next;
                }
                let mut closed = WeylOp::zero(1, z);
                for j in 0..=m.min(k) {
                    let mut fact = BigUint::one();
                    for t in 1..=j {
                        fact *= BigUint::from(t);
                    }
                    let coef = fact * binom(m, j) * binom(k, j);
                    closed = closed
                        + WeylOp::monomial(&[k - j], &[m - j], z.from_bigint(&coef.into()));
                }
                assert_eq!(cur, closed, "m={m} k={k}");
                assert_eq!(&d(z).pow(m) * &x(z).pow(k), closed, "m={m} k={k}");
            }
        }
    }

    fn arb_op(n: usize, ring: Ring) -> impl Strategy<Value = WeylOp> {
        prop::collection::vec((prop::collection::vec(0u32..3, 2 * n), -4i64..5), 0..4).prop_map(
            move |ts| {
                WeylOp::from_terms(
                    n,
                    ring,
                    ts.into_iter()
                        .map(|(e, c)| (Monomial::from_exponents(&e), ring.from_i64(c))),
                )
            },
        )
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn associativity(f in arb_op(2, Ring::IntMod(9)), g in arb_op(2, Ring::IntMod(9)),
                         h in arb_op(2, Ring::IntMod(9))) {
            prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
        }

        #[test]
        fn distributivity(f in arb_op(1, Ring::IntMod(5)), g in arb_op(1, Ring::IntMod(5)),
                          h in arb_op(1, Ring::IntMod(5))) {
            prop_assert_eq!(&f * &(&g + &h), &(&f * &g) + &(&f * &h));
        }

        #[test]
        fn order_is_additive(f in arb_op(2, Ring::Rational), g in arb_op(2, Ring::Rational)) {
            if !f.is_zero() && !g.is_zero() {
                prop_assert_eq!((&f * &g).order().unwrap(), f.order().unwrap() + g.order().unwrap());
            }
        }
    }
}
