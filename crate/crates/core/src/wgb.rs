//! Left Gröbner bases in the Weyl algebra over a field.
//!
//! Leading terms of normal-ordered operators multiply like commutative
//! monomials in the joint `(x, ∂)` exponents, so the commutative engine
//! applies verbatim once monomials act by left Weyl multiplication.

use std::fmt;

use crate::algebra::{vars, MPoly, Monomial, MonomialOrder, Ring, Vars};
use crate::cgb::engine::{sort_vector, Engine, Term, Vector, WeylAction};
use crate::cgb::ModuleOrder;
use crate::error::{Error, Result};
use crate::weyl::WeylOp;

fn to_vector(f: &WeylOp, order: &ModuleOrder) -> Vector {
    let v = f
        .terms()
        .map(|(m, c)| (Term::new(0, m.clone()), c.clone()))
        .collect();
    sort_vector(v, order)
}

fn from_vector(v: &Vector, n: usize, ring: Ring) -> WeylOp {
    WeylOp::from_terms(n, ring, v.iter().map(|(t, c)| (t.mono.clone(), c.clone())))
}

fn check(n: usize, ring: Ring, gens: &[WeylOp], order: &MonomialOrder) -> Result<()> {
    if !ring.is_field() {
        return Err(Error::NotAField(ring));
    }
    if !order.is_global() {
        return Err(Error::NonGlobalOrder);
    }
    if !order.fits(2 * n) {
        return Err(Error::DimensionMismatch {
            expected: 2 * n,
            got: match order {
                MonomialOrder::Weighted { weights, .. } => weights.len(),
                MonomialOrder::Elimination { split } => *split,
                _ => 2 * n,
            },
        });
    }
    for g in gens {
        if g.ring() != ring {
            return Err(Error::RingMismatch(ring, g.ring()));
        }
        if g.n() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: g.n(),
            });
        }
    }
    Ok(())
}

fn groebner_raw(n: usize, ring: Ring, gens: &[WeylOp], order: &MonomialOrder) -> Vec<WeylOp> {
    let morder = ModuleOrder::pot(order.clone());
    let action = WeylAction { n, ring };
    let engine = Engine::new(&action, &morder);
    let vecs = gens.iter().map(|g| to_vector(g, &morder)).collect();
    engine
        .groebner(vecs, 1)
        .iter()
        .map(|v| from_vector(v, n, ring))
        .collect()
}

/// Reduced left Gröbner basis of `A_n · gens`, sorted by leading monomial
/// (descending).
pub fn left_groebner(gens: &[WeylOp], order: &MonomialOrder) -> Result<Vec<WeylOp>> {
    let Some(first) = gens.first() else {
        return Ok(Vec::new());
    };
    let (n, ring) = (first.n(), first.ring());
    check(n, ring, gens, order)?;
    Ok(groebner_raw(n, ring, gens, order))
}

/// A left ideal of `A_n` over a field, with its reduced left Gröbner basis.
#[derive(Clone, PartialEq, Eq)]
pub struct LeftIdeal {
    n: usize,
    ring: Ring,
    generators: Vec<WeylOp>,
    order: MonomialOrder,
    basis: Vec<WeylOp>,
}

impl LeftIdeal {
    pub fn new(n: usize, ring: Ring, generators: Vec<WeylOp>, order: MonomialOrder) -> Result<Self> {
        check(n, ring, &generators, &order)?;
        let basis = groebner_raw(n, ring, &generators, &order);
        Ok(LeftIdeal {
            n,
            ring,
            generators,
            order,
            basis,
        })
    }

    /// Left ideal under grevlex on the joint exponents.
    pub fn grevlex(n: usize, ring: Ring, generators: Vec<WeylOp>) -> Result<Self> {
        Self::new(n, ring, generators, MonomialOrder::GrevLex)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn generators(&self) -> &[WeylOp] {
        &self.generators
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn basis(&self) -> &[WeylOp] {
        &self.basis
    }

    pub fn is_unit(&self) -> bool {
        self.basis.len() == 1 && self.basis[0].terms().all(|(m, _)| m.is_one())
    }

    /// Left normal form of `f`.
    pub fn normal_form(&self, f: &WeylOp) -> Result<WeylOp> {
        check(self.n, self.ring, std::slice::from_ref(f), &self.order)?;
        let morder = ModuleOrder::pot(self.order.clone());
        let action = WeylAction {
            n: self.n,
            ring: self.ring,
        };
        let engine = Engine::new(&action, &morder);
        let basis: Vec<Vector> = self.basis.iter().map(|g| to_vector(g, &morder)).collect();
        Ok(from_vector(
            &engine.reduce(to_vector(f, &morder), &basis),
            self.n,
            self.ring,
        ))
    }

    pub fn contains(&self, f: &WeylOp) -> Result<bool> {
        Ok(self.normal_form(f)?.is_zero())
    }

    /// Same ideal under another order.
    pub fn with_order(&self, order: MonomialOrder) -> Result<LeftIdeal> {
        LeftIdeal::new(self.n, self.ring, self.generators.clone(), order)
    }
}

impl fmt::Display for LeftIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.generators.iter().map(ToString::to_string).collect();
        write!(f, "<{}>", parts.join(", "))
    }
}

impl fmt::Debug for LeftIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LeftIdeal{self} basis {:?}", self.basis)
    }
}

/// Left normal form of `f` modulo `ideal`.
pub fn left_nf(f: &WeylOp, ideal: &LeftIdeal) -> Result<WeylOp> {
    ideal.normal_form(f)
}

/// Names `x1..xn, xi1..xin` of the symbol ring.
pub fn symbol_vars(n: usize) -> Vars {
    let mut names: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
    names.extend((1..=n).map(|i| format!("xi{i}")));
    vars(&names)
}

/// The principal symbol: the part of `f` of top total `∂`-degree, with each
/// `∂_i` replaced by the commuting variable `ξ_i`.
pub fn initial_weighted(f: &WeylOp) -> Result<MPoly> {
    let order = f.order().ok_or(Error::ZeroInput)?;
    let n = f.n();
    let top = f.terms().filter(|(m, _)| {
        m.exponents()[n..].iter().map(|&e| u64::from(e)).sum::<u64>() == order
    });
    Ok(MPoly::from_terms(
        symbol_vars(n),
        f.ring(),
        top.map(|(m, c)| (Monomial::from_exponents(m.exponents()), c.clone())),
    ))
}
