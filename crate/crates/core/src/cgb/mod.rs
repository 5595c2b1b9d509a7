//! Commutative Gröbner bases over a field.
//!
//! Ideals carry their reduced Gröbner basis, computed on construction. On
//! top of that sit normal forms, radical membership (Rabinowitsch), Krull
//! dimension from the leading-term ideal, and the module machinery in
//! [`module`].

pub(crate) mod engine;
pub mod module;

use std::fmt;

pub use engine::{ModuleOrder, ModuleOrderKind};
pub use module::{module_colon, syzygies, FreeSubmodule};

use crate::algebra::{Coeff, MPoly, Monomial, MonomialOrder, Ring, Vars};
use crate::error::{Error, Result};
use engine::{sort_vector, Commutative, Engine, Term, Vector};

pub(crate) fn to_vector(f: &MPoly, comp: usize, order: &ModuleOrder) -> Vector {
    let v = f
        .terms()
        .map(|(m, c)| (Term::new(comp, m.clone()), c.clone()))
        .collect();
    sort_vector(v, order)
}

pub(crate) fn from_vector(v: &[(Term, Coeff)], vars: &Vars, ring: Ring) -> MPoly {
    MPoly::from_terms(
        vars.clone(),
        ring,
        v.iter().map(|(t, c)| (t.mono.clone(), c.clone())),
    )
}

pub(crate) fn check_field(ring: Ring) -> Result<()> {
    if ring.is_field() {
        Ok(())
    } else {
        Err(Error::NotAField(ring))
    }
}

fn check_common(vars: &Vars, ring: Ring, gens: &[MPoly]) -> Result<()> {
    for g in gens {
        if g.ring() != ring {
            return Err(Error::RingMismatch(ring, g.ring()));
        }
        if g.vars() != vars {
            return Err(Error::VariableMismatch);
        }
    }
    check_field(ring)
}

/// Reduced Gröbner basis of the ideal generated by `gens`, sorted by leading
/// monomial (descending). All generators must share one ring and variable
/// list.
pub fn buchberger(gens: &[MPoly], order: &MonomialOrder) -> Result<Vec<MPoly>> {
    let Some(first) = gens.first() else {
        return Ok(Vec::new());
    };
    let (vars, ring) = (first.vars().clone(), first.ring());
    check_common(&vars, ring, gens)?;
    Ok(groebner_raw(&vars, ring, gens, order))
}

fn groebner_raw(vars: &Vars, ring: Ring, gens: &[MPoly], order: &MonomialOrder) -> Vec<MPoly> {
    let morder = ModuleOrder::pot(order.clone());
    let engine = Engine::new(&Commutative, &morder);
    let vecs = gens.iter().map(|g| to_vector(g, 0, &morder)).collect();
    engine
        .groebner(vecs, 1)
        .iter()
        .map(|v| from_vector(v, vars, ring))
        .collect()
}

/// An ideal of a commutative polynomial ring over a field, with its reduced
/// Gröbner basis.
#[derive(Clone, PartialEq, Eq)]
pub struct CIdeal {
    vars: Vars,
    ring: Ring,
    generators: Vec<MPoly>,
    order: MonomialOrder,
    basis: Vec<MPoly>,
}

impl CIdeal {
    pub fn new(vars: Vars, ring: Ring, generators: Vec<MPoly>, order: MonomialOrder) -> Result<Self> {
        check_common(&vars, ring, &generators)?;
        if !order.fits(vars.len()) {
            return Err(Error::DimensionMismatch {
                expected: vars.len(),
                got: match &order {
                    MonomialOrder::Weighted { weights, .. } => weights.len(),
                    MonomialOrder::Elimination { split } => *split,
                    _ => vars.len(),
                },
            });
        }
        let basis = groebner_raw(&vars, ring, &generators, &order);
        Ok(CIdeal {
            vars,
            ring,
            generators,
            order,
            basis,
        })
    }

    /// Ideal under the default grevlex order.
    pub fn grevlex(vars: Vars, ring: Ring, generators: Vec<MPoly>) -> Result<Self> {
        Self::new(vars, ring, generators, MonomialOrder::GrevLex)
    }

    pub fn unit(vars: Vars, ring: Ring) -> Self {
        let one = MPoly::one(vars.clone(), ring);
        CIdeal {
            vars,
            ring,
            generators: vec![one.clone()],
            order: MonomialOrder::GrevLex,
            basis: vec![one],
        }
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn generators(&self) -> &[MPoly] {
        &self.generators
    }

    pub fn basis(&self) -> &[MPoly] {
        &self.basis
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn is_unit(&self) -> bool {
        self.basis.len() == 1 && self.basis[0].is_constant()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn normal_form(&self, f: &MPoly) -> Result<MPoly> {
        if f.ring() != self.ring {
            return Err(Error::RingMismatch(self.ring, f.ring()));
        }
        if f.vars() != &self.vars {
            return Err(Error::VariableMismatch);
        }
        let morder = ModuleOrder::pot(self.order.clone());
        let engine = Engine::new(&Commutative, &morder);
        let basis: Vec<Vector> = self.basis.iter().map(|g| to_vector(g, 0, &morder)).collect();
        let r = engine.reduce(to_vector(f, 0, &morder), &basis);
        Ok(from_vector(&r, &self.vars, self.ring))
    }

    pub fn contains(&self, f: &MPoly) -> Result<bool> {
        Ok(self.normal_form(f)?.is_zero())
    }

    pub fn contains_ideal(&self, other: &CIdeal) -> Result<bool> {
        for g in other.basis() {
            if !self.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Equality as ideals (mutual membership of bases).
    pub fn same_ideal(&self, other: &CIdeal) -> Result<bool> {
        Ok(self.contains_ideal(other)? && other.contains_ideal(self)?)
    }

    /// Equality of radicals, by radical membership of each basis in the other.
    pub fn same_radical(&self, other: &CIdeal) -> Result<bool> {
        for g in other.basis() {
            if !radical_member(g, self)? {
                return Ok(false);
            }
        }
        for g in self.basis() {
            if !radical_member(g, other)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The same ideal with its basis recomputed under another order.
    pub fn with_order(&self, order: MonomialOrder) -> Result<CIdeal> {
        if order == self.order {
            return Ok(self.clone());
        }
        CIdeal::new(self.vars.clone(), self.ring, self.generators.clone(), order)
    }
}

impl fmt::Display for CIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.basis.iter().map(|g| g.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

impl fmt::Debug for CIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CIdeal[{}; {:?}]{}", self.ring, self.vars, self)
    }
}

/// Remainder of `f` modulo the basis of `ideal`.
pub fn normal_form(f: &MPoly, ideal: &CIdeal) -> Result<MPoly> {
    ideal.normal_form(f)
}

/// Name of the Rabinowitsch tag variable appended to the ring.
pub const TAG_VARIABLE: &str = "_t";

/// Decides `f ∈ √I` by testing `1 ∈ I + (1 - t·f)` with the tag variable `t`
/// appended last under a block elimination order.
pub fn radical_member(f: &MPoly, ideal: &CIdeal) -> Result<bool> {
    if ideal.contains(f)? {
        return Ok(true);
    }
    if ideal.is_unit() {
        return Ok(true);
    }
    let n = ideal.vars().len();
    let mut names: Vec<String> = ideal.vars().iter().cloned().collect();
    names.push(TAG_VARIABLE.to_string());
    let ext: Vars = names.into();
    let ring = ideal.ring();
    let mut gens: Vec<MPoly> = ideal.basis().iter().map(|g| g.extend_vars(ext.clone())).collect();
    let t = MPoly::var(ext.clone(), ring, n)?;
    let one = MPoly::one(ext.clone(), ring);
    gens.push(&one - &(&t * &f.extend_vars(ext.clone())));
    let basis = groebner_raw(&ext, ring, &gens, &MonomialOrder::Elimination { split: n });
    Ok(basis.len() == 1 && basis[0].is_constant())
}

/// Krull dimension of `k[vars]/I`: the largest set `S` of variables such that
/// no leading monomial of a grevlex basis lives in `k[S]`. `-1` for the unit
/// ideal.
pub fn krull_dim(ideal: &CIdeal) -> Result<i64> {
    if ideal.is_unit() {
        return Ok(-1);
    }
    let grevlex;
    let ideal = if *ideal.order() == MonomialOrder::GrevLex {
        ideal
    } else {
        grevlex = ideal.with_order(MonomialOrder::GrevLex)?;
        &grevlex
    };
    let leads: Vec<Monomial> = ideal
        .basis()
        .iter()
        .map(|g| g.leading_term(&MonomialOrder::GrevLex).expect("nonzero").0.clone())
        .collect();
    Ok(max_independent_set(ideal.vars().len(), &leads) as i64)
}

/// Size of the largest variable subset avoiding the support of every
/// monomial in `leads`.
pub(crate) fn max_independent_set(nvars: usize, leads: &[Monomial]) -> usize {
    max_independent_subset(nvars, leads).len()
}

/// A largest variable subset avoiding the support of every monomial in
/// `leads`; the first one in increasing bitmask order.
pub(crate) fn max_independent_subset(nvars: usize, leads: &[Monomial]) -> Vec<usize> {
    assert!(nvars < 32, "subset search is exponential in the variable count");
    let supports: Vec<u32> = leads
        .iter()
        .map(|m| m.support().fold(0u32, |acc, i| acc | (1 << i)))
        .collect();
    let mut best: Option<u32> = None;
    for subset in 0u32..(1 << nvars) {
        if best.is_some_and(|b| subset.count_ones() <= b.count_ones()) {
            continue;
        }
        if supports.iter().all(|&s| s & !subset != 0) {
            best = Some(subset);
        }
    }
    best.map_or_else(Vec::new, |b| (0..nvars).filter(|i| b & (1 << i) != 0).collect())
}
