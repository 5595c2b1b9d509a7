//! Submodules of free modules `R^r`, syzygies and colon ideals.
//!
//! Syzygies and colons are computed by elimination over components: each
//! column is extended by tag coordinates, a position-over-term basis is
//! computed, and the basis elements whose leading term sits in a tag
//! component are exactly the relations (their data coordinates vanish).

use super::engine::{Commutative, Engine, Term, Vector};
use super::{check_field, CIdeal, ModuleOrder};
use crate::algebra::{Coeff, MPoly, MonomialOrder, Ring, Vars};
use crate::error::{Error, Result};

fn column_vector(col: &[MPoly], offset: usize, order: &ModuleOrder) -> Vector {
    let mut v: Vector = Vec::new();
    for (i, f) in col.iter().enumerate() {
        for (m, c) in f.terms() {
            v.push((Term::new(offset + i, m.clone()), c.clone()));
        }
    }
    super::engine::sort_vector(v, order)
}

fn split_vector(v: &[(Term, Coeff)], rank: usize, vars: &Vars, ring: Ring) -> Vec<MPoly> {
    let mut parts: Vec<Vec<(crate::algebra::Monomial, Coeff)>> = vec![Vec::new(); rank];
    for (t, c) in v {
        parts[t.comp].push((t.mono.clone(), c.clone()));
    }
    parts
        .into_iter()
        .map(|ts| MPoly::from_terms(vars.clone(), ring, ts))
        .collect()
}

fn check_columns(vars: &Vars, ring: Ring, rank: usize, columns: &[Vec<MPoly>]) -> Result<()> {
    check_field(ring)?;
    for col in columns {
        if col.len() != rank {
            return Err(Error::DimensionMismatch {
                expected: rank,
                got: col.len(),
            });
        }
        for f in col {
            if f.ring() != ring {
                return Err(Error::RingMismatch(ring, f.ring()));
            }
            if f.vars() != vars {
                return Err(Error::VariableMismatch);
            }
        }
    }
    Ok(())
}

/// A submodule of `R^rank` given by generating columns, with a reduced
/// Gröbner basis for its module order.
#[derive(Clone, Debug)]
pub struct FreeSubmodule {
    vars: Vars,
    ring: Ring,
    rank: usize,
    columns: Vec<Vec<MPoly>>,
    order: ModuleOrder,
    basis: Vec<Vec<MPoly>>,
}

impl FreeSubmodule {
    pub fn new(
        vars: Vars,
        ring: Ring,
        rank: usize,
        columns: Vec<Vec<MPoly>>,
        order: ModuleOrder,
    ) -> Result<Self> {
        check_columns(&vars, ring, rank, &columns)?;
        let engine = Engine::new(&Commutative, &order);
        let vecs = columns.iter().map(|c| column_vector(c, 0, &order)).collect();
        let basis = engine
            .groebner(vecs, rank)
            .iter()
            .map(|v| split_vector(v, rank, &vars, ring))
            .collect();
        Ok(FreeSubmodule {
            vars,
            ring,
            rank,
            columns,
            order,
            basis,
        })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn columns(&self) -> &[Vec<MPoly>] {
        &self.columns
    }

    pub fn basis(&self) -> &[Vec<MPoly>] {
        &self.basis
    }

    pub fn order(&self) -> &ModuleOrder {
        &self.order
    }

    /// Module normal form of `v`.
    pub fn reduce(&self, v: &[MPoly]) -> Result<Vec<MPoly>> {
        check_columns(&self.vars, self.ring, self.rank, std::slice::from_ref(&v.to_vec()))?;
        let engine = Engine::new(&Commutative, &self.order);
        let basis: Vec<Vector> = self
            .basis
            .iter()
            .map(|c| column_vector(c, 0, &self.order))
            .collect();
        let r = engine.reduce(column_vector(v, 0, &self.order), &basis);
        Ok(split_vector(&r, self.rank, &self.vars, self.ring))
    }

    pub fn contains(&self, v: &[MPoly]) -> Result<bool> {
        Ok(self.reduce(v)?.iter().all(|f| f.is_zero()))
    }
}

/// Generators of the syzygy module of `columns` (vectors in `R^rank`): all
/// `(c_1, ..., c_m)` with `Σ c_j · column_j = 0`.
pub fn syzygies(vars: &Vars, ring: Ring, rank: usize, columns: &[Vec<MPoly>]) -> Result<Vec<Vec<MPoly>>> {
    check_columns(vars, ring, rank, columns)?;
    let m = columns.len();
    let order = ModuleOrder::pot(MonomialOrder::GrevLex);
    let mut gens: Vec<Vector> = Vec::with_capacity(m);
    for (j, col) in columns.iter().enumerate() {
        let mut v = column_vector(col, 0, &order);
        v.push((
            Term::new(rank + j, crate::algebra::Monomial::one(vars.len())),
            ring.one(),
        ));
        gens.push(super::engine::sort_vector(v, &order));
    }
    let mut engine = Engine::new(&Commutative, &order);
    engine.stop_on_unit = false;
    let basis = engine.groebner(gens, rank + m);
    Ok(basis
        .iter()
        .filter(|v| v[0].0.comp >= rank)
        .map(|v| {
            let shifted: Vector = v
                .iter()
                .map(|(t, c)| (Term::new(t.comp - rank, t.mono.clone()), c.clone()))
                .collect();
            split_vector(&shifted, m, vars, ring)
        })
        .collect())
}

/// The colon ideal `(N : v) = { z : z·v ∈ N }`.
///
/// This is the projection onto the `v`-coordinate of the syzygies of
/// `[v | columns of N]`, obtained by carrying a single tag coordinate on `v`.
pub fn module_colon(module: &FreeSubmodule, v: &[MPoly]) -> Result<CIdeal> {
    let rank = module.rank();
    if v.len() != rank {
        return Err(Error::DimensionMismatch {
            expected: rank,
            got: v.len(),
        });
    }
    let (vars, ring) = (module.vars().clone(), module.ring());
    check_columns(&vars, ring, rank, std::slice::from_ref(&v.to_vec()))?;
    let order = ModuleOrder::pot(MonomialOrder::GrevLex);
    let mut tagged = column_vector(v, 0, &order);
    tagged.push((
        Term::new(rank, crate::algebra::Monomial::one(vars.len())),
        ring.one(),
    ));
    let mut gens = vec![super::engine::sort_vector(tagged, &order)];
    // The basis of N already spans N; it is usually smaller than the columns.
    for col in module.basis() {
        gens.push(column_vector(col, 0, &order));
    }
    let mut engine = Engine::new(&Commutative, &order);
    engine.stop_on_unit = false;
    let basis = engine.groebner(gens, rank + 1);
    let colon: Vec<MPoly> = basis
        .iter()
        .filter(|w| w[0].0.comp == rank)
        .map(|w| {
            MPoly::from_terms(
                vars.clone(),
                ring,
                w.iter().map(|(t, c)| (t.mono.clone(), c.clone())),
            )
        })
        .collect();
    CIdeal::grevlex(vars, ring, colon)
}
