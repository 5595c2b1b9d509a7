#![allow(dead_code)]

use proptest::prelude::*;

use pweyl::algebra::{vars, Vars};
use pweyl::center::twisted_vars;
use pweyl::{MPoly, Monomial, Ring, WeylOp};

pub fn ring_vars(k: usize) -> Vars {
    let names: Vec<String> = (1..=k).map(|i| format!("y{i}")).collect();
    vars(&names)
}

/// Polynomials in `vs` over `F_p` with at most `terms` terms, each of total
/// degree at most `degree`.
pub fn poly(vs: Vars, p: u64, terms: usize, degree: u32) -> impl Strategy<Value = MPoly> {
    let k = vs.len();
    prop::collection::vec((prop::collection::vec(0..=degree, k), 1..p), 0..=terms).prop_map(move |ts| {
        let ring = Ring::IntMod(p);
        ts.into_iter().fold(MPoly::zero(vs.clone(), ring), |acc, (mut e, c)| {
            while e.iter().sum::<u32>() > degree {
                let i = e.iter().position(|&v| v > 0).unwrap();
                e[i] -= 1;
            }
            &acc + &MPoly::monomial(vs.clone(), Monomial::from_exponents(&e), ring.from_u64(c))
        })
    })
}

pub fn nonzero_poly(vs: Vars, p: u64, terms: usize, degree: u32) -> impl Strategy<Value = MPoly> {
    poly(vs, p, terms, degree).prop_filter("nonzero", |f| !f.is_zero())
}

pub fn twisted(n: usize, p: u64, terms: usize, degree: u32) -> impl Strategy<Value = MPoly> {
    poly(twisted_vars(n), p, terms, degree)
}

/// Weyl operators over `ring` with exponents below `bound`.
pub fn weyl_in(n: usize, ring: Ring, terms: usize, bound: u32, coeffs: u64) -> impl Strategy<Value = WeylOp> {
    let mono = (prop::collection::vec(0..bound, n), prop::collection::vec(0..bound, n), 1..coeffs);
    prop::collection::vec(mono, 0..=terms).prop_map(move |ts| {
        ts.into_iter().fold(WeylOp::zero(n, ring), |acc, (a, b, c)| {
            &acc + &WeylOp::monomial(&a, &b, ring.from_u64(c))
        })
    })
}

pub fn weyl(n: usize, p: u64, terms: usize, bound: u32) -> impl Strategy<Value = WeylOp> {
    weyl_in(n, Ring::IntMod(p), terms, bound, p)
}
