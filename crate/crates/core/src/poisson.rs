//! Poisson brackets on the twisted ring `F_p[X, Xi]` and coisotropy tests.
//!
//! The canonical bracket uses `{Xi_i, X_j} = δ_ij`. The deformation bracket
//! lifts both arguments to central elements of the Weyl algebra over
//! `Z/p²`, commutes them, and divides by `p`. The two agree up to the fixed
//! sign [`BKK_SIGN`].

use serde::{Deserialize, Serialize};

use crate::algebra::{Coeff, MPoly, Ring};
use crate::center::TwistIso;
use crate::cgb::{radical_member, CIdeal};
use crate::error::{Error, Result};
use crate::weyl::WeylOp;

/// `bkk_bracket = BKK_SIGN · canonical_bracket`.
pub const BKK_SIGN: i64 = -1;

fn half_vars(f: &MPoly) -> Result<usize> {
    let k = f.nvars();
    if !k.is_multiple_of(2) {
        return Err(Error::DimensionMismatch {
            expected: k + 1,
            got: k,
        });
    }
    Ok(k / 2)
}

/// `{f, g} = Σ_i (∂f/∂Xi_i · ∂g/∂X_i − ∂f/∂X_i · ∂g/∂Xi_i)`.
pub fn canonical_bracket(f: &MPoly, g: &MPoly) -> Result<MPoly> {
    f.same_ring(g)?;
    let n = half_vars(f)?;
    let mut out = MPoly::zero(f.vars().clone(), f.ring());
    for i in 0..n {
        let a = f.partial(n + i)?.try_mul(&g.partial(i)?)?;
        let b = f.partial(i)?.try_mul(&g.partial(n + i)?)?;
        out = out.try_add(&a.try_sub(&b)?)?;
    }
    Ok(out)
}

/// Lift of a twisted polynomial to a central element of `A_n(Z/p²)`, using
/// coefficient representatives in `[0, p)`.
pub fn lift_central(iso: &TwistIso, f: &MPoly) -> Result<WeylOp> {
    let p = iso.prime();
    let big = Ring::IntMod(p * p);
    iso.embed(f)?.map_coeffs(big, |c| big.embed(c))
}

/// The deformation bracket `([f̃, g̃] / p) mod p`, read back in the twisted
/// ring.
pub fn bkk_bracket(iso: &TwistIso, f: &MPoly, g: &MPoly) -> Result<MPoly> {
    f.same_ring(g)?;
    let p = iso.prime();
    let c = lift_central(iso, f)?.commutator(&lift_central(iso, g)?)?;
    let small = iso.ring();
    let reduced = c.map_coeffs(small, |a| match a {
        Coeff::IntMod { value, .. } if value % p == 0 => Ok(small.from_u64(value / p)),
        _ => Err(Error::NotDeformationDivisible(c.to_string())),
    })?;
    iso.decompose(&reduced)
}

/// Which bracket a coisotropy test uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Bracket {
    Canonical,
    Bkk,
}

/// Both brackets for one prime and dimension.
#[derive(Clone, Debug)]
pub struct BracketContext {
    iso: TwistIso,
}

impl BracketContext {
    pub fn new(p: u64, n: usize) -> Result<Self> {
        Ok(BracketContext {
            iso: TwistIso::new(p, n)?,
        })
    }

    pub fn iso(&self) -> &TwistIso {
        &self.iso
    }

    pub fn sign(&self) -> i64 {
        BKK_SIGN
    }

    pub fn bracket(&self, kind: Bracket, f: &MPoly, g: &MPoly) -> Result<MPoly> {
        match kind {
            Bracket::Canonical => canonical_bracket(f, g),
            Bracket::Bkk => bkk_bracket(&self.iso, f, g),
        }
    }
}

/// A pair of generators whose bracket is not in the radical.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoisotropyWitness {
    /// Indices into the generator list, `i < j`.
    pub i: usize,
    pub j: usize,
    pub value: MPoly,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coisotropy {
    pub coisotropic: bool,
    pub witness: Option<CoisotropyWitness>,
}

/// Whether `{g_i, g_j} ∈ √J` for all pairs of the supplied generators of `J`.
pub fn coisotropy_check(ideal: &CIdeal, kind: Bracket) -> Result<Coisotropy> {
    let gens = ideal.generators();
    let ctx = match kind {
        Bracket::Canonical => None,
        Bracket::Bkk => Some(BracketContext::new(
            ideal.ring().characteristic(),
            ideal.vars().len() / 2,
        )?),
    };
    for i in 0..gens.len() {
        for j in i + 1..gens.len() {
            let value = match &ctx {
                None => canonical_bracket(&gens[i], &gens[j])?,
                Some(c) => c.bracket(kind, &gens[i], &gens[j])?,
            };
            if !radical_member(&value, ideal)? {
                return Ok(Coisotropy {
                    coisotropic: false,
                    witness: Some(CoisotropyWitness { i, j, value }),
                });
            }
        }
    }
    Ok(Coisotropy {
        coisotropic: true,
        witness: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn setup(p: u64, n: usize) -> (TwistIso, Vec<MPoly>) {
        let iso = TwistIso::new(p, n).unwrap();
        let v = (0..2 * n).map(|i| iso.var(i).unwrap()).collect();
        (iso, v)
    }

    #[test]
    fn canonical_examples() {
        let (_, v) = setup(5, 1);
        let (x, xi) = (&v[0], &v[1]);
        assert_eq!(canonical_bracket(xi, x).unwrap().to_string(), "1");
        assert!(canonical_bracket(x, x).unwrap().is_zero());
        assert_eq!(canonical_bracket(&xi.pow(2), x).unwrap(), xi.scale(&Ring::IntMod(5).from_u64(2)));
    }

    #[test]
    fn bkk_examples() {
        let (iso, v) = setup(2, 1);
        assert_eq!(bkk_bracket(&iso, &v[1], &v[0]).unwrap().to_string(), "1");
        let (iso, v) = setup(3, 1);
        let (x, xi) = (&v[0], &v[1]);
        assert_eq!(bkk_bracket(&iso, xi, x).unwrap().to_string(), "2");
        let f = &(x * xi) - &xi.pow(2);
        assert!(bkk_bracket(&iso, &f, &f).unwrap().is_zero());
        assert_eq!(bkk_bracket(&iso, x, &(x * xi)).unwrap(), x.clone());
    }

    #[test]
    fn coisotropy_examples() {
        let (_, v) = setup(3, 1);
        let one = MPoly::one(v[0].vars().clone(), v[0].ring());
        let j = CIdeal::grevlex(v[0].vars().clone(), v[0].ring(), vec![&v[1] - &one]).unwrap();
        assert!(coisotropy_check(&j, Bracket::Canonical).unwrap().coisotropic);

        let j = CIdeal::grevlex(v[0].vars().clone(), v[0].ring(), vec![v[0].clone(), v[1].clone()]).unwrap();
        let c = coisotropy_check(&j, Bracket::Canonical).unwrap();
        assert!(!c.coisotropic);
        let w = c.witness.unwrap();
        assert_eq!((w.i, w.j), (0, 1));
        assert_eq!(w.value, -&one);
        assert!(!coisotropy_check(&j, Bracket::Bkk).unwrap().coisotropic);

        let (_, v) = setup(3, 2);
        let j = CIdeal::grevlex(v[0].vars().clone(), v[0].ring(), vec![v[0].clone(), v[3].clone()]).unwrap();
        assert!(coisotropy_check(&j, Bracket::Canonical).unwrap().coisotropic);
        assert!(coisotropy_check(&j, Bracket::Bkk).unwrap().coisotropic);
    }
}
