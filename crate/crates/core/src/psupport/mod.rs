//! p-supports of cyclic D-modules `A_n / I` and the reports built on them.
//!
//! A module is given in characteristic zero (or directly over `F_p`) by
//! generators of `I`. At a prime `p` the generators are reduced mod `p`, the
//! central annihilator `J = I ∩ Z` is computed in the twisted ring, and the
//! report records its dimension, coisotropy, conicality and the generic
//! fiber rank of `A_n / I` over `Z`.

pub mod corpus;
mod rank;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::algebra::{is_prime, MonomialOrder, Ring};
use crate::center::{central_annihilator, exact_applicable, AnnStatus, Annihilator};
use crate::cgb::{krull_dim, radical_member, CIdeal};
use crate::error::{Error, Result};
use crate::expr::parse_weyl;
use crate::poisson::{coisotropy_check, Bracket};
use crate::weyl::WeylOp;
use crate::wgb::{initial_weighted, symbol_vars, LeftIdeal};

pub use rank::{generic_rank, FiberSample, GenericRank, SAMPLE_RETRIES, EXHAUSTIVE_LIMIT};

/// Version of the [`SupportReport`] JSON layout.
pub const SCHEMA_VERSION: u32 = 1;

/// Seed used for point sampling when none is given.
pub const DEFAULT_SEED: u64 = 0x005e_ed0f_9e11;

/// A cyclic module `A_n / A_n·(g_1, ..., g_m)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DModuleSpec {
    pub name: Option<String>,
    n: usize,
    generators: Vec<WeylOp>,
}

impl DModuleSpec {
    /// All generators must be nonzero, in `n` variables, over one ring.
    pub fn new(name: Option<String>, n: usize, generators: Vec<WeylOp>) -> Result<Self> {
        let ring = generators.first().map(WeylOp::ring);
        for g in &generators {
            if g.is_zero() {
                return Err(Error::ZeroInput);
            }
            if g.n() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: g.n(),
                });
            }
            if Some(g.ring()) != ring {
                return Err(Error::RingMismatch(ring.expect("nonempty"), g.ring()));
            }
        }
        Ok(DModuleSpec {
            name,
            n,
            generators,
        })
    }

    /// Parses each generator over the rationals.
    pub fn parse<S: AsRef<str>>(name: Option<String>, n: usize, generators: &[S]) -> Result<Self> {
        let gens = generators
            .iter()
            .map(|s| parse_weyl(s.as_ref(), n, Ring::Rational))
            .collect::<Result<Vec<_>>>()?;
        Self::new(name, n, gens)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[WeylOp] {
        &self.generators
    }

    /// Coefficient ring of the generators (rationals for an empty list).
    pub fn ring(&self) -> Ring {
        self.generators.first().map_or(Ring::Rational, WeylOp::ring)
    }
}

/// Which primes a specification can be reduced at.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecializationContext {
    pub prime: u64,
    /// Distinct denominators of the rational coefficients, ascending.
    pub denominators: Vec<BigInt>,
    /// A denominator divisible by `prime`, if any.
    pub offending: Option<BigInt>,
}

impl SpecializationContext {
    pub fn new(spec: &DModuleSpec, prime: u64) -> Self {
        let mut denominators: Vec<BigInt> = spec
            .generators
            .iter()
            .flat_map(|g| g.terms().filter_map(|(_, c)| c.as_rational().map(|q| q.denom().clone())))
            .filter(|d| !d.is_one())
            .collect();
        denominators.sort();
        denominators.dedup();
        let p = BigInt::from(prime);
        let offending = denominators
            .iter()
            .find(|d| (*d % &p) == BigInt::from(0))
            .cloned();
        SpecializationContext {
            prime,
            denominators,
            offending,
        }
    }

    pub fn is_good(&self) -> bool {
        self.offending.is_none()
    }
}

/// Reduces the generators mod `p` and returns the left ideal they generate.
pub fn specialize_mod_p(spec: &DModuleSpec, p: u64) -> Result<LeftIdeal> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let fp = Ring::IntMod(p);
    let gens = match spec.ring() {
        Ring::Rational => {
            let ctx = SpecializationContext::new(spec, p);
            if let Some(d) = ctx.offending {
                return Err(Error::BadPrime {
                    prime: p,
                    denominator: d.to_string(),
                });
            }
            spec.generators
                .iter()
                .map(|g| g.map_coeffs(fp, |c| fp.embed(c)))
                .collect::<Result<Vec<_>>>()?
        }
        r if r == fp => spec.generators.clone(),
        r => return Err(Error::RingMismatch(fp, r)),
    };
    LeftIdeal::grevlex(spec.n, fp, gens)
}

/// Whether `√J` is stable under `Xi ↦ t·Xi`: every fiber-weight homogeneous
/// part of every reduced basis element lies in `√J`.
pub fn is_conical(ideal: &CIdeal) -> Result<bool> {
    let n = ideal.vars().len() / 2;
    let weights: Vec<i64> = (0..2 * n).map(|i| i64::from(i >= n)).collect();
    for g in ideal.basis() {
        for part in g.weighted_parts(&weights).values() {
            if !radical_member(part, ideal)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Characteristic ideal in `x1..xn, xi1..xin` and its dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacteristicVariety {
    pub ideal: CIdeal,
    pub dimension: i64,
}

/// Symbols of a left Gröbner basis under an order refining the order
/// filtration generate the characteristic ideal.
pub fn characteristic_variety(spec: &DModuleSpec) -> Result<CharacteristicVariety> {
    let ring = spec.ring();
    if ring != Ring::Rational {
        return Err(Error::RingMismatch(Ring::Rational, ring));
    }
    let n = spec.n;
    let left = LeftIdeal::new(
        n,
        ring,
        spec.generators.clone(),
        MonomialOrder::order_filtration(n),
    )?;
    let symbols = left
        .basis()
        .iter()
        .map(initial_weighted)
        .collect::<Result<Vec<_>>>()?;
    let vars = symbol_vars(n);
    let ideal = CIdeal::grevlex(vars.clone(), ring, symbols)?;
    let ideal = CIdeal::grevlex(vars, ring, ideal.basis().to_vec())?;
    let dimension = krull_dim(&ideal)?;
    Ok(CharacteristicVariety { ideal, dimension })
}

/// Settings for [`p_support`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Options {
    pub seed: u64,
    /// Number of sample points the generic rank is taken over.
    pub attempts: usize,
    pub generic_rank: bool,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            seed: DEFAULT_SEED,
            attempts: 5,
            generic_rank: true,
        }
    }
}

/// A pair of annihilator generators whose bracket leaves the radical.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessReport {
    pub first: String,
    pub second: String,
    pub bracket: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SampleReport {
    pub field: String,
    pub point: Vec<String>,
    pub jacobian_rank: usize,
    pub fiber_dimension: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenericRankReport {
    pub rank: u64,
    pub agreement: bool,
    pub samples: Vec<SampleReport>,
}

/// The verdict for one module at one prime.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SupportReport {
    pub schema_version: u32,
    pub prime: u64,
    pub n: usize,
    pub annihilator: Vec<String>,
    pub annihilator_status: AnnStatus,
    pub dimension: i64,
    pub coisotropic: bool,
    pub coisotropy_witness: Option<WitnessReport>,
    pub lagrangian: bool,
    pub conical: bool,
    pub generic_rank: Option<GenericRankReport>,
    pub notes: Vec<String>,
}

/// Full pipeline: specialize, left basis, central annihilator, dimension,
/// coisotropy, conicality and (optionally) the generic rank.
pub fn p_support(spec: &DModuleSpec, p: u64, options: &Options) -> Result<SupportReport> {
    let left = specialize_mod_p(spec, p)?;
    let Annihilator { ideal, status } = central_annihilator(&left)?;
    let dimension = krull_dim(&ideal)?;
    let coiso = coisotropy_check(&ideal, Bracket::Canonical)?;
    let conical = is_conical(&ideal)?;
    let gens = ideal.generators();
    let mut notes = Vec::new();

    let generic = if ideal.is_unit() {
        notes.push("empty support: the annihilator is the unit ideal".to_string());
        None
    } else if !options.generic_rank {
        None
    } else if !exact_applicable(p, spec.n) {
        notes.push(format!(
            "generic rank unavailable: p^(2n) = {p}^{} exceeds the exact presentation limit",
            2 * spec.n
        ));
        None
    } else {
        match generic_rank(&left, &ideal, options.attempts, options.seed) {
            Ok(r) => {
                if !r.agreement {
                    notes.push(format!(
                        "fiber dimensions disagree across sample points; reporting the modal value {}",
                        r.rank
                    ));
                }
                Some(GenericRankReport {
                    rank: r.rank,
                    agreement: r.agreement,
                    samples: r
                        .samples
                        .iter()
                        .map(|s| SampleReport {
                            field: s.field.to_string(),
                            point: s.point.iter().map(ToString::to_string).collect(),
                            jacobian_rank: s.jacobian_rank,
                            fiber_dimension: s.fiber_dimension,
                        })
                        .collect(),
                })
            }
            Err(Error::NoPointsFound) => {
                notes.push("generic rank unavailable: no points found on the support".to_string());
                None
            }
            Err(e) => return Err(e),
        }
    };
    if let AnnStatus::Truncated(d) = status {
        notes.push(format!(
            "annihilator kernels did not stabilize up to degree {d}; the ideal may be too small"
        ));
    }
    if dimension >= 0 {
        notes.push("dimension is the top dimension; equidimensionality is not checked".to_string());
    }

    Ok(SupportReport {
        schema_version: SCHEMA_VERSION,
        prime: p,
        n: spec.n,
        annihilator: gens.iter().map(ToString::to_string).collect(),
        annihilator_status: status,
        dimension,
        coisotropic: coiso.coisotropic,
        coisotropy_witness: coiso.witness.map(|w| WitnessReport {
            first: gens[w.i].to_string(),
            second: gens[w.j].to_string(),
            bracket: w.value.to_string(),
        }),
        lagrangian: dimension == spec.n as i64 && coiso.coisotropic,
        conical,
        generic_rank: generic,
        notes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(gens: &[&str]) -> DModuleSpec {
        DModuleSpec::parse(None, 1, gens).unwrap()
    }

    #[test]
    fn specialization() {
        let s = spec(&["d1 - 1/2"]);
        let i = specialize_mod_p(&s, 3).unwrap();
        assert_eq!(i.generators()[0], parse_weyl("d1 - 2", 1, Ring::IntMod(3)).unwrap());
        assert!(matches!(
            specialize_mod_p(&s, 2),
            Err(Error::BadPrime { prime: 2, .. })
        ));
        let ctx = SpecializationContext::new(&s, 2);
        assert!(!ctx.is_good());
        assert_eq!(ctx.denominators, vec![BigInt::from(2)]);
        let i = specialize_mod_p(&spec(&["7*d1 - 9*x1"]), 5).unwrap();
        assert_eq!(i.generators()[0].to_string(), "x1 + 2*d1");
        assert!(matches!(specialize_mod_p(&s, 4), Err(Error::NotPrime(4))));
    }

    #[test]
    fn conicality() {
        let v = crate::center::twisted_vars(1);
        let r = Ring::IntMod(5);
        let ideal = |s: &str| {
            let f = crate::expr::parse_twisted(s, 1, r).unwrap();
            CIdeal::grevlex(v.clone(), r, vec![f]).unwrap()
        };
        assert!(is_conical(&ideal("Xi1")).unwrap());
        assert!(!is_conical(&ideal("Xi1 - 1")).unwrap());
        assert!(is_conical(&ideal("X1*Xi1")).unwrap());
    }

    #[test]
    fn characteristic_varieties() {
        let show = |gens: &[&str]| {
            let c = characteristic_variety(&spec(gens)).unwrap();
            let g: Vec<String> = c.ideal.generators().iter().map(ToString::to_string).collect();
            (g, c.dimension)
        };
        assert_eq!(show(&["d1 - 1"]), (vec!["xi1".to_string()], 1));
        assert_eq!(show(&["x1*d1 - 1/2"]), (vec!["x1*xi1".to_string()], 1));
        assert_eq!(show(&["x1"]), (vec!["x1".to_string()], 1));
    }

    #[test]
    fn report_examples() {
        let opts = Options::default();
        let r = p_support(&spec(&["d1"]), 3, &opts).unwrap();
        assert_eq!(r.annihilator, vec!["Xi1"]);
        assert_eq!((r.dimension, r.coisotropic, r.lagrangian, r.conical), (1, true, true, true));
        assert_eq!(r.generic_rank.unwrap().rank, 3);

        let r = p_support(&spec(&["d1 - 1"]), 3, &opts).unwrap();
        assert_eq!(r.annihilator, vec!["Xi1 - 1"]);
        assert!(r.lagrangian && !r.conical);
        assert_eq!(r.generic_rank.unwrap().rank, 3);

        let r = p_support(&spec(&["d1 - x1"]), 2, &opts).unwrap();
        assert_eq!(r.annihilator, vec!["X1 + Xi1 + 1"]);
        assert!(r.lagrangian && !r.conical);
        assert_eq!(r.generic_rank.unwrap().rank, 2);

        let r = p_support(&spec(&["x1*d1"]), 5, &opts).unwrap();
        assert_eq!(r.annihilator, vec!["X1*Xi1"]);
        assert!(r.lagrangian && r.conical);

        let r = p_support(&spec(&["d1", "x1"]), 3, &opts).unwrap();
        assert_eq!(r.annihilator, vec!["1"]);
        assert_eq!((r.dimension, r.lagrangian), (-1, false));
        assert!(r.generic_rank.is_none());
    }
}
