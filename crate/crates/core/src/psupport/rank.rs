//! Fiber dimensions of `A_n / I` over points of its p-support.

use std::collections::{BTreeMap, HashSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{Coeff, GaloisField, MPoly, MonomialOrder, Ring};
use crate::center::Presentation;
use crate::cgb::{max_independent_subset, CIdeal};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::wgb::LeftIdeal;

/// Point sets up to this size are enumerated exhaustively.
pub const EXHAUSTIVE_LIMIT: u64 = 10_000;
/// Random draws per extension field when enumeration is too large.
pub const SAMPLE_RETRIES: usize = 200;
/// Largest extension degree sampled.
const MAX_DEGREE: u8 = 3;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberSample {
    pub field: Ring,
    pub point: Vec<Coeff>,
    pub jacobian_rank: usize,
    pub fiber_dimension: u64,
}

/// Modal fiber dimension over the chosen sample points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenericRank {
    pub rank: u64,
    /// Whether every sample gave the same dimension.
    pub agreement: bool,
    pub samples: Vec<FiberSample>,
}

fn field(p: u64, k: u8) -> Result<Ring> {
    Ok(if k == 1 {
        Ring::IntMod(p)
    } else {
        Ring::Galois(GaloisField::new(p, k)?)
    })
}

fn in_prime_field(c: &Coeff) -> bool {
    match c {
        Coeff::Galois { value, .. } => value[1..].iter().all(|&v| v == 0),
        _ => true,
    }
}

struct Sampler<'a> {
    gens: &'a [MPoly],
    ring: Ring,
    q: u64,
    /// Skip points with all coordinates in the prime field.
    skip_prime: bool,
    seen: HashSet<Vec<Coeff>>,
    found: Vec<Vec<Coeff>>,
}

impl Sampler<'_> {
    fn consider(&mut self, point: Vec<Coeff>) -> Result<()> {
        if self.skip_prime && point.iter().all(in_prime_field) {
            return Ok(());
        }
        for g in self.gens {
            if !g.eval(&point, self.ring)?.is_zero() {
                return Ok(());
            }
        }
        if self.seen.insert(point.clone()) {
            self.found.push(point);
        }
        Ok(())
    }

    /// Every assignment of the `free` coordinates, others taken from `base`.
    fn enumerate(&mut self, base: &[Coeff], free: &[usize]) -> Result<()> {
        let total = self.q.pow(free.len() as u32);
        for index in 0..total {
            let mut point = base.to_vec();
            let mut rest = index;
            for &v in free {
                point[v] = self.ring.element(rest % self.q).expect("in range");
                rest /= self.q;
            }
            self.consider(point)?;
        }
        Ok(())
    }
}

fn points_on(j: &CIdeal, k: u8, wanted: usize, rng: &mut ChaCha8Rng) -> Result<Vec<Vec<Coeff>>> {
    let p = j.ring().characteristic();
    let ring = field(p, k)?;
    let q = ring.size().expect("finite field");
    let nvars = j.vars().len();
    let mut s = Sampler {
        gens: j.basis(),
        ring,
        q,
        skip_prime: k > 1,
        seen: HashSet::new(),
        found: Vec::new(),
    };
    let all: Vec<usize> = (0..nvars).collect();
    let zero = vec![ring.zero(); nvars];
    let fits = |count: usize| {
        u32::try_from(count)
            .ok()
            .and_then(|c| q.checked_pow(c))
            .is_some_and(|t| t <= EXHAUSTIVE_LIMIT)
    };
    if fits(nvars) {
        s.enumerate(&zero, &all)?;
        return Ok(s.found);
    }
    // Random values on an independent set, exhaustive on the rest.
    let leads: Vec<_> = j
        .basis()
        .iter()
        .filter_map(|g| g.leading_term(&MonomialOrder::GrevLex).map(|(m, _)| m.clone()))
        .collect();
    let independent = max_independent_subset(nvars, &leads);
    let dependent: Vec<usize> = all.iter().copied().filter(|v| !independent.contains(v)).collect();
    let (randomized, free) = if fits(dependent.len()) {
        (independent, dependent)
    } else {
        (all, Vec::new())
    };
    for _ in 0..SAMPLE_RETRIES {
        if s.found.len() >= wanted {
            break;
        }
        let mut base = zero.clone();
        for &v in &randomized {
            base[v] = ring.element(rng.gen_range(0..q)).expect("in range");
        }
        s.enumerate(&base, &free)?;
    }
    Ok(s.found)
}

fn jacobian_rank(jac: &[Vec<MPoly>], point: &[Coeff], ring: Ring) -> Result<usize> {
    let rows = jac
        .iter()
        .map(|row| row.iter().map(|f| f.eval(point, ring)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    if rows.is_empty() {
        return Ok(0);
    }
    Matrix::from_rows(ring, rows)?.rank()
}

fn fiber_dimension(pres: &Presentation, point: &[Coeff], ring: Ring) -> Result<u64> {
    let rank = pres.rank();
    let mut m = Matrix::zeros(ring, rank, pres.columns.len());
    for (j, col) in pres.columns.iter().enumerate() {
        for (i, f) in col.iter().enumerate() {
            if !f.is_zero() {
                m.set(i, j, f.eval(point, ring)?);
            }
        }
    }
    Ok((rank - m.rank()?) as u64)
}

/// Dimension of `(A_n / I) ⊗ κ(q)` at points `q` of `V(J)` over `F_{p^k}`,
/// `k = 1..3`, restricted to points where the Jacobian of the basis of `J`
/// has maximal rank among those found; the modal value over the first
/// `attempts` of them.
pub fn generic_rank(left: &LeftIdeal, j: &CIdeal, attempts: usize, seed: u64) -> Result<GenericRank> {
    if j.is_unit() {
        return Err(Error::EmptySupport);
    }
    let pres = Presentation::new(left)?;
    let attempts = attempts.max(1);
    let jac: Vec<Vec<MPoly>> = j
        .basis()
        .iter()
        .map(|g| (0..g.nvars()).map(|v| g.partial(v)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;

    let mut candidates: Vec<(Ring, Vec<Coeff>, usize)> = Vec::new();
    for k in 1..=MAX_DEGREE {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(u64::from(k)));
        let ring = field(j.ring().characteristic(), k)?;
        for point in points_on(j, k, 4 * attempts, &mut rng)? {
            let r = jacobian_rank(&jac, &point, ring)?;
            candidates.push((ring, point, r));
        }
    }
    let best = candidates
        .iter()
        .map(|c| c.2)
        .max()
        .ok_or(Error::NoPointsFound)?;
    let mut samples = Vec::new();
    for (ring, point, r) in candidates.into_iter().filter(|c| c.2 == best).take(attempts) {
        let fiber_dimension = fiber_dimension(&pres, &point, ring)?;
        samples.push(FiberSample {
            field: ring,
            point,
            jacobian_rank: r,
            fiber_dimension,
        });
    }
    let mut counts: BTreeMap<u64, usize> = BTreeMap::new();
    for s in &samples {
        *counts.entry(s.fiber_dimension).or_default() += 1;
    }
    let top = counts.values().copied().max().expect("nonempty");
    let rank = counts
        .iter()
        .find(|(_, &c)| c == top)
        .map(|(&v, _)| v)
        .expect("nonempty");
    Ok(GenericRank {
        rank,
        agreement: counts.len() == 1,
        samples,
    })
}
