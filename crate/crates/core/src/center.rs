//! The center of `A_n(F_p)` and central annihilators of cyclic modules.
//!
//! Over `F_p` the elements `x_i^p` and `∂_i^p` are central and generate the
//! center `Z`. Writing `X_i = x_i^p` and `Xi_i = ∂_i^p`, the Weyl algebra is
//! free over `Z = F_p[X, Xi]` with basis `x^r ∂^s`, `0 <= r_i, s_i < p`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::{is_prime, vars, Coeff, MPoly, Monomial, MonomialOrder, Ring, Vars};
use crate::cgb::{module_colon, CIdeal, FreeSubmodule, ModuleOrder};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::weyl::WeylOp;
use crate::wgb::LeftIdeal;

/// Largest free rank `p^{2n}` handled by [`central_annihilator_exact`].
pub const EXACT_RANK_LIMIT: u64 = 64;

/// Names `X1..Xn, Xi1..Xin` of the twisted ring.
pub fn twisted_vars(n: usize) -> Vars {
    let mut names: Vec<String> = (1..=n).map(|i| format!("X{i}")).collect();
    names.extend((1..=n).map(|i| format!("Xi{i}")));
    vars(&names)
}

/// The identification `X_i ↔ x_i^p`, `Xi_i ↔ ∂_i^p` between the twisted
/// polynomial ring `F_p[X, Xi]` and the center of `A_n(F_p)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistIso {
    p: u64,
    n: usize,
    ring: Ring,
    vars: Vars,
}

impl TwistIso {
    /// Checks that every `x_i^p` and `∂_i^p` is central.
    pub fn new(p: u64, n: usize) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let ring = Ring::IntMod(p);
        let e = u32::try_from(p).map_err(|_| Error::TooLarge {
            what: "prime".into(),
            limit: u64::from(u32::MAX),
        })?;
        for i in 0..n {
            for g in [WeylOp::x(n, ring, i)?, WeylOp::d(n, ring, i)?] {
                if let Some((_, w)) = g.pow(e).is_central().witness {
                    return Err(Error::NotCentral(w.to_string()));
                }
            }
        }
        Ok(TwistIso {
            p,
            n,
            ring,
            vars: twisted_vars(n),
        })
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    /// Number `p^{2n}` of basis elements of `A_n` over `Z`.
    pub fn rank(&self) -> u64 {
        self.p.pow(2 * self.n as u32)
    }

    /// `f(X, Xi) ↦ f(x^p, ∂^p)`.
    pub fn embed(&self, f: &MPoly) -> Result<WeylOp> {
        self.check_twisted(f)?;
        Ok(WeylOp::from_terms(
            self.n,
            self.ring,
            f.terms().map(|(m, c)| (frobenius(m, self.p), c.clone())),
        ))
    }

    /// Inverse of [`embed`](Self::embed) on central operators.
    pub fn decompose(&self, f: &WeylOp) -> Result<MPoly> {
        let z = z_decompose(self, f)?;
        let zero = Monomial::one(2 * self.n);
        if let Some((b, _)) = z.coords.iter().find(|(b, _)| **b != zero) {
            return Err(Error::NotCentral(format!(
                "{f} has a component on basis element {}",
                WeylOp::from_terms(self.n, self.ring, [(b.clone(), self.ring.one())])
            )));
        }
        Ok(z.coordinate(&zero))
    }

    /// The twisted polynomial ring element `X_i` or `Xi_i` (0-based over the
    /// joint list).
    pub fn var(&self, index: usize) -> Result<MPoly> {
        MPoly::var(self.vars.clone(), self.ring, index)
    }

    fn check_twisted(&self, f: &MPoly) -> Result<()> {
        if f.ring() != self.ring {
            return Err(Error::RingMismatch(self.ring, f.ring()));
        }
        if f.vars() != &self.vars {
            return Err(Error::VariableMismatch);
        }
        Ok(())
    }
}

fn frobenius(m: &Monomial, p: u64) -> Monomial {
    let e: Vec<u32> = m.exponents().iter().map(|&e| e * p as u32).collect();
    Monomial::from_exponents(&e)
}

/// Coordinates of a Weyl operator in the free `Z`-basis `x^r ∂^s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZDecomposition {
    p: u64,
    n: usize,
    vars: Vars,
    ring: Ring,
    /// Nonzero coordinates keyed by the joint exponent `(r, s)`.
    coords: BTreeMap<Monomial, MPoly>,
}

impl ZDecomposition {
    /// The coordinate on basis element `β = (r, s)`.
    pub fn coordinate(&self, beta: &Monomial) -> MPoly {
        self.coords
            .get(beta)
            .cloned()
            .unwrap_or_else(|| MPoly::zero(self.vars.clone(), self.ring))
    }

    /// Nonzero coordinates in basis order.
    pub fn coordinates(&self) -> impl Iterator<Item = (&Monomial, &MPoly)> {
        self.coords.iter()
    }

    /// All `p^{2n}` coordinates, ordered as [`basis`].
    pub fn to_vec(&self) -> Vec<MPoly> {
        basis(self.p, self.n).iter().map(|b| self.coordinate(b)).collect()
    }

    /// `Σ_β z_β · x^r ∂^s`.
    pub fn recombine(&self, iso: &TwistIso) -> Result<WeylOp> {
        let mut out = WeylOp::zero(self.n, self.ring);
        for (b, z) in &self.coords {
            let beta = WeylOp::from_terms(self.n, self.ring, [(b.clone(), self.ring.one())]);
            out = out.try_add(&iso.embed(z)?.try_mul(&beta)?)?;
        }
        Ok(out)
    }
}

/// The basis index set `{(r, s) : 0 <= r_i, s_i < p}` as joint exponents, in
/// increasing lexicographic order; `(0, 0)` comes first.
pub fn basis(p: u64, n: usize) -> Vec<Monomial> {
    let mut out = vec![Monomial::one(2 * n)];
    for slot in (0..2 * n).rev() {
        let mut next = Vec::with_capacity(out.len() * p as usize);
        for m in &out {
            for e in 0..p as u32 {
                let mut m = m.clone();
                m.exponents_mut()[slot] = e;
                next.push(m);
            }
        }
        out = next;
    }
    out.sort();
    out
}

/// Splits every exponent as `a = p·q + r` and collects `c · X^q Xi^t` on the
/// basis element `x^r ∂^s`.
pub fn z_decompose(iso: &TwistIso, f: &WeylOp) -> Result<ZDecomposition> {
    if f.ring() != iso.ring {
        return Err(Error::RingMismatch(iso.ring, f.ring()));
    }
    if f.n() != iso.n {
        return Err(Error::DimensionMismatch {
            expected: iso.n,
            got: f.n(),
        });
    }
    let p = iso.p as u32;
    let mut coords: BTreeMap<Monomial, MPoly> = BTreeMap::new();
    for (m, c) in f.terms() {
        let q: Vec<u32> = m.exponents().iter().map(|&e| e / p).collect();
        let r: Vec<u32> = m.exponents().iter().map(|&e| e % p).collect();
        coords
            .entry(Monomial::from_exponents(&r))
            .or_insert_with(|| MPoly::zero(iso.vars.clone(), iso.ring))
            .add_term(Monomial::from_exponents(&q), c.clone());
    }
    coords.retain(|_, z| !z.is_zero());
    Ok(ZDecomposition {
        p: iso.p,
        n: iso.n,
        vars: iso.vars.clone(),
        ring: iso.ring,
        coords,
    })
}

/// How a central annihilator was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AnnStatus {
    /// Module colon over the full free presentation.
    Exact,
    /// Kernel ideals agreed between degree `d` and `d + window`.
    Stabilized(u32),
    /// No agreement up to the degree bound; the result may be too small.
    Truncated(u32),
}

impl fmt::Display for AnnStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AnnStatus::Exact => write!(f, "exact"),
            AnnStatus::Stabilized(d) => write!(f, "stabilized({d})"),
            AnnStatus::Truncated(d) => write!(f, "truncated({d})"),
        }
    }
}

impl Serialize for AnnStatus {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for AnnStatus {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        let arg = |prefix: &str| {
            s.strip_prefix(prefix)
                .and_then(|r| r.strip_suffix(')'))
                .and_then(|r| r.parse::<u32>().ok())
        };
        if s == "exact" {
            Ok(AnnStatus::Exact)
        } else if let Some(d) = arg("stabilized(") {
            Ok(AnnStatus::Stabilized(d))
        } else if let Some(d) = arg("truncated(") {
            Ok(AnnStatus::Truncated(d))
        } else {
            Err(serde::de::Error::custom(format!("unknown annihilator status {s:?}")))
        }
    }
}

/// A central annihilator `J = I ∩ Z` in the twisted ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Annihilator {
    pub ideal: CIdeal,
    pub status: AnnStatus,
}

fn prime_of(ideal: &LeftIdeal) -> Result<u64> {
    match ideal.ring() {
        Ring::IntMod(p) if is_prime(p) => Ok(p),
        r => Err(Error::RingMismatch(Ring::IntMod(r.characteristic().max(2)), r)),
    }
}

/// Whether `p^{2n}` is within [`EXACT_RANK_LIMIT`].
pub fn exact_applicable(p: u64, n: usize) -> bool {
    u32::try_from(2 * n)
        .ok()
        .and_then(|e| p.checked_pow(e))
        .is_some_and(|r| r <= EXACT_RANK_LIMIT)
}

fn reduced(vars: &Vars, ring: Ring, gens: Vec<MPoly>) -> Result<CIdeal> {
    let ideal = CIdeal::grevlex(vars.clone(), ring, gens)?;
    CIdeal::grevlex(vars.clone(), ring, ideal.basis().to_vec())
}

/// `D/I` as a `Z`-module: the quotient of `Z^{p^{2n}}` by the span of the
/// columns, one column per basis element `β` and generator `g` of `I`,
/// holding the coordinates of `β·g`.
#[derive(Clone, Debug)]
pub struct Presentation {
    pub iso: TwistIso,
    pub columns: Vec<Vec<MPoly>>,
}

impl Presentation {
    pub fn new(ideal: &LeftIdeal) -> Result<Self> {
        let p = prime_of(ideal)?;
        let n = ideal.n();
        if !exact_applicable(p, n) {
            return Err(Error::TooLarge {
                what: "free rank p^(2n)".into(),
                limit: EXACT_RANK_LIMIT,
            });
        }
        let iso = TwistIso::new(p, n)?;
        let mut columns = Vec::new();
        for g in ideal.basis() {
            for beta in basis(p, n) {
                let bop = WeylOp::from_terms(n, iso.ring, [(beta, iso.ring.one())]);
                columns.push(z_decompose(&iso, &bop.try_mul(g)?)?.to_vec());
            }
        }
        Ok(Presentation { iso, columns })
    }

    /// Free rank `p^{2n}` of the ambient module.
    pub fn rank(&self) -> usize {
        self.iso.rank() as usize
    }
}

/// `I ∩ Z` as the colon `(N : e_0)`, where `N` is the column span of the
/// [`Presentation`] and `e_0` the coordinate vector of `1`.
pub fn central_annihilator_exact(ideal: &LeftIdeal) -> Result<Annihilator> {
    let pres = Presentation::new(ideal)?;
    let iso = &pres.iso;
    if ideal.is_unit() {
        return Ok(Annihilator {
            ideal: CIdeal::unit(iso.vars.clone(), iso.ring),
            status: AnnStatus::Exact,
        });
    }
    let rank = pres.rank();
    let module = FreeSubmodule::new(
        iso.vars.clone(),
        iso.ring,
        rank,
        pres.columns.clone(),
        ModuleOrder::pot(MonomialOrder::GrevLex),
    )?;
    let mut e0 = vec![MPoly::zero(iso.vars.clone(), iso.ring); rank];
    e0[0] = MPoly::one(iso.vars.clone(), iso.ring);
    let colon = module_colon(&module, &e0)?;
    Ok(Annihilator {
        ideal: reduced(&iso.vars, iso.ring, colon.basis().to_vec())?,
        status: AnnStatus::Exact,
    })
}

/// Parameters of [`central_annihilator_truncated`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TruncationOptions {
    pub max_degree: u32,
    pub window: u32,
}

impl TruncationOptions {
    /// `max_degree = 2p`, `window = 2`.
    pub fn for_prime(p: u64) -> Self {
        TruncationOptions {
            max_degree: (2 * p).min(u64::from(u32::MAX)) as u32,
            window: 2,
        }
    }
}

/// Incrementally computed left normal forms of central monomials.
pub struct CentralKernel<'a> {
    ideal: &'a LeftIdeal,
    iso: TwistIso,
    monomials: Vec<Monomial>,
    normal_forms: Vec<WeylOp>,
    degree: Option<u32>,
}

impl<'a> CentralKernel<'a> {
    pub fn new(ideal: &'a LeftIdeal) -> Result<Self> {
        let p = prime_of(ideal)?;
        Ok(CentralKernel {
            ideal,
            iso: TwistIso::new(p, ideal.n())?,
            monomials: Vec::new(),
            normal_forms: Vec::new(),
            degree: None,
        })
    }

    pub fn iso(&self) -> &TwistIso {
        &self.iso
    }

    fn extend_to(&mut self, d: u32) -> Result<()> {
        let start = self.degree.map_or(0, |k| k + 1);
        for deg in start..=d {
            for m in monomials_of_degree(2 * self.iso.n, deg) {
                let z = MPoly::monomial(self.iso.vars.clone(), m.clone(), self.iso.ring.one());
                self.normal_forms
                    .push(self.ideal.normal_form(&self.iso.embed(&z)?)?);
                self.monomials.push(m);
            }
        }
        self.degree = Some(self.degree.map_or(d, |k| k.max(d)));
        Ok(())
    }

    /// A basis of `K_d = {z ∈ Z : deg z <= d, z ∈ I}`.
    pub fn kernel(&mut self, d: u32) -> Result<Vec<MPoly>> {
        self.extend_to(d)?;
        let count = self
            .monomials
            .iter()
            .take_while(|m| m.degree() <= u64::from(d))
            .count();
        let mut rows: HashMap<Monomial, usize> = HashMap::new();
        let mut entries: Vec<(usize, usize, Coeff)> = Vec::new();
        for (j, nf) in self.normal_forms[..count].iter().enumerate() {
            for (m, c) in nf.terms() {
                let next = rows.len();
                let i = *rows.entry(m.clone()).or_insert(next);
                entries.push((i, j, c.clone()));
            }
        }
        let mut a = Matrix::zeros(self.iso.ring, rows.len(), count);
        for (i, j, c) in entries {
            a.set(i, j, c);
        }
        Ok(a.kernel()?
            .into_iter()
            .map(|v| {
                MPoly::from_terms(
                    self.iso.vars.clone(),
                    self.iso.ring,
                    self.monomials[..count].iter().cloned().zip(v),
                )
            })
            .collect())
    }
}

/// All monomials in `nvars` variables of total degree exactly `d`.
pub(crate) fn monomials_of_degree(nvars: usize, d: u32) -> Vec<Monomial> {
    fn go(prefix: &mut Vec<u32>, left: usize, d: u32, out: &mut Vec<Monomial>) {
        if left == 1 {
            prefix.push(d);
            out.push(Monomial::from_exponents(prefix));
            prefix.pop();
            return;
        }
        for e in (0..=d).rev() {
            prefix.push(e);
            go(prefix, left - 1, d - e, out);
            prefix.pop();
        }
    }
    if nvars == 0 {
        return if d == 0 { vec![Monomial::one(0)] } else { Vec::new() };
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), nvars, d, &mut out);
    out
}

/// `I ∩ Z` from kernels of left normal forms on central elements of bounded
/// degree, accepted once `ideal(K_d) = ideal(K_{d+window}) ≠ 0`.
pub fn central_annihilator_truncated(
    ideal: &LeftIdeal,
    options: TruncationOptions,
) -> Result<Annihilator> {
    let mut kernels = CentralKernel::new(ideal)?;
    let (vars, ring) = (kernels.iso.vars.clone(), kernels.iso.ring);
    let max = options.max_degree.max(1);
    for d in 1..max {
        let kd = kernels.kernel(d)?;
        if kd.is_empty() {
            continue;
        }
        let jd = reduced(&vars, ring, kd)?;
        let jw = reduced(&vars, ring, kernels.kernel(d + options.window)?)?;
        if jd.same_ideal(&jw)? {
            return Ok(Annihilator {
                ideal: jd,
                status: AnnStatus::Stabilized(d),
            });
        }
    }
    Ok(Annihilator {
        ideal: reduced(&vars, ring, kernels.kernel(max)?)?,
        status: AnnStatus::Truncated(max),
    })
}

/// Exact method within the rank guard, truncated method with default options
/// beyond it.
pub fn central_annihilator(ideal: &LeftIdeal) -> Result<Annihilator> {
    let p = prime_of(ideal)?;
    if exact_applicable(p, ideal.n()) {
        central_annihilator_exact(ideal)
    } else {
        central_annihilator_truncated(ideal, TruncationOptions::for_prime(p))
    }
}
