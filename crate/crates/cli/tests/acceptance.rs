//! Acceptance suite: one PASS/FAIL line per criterion, each under a pinned
//! wall-clock limit. Runs without the libtest harness so the lines are always
//! printed.

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use pweyl::algebra::{vars, Vars};
use pweyl::center::{
    basis, central_annihilator_exact, central_annihilator_truncated, exact_applicable, twisted_vars,
    z_decompose, AnnStatus, TruncationOptions, TwistIso,
};
use pweyl::cgb::{module_colon, radical_member, CIdeal, FreeSubmodule, ModuleOrder};
use pweyl::expr::{is_input_error, parse_operator_bytes, parse_twisted, parse_weyl};
use pweyl::poisson::{bkk_bracket, canonical_bracket};
use pweyl::psupport::corpus::{Corpus, CorpusEntry};
use pweyl::psupport::{characteristic_variety, is_conical, p_support, specialize_mod_p, DModuleSpec, Options};
use pweyl::{Coeff, MPoly, Monomial, MonomialOrder, Ring, WeylOp};

type Check = Result<String, String>;
/// Number, title, time limit, check.
type Criterion = (u32, &'static str, Duration, fn() -> Check);

/// Seed for every randomized check in this file.
const SEED: u64 = 20_261_015;

const LIMIT_1: Duration = Duration::from_secs(10);
const LIMIT_2: Duration = Duration::from_secs(30);
const LIMIT_3: Duration = Duration::from_secs(60);
const LIMIT_4: Duration = Duration::from_secs(5);
const LIMIT_5: Duration = Duration::from_secs(30);
const LIMIT_6: Duration = Duration::from_secs(5);
const LIMIT_7: Duration = Duration::from_secs(60);
const LIMIT_8: Duration = Duration::from_secs(60);
const LIMIT_9: Duration = Duration::from_secs(60);

const OPERATORS_PER_CASE: usize = 200;
const PAIRS_PER_CASE: usize = 100;
const TWISTED_DEGREE: u32 = 4;
const MIN_SAMPLES: usize = 5;
const RANDOM_IDEALS: usize = 50;
const COLON_DEGREE: u32 = 4;
/// Largest power tried when searching for `f^k ∈ I`.
const POWER_SEARCH: u32 = 12;
const FUZZ_INPUTS: usize = 10_000;

fn repo_file(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..").join(name)
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e2s<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn random_coeff(rng: &mut ChaCha8Rng, ring: Ring) -> Coeff {
    ring.from_u64(rng.gen_range(1..ring.size().unwrap()))
}

/// Sum of up to `terms` random nonzero Weyl monomials with exponents below `bound`.
fn random_weyl(rng: &mut ChaCha8Rng, n: usize, ring: Ring, terms: usize, bound: u32) -> WeylOp {
    let mut f = WeylOp::zero(n, ring);
    for _ in 0..rng.gen_range(1..=terms) {
        let a: Vec<u32> = (0..n).map(|_| rng.gen_range(0..bound)).collect();
        let b: Vec<u32> = (0..n).map(|_| rng.gen_range(0..bound)).collect();
        f = &f + &WeylOp::monomial(&a, &b, random_coeff(rng, ring));
    }
    f
}

/// Random polynomial of total degree at most `degree`.
fn random_poly(rng: &mut ChaCha8Rng, vars: &Vars, ring: Ring, terms: usize, degree: u32) -> MPoly {
    let k = vars.len();
    let mut f = MPoly::zero(vars.clone(), ring);
    for _ in 0..rng.gen_range(1..=terms) {
        let mut e = vec![0u32; k];
        let mut left = rng.gen_range(0..=degree);
        while left > 0 {
            e[rng.gen_range(0..k)] += 1;
            left -= 1;
        }
        let t = MPoly::monomial(vars.clone(), Monomial::from_exponents(&e), random_coeff(rng, ring));
        f = &f + &t;
    }
    f
}

fn criterion_1() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut checked = 0;
    for p in [2u64, 3, 5] {
        for n in [1usize, 2] {
            let ring = Ring::IntMod(p);
            let iso = TwistIso::new(p, n).map_err(e2s)?;
            for i in 0..n {
                for g in [WeylOp::x(n, ring, i), WeylOp::d(n, ring, i)] {
                    let g = g.map_err(e2s)?.pow(p as u32);
                    ensure(g.is_central().central, || format!("{g} not central at p={p}"))?;
                }
            }
            let b = basis(p, n);
            ensure(b.len() as u64 == p.pow(2 * n as u32), || format!("basis size {} at p={p} n={n}", b.len()))?;
            for _ in 0..OPERATORS_PER_CASE {
                let f = random_weyl(&mut rng, n, ring, 6, 2 * p as u32 + 1);
                let z = z_decompose(&iso, &f).map_err(e2s)?;
                ensure(z.to_vec().len() == b.len(), || "coordinate count".into())?;
                let back = z.recombine(&iso).map_err(e2s)?;
                ensure(back == f, || format!("round trip failed for {f} at p={p}"))?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} round trips"))
}

fn criterion_2() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 2);
    let (mut checked, mut nonzero) = (0, 0);
    for p in [2u64, 3, 5] {
        for n in [1usize, 2] {
            let iso = TwistIso::new(p, n).map_err(e2s)?;
            let vars = twisted_vars(n);
            for _ in 0..PAIRS_PER_CASE {
                let f = random_poly(&mut rng, &vars, Ring::IntMod(p), 4, TWISTED_DEGREE);
                let g = random_poly(&mut rng, &vars, Ring::IntMod(p), 4, TWISTED_DEGREE);
                let bkk = bkk_bracket(&iso, &f, &g).map_err(e2s)?;
                let can = canonical_bracket(&f, &g).map_err(e2s)?;
                ensure(bkk == -&can, || format!("p={p}: bkk({f}, {g}) = {bkk}, canonical {can}"))?;
                checked += 1;
                nonzero += usize::from(!can.is_zero());
            }
        }
    }
    for (m, modulus, want) in [(2u32, 4u64, 2u64), (3, 9, 6)] {
        let ring = Ring::IntMod(modulus);
        let d = WeylOp::d(1, ring, 0).map_err(e2s)?.pow(m);
        let x = WeylOp::x(1, ring, 0).map_err(e2s)?.pow(m);
        let c = d.commutator(&x).map_err(e2s)?;
        let expected = WeylOp::constant(1, ring.from_u64(want));
        ensure(c == expected, || format!("[d^{m}, x^{m}] = {c} in Z/{modulus}"))?;
    }
    ensure(nonzero * 2 > checked, || format!("only {nonzero} nonzero brackets"))?;
    Ok(format!("{checked} pairs ({nonzero} nonzero), pinned commutators 2 in Z/4 and 6 in Z/9"))
}

/// Hand-derived central annihilator of one generator in variable `i`.
fn derived_generator(gen: &str, i: usize, p: u64) -> Option<String> {
    let g = gen.replace(' ', "");
    let (x, d) = (format!("x{i}"), format!("d{i}"));
    if g == d {
        return Some(format!("Xi{i}"));
    }
    if g == format!("{d}-1") {
        return Some(format!("Xi{i} - 1"));
    }
    if g == format!("{d}-{x}") {
        // (d - x)^p = d^p - x^p + d^{p-1}(-x), the last term -1 only for p = 2.
        return Some(if p == 2 {
            format!("Xi{i} + X{i} + 1")
        } else {
            format!("Xi{i} - X{i}")
        });
    }
    let lambda = if g == format!("{x}*{d}") {
        BigRational::from_integer(0.into())
    } else {
        let rest = g.strip_prefix(&format!("{x}*{d}-"))?;
        match rest.split_once('/') {
            Some((a, b)) => BigRational::new(a.parse::<BigInt>().ok()?, b.parse::<BigInt>().ok()?),
            None => BigRational::from_integer(rest.parse::<BigInt>().ok()?),
        }
    };
    // (x d)^p - x d = x^p d^p, so x' Xi' = λ^p - λ.
    let l = Ring::IntMod(p).from_rational(&lambda).ok()?;
    let c = l.pow(p).try_sub(&l).ok()?;
    Some(format!("X{i}*Xi{i} - {c}"))
}

fn derived_annihilator(entry: &CorpusEntry, p: u64) -> Option<Vec<String>> {
    entry
        .generators
        .iter()
        .map(|g| (1..=entry.n).find_map(|i| derived_generator(g, i, p)))
        .collect()
}

fn twisted_ideal(gens: &[String], n: usize, p: u64) -> Result<CIdeal, String> {
    let ring = Ring::IntMod(p);
    let polys = gens
        .iter()
        .map(|g| parse_twisted(g, n, ring))
        .collect::<Result<Vec<_>, _>>()
        .map_err(e2s)?;
    CIdeal::grevlex(twisted_vars(n), ring, polys).map_err(e2s)
}

fn good_primes(entry: &CorpusEntry) -> Vec<u64> {
    [2u64, 3, 5, 7]
        .into_iter()
        .filter(|p| entry.primes.contains(p))
        .filter(|&p| entry.spec().map(|s| specialize_mod_p(&s, p).is_ok()).unwrap_or(false))
        .collect()
}

fn corpus() -> Result<Corpus, String> {
    Corpus::load(repo_file("corpus/corpus.toml")).map_err(e2s)
}

fn criterion_3() -> Check {
    let corpus = corpus()?;
    let options = Options {
        generic_rank: false,
        ..Options::default()
    };
    let mut checked = 0;
    for entry in &corpus.modules {
        let spec = entry.spec().map_err(e2s)?;
        for p in good_primes(entry) {
            if !exact_applicable(p, entry.n) {
                continue;
            }
            let r = p_support(&spec, p, &options).map_err(e2s)?;
            let tag = format!("{} at p={p}", entry.name);
            ensure(r.dimension == entry.n as i64, || format!("{tag}: dimension {}", r.dimension))?;
            ensure(r.coisotropic && r.lagrangian, || format!("{tag}: not lagrangian"))?;
            let want = derived_annihilator(entry, p).ok_or_else(|| format!("{tag}: no derived value"))?;
            let same = twisted_ideal(&r.annihilator, entry.n, p)?
                .same_ideal(&twisted_ideal(&want, entry.n, p)?)
                .map_err(e2s)?;
            ensure(same, || format!("{tag}: got {:?}, derived {want:?}", r.annihilator))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} (module, prime) pairs"))
}

fn criterion_4() -> Check {
    let spec = DModuleSpec::parse(None, 1, &["d1 - 1"]).map_err(e2s)?;
    for p in [2u64, 3, 5, 7] {
        let left = specialize_mod_p(&spec, p).map_err(e2s)?;
        let j = central_annihilator_exact(&left).map_err(e2s)?.ideal;
        ensure(!is_conical(&j).map_err(e2s)?, || format!("p-support conical at p={p}"))?;
    }
    let cv = characteristic_variety(&spec).map_err(e2s)?;
    let xi = MPoly::var(cv.ideal.vars().clone(), Ring::Rational, 1).map_err(e2s)?;
    let expected = CIdeal::grevlex(cv.ideal.vars().clone(), Ring::Rational, vec![xi]).map_err(e2s)?;
    ensure(cv.ideal.same_ideal(&expected).map_err(e2s)?, || format!("char variety {:?}", cv.ideal.basis()))?;
    ensure(cv.dimension == 1, || format!("char variety dimension {}", cv.dimension))?;
    ensure(is_conical(&cv.ideal).map_err(e2s)?, || "char variety not conical".into())?;
    Ok("non-conical at p=2,3,5,7; characteristic variety (xi1), dim 1".into())
}

fn criterion_5() -> Check {
    let mut summary = Vec::new();
    for g in ["d1", "d1 - 1", "d1 - x1"] {
        let spec = DModuleSpec::parse(None, 1, &[g]).map_err(e2s)?;
        for p in [2u64, 3, 5] {
            let r = p_support(&spec, p, &Options::default()).map_err(e2s)?;
            let gr = r.generic_rank.ok_or_else(|| format!("{g} at p={p}: rank unavailable"))?;
            ensure(gr.samples.len() >= MIN_SAMPLES, || format!("{g} at p={p}: {} samples", gr.samples.len()))?;
            ensure(gr.rank == p, || format!("{g} at p={p}: rank {}", gr.rank))?;
            summary.push(gr.samples.len());
        }
    }
    Ok(format!("rank p in 9 cases, min samples {}", summary.iter().min().unwrap()))
}

fn factorial(k: u64) -> BigInt {
    (1..=k).map(BigInt::from).product()
}

fn binomial(n: u64, k: u64) -> BigInt {
    factorial(n) / (factorial(k) * factorial(n - k))
}

/// Image of `x^j` under a normal-ordered operator, as exponent → coefficient.
fn act_on_power(f: &WeylOp, j: u32) -> BTreeMap<u32, BigInt> {
    let mut out = BTreeMap::new();
    for (m, c) in f.terms() {
        let (a, b) = (m.exponents()[0], m.exponents()[1]);
        if b > j {
            continue;
        }
        let falling: BigInt = ((j - b + 1)..=j).map(BigInt::from).product();
        let c = c.as_rational().expect("rational").to_integer();
        *out.entry(a + j - b).or_insert_with(|| BigInt::from(0)) += c * falling;
    }
    out.retain(|_, v| *v != BigInt::from(0));
    out
}

fn criterion_6() -> Check {
    for p in [2u64, 3, 5, 7] {
        let r = Ring::IntMod(p);
        let n = 1;
        let xd = parse_weyl("x1*d1", n, r).map_err(e2s)?;
        let rhs = parse_weyl(&format!("x1^{p}*d1^{p} + x1*d1"), n, r).map_err(e2s)?;
        ensure(xd.pow(p as u32) == rhs, || format!("(x d)^{p} = {}", xd.pow(p as u32)))?;
    }
    let q = Ring::Rational;
    for m in 0..=6u32 {
        for k in 0..=6u32 {
            let prod = WeylOp::d(1, q, 0).map_err(e2s)?.pow(m) * WeylOp::x(1, q, 0).map_err(e2s)?.pow(k);
            let mut closed = WeylOp::zero(1, q);
            for j in 0..=m.min(k) {
                let c = factorial(j.into()) * binomial(m.into(), j.into()) * binomial(k.into(), j.into());
                let t = WeylOp::monomial(&[k - j], &[m - j], q.from_bigint(&c));
                closed = &closed + &t;
            }
            ensure(prod == closed, || format!("d^{m} x^{k} = {prod}, closed form {closed}"))?;
            // d^m (x^k x^j) = (k+j)!/(k+j-m)! x^{k+j-m}.
            for j in 0..=8u32 {
                let mut want = BTreeMap::new();
                if k + j >= m {
                    let e = k + j;
                    want.insert(e - m, ((e - m + 1)..=e).map(BigInt::from).product::<BigInt>());
                }
                ensure(act_on_power(&prod, j) == want, || format!("action of d^{m} x^{k} on x^{j}"))?;
            }
        }
    }
    Ok("p-th power identity at p=2,3,5,7; closed form for m,k <= 6".into())
}

fn criterion_7() -> Check {
    let corpus = corpus()?;
    let (mut compared, mut oracle) = (0, 0);
    for entry in &corpus.modules {
        let spec = entry.spec().map_err(e2s)?;
        for p in good_primes(entry) {
            let tag = format!("{} at p={p}", entry.name);
            let left = specialize_mod_p(&spec, p).map_err(e2s)?;
            let t = central_annihilator_truncated(&left, TruncationOptions::for_prime(p)).map_err(e2s)?;
            ensure(matches!(t.status, AnnStatus::Stabilized(_)), || format!("{tag}: status {}", t.status))?;
            let reference = if exact_applicable(p, entry.n) {
                compared += 1;
                central_annihilator_exact(&left).map_err(e2s)?.ideal
            } else {
                // Beyond the exact guard the derived value is the reference.
                oracle += 1;
                let want = derived_annihilator(entry, p).ok_or_else(|| format!("{tag}: no derived value"))?;
                twisted_ideal(&want, entry.n, p)?
            };
            let mutual = |a: &CIdeal, b: &CIdeal| -> Result<bool, String> {
                for g in a.basis() {
                    if !radical_member(g, b).map_err(e2s)? {
                        return Ok(false);
                    }
                }
                Ok(true)
            };
            ensure(
                mutual(&t.ideal, &reference)? && mutual(&reference, &t.ideal)?,
                || format!("{tag}: truncated {:?} vs {:?}", t.ideal.basis(), reference.basis()),
            )?;
        }
    }
    Ok(format!("{compared} exact comparisons, {oracle} beyond the guard against derived values"))
}

fn monomials_up_to(nvars: usize, degree: u32) -> Vec<Monomial> {
    let mut out = vec![Monomial::one(nvars)];
    let mut frontier = out.clone();
    for _ in 0..degree {
        let mut next = Vec::new();
        for m in &frontier {
            for v in 0..nvars {
                let t = m.mul(&Monomial::var(nvars, v));
                if !next.contains(&t) && !out.contains(&t) {
                    next.push(t);
                }
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

fn power_member(f: &MPoly, ideal: &CIdeal, limit: u32) -> Result<bool, String> {
    let mut g = f.clone();
    for _ in 0..limit {
        if ideal.contains(&g).map_err(e2s)? {
            return Ok(true);
        }
        g = &g * f;
    }
    Ok(false)
}

fn criterion_8() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 8);
    let ring = Ring::IntMod(7);
    let (mut radical_checks, mut in_radical, mut colon_checks, mut in_colon) = (0, 0, 0, 0);
    for t in 0..RANDOM_IDEALS {
        let k = 1 + t % 3;
        let names: Vec<String> = (1..=k).map(|i| format!("y{i}")).collect();
        let vs = vars(&names);
        // Generators are random cubics or powers of random linear forms.
        let mut bases = Vec::new();
        let mut gens = Vec::new();
        for _ in 0..rng.gen_range(1..=3) {
            if rng.gen_bool(0.5) {
                let l = random_poly(&mut rng, &vs, ring, 3, 1);
                bases.push(l.clone());
                gens.push(l.pow(rng.gen_range(1..=3)));
            } else {
                gens.push(random_poly(&mut rng, &vs, ring, 4, 3));
            }
        }
        let ideal = CIdeal::grevlex(vs.clone(), ring, gens.clone()).map_err(e2s)?;
        for _ in 0..3 {
            gens.shuffle(&mut rng);
            let again = CIdeal::grevlex(vs.clone(), ring, gens.clone()).map_err(e2s)?;
            ensure(again.basis() == ideal.basis(), || format!("basis depends on order: {gens:?}"))?;
        }
        let mut candidates = bases;
        candidates.push(random_poly(&mut rng, &vs, ring, 3, 2));
        candidates.push(random_poly(&mut rng, &vs, ring, 3, 1));
        for f in candidates {
            let rad = radical_member(&f, &ideal).map_err(e2s)?;
            let pow = power_member(&f, &ideal, POWER_SEARCH)?;
            ensure(rad == pow, || format!("{f} vs {:?}: radical {rad}, power search {pow}", ideal.basis()))?;
            radical_checks += 1;
            in_radical += usize::from(rad);
        }
    }
    // Colon ideals of submodules of R^rank, rank <= 2.
    let vs = vars(&["y1", "y2"]);
    for t in 0..20 {
        let rank = 1 + t % 2;
        let columns: Vec<Vec<MPoly>> = (0..rng.gen_range(1..=3))
            .map(|_| (0..rank).map(|_| random_poly(&mut rng, &vs, ring, 2, 2)).collect())
            .collect();
        let module = FreeSubmodule::new(
            vs.clone(),
            ring,
            rank,
            columns,
            ModuleOrder::pot(MonomialOrder::GrevLex),
        )
        .map_err(e2s)?;
        let v: Vec<MPoly> = (0..rank).map(|_| random_poly(&mut rng, &vs, ring, 2, 1)).collect();
        let colon = module_colon(&module, &v).map_err(e2s)?;
        let mut probes: Vec<MPoly> = monomials_up_to(2, COLON_DEGREE)
            .into_iter()
            .map(|m| MPoly::monomial(vs.clone(), m, ring.one()))
            .collect();
        for _ in 0..10 {
            probes.push(random_poly(&mut rng, &vs, ring, 5, COLON_DEGREE));
        }
        for f in probes {
            let fv: Vec<MPoly> = v.iter().map(|c| &f * c).collect();
            let direct = module.contains(&fv).map_err(e2s)?;
            let via = colon.contains(&f).map_err(e2s)?;
            ensure(direct == via, || format!("colon membership of {f}: {via}, direct {direct}"))?;
            colon_checks += 1;
            in_colon += usize::from(via);
        }
    }
    ensure(in_radical > 0 && in_radical < radical_checks, || "radical checks are one-sided".into())?;
    ensure(in_colon > 0 && in_colon < colon_checks, || "colon probes are one-sided".into())?;
    Ok(format!(
        "{RANDOM_IDEALS} ideals, {radical_checks} radical checks ({in_radical} members), \
         {colon_checks} colon probes ({in_colon} members)"
    ))
}

fn criterion_9() -> Check {
    let corpus = repo_file("corpus/corpus.toml");
    let corpus = corpus.to_str().unwrap();
    let run = || {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = pweyl_cli::run(
            ["pweyl", "corpus", "--run", corpus, "--json", "--seed", "1"],
            &mut out,
            &mut err,
        );
        (code, out)
    };
    let (c1, a) = run();
    let (c2, b) = run();
    ensure(c1 == 0 && c2 == 0, || format!("corpus exit codes {c1}, {c2}"))?;
    ensure(a == b, || "corpus JSON differs between runs".into())?;
    let golden = std::fs::read(repo_file("corpus/golden.json")).map_err(e2s)?;
    let (_, c) = {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = pweyl_cli::run(["pweyl", "corpus", "--run", corpus, "--json"], &mut out, &mut err);
        (code, out)
    };
    ensure(c == golden, || "default-seed output differs from corpus/golden.json".into())?;

    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 9);
    const ALPHABET: &[&[u8]] = &[
        b"x1", b"x2", b"d1", b"d2", b"X1", b"Xi2", b"x0", b"d9", b"+", b"-", b"*", b"^", b"(", b")", b"/",
        b"0", b"7", b"12", b" ", b"\xff", b"\xe2\x88\x82", b"^^", b"99999999999999999999",
    ];
    let mut accepted = 0;
    for i in 0..FUZZ_INPUTS {
        let len = rng.gen_range(0..40);
        let bytes: Vec<u8> = if i % 2 == 0 {
            (0..len).map(|_| rng.gen()).collect()
        } else {
            (0..len).flat_map(|_| ALPHABET.choose(&mut rng).unwrap().iter().copied()).collect()
        };
        let ring = if i % 3 == 0 { Ring::IntMod(5) } else { Ring::Rational };
        let outcome = catch_unwind(|| parse_operator_bytes(&bytes, 2, ring));
        match outcome {
            Err(_) => return Err(format!("parser panicked on {bytes:?}")),
            Ok(Ok(_)) => accepted += 1,
            Ok(Err(e)) => ensure(is_input_error(&e), || format!("{bytes:?}: unexpected error {e}"))?,
        }
    }
    Ok(format!("golden output stable; {FUZZ_INPUTS} fuzz inputs, {accepted} accepted"))
}

fn main() {
    // A panicking check fails its criterion without aborting the suite.
    std::panic::set_hook(Box::new(|_| {}));
    let criteria: [Criterion; 9] = [
        (1, "center invariants", LIMIT_1, criterion_1),
        (2, "deformation bracket sign", LIMIT_2, criterion_2),
        (3, "corpus supports are Lagrangian", LIMIT_3, criterion_3),
        (4, "non-conical support, conical characteristic variety", LIMIT_4, criterion_4),
        (5, "generic rank p", LIMIT_5, criterion_5),
        (6, "oracle identities", LIMIT_6, criterion_6),
        (7, "exact vs truncated annihilators", LIMIT_7, criterion_7),
        (8, "Groebner engine soundness", LIMIT_8, criterion_8),
        (9, "CLI contract", LIMIT_9, criterion_9),
    ];
    let mut failed = 0;
    for (id, name, limit, check) in criteria {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let result = match result {
            Ok(_) if elapsed > limit => Err(format!("exceeded the {}s limit", limit.as_secs())),
            r => r,
        };
        let (verdict, detail) = match result {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!(
            "criterion {id}: {verdict} {name} [{:.2}s / {}s] {detail}",
            elapsed.as_secs_f64(),
            limit.as_secs()
        );
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
    println!("all 9 criteria passed");
}
