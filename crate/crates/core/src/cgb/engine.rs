//! Buchberger's algorithm over sparse vectors of terms.
//!
//! One engine serves commutative ideals, submodules of free modules, and
//! left ideals of the Weyl algebra. The only difference between them is how
//! a monomial acts on the left of an element ([`LeftAction`]).

use std::cmp::Ordering;
use std::collections::{HashMap, HashSet};

use crate::algebra::{Coeff, Monomial, MonomialOrder, Ring};
use crate::weyl::multiply_monomials;

/// A module term `mono · e_comp`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) struct Term {
    pub comp: usize,
    pub mono: Monomial,
}

impl Term {
    pub fn new(comp: usize, mono: Monomial) -> Self {
        Term { comp, mono }
    }

    fn divides(&self, other: &Term) -> bool {
        self.comp == other.comp && self.mono.divides(&other.mono)
    }
}

/// Terms sorted strictly descending under the engine order, no zero
/// coefficients.
pub(crate) type Vector = Vec<(Term, Coeff)>;

/// How module components are compared against monomials. Components with a
/// smaller index are larger.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ModuleOrderKind {
    PositionOverTerm,
    TermOverPosition,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub struct ModuleOrder {
    pub base: MonomialOrder,
    pub kind: ModuleOrderKind,
}

impl ModuleOrder {
    pub fn pot(base: MonomialOrder) -> Self {
        ModuleOrder {
            base,
            kind: ModuleOrderKind::PositionOverTerm,
        }
    }

    pub fn top(base: MonomialOrder) -> Self {
        ModuleOrder {
            base,
            kind: ModuleOrderKind::TermOverPosition,
        }
    }

    pub(crate) fn cmp(&self, a: &Term, b: &Term) -> Ordering {
        let pos = b.comp.cmp(&a.comp);
        match self.kind {
            ModuleOrderKind::PositionOverTerm => pos.then_with(|| self.base.cmp(&a.mono, &b.mono)),
            ModuleOrderKind::TermOverPosition => self.base.cmp(&a.mono, &b.mono).then(pos),
        }
    }
}

/// Left action of a monomial on an element.
pub(crate) trait LeftAction {
    /// Whether monomials commute with everything (enables the product
    /// criterion on rank-one inputs).
    fn commutative(&self) -> bool;

    /// `c · m · f`, sorted descending.
    fn act(&self, m: &Monomial, c: &Coeff, f: &[(Term, Coeff)], order: &ModuleOrder) -> Vector;
}

pub(crate) struct Commutative;

impl LeftAction for Commutative {
    fn commutative(&self) -> bool {
        true
    }

    fn act(&self, m: &Monomial, c: &Coeff, f: &[(Term, Coeff)], _order: &ModuleOrder) -> Vector {
        // Term orders are multiplicative, so the result stays sorted.
        f.iter()
            .filter_map(|(t, a)| {
                let v = c * a;
                (!v.is_zero()).then(|| (Term::new(t.comp, t.mono.mul(m)), v))
            })
            .collect()
    }
}

/// Left multiplication in the Weyl algebra `A_n` over `ring`.
pub(crate) struct WeylAction {
    pub n: usize,
    pub ring: Ring,
}

impl LeftAction for WeylAction {
    fn commutative(&self) -> bool {
        false
    }

    fn act(&self, m: &Monomial, c: &Coeff, f: &[(Term, Coeff)], order: &ModuleOrder) -> Vector {
        let mut by_comp: HashMap<usize, HashMap<Monomial, Coeff>> = HashMap::new();
        for (t, a) in f {
            let acc = by_comp.entry(t.comp).or_default();
            multiply_monomials(self.n, self.ring, m, &t.mono, &(c * a), acc);
        }
        let mut out: Vector = by_comp
            .into_iter()
            .flat_map(|(comp, acc)| {
                acc.into_iter()
                    .filter(|(_, v)| !v.is_zero())
                    .map(move |(mono, v)| (Term::new(comp, mono), v))
            })
            .collect();
        out.sort_by(|a, b| order.cmp(&b.0, &a.0));
        out
    }
}

/// `f - g` for sorted vectors.
pub(crate) fn sub(f: &[(Term, Coeff)], g: &[(Term, Coeff)], order: &ModuleOrder) -> Vector {
    let mut out = Vec::with_capacity(f.len() + g.len());
    let (mut i, mut j) = (0, 0);
    while i < f.len() && j < g.len() {
        match order.cmp(&f[i].0, &g[j].0) {
            Ordering::Greater => {
                out.push(f[i].clone());
                i += 1;
            }
            Ordering::Less => {
                out.push((g[j].0.clone(), -&g[j].1));
                j += 1;
            }
            Ordering::Equal => {
                let v = &f[i].1 - &g[j].1;
                if !v.is_zero() {
                    out.push((f[i].0.clone(), v));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&f[i..]);
    out.extend(g[j..].iter().map(|(t, c)| (t.clone(), -c)));
    out
}

pub(crate) fn sort_vector(mut v: Vector, order: &ModuleOrder) -> Vector {
    v.retain(|(_, c)| !c.is_zero());
    v.sort_by(|a, b| order.cmp(&b.0, &a.0));
    v
}

fn make_monic(v: Vector) -> Vector {
    let Some((_, lc)) = v.first() else { return v };
    if lc.is_one() {
        return v;
    }
    let inv = lc.inv().expect("field coefficients");
    v.into_iter().map(|(t, c)| (t, &c * &inv)).collect()
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Term,
    degree: u64,
}

pub(crate) struct Engine<'a, A: LeftAction> {
    pub action: &'a A,
    pub order: &'a ModuleOrder,
    /// Stop as soon as a unit (a constant in a rank-one computation) appears.
    pub stop_on_unit: bool,
}

impl<'a, A: LeftAction> Engine<'a, A> {
    pub fn new(action: &'a A, order: &'a ModuleOrder) -> Self {
        Engine {
            action,
            order,
            stop_on_unit: true,
        }
    }

    /// Full reduction of `f` by `basis` (elements need not be monic).
    pub fn reduce(&self, f: Vector, basis: &[Vector]) -> Vector {
        let mut rem: Vector = Vec::new();
        let mut cur = f;
        let mut start = 0;
        while start < cur.len() {
            let (t, c) = &cur[start];
            let divisor = basis.iter().find(|g| !g.is_empty() && g[0].0.divides(t));
            match divisor {
                None => {
                    rem.push(cur[start].clone());
                    start += 1;
                }
                Some(g) => {
                    let q = g[0].0.mono.quotient_of(&t.mono).expect("divides");
                    let coef = c.try_div(&g[0].1).expect("field coefficients");
                    let h = self.action.act(&q, &coef, g, self.order);
                    debug_assert_eq!(h.first().map(|x| &x.0), Some(t));
                    cur = sub(&cur[start..], &h, self.order);
                    start = 0;
                }
            }
        }
        rem
    }

    fn s_vector(&self, f: &Vector, g: &Vector, lcm: &Term) -> Vector {
        let qf = f[0].0.mono.quotient_of(&lcm.mono).expect("lcm");
        let qg = g[0].0.mono.quotient_of(&lcm.mono).expect("lcm");
        let cf = f[0].1.inv().expect("field");
        let cg = g[0].1.inv().expect("field");
        let a = self.action.act(&qf, &cf, f, self.order);
        let b = self.action.act(&qg, &cg, g, self.order);
        sub(&a, &b, self.order)
    }

    fn is_unit(v: &Vector) -> bool {
        v.len() == 1 && v[0].0.mono.is_one()
    }

    /// Reduced Gröbner basis, sorted by leading term descending.
    pub fn groebner(&self, gens: Vec<Vector>, rank: usize) -> Vec<Vector> {
        let product_criterion = self.action.commutative() && rank == 1;
        let mut basis: Vec<Vector> = Vec::new();
        let mut pairs: Vec<Pair> = Vec::new();
        let mut pending: HashSet<(usize, usize)> = HashSet::new();

        let add = |h: Vector,
                   basis: &mut Vec<Vector>,
                   pairs: &mut Vec<Pair>,
                   pending: &mut HashSet<(usize, usize)>| {
            let k = basis.len();
            let lt = h[0].0.clone();
            for (i, g) in basis.iter().enumerate() {
                let gt = &g[0].0;
                if gt.comp != lt.comp {
                    continue;
                }
                let lcm = Term::new(lt.comp, gt.mono.lcm(&lt.mono));
                let degree = lcm.mono.degree();
                pairs.push(Pair { i, j: k, lcm, degree });
                pending.insert((i, k));
            }
            basis.push(h);
        };

        for g in gens {
            let r = make_monic(self.reduce(g, &basis));
            if r.is_empty() {
                continue;
            }
            if self.stop_on_unit && rank == 1 && Self::is_unit(&r) {
                return vec![r];
            }
            add(r, &mut basis, &mut pairs, &mut pending);
        }

        while !pairs.is_empty() {
            let best = (0..pairs.len())
                .min_by(|&a, &b| {
                    let (pa, pb) = (&pairs[a], &pairs[b]);
                    pa.degree
                        .cmp(&pb.degree)
                        .then_with(|| self.order.cmp(&pa.lcm, &pb.lcm))
                        .then_with(|| (pa.i, pa.j).cmp(&(pb.i, pb.j)))
                })
                .expect("nonempty");
            let pair = pairs.swap_remove(best);
            pending.remove(&(pair.i, pair.j));
            let (fi, fj) = (&basis[pair.i], &basis[pair.j]);

            if product_criterion && fi[0].0.mono.is_coprime(&fj[0].0.mono) {
                continue;
            }
            let chain = (0..basis.len()).any(|k| {
                k != pair.i
                    && k != pair.j
                    && basis[k][0].0.divides(&pair.lcm)
                    && !pending.contains(&(pair.i.min(k), pair.i.max(k)))
                    && !pending.contains(&(pair.j.min(k), pair.j.max(k)))
            });
            if chain {
                continue;
            }
            let s = self.s_vector(fi, fj, &pair.lcm);
            let r = make_monic(self.reduce(s, &basis));
            if r.is_empty() {
                continue;
            }
            if self.stop_on_unit && rank == 1 && Self::is_unit(&r) {
                return vec![r];
            }
            add(r, &mut basis, &mut pairs, &mut pending);
        }
        self.interreduce(basis)
    }

    /// Minimalizes and fully interreduces a Gröbner basis.
    pub fn interreduce(&self, basis: Vec<Vector>) -> Vec<Vector> {
        let mut keep: Vec<Vector> = Vec::new();
        for (i, g) in basis.iter().enumerate() {
            let redundant = basis.iter().enumerate().any(|(j, h)| {
                j != i
                    && h[0].0.divides(&g[0].0)
                    && (h[0].0 != g[0].0 || j < i)
            });
            if !redundant {
                keep.push(g.clone());
            }
        }
        let mut out = Vec::with_capacity(keep.len());
        for i in 0..keep.len() {
            let others: Vec<Vector> = keep
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, g)| g.clone())
                .collect();
            let g = &keep[i];
            let tail = self.reduce(g[1..].to_vec(), &others);
            let mut v = vec![g[0].clone()];
            v.extend(tail);
            out.push(make_monic(v));
        }
        out.sort_by(|a, b| self.order.cmp(&b[0].0, &a[0].0));
        out
    }
}
