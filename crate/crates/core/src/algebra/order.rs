use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use super::Monomial;

/// A monomial order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
#[derive(Default)]
pub enum MonomialOrder {
    Lex,
    #[default]
    GrevLex,
    /// Two-block elimination order: variables at index `>= split` form the
    /// eliminated block and are compared first (grevlex within the block);
    /// ties are broken by grevlex on the variables below `split`.
    Elimination { split: usize },
    /// Weighted degree first, then `tie`. Global iff all weights are
    /// non-negative and `tie` is global.
    Weighted {
        weights: Vec<i64>,
        tie: Box<MonomialOrder>,
    },
}


fn grevlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u64 = a.iter().map(|&e| e as u64).sum();
    let db: u64 = b.iter().map(|&e| e as u64).sum();
    match da.cmp(&db) {
        Ordering::Equal => {}
        other => return other,
    }
    for (x, y) in a.iter().zip(b).rev() {
        if x != y {
            return y.cmp(x);
        }
    }
    Ordering::Equal
}

impl MonomialOrder {
    /// Weighted order with weight 0 on the first `n` (x) variables and 1 on
    /// the last `n` (∂ or ξ) variables, ties broken by grevlex.
    pub fn order_filtration(n: usize) -> Self {
        let mut weights = vec![0; n];
        weights.extend(std::iter::repeat_n(1, n));
        MonomialOrder::Weighted {
            weights,
            tie: Box::new(MonomialOrder::GrevLex),
        }
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.cmp_exponents(a.exponents(), b.exponents())
    }

    pub fn cmp_exponents(&self, a: &[u32], b: &[u32]) -> Ordering {
        match self {
            MonomialOrder::Lex => a.cmp(b),
            MonomialOrder::GrevLex => grevlex(a, b),
            MonomialOrder::Elimination { split } => {
                let s = (*split).min(a.len());
                grevlex(&a[s..], &b[s..]).then_with(|| grevlex(&a[..s], &b[..s]))
            }
            MonomialOrder::Weighted { weights, tie } => {
                let wa: i64 = a.iter().zip(weights).map(|(&e, w)| e as i64 * w).sum();
                let wb: i64 = b.iter().zip(weights).map(|(&e, w)| e as i64 * w).sum();
                wa.cmp(&wb).then_with(|| tie.cmp_exponents(a, b))
            }
        }
    }

    /// Whether `1` is the smallest monomial.
    pub fn is_global(&self) -> bool {
        match self {
            MonomialOrder::Lex | MonomialOrder::GrevLex | MonomialOrder::Elimination { .. } => true,
            MonomialOrder::Weighted { weights, tie } => {
                weights.iter().all(|&w| w >= 0) && tie.is_global()
            }
        }
    }

    /// Whether the order is usable for monomials in `nvars` variables.
    pub(crate) fn fits(&self, nvars: usize) -> bool {
        match self {
            MonomialOrder::Weighted { weights, tie } => weights.len() == nvars && tie.fits(nvars),
            MonomialOrder::Elimination { split } => *split <= nvars,
            _ => true,
        }
    }
}
