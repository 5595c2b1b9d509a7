//! Coefficient rings, monomials, monomial orders and sparse polynomials.

mod coeff;
mod galois;
mod monomial;
mod mpoly;
mod order;

use std::fmt;

pub use coeff::{Coeff, Ring, MAX_MODULUS};
pub use galois::GaloisField;
pub use monomial::Monomial;
pub use mpoly::{vars, MPoly, Vars};
pub use order::MonomialOrder;

pub(crate) use mpoly::fmt_monomial;

/// Inverse of a unit; see [`Coeff::inv`].
pub fn coeff_inv(a: &Coeff) -> crate::Result<Coeff> {
    a.inv()
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Writes `c_1 m_1 + c_2 m_2 + ...`.
///
/// The first coefficient is printed as its canonical representative; later
/// `Z/m` coefficients use the representative of least absolute value so that
/// `ξ - 1` prints as `Xi1 - 1` rather than `Xi1 + 2`.
pub(crate) fn fmt_sum(terms: &[(Coeff, String)], f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if terms.is_empty() {
        return write!(f, "0");
    }
    for (i, (c, m)) in terms.iter().enumerate() {
        let (negative, magnitude) = if i == 0 {
            match c {
                Coeff::Rational(q) if c.prints_negative() => (true, Coeff::Rational(-q)),
                _ => (false, c.clone()),
            }
        } else if c.prints_negative() {
            (true, -c)
        } else {
            (false, c.clone())
        };
        let body = match (m.is_empty(), magnitude.is_one()) {
            (true, _) => magnitude.to_string(),
            (false, true) => m.clone(),
            (false, false) => format!("{magnitude}*{m}"),
        };
        match (i, negative) {
            (0, false) => write!(f, "{body}")?,
            (0, true) => write!(f, "-{body}")?,
            (_, false) => write!(f, " + {body}")?,
            (_, true) => write!(f, " - {body}")?,
        }
    }
    Ok(())
}
