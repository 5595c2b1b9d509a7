//! Small extension fields `F_p[t]/(f)` with `deg f <= 3`.

use std::fmt;

use crate::error::{Error, Result};

/// Maximum extension degree supported.
pub const MAX_DEGREE: u8 = 3;

/// Conway polynomials for the primes the corpus uses, low coefficients first
/// with the leading 1 omitted.
const CONWAY: &[(u64, u8, [u64; 3])] = &[
    (2, 2, [1, 1, 0]),
    (2, 3, [1, 1, 0]),
    (3, 2, [2, 2, 0]),
    (3, 3, [1, 2, 0]),
    (5, 2, [2, 4, 0]),
    (5, 3, [3, 3, 0]),
    (7, 2, [3, 6, 0]),
    (7, 3, [4, 0, 6]),
    (11, 2, [2, 7, 0]),
    (11, 3, [9, 2, 0]),
    (13, 2, [2, 12, 0]),
    (13, 3, [11, 2, 0]),
];

/// The field `F_p[t]/(t^k + m_{k-1} t^{k-1} + ... + m_0)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GaloisField {
    p: u64,
    k: u8,
    modulus: [u64; 3],
}

impl GaloisField {
    /// Builds `F_{p^k}` for `k` in `2..=3`, using a Conway polynomial when one is
    /// tabulated and the smallest irreducible cubic/quadratic otherwise.
    pub fn new(p: u64, k: u8) -> Result<Self> {
        if !crate::algebra::is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if !(2..=MAX_DEGREE).contains(&k) {
            return Err(Error::TooLarge {
                what: format!("extension degree {k}"),
                limit: MAX_DEGREE as u64,
            });
        }
        if p > (1 << 20) {
            return Err(Error::TooLarge {
                what: format!("characteristic {p} of an extension field"),
                limit: 1 << 20,
            });
        }
        if let Some(&(_, _, m)) = CONWAY.iter().find(|(q, d, _)| *q == p && *d == k) {
            return Ok(GaloisField { p, k, modulus: m });
        }
        // No root means irreducible in degree <= 3.
        let k_us = k as usize;
        let total = p.pow(k as u32);
        for code in 0..total {
            let mut m = [0u64; 3];
            let mut c = code;
            for slot in m.iter_mut().take(k_us) {
                *slot = c % p;
                c /= p;
            }
            if m[0] == 0 {
                continue;
            }
            let has_root = (0..p).any(|x| {
                let mut acc = 1u64;
                for i in (0..k_us).rev() {
                    acc = (acc * x + m[i]) % p;
                }
                acc == 0
            });
            if !has_root {
                return Ok(GaloisField { p, k, modulus: m });
            }
        }
        unreachable!("irreducible polynomials exist in every degree")
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> u8 {
        self.k
    }

    /// Number of elements `p^k`.
    pub fn order(&self) -> u64 {
        self.p.pow(self.k as u32)
    }

    /// Low coefficients of the defining polynomial (leading 1 omitted).
    pub fn modulus(&self) -> &[u64] {
        &self.modulus[..self.k as usize]
    }

    pub(crate) fn add(&self, a: &[u64; 3], b: &[u64; 3]) -> [u64; 3] {
        let mut r = [0; 3];
        for i in 0..self.k as usize {
            r[i] = (a[i] + b[i]) % self.p;
        }
        r
    }

    pub(crate) fn neg(&self, a: &[u64; 3]) -> [u64; 3] {
        let mut r = [0; 3];
        for i in 0..self.k as usize {
            r[i] = (self.p - a[i]) % self.p;
        }
        r
    }

    pub(crate) fn mul(&self, a: &[u64; 3], b: &[u64; 3]) -> [u64; 3] {
        let k = self.k as usize;
        let p = self.p;
        let mut prod = [0u64; 5];
        for i in 0..k {
            for j in 0..k {
                prod[i + j] = (prod[i + j] + a[i] * b[j]) % p;
            }
        }
        // t^k = -(m_{k-1} t^{k-1} + ... + m_0)
        for top in (k..2 * k - 1).rev() {
            let c = prod[top];
            if c == 0 {
                continue;
            }
            prod[top] = 0;
            for i in 0..k {
                let idx = top - k + i;
                prod[idx] = (prod[idx] + (p - c) * self.modulus[i]) % p;
            }
        }
        let mut r = [0; 3];
        r[..k].copy_from_slice(&prod[..k]);
        r
    }

    pub(crate) fn pow(&self, a: &[u64; 3], mut e: u64) -> [u64; 3] {
        let mut base = *a;
        let mut acc = [1, 0, 0];
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Inverse via `a^(q-2)`; `None` for zero.
    pub(crate) fn inv(&self, a: &[u64; 3]) -> Option<[u64; 3]> {
        if a.iter().all(|&c| c == 0) {
            return None;
        }
        Some(self.pow(a, self.order() - 2))
    }

    /// Decodes the `index`-th element in base-`p` digit order.
    pub(crate) fn element(&self, mut index: u64) -> [u64; 3] {
        let mut v = [0; 3];
        for slot in v.iter_mut().take(self.k as usize) {
            *slot = index % self.p;
            index /= self.p;
        }
        v
    }
}

impl fmt::Display for GaloisField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}^{}", self.p, self.k)
    }
}

pub(crate) fn fmt_element(v: &[u64; 3], k: u8, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    let mut parts = Vec::new();
    for i in (0..k as usize).rev() {
        let c = v[i];
        if c == 0 {
            continue;
        }
        parts.push(match (i, c) {
            (0, c) => c.to_string(),
            (1, 1) => "a".to_string(),
            (1, c) => format!("{c}*a"),
            (e, 1) => format!("a^{e}"),
            (e, c) => format!("{c}*a^{e}"),
        });
    }
    if parts.is_empty() {
        write!(f, "0")
    } else if parts.len() == 1 {
        write!(f, "{}", parts[0])
    } else {
        write!(f, "({})", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn irreducible(gf: &GaloisField) -> bool {
        let p = gf.p;
        let m = gf.modulus();
        !(0..p).any(|x| {
            let mut acc = 1u64;
            for i in (0..m.len()).rev() {
                acc = (acc * x + m[i]) % p;
            }
            acc == 0
        })
    }

    #[test]
    fn tabulated_moduli_are_irreducible() {
        for &(p, k, _) in CONWAY {
            assert!(irreducible(&GaloisField::new(p, k).unwrap()), "p={p} k={k}");
        }
        for p in [17, 19, 23] {
            for k in 2..=3 {
                assert!(irreducible(&GaloisField::new(p, k).unwrap()));
            }
        }
    }

    #[test]
    fn every_nonzero_element_is_invertible() {
        for (p, k) in [(2, 2), (2, 3), (3, 2), (5, 3)] {
            let gf = GaloisField::new(p, k).unwrap();
            for i in 1..gf.order() {
                let a = gf.element(i);
                let b = gf.inv(&a).unwrap();
                assert_eq!(gf.mul(&a, &b), [1, 0, 0]);
            }
        }
    }

    #[test]
    fn multiplicative_group_is_cyclic_of_order_q_minus_one() {
        let gf = GaloisField::new(3, 2).unwrap();
        for i in 1..gf.order() {
            assert_eq!(gf.pow(&gf.element(i), gf.order() - 1), [1, 0, 0]);
        }
    }

    #[test]
    fn rejects_bad_parameters() {
        assert_eq!(GaloisField::new(4, 2), Err(Error::NotPrime(4)));
        assert!(GaloisField::new(3, 4).is_err());
        assert!(GaloisField::new(3, 1).is_err());
    }
}
