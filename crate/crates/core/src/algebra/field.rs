//! Arithmetic in GF(p^n) for small prime powers.
//!
//! Elements are integers in `0..q` read as base-`p` digit vectors: digit `i`
//! is the coefficient of `x^i`. Extension fields reduce modulo the
//! lexicographically smallest monic irreducible polynomial of degree `n`,
//! which makes every table and array built on top byte-reproducible.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Scope guard: fields larger than this are outside every construction here.
pub const MAX_FIELD_ORDER: usize = 1024;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteField {
    p: usize,
    n: usize,
    q: usize,
    /// Coefficients `c_0..=c_n` of the monic reduction polynomial
    /// (little-endian, `c_n = 1`). Unused for prime fields.
    reduction: Vec<usize>,
}

/// Splits `q` into `(p, n)` with `q = p^n`, `p` prime.
pub fn prime_power_split(q: usize) -> Option<(usize, usize)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d)).unwrap();
    let mut rest = q;
    let mut n = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        n += 1;
    }
    if rest == 1 {
        Some((p, n))
    } else {
        None
    }
}

impl FiniteField {
    /// Builds GF(q) for a prime power `q <= 1024`.
    pub fn new(q: usize) -> Result<Self> {
        let (p, n) = prime_power_split(q).ok_or(Error::NotPrimePower(q))?;
        if q > MAX_FIELD_ORDER {
            return Err(Error::SizeLimitExceeded {
                size: q,
                limit: MAX_FIELD_ORDER,
            });
        }
        let reduction = if n == 1 {
            vec![0, 1] // x; never consulted for prime fields
        } else {
            smallest_irreducible(p, n)
        };
        let field = FiniteField { p, n, q, reduction };
        // Field axiom spot check: every nonzero element must invert.
        for a in 1..q {
            let inv = field.inv(a).expect("nonzero element has an inverse");
            debug_assert_eq!(field.mul(a, inv), 1);
        }
        Ok(field)
    }

    pub fn order(&self) -> usize {
        self.q
    }

    pub fn characteristic(&self) -> usize {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    /// Reduction polynomial coefficients, little-endian, including the
    /// leading 1.
    pub fn reduction_polynomial(&self) -> &[usize] {
        &self.reduction
    }

    fn digits(&self, a: usize) -> Vec<usize> {
        let mut out = vec![0; self.n];
        let mut rem = a;
        for d in out.iter_mut() {
            *d = rem % self.p;
            rem /= self.p;
        }
        out
    }

    fn pack_digits(&self, digits: &[usize]) -> usize {
        digits
            .iter()
            .rev()
            .fold(0, |acc, &d| acc * self.p + d % self.p)
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        if self.n == 1 {
            return (a + b) % self.p;
        }
        let (da, db) = (self.digits(a), self.digits(b));
        let sum: Vec<usize> = da.iter().zip(&db).map(|(x, y)| (x + y) % self.p).collect();
        self.pack_digits(&sum)
    }

    pub fn neg(&self, a: usize) -> usize {
        if self.n == 1 {
            return (self.p - a % self.p) % self.p;
        }
        let da = self.digits(a);
        let neg: Vec<usize> = da.iter().map(|&x| (self.p - x) % self.p).collect();
        self.pack_digits(&neg)
    }

    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        if self.n == 1 {
            return (a * b) % self.p;
        }
        let (da, db) = (self.digits(a), self.digits(b));
        let mut prod = vec![0usize; 2 * self.n - 1];
        for (i, &x) in da.iter().enumerate() {
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % self.p;
            }
        }
        // Reduce modulo the monic reduction polynomial.
        for i in (self.n..prod.len()).rev() {
            let c = prod[i];
            if c == 0 {
                continue;
            }
            prod[i] = 0;
            for (j, &r) in self.reduction.iter().enumerate().take(self.n) {
                let idx = i - self.n + j;
                prod[idx] = (prod[idx] + self.p * self.p - c * r % (self.p)) % self.p;
                // (p^2 guard keeps the subtraction in range)
            }
        }
        self.pack_digits(&prod[..self.n])
    }

    pub fn pow(&self, a: usize, mut e: usize) -> usize {
        let mut base = a;
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse of a nonzero element.
    pub fn inv(&self, a: usize) -> Option<usize> {
        if a == 0 {
            return None;
        }
        Some(self.pow(a, self.q - 2))
    }
}

/// The lexicographically smallest monic irreducible polynomial of degree
/// `n` over Z_p, ordered by the base-`p` value of the non-leading
/// coefficients.
fn smallest_irreducible(p: usize, n: usize) -> Vec<usize> {
    let count = p.pow(n as u32);
    for m in 0..count {
        let mut poly = vec![0usize; n + 1];
        let mut rem = m;
        for c in poly.iter_mut().take(n) {
            *c = rem % p;
            rem /= p;
        }
        poly[n] = 1;
        if is_irreducible(&poly, p) {
            return poly;
        }
    }
    unreachable!("an irreducible polynomial of every degree exists over Z_p")
}

/// Trial division by every monic polynomial of degree 1..=deg/2.
fn is_irreducible(poly: &[usize], p: usize) -> bool {
    let deg = poly.len() - 1;
    for d in 1..=deg / 2 {
        let count = p.pow(d as u32);
        for m in 0..count {
            let mut div = vec![0usize; d + 1];
            let mut rem = m;
            for c in div.iter_mut().take(d) {
                *c = rem % p;
                rem /= p;
            }
            div[d] = 1;
            if poly_divides(&div, poly, p) {
                return false;
            }
        }
    }
    true
}

fn poly_divides(div: &[usize], poly: &[usize], p: usize) -> bool {
    let mut rem: Vec<usize> = poly.to_vec();
    let d = div.len() - 1;
    while rem.len() > d && rem.len() >= div.len() {
        let lead = *rem.last().unwrap();
        if lead != 0 {
            let shift = rem.len() - div.len();
            for (j, &c) in div.iter().enumerate() {
                rem[shift + j] = (rem[shift + j] + p * p - lead * c % p) % p;
            }
        }
        rem.pop();
    }
    rem.iter().all(|&c| c == 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gf5_is_modular_arithmetic() {
        let f = FiniteField::new(5).unwrap();
        assert_eq!(f.mul(2, 3), 1);
        assert_eq!(f.add(4, 3), 2);
        assert_eq!(f.inv(2), Some(3));
    }

    #[test]
    fn gf4_uses_x2_x_1() {
        let f = FiniteField::new(4).unwrap();
        assert_eq!(f.reduction_polynomial(), &[1, 1, 1]);
        // x * (x+1) = x^2 + x = 1 (mod x^2+x+1); elements 2 = x, 3 = x+1.
        assert_eq!(f.mul(2, 3), 1);
        assert_eq!(f.add(2, 3), 1);
    }

    #[test]
    fn six_is_not_a_prime_power() {
        assert!(matches!(FiniteField::new(6), Err(Error::NotPrimePower(6))));
        assert!(matches!(FiniteField::new(12), Err(Error::NotPrimePower(12))));
    }

    #[test]
    fn gf8_and_gf9_axioms() {
        for q in [8usize, 9, 16, 25, 27] {
            let f = FiniteField::new(q).unwrap();
            // Distributivity spot check over all triples.
            for a in 0..q {
                for b in 0..q {
                    for c in 0..q {
                        assert_eq!(
                            f.mul(a, f.add(b, c)),
                            f.add(f.mul(a, b), f.mul(a, c)),
                            "distributivity fails in GF({q})"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn gf8_reduction_is_standard() {
        let f = FiniteField::new(8).unwrap();
        assert_eq!(f.reduction_polynomial(), &[1, 1, 0, 1]); // x^3 + x + 1
    }
}
