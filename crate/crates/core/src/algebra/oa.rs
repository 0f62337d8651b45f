//! Strength-2, index-1 orthogonal arrays: the prime-power construction
//! over GF(q) and the composite construction that composes one array per
//! prime-power component of `g`. Both are checked for the exactly-once
//! property before they are returned.

use alloc::vec;
use alloc::vec::Vec;

use super::field::FiniteField;
use crate::error::{Error, Result};

/// An `s x g^2` array over `Z_g` where every pair of distinct rows covers
/// every ordered symbol pair exactly once.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrthogonalArray {
    pub symbols: usize,
    pub matrix: Vec<Vec<usize>>,
}

impl OrthogonalArray {
    pub fn rows(&self) -> usize {
        self.matrix.len()
    }

    pub fn columns(&self) -> usize {
        self.symbols * self.symbols
    }

    /// The exactly-once check over all row pairs and all ordered symbol
    /// pairs.
    pub fn is_strength_two(&self) -> bool {
        let g = self.symbols;
        for i in 0..self.rows() {
            if self.matrix[i].len() != g * g {
                return false;
            }
            for j in (i + 1)..self.rows() {
                let mut counts = vec![0usize; g * g];
                for (&a, &b) in self.matrix[i].iter().zip(&self.matrix[j]) {
                    if a >= g || b >= g {
                        return false;
                    }
                    counts[a * g + b] += 1;
                }
                if counts.iter().any(|&c| c != 1) {
                    return false;
                }
            }
        }
        true
    }
}

/// OA(q+1, q) for a prime power q: columns indexed by pairs (a, b) over
/// GF(q); the row for slope m holds a*m + b, and the final row holds a.
pub fn oa_prime_power(q: usize) -> Result<OrthogonalArray> {
    let field = FiniteField::new(q)?;
    let mut matrix = Vec::with_capacity(q + 1);
    for m in 0..q {
        let mut row = Vec::with_capacity(q * q);
        for a in 0..q {
            let am = field.mul(a, m);
            for b in 0..q {
                row.push(field.add(am, b));
            }
        }
        matrix.push(row);
    }
    let mut last = Vec::with_capacity(q * q);
    for a in 0..q {
        for _ in 0..q {
            last.push(a);
        }
    }
    matrix.push(last);
    let oa = OrthogonalArray { symbols: q, matrix };
    debug_or_check(&oa)?;
    Ok(oa)
}

/// Prime-power components of the standard-form factorization of `g`,
/// sorted ascending.
pub fn prime_power_components(g: usize) -> Vec<usize> {
    let mut rest = g;
    let mut out = Vec::new();
    let mut p = 2;
    while rest > 1 {
        if rest.is_multiple_of(p) {
            let mut q = 1;
            while rest.is_multiple_of(p) {
                q *= p;
                rest /= p;
            }
            out.push(q);
        }
        p += 1;
    }
    out.sort_unstable();
    out
}

/// `(r, s)` where r is the smallest prime-power component of g and
/// `s = 1 + max(2, r)` is the row count the composite construction attains.
pub fn bush_parameter(g: usize) -> Result<(usize, usize)> {
    if g < 2 {
        return Err(Error::InvalidAlphabet(g));
    }
    let r = *prime_power_components(g)
        .first()
        .expect("g >= 2 has a prime-power component");
    Ok((r, 1 + r.max(2)))
}

/// OA(s, g) for arbitrary `g >= 2` with `s = 1 + max(2, r)`: one prime-power
/// array per component, truncated to s rows and composed columnwise. The
/// components are taken ascending with the first component most
/// significant, so symbols combine by mixed radix.
pub fn bush_oa(g: usize) -> Result<OrthogonalArray> {
    let (_, s) = bush_parameter(g)?;
    let components = prime_power_components(g);
    let arrays: Vec<OrthogonalArray> = components
        .iter()
        .map(|&q| {
            let mut oa = oa_prime_power(q)?;
            oa.matrix.truncate(s);
            Ok(oa)
        })
        .collect::<Result<_>>()?;

    // Symbol weight of component i is the product of the later component
    // sizes; column weight is the analogous product of squared sizes.
    let l = components.len();
    let mut sym_weight = vec![1usize; l];
    let mut col_weight = vec![1usize; l];
    for i in (0..l.saturating_sub(1)).rev() {
        sym_weight[i] = sym_weight[i + 1] * components[i + 1];
        col_weight[i] = col_weight[i + 1] * components[i + 1] * components[i + 1];
    }

    let cols = g * g;
    let mut matrix = Vec::with_capacity(s);
    for t in 0..s {
        let mut row = Vec::with_capacity(cols);
        for c in 0..cols {
            let mut symbol = 0;
            for i in 0..l {
                let ci = c / col_weight[i] % (components[i] * components[i]);
                symbol += arrays[i].matrix[t][ci] * sym_weight[i];
            }
            row.push(symbol);
        }
        matrix.push(row);
    }
    let oa = OrthogonalArray { symbols: g, matrix };
    debug_or_check(&oa)?;
    Ok(oa)
}

/// Constructions are verified before being handed out; a failure here is a
/// bug, not a caller error.
fn debug_or_check(oa: &OrthogonalArray) -> Result<()> {
    if !oa.is_strength_two() {
        return Err(Error::OutputVerificationFailed(
            "orthogonal array fails the exactly-once check".into(),
        ));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn oa_2_rows() {
        let oa = oa_prime_power(2).unwrap();
        assert_eq!(oa.rows(), 3);
        assert_eq!(oa.matrix[0], vec![0, 1, 0, 1]); // slope 0: b
        assert_eq!(oa.matrix[1], vec![0, 1, 1, 0]); // slope 1: a + b
        assert_eq!(oa.matrix[2], vec![0, 0, 1, 1]); // a
        assert!(oa.is_strength_two());
    }

    #[test]
    fn oa_3_shape() {
        let oa = oa_prime_power(3).unwrap();
        assert_eq!(oa.rows(), 4);
        assert_eq!(oa.columns(), 9);
        assert!(oa.is_strength_two());
    }

    #[test]
    fn oa_rejects_composites() {
        assert!(matches!(oa_prime_power(6), Err(Error::NotPrimePower(6))));
    }

    #[test]
    fn identical_rows_are_not_qualitatively_independent() {
        let oa = oa_prime_power(2).unwrap();
        let mut counts = [0usize; 4];
        for (&a, &b) in oa.matrix[1].iter().zip(&oa.matrix[1]) {
            counts[a * 2 + b] += 1;
        }
        assert_eq!(counts[1], 0, "a row against itself covers only diagonals");
        assert_eq!(counts[2], 0);
    }

    #[test]
    fn components_of_standard_form() {
        assert_eq!(prime_power_components(6), vec![2, 3]);
        assert_eq!(prime_power_components(12), vec![3, 4]);
        assert_eq!(prime_power_components(360), vec![5, 8, 9]);
    }

    #[test]
    fn bush_parameters_match_the_formula() {
        assert_eq!(bush_parameter(6).unwrap(), (2, 3));
        assert_eq!(bush_parameter(12).unwrap(), (3, 4));
        assert_eq!(bush_parameter(4).unwrap(), (4, 5));
        assert_eq!(bush_parameter(30).unwrap(), (2, 3));
        assert!(bush_parameter(1).is_err());
    }

    #[test]
    fn bush_6_is_a_3_by_36_array() {
        let oa = bush_oa(6).unwrap();
        assert_eq!(oa.rows(), 3);
        assert_eq!(oa.columns(), 36);
        assert!(oa.is_strength_two());
    }

    #[test]
    fn bush_of_a_prime_power_is_the_full_prime_power_array() {
        assert_eq!(bush_oa(4).unwrap(), oa_prime_power(4).unwrap());
        assert_eq!(bush_oa(5).unwrap(), oa_prime_power(5).unwrap());
    }

    #[test]
    fn bush_12_has_4_rows() {
        let oa = bush_oa(12).unwrap();
        assert_eq!(oa.rows(), 4);
        assert!(oa.is_strength_two());
    }
}
