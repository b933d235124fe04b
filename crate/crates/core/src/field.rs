//! GF(2^alpha) arithmetic on bit-packed polynomials, for 1 <= alpha <= 45.
//!
//! A field element is a `u64` whose bit `i` is the coefficient of `x^i`.
//! Addition is xor. Multiplication is carry-less multiplication into a
//! `u128` followed by reduction modulo an irreducible polynomial of degree
//! alpha, also bit-packed (bit `alpha` set). For small fields a full
//! multiplication table is precomputed, since group enumeration hammers it.

use crate::error::{Error, Result};
use crate::numth;

pub const MAX_ALPHA: u32 = 45;

/// Largest alpha for which a 2^(2 alpha) entry product table is built.
const TABLE_ALPHA: u32 = 8;

fn poly_deg(p: u64) -> i32 {
    63 - p.leading_zeros() as i32 // -64 + something for 0, callers guard
}

fn clmul(a: u64, b: u64) -> u128 {
    let mut acc = 0u128;
    let mut a = a;
    let mut shift = 0;
    while a != 0 {
        let tz = a.trailing_zeros();
        shift += tz;
        acc ^= (b as u128) << shift;
        a >>= tz + 1;
        shift += 1;
    }
    acc
}

fn poly_rem(mut wide: u128, modulus: u64) -> u64 {
    let md = poly_deg(modulus);
    debug_assert!(md >= 0);
    while wide >> md != 0 {
        let top = 127 - wide.leading_zeros() as i32;
        wide ^= (modulus as u128) << (top - md);
    }
    wide as u64
}

fn poly_mulmod(a: u64, b: u64, modulus: u64) -> u64 {
    poly_rem(clmul(a, b), modulus)
}

fn poly_gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = if poly_deg(a) >= poly_deg(b) {
            poly_rem(a as u128, b)
        } else {
            a
        };
        a = b;
        b = r;
    }
    a
}

/// Degree check plus the standard criterion: f of degree d is irreducible
/// over GF(2) iff it shares no root with x^(2^k) - x for any k <= d/2,
/// i.e. gcd(f, x^(2^k) + x) = 1 for those k. Also insists on a nonzero
/// constant term, which rules out the reducible multiples of x directly.
pub fn is_irreducible(f: u64, alpha: u32) -> bool {
    if f & 1 == 0 || poly_deg(f) != alpha as i32 {
        return false;
    }
    let mut xq = 0b10u64; // the polynomial x
    for _ in 1..=alpha / 2 {
        xq = poly_mulmod(xq, xq, f);
        if poly_gcd(f, xq ^ 0b10) != 1 {
            return false;
        }
    }
    true
}

/// Smallest irreducible polynomial of degree alpha, as an integer bitmask.
pub fn default_modulus(alpha: u32) -> Result<u64> {
    if alpha == 0 || alpha > MAX_ALPHA {
        return Err(Error::AlphaRange(alpha));
    }
    let base = 1u64 << alpha;
    let mut f = base | 1;
    while f < base << 1 {
        if is_irreducible(f, alpha) {
            return Ok(f);
        }
        f += 2;
    }
    unreachable!("an irreducible polynomial exists in every degree")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldCtx {
    alpha: u32,
    modulus: u64,
    table: Option<Vec<u64>>,
}

impl FieldCtx {
    /// Builds GF(2^alpha), validating the modulus (or choosing the smallest
    /// irreducible when omitted).
    pub fn new(alpha: u32, modulus: Option<u64>) -> Result<FieldCtx> {
        if alpha == 0 || alpha > MAX_ALPHA {
            return Err(Error::AlphaRange(alpha));
        }
        let modulus = match modulus {
            Some(m) => {
                if !is_irreducible(m, alpha) {
                    return Err(Error::BadModulus(m));
                }
                m
            }
            None => default_modulus(alpha)?,
        };
        let table = (alpha <= TABLE_ALPHA).then(|| {
            let n = 1usize << alpha;
            let mut t = vec![0u64; n * n];
            for a in 0..n as u64 {
                for b in a..n as u64 {
                    let p = poly_mulmod(a, b, modulus);
                    t[(a as usize) << alpha | b as usize] = p;
                    t[(b as usize) << alpha | a as usize] = p;
                }
            }
            t
        });
        Ok(FieldCtx {
            alpha,
            modulus,
            table,
        })
    }

    pub fn alpha(&self) -> u32 {
        self.alpha
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Field size 2^alpha.
    pub fn order(&self) -> u64 {
        1 << self.alpha
    }

    pub fn contains(&self, a: u64) -> bool {
        a < self.order()
    }

    #[inline]
    pub fn add(a: u64, b: u64) -> u64 {
        a ^ b
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        match &self.table {
            Some(t) => t[(a as usize) << self.alpha | b as usize],
            None => poly_mulmod(a, b, self.modulus),
        }
    }

    pub fn square(&self, a: u64) -> u64 {
        self.mul(a, a)
    }

    pub fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: u64) -> Result<u64> {
        if a == 0 {
            return Err(Error::ZeroInverse);
        }
        Ok(self.pow(a, self.order() - 2))
    }

    /// Smallest multiplicative generator of the field, as a bitmask.
    pub fn primitive_element(&self) -> Result<u64> {
        let q1 = (self.order() - 1) as u128;
        if q1 == 1 {
            return Ok(1);
        }
        let primes = numth::factorize(q1)?.primes();
        for cand in 2..self.order() {
            if primes.iter().all(|&p| self.pow(cand, (q1 / p) as u64) != 1) {
                return Ok(cand);
            }
        }
        unreachable!("the multiplicative group of a finite field is cyclic")
    }
}
