use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A prime field GF(q). Residues are stored as `u32` in `[0, q)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct FieldSpec {
    q: u32,
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

impl FieldSpec {
    pub fn new(q: u32) -> Result<Self> {
        if !is_prime(q as u64) {
            return Err(Error::NotPrime(q as u64));
        }
        Ok(FieldSpec { q })
    }

    #[inline]
    pub fn q(self) -> u32 {
        self.q
    }

    /// Reduces an arbitrary integer into `[0, q)`.
    #[inline]
    pub fn reduce(self, a: i64) -> u32 {
        a.rem_euclid(self.q as i64) as u32
    }

    #[inline]
    pub fn contains(self, a: u32) -> bool {
        a < self.q
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        debug_assert!(a < self.q && b < self.q);
        ((a as u64 + b as u64) % self.q as u64) as u32
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        debug_assert!(a < self.q && b < self.q);
        ((a as u64 + self.q as u64 - b as u64) % self.q as u64) as u32
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        debug_assert!(a < self.q);
        if a == 0 {
            0
        } else {
            self.q - a
        }
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        debug_assert!(a < self.q && b < self.q);
        ((a as u64 * b as u64) % self.q as u64) as u32
    }

    /// `a + b * c`, the inner step of every dot product.
    #[inline]
    pub fn mul_add(self, a: u32, b: u32, c: u32) -> u32 {
        ((a as u64 + b as u64 * c as u64) % self.q as u64) as u32
    }

    pub fn pow(self, mut base: u32, mut exp: u64) -> u32 {
        let mut acc = 1 % self.q;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    pub fn inv(self, a: u32) -> Result<u32> {
        debug_assert!(a < self.q);
        if a == 0 {
            return Err(Error::DivisionByZero { q: self.q });
        }
        // extended Euclid on (a, q)
        let (mut r0, mut r1) = (self.q as i64, a as i64);
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let quot = r0 / r1;
            (r0, r1) = (r1, r0 - quot * r1);
            (t0, t1) = (t1, t0 - quot * t1);
        }
        Ok(self.reduce(t0))
    }

    pub fn div(self, a: u32, b: u32) -> Result<u32> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// Iterator over all field elements `0..q`.
    pub fn elements(self) -> std::ops::Range<u32> {
        0..self.q
    }
}

impl TryFrom<u32> for FieldSpec {
    type Error = Error;
    fn try_from(q: u32) -> Result<Self> {
        FieldSpec::new(q)
    }
}

impl From<FieldSpec> for u32 {
    fn from(f: FieldSpec) -> u32 {
        f.q
    }
}

impl std::fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "GF({})", self.q)
    }
}

pub fn fq_add(a: u32, b: u32, field: FieldSpec) -> u32 {
    field.add(a, b)
}

pub fn fq_mul(a: u32, b: u32, field: FieldSpec) -> u32 {
    field.mul(a, b)
}

pub fn fq_neg(a: u32, field: FieldSpec) -> u32 {
    field.neg(a)
}

pub fn fq_inv(a: u32, field: FieldSpec) -> Result<u32> {
    field.inv(a)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scalar_examples() {
        let f7 = FieldSpec::new(7).unwrap();
        assert_eq!(fq_mul(4, 5, f7), 6);
        assert_eq!(fq_inv(3, f7).unwrap(), 5);
        assert_eq!(fq_add(6, 6, f7), 5);
        assert_eq!(fq_neg(0, f7), 0);
        assert_eq!(fq_neg(2, f7), 5);
    }

    #[test]
    fn inverse_of_zero_fails() {
        let f5 = FieldSpec::new(5).unwrap();
        assert!(matches!(fq_inv(0, f5), Err(Error::DivisionByZero { q: 5 })));
    }

    #[test]
    fn rejects_composites() {
        for q in [0, 1, 4, 9, 15, 91] {
            assert!(FieldSpec::new(q).is_err(), "{q}");
        }
        for q in [2, 3, 5, 7, 11, 13, 65521] {
            assert!(FieldSpec::new(q).is_ok(), "{q}");
        }
    }

    #[test]
    fn field_axioms_exhaustive() {
        for q in [2, 3, 5, 7, 11, 13] {
            let f = FieldSpec::new(q).unwrap();
            for a in f.elements() {
                assert_eq!(f.add(a, f.neg(a)), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
                    assert_eq!(f.pow(a, (q - 1) as u64), 1);
                }
                for b in f.elements() {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    assert_eq!(f.sub(f.add(a, b), b), a);
                    for c in f.elements() {
                        assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
            }
        }
    }
}
