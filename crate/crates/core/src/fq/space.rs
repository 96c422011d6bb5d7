use crate::error::{Error, Result};
use crate::fq::FieldSpec;

/// The vector space GF(q)^n with points numbered in base q, entry 0 being
/// the most significant digit. Integer order of indices is therefore the
/// lexicographic order of the vectors.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Space {
    field: FieldSpec,
    n: usize,
    size: u64,
}

impl Space {
    /// Fails when q^n does not fit the given limit.
    pub fn new(field: FieldSpec, n: usize, limit: u64) -> Result<Self> {
        let size = checked_pow(field.q() as u64, n)
            .filter(|&s| s <= limit)
            .ok_or_else(|| Error::resource("point enumeration", format!("{}^{n}", field.q()), limit))?;
        Ok(Space { field, n, size })
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn size(&self) -> u64 {
        self.size
    }

    pub fn index(&self, x: &[u32]) -> u64 {
        debug_assert_eq!(x.len(), self.n);
        let q = self.field.q() as u64;
        x.iter().fold(0, |acc, &d| acc * q + d as u64)
    }

    pub fn point_into(&self, mut idx: u64, out: &mut [u32]) {
        let q = self.field.q() as u64;
        for slot in out.iter_mut().rev() {
            *slot = (idx % q) as u32;
            idx /= q;
        }
    }

    pub fn point(&self, idx: u64) -> Vec<u32> {
        let mut v = vec![0; self.n];
        self.point_into(idx, &mut v);
        v
    }

    /// Index of `x - alpha * y` given the index of `x` and the digits of
    /// `y`. For q = 2 this is a plain xor.
    #[inline]
    pub fn sub_scaled(&self, x: u64, alpha: u32, y: &[u32], y_idx: u64) -> u64 {
        let q = self.field.q();
        if q == 2 {
            return if alpha == 0 { x } else { x ^ y_idx };
        }
        let mut out = 0u64;
        let mut place = 1u64;
        let mut rest = x;
        for &yd in y.iter().rev() {
            let xd = (rest % q as u64) as u32;
            rest /= q as u64;
            let d = self.field.sub(xd, self.field.mul(alpha, yd));
            out += d as u64 * place;
            place *= q as u64;
        }
        out
    }

    /// The map `x -> x - alpha * y` as a pair of half-length lookup tables,
    /// for applying one translation to many points.
    pub fn shift(&self, y: &[u32], alpha: u32) -> Shift {
        let q = self.field.q() as u64;
        let m = self.n / 2;
        let low = q.pow(m as u32);
        let table = |digits: &[u32], scale: u64| -> Vec<u64> {
            let size = q.pow(digits.len() as u32);
            let mut cur = vec![0u32; digits.len()];
            (0..size)
                .map(|i| {
                    let mut rest = i;
                    for slot in cur.iter_mut().rev() {
                        *slot = (rest % q) as u32;
                        rest /= q;
                    }
                    cur.iter()
                        .zip(digits)
                        .fold(0, |acc, (&a, &b)| acc * q + self.field.sub(a, self.field.mul(alpha, b)) as u64)
                        * scale
                })
                .collect()
        };
        Shift {
            low,
            lo: table(&y[self.n - m..], 1),
            hi: table(&y[..self.n - m], low),
        }
    }

    pub fn weight_of(&self, mut idx: u64) -> usize {
        let q = self.field.q() as u64;
        if q == 2 {
            return idx.count_ones() as usize;
        }
        let mut w = 0;
        while idx > 0 {
            if idx % q != 0 {
                w += 1;
            }
            idx /= q;
        }
        w
    }
}

/// A precomputed translation of a [`Space`]; see [`Space::shift`].
#[derive(Clone, Debug)]
pub struct Shift {
    low: u64,
    lo: Vec<u64>,
    hi: Vec<u64>,
}

impl Shift {
    #[inline]
    pub fn apply(&self, x: u64) -> u64 {
        self.hi[(x / self.low) as usize] + self.lo[(x % self.low) as usize]
    }
}

pub(crate) fn checked_pow(base: u64, exp: usize) -> Option<u64> {
    let mut acc = 1u64;
    for _ in 0..exp {
        acc = acc.checked_mul(base)?;
    }
    Some(acc)
}
