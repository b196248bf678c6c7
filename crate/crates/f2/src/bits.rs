//! Bit-packed vectors over GF(2).
//!
//! The elimination routines work on whole 64-bit words; everything else in the
//! workspace talks to matrices through sparse index lists, so this type stays
//! private to the crate except where a caller needs a dense scratch vector.

/// Dense vector over GF(2), packed 64 entries per word.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct BitVec {
    words: Vec<u64>,
    len: usize,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        BitVec {
            words: vec![0; len.div_ceil(64)],
            len,
        }
    }

    pub fn from_indices(len: usize, ones: &[u32]) -> Self {
        let mut v = BitVec::zeros(len);
        for &i in ones {
            v.toggle(i as usize);
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        debug_assert!(i < self.len);
        let mask = 1u64 << (i % 64);
        if value {
            self.words[i / 64] |= mask;
        } else {
            self.words[i / 64] &= !mask;
        }
    }

    pub fn toggle(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i / 64] ^= 1u64 << (i % 64);
    }

    pub fn xor_assign(&mut self, other: &BitVec) {
        debug_assert_eq!(self.len, other.len);
        for (w, o) in self.words.iter_mut().zip(&other.words) {
            *w ^= o;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Index of the lowest set bit, if any.
    pub fn lowest_set(&self) -> Option<usize> {
        for (k, &w) in self.words.iter().enumerate() {
            if w != 0 {
                return Some(k * 64 + w.trailing_zeros() as usize);
            }
        }
        None
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(k, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let b = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(k * 64 + b)
                }
            })
        })
    }

    pub fn ones(&self) -> Vec<u32> {
        self.iter_ones().map(|i| i as u32).collect()
    }

    /// Parity of the pointwise product, i.e. the GF(2) inner product.
    pub fn dot(&self, other: &BitVec) -> bool {
        debug_assert_eq!(self.len, other.len);
        self.words
            .iter()
            .zip(&other.words)
            .fold(0u32, |acc, (a, b)| acc ^ (a & b).count_ones())
            & 1
            == 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_ops() {
        let mut v = BitVec::zeros(130);
        v.toggle(0);
        v.toggle(64);
        v.toggle(129);
        assert!(v.get(0) && v.get(64) && v.get(129));
        assert_eq!(v.count_ones(), 3);
        assert_eq!(v.lowest_set(), Some(0));
        assert_eq!(v.ones(), vec![0, 64, 129]);
        let w = BitVec::from_indices(130, &[64, 100]);
        v.xor_assign(&w);
        assert_eq!(v.ones(), vec![0, 100, 129]);
        assert!(!v.is_zero());
    }

    #[test]
    fn dot_product_parity() {
        let a = BitVec::from_indices(70, &[1, 3, 69]);
        let b = BitVec::from_indices(70, &[3, 69]);
        assert!(!a.dot(&b));
        let c = BitVec::from_indices(70, &[3]);
        assert!(a.dot(&c));
    }
}
