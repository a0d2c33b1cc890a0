use std::fmt;
use std::str::FromStr;

use super::F2Error;

/// Dense bit-packed vector over GF(2).
///
/// Bit `i` lives in word `i / 64` at position `i % 64`. Bits at positions
/// `>= len` are always zero, so word-level equality, hashing and popcounts
/// never see stale data.
#[derive(Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct F2Vector {
    words: Vec<u64>,
    len: usize,
}

#[inline]
pub(crate) fn word_count(len: usize) -> usize {
    len.div_ceil(64)
}

impl F2Vector {
    pub fn zeros(len: usize) -> Self {
        Self {
            words: vec![0; word_count(len)],
            len,
        }
    }

    /// Standard basis vector `e_i`.
    pub fn unit(len: usize, i: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(i, true);
        v
    }

    /// Characteristic vector of `support`. Repeated indices toggle.
    pub fn from_support(len: usize, support: &[usize]) -> Self {
        let mut v = Self::zeros(len);
        for &i in support {
            v.flip(i);
        }
        v
    }

    pub fn from_bools<I: IntoIterator<Item = bool>>(bits: I) -> Self {
        let mut words = Vec::new();
        let mut len = 0;
        for b in bits {
            if len % 64 == 0 {
                words.push(0);
            }
            if b {
                words[len / 64] |= 1 << (len % 64);
            }
            len += 1;
        }
        Self { words, len }
    }

    /// Builds a vector from raw words, masking off anything past `len`.
    pub fn from_words(len: usize, mut words: Vec<u64>) -> Self {
        words.resize(word_count(len), 0);
        let mut v = Self { words, len };
        v.mask_tail();
        v
    }

    fn mask_tail(&mut self) {
        let rem = self.len % 64;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit {i} out of range for length {}", self.len);
        (self.words[i / 64] >> (i % 64)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit {i} out of range for length {}", self.len);
        let mask = 1u64 << (i % 64);
        if value {
            self.words[i / 64] |= mask;
        } else {
            self.words[i / 64] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len, "bit {i} out of range for length {}", self.len);
        self.words[i / 64] ^= 1u64 << (i % 64);
    }

    /// Hamming weight.
    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn xor_assign(&mut self, other: &F2Vector) {
        assert_eq!(self.len, other.len, "length mismatch in xor");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn xor(&self, other: &F2Vector) -> F2Vector {
        let mut out = self.clone();
        out.xor_assign(other);
        out
    }

    pub fn and(&self, other: &F2Vector) -> F2Vector {
        assert_eq!(self.len, other.len, "length mismatch in and");
        let words = self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect();
        F2Vector { words, len: self.len }
    }

    pub fn or(&self, other: &F2Vector) -> F2Vector {
        assert_eq!(self.len, other.len, "length mismatch in or");
        let words = self.words.iter().zip(&other.words).map(|(a, b)| a | b).collect();
        F2Vector { words, len: self.len }
    }

    /// Inner product over GF(2).
    pub fn dot(&self, other: &F2Vector) -> bool {
        assert_eq!(self.len, other.len, "length mismatch in dot");
        let ones: u32 = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones())
            .sum();
        ones % 2 == 1
    }

    /// Indices of the nonzero coordinates, ascending.
    pub fn support(&self) -> Vec<usize> {
        self.iter_ones().collect()
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let tz = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(wi * 64 + tz)
                }
            })
        })
    }

    pub fn first_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(wi, w)| wi * 64 + w.trailing_zeros() as usize)
    }

    /// Coordinates permuted so that output coordinate `c` is input coordinate `perm[c]`.
    pub fn gather(&self, perm: &[usize]) -> F2Vector {
        assert_eq!(perm.len(), self.len);
        F2Vector::from_bools(perm.iter().map(|&i| self.get(i)))
    }

    /// Cyclic shift by `s` positions: output bit `(i + s) mod len` is input bit `i`.
    pub fn rotate(&self, s: usize) -> F2Vector {
        let n = self.len;
        if n == 0 {
            return self.clone();
        }
        let mut out = F2Vector::zeros(n);
        for i in self.iter_ones() {
            out.set((i + s) % n, true);
        }
        out
    }
}

impl fmt::Display for F2Vector {
    /// ASCII `0`/`1`, coordinate 0 leftmost.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for F2Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F2Vector({self})")
    }
}

impl FromStr for F2Vector {
    type Err = F2Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let mut bits = Vec::with_capacity(s.len());
        for (pos, ch) in s.chars().enumerate() {
            match ch {
                '0' => bits.push(false),
                '1' => bits.push(true),
                other => return Err(F2Error::Parse(format!("unexpected character {other:?} at {pos}"))),
            }
        }
        Ok(F2Vector::from_bools(bits))
    }
}

impl serde::Serialize for F2Vector {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for F2Vector {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parse_and_display_roundtrip() {
        let v: F2Vector = "0110010".parse().unwrap();
        assert_eq!(v.len(), 7);
        assert_eq!(v.support(), vec![1, 2, 5]);
        assert_eq!(v.to_string(), "0110010");
        assert!("01x".parse::<F2Vector>().is_err());
    }

    #[test]
    fn tail_bits_stay_clear() {
        let v = F2Vector::from_words(70, vec![u64::MAX, u64::MAX]);
        assert_eq!(v.weight(), 70);
        assert_eq!(v, F2Vector::from_bools(std::iter::repeat_n(true, 70)));
    }

    #[test]
    fn rotate_wraps() {
        let v = F2Vector::from_support(5, &[0, 4]);
        assert_eq!(v.rotate(1).support(), vec![0, 1]);
        assert_eq!(v.rotate(5), v);
    }

    proptest! {
        #[test]
        fn iter_ones_matches_get(bits in proptest::collection::vec(any::<bool>(), 0..200)) {
            let v = F2Vector::from_bools(bits.clone());
            let expected: Vec<usize> = bits.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i).collect();
            prop_assert_eq!(v.support(), expected.clone());
            prop_assert_eq!(v.weight(), expected.len());
            prop_assert_eq!(v.first_one(), expected.first().copied());
        }
    }
}
