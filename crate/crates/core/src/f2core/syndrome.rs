//! Fixed-width packed syndromes.
//!
//! The hot loops (distance verification, meet-in-the-middle codeword search)
//! reduce every column of a parity-check matrix to its syndrome once and then
//! only XOR and compare those. Making the width a const generic keeps the
//! syndrome `Copy` and lets the compiler unroll the word loop; callers pick the
//! width at runtime through [`with_syndrome_width!`].

use std::ops::{BitXor, BitXorAssign};

use super::F2Matrix;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Syndrome<const W: usize>(pub [u64; W]);

impl<const W: usize> Default for Syndrome<W> {
    fn default() -> Self {
        Self([0; W])
    }
}

impl<const W: usize> Syndrome<W> {
    pub const ZERO: Self = Self([0; W]);

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }

    #[inline]
    pub fn set_bit(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }
}

impl<const W: usize> BitXor for Syndrome<W> {
    type Output = Self;

    #[inline]
    fn bitxor(mut self, rhs: Self) -> Self {
        for (a, b) in self.0.iter_mut().zip(rhs.0) {
            *a ^= b;
        }
        self
    }
}

impl<const W: usize> BitXorAssign for Syndrome<W> {
    #[inline]
    fn bitxor_assign(&mut self, rhs: Self) {
        for (a, b) in self.0.iter_mut().zip(rhs.0) {
            *a ^= b;
        }
    }
}

/// Syndrome of each column of `parity`: bit `r` of entry `j` is `parity[r][j]`.
///
/// Panics if `parity` has more than `64 * W` rows.
pub fn column_syndromes<const W: usize>(parity: &F2Matrix) -> Vec<Syndrome<W>> {
    assert!(
        parity.nrows() <= 64 * W,
        "syndrome width {W} words too small for {} rows",
        parity.nrows()
    );
    let mut cols = vec![Syndrome::<W>::ZERO; parity.ncols()];
    for (r, row) in parity.rows().iter().enumerate() {
        for j in row.iter_ones() {
            cols[j].set_bit(r);
        }
    }
    cols
}

/// Largest parity-check row count the packed paths accept.
pub const MAX_SYNDROME_BITS: usize = 64 * 64;

/// Runs `$body` with `$w` bound to a `const usize` word count large enough
/// for `$bits` syndrome bits. Evaluates to `None` past [`MAX_SYNDROME_BITS`].
#[macro_export]
macro_rules! with_syndrome_width {
    ($bits:expr, $w:ident => $body:expr) => {{
        match ($bits as usize).div_ceil(64).max(1) {
            1 => {
                const $w: usize = 1;
                Some($body)
            }
            2 => {
                const $w: usize = 2;
                Some($body)
            }
            3 => {
                const $w: usize = 3;
                Some($body)
            }
            4 => {
                const $w: usize = 4;
                Some($body)
            }
            5..=6 => {
                const $w: usize = 6;
                Some($body)
            }
            7..=8 => {
                const $w: usize = 8;
                Some($body)
            }
            9..=16 => {
                const $w: usize = 16;
                Some($body)
            }
            17..=32 => {
                const $w: usize = 32;
                Some($body)
            }
            33..=64 => {
                const $w: usize = 64;
                Some($body)
            }
            _ => None,
        }
    }};
}
