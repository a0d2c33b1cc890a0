use std::fmt;

/// Polynomial over GF(2) of degree < 64, bit `i` holding the coefficient of `x^i`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Poly2(pub u64);

impl Poly2 {
    pub const ONE: Poly2 = Poly2(1);
    pub const X: Poly2 = Poly2(2);

    /// Degree, with the zero polynomial reported as `None`.
    pub fn degree(self) -> Option<u32> {
        (self.0 != 0).then(|| 63 - self.0.leading_zeros())
    }

    pub fn coeff(self, i: u32) -> bool {
        i < 64 && (self.0 >> i) & 1 == 1
    }

    /// Product modulo `modulus`; both operands must already be reduced and
    /// `modulus` must have degree <= 32 so the unreduced product fits.
    pub fn mul_mod(self, other: Poly2, modulus: Poly2) -> Poly2 {
        Poly2(clmul_reduce(self.0, other.0, modulus.0))
    }

    pub fn pow_mod(self, mut e: u64, modulus: Poly2) -> Poly2 {
        let mut base = self.reduce(modulus);
        let mut acc = Poly2::ONE.reduce(modulus);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_mod(base, modulus);
            }
            base = base.mul_mod(base, modulus);
            e >>= 1;
        }
        acc
    }

    pub fn reduce(self, modulus: Poly2) -> Poly2 {
        Poly2(reduce(self.0, modulus.0))
    }
}

/// Carry-less product of `a` and `b` reduced modulo `m`.
#[inline]
pub(crate) fn clmul_reduce(a: u64, b: u64, m: u64) -> u64 {
    let mut acc = 0u64;
    let mut a = a;
    let mut b = b;
    while b != 0 {
        if b & 1 == 1 {
            acc ^= a;
        }
        b >>= 1;
        a <<= 1;
    }
    reduce(acc, m)
}

#[inline]
fn reduce(mut v: u64, m: u64) -> u64 {
    let dm = 63 - m.leading_zeros();
    while v != 0 {
        let dv = 63 - v.leading_zeros();
        if dv < dm {
            break;
        }
        v ^= m << (dv - dm);
    }
    v
}

impl fmt::Display for Poly2 {
    /// Highest power first, e.g. `x^4 + x + 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == 0 {
            return f.write_str("0");
        }
        let mut first = true;
        for i in (0..64).rev().filter(|&i| self.coeff(i)) {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match i {
                0 => f.write_str("1")?,
                1 => f.write_str("x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly2({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display() {
        assert_eq!(Poly2(0b10011).to_string(), "x^4 + x + 1");
        assert_eq!(Poly2(0b111).to_string(), "x^2 + x + 1");
        assert_eq!(Poly2(0).to_string(), "0");
    }

    #[test]
    fn x_has_order_15_mod_primitive_quartic() {
        let m = Poly2(0b10011);
        assert_eq!(Poly2::X.pow_mod(15, m), Poly2::ONE);
        assert_ne!(Poly2::X.pow_mod(5, m), Poly2::ONE);
        assert_ne!(Poly2::X.pow_mod(3, m), Poly2::ONE);
    }
}
