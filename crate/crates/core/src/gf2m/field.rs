use std::collections::HashMap;

use num_integer::Integer;

use super::poly::{clmul_reduce, Poly2};
use super::FieldError;

/// Fields up to this degree carry full log/antilog tables.
pub const TABLE_DEGREE_LIMIT: u32 = 20;
pub const MAX_DEGREE: u32 = 32;

/// GF(2^m) built on the lexicographically smallest primitive polynomial of degree `m`.
///
/// Elements are `u32` bit patterns of polynomials in the generator `g = x`.
/// Up to degree [`TABLE_DEGREE_LIMIT`] multiplication and logarithms are table
/// lookups; above it multiplication is carry-less and logarithms go through
/// Pohlig-Hellman with baby-step giant-step in each prime-order subgroup.
#[derive(Clone)]
pub struct Gf2m {
    degree: u32,
    modulus: Poly2,
    order: u64,
    order_factors: Vec<(u64, u32)>,
    tables: Option<Tables>,
}

#[derive(Clone)]
struct Tables {
    exp: Vec<u32>,
    log: Vec<u32>,
}

/// A primitive element found by [`Gf2m::find_primitive_mod3`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimitiveChoice {
    pub alpha: u32,
    /// `alpha = g^exponent` for the table generator `g`.
    pub exponent: u64,
    /// `log_alpha(1 + alpha)`.
    pub log_one_plus: u64,
}

impl std::fmt::Debug for Gf2m {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Gf2m")
            .field("degree", &self.degree)
            .field("modulus", &self.modulus)
            .finish()
    }
}

pub(crate) fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// `x` generates the multiplicative group of GF(2)[x]/(p) exactly when `p` is
/// primitive; a reducible `p` has a smaller unit group, so no separate
/// irreducibility test is needed.
pub fn is_primitive_polynomial(p: Poly2, degree: u32) -> bool {
    if p.degree() != Some(degree) || !p.coeff(0) || degree == 0 {
        return false;
    }
    let order = (1u64 << degree) - 1;
    if Poly2::X.pow_mod(order, p) != Poly2::ONE {
        return false;
    }
    factorize(order)
        .iter()
        .all(|&(q, _)| Poly2::X.pow_mod(order / q, p) != Poly2::ONE)
}

/// Smallest primitive polynomial of the given degree, comparing bit patterns as integers.
pub fn smallest_primitive_polynomial(degree: u32) -> Option<Poly2> {
    if !(1..=MAX_DEGREE).contains(&degree) {
        return None;
    }
    let lo = 1u64 << degree;
    (lo + 1..lo << 1)
        .step_by(2)
        .map(Poly2)
        .find(|&p| is_primitive_polynomial(p, degree))
}

impl Gf2m {
    pub fn new(degree: u32) -> Result<Self, FieldError> {
        if !(2..=MAX_DEGREE).contains(&degree) {
            return Err(FieldError::DegreeOutOfRange(degree));
        }
        let modulus = smallest_primitive_polynomial(degree).expect("primitive polynomials exist in every degree");
        Self::with_modulus(degree, modulus)
    }

    pub fn with_modulus(degree: u32, modulus: Poly2) -> Result<Self, FieldError> {
        if !(2..=MAX_DEGREE).contains(&degree) {
            return Err(FieldError::DegreeOutOfRange(degree));
        }
        if !is_primitive_polynomial(modulus, degree) {
            return Err(FieldError::ModulusNotPrimitive(modulus));
        }
        let order = (1u64 << degree) - 1;
        let tables = (degree <= TABLE_DEGREE_LIMIT).then(|| {
            let mut exp = Vec::with_capacity(order as usize);
            let mut log = vec![0u32; order as usize + 1];
            let mut v = 1u64;
            for i in 0..order {
                exp.push(v as u32);
                log[v as usize] = i as u32;
                v = clmul_reduce(v, 2, modulus.0);
            }
            Tables { exp, log }
        });
        Ok(Self {
            degree,
            modulus,
            order,
            order_factors: factorize(order),
            tables,
        })
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn modulus(&self) -> Poly2 {
        self.modulus
    }

    /// Size of the multiplicative group, `2^m - 1`.
    pub fn order(&self) -> u64 {
        self.order
    }

    /// The table generator `g` (the class of `x`).
    pub fn generator(&self) -> u32 {
        2
    }

    pub fn contains(&self, e: u32) -> bool {
        (e as u64) <= self.order
    }

    pub fn element(&self, value: u32) -> Result<FieldElement, FieldError> {
        if !self.contains(value) {
            return Err(FieldError::ValueOutOfRange {
                value,
                degree: self.degree,
            });
        }
        Ok(FieldElement {
            degree: self.degree,
            value,
        })
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        a ^ b
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        match &self.tables {
            Some(t) => {
                let s = t.log[a as usize] as u64 + t.log[b as usize] as u64;
                t.exp[(s % self.order) as usize]
            }
            None => clmul_reduce(a as u64, b as u64, self.modulus.0) as u32,
        }
    }

    /// `g^i` for the table generator.
    pub fn exp(&self, i: u64) -> u32 {
        let i = i % self.order;
        match &self.tables {
            Some(t) => t.exp[i as usize],
            None => self.pow(self.generator(), i),
        }
    }

    pub fn pow(&self, a: u32, e: u64) -> u32 {
        if a == 0 {
            return u32::from(e == 0);
        }
        if let Some(t) = &self.tables {
            let l = t.log[a as usize] as u128 * (e % self.order) as u128;
            return t.exp[(l % self.order as u128) as usize];
        }
        let mut base = a;
        let mut acc = 1u32;
        let mut e = e % self.order;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: u32) -> Result<u32, FieldError> {
        if a == 0 {
            return Err(FieldError::ZeroInverse);
        }
        Ok(self.pow(a, self.order - 1))
    }

    /// Discrete logarithm to the table generator: `g^dlog(e) = e`, in `[0, 2^m - 2]`.
    pub fn dlog(&self, e: u32) -> Result<u64, FieldError> {
        if e == 0 {
            return Err(FieldError::LogOfZero);
        }
        if !self.contains(e) {
            return Err(FieldError::ValueOutOfRange {
                value: e,
                degree: self.degree,
            });
        }
        match &self.tables {
            Some(t) => Ok(t.log[e as usize] as u64),
            None => Ok(self.pohlig_hellman(e)),
        }
    }

    /// Discrete logarithm to an arbitrary primitive `base`.
    pub fn dlog_base(&self, e: u32, base: u32) -> Result<u64, FieldError> {
        if !self.is_primitive(base) {
            return Err(FieldError::NotPrimitive(base));
        }
        let le = self.dlog(e)? as i128;
        let lb = self.dlog(base)? as i128;
        let inv = mod_inverse(lb, self.order as i128).expect("primitive base has a unit logarithm");
        Ok(((le * inv).rem_euclid(self.order as i128)) as u64)
    }

    fn pohlig_hellman(&self, e: u32) -> u64 {
        // x mod p^k for each prime power, then CRT
        let n = self.order;
        let g = self.generator();
        let mut residue: i128 = 0;
        let mut modulus: i128 = 1;
        for &(p, k) in &self.order_factors {
            let pk = p.pow(k);
            let cofactor = n / pk;
            let g1 = self.pow(g, cofactor);
            let h1 = self.pow(e, cofactor);
            // g1 has order p^k; recover digits base p
            let gamma = self.pow(g1, pk / p);
            let mut x = 0u64;
            let mut p_pow = 1u64;
            for _ in 0..k {
                let g_inv_x = self.pow(self.inv(g1).unwrap(), x);
                let hk = self.pow(self.mul(g_inv_x, h1), pk / p / p_pow);
                let d = self.bsgs(gamma, hk, p);
                x += d * p_pow;
                p_pow *= p;
            }
            let (r, m) = crt(residue, modulus, x as i128, pk as i128);
            residue = r;
            modulus = m;
        }
        residue as u64
    }

    /// Solves `base^d = target` for `d < order`, where `base` has order `order`.
    fn bsgs(&self, base: u32, target: u32, order: u64) -> u64 {
        let step = (order as f64).sqrt().ceil() as u64 + 1;
        let mut baby = HashMap::with_capacity(step as usize);
        let mut cur = 1u32;
        for j in 0..step {
            baby.entry(cur).or_insert(j);
            cur = self.mul(cur, base);
        }
        let giant = self.inv(self.pow(base, step)).unwrap();
        let mut gamma = target;
        for i in 0..=step {
            if let Some(&j) = baby.get(&gamma) {
                return (i * step + j) % order;
            }
            gamma = self.mul(gamma, giant);
        }
        unreachable!("target lies in the subgroup generated by base")
    }

    /// Multiplicative order of a nonzero element.
    pub fn element_order(&self, e: u32) -> Result<u64, FieldError> {
        if e == 0 {
            return Err(FieldError::LogOfZero);
        }
        let mut ord = self.order;
        for &(p, _) in &self.order_factors {
            while ord.is_multiple_of(p) && self.pow(e, ord / p) == 1 {
                ord /= p;
            }
        }
        Ok(ord)
    }

    pub fn is_primitive(&self, e: u32) -> bool {
        e != 0 && self.contains(e) && self.element_order(e) == Ok(self.order)
    }

    /// Frobenius orbit `e, e^2, e^4, ...` without repetition.
    pub fn conjugates(&self, e: u32) -> Vec<u32> {
        let mut out = vec![e];
        let mut cur = self.mul(e, e);
        while cur != e {
            out.push(cur);
            cur = self.mul(cur, cur);
        }
        out
    }

    /// Orbit of a pair under simultaneous squaring.
    pub fn conjugacy_class(&self, pair: (u32, u32)) -> Vec<(u32, u32)> {
        let mut out = vec![pair];
        let mut cur = (self.mul(pair.0, pair.0), self.mul(pair.1, pair.1));
        while cur != pair {
            out.push(cur);
            cur = (self.mul(cur.0, cur.0), self.mul(cur.1, cur.1));
        }
        out
    }

    /// Monic minimal polynomial of `e` over GF(2): `∏ (x + c)` over the conjugates of `e`.
    pub fn minimal_polynomial(&self, e: u32) -> Poly2 {
        // coefficients in GF(2^m), lowest degree first
        let mut coeffs: Vec<u32> = vec![1];
        for c in self.conjugates(e) {
            let mut next = vec![0u32; coeffs.len() + 1];
            for (i, &a) in coeffs.iter().enumerate() {
                next[i + 1] ^= a;
                next[i] ^= self.mul(a, c);
            }
            coeffs = next;
        }
        let mut bits = 0u64;
        for (i, &a) in coeffs.iter().enumerate() {
            debug_assert!(a <= 1, "minimal polynomial coefficient outside GF(2)");
            if a == 1 {
                bits |= 1 << i;
            }
        }
        Poly2(bits)
    }

    /// Evaluate a GF(2) polynomial at a field element.
    pub fn eval(&self, p: Poly2, at: u32) -> u32 {
        let Some(deg) = p.degree() else { return 0 };
        (0..=deg).rev().fold(0u32, |acc, i| {
            let acc = self.mul(acc, at);
            if p.coeff(i) {
                acc ^ 1
            } else {
                acc
            }
        })
    }

    /// First primitive `alpha = g^t` (increasing `t` coprime to the group order)
    /// with `log_alpha(1 + alpha) mod 3 != 2`. Defined for even degree `m = 2r`, `r >= 2`.
    pub fn find_primitive_mod3(&self) -> Result<PrimitiveChoice, FieldError> {
        if !self.degree.is_multiple_of(2) || self.degree < 4 {
            return Err(FieldError::NeedsEvenDegree(self.degree));
        }
        let n = self.order as i128;
        for t in 1..self.order {
            if t.gcd(&self.order) != 1 {
                continue;
            }
            let alpha = self.exp(t);
            let l = self.dlog(alpha ^ 1)? as i128;
            let t_inv = mod_inverse(t as i128, n).expect("t is a unit");
            let log_one_plus = (l * t_inv).rem_euclid(n) as u64;
            if log_one_plus % 3 != 2 {
                return Ok(PrimitiveChoice {
                    alpha,
                    exponent: t,
                    log_one_plus,
                });
            }
        }
        Err(FieldError::NotFound)
    }
}

fn mod_inverse(a: i128, m: i128) -> Option<i128> {
    let g = a.extended_gcd(&m);
    (g.gcd == 1).then(|| g.x.rem_euclid(m))
}

fn crt(r1: i128, m1: i128, r2: i128, m2: i128) -> (i128, i128) {
    let inv = mod_inverse(m1 % m2, m2).expect("coprime moduli");
    let t = ((r2 - r1).rem_euclid(m2) * inv).rem_euclid(m2);
    (r1 + m1 * t, m1 * m2)
}

/// Serializable field element: polynomial bit pattern plus field degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FieldElement {
    pub degree: u32,
    pub value: u32,
}

#[derive(serde::Serialize, serde::Deserialize)]
struct FieldElementRepr {
    degree: u32,
    value: String,
}

impl serde::Serialize for FieldElement {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        FieldElementRepr {
            degree: self.degree,
            value: format!("{:#x}", self.value),
        }
        .serialize(serializer)
    }
}

impl<'de> serde::Deserialize<'de> for FieldElement {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = FieldElementRepr::deserialize(deserializer)?;
        let digits = repr.value.trim_start_matches("0x").trim_start_matches("0X");
        let value = u32::from_str_radix(digits, 16).map_err(serde::de::Error::custom)?;
        Ok(FieldElement {
            degree: repr.degree,
            value,
        })
    }
}
