use std::fmt;
use std::str::FromStr;

use super::{F2Error, F2Vector};

/// A Pauli operator in symplectic form `[x | z]`, phase discarded.
///
/// Coordinate `j` reads `I` for (0,0), `X` for (1,0), `Z` for (0,1) and `Y` for (1,1).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PauliWord {
    x: F2Vector,
    z: F2Vector,
}

impl PauliWord {
    pub fn identity(n: usize) -> Self {
        Self {
            x: F2Vector::zeros(n),
            z: F2Vector::zeros(n),
        }
    }

    pub fn new(x: F2Vector, z: F2Vector) -> Result<Self, F2Error> {
        if x.len() != z.len() {
            return Err(F2Error::DimensionMismatch {
                expected: x.len(),
                found: z.len(),
            });
        }
        Ok(Self { x, z })
    }

    /// `Z_c`: Z on the support of `c`.
    pub fn z_string(c: &F2Vector) -> Self {
        Self {
            x: F2Vector::zeros(c.len()),
            z: c.clone(),
        }
    }

    /// `X_c`: X on the support of `c`.
    pub fn x_string(c: &F2Vector) -> Self {
        Self {
            x: c.clone(),
            z: F2Vector::zeros(c.len()),
        }
    }

    pub fn num_qubits(&self) -> usize {
        self.x.len()
    }

    pub fn x_part(&self) -> &F2Vector {
        &self.x
    }

    pub fn z_part(&self) -> &F2Vector {
        &self.z
    }

    pub fn into_parts(self) -> (F2Vector, F2Vector) {
        (self.x, self.z)
    }

    /// Number of qubits acted on nontrivially: `|supp(x) ∪ supp(z)|`.
    pub fn weight(&self) -> usize {
        self.x
            .words()
            .iter()
            .zip(self.z.words())
            .map(|(a, b)| (a | b).count_ones() as usize)
            .sum()
    }

    pub fn is_identity(&self) -> bool {
        self.x.is_zero() && self.z.is_zero()
    }

    /// Product up to phase.
    pub fn mul(&self, other: &PauliWord) -> PauliWord {
        PauliWord {
            x: self.x.xor(&other.x),
            z: self.z.xor(&other.z),
        }
    }

    pub fn mul_assign(&mut self, other: &PauliWord) {
        self.x.xor_assign(&other.x);
        self.z.xor_assign(&other.z);
    }

    /// Symplectic form `x·z' + z·x'`; `false` means the operators commute.
    pub fn symplectic_product(&self, other: &PauliWord) -> bool {
        self.x.dot(&other.z) ^ self.z.dot(&other.x)
    }

    pub fn commutes_with(&self, other: &PauliWord) -> bool {
        !self.symplectic_product(other)
    }

    /// Number of `Y` positions, i.e. `|x ∧ z|`.
    pub fn y_count(&self) -> usize {
        self.x.and(&self.z).weight()
    }

    pub fn support(&self) -> Vec<usize> {
        self.x.or(&self.z).support()
    }

    pub fn letter(&self, j: usize) -> char {
        match (self.x.get(j), self.z.get(j)) {
            (false, false) => 'I',
            (true, false) => 'X',
            (false, true) => 'Z',
            (true, true) => 'Y',
        }
    }
}

/// Symplectic weight computed coordinate by coordinate; kept as a slow reference.
pub fn symplectic_weight_naive(p: &PauliWord) -> usize {
    (0..p.num_qubits())
        .filter(|&j| p.x_part().get(j) || p.z_part().get(j))
        .count()
}

/// Symplectic weight of `p`.
pub fn symplectic_weight(p: &PauliWord) -> usize {
    p.weight()
}

impl fmt::Display for PauliWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for j in 0..self.num_qubits() {
            write!(f, "{}", self.letter(j))?;
        }
        Ok(())
    }
}

impl fmt::Debug for PauliWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PauliWord({self})")
    }
}

impl FromStr for PauliWord {
    type Err = F2Error;

    /// Letter string such as `"XIZY"`, qubit 0 leftmost.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut xs = Vec::new();
        let mut zs = Vec::new();
        for (pos, ch) in s.trim().chars().enumerate() {
            let (x, z) = match ch.to_ascii_uppercase() {
                'I' | '_' => (false, false),
                'X' => (true, false),
                'Z' => (false, true),
                'Y' => (true, true),
                other => return Err(F2Error::Parse(format!("unexpected Pauli letter {other:?} at {pos}"))),
            };
            xs.push(x);
            zs.push(z);
        }
        Ok(PauliWord {
            x: F2Vector::from_bools(xs),
            z: F2Vector::from_bools(zs),
        })
    }
}

#[derive(serde::Serialize, serde::Deserialize)]
struct PauliWordRepr {
    x: F2Vector,
    z: F2Vector,
}

impl serde::Serialize for PauliWord {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        PauliWordRepr {
            x: self.x.clone(),
            z: self.z.clone(),
        }
        .serialize(serializer)
    }
}

impl<'de> serde::Deserialize<'de> for PauliWord {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = PauliWordRepr::deserialize(deserializer)?;
        PauliWord::new(repr.x, repr.z).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};

    fn word(x: &str, z: &str) -> PauliWord {
        PauliWord::new(x.parse().unwrap(), z.parse().unwrap()).unwrap()
    }

    #[test]
    fn weight_examples() {
        assert_eq!(symplectic_weight(&word("000", "000")), 0);
        // X1 Z2
        assert_eq!(symplectic_weight(&word("100", "010")), 2);
        assert_eq!(symplectic_weight(&word("110", "011")), 3);
    }

    #[test]
    fn letters_roundtrip() {
        let p: PauliWord = "XIZY".parse().unwrap();
        assert_eq!(p.x_part().to_string(), "1001");
        assert_eq!(p.z_part().to_string(), "0011");
        assert_eq!(p.to_string(), "XIZY");
        assert_eq!(p.y_count(), 1);
    }

    #[test]
    fn commutation() {
        let x: PauliWord = "X".parse().unwrap();
        let z: PauliWord = "Z".parse().unwrap();
        assert!(!x.commutes_with(&z));
        let xx: PauliWord = "XX".parse().unwrap();
        let zz: PauliWord = "ZZ".parse().unwrap();
        assert!(xx.commutes_with(&zz));
    }

    #[test]
    fn weight_matches_naive_on_random_words() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..10_000 {
            let n = rng.random_range(0..=64);
            let x = F2Vector::from_bools((0..n).map(|_| rng.random::<bool>()));
            let z = F2Vector::from_bools((0..n).map(|_| rng.random::<bool>()));
            let p = PauliWord::new(x, z).unwrap();
            assert_eq!(symplectic_weight(&p), symplectic_weight_naive(&p));
        }
    }

    proptest! {
        #[test]
        fn product_weight_is_subadditive(a in "[IXYZ]{1,40}", seed in any::<u64>()) {
            let p: PauliWord = a.parse().unwrap();
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let n = p.num_qubits();
            let q = PauliWord::new(
                F2Vector::from_bools((0..n).map(|_| rng.random::<bool>())),
                F2Vector::from_bools((0..n).map(|_| rng.random::<bool>())),
            ).unwrap();
            let prod = p.mul(&q);
            prop_assert!(prod.weight() <= p.weight() + q.weight());
            prop_assert_eq!(prod.weight(), symplectic_weight_naive(&prod));
        }
    }
}
