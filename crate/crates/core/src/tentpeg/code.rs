use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use super::CodeError;
use crate::f2core::{F2Matrix, F2Vector};
use crate::gf2m::FieldElement;

/// Where a code came from, kept so reports can regenerate it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CodeOrigin {
    Generic,
    CyclicCr { r: u32, alpha: FieldElement },
    TwodimCu { r: u32, alpha: FieldElement },
}

/// Binary linear `[n, k]` code.
///
/// The parity-check matrix is always held in reduced row echelon form with
/// full row rank. The generator is the echelon basis of the code and is only
/// materialised on first use, since codes like the two-dimensional cyclic
/// ones have a parity check far smaller than their generator.
#[derive(Clone, Debug)]
pub struct LinearCode {
    n: usize,
    k: usize,
    parity: F2Matrix,
    generator: OnceLock<F2Matrix>,
    origin: CodeOrigin,
}

/// JSON file form of a code.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeSpec {
    pub n: usize,
    pub rows: Vec<String>,
    pub kind: MatrixKind,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MatrixKind {
    Generator,
    Parity,
}

fn echelon(m: &F2Matrix) -> F2Matrix {
    F2Matrix::from_rows(m.rref().rows, m.ncols()).expect("rref keeps the column count")
}

impl LinearCode {
    /// Code spanned by the rows of `g`; dependent rows are allowed.
    pub fn from_generator(g: &F2Matrix) -> Self {
        let generator = echelon(g);
        let parity = echelon(&generator.nullspace());
        let k = generator.nrows();
        Self {
            n: g.ncols(),
            k,
            parity,
            generator: OnceLock::from(generator),
            origin: CodeOrigin::Generic,
        }
    }

    /// Code `{c : H c = 0}`; dependent rows are allowed.
    pub fn from_parity(h: &F2Matrix) -> Self {
        let parity = echelon(h);
        Self {
            n: h.ncols(),
            k: h.ncols() - parity.nrows(),
            parity,
            generator: OnceLock::new(),
            origin: CodeOrigin::Generic,
        }
    }

    pub fn with_origin(mut self, origin: CodeOrigin) -> Self {
        self.origin = origin;
        self
    }

    pub fn repetition(n: usize) -> Self {
        Self::from_generator(
            &F2Matrix::from_rows(vec![F2Vector::from_support(n, &(0..n).collect::<Vec<_>>())], n).unwrap(),
        )
    }

    /// Code spanned by 0/1 row strings.
    pub fn from_row_strings<S: AsRef<str>>(rows: &[S], n: usize) -> Result<Self, CodeError> {
        Ok(Self::from_generator(&parse_rows(rows, n)?))
    }

    pub fn from_spec(spec: &CodeSpec) -> Result<Self, CodeError> {
        let m = parse_rows(&spec.rows, spec.n)?;
        Ok(match spec.kind {
            MatrixKind::Generator => Self::from_generator(&m),
            MatrixKind::Parity => Self::from_parity(&m),
        })
    }

    pub fn to_spec(&self, kind: MatrixKind) -> CodeSpec {
        let m = match kind {
            MatrixKind::Generator => self.generator(),
            MatrixKind::Parity => self.parity(),
        };
        CodeSpec {
            n: self.n,
            rows: m.rows().iter().map(|r| r.to_string()).collect(),
            kind,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn origin(&self) -> &CodeOrigin {
        &self.origin
    }

    /// Full-rank parity-check matrix in reduced echelon form.
    pub fn parity(&self) -> &F2Matrix {
        &self.parity
    }

    /// Full-rank generator matrix in reduced echelon form.
    pub fn generator(&self) -> &F2Matrix {
        self.generator.get_or_init(|| echelon(&self.parity.nullspace()))
    }

    pub fn syndrome(&self, v: &F2Vector) -> F2Vector {
        self.parity.mul_vec(v)
    }

    pub fn contains(&self, v: &F2Vector) -> bool {
        v.len() == self.n && self.syndrome(v).is_zero()
    }

    /// Visits every codeword (zero first) in Gray-code order. `k` must not exceed `max_k`.
    pub fn for_each_codeword(&self, max_k: usize, mut f: impl FnMut(&F2Vector)) -> Result<(), CodeError> {
        if self.k > max_k {
            return Err(CodeError::BudgetExceeded {
                needed: 1u128.checked_shl(self.k as u32).unwrap_or(u128::MAX),
                budget: 1u128 << max_k,
            });
        }
        let g = self.generator();
        let mut c = F2Vector::zeros(self.n);
        f(&c);
        for i in 1u64..(1u64 << self.k) {
            c.xor_assign(g.row(i.trailing_zeros() as usize));
            f(&c);
        }
        Ok(())
    }
}

fn parse_rows<S: AsRef<str>>(rows: &[S], n: usize) -> Result<F2Matrix, CodeError> {
    let rows = rows
        .iter()
        .map(|s| s.as_ref().trim().parse::<F2Vector>())
        .collect::<Result<Vec<_>, _>>()?;
    Ok(F2Matrix::from_rows(rows, n)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn repetition_code() {
        let c = LinearCode::repetition(5);
        assert_eq!((c.n(), c.k(), c.parity().nrows()), (5, 1, 4));
        assert!(c.contains(&"11111".parse().unwrap()));
        assert!(!c.contains(&"11000".parse().unwrap()));
        assert!(c
            .generator()
            .mul_transpose(c.parity())
            .rows()
            .iter()
            .all(F2Vector::is_zero));
    }

    #[test]
    fn spec_roundtrip() {
        let c = LinearCode::from_row_strings(&["110", "110"], 3).unwrap();
        assert_eq!(c.k(), 1);
        for kind in [MatrixKind::Generator, MatrixKind::Parity] {
            let spec = c.to_spec(kind);
            let json = serde_json::to_string(&spec).unwrap();
            let back = LinearCode::from_spec(&serde_json::from_str(&json).unwrap()).unwrap();
            assert_eq!(back.generator(), c.generator());
        }
    }

    #[test]
    fn codeword_enumeration_counts() {
        let c = LinearCode::from_row_strings(&["1100", "0110"], 4).unwrap();
        let mut seen = std::collections::HashSet::new();
        c.for_each_codeword(24, |w| {
            assert!(c.contains(w));
            seen.insert(w.clone());
        })
        .unwrap();
        assert_eq!(seen.len(), 4);
    }
}
