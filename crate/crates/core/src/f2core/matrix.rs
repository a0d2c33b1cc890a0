use std::fmt;
use std::str::FromStr;

use super::{F2Error, F2Vector};

/// Dense row-major matrix over GF(2); every row is an [`F2Vector`] of length `ncols`.
///
/// Matrices with zero rows or zero columns are legal and have rank 0.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct F2Matrix {
    rows: Vec<F2Vector>,
    ncols: usize,
}

/// Reduced row echelon form: nonzero rows only, with `pivots[i]` the leading
/// column of `rows[i]`. Pivots are strictly increasing.
#[derive(Clone, Debug)]
pub struct Rref {
    pub rows: Vec<F2Vector>,
    pub pivots: Vec<usize>,
}

/// Column permutation stored as `new_to_old[c]` = original index of new column `c`.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct ColumnPermutation {
    pub new_to_old: Vec<usize>,
}

impl ColumnPermutation {
    pub fn identity(n: usize) -> Self {
        Self {
            new_to_old: (0..n).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.new_to_old.len()
    }

    pub fn is_empty(&self) -> bool {
        self.new_to_old.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.new_to_old.iter().enumerate().all(|(i, &j)| i == j)
    }

    pub fn inverse(&self) -> Self {
        let mut old_to_new = vec![0; self.len()];
        for (new, &old) in self.new_to_old.iter().enumerate() {
            old_to_new[old] = new;
        }
        Self { new_to_old: old_to_new }
    }

    /// Reindex a vector from original coordinates into permuted ones.
    pub fn apply(&self, v: &F2Vector) -> F2Vector {
        v.gather(&self.new_to_old)
    }

    /// Map a vector in permuted coordinates back to original ones.
    pub fn unapply(&self, v: &F2Vector) -> F2Vector {
        v.gather(&self.inverse().new_to_old)
    }
}

impl F2Matrix {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        Self {
            rows: vec![F2Vector::zeros(ncols); nrows],
            ncols,
        }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            rows: (0..n).map(|i| F2Vector::unit(n, i)).collect(),
            ncols: n,
        }
    }

    /// An empty matrix with the given column count.
    pub fn empty(ncols: usize) -> Self {
        Self {
            rows: Vec::new(),
            ncols,
        }
    }

    pub fn from_rows(rows: Vec<F2Vector>, ncols: usize) -> Result<Self, F2Error> {
        if let Some(bad) = rows.iter().find(|r| r.len() != ncols) {
            return Err(F2Error::DimensionMismatch {
                expected: ncols,
                found: bad.len(),
            });
        }
        Ok(Self { rows, ncols })
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rows(&self) -> &[F2Vector] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &F2Vector {
        &self.rows[i]
    }

    pub fn into_rows(self) -> Vec<F2Vector> {
        self.rows
    }

    pub fn push_row(&mut self, row: F2Vector) -> Result<(), F2Error> {
        if row.len() != self.ncols {
            return Err(F2Error::DimensionMismatch {
                expected: self.ncols,
                found: row.len(),
            });
        }
        self.rows.push(row);
        Ok(())
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.rows[r].get(c)
    }

    pub fn transpose(&self) -> F2Matrix {
        let mut out = F2Matrix::zeros(self.ncols, self.nrows());
        for (r, row) in self.rows.iter().enumerate() {
            for c in row.iter_ones() {
                out.rows[c].set(r, true);
            }
        }
        out
    }

    /// `M · v` as a column vector of length `nrows`.
    pub fn mul_vec(&self, v: &F2Vector) -> F2Vector {
        F2Vector::from_bools(self.rows.iter().map(|row| row.dot(v)))
    }

    /// `self · otherᵀ`.
    pub fn mul_transpose(&self, other: &F2Matrix) -> F2Matrix {
        let rows = self
            .rows
            .iter()
            .map(|a| F2Vector::from_bools(other.rows.iter().map(|b| a.dot(b))))
            .collect();
        F2Matrix {
            rows,
            ncols: other.nrows(),
        }
    }

    /// `xᵀ · M`: XOR of the rows selected by `x`.
    pub fn combine_rows(&self, x: &F2Vector) -> F2Vector {
        assert_eq!(x.len(), self.nrows());
        let mut acc = F2Vector::zeros(self.ncols);
        for i in x.iter_ones() {
            acc.xor_assign(&self.rows[i]);
        }
        acc
    }

    pub fn select_columns(&self, perm: &ColumnPermutation) -> F2Matrix {
        F2Matrix {
            rows: self.rows.iter().map(|r| perm.apply(r)).collect(),
            ncols: perm.len(),
        }
    }

    /// Gauss-Jordan elimination on a private copy. Pivots are taken at the
    /// lowest-index nonzero column, top-most candidate row first.
    pub fn rref(&self) -> Rref {
        let mut rows = self.rows.clone();
        let mut pivots = Vec::new();
        let mut next = 0;
        for col in 0..self.ncols {
            if next == rows.len() {
                break;
            }
            let Some(found) = (next..rows.len()).find(|&r| rows[r].get(col)) else {
                continue;
            };
            rows.swap(next, found);
            let pivot_row = rows[next].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r != next && row.get(col) {
                    row.xor_assign(&pivot_row);
                }
            }
            pivots.push(col);
            next += 1;
        }
        rows.truncate(next);
        Rref { rows, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    /// Basis of `{v : M·v = 0}`, one vector per free column in ascending order.
    pub fn nullspace(&self) -> F2Matrix {
        let Rref { rows, pivots } = self.rref();
        let mut is_pivot = vec![false; self.ncols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let basis = (0..self.ncols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = F2Vector::unit(self.ncols, free);
                for (row, &p) in rows.iter().zip(&pivots) {
                    if row.get(free) {
                        v.set(p, true);
                    }
                }
                v
            })
            .collect();
        F2Matrix {
            rows: basis,
            ncols: self.ncols,
        }
    }

    /// Row-reduce to `[I | B]` after a column permutation that moves the
    /// pivot columns (ascending) to the front and keeps the rest in order.
    pub fn systematic_form(&self) -> Result<(F2Matrix, ColumnPermutation), F2Error> {
        let rref = self.rref();
        if rref.pivots.len() != self.nrows() {
            return Err(F2Error::RankDeficient {
                rows: self.nrows(),
                rank: rref.pivots.len(),
            });
        }
        let mut is_pivot = vec![false; self.ncols];
        for &p in &rref.pivots {
            is_pivot[p] = true;
        }
        let mut new_to_old = rref.pivots.clone();
        new_to_old.extend((0..self.ncols).filter(|&c| !is_pivot[c]));
        let perm = ColumnPermutation { new_to_old };
        let reduced = F2Matrix {
            rows: rref.rows,
            ncols: self.ncols,
        };
        Ok((reduced.select_columns(&perm), perm))
    }

    /// Whether `v` lies in the row space.
    pub fn row_space_contains(&self, v: &F2Vector) -> bool {
        let Rref { rows, pivots } = self.rref();
        let mut v = v.clone();
        for (row, &p) in rows.iter().zip(&pivots) {
            if v.get(p) {
                v.xor_assign(row);
            }
        }
        v.is_zero()
    }

    /// Row spaces coincide (same column count required).
    pub fn same_row_space(&self, other: &F2Matrix) -> bool {
        self.ncols == other.ncols && self.rref().rows == other.rref().rows
    }
}

impl fmt::Display for F2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.rows.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{row}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for F2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "F2Matrix {}x{} [", self.nrows(), self.ncols)?;
        for row in &self.rows {
            writeln!(f, "  {row}")?;
        }
        write!(f, "]")
    }
}

impl FromStr for F2Matrix {
    type Err = F2Error;

    /// One row per nonblank line.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let rows: Vec<F2Vector> = s
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty())
            .map(str::parse)
            .collect::<Result<_, _>>()?;
        let ncols = rows.first().map_or(0, F2Vector::len);
        F2Matrix::from_rows(rows, ncols)
    }
}
