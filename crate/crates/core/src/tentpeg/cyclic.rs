use super::{CodeError, CodeOrigin, LinearCode};
use crate::f2core::{F2Matrix, F2Vector};
use crate::gf2m::{make_field, Gf2m};

/// Binary expansion of a row of field elements: one binary row per bit of the field.
fn expand_rows(field: &Gf2m, values: &[u32], out: &mut Vec<F2Vector>) {
    for bit in 0..field.degree() {
        out.push(F2Vector::from_bools(values.iter().map(|&v| v >> bit & 1 == 1)));
    }
}

/// `log_alpha(1 + alpha)` for a primitive `alpha`.
pub fn log_one_plus(field: &Gf2m, alpha: u32) -> Result<u64, CodeError> {
    Ok(field.dlog_base(alpha ^ 1, alpha)?)
}

/// Parity check over GF(2^{2r}) with rows `alpha^j` and `alpha^{bj}`, `b = (2^{2r}-1)/3`,
/// expanded to binary and reduced. No hypothesis on `alpha` beyond primitivity.
pub fn cr_parity_matrix(field: &Gf2m, alpha: u32) -> Result<F2Matrix, CodeError> {
    let m = field.degree();
    if !m.is_multiple_of(2) || m < 4 {
        return Err(CodeError::BadField(format!("GF(2^{m}) is not GF(2^(2r)) with r >= 2")));
    }
    if !field.is_primitive(alpha) {
        return Err(CodeError::BadAlpha(format!("{alpha:#x} is not primitive")));
    }
    let n = field.order() as usize;
    let ab = field.pow(alpha, field.order() / 3);
    let mut row_a = Vec::with_capacity(n);
    let mut row_b = Vec::with_capacity(n);
    let (mut pa, mut pb) = (1u32, 1u32);
    for _ in 0..n {
        row_a.push(pa);
        row_b.push(pb);
        pa = field.mul(pa, alpha);
        pb = field.mul(pb, ab);
    }
    let mut rows = Vec::with_capacity(2 * m as usize);
    expand_rows(field, &row_a, &mut rows);
    expand_rows(field, &row_b, &mut rows);
    Ok(F2Matrix::from_rows(rows, n)?)
}

/// The cyclic code of length `2^{2r} - 1` and dimension `2^{2r} - 2r - 3`.
/// `alpha` must be primitive with `log_alpha(1 + alpha) ≢ 2 (mod 3)`.
pub fn build_cr(field: &Gf2m, alpha: u32) -> Result<LinearCode, CodeError> {
    let h = cr_parity_matrix(field, alpha)?;
    let l = log_one_plus(field, alpha)?;
    if l % 3 == 2 {
        return Err(CodeError::BadAlpha(format!("log_alpha(1 + alpha) = {l} is 2 mod 3")));
    }
    let r = field.degree() / 2;
    let code = LinearCode::from_parity(&h);
    let expected = h.ncols() - 2 * r as usize - 2;
    if code.k() != expected {
        return Err(CodeError::DimensionMismatch {
            expected,
            found: code.k(),
        });
    }
    Ok(code.with_origin(CodeOrigin::CyclicCr {
        r,
        alpha: field.element(alpha)?,
    }))
}

/// [`build_cr`] over the default field with the first admissible primitive element.
pub fn build_cr_default(r: u32) -> Result<LinearCode, CodeError> {
    if r < 2 {
        return Err(CodeError::BadField(format!("r = {r} is below 2")));
    }
    let field = make_field(2 * r)?;
    let choice = field.find_primitive_mod3()?;
    build_cr(&field, choice.alpha)
}

/// Exponent pairs `(a, c)` standing for the evaluation points `(alpha^a, alpha^c)`
/// that define the two-dimensional code, given `n = 2^{4r} - 1`.
pub fn cu_exponent_pairs(n: u64) -> [(u64, u64); 11] {
    [
        (0, 0),
        (1, 1),
        (1, n - 1),
        (1, 0),
        (3, 0),
        (0, 1),
        (0, 3),
        (0, n / 3),
        (n / 5, 2 * n / 5),
        (1, 2),
        (3, n - 3),
    ]
}

/// Two-dimensional cyclic code of length `n^2`, `n = 2^{4r} - 1`: all `f(x, y)`
/// vanishing on the points of [`cu_exponent_pairs`]. Coordinate `(i, j)` holds the
/// coefficient of `x^i y^j` and sits at index `i * n + j`.
pub fn build_cu(field: &Gf2m, alpha: u32) -> Result<LinearCode, CodeError> {
    let m = field.degree();
    if !m.is_multiple_of(4) {
        return Err(CodeError::BadField(format!("GF(2^{m}) is not GF(2^(4r))")));
    }
    if !field.is_primitive(alpha) {
        return Err(CodeError::BadAlpha(format!("{alpha:#x} is not primitive")));
    }
    let r = m / 4;
    let n = field.order();
    let powers: Vec<u32> = {
        let mut v = Vec::with_capacity(n as usize);
        let mut p = 1u32;
        for _ in 0..n {
            v.push(p);
            p = field.mul(p, alpha);
        }
        v
    };
    let len = (n * n) as usize;
    let mut rows = Vec::with_capacity(11 * m as usize);
    let mut values = vec![0u32; len];
    for (a, c) in cu_exponent_pairs(n) {
        for i in 0..n {
            for j in 0..n {
                values[(i * n + j) as usize] = powers[((a * i + c * j) % n) as usize];
            }
        }
        expand_rows(field, &values, &mut rows);
    }
    let code = LinearCode::from_parity(&F2Matrix::from_rows(rows, len)?);
    let expected = len - 32 * r as usize - 7;
    if code.k() != expected {
        return Err(CodeError::DimensionMismatch {
            expected,
            found: code.k(),
        });
    }
    Ok(code.with_origin(CodeOrigin::TwodimCu {
        r,
        alpha: field.element(alpha)?,
    }))
}

/// [`build_cu`] over the default field with the table generator as `alpha`.
pub fn build_cu_default(r: u32) -> Result<LinearCode, CodeError> {
    if r < 1 {
        return Err(CodeError::BadField("r must be at least 1".into()));
    }
    let field = make_field(4 * r)?;
    build_cu(&field, field.generator())
}

/// Codeword vector of a bivariate polynomial given as `(i, j)` exponent pairs.
pub fn bivariate_word(n: usize, monomials: &[(usize, usize)]) -> F2Vector {
    let mut v = F2Vector::zeros(n * n);
    for &(i, j) in monomials {
        v.flip((i % n) * n + j % n);
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cr_dimensions() {
        for (r, n, k) in [(2u32, 15usize, 9usize), (3, 63, 55), (4, 255, 245)] {
            let c = build_cr_default(r).unwrap();
            assert_eq!((c.n(), c.k()), (n, k));
            for row in c.generator().rows() {
                assert!(c.parity().mul_vec(row).is_zero());
            }
        }
    }

    #[test]
    fn cr_weight_three_word() {
        let c = build_cr_default(2).unwrap();
        assert!(c.contains(&F2Vector::from_support(15, &[0, 5, 10])));
    }

    #[test]
    fn cr_rejects_bad_log() {
        let f = make_field(6).unwrap();
        let bad = (1..63u64)
            .map(|t| f.exp(t))
            .find(|&a| f.is_primitive(a) && log_one_plus(&f, a).unwrap() % 3 == 2)
            .unwrap();
        assert!(matches!(build_cr(&f, bad), Err(CodeError::BadAlpha(_))));
    }

    #[test]
    fn cu_r1() {
        let c = build_cu_default(1).unwrap();
        assert_eq!((c.n(), c.k()), (225, 186));
        let f = bivariate_word(15, &[(0, 0), (1, 0), (4, 0), (5, 0), (6, 0), (9, 0)]);
        assert!(c.contains(&f));
        // even weight: (1, 1) is one of the evaluation points
        assert!(c.generator().rows().iter().all(|r| r.weight() % 2 == 0));
    }

    #[test]
    fn cu_classes_disjoint_with_expected_sizes() {
        for r in 1..=2u32 {
            let f = make_field(4 * r).unwrap();
            let n = f.order();
            let a = f.generator();
            let mut all = std::collections::HashSet::new();
            let mut sizes = Vec::new();
            for (x, y) in cu_exponent_pairs(n) {
                let class = f.conjugacy_class((f.pow(a, x), f.pow(a, y)));
                sizes.push(class.len());
                for p in class {
                    assert!(all.insert(p), "classes overlap");
                }
            }
            let q = 4 * r as usize;
            assert_eq!(sizes, [1, q, q, q, q, q, q, 2, 4, q, q]);
        }
    }
}
