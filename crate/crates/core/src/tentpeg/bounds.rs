use super::CodeError;
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Parameters `[[n^D, k, 2D + 1]]` with `k = n^D - ⌈2D²(2D+1) log2 n⌉`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GvParameters {
    Feasible { n_total: BigInt, k: BigInt, d: u32 },
    Infeasible { n_total: BigInt, k: BigInt },
}

/// `⌈c · log2 n⌉`, exactly: the least `t` with `2^t >= n^c`.
fn ceil_log2_pow(n: u64, c: u32) -> u64 {
    let p = BigUint::from(n).pow(c);
    (p - BigUint::one()).bits()
}

pub fn gv_parameters(dim: u32, n: u64) -> Result<GvParameters, CodeError> {
    if n < 8 || dim == 0 {
        return Err(CodeError::BadField(format!(
            "needs n >= 8 and D >= 1, got n = {n}, D = {dim}"
        )));
    }
    let c = 2 * dim * dim * (2 * dim + 1);
    let n_total = BigInt::from(n).pow(dim);
    let k = &n_total - BigInt::from(ceil_log2_pow(n, c));
    Ok(if k > BigInt::zero() {
        GvParameters::Feasible {
            n_total,
            k,
            d: 2 * dim + 1,
        }
    } else {
        GvParameters::Infeasible { n_total, k }
    })
}

/// `Q = Σ_{i ≤ ⌊(d-1)/2⌋} C(n,i) 3^i / 2^{n-k}`; a pure code needs `Q <= 1`.
pub fn hamming_bound_q(n: u64, k: u64, d: u64) -> BigRational {
    assert!(d >= 1 && k <= n);
    let t = (d - 1) / 2;
    let mut term = BigInt::one();
    let mut sum = BigInt::one();
    for i in 1..=t.min(n) {
        term = term * BigInt::from(n - i + 1) * 3 / BigInt::from(i);
        sum += &term;
    }
    BigRational::new(sum, BigInt::one() << (n - k) as usize)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn hamming_values() {
        assert_eq!(hamming_bound_q(15, 9, 3), q(46, 64));
        assert_eq!(hamming_bound_q(5, 1, 3), q(1, 1));
        assert_eq!(hamming_bound_q(10, 4, 1), q(1, 64));
        // C(7,2)·9 = 189
        assert_eq!(hamming_bound_q(7, 0, 5), q(1 + 21 + 189, 128));
    }

    #[test]
    fn gv_values() {
        assert_eq!(
            gv_parameters(1, 64).unwrap(),
            GvParameters::Feasible {
                n_total: 64.into(),
                k: 28.into(),
                d: 3
            }
        );
        assert_eq!(
            gv_parameters(2, 8).unwrap(),
            GvParameters::Infeasible {
                n_total: 64.into(),
                k: (-56).into()
            }
        );
        assert_eq!(
            gv_parameters(2, 256).unwrap(),
            GvParameters::Feasible {
                n_total: 65536.into(),
                k: 65216.into(),
                d: 5
            }
        );
        // 6·log2(100) = 39.86
        assert_eq!(ceil_log2_pow(100, 6), 40);
        assert!(gv_parameters(1, 7).is_err());
    }
}
