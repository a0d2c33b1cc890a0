use std::collections::HashMap;

use rayon::prelude::*;

use super::{CodeError, LinearCode};
use crate::f2core::subsets::{binomial, for_each_subset};
use crate::f2core::syndrome::{column_syndromes, Syndrome};
use crate::f2core::F2Vector;
use crate::with_syndrome_width;

pub const MAX_BRUTEFORCE_K: usize = 24;
pub const MAX_MITM_WEIGHT: usize = 8;
/// Default cap on stored half-subsets in the meet-in-the-middle table.
pub const DEFAULT_TABLE_BUDGET: u128 = 50_000_000;

/// Minimum nonzero weight by enumerating all `2^k - 1` nonzero codewords.
/// `None` for the zero code.
pub fn min_distance_bruteforce(code: &LinearCode, max_k: usize) -> Result<Option<usize>, CodeError> {
    let mut best: Option<usize> = None;
    code.for_each_codeword(max_k, |c| {
        let w = c.weight();
        if w > 0 && best.is_none_or(|b| w < b) {
            best = Some(w);
        }
    })?;
    Ok(best)
}

#[derive(Clone, Copy)]
struct Half {
    len: u8,
    el: [u16; 4],
}

impl Half {
    fn new(s: &[usize]) -> Self {
        let mut el = [0u16; 4];
        for (slot, &e) in el.iter_mut().zip(s) {
            *slot = e as u16;
        }
        Self { len: s.len() as u8, el }
    }

    fn as_slice(&self) -> &[u16] {
        &self.el[..self.len as usize]
    }
}

fn sym_diff(n: usize, a: &[u16], b: &[usize]) -> F2Vector {
    let mut v = F2Vector::zeros(n);
    for &i in a {
        v.flip(i as usize);
    }
    for &i in b {
        v.flip(i);
    }
    v
}

/// A nonzero codeword of weight `<= w_max` if one exists, else `None`, which
/// certifies `d_min > w_max`.
///
/// Column syndromes of every subset of size `<= floor(w/2)` go into a table;
/// every subset of size `<= ceil(w/2)` is then looked up. Any codeword `c` of
/// weight `<= w` splits as `A ∪ B` with matching syndromes, so either the
/// table build collides or the probe of `B` finds a different stored subset.
pub fn find_low_weight_codeword(
    code: &LinearCode,
    w_max: usize,
    table_budget: u128,
) -> Result<Option<F2Vector>, CodeError> {
    if w_max > MAX_MITM_WEIGHT {
        return Err(CodeError::WeightCapTooLarge(w_max));
    }
    let n = code.n();
    if n > u16::MAX as usize {
        return Err(CodeError::BadField(format!(
            "length {n} too large for the table search"
        )));
    }
    let lo = w_max / 2;
    let needed: u128 = (0..=lo).map(|s| binomial(n, s)).sum();
    if needed > table_budget {
        return Err(CodeError::BudgetExceeded {
            needed,
            budget: table_budget,
        });
    }
    let rows = code.parity().nrows();
    with_syndrome_width!(rows, W => mitm::<W>(code, w_max)).ok_or(CodeError::SyndromeTooWide(rows))
}

fn mitm<const W: usize>(code: &LinearCode, w_max: usize) -> Option<F2Vector> {
    let n = code.n();
    let cols: Vec<Syndrome<W>> = column_syndromes(code.parity());
    let syn = |s: &[usize]| s.iter().fold(Syndrome::<W>::ZERO, |acc, &j| acc ^ cols[j]);
    let (lo, hi) = (w_max / 2, w_max.div_ceil(2));

    let mut table: HashMap<Syndrome<W>, Half> = HashMap::new();
    let mut found = None;
    for s in 0..=lo.min(n) {
        for_each_subset(n, s, |sub| {
            let h = syn(sub);
            match table.get(&h) {
                Some(prev) => {
                    found = Some(sym_diff(n, prev.as_slice(), sub));
                    false
                }
                None => {
                    table.insert(h, Half::new(sub));
                    true
                }
            }
        });
        if found.is_some() {
            return found;
        }
    }

    for s in 1..=hi.min(n) {
        let hit = (s - 1..n).into_par_iter().find_map_first(|top| {
            let mut out = None;
            let mut full = vec![0usize; s];
            full[s - 1] = top;
            for_each_subset(top, s - 1, |rest| {
                full[..s - 1].copy_from_slice(rest);
                if let Some(a) = table.get(&syn(&full)) {
                    if a.as_slice().iter().map(|&e| e as usize).ne(full.iter().copied()) {
                        out = Some(sym_diff(n, a.as_slice(), &full));
                        return false;
                    }
                }
                true
            });
            out
        });
        if hit.is_some() {
            return hit;
        }
    }
    None
}

/// Exact minimum distance when it is at most `w_max`, found by raising the
/// weight cap one step at a time; `None` certifies `d_min > w_max`.
pub fn min_distance_upto(
    code: &LinearCode,
    w_max: usize,
    table_budget: u128,
) -> Result<Option<(usize, F2Vector)>, CodeError> {
    for w in 1..=w_max {
        if let Some(c) = find_low_weight_codeword(code, w, table_budget)? {
            return Ok(Some((c.weight(), c)));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tentpeg::{build_cr_default, build_cu_default};

    #[test]
    fn small_codes() {
        assert_eq!(
            min_distance_bruteforce(&LinearCode::repetition(5), 24).unwrap(),
            Some(5)
        );
        assert_eq!(
            min_distance_bruteforce(&build_cr_default(2).unwrap(), 24).unwrap(),
            Some(3)
        );
        assert!(min_distance_bruteforce(&build_cr_default(3).unwrap(), 24).is_err());
    }

    #[test]
    fn cr2_weight_three() {
        let c = build_cr_default(2).unwrap();
        assert_eq!(find_low_weight_codeword(&c, 2, DEFAULT_TABLE_BUDGET).unwrap(), None);
        let w = find_low_weight_codeword(&c, 3, DEFAULT_TABLE_BUDGET).unwrap().unwrap();
        assert_eq!(w.weight(), 3);
        assert!(c.contains(&w));
        assert_eq!(min_distance_upto(&c, 4, DEFAULT_TABLE_BUDGET).unwrap().unwrap().0, 3);
    }

    #[test]
    fn cu_distance_six() {
        let c = build_cu_default(1).unwrap();
        assert_eq!(find_low_weight_codeword(&c, 5, DEFAULT_TABLE_BUDGET).unwrap(), None);
        let w = find_low_weight_codeword(&c, 6, DEFAULT_TABLE_BUDGET).unwrap().unwrap();
        assert_eq!(w.weight(), 6);
        assert!(c.contains(&w));
    }

    proptest::proptest! {
        #![proptest_config(proptest::prelude::ProptestConfig::with_cases(64))]
        #[test]
        fn mitm_agrees_with_bruteforce(
            n in 4usize..14,
            seed_rows in proptest::collection::vec(proptest::collection::vec(proptest::prelude::any::<bool>(), 14), 1..6),
        ) {
            let rows: Vec<F2Vector> = seed_rows.iter().map(|r| F2Vector::from_bools(r[..n].iter().copied())).collect();
            let code = LinearCode::from_generator(&crate::f2core::F2Matrix::from_rows(rows, n).unwrap());
            let d = min_distance_bruteforce(&code, 24).unwrap();
            for w in 0..=6 {
                let got = find_low_weight_codeword(&code, w, DEFAULT_TABLE_BUDGET).unwrap();
                let expect = d.is_some_and(|d| d <= w);
                proptest::prop_assert_eq!(got.is_some(), expect);
                if let Some(c) = got {
                    proptest::prop_assert!(code.contains(&c) && !c.is_zero() && c.weight() <= w);
                }
            }
        }
    }
}
