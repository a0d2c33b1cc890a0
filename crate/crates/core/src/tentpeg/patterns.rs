//! Cyclic forbidden-pattern templates for tent peg codes on a cycle.
//!
//! Each template is a complete-word predicate on the support `S` of a word of
//! length `n`, with all positions taken mod `n`:
//!
//! 1. `S ⊆ {i..i+3}` with `i, i+3 ∈ S`.
//! 2. `S ⊆ {i..i+4}` with `i, i+4 ∈ S` and `i+2 ∉ S`.
//! 3. `S ⊆ {i, i+1, i+2} ∪ {j, j+1, j+2}`, windows disjoint (touching allowed),
//!    with `i, i+2, j, j+2 ∈ S`.
//! 4. `S ⊆ {i, i+1, i+2} ∪ {p}`, `p` outside the window, with `i, i+2 ∈ S`.

use serde::Serialize;

use super::{CodeError, LinearCode};
use crate::f2core::F2Vector;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PatternMatch {
    pub pattern: u8,
    /// Start `i` of the (first) window.
    pub offset: usize,
    /// Second window start `j` for pattern 3, the extra position `p` for pattern 4.
    pub second: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PatternViolation {
    pub codeword: F2Vector,
    #[serde(flatten)]
    pub at: PatternMatch,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct PatternReport {
    pub violations: Vec<PatternViolation>,
    pub codewords_scanned: u64,
}

impl PatternReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Every way `word` matches a template. Pattern 3 matches are listed once per
/// unordered window pair, with `offset < second`.
pub fn match_patterns(word: &F2Vector) -> Vec<PatternMatch> {
    let n = word.len();
    let s = word.support();
    let w = s.len();
    let mut out = Vec::new();
    if w == 0 || w > 6 || n < 3 {
        return out;
    }
    let has = |p: usize| word.get(p % n);
    // dist from i going forward
    let fwd = |i: usize, p: usize| (p + n - i) % n;
    let within = |i: usize, len: usize| s.iter().all(|&p| fwd(i, p) < len);

    for &i in &s {
        if n >= 4 && has(i + 3) && within(i, 4) {
            out.push(PatternMatch {
                pattern: 1,
                offset: i,
                second: None,
            });
        }
        if n >= 5 && has(i + 4) && !has(i + 2) && within(i, 5) {
            out.push(PatternMatch {
                pattern: 2,
                offset: i,
                second: None,
            });
        }
        if has(i + 2) {
            if n >= 6 {
                for &j in s.iter().filter(|&&j| j > i) {
                    let disjoint = fwd(i, j) >= 3 && fwd(j, i) >= 3;
                    if disjoint && has(j + 2) && s.iter().all(|&p| fwd(i, p) < 3 || fwd(j, p) < 3) {
                        out.push(PatternMatch {
                            pattern: 3,
                            offset: i,
                            second: Some(j),
                        });
                    }
                }
            }
            let outside: Vec<usize> = s.iter().copied().filter(|&p| fwd(i, p) >= 3).collect();
            if n >= 4 && outside.len() <= 1 {
                out.push(PatternMatch {
                    pattern: 4,
                    offset: i,
                    second: outside.first().copied(),
                });
            }
        }
    }
    out
}

/// Every word of length `n` matching some template, without duplicates.
pub fn template_words(n: usize) -> Vec<F2Vector> {
    let mut out = std::collections::BTreeSet::new();
    let word = |ps: &[usize]| {
        let mut v = F2Vector::zeros(n);
        for &p in ps {
            v.set(p % n, true);
        }
        v
    };
    if n < 3 {
        return Vec::new();
    }
    for i in 0..n {
        for mask in 0..4usize {
            let opt = |a: usize, b: usize| [(mask & 1 == 1).then_some(a), (mask & 2 == 2).then_some(b)];
            if n >= 4 {
                let mut ps = vec![i, i + 3];
                ps.extend(opt(i + 1, i + 2).into_iter().flatten());
                out.insert(word(&ps));
            }
            if n >= 5 {
                let mut ps = vec![i, i + 4];
                ps.extend(opt(i + 1, i + 3).into_iter().flatten());
                out.insert(word(&ps));
            }
            if n >= 6 {
                for j in (i + 3)..=(i + n - 3) {
                    let mut ps = vec![i, i + 2, j, j + 2];
                    ps.extend(opt(i + 1, j + 1).into_iter().flatten());
                    out.insert(word(&ps));
                }
            }
        }
        if n >= 4 {
            for mid in [false, true] {
                let mut base = vec![i, i + 2];
                if mid {
                    base.push(i + 1);
                }
                out.insert(word(&base));
                for p in (i + 3)..(i + n) {
                    let mut ps = base.clone();
                    ps.push(p);
                    out.insert(word(&ps));
                }
            }
        }
    }
    out.into_iter().collect()
}

/// Same verdict as [`pattern_scan`] without enumerating the code: each
/// template word is tested for membership, so any `k` is fine.
pub fn pattern_scan_templates(code: &LinearCode) -> PatternReport {
    let mut report = PatternReport::default();
    for w in template_words(code.n()) {
        if code.contains(&w) {
            for at in match_patterns(&w) {
                report.violations.push(PatternViolation {
                    codeword: w.clone(),
                    at,
                });
            }
        }
    }
    report
}

/// Every codeword matching any template, over all `2^k` codewords.
pub fn pattern_scan(code: &LinearCode, max_k: usize) -> Result<PatternReport, CodeError> {
    let mut report = PatternReport::default();
    code.for_each_codeword(max_k, |c| {
        report.codewords_scanned += 1;
        for at in match_patterns(c) {
            report.violations.push(PatternViolation {
                codeword: c.clone(),
                at,
            });
        }
    })?;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tentpeg::{build_cr_default, cr_parity_matrix, log_one_plus};

    fn ids(s: &str) -> Vec<u8> {
        let mut v: Vec<u8> = match_patterns(&s.parse().unwrap()).iter().map(|m| m.pattern).collect();
        v.dedup();
        v
    }

    #[test]
    fn single_words() {
        assert_eq!(ids("0001110000"), [4]);
        assert_eq!(ids("1001000000"), [1]);
        assert_eq!(ids("1101000000"), [1, 4]);
        assert_eq!(ids("1000100000"), [2]);
        assert_eq!(ids("1010000000"), [4]);
        assert_eq!(ids("1010101000"), [3]);
        assert_eq!(ids("1010001000"), [4]);
        // wraps around the end
        assert_eq!(ids("0010000001"), [1]);
        assert_eq!(ids("0100000001"), [4]);
        assert!(ids("11111").is_empty());
        assert!(ids("1100000000").is_empty());
    }

    #[test]
    fn repetition_is_clean() {
        assert!(pattern_scan(&LinearCode::repetition(5), 24).unwrap().is_clean());
    }

    #[test]
    fn cr2_clean_over_all_codewords() {
        let r = pattern_scan(&build_cr_default(2).unwrap(), 24).unwrap();
        assert_eq!(r.codewords_scanned, 512);
        assert!(r.is_clean());
    }

    #[test]
    fn templates_enumerate_exactly_the_matching_words() {
        for n in 3..=9usize {
            let listed: std::collections::BTreeSet<F2Vector> = template_words(n).into_iter().collect();
            for bits in 1u32..1 << n {
                let v = F2Vector::from_bools((0..n).map(|i| bits >> i & 1 == 1));
                assert_eq!(listed.contains(&v), !match_patterns(&v).is_empty(), "n={n} {v}");
            }
        }
    }

    #[test]
    fn template_scan_agrees_on_small_codes() {
        for code in [
            build_cr_default(2).unwrap(),
            LinearCode::repetition(5),
            LinearCode::from_row_strings(&["1010000", "0001101"], 7).unwrap(),
        ] {
            let mut a = pattern_scan(&code, 24).unwrap().violations;
            let mut b = pattern_scan_templates(&code).violations;
            let key = |v: &PatternViolation| (v.codeword.clone(), v.at.pattern, v.at.offset, v.at.second);
            a.sort_by_key(key);
            b.sort_by_key(key);
            assert_eq!(a, b);
        }
    }

    #[test]
    fn bad_log_admits_pattern_four() {
        let f = crate::gf2m::make_field(6).unwrap();
        let mut seen_bad = false;
        for t in 1..63u64 {
            let a = f.exp(t);
            if !f.is_primitive(a) {
                continue;
            }
            let code = LinearCode::from_parity(&cr_parity_matrix(&f, a).unwrap());
            let report = pattern_scan_templates(&code);
            let bad = log_one_plus(&f, a).unwrap() % 3 == 2;
            seen_bad |= bad;
            assert_eq!(report.violations.iter().any(|v| v.at.pattern == 4), bad);
            assert!(report.violations.iter().all(|v| v.at.pattern == 4));
        }
        assert!(seen_bad);
    }
}
