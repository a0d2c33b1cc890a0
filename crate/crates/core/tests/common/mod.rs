//! Naive reference implementations shared by the integration tests.
#![allow(dead_code)]

use std::collections::HashSet;

use cws_graph::cws::{assemble, verify_distance, CwsCode, Verdict, VerifyOptions};
use cws_graph::f2core::{F2Vector, PauliWord};
use cws_graph::graphstate::Graph;
use cws_graph::tentpeg::LinearCode;
use rand::Rng;

/// A random graph on `n` vertices with its neighbourhoods as bitmasks, plus
/// generator rows as bitmasks.
pub struct Instance {
    pub n: usize,
    pub neighbours: Vec<u32>,
    pub rows: Vec<u32>,
    pub code: CwsCode,
}

pub fn random_instance(rng: &mut impl Rng, max_n: usize, max_k: usize) -> Instance {
    let n = rng.random_range(2..=max_n);
    let mut edges = Vec::new();
    let mut neighbours = vec![0u32; n];
    for a in 0..n {
        for b in a + 1..n {
            if rng.random_bool(0.5) {
                edges.push((a, b));
                neighbours[a] |= 1 << b;
                neighbours[b] |= 1 << a;
            }
        }
    }
    let k = rng.random_range(1..=max_k.min(n));
    let rows: Vec<u32> = (0..k).map(|_| rng.random_range(1..1u32 << n)).collect();
    let strings: Vec<String> = rows
        .iter()
        .map(|r| (0..n).map(|i| if r >> i & 1 == 1 { '1' } else { '0' }).collect())
        .collect();
    let graph = Graph::from_edges(n, &edges).unwrap();
    let code = assemble(graph, LinearCode::from_row_strings(&strings, n).unwrap()).unwrap();
    Instance {
        n,
        neighbours,
        rows,
        code,
    }
}

/// `W = { S_T Z_c }` as `(x, z)` masks, from the definitions: `S_i = X_i Z_{N(i)}`,
/// every subset `T`, every codeword `c` in the span of the rows.
pub fn naive_w(n: usize, neighbours: &[u32], rows: &[u32]) -> HashSet<(u32, u32)> {
    let mut span = HashSet::new();
    for mask in 0..1u32 << rows.len() {
        span.insert(
            rows.iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .fold(0, |c, (_, r)| c ^ r),
        );
    }
    let mut w = HashSet::new();
    for t in 0..1u32 << n {
        let z = (0..n).filter(|i| t >> i & 1 == 1).fold(0, |z, i| z ^ neighbours[i]);
        for c in &span {
            w.insert((t, z ^ c));
        }
    }
    w
}

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// All nonidentity Pauli words of weight `<= m` on `n` qubits, sorted by weight,
/// then colex rank of the support, then letters (0 = X, 1 = Y, 2 = Z) read
/// with the lowest position as the least significant base-3 digit.
pub fn ordered_words(n: usize, m: usize) -> Vec<(u32, u32)> {
    let mut keyed = Vec::new();
    for x in 0..1u32 << n {
        for z in 0..1u32 << n {
            let support = x | z;
            let w = support.count_ones() as usize;
            if w == 0 || w > m {
                continue;
            }
            let positions: Vec<u64> = (0..n as u64).filter(|&p| support >> p & 1 == 1).collect();
            let colex: u64 = positions
                .iter()
                .enumerate()
                .map(|(i, &p)| binomial(p, i as u64 + 1))
                .sum();
            let odometer: u64 = positions
                .iter()
                .enumerate()
                .map(|(i, &p)| {
                    let letter = match (x >> p & 1, z >> p & 1) {
                        (1, 0) => 0,
                        (1, 1) => 1,
                        _ => 2,
                    };
                    letter * 3u64.pow(i as u32)
                })
                .sum();
            keyed.push(((w, colex, odometer), (x, z)));
        }
    }
    keyed.sort();
    keyed.into_iter().map(|(_, e)| e).collect()
}

pub fn mask_vec(n: usize, m: u32) -> F2Vector {
    F2Vector::from_support(n, &(0..n).filter(|i| m >> i & 1 == 1).collect::<Vec<_>>())
}

pub fn pauli(n: usize, x: u32, z: u32) -> PauliWord {
    PauliWord::new(mask_vec(n, x), mask_vec(n, z)).unwrap()
}

/// Checks the fast verifier against full enumeration for one instance and
/// every `m <= 3`: verdict, witness and scan count.
pub fn check_instance(inst: &Instance) -> Result<(), String> {
    let w = naive_w(inst.n, &inst.neighbours, &inst.rows);
    for m in 1..=3.min(inst.n) {
        let words = ordered_words(inst.n, m);
        let naive = words.iter().position(|e| w.contains(e));
        let cert = verify_distance(&inst.code, m, &VerifyOptions::default()).map_err(|e| e.to_string())?;
        match (naive, &cert.verdict) {
            (None, Verdict::Pass) => {
                if cert.errors_scanned != words.len() as u128 {
                    return Err(format!("m={m}: scanned {} of {}", cert.errors_scanned, words.len()));
                }
            }
            (Some(i), Verdict::Violation { witness, codeword }) => {
                let (x, z) = words[i];
                if *witness != pauli(inst.n, x, z) {
                    return Err(format!(
                        "m={m}: witness {witness} but naive first is {}",
                        pauli(inst.n, x, z)
                    ));
                }
                if cert.errors_scanned != i as u128 + 1 {
                    return Err(format!(
                        "m={m}: scanned {} but naive index {}",
                        cert.errors_scanned,
                        i + 1
                    ));
                }
                if !inst.code.tentpeg().contains(codeword) {
                    return Err(format!("m={m}: reported codeword {codeword} not in the code"));
                }
            }
            (naive, verdict) => return Err(format!("m={m}: naive {naive:?} vs {verdict:?}")),
        }
    }
    for x in 0..1u32 << inst.n {
        for z in [0, x, !x & ((1 << inst.n) - 1), 0b1011 & ((1 << inst.n) - 1)] {
            if inst.code.in_w(&pauli(inst.n, x, z)) != w.contains(&(x, z)) {
                return Err(format!("membership differs at x={x:b} z={z:b}"));
            }
        }
    }
    Ok(())
}
