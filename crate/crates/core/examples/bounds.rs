//! Quantum Hamming ratios for the cyclic family and lattice parameters.

use cws_graph::tentpeg::{gv_parameters, hamming_bound_q, GvParameters};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for r in 2..=8u32 {
        let n = (1u64 << (2 * r)) - 1;
        let k = n - 2 * r as u64 - 2;
        let q = hamming_bound_q(n, k, 3);
        println!("[[{n}, {k}, 3]]: Q = {q}");
    }
    for (dim, n) in [(1, 64), (1, 1024), (2, 8), (2, 1024), (3, 4096)] {
        match gv_parameters(dim, n)? {
            GvParameters::Feasible { n_total, k, d } => println!("D={dim}, n={n}: [[{n_total}, {k}, {d}]]"),
            GvParameters::Infeasible { n_total, k } => {
                println!("D={dim}, n={n}: infeasible ({n_total} qubits, k = {k})")
            }
        }
    }
    Ok(())
}
