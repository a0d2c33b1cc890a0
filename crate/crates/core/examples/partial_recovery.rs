//! Sequential encoding of two logical qubits, then recovery of one of them.

use cws_graph::cws::assemble;
use cws_graph::graphstate::Graph;
use cws_graph::protosim::{
    encode, encode_sequential, partial_recover, subcode_state, Outcomes, SimOptions, StateVector,
};
use cws_graph::tentpeg::LinearCode;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let code = assemble(
        Graph::cycle(6)?,
        LinearCode::from_row_strings(&["110110", "011011"], 6)?,
    )?;
    let opts = SimOptions::default();
    let (q0, q1) = (StateVector::random_seeded(1, 1), StateVector::random_seeded(1, 2));
    let logical = StateVector::kron(&q1, &q0);

    let (joint, _) = encode(&code, &logical, &mut Outcomes::seeded(3), &opts)?;
    let (seq, t) = encode_sequential(&code, &logical, 1, &mut Outcomes::seeded(4), &opts)?;
    println!(
        "sequential vs joint encoding: fidelity {:.12}, outcomes {:?}",
        seq.fidelity(&joint),
        t.outcomes
    );

    let (qubit, residual, t) = partial_recover(&code, &joint, 1, &mut Outcomes::seeded(5), &opts)?;
    let f = subcode_state(&code, &[0], &q0)?;
    println!(
        "recovered qubit fidelity {:.12}, residual fidelity {:.12}, outcome {:?}",
        qubit.fidelity(&q1),
        residual.fidelity(&f),
        t.outcomes
    );
    Ok(())
}
