//! Recovers a logical qubit with a single controlled Pauli `U`, where `U Z_A` is
//! a graph stabilizer.

use cws_graph::cws::assemble;
use cws_graph::f2core::PauliWord;
use cws_graph::graphstate::Graph;
use cws_graph::protosim::{code_state, recover_controlled_u, Outcomes, SimOptions, StateVector};
use cws_graph::tentpeg::LinearCode;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let code = assemble(Graph::cycle(5)?, LinearCode::repetition(5))?;
    let za = PauliWord::z_string(code.generator().row(0));
    let logical = StateVector::random_seeded(1, 9);
    let encoded = code_state(&code, &logical)?;
    for t in [vec![0], vec![0, 1], vec![0, 2]] {
        let mut u = code.stabilizer_generators().product(&t);
        u.mul_assign(&za);
        let (q, tr) = recover_controlled_u(&code, &encoded, &u, &mut Outcomes::seeded(1), &SimOptions::default())?;
        println!(
            "T = {t:?}: U = {u} (weight {}), outcomes {:?}, fidelity {:.12}",
            u.weight(),
            tr.outcomes,
            q.fidelity(&logical)
        );
    }
    let s1 = code.stabilizer_generators().get(0);
    let rejected = recover_controlled_u(&code, &encoded, s1, &mut Outcomes::seeded(1), &SimOptions::default());
    println!(
        "U = {s1}: {}",
        rejected.err().map_or("accepted".into(), |e| e.to_string())
    );
    Ok(())
}
