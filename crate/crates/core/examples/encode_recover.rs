//! Encodes a random logical qubit into the [[5,1,3]] cycle code and recovers it.

use cws_graph::cws::assemble;
use cws_graph::graphstate::Graph;
use cws_graph::protosim::{code_state, encode, recover, Outcomes, RecoveryRoute, SimOptions, StateVector};
use cws_graph::tentpeg::LinearCode;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let code = assemble(Graph::cycle(5)?, LinearCode::repetition(5))?;
    let logical = StateVector::random_seeded(1, 42);
    let mut outcomes = Outcomes::seeded(7);
    let (encoded, t1) = encode(&code, &logical, &mut outcomes, &SimOptions::default())?;
    println!(
        "encode outcomes {:?}, fidelity to target {:.12}",
        t1.outcomes,
        encoded.fidelity(&code_state(&code, &logical)?)
    );
    for route in [RecoveryRoute::Literal, RecoveryRoute::Projector] {
        let opts = SimOptions {
            route,
            ..Default::default()
        };
        let (recovered, _, t2) = recover(&code, &encoded, &mut outcomes, &opts)?;
        println!(
            "{route:?} recovery: outcomes {:?}, {} corrections, fidelity {:.12}",
            t2.outcomes,
            t2.corrections.len(),
            recovered.fidelity(&logical)
        );
    }
    println!("{}", serde_json::to_string_pretty(&t1)?);
    Ok(())
}
