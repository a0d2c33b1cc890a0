//! Uniformity of small graphs and periodic lattices.

use cws_graph::graphstate::{uniformity, Graph};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let graphs = [
        ("K3", Graph::complete(3), 3),
        ("C5", Graph::cycle(5)?, 4),
        ("L15", Graph::lattice(&[15])?, 4),
        ("L5x5", Graph::lattice(&[5, 5])?, 5),
        ("L8x8", Graph::lattice(&[8, 8])?, 5),
        ("L5x5x5", Graph::lattice(&[5, 5, 5])?, 3),
    ];
    for (name, g, cap) in graphs {
        let report = uniformity(&g, cap, 1_000_000_000)?;
        println!(
            "{name}: {:?}, lightest stabilizer weight {:?} from generators {:?}",
            report.uniformity, report.min_weight, report.witness
        );
    }
    Ok(())
}
