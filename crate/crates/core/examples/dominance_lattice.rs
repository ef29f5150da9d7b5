//! Dominance order of a handful of agents: cover edges, depth ranks,
//! join/meet and the linear extensions propagation may follow.

use ctrust::{build_partial_order, linear_extensions, AutonomousSystem, DominanceRelation};

fn main() -> ctrust::Result<()> {
    let attrs = [
        [90.0, 80.0],
        [70.0, 85.0],
        [60.0, 60.0],
        [60.0, 60.0],
        [20.0, 90.0],
    ];
    let systems: Vec<AutonomousSystem> = attrs
        .iter()
        .enumerate()
        .map(|(id, a)| AutonomousSystem {
            id,
            attributes: a.to_vec().into(),
        })
        .collect();
    let po = build_partial_order(&systems)?;

    println!("cover edges (better -> worse): {:?}", po.cover_edges());
    println!("depth ranks: {:?}", po.depth_rank());
    println!(
        "join {:?}  meet {:?}",
        po.join().values(),
        po.meet().values()
    );
    println!("maximal agents: {:?}", po.maximal());
    for (a, b) in [(0, 1), (1, 4), (2, 3)] {
        let rel = po.relation(a, b);
        let word = match rel {
            DominanceRelation::StrictlyBetter => "dominates",
            DominanceRelation::StrictlyWorse => "is dominated by",
            DominanceRelation::Equal => "ties with",
            DominanceRelation::Incomparable => "is incomparable to",
        };
        println!("agent {a} {word} agent {b}");
    }
    for (i, ext) in linear_extensions(&po, 10).iter().enumerate() {
        println!("extension {i}: {:?}", ext.sequence());
    }
    Ok(())
}
