//! Decision-diagram sizes of the group's final belief: the full tree grows
//! as 2^(n+1), the reduced diagram of an n-expert rule stays linear.

use ctrust::obdd::{build_propagated, build_unreduced, reduce};
use ctrust::{RuleSpec, TotalOrder};

fn main() -> ctrust::Result<()> {
    println!(
        "{:>3} {:>10} {:>12} {:>12} {:>12}",
        "n", "tree", "most-expert", "n-expert:2", "n-expert:3"
    );
    for n in [2, 4, 8, 12, 16, 20] {
        let order = TotalOrder::identity(n);
        let size = |rule| -> ctrust::Result<usize> {
            Ok(reduce(&build_propagated(&order, rule)?).node_count())
        };
        println!(
            "{n:>3} {:>10} {:>12} {:>12} {:>12}",
            build_unreduced(n)?.node_count(),
            size(RuleSpec::MostExpert)?,
            size(RuleSpec::NExpert(2))?,
            size(RuleSpec::NExpert(3))?,
        );
    }
    let small = reduce(&build_propagated(
        &TotalOrder::identity(4),
        RuleSpec::NExpert(2),
    )?);
    println!(
        "\nreduced n-expert:2 diagram over 4 agents:\n{}",
        small.to_dot()
    );
    Ok(())
}
