//! Five vehicles at an intersection disagree about a pedestrian; the
//! two-expert rule lets the better-placed vehicles correct the others.

fn main() -> ctrust::Result<()> {
    let report = ctrust::fixture::demo_intersection(4)?;
    print!("{report}");
    Ok(())
}
