//! Runs the mechanism on a hand-written profile and prints the pick trace.

use rrfair::{int, round_robin, Instance, Profile, Ranking, Valuation};

fn main() -> Result<(), rrfair::Error> {
    let inst = Instance::new(vec![
        Valuation::additive(vec![int(6), int(3), int(3), int(1)])?,
        Valuation::unit_demand(vec![int(5), int(4), int(1), int(2)])?,
    ])?;
    // Agent 1 reports honestly, agent 2 hides its interest in g1.
    let profile = Profile::new(vec![
        Ranking::from_indices(&[0, 1, 2, 3])?,
        Ranking::from_indices(&[1, 3, 0, 2])?,
    ])?;

    let (alloc, trace) = round_robin(&inst, &profile)?;
    for step in trace.steps() {
        println!(
            "round {} agent {} takes {}",
            step.round,
            step.agent + 1,
            step.good
        );
    }
    for (i, b) in alloc.bundles().iter().enumerate() {
        println!("A{} = {b}  worth {}", i + 1, inst.valuation(i).value(*b)?);
    }
    Ok(())
}
