//! Exact best response against a greedy one on an instance where they differ.

use rrfair::instances::fixtures::Fixture;
use rrfair::{best_response, greedy_response, pad_to_multiple, round_robin, truthful_profile};

fn main() -> Result<(), rrfair::Error> {
    let inst = Fixture::named("bluff-tightness")?.build()?;
    let (padded, _) = pad_to_multiple(&inst)?;
    let others = truthful_profile(&padded);
    let agent = 1;

    let exact = best_response(&padded, agent, &others)?;
    println!(
        "exact:  {} -> {} worth {} ({} states)",
        exact.ranking, exact.bundle, exact.value, exact.explored_states
    );

    let greedy = greedy_response(&padded, agent, &others)?;
    let (alloc, _) = round_robin(&padded, &others.with_ranking(agent, greedy.clone()))?;
    let value = padded.valuation(agent).value(alloc.bundle(agent))?;
    println!("greedy: {greedy} -> {} worth {value}", alloc.bundle(agent));
    Ok(())
}
