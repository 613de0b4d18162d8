//! Builds the bluff profile of a generated instance and measures how close
//! it is to an equilibrium.
//!
//! For cancelable agents the factor is exactly 1; for submodular agents it
//! is at least 1/2.

use rrfair::instances::generate::{generate, GeneratorClass, GeneratorSpec};
use rrfair::{bluff_order, bluff_profile, pad_to_multiple, pne_factor};

fn main() -> Result<(), rrfair::Error> {
    for class in [GeneratorClass::BudgetAdditive, GeneratorClass::Oxs] {
        let inst = generate(&GeneratorSpec::new(class, 3, 6, 42))?;
        let (padded, _) = pad_to_multiple(&inst)?;
        let order = bluff_order(&padded);
        println!("{class}: bluff order {}", order.order);
        for agent in 0..padded.agents() {
            let picks: Vec<String> = order.picks(agent).iter().map(|g| g.to_string()).collect();
            println!("  agent {} picks {}", agent + 1, picks.join(", "));
        }
        let eq = pne_factor(&padded, &bluff_profile(&padded))?;
        println!("  pne factor {}", eq.pne_factor);
    }
    Ok(())
}
