//! Round-trips an instance through its JSON document form.

use rrfair::instances::document::{load, save};
use rrfair::instances::generate::{generate, GeneratorClass, GeneratorSpec};

fn main() -> Result<(), rrfair::Error> {
    let inst = generate(&GeneratorSpec::new(GeneratorClass::Oxs, 2, 3, 9))?;
    let text = save(&inst, Some("two OXS agents over three goods"));
    println!("{text}");
    let back = load(&text)?;
    assert_eq!(back, inst);
    println!("reloaded: {} agents, {} goods", back.agents(), back.goods());
    Ok(())
}
