//! Checks the EF1 guarantee that applies to each certified instance against
//! random profiles, and reports the tightest slack seen.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rrfair::equilibria::ProfileSpace;
use rrfair::instances::generate::{generate, GeneratorClass, GeneratorSpec};
use rrfair::{BoundVerifier, ScanMode};

fn main() -> Result<(), rrfair::Error> {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for (class, agents) in [
        (GeneratorClass::Additive, 2),
        (GeneratorClass::Oxs, 2),
        (GeneratorClass::UnitDemand, 3),
        (GeneratorClass::SubmodularTable, 3),
    ] {
        let spec = GeneratorSpec::new(class, agents, 6, rand::Rng::gen(&mut rng));
        let inst = generate(&spec)?;
        let verifier = BoundVerifier::new(&inst)?;
        let space = ProfileSpace::new(
            agents,
            6,
            ScanMode::Sampled {
                count: 300,
                seed: spec.seed,
            },
        )?;
        let mut violations = 0;
        let mut slack = None;
        for profile in space.iter() {
            let check = verifier.check(&profile)?;
            violations += usize::from(!check.holds);
            if let Some(ef1) = check.ef1.bounded() {
                let gap = ef1 - &check.bound;
                if slack.as_ref().is_none_or(|s| gap < *s) {
                    slack = Some(gap);
                }
            }
        }
        println!(
            "{class} n={agents}: bound {}, violations {violations}, smallest slack {}",
            verifier.kind().formula(),
            slack.map_or("unbounded".into(), |s| s.to_string())
        );
    }
    Ok(())
}
