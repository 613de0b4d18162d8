//! Scans profile spaces: every profile of a small instance, then a seeded
//! sample of a larger one on all cores.

use rrfair::instances::fixtures::Fixture;
use rrfair::instances::generate::{generate, GeneratorClass, GeneratorSpec};
use rrfair::{profile_space_scan, profile_space_scan_parallel, ScanMode};

fn main() -> Result<(), rrfair::Error> {
    let inst = Fixture::NoPne.build()?;
    let mut best = None;
    for entry in profile_space_scan(&inst, ScanMode::Exhaustive)? {
        let entry = entry?;
        if best
            .as_ref()
            .is_none_or(|(_, b)| entry.equilibrium.pne_factor > *b)
        {
            best = Some((entry.profile, entry.equilibrium.pne_factor));
        }
    }
    let (profile, factor) = best.expect("non-empty space");
    let rankings: Vec<String> = profile.rankings().iter().map(|r| r.to_string()).collect();
    println!("no-pne: best factor {factor} at [{}]", rankings.join(" | "));

    let inst = generate(&GeneratorSpec::new(
        GeneratorClass::SubmodularTable,
        3,
        6,
        5,
    ))?;
    let entries = profile_space_scan_parallel(
        &inst,
        ScanMode::Sampled {
            count: 2000,
            seed: 1,
        },
    )?;
    let worst = entries
        .iter()
        .map(|e| &e.equilibrium.pne_factor)
        .min()
        .expect("sampled");
    let exact = entries
        .iter()
        .filter(|e| e.equilibrium.pne_factor == rrfair::int(1))
        .count();
    println!(
        "table 3x6: {} samples, {exact} exact equilibria, worst factor {worst}",
        entries.len()
    );
    Ok(())
}
