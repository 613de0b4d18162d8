//! Rebuilds every fixture, runs its scenario and compares the outcome with
//! the closed-form values.
//!
//! ```text
//! cargo run --example reproduce_fixtures
//! ```

use rrfair::instances::fixtures::{reproduce, Fixture, FIXTURE_NAMES};

fn main() -> Result<(), rrfair::Error> {
    for name in FIXTURE_NAMES {
        let fixture = Fixture::named(name)?;
        let outcome = reproduce(&fixture)?;
        println!("{name}: {}", fixture.description());
        for check in &outcome.checks {
            let mark = if check.pass { "ok  " } else { "FAIL" };
            println!(
                "  [{mark}] {:<36} expected {:<24} got {}",
                check.quantity, check.expected, check.actual
            );
        }
        println!();
    }
    Ok(())
}
