//! Scores an allocation: every ordered pair's EF1 ratio and the good whose
//! removal binds it.

use rrfair::{bundle, fairness_report, int, Allocation, Instance, Valuation};

fn main() -> Result<(), rrfair::Error> {
    let inst = Instance::new(vec![
        Valuation::additive(vec![int(5), int(4), int(1), int(1), int(1)])?,
        Valuation::unit_demand(vec![int(2), int(6), int(3), int(1), int(1)])?,
        Valuation::budget_additive(vec![int(3), int(3), int(3), int(3), int(0)], int(5))?,
    ])?;
    let alloc = Allocation::new(vec![bundle(&[2, 3]), bundle(&[0, 4]), bundle(&[1])]);
    let report = fairness_report(&inst, &alloc)?;
    for p in &report.pair_ratios {
        println!(
            "agent {} vs {}: {} (without {})",
            p.owner + 1,
            p.other + 1,
            p.ratio,
            p.removed
        );
    }
    println!(
        "EF factor {}, EF1 factor {}",
        report.ef_factor, report.ef1_factor
    );
    Ok(())
}
