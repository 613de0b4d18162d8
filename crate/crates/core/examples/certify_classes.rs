//! Certifies valuation classes exhaustively and prints the witness of every
//! failed check.

use rrfair::instances::fixtures::Fixture;
use rrfair::{
    int, is_cancelable, is_monotone, is_subadditive, is_submodular, OxsGraph, Valuation, Verdict,
};

fn show<W: std::fmt::Debug>(name: &str, verdict: rrfair::Result<Verdict<W>>) {
    match verdict {
        Ok(Verdict::Holds) => println!("  {name}: yes"),
        Ok(Verdict::Fails(w)) => println!("  {name}: no, {w:?}"),
        Err(e) => println!("  {name}: skipped ({e})"),
    }
}

fn main() -> Result<(), rrfair::Error> {
    let graph = OxsGraph::from_labeled_edges(
        3,
        [
            (0, "left", int(4)),
            (1, "left", int(3)),
            (1, "right", int(2)),
            (2, "right", int(2)),
        ],
    )?;
    let no_pne = Fixture::NoPne.build()?;
    let valuations = [
        (
            "budget-additive",
            Valuation::budget_additive(vec![int(3), int(2), int(2)], int(4))?,
        ),
        ("oxs", Valuation::oxs(graph)),
        (
            "complements",
            Valuation::table(2, vec![int(0), int(1), int(1), int(3)])?,
        ),
        ("no-pne agent 1", no_pne.valuation(0).clone()),
    ];
    for (name, v) in &valuations {
        println!("{name}");
        show("monotone", is_monotone(v));
        show("submodular", is_submodular(v));
        show("subadditive", is_subadditive(v));
        show("cancelable", is_cancelable(v));
    }
    Ok(())
}
