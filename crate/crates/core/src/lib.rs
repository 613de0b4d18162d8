//! Round-Robin allocation of indivisible goods under strategic reports.
//!
//! Agents report strict rankings; the mechanism lets them pick in turn. This
//! crate evaluates the outcome exactly: the mechanism and its traces, the
//! bluff and greedy constructions, exact best responses and approximate
//! equilibrium factors, and EF/EF1 factors under the true valuations. All
//! values are exact rationals.
//!
//! ```
//! use rrfair::{bluff_profile, fairness_report, pne_factor, Instance, Valuation, int};
//!
//! let inst = Instance::new(vec![
//!     Valuation::additive(vec![int(3), int(2), int(1), int(0)]).unwrap(),
//!     Valuation::additive(vec![int(0), int(1), int(2), int(3)]).unwrap(),
//! ])
//! .unwrap();
//! let report = pne_factor(&inst, &bluff_profile(&inst)).unwrap();
//! assert_eq!(report.pne_factor, int(1));
//! let fairness = fairness_report(&inst, &report.allocation).unwrap();
//! assert!(fairness.ef1_factor.at_least(&int(1)));
//! ```

pub mod bundle;
pub mod classes;
pub mod cli;
pub mod equilibria;
pub mod error;
pub mod fairness;
pub mod instance;
pub mod instances;
pub mod mechanism;
pub mod profiles;
pub mod rational;
pub mod valuation;

pub use bundle::{bundle, Bundle, GoodId, MAX_GOODS};
pub use classes::{
    is_additive, is_cancelable, is_monotone, is_subadditive, is_submodular,
    satisfies_marginal_sum_bound, Verdict,
};
pub use equilibria::{
    best_response, certify_instance, pne_factor, profile_space_scan, profile_space_scan_parallel,
    verify_fairness_bound, BestResponse, BoundCheck, BoundVerifier, EquilibriumReport,
    FairnessBound, InstanceClasses, ProfileSpace, ScanEntry, ScanMode,
};
pub use error::{Error, Result};
pub use fairness::{ef1_factor, ef1_from_perspective, ef_factor, fairness_report, FairnessReport};
pub use instance::Instance;
pub use mechanism::{pad_to_multiple, round_robin, Allocation, Profile, Ranking, Trace};
pub use profiles::{
    bluff_order, bluff_profile, deviation_renaming, greedy_response, truthful_profile,
    truthful_ranking, BluffOrder,
};
pub use rational::{format_rational, int, parse_rational, rat, Factor, Rational};
pub use valuation::{OxsGraph, Valuation};
