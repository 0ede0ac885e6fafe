//! Enumeration, lemma sweeps, instance predicates and counterexample
//! searches, all reporting through [`VerificationReport`].

pub mod enumerate;
pub mod instances;
pub mod lemmas;
pub mod peel;
pub mod replay;
pub mod report;
pub mod search;

pub use enumerate::{enumerate_graphs, iso_classes, EnumMode};
pub use instances::{check_main_theorem_instance, check_stability_instance, MainOutcome, StabilityReport};
pub use lemmas::{check_l1_instance, verify_lemma, L1Outcome, LemmaId, LemmaParams};
pub use peel::{min_degree_peel, PeelStep, PeelTrace};
pub use replay::{replay_report, replay_violation};
pub use report::{Mode, VerificationReport, Violation};
pub use search::{search_counterexample, verify_turan_extremal, SearchParams, SearchTarget, TuranSummary};
