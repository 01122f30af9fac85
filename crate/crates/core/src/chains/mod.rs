//! Linear chains of the resolution: realizable weight sequences, minimality,
//! the extension dichotomy and the global extension schedule.

mod aseq;
mod chain;
mod schedule;
mod verdict;

pub use aseq::{check_lemma2, continued_fraction, generate_A, lemma2_violation, ASequence, Rule};
pub use chain::{corner_clause, extract_chains, is_minimal, is_minimal_from, ChainCorner, ChainPoint, Clause, LinearChain};
pub use schedule::{extension_schedule, origin_checks, OriginCheck, Schedule, ScheduleStep, StepTag};
pub use verdict::{
    certificates_hold, chain_verdict, pattern, ChainVerdict, ClauseWitness, IndexCertificate, Pattern, StepReason,
    TrailStep, VerdictTag,
};
