//! Ehrenfeucht games on pairs of graphs: legal play, exact values, the
//! certificates behind Duplicator's scripted strategy, and crosschecks against
//! first-order evaluation.

mod certificate;
mod chain;
mod crosscheck;
mod embed;
mod membership;
mod solve;
mod state;
mod strategy;

pub use certificate::{
    check_kr_equivalence, check_regular_equivalence, is_tuple_isomorphism, CertFailure, CertParams, CertProperty,
    CertificateKind, CertificateReport, EquivalenceCertificate,
};
pub use chain::{build_extension_chain, ChainClosure, ExtensionChain};
pub use crosscheck::{crosscheck_ehrenfeucht, CrosscheckReport, CrosscheckViolation};
pub use embed::{find_induced_copy, map_subgraph, DEFAULT_EMBED_BUDGET};
pub use membership::{check_s_membership, constraint_family, is_maximal_for_all, SCaps, SFailure, SProperty, SReport};
pub use solve::{solve, solve_capped, Solver, DEFAULT_GAME_GUARD};
pub use state::{picks_consistent, GameState, Player, Side, Winner};
pub use strategy::{run_playouts, Fallback, MoveRecord, Phase, PlayoutSummary, Rule, StrategyConfig, StrategyContext};
