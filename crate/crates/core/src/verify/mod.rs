//! Equilibrium certification: exact best-response oracles for both players,
//! best-response gaps, closed-form residuals and necessary-condition checks.

mod checks;
mod oracle;
mod report;

pub use checks::{
    check_loss_bound, minimax_checks, zero_sum_value_check, LossBoundReport, MinimaxReport, ZeroSumCheck,
};
#[cfg(test)]
pub(crate) use checks::{random_attack, random_flow};
pub use oracle::{
    best_response_attack, best_response_attack_restricted, best_response_flow, best_response_flow_over,
    DEFAULT_EDGE_LIMIT,
};
pub use report::{
    check_support_conditions, verify_equilibrium, CheckStatus, CutReport, NamedCheck, QuantityResidual,
    VerificationReport, VerifyOptions,
};
