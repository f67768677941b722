//! Network model: validated networks, defender and attacker actions, mixed
//! strategies and the payoff functionals.

pub mod action;
pub mod network;
pub mod payoff;
pub mod strategy;

pub use action::{path_from_nodes, validate_path, Attack, FlowAction, PathFlow};
pub use network::{validate_network, Edge, EdgeId, EdgeSpec, Network, NetworkSpec, NodeId, NumberText, Terminal};
pub use payoff::{
    attack_cost, check_feasible, edge_flows, effective_flow, effective_value, expected_payoffs,
    expected_zero_sum_payoff, flow_value, is_feasible, loss, path_cost, payoff_u1, payoff_u2, transport_cost,
    zero_sum_payoff, GameParams,
};
pub use strategy::{Atom, MixedAttackStrategy, MixedFlowStrategy, MixedStrategy};
