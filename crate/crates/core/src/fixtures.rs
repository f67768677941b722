//! Small reference networks shipped with the crate, loaded from the
//! workspace `fixtures/` directory at compile time.

use crate::netmodel::Network;

macro_rules! fixture {
    ($(#[$doc:meta])* $name:ident, $file:literal) => {
        $(#[$doc])*
        pub fn $name() -> Network {
            Network::from_json(include_str!(concat!("../../../fixtures/", $file)))
                .expect(concat!("fixture ", $file, " is valid"))
        }
    };
}

fixture!(
    /// Five-edge bridge network with unit costs.
    bridge,
    "bridge.json"
);
fixture!(
    /// Nine-edge network whose min-cost max-flow is unique.
    unique_mcmf,
    "unique_mcmf.json"
);
fixture!(
    /// Nine-edge network with a unique three-edge min-cut, all unit costs.
    three_edge_cut,
    "three_edge_cut.json"
);
fixture!(
    /// Network where attacking edges outside the unique min-cut can be part
    /// of an equilibrium.
    off_cut_attack,
    "off_cut_attack.json"
);
fixture!(
    /// The cheapest path is not part of the min-cost max-flow.
    cheap_bridge,
    "cheap_bridge.json"
);
fixture!(
    /// Cheapest costs differ per min-cut edge but are each used by the
    /// min-cost max-flow.
    per_edge_alpha,
    "per_edge_alpha.json"
);

/// Single edge `s -> t`.
pub fn single_edge(capacity: &str, cost: &str) -> Network {
    Network::from_edges("s", "t", &[("s", "t", capacity, cost)]).expect("valid single edge")
}
