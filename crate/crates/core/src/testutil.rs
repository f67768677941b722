use proptest::prelude::*;

use crate::netmodel::Network;

/// Random small network: nodes `s, 1..k, t`, a guaranteed chain
/// `s -> 1 -> ... -> t`, plus random extra edges with small integer
/// capacities and costs.
pub(crate) fn arb_network(max_inner: usize, max_extra: usize) -> impl Strategy<Value = Network> {
    (1..=max_inner).prop_flat_map(move |k| {
        let names: Vec<String> = std::iter::once("s".to_string())
            .chain((1..=k).map(|i| i.to_string()))
            .chain(std::iter::once("t".to_string()))
            .collect();
        let n = names.len();
        let chain = proptest::collection::vec((0i64..4, 0i64..4), n - 1);
        let extra = proptest::collection::vec((0..n, 0..n, 0i64..4, 0i64..4), 0..=max_extra);
        (Just(names), chain, extra).prop_map(|(names, chain, extra)| {
            let mut edges: Vec<(String, String, String, String)> = Vec::new();
            for (i, (c, b)) in chain.into_iter().enumerate() {
                edges.push((names[i].clone(), names[i + 1].clone(), c.to_string(), b.to_string()));
            }
            for (u, v, c, b) in extra {
                if u != v && names[u] != "t" && names[v] != "s" {
                    edges.push((names[u].clone(), names[v].clone(), c.to_string(), b.to_string()));
                }
            }
            let refs: Vec<(&str, &str, &str, &str)> =
                edges.iter().map(|(a, b, c, d)| (a.as_str(), b.as_str(), c.as_str(), d.as_str())).collect();
            Network::from_edges("s", "t", &refs).expect("generated network is valid")
        })
    })
}
