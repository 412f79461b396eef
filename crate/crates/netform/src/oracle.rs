//! Exhaustive small-population ground truth.
//!
//! Every labeled simple graph on `n` agents is enumerated from a bitmask
//! over the `n(n-1)/2` unordered pairs in row-major order — pair `(i, j)`
//! with `i < j` sits at bit `i*(2n-i-1)/2 + (j-i-1)`, and masks run from 0
//! to `2^(n(n-1)/2) - 1` — so cross-implementation traces align. Everything
//! the closed-form modules claim is re-derivable here by brute force, and
//! [`verify_theorems`] does exactly that.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{classify, total_welfare, Framework, GameConfig, Network, NetworkClass};
use crate::stability::{check_theorem_conditions, is_bilaterally_stable, StabilityMode};
use crate::structure::DegreeSequence;
use crate::welfare::is_contented;

/// Hard population bound: 2^21 graphs.
pub const MAX_EXHAUSTIVE_AGENTS: usize = 7;

/// Unordered pairs in row-major order; bit `k` of a mask covers `pairs[k]`.
pub fn pair_order(n: usize) -> Vec<(usize, usize)> {
    (0..n)
        .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
        .collect()
}

/// Network for one edge bitmask.
pub fn graph_from_mask(n: usize, mask: u64, pairs: &[(usize, usize)]) -> Network {
    let mut net = Network::empty(n);
    for (bit, &(i, j)) in pairs.iter().enumerate() {
        if mask >> bit & 1 == 1 {
            net.add_link(i, j).unwrap();
        }
    }
    net
}

/// Degree vector for one edge bitmask, without building the network.
pub fn degrees_from_mask(n: usize, mask: u64, pairs: &[(usize, usize)]) -> Vec<usize> {
    let mut degrees = vec![0usize; n];
    for (bit, &(i, j)) in pairs.iter().enumerate() {
        if mask >> bit & 1 == 1 {
            degrees[i] += 1;
            degrees[j] += 1;
        }
    }
    degrees
}

pub struct GraphEnumeration {
    n: usize,
    pairs: Vec<(usize, usize)>,
    next_mask: u64,
    end: u64,
}

impl Iterator for GraphEnumeration {
    type Item = Network;

    fn next(&mut self) -> Option<Network> {
        if self.next_mask >= self.end {
            return None;
        }
        let net = graph_from_mask(self.n, self.next_mask, &self.pairs);
        self.next_mask += 1;
        Some(net)
    }
}

/// Every labeled simple graph on `n` agents exactly once, in ascending
/// bitmask order.
pub fn enumerate_graphs(n: usize) -> Result<GraphEnumeration> {
    if n > MAX_EXHAUSTIVE_AGENTS {
        return Err(Error::TooManyAgents {
            requested: n,
            limit: MAX_EXHAUSTIVE_AGENTS,
        });
    }
    let pairs = pair_order(n);
    Ok(GraphEnumeration {
        n,
        end: 1u64 << pairs.len(),
        pairs,
        next_mask: 0,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnumerationSummary {
    pub n: usize,
    pub total_graphs: u64,
    pub stable_count: u64,
    pub stable_degree_sequences: Vec<DegreeSequence>,
    /// Maximum welfare over resource-feasible graphs.
    pub max_welfare: f64,
    pub efficient_count: u64,
    pub contented_count: u64,
}

/// Classifies every graph on the roster: stability under `mode`, welfare
/// against the enumerated maximum, and contentment.
///
/// Stability is evaluated on every graph, including resource-overcommitted
/// ones (the definitions constrain moves, not states); the welfare maximum
/// and the efficient count range over feasible graphs only.
pub fn classify_all(cfg: &GameConfig, mode: StabilityMode) -> Result<EnumerationSummary> {
    let n = cfg.agent_count();
    let mut stable_count = 0u64;
    let mut sequences = BTreeSet::new();
    let mut max_welfare = f64::NEG_INFINITY;
    let mut contented_count = 0u64;

    for net in enumerate_graphs(n)? {
        let report = is_bilaterally_stable(cfg, &net, mode)?;
        if report.stable {
            stable_count += 1;
            sequences.insert(DegreeSequence::of(&net));
        }
        if report.overcommitted_agents.is_empty() {
            max_welfare = max_welfare.max(total_welfare(cfg, &net)?);
        }
        if is_contented(cfg, &net)?.contented {
            contented_count += 1;
        }
    }

    let mut efficient_count = 0u64;
    for net in enumerate_graphs(n)? {
        if !crate::stability::overcommitted_agents(cfg, &net, mode).is_empty() {
            continue;
        }
        if (total_welfare(cfg, &net)? - max_welfare).abs() <= cfg.epsilon {
            efficient_count += 1;
        }
    }

    Ok(EnumerationSummary {
        n,
        total_graphs: 1u64 << (n * (n - 1) / 2),
        stable_count,
        stable_degree_sequences: sequences.into_iter().collect(),
        max_welfare,
        efficient_count,
        contented_count,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    pub failures: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub checks: Vec<CheckOutcome>,
}

impl VerificationReport {
    pub fn passed_all(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for check in &self.checks {
            writeln!(
                f,
                "{:28} {}",
                check.name,
                if check.passed { "PASS" } else { "FAIL" }
            )?;
            for failure in &check.failures {
                writeln!(f, "    {failure}")?;
            }
        }
        Ok(())
    }
}

struct CheckCollector {
    outcome: CheckOutcome,
}

impl CheckCollector {
    fn new(name: &str) -> Self {
        CheckCollector {
            outcome: CheckOutcome {
                name: name.to_string(),
                passed: true,
                failures: Vec::new(),
            },
        }
    }

    fn fail(&mut self, message: String) {
        self.outcome.passed = false;
        if self.outcome.failures.len() < 20 {
            self.outcome.failures.push(message);
        }
    }
}

/// Brute-force verification of every closed-form result over a grid of
/// symmetric configs.
///
/// Per config: (a) the definition-literal checker and the closed-form
/// checker agree on every graph; (b) the closed-form stable degree equals
/// the degree at which the best-response incentive flips; (c) every stable
/// graph has at most one small component; (d) the stable degree-sequence
/// count matches the uniqueness rule; (e) the closed-form optimal profile
/// attains the brute-force welfare maximum.
pub fn verify_theorems(configs: &[GameConfig]) -> Result<VerificationReport> {
    let mut agreement = CheckCollector::new("definition-vs-closed-form");
    let mut sign_flip = CheckCollector::new("best-response-sign-flip");
    let mut small_components = CheckCollector::new("small-component-bound");
    let mut uniqueness = CheckCollector::new("stable-uniqueness-counts");
    let mut optimal_profile = CheckCollector::new("optimal-degree-profile");

    for (index, cfg) in configs.iter().enumerate() {
        let n = cfg.agent_count();
        if n > MAX_EXHAUSTIVE_AGENTS {
            return Err(Error::TooManyAgents {
                requested: n,
                limit: MAX_EXHAUSTIVE_AGENTS,
            });
        }
        let label = format!("config {index} (n={n}, {})", cfg.framework);
        let class = classify(cfg);
        if class == NetworkClass::General {
            agreement.fail(format!("{label}: heterogeneous roster in grid"));
            continue;
        }

        let point = crate::stability_point::stability_point(cfg)?;
        let eta_hat = point.degree;

        // (a) + collect stable sequences for (c) and (d).
        let mode = check_theorem_conditions(cfg, &Network::empty(n))?.mode;
        let mut stable_sequences = BTreeSet::new();
        let mut stable_graphs = 0u64;
        for net in enumerate_graphs(n)? {
            let by_definition = is_bilaterally_stable(cfg, &net, mode)?.stable;
            let by_theorem = check_theorem_conditions(cfg, &net)?.stable;
            if by_definition != by_theorem {
                agreement.fail(format!(
                    "{label}: links {:?}: definition={by_definition}, closed-form={by_theorem}",
                    net.links()
                ));
            }
            if by_definition {
                stable_graphs += 1;
                stable_sequences.insert(DegreeSequence::of(&net));
                let check = crate::structure::check_small_component_claim(&net, eta_hat);
                if !check.holds {
                    small_components.fail(format!(
                        "{label}: stable links {:?} has {} small components",
                        net.links(),
                        check.offending.len()
                    ));
                }
            }
        }

        // (b)
        let range = crate::dynamics::best_response_degree(cfg, 0, mode)?;
        let expected = eta_hat.min(n - 1);
        if range.min_degree != expected {
            sign_flip.fail(format!(
                "{label}: closed form {expected}, sign flip at {}",
                range.min_degree
            ));
        }

        // (d) Degenerate degree zero splits by framework: with cost in the
        // utility every link is mutually dropped, leaving only the null
        // network; under value-only play deletions never pay and additions
        // are infeasible, so every graph is stable.
        if eta_hat == 0 {
            match cfg.framework {
                Framework::Mo => {
                    let null_only = stable_sequences.len() == 1
                        && stable_sequences.iter().next().unwrap().as_slice() == vec![0; n];
                    if !null_only {
                        uniqueness.fail(format!(
                            "{label}: degenerate point but {} stable sequences",
                            stable_sequences.len()
                        ));
                    }
                }
                Framework::So => {
                    let total = 1u64 << (n * (n - 1) / 2);
                    if stable_graphs != total {
                        uniqueness.fail(format!(
                            "{label}: zero-capacity play should leave every graph \
                             stable, got {stable_graphs}/{total}"
                        ));
                    }
                }
            }
        } else if n == eta_hat + 1 || eta_hat >= n {
            let complete_only = stable_sequences.len() == 1
                && stable_sequences.iter().next().unwrap().as_slice() == vec![n - 1; n];
            if !complete_only {
                uniqueness.fail(format!(
                    "{label}: expected the complete network alone, got {:?}",
                    stable_sequences
                ));
            }
        } else if stable_sequences.len() < 2 {
            uniqueness.fail(format!(
                "{label}: expected two or more stable degree sequences, got {:?}",
                stable_sequences
            ));
        }

        // (e)
        let report = crate::welfare::is_efficient(cfg, &Network::empty(n))?;
        let mut brute_max = f64::NEG_INFINITY;
        for net in enumerate_graphs(n)? {
            if !crate::stability::overcommitted_agents(cfg, &net, mode).is_empty() {
                continue;
            }
            brute_max = brute_max.max(total_welfare(cfg, &net)?);
        }
        if (report.max_welfare - brute_max).abs() > 1e-9 {
            optimal_profile.fail(format!(
                "{label}: closed-form max {} vs brute-force {brute_max}",
                report.max_welfare
            ));
        }
    }

    Ok(VerificationReport {
        checks: vec![
            agreement.outcome,
            sign_flip.outcome,
            small_components.outcome,
            uniqueness.outcome,
            optimal_profile.outcome,
        ],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{AgentParams, Framework};

    fn example1(n: usize) -> GameConfig {
        let params = AgentParams::new(0.6, 1000.0, 1.0, 1000.0).unwrap();
        GameConfig::symmetric(Framework::Mo, 0.2, 0.0055, params, n).unwrap()
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_graphs(2).unwrap().count(), 2);
        assert_eq!(enumerate_graphs(3).unwrap().count(), 8);
        assert_eq!(enumerate_graphs(6).unwrap().count(), 32768);
        assert!(matches!(
            enumerate_graphs(8),
            Err(Error::TooManyAgents { .. })
        ));
    }

    #[test]
    fn enumeration_is_duplicate_free() {
        let mut seen = BTreeSet::new();
        for net in enumerate_graphs(4).unwrap() {
            assert!(seen.insert(net.links()));
        }
        assert_eq!(seen.len(), 64);
    }

    #[test]
    fn mask_encoding_is_row_major() {
        let pairs = pair_order(4);
        assert_eq!(pairs, vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        let net = graph_from_mask(4, 0b000101, &pairs);
        assert_eq!(net.links(), vec![(0, 1), (0, 3)]);
        assert_eq!(degrees_from_mask(4, 0b000101, &pairs), vec![2, 1, 0, 1]);
    }

    #[test]
    fn stable_family_for_six_agents() {
        let cfg = example1(6);
        let summary = classify_all(&cfg, StabilityMode::Plain).unwrap();
        assert_eq!(summary.total_graphs, 32768);
        let sequences: Vec<&[usize]> = summary
            .stable_degree_sequences
            .iter()
            .map(|s| s.as_slice())
            .collect();
        // Stable shapes: agents below the best degree pairwise adjacent,
        // agents above it pairwise non-adjacent. Eleven degree sequences in
        // all; those with max degree three are the four reachable by pure
        // link addition.
        assert_eq!(sequences.len(), 11);
        for expected in [
            &[3, 3, 3, 3, 3, 3][..],
            &[3, 3, 3, 3, 2, 2][..],
            &[3, 3, 3, 3, 1, 1][..],
            &[3, 3, 3, 3, 3, 1][..],
        ] {
            assert!(sequences.contains(&expected), "missing {expected:?}");
        }
        assert_eq!(
            sequences.iter().filter(|s| s[0] <= 3).count(),
            4
        );
        // Efficient graphs are exactly the regular ones at the best degree.
        assert!((summary.max_welfare - 3.4722).abs() < 1e-9);
        assert_eq!(summary.efficient_count, 70);
    }

    #[test]
    fn value_only_play_stabilizes_complete_alone() {
        let mut agents = vec![AgentParams::new(0.6, 1000.0, 1.0, 1000.0).unwrap(); 4];
        agents[0].shared_storage = 999.0;
        let cfg = GameConfig::new(Framework::So, 0.2, 0.0055, agents).unwrap();
        let summary = classify_all(&cfg, StabilityMode::Plain).unwrap();
        assert_eq!(summary.stable_count, 1);
        assert_eq!(summary.stable_degree_sequences.len(), 1);
        assert_eq!(summary.stable_degree_sequences[0].as_slice(), &[3, 3, 3, 3]);
    }

    #[test]
    fn matchings_are_the_degree_one_family() {
        // At a stable degree of one, the stable graphs with max degree one
        // are exactly the perfect matchings: three on four agents.
        let params = AgentParams::new(0.6, 1000.0, 1.0, 1000.0).unwrap();
        let cfg = GameConfig::symmetric(Framework::Mo, 0.2, 0.2, params, 4).unwrap();
        let mut matchings = 0;
        for net in enumerate_graphs(4).unwrap() {
            if net.degrees().iter().any(|&d| d > 1) {
                continue;
            }
            if is_bilaterally_stable(&cfg, &net, StabilityMode::Plain)
                .unwrap()
                .stable
            {
                assert!(net.degrees().iter().all(|&d| d == 1));
                matchings += 1;
            }
        }
        assert_eq!(matchings, 3);
    }

    #[test]
    fn degenerate_cost_leaves_only_the_null_network() {
        let params = AgentParams::new(0.6, 1000.0, 1.0, 1000.0).unwrap();
        let cfg = GameConfig::symmetric(Framework::Mo, 0.2, 0.5, params, 4).unwrap();
        let summary = classify_all(&cfg, StabilityMode::Plain).unwrap();
        assert_eq!(summary.stable_count, 1);
        assert_eq!(summary.stable_degree_sequences[0].as_slice(), &[0, 0, 0, 0]);
    }

    #[test]
    fn boundary_tie_admits_both_degrees() {
        // Cost exactly at the crossover: both matchings and two-regular
        // graphs are stable.
        let params = AgentParams::new(0.6, 1000.0, 1.0, 1000.0).unwrap();
        let cfg = GameConfig::symmetric(Framework::Mo, 0.2, 0.096, params, 4).unwrap();
        let summary = classify_all(&cfg, StabilityMode::Plain).unwrap();
        let sequences: Vec<&[usize]> = summary
            .stable_degree_sequences
            .iter()
            .map(|s| s.as_slice())
            .collect();
        assert!(sequences.contains(&&[1, 1, 1, 1][..]));
        assert!(sequences.contains(&&[2, 2, 2, 2][..]));
    }

    #[test]
    fn verification_passes_on_reference_grid() {
        let configs: Vec<GameConfig> = (4..=5).map(example1).collect();
        let report = verify_theorems(&configs).unwrap();
        assert!(report.passed_all(), "{report}");
    }
}
