//! Seeded mutual-consent evolution of a partnership network.
//!
//! The move rule is pure mutual consent: a non-adjacent pair links exactly
//! when both sides strictly gain and both sides' feasibility checks pass,
//! and an adjacent pair unlinks exactly when both sides strictly gain. No
//! move happens over a refusal.
//!
//! The meeting order is demand-driven. Each round, the agent farthest from
//! its best-response degree runs a proposal session: an agent short of
//! partners proposes to non-neighbors in descending order of their own
//! shortfall, an overloaded agent proposes deletions to its most overloaded
//! neighbors, and every proposal is settled by the move rule alone. Ties are
//! broken by a fresh seeded shuffle every round. Under-target agents
//! therefore pair up before saturated agents can strand them, which is what
//! makes the symmetric from-null runs land on the maximal stable shapes
//! (all agents at the stable degree when the handshake parity allows it,
//! all but one otherwise) instead of the smaller stable networks that a
//! uniformly random meeting order falls into.
//!
//! A round in which no proposal is accepted triggers a full scan of all
//! pairs under the move rule; only a clean scan declares convergence, so a
//! converged trace ends in a bilaterally stable network by construction.
//!
//! Randomness comes from a ChaCha12 stream keyed by the caller's seed, with
//! an in-house Fisher–Yates shuffle drawing 64-bit words reduced modulo the
//! remaining length. Identical inputs give bit-identical traces.

use std::io::Write;

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha12Rng;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::model::{Framework, GameConfig, Network};
use crate::stability::{
    add_feasible, gain_from_add, gain_from_delete, DeviationKind, StabilityMode,
};

/// Identifier of the random stream and shuffle recorded in every trace.
pub const RNG_ALGORITHM: &str = "chacha12-fisher-yates";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum StartPoint {
    #[serde(rename = "null")]
    Null,
    #[serde(rename = "complete")]
    Complete,
    #[serde(rename = "given")]
    Given(Network),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Protocol {
    pub start: StartPoint,
    pub seed: u64,
    pub max_rounds: usize,
}

impl Protocol {
    /// Default round budget; generous since accepted moves are bounded by
    /// the pair count times the best-response width.
    pub fn default_max_rounds(n: usize) -> usize {
        10 * n.max(1)
    }

    pub fn from_null(seed: u64, n: usize) -> Self {
        Protocol {
            start: StartPoint::Null,
            seed,
            max_rounds: Self::default_max_rounds(n),
        }
    }

    pub fn from_complete(seed: u64, n: usize) -> Self {
        Protocol {
            start: StartPoint::Complete,
            seed,
            max_rounds: Self::default_max_rounds(n),
        }
    }
}

/// One evaluated proposal. `gain_i` and `feasible_i` belong to the smaller
/// index of `pair`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceStep {
    pub round: usize,
    pub pair: (usize, usize),
    pub kind: DeviationKind,
    pub accepted: bool,
    pub gain_i: f64,
    pub gain_j: f64,
    pub feasible_i: bool,
    pub feasible_j: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvolutionTrace {
    pub algorithm: String,
    pub seed: u64,
    pub mode: StabilityMode,
    pub steps: Vec<TraceStep>,
    pub final_network: Network,
    pub converged: bool,
    pub rounds: usize,
}

impl EvolutionTrace {
    /// CSV rendering, one row per evaluated proposal.
    pub fn write_csv<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(
            out,
            "round,kind,i,j,accepted,gain_i,gain_j,feasible_i,feasible_j"
        )?;
        for step in &self.steps {
            let kind = match step.kind {
                DeviationKind::Add => "add",
                DeviationKind::Delete => "delete",
            };
            writeln!(
                out,
                "{},{},{},{},{},{},{},{},{}",
                step.round,
                kind,
                step.pair.0,
                step.pair.1,
                step.accepted,
                step.gain_i,
                step.gain_j,
                step.feasible_i,
                step.feasible_j
            )?;
        }
        Ok(())
    }

    pub fn accepted_steps(&self) -> impl Iterator<Item = &TraceStep> {
        self.steps.iter().filter(|s| s.accepted)
    }
}

fn fisher_yates<T>(items: &mut [T], rng: &mut ChaCha12Rng) {
    for k in (1..items.len()).rev() {
        let j = (rng.next_u64() % (k as u64 + 1)) as usize;
        items.swap(k, j);
    }
}

struct Evolution<'a> {
    cfg: &'a GameConfig,
    mode: StabilityMode,
    net: Network,
    targets: Vec<BestResponseRange>,
    steps: Vec<TraceStep>,
    accepted_in_round: bool,
}

impl Evolution<'_> {
    fn shortfall(&self, agent: usize) -> usize {
        self.targets[agent]
            .min_degree
            .saturating_sub(self.net.degree(agent))
    }

    fn overload(&self, agent: usize) -> usize {
        self.net
            .degree(agent)
            .saturating_sub(self.targets[agent].max_degree)
    }

    /// Settles one proposal by the move rule and logs it.
    fn propose(&mut self, round: usize, a: usize, b: usize) -> Result<bool> {
        let (i, j) = (a.min(b), a.max(b));
        let step = if self.net.has_link(i, j) {
            let gain_i = gain_from_delete(self.cfg, &self.net, i, j)?;
            let gain_j = gain_from_delete(self.cfg, &self.net, j, i)?;
            let accepted = self.cfg.strict_gain(gain_i) && self.cfg.strict_gain(gain_j);
            if accepted {
                self.net.remove_link(i, j)?;
            }
            TraceStep {
                round,
                pair: (i, j),
                kind: DeviationKind::Delete,
                accepted,
                gain_i,
                gain_j,
                feasible_i: true,
                feasible_j: true,
            }
        } else {
            let gain_i = gain_from_add(self.cfg, &self.net, i, j)?;
            let gain_j = gain_from_add(self.cfg, &self.net, j, i)?;
            let feasible_i = add_feasible(self.cfg, &self.net, i, j, self.mode)?;
            let feasible_j = add_feasible(self.cfg, &self.net, j, i, self.mode)?;
            let accepted = self.cfg.strict_gain(gain_i)
                && self.cfg.strict_gain(gain_j)
                && feasible_i
                && feasible_j;
            if accepted {
                self.net.add_link(i, j)?;
            }
            TraceStep {
                round,
                pair: (i, j),
                kind: DeviationKind::Add,
                accepted,
                gain_i,
                gain_j,
                feasible_i,
                feasible_j,
            }
        };
        let accepted = step.accepted;
        self.accepted_in_round |= accepted;
        self.steps.push(step);
        Ok(accepted)
    }

    /// One proposal session: the agent courts partners in descending order
    /// of their shortfall (adds) or overload (deletes) until its own demand
    /// is met or the candidates run out.
    fn run_session(&mut self, round: usize, agent: usize, rank: &[usize]) -> Result<()> {
        let n = self.net.agent_count();
        if self.shortfall(agent) > 0 {
            let mut candidates: Vec<usize> = (0..n)
                .filter(|&b| b != agent && !self.net.has_link(agent, b))
                .collect();
            candidates.sort_by_key(|&b| (std::cmp::Reverse(self.shortfall(b)), rank[b]));
            for b in candidates {
                if self.shortfall(agent) == 0 {
                    break;
                }
                self.propose(round, agent, b)?;
            }
        } else if self.overload(agent) > 0 {
            let mut candidates: Vec<usize> = self.net.neighbors(agent).collect();
            candidates.sort_by_key(|&b| (std::cmp::Reverse(self.overload(b)), rank[b]));
            for b in candidates {
                if self.overload(agent) == 0 {
                    break;
                }
                self.propose(round, agent, b)?;
            }
        }
        Ok(())
    }
}

/// Runs the mutual-consent dynamics and returns the full trace.
///
/// `converged` is false only when the round budget ran out before a clean
/// full scan; a converged final network is bilaterally stable under the
/// given mode by construction.
pub fn evolve(cfg: &GameConfig, protocol: &Protocol, mode: StabilityMode) -> Result<EvolutionTrace> {
    let n = cfg.agent_count();
    let net = match &protocol.start {
        StartPoint::Null => Network::empty(n),
        StartPoint::Complete => Network::complete(n),
        StartPoint::Given(given) => {
            cfg.check_network(given)?;
            given.clone()
        }
    };

    let mut rng = ChaCha12Rng::seed_from_u64(protocol.seed);
    let targets = (0..n)
        .map(|i| best_response_degree(cfg, i, mode))
        .collect::<Result<Vec<_>>>()?;
    let mut state = Evolution {
        cfg,
        mode,
        net,
        targets,
        steps: Vec::new(),
        accepted_in_round: false,
    };

    let mut converged = false;
    let mut rounds = 0;
    let mut rank: Vec<usize> = (0..n).collect();
    for round in 1..=protocol.max_rounds {
        rounds = round;
        fisher_yates(&mut rank, &mut rng);
        state.accepted_in_round = false;

        // Proposal sessions, most pressing demand first.
        let mut pending = vec![true; n];
        loop {
            let next = (0..n)
                .filter(|&i| pending[i])
                .map(|i| (state.shortfall(i).max(state.overload(i)), i))
                .filter(|&(drive, _)| drive > 0)
                .max_by_key(|&(drive, i)| (drive, std::cmp::Reverse(rank[i])));
            let Some((_, agent)) = next else { break };
            pending[agent] = false;
            state.run_session(round, agent, &rank)?;
        }

        // Quiet round: certify the fixed point by scanning every pair under
        // the move rule, continuing if the scan still finds a move.
        if !state.accepted_in_round {
            for i in 0..n {
                for j in (i + 1)..n {
                    state.propose(round, i, j)?;
                }
            }
            if !state.accepted_in_round {
                converged = true;
                break;
            }
        }
    }

    Ok(EvolutionTrace {
        algorithm: RNG_ALGORITHM.to_string(),
        seed: protocol.seed,
        mode,
        steps: state.steps,
        final_network: state.net,
        converged,
        rounds,
    })
}

/// Contiguous range of degrees at which an agent has no strict incentive to
/// add or delete a link.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BestResponseRange {
    pub min_degree: usize,
    pub max_degree: usize,
}

/// Degrees at which agent `i` neither wants another partner nor wants to
/// drop one, over `0..=n-1`.
///
/// Prospective partners are modeled as willing copies of the agent itself:
/// a further link is "available" when the agent strictly gains, has room
/// for a copy's data (under storage checking), and can afford the link
/// (under budget checking). Add availability only shrinks with degree and
/// delete incentive only grows, so the no-incentive set is one contiguous
/// range; its lower end is where the add incentive flips sign.
pub fn best_response_degree(
    cfg: &GameConfig,
    agent: usize,
    mode: StabilityMode,
) -> Result<BestResponseRange> {
    let n = cfg.agent_count();
    let params = *cfg.agent(agent)?;
    let add_gain = |degree: usize| {
        crate::stability::add_marginal(params.data_value, cfg.disk_failure_rate, degree)
            - match cfg.framework {
                Framework::Mo => cfg.link_cost,
                Framework::So => 0.0,
            }
    };
    let delete_gain = |degree: usize| match cfg.framework {
        Framework::Mo => {
            cfg.link_cost
                - crate::stability::delete_marginal(
                    params.data_value,
                    cfg.disk_failure_rate,
                    degree,
                )
        }
        Framework::So => {
            -crate::stability::delete_marginal(params.data_value, cfg.disk_failure_rate, degree)
        }
    };
    let add_available = |degree: usize| {
        if degree + 1 > n - 1 {
            return false;
        }
        if !cfg.strict_gain(add_gain(degree)) {
            return false;
        }
        let storage_ok = cfg.at_least(
            params.shared_storage - params.data_size * degree as f64,
            params.data_size,
        );
        let budget_ok = cfg.at_least(
            params.budget - cfg.link_cost * degree as f64,
            cfg.link_cost,
        );
        match mode {
            StabilityMode::Plain => true,
            StabilityMode::StorageConstrained => storage_ok,
            StabilityMode::StorageBudgetConstrained => storage_ok && budget_ok,
        }
    };
    let delete_beneficial = |degree: usize| degree >= 1 && cfg.strict_gain(delete_gain(degree));

    let min_degree = (0..n)
        .find(|&d| !add_available(d))
        .expect("degree n-1 never admits another link");
    debug_assert!(!delete_beneficial(min_degree));
    let max_degree = (min_degree..n)
        .take_while(|&d| !delete_beneficial(d))
        .last()
        .unwrap_or(min_degree);
    Ok(BestResponseRange {
        min_degree,
        max_degree,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::AgentParams;
    use crate::stability::is_bilaterally_stable;

    fn example1(n: usize) -> GameConfig {
        let params = AgentParams::new(0.6, 1000.0, 1.0, 1000.0).unwrap();
        GameConfig::symmetric(Framework::Mo, 0.2, 0.0055, params, n).unwrap()
    }

    #[test]
    fn null_start_reaches_the_regular_network() {
        let cfg = example1(6);
        for seed in 0..50 {
            let trace = evolve(&cfg, &Protocol::from_null(seed, 6), StabilityMode::Plain).unwrap();
            assert!(trace.converged, "seed {seed}");
            assert_eq!(trace.final_network.link_count(), 9, "seed {seed}");
            assert!(trace.final_network.degrees().iter().all(|&d| d == 3));
            let report =
                is_bilaterally_stable(&cfg, &trace.final_network, StabilityMode::Plain).unwrap();
            assert!(report.stable, "seed {seed}");
        }
    }

    #[test]
    fn odd_population_leaves_one_agent_short() {
        let cfg = example1(7);
        for seed in 0..50 {
            let trace = evolve(&cfg, &Protocol::from_null(seed, 7), StabilityMode::Plain).unwrap();
            assert!(trace.converged);
            let mut degrees = trace.final_network.degrees();
            degrees.sort_unstable();
            assert_eq!(degrees, vec![2, 3, 3, 3, 3, 3, 3], "seed {seed}");
        }
    }

    #[test]
    fn eta_one_pairs_up() {
        let params = AgentParams::new(0.6, 1000.0, 1.0, 1000.0).unwrap();
        let cfg = GameConfig::symmetric(Framework::Mo, 0.2, 0.2, params, 4).unwrap();
        for seed in 0..20 {
            let trace = evolve(&cfg, &Protocol::from_null(seed, 4), StabilityMode::Plain).unwrap();
            assert!(trace.converged);
            let degrees = trace.final_network.degrees();
            assert!(degrees.iter().all(|&d| d == 1), "seed {seed}: {degrees:?}");
            assert_eq!(trace.final_network.link_count(), 2);
        }
    }

    #[test]
    fn complete_start_sheds_to_near_regular() {
        let cfg = example1(5);
        for seed in 0..20 {
            let trace =
                evolve(&cfg, &Protocol::from_complete(seed, 5), StabilityMode::Plain).unwrap();
            assert!(trace.converged);
            let mut degrees = trace.final_network.degrees();
            degrees.sort_unstable();
            assert_eq!(degrees, vec![3, 3, 3, 3, 4], "seed {seed}");
        }
    }

    #[test]
    fn traces_are_deterministic() {
        let cfg = example1(6);
        let a = evolve(&cfg, &Protocol::from_null(7, 6), StabilityMode::Plain).unwrap();
        let b = evolve(&cfg, &Protocol::from_null(7, 6), StabilityMode::Plain).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn seeds_vary_the_final_links() {
        let cfg = example1(6);
        let links: std::collections::BTreeSet<Vec<(usize, usize)>> = (0..20)
            .map(|seed| {
                evolve(&cfg, &Protocol::from_null(seed, 6), StabilityMode::Plain)
                    .unwrap()
                    .final_network
                    .links()
            })
            .collect();
        assert!(links.len() > 1);
    }

    #[test]
    fn null_start_never_deletes() {
        let cfg = example1(7);
        for seed in 0..50 {
            let trace = evolve(&cfg, &Protocol::from_null(seed, 7), StabilityMode::Plain).unwrap();
            assert!(trace
                .accepted_steps()
                .all(|s| s.kind == DeviationKind::Add));
        }
    }

    #[test]
    fn best_response_examples() {
        let cfg = example1(6);
        let range = best_response_degree(&cfg, 0, StabilityMode::Plain).unwrap();
        assert_eq!((range.min_degree, range.max_degree), (3, 3));

        // Exact crossover at one: both one and two partners are workable.
        let params = AgentParams::new(0.6, 1000.0, 1.0, 1000.0).unwrap();
        let tie = GameConfig::symmetric(Framework::Mo, 0.2, 0.096, params, 6).unwrap();
        let range = best_response_degree(&tie, 0, StabilityMode::Plain).unwrap();
        assert_eq!((range.min_degree, range.max_degree), (1, 2));

        let so = GameConfig::symmetric(Framework::So, 0.2, 0.1, params, 7).unwrap();
        let range =
            best_response_degree(&so, 0, StabilityMode::StorageBudgetConstrained).unwrap();
        assert_eq!((range.min_degree, range.max_degree), (6, 6));
    }

    #[test]
    fn constrained_evolution_respects_storage() {
        // Storage ratio three among six agents under value-only play.
        let params = AgentParams::new(0.6, 60.0, 20.0, 0.5).unwrap();
        let cfg = GameConfig::symmetric(Framework::So, 0.2, 0.1, params, 6).unwrap();
        for seed in 0..20 {
            let trace = evolve(
                &cfg,
                &Protocol::from_null(seed, 6),
                StabilityMode::StorageBudgetConstrained,
            )
            .unwrap();
            assert!(trace.converged);
            assert!(trace.final_network.degrees().iter().all(|&d| d == 3));
        }
    }

    #[test]
    fn given_start_must_match_roster() {
        let cfg = example1(6);
        let protocol = Protocol {
            start: StartPoint::Given(Network::empty(5)),
            seed: 0,
            max_rounds: 10,
        };
        assert!(evolve(&cfg, &protocol, StabilityMode::Plain).is_err());
    }

    #[test]
    fn given_start_repairs_a_deficient_network() {
        // Two agents short of the stable degree and not yet linked: the
        // dynamics must link them.
        let cfg = example1(6);
        let start = Network::from_edges(
            6,
            [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (4, 0), (5, 1)],
        )
        .unwrap();
        let protocol = Protocol {
            start: StartPoint::Given(start),
            seed: 3,
            max_rounds: 60,
        };
        let trace = evolve(&cfg, &protocol, StabilityMode::Plain).unwrap();
        assert!(trace.converged);
        assert!(trace.final_network.has_link(4, 5));
    }

    #[test]
    fn csv_has_pinned_header() {
        let cfg = example1(4);
        let trace = evolve(&cfg, &Protocol::from_null(1, 4), StabilityMode::Plain).unwrap();
        let mut buf = Vec::new();
        trace.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("round,kind,i,j,accepted,gain_i,gain_j,feasible_i,feasible_j\n"));
        assert_eq!(text.lines().count(), 1 + trace.steps.len());
    }
}
