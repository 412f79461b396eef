//! Agents, game parameters, and the undirected partnership network.
//!
//! A backup partnership network is a simple undirected graph on `n` labeled
//! agents. Each agent values its backed-up data, offers storage to partners,
//! has data of its own to place, and holds a budget for link maintenance.
//! Utility depends on the network only through the agent's own degree.

use std::collections::BTreeSet;
use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize};

use crate::error::{Error, Result};

/// Default tolerance for real-valued comparisons. Differences within this
/// bound count as equality, and a move must clear it to count as a strict
/// gain.
pub const DEFAULT_EPSILON: f64 = 1e-12;

/// Per-agent parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AgentParams {
    /// Worth the agent assigns to its backed-up data. Strictly positive.
    #[serde(rename = "beta")]
    pub data_value: f64,
    /// Storage offered to partners, in the same units as `data_size`.
    #[serde(rename = "s")]
    pub shared_storage: f64,
    /// Amount of data the agent places on each partner.
    #[serde(rename = "d")]
    pub data_size: f64,
    /// Budget for link maintenance, in the same units as the per-link cost.
    #[serde(rename = "b")]
    pub budget: f64,
}

impl AgentParams {
    pub fn new(data_value: f64, shared_storage: f64, data_size: f64, budget: f64) -> Result<Self> {
        let params = AgentParams {
            data_value,
            shared_storage,
            data_size,
            budget,
        };
        params.validate()?;
        Ok(params)
    }

    fn validate(&self) -> Result<()> {
        let all_finite = self.data_value.is_finite()
            && self.shared_storage.is_finite()
            && self.data_size.is_finite()
            && self.budget.is_finite();
        if !all_finite {
            return Err(Error::InvalidParameter(
                "agent parameters must be finite".into(),
            ));
        }
        if self.data_value <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "data value must be positive, got {}",
                self.data_value
            )));
        }
        if self.shared_storage < 0.0 || self.data_size < 0.0 || self.budget < 0.0 {
            return Err(Error::InvalidParameter(
                "storage, data size, and budget must be non-negative".into(),
            ));
        }
        Ok(())
    }
}

/// Which utility an agent maximizes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Framework {
    /// Expected backup value minus link-maintenance cost; storage limits
    /// constrain moves.
    #[serde(rename = "MO")]
    Mo,
    /// Expected backup value only; storage and budget limits constrain moves.
    #[serde(rename = "SO")]
    So,
}

impl fmt::Display for Framework {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Framework::Mo => "MO",
            Framework::So => "SO",
        })
    }
}

/// Symmetry class of a configuration, by exact parameter equality.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum NetworkClass {
    /// All agents share the same data value.
    #[serde(rename = "SVN")]
    Svn,
    /// All agents share the same storage, data size, and budget.
    #[serde(rename = "SRN")]
    Srn,
    /// Both of the above.
    #[serde(rename = "SV-SRN")]
    SvSrn,
    #[serde(rename = "general")]
    General,
}

impl fmt::Display for NetworkClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            NetworkClass::Svn => "SVN",
            NetworkClass::Srn => "SRN",
            NetworkClass::SvSrn => "SV-SRN",
            NetworkClass::General => "general",
        })
    }
}

/// Complete game description: framework, global failure rate and link cost,
/// and the agent roster.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GameConfig {
    pub framework: Framework,
    #[serde(rename = "lambda")]
    pub disk_failure_rate: f64,
    #[serde(rename = "c")]
    pub link_cost: f64,
    pub agents: Vec<AgentParams>,
    /// Comparison tolerance; not part of the wire format.
    #[serde(skip)]
    pub epsilon: f64,
}

impl GameConfig {
    pub fn new(
        framework: Framework,
        disk_failure_rate: f64,
        link_cost: f64,
        agents: Vec<AgentParams>,
    ) -> Result<Self> {
        if !(disk_failure_rate > 0.0 && disk_failure_rate < 1.0) {
            return Err(Error::InvalidParameter(format!(
                "disk failure rate must lie in (0, 1), got {disk_failure_rate}"
            )));
        }
        if !(link_cost > 0.0 && link_cost.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "link cost must be positive, got {link_cost}"
            )));
        }
        if agents.is_empty() {
            return Err(Error::InvalidParameter("at least one agent".into()));
        }
        for params in &agents {
            params.validate()?;
        }
        Ok(GameConfig {
            framework,
            disk_failure_rate,
            link_cost,
            agents,
            epsilon: DEFAULT_EPSILON,
        })
    }

    /// Roster of `n` identical agents.
    pub fn symmetric(
        framework: Framework,
        disk_failure_rate: f64,
        link_cost: f64,
        params: AgentParams,
        n: usize,
    ) -> Result<Self> {
        Self::new(framework, disk_failure_rate, link_cost, vec![params; n])
    }

    pub fn agent_count(&self) -> usize {
        self.agents.len()
    }

    pub fn agent(&self, index: usize) -> Result<&AgentParams> {
        self.agents.get(index).ok_or(Error::AgentIndex {
            index,
            count: self.agents.len(),
        })
    }

    /// True when `gain` clears the tolerance: ties are not strict gains.
    pub fn strict_gain(&self, gain: f64) -> bool {
        gain > self.epsilon
    }

    /// Tolerant `lhs >= rhs`.
    pub fn at_least(&self, lhs: f64, rhs: f64) -> bool {
        lhs - rhs >= -self.epsilon
    }

    pub fn approx_eq(&self, a: f64, b: f64) -> bool {
        (a - b).abs() <= self.epsilon
    }

    pub(crate) fn check_network(&self, net: &Network) -> Result<()> {
        if net.agent_count() != self.agents.len() {
            return Err(Error::SizeMismatch {
                network: net.agent_count(),
                config: self.agents.len(),
            });
        }
        Ok(())
    }
}

#[derive(Deserialize)]
struct SymmetricAgents {
    beta: f64,
    s: f64,
    d: f64,
    b: f64,
    n: usize,
}

#[derive(Deserialize)]
struct GameConfigRepr {
    framework: Framework,
    lambda: f64,
    c: f64,
    #[serde(default)]
    agents: Option<Vec<AgentParams>>,
    #[serde(default)]
    symmetric: Option<SymmetricAgents>,
}

impl<'de> Deserialize<'de> for GameConfig {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = GameConfigRepr::deserialize(deserializer)?;
        let agents = match (repr.agents, repr.symmetric) {
            (Some(agents), None) => agents,
            (None, Some(sym)) => {
                let params = AgentParams::new(sym.beta, sym.s, sym.d, sym.b)
                    .map_err(D::Error::custom)?;
                vec![params; sym.n]
            }
            _ => {
                return Err(D::Error::custom(
                    "config needs exactly one of \"agents\" or \"symmetric\"",
                ))
            }
        };
        GameConfig::new(repr.framework, repr.lambda, repr.c, agents).map_err(D::Error::custom)
    }
}

/// Most specific symmetry class matching the roster, by exact equality.
pub fn classify(cfg: &GameConfig) -> NetworkClass {
    let first = &cfg.agents[0];
    let value_symmetric = cfg.agents.iter().all(|a| a.data_value == first.data_value);
    let resource_symmetric = cfg.agents.iter().all(|a| {
        a.shared_storage == first.shared_storage
            && a.data_size == first.data_size
            && a.budget == first.budget
    });
    match (value_symmetric, resource_symmetric) {
        (true, true) => NetworkClass::SvSrn,
        (true, false) => NetworkClass::Svn,
        (false, true) => NetworkClass::Srn,
        (false, false) => NetworkClass::General,
    }
}

/// Simple undirected network on `n` labeled agents.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Network {
    neighbors: Vec<BTreeSet<usize>>,
    names: Option<Vec<String>>,
}

impl Network {
    /// Network with no links.
    pub fn empty(n: usize) -> Self {
        Network {
            neighbors: vec![BTreeSet::new(); n],
            names: None,
        }
    }

    /// Network in which every pair of agents is linked.
    pub fn complete(n: usize) -> Self {
        let mut net = Network::empty(n);
        for i in 0..n {
            for j in (i + 1)..n {
                net.neighbors[i].insert(j);
                net.neighbors[j].insert(i);
            }
        }
        net
    }

    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut net = Network::empty(n);
        for (i, j) in edges {
            net.add_link(i, j)?;
        }
        Ok(net)
    }

    pub fn agent_count(&self) -> usize {
        self.neighbors.len()
    }

    fn check_agent(&self, i: usize) -> Result<()> {
        if i >= self.neighbors.len() {
            return Err(Error::AgentIndex {
                index: i,
                count: self.neighbors.len(),
            });
        }
        Ok(())
    }

    /// Number of partners of agent `i`.
    pub fn degree(&self, i: usize) -> usize {
        self.neighbors[i].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.neighbors.iter().map(|set| set.len()).collect()
    }

    pub fn has_link(&self, i: usize, j: usize) -> bool {
        self.neighbors.get(i).is_some_and(|set| set.contains(&j))
    }

    pub fn add_link(&mut self, i: usize, j: usize) -> Result<()> {
        self.check_agent(i)?;
        self.check_agent(j)?;
        if i == j {
            return Err(Error::InvalidNetwork(format!("self-loop at agent {i}")));
        }
        if self.has_link(i, j) {
            return Err(Error::LinkPresent(i.min(j), i.max(j)));
        }
        self.neighbors[i].insert(j);
        self.neighbors[j].insert(i);
        Ok(())
    }

    pub fn remove_link(&mut self, i: usize, j: usize) -> Result<()> {
        self.check_agent(i)?;
        self.check_agent(j)?;
        if !self.has_link(i, j) {
            return Err(Error::LinkAbsent(i.min(j), i.max(j)));
        }
        self.neighbors[i].remove(&j);
        self.neighbors[j].remove(&i);
        Ok(())
    }

    pub fn with_link(&self, i: usize, j: usize) -> Result<Self> {
        let mut copy = self.clone();
        copy.add_link(i, j)?;
        Ok(copy)
    }

    pub fn without_link(&self, i: usize, j: usize) -> Result<Self> {
        let mut copy = self.clone();
        copy.remove_link(i, j)?;
        Ok(copy)
    }

    pub fn neighbors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.neighbors[i].iter().copied()
    }

    /// All links as `(i, j)` with `i < j`, sorted.
    pub fn links(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (i, set) in self.neighbors.iter().enumerate() {
            for &j in set.range((i + 1)..) {
                out.push((i, j));
            }
        }
        out
    }

    pub fn link_count(&self) -> usize {
        self.neighbors.iter().map(|set| set.len()).sum::<usize>() / 2
    }

    /// Partition of the agents into maximal connected sets. Each component is
    /// sorted ascending; components are ordered by their smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.neighbors.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut queue = vec![start];
            let mut members = Vec::new();
            seen[start] = true;
            while let Some(v) = queue.pop() {
                members.push(v);
                for &w in &self.neighbors[v] {
                    if !seen[w] {
                        seen[w] = true;
                        queue.push(w);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Optional display names; purely cosmetic.
    pub fn set_names(&mut self, names: Option<Vec<String>>) -> Result<()> {
        if let Some(ref list) = names {
            if list.len() != self.neighbors.len() {
                return Err(Error::InvalidNetwork(format!(
                    "{} names for {} agents",
                    list.len(),
                    self.neighbors.len()
                )));
            }
        }
        self.names = names;
        Ok(())
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    pub fn display_name(&self, i: usize) -> String {
        match &self.names {
            Some(list) => list[i].clone(),
            None => i.to_string(),
        }
    }

    /// Graphviz DOT rendering with one node per agent.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph network {\n");
        for i in 0..self.agent_count() {
            out.push_str(&format!("  {} [label=\"{}\"];\n", i, self.display_name(i)));
        }
        for (i, j) in self.links() {
            out.push_str(&format!("  {i} -- {j};\n"));
        }
        out.push_str("}\n");
        out
    }
}

#[derive(Serialize)]
struct NetworkRepr {
    n: usize,
    edges: Vec<(usize, usize)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    names: Option<Vec<String>>,
}

#[derive(Deserialize)]
struct NetworkReprIn {
    n: usize,
    edges: Vec<(usize, usize)>,
    #[serde(default)]
    names: Option<Vec<String>>,
}

impl Serialize for Network {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        NetworkRepr {
            n: self.agent_count(),
            edges: self.links(),
            names: self.names.clone(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Network {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = NetworkReprIn::deserialize(deserializer)?;
        let mut net = Network::from_edges(repr.n, repr.edges).map_err(D::Error::custom)?;
        net.set_names(repr.names).map_err(D::Error::custom)?;
        Ok(net)
    }
}

/// Degree of agent `i`, with index checking.
pub fn degree(net: &Network, i: usize) -> Result<usize> {
    net.check_agent(i)?;
    Ok(net.degree(i))
}

/// Utility agent `i` would have at the given degree, independent of which
/// particular partners provide it.
pub fn utility_at_degree(cfg: &GameConfig, agent: usize, degree: usize) -> Result<f64> {
    let params = cfg.agent(agent)?;
    let expected_value =
        params.data_value * (1.0 - cfg.disk_failure_rate.powi(degree as i32));
    Ok(match cfg.framework {
        Framework::Mo => expected_value - cfg.link_cost * degree as f64,
        Framework::So => expected_value,
    })
}

/// Utility of agent `i` in the given network.
pub fn utility(cfg: &GameConfig, net: &Network, i: usize) -> Result<f64> {
    cfg.check_network(net)?;
    net.check_agent(i)?;
    utility_at_degree(cfg, i, net.degree(i))
}

/// Sum of all agents' utilities.
pub fn total_welfare(cfg: &GameConfig, net: &Network) -> Result<f64> {
    cfg.check_network(net)?;
    (0..net.agent_count())
        .map(|i| utility_at_degree(cfg, i, net.degree(i)))
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn example_params() -> AgentParams {
        AgentParams::new(0.6, 60.0, 20.0, 0.5).unwrap()
    }

    fn example_config(n: usize) -> GameConfig {
        GameConfig::symmetric(Framework::Mo, 0.2, 0.0055, example_params(), n).unwrap()
    }

    #[test]
    fn degree_examples() {
        let empty = Network::empty(3);
        assert_eq!(degree(&empty, 0).unwrap(), 0);

        let complete = Network::complete(5);
        assert_eq!(degree(&complete, 2).unwrap(), 4);

        // Six agents at degree three plus one at degree two.
        let near = crate::structure::construct_near_regular(
            7,
            3,
            crate::structure::NearRegular::OneBelow,
        )
        .unwrap();
        let mut degrees = near.degrees();
        degrees.sort_unstable();
        assert_eq!(degrees, vec![2, 3, 3, 3, 3, 3, 3]);

        assert!(matches!(
            degree(&empty, 7),
            Err(Error::AgentIndex { index: 7, count: 3 })
        ));
    }

    #[test]
    fn utility_examples() {
        let cfg = example_config(6);
        assert_eq!(utility_at_degree(&cfg, 0, 0).unwrap(), 0.0);
        assert!((utility_at_degree(&cfg, 0, 3).unwrap() - 0.5787).abs() < 1e-12);

        let so = GameConfig::symmetric(Framework::So, 0.2, 0.0055, example_params(), 6).unwrap();
        assert!((utility_at_degree(&so, 0, 3).unwrap() - 0.5952).abs() < 1e-12);
    }

    #[test]
    fn utility_checks_consistency() {
        let cfg = example_config(6);
        let net = Network::empty(5);
        assert!(matches!(
            utility(&cfg, &net, 0),
            Err(Error::SizeMismatch { .. })
        ));
    }

    #[test]
    fn welfare_examples() {
        let cfg = example_config(6);
        assert_eq!(total_welfare(&cfg, &Network::empty(6)).unwrap(), 0.0);

        let regular = crate::structure::construct_regular(6, 3).unwrap();
        assert!((total_welfare(&cfg, &regular).unwrap() - 3.4722).abs() < 1e-12);

        let so = GameConfig::symmetric(Framework::So, 0.2, 0.0055, example_params(), 4).unwrap();
        let complete = Network::complete(4);
        assert!((total_welfare(&so, &complete).unwrap() - 2.3808).abs() < 1e-12);
    }

    #[test]
    fn classify_examples() {
        let cfg = example_config(4);
        assert_eq!(classify(&cfg), NetworkClass::SvSrn);

        let svn = GameConfig::new(
            Framework::Mo,
            0.2,
            0.0055,
            vec![
                AgentParams::new(0.6, 60.0, 20.0, 0.5).unwrap(),
                AgentParams::new(0.6, 50.0, 20.0, 0.5).unwrap(),
            ],
        )
        .unwrap();
        assert_eq!(classify(&svn), NetworkClass::Svn);

        let srn = GameConfig::new(
            Framework::Mo,
            0.2,
            0.0055,
            vec![
                AgentParams::new(0.6, 60.0, 20.0, 0.5).unwrap(),
                AgentParams::new(0.7, 60.0, 20.0, 0.5).unwrap(),
            ],
        )
        .unwrap();
        assert_eq!(classify(&srn), NetworkClass::Srn);

        let general = GameConfig::new(
            Framework::Mo,
            0.2,
            0.0055,
            vec![
                AgentParams::new(0.6, 60.0, 20.0, 0.5).unwrap(),
                AgentParams::new(0.7, 50.0, 20.0, 0.5).unwrap(),
            ],
        )
        .unwrap();
        assert_eq!(classify(&general), NetworkClass::General);
    }

    #[test]
    fn component_examples() {
        let null = Network::empty(4);
        assert_eq!(null.components(), vec![vec![0], vec![1], vec![2], vec![3]]);

        let complete = Network::complete(6);
        assert_eq!(complete.components().len(), 1);
        assert_eq!(complete.components()[0].len(), 6);

        // Three disjoint five-agent blocks.
        let part = crate::structure::construct_near_regular(
            5,
            3,
            crate::structure::NearRegular::OneAbove,
        )
        .unwrap();
        let net = crate::structure::disjoint_union(&[part.clone(), part.clone(), part]);
        let comps = net.components();
        assert_eq!(comps.len(), 3);
        assert!(comps.iter().all(|c| c.len() == 5));
    }

    #[test]
    fn mo_forward_difference_decreases() {
        let cfg = example_config(2);
        let mut last = f64::INFINITY;
        for eta in 0..=20 {
            let diff = utility_at_degree(&cfg, 0, eta + 1).unwrap()
                - utility_at_degree(&cfg, 0, eta).unwrap();
            assert!(diff < last);
            last = diff;
        }
    }

    #[test]
    fn so_utility_increases_with_degree() {
        let cfg = GameConfig::symmetric(Framework::So, 0.37, 0.01, example_params(), 2).unwrap();
        for eta in 0..20 {
            assert!(
                utility_at_degree(&cfg, 0, eta + 1).unwrap()
                    > utility_at_degree(&cfg, 0, eta).unwrap()
            );
        }
    }

    #[test]
    fn utility_depends_only_on_degree() {
        let cfg = example_config(6);
        // Two different networks giving agent 0 the same degree.
        let a = Network::from_edges(6, [(0, 1), (0, 2), (3, 4)]).unwrap();
        let b = Network::from_edges(6, [(0, 4), (0, 5), (1, 2)]).unwrap();
        assert_eq!(utility(&cfg, &a, 0).unwrap(), utility(&cfg, &b, 0).unwrap());
    }

    #[test]
    fn network_validation() {
        let mut net = Network::empty(3);
        assert!(net.add_link(0, 0).is_err());
        net.add_link(0, 1).unwrap();
        assert!(matches!(net.add_link(1, 0), Err(Error::LinkPresent(0, 1))));
        assert!(matches!(net.remove_link(1, 2), Err(Error::LinkAbsent(1, 2))));
        assert!(net.add_link(0, 9).is_err());
    }

    #[test]
    fn config_invariants_enforced() {
        let params = example_params();
        assert!(GameConfig::symmetric(Framework::Mo, 0.0, 0.1, params, 3).is_err());
        assert!(GameConfig::symmetric(Framework::Mo, 1.0, 0.1, params, 3).is_err());
        assert!(GameConfig::symmetric(Framework::Mo, 0.2, 0.0, params, 3).is_err());
        assert!(GameConfig::symmetric(Framework::Mo, 0.2, 0.1, params, 0).is_err());
        assert!(AgentParams::new(0.0, 1.0, 1.0, 1.0).is_err());
        assert!(AgentParams::new(0.5, -1.0, 1.0, 1.0).is_err());
    }
}
