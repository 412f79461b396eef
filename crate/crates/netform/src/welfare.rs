//! Efficiency and contentment analysis, plus the dummy-storage advisor.
//!
//! A network is efficient when no other network on the same roster has
//! higher total utility (subject to the framework's resource constraints),
//! and contented when every agent individually attains its best achievable
//! utility. Contentment implies efficiency implies bilateral stability.
//!
//! For symmetric rosters the welfare maximum has a closed form: utility
//! depends only on degree, so the optimum is the per-agent best degree for
//! everyone when that is realizable, and otherwise all-but-one at the best
//! degree with the last agent one step off, the step direction picked by
//! comparing the link cost against half the marginal-value spread. For
//! heterogeneous rosters the maximum is found by exhaustive enumeration,
//! which is only available at small population sizes.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{
    classify, total_welfare, utility, utility_at_degree, Framework, GameConfig, Network,
    NetworkClass,
};
use crate::stability::StabilityMode;
use crate::stability_point::ratio_cap;
use crate::structure::{realize_degree_sequence, DegreeSequence};

/// Population bound for enumeration-backed welfare maxima.
pub const GENERAL_CLASS_LIMIT: usize = 6;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WelfareReport {
    pub welfare: f64,
    pub max_welfare: f64,
    pub efficient: bool,
    pub contented: bool,
    /// Best achievable utility minus actual utility, per agent.
    pub per_agent_gap: Vec<f64>,
    pub optimal_degree_profile: DegreeSequence,
    /// Second optimal profile when the cost sits exactly on the threshold
    /// between the one-above and one-below completions.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alternate_profile: Option<DegreeSequence>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ContentmentReport {
    pub contented: bool,
    pub per_agent_gap: Vec<f64>,
}

/// Whether every agent's current allocation fits its resources, under the
/// constraint set implied by the framework.
fn state_feasible(cfg: &GameConfig, net: &Network, mode: StabilityMode) -> bool {
    crate::stability::overcommitted_agents(cfg, net, mode).is_empty()
}

/// Largest degree agent `i` can hold: population, storage for the partners'
/// data (taking the smallest data sizes first), and budget under value-only
/// play.
pub(crate) fn max_feasible_degree(cfg: &GameConfig, agent: usize) -> usize {
    let n = cfg.agent_count();
    let params = &cfg.agents[agent];
    let mut limit = n - 1;

    let mut other_data: Vec<f64> = (0..n)
        .filter(|&j| j != agent)
        .map(|j| cfg.agents[j].data_size)
        .collect();
    other_data.sort_unstable_by(|a, b| a.partial_cmp(b).unwrap());
    let mut hosted = 0.0;
    let mut storage_limit = 0;
    for data in other_data {
        hosted += data;
        if hosted > params.shared_storage + cfg.epsilon {
            break;
        }
        storage_limit += 1;
    }
    limit = limit.min(storage_limit);

    if cfg.framework == Framework::So {
        if let Some(budget_limit) = ratio_cap(params.budget, cfg.link_cost, cfg.epsilon) {
            limit = limit.min(budget_limit);
        }
    }
    limit
}

/// Best utility agent `i` can achieve at any feasible degree, and the
/// smallest degree attaining it.
fn per_agent_best(cfg: &GameConfig, agent: usize) -> Result<(f64, usize)> {
    let cap = max_feasible_degree(cfg, agent);
    let mut best = f64::NEG_INFINITY;
    let mut best_degree = 0;
    for degree in 0..=cap {
        let value = utility_at_degree(cfg, agent, degree)?;
        if value > best + cfg.epsilon {
            best = value;
            best_degree = degree;
        }
    }
    Ok((best, best_degree))
}

fn gaps(cfg: &GameConfig, net: &Network) -> Result<Vec<f64>> {
    (0..net.agent_count())
        .map(|i| {
            let (best, _) = per_agent_best(cfg, i)?;
            let actual = utility(cfg, net, i)?;
            Ok(best - actual)
        })
        .collect()
}

/// Contentment check: every agent at its individually best achievable
/// utility, within tolerance. A negative gap marks an agent whose current
/// allocation exceeds its resources (only possible in hand-built states);
/// such an agent is not contented either, its utility being unattainable.
pub fn is_contented(cfg: &GameConfig, net: &Network) -> Result<ContentmentReport> {
    cfg.check_network(net)?;
    let per_agent_gap = gaps(cfg, net)?;
    Ok(ContentmentReport {
        contented: per_agent_gap.iter().all(|&g| g.abs() <= cfg.epsilon),
        per_agent_gap,
    })
}

fn symmetric_max(cfg: &GameConfig) -> Result<(f64, DegreeSequence, Option<DegreeSequence>)> {
    let n = cfg.agent_count();
    let (_, eta_star) = per_agent_best(cfg, 0)?;
    let u = |degree: usize| utility_at_degree(cfg, 0, degree);

    if (n * eta_star).is_multiple_of(2) {
        let profile = DegreeSequence::new(vec![eta_star; n]);
        if realize_degree_sequence(&profile).is_none() {
            return Err(Error::Infeasible(format!("profile {profile} not graphical")));
        }
        return Ok((n as f64 * u(eta_star)?, profile, None));
    }

    // Odd population at an odd best degree: all-but-one at the best degree,
    // the last one step off. The step up is only available when it stays
    // within the resource cap.
    let mut down = vec![eta_star; n - 1];
    down.push(eta_star - 1);
    let down_profile = DegreeSequence::new(down);
    let down_welfare = (n - 1) as f64 * u(eta_star)? + u(eta_star - 1)?;

    let up_allowed = eta_star < max_feasible_degree(cfg, 0);
    let (max_welfare, profile, alternate) = if up_allowed {
        let mut up = vec![eta_star; n - 1];
        up.push(eta_star + 1);
        let up_profile = DegreeSequence::new(up);
        let up_welfare = (n - 1) as f64 * u(eta_star)? + u(eta_star + 1)?;
        if (up_welfare - down_welfare).abs() <= cfg.epsilon {
            (up_welfare, up_profile, Some(down_profile))
        } else if up_welfare > down_welfare {
            (up_welfare, up_profile, None)
        } else {
            (down_welfare, down_profile, None)
        }
    } else {
        (down_welfare, down_profile, None)
    };

    if realize_degree_sequence(&profile).is_none() {
        return Err(Error::Infeasible(format!("profile {profile} not graphical")));
    }
    Ok((max_welfare, profile, alternate))
}

fn enumerated_max(cfg: &GameConfig) -> Result<(f64, DegreeSequence)> {
    let n = cfg.agent_count();
    if n > GENERAL_CLASS_LIMIT {
        return Err(Error::TooManyAgents {
            requested: n,
            limit: GENERAL_CLASS_LIMIT,
        });
    }
    let mode = StabilityMode::implied_by(cfg.framework);
    let mut best = f64::NEG_INFINITY;
    let mut best_profile = DegreeSequence::new(vec![0; n]);
    for net in crate::oracle::enumerate_graphs(n)? {
        if !state_feasible(cfg, &net, mode) {
            continue;
        }
        let welfare = total_welfare(cfg, &net)?;
        if welfare > best {
            best = welfare;
            best_profile = DegreeSequence::of(&net);
        }
    }
    Ok((best, best_profile))
}

/// Full welfare report: actual and maximal welfare, efficiency and
/// contentment verdicts, per-agent gaps, and the optimal degree profile.
///
/// The closed form applies when utility is a single function of degree with
/// a common resource cap: fully symmetric rosters always, and value-symmetric
/// rosters when no agent's resources bind. Everything else falls back to
/// enumeration.
pub fn is_efficient(cfg: &GameConfig, net: &Network) -> Result<WelfareReport> {
    cfg.check_network(net)?;
    let n = cfg.agent_count();
    let welfare = total_welfare(cfg, net)?;
    let closed_form = match classify(cfg) {
        NetworkClass::SvSrn => true,
        NetworkClass::Svn => (0..n).all(|i| max_feasible_degree(cfg, i) == n - 1),
        NetworkClass::Srn | NetworkClass::General => false,
    };
    let (max_welfare, optimal_degree_profile, alternate_profile) = if closed_form {
        symmetric_max(cfg)?
    } else {
        let (max, profile) = enumerated_max(cfg)?;
        (max, profile, None)
    };
    let contentment = is_contented(cfg, net)?;
    Ok(WelfareReport {
        welfare,
        max_welfare,
        efficient: (max_welfare - welfare).abs() <= cfg.epsilon,
        contented: contentment.contented,
        per_agent_gap: contentment.per_agent_gap,
        optimal_degree_profile,
        alternate_profile,
    })
}

/// One dummy storage device: it consents to every proposed link, its own
/// utility is ignored, and `capacity` bounds the total data it hosts
/// (`None` = unbounded).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DummySpec {
    pub capacity: Option<f64>,
    pub links: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DummyPlan {
    pub dummies: Vec<DummySpec>,
    /// Agents whose shortfall cannot be repaired by adding storage targets
    /// (they hold more links than their best degree already).
    #[serde(skip)]
    pub unresolved: Vec<usize>,
}

/// Smallest set of dummy storage devices that lifts every shortchanged agent
/// to its best achievable utility.
///
/// An agent short `k` links needs `k` distinct dummies (one copy per
/// partner), so with unbounded capacity the plan holds one dummy per
/// shortfall layer: dummy `k` links to every agent missing more than `k`
/// links. With bounded capacity each layer splits first-fit by the agents'
/// data sizes. Already-contented rosters get an empty plan.
pub fn suggest_dummies(
    cfg: &GameConfig,
    net: &Network,
    capacity: Option<f64>,
) -> Result<DummyPlan> {
    cfg.check_network(net)?;
    let mut shortfall = vec![0usize; net.agent_count()];
    let mut unresolved = Vec::new();
    for i in 0..net.agent_count() {
        let (best, best_degree) = per_agent_best(cfg, i)?;
        let actual = utility(cfg, net, i)?;
        if best - actual <= cfg.epsilon {
            continue;
        }
        let degree = net.degree(i);
        if degree < best_degree {
            shortfall[i] = best_degree - degree;
        } else {
            unresolved.push(i);
        }
    }

    let layers = shortfall.iter().copied().max().unwrap_or(0);
    let mut dummies = Vec::new();
    for layer in 0..layers {
        let members: Vec<usize> = (0..net.agent_count())
            .filter(|&i| shortfall[i] > layer)
            .collect();
        match capacity {
            None => dummies.push(DummySpec {
                capacity: None,
                links: members,
            }),
            Some(cap) => {
                // First-fit split of the layer by hosted data.
                let mut open: Vec<(f64, Vec<usize>)> = Vec::new();
                for i in members {
                    let data = cfg.agents[i].data_size;
                    match open
                        .iter_mut()
                        .find(|(used, _)| *used + data <= cap + cfg.epsilon)
                    {
                        Some((used, links)) => {
                            *used += data;
                            links.push(i);
                        }
                        None => open.push((data, vec![i])),
                    }
                }
                for (_, links) in open {
                    dummies.push(DummySpec {
                        capacity: Some(cap),
                        links,
                    });
                }
            }
        }
    }
    Ok(DummyPlan {
        dummies,
        unresolved,
    })
}

/// Materializes a dummy plan: appends one agent per dummy (no data of its
/// own, enough storage and budget for its links) and wires the planned
/// links. Returns the extended roster and network; contentment over the
/// original agents is then checkable directly.
pub fn apply_dummy_plan(
    cfg: &GameConfig,
    net: &Network,
    plan: &DummyPlan,
) -> Result<(GameConfig, Network)> {
    let n = net.agent_count();
    let mut agents = cfg.agents.clone();
    for dummy in &plan.dummies {
        let hosted: f64 = dummy.links.iter().map(|&i| cfg.agents[i].data_size).sum();
        agents.push(crate::model::AgentParams {
            data_value: 1.0,
            shared_storage: dummy.capacity.unwrap_or(hosted + 1.0),
            data_size: 0.0,
            budget: cfg.link_cost * dummy.links.len() as f64,
        });
    }
    let extended_cfg = GameConfig::new(
        cfg.framework,
        cfg.disk_failure_rate,
        cfg.link_cost,
        agents,
    )?;
    let mut extended_net = Network::empty(n + plan.dummies.len());
    for (i, j) in net.links() {
        extended_net.add_link(i, j)?;
    }
    for (k, dummy) in plan.dummies.iter().enumerate() {
        for &i in &dummy.links {
            extended_net.add_link(i, n + k)?;
        }
    }
    Ok((extended_cfg, extended_net))
}
