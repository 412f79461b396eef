//! Deviation gains, resource feasibility, and bilateral-stability checking.
//!
//! A network is bilaterally stable when no linked pair mutually profits from
//! deleting its link and no unlinked pair mutually profits from a feasible
//! addition. Both operations require consent from both sides, so a single
//! refusal blocks the move.
//!
//! Two checkers are provided: [`is_bilaterally_stable`] evaluates the
//! definition directly from utility differences, and
//! [`check_theorem_conditions`] evaluates the equivalent closed-form
//! inequalities available for symmetric configurations. They must agree on
//! every input; the exhaustive tests in the `oracle` module enforce this.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{classify, utility_at_degree, Framework, GameConfig, Network, NetworkClass};

/// Which deviation constraints apply when a pair considers adding a link.
/// Deletion is never resource-constrained: it frees resources.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum StabilityMode {
    /// Utility comparisons only.
    #[serde(rename = "plain")]
    Plain,
    /// The prospective partner must have room for the proposer's data.
    #[serde(rename = "storage")]
    StorageConstrained,
    /// Storage as above, plus the proposer must be able to afford the link.
    #[serde(rename = "storage-budget")]
    StorageBudgetConstrained,
}

impl StabilityMode {
    /// Conventional pairing: cost-in-utility play uses storage checks, and
    /// budget-constrained play checks storage and budget.
    pub fn implied_by(framework: Framework) -> Self {
        match framework {
            Framework::Mo => StabilityMode::StorageConstrained,
            Framework::So => StabilityMode::StorageBudgetConstrained,
        }
    }

    fn checks_storage(self) -> bool {
        !matches!(self, StabilityMode::Plain)
    }

    fn checks_budget(self) -> bool {
        matches!(self, StabilityMode::StorageBudgetConstrained)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum DeviationKind {
    #[serde(rename = "add")]
    Add,
    #[serde(rename = "delete")]
    Delete,
}

/// A single mutually profitable, feasible move discovered by a checker.
/// `gain_i` belongs to the smaller index of `pair`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Deviation {
    pub kind: DeviationKind,
    pub pair: (usize, usize),
    pub gain_i: f64,
    pub gain_j: f64,
    #[serde(skip)]
    pub feasible: bool,
}

/// Verdict plus the complete list of violating moves, in pair order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StabilityReport {
    pub stable: bool,
    pub mode: StabilityMode,
    pub violations: Vec<Deviation>,
    /// Agents whose current allocation already exceeds their resources.
    /// Hand-built networks may be in such states; the definitions constrain
    /// moves, not states, so this is a warning rather than an error.
    #[serde(skip)]
    pub overcommitted_agents: Vec<usize>,
}

/// Storage left after hosting every neighbor's data. May be negative for
/// hand-built networks; reported as-is.
pub fn remaining_storage(cfg: &GameConfig, net: &Network, i: usize) -> Result<f64> {
    cfg.check_network(net)?;
    let params = cfg.agent(i)?;
    let hosted: f64 = net.neighbors(i).map(|j| cfg.agents[j].data_size).sum();
    Ok(params.shared_storage - hosted)
}

/// Budget left after paying for every maintained link.
pub fn remaining_budget(cfg: &GameConfig, net: &Network, i: usize) -> Result<f64> {
    cfg.check_network(net)?;
    let params = cfg.agent(i)?;
    Ok(params.budget - cfg.link_cost * net.degree(i) as f64)
}

/// Utility change for agent `i` if the absent link `{i, j}` were added.
pub fn gain_from_add(cfg: &GameConfig, net: &Network, i: usize, j: usize) -> Result<f64> {
    cfg.check_network(net)?;
    cfg.agent(i)?;
    cfg.agent(j)?;
    if net.has_link(i, j) {
        return Err(Error::LinkPresent(i.min(j), i.max(j)));
    }
    let eta = net.degree(i);
    Ok(utility_at_degree(cfg, i, eta + 1)? - utility_at_degree(cfg, i, eta)?)
}

/// Utility change for agent `i` if the present link `{i, j}` were deleted.
pub fn gain_from_delete(cfg: &GameConfig, net: &Network, i: usize, j: usize) -> Result<f64> {
    cfg.check_network(net)?;
    cfg.agent(i)?;
    cfg.agent(j)?;
    if !net.has_link(i, j) {
        return Err(Error::LinkAbsent(i.min(j), i.max(j)));
    }
    let eta = net.degree(i);
    Ok(utility_at_degree(cfg, i, eta - 1)? - utility_at_degree(cfg, i, eta)?)
}

/// Whether agent `i`'s side of adding `{i, j}` is resource-feasible.
///
/// The responsibility split is asymmetric: `i` needs the partner to have room
/// for `i`'s data, and (under budget checking) needs its own budget to cover
/// the new link. Whether `i` has room for `j`'s data is `j`'s side of the
/// question; callers query both sides.
pub fn add_feasible(
    cfg: &GameConfig,
    net: &Network,
    i: usize,
    j: usize,
    mode: StabilityMode,
) -> Result<bool> {
    cfg.check_network(net)?;
    cfg.agent(i)?;
    cfg.agent(j)?;
    if net.has_link(i, j) {
        return Err(Error::LinkPresent(i.min(j), i.max(j)));
    }
    if mode.checks_storage() {
        let partner_room = remaining_storage(cfg, net, j)?;
        if !cfg.at_least(partner_room, cfg.agents[i].data_size) {
            return Ok(false);
        }
    }
    if mode.checks_budget() {
        let own_budget = remaining_budget(cfg, net, i)?;
        if !cfg.at_least(own_budget, cfg.link_cost) {
            return Ok(false);
        }
    }
    Ok(true)
}

pub(crate) fn overcommitted_agents(
    cfg: &GameConfig,
    net: &Network,
    mode: StabilityMode,
) -> Vec<usize> {
    (0..net.agent_count())
        .filter(|&i| {
            let storage_bad = mode.checks_storage()
                && !cfg.at_least(remaining_storage(cfg, net, i).unwrap(), 0.0);
            let budget_bad = mode.checks_budget()
                && !cfg.at_least(remaining_budget(cfg, net, i).unwrap(), 0.0);
            storage_bad || budget_bad
        })
        .collect()
}

/// Definition-literal bilateral-stability check.
///
/// Scans every unordered pair and records each mutually profitable feasible
/// move. The scan is exhaustive rather than short-circuiting, so reports are
/// deterministic and complete.
pub fn is_bilaterally_stable(
    cfg: &GameConfig,
    net: &Network,
    mode: StabilityMode,
) -> Result<StabilityReport> {
    cfg.check_network(net)?;
    let n = net.agent_count();
    let mut violations = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            if net.has_link(i, j) {
                let gain_i = gain_from_delete(cfg, net, i, j)?;
                let gain_j = gain_from_delete(cfg, net, j, i)?;
                if cfg.strict_gain(gain_i) && cfg.strict_gain(gain_j) {
                    violations.push(Deviation {
                        kind: DeviationKind::Delete,
                        pair: (i, j),
                        gain_i,
                        gain_j,
                        feasible: true,
                    });
                }
            } else {
                let gain_i = gain_from_add(cfg, net, i, j)?;
                let gain_j = gain_from_add(cfg, net, j, i)?;
                if cfg.strict_gain(gain_i)
                    && cfg.strict_gain(gain_j)
                    && add_feasible(cfg, net, i, j, mode)?
                    && add_feasible(cfg, net, j, i, mode)?
                {
                    violations.push(Deviation {
                        kind: DeviationKind::Add,
                        pair: (i, j),
                        gain_i,
                        gain_j,
                        feasible: true,
                    });
                }
            }
        }
    }
    Ok(StabilityReport {
        stable: violations.is_empty(),
        mode,
        violations,
        overcommitted_agents: overcommitted_agents(cfg, net, mode),
    })
}

/// Marginal backup value of moving from `degree` to `degree + 1` partners.
pub(crate) fn add_marginal(data_value: f64, failure_rate: f64, degree: usize) -> f64 {
    data_value * (failure_rate.powi(degree as i32) - failure_rate.powi(degree as i32 + 1))
}

/// Backup value lost by moving from `degree` to `degree - 1` partners.
pub(crate) fn delete_marginal(data_value: f64, failure_rate: f64, degree: usize) -> f64 {
    debug_assert!(degree >= 1);
    add_marginal(data_value, failure_rate, degree - 1)
}

/// Closed-form stability check for symmetric configurations.
///
/// Each supported (class, framework) row reduces bilateral stability to
/// inequalities between the per-link cost, the marginal backup value at the
/// endpoints' degrees, and the remaining-resource terms. The returned
/// report's `mode` names the deviation-constraint mode the row is equivalent
/// to, so callers can cross-check against [`is_bilaterally_stable`].
///
/// Value-symmetric rows assume resources never bind (the sufficient-resource
/// regime) and therefore pair with [`StabilityMode::Plain`].
pub fn check_theorem_conditions(cfg: &GameConfig, net: &Network) -> Result<StabilityReport> {
    cfg.check_network(net)?;
    let class = classify(cfg);
    match (class, cfg.framework) {
        (NetworkClass::Svn | NetworkClass::SvSrn, Framework::Mo) => {
            let storage_checked = class == NetworkClass::SvSrn;
            Ok(closed_form_mo(cfg, net, storage_checked))
        }
        (NetworkClass::Svn, Framework::So) => Ok(closed_form_complete(cfg, net)),
        (NetworkClass::Srn | NetworkClass::SvSrn, Framework::So) => {
            Ok(closed_form_resource_so(cfg, net))
        }
        _ => Err(Error::UnsupportedClass {
            class,
            framework: cfg.framework,
        }),
    }
}

/// Cost-in-utility rows: a deletion violates stability when the cost exceeds
/// both endpoints' marginal value; an addition violates it when both
/// endpoints' marginal value exceeds the cost (and, for the
/// resource-symmetric row, both ends have storage room).
fn closed_form_mo(cfg: &GameConfig, net: &Network, storage_checked: bool) -> StabilityReport {
    let value = cfg.agents[0].data_value;
    let rate = cfg.disk_failure_rate;
    let cost = cfg.link_cost;
    let storage = cfg.agents[0].shared_storage;
    let data = cfg.agents[0].data_size;
    let n = net.agent_count();

    let room_for_one_more = |eta: usize| -> bool {
        !storage_checked || cfg.at_least(storage - data * eta as f64, data)
    };

    let mut violations = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            let (eta_i, eta_j) = (net.degree(i), net.degree(j));
            if net.has_link(i, j) {
                let keep_i = delete_marginal(value, rate, eta_i);
                let keep_j = delete_marginal(value, rate, eta_j);
                if cfg.strict_gain(cost - keep_i) && cfg.strict_gain(cost - keep_j) {
                    violations.push(Deviation {
                        kind: DeviationKind::Delete,
                        pair: (i, j),
                        gain_i: cost - keep_i,
                        gain_j: cost - keep_j,
                        feasible: true,
                    });
                }
            } else {
                let want_i = add_marginal(value, rate, eta_i);
                let want_j = add_marginal(value, rate, eta_j);
                if cfg.strict_gain(want_i - cost)
                    && cfg.strict_gain(want_j - cost)
                    && room_for_one_more(eta_j)
                    && room_for_one_more(eta_i)
                {
                    violations.push(Deviation {
                        kind: DeviationKind::Add,
                        pair: (i, j),
                        gain_i: want_i - cost,
                        gain_j: want_j - cost,
                        feasible: true,
                    });
                }
            }
        }
    }
    let mode = if storage_checked {
        StabilityMode::StorageConstrained
    } else {
        StabilityMode::Plain
    };
    StabilityReport {
        stable: violations.is_empty(),
        mode,
        violations,
        overcommitted_agents: overcommitted_agents(cfg, net, mode),
    }
}

/// Value-symmetric, budget-free row: every addition pays, so only the
/// complete network is stable.
fn closed_form_complete(cfg: &GameConfig, net: &Network) -> StabilityReport {
    let rate = cfg.disk_failure_rate;
    let n = net.agent_count();
    let mut violations = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            if net.has_link(i, j) {
                continue;
            }
            let gain_i = add_marginal(cfg.agents[i].data_value, rate, net.degree(i));
            let gain_j = add_marginal(cfg.agents[j].data_value, rate, net.degree(j));
            if cfg.strict_gain(gain_i) && cfg.strict_gain(gain_j) {
                violations.push(Deviation {
                    kind: DeviationKind::Add,
                    pair: (i, j),
                    gain_i,
                    gain_j,
                    feasible: true,
                });
            }
        }
    }
    StabilityReport {
        stable: violations.is_empty(),
        mode: StabilityMode::Plain,
        violations,
        overcommitted_agents: Vec::new(),
    }
}

/// Resource-symmetric, budget-constrained row: deletions never pay; an
/// addition violates stability exactly when both sides can afford it and
/// both sides have room for the other's data.
fn closed_form_resource_so(cfg: &GameConfig, net: &Network) -> StabilityReport {
    let rate = cfg.disk_failure_rate;
    let cost = cfg.link_cost;
    let storage = cfg.agents[0].shared_storage;
    let data = cfg.agents[0].data_size;
    let budget = cfg.agents[0].budget;
    let n = net.agent_count();

    let has_room = |eta: usize| cfg.at_least(storage - data * eta as f64, data);
    let can_afford = |eta: usize| cfg.at_least(budget - cost * eta as f64, cost);

    let mut violations = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            if net.has_link(i, j) {
                continue;
            }
            let (eta_i, eta_j) = (net.degree(i), net.degree(j));
            let gain_i = add_marginal(cfg.agents[i].data_value, rate, eta_i);
            let gain_j = add_marginal(cfg.agents[j].data_value, rate, eta_j);
            if cfg.strict_gain(gain_i)
                && cfg.strict_gain(gain_j)
                && can_afford(eta_i)
                && has_room(eta_j)
                && can_afford(eta_j)
                && has_room(eta_i)
            {
                violations.push(Deviation {
                    kind: DeviationKind::Add,
                    pair: (i, j),
                    gain_i,
                    gain_j,
                    feasible: true,
                });
            }
        }
    }
    let mode = StabilityMode::StorageBudgetConstrained;
    StabilityReport {
        stable: violations.is_empty(),
        mode,
        violations,
        overcommitted_agents: overcommitted_agents(cfg, net, mode),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::AgentParams;
    use crate::structure::{construct_near_regular, construct_regular, disjoint_union, NearRegular};

    fn example1(n: usize) -> GameConfig {
        let params = AgentParams::new(0.6, 1000.0, 1.0, 1000.0).unwrap();
        GameConfig::symmetric(Framework::Mo, 0.2, 0.0055, params, n).unwrap()
    }

    fn example3(n: usize) -> GameConfig {
        let params = AgentParams::new(0.6, 60.0, 20.0, 0.5).unwrap();
        GameConfig::symmetric(Framework::So, 0.2, 0.1, params, n).unwrap()
    }

    #[test]
    fn remaining_storage_examples() {
        let cfg = example3(6);
        let empty = Network::empty(6);
        assert_eq!(remaining_storage(&cfg, &empty, 0).unwrap(), 60.0);

        let regular = construct_regular(6, 3).unwrap();
        assert_eq!(remaining_storage(&cfg, &regular, 0).unwrap(), 0.0);

        let params = AgentParams::new(0.6, 60.0, 10.0, 0.5).unwrap();
        let cfg = GameConfig::symmetric(Framework::So, 0.2, 0.1, params, 6).unwrap();
        let four = construct_regular(6, 4).unwrap();
        assert_eq!(remaining_storage(&cfg, &four, 0).unwrap(), 20.0);
    }

    #[test]
    fn remaining_budget_examples() {
        let cfg = example3(6);
        assert!((remaining_budget(&cfg, &Network::empty(6), 0).unwrap() - 0.5).abs() < 1e-12);

        let regular = construct_regular(6, 3).unwrap();
        assert!((remaining_budget(&cfg, &regular, 0).unwrap() - 0.2).abs() < 1e-12);

        let params = AgentParams::new(0.6, 60.0, 10.0, 0.4).unwrap();
        let cfg = GameConfig::symmetric(Framework::So, 0.2, 0.1, params, 6).unwrap();
        let four = construct_regular(6, 4).unwrap();
        assert!(remaining_budget(&cfg, &four, 0).unwrap().abs() < 1e-12);
    }

    #[test]
    fn gain_from_add_examples() {
        let cfg = example1(7);
        let near = construct_near_regular(7, 3, NearRegular::OneBelow).unwrap();
        let low = (0..7).find(|&i| near.degree(i) == 2).unwrap();
        let full = (0..7).find(|&i| near.degree(i) == 3 && !near.has_link(i, low)).unwrap();

        // Degree-3 side refuses, degree-2 side wants the link.
        let gain_full = gain_from_add(&cfg, &near, full, low).unwrap();
        assert!((gain_full - (-0.00166)).abs() < 1e-9);
        let gain_low = gain_from_add(&cfg, &near, low, full).unwrap();
        assert!((gain_low - 0.0137).abs() < 1e-9);

        // Value-only play always gains from another partner.
        let so = example3(7);
        for eta in 0..4 {
            let mut net = Network::empty(7);
            for j in 0..eta {
                net.add_link(0, j + 1).unwrap();
            }
            assert!(gain_from_add(&so, &net, 0, 6).unwrap() > 0.0);
        }

        let complete = Network::complete(7);
        assert!(gain_from_add(&cfg, &complete, 0, 1).is_err());
    }

    #[test]
    fn gain_from_delete_examples() {
        let cfg = example1(6);
        let regular = construct_regular(6, 3).unwrap();
        let (i, j) = regular.links()[0];
        let gain = gain_from_delete(&cfg, &regular, i, j).unwrap();
        assert!((gain - (-0.0137)).abs() < 1e-9);

        // An agent with two partners loses 0.096 by dropping one.
        let mut two = Network::empty(6);
        two.add_link(0, 1).unwrap();
        two.add_link(0, 2).unwrap();
        let gain = gain_from_delete(&cfg, &two, 0, 1).unwrap();
        assert!((gain - (-0.0905)).abs() < 1e-9);

        let so = example3(6);
        let mut so_net = Network::empty(6);
        so_net.add_link(0, 1).unwrap();
        so_net.add_link(0, 2).unwrap();
        assert!(gain_from_delete(&so, &so_net, 0, 1).unwrap() < 0.0);

        assert!(gain_from_delete(&cfg, &Network::empty(6), 0, 1).is_err());
    }

    #[test]
    fn add_feasible_examples() {
        let cfg = example3(6);
        let regular = construct_regular(6, 3).unwrap();
        let (i, j) = {
            let mut pair = None;
            'outer: for i in 0..6 {
                for j in (i + 1)..6 {
                    if !regular.has_link(i, j) {
                        pair = Some((i, j));
                        break 'outer;
                    }
                }
            }
            pair.unwrap()
        };

        assert!(add_feasible(&cfg, &regular, i, j, StabilityMode::Plain).unwrap());
        // Partner already hosts three blocks of 20 in 60.
        assert!(!add_feasible(&cfg, &regular, i, j, StabilityMode::StorageConstrained).unwrap());

        // Budget 0.4 at cost 0.1 stops at four links.
        let params = AgentParams::new(0.6, 1000.0, 10.0, 0.4).unwrap();
        let cfg = GameConfig::symmetric(Framework::So, 0.2, 0.1, params, 6).unwrap();
        let four = construct_regular(6, 4).unwrap();
        let (i, j) = {
            let mut pair = None;
            'outer: for i in 0..6 {
                for j in (i + 1)..6 {
                    if !four.has_link(i, j) {
                        pair = Some((i, j));
                        break 'outer;
                    }
                }
            }
            pair.unwrap()
        };
        assert!(
            !add_feasible(&cfg, &four, i, j, StabilityMode::StorageBudgetConstrained).unwrap()
        );
    }

    #[test]
    fn stability_examples() {
        let cfg = example1(6);
        let regular = construct_regular(6, 3).unwrap();
        let report = is_bilaterally_stable(&cfg, &regular, StabilityMode::Plain).unwrap();
        assert!(report.stable);

        let cfg7 = example1(7);
        let near = construct_near_regular(7, 3, NearRegular::OneBelow).unwrap();
        let report = is_bilaterally_stable(&cfg7, &near, StabilityMode::Plain).unwrap();
        assert!(report.stable);

        // Two disjoint triangles: everyone is below the stable degree, so
        // every cross-triangle pair is a violation.
        let triangle = Network::from_edges(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        let two = disjoint_union(&[triangle.clone(), triangle]);
        let report = is_bilaterally_stable(&cfg, &two, StabilityMode::Plain).unwrap();
        assert!(!report.stable);
        assert_eq!(report.violations.len(), 9);
        assert!(report
            .violations
            .iter()
            .all(|v| v.kind == DeviationKind::Add && v.pair.0 < 3 && v.pair.1 >= 3));
    }

    #[test]
    fn theorem_checker_rejects_unsupported_class() {
        let agents = vec![
            AgentParams::new(0.6, 60.0, 20.0, 0.5).unwrap(),
            AgentParams::new(0.7, 50.0, 20.0, 0.5).unwrap(),
        ];
        let cfg = GameConfig::new(Framework::Mo, 0.2, 0.0055, agents).unwrap();
        let net = Network::empty(2);
        assert!(matches!(
            check_theorem_conditions(&cfg, &net),
            Err(Error::UnsupportedClass { .. })
        ));
    }

    #[test]
    fn theorem_examples() {
        // Value-symmetric, budget-free: complete is stable, nothing else.
        let params = AgentParams::new(0.6, 1000.0, 1.0, 1000.0).unwrap();
        let mut agents = vec![params; 5];
        agents[1].shared_storage = 999.0; // SVN, not SV-SRN
        let cfg = GameConfig::new(Framework::So, 0.2, 0.0055, agents).unwrap();
        let complete = Network::complete(5);
        assert!(check_theorem_conditions(&cfg, &complete).unwrap().stable);
        let incomplete = complete.without_link(0, 1).unwrap();
        assert!(!check_theorem_conditions(&cfg, &incomplete).unwrap().stable);

        // Resource-symmetric, budget-constrained: three-regular is stable at
        // storage ratio three.
        let cfg = example3(6);
        let regular = construct_regular(6, 3).unwrap();
        let report = check_theorem_conditions(&cfg, &regular).unwrap();
        assert!(report.stable);
        assert_eq!(report.mode, StabilityMode::StorageBudgetConstrained);

        // Seven agents, six at three and one at two with free storage but no
        // partner with room.
        let cfg7 = example3(7);
        let near = construct_near_regular(7, 3, NearRegular::OneBelow).unwrap();
        assert!(check_theorem_conditions(&cfg7, &near).unwrap().stable);
    }

    #[test]
    fn gain_ignores_partner_identity() {
        let cfg = example1(6);
        let net = Network::from_edges(6, [(0, 1), (2, 3), (2, 4), (2, 5)]).unwrap();
        let a = gain_from_add(&cfg, &net, 0, 2).unwrap();
        let b = gain_from_add(&cfg, &net, 0, 4).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn null_network_stability_threshold() {
        // The first link pays only when the cost is below the full marginal.
        let cheap = example1(4);
        let null = Network::empty(4);
        assert!(!is_bilaterally_stable(&cheap, &null, StabilityMode::Plain)
            .unwrap()
            .stable);

        let params = AgentParams::new(0.6, 1000.0, 1.0, 1000.0).unwrap();
        let dear = GameConfig::symmetric(Framework::Mo, 0.2, 0.5, params, 4).unwrap();
        assert!(is_bilaterally_stable(&dear, &null, StabilityMode::Plain)
            .unwrap()
            .stable);
    }

    #[test]
    fn overcommitted_state_reported() {
        let cfg = example3(6);
        let complete = Network::complete(6);
        let report =
            is_bilaterally_stable(&cfg, &complete, StabilityMode::StorageBudgetConstrained)
                .unwrap();
        assert_eq!(report.overcommitted_agents.len(), 6);
        assert!(report.stable); // no feasible move exists, state analyzed as-is
    }
}
