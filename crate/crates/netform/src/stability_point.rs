//! Closed-form stable neighborhood sizes for symmetric configurations.
//!
//! For a symmetric roster there is a single degree at which no agent wants a
//! larger or smaller neighborhood. Under cost-in-utility play it comes from
//! inverting the geometric marginal-value decay against the per-link cost,
//! optionally capped by the storage ratio; under value-only play it is set
//! entirely by the resource ratios, or by the population when resources are
//! plentiful.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{classify, Framework, GameConfig, NetworkClass};
use crate::stability::add_marginal;

/// Which constraint fixed the reported degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Binding {
    /// The cost/benefit crossover of the marginal backup value.
    #[serde(rename = "log-formula")]
    LogFormula,
    /// The storage-to-data ratio.
    #[serde(rename = "storage-cap")]
    StorageCap,
    /// The budget-to-cost ratio.
    #[serde(rename = "budget-cap")]
    BudgetCap,
    /// Linking to every other agent.
    #[serde(rename = "all-others")]
    AllOthers,
}

impl std::fmt::Display for Binding {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Binding::LogFormula => "log-formula",
            Binding::StorageCap => "storage-cap",
            Binding::BudgetCap => "budget-cap",
            Binding::AllOthers => "all-others",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StabilityPointReport {
    /// The stable neighborhood size. Reported raw: it may exceed the
    /// population bound, in which case `capped_by_population` is set and the
    /// achievable degree is `min(eta_hat, n - 1)`.
    #[serde(rename = "eta_hat")]
    pub degree: usize,
    /// Smallest degree at which growing further stops paying, when the
    /// crossover formula applies.
    pub lower_bound: Option<f64>,
    /// Largest degree at which shrinking does not pay; exceeds the lower
    /// bound by exactly one.
    pub upper_bound: Option<f64>,
    pub binding: Binding,
    /// Set when the crossover lands exactly on an integer: both that degree
    /// and the next satisfy the no-strict-incentive conditions, and the lower
    /// one is reported.
    pub boundary_tie: bool,
    pub capped_by_population: bool,
}

impl StabilityPointReport {
    /// Degree actually reachable given the population.
    pub fn achievable_degree(&self, n: usize) -> usize {
        self.degree.min(n.saturating_sub(1))
    }
}

/// Crossover bounds of the stable degree under cost-in-utility play.
///
/// Returns `(lower, upper)` where the marginal value of a further partner
/// drops below the link cost at `lower` and the value of the last partner
/// still exceeds the cost up to `upper`; `upper - lower == 1` identically.
/// Returns `None` when the cost is at least the full marginal `value * (1 -
/// rate)`, where even a first partner does not pay and the inversion has no
/// meaning.
pub fn log_bounds(data_value: f64, failure_rate: f64, link_cost: f64) -> Option<(f64, f64)> {
    if link_cost > data_value * (1.0 - failure_rate) {
        return None;
    }
    let log_rate = failure_rate.ln().abs();
    let base = link_cost / (data_value * (1.0 - failure_rate));
    let lower = base.ln().abs() / log_rate;
    let upper = (base * failure_rate).ln().abs() / log_rate;
    assert!(
        (upper - lower - 1.0).abs() <= 1e-9,
        "bound gap {} deviates from 1",
        upper - lower
    );
    Some((lower, upper))
}

/// Largest whole number of units of `per_unit` that fit in `amount`, within
/// tolerance. `None` when `per_unit` is zero (nothing to cap).
pub(crate) fn ratio_cap(amount: f64, per_unit: f64, epsilon: f64) -> Option<usize> {
    if per_unit <= 0.0 {
        return None;
    }
    let mut k = (amount / per_unit).floor().max(0.0) as usize;
    while (k + 1) as f64 * per_unit <= amount + epsilon {
        k += 1;
    }
    while k > 0 && k as f64 * per_unit > amount + epsilon {
        k -= 1;
    }
    Some(k)
}

fn require(cfg: &GameConfig, classes: &[NetworkClass], framework: Framework) -> Result<()> {
    let class = classify(cfg);
    if cfg.framework == framework && classes.contains(&class) {
        Ok(())
    } else {
        Err(Error::UnsupportedClass {
            class,
            framework: cfg.framework,
        })
    }
}

/// Stable degree for a value-symmetric roster under cost-in-utility play,
/// assuming resources never bind.
///
/// Non-degenerate case: the unique integer strictly between the crossover
/// bounds. Degenerate case (cost at or above the full marginal within
/// tolerance of equality handled as a tie at zero): degree zero. Tie case
/// (the lower bound is an integer within tolerance, detected in gain space):
/// that integer, flagged, since the next degree up is equally workable.
pub fn stability_point_svn_mo(cfg: &GameConfig) -> Result<StabilityPointReport> {
    require(cfg, &[NetworkClass::Svn, NetworkClass::SvSrn], Framework::Mo)?;
    Ok(log_point(cfg))
}

fn log_point(cfg: &GameConfig) -> StabilityPointReport {
    let value = cfg.agents[0].data_value;
    let rate = cfg.disk_failure_rate;
    let cost = cfg.link_cost;
    let n = cfg.agent_count();

    let first_marginal = add_marginal(value, rate, 0);
    if cost > first_marginal + cfg.epsilon {
        return StabilityPointReport {
            degree: 0,
            lower_bound: None,
            upper_bound: None,
            binding: Binding::LogFormula,
            boundary_tie: false,
            capped_by_population: false,
        };
    }

    let (lower, upper) = log_bounds(value, rate, cost.min(first_marginal))
        .expect("cost at most the full marginal");

    // A tie means the marginal value at some integer degree equals the cost;
    // test that in gain space so the verdict matches the deviation
    // predicates exactly.
    let candidate = lower.round().max(0.0) as usize;
    let tie = (add_marginal(value, rate, candidate) - cost).abs() <= cfg.epsilon;
    let degree = if tie { candidate } else { lower.ceil() as usize };

    StabilityPointReport {
        degree,
        lower_bound: Some(lower),
        upper_bound: Some(upper),
        binding: Binding::LogFormula,
        boundary_tie: tie,
        capped_by_population: degree > n.saturating_sub(1),
    }
}

/// Stable degree for a fully symmetric roster under cost-in-utility play:
/// the crossover degree, capped by how many partners' data fit in storage.
pub fn stability_point_svsrn_mo(cfg: &GameConfig) -> Result<StabilityPointReport> {
    require(cfg, &[NetworkClass::SvSrn], Framework::Mo)?;
    let base = log_point(cfg);
    let n = cfg.agent_count();
    let cap = ratio_cap(
        cfg.agents[0].shared_storage,
        cfg.agents[0].data_size,
        cfg.epsilon,
    );
    let report = match cap {
        Some(k) if k < base.degree => StabilityPointReport {
            degree: k,
            binding: Binding::StorageCap,
            boundary_tie: false,
            capped_by_population: k > n.saturating_sub(1),
            ..base
        },
        Some(k) => StabilityPointReport {
            // Storage also limits the tie's upper candidate.
            boundary_tie: base.boundary_tie && k > base.degree,
            ..base
        },
        None => base,
    };
    Ok(report)
}

/// Stable degree for a value-symmetric roster under value-only play with
/// plentiful resources: link to everyone. The only population-dependent case.
pub fn stability_point_svn_so(cfg: &GameConfig) -> Result<StabilityPointReport> {
    require(cfg, &[NetworkClass::Svn, NetworkClass::SvSrn], Framework::So)?;
    Ok(StabilityPointReport {
        degree: cfg.agent_count() - 1,
        lower_bound: None,
        upper_bound: None,
        binding: Binding::AllOthers,
        boundary_tie: false,
        capped_by_population: false,
    })
}

/// Stable degree for a resource-symmetric roster under value-only play:
/// whichever of the storage and budget ratios runs out first.
pub fn stability_point_srn_so(cfg: &GameConfig) -> Result<StabilityPointReport> {
    require(cfg, &[NetworkClass::Srn, NetworkClass::SvSrn], Framework::So)?;
    let params = &cfg.agents[0];
    let storage_cap = ratio_cap(params.shared_storage, params.data_size, cfg.epsilon);
    let budget_cap = ratio_cap(params.budget, cfg.link_cost, cfg.epsilon)
        .expect("link cost is positive");
    let (degree, binding) = match storage_cap {
        Some(k) if k <= budget_cap => (k, Binding::StorageCap),
        _ => (budget_cap, Binding::BudgetCap),
    };
    Ok(StabilityPointReport {
        degree,
        lower_bound: None,
        upper_bound: None,
        binding,
        boundary_tie: false,
        capped_by_population: degree > cfg.agent_count().saturating_sub(1),
    })
}

/// Dispatch to the closed-form rule matching the roster's class and
/// framework. Heterogeneous rosters (and resource-symmetric rosters under
/// cost-in-utility play) have no single stable degree; use per-agent
/// best-response ranges instead.
pub fn stability_point(cfg: &GameConfig) -> Result<StabilityPointReport> {
    match (classify(cfg), cfg.framework) {
        (NetworkClass::Svn, Framework::Mo) => stability_point_svn_mo(cfg),
        (NetworkClass::SvSrn, Framework::Mo) => stability_point_svsrn_mo(cfg),
        (NetworkClass::Svn, Framework::So) => stability_point_svn_so(cfg),
        (NetworkClass::Srn | NetworkClass::SvSrn, Framework::So) => stability_point_srn_so(cfg),
        (class, framework) => Err(Error::UnsupportedClass { class, framework }),
    }
}
