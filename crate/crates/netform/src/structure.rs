//! Constructions and structural checks for stable-network shapes.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::Network;

/// Degree sequence sorted non-increasing.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DegreeSequence(Vec<usize>);

impl DegreeSequence {
    pub fn new(mut degrees: Vec<usize>) -> Self {
        degrees.sort_unstable_by(|a, b| b.cmp(a));
        DegreeSequence(degrees)
    }

    pub fn of(net: &Network) -> Self {
        Self::new(net.degrees())
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Erdős–Gallai test: the sequence is realizable by some simple graph.
    pub fn is_graphical(&self) -> bool {
        let seq = &self.0;
        let n = seq.len();
        if n == 0 {
            return true;
        }
        if seq[0] >= n {
            return false;
        }
        let total: usize = seq.iter().sum();
        if !total.is_multiple_of(2) {
            return false;
        }
        let mut prefix = 0usize;
        for k in 1..=n {
            prefix += seq[k - 1];
            let tail: usize = seq[k..].iter().map(|&d| d.min(k)).sum();
            if prefix > k * (k - 1) + tail {
                return false;
            }
        }
        true
    }
}

impl std::fmt::Display for DegreeSequence {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// Connected `r`-regular network on `n` agents, built as a circulant: agent
/// `i` links to `i ± k (mod n)` for `k = 1..=r/2`, plus the antipode when
/// `r` is odd. Connected for `r >= 2`; `r = 0` gives the null network and
/// `r = 1` a perfect matching, where connectivity is impossible beyond two
/// agents.
pub fn construct_regular(n: usize, r: usize) -> Result<Network> {
    if r >= n.max(1) {
        return Err(Error::Infeasible(format!(
            "degree {r} needs at least {} agents, got {n}",
            r + 1
        )));
    }
    if !(n * r).is_multiple_of(2) {
        return Err(Error::Infeasible(format!(
            "no network has {n} agents all of odd degree {r}"
        )));
    }
    let mut net = Network::empty(n);
    for k in 1..=(r / 2) {
        for i in 0..n {
            let j = (i + k) % n;
            if !net.has_link(i, j) {
                net.add_link(i, j)?;
            }
        }
    }
    if r % 2 == 1 {
        // Parity check above guarantees n is even here.
        for i in 0..n / 2 {
            net.add_link(i, i + n / 2)?;
        }
    }
    Ok(net)
}

/// Shape of a near-regular network: one agent one step below or above the
/// common degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum NearRegular {
    #[serde(rename = "one-below")]
    OneBelow,
    #[serde(rename = "one-above")]
    OneAbove,
}

/// Network with `n - 1` agents at degree `r` and one at `r - 1` or `r + 1`,
/// for odd `n` and odd `r` (the parities that rule out an `r`-regular
/// network). Connected via degree-preserving splices whenever every
/// component holds a cycle edge, which holds for `r >= 3`; at `r = 1` the
/// one-below shape is a matching plus an isolated agent and cannot be
/// connected without altering degrees.
pub fn construct_near_regular(n: usize, r: usize, shape: NearRegular) -> Result<Network> {
    if n.is_multiple_of(2) || r.is_multiple_of(2) || r >= n {
        return Err(Error::Infeasible(format!(
            "near-regular shape needs odd n and odd r < n, got n={n}, r={r}"
        )));
    }
    let odd_degree = match shape {
        NearRegular::OneBelow => r - 1,
        NearRegular::OneAbove => r + 1,
    };
    let mut degrees = vec![r; n - 1];
    degrees.push(odd_degree);
    let seq = DegreeSequence::new(degrees);
    let mut net = realize_degree_sequence(&seq)
        .ok_or_else(|| Error::Infeasible(format!("sequence {seq} is not graphical")))?;
    connect_preserving_degrees(&mut net);
    Ok(net)
}

/// Greedy largest-first realization of a degree sequence. `None` when the
/// sequence is not graphical.
pub fn realize_degree_sequence(seq: &DegreeSequence) -> Option<Network> {
    let n = seq.len();
    let mut net = Network::empty(n);
    // (remaining demand, vertex), re-sorted before every step.
    let mut demand: Vec<(usize, usize)> = seq
        .as_slice()
        .iter()
        .copied()
        .zip(0..n)
        .collect();
    loop {
        demand.sort_unstable_by(|a, b| b.cmp(a));
        let (d, v) = demand[0];
        if d == 0 {
            return Some(net);
        }
        if d >= demand.len() {
            return None;
        }
        for slot in 1..=d {
            let (dw, w) = demand[slot];
            if dw == 0 {
                return None;
            }
            net.add_link(v, w).ok()?;
            demand[slot] = (dw - 1, w);
        }
        demand[0] = (0, v);
    }
}

/// Disjoint union of several networks, relabeling agents consecutively.
pub fn disjoint_union(parts: &[Network]) -> Network {
    let total = parts.iter().map(Network::agent_count).sum();
    let mut net = Network::empty(total);
    let mut offset = 0;
    for part in parts {
        for (i, j) in part.links() {
            net.add_link(offset + i, offset + j).unwrap();
        }
        offset += part.agent_count();
    }
    net
}

fn is_bridge(net: &Network, i: usize, j: usize) -> bool {
    let mut probe = net.clone();
    probe.remove_link(i, j).unwrap();
    // Still connected within the old component?
    let comps = probe.components();
    let home = comps.iter().find(|c| c.contains(&i)).unwrap();
    !home.contains(&j)
}

/// Merges components by the degree-preserving splice: delete one link in
/// each of two components and add the two crossing links instead. The
/// deleted link on one side is chosen off a cycle so its component stays
/// connected; each splice then reduces the component count by exactly one.
/// Stops early if no component has a cycle edge left (matchings).
/// Returns the number of splices applied.
pub fn connect_preserving_degrees(net: &mut Network) -> usize {
    let mut splices = 0;
    loop {
        let comps = net.components();
        if comps.len() <= 1 {
            return splices;
        }
        // A component's cycle edge, if it has one.
        let cycle_edge = |members: &[usize]| -> Option<(usize, usize)> {
            for &i in members {
                for j in net.neighbors(i).collect::<Vec<_>>() {
                    if i < j && !is_bridge(net, i, j) {
                        return Some((i, j));
                    }
                }
            }
            None
        };
        let any_edge = |members: &[usize]| -> Option<(usize, usize)> {
            members
                .iter()
                .find(|&&i| net.degree(i) > 0)
                .map(|&i| (i, net.neighbors(i).next().unwrap()))
        };

        let mut anchor = None;
        for (idx, comp) in comps.iter().enumerate() {
            if let Some(edge) = cycle_edge(comp) {
                anchor = Some((idx, edge));
                break;
            }
        }
        let Some((anchor_idx, (a1, a2))) = anchor else {
            return splices;
        };
        let Some((other_idx, (b1, b2))) = comps
            .iter()
            .enumerate()
            .filter(|&(idx, _)| idx != anchor_idx)
            .find_map(|(idx, comp)| any_edge(comp).map(|e| (idx, e)))
        else {
            return splices; // every other component is an isolated agent
        };
        let _ = other_idx;
        net.remove_link(a1, a2).unwrap();
        net.remove_link(b1, b2).unwrap();
        net.add_link(a1, b1).unwrap();
        net.add_link(a2, b2).unwrap();
        splices += 1;
    }
}

/// Outcome of the small-component bound: a stable network can have at most
/// one component with at most `eta_hat` agents.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SmallComponentCheck {
    pub holds: bool,
    /// The small components themselves, when the bound fails.
    pub offending: Vec<Vec<usize>>,
}

pub fn check_small_component_claim(net: &Network, eta_hat: usize) -> SmallComponentCheck {
    let small: Vec<Vec<usize>> = net
        .components()
        .into_iter()
        .filter(|c| c.len() <= eta_hat)
        .collect();
    if small.len() <= 1 {
        SmallComponentCheck {
            holds: true,
            offending: Vec::new(),
        }
    } else {
        SmallComponentCheck {
            holds: false,
            offending: small,
        }
    }
}

/// One-directional instability test for multi-component networks grown from
/// the null network at an odd stable degree.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum MultiComponentVerdict {
    /// Two components each carry an agent short of the stable degree; that
    /// pair profits from a crossing link.
    MustBeUnstable { witness: (usize, usize) },
    /// The hypotheses do not apply; nothing is implied either way.
    NoConclusion,
}

pub fn check_multi_component_instability(
    net: &Network,
    eta_hat: usize,
    evolved_from_null: bool,
) -> MultiComponentVerdict {
    if !evolved_from_null || eta_hat.is_multiple_of(2) {
        return MultiComponentVerdict::NoConclusion;
    }
    let comps = net.components();
    if comps.len() < 2 {
        return MultiComponentVerdict::NoConclusion;
    }
    let qualifying = |c: &Vec<usize>| c.len() <= eta_hat || (c.len() > eta_hat && c.len() % 2 == 1);
    let deficient = |c: &Vec<usize>| -> Option<usize> {
        c.iter().copied().find(|&i| net.degree(i) < eta_hat)
    };
    let mut witnesses = comps
        .iter()
        .filter(|c| qualifying(c))
        .filter_map(deficient);
    match (witnesses.next(), witnesses.next()) {
        (Some(first), Some(second)) => MultiComponentVerdict::MustBeUnstable {
            witness: (first, second),
        },
        _ => MultiComponentVerdict::NoConclusion,
    }
}

/// Whether a symmetric roster admits exactly one stable network.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum UniquenessClass {
    /// The complete network is the only stable one.
    UniqueComplete,
    /// At least two stable networks with distinct degree sequences exist.
    MultipleStable,
}

pub fn uniqueness_class(n: usize, eta_hat: usize) -> UniquenessClass {
    if n == eta_hat + 1 || eta_hat >= n {
        UniquenessClass::UniqueComplete
    } else {
        UniquenessClass::MultipleStable
    }
}
