//! Analysis of peer-to-peer backup partnership networks.
//!
//! Agents form mutual data-backup links; both adding and deleting a link
//! take consent from both ends. This crate models the agents' utilities
//! under cost-in-utility and value-only play, checks bilateral stability
//! directly and through closed-form conditions, derives stable neighborhood
//! sizes, runs seeded mutual-consent dynamics, analyzes efficiency and
//! contentment, and cross-validates every closed form against exhaustive
//! small-population enumeration.

pub mod dynamics;
pub mod error;
pub mod model;
pub mod oracle;
pub mod stability;
pub mod stability_point;
pub mod structure;
pub mod welfare;

pub use error::{Error, Result};
pub use model::{AgentParams, Framework, GameConfig, Network, NetworkClass};
pub use stability::{StabilityMode, StabilityReport};
pub use stability_point::StabilityPointReport;
