use thiserror::Error;

use crate::model::{Framework, NetworkClass};

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("agent index {index} out of range for {count} agents")]
    AgentIndex { index: usize, count: usize },

    #[error("network has {network} agents but the config lists {config}")]
    SizeMismatch { network: usize, config: usize },

    #[error("link {0}-{1} already present")]
    LinkPresent(usize, usize),

    #[error("link {0}-{1} not present")]
    LinkAbsent(usize, usize),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid network: {0}")]
    InvalidNetwork(String),

    #[error("no closed-form rule for a {class} network under the {framework} framework")]
    UnsupportedClass {
        class: NetworkClass,
        framework: Framework,
    },

    #[error("infeasible construction: {0}")]
    Infeasible(String),

    #[error("{requested} agents exceeds the exhaustive-analysis limit of {limit}")]
    TooManyAgents { requested: usize, limit: usize },
}
