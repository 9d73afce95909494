//! Crate-wide error type and result alias.

use thiserror::Error;

/// Alias used by every fallible operation in this crate.
pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong across the simulator modules.
///
/// Errors split into two broad classes: configuration errors (the input file is
/// missing, malformed, or semantically invalid) and runtime errors (a
/// numerically or physically impossible situation reached during simulation).
/// [`Error::is_config_error`] tells them apart so the CLI can map the classes
/// to distinct exit codes.
#[derive(Debug, Error)]
pub enum Error {
    /// Channel generation needs at least one user and strictly more antennas than users.
    #[error("channel dimensions must satisfy 0 < users < antennas, got K={users}, N={antennas}")]
    ChannelDimensions { users: usize, antennas: usize },

    /// The channel Gram matrix could not be inverted reliably.
    #[error("channel Gram matrix is singular or ill-conditioned (condition estimate {condition:.3e})")]
    SingularChannel { condition: f64 },

    /// A per-user operation was asked about a user index that does not exist.
    #[error("user index {index} out of range for {count} users")]
    UserIndex { index: usize, count: usize },

    /// Rates are only defined for non-negative SINR.
    #[error("SINR must be non-negative, got {0}")]
    NegativeSinr(f64),

    /// Transmit signal-to-noise ratio must be strictly positive.
    #[error("SNR must be strictly positive, got {0}")]
    NonPositiveSnr(f64),

    /// Delivered rates cannot be negative.
    #[error("rate must be non-negative, got {0} bit/s")]
    NegativeRate(f64),

    /// Power allocation reserves two antennas per served user.
    #[error("antenna budget too small: need at least 2 antennas per user, got n={antennas} for K={users}")]
    InsufficientAntennas { antennas: usize, users: usize },

    /// The random-matrix trace limit K/(M-K) diverges unless M > K.
    #[error("trace limit requires more antennas than users, got M={antennas}, K={users}")]
    DivergentTraceLimit { antennas: usize, users: usize },

    /// Efficiency divides rate by power, so power must be strictly positive.
    #[error("power must be strictly positive, got {0} W")]
    NonPositivePower(f64),

    /// A length or span parameter violated its documented range.
    #[error("{name} must be {requirement}, got {value} km")]
    InvalidLength {
        name: &'static str,
        requirement: &'static str,
        value: f64,
    },

    /// Amplifier spacing over-compensates the span: L - alpha*L_edfa + L_BS went negative.
    #[error("inconsistent span geometry: uncompensated length {0} km is negative")]
    InconsistentGeometry(f64),

    /// Path hop counts start at 1 (the serving cluster itself).
    #[error("hop count must be at least 1, got {0}")]
    InvalidHops(usize),

    /// Series reduction needs every branch capacitance strictly positive.
    #[error("capacitance must be strictly positive, got {0} F")]
    NonPositiveCapacitance(f64),

    /// A scalar parameter violated its documented positivity requirement.
    #[error("{name} must be strictly positive, got {value}")]
    NonPositiveParameter { name: &'static str, value: f64 },

    /// Feasibility grids need at least two points per axis.
    #[error("grid resolution must be at least 2, got {0}")]
    GridTooSmall(usize),

    /// A topology query referenced a cluster id that is not part of the topology.
    #[error("unknown cluster id {0}")]
    UnknownCluster(u32),

    /// Flooding found no reachable cluster holding the requested name.
    #[error("content {0:?} is cached nowhere reachable in the topology")]
    ContentNotFound(String),

    /// The address-based baseline needs an origin server designated in the topology.
    #[error("no origin-server cluster designated in the topology")]
    NoOriginServer,

    /// Graph search could not reach the target cluster.
    #[error("cluster {to} is unreachable from cluster {from}")]
    UnreachableCluster { from: u32, to: u32 },

    /// The topology definition itself is malformed (duplicate ids, dangling edges, ...).
    #[error("invalid topology: {0}")]
    InvalidTopology(String),

    /// Configuration file could not be read.
    #[error("cannot read config {path}: {source}")]
    ConfigRead {
        path: String,
        #[source]
        source: std::io::Error,
    },

    /// Configuration file did not parse as TOML matching the schema.
    #[error("config parse error: {0}")]
    ConfigParse(String),

    /// Configuration parsed but failed semantic validation.
    #[error("config validation: {0}")]
    ConfigValidation(String),

    /// An output file could not be written.
    #[error("cannot write {path}: {source}")]
    OutputWrite {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    /// True for errors caused by the configuration file (missing, malformed, or
    /// semantically invalid) as opposed to failures during simulation.
    pub fn is_config_error(&self) -> bool {
        matches!(
            self,
            Error::ConfigRead { .. } | Error::ConfigParse(_) | Error::ConfigValidation(_)
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_errors_are_classified() {
        assert!(Error::ConfigParse("x".into()).is_config_error());
        assert!(Error::ConfigValidation("x".into()).is_config_error());
        assert!(!Error::NonPositivePower(0.0).is_config_error());
        assert!(!Error::ContentNotFound("a".into()).is_config_error());
    }

    #[test]
    fn messages_name_the_offending_quantity() {
        let e = Error::ChannelDimensions { users: 5, antennas: 4 };
        assert!(e.to_string().contains("K=5"));
        let e = Error::InvalidLength { name: "span length", requirement: "non-negative", value: -1.0 };
        assert!(e.to_string().contains("span length"));
    }
}
