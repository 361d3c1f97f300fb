use thiserror::Error;

/// Errors raised by the evaluators and the command-line front end.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("unsupported root system {family}{rank}")]
    UnsupportedRootSystem { family: String, rank: usize },

    #[error("configuration error: {0}")]
    Configuration(String),

    #[error("domain error: {0}")]
    Domain(String),

    /// Gamma evaluated at the nonpositive integer `at`.
    #[error("pole of Gamma at {at} ({context})")]
    Pole { at: i64, context: String },

    /// A Gamma ratio whose denominator sits on a pole; the ratio is zero
    /// and the caller decides whether that is acceptable.
    #[error("zero by pole: denominator Gamma has a pole at {at} ({context})")]
    ZeroByPole { at: i64, context: String },

    /// Recurrence denominator vanishes (non-generic spectral parameter).
    #[error("resonant spectral parameter at mu = {mu:?}: |denominator| = {magnitude:e} ({context})")]
    Resonance {
        mu: Vec<u32>,
        magnitude: f64,
        context: String,
    },

    #[error("accuracy target missed: achieved {achieved:e}, requested {requested:e} ({context})")]
    Accuracy {
        achieved: f64,
        requested: f64,
        context: String,
    },

    #[error("degenerate character: l[{index}] = {value}")]
    DegenerateCharacter { index: usize, value: f64 },

    /// An error raised inside one term of a Weyl-group sum.
    #[error("in Weyl term w = {word:?}: {source}")]
    InWeylTerm { word: Vec<usize>, source: Box<Error> },
}

impl Error {
    /// Stable machine-readable label, used in the CLI's JSON error objects.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::UnsupportedRootSystem { .. } | Error::Configuration(_) => "configuration",
            Error::Domain(_) => "domain",
            Error::Pole { .. } => "pole",
            Error::ZeroByPole { .. } => "zero_by_pole",
            Error::Resonance { .. } => "resonance",
            Error::Accuracy { .. } => "accuracy",
            Error::DegenerateCharacter { .. } => "degenerate_character",
            Error::InWeylTerm { source, .. } => source.kind(),
        }
    }

    /// The innermost error, with any Weyl-term wrapping removed.
    pub fn root_cause(&self) -> &Error {
        match self {
            Error::InWeylTerm { source, .. } => source.root_cause(),
            e => e,
        }
    }

    pub(crate) fn in_weyl_term(self, word: &[usize]) -> Error {
        Error::InWeylTerm {
            word: word.to_vec(),
            source: Box::new(self),
        }
    }

    pub(crate) fn with_context(self, ctx: &str) -> Error {
        match self {
            Error::Pole { at, context } => Error::Pole {
                at,
                context: join(context, ctx),
            },
            Error::ZeroByPole { at, context } => Error::ZeroByPole {
                at,
                context: join(context, ctx),
            },
            Error::Resonance {
                mu,
                magnitude,
                context,
            } => Error::Resonance {
                mu,
                magnitude,
                context: join(context, ctx),
            },
            Error::Accuracy {
                achieved,
                requested,
                context,
            } => Error::Accuracy {
                achieved,
                requested,
                context: join(context, ctx),
            },
            e => e,
        }
    }
}

fn join(a: String, b: &str) -> String {
    if a.is_empty() {
        b.to_string()
    } else {
        format!("{b}: {a}")
    }
}

pub type Result<T> = std::result::Result<T, Error>;
