use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] adjminor::Error),

    #[error("{path}: {source}")]
    Input {
        path: String,
        source: std::io::Error,
    },

    #[error("line {line}: {source}")]
    Line {
        line: usize,
        source: adjminor::Error,
    },

    #[error("{0} verdict(s) left undecided by the budget")]
    Undecided(usize),

    #[error("{0} configuration(s) failed validation")]
    Invalid(usize),

    #[error("output: {0}")]
    Io(#[from] std::io::Error),

    #[error("output: {0}")]
    Json(#[from] serde_json::Error),

    #[error("output: {0}")]
    Csv(#[from] csv::Error),
}

impl CliError {
    /// 0 ok, 2 parse error, 3 budget, 4 validation, 64 usage, 66 missing input, 74 output failure.
    pub fn exit_code(&self) -> i32 {
        fn core(e: &adjminor::Error) -> i32 {
            match e {
                adjminor::Error::Parse { .. } | adjminor::Error::Order(_) => 2,
                adjminor::Error::Budget(_) => 3,
                adjminor::Error::Validation(_)
                | adjminor::Error::NotConvex
                | adjminor::Error::InvalidAdmissibleSet(_) => 4,
                adjminor::Error::Unsupported(_) => 64,
            }
        }
        match self {
            CliError::Core(e) | CliError::Line { source: e, .. } => core(e),
            CliError::Undecided(_) => 3,
            CliError::Invalid(_) => 4,
            CliError::Input { .. } => 66,
            CliError::Io(_) | CliError::Json(_) | CliError::Csv(_) => 74,
        }
    }
}
