use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BraidError {
    #[error("invalid symbol {symbol:?} at index {index}")]
    Parse { index: usize, symbol: char },

    #[error("empty braid word")]
    EmptyWord,

    #[error("position {position} out of range 0..={max}")]
    PositionOutOfRange { position: usize, max: usize },

    #[error("move {0} does not apply to this word")]
    MoveNotApplicable(String),

    #[error("episode already finished")]
    EpisodeFinished,

    #[error("action set is empty")]
    EmptyActionSet,

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("malformed q-table row {line}: {reason}")]
    QTableFormat { line: usize, reason: String },
}

pub type Result<T, E = BraidError> = std::result::Result<T, E>;
