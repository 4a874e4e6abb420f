use thiserror::Error;

use crate::golay::Alphabet;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("no cataloged Golay pair of length {length} in the {alphabet} alphabet")]
    UnsupportedLength { length: usize, alphabet: Alphabet },

    #[error(
        "search space of {candidates} candidates exceeds the budget of {budget}; \
         reduce the length or the alphabet size"
    )]
    ResourceLimit { candidates: u128, budget: u128 },

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),

    #[error("image encoding failed: {0}")]
    Image(#[from] image::ImageError),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
}
