use alloc::string::String;
use alloc::vec::Vec;

use crate::model::Violation;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("instance failed validation with {} violation(s)", .0.len())]
    InvalidInstance(Vec<Violation>),

    #[error("contract coordinate {index} = {value} is outside [0, 1]")]
    ContractOutOfRange { index: usize, value: f64 },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("{what} index {index} out of range (len {len})")]
    IndexOutOfRange { what: &'static str, index: usize, len: usize },

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("discretization of {family} at eps = {eps} produced no arm inside the family")]
    EmptyArmSet { family: String, eps: f64 },

    #[error("grid of {points} points exceeds the cap of {cap}; {advice}")]
    GridTooLarge { points: u128, cap: u128, advice: &'static str },

    #[error("type {type_id}: actions {first} and {second} are not ordered by first-order stochastic dominance")]
    NotFosd { type_id: usize, first: usize, second: usize },
}

pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Error {
    Error::InvalidParameter { name, reason: reason.into() }
}
