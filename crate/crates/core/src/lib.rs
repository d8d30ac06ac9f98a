pub mod classify;
pub mod derivation;
pub mod grading;
pub mod linalg;
pub mod par;
pub mod poly;
pub mod presentation;
pub mod scalar;
pub mod toric;
pub mod sweep;
pub mod cli;
