pub mod classifier;
pub mod cli;
pub mod composition;
pub mod exact;
pub mod local;
pub mod nevanlinna;
pub mod poly;
pub mod suites;
pub mod walgebra;
