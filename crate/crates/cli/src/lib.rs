//! Batch runs over generated or stored instances, reported as CSV.

pub mod bench;
