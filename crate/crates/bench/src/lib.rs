//! Benchmark-only crate; see benches/verification.rs.
