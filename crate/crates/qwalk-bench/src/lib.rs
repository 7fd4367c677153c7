//! Benchmark-only crate; see `benches/walk.rs`.
