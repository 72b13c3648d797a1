//! Benchmark-only crate; see `benches/measures.rs`.
