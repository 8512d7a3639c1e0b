//! Benchmark-only crate; see `benches/queue_ops.rs`.
