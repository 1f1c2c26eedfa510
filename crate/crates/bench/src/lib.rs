//! Criterion benchmarks for the policylint pipeline; see `benches/pipeline.rs`.
