//! Criterion benchmarks for cehom-core; see `benches/algebra.rs`.
