//! Criterion benchmarks for `anzahl`; see `benches/kernels.rs`.
