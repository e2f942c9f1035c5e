//! Criterion benchmarks for the qkd-turbo workspace; see `benches/`.
