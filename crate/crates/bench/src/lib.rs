//! Benchmarks for wulff-core; see `benches/`.
