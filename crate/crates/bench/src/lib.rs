//! Criterion benchmarks for the `landslide` crate; see `benches/`.
