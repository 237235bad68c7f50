//! Criterion benchmarks for `locres-core`; see `benches/`.
