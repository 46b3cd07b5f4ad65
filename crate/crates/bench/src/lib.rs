//! Criterion benchmarks for `lehmer-core`; see `benches/`.
