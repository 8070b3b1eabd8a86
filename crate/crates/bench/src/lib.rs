//! Benchmarks for the tensor kernel live in `benches/`.
