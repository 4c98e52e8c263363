//! Criterion benchmarks of the Zeldovich number library; see `benches/`.
