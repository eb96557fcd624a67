//! Benchmark-only crate: no library code of its own. The criterion
//! benchmarks in `benches/` time the numeric kernels of `satrep-core` —
//! run them with `cargo bench -p satrep-bench`.
