//! Benchmarks live in `benches/`; run them with `cargo bench -p wickwalk-bench`.

pub use wickwalk_core;
