//! Benchmark crate; all content lives in `benches/`.
