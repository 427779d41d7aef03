//! Benchmarks for ringcodes kernels.
