//! Criterion benches for the exact kernels live in benches/.
