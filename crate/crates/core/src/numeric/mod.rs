//! Deterministic numeric kernels: row-major matrices, the training matmuls,
//! a seeded generator, and an Adam optimizer.
//!
//! Every floating-point reduction in this module runs in a fixed order that
//! does not depend on how many worker threads are active, so results are
//! bit-identical whether the thread pool has one thread or sixteen.

mod adam;
mod matrix;
mod rng;

pub use adam::Adam;
pub use matrix::{grad_inputs, grad_weights, linear_forward, matmul, Matrix};
pub use rng::{SeededRng, PRNG_ALGORITHM_ID};

use std::sync::OnceLock;

/// Environment variable that pins the worker-thread count.
pub const THREADS_ENV: &str = "INR_STEGO_THREADS";

/// Process-wide thread pool for the matrix kernels.
///
/// Sized from `INR_STEGO_THREADS` if set (minimum 1), otherwise from the
/// number of available CPUs. Built once; later changes to the environment
/// variable have no effect.
pub fn pool() -> &'static rayon::ThreadPool {
    static POOL: OnceLock<rayon::ThreadPool> = OnceLock::new();
    POOL.get_or_init(|| {
        let threads = std::env::var(THREADS_ENV)
            .ok()
            .and_then(|v| v.trim().parse::<usize>().ok())
            .filter(|&n| n >= 1)
            .unwrap_or_else(|| {
                std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1)
            });
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .thread_name(|i| format!("inrstego-worker-{i}"))
            .build()
            .expect("failed to build worker thread pool")
    })
}
