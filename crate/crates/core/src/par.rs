//! Data-parallel helpers with a sequential fallback.
//!
//! With the `parallel` feature (default) work is spread over a rayon pool;
//! without it, or in [`Mode::Sequential`], everything runs on the calling
//! thread. Results are always returned in index order.

use std::sync::atomic::{AtomicUsize, Ordering};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Sequential,
    /// `jobs == 0` uses the global pool.
    Parallel { jobs: usize },
}

// 0 = sequential, 1 = global pool, n + 1 = n jobs
static DEFAULT: AtomicUsize = AtomicUsize::new(1);

/// The process-wide default used by library helpers that parallelize
/// internally.
pub fn current() -> Mode {
    match DEFAULT.load(Ordering::Relaxed) {
        0 => Mode::Sequential,
        1 => Mode::Parallel { jobs: 0 },
        n => Mode::Parallel { jobs: n - 1 },
    }
}

pub fn set_default(mode: Mode) {
    let v = match mode {
        Mode::Sequential => 0,
        Mode::Parallel { jobs: 0 } => 1,
        Mode::Parallel { jobs } => jobs + 1,
    };
    DEFAULT.store(v, Ordering::Relaxed);
}

impl Mode {
    /// `--jobs N`: 1 means sequential, 0 means all cores.
    pub fn from_jobs(jobs: usize) -> Mode {
        if jobs == 1 {
            Mode::Sequential
        } else {
            Mode::Parallel { jobs }
        }
    }
}

/// `(0..n).map(f)` collected in order.
pub fn map_indexed<R, F>(mode: Mode, n: usize, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(usize) -> R + Sync + Send,
{
    match mode {
        Mode::Sequential => (0..n).map(f).collect(),
        Mode::Parallel { jobs } => parallel_map(jobs, n, f),
    }
}

#[cfg(feature = "parallel")]
fn parallel_map<R, F>(jobs: usize, n: usize, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(usize) -> R + Sync + Send,
{
    use rayon::prelude::*;
    // nested calls inside a worker stay on the existing pool
    if jobs == 0 || rayon::current_thread_index().is_some() {
        return (0..n).into_par_iter().map(f).collect();
    }
    match rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
        Ok(pool) => pool.install(|| (0..n).into_par_iter().map(&f).collect()),
        Err(_) => (0..n).map(f).collect(),
    }
}

#[cfg(not(feature = "parallel"))]
fn parallel_map<R, F>(_jobs: usize, n: usize, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(usize) -> R + Sync + Send,
{
    (0..n).map(f).collect()
}
