//! Data-parallel map over independent work items, with a sequential path.
//!
//! Without the `parallel` feature every mode runs sequentially.

use std::sync::atomic::{AtomicU8, Ordering};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExecMode {
    Sequential,
    Parallel,
}

static MODE: AtomicU8 = AtomicU8::new(if cfg!(feature = "parallel") { 1 } else { 0 });

/// Process-wide mode used by the analysis routines.
pub fn exec_mode() -> ExecMode {
    if MODE.load(Ordering::Relaxed) == 1 {
        ExecMode::Parallel
    } else {
        ExecMode::Sequential
    }
}

pub fn set_exec_mode(mode: ExecMode) {
    MODE.store(matches!(mode, ExecMode::Parallel) as u8, Ordering::Relaxed);
}

/// `items.iter().map(f).collect()`, in parallel when enabled.
pub fn map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec_mode() == ExecMode::Parallel {
        use rayon::prelude::*;
        return items.par_iter().map(f).collect();
    }
    items.iter().map(f).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modes_agree() {
        let items: Vec<u64> = (0..100).collect();
        set_exec_mode(ExecMode::Sequential);
        let a = map(&items, |x| x * x);
        set_exec_mode(ExecMode::Parallel);
        let b = map(&items, |x| x * x);
        assert_eq!(a, b);
    }
}
