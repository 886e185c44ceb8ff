//! Data-parallel helpers. With the `parallel` feature the maps run on rayon;
//! without it, or after [`set_parallel(false)`](set_parallel), they run in
//! order on the calling thread. Results always come back in input order.

use std::sync::atomic::{AtomicBool, Ordering};

/// Environment variable capping worker threads; `0` means sequential.
pub const THREADS_ENV: &str = "LETTERKIT_THREADS";

static DISABLED: AtomicBool = AtomicBool::new(false);

pub fn set_parallel(enabled: bool) {
    DISABLED.store(!enabled, Ordering::Relaxed);
}

pub fn parallel_enabled() -> bool {
    cfg!(feature = "parallel") && !DISABLED.load(Ordering::Relaxed)
}

/// Applies `LETTERKIT_THREADS`. Returns the thread cap that was read, if any.
pub fn configure_from_env() -> Option<usize> {
    let threads: usize = std::env::var(THREADS_ENV).ok()?.trim().parse().ok()?;
    if threads == 0 {
        set_parallel(false);
    } else {
        #[cfg(feature = "parallel")]
        {
            // a pool may already exist when called twice; the first cap wins
            let _ = rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build_global();
        }
    }
    Some(threads)
}

pub fn map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if parallel_enabled() {
        use rayon::prelude::*;
        return items.par_iter().map(f).collect();
    }
    items.iter().map(f).collect()
}

pub fn map_range<R, F>(range: std::ops::Range<usize>, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(usize) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if parallel_enabled() {
        use rayon::prelude::*;
        return range.into_par_iter().map(f).collect();
    }
    range.map(f).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_is_preserved() {
        let xs: Vec<u32> = (0..1000).collect();
        let ys = map(&xs, |x| x * 2);
        assert!(ys.iter().enumerate().all(|(i, &y)| y == 2 * i as u32));
        let zs = map_range(0..50, |i| i + 1);
        assert_eq!(zs, (1..51).collect::<Vec<_>>());
    }
}
