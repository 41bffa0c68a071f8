//! Data-parallel helpers. With the `parallel` feature these fan out over the
//! rayon pool; without it they are plain sequential loops with the same
//! results (every reduction below is order-independent or ordered).

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Map `f` over `0..n`, preserving order.
pub fn map_range<R, F>(n: usize, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(usize) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        (0..n).into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..n).map(f).collect()
    }
}

/// Map `f` over a slice, preserving order.
pub fn map_slice<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        items.par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.iter().map(f).collect()
    }
}

/// Fill the rows of a row-major buffer in parallel.
pub fn fill_rows<T, F>(buf: &mut [T], row_len: usize, f: F)
where
    T: Send,
    F: Fn(usize, &mut [T]) + Sync + Send,
{
    if row_len == 0 {
        return;
    }
    #[cfg(feature = "parallel")]
    {
        buf.par_chunks_mut(row_len).enumerate().for_each(|(i, r)| f(i, r));
    }
    #[cfg(not(feature = "parallel"))]
    {
        buf.chunks_mut(row_len).enumerate().for_each(|(i, r)| f(i, r));
    }
}

/// Cap the global worker count. Returns false if the pool was already built
/// (or the crate was compiled without parallelism).
pub fn set_threads(n: usize) -> bool {
    #[cfg(feature = "parallel")]
    {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build_global()
            .is_ok()
    }
    #[cfg(not(feature = "parallel"))]
    {
        let _ = n;
        false
    }
}

pub fn is_parallel() -> bool {
    cfg!(feature = "parallel")
}
