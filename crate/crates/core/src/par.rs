/// Runs `f` on a dedicated pool of `workers` threads. Results of every
/// parallel reduction in this crate are independent of the worker count.
pub fn install<R: Send>(workers: usize, f: impl FnOnce() -> R + Send) -> R {
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .expect("thread pool construction")
        .install(f)
}
