//! File formats, certificates with standalone replay verification, and
//! the sweep engine behind the `chipfire` command line.

pub mod certificate;
pub mod format;
pub mod replay;
pub mod sweep;

/// Reduction iteration cap, overridable through `CHIPFIRE_ITER_CAP`.
pub fn iter_cap() -> usize {
    std::env::var("CHIPFIRE_ITER_CAP")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(chipfire_core::DEFAULT_ITER_CAP)
}
