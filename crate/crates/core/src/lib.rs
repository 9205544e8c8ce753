//! Cellular automata over groups defined by a single pattern.
//!
//! A pattern `p : S -> A` on a finite subset `S` of a group `G` (with the
//! identity in `S`) together with a write symbol `a != p(e)` defines a
//! cellular automaton that acts as the identity everywhere except where it
//! reads `p`, where it writes `a`. This crate decides idempotency of such
//! automata three independent ways (direct composition of local rules,
//! exhaustive witness search, and a theorem-based classifier), computes the
//! natural partial order on idempotent CA, and provides one-dimensional
//! subshift analytics (De Bruijn graphs, word counts, entropy, inclusion)
//! plus brute-force oracles on finite group carriers.
//!
//! Built with `--features parallel` (the default), batch operations
//! distribute work with rayon; without it every code path is sequential.

pub mod error;
pub mod group;
pub mod idempotency;
pub mod order;
pub mod oracle;
pub mod pattern;
pub mod record;
pub mod rule;
pub mod shiftspace;

mod par;

pub use error::Error;

use std::sync::atomic::{AtomicUsize, Ordering};

/// Result alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

/// Default cap on dense rule tables and fragment searches: 2^24 entries.
pub const DEFAULT_TABLE_CAP: usize = 1 << 24;

static TABLE_CAP: AtomicUsize = AtomicUsize::new(DEFAULT_TABLE_CAP);

/// Current cap on the number of entries a dense table may hold.
pub fn table_cap() -> usize {
    TABLE_CAP.load(Ordering::Relaxed)
}

/// Override the dense-table cap. Operations whose table would exceed the
/// cap refuse with [`Error::TableTooLarge`] instead of allocating.
pub fn set_table_cap(cap: usize) {
    TABLE_CAP.store(cap.max(1), Ordering::Relaxed);
}

/// Checks `k^cells` against the cap and returns it as a usize table length.
pub(crate) fn checked_table_len(k: u8, cells: usize) -> Result<usize> {
    let cap = table_cap();
    let mut len: u128 = 1;
    for _ in 0..cells {
        len *= k as u128;
        if len > cap as u128 {
            return Err(Error::TableTooLarge {
                cells: len,
                cap,
            });
        }
    }
    Ok(len as usize)
}
