use crate::{Error, Result};

/// Resource limits shared by every table-building operation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Upper bound on the bytes a single table may occupy.
    pub memory_cap_bytes: u64,
    /// Largest `x` accepted by the linear-time evaluator.
    pub naive_max_x: u64,
    /// Entries per segment in segmented sieving.
    pub segment_len: usize,
}

impl Limits {
    pub const MIN_MEMORY_CAP: u64 = 1 << 24;

    pub fn with_memory_cap(mut self, bytes: u64) -> Result<Self> {
        if bytes < Self::MIN_MEMORY_CAP {
            return Err(Error::domain(format!(
                "memory cap {bytes} below minimum {}",
                Self::MIN_MEMORY_CAP
            )));
        }
        self.memory_cap_bytes = bytes;
        Ok(self)
    }

    /// Fails with a capacity error when `entries` 8-byte values do not fit
    /// under the cap.
    pub(crate) fn check_entries(&self, what: &'static str, entries: u64) -> Result<()> {
        let needed = entries.saturating_mul(8);
        if needed > self.memory_cap_bytes {
            return Err(Error::Capacity {
                what,
                needed,
                cap: self.memory_cap_bytes,
            });
        }
        Ok(())
    }

    /// Largest number of 8-byte entries a table may hold.
    pub(crate) fn max_entries(&self) -> u64 {
        self.memory_cap_bytes / 8
    }
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            memory_cap_bytes: 1 << 33,
            naive_max_x: 1_000_000_000,
            segment_len: 1 << 22,
        }
    }
}
