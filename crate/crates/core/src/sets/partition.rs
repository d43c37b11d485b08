//! Partition of `ω \ {0}` into the infinitely many large sets
//! `{2^n · odd}`.

use std::collections::BTreeSet;

use super::{Periodic, SetSpec};
use crate::error::{domain, Result};

/// The `n` with `m = 2^n · (odd)`.
pub fn large_partition_cell(m: u64) -> Result<u32> {
    if m == 0 {
        return Err(domain("0 lies in no cell of the 2^n·odd partition"));
    }
    Ok(m.trailing_zeros())
}

/// `{m : m ≡ 2^n (mod 2^{n+1})}`, the cell of index `n`.
pub fn large_partition_spec(n: u32) -> Result<SetSpec> {
    if n >= 63 {
        return Err(domain(format!("cell {n} has a period beyond u64")));
    }
    let period = 1u64 << (n + 1);
    Ok(SetSpec::Periodic(Periodic::new(
        BTreeSet::new(),
        0,
        period,
        [1u64 << n].into(),
    )?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sets::{classify, Verdict};

    #[test]
    fn cells() {
        assert_eq!(large_partition_cell(12).unwrap(), 2);
        assert_eq!(large_partition_cell(1).unwrap(), 0);
        assert!(large_partition_cell(0).is_err());
        assert_eq!(large_partition_spec(0).unwrap(), SetSpec::odds());
    }

    #[test]
    fn cells_agree_with_specs_and_are_large() {
        for n in 0..12 {
            let spec = large_partition_spec(n).unwrap();
            assert_eq!(classify(&spec).large.verdict, Verdict::Yes);
            for m in 1..5000 {
                assert_eq!(spec.member(m).unwrap(), large_partition_cell(m).unwrap() == n);
            }
        }
    }
}
