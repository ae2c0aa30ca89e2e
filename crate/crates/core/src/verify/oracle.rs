use rayon::prelude::*;

use crate::{CertifiedValue, Error, FloorSum, Result, SumParams};

/// Largest `x_max` for the exhaustive sweep.
pub const ORACLE_MAX_X: u64 = 100_000;

#[derive(Debug, Clone, PartialEq)]
pub struct Discrepancy {
    pub x: u64,
    pub naive: CertifiedValue,
    pub block: CertifiedValue,
    pub hybrid: CertifiedValue,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OracleReport {
    pub params: SumParams,
    pub x_max: u64,
    pub checked: u64,
    pub discrepancy: Option<Discrepancy>,
}

impl OracleReport {
    pub fn passed(&self) -> bool {
        self.discrepancy.is_none()
    }
}

/// Evaluates `S` with all three evaluators for every `x ≤ x_max` and
/// reports the smallest `x` at which they disagree.
pub fn oracle_check(params: &SumParams, x_max: u64) -> Result<OracleReport> {
    if x_max == 0 || x_max > ORACLE_MAX_X {
        return Err(Error::domain(format!(
            "oracle sweep requires 1 <= x_max <= {ORACLE_MAX_X}, got {x_max}"
        )));
    }
    let eval = FloorSum::default();
    let discrepancy = (1..=x_max)
        .into_par_iter()
        .map(|x| -> Result<Option<Discrepancy>> {
            let naive = eval.naive(params, x)?;
            let block = eval.block(params, x)?;
            let hybrid = eval.hybrid(params, x)?;
            let ok = naive.agrees_with(&block)
                && block.agrees_with(&hybrid)
                && naive.agrees_with(&hybrid);
            Ok((!ok).then_some(Discrepancy {
                x,
                naive,
                block,
                hybrid,
            }))
        })
        .find_first(|r| !matches!(r, Ok(None)))
        .transpose()?
        .flatten();
    Ok(OracleReport {
        params: *params,
        x_max,
        checked: x_max,
        discrepancy,
    })
}
