use crate::analytic::{psi, vaaler_approx};
use crate::{Error, Result};

/// Slack for rounding in the trigonometric sum.
pub const VAALER_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VaalerViolation {
    pub h: u32,
    pub t: f64,
    pub error: f64,
    pub bound: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VaalerReport {
    pub degrees: Vec<u32>,
    pub grid: usize,
    /// Largest `|ψ − approx| / (bound + tolerance)` over the grid, per degree.
    pub worst_ratio: Vec<f64>,
    pub violation: Option<VaalerViolation>,
}

impl VaalerReport {
    pub fn passed(&self) -> bool {
        self.violation.is_none()
    }
}

/// Checks `|ψ(t) − approx_H(t)| ≤ bound_H(t) + 1e-10` at `t = i/grid`,
/// `0 ≤ i < grid`, for each `H` in `degrees`. One period suffices.
pub fn vaaler_check(degrees: &[u32], grid: usize) -> Result<VaalerReport> {
    if degrees.is_empty() || grid == 0 {
        return Err(Error::domain(
            "vaaler check needs at least one degree and one grid point",
        ));
    }
    let mut worst_ratio = Vec::with_capacity(degrees.len());
    let mut violation = None;
    for &h in degrees {
        let mut worst = 0f64;
        for i in 0..grid {
            let t = i as f64 / grid as f64;
            let v = vaaler_approx(t, h)?;
            let error = (psi(t) - v.approx).abs();
            worst = worst.max(error / (v.rh_bound + VAALER_TOLERANCE));
            if error > v.rh_bound + VAALER_TOLERANCE && violation.is_none() {
                violation = Some(VaalerViolation {
                    h,
                    t,
                    error,
                    bound: v.rh_bound,
                });
            }
        }
        worst_ratio.push(worst);
    }
    Ok(VaalerReport {
        degrees: degrees.to_vec(),
        grid,
        worst_ratio,
        violation,
    })
}
