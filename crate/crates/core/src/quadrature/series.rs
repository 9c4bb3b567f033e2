use crate::{Complex, Error, Result};

/// Relative size of the remaining tail at which summation stops.
const TAIL_REL: f64 = 1e-12;

/// `∫_𝔻 dA(z) / |1 − ᾱz|^p` from its power series
/// `Σ_k c_k² |α|^{2k} / (k+1)`, `c_k = Γ(k + p/2) / (Γ(p/2) k!)`.
///
/// The coefficients follow `c_{k+1} = c_k (k + p/2)/(k + 1)`. Summation stops
/// once a geometric majorant of the tail is below `1e-12` of the partial sum;
/// the majorant uses the term ratio bound `|α|² (1 + (|p−3| + |p²/4−2|)/(k+2))`.
pub fn series_kernel_integral(alpha: Complex, p: f64) -> Result<f64> {
    if !alpha.is_finite() || !p.is_finite() {
        return Err(Error::NonFinite);
    }
    if !(p > 0.0) {
        return Err(Error::InvalidArgument("kernel exponent must be positive"));
    }
    let r = alpha.norm();
    if r >= 1.0 {
        return Err(Error::OutsideOpenDisk(r));
    }
    if 1.0 - r < 1e-7 {
        return Err(Error::InvalidArgument("|alpha| too close to 1 for series summation"));
    }
    let x = alpha.norm_sqr();
    if x == 0.0 {
        return Ok(1.0);
    }
    let a = 0.5 * p;
    let spread = (2.0 * a - 3.0).abs() + (a * a - 2.0).abs();
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut comp = 0.0;
    let mut k = 0usize;
    loop {
        let kf = k as f64;
        let ratio = (kf + a) / (kf + 1.0);
        term *= x * ratio * ratio * (kf + 1.0) / (kf + 2.0);
        k += 1;
        let t = sum + term;
        comp += (sum - t) + term;
        sum = t;
        let q = x * (1.0 + spread / (k as f64 + 2.0));
        if q < 1.0 {
            let kf = k as f64;
            let next_ratio = (kf + a) / (kf + 1.0);
            let next = term * x * next_ratio * next_ratio * (kf + 1.0) / (kf + 2.0);
            if next / (1.0 - q) <= TAIL_REL * (sum + comp) {
                return Ok(sum + comp);
            }
        }
    }
}
