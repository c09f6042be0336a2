//! Complete elliptic integrals and the Jacobi `sn` function, all in the
//! parameter convention: `K(ν) = ∫₀^{π/2} dθ / √(1 − ν sin²θ)`.

use std::f64::consts::FRAC_PI_2;

use crate::error::{Error, Result};

// Must stay above one ulp: once a and b straddle adjacent floats the doubling
// weights would amplify the leftover difference into the E sum.
const AGM_REL_TOL: f64 = 4.0 * f64::EPSILON;
const AGM_MAX_ITER: usize = 64;
const LANDEN_MAX_DEPTH: usize = 32;

/// `ν` together with its complete integrals.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EllipticParams {
    pub nu: f64,
    pub k: f64,
    pub e: f64,
}

impl EllipticParams {
    pub fn new(nu: f64) -> Result<Self> {
        Ok(Self { nu, k: ellip_k(nu)?, e: ellip_e(nu)? })
    }

    /// `K(ν)·(K(ν) − E(ν))`, the left side of the box quantization condition.
    pub fn quantization_lhs(&self) -> f64 {
        self.k * (self.k - self.e)
    }
}

fn check_parameter(nu: f64, allow_one: bool) -> Result<()> {
    let ok = if allow_one { (0.0..=1.0).contains(&nu) } else { (0.0..1.0).contains(&nu) };
    if ok {
        Ok(())
    } else {
        Err(Error::Domain { name: "nu", value: nu, domain: if allow_one { "[0, 1]" } else { "[0, 1)" } })
    }
}

/// Runs the AGM of `(1, √(1−ν))`, returning the limit and `Σ 2^{n−1} c_n²`
/// (with `c_0² = ν`).
fn agm(nu: f64) -> (f64, f64) {
    let mut a = 1.0_f64;
    let mut b = (1.0 - nu).sqrt();
    let mut weight = 0.5;
    let mut sum = weight * nu;
    for _ in 0..AGM_MAX_ITER {
        if (a - b).abs() <= AGM_REL_TOL * a {
            break;
        }
        let c = 0.5 * (a - b);
        let next_a = 0.5 * (a + b);
        b = (a * b).sqrt();
        a = next_a;
        weight *= 2.0;
        sum += weight * c * c;
    }
    (a, sum)
}

/// Complete elliptic integral of the first kind; `ν ∈ [0, 1)`.
pub fn ellip_k(nu: f64) -> Result<f64> {
    check_parameter(nu, false)?;
    if nu == 0.0 {
        return Ok(FRAC_PI_2);
    }
    let (a, _) = agm(nu);
    Ok(FRAC_PI_2 / a)
}

/// Complete elliptic integral of the second kind; `ν ∈ [0, 1]`.
pub fn ellip_e(nu: f64) -> Result<f64> {
    check_parameter(nu, true)?;
    if nu == 0.0 {
        return Ok(FRAC_PI_2);
    }
    if nu == 1.0 {
        return Ok(1.0);
    }
    let (a, sum) = agm(nu);
    Ok(FRAC_PI_2 / a * (1.0 - sum))
}

/// Jacobi `sn(u|ν)` by the descending AGM (Landen) recursion.
pub fn jacobi_sn(u: f64, nu: f64) -> Result<f64> {
    check_parameter(nu, true)?;
    if nu == 0.0 {
        return Ok(u.sin());
    }
    if nu == 1.0 {
        return Ok(u.tanh());
    }
    let mut a = [0.0_f64; LANDEN_MAX_DEPTH + 1];
    let mut c = [0.0_f64; LANDEN_MAX_DEPTH + 1];
    a[0] = 1.0;
    let mut b = (1.0 - nu).sqrt();
    c[0] = nu.sqrt();
    let mut depth = 0;
    while depth < LANDEN_MAX_DEPTH && c[depth].abs() > f64::EPSILON * a[depth] {
        let (ai, bi) = (a[depth], b);
        a[depth + 1] = 0.5 * (ai + bi);
        c[depth + 1] = 0.5 * (ai - bi);
        b = (ai * bi).sqrt();
        depth += 1;
    }
    let mut phi = (1u64 << depth) as f64 * a[depth] * u;
    for i in (1..=depth).rev() {
        let s = (c[i] / a[i] * phi.sin()).clamp(-1.0, 1.0);
        phi = 0.5 * (phi + s.asin());
    }
    Ok(phi.sin())
}

/// First-order small-`ν` expansion `sin u − (ν/4)(u − sin u cos u) cos u`.
pub fn sn_series(u: f64, nu: f64) -> f64 {
    let (s, c) = u.sin_cos();
    s - 0.25 * nu * (u - s * c) * c
}
