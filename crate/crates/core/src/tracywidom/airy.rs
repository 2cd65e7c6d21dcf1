//! Airy function Ai and its derivative on [-15, 15].
//!
//! Maclaurin series on the central interval, the standard asymptotic
//! expansions outside it. Switch points are chosen so that both the series
//! cancellation error and the smallest asymptotic term stay below 1e-10.

use std::f64::consts::{FRAC_PI_4, PI};

use crate::error::{Error, Result};

pub const AIRY_MIN: f64 = -15.0;
pub const AIRY_MAX: f64 = 15.0;

/// Ai(0) = 3^(-2/3) / Γ(2/3).
pub const AI0: f64 = 0.355_028_053_887_817_2;
/// Ai'(0) = -3^(-1/3) / Γ(1/3).
pub const AIP0: f64 = -0.258_819_403_792_806_8;

const SERIES_RIGHT: f64 = 6.0;
const SERIES_LEFT: f64 = -7.0;

/// `(Ai(x), Ai'(x))` for `x` in [-15, 15].
pub fn airy(x: f64) -> Result<(f64, f64)> {
    if !(AIRY_MIN..=AIRY_MAX).contains(&x) {
        return Err(Error::OutOfRange { value: x, lo: AIRY_MIN, hi: AIRY_MAX });
    }
    Ok(airy_unchecked(x))
}

pub(crate) fn airy_unchecked(x: f64) -> (f64, f64) {
    if x > SERIES_RIGHT {
        asymptotic_positive(x)
    } else if x < SERIES_LEFT {
        asymptotic_negative(-x)
    } else {
        maclaurin(x)
    }
}

fn maclaurin(x: f64) -> (f64, f64) {
    // f = sum c_k x^{3k}, g = sum d_k x^{3k+1}; Ai = Ai(0) f + Ai'(0) g
    let x3 = x * x * x;
    let (mut f, mut fp, mut g, mut gp) = (1.0, 0.0, x, 1.0);
    let mut cf = 1.0; // c_k x^{3k}
    let mut cg = x; // d_k x^{3k+1}
    let mut k = 1.0f64;
    loop {
        cf *= x3 / ((3.0 * k - 1.0) * (3.0 * k));
        cg *= x3 / ((3.0 * k) * (3.0 * k + 1.0));
        f += cf;
        g += cg;
        if x != 0.0 {
            fp += 3.0 * k * cf / x;
            gp += (3.0 * k + 1.0) * cg / x;
        }
        let scale = f.abs() + g.abs() + 1.0;
        if cf.abs() + cg.abs() < 1e-18 * scale && k > 2.0 {
            break;
        }
        k += 1.0;
    }
    (AI0 * f + AIP0 * g, AI0 * fp + AIP0 * gp)
}

/// Coefficients u_k of the Airy asymptotic series, with v_k.
fn uv(k: usize) -> (f64, f64) {
    let mut u = 1.0;
    for j in 1..=k {
        let jf = j as f64;
        u *= (6.0 * jf - 5.0) * (6.0 * jf - 3.0) * (6.0 * jf - 1.0) / ((2.0 * jf - 1.0) * 216.0 * jf);
    }
    let kf = k as f64;
    let v = if k == 0 { 1.0 } else { -(6.0 * kf + 1.0) / (6.0 * kf - 1.0) * u };
    (u, v)
}

/// Partial sums `sum (-1)^k c_k z^{-k}` of u and v, truncated at the
/// smallest term.
fn alternating_sums(zeta: f64) -> (f64, f64) {
    let mut su = 0.0;
    let mut sv = 0.0;
    let mut last = f64::INFINITY;
    for k in 0..60 {
        let (u, v) = uv(k);
        let p = zeta.powi(-(k as i32));
        let term = u * p;
        if term.abs() > last {
            break;
        }
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        su += sign * term;
        sv += sign * v * p;
        last = term.abs();
        if last < 1e-17 {
            break;
        }
    }
    (su, sv)
}

fn asymptotic_positive(x: f64) -> (f64, f64) {
    let zeta = 2.0 / 3.0 * x.powf(1.5);
    let (su, sv) = alternating_sums(zeta);
    let pre = (-zeta).exp() / (2.0 * PI.sqrt());
    let q = x.powf(0.25);
    (pre / q * su, -pre * q * sv)
}

/// Ai(-y), Ai'(-y) for large positive y.
fn asymptotic_negative(y: f64) -> (f64, f64) {
    let zeta = 2.0 / 3.0 * y.powf(1.5);
    let (mut ue, mut uo, mut ve, mut vo) = (0.0, 0.0, 0.0, 0.0);
    let mut last = f64::INFINITY;
    for k in 0..60 {
        let (u, v) = uv(k);
        let p = zeta.powi(-(k as i32));
        let term = u * p;
        if term.abs() > last {
            break;
        }
        last = term.abs();
        // even k = 2m contributes (-1)^m to the first sums, odd k = 2m+1 to the second
        let m = k / 2;
        let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
        if k % 2 == 0 {
            ue += sign * term;
            ve += sign * v * p;
        } else {
            uo += sign * term;
            vo += sign * v * p;
        }
        if last < 1e-17 {
            break;
        }
    }
    let phase = zeta - FRAC_PI_4;
    let (s, c) = phase.sin_cos();
    let q = y.powf(0.25);
    let rp = PI.sqrt();
    let ai = (c * ue + s * uo) / (rp * q);
    let aip = q / rp * (s * ve - c * vo);
    (ai, aip)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn values_at_origin() {
        let (a, ap) = airy(0.0).unwrap();
        assert!((a - 0.3550280539).abs() < 1e-10);
        assert!((ap + 0.2588194038).abs() < 1e-10);
    }

    #[test]
    fn out_of_range_rejected() {
        assert!(airy(15.5).is_err());
        assert!(airy(-16.0).is_err());
        assert!(airy(f64::NAN).is_err());
    }

    #[test]
    fn branches_agree_at_switch_points() {
        for x in [SERIES_RIGHT, SERIES_RIGHT - 0.5, SERIES_RIGHT + 0.5] {
            let (a, ap) = maclaurin(x);
            let (b, bp) = asymptotic_positive(x);
            assert!((a - b).abs() < 1e-11 && (ap - bp).abs() < 1e-10, "x = {x}");
        }
        for x in [SERIES_LEFT, SERIES_LEFT + 0.5, SERIES_LEFT - 0.5] {
            let (a, ap) = maclaurin(x);
            let (b, bp) = asymptotic_negative(-x);
            assert!((a - b).abs() < 1e-10 && (ap - bp).abs() < 1e-10, "x = {x}: {a} {b} {ap} {bp}");
        }
    }

    #[test]
    fn satisfies_airy_equation() {
        // Ai'' = x Ai, checked by central differences away from switch points
        for x in [-12.0, -3.3, 0.7, 2.5, 9.0] {
            let h = 1e-3;
            let (a0, _) = airy(x).unwrap();
            let (am, _) = airy(x - h).unwrap();
            let (ap, _) = airy(x + h).unwrap();
            let second = (ap - 2.0 * a0 + am) / (h * h);
            assert!((second - x * a0).abs() < 1e-5, "x = {x}");
        }
    }
}
