//! Integer-order cylindrical Bessel functions of complex argument.
//!
//! Evaluation regions for the base pair (J_0, Y_0, J_1, Y_1):
//!   |z| <= 10        ascending series in f64,
//!   10 < |z| <= 16   ascending series in double-double (the alternating
//!                    sums lose ~6 digits there in plain f64),
//!   |z| > 16         Hankel large-argument expansions.
//!
//! Higher integer orders: J_n by backward (Miller) recurrence normalised
//! with J_0 + 2 J_2 + 2 J_4 + ... = 1, Y_n by forward recurrence from
//! (Y_0, Y_1). Both directions run with the dominant solution, so they
//! are stable on the working range nu <= 200, |z| <= 1e4.

use num_complex::Complex64;
use std::f64::consts::PI;

use super::SpecialFnError;
use crate::dd::{CDd, Dd};

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
const SERIES_MAX: f64 = 9.0;
const DD_MAX: f64 = 16.0;

/// Harmonic numbers h_k = 1 + 1/2 + ... + 1/k in double-double.
fn harmonic_dd(k_max: usize) -> Vec<Dd> {
    let mut h = Vec::with_capacity(k_max + 1);
    h.push(Dd::ZERO);
    let mut acc = Dd::ZERO;
    for k in 1..=k_max {
        acc = acc.add(Dd::ONE.div_f64(k as f64));
        h.push(acc);
    }
    h
}

/// (J_0, Y_0, J_1, Y_1) by the ascending series, f64 arithmetic.
fn base_series_f64(z: Complex64) -> [Complex64; 4] {
    let x = -z * z * 0.25; // series variable (-z^2/4)
    let log_term = (z * 0.5).ln() + EULER_GAMMA;

    // J_0 and the companion sum  S0 = sum_{k>=1} h_k x^k / (k!)^2.
    let mut term = Complex64::new(1.0, 0.0);
    let mut j0 = term;
    let mut s0 = Complex64::new(0.0, 0.0);
    let mut hk = 0.0;
    for k in 1..400 {
        let kf = k as f64;
        term *= x / (kf * kf);
        j0 += term;
        hk += 1.0 / kf;
        s0 += term * hk;
        if term.norm() < 1e-18 * j0.norm().max(1.0) {
            break;
        }
    }
    let y0 = (log_term * j0 - s0) * (2.0 / PI);

    // J_1 and  S1 = sum_{k>=0} (h_k + h_{k+1}) x^k / (k!(k+1)!).
    let mut term = Complex64::new(1.0, 0.0);
    let mut j1s = term;
    let mut s1 = Complex64::new(1.0, 0.0); // k = 0: h_0 + h_1 = 1
    let mut hk = 0.0;
    for k in 1..400 {
        let kf = k as f64;
        term *= x / (kf * (kf + 1.0));
        j1s += term;
        let hk1 = hk + 1.0 / kf;
        s1 += term * (hk1 + hk1 + 1.0 / (kf + 1.0));
        hk = hk1;
        if term.norm() < 1e-18 * j1s.norm().max(1.0) {
            break;
        }
    }
    let half_z = z * 0.5;
    let j1 = half_z * j1s;
    let y1 = -2.0 / (PI * z) + (log_term * j1 - half_z * s1 * 0.5) * (2.0 / PI);

    [j0, y0, j1, y1]
}

/// Same series with double-double accumulation of the alternating sums.
fn base_series_dd(z: Complex64) -> [Complex64; 4] {
    let n_terms = 60usize;
    let h = harmonic_dd(n_terms + 1);
    let x = {
        // -z^2/4 exactly rounded into CDd
        let zz = CDd::new(z.re, z.im);
        zz.mul(zz).mul_dd(Dd::from_f64(-0.25))
    };
    let log_term = (z * 0.5).ln() + EULER_GAMMA;

    let mut term = CDd::ONE;
    let mut j0 = CDd::ONE;
    let mut s0 = CDd::ZERO;
    for k in 1..=n_terms {
        let kf = k as f64;
        term = term.mul(x).div_f64(kf * kf);
        j0 = j0.add(term);
        s0 = s0.add(term.mul_dd(h[k]));
        if term.norm_sup() < 1e-34 {
            break;
        }
    }

    let mut term = CDd::ONE;
    let mut j1s = CDd::ONE;
    let mut s1 = CDd::ONE;
    for k in 1..=n_terms {
        let kf = k as f64;
        term = term.mul(x).div_f64(kf * (kf + 1.0));
        j1s = j1s.add(term);
        s1 = s1.add(term.mul_dd(h[k].add(h[k + 1])));
        if term.norm_sup() < 1e-34 {
            break;
        }
    }

    let j0 = j0.to_c64();
    let s0 = s0.to_c64();
    let j1 = z * 0.5 * j1s.to_c64();
    let s1 = s1.to_c64();
    let y0 = (log_term * j0 - s0) * (2.0 / PI);
    let y1 = -2.0 / (PI * z) + (log_term * j1 - z * 0.25 * s1) * (2.0 / PI);
    [j0, y0, j1, y1]
}

/// Hankel expansion sums for H^(1) (sign = +1) or H^(2) (sign = -1).
fn hankel_asymptotic(nu: f64, z: Complex64, sign: f64) -> Complex64 {
    let iu = Complex64::new(0.0, sign);
    let fournu2 = 4.0 * nu * nu;
    let mut a = Complex64::new(1.0, 0.0);
    let mut sum = a;
    let mut prev_size = f64::INFINITY;
    for k in 1..48 {
        let kf = k as f64;
        let twokm1 = 2.0 * kf - 1.0;
        a = a * (fournu2 - twokm1 * twokm1) / (8.0 * kf) * iu / z;
        let size = a.norm();
        if size > prev_size {
            break; // past the optimal truncation point
        }
        sum += a;
        prev_size = size;
        if size < 1e-18 * sum.norm() {
            break;
        }
    }
    let phase = z - (0.5 * nu + 0.25) * PI;
    (2.0 / (PI * z)).sqrt() * (iu * phase).exp() * sum
}

/// (J_0, Y_0, J_1, Y_1) by the Hankel expansions, |z| > 16.
fn base_asymptotic(z: Complex64) -> [Complex64; 4] {
    let h1_0 = hankel_asymptotic(0.0, z, 1.0);
    let h2_0 = hankel_asymptotic(0.0, z, -1.0);
    let h1_1 = hankel_asymptotic(1.0, z, 1.0);
    let h2_1 = hankel_asymptotic(1.0, z, -1.0);
    let half_i = Complex64::new(0.0, 0.5);
    [
        (h1_0 + h2_0) * 0.5,
        (h1_0 - h2_0) * -half_i,
        (h1_1 + h2_1) * 0.5,
        (h1_1 - h2_1) * -half_i,
    ]
}

/// (J_0, Y_0, J_1, Y_1) on the working range.
pub(crate) fn base_pair(z: Complex64) -> [Complex64; 4] {
    let r = z.norm();
    if r <= SERIES_MAX {
        base_series_f64(z)
    } else if r <= DD_MAX {
        base_series_dd(z)
    } else {
        base_asymptotic(z)
    }
}

/// J_0 .. J_{n_max} by Miller's backward recurrence.
///
/// `margin` raises the starting order; the caller retries with a larger
/// margin if the Wronskian residual check fails.
pub(crate) fn jn_sequence(
    n_max: usize,
    z: Complex64,
    margin: usize,
) -> Result<Vec<Complex64>, SpecialFnError> {
    let r = z.norm();
    if r == 0.0 {
        let mut out = vec![Complex64::new(0.0, 0.0); n_max + 1];
        out[0] = Complex64::new(1.0, 0.0);
        return Ok(out);
    }
    let base = n_max.max(r.ceil() as usize);
    let start = base + 15 + margin + (3.6 * (base as f64).sqrt()).ceil() as usize;

    let mut f = vec![Complex64::new(0.0, 0.0); start + 2];
    f[start + 1] = Complex64::new(0.0, 0.0);
    f[start] = Complex64::new(1e-200, 0.0);
    let inv_z = 1.0 / z;
    for n in (1..=start).rev() {
        let val = (2.0 * n as f64) * inv_z * f[n] - f[n + 1];
        f[n - 1] = val;
        if val.norm() > 1e250 {
            for g in f.iter_mut().skip(n - 1) {
                *g *= 1e-250;
            }
        }
    }
    // Normalisation: J_0 + 2 J_2 + 2 J_4 + ... = 1.
    let mut lambda = f[0];
    let mut n = 2;
    while n <= start {
        lambda += 2.0 * f[n];
        n += 2;
    }
    if lambda.norm() == 0.0 || !lambda.is_finite() {
        return Err(SpecialFnError::PrecisionLoss {
            what: "Miller normalisation sum degenerate".into(),
        });
    }
    // Two-step scaling: |lambda| can sit near 1e-200, where the naive
    // complex division underflows in |b|^2.
    let inv_m = 1.0 / lambda.norm();
    let scale = Complex64::new(inv_m, 0.0) / (lambda * inv_m);
    Ok(f[..=n_max].iter().map(|v| v * scale).collect())
}

/// Y_0 .. Y_{n_max} by forward recurrence from the base pair.
pub(crate) fn yn_sequence(n_max: usize, z: Complex64) -> Result<Vec<Complex64>, SpecialFnError> {
    let [_, y0, _, y1] = base_pair(z);
    let mut out = Vec::with_capacity(n_max + 1);
    out.push(y0);
    if n_max >= 1 {
        out.push(y1);
    }
    let inv_z = 1.0 / z;
    for n in 1..n_max {
        let next = (2.0 * n as f64) * inv_z * out[n] - out[n - 1];
        if !next.is_finite() || next.norm() > 1e290 {
            return Err(SpecialFnError::Overflow {
                what: format!("Y_{}({}) exceeds the f64 range", n + 1, z),
            });
        }
        out.push(next);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn base_pair_matches_reference_values_on_real_axis() {
        // Reference values from standard tables (15-16 digits).
        let [j0, y0, j1, y1] = base_pair(c(1.0, 0.0));
        assert!((j0.re - 0.765_197_686_557_966_6).abs() < 1e-14, "J0(1) = {j0}");
        assert!((y0.re - 0.088_256_964_215_676_96).abs() < 1e-14, "Y0(1) = {y0}");
        assert!((j1.re - 0.440_050_585_744_933_5).abs() < 1e-14, "J1(1) = {j1}");
        assert!((y1.re + 0.781_212_821_300_288_7).abs() < 1e-14, "Y1(1) = {y1}");

        let [j0, y0, j1, y1] = base_pair(c(5.0, 0.0));
        assert!((j0.re + 0.177_596_771_314_338_3).abs() < 1e-14, "J0(5) = {j0}");
        assert!((y0.re + 0.308_517_625_249_033_8).abs() < 1e-14, "Y0(5) = {y0}");
        assert!((j1.re + 0.327_579_137_591_465_2).abs() < 1e-14, "J1(5) = {j1}");
        assert!((y1.re - 0.147_863_143_391_226_8).abs() < 1e-14, "Y1(5) = {y1}");
    }

    #[test]
    fn region_boundaries_are_consistent() {
        // The three evaluation regions must agree where they abut.
        for &(r, im) in &[(9.0, 0.3), (9.0, -2.0), (16.0, 1.0), (16.0, -3.0)] {
            let re = (r * r - im * im as f64).max(0.0).sqrt();
            let z = c(re, im);
            let lo = if r <= SERIES_MAX + 1e-9 {
                base_series_f64(z)
            } else {
                base_series_dd(z)
            };
            let hi = if r <= SERIES_MAX + 1e-9 {
                base_series_dd(z)
            } else {
                base_asymptotic(z)
            };
            for (a, b) in lo.iter().zip(hi.iter()) {
                let scale = a.norm().max(b.norm()).max(1e-30);
                assert!(
                    (a - b).norm() / scale < 2e-12,
                    "mismatch at z = {z}: {a} vs {b}"
                );
            }
        }
    }

    #[test]
    fn wronskian_holds_across_regions() {
        // J_{n+1} Y_n - J_n Y_{n+1} = 2/(pi z) exercised with sequences.
        for &(re, im) in &[(0.5, 0.0), (3.0, -1.0), (9.5, 2.0), (12.0, -4.0), (30.0, 2.5)] {
            let z = c(re, im);
            let j = jn_sequence(12, z, 0).unwrap();
            let y = yn_sequence(12, z).unwrap();
            for n in 0..12 {
                let w = j[n + 1] * y[n] - j[n] * y[n + 1];
                let target = 2.0 / (PI * z);
                assert!(
                    (w - target).norm() / target.norm() < 1e-11,
                    "cross-product Wronskian off at z = {z}, n = {n}: {w} vs {target}"
                );
            }
        }
    }

    #[test]
    fn miller_handles_large_order_small_argument() {
        let z = c(0.5, 0.0);
        let j = jn_sequence(40, z, 0).unwrap();
        // J_40(0.5) from its ascending series (converged after 6 terms).
        let expected = 1.0122626959003595e-72;
        assert!(j[40].re > 0.0);
        assert!((j[40].re - expected).abs() / expected < 1e-12);
    }
}
