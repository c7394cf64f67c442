//! Spherical Bessel functions j_l, y_l, h_l^(1) of complex argument.
//!
//! The order-zero and order-one members have closed forms in sin/cos, so
//! the sequences are anchored exactly: j_l by backward (Miller)
//! recurrence normalised against the larger of j_0, j_1, and y_l by
//! forward recurrence, which runs with the dominant solution.

use num_complex::Complex64;

use super::SpecialFnError;

/// sin(z)/z with a series fallback near the removable singularity.
fn sinc_c(z: Complex64) -> Complex64 {
    if z.norm() < 1e-3 {
        let z2 = z * z;
        Complex64::new(1.0, 0.0) - z2 / 6.0 * (Complex64::new(1.0, 0.0) - z2 / 20.0)
    } else {
        z.sin() / z
    }
}

/// j_0 .. j_{l_max}; `margin` raises the Miller starting order.
pub(crate) fn sph_jn_seq(
    l_max: usize,
    z: Complex64,
    margin: usize,
) -> Result<Vec<Complex64>, SpecialFnError> {
    let r = z.norm();
    if r == 0.0 {
        let mut out = vec![Complex64::new(0.0, 0.0); l_max + 1];
        out[0] = Complex64::new(1.0, 0.0);
        return Ok(out);
    }
    let j0 = sinc_c(z);
    if l_max == 0 {
        return Ok(vec![j0]);
    }
    let j1 = (sinc_c(z) - z.cos()) / z;

    let base = l_max.max(r.ceil() as usize);
    let start = base + 15 + margin + (3.6 * (base as f64).sqrt()).ceil() as usize;
    let mut f = vec![Complex64::new(0.0, 0.0); start + 2];
    f[start] = Complex64::new(1e-200, 0.0);
    let inv_z = 1.0 / z;
    for l in (1..=start).rev() {
        let val = (2.0 * l as f64 + 1.0) * inv_z * f[l] - f[l + 1];
        f[l - 1] = val;
        if val.norm() > 1e250 {
            for g in f.iter_mut().skip(l - 1) {
                *g *= 1e-250;
            }
        }
    }
    // Anchor on whichever entry carries the larger magnitude.
    let (anchor_exact, anchor_val) = if f[0].norm() >= f[1].norm() {
        (j0, f[0])
    } else {
        (j1, f[1])
    };
    if anchor_val.norm() == 0.0 || !anchor_val.is_finite() {
        return Err(SpecialFnError::PrecisionLoss {
            what: "spherical Miller recurrence degenerate".into(),
        });
    }
    // Two-step scaling: |anchor_val| can sit near 1e-200, where the naive
    // complex division underflows in |b|^2.
    let inv_m = 1.0 / anchor_val.norm();
    let scale = anchor_exact / (anchor_val * inv_m) * inv_m;
    Ok(f[..=l_max].iter().map(|v| v * scale).collect())
}

/// y_0 .. y_{l_max} by forward recurrence.
pub(crate) fn sph_yn_seq(l_max: usize, z: Complex64) -> Result<Vec<Complex64>, SpecialFnError> {
    if z.norm() == 0.0 {
        return Err(SpecialFnError::Singularity {
            what: "spherical y_l at z = 0".into(),
        });
    }
    let y0 = -z.cos() / z;
    let mut out = Vec::with_capacity(l_max + 1);
    out.push(y0);
    if l_max >= 1 {
        out.push((-z.cos() / z - z.sin()) / z);
    }
    let inv_z = 1.0 / z;
    for l in 1..l_max {
        let next = (2.0 * l as f64 + 1.0) * inv_z * out[l] - out[l - 1];
        if !next.is_finite() || next.norm() > 1e290 {
            return Err(SpecialFnError::Overflow {
                what: format!("spherical y_{}({}) exceeds the f64 range", l + 1, z),
            });
        }
        out.push(next);
    }
    Ok(out)
}

/// Derivative from the lowering recurrence f'_l = f_{l-1} - (l+1)/z f_l,
/// where f_{-1} is cos(z)/z for j and sin(z)/z for y.
pub(crate) fn sph_derivative(
    seq: &[Complex64],
    l: usize,
    z: Complex64,
    f_minus1: Complex64,
) -> Complex64 {
    let below = if l == 0 { f_minus1 } else { seq[l - 1] };
    below - (l as f64 + 1.0) / z * seq[l]
}
