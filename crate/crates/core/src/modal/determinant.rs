//! Modal determinants: per-angular-mode matching conditions whose zeros
//! in the lower half-plane are the scattering resonances.
//!
//! 3-d penetrable ball (interior profile j_l(kr/c), exterior h_l^(1)(kr)):
//!
//! ```text
//! D_l(k) = (k/c) j'_l(ka/c) h_l(ka) - alpha k j_l(ka/c) h'_l(ka)
//! ```
//!
//! with the cylindrical analogue in 2-d. Dirichlet and Neumann balls
//! reduce to h_l(ka) and h'_l(ka). Free space uses the same matching
//! with c = alpha = 1 at the reference radius a = 1, which collapses to
//! a nonvanishing Wronskian multiple.

use num_complex::Complex64;

use super::ModalError;
use crate::scatterer::{ScattererKind, ScattererSpec};
use crate::special::{self, Order};

/// Radial function pair (value, derivative) plus the second derivative
/// from the defining ODE, used for analytic Newton steps.
struct Radial {
    f: Complex64,
    fp: Complex64,
    fpp: Complex64,
}

fn sph_j(ell: u32, z: Complex64) -> Result<Radial, ModalError> {
    let p = special::sph_pair(ell, z)?;
    let l = ell as f64;
    // z^2 f'' + 2 z f' + (z^2 - l(l+1)) f = 0
    let fpp = (-2.0 * z * p.jp - (z * z - l * (l + 1.0)) * p.j) / (z * z);
    Ok(Radial { f: p.j, fp: p.jp, fpp })
}

fn sph_h(ell: u32, z: Complex64) -> Result<Radial, ModalError> {
    let p = special::sph_pair(ell, z)?;
    let l = ell as f64;
    let fpp = (-2.0 * z * p.hp - (z * z - l * (l + 1.0)) * p.h) / (z * z);
    Ok(Radial { f: p.h, fp: p.hp, fpp })
}

fn cyl_j(ell: u32, z: Complex64) -> Result<Radial, ModalError> {
    let p = special::cyl_pair(Order::new(ell as f64).expect("integer order"), z)?;
    let nu = ell as f64;
    // z^2 F'' + z F' + (z^2 - nu^2) F = 0
    let fpp = (-z * p.jp - (z * z - nu * nu) * p.j) / (z * z);
    Ok(Radial { f: p.j, fp: p.jp, fpp })
}

fn cyl_h(ell: u32, z: Complex64) -> Result<Radial, ModalError> {
    let p = special::cyl_pair(Order::new(ell as f64).expect("integer order"), z)?;
    let nu = ell as f64;
    let fpp = (-z * p.hp - (z * z - nu * nu) * p.h) / (z * z);
    Ok(Radial { f: p.h, fp: p.hp, fpp })
}

/// D_l(k) together with dD_l/dk.
pub fn modal_determinant_with_derivative(
    spec: &ScattererSpec,
    ell: u32,
    k: Complex64,
) -> Result<(Complex64, Complex64), ModalError> {
    if k.norm() == 0.0 {
        return Err(ModalError::Special(special::SpecialFnError::Singularity {
            what: "modal determinant at k = 0".into(),
        }));
    }
    let a = match spec.kind {
        ScattererKind::Free => 1.0,
        _ => spec.radius_or_zero(),
    };
    let (c, alpha) = match spec.kind {
        ScattererKind::Penetrable => (spec.contrast_or_one(), spec.alpha_or_one()),
        _ => (1.0, 1.0),
    };
    let za = k * a;
    let inner = |z| if spec.dimension == 3 { sph_j(ell, z) } else { cyl_j(ell, z) };
    let outer = |z| if spec.dimension == 3 { sph_h(ell, z) } else { cyl_h(ell, z) };

    match spec.kind {
        ScattererKind::ImpenetrableDirichlet => {
            let h = outer(za)?;
            Ok((h.f, a * h.fp))
        }
        ScattererKind::ImpenetrableNeumann => {
            let h = outer(za)?;
            Ok((h.fp, a * h.fpp))
        }
        ScattererKind::Free | ScattererKind::Penetrable => {
            let w = za / c;
            let j = inner(w)?;
            let h = outer(za)?;
            let d = k / c * j.fp * h.f - alpha * k * j.f * h.fp;
            // d/dk, with dw/dk = a/c and dza/dk = a.
            let dp = j.fp * h.f / c
                + k / c * (a / c) * j.fpp * h.f
                + k / c * j.fp * a * h.fp
                - alpha * j.f * h.fp
                - alpha * k * (a / c) * j.fp * h.fp
                - alpha * k * j.f * a * h.fpp;
            Ok((d, dp))
        }
    }
}

/// The modal determinant D_l(k); zeros are the mode-l resonances.
pub fn modal_determinant(
    spec: &ScattererSpec,
    ell: u32,
    k: Complex64,
) -> Result<Complex64, ModalError> {
    Ok(modal_determinant_with_derivative(spec, ell, k)?.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::airy_neg_zeros;

    fn c64(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn free_space_determinant_is_the_wronskian_multiple() {
        // Free: D_l(k) = k (j' h - j h')(k) = -i/k at a = 1, any l.
        let spec = ScattererSpec::free(3);
        for ell in [0u32, 3, 11] {
            for &k in &[c64(2.0, 0.0), c64(5.0, -1.5), c64(9.0, 2.0)] {
                let d = modal_determinant(&spec, ell, k).unwrap();
                let expect = -Complex64::i() / k;
                assert!(
                    (d - expect).norm() / expect.norm() < 1e-10,
                    "ell = {ell}, k = {k}: {d} vs {expect}"
                );
            }
        }
    }

    #[test]
    fn dirichlet_mode_one_root_at_minus_i() {
        // h^(1)_1(z) = -e^{iz}(z + i)/z^2 vanishes exactly at z = -i.
        let spec = ScattererSpec::dirichlet_ball(3, 1.0);
        let d = modal_determinant(&spec, 1, c64(0.0, -1.0)).unwrap();
        assert!(d.norm() < 1e-13, "|D| = {}", d.norm());
        // and the derivative there is nonzero (simple zero)
        let (_, dp) = modal_determinant_with_derivative(&spec, 1, c64(0.0, -1.0)).unwrap();
        assert!(dp.norm() > 0.1);
    }

    #[test]
    fn derivative_matches_finite_differences() {
        let spec = ScattererSpec::penetrable(3, 1.0, 0.5, 1.0);
        for &(ell, k) in &[(0u32, c64(3.0, -0.4)), (7, c64(6.0, -1.0)), (20, c64(12.5, -0.2))] {
            let (_, dp) = modal_determinant_with_derivative(&spec, ell, k).unwrap();
            let h = 1e-6;
            let dplus = modal_determinant(&spec, ell, k + c64(h, 0.0)).unwrap();
            let dminus = modal_determinant(&spec, ell, k - c64(h, 0.0)).unwrap();
            let fd = (dplus - dminus) / (2.0 * h);
            assert!(
                (dp - fd).norm() / fd.norm().max(1e-12) < 1e-5,
                "ell = {ell}, k = {k}: {dp} vs {fd}"
            );
        }
    }

    #[test]
    fn whispering_gallery_minimum_near_airy_prediction() {
        // Penetrable c = 0.5, l = 20: |D_l| should dip near
        // k = c (nu + a_1 (nu/2)^{1/3}), nu = 20.5, close to the real axis.
        let spec = ScattererSpec::penetrable(3, 1.0, 0.5, 1.0);
        let nu = 20.5f64;
        let a1 = airy_neg_zeros(1).unwrap()[0];
        let pred = 0.5 * (nu + a1 * (nu / 2.0f64).powf(1.0 / 3.0));

        // Fine-grid scan oracle over a strip segment around the prediction.
        let mut best = (f64::INFINITY, 0.0f64);
        let mut worst: f64 = 0.0;
        let steps = 400;
        for i in 0..=steps {
            let k = pred - 1.5 + 3.0 * i as f64 / steps as f64;
            let d = modal_determinant(&spec, 20, c64(k, -1e-3)).unwrap().norm();
            if d < best.0 {
                best = (d, k);
            }
            worst = worst.max(d);
        }
        assert!(
            (best.1 - pred).abs() < 1.0,
            "minimum at {} vs prediction {pred}",
            best.1
        );
        assert!(best.0 < 1e-2 * worst, "no pronounced dip: {best:?} vs {worst}");
    }

    #[test]
    fn shooting_oracle_confirms_interior_log_derivative() {
        // Independent oracle: integrate the interior radial ODE
        //   u'' + (2/r) u' + (k^2/c^2 - l(l+1)/r^2) u = 0
        // by RK4 from a series start near r = 0 and compare the interior
        // log-derivative u'/u at r = a with (k/c) j'_l(ka/c) / j_l(ka/c).
        let spec = ScattererSpec::penetrable(3, 1.0, 0.5, 1.0);
        let a = 1.0;
        for &(ell, k) in &[(2u32, c64(4.0, -0.3)), (9, c64(7.5, -0.8))] {
            let kc = k / 0.5;
            let l = ell as f64;
            // series start: u = r^l (1 - (kc r)^2 / (2(2l+3)) )
            let r0 = 1e-4f64;
            let q = kc * kc / (2.0 * (2.0 * l + 3.0));
            let mut u = r0.powf(l) * (Complex64::new(1.0, 0.0) - q * r0 * r0);
            let mut up = l * r0.powf(l - 1.0) * (Complex64::new(1.0, 0.0) - q * r0 * r0)
                - r0.powf(l) * 2.0 * q * r0;
            let n_steps = 40_000usize;
            let h = (a - r0) / n_steps as f64;
            let rhs = |r: f64, u: Complex64, up: Complex64| {
                (up, -2.0 / r * up - (kc * kc - l * (l + 1.0) / (r * r)) * u)
            };
            let mut r = r0;
            for _ in 0..n_steps {
                let (k1u, k1p) = rhs(r, u, up);
                let (k2u, k2p) = rhs(r + h / 2.0, u + k1u * (h / 2.0), up + k1p * (h / 2.0));
                let (k3u, k3p) = rhs(r + h / 2.0, u + k2u * (h / 2.0), up + k2p * (h / 2.0));
                let (k4u, k4p) = rhs(r + h, u + k3u * h, up + k3p * h);
                u += (k1u + 2.0 * k2u + 2.0 * k3u + k4u) * (h / 6.0);
                up += (k1p + 2.0 * k2p + 2.0 * k3p + k4p) * (h / 6.0);
                r += h;
            }
            let shoot = up / u;
            let p = special::sph_pair(ell, kc * a).unwrap();
            let analytic = kc * p.jp / p.j;
            assert!(
                (shoot - analytic).norm() / analytic.norm() < 1e-7,
                "ell = {ell}, k = {k}: {shoot} vs {analytic}"
            );
        }
    }
}
