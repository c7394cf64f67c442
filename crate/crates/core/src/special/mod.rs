//! Complex-argument cylindrical and spherical Bessel/Hankel functions
//! and Airy-function negative zeros.
//!
//! Working range: order nu <= 200 (integer or half-integer), |z| <= 1e4.
//! Accuracy is validated by the Wronskian identities
//!
//! ```text
//! J_nu(z) H1'_nu(z) - J'_nu(z) H1_nu(z) = 2i/(pi z)
//! j_l(z)  h1'_l(z)  - j'_l(z)  h1_l(z)  = i/z^2
//! ```
//!
//! which the paired evaluators assert at runtime, retrying the backward
//! recurrence with a larger starting order before giving up.

mod airy;
mod cylindrical;
mod spherical;

pub use airy::{airy_ai_neg, airy_neg_zeros};

use num_complex::Complex64;
use std::f64::consts::PI;
use thiserror::Error;

pub(crate) use spherical::{sph_derivative, sph_jn_seq, sph_yn_seq};

const NU_MAX: f64 = 200.0;
const Z_MAX: f64 = 1e4;

#[derive(Debug, Error)]
pub enum SpecialFnError {
    #[error("singularity: {what}")]
    Singularity { what: String },
    #[error("out of working range: {what}")]
    OutOfRange { what: String },
    #[error("overflow: {what}")]
    Overflow { what: String },
    #[error("precision loss: {what}")]
    PrecisionLoss { what: String },
    #[error("invalid order: {what}")]
    InvalidOrder { what: String },
}

/// A nonnegative integer or half-integer order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Order(f64);

impl Order {
    pub fn new(value: f64) -> Result<Order, SpecialFnError> {
        let doubled = 2.0 * value;
        if !(value >= 0.0) || doubled.fract() != 0.0 {
            return Err(SpecialFnError::InvalidOrder {
                what: format!("order must be a nonnegative integer or half-integer, got {value}"),
            });
        }
        if value > NU_MAX {
            return Err(SpecialFnError::InvalidOrder {
                what: format!("order {value} exceeds the working cap {NU_MAX}"),
            });
        }
        Ok(Order(value))
    }

    pub fn value(self) -> f64 {
        self.0
    }

    pub fn is_integer(self) -> bool {
        self.0.fract() == 0.0
    }
}

fn check_argument(z: Complex64) -> Result<(), SpecialFnError> {
    if !z.is_finite() {
        return Err(SpecialFnError::OutOfRange {
            what: format!("nonfinite argument {z}"),
        });
    }
    if z.norm() > Z_MAX {
        return Err(SpecialFnError::OutOfRange {
            what: format!("|z| = {} exceeds the working cap {Z_MAX}", z.norm()),
        });
    }
    Ok(())
}

/// J, J', H^(1), H^(1)' at a common order and argument.
#[derive(Debug, Clone, Copy)]
pub struct CylPair {
    pub j: Complex64,
    pub jp: Complex64,
    pub h: Complex64,
    pub hp: Complex64,
}

/// j, j', h^(1), h^(1)' at a common order and argument.
#[derive(Debug, Clone, Copy)]
pub struct SphPair {
    pub j: Complex64,
    pub jp: Complex64,
    pub h: Complex64,
    pub hp: Complex64,
}

/// Bessel function of the first kind, complex argument.
pub fn cyl_bessel_j(nu: Order, z: Complex64) -> Result<Complex64, SpecialFnError> {
    check_argument(z)?;
    if z.norm() == 0.0 {
        // J_0(0) = 1, J_nu(0) = 0 for nu > 0.
        return Ok(if nu.value() == 0.0 {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        });
    }
    if nu.is_integer() {
        let n = nu.value() as usize;
        Ok(cylindrical::jn_sequence(n, z, 0)?[n])
    } else {
        // J_{l+1/2}(z) = sqrt(2z/pi) j_l(z), principal square root.
        let l = (nu.value() - 0.5) as usize;
        let j = sph_jn_seq(l, z, 0)?;
        Ok((2.0 * z / PI).sqrt() * j[l])
    }
}

/// Bessel function of the second kind, complex argument.
pub fn cyl_bessel_y(nu: Order, z: Complex64) -> Result<Complex64, SpecialFnError> {
    check_argument(z)?;
    if z.norm() == 0.0 {
        return Err(SpecialFnError::Singularity {
            what: format!("Y_{}(0) is singular", nu.value()),
        });
    }
    if nu.is_integer() {
        let n = nu.value() as usize;
        Ok(cylindrical::yn_sequence(n, z)?[n])
    } else {
        let l = (nu.value() - 0.5) as usize;
        let y = sph_yn_seq(l, z)?;
        Ok((2.0 * z / PI).sqrt() * y[l])
    }
}

/// Hankel function of the first kind, complex argument.
pub fn cyl_hankel1(nu: Order, z: Complex64) -> Result<Complex64, SpecialFnError> {
    check_argument(z)?;
    if z.norm() == 0.0 {
        return Err(SpecialFnError::Singularity {
            what: format!("H^(1)_{}(0) is a pole", nu.value()),
        });
    }
    let j = cyl_bessel_j(nu, z)?;
    let y = cyl_bessel_y(nu, z)?;
    Ok(j + Complex64::i() * y)
}

/// J, J', H^(1), H^(1)' at integer or half-integer order, with a runtime
/// Wronskian residual check (retried once with a deeper recurrence).
pub fn cyl_pair(nu: Order, z: Complex64) -> Result<CylPair, SpecialFnError> {
    check_argument(z)?;
    if z.norm() == 0.0 {
        return Err(SpecialFnError::Singularity {
            what: "cyl_pair at z = 0".into(),
        });
    }
    for margin in [0usize, 24, 96] {
        let pair = cyl_pair_inner(nu, z, margin)?;
        let w = pair.j * pair.hp - pair.jp * pair.h;
        let expect = 2.0 * Complex64::i() / (PI * z);
        if (w - expect).norm() <= 1e-8 * expect.norm() {
            return Ok(pair);
        }
    }
    Err(SpecialFnError::PrecisionLoss {
        what: format!("Wronskian residual check failed at nu = {}, z = {z}", nu.value()),
    })
}

fn cyl_pair_inner(nu: Order, z: Complex64, margin: usize) -> Result<CylPair, SpecialFnError> {
    if nu.is_integer() {
        let n = nu.value() as usize;
        let j = cylindrical::jn_sequence(n + 1, z, margin)?;
        let y = cylindrical::yn_sequence(n + 1, z)?;
        let h: Vec<Complex64> = j.iter().zip(&y).map(|(a, b)| a + Complex64::i() * b).collect();
        // C'_n = C_{n-1} - (n/z) C_n, with C'_0 = -C_1.
        let (jn, hn) = (j[n], h[n]);
        let (jp, hp) = if n == 0 {
            (-j[1], -h[1])
        } else {
            (
                j[n - 1] - (n as f64) / z * j[n],
                h[n - 1] - (n as f64) / z * h[n],
            )
        };
        Ok(CylPair { j: jn, jp, h: hn, hp })
    } else {
        let l = (nu.value() - 0.5) as usize;
        let sp = sph_pair_inner(l, z, margin)?;
        // C_{l+1/2} = sqrt(2z/pi) c_l  =>  C' = s c' + s' c, s = sqrt(2z/pi).
        let s = (2.0 * z / PI).sqrt();
        let sp_prime = s / (2.0 * z);
        Ok(CylPair {
            j: s * sp.j,
            jp: s * sp.jp + sp_prime * sp.j,
            h: s * sp.h,
            hp: s * sp.hp + sp_prime * sp.h,
        })
    }
}

/// Spherical Bessel function of the first kind, integer order.
pub fn sph_bessel(ell: u32, z: Complex64) -> Result<Complex64, SpecialFnError> {
    check_argument(z)?;
    if ell as f64 > NU_MAX {
        return Err(SpecialFnError::InvalidOrder {
            what: format!("spherical order {ell} exceeds the working cap"),
        });
    }
    if z.norm() == 0.0 {
        return Ok(if ell == 0 {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        });
    }
    Ok(sph_jn_seq(ell as usize, z, 0)?[ell as usize])
}

/// Spherical Hankel function of the first kind, integer order.
pub fn sph_hankel1(ell: u32, z: Complex64) -> Result<Complex64, SpecialFnError> {
    check_argument(z)?;
    if z.norm() == 0.0 {
        return Err(SpecialFnError::Singularity {
            what: format!("h^(1)_{ell}(0) is a pole"),
        });
    }
    let j = sph_jn_seq(ell as usize, z, 0)?[ell as usize];
    let y = sph_yn_seq(ell as usize, z)?[ell as usize];
    Ok(j + Complex64::i() * y)
}

/// j, j', h^(1), h^(1)' with a runtime Wronskian residual check.
pub fn sph_pair(ell: u32, z: Complex64) -> Result<SphPair, SpecialFnError> {
    check_argument(z)?;
    if z.norm() == 0.0 {
        return Err(SpecialFnError::Singularity {
            what: "sph_pair at z = 0".into(),
        });
    }
    for margin in [0usize, 24, 96] {
        let pair = sph_pair_inner(ell as usize, z, margin)?;
        let w = pair.j * pair.hp - pair.jp * pair.h;
        let expect = Complex64::i() / (z * z);
        if (w - expect).norm() <= 1e-8 * expect.norm() {
            return Ok(pair);
        }
    }
    Err(SpecialFnError::PrecisionLoss {
        what: format!("spherical Wronskian residual check failed at l = {ell}, z = {z}"),
    })
}

fn sph_pair_inner(l: usize, z: Complex64, margin: usize) -> Result<SphPair, SpecialFnError> {
    let j = sph_jn_seq(l, z, margin)?;
    let y = sph_yn_seq(l, z)?;
    let h: Vec<Complex64> = j.iter().zip(&y).map(|(a, b)| a + Complex64::i() * b).collect();
    let j_m1 = z.cos() / z;
    let y_m1 = z.sin() / z;
    let h_m1 = j_m1 + Complex64::i() * y_m1;
    let jp = sph_derivative(&j, l, z, j_m1);
    let hp = sph_derivative(&h, l, z, h_m1);
    Ok(SphPair { j: j[l], jp, h: h[l], hp })
}
