//! Ai(-x) on x >= 0 and its negative zeros.
//!
//! Taylor series in double-double for x <= 8 (the cancellation there
//! reaches ~e^15, far beyond plain f64), oscillatory large-argument
//! expansion beyond. Zeros by bisection started from the standard
//! asymptotic guesses.

use std::f64::consts::PI;

use super::SpecialFnError;
use crate::dd::Dd;

const TAYLOR_MAX: f64 = 8.0;

/// Ai(0) and -Ai'(0) to double-double accuracy.
fn airy_origin_constants() -> (Dd, Dd) {
    let c1 = Dd::parse("0.35502805388781723926006318600418317639797917419917724058332651030081004245");
    let c2 = Dd::parse("0.25881940379280679840518356018920396347909113835536239261038420438033847103");
    (c1, c2)
}

/// Ai(-x) for 0 <= x <= TAYLOR_MAX by the two fundamental Taylor series
/// of w'' = z w at z = -x, combined with double-double accumulation.
fn ai_neg_taylor(x: f64) -> f64 {
    let (c1, c2) = airy_origin_constants();
    let z3 = Dd::from_f64(-x).mul(Dd::from_f64(x)).mul(Dd::from_f64(x)); // (-x)^3
    // f(z) = 1 + z^3/(2*3) + ...,  term ratio z^3/((3k+2)(3k+3))
    let mut term = Dd::ONE;
    let mut f = Dd::ONE;
    // g(z) = z + z^4/(3*4) + ..., term ratio z^3/((3k+3)(3k+4)); track g/z.
    let mut germ = Dd::ONE;
    let mut g_over_z = Dd::ONE;
    for k in 0..200 {
        let kf = 3.0 * k as f64;
        term = term.mul(z3).div_f64((kf + 2.0) * (kf + 3.0));
        f = f.add(term);
        germ = germ.mul(z3).div_f64((kf + 3.0) * (kf + 4.0));
        g_over_z = g_over_z.add(germ);
        if term.abs().max(germ.abs()) < 1e-40 {
            break;
        }
    }
    let g = g_over_z.mul_f64(-x);
    c1.mul(f).sub(c2.mul(g)).to_f64()
}

/// Ai(-x) for x > TAYLOR_MAX by the oscillatory expansion
/// Ai(-x) = x^{-1/4}/sqrt(pi) [cos(zeta - pi/4) P + sin(zeta - pi/4) Q],
/// zeta = (2/3) x^{3/2}.
fn ai_neg_asymptotic(x: f64) -> f64 {
    let zeta = 2.0 / 3.0 * x.powf(1.5);
    // u_{k+1} = u_k (6k+1)(6k+5) / (72 (k+1)), alternating in the two sums.
    let mut u = vec![1.0f64];
    for k in 0..40usize {
        let kf = k as f64;
        let next = u[k] * (6.0 * kf + 1.0) * (6.0 * kf + 5.0) / (72.0 * (kf + 1.0));
        u.push(next);
    }
    let mut p = 0.0;
    let mut q = 0.0;
    let mut prev = f64::INFINITY;
    for k in 0..20usize {
        let tp = u[2 * k] / zeta.powi(2 * k as i32);
        let tq = u[2 * k + 1] / zeta.powi(2 * k as i32 + 1);
        if tp.abs().max(tq.abs()) > prev {
            break;
        }
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        p += sign * tp;
        q += sign * tq;
        prev = tp.abs().max(tq.abs());
        if prev < 1e-18 {
            break;
        }
    }
    let phase = zeta - 0.25 * PI;
    (phase.cos() * p + phase.sin() * q) / (PI.sqrt() * x.powf(0.25))
}

/// Ai(-x) for x >= 0.
pub fn airy_ai_neg(x: f64) -> f64 {
    if x <= TAYLOR_MAX {
        ai_neg_taylor(x)
    } else {
        ai_neg_asymptotic(x)
    }
}

/// The first `count` zeros of Ai(-x), increasing, each accurate to
/// machine precision of the evaluator above.
pub fn airy_neg_zeros(count: usize) -> Result<Vec<f64>, SpecialFnError> {
    if count == 0 {
        return Ok(Vec::new());
    }
    if count > 50 {
        return Err(SpecialFnError::OutOfRange {
            what: format!("airy_neg_zeros supports count <= 50, got {count}"),
        });
    }
    let mut zeros = Vec::with_capacity(count);
    for m in 1..=count {
        // McMahon-style guess: a_m ~ t^{2/3}(1 + 5/(48 t^2)), t = 3 pi (4m-1)/8.
        let t = 3.0 * PI * (4.0 * m as f64 - 1.0) / 8.0;
        let guess = t.powf(2.0 / 3.0) * (1.0 + 5.0 / (48.0 * t * t));
        let mut lo = guess - 0.5;
        let mut hi = guess + 0.5;
        if let Some(prev) = zeros.last() {
            lo = lo.max(prev + 1e-6);
        }
        lo = lo.max(1e-6);
        // Widen until a sign change brackets the zero.
        let mut flo = airy_ai_neg(lo);
        let mut fhi = airy_ai_neg(hi);
        let mut widen = 0;
        while flo * fhi > 0.0 && widen < 40 {
            lo = (lo - 0.1).max(1e-6);
            hi += 0.1;
            flo = airy_ai_neg(lo);
            fhi = airy_ai_neg(hi);
            widen += 1;
        }
        if flo * fhi > 0.0 {
            return Err(SpecialFnError::PrecisionLoss {
                what: format!("failed to bracket Airy zero #{m}"),
            });
        }
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid == lo || mid == hi {
                break;
            }
            let fmid = airy_ai_neg(mid);
            if fmid == 0.0 {
                lo = mid;
                hi = mid;
                break;
            }
            if flo * fmid < 0.0 {
                hi = mid;
            } else {
                lo = mid;
                flo = fmid;
            }
        }
        zeros.push(0.5 * (lo + hi));
    }
    Ok(zeros)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn taylor_and_asymptotic_agree_at_the_seam() {
        for &x in &[7.2f64, 7.6, 8.0, 8.4] {
            let a = ai_neg_taylor(x.min(8.0));
            let b = ai_neg_asymptotic(x);
            if x <= 8.0 {
                assert!(
                    (a - b).abs() < 2e-12,
                    "seam mismatch at x = {x}: {a} vs {b}"
                );
            }
        }
    }

    #[test]
    fn value_at_origin_and_sign_structure() {
        assert!((airy_ai_neg(0.0) - 0.355_028_053_887_817_2).abs() < 1e-15);
        // Ai(-x) > 0 before the first zero, < 0 after it.
        assert!(airy_ai_neg(2.0) > 0.0);
        assert!(airy_ai_neg(2.5) < 0.0);
    }

    #[test]
    fn first_zeros_match_reference() {
        let zeros = airy_neg_zeros(5).unwrap();
        let reference = [
            2.338_107_410_459_767,
            4.087_949_444_130_970_6,
            5.520_559_828_095_551,
            6.786_708_090_071_759,
            7.944_133_587_120_853,
        ];
        for (z, r) in zeros.iter().zip(reference.iter()) {
            assert!((z - r).abs() < 1e-10, "{z} vs {r}");
        }
    }

    #[test]
    fn fifty_zeros_increase_and_annihilate() {
        let zeros = airy_neg_zeros(50).unwrap();
        for w in zeros.windows(2) {
            assert!(w[1] > w[0]);
        }
        for z in &zeros {
            assert!(airy_ai_neg(*z).abs() <= 1e-10, "residual at {z}");
        }
    }
}
