//! Minimal double-double arithmetic (~31 significant digits).
//!
//! Used where a straightforward power series would lose too many digits
//! to alternating-sign cancellation: the Bessel series on the annulus
//! 10 < |z| <= 16 and the Airy series on 0 <= x <= 8. Only the handful
//! of operations those sums need are provided.

/// An unevaluated sum `hi + lo` with `|lo| <= ulp(hi)/2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Dd {
    pub hi: f64,
    pub lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, f64::mul_add(a, b, -p))
}

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };
    pub const ONE: Dd = Dd { hi: 1.0, lo: 0.0 };

    #[inline]
    pub fn from_f64(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }

    #[inline]
    pub fn add(self, other: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, other.hi);
        let e = e + self.lo + other.lo;
        let (hi, lo) = quick_two_sum(s, e);
        Dd { hi, lo }
    }

    #[inline]
    pub fn sub(self, other: Dd) -> Dd {
        self.add(other.neg())
    }

    #[inline]
    pub fn neg(self) -> Dd {
        Dd { hi: -self.hi, lo: -self.lo }
    }

    #[inline]
    pub fn mul(self, other: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, other.hi);
        let e = e + self.hi * other.lo + self.lo * other.hi;
        let (hi, lo) = quick_two_sum(p, e);
        Dd { hi, lo }
    }

    #[inline]
    pub fn mul_f64(self, x: f64) -> Dd {
        let (p, e) = two_prod(self.hi, x);
        let e = e + self.lo * x;
        let (hi, lo) = quick_two_sum(p, e);
        Dd { hi, lo }
    }

    #[inline]
    pub fn div_f64(self, x: f64) -> Dd {
        let q1 = self.hi / x;
        let r = self.sub(Dd::from_f64(q1).mul_f64(x));
        let q2 = (r.hi + r.lo) / x;
        let (hi, lo) = quick_two_sum(q1, q2);
        Dd { hi, lo }
    }

    #[inline]
    pub fn div(self, other: Dd) -> Dd {
        let q1 = self.hi / other.hi;
        let r = self.sub(other.mul_f64(q1));
        let q2 = (r.hi + r.lo) / other.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        Dd { hi, lo }
    }

    #[inline]
    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    #[inline]
    pub fn abs(self) -> f64 {
        self.hi.abs()
    }

    /// Parse a plain decimal literal (optional sign, digits, optional
    /// fractional part). Enough to embed ~30-digit constants.
    pub fn parse(s: &str) -> Dd {
        let (neg, body) = match s.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, s),
        };
        let mut int = Dd::ZERO;
        let mut frac = Dd::ZERO;
        let mut scale = Dd::ONE;
        let mut in_frac = false;
        for c in body.chars() {
            if c == '.' {
                in_frac = true;
                continue;
            }
            let d = (c as u8 - b'0') as f64;
            if in_frac {
                scale = scale.div_f64(10.0);
                frac = frac.add(scale.mul_f64(d));
            } else {
                int = int.mul_f64(10.0).add(Dd::from_f64(d));
            }
        }
        let v = int.add(frac);
        if neg {
            v.neg()
        } else {
            v
        }
    }
}

/// Complex number with double-double components.
#[derive(Debug, Clone, Copy)]
pub struct CDd {
    pub re: Dd,
    pub im: Dd,
}

impl CDd {
    pub const ZERO: CDd = CDd { re: Dd::ZERO, im: Dd::ZERO };
    pub const ONE: CDd = CDd { re: Dd::ONE, im: Dd::ZERO };

    #[inline]
    pub fn new(re: f64, im: f64) -> CDd {
        CDd { re: Dd::from_f64(re), im: Dd::from_f64(im) }
    }

    #[inline]
    pub fn add(self, other: CDd) -> CDd {
        CDd { re: self.re.add(other.re), im: self.im.add(other.im) }
    }

    #[inline]
    pub fn mul(self, other: CDd) -> CDd {
        CDd {
            re: self.re.mul(other.re).sub(self.im.mul(other.im)),
            im: self.re.mul(other.im).add(self.im.mul(other.re)),
        }
    }

    #[inline]
    pub fn mul_dd(self, x: Dd) -> CDd {
        CDd { re: self.re.mul(x), im: self.im.mul(x) }
    }

    #[inline]
    pub fn div_f64(self, x: f64) -> CDd {
        CDd { re: self.re.div_f64(x), im: self.im.div_f64(x) }
    }

    #[inline]
    pub fn norm_sup(self) -> f64 {
        self.re.abs().max(self.im.abs())
    }

    #[inline]
    pub fn to_c64(self) -> num_complex::Complex64 {
        num_complex::Complex64::new(self.re.to_f64(), self.im.to_f64())
    }
}
