//! Complex banded LU with partial pivoting (LAPACK gbtrf layout),
//! forward/adjoint solves, and a weighted largest-singular-value power
//! iteration. Bandwidths here are tiny (kl = ku = 2), so every solve is
//! O(n).

use num_complex::Complex64;

use super::ModalError;

pub struct BandMatrix {
    pub n: usize,
    pub kl: usize,
    pub ku: usize,
    /// (2 kl + ku + 1) x n, entry (i, j) of the matrix at
    /// data[(kl + ku + i - j) * n + j]; the top kl band rows hold
    /// pivoting fill-in.
    data: Vec<Complex64>,
}

impl BandMatrix {
    pub fn new(n: usize, kl: usize, ku: usize) -> BandMatrix {
        BandMatrix {
            n,
            kl,
            ku,
            data: vec![Complex64::new(0.0, 0.0); (2 * kl + ku + 1) * n],
        }
    }

    #[inline]
    fn idx(&self, i: usize, j: usize) -> usize {
        (self.kl + self.ku + i - j) * self.n + j
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Complex64) {
        let at = self.idx(i, j);
        self.data[at] = v;
    }

    #[inline]
    pub fn add(&mut self, i: usize, j: usize, v: Complex64) {
        let at = self.idx(i, j);
        self.data[at] += v;
    }

    #[inline]
    fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[self.idx(i, j)]
    }

    /// Read an entry inside the band (zero outside).
    #[inline]
    pub fn peek(&self, i: usize, j: usize) -> Complex64 {
        if j > i + self.ku || i > j + self.kl {
            return Complex64::new(0.0, 0.0);
        }
        self.get(i, j)
    }

    pub fn clone_matrix(&self) -> BandMatrix {
        BandMatrix {
            n: self.n,
            kl: self.kl,
            ku: self.ku,
            data: self.data.clone(),
        }
    }

    /// Factor in place with partial pivoting.
    pub fn factor(mut self) -> Result<BandLu, ModalError> {
        let n = self.n;
        let (kl, ku) = (self.kl, self.ku);
        let mut ipiv = vec![0usize; n];
        for j in 0..n {
            let i_hi = (j + kl).min(n - 1);
            let mut p = j;
            let mut best = self.get(j, j).norm_sqr();
            for i in j + 1..=i_hi {
                let cand = self.get(i, j).norm_sqr();
                if cand > best {
                    best = cand;
                    p = i;
                }
            }
            ipiv[j] = p;
            if best == 0.0 {
                return Err(ModalError::SingularSystem { column: j });
            }
            let col_hi = (j + ku + kl).min(n - 1);
            if p != j {
                for jj in j..=col_hi {
                    let a = self.get(j, jj);
                    let b = self.get(p, jj);
                    self.set(j, jj, b);
                    self.set(p, jj, a);
                }
            }
            let pivot = self.get(j, j);
            for i in j + 1..=i_hi {
                let l = self.get(i, j) / pivot;
                self.set(i, j, l);
                for jj in j + 1..=col_hi {
                    let u = self.get(j, jj);
                    if u.re != 0.0 || u.im != 0.0 {
                        let cur = self.get(i, jj);
                        self.set(i, jj, cur - l * u);
                    }
                }
            }
        }
        Ok(BandLu {
            n,
            kl,
            ku,
            data: self.data,
            ipiv,
        })
    }
}

pub struct BandLu {
    n: usize,
    kl: usize,
    ku: usize,
    data: Vec<Complex64>,
    ipiv: Vec<usize>,
}

impl BandLu {
    #[inline]
    fn at(&self, i: usize, j: usize) -> Complex64 {
        self.data[(self.kl + self.ku + i - j) * self.n + j]
    }

    /// Solve A x = b in place.
    pub fn solve(&self, b: &mut [Complex64]) {
        let n = self.n;
        for j in 0..n {
            let p = self.ipiv[j];
            if p != j {
                b.swap(j, p);
            }
            let bj = b[j];
            let i_hi = (j + self.kl).min(n - 1);
            for i in j + 1..=i_hi {
                b[i] -= self.at(i, j) * bj;
            }
        }
        let bw = self.ku + self.kl;
        for i in (0..n).rev() {
            let mut acc = b[i];
            let j_hi = (i + bw).min(n - 1);
            for j in i + 1..=j_hi {
                acc -= self.at(i, j) * b[j];
            }
            b[i] = acc / self.at(i, i);
        }
    }

    /// Solve A^H y = b in place using the same factorisation.
    pub fn solve_adjoint(&self, b: &mut [Complex64]) {
        let n = self.n;
        let bw = self.ku + self.kl;
        // U^H w = b, forward substitution.
        for i in 0..n {
            let mut acc = b[i];
            let j_lo = i.saturating_sub(bw);
            for j in j_lo..i {
                acc -= self.at(j, i).conj() * b[j];
            }
            b[i] = acc / self.at(i, i).conj();
        }
        // Invert the elimination sequence.
        for j in (0..n).rev() {
            let i_hi = (j + self.kl).min(n - 1);
            let mut acc = b[j];
            for i in j + 1..=i_hi {
                acc -= self.at(i, j).conj() * b[i];
            }
            b[j] = acc;
            let p = self.ipiv[j];
            if p != j {
                b.swap(j, p);
            }
        }
    }
}

fn weighted_norm(v: &[Complex64]) -> f64 {
    v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
}

/// Largest singular value of M = diag(out_w) A^{-1} diag(in_w) by power
/// iteration on M^H M. `in_w` entries are zero on constraint rows, which
/// restricts the data space to the physical right-hand sides.
///
/// The returned value is a monotone limit of Rayleigh quotients, so it
/// never exceeds the true singular value.
pub fn sigma_max_weighted(
    lu: &BandLu,
    out_w: &[f64],
    in_w: &[f64],
    seed: Option<&[Complex64]>,
) -> f64 {
    let n = out_w.len();
    let mut v: Vec<Complex64> = match seed {
        Some(s) => s.to_vec(),
        None => (0..n)
            .map(|i| Complex64::new(1.0 + 0.3 * (7.1 * i as f64).sin(), 0.2 * (3.3 * i as f64).cos()))
            .collect(),
    };
    let nv = weighted_norm(&v);
    if nv == 0.0 {
        return 0.0;
    }
    for x in v.iter_mut() {
        *x /= nv;
    }
    let mut sigma = 0.0f64;
    let mut work = vec![Complex64::new(0.0, 0.0); n];
    for _ in 0..200 {
        // w = M v
        for i in 0..n {
            work[i] = v[i] * in_w[i];
        }
        lu.solve(&mut work);
        for i in 0..n {
            work[i] *= out_w[i];
        }
        let s = weighted_norm(&work);
        if s == 0.0 {
            return 0.0;
        }
        // v = M^H w / |..|
        for i in 0..n {
            work[i] *= out_w[i];
        }
        lu.solve_adjoint(&mut work);
        for i in 0..n {
            work[i] *= in_w[i];
        }
        let nw = weighted_norm(&work);
        if nw == 0.0 {
            return s;
        }
        for i in 0..n {
            v[i] = work[i] / nw;
        }
        if (s - sigma).abs() <= 1e-9 * s {
            return s;
        }
        sigma = s;
    }
    sigma
}
