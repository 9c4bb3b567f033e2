//! Dense complex polynomials, rational functions and a companion-matrix root
//! solver (shifted complex QR on the upper Hessenberg companion matrix).

use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::{Complex, Error, Result};

/// Polynomial with coefficients in ascending order of degree.
#[derive(Debug, Clone, PartialEq)]
pub struct Poly {
    coeffs: Vec<Complex>,
}

impl Poly {
    pub fn new(coeffs: Vec<Complex>) -> Self {
        let mut p = Self { coeffs };
        if p.coeffs.is_empty() {
            p.coeffs.push(Complex::zero());
        }
        p
    }

    pub fn constant(c: Complex) -> Self {
        Self { coeffs: vec![c] }
    }

    /// The polynomial `w`.
    pub fn identity() -> Self {
        Self::new(vec![Complex::zero(), Complex::new(1.0, 0.0)])
    }

    pub fn coeffs(&self) -> &[Complex] {
        &self.coeffs
    }

    /// Formal degree (length of the coefficient list minus one).
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn eval(&self, w: Complex) -> Complex {
        self.coeffs.iter().rev().fold(Complex::zero(), |acc, &c| acc * w + c)
    }

    /// Value and first derivative by Horner's scheme.
    pub fn eval_with_derivative(&self, w: Complex) -> (Complex, Complex) {
        let mut p = Complex::zero();
        let mut dp = Complex::zero();
        for &c in self.coeffs.iter().rev() {
            dp = dp * w + p;
            p = p * w + c;
        }
        (p, dp)
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|k| self.coeffs.get(k).copied().unwrap_or_default() + other.coeffs.get(k).copied().unwrap_or_default())
            .collect();
        Poly::new(coeffs)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.scale(Complex::new(-1.0, 0.0)))
    }

    pub fn scale(&self, c: Complex) -> Poly {
        Poly::new(self.coeffs.iter().map(|&a| a * c).collect())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = vec![Complex::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }

    pub fn pow(&self, k: usize) -> Poly {
        (0..k).fold(Poly::constant(Complex::new(1.0, 0.0)), |acc, _| acc.mul(self))
    }

    /// Drops leading coefficients whose modulus is at most `rel_tol` times the
    /// largest coefficient modulus.
    pub fn trimmed(&self, rel_tol: f64) -> Poly {
        let scale = self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
        let mut coeffs = self.coeffs.clone();
        while coeffs.len() > 1 && coeffs.last().is_some_and(|c| c.norm() <= rel_tol * scale) {
            coeffs.pop();
        }
        Poly::new(coeffs)
    }

    /// All complex roots of the (trimmed) polynomial, from the eigenvalues of
    /// its companion matrix, each polished by Newton's method.
    pub fn roots(&self) -> Result<Vec<Complex>> {
        let p = self.trimmed(1e-14);
        let n = p.degree();
        if n == 0 {
            return Ok(Vec::new());
        }
        let lead = p.coeffs[n];
        let monic: Vec<Complex> = p.coeffs[..n].iter().map(|&c| c / lead).collect();
        let mut h = companion(&monic);
        let mut roots = hessenberg_eigenvalues(&mut h, n).ok_or(Error::RootSolverFailed(n))?;
        for r in roots.iter_mut() {
            *r = polish(&p, *r);
        }
        Ok(roots)
    }
}

/// Companion matrix (row-major, `n × n`) of the monic polynomial whose lower
/// coefficients are `monic`. The matrix is upper Hessenberg.
fn companion(monic: &[Complex]) -> Vec<Complex> {
    let n = monic.len();
    let mut h = vec![Complex::zero(); n * n];
    for j in 0..n {
        h[j] = -monic[n - 1 - j];
    }
    for i in 1..n {
        h[i * n + i - 1] = Complex::new(1.0, 0.0);
    }
    h
}

fn polish(p: &Poly, mut w: Complex) -> Complex {
    let mut best = p.eval(w).norm();
    for _ in 0..3 {
        let (v, dv) = p.eval_with_derivative(w);
        if dv.norm() == 0.0 || !v.is_finite() {
            break;
        }
        let cand = w - v / dv;
        let res = p.eval(cand).norm();
        if !(res < best) {
            break;
        }
        best = res;
        w = cand;
    }
    w
}

/// Eigenvalues of an upper Hessenberg matrix by single-shift complex QR with
/// Wilkinson shifts and deflation. Returns `None` if an eigenvalue fails to
/// deflate within the iteration budget.
fn hessenberg_eigenvalues(h: &mut [Complex], n: usize) -> Option<Vec<Complex>> {
    let idx = |i: usize, j: usize| i * n + j;
    let mut eig = Vec::with_capacity(n);
    let mut hi = n;
    let mut iters = 0usize;
    while hi > 0 {
        if hi == 1 {
            eig.push(h[idx(0, 0)]);
            break;
        }
        let mut lo = hi - 1;
        while lo > 0 {
            let sub = h[idx(lo, lo - 1)].norm();
            let diag = h[idx(lo, lo)].norm() + h[idx(lo - 1, lo - 1)].norm();
            if sub <= f64::EPSILON * diag || sub < f64::MIN_POSITIVE {
                h[idx(lo, lo - 1)] = Complex::zero();
                break;
            }
            lo -= 1;
        }
        if lo == hi - 1 {
            eig.push(h[idx(hi - 1, hi - 1)]);
            hi -= 1;
            iters = 0;
            continue;
        }
        iters += 1;
        if iters > 60 * n.max(1) {
            return None;
        }
        let a = h[idx(hi - 2, hi - 2)];
        let b = h[idx(hi - 2, hi - 1)];
        let c = h[idx(hi - 1, hi - 2)];
        let d = h[idx(hi - 1, hi - 1)];
        let mu = if iters % 11 == 10 {
            // exceptional shift to break cycles
            d + Complex::new(0.75 * c.norm(), 0.4 * c.norm())
        } else {
            let half = (a - d) * 0.5;
            let disc = (half * half + b * c).sqrt();
            let m1 = d + half + disc;
            let m2 = d + half - disc;
            if (m1 - d).norm() <= (m2 - d).norm() {
                m1
            } else {
                m2
            }
        };
        let mut x = h[idx(lo, lo)] - mu;
        let mut y = h[idx(lo + 1, lo)];
        for k in lo..hi - 1 {
            let (cs, sn) = givens(x, y);
            // rows k, k+1
            let col_start = if k > lo { k - 1 } else { lo };
            for j in col_start..hi {
                let t1 = h[idx(k, j)];
                let t2 = h[idx(k + 1, j)];
                h[idx(k, j)] = t1 * cs + sn * t2;
                h[idx(k + 1, j)] = -sn.conj() * t1 + t2 * cs;
            }
            // columns k, k+1
            let row_end = (k + 2).min(hi - 1);
            for i in lo..=row_end {
                let t1 = h[idx(i, k)];
                let t2 = h[idx(i, k + 1)];
                h[idx(i, k)] = t1 * cs + t2 * sn.conj();
                h[idx(i, k + 1)] = -t1 * sn + t2 * cs;
            }
            if k + 2 < hi {
                x = h[idx(k + 1, k)];
                y = h[idx(k + 2, k)];
            }
        }
    }
    Some(eig)
}

/// Complex Givens rotation `[[c, s], [-conj(s), c]]` (real `c`) mapping
/// `(x, y)` to `(r, 0)`.
fn givens(x: Complex, y: Complex) -> (f64, Complex) {
    let ax = x.norm();
    let ay = y.norm();
    if ay == 0.0 {
        return (1.0, Complex::zero());
    }
    if ax == 0.0 {
        return (0.0, Complex::new(1.0, 0.0));
    }
    let nrm = libm::hypot(ax, ay);
    let phase = x / ax;
    (ax / nrm, phase * y.conj() / nrm)
}

/// Rational function `num / den`.
#[derive(Debug, Clone, PartialEq)]
pub struct Rational {
    pub num: Poly,
    pub den: Poly,
}

impl Rational {
    pub fn eval(&self, w: Complex) -> Complex {
        self.num.eval(w) / self.den.eval(w)
    }

    pub fn mul(&self, other: &Rational) -> Rational {
        Rational { num: self.num.mul(&other.num), den: self.den.mul(&other.den) }
    }

    /// `self ∘ inner`, homogenized so that the result is again `num / den`.
    pub fn compose(&self, inner: &Rational) -> Rational {
        let d = self.num.degree().max(self.den.degree());
        let mut num = Poly::constant(Complex::zero());
        let mut den = Poly::constant(Complex::zero());
        for k in 0..=d {
            let basis = inner.num.pow(k).mul(&inner.den.pow(d - k));
            if let Some(&a) = self.num.coeffs().get(k) {
                num = num.add(&basis.scale(a));
            }
            if let Some(&b) = self.den.coeffs().get(k) {
                den = den.add(&basis.scale(b));
            }
        }
        Rational { num, den }
    }

    /// Solutions of `num(w) = z · den(w)`.
    pub fn preimages(&self, z: Complex) -> Result<Vec<Complex>> {
        self.num.sub(&self.den.scale(z)).roots()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex {
        Complex::new(re, im)
    }

    fn sorted_by_re(mut v: Vec<Complex>) -> Vec<Complex> {
        v.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
        v
    }

    #[test]
    fn quadratic_roots() {
        // w^2 - 0.25
        let p = Poly::new(vec![c(-0.25, 0.0), c(0.0, 0.0), c(1.0, 0.0)]);
        let r = sorted_by_re(p.roots().unwrap());
        assert!((r[0] - c(-0.5, 0.0)).norm() < 1e-14);
        assert!((r[1] - c(0.5, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn roots_of_known_product() {
        let want = [c(0.3, 0.2), c(-0.5, 0.0), c(0.1, -0.7), c(2.0, 1.0), c(-1.5, -0.25)];
        let p = want.iter().fold(Poly::constant(c(2.0, -1.0)), |acc, &r| acc.mul(&Poly::new(vec![-r, c(1.0, 0.0)])));
        let got = p.roots().unwrap();
        assert_eq!(got.len(), want.len());
        for w in want {
            let best = got.iter().map(|g| (g - w).norm()).fold(f64::INFINITY, f64::min);
            assert!(best < 1e-12, "root {w} missed by {best}");
        }
    }

    #[test]
    fn cube_roots_of_unity() {
        let p = Poly::new(vec![c(-1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]);
        let r = p.roots().unwrap();
        for w in &r {
            assert!((w.powu(3) - c(1.0, 0.0)).norm() < 1e-13);
        }
        let min_gap = (0..3)
            .flat_map(|i| (0..3).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| (r[i] - r[j]).norm())
            .fold(f64::INFINITY, f64::min);
        assert!(min_gap > 1.0);
    }

    #[test]
    fn trimming_drops_negligible_leading_terms() {
        let p = Poly::new(vec![c(1.0, 0.0), c(2.0, 0.0), c(1e-20, 0.0)]);
        assert_eq!(p.trimmed(1e-14).degree(), 1);
        let r = p.roots().unwrap();
        assert_eq!(r.len(), 1);
        assert!((r[0] + c(0.5, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn constant_has_no_roots() {
        assert!(Poly::constant(c(3.0, 0.0)).roots().unwrap().is_empty());
    }

    #[test]
    fn rational_composition_matches_pointwise() {
        let outer = Rational {
            num: Poly::new(vec![c(0.5, 0.0), c(-1.0, 0.0)]),
            den: Poly::new(vec![c(1.0, 0.0), c(-0.5, 0.0)]),
        };
        let inner =
            Rational { num: Poly::new(vec![c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]), den: Poly::constant(c(1.0, 0.0)) };
        let comp = outer.compose(&inner);
        for &w in &[c(0.1, 0.2), c(-0.4, 0.3), c(0.7, -0.1)] {
            let direct = outer.eval(inner.eval(w));
            assert!((comp.eval(w) - direct).norm() < 1e-14);
        }
    }
}
