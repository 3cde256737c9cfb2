//! The weight-2 level-11 newform: integer Fourier coefficients from the
//! eta-product q·∏(1-q^n)²(1-q^{11n})², q-series evaluation on the upper
//! half-plane, and its antiderivative.

use crate::error::{Error, Result};
use crate::numeric::{e_of, ComplexSum};
use num_complex::Complex64;

/// A point z = x + iy with y > 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HalfPlanePoint {
    x: f64,
    y: f64,
}

impl HalfPlanePoint {
    pub fn new(x: f64, y: f64) -> Result<Self> {
        if !(y > 0.0) || !x.is_finite() || !y.is_finite() {
            return Err(Error::Domain(format!(
                "point must satisfy y > 0 and be finite, got x={x}, y={y}"
            )));
        }
        Ok(HalfPlanePoint { x, y })
    }

    pub fn x(&self) -> f64 {
        self.x
    }

    pub fn y(&self) -> f64 {
        self.y
    }

    pub fn to_complex(&self) -> Complex64 {
        Complex64::new(self.x, self.y)
    }
}

impl TryFrom<Complex64> for HalfPlanePoint {
    type Error = Error;
    fn try_from(z: Complex64) -> Result<Self> {
        HalfPlanePoint::new(z.re, z.im)
    }
}

/// Exponents and signs of Euler's function ∏_{n≥1}(1-q^n) = Σ_k (-1)^k q^{k(3k-1)/2},
/// restricted to exponents ≤ `upto`, ascending.
fn pentagonal_terms(upto: usize) -> Vec<(usize, i64)> {
    let mut terms = vec![(0usize, 1i64)];
    let mut k: i64 = 1;
    loop {
        let mut pushed = false;
        for kk in [k, -k] {
            let g = kk * (3 * kk - 1) / 2;
            let g = g as usize;
            if g <= upto {
                terms.push((g, if k % 2 == 0 { 1 } else { -1 }));
                pushed = true;
            }
        }
        if !pushed {
            break;
        }
        k += 1;
    }
    terms.sort_unstable_by_key(|&(g, _)| g);
    terms
}

/// Holomorphic newform data: level N and the coefficient table a(1..=M).
#[derive(Debug, Clone)]
pub struct CuspForm {
    level: u32,
    /// coeffs[n] = a(n); coeffs[0] = 0 is a sentinel.
    coeffs: Vec<i64>,
}

impl CuspForm {
    /// The unique newform of weight 2 and level 11, with a(n) computed for
    /// n ≤ `upto` by expanding q·∏(1-q^n)²·(1-q^{11n})².
    ///
    /// The expansion runs as one sparse×sparse pass (the square of Euler's
    /// function via pentagonal-number pairs) followed by two dense
    /// shift-and-add passes for the two (1-q^{11n}) factors. Integer exact;
    /// intermediate values stay far below i64 range.
    pub fn level11(upto: usize) -> Self {
        let upto = upto.max(1);
        let m = upto - 1; // power of q beyond the leading q.

        // A = coefficients of ∏(1-q^n)², dense, degrees 0..=m.
        let pent = pentagonal_terms(m);
        let mut a = vec![0i64; m + 1];
        for (i, &(gi, si)) in pent.iter().enumerate() {
            for &(gj, sj) in &pent[i..] {
                let e = gi + gj;
                if e > m {
                    break;
                }
                let c = si * sj * if gi == gj { 1 } else { 2 };
                a[e] += c;
            }
        }

        // Two passes with ∏(1-q^{11n}): sparse terms at exponents 11·g_k.
        let pent11: Vec<(usize, i64)> = pentagonal_terms(m / 11)
            .into_iter()
            .map(|(g, s)| (11 * g, s))
            .collect();
        let mut b = vec![0i64; m + 1];
        for &(g, s) in &pent11 {
            let run = m + 1 - g;
            if s > 0 {
                for (dst, src) in b[g..].iter_mut().zip(a[..run].iter()) {
                    *dst += *src;
                }
            } else {
                for (dst, src) in b[g..].iter_mut().zip(a[..run].iter()) {
                    *dst -= *src;
                }
            }
        }
        drop(a);
        let mut c = vec![0i64; m + 1];
        for &(g, s) in &pent11 {
            let run = m + 1 - g;
            if s > 0 {
                for (dst, src) in c[g..].iter_mut().zip(b[..run].iter()) {
                    *dst += *src;
                }
            } else {
                for (dst, src) in c[g..].iter_mut().zip(b[..run].iter()) {
                    *dst -= *src;
                }
            }
        }
        drop(b);

        // Shift by the leading q: a(n) = [q^{n-1}] of the product.
        let mut coeffs = vec![0i64; upto + 1];
        coeffs[1..].copy_from_slice(&c[..upto]);
        CuspForm { level: 11, coeffs }
    }

    /// Wrap an externally supplied coefficient table (a(1) must be 1).
    pub fn from_coeffs(level: u32, mut coeffs: Vec<i64>) -> Result<Self> {
        if coeffs.is_empty() {
            coeffs.push(0);
        }
        coeffs[0] = 0;
        if coeffs.len() < 2 || coeffs[1] != 1 {
            return Err(Error::InvalidInput(
                "coefficient table must start with a(1) = 1".into(),
            ));
        }
        if level == 0 {
            return Err(Error::InvalidInput("level must be positive".into()));
        }
        Ok(CuspForm { level, coeffs })
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    /// Largest n with a(n) available.
    pub fn max_n(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// a(n). Panics if n exceeds the table; use [`CuspForm::require`] to
    /// check availability with a typed error first.
    #[inline]
    pub fn a(&self, n: usize) -> i64 {
        self.coeffs[n]
    }

    /// Full table including the 0 sentinel at index 0.
    pub fn coefficients(&self) -> &[i64] {
        &self.coeffs
    }

    /// Error unless a(n) is available for all n ≤ needed.
    pub fn require(&self, needed: usize) -> Result<()> {
        if needed > self.max_n() {
            Err(Error::CoefficientsExhausted {
                needed,
                available: self.max_n(),
            })
        } else {
            Ok(())
        }
    }

    /// Number of q-series terms needed so the truncation tail at height y is
    /// below eps, using |a(n)| ≤ d(n)√n ≤ 8 n^{3/4}.
    pub fn q_terms_needed(y: f64, eps: f64) -> usize {
        let r = 2.0 * std::f64::consts::PI * y;
        let l = (8.0 / (eps * (-(-r).exp_m1()))).ln().max(1.0);
        let mut m = 16.0_f64;
        for _ in 0..4 {
            m = (l + 0.75 * (m + 2.0).ln()) / r;
        }
        m.ceil() as usize + 8
    }

    /// f(z) = Σ_{n≥1} a(n) e(nz), truncated per `eps`.
    pub fn eval(&self, z: HalfPlanePoint, eps: f64) -> Result<Complex64> {
        let m = Self::q_terms_needed(z.y(), eps);
        self.require(m.min(usize::MAX))?;
        let q = e_of(z.x()) * (-2.0 * std::f64::consts::PI * z.y()).exp();
        let mut acc = ComplexSum::new();
        let mut qn = Complex64::new(1.0, 0.0);
        for n in 1..=m {
            qn *= q;
            let an = self.coeffs[n];
            if an != 0 {
                acc.add(qn * an as f64);
            }
        }
        Ok(acc.value())
    }

    /// Antiderivative F(z) = Σ_{n≥1} a(n)/(2πi n) e(nz), so F'(z) = f(z)
    /// and F(z) → 0 as y → ∞.
    pub fn eval_antiderivative(&self, z: HalfPlanePoint, eps: f64) -> Result<Complex64> {
        let m = Self::q_terms_needed(z.y(), eps);
        self.require(m)?;
        let q = e_of(z.x()) * (-2.0 * std::f64::consts::PI * z.y()).exp();
        let two_pi_i = Complex64::new(0.0, 2.0 * std::f64::consts::PI);
        let mut acc = ComplexSum::new();
        let mut qn = Complex64::new(1.0, 0.0);
        for n in 1..=m {
            qn *= q;
            let an = self.coeffs[n];
            if an != 0 {
                acc.add(qn * (an as f64) / (two_pi_i * n as f64));
            }
        }
        Ok(acc.value())
    }

    /// First (m, n) with mn ≤ `upto_product` violating the Hecke relation
    /// a(m)·a(n) = Σ_{d | (m,n), gcd(d, N)=1} d·a(mn/d²), or None.
    pub fn hecke_violation(&self, upto_product: usize) -> Option<(usize, usize)> {
        for m in 1..=upto_product {
            for n in 1..=upto_product / m {
                let mut rhs: i64 = 0;
                let g = crate::chars::gcd(m as u64, n as u64) as usize;
                for d in crate::chars::divisors(g as u64) {
                    let d = d as usize;
                    if d as u64 % self.level as u64 == 0 {
                        continue;
                    }
                    rhs += d as i64 * self.coeffs[m * n / (d * d)];
                }
                if self.coeffs[m] * self.coeffs[n] != rhs {
                    return Some((m, n));
                }
            }
        }
        None
    }

    /// First n ≤ upto violating |a(n)| ≤ d(n)·√n, or None.
    pub fn deligne_violation(&self, upto: usize) -> Option<usize> {
        let upto = upto.min(self.max_n());
        // divisor-count sieve
        let mut d = vec![0u32; upto + 1];
        for i in 1..=upto {
            let mut j = i;
            while j <= upto {
                d[j] += 1;
                j += i;
            }
        }
        (1..=upto).find(|&n| {
            let bound = d[n] as f64 * (n as f64).sqrt();
            (self.coeffs[n] as f64).abs() > bound * (1.0 + 1e-12)
        })
    }

    /// Export as CSV with header `n,a_n`.
    pub fn to_csv(&self) -> String {
        let mut out = String::with_capacity(self.coeffs.len() * 8);
        out.push_str("n,a_n\n");
        for (n, &a) in self.coeffs.iter().enumerate().skip(1) {
            out.push_str(&format!("{n},{a}\n"));
        }
        out
    }

    /// Import from the CSV format written by [`CuspForm::to_csv`]: rows must
    /// cover n = 1..=M contiguously in order.
    pub fn from_csv(level: u32, text: &str) -> Result<Self> {
        let mut coeffs = vec![0i64];
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || (lineno == 0 && line.starts_with('n')) {
                continue;
            }
            let mut parts = line.split(',');
            let (ns, asx) = (parts.next(), parts.next());
            let (ns, asx) = match (ns, asx, parts.next()) {
                (Some(a), Some(b), None) => (a, b),
                _ => {
                    return Err(Error::InvalidInput(format!(
                        "line {}: expected two comma-separated fields",
                        lineno + 1
                    )))
                }
            };
            let n: usize = ns.trim().parse().map_err(|_| {
                Error::InvalidInput(format!("line {}: bad index {ns:?}", lineno + 1))
            })?;
            let a: i64 = asx.trim().parse().map_err(|_| {
                Error::InvalidInput(format!("line {}: bad coefficient {asx:?}", lineno + 1))
            })?;
            if n != coeffs.len() {
                return Err(Error::InvalidInput(format!(
                    "line {}: expected n = {}, got {n}",
                    lineno + 1,
                    coeffs.len()
                )));
            }
            coeffs.push(a);
        }
        Self::from_coeffs(level, coeffs)
    }
}
