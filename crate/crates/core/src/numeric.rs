//! Compensated accumulation and small floating-point helpers.

use num_complex::Complex64;

/// Neumaier (improved Kahan) compensated accumulator for `f64`.
///
/// Keeps the running error of a long sum at O(eps) instead of O(n·eps),
/// which matters for the 10^5..10^7-term series used in this crate.
#[derive(Debug, Clone, Copy, Default)]
pub struct NeumaierSum {
    s: f64,
    comp: f64,
}

impl NeumaierSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, x: f64) {
        let t = self.s + x;
        if self.s.abs() >= x.abs() {
            self.comp += (self.s - t) + x;
        } else {
            self.comp += (x - t) + self.s;
        }
        self.s = t;
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.s + self.comp
    }
}

/// Compensated accumulator for complex values (component-wise Neumaier).
#[derive(Debug, Clone, Copy, Default)]
pub struct ComplexSum {
    re: NeumaierSum,
    im: NeumaierSum,
}

impl ComplexSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, z: Complex64) {
        self.re.add(z.re);
        self.im.add(z.im);
    }

    #[inline]
    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re.value(), self.im.value())
    }
}

/// b^e for real b > 0 and complex e, computed as exp(e·ln b).
#[inline]
pub fn powc(b: f64, e: Complex64) -> Complex64 {
    debug_assert!(b > 0.0);
    (e * b.ln()).exp()
}

/// e(x) = exp(2πi·x).
#[inline]
pub fn e_of(x: f64) -> Complex64 {
    let t = 2.0 * std::f64::consts::PI * x;
    Complex64::new(t.cos(), t.sin())
}

/// Table of c-th roots of unity: entry j is e(j/c).
pub fn root_table(c: u32) -> Vec<Complex64> {
    let cf = c as f64;
    (0..c).map(|j| e_of(j as f64 / cf)).collect()
}

/// Relative difference |a-b| / max(|a|, |b|), with 0/0 treated as 0.
pub fn rel_diff(a: Complex64, b: Complex64) -> f64 {
    let scale = a.norm().max(b.norm());
    if scale == 0.0 {
        0.0
    } else {
        (a - b).norm() / scale
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn neumaier_beats_naive_on_cancellation() {
        // 1 + 1e-16 added 10^6 times: naive summation loses the small parts
        // entirely, compensation keeps ~10 extra digits.
        let mut acc = NeumaierSum::new();
        let mut naive = 0.0f64;
        acc.add(1.0);
        naive += 1.0;
        for _ in 0..1_000_000 {
            acc.add(1e-16);
            naive += 1e-16;
        }
        acc.add(-1.0);
        naive -= 1.0;
        let exact = 1e-10;
        assert!((acc.value() - exact).abs() < 1e-19, "got {}", acc.value());
        assert!((naive - exact).abs() > 1e-11, "naive unexpectedly fine");
    }

    #[test]
    fn roots_of_unity_cycle() {
        let t = root_table(12);
        assert!((t[3] - Complex64::new(0.0, 1.0)).norm() < 1e-15);
        assert!((t[6] - Complex64::new(-1.0, 0.0)).norm() < 1e-15);
        // e(j/c) * e(k/c) = e((j+k mod c)/c)
        for j in 0..12usize {
            for k in 0..12usize {
                assert!((t[j] * t[k] - t[(j + k) % 12]).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn powc_matches_real_powers() {
        let v = powc(3.0, Complex64::new(2.0, 0.0));
        assert!((v.re - 9.0).abs() < 1e-14 && v.im.abs() < 1e-14);
    }
}
