//! Additive-twist L-functions and modular symbols.
//!
//! For the cusp form f and a fraction -d/c (c > 0 a multiple of the level,
//! gcd(d,c) = 1) the completed twist
//!
//!   Λ(f, t, -d/c) = (c/2π)^t Γ(t) Σ_{n≥1} a(n) e(-nd/c) n^{-t}
//!                 = c^t ∫₀^∞ f(-d/c + ix) x^{t-1} dx
//!
//! is entire in t and satisfies Λ(f, t, -d/c) = -Λ(f, 2-t, a/c) with
//! a·d ≡ 1 (mod c). Splitting the integral at x = 1/c and applying the
//! modular relation to the lower piece yields the everywhere-convergent
//! two-sum form implemented here:
//!
//!   Λ(f, t, -d/c) =  c^t (2π)^{-t}   Σ a(n) n^{t·(-1)… }  — see `lambda_twist`.
//!
//! At t = 1 both incomplete gammas collapse to e^{-x}, and whole residue
//! rows {Λ(f,1,-d/c)}_{d mod c} can be produced in O(M + φ(c)·c) via folded
//! residue bins; modular symbols ⟨f,γ⟩ = (i/c)·Λ(f,1,-d/c) sit on top of a
//! cached copy of those rows.

use crate::chars::{gcd, mod_inv, DirichletCharacter};
use crate::cuspform::{CuspForm, HalfPlanePoint};
use crate::error::{Error, Result};
use crate::numeric::{powc, root_table, ComplexSum, NeumaierSum};
use crate::policy::PrecisionPolicy;
use crate::specfun::{inc_gamma_upper, integrate_exp_sinh};
use num_complex::Complex64;
use rayon::prelude::*;
use std::collections::HashMap;
use std::sync::{Arc, RwLock};

const TWO_PI: f64 = 2.0 * std::f64::consts::PI;

fn czero() -> Complex64 {
    Complex64::new(0.0, 0.0)
}

// ---------------------------------------------------------------------------
// Integer 2×2 matrices
// ---------------------------------------------------------------------------

/// An element of SL₂(ℤ) with integer entries (a b; c d), det = 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GammaMatrix {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

impl GammaMatrix {
    pub fn new(a: i64, b: i64, c: i64, d: i64) -> Result<Self> {
        let m = GammaMatrix { a, b, c, d };
        if m.det() != 1 {
            return Err(Error::Domain(format!(
                "matrix ({a} {b}; {c} {d}) has determinant {} — need 1",
                m.det()
            )));
        }
        Ok(m)
    }

    pub fn identity() -> Self {
        GammaMatrix { a: 1, b: 0, c: 0, d: 1 }
    }

    /// T^k = (1 k; 0 1).
    pub fn translation(k: i64) -> Self {
        GammaMatrix { a: 1, b: k, c: 0, d: 1 }
    }

    pub fn det(&self) -> i64 {
        self.a * self.d - self.b * self.c
    }

    pub fn mul(&self, o: &GammaMatrix) -> GammaMatrix {
        GammaMatrix {
            a: self.a * o.a + self.b * o.c,
            b: self.a * o.b + self.b * o.d,
            c: self.c * o.a + self.d * o.c,
            d: self.c * o.b + self.d * o.d,
        }
    }

    pub fn inv(&self) -> GammaMatrix {
        GammaMatrix { a: self.d, b: -self.b, c: -self.c, d: self.a }
    }

    /// Möbius action z ↦ (az+b)/(cz+d).
    pub fn apply(&self, z: Complex64) -> Complex64 {
        (self.a as f64 * z + self.b as f64) / (self.c as f64 * z + self.d as f64)
    }

    /// The representative of {±γ} with c > 0, or c = 0 and d > 0.
    pub fn sign_normalized(&self) -> GammaMatrix {
        if self.c < 0 || (self.c == 0 && self.d < 0) {
            GammaMatrix { a: -self.a, b: -self.b, c: -self.c, d: -self.d }
        } else {
            *self
        }
    }
}

// ---------------------------------------------------------------------------
// Additive twists, general t
// ---------------------------------------------------------------------------

fn validate_twist_args(level: u32, c: u32, d: i64) -> Result<i64> {
    if c == 0 || c % level != 0 {
        return Err(Error::Domain(format!(
            "twist denominator c = {c} must be a positive multiple of the level {level}"
        )));
    }
    let dr = d.rem_euclid(c as i64);
    if gcd(dr as u64, c as u64) != 1 {
        return Err(Error::Domain(format!(
            "twist numerator d = {d} must be coprime to c = {c}"
        )));
    }
    Ok(dr)
}

/// Deterministic truncation length for the two-sum form at modulus c.
fn two_sum_terms(c: u32, eps: f64) -> usize {
    let lam = c as f64 / TWO_PI;
    let l = (1.0 / eps).ln() + 6.0;
    (lam * (l + 2.5 * (2.0 + lam).ln())).ceil() as usize + 32
}

/// A twist value with a truncation-error estimate.
#[derive(Debug, Clone, Copy)]
pub struct TwistValue {
    pub value: Complex64,
    pub err_est: f64,
}

/// Λ(f, t, -d/c) by the everywhere-convergent two-sum form
///
///   c^t (2π)^{-t}  Σ_{n} a(n) n^{-t}   e(-nd/c) Γ(t,   2πn/c)
/// − c^{2-t}(2π)^{t-2} Σ_{n} a(n) n^{t-2} e( na/c) Γ(2-t, 2πn/c),
///
/// with a ≡ d^{-1} (mod c). Entire in t; the functional equation
/// Λ(f,t,-d/c) = -Λ(f,2-t, a/c) swaps the two sums.
pub fn lambda_twist(
    form: &CuspForm,
    t: Complex64,
    c: u32,
    d: i64,
    policy: &PrecisionPolicy,
) -> Result<TwistValue> {
    if t.re.abs() > 8.0 || (2.0 - t.re).abs() > 8.0 {
        return Err(Error::Domain(format!(
            "twist parameter t = {t} outside the supported strip |Re t - 1| <= 7"
        )));
    }
    let d = validate_twist_args(form.level(), c, d)?;
    let a = mod_inv(d, c as i64).expect("d coprime to c");
    let m = two_sum_terms(c, policy.epsilon_abs);
    form.require(m)?;

    let roots = root_table(c);
    let cf = c as f64;
    let pref1 = powc(cf, t) * powc(TWO_PI, -t);
    let pref2 = powc(cf, 2.0 - t) * powc(TWO_PI, t - 2.0);
    let s2 = 2.0 - t;

    let mut acc1 = ComplexSum::new();
    let mut acc2 = ComplexSum::new();
    let mut absmag = NeumaierSum::new();
    for n in 1..=m {
        let an = form.a(n);
        if an == 0 {
            continue;
        }
        let x = TWO_PI * n as f64 / cf;
        let nf = n as f64;
        let g1 = inc_gamma_upper(t, x)?;
        let g2 = inc_gamma_upper(s2, x)?;
        // e(-nd/c) = conj(ω[nd mod c]); e(na/c) = ω[na mod c]
        let e1 = roots[(n as u64 * d as u64 % c as u64) as usize].conj();
        let e2 = roots[(n as u64 * a as u64 % c as u64) as usize];
        let t1 = an as f64 * powc(nf, -t) * g1 * e1;
        let t2 = an as f64 * powc(nf, t - 2.0) * g2 * e2;
        acc1.add(t1);
        acc2.add(t2);
        absmag.add(t1.norm() * pref1.norm() + t2.norm() * pref2.norm());
    }
    let value = pref1 * acc1.value() - pref2 * acc2.value();
    let err_est = policy.epsilon_abs + 3e-16 * absmag.value();
    Ok(TwistValue { value, err_est })
}

/// The whole residue row {Λ(f, t, -d/c)}_{d mod c, gcd(d,c)=1} at one
/// modulus c, via residue-class bin folding: entry d of the result is the
/// twist value, entries at non-coprime d are 0.
///
/// Costs O(M) incomplete-gamma evaluations plus O(φ(c)·c) multiply-adds for
/// the whole row — far cheaper than φ(c) independent twist evaluations.
pub fn lambda_row_t(
    form: &CuspForm,
    t: Complex64,
    c: u32,
    policy: &PrecisionPolicy,
) -> Result<Vec<Complex64>> {
    if c == 0 || c % form.level() != 0 {
        return Err(Error::Domain(format!(
            "row modulus c = {c} must be a positive multiple of the level {}",
            form.level()
        )));
    }
    let m = two_sum_terms(c, policy.epsilon_abs);
    form.require(m)?;
    let cf = c as f64;
    let cu = c as usize;

    // Residue-class folds of the two weighted coefficient series.
    let mut p1 = vec![czero(); cu];
    let mut p2 = vec![czero(); cu];
    let s2 = 2.0 - t;
    for n in 1..=m {
        let an = form.a(n);
        if an == 0 {
            continue;
        }
        let x = TWO_PI * n as f64 / cf;
        let nf = n as f64;
        let g1 = inc_gamma_upper(t, x)?;
        let g2 = inc_gamma_upper(s2, x)?;
        let j = n % cu;
        p1[j] += an as f64 * powc(nf, -t) * g1;
        p2[j] += an as f64 * powc(nf, t - 2.0) * g2;
    }

    let roots = root_table(c);
    let pref1 = powc(cf, t) * powc(TWO_PI, -t);
    let pref2 = powc(cf, 2.0 - t) * powc(TWO_PI, t - 2.0);
    let mut row = vec![czero(); cu];
    for d in 1..cu {
        if gcd(d as u64, c as u64) != 1 {
            continue;
        }
        let a = mod_inv(d as i64, c as i64).expect("coprime") as usize;
        let mut s1 = ComplexSum::new();
        let mut sb = ComplexSum::new();
        let mut i1 = 0usize;
        let mut i2 = 0usize;
        for j in 0..cu {
            // i1 = j·d mod c, i2 = j·a mod c, maintained incrementally.
            s1.add(p1[j] * roots[i1].conj());
            sb.add(p2[j] * roots[i2]);
            i1 += d;
            if i1 >= cu {
                i1 -= cu;
            }
            i2 += a;
            if i2 >= cu {
                i2 -= cu;
            }
        }
        row[d] = pref1 * s1.value() - pref2 * sb.value();
    }
    Ok(row)
}

/// Λ(f, t, -d/c) by direct numerical integration of c^t ∫₀^∞ f(-d/c+ix) x^{t-1} dx,
/// evaluating f through its q-expansion only. Independent of the two-sum
/// route (no functional equation, no incomplete gammas) — the anchor oracle.
///
/// Below x_floor ~ 2π/(c²·L) the integrand is bounded by the cusp-decay
/// envelope and is dropped; the induced error is far below the quadrature
/// tolerance for the moduli this is used with.
pub fn lambda_twist_quadrature(
    form: &CuspForm,
    t: Complex64,
    c: u32,
    d: i64,
    policy: &PrecisionPolicy,
) -> Result<TwistValue> {
    let d = validate_twist_args(form.level(), c, d)?;
    let cf = c as f64;
    let x0 = -(d as f64) / cf;
    let x_floor = quadrature_height_floor(c);
    // q-series length at the lowest retained height.
    form.require(lambda_twist_quadrature_terms(c))?;

    let integrand = |x: f64| -> Complex64 {
        if x < x_floor {
            return czero();
        }
        let z = HalfPlanePoint::new(x0, x).expect("x > 0");
        let fz = form.eval(z, 1e-15).expect("table length checked above");
        fz * powc(x, t - 1.0)
    };
    let (integral, qerr) = integrate_exp_sinh(integrand, policy)?;
    let value = powc(cf, t) * integral;
    Ok(TwistValue {
        value,
        err_est: qerr * powc(cf, t).norm() + policy.epsilon_abs,
    })
}

fn quadrature_height_floor(c: u32) -> f64 {
    let cf = c as f64;
    TWO_PI / (cf * cf * (40.0 + 4.0 * cf.ln()))
}

/// Coefficient-table length [`lambda_twist_quadrature`] needs at modulus c,
/// so callers can size the form before invoking the route. Grows like
/// c²·log c.
pub fn lambda_twist_quadrature_terms(c: u32) -> usize {
    CuspForm::q_terms_needed(quadrature_height_floor(c), 1e-15)
}

// ---------------------------------------------------------------------------
// t = 1 rows and modular symbols
// ---------------------------------------------------------------------------

/// Number of q-series terms for a t = 1 row at modulus c.
fn row_terms(c: u32, eps: f64) -> usize {
    let lam = c as f64 / TWO_PI;
    let l = (1.0 / eps).ln() + 6.0;
    (lam * l).ceil() as usize + 32
}

/// Cache of t = 1 twist rows keyed by modulus, powering modular symbols and
/// every Kloosterman-type sum weighted by them.
///
/// At t = 1 the two-sum form collapses to
///   Λ(f,1,-d/c) = (c/2π)·(S(d) - conj(S(a_d))),  S(x) = Σ_n r_n e(-nx/c),
/// with real radial weights r_n = (a(n)/n)·e^{-2πn/c} folded into c residue
/// bins, so one O(φ(c)·c) pass yields the whole row.
pub struct SymbolCache {
    form: Arc<CuspForm>,
    policy: PrecisionPolicy,
    rows: RwLock<HashMap<u32, Arc<Vec<Complex64>>>>,
}

impl SymbolCache {
    pub fn new(form: Arc<CuspForm>, policy: PrecisionPolicy) -> Self {
        SymbolCache {
            form,
            policy,
            rows: RwLock::new(HashMap::new()),
        }
    }

    pub fn form(&self) -> &CuspForm {
        &self.form
    }

    pub fn level(&self) -> u32 {
        self.form.level()
    }

    pub fn policy(&self) -> &PrecisionPolicy {
        &self.policy
    }

    fn compute_row(&self, c: u32) -> Result<Vec<Complex64>> {
        let m = row_terms(c, self.policy.epsilon_abs);
        self.form.require(m)?;
        let cf = c as f64;
        let cu = c as usize;

        let mut bins = vec![0.0f64; cu];
        for n in 1..=m {
            let an = self.form.a(n);
            if an == 0 {
                continue;
            }
            let r = an as f64 / n as f64 * (-TWO_PI * n as f64 / cf).exp();
            bins[n % cu] += r;
        }

        let roots = root_table(c);
        // S(x) = Σ_j bins[j]·e(-jx/c) for every residue x (coprime or not:
        // cheap and keeps the indexing branch-free below).
        let mut s = vec![czero(); cu];
        for (x, slot) in s.iter_mut().enumerate() {
            let mut acc = ComplexSum::new();
            let mut idx = 0usize;
            for &b in bins.iter() {
                acc.add(b * roots[idx].conj());
                idx += x;
                if idx >= cu {
                    idx -= cu;
                }
            }
            *slot = acc.value();
        }

        let scale = cf / TWO_PI;
        let mut row = vec![czero(); cu];
        for d in 1..cu {
            if gcd(d as u64, c as u64) != 1 {
                continue;
            }
            let a = mod_inv(d as i64, c as i64).expect("coprime") as usize;
            row[d] = scale * (s[d] - s[a].conj());
        }
        Ok(row)
    }

    /// The row {Λ(f,1,-d/c)}_{d mod c} (0 at non-coprime d), cached.
    pub fn row(&self, c: u32) -> Result<Arc<Vec<Complex64>>> {
        if c == 0 || c % self.level() != 0 {
            return Err(Error::Domain(format!(
                "row modulus c = {c} must be a positive multiple of the level {}",
                self.level()
            )));
        }
        if let Some(r) = self.rows.read().unwrap().get(&c) {
            return Ok(Arc::clone(r));
        }
        let row = Arc::new(self.compute_row(c)?);
        let mut w = self.rows.write().unwrap();
        Ok(Arc::clone(w.entry(c).or_insert(row)))
    }

    /// Λ(f, 1, -d/c) for a single residue.
    pub fn lambda_one(&self, c: u32, d: i64) -> Result<Complex64> {
        let dr = validate_twist_args(self.level(), c, d)?;
        Ok(self.row(c)?[dr as usize])
    }

    /// Populate rows for many moduli in parallel.
    pub fn prewarm(&self, moduli: &[u32]) -> Result<()> {
        let fresh: Vec<u32> = {
            let r = self.rows.read().unwrap();
            moduli
                .iter()
                .copied()
                .filter(|c| !r.contains_key(c))
                .collect()
        };
        let computed: Result<Vec<(u32, Vec<Complex64>)>> = fresh
            .par_iter()
            .map(|&c| {
                if c == 0 || c % self.level() != 0 {
                    return Err(Error::Domain(format!(
                        "row modulus c = {c} must be a positive multiple of the level {}",
                        self.level()
                    )));
                }
                Ok((c, self.compute_row(c)?))
            })
            .collect();
        let mut w = self.rows.write().unwrap();
        for (c, row) in computed? {
            w.entry(c).or_insert_with(|| Arc::new(row));
        }
        Ok(())
    }

    /// Modular symbol ⟨f, γ⟩ = ∫_{i∞}^{γ(i∞)} f(w) dw for γ ∈ Γ₀(N).
    ///
    /// Equals (i/c)·Λ(f,1,-d/c) for lower row (c d), c > 0; zero on the
    /// stabiliser of ∞ (c = 0); depends only on the coset of γ.
    pub fn modular_symbol(&self, gamma: &GammaMatrix) -> Result<Complex64> {
        if gamma.det() != 1 {
            return Err(Error::Domain("modular symbol needs det γ = 1".into()));
        }
        let g = gamma.sign_normalized();
        if g.c == 0 {
            return Ok(czero());
        }
        if g.c as u64 % self.level() as u64 != 0 {
            return Err(Error::Domain(format!(
                "matrix with c = {} is not in Γ₀({})",
                g.c,
                self.level()
            )));
        }
        let c = u32::try_from(g.c).map_err(|_| {
            Error::Budget(format!("coset modulus {} too large for a cached row", g.c))
        })?;
        let lam = self.lambda_one(c, g.d)?;
        Ok(Complex64::new(0.0, 1.0) / c as f64 * lam)
    }
}

// ---------------------------------------------------------------------------
// Dirichlet series
// ---------------------------------------------------------------------------

/// An L-series value with an error estimate (analytic bound where available,
/// otherwise the measured difference between the full and half partial sums).
#[derive(Debug, Clone, Copy)]
pub struct SeriesValue {
    pub value: Complex64,
    pub err_est: f64,
    pub terms: usize,
}

/// L(χ, s) = Σ χ(n) n^{-s} for Re s > 1.25, truncated with an Abel-summation
/// tail bound (character partial sums are bounded by the modulus).
pub fn dirichlet_l(
    chi: &DirichletCharacter,
    s: Complex64,
    policy: &PrecisionPolicy,
) -> Result<SeriesValue> {
    if s.re < 1.25 {
        return Err(Error::Domain(format!(
            "dirichlet_l needs Re s >= 1.25, got {s}"
        )));
    }
    let n = chi.modulus() as f64;
    let m_needed = (4.0 * n * (1.0 + s.norm()) / policy.epsilon_abs).powf(1.0 / s.re);
    let m = (m_needed.ceil() as usize).clamp(64, policy.cutoff_qseries.max(64));
    if (m as f64) < m_needed {
        return Err(Error::Budget(format!(
            "dirichlet_l at s = {s} needs {m_needed:.0} terms, cutoff is {m}"
        )));
    }
    let mut acc = ComplexSum::new();
    for k in 1..=m {
        let cv = chi.eval(k as i64);
        if cv != czero() {
            acc.add(cv * powc(k as f64, -s));
        }
    }
    Ok(SeriesValue {
        value: acc.value(),
        err_est: policy.epsilon_abs,
        terms: m,
    })
}

/// L(f, s) = Σ a(n) n^{-s}, truncated at `upto` (capped by the coefficient
/// table). Converges for Re s > 3/2; the error estimate is the measured
/// |partial(M) - partial(M/2)| self-consistency difference.
pub fn l_form(form: &CuspForm, s: Complex64, upto: usize) -> Result<SeriesValue> {
    l_form_weighted(form, None, s, upto)
}

/// L(f ⊗ χ, s) = Σ a(n) χ(n) n^{-s} (series sense), truncated at `upto`.
pub fn l_form_twisted(
    form: &CuspForm,
    chi: &DirichletCharacter,
    s: Complex64,
    upto: usize,
) -> Result<SeriesValue> {
    l_form_weighted(form, Some(chi), s, upto)
}

fn l_form_weighted(
    form: &CuspForm,
    chi: Option<&DirichletCharacter>,
    s: Complex64,
    upto: usize,
) -> Result<SeriesValue> {
    if s.re <= 1.5 {
        return Err(Error::Domain(format!(
            "coefficient L-series needs Re s > 3/2, got {s}"
        )));
    }
    let m = upto.min(form.max_n()).max(2);
    let half = m / 2;
    let mut acc = ComplexSum::new();
    let mut at_half = czero();
    for n in 1..=m {
        let an = form.a(n);
        if an != 0 {
            let w = match chi {
                Some(chi) => chi.eval(n as i64),
                None => Complex64::new(1.0, 0.0),
            };
            if w != czero() {
                acc.add(an as f64 * w * powc(n as f64, -s));
            }
        }
        if n == half {
            at_half = acc.value();
        }
    }
    let value = acc.value();
    Ok(SeriesValue {
        value,
        err_est: (value - at_half).norm(),
        terms: m,
    })
}

/// Both sides of the multiplicative identity
///
///   Σ_l a(l) σ^χ_{2s-1}(l) l^{-(t+2s-1)}
///     = L(f⊗χ, t) · L(f, t+2s-1) / L(χ, 2t+2s-2),
///
/// which rests on the Hecke relations and is the convergence backbone of
/// the shifted-sum work. Returns (direct series, L-function ratio).
pub fn sigma_weighted_ratio(
    form: &CuspForm,
    chi: &DirichletCharacter,
    s: Complex64,
    t: Complex64,
    upto: usize,
    policy: &PrecisionPolicy,
) -> Result<(SeriesValue, Complex64)> {
    let w = 2.0 * s - 1.0;
    let v = t + w;
    if t.re <= 1.5 {
        return Err(Error::Domain(format!(
            "sigma-weighted series needs Re t > 3/2, got {t}"
        )));
    }
    let m = upto.min(form.max_n()).max(2);
    let table = crate::chars::sigma_chi_table(chi, w, m);
    let half = m / 2;
    let mut acc = ComplexSum::new();
    let mut at_half = czero();
    for l in 1..=m {
        let al = form.a(l);
        if al != 0 {
            acc.add(al as f64 * table[l] * powc(l as f64, -v));
        }
        if l == half {
            at_half = acc.value();
        }
    }
    let direct = acc.value();
    let lhs = SeriesValue {
        value: direct,
        err_est: (direct - at_half).norm(),
        terms: m,
    };

    let lf_chi = l_form_twisted(form, chi, t, m)?;
    let lf = l_form(form, v, m)?;
    let lchi = dirichlet_l(chi, 2.0 * t + 2.0 * s - 2.0, policy)?;
    let rhs = lf_chi.value * lf.value / lchi.value;
    Ok((lhs, rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chars::DirichletCharacter;

    fn c64(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn small_form() -> Arc<CuspForm> {
        Arc::new(CuspForm::level11(20_000))
    }

    #[test]
    fn two_sum_matches_direct_quadrature() {
        // The anchor: same object along two fully independent routes.
        let form = small_form();
        let policy = PrecisionPolicy::default();
        let t = c64(1.3, 0.0);
        let two_sum = lambda_twist(&form, t, 11, 1, &policy).unwrap();
        let quad = lambda_twist_quadrature(&form, t, 11, 1, &policy).unwrap();
        assert!(
            (two_sum.value - quad.value).norm() < 1e-8,
            "{} vs {}",
            two_sum.value,
            quad.value
        );
    }

    #[test]
    fn symbol_row_matches_quadrature_at_t_one() {
        let form = small_form();
        let policy = PrecisionPolicy::default();
        let cache = SymbolCache::new(Arc::clone(&form), policy.clone());
        let fast = cache.lambda_one(11, 1).unwrap();
        let quad = lambda_twist_quadrature(&form, c64(1.0, 0.0), 11, 1, &policy).unwrap();
        assert!(
            (fast - quad.value).norm() < 1e-9,
            "{fast} vs {}",
            quad.value
        );
    }

    #[test]
    fn functional_equation_residual_is_tiny() {
        let form = small_form();
        let policy = PrecisionPolicy::default();
        for (t, c, d) in [
            (c64(1.3, 0.0), 11u32, 3i64),
            (c64(0.7, 0.4), 22, 5),
            (c64(1.0, -0.6), 33, 7),
        ] {
            let a = mod_inv(d, c as i64).unwrap();
            let lhs = lambda_twist(&form, t, c, d, &policy).unwrap().value;
            let rhs = lambda_twist(&form, 2.0 - t, c, (c as i64 - a).rem_euclid(c as i64), &policy)
                .unwrap()
                .value;
            assert!(
                (lhs + rhs).norm() < 1e-11,
                "t={t} c={c} d={d}: {lhs} vs {rhs}"
            );
        }
    }

    #[test]
    fn general_t_row_agrees_with_fast_row_at_t_one() {
        let form = small_form();
        let policy = PrecisionPolicy::default();
        let cache = SymbolCache::new(Arc::clone(&form), policy.clone());
        let c = 33;
        let fast = cache.row(c).unwrap();
        let general = lambda_row_t(&form, c64(1.0, 0.0), c, &policy).unwrap();
        for d in 0..c as usize {
            assert!(
                (fast[d] - general[d]).norm() < 1e-12,
                "d={d}: {} vs {}",
                fast[d],
                general[d]
            );
        }
    }

    #[test]
    fn row_encodes_the_inverse_antisymmetry() {
        // Λ(f,1,a/c) = -Λ(f,1,-d/c) with ad ≡ 1, i.e. row[c - a_d] = -row[d].
        let form = small_form();
        let cache = SymbolCache::new(form, PrecisionPolicy::default());
        let c = 33u32;
        let row = cache.row(c).unwrap();
        for d in 1..c as usize {
            if gcd(d as u64, c as u64) != 1 {
                continue;
            }
            let a = mod_inv(d as i64, c as i64).unwrap() as usize;
            let mirrored = row[(c as usize - a) % c as usize];
            assert!(
                (mirrored + row[d]).norm() < 1e-12,
                "c={c} d={d}"
            );
        }
    }

    #[test]
    fn modular_symbol_cocycle_and_degenerate_cases() {
        let form = small_form();
        let cache = SymbolCache::new(form, PrecisionPolicy::default());
        let g1 = GammaMatrix::new(1, 0, 11, 1).unwrap();
        let g2 = GammaMatrix::new(3, 1, 11, 4).unwrap();
        let prod = g1.mul(&g2);
        let lhs = cache.modular_symbol(&prod).unwrap();
        let rhs = cache.modular_symbol(&g1).unwrap() + cache.modular_symbol(&g2).unwrap();
        assert!((lhs - rhs).norm() < 1e-11, "{lhs} vs {rhs}");

        // ⟨f, γ⁻¹⟩ = -⟨f, γ⟩
        let inv = cache.modular_symbol(&g2.inv()).unwrap();
        let fwd = cache.modular_symbol(&g2).unwrap();
        assert!((inv + fwd).norm() < 1e-12);

        // Stabiliser of ∞ and sign don't matter.
        assert_eq!(
            cache.modular_symbol(&GammaMatrix::translation(5)).unwrap(),
            czero()
        );
        let neg = GammaMatrix { a: -3, b: -1, c: -11, d: -4 };
        assert!((cache.modular_symbol(&neg).unwrap() - fwd).norm() < 1e-15);
    }

    #[test]
    fn modular_symbol_matches_antiderivative_difference() {
        // ⟨f,γ⟩ = F(γz) - F(z), independent of z.
        let form = small_form();
        let cache = SymbolCache::new(Arc::clone(&form), PrecisionPolicy::default());
        let g = GammaMatrix::new(3, 1, 11, 4).unwrap();
        for (x, y) in [(0.2, 0.3), (-0.4, 0.7)] {
            let z = c64(x, y);
            let gz = g.apply(z);
            let lhs = cache.modular_symbol(&g).unwrap();
            let rhs = form
                .eval_antiderivative(HalfPlanePoint::try_from(gz).unwrap(), 1e-14)
                .unwrap()
                - form
                    .eval_antiderivative(HalfPlanePoint::new(x, y).unwrap(), 1e-14)
                    .unwrap();
            assert!(
                (lhs - rhs).norm() < 1e-9,
                "z=({x},{y}): {lhs} vs {rhs}"
            );
        }
    }

    #[test]
    fn twist_rejects_bad_arguments() {
        let form = small_form();
        let policy = PrecisionPolicy::default();
        assert!(lambda_twist(&form, c64(1.0, 0.0), 12, 1, &policy).is_err());
        assert!(lambda_twist(&form, c64(1.0, 0.0), 22, 2, &policy).is_err());
        assert!(lambda_twist(&form, c64(1.0, 0.0), 0, 1, &policy).is_err());
    }

    #[test]
    fn dirichlet_l_matches_euler_product() {
        let chi = DirichletCharacter::new(11, 2).unwrap();
        let policy = PrecisionPolicy::default();
        let s = c64(3.0, 0.4);
        let series = dirichlet_l(&chi, s, &policy).unwrap().value;
        // Euler product over primes below 10^5.
        let mut prod = Complex64::new(1.0, 0.0);
        let mut sieve = vec![true; 100_001];
        for p in 2..=100_000usize {
            if sieve[p] {
                let mut q = p * p;
                while q <= 100_000 {
                    sieve[q] = false;
                    q += p;
                }
                let f = Complex64::new(1.0, 0.0) - chi.eval(p as i64) * powc(p as f64, -s);
                prod /= f;
            }
        }
        assert!((series - prod).norm() < 1e-9, "{series} vs {prod}");
    }

    #[test]
    fn form_l_series_matches_euler_product() {
        let form = CuspForm::level11(300_000);
        let s = c64(3.5, 0.3);
        let series = l_form(&form, s, 300_000).unwrap().value;
        let mut prod = Complex64::new(1.0, 0.0);
        let mut sieve = vec![true; 10_001];
        for p in 2..=10_000usize {
            if !sieve[p] {
                continue;
            }
            let mut q = p * p;
            while q <= 10_000 {
                sieve[q] = false;
                q += p;
            }
            let ap = form.a(p) as f64;
            let factor = if p == 11 {
                Complex64::new(1.0, 0.0) - ap * powc(11.0, -s)
            } else {
                Complex64::new(1.0, 0.0) - ap * powc(p as f64, -s)
                    + powc(p as f64, 1.0 - 2.0 * s)
            };
            prod /= factor;
        }
        assert!((series - prod).norm() < 1e-7, "{series} vs {prod}");
    }

    #[test]
    fn sigma_weighted_series_equals_l_ratio() {
        let form = CuspForm::level11(200_000);
        let chi = DirichletCharacter::new(11, 2).unwrap();
        let policy = PrecisionPolicy::default();
        let (lhs, rhs) = sigma_weighted_ratio(
            &form,
            &chi,
            c64(2.5, 0.0),
            c64(2.5, 0.0),
            200_000,
            &policy,
        )
        .unwrap();
        let rel = (lhs.value - rhs).norm() / rhs.norm();
        assert!(rel < 1e-7, "rel = {rel:.2e}: {} vs {rhs}", lhs.value);
    }
}
