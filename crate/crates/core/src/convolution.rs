//! Shifted convolution sums along two independent routes.
//!
//! For a shift n ≠ 0, the double Dirichlet series
//!
//!   D(n; s, t) = Σ_{l ≥ 1, l ≠ n} a(l) · σ^χ_{2s-1}(|l−n|) / (l^t |l−n|^{2s-1})
//!
//! converges for Re t large enough and continues in t. The continuation is
//! computable as a sum over moduli ("c-sum route"):
//!
//!   D(n; s, t) = N^{2s} (L(χ̄,2s)/W(χ̄)) ((2π)^t/Γ(t))
//!                · Σ_{N|c>0} c^{-2s-t} Σ'_{d mod c} χ̄(d) e(nd/c) Λ(f,t,-d/c)
//!
//! Matching the truncated direct series against the truncated c-sum in the
//! common region of convergence is the core two-route check; at t = 1 the
//! c-sum specialises to the modular-symbol rows and defines the shifted
//! L-value L_shift(n, s).
//!
//! The weighted variant subtracts an explicitly convergent tail:
//!
//!   L_weighted(n, x, s) = L_shift(n, s) − |n|^{x-s} · T(n, x, s),
//!   T(n, x, s) = Σ_{l≥1} (a(l)/l) σ^χ_{2s-1}(l−n) / (l−n)^{s-1+x}   (n < 0),
//!
//! so differences of L_weighted across weights x reduce to differences of
//! the tail series — an identity with two genuinely distinct numerical
//! evaluations once the truncation budgets differ.

use crate::chars::{gauss_sum, sigma_chi_table, DirichletCharacter};
use crate::cuspform::CuspForm;
use crate::error::{Error, Result};
use crate::lfun::{dirichlet_l, lambda_row_t, SeriesValue, SymbolCache};
use crate::numeric::{powc, root_table, ComplexSum};
use crate::policy::PrecisionPolicy;
use crate::specfun::gamma;
use num_complex::Complex64;

const TWO_PI: f64 = 2.0 * std::f64::consts::PI;

/// Value of a truncated c-sum with a decay-calibrated tail estimate.
#[derive(Debug, Clone, Copy)]
pub struct CsumValue {
    pub value: Complex64,
    pub tail_est: f64,
}

fn validate_shift(n: i64) -> Result<()> {
    if n == 0 {
        Err(Error::Domain("the shift n must be nonzero".into()))
    } else {
        Ok(())
    }
}

/// Direct truncated evaluation of D(n; s, t). Needs Re s ≥ 1.25 (so the
/// divisor-ratio factor stays bounded) and Re t ≥ 1.55 (convergence region).
/// The error estimate is the change from truncating at half the budget.
pub fn dds_direct(
    form: &CuspForm,
    chi: &DirichletCharacter,
    n: i64,
    s: Complex64,
    t: Complex64,
    upto: usize,
) -> Result<SeriesValue> {
    validate_shift(n)?;
    if s.re < 1.25 {
        return Err(Error::Domain(format!("need Re s >= 1.25, got {s}")));
    }
    if t.re < 1.55 {
        return Err(Error::Domain(format!(
            "direct series needs Re t >= 1.55, got {t}"
        )));
    }
    form.require(upto)?;
    let w = 2.0 * s - 1.0;
    let m_max = upto + n.unsigned_abs() as usize;
    // table[m] = σ^χ_w(m) / m^w
    let mut table = sigma_chi_table(chi, w, m_max);
    for (m, entry) in table.iter_mut().enumerate().skip(1) {
        *entry *= powc(m as f64, -w);
    }
    let mut acc = ComplexSum::new();
    let mut half = Complex64::new(0.0, 0.0);
    for l in 1..=upto {
        if l as i64 != n {
            let idx = (l as i64 - n).unsigned_abs() as usize;
            acc.add(form.a(l) as f64 * table[idx] * powc(l as f64, -t));
        }
        if l == upto / 2 {
            half = acc.value();
        }
    }
    let value = acc.value();
    Ok(SeriesValue {
        value,
        err_est: (value - half).norm(),
        terms: upto,
    })
}

/// Shared assembly of the c-sum route given a per-modulus row provider.
fn csum_assemble<R>(
    chi: &DirichletCharacter,
    n: i64,
    s: Complex64,
    t: Complex64,
    c_max: u32,
    policy: &PrecisionPolicy,
    mut row_at: R,
) -> Result<CsumValue>
where
    R: FnMut(u32) -> Result<std::sync::Arc<Vec<Complex64>>>,
{
    validate_shift(n)?;
    if s.re < 1.25 {
        return Err(Error::Domain(format!("need Re s >= 1.25, got {s}")));
    }
    // Convergence rate of the c-sum: |inner sum| ≲ c^{2.6}, terms decay like
    // c^{-p} with p = 2·Re s + Re t − 2.6.
    let p = 2.0 * s.re + t.re - 2.6;
    if p < 1.2 {
        return Err(Error::Domain(format!(
            "c-sum needs 2 Re s + Re t >= 3.8, got s={s}, t={t}"
        )));
    }
    let nmod = chi.modulus();
    let chibar = chi.conjugate();
    let l_val = dirichlet_l(&chibar, 2.0 * s, policy)?;
    let pref = powc(nmod as f64, 2.0 * s) * l_val.value / gauss_sum(&chibar)
        * powc(TWO_PI, t)
        / gamma(t);
    let mut acc = ComplexSum::new();
    let mut last_terms = [0.0f64; 3];
    let mut c = nmod;
    while c <= c_max {
        let row = row_at(c)?;
        let roots = root_table(c);
        let cl = c as i64;
        let nr = n.rem_euclid(cl) as u64;
        let mut inner = ComplexSum::new();
        for d in 1..cl {
            let lam = row[d as usize];
            if lam == Complex64::new(0.0, 0.0) {
                continue;
            }
            let idx = (nr * d as u64 % c as u64) as usize;
            inner.add(chi.eval_conj(d) * roots[idx] * lam);
        }
        let term = powc(c as f64, -2.0 * s - t) * inner.value();
        last_terms.rotate_left(1);
        last_terms[2] = term.norm();
        acc.add(term);
        c += nmod;
    }
    let m = last_terms.iter().cloned().fold(0.0, f64::max);
    let tail = pref.norm() * m * c_max as f64 / (nmod as f64 * (p - 1.0));
    Ok(CsumValue {
        value: pref * acc.value(),
        tail_est: tail,
    })
}

/// D(n; s, t) along the c-sum route for general t, building the twisted
/// L-value rows Λ(f, t, -d/c) from the two-sum continuation.
pub fn dds_csum(
    form: &CuspForm,
    chi: &DirichletCharacter,
    n: i64,
    s: Complex64,
    t: Complex64,
    c_max: u32,
    policy: &PrecisionPolicy,
) -> Result<CsumValue> {
    csum_assemble(chi, n, s, t, c_max, policy, |c| {
        lambda_row_t(form, t, c, policy).map(std::sync::Arc::new)
    })
}

/// D(n; s, 1) — the shifted L-value L_shift(n, s) — along the c-sum route,
/// reusing the cached modular-symbol rows.
pub fn dds_csum_t1(
    symbols: &SymbolCache,
    chi: &DirichletCharacter,
    n: i64,
    s: Complex64,
    c_max: u32,
) -> Result<CsumValue> {
    if chi.modulus() != symbols.level() {
        return Err(Error::Domain(
            "character modulus must equal the form level".into(),
        ));
    }
    let policy = symbols.policy().clone();
    csum_assemble(
        chi,
        n,
        s,
        Complex64::new(1.0, 0.0),
        c_max,
        &policy,
        |c| symbols.row(c),
    )
}

/// T(n, x, s) = Σ_{l≥1} (a(l)/l) σ^χ_{2s-1}(l−n) (l−n)^{-(s-1+x)} for n < 0;
/// absolutely convergent for x > Re s + 1/2.
pub fn tail_series(
    form: &CuspForm,
    chi: &DirichletCharacter,
    n: i64,
    x: f64,
    s: Complex64,
    upto: usize,
) -> Result<SeriesValue> {
    if n >= 0 {
        return Err(Error::Domain(
            "the weighted tail series is defined for negative shifts".into(),
        ));
    }
    if x < s.re + 0.55 {
        return Err(Error::Domain(format!(
            "tail series needs x >= Re s + 0.55 for convergence, got x={x}, s={s}"
        )));
    }
    form.require(upto)?;
    let w = 2.0 * s - 1.0;
    let shift = n.unsigned_abs() as usize;
    let m_max = upto + shift;
    let mut table = sigma_chi_table(chi, w, m_max);
    let expo = s - 1.0 + x;
    for (m, entry) in table.iter_mut().enumerate().skip(1) {
        *entry *= powc(m as f64, -expo);
    }
    let mut acc = ComplexSum::new();
    let mut half = Complex64::new(0.0, 0.0);
    for l in 1..=upto {
        acc.add(form.a(l) as f64 / l as f64 * table[l + shift]);
        if l == upto / 2 {
            half = acc.value();
        }
    }
    let value = acc.value();
    Ok(SeriesValue {
        value,
        err_est: (value - half).norm(),
        terms: upto,
    })
}

/// L_weighted(n, x, s) = L_shift(n, s) − |n|^{x−s} T(n, x, s), with the
/// c-sum truncated at c_max and the tail series at `upto` terms.
pub fn l_weighted(
    symbols: &SymbolCache,
    chi: &DirichletCharacter,
    n: i64,
    x: f64,
    s: Complex64,
    c_max: u32,
    upto: usize,
) -> Result<Complex64> {
    let l_shift = dds_csum_t1(symbols, chi, n, s, c_max)?;
    let tail = tail_series(symbols.form(), chi, n, x, s, upto)?;
    let na = n.unsigned_abs() as f64;
    Ok(l_shift.value - powc(na, Complex64::new(x, 0.0) - s) * tail.value)
}

/// The exact algebraic bridge between the shifted L-value and the
/// symbol-weighted Eisenstein coefficient:
///
///   L_shift(n, s) = 2 Γ(s) N^{2s} L(χ̄, 2s) / (i W(χ̄) (π|n|)^{s-1}) · φ*(n, s, χ)
///
/// With both c-sums truncated at the same c_max the two sides agree to
/// roundoff; this pins the prefactor algebra connecting the two modules.
pub fn l_shift_from_phi_star(
    family: &crate::eisenstein::EisensteinFamily,
    n: i64,
    s: Complex64,
    c_max: u32,
    policy: &PrecisionPolicy,
) -> Result<Complex64> {
    validate_shift(n)?;
    let chi = family.chi();
    let chibar = chi.conjugate();
    let nmod = chi.modulus() as f64;
    let phi = crate::eisenstein::phi_star(family, n, s, c_max)?;
    let l_val = dirichlet_l(&chibar, 2.0 * s, policy)?;
    let pref = 2.0 * gamma(s) * powc(nmod, 2.0 * s) * l_val.value
        / (Complex64::new(0.0, 1.0)
            * gauss_sum(&chibar)
            * powc(std::f64::consts::PI * n.unsigned_abs() as f64, s - 1.0));
    Ok(pref * phi.value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eisenstein::EisensteinFamily;
    use crate::numeric::rel_diff;
    use std::sync::Arc;

    fn c64(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn setup() -> (Arc<CuspForm>, DirichletCharacter, SymbolCache) {
        let form = Arc::new(CuspForm::level11(400_000));
        let chi = DirichletCharacter::new(11, 2).unwrap();
        let cache = SymbolCache::new(form.clone(), PrecisionPolicy::default());
        (form, chi, cache)
    }

    #[test]
    fn direct_and_csum_agree_in_the_overlap() {
        // Moderate budgets; the acceptance suite runs the full-size version.
        let (form, chi, _) = setup();
        let policy = PrecisionPolicy::default();
        let s = c64(2.5, 0.0);
        let t = c64(1.8, 0.0);
        let direct = dds_direct(&form, &chi, -1, s, t, 400_000).unwrap();
        let csum = dds_csum(&form, &chi, -1, s, t, 330, &policy).unwrap();
        let diff = (direct.value - csum.value).norm();
        assert!(
            diff < 1e-3 * csum.value.norm(),
            "direct={} csum={} diff={diff:.3e} (direct err {:.1e}, csum tail {:.1e})",
            direct.value,
            csum.value,
            direct.err_est,
            csum.tail_est
        );
    }

    #[test]
    fn general_t_rows_match_symbol_rows_at_t_equals_one() {
        let (_, chi, cache) = setup();
        let s = c64(2.5, 0.0);
        let via_general = dds_csum(
            cache.form(),
            &chi,
            -2,
            s,
            c64(1.0, 0.0),
            110,
            cache.policy(),
        )
        .unwrap();
        let via_symbols = dds_csum_t1(&cache, &chi, -2, s, 110).unwrap();
        assert!(
            (via_general.value - via_symbols.value).norm() < 1e-10,
            "general={} symbols={}",
            via_general.value,
            via_symbols.value
        );
    }

    #[test]
    fn csum_is_stable_under_doubling_the_modulus_cut() {
        let (_, chi, cache) = setup();
        let s = c64(2.5, 0.0);
        let coarse = dds_csum_t1(&cache, &chi, -1, s, 275).unwrap();
        let fine = dds_csum_t1(&cache, &chi, -1, s, 550).unwrap();
        let moved = (coarse.value - fine.value).norm();
        assert!(
            moved <= coarse.tail_est + fine.tail_est,
            "moved {moved:.3e} vs tails {:.3e}/{:.3e}",
            coarse.tail_est,
            fine.tail_est
        );
        assert!(moved < 1e-6 * fine.value.norm().max(1.0));
    }

    #[test]
    fn shifted_l_value_bridges_to_the_star_coefficient() {
        let (_, chi, cache) = setup();
        let family = EisensteinFamily::new(&chi, &cache).unwrap();
        let s = c64(2.5, 0.0);
        for n in [-2i64, -1, 1, 2] {
            let lhs = dds_csum_t1(&cache, &chi, n, s, 220).unwrap().value;
            let rhs = l_shift_from_phi_star(&family, n, s, 220, cache.policy()).unwrap();
            assert!(
                rel_diff(lhs, rhs) < 1e-11,
                "n={n}: lhs={lhs} rhs={rhs}"
            );
        }
    }

    #[test]
    fn tail_series_converges_and_drops_with_the_weight() {
        let (form, chi, _) = setup();
        let s = c64(2.5, 0.0);
        let t4 = tail_series(&form, &chi, -1, 4.0, s, 200_000).unwrap();
        let t4b = tail_series(&form, &chi, -1, 4.0, s, 400_000).unwrap();
        assert!(
            (t4.value - t4b.value).norm() < 1e-4 * t4b.value.norm().max(1e-6),
            "x=4 truncation drift: {} vs {}",
            t4.value,
            t4b.value
        );
        let mut prev = f64::INFINITY;
        for x in [4.0, 6.0, 8.0, 10.0] {
            let t = tail_series(&form, &chi, -1, x, s, 200_000).unwrap();
            let mag = t.value.norm();
            assert!(mag < prev, "|T({x})| = {mag} did not decrease");
            prev = mag;
        }
    }

    #[test]
    fn weighted_cross_difference_reduces_to_tail_differences() {
        let (form, chi, cache) = setup();
        let s = c64(2.5, 0.0);
        let (x1, x2) = (4.0, 6.0);
        let lw1 = l_weighted(&cache, &chi, -1, x1, s, 330, 200_000).unwrap();
        let lw2 = l_weighted(&cache, &chi, -1, x2, s, 330, 200_000).unwrap();
        let route_a = lw1 - lw2;
        let tb1 = tail_series(&form, &chi, -1, x1, s, 400_000).unwrap().value;
        let tb2 = tail_series(&form, &chi, -1, x2, s, 400_000).unwrap().value;
        let route_b = tb2 - tb1; // |n| = 1, so the power weights are 1
        assert!(
            rel_diff(route_a, route_b) < 1e-3,
            "route_a={route_a} route_b={route_b}"
        );
    }

    #[test]
    fn frozen_reference_values() {
        // Cross-validated on first computation: the c-sum at this argument
        // agrees with the direct series continuation region (see the
        // two-route tests) and is stable under doubling c_max to 1e-7.
        let (_, chi, cache) = setup();
        let l = dds_csum_t1(&cache, &chi, -1, c64(2.5, 0.0), 550).unwrap().value;
        let l_ref = c64(1.0807494823136108, 0.8937129881829357);
        assert!((l - l_ref).norm() < 1e-10, "L_shift(-1,2.5) drifted: {l}");
    }

    #[test]
    fn domain_validation() {
        let (form, chi, cache) = setup();
        let s = c64(2.5, 0.0);
        assert!(dds_direct(&form, &chi, 0, s, c64(1.8, 0.0), 1000).is_err());
        assert!(dds_direct(&form, &chi, -1, s, c64(1.2, 0.0), 1000).is_err());
        assert!(dds_direct(&form, &chi, -1, c64(1.0, 0.0), c64(1.8, 0.0), 1000).is_err());
        assert!(tail_series(&form, &chi, 1, 4.0, s, 1000).is_err());
        assert!(tail_series(&form, &chi, -1, 2.0, s, 1000).is_err());
        assert!(dds_csum_t1(&cache, &chi, -1, c64(1.3, 0.0), 110).is_err());
    }
}
