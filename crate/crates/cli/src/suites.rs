//! The named verification suites: each checks one identity (or family of
//! identities) along two independently computed routes and reports the
//! agreement against a fixed tolerance.

use crate::context::Context;
use crate::report::{Check, SuiteReport};
use esms::convolution::{dds_csum, dds_direct, l_weighted, tail_series};
use esms::eisenstein::{
    eval_classical, eval_completed_parts, eval_symbol_weighted, extract_star_coefficient,
    phi_classical, phi_star, ClassicalRoute, EisensteinFamily,
};
use esms::lfun::{lambda_twist, sigma_weighted_ratio, GammaMatrix};
use esms::specfun::{hx, hx_scaled, k_transform_hx_closed, k_transform_numeric};
use esms::{chars, Error, HalfPlanePoint, Result, SymbolCache};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::time::Instant;

fn c64(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn real(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// All suite names, in the order `verify --suite all` runs them.
pub const SUITE_NAMES: [&str; 10] = [
    "coefficients",
    "functional-eq",
    "modular-symbol",
    "eis-coeff",
    "ms-coeff",
    "completion",
    "shifted-sum",
    "l-ratio",
    "bessel-transform",
    "weighted-shift",
];

pub fn run_suite(ctx: &Context, name: &str) -> Result<SuiteReport> {
    let start = Instant::now();
    let checks = match name {
        "coefficients" => coefficients(ctx),
        "functional-eq" => functional_eq(ctx),
        "modular-symbol" => modular_symbol(ctx),
        "eis-coeff" => eis_coeff(ctx),
        "ms-coeff" => ms_coeff(ctx),
        "completion" => completion(ctx),
        "shifted-sum" => shifted_sum(ctx),
        "l-ratio" => l_ratio(ctx),
        "bessel-transform" => bessel_transform(ctx),
        "weighted-shift" => weighted_shift(ctx),
        other => Err(Error::InvalidInput(format!(
            "unknown suite {other:?}; available: {}",
            SUITE_NAMES.join(", ")
        ))),
    }?;
    Ok(SuiteReport::new(name, checks, start.elapsed().as_millis()))
}

/// Hecke multiplicativity (exact integer identity) and the coefficient
/// growth bound |a(n)| ≤ d(n)√n.
fn coefficients(ctx: &Context) -> Result<Vec<Check>> {
    let form = ctx.form();
    let hecke = form.hecke_violation(200);
    let mut hecke_check = Check::abs(
        "hecke-multiplicativity",
        real(hecke.map_or(0.0, |_| 1.0)),
        real(0.0),
        0.5,
    )
    .with_truncation("product_bound", 200);
    if let Some((m, n)) = hecke {
        hecke_check = hecke_check.with_truncation("violation_at", format!("({m},{n})"));
    }

    let deligne = form.deligne_violation(10_000);
    let deligne_check = Check::abs(
        "coefficient-growth-bound",
        real(deligne.map_or(0.0, |_| 1.0)),
        real(0.0),
        0.5,
    )
    .with_truncation("n_max", 10_000);
    Ok(vec![hecke_check, deligne_check])
}

/// Λ(f, t, -d/c) + Λ(f, 2-t, d̄/c) = 0 at pseudorandom (t, c, d).
fn functional_eq(ctx: &Context) -> Result<Vec<Check>> {
    let form = ctx.form();
    let mut rng = ChaCha8Rng::seed_from_u64(0x00E5_435F);
    let mut checks = Vec::new();
    for case in 0..20 {
        let t = c64(0.4 + 1.2 * rng.gen::<f64>(), -1.5 + 3.0 * rng.gen::<f64>());
        let c = 11 * rng.gen_range(1..=4u32);
        let d = loop {
            let d = rng.gen_range(1..c as i64);
            if chars::gcd(d as u64, c as u64) == 1 {
                break d;
            }
        };
        let a = chars::mod_inv(d, c as i64).expect("coprime");
        let lhs = lambda_twist(&form, t, c, d, &ctx.policy)?;
        let rhs = lambda_twist(&form, 2.0 - t, c, (c as i64 - a).rem_euclid(c as i64), &ctx.policy)?;
        checks.push(
            Check::abs(
                format!("functional-eq[{case}]"),
                lhs.value,
                -rhs.value,
                1e-9,
            )
            .with_truncation("t", format!("{t}"))
            .with_truncation("c", c)
            .with_truncation("d", d),
        );
    }
    Ok(checks)
}

/// ⟨f, γ⟩ from the twisted-L rows against F(γz) − F(z) from the q-series,
/// at three base points per matrix.
fn modular_symbol(ctx: &Context) -> Result<Vec<Check>> {
    let form = ctx.form();
    let cache = ctx.symbols();
    let f_eps = 1e-13;
    let matrices: [(i64, i64); 10] = [
        (11, 1),
        (11, 3),
        (11, 7),
        (22, 5),
        (22, 9),
        (33, 2),
        (33, 10),
        (44, 3),
        (44, 19),
        (44, 43),
    ];
    let mut checks = Vec::new();
    for (c, d) in matrices {
        let a = chars::mod_inv(d, c).expect("coprime");
        let b = (a * d - 1) / c;
        let gamma = GammaMatrix::new(a, b, c, d)?;
        let from_rows = cache.modular_symbol(&gamma)?;
        let x0 = -(d as f64) / c as f64;
        let mut worst = from_rows;
        let mut worst_diff = -1.0f64;
        for (dx, y) in [(0.0, 0.06), (0.017, 0.09), (-0.023, 0.13)] {
            let z = HalfPlanePoint::new(x0 + dx, y)?;
            let gz = gamma.apply(z.to_complex());
            let f_route = form.eval_antiderivative(HalfPlanePoint::new(gz.re, gz.im)?, f_eps)?
                - form.eval_antiderivative(z, f_eps)?;
            let diff = (from_rows - f_route).norm();
            if diff > worst_diff {
                worst_diff = diff;
                worst = f_route;
            }
        }
        checks.push(
            Check::abs(format!("modular-symbol[c={c},d={d}]"), from_rows, worst, 1e-8)
                .with_truncation("points", 3),
        );
    }
    Ok(checks)
}

/// Classical Eisenstein coefficient φ(m, s; χ): divisor/L-function closed
/// form against the Kloosterman-sum route.
fn eis_coeff(ctx: &Context) -> Result<Vec<Check>> {
    let c_max = 2000u32;
    let mut checks = Vec::new();
    for s in [real(1.5), real(2.0), c64(2.5, 0.5)] {
        for m in [1i64, 2, 3] {
            let closed = phi_classical(&ctx.chi, m, s, ClassicalRoute::ClosedForm, 0, &ctx.policy)?;
            let ksum =
                phi_classical(&ctx.chi, m, s, ClassicalRoute::KloostermanSum, c_max, &ctx.policy)?;
            checks.push(
                Check::abs(
                    format!("eis-coeff[m={m},s={s}]"),
                    closed.value,
                    ksum.value,
                    1e-5 + ksum.tail_est,
                )
                .with_truncation("c_max", c_max),
            );
        }
    }
    Ok(checks)
}

/// Symbol-weighted coefficient φ*(-1, 3, χ): Kloosterman-type c-sum against
/// direct Fourier extraction from the series.
fn ms_coeff(ctx: &Context) -> Result<Vec<Check>> {
    let chi = &ctx.chi;
    let cache = ctx.symbols();
    let family = EisensteinFamily::new(chi, cache)?;
    let s = real(3.0);
    let csum = phi_star(&family, -1, s, 1100)?;
    let extracted = extract_star_coefficient(&family, -1, 0.5, s, 64, 550)?;
    Ok(vec![Check::abs(
        "ms-coeff[n=-1,s=3]",
        csum.value,
        extracted,
        1e-3,
    )
    .with_truncation("c_max_csum", 1100)
    .with_truncation("c_max_series", 550)
    .with_truncation("dft_nodes", 64)
    .with_truncation("y", 0.5)])
}

/// Completion E* = G − F·E over a shared coset set, and the second-order
/// automorphy E*(γ₀z) = χ(γ₀)(E*(z) − ⟨f,γ₀⟩E(z)).
fn completion(ctx: &Context) -> Result<Vec<Check>> {
    let chi = &ctx.chi;
    let cache = ctx.symbols();
    let form = ctx.form();
    let family = EisensteinFamily::new(chi, cache)?;
    let s = real(3.0);
    let c_max = 550u32;

    // Equal-height pair: |11 z + 4| = 1, so z and γ₀z (γ₀ = (3 1; 11 4))
    // have the same imaginary part and both sides truncate alike.
    let theta: f64 = 1.2;
    let z = HalfPlanePoint::new((theta.cos() - 4.0) / 11.0, theta.sin() / 11.0)?;
    let gamma0 = GammaMatrix::new(3, 1, 11, 4)?;

    let parts = eval_completed_parts(&family, &form, z, s, c_max, 2e-3)?;
    let completion_check = Check::abs(
        "completion-identity",
        parts.e_star,
        parts.g - parts.f_at_z * parts.e,
        1e-10,
    )
    .with_truncation("c_max", c_max)
    .with_truncation("height_floor", 2e-3)
    .with_truncation("cosets", parts.terms as u64);

    let gz = gamma0.apply(z.to_complex());
    let lhs = eval_symbol_weighted(&family, HalfPlanePoint::new(gz.re, gz.im)?, s, c_max)?;
    let e_z = eval_classical(chi, z, s, c_max, &ctx.policy)?;
    let es_z = eval_symbol_weighted(&family, z, s, c_max)?;
    let sym = cache.modular_symbol(&gamma0)?;
    let rhs = chi.eval(gamma0.d) * (es_z - sym * e_z);
    let automorphy_check = Check::rel("second-order-automorphy", lhs, rhs, 1e-5)
        .with_truncation("c_max", c_max);

    Ok(vec![completion_check, automorphy_check])
}

/// Shifted convolution sum D(n; s, t): direct series against the c-sum
/// continuation, for shifts of both signs and two t values.
fn shifted_sum(ctx: &Context) -> Result<Vec<Check>> {
    let upto = ctx.config.q_max.min(4_000_000);
    let form = ctx.form_with(upto + 2);
    let s = real(2.5);
    let c_max = 1100u32;
    let mut checks = Vec::new();
    for n in [-2i64, -1, 1, 2] {
        for t in [real(1.6), real(1.8)] {
            let direct = dds_direct(&form, &ctx.chi, n, s, t, upto)?;
            let csum = dds_csum(&form, &ctx.chi, n, s, t, c_max, &ctx.policy)?;
            checks.push(
                Check::rel(
                    format!("shifted-sum[n={n},t={t}]"),
                    direct.value,
                    csum.value,
                    1e-5,
                )
                .with_truncation("series_terms", upto as u64)
                .with_truncation("c_max", c_max)
                .with_truncation("direct_err_est", format!("{:.3e}", direct.err_est))
                .with_truncation("csum_tail_est", format!("{:.3e}", csum.tail_est)),
            );
        }
    }
    Ok(checks)
}

/// Σ_l a(l) σ^χ_{2s-1}(l) l^{-(t+2s-1)} against the L-function product
/// L(f⊗χ, t) L(f, t+2s-1) / L(χ, 2t+2s-2).
fn l_ratio(ctx: &Context) -> Result<Vec<Check>> {
    let upto = ctx.config.q_max.min(2_000_000);
    let form = ctx.form_with(upto);
    let mut checks = Vec::new();
    for (s, t) in [(real(2.5), real(1.8)), (real(3.0), real(2.0))] {
        let (lhs, rhs) = sigma_weighted_ratio(&form, &ctx.chi, s, t, upto, &ctx.policy)?;
        checks.push(
            Check::rel(format!("l-ratio[s={s},t={t}]"), lhs.value, rhs, 1e-6)
                .with_truncation("series_terms", upto as u64),
        );
    }
    Ok(checks)
}

/// 𝒦(h_x)(s) numerical quadrature against the Γ-quotient closed form on a
/// 5×5 grid, plus the exact scaling of the shifted test functions.
fn bessel_transform(ctx: &Context) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    for s in [real(0.5), real(0.8), real(1.1), c64(1.4, 0.3), real(1.7)] {
        for off in [0.75, 1.5, 2.5, 4.0, 6.0] {
            let x = real(s.re + off);
            let closed = k_transform_hx_closed(x, s)?;
            let h = move |y: f64| hx(x, y);
            let (numeric, err) = k_transform_numeric(&h, s, &ctx.policy)?;
            checks.push(
                Check::rel(
                    format!("k-transform[x={},s={s}]", x.re),
                    closed,
                    numeric,
                    1e-6,
                )
                .with_truncation("quadrature_err_est", format!("{err:.3e}")),
            );
        }
    }
    // (|n|/(|n|+l))^x scaling: transform of the scaled function against the
    // scaled transform.
    let (x, sv, l) = (real(3.2), real(0.9), 3.0);
    let h_scaled = move |y: f64| hx_scaled(x, 1.0, l, y);
    let (numeric, _) = k_transform_numeric(&h_scaled, sv, &ctx.policy)?;
    let factor = (1.0f64 / (1.0 + l)).powf(3.2);
    let scaled_closed = factor * k_transform_hx_closed(x, sv)?;
    checks.push(
        Check::rel("k-transform-scaling[x=3.2,l=3]", numeric, scaled_closed, 1e-6)
            .with_truncation("n_abs", 1)
            .with_truncation("l", 3),
    );
    Ok(checks)
}

/// Weighted shifted L-values: the cross-difference over two weights equals
/// the corresponding tail-series difference (computed at a different,
/// larger truncation), and the weighted tails decrease along the weights.
fn weighted_shift(ctx: &Context) -> Result<Vec<Check>> {
    let m_route_a = 2_000_000usize.min(ctx.config.q_max);
    let m_route_b = 4_000_000usize.min(ctx.config.q_max * 2);
    let form = ctx.form_with(m_route_b + 1);
    let cache = SymbolCache::new(form.clone(), ctx.policy.clone());
    let chi = &ctx.chi;
    let s = real(2.5);
    let n = -1i64;
    let (x1, x2) = (4.0, 6.0);

    let lw1 = l_weighted(&cache, chi, n, x1, s, 550, m_route_a)?;
    let lw2 = l_weighted(&cache, chi, n, x2, s, 550, m_route_a)?;
    let route_a = lw1 - lw2;
    let t1 = tail_series(&form, chi, n, x1, s, m_route_b)?.value;
    let t2 = tail_series(&form, chi, n, x2, s, m_route_b)?.value;
    // |n| = 1 keeps the power weights trivial.
    let route_b = t2 - t1;
    let cross = Check::rel("weighted-cross-difference", route_a, route_b, 1e-5)
        .with_truncation("series_terms_a", m_route_a as u64)
        .with_truncation("series_terms_b", m_route_b as u64)
        .with_truncation("c_max", 550);

    let mut mags = Vec::new();
    for x in [4.0, 6.0, 8.0, 10.0] {
        mags.push(tail_series(&form, chi, n, x, s, m_route_a)?.value.norm());
    }
    let max_increase = mags
        .windows(2)
        .map(|w| w[1] - w[0])
        .fold(f64::NEG_INFINITY, f64::max);
    let monotone = Check::abs(
        "weighted-tail-monotone",
        real(max_increase.max(0.0)),
        real(0.0),
        1e-15,
    )
    .with_truncation("weights", "4,6,8,10")
    .with_truncation(
        "magnitudes",
        mags.iter()
            .map(|m| format!("{m:.6e}"))
            .collect::<Vec<_>>()
            .join(","),
    );

    Ok(vec![cross, monotone])
}
