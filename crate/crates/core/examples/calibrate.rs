//! Prints reference values and convergence diagnostics for the library's
//! main quantities: useful when choosing truncation budgets or pinning
//! regression values. Run with `cargo run --release -p esms --example
//! calibrate [section]` where section ∈ all, pins, dds, tails, lratio,
//! eisen, timing.

use esms::convolution::{dds_csum, dds_csum_t1, dds_direct, l_weighted, tail_series};
use esms::eisenstein::{
    eval_classical, eval_completed_parts, eval_symbol_weighted, extract_star_coefficient,
    kloosterman_star, phi_star, phi_star_constant, EisensteinFamily,
};
use esms::lfun::{sigma_weighted_ratio, GammaMatrix};
use esms::{CuspForm, DirichletCharacter, HalfPlanePoint, PrecisionPolicy, SymbolCache};
use num_complex::Complex64;
use std::sync::Arc;
use std::time::Instant;

fn c64(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn main() {
    let section = std::env::args().nth(1).unwrap_or_else(|| "all".into());
    let policy = PrecisionPolicy::default();
    let chi = DirichletCharacter::new(11, 2).unwrap();

    let t0 = Instant::now();
    let small = Arc::new(CuspForm::level11(60_000));
    println!("[timing] level11(60k): {:?}", t0.elapsed());
    let cache = SymbolCache::new(small.clone(), policy.clone());
    let family = EisensteinFamily::new(&chi, &cache).unwrap();

    if section == "all" || section == "pins" {
        println!("== regression pins ==");
        let s_star = kloosterman_star(&cache, &chi, 1, 0, 11).unwrap();
        println!("S*(1,0,chi;11)            = {:?}", s_star);
        for cmax in [550u32, 1100] {
            let p = phi_star(&family, -1, c64(2.5, 0.0), cmax).unwrap();
            println!(
                "phi_star(-1, 2.5, c<={cmax})  = {:?}  tail_est={:.3e}",
                p.value, p.tail_est
            );
        }
        for cmax in [550u32, 1100] {
            let p = phi_star(&family, -1, c64(3.0, 0.0), cmax).unwrap();
            println!(
                "phi_star(-1, 3.0, c<={cmax})  = {:?}  tail_est={:.3e}",
                p.value, p.tail_est
            );
        }
        for s in [c64(2.5, 0.0), c64(1.5, 0.0), c64(1.45, 0.0)] {
            for cmax in [550u32, 1100] {
                let p = phi_star_constant(&family, s, cmax).unwrap();
                println!(
                    "phi_star_const({s}, c<={cmax}) = {:?}  tail_est={:.3e}",
                    p.value, p.tail_est
                );
            }
        }
        for cmax in [275u32, 550, 1100] {
            let l = dds_csum_t1(&cache, &chi, -1, c64(2.5, 0.0), cmax).unwrap();
            println!(
                "L_shift(-1, 2.5, c<={cmax})   = {:?}  tail_est={:.3e}",
                l.value, l.tail_est
            );
        }
    }

    if section == "all" || section == "dds" {
        println!("== dds two-route convergence (criterion-size) ==");
        let t0 = Instant::now();
        let big = Arc::new(CuspForm::level11(4_000_002));
        println!("[timing] level11(4e6): {:?}", t0.elapsed());
        let s = c64(2.5, 0.0);
        for n in [-1i64, 2] {
            for t in [c64(1.6, 0.0), c64(1.8, 0.0)] {
                let t0 = Instant::now();
                let d4 = dds_direct(&big, &chi, n, s, t, 4_000_000).unwrap();
                let td = t0.elapsed();
                let d2 = dds_direct(&big, &chi, n, s, t, 2_000_000).unwrap();
                let c5 = dds_csum(&big, &chi, n, s, t, 550, &policy).unwrap();
                let c11 = dds_csum(&big, &chi, n, s, t, 1100, &policy).unwrap();
                println!("n={n} t={t}:");
                println!("  direct(4e6) = {:?}  err_est={:.2e}  [{td:?}]", d4.value, d4.err_est);
                println!("  direct(2e6) = {:?}", d2.value);
                println!("  csum(550)   = {:?}  tail={:.2e}", c5.value, c5.tail_est);
                println!("  csum(1100)  = {:?}  tail={:.2e}", c11.value, c11.tail_est);
                let rel = (d4.value - c11.value).norm() / c11.value.norm();
                println!("  rel(direct4e6, csum1100) = {rel:.3e}");
            }
        }
    }

    if section == "all" || section == "tails" {
        println!("== weighted tail series convergence ==");
        let big = Arc::new(CuspForm::level11(4_000_002));
        let s = c64(2.5, 0.0);
        for x in [4.0f64, 6.0, 8.0, 10.0] {
            let t1 = tail_series(&big, &chi, -1, x, s, 1_000_000).unwrap();
            let t2 = tail_series(&big, &chi, -1, x, s, 2_000_000).unwrap();
            let t4 = tail_series(&big, &chi, -1, x, s, 4_000_000).unwrap();
            println!(
                "T(x={x}): 1e6={:?} 2e6={:?} 4e6={:?} drift(2e6->4e6)={:.3e}",
                t1.value,
                t2.value,
                t4.value,
                (t2.value - t4.value).norm()
            );
        }
        let big_cache = SymbolCache::new(big.clone(), policy.clone());
        let lw4 = l_weighted(&big_cache, &chi, -1, 4.0, s, 550, 2_000_000).unwrap();
        let lw6 = l_weighted(&big_cache, &chi, -1, 6.0, s, 550, 2_000_000).unwrap();
        let ta = tail_series(&big, &chi, -1, 4.0, s, 4_000_000).unwrap().value;
        let tb = tail_series(&big, &chi, -1, 6.0, s, 4_000_000).unwrap().value;
        let route_a = lw4 - lw6;
        let route_b = tb - ta;
        println!(
            "cross-diff: A={route_a:?} B={route_b:?} rel={:.3e}",
            (route_a - route_b).norm() / route_b.norm()
        );
    }

    if section == "all" || section == "lratio" {
        println!("== weighted coefficient-ratio identity ==");
        let big = Arc::new(CuspForm::level11(4_000_002));
        for (s, t) in [(c64(2.5, 0.0), c64(1.8, 0.0)), (c64(3.0, 0.0), c64(2.0, 0.0))] {
            for m in [500_000usize, 1_000_000, 2_000_000, 4_000_000] {
                let t0 = Instant::now();
                let (lhs, rhs) = sigma_weighted_ratio(&big, &chi, s, t, m, &policy).unwrap();
                println!(
                    "s={s} t={t} M={m}: lhs={:?} rhs={rhs:?} rel={:.3e} [{:?}]",
                    lhs.value,
                    (lhs.value - rhs).norm() / rhs.norm(),
                    t0.elapsed()
                );
            }
        }
    }

    if section == "all" || section == "eisen" {
        println!("== star coefficient extraction & completion/automorphy ==");
        let s = c64(3.0, 0.0);
        let t0 = Instant::now();
        let csum = phi_star(&family, -1, s, 1100).unwrap();
        println!(
            "phi_star(-1,3,c<=1100) = {:?} tail={:.2e} [{:?}]",
            csum.value,
            csum.tail_est,
            t0.elapsed()
        );
        let t0 = Instant::now();
        let ext = extract_star_coefficient(&family, -1, 0.5, s, 64, 550).unwrap();
        println!(
            "extract(y=0.5,Q=64,c<=550) = {ext:?} absdiff={:.3e} [{:?}]",
            (csum.value - ext).norm(),
            t0.elapsed()
        );

        let theta: f64 = 1.2;
        let z = HalfPlanePoint::new((theta.cos() - 4.0) / 11.0, theta.sin() / 11.0).unwrap();
        let g = GammaMatrix::new(3, 1, 11, 4).unwrap();
        let parts = eval_completed_parts(&family, &small, z, s, 550, 2e-3).unwrap();
        println!(
            "completion: E={:?} E*={:?} G={:?} terms={} residual={:.3e}",
            parts.e,
            parts.e_star,
            parts.g,
            parts.terms,
            (parts.e_star - (parts.g - parts.f_at_z * parts.e)).norm()
        );
        let gz = g.apply(z.to_complex());
        let gzp = HalfPlanePoint::new(gz.re, gz.im).unwrap();
        let lhs = eval_symbol_weighted(&family, gzp, s, 550).unwrap();
        let e_z = eval_classical(&chi, z, s, 550, &policy).unwrap();
        let es_z = eval_symbol_weighted(&family, z, s, 550).unwrap();
        let msym = cache.modular_symbol(&g).unwrap();
        let rhs = chi.eval(g.d) * (es_z - msym * e_z);
        println!(
            "automorphy: lhs={lhs:?} rhs={rhs:?} absdiff={:.3e} scale={:.3e}",
            (lhs - rhs).norm(),
            lhs.norm().max(rhs.norm()).max((msym * e_z).norm())
        );
    }

    if section == "all" || section == "timing" {
        println!("== timings ==");
        let t0 = Instant::now();
        let _rows: Vec<u32> = (1..=100).map(|k| 11 * k).collect();
        cache.prewarm(&_rows).unwrap();
        println!("prewarm rows c<=1100: {:?}", t0.elapsed());
        let t0 = Instant::now();
        let _ = CuspForm::level11(4_000_002);
        println!("level11(4e6) build: {:?}", t0.elapsed());
    }
}
