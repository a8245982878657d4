//! Ring structure, exp/log inversion, Newton-doubling exactness and the
//! scalar-operation-count bands for truncated power series.

mod common;

use common::*;
use mpbrent::series::{CoeffField, FloatField, MulPath, PsCtx, RationalField, Series};
use mpbrent::MPFloat;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

fn fctx() -> PsCtx<FloatField> {
    PsCtx::new(FloatField::default(), MulPath::Classical)
}

fn rand_series(ctx: &PsCtx<FloatField>, rng: &mut TestRng, n: usize, scale: f64) -> Series<FloatField> {
    let coeffs = (0..n)
        .map(|j| {
            let v = (rng.f64_unit() * 2.0 - 1.0) * scale / (1.0 + j as f64 * 0.25);
            MPFloat::from_f64(v).unwrap().round_to(53)
        })
        .collect();
    ctx.series(coeffs, n)
}

fn max_abs_diff(ctx: &PsCtx<FloatField>, a: &Series<FloatField>, b: &Series<FloatField>) -> f64 {
    a.coeffs
        .iter()
        .zip(b.coeffs.iter())
        .map(|(x, y)| ctx.field.to_f64(&ctx.field.sub(x, y)).abs())
        .fold(0.0, f64::max)
}

#[test]
fn ring_axioms_random_samples() {
    let mut ctx = fctx();
    let mut rng = TestRng(0x5e12);
    let n = 48usize;
    for _ in 0..8 {
        let a = rand_series(&ctx, &mut rng, n, 1.0);
        let b = rand_series(&ctx, &mut rng, n, 1.0);
        let c = rand_series(&ctx, &mut rng, n, 1.0);
        let ab = ctx.mul(&a, &b, n);
        let ba = ctx.mul(&b, &a, n);
        assert!(max_abs_diff(&ctx, &ab, &ba) < 1e-9, "commutativity");
        let ab_c = ctx.mul(&ab, &c, n);
        let bc = ctx.mul(&b, &c, n);
        let a_bc = ctx.mul(&a, &bc, n);
        assert!(max_abs_diff(&ctx, &ab_c, &a_bc) < 1e-9, "associativity");
        let b_plus_c = ctx.add_series(&b, &c);
        let lhs = ctx.mul(&a, &b_plus_c, n);
        let ac = ctx.mul(&a, &c, n);
        let rhs = ctx.add_series(&ab, &ac);
        assert!(max_abs_diff(&ctx, &lhs, &rhs) < 1e-9, "distributivity");
    }
}

#[test]
fn log_homomorphism_for_unit_series() {
    let mut ctx = fctx();
    let mut rng = TestRng(0x5e13);
    let n = 64usize;
    for _ in 0..6 {
        let mut a = rand_series(&ctx, &mut rng, n, 0.5);
        let mut b = rand_series(&ctx, &mut rng, n, 0.5);
        a.coeffs[0] = ctx.field.one();
        b.coeffs[0] = ctx.field.one();
        let ab = ctx.mul(&a, &b, n);
        let la = ctx.log(&a, n).unwrap();
        let lb = ctx.log(&b, n).unwrap();
        let lab = ctx.log(&ab, n).unwrap();
        let sum = ctx.add_series(&la, &lb);
        assert!(max_abs_diff(&ctx, &lab, &sum) < 1e-8, "log homomorphism");
    }
}

#[test]
fn exp_log_mutual_inversion() {
    let mut ctx = fctx();
    let mut rng = TestRng(0x5e14);
    let n = 256usize;
    for _ in 0..20 {
        // log then exp on a unit series
        let mut p = rand_series(&ctx, &mut rng, n, 0.4);
        p.coeffs[0] = ctx.field.one();
        let l = ctx.log(&p, n).unwrap();
        let back = ctx.exp(&l, n).unwrap();
        assert!(max_abs_diff(&ctx, &back, &p) < 1e-8, "exp(log(P)) != P");
        // exp then log on a zero-constant series
        let mut q = rand_series(&ctx, &mut rng, n, 0.4);
        q.coeffs[0] = ctx.field.zero();
        let e = ctx.exp(&q, n).unwrap();
        let lb = ctx.log(&e, n).unwrap();
        assert!(max_abs_diff(&ctx, &lb, &q) < 1e-8, "log(exp(P)) != P");
    }
}

#[test]
fn doubling_exactness_rational() {
    // With R_0 = 1, iterate k of the exp Newton doubling agrees exactly with
    // the true exponential through degree 2^k - 1: verify at full order 32
    // against the factorially-divided powers of P computed exactly.
    let mut ctx = PsCtx::new(RationalField, MulPath::Classical);
    let n = 32usize;
    // P with zero constant term and nontrivial rationals
    let p = {
        let coeffs: Vec<BigRational> = (0..n)
            .map(|j| {
                if j == 0 {
                    BigRational::zero()
                } else {
                    BigRational::new(BigInt::from((j % 5) as i64 + 1), BigInt::from(2 + (j % 3) as i64))
                }
            })
            .collect();
        ctx.series(coeffs, n)
    };
    let got = ctx.exp(&p, n).unwrap();
    // oracle: sum_{k} P^k / k! truncated, by repeated exact multiplication
    let mut want = ctx.one_series(n);
    let mut pk = ctx.one_series(n);
    let mut fact = BigRational::one();
    for k in 1..n as u64 {
        pk = ctx.mul(&pk, &p, n);
        fact = fact * BigRational::from_integer(BigInt::from(k));
        let term: Vec<BigRational> = pk.coeffs.iter().map(|c| c / &fact).collect();
        let term = ctx.series(term, n);
        want = ctx.add_series(&want, &term);
    }
    assert_eq!(got.coeffs, want.coeffs, "doubling not exact in rational mode");
}

#[test]
fn op_count_bands_fft_path() {
    let n = 4096usize;
    let mut rng = TestRng(0x5e15);
    let base = PsCtx::new(FloatField::default(), MulPath::Fft);
    let mut unit = rand_series(&base, &mut rng, n, 0.4);
    unit.coeffs[0] = base.field.one();
    let mut zeroc = rand_series(&base, &mut rng, n, 0.4);
    zeroc.coeffs[0] = base.field.zero();

    let mul_cost = {
        let mut ctx = PsCtx::new(FloatField::default(), MulPath::Fft);
        let a = rand_series(&ctx, &mut rng, n, 1.0);
        let b = rand_series(&ctx, &mut rng, n, 1.0);
        ctx.mul(&a, &b, n);
        ctx.mults as f64
    };
    let measure = |f: &dyn Fn(&mut PsCtx<FloatField>)| -> f64 {
        let mut ctx = PsCtx::new(FloatField::default(), MulPath::Fft);
        f(&mut ctx);
        ctx.mults as f64 / mul_cost
    };

    let recip_ratio = measure(&|ctx| {
        ctx.recip(&unit, n).unwrap();
    });
    assert!(recip_ratio > 2.2 && recip_ratio < 4.2, "recip/mul {recip_ratio:.2}");

    let log_ratio = measure(&|ctx| {
        ctx.log(&unit, n).unwrap();
    });
    assert!(log_ratio > 3.0 && log_ratio < 5.5, "log/mul {log_ratio:.2}");

    let exp_ratio = measure(&|ctx| {
        ctx.exp(&zeroc, n).unwrap();
    });
    assert!(exp_ratio > 6.5 && exp_ratio < 11.5, "exp/mul {exp_ratio:.2}");

    let pow_ratio = measure(&|ctx| {
        ctx.pow(&unit, 3, n).unwrap();
    });
    assert!(pow_ratio > 7.0 && pow_ratio < 16.0, "pow/mul {pow_ratio:.2}");
}

#[test]
fn fourth_order_exp_variant_agrees_and_is_cheaper() {
    let mut rng = TestRng(0x5e19);
    let n = 1024usize;
    let base = PsCtx::new(FloatField::default(), MulPath::Fft);
    let mut zeroc = rand_series(&base, &mut rng, n, 0.4);
    zeroc.coeffs[0] = base.field.zero();
    let mut ctx2 = PsCtx::new(FloatField::default(), MulPath::Fft);
    let e2 = ctx2.exp(&zeroc, n).unwrap();
    let mut ctx4 = PsCtx::new(FloatField::default(), MulPath::Fft);
    let e4 = ctx4.exp_fourth_order(&zeroc, n).unwrap();
    assert!(max_abs_diff(&ctx2, &e2, &e4) < 1e-8, "variants disagree");
    assert!(
        (ctx4.mults as f64) < ctx2.mults as f64,
        "fourth-order not cheaper: {} vs {}",
        ctx4.mults,
        ctx2.mults
    );
    // exactness through the quadrupled order in rational mode
    let mut rctx = PsCtx::new(RationalField, MulPath::Classical);
    let p = rctx.from_i64s(&[0, 1, 2, 1, 3, 1, 2, 1], 8);
    let a = rctx.exp(&p, 8).unwrap();
    let b = rctx.exp_fourth_order(&p, 8).unwrap();
    assert_eq!(a.coeffs, b.coeffs);
}

#[test]
fn classical_ratio_is_bounded() {
    // on the classical path log/mul stays Theta(1) across sizes
    let mut rng = TestRng(0x5e16);
    let mut ratios = Vec::new();
    for &n in &[256usize, 1024] {
        let base = fctx();
        let mut unit = rand_series(&base, &mut rng, n, 0.4);
        unit.coeffs[0] = base.field.one();
        let mut ctx = fctx();
        let a = rand_series(&ctx, &mut rng, n, 1.0);
        let b = rand_series(&ctx, &mut rng, n, 1.0);
        ctx.mul(&a, &b, n);
        let mul_cost = ctx.mults as f64;
        let mut ctx2 = fctx();
        ctx2.log(&unit, n).unwrap();
        ratios.push(ctx2.mults as f64 / mul_cost);
    }
    for r in &ratios {
        assert!(*r > 1.0 && *r < 8.0, "classical log/mul {r:.2}");
    }
    let spread = ratios[1] / ratios[0];
    assert!(spread > 0.66 && spread < 1.5, "not Theta(1): {ratios:?}");
}

#[test]
fn pow_op_count_independent_of_m() {
    let n = 1024usize;
    let mut rng = TestRng(0x5e17);
    let base = PsCtx::new(FloatField::default(), MulPath::Fft);
    let mut unit = rand_series(&base, &mut rng, n, 0.3);
    unit.coeffs[0] = base.field.one();
    let count_for = |m: u64| -> u64 {
        let mut ctx = PsCtx::new(FloatField::default(), MulPath::Fft);
        ctx.pow(&unit, m, n).unwrap();
        ctx.mults
    };
    let small = count_for(3);
    let large = count_for(3 << 20);
    let diff = (small as f64 - large as f64).abs() / small as f64;
    assert!(diff < 0.01, "op count varies {:.3}% between m=3 and m=3*2^20", diff * 100.0);
}

#[test]
fn tan_atan_round_trip_against_bernoulli_oracle() {
    // solve atan(T) = x by Newton doubling: T <- T - (atan(T) - x)(1 + T^2)
    let mut ctx = fctx();
    let n = 17usize; // first 16 tangent coefficients plus the constant
    let x = ctx.from_i64s(&[0, 1], n);
    let mut t = ctx.from_i64s(&[0, 1], 2);
    let mut m = 2usize;
    while m < n {
        let m2 = (2 * m).min(n);
        let mut cur = ctx.series(t.coeffs.clone(), m2);
        let at = ctx.atan(&cur, m2).unwrap();
        let xt = ctx.truncated(&x, m2);
        let resid = ctx.sub_series(&at, &xt);
        let t2 = ctx.mul(&cur, &cur, m2);
        let one_m2 = ctx.one_series(m2);
        let one_plus = ctx.add_series(&one_m2, &t2);
        let delta = ctx.mul(&resid, &one_plus, m2);
        cur = ctx.sub_series(&cur, &delta);
        t = ctx.series(cur.coeffs, m2);
        m = m2;
    }
    let oracle = tangent_coeffs_f64(8); // t_1, t_3, ..., t_15
    for (k, want) in oracle.iter().enumerate() {
        let got = ctx.field.to_f64(&t.coeffs[2 * k + 1]);
        assert!((got - want).abs() < 1e-9, "t_{}: {got} vs {want}", 2 * k + 1);
        if 2 * k + 2 < t.coeffs.len() {
            let even = ctx.field.to_f64(&t.coeffs[2 * k + 2]);
            assert!(even.abs() < 1e-9, "even coefficient nonzero");
        }
    }
}

#[test]
fn fft_vs_classical_degree_256() {
    let mut rng = TestRng(0x5e18);
    let mut cl = fctx();
    let mut ff = PsCtx::new(FloatField::default(), MulPath::Fft);
    for _ in 0..4 {
        let a = rand_series(&cl, &mut rng, 256, 1.0);
        let b = rand_series(&cl, &mut rng, 256, 1.0);
        let rc = cl.mul(&a, &b, 256);
        let rf = ff.mul(&a, &b, 256);
        // per-coefficient relative to the max coefficient magnitude
        let max_mag = rc
            .coeffs
            .iter()
            .map(|c| cl.field.to_f64(c).abs())
            .fold(0.0, f64::max)
            .max(1e-300);
        for (x, y) in rc.coeffs.iter().zip(rf.coeffs.iter()) {
            let d = cl.field.to_f64(&cl.field.sub(x, y)).abs();
            assert!(d / max_mag < 1e-9, "fft drift {d:e} vs max {max_mag:e}");
        }
    }
}
