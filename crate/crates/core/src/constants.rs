//! Fundamental constants: pi, log 2, integer zeta and Dirichlet beta values,
//! exact Bernoulli and Euler numbers.
//!
//! Each floating constant has two independent computation routes; the default
//! accessors return the primary route and the secondary is exposed for
//! cross-method agreement checks.

use std::collections::HashMap;
use std::sync::Mutex;

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::precision::{BigReal, PrecisionContext};

static CACHE: Mutex<Option<HashMap<(u32, u64, usize), BigReal>>> = Mutex::new(None);

fn cached(kind: u32, arg: u64, ctx: PrecisionContext, f: impl FnOnce() -> BigReal) -> BigReal {
    let key = (kind, arg, ctx.total_bits());
    {
        let guard = CACHE.lock().unwrap();
        if let Some(map) = guard.as_ref() {
            if let Some(v) = map.get(&key) {
                return BigReal::from_raw(v.raw().clone(), ctx);
            }
        }
    }
    let v = f();
    let mut guard = CACHE.lock().unwrap();
    guard
        .get_or_insert_with(HashMap::new)
        .insert(key, v.clone());
    v
}

pub fn bigint_to_real(v: &BigInt, ctx: PrecisionContext) -> BigReal {
    let (sign, digits) = v.to_u64_digits();
    let scale = BigReal::exp2i(64, ctx);
    let mut acc = BigReal::zero(ctx);
    for &d in digits.iter().rev() {
        acc = acc.mul(&scale).add(&BigReal::from_u64(d, ctx));
    }
    if sign == Sign::Minus {
        acc.neg()
    } else {
        acc
    }
}

pub fn ratio_to_real(q: &BigRational, ctx: PrecisionContext) -> BigReal {
    bigint_to_real(q.numer(), ctx).div(&bigint_to_real(q.denom(), ctx))
}

/// atan(1/k) by its Taylor series, for integer k >= 2.
fn atan_inv(k: u64, ctx: PrecisionContext) -> BigReal {
    let k2 = BigReal::from_u64(k * k, ctx);
    let mut term = BigReal::from_u64(k, ctx).recip();
    let mut acc = term.clone();
    let bits_per_term = (2.0 * (k as f64).log2()).max(1.0);
    let n_terms = (ctx.total_bits() as f64 / bits_per_term).ceil() as u64 + 2;
    for j in 1..=n_terms {
        term = term.div(&k2);
        let c = term.div_u64(2 * j + 1);
        acc = if j % 2 == 1 { acc.sub(&c) } else { acc.add(&c) };
    }
    acc
}

/// pi by the Machin formula 16 atan(1/5) - 4 atan(1/239).
pub fn pi_machin(ctx: PrecisionContext) -> BigReal {
    atan_inv(5, ctx)
        .mul_i64(16)
        .sub(&atan_inv(239, ctx).mul_i64(4))
}

/// pi by the Gauss–Legendre AGM iteration.
pub fn pi_agm(ctx: PrecisionContext) -> BigReal {
    let one = BigReal::from_u64(1, ctx);
    let mut a = one.clone();
    let mut b = BigReal::from_u64(2, ctx).sqrt().recip();
    let mut t = BigReal::from_u64(4, ctx).recip();
    let mut p = one;
    let iters = (ctx.total_bits() as f64).log2().ceil() as usize + 2;
    for _ in 0..iters {
        let an = a.add(&b).div_u64(2);
        b = a.mul(&b).sqrt();
        let d = a.sub(&an);
        t = t.sub(&p.mul(&d).mul(&d));
        p = p.mul_i64(2);
        a = an;
    }
    let s = a.add(&b);
    s.mul(&s).div(&t.mul_i64(4))
}

pub fn const_pi(ctx: PrecisionContext) -> BigReal {
    cached(0, 0, ctx, || pi_machin(ctx))
}

/// log 2 = 2 atanh(1/3).
pub fn log2_atanh3(ctx: PrecisionContext) -> BigReal {
    atanh_inv_series(3, ctx).mul_i64(2)
}

/// log 2 = 4 atanh(1/7) + 2 atanh(1/17).
pub fn log2_atanh_pair(ctx: PrecisionContext) -> BigReal {
    atanh_inv_series(7, ctx)
        .mul_i64(4)
        .add(&atanh_inv_series(17, ctx).mul_i64(2))
}

fn atanh_inv_series(k: u64, ctx: PrecisionContext) -> BigReal {
    let k2 = BigReal::from_u64(k * k, ctx);
    let mut pw = BigReal::from_u64(k, ctx).recip();
    let mut acc = pw.clone();
    let bits_per_term = 2.0 * (k as f64).log2();
    let n_terms = (ctx.total_bits() as f64 / bits_per_term).ceil() as u64 + 2;
    for j in 1..=n_terms {
        pw = pw.div(&k2);
        acc = acc.add(&pw.div_u64(2 * j + 1));
    }
    acc
}

pub fn const_log2(ctx: PrecisionContext) -> BigReal {
    cached(1, 0, ctx, || log2_atanh3(ctx))
}

/// Exact Bernoulli number B_n (B_1 = -1/2).
pub fn bernoulli(n: u64) -> Result<BigRational> {
    if n % 2 == 1 && n > 1 {
        return Err(Error::Domain(format!("bernoulli: odd index {n} > 1")));
    }
    static BERN: Mutex<Vec<Option<BigRational>>> = Mutex::new(Vec::new());
    let mut tab = BERN.lock().unwrap();
    if tab.is_empty() {
        tab.push(Some(BigRational::one()));
    }
    while (tab.len() as u64) <= n {
        let m = tab.len() as u64;
        if m % 2 == 1 && m > 1 {
            tab.push(None);
            continue;
        }
        // sum_{k=0}^{m} C(m+1,k) B_k = 0  =>  B_m = -1/(m+1) * sum_{k<m}
        let mut s = BigRational::zero();
        for k in 0..m {
            if let Some(bk) = &tab[k as usize] {
                let c = num_integer::binomial(BigInt::from(m + 1), BigInt::from(k));
                s += BigRational::from_integer(c) * bk;
            }
        }
        tab.push(Some(-s / BigRational::from_integer(BigInt::from(m + 1))));
    }
    Ok(match &tab[n as usize] {
        Some(v) => v.clone(),
        None => BigRational::zero(),
    })
}

/// Exact Euler number E_n (zero for odd n is a domain error per contract).
pub fn euler_number(n: u64) -> Result<BigInt> {
    if n % 2 == 1 {
        return Err(Error::Domain(format!("euler_number: odd index {n}")));
    }
    static EULER: Mutex<Vec<BigInt>> = Mutex::new(Vec::new());
    let mut tab = EULER.lock().unwrap();
    if tab.is_empty() {
        tab.push(BigInt::one()); // E_0
    }
    while (tab.len() as u64) <= n / 2 {
        let m = 2 * tab.len() as u64; // next even index
        // sum_{k even, 0..=m} C(m,k) E_k = 0
        let mut s = BigInt::zero();
        for k in (0..m).step_by(2) {
            let c = num_integer::binomial(BigInt::from(m), BigInt::from(k));
            s += c * &tab[(k / 2) as usize];
        }
        tab.push(-s);
    }
    Ok(tab[(n / 2) as usize].clone())
}

/// Euler–Maclaurin zeta with explicit cutoff; `n_cut` summation terms and
/// ceil(working_bits/4) correction terms.
pub fn zeta_em(s: u64, ctx: PrecisionContext, n_cut: u64) -> BigReal {
    let k_corr = (ctx.working_bits() as u64 + 3) / 4;
    let n = n_cut.max(s);
    let mut acc = BigReal::zero(ctx);
    for m in 1..n {
        acc = acc.add(&BigReal::from_u64(m, ctx).powi(s).recip());
    }
    let nf = BigReal::from_u64(n, ctx);
    // integral tail: N^{1-s}/(s-1)
    acc = acc.add(&nf.powi(s - 1).recip().div_u64(s - 1));
    // half term: N^{-s}/2
    let ninv = nf.recip();
    let ninv_s = ninv.powi(s);
    acc = acc.add(&ninv_s.div_u64(2));
    // correction terms: B_{2k}/(2k)! * (s)_{2k-1} * N^{-s-2k+1}
    let n2 = ninv.mul(&ninv);
    let mut pw = ninv_s.mul(&nf); // N^{-s+1} -> times N^{-2k} gives N^{-s-2k+1}
    let mut rising = BigRational::one(); // (s)_{2k-1} / (2k)! accumulated exactly
    for k in 1..=k_corr {
        pw = pw.mul(&n2);
        // extend rising factorial s(s+1)...(s+2k-2) and factorial (2k)!
        let lo = if k == 1 { 0 } else { 2 * k - 3 };
        for j in lo..(2 * k - 1) {
            rising *= BigRational::from_integer(BigInt::from(s + j));
        }
        rising /= BigRational::from_integer(BigInt::from((2 * k - 1) * 2 * k));
        let b2k = bernoulli(2 * k).expect("even index");
        let coeff = ratio_to_real(&(b2k * &rising), ctx);
        acc = acc.add(&coeff.mul(&pw));
    }
    acc
}

/// zeta(s) for integer s >= 2.
pub fn zeta_int(s: u64, ctx: PrecisionContext) -> Result<BigReal> {
    if s < 2 {
        return Err(Error::Domain(format!("zeta_int: s = {s} < 2")));
    }
    Ok(cached(2, s, ctx, || {
        zeta_em(s, ctx, (ctx.total_bits() as u64 * 9) / 20)
    }))
}

/// Euler–Maclaurin Hurwitz-difference beta with explicit cutoff:
/// beta(s) = 4^{-s} (zeta(s,1/4) - zeta(s,3/4)), both tails expanded at N.
pub fn beta_em(s: u64, ctx: PrecisionContext, n_cut: u64) -> BigReal {
    let k_corr = (ctx.working_bits() as u64 + 3) / 4;
    let n = n_cut.max(s).max(8);
    let quarter = BigReal::from_u64(4, ctx).recip();
    let three_q = quarter.mul_i64(3);
    let mut acc = BigReal::zero(ctx);
    // direct part: sum_{m=0}^{N-1} [(m+1/4)^{-s} - (m+3/4)^{-s}]
    for m in 0..n {
        let mf = BigReal::from_u64(m, ctx);
        let a = mf.add(&quarter).powi(s).recip();
        let b = mf.add(&three_q).powi(s).recip();
        acc = acc.add(&a.sub(&b));
    }
    let na = BigReal::from_u64(n, ctx).add(&quarter);
    let nb = BigReal::from_u64(n, ctx).add(&three_q);
    // integral tail, with the s = 1 pole cancelling in the difference
    if s == 1 {
        acc = acc.add(&nb.div(&na).ln());
    } else {
        let ta = na.powi(s - 1).recip().div_u64(s - 1);
        let tb = nb.powi(s - 1).recip().div_u64(s - 1);
        acc = acc.add(&ta.sub(&tb));
    }
    // half terms
    let pa = na.recip();
    let pb = nb.recip();
    acc = acc.add(&pa.powi(s).sub(&pb.powi(s)).div_u64(2));
    // corrections
    let (a2, b2) = (pa.mul(&pa), pb.mul(&pb));
    let mut pwa = pa.powi(s - 1);
    let mut pwb = pb.powi(s - 1);
    let mut rising = BigRational::one();
    for k in 1..=k_corr {
        pwa = pwa.mul(&a2);
        pwb = pwb.mul(&b2);
        let lo = if k == 1 { 0 } else { 2 * k - 3 };
        for j in lo..(2 * k - 1) {
            rising *= BigRational::from_integer(BigInt::from(s + j));
        }
        rising /= BigRational::from_integer(BigInt::from((2 * k - 1) * 2 * k));
        let b2k = bernoulli(2 * k).expect("even index");
        let coeff = ratio_to_real(&(b2k * &rising), ctx);
        acc = acc.add(&coeff.mul(&pwa.sub(&pwb)));
    }
    // 4^{-s} prefactor
    acc.div(&BigReal::from_u64(4, ctx).powi(s))
}

/// Dirichlet beta(s) for integer s >= 1.
pub fn beta_int(s: u64, ctx: PrecisionContext) -> Result<BigReal> {
    if s < 1 {
        return Err(Error::Domain(format!("beta_int: s = {s} < 1")));
    }
    Ok(cached(3, s, ctx, || {
        beta_em(s, ctx, (ctx.total_bits() as u64 * 9) / 20)
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> PrecisionContext {
        PrecisionContext::default()
    }

    fn assert_close(a: &BigReal, b: &BigReal, bits: i64) {
        let d = a.sub(b).abs();
        let tol = BigReal::exp2i(-bits, a.ctx());
        assert!(
            d.lt(&tol),
            "difference {} exceeds 2^-{}",
            d.to_decimal(5),
            bits
        );
    }

    #[test]
    fn pi_cross_method() {
        let c = ctx();
        assert_close(&pi_machin(c), &pi_agm(c), 250);
        assert!((const_pi(c).to_f64() - std::f64::consts::PI).abs() < 1e-15);
    }

    #[test]
    fn pi_precision_monotonic() {
        let lo = PrecisionContext::with_working_bits(64).unwrap();
        let hi = PrecisionContext::with_working_bits(256).unwrap();
        let d = const_pi(lo).sub(&const_pi(hi)).abs();
        assert!(d.lt(&BigReal::exp2i(-64, lo)));
    }

    #[test]
    fn pi_ratio_is_one() {
        let c = ctx();
        let r = const_pi(c).div(&const_pi(c));
        assert_eq!(r.to_f64(), 1.0);
    }

    #[test]
    fn log2_cross_method_and_exp() {
        let c = ctx();
        assert_close(&log2_atanh3(c), &log2_atanh_pair(c), 250);
        let two = const_log2(c).exp();
        assert_close(&two, &BigReal::from_u64(2, c), 250);
        let lo = PrecisionContext::with_working_bits(64).unwrap();
        let d = const_log2(lo).sub(&const_log2(c)).abs();
        assert!(d.lt(&BigReal::exp2i(-64, lo)));
    }

    #[test]
    fn zeta_values() {
        let c = ctx();
        assert!(zeta_int(1, c).is_err());
        // zeta(2) = pi^2/6
        let pi = const_pi(c);
        assert_close(&zeta_int(2, c).unwrap(), &pi.mul(&pi).div_u64(6), 250);
        // zeta(4) = pi^4/90
        assert_close(&zeta_int(4, c).unwrap(), &pi.powi(4).div_u64(90), 250);
        // zeta(3): two cutoffs agree
        assert_close(&zeta_em(3, c, 100), &zeta_em(3, c, 180), 250);
        assert!((zeta_int(3, c).unwrap().to_f64() - 1.2020569031595942854).abs() < 1e-15);
    }

    #[test]
    fn beta_values() {
        let c = ctx();
        assert!(beta_int(0, c).is_err());
        let pi = const_pi(c);
        // beta(1) = pi/4
        assert_close(&beta_int(1, c).unwrap(), &pi.div_u64(4), 250);
        // beta(3) = pi^3/32
        assert_close(&beta_int(3, c).unwrap(), &pi.powi(3).div_u64(32), 250);
        // Catalan constant, two cutoffs agree
        assert_close(&beta_em(2, c, 100), &beta_em(2, c, 180), 250);
        assert!((beta_int(2, c).unwrap().to_f64() - 0.915965594177219015).abs() < 1e-15);
    }

    #[test]
    fn bernoulli_and_euler() {
        assert_eq!(bernoulli(0).unwrap(), BigRational::one());
        assert_eq!(
            bernoulli(2).unwrap(),
            BigRational::new(BigInt::from(1), BigInt::from(6))
        );
        assert_eq!(
            bernoulli(12).unwrap(),
            BigRational::new(BigInt::from(-691), BigInt::from(2730))
        );
        assert!(bernoulli(3).is_err());
        assert_eq!(euler_number(0).unwrap(), BigInt::from(1));
        assert_eq!(euler_number(2).unwrap(), BigInt::from(-1));
        assert_eq!(euler_number(4).unwrap(), BigInt::from(5));
        assert!(euler_number(3).is_err());
    }

    #[test]
    fn zeta_even_bernoulli_identity() {
        // zeta(2n) = (-1)^{n+1} B_{2n} (2 pi)^{2n} / (2 (2n)!) for n = 1..6
        let c = ctx();
        let two_pi = const_pi(c).mul_i64(2);
        let mut fact = BigRational::one();
        for j in 1..=12u64 {
            fact *= BigRational::from_integer(BigInt::from(j));
            if j % 2 != 0 {
                continue;
            }
            let n = j / 2;
            let b = bernoulli(j).unwrap();
            let sign = if n % 2 == 1 { 1 } else { -1 };
            let coeff = b * BigRational::new(BigInt::from(sign), BigInt::from(2)) / &fact;
            let rhs = ratio_to_real(&coeff, c).mul(&two_pi.powi(j));
            let lhs = zeta_int(j, c).unwrap();
            let d = lhs.sub(&rhs).abs().to_f64();
            assert!(d < 1e-30, "zeta({j}) identity off by {d}");
        }
    }

    #[test]
    fn beta_odd_euler_identity() {
        // beta(2k+1) = (-1)^k E_{2k} pi^{2k+1} / (4^{k+1} (2k)!) for k = 0..4
        let c = ctx();
        let pi = const_pi(c);
        for k in 0..=4u64 {
            let e = euler_number(2 * k).unwrap();
            let mut fact = BigInt::one();
            for j in 1..=(2 * k) {
                fact *= BigInt::from(j);
            }
            let sign = if k % 2 == 0 { 1 } else { -1 };
            let q = BigRational::new(e * BigInt::from(sign), fact * BigInt::from(4).pow((k + 1) as u32));
            let rhs = ratio_to_real(&q, c).mul(&pi.powi(2 * k + 1));
            let lhs = beta_int(2 * k + 1, c).unwrap();
            let d = lhs.sub(&rhs).abs().to_f64();
            assert!(d < 1e-30, "beta({}) identity off by {d}", 2 * k + 1);
        }
    }
}
