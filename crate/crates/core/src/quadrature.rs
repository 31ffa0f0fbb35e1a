//! Tanh-sinh (double-exponential) quadrature over a finite interval, used for
//! the cotangent-moment and arctangent integrals.

use crate::constants::const_pi;
use crate::error::{Error, Result};
use crate::precision::{BigReal, PrecisionContext};

/// Integrate f over (a, b).  Abscissae are computed as stable offsets from
/// the endpoints; f is evaluated at a + d (left half) and b - d (right half).
pub fn tanh_sinh<F>(f: F, a: &BigReal, b: &BigReal, ctx: PrecisionContext) -> Result<(BigReal, BigReal)>
where
    F: Fn(&BigReal) -> BigReal,
{
    let bits = ctx.total_bits() as f64;
    let target = BigReal::exp2i(-(ctx.working_bits() as i64) - 8, ctx);
    let t_max = ((2.0 / std::f64::consts::PI) * (bits + 16.0) * std::f64::consts::LN_2)
        .asinh()
        + 0.25;
    let half_pi = const_pi(ctx).div_u64(2);
    let len = b.sub(a);
    let half_len = len.div_u64(2);

    // contribution of one node at parameter t > 0 (and its mirror -t)
    let node_pair = |t: &BigReal| -> BigReal {
        let et = t.exp();
        let sinh_t = et.sub(&et.recip()).div_u64(2);
        let cosh_t = et.add(&et.recip()).div_u64(2);
        let u = half_pi.mul(&sinh_t);
        let eu2 = u.mul_i64(2).exp();
        let denom = eu2.add(&BigReal::from_u64(1, ctx));
        // 1 - tanh(u) = 2/(1+e^{2u});  sech^2(u) = 4 e^{2u}/(1+e^{2u})^2
        let d_far = len.div(&denom); // b-side offset for +u
        let d_near = len.mul(&eu2).div(&denom); // a-side offset for +u is len - d_far
        let w = half_pi
            .mul(&cosh_t)
            .mul_i64(4)
            .mul(&eu2)
            .div(&denom.mul(&denom));
        // node at +t: x = a + (len - d_far) = b - d_far; node at -t: x = a + d_far
        let _ = d_near;
        let x_plus = b.sub(&d_far);
        let x_minus = a.add(&d_far);
        w.mul(&f(&x_plus).add(&f(&x_minus)))
    };

    // level 0: t = 0 node plus integer t
    let w0 = half_pi.clone();
    let mid = a.add(&half_len);
    let mut sum = w0.mul(&f(&mid));
    let mut k = 1u64;
    while (k as f64) <= t_max {
        sum = sum.add(&node_pair(&BigReal::from_u64(k, ctx)));
        k += 1;
    }
    let mut h = BigReal::from_u64(1, ctx);
    let mut value = sum.mul(&h).mul(&half_len); // d x/d t carries (b-a)/2 via w normalisation below
    let mut prev_err: Option<BigReal> = None;
    for _level in 1..=12 {
        h = h.div_u64(2);
        // new nodes at odd multiples of h
        let mut add = BigReal::zero(ctx);
        let mut j = 1u64;
        loop {
            let t = h.mul_i64(j as i64);
            if t.to_f64() > t_max {
                break;
            }
            add = add.add(&node_pair(&t));
            j += 2;
        }
        let new_value = value.div_u64(2).add(&add.mul(&h).mul(&half_len));
        let err = new_value.sub(&value).abs();
        value = new_value;
        if err.lt(&target.mul(&value.abs().add(&BigReal::from_u64(1, ctx)))) {
            return Ok((value, err));
        }
        if let Some(pe) = &prev_err {
            // stalled: no longer contracting
            if pe.lt(&err) && _level > 6 {
                return Err(Error::QuadratureFailure(format!(
                    "error estimate stalled at {}",
                    err.to_decimal(3)
                )));
            }
        }
        prev_err = Some(err);
    }
    let err = prev_err.unwrap_or_else(|| BigReal::from_u64(1, ctx));
    Ok((value, err))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CotUpper {
    /// pi/2
    Half,
    /// pi/4
    Quarter,
}

/// Moment integral of the cotangent: int_0^{upper} x^p cot(x) dx, p >= 1.
/// The integrand extends continuously to 0 (x^p cot x ~ x^{p-1}).
pub fn quad_cot_moment(p: u64, upper: CotUpper, ctx: PrecisionContext) -> Result<(BigReal, BigReal)> {
    if p < 1 {
        return Err(Error::Domain("cot moment needs p >= 1".into()));
    }
    let pi = const_pi(ctx);
    let b = match upper {
        CotUpper::Half => pi.div_u64(2),
        CotUpper::Quarter => pi.div_u64(4),
    };
    let a = BigReal::zero(ctx);
    tanh_sinh(
        |x: &BigReal| x.powi(p).mul(&x.cos()).div(&x.sin()),
        &a,
        &b,
        ctx,
    )
}

/// r(p) = int_0^1 arctan^p(x) dx, p >= 1.
pub fn quad_arctan_pow(p: u64, ctx: PrecisionContext) -> Result<(BigReal, BigReal)> {
    if p < 1 {
        return Err(Error::Domain("arctan power integral needs p >= 1".into()));
    }
    let a = BigReal::zero(ctx);
    let b = BigReal::from_u64(1, ctx);
    tanh_sinh(|x: &BigReal| x.atan().powi(p), &a, &b, ctx)
}

/// int_0^1 arctan^r(x)/x dx, r >= 1 (integrand ~ x^{r-1} at 0).
pub fn quad_arctan_over_x(r: u64, ctx: PrecisionContext) -> Result<(BigReal, BigReal)> {
    if r < 1 {
        return Err(Error::Domain("arctan-over-x integral needs r >= 1".into()));
    }
    let a = BigReal::zero(ctx);
    let b = BigReal::from_u64(1, ctx);
    tanh_sinh(|x: &BigReal| x.atan().powi(r).div(x), &a, &b, ctx)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants::{beta_int, const_log2, const_pi};

    fn ctx() -> PrecisionContext {
        PrecisionContext::default()
    }

    #[test]
    fn smooth_polynomial() {
        let c = ctx();
        let a = BigReal::zero(c);
        let b = BigReal::from_u64(1, c);
        let (v, _e) = tanh_sinh(|x| x.mul(x), &a, &b, c).unwrap();
        let d = v.sub(&BigReal::from_u64(3, c).recip()).abs();
        assert!(d.to_f64() < 1e-60, "got {}", d.to_f64());
    }

    #[test]
    fn cot_moment_p1_half() {
        // int_0^{pi/2} x cot x dx = (pi/2) log 2
        let c = ctx();
        let (v, _) = quad_cot_moment(1, CotUpper::Half, c).unwrap();
        let want = const_pi(c).div_u64(2).mul(&const_log2(c));
        assert!(v.sub(&want).abs().to_f64() < 1e-40);
    }

    #[test]
    fn arctan_pow_p1() {
        // int_0^1 arctan x dx = pi/4 - (log 2)/2
        let c = ctx();
        let (v, _) = quad_arctan_pow(1, c).unwrap();
        let want = const_pi(c).div_u64(4).sub(&const_log2(c).div_u64(2));
        assert!(v.sub(&want).abs().to_f64() < 1e-40);
    }

    #[test]
    fn arctan_over_x_r1_is_catalan() {
        let c = ctx();
        let (v, _) = quad_arctan_over_x(1, c).unwrap();
        let want = beta_int(2, c).unwrap();
        assert!(v.sub(&want).abs().to_f64() < 1e-40);
    }

    #[test]
    fn domain_errors() {
        let c = ctx();
        assert!(quad_cot_moment(0, CotUpper::Half, c).is_err());
        assert!(quad_arctan_pow(0, c).is_err());
        assert!(quad_arctan_over_x(0, c).is_err());
    }
}
