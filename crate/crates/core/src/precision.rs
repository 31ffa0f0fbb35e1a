//! Working-precision real and complex arithmetic on top of arbitrary-precision
//! floats.  Every value carries the context that produced it; operations never
//! let a NaN or infinity escape.

use std::cell::RefCell;
use std::cmp::Ordering;
use std::fmt;

use astro_float::{BigFloat, Consts, Radix, RoundingMode};

use crate::error::{Error, Result};

const RM: RoundingMode = RoundingMode::ToEven;

thread_local! {
    static CONSTS: RefCell<Consts> =
        RefCell::new(Consts::new().expect("constants cache allocation"));
}

fn with_consts<T>(f: impl FnOnce(&mut Consts) -> T) -> T {
    CONSTS.with(|cc| f(&mut cc.borrow_mut()))
}

/// Binary working precision plus guard bits carried by every numeric value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrecisionContext {
    working_bits: u32,
    guard_bits: u32,
}

impl PrecisionContext {
    pub const DEFAULT_WORKING_BITS: u32 = 256;
    pub const DEFAULT_GUARD_BITS: u32 = 64;

    pub fn new(working_bits: u32, guard_bits: u32) -> Result<Self> {
        if working_bits < 64 {
            return Err(Error::Domain(format!(
                "working_bits must be >= 64, got {working_bits}"
            )));
        }
        if guard_bits < 32 {
            return Err(Error::Domain(format!(
                "guard_bits must be >= 32, got {guard_bits}"
            )));
        }
        Ok(PrecisionContext {
            working_bits,
            guard_bits,
        })
    }

    pub fn with_working_bits(working_bits: u32) -> Result<Self> {
        Self::new(working_bits, Self::DEFAULT_GUARD_BITS)
    }

    pub fn working_bits(&self) -> u32 {
        self.working_bits
    }

    pub fn guard_bits(&self) -> u32 {
        self.guard_bits
    }

    /// Precision used for internal arithmetic.
    pub fn total_bits(&self) -> usize {
        (self.working_bits + self.guard_bits) as usize
    }

    /// 2^(-working_bits), the contract accuracy of constants in this context.
    pub fn eps(&self) -> BigReal {
        let one = BigReal::from_u64(1, *self);
        BigReal::from_raw(one.raw().mul(&pow2(-(self.working_bits as i64), self.total_bits()), self.total_bits(), RM), *self)
    }
}

impl Default for PrecisionContext {
    fn default() -> Self {
        PrecisionContext {
            working_bits: Self::DEFAULT_WORKING_BITS,
            guard_bits: Self::DEFAULT_GUARD_BITS,
        }
    }
}

fn pow2(e: i64, p: usize) -> BigFloat {
    let mut x = BigFloat::from_u64(1, p);
    x.set_exponent((1 + e) as astro_float::Exponent);
    x
}

/// Arbitrary-precision real number tagged with its context.
#[derive(Clone, Debug)]
pub struct BigReal {
    x: BigFloat,
    ctx: PrecisionContext,
}

impl BigReal {
    fn guard(x: BigFloat, ctx: PrecisionContext) -> Self {
        assert!(
            !x.is_nan() && !x.is_inf(),
            "non-finite value escaped an arithmetic operation"
        );
        BigReal { x, ctx }
    }

    pub(crate) fn from_raw(x: BigFloat, ctx: PrecisionContext) -> Self {
        Self::guard(x, ctx)
    }

    pub(crate) fn raw(&self) -> &BigFloat {
        &self.x
    }

    pub fn ctx(&self) -> PrecisionContext {
        self.ctx
    }

    fn p(&self) -> usize {
        self.ctx.total_bits()
    }

    pub fn zero(ctx: PrecisionContext) -> Self {
        BigReal {
            x: BigFloat::from_u64(0, ctx.total_bits()),
            ctx,
        }
    }

    pub fn from_u64(v: u64, ctx: PrecisionContext) -> Self {
        BigReal {
            x: BigFloat::from_u64(v, ctx.total_bits()),
            ctx,
        }
    }

    pub fn from_i64(v: i64, ctx: PrecisionContext) -> Self {
        BigReal {
            x: BigFloat::from_i64(v, ctx.total_bits()),
            ctx,
        }
    }

    pub fn from_f64(v: f64, ctx: PrecisionContext) -> Self {
        assert!(v.is_finite());
        BigReal {
            x: BigFloat::from_f64(v, ctx.total_bits()),
            ctx,
        }
    }

    /// 2^e at this context's precision.
    pub fn exp2i(e: i64, ctx: PrecisionContext) -> Self {
        BigReal::from_raw(pow2(e, ctx.total_bits()), ctx)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        Self::guard(self.x.add(&rhs.x, self.p(), RM), self.ctx)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        Self::guard(self.x.sub(&rhs.x, self.p(), RM), self.ctx)
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        Self::guard(self.x.mul(&rhs.x, self.p(), RM), self.ctx)
    }

    pub fn div(&self, rhs: &Self) -> Self {
        Self::guard(self.x.div(&rhs.x, self.p(), RM), self.ctx)
    }

    pub fn recip(&self) -> Self {
        Self::guard(self.x.reciprocal(self.p(), RM), self.ctx)
    }

    pub fn neg(&self) -> Self {
        Self::guard(self.x.neg(), self.ctx)
    }

    pub fn abs(&self) -> Self {
        Self::guard(self.x.abs(), self.ctx)
    }

    pub fn mul_i64(&self, v: i64) -> Self {
        let f = BigFloat::from_i64(v, self.p());
        Self::guard(self.x.mul(&f, self.p(), RM), self.ctx)
    }

    pub fn div_u64(&self, v: u64) -> Self {
        let f = BigFloat::from_u64(v, self.p());
        Self::guard(self.x.div(&f, self.p(), RM), self.ctx)
    }

    pub fn powi(&self, n: u64) -> Self {
        Self::guard(self.x.powi(n as usize, self.p(), RM), self.ctx)
    }

    pub fn sqrt(&self) -> Self {
        Self::guard(self.x.sqrt(self.p(), RM), self.ctx)
    }

    pub fn exp(&self) -> Self {
        Self::guard(with_consts(|cc| self.x.exp(self.p(), RM, cc)), self.ctx)
    }

    pub fn ln(&self) -> Self {
        Self::guard(with_consts(|cc| self.x.ln(self.p(), RM, cc)), self.ctx)
    }

    pub fn sin(&self) -> Self {
        Self::guard(with_consts(|cc| self.x.sin(self.p(), RM, cc)), self.ctx)
    }

    pub fn cos(&self) -> Self {
        Self::guard(with_consts(|cc| self.x.cos(self.p(), RM, cc)), self.ctx)
    }

    pub fn tan(&self) -> Self {
        Self::guard(with_consts(|cc| self.x.tan(self.p(), RM, cc)), self.ctx)
    }

    pub fn atan(&self) -> Self {
        Self::guard(with_consts(|cc| self.x.atan(self.p(), RM, cc)), self.ctx)
    }

    pub fn sinh(&self) -> Self {
        Self::guard(with_consts(|cc| self.x.sinh(self.p(), RM, cc)), self.ctx)
    }

    pub fn cosh(&self) -> Self {
        Self::guard(with_consts(|cc| self.x.cosh(self.p(), RM, cc)), self.ctx)
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.x.is_negative()
    }

    pub fn cmp(&self, rhs: &Self) -> Ordering {
        match self.x.cmp(&rhs.x) {
            Some(v) if v < 0 => Ordering::Less,
            Some(v) if v > 0 => Ordering::Greater,
            _ => Ordering::Equal,
        }
    }

    pub fn lt(&self, rhs: &Self) -> bool {
        self.cmp(rhs) == Ordering::Less
    }

    pub fn le(&self, rhs: &Self) -> bool {
        self.cmp(rhs) != Ordering::Greater
    }

    /// Nearest f64 (may under/overflow to 0/inf for extreme exponents).
    pub fn to_f64(&self) -> f64 {
        if self.x.is_zero() {
            return 0.0;
        }
        let (words, _n, sign, e, _) = self.x.as_raw_parts().expect("finite value");
        let top = words.last().copied().unwrap_or(0);
        let next = if words.len() >= 2 { words[words.len() - 2] } else { 0 };
        // mantissa in [0.5, 1): top 128 bits are plenty for f64
        let m = (top as f64) * 2f64.powi(-64) + (next as f64) * 2f64.powi(-128);
        let v = m * 2f64.powf(e as f64);
        if sign == astro_float::Sign::Neg {
            -v
        } else {
            v
        }
    }

    /// Decimal scientific rendering with `digits` significant digits.
    pub fn to_decimal(&self, digits: usize) -> String {
        if self.x.is_zero() {
            return format!("{:.*}e0", digits.saturating_sub(1), 0.0);
        }
        let (sign, ds, e10) = with_consts(|cc| self.x.convert_to_radix(Radix::Dec, RM, cc))
            .expect("finite value converts to decimal");
        let mut s = String::new();
        if sign == astro_float::Sign::Neg {
            s.push('-');
        }
        let take = digits.min(ds.len()).max(1);
        // round the retained digits
        let mut kept: Vec<u8> = ds[..take].to_vec();
        if ds.len() > take && ds[take] >= 5 {
            let mut i = take;
            loop {
                if i == 0 {
                    kept.insert(0, 1);
                    break;
                }
                i -= 1;
                if kept[i] == 9 {
                    kept[i] = 0;
                } else {
                    kept[i] += 1;
                    break;
                }
            }
        }
        let carried = kept.len() > take;
        kept.truncate(take);
        while kept.len() < digits {
            kept.push(0);
        }
        s.push((b'0' + kept[0]) as char);
        if kept.len() > 1 {
            s.push('.');
            for &d in &kept[1..] {
                s.push((b'0' + d) as char);
            }
        }
        // astro-float's exponent convention: value = 0.d1 d2... * 10^e10
        let exp = e10 as i64 - 1 + if carried { 1 } else { 0 };
        s.push('e');
        s.push_str(&exp.to_string());
        s
    }
}

impl fmt::Display for BigReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_decimal(40))
    }
}

/// Complex number over [BigReal].
#[derive(Clone, Debug)]
pub struct BigComplex {
    pub re: BigReal,
    pub im: BigReal,
}

impl BigComplex {
    pub fn new(re: BigReal, im: BigReal) -> Self {
        BigComplex { re, im }
    }

    pub fn zero(ctx: PrecisionContext) -> Self {
        BigComplex {
            re: BigReal::zero(ctx),
            im: BigReal::zero(ctx),
        }
    }

    pub fn from_real(re: BigReal) -> Self {
        let ctx = re.ctx();
        BigComplex {
            re,
            im: BigReal::zero(ctx),
        }
    }

    pub fn ctx(&self) -> PrecisionContext {
        self.re.ctx()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        BigComplex::new(self.re.add(&rhs.re), self.im.add(&rhs.im))
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        BigComplex::new(self.re.sub(&rhs.re), self.im.sub(&rhs.im))
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        BigComplex::new(
            self.re.mul(&rhs.re).sub(&self.im.mul(&rhs.im)),
            self.re.mul(&rhs.im).add(&self.im.mul(&rhs.re)),
        )
    }

    pub fn mul_real(&self, rhs: &BigReal) -> Self {
        BigComplex::new(self.re.mul(rhs), self.im.mul(rhs))
    }

    pub fn div(&self, rhs: &Self) -> Self {
        let d = rhs.re.mul(&rhs.re).add(&rhs.im.mul(&rhs.im));
        let num = self.mul(&rhs.conj());
        BigComplex::new(num.re.div(&d), num.im.div(&d))
    }

    pub fn neg(&self) -> Self {
        BigComplex::new(self.re.neg(), self.im.neg())
    }

    pub fn conj(&self) -> Self {
        BigComplex::new(self.re.clone(), self.im.neg())
    }

    /// Multiply by i^k for k in 0..4 (exact component swap).
    pub fn mul_i_pow(&self, k: u8) -> Self {
        match k & 3 {
            0 => self.clone(),
            1 => BigComplex::new(self.im.neg(), self.re.clone()),
            2 => self.neg(),
            _ => BigComplex::new(self.im.clone(), self.re.neg()),
        }
    }

    pub fn abs(&self) -> BigReal {
        self.re.mul(&self.re).add(&self.im.mul(&self.im)).sqrt()
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl fmt::Display for BigComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else {
            write!(f, "{} + {}i", self.re, self.im)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn context_invariants() {
        assert!(PrecisionContext::new(63, 32).is_err());
        assert!(PrecisionContext::new(64, 31).is_err());
        let ctx = PrecisionContext::new(256, 64).unwrap();
        assert_eq!(ctx.total_bits(), 320);
    }

    #[test]
    fn arithmetic_and_f64_roundtrip() {
        let ctx = PrecisionContext::default();
        let a = BigReal::from_f64(1.5, ctx);
        let b = BigReal::from_f64(2.25, ctx);
        assert_eq!(a.add(&b).to_f64(), 3.75);
        assert_eq!(a.mul(&b).to_f64(), 3.375);
        assert_eq!(b.div(&a).to_f64(), 1.5);
        assert_eq!(BigReal::exp2i(-10, ctx).to_f64(), 2f64.powi(-10));
    }

    #[test]
    fn decimal_rendering() {
        let ctx = PrecisionContext::default();
        let x = BigReal::from_f64(0.125, ctx);
        assert_eq!(x.to_decimal(3), "1.25e-1");
        let y = BigReal::from_u64(1000, ctx);
        assert_eq!(y.to_decimal(4), "1.000e3");
    }

    #[test]
    fn complex_rotation() {
        let ctx = PrecisionContext::default();
        let z = BigComplex::new(BigReal::from_u64(3, ctx), BigReal::from_u64(4, ctx));
        let w = z.mul_i_pow(1);
        assert_eq!(w.re.to_f64(), -4.0);
        assert_eq!(w.im.to_f64(), 3.0);
        let back = w.mul_i_pow(3);
        assert_eq!(back.re.to_f64(), 3.0);
        assert_eq!(back.im.to_f64(), 4.0);
    }
}
