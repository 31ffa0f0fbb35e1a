//! Truncated formal power series with exact symbolic coefficients, and the
//! named generating series built from them.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::error::{Error, Result};
use crate::gaussian::GaussianRational;
use crate::precision::{BigComplex, BigReal, PrecisionContext};
use crate::symbol::SymExpr;

/// Power series truncated at z^order.  Arithmetic never extends the order:
/// binary operations truncate to the smaller order of the inputs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Series {
    coeffs: Vec<SymExpr>,
}

impl Series {
    pub fn from_coeffs(coeffs: Vec<SymExpr>) -> Self {
        assert!(!coeffs.is_empty());
        Series { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Series {
            coeffs: vec![SymExpr::zero(); order + 1],
        }
    }

    pub fn constant(c: SymExpr, order: usize) -> Self {
        let mut s = Series::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// The monomial z (truncated to the given order).
    pub fn z(order: usize) -> Self {
        let mut s = Series::zero(order);
        if order >= 1 {
            s.coeffs[1] = SymExpr::int(1);
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, n: usize) -> Result<&SymExpr> {
        self.coeffs.get(n).ok_or(Error::OrderExceeded {
            requested: n,
            available: self.order(),
        })
    }

    pub fn truncate(&self, order: usize) -> Self {
        let end = (order + 1).min(self.coeffs.len());
        let mut coeffs = self.coeffs[..end].to_vec();
        coeffs.resize(order + 1, SymExpr::zero());
        Series { coeffs }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.order().min(rhs.order());
        let coeffs = (0..=n)
            .map(|i| self.coeffs[i].clone() + rhs.coeffs[i].clone())
            .collect();
        Series { coeffs }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let n = self.order().min(rhs.order());
        let coeffs = (0..=n)
            .map(|i| self.coeffs[i].clone() - rhs.coeffs[i].clone())
            .collect();
        Series { coeffs }
    }

    pub fn neg(&self) -> Self {
        Series {
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let n = self.order().min(rhs.order());
        let mut coeffs = vec![SymExpr::zero(); n + 1];
        for i in 0..=n {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=(n - i) {
                if rhs.coeffs[j].is_zero() {
                    continue;
                }
                let p = self.coeffs[i].clone() * rhs.coeffs[j].clone();
                let cur = std::mem::replace(&mut coeffs[i + j], SymExpr::zero());
                coeffs[i + j] = cur + p;
            }
        }
        Series { coeffs }
    }

    pub fn scale(&self, c: &SymExpr) -> Self {
        Series {
            coeffs: self.coeffs.iter().map(|x| x.clone() * c.clone()).collect(),
        }
    }

    /// Formal derivative; order drops by one.
    pub fn derivative(&self) -> Self {
        let n = self.order();
        if n == 0 {
            return Series::zero(0);
        }
        let coeffs = (1..=n)
            .map(|i| self.coeffs[i].clone() * SymExpr::int(i as i64))
            .collect();
        Series { coeffs }
    }

    /// Divide by z; requires a vanishing constant term.  Order drops by one.
    pub fn shift_down(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::Domain(
                "shift_down needs a vanishing constant term".into(),
            ));
        }
        if self.order() == 0 {
            return Ok(Series::zero(0));
        }
        Ok(Series {
            coeffs: self.coeffs[1..].to_vec(),
        })
    }

    /// Multiply by z; the top coefficient is truncated away.
    pub fn mul_z(&self) -> Self {
        let mut coeffs = vec![SymExpr::zero()];
        coeffs.extend_from_slice(&self.coeffs[..self.order()]);
        Series { coeffs }
    }

    /// Substitute z <- c*z for a single-monomial c: coeff_n *= c^n.
    pub fn compose_linear(&self, c: &SymExpr) -> Result<Self> {
        let nterms = c.terms().count();
        if nterms > 1 {
            return Err(Error::Domain(
                "compose_linear needs a single-monomial constant".into(),
            ));
        }
        let mut pow = SymExpr::int(1);
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for (n, a) in self.coeffs.iter().enumerate() {
            if n > 0 {
                pow = pow * c.clone();
            }
            coeffs.push(a.clone() * pow.clone());
        }
        Ok(Series { coeffs })
    }

    /// z <- -z.
    pub fn compose_neg(&self) -> Self {
        self.compose_linear(&SymExpr::int(-1))
            .expect("constant is a monomial")
    }

    /// Multiplicative inverse; requires constant term exactly 1.
    pub fn reciprocal(&self) -> Result<Self> {
        if self.coeffs[0] != SymExpr::int(1) {
            return Err(Error::Domain("reciprocal needs constant term 1".into()));
        }
        let n = self.order();
        let mut out = vec![SymExpr::zero(); n + 1];
        out[0] = SymExpr::int(1);
        for k in 1..=n {
            let mut acc = SymExpr::zero();
            for j in 1..=k {
                if self.coeffs[j].is_zero() {
                    continue;
                }
                acc = acc + self.coeffs[j].clone() * out[k - j].clone();
            }
            out[k] = -acc;
        }
        Ok(Series { coeffs: out })
    }

    /// Numeric value at a real point through num_eval of the coefficients.
    pub fn eval_num(
        &self,
        x: &BigReal,
        ctx: PrecisionContext,
        budget: u64,
    ) -> Result<(BigComplex, BigReal)> {
        let mut value = BigComplex::zero(ctx);
        let mut err = BigReal::zero(ctx);
        let mut pw = BigReal::from_u64(1, ctx);
        for (n, c) in self.coeffs.iter().enumerate() {
            if n > 0 {
                pw = pw.mul(x);
            }
            if c.is_zero() {
                continue;
            }
            let (v, e) = c.num_eval(ctx, budget)?;
            value = value.add(&v.mul_real(&pw));
            err = err.add(&e.mul(&pw.abs()));
        }
        Ok((value, err))
    }
}

fn rat(num: BigInt, den: BigInt) -> SymExpr {
    SymExpr::rational(GaussianRational::from_real(BigRational::new(num, den)))
}

fn factorial(n: u64) -> BigInt {
    let mut f = BigInt::one();
    for j in 1..=n {
        f *= BigInt::from(j);
    }
    f
}

/// A(z) = sum_{k>=1} zeta(2k+1) z^{2k}.
pub fn a_series(order: usize) -> Series {
    let mut s = Series::zero(order);
    let mut k = 1;
    while 2 * k <= order {
        s = set_coeff(s, 2 * k, SymExpr::zeta(2 * k as u64 + 1));
        k += 1;
    }
    s
}

/// D(z) = sum_{k>=1} beta(2k) z^{2k-1}.
pub fn d_series(order: usize) -> Series {
    let mut s = Series::zero(order);
    let mut k = 1;
    while 2 * k - 1 <= order {
        s = set_coeff(s, 2 * k - 1, SymExpr::beta(2 * k as u64));
        k += 1;
    }
    s
}

fn set_coeff(mut s: Series, n: usize, c: SymExpr) -> Series {
    s.coeffs[n] = c;
    s
}

/// (pi z / 2) tan(pi z / 2) = sum_{n>=1} 2 (1 - 2^{-2n}) zeta(2n) z^{2n}.
pub fn pi_tan_series(order: usize) -> Series {
    let mut s = Series::zero(order);
    let mut n = 1u64;
    while 2 * n as usize <= order {
        let c = rat(
            BigInt::from(2) * (BigInt::from(2).pow(2 * n as u32) - 1),
            BigInt::from(2).pow(2 * n as u32),
        ) * SymExpr::zeta(2 * n);
        s = set_coeff(s, 2 * n as usize, c);
        n += 1;
    }
    s
}

/// exp as a plain series sum z^n / n!.
pub fn exp_series(order: usize) -> Series {
    let coeffs = (0..=order)
        .map(|n| rat(BigInt::one(), factorial(n as u64)))
        .collect();
    Series::from_coeffs(coeffs)
}

/// sin(pi z / 2).
pub fn sin_pi_half(order: usize) -> Series {
    let mut s = Series::zero(order);
    let mut k = 0u64;
    while (2 * k + 1) as usize <= order {
        let sign = if k % 2 == 0 { 1 } else { -1 };
        let c = rat(
            BigInt::from(sign),
            factorial(2 * k + 1) * BigInt::from(2).pow(2 * k as u32 + 1),
        ) * SymExpr::pi_pow(2 * k as u32 + 1);
        s = set_coeff(s, (2 * k + 1) as usize, c);
        k += 1;
    }
    s
}

/// cos(pi z / 2).
pub fn cos_pi_half(order: usize) -> Series {
    let mut s = Series::zero(order);
    let mut k = 0u64;
    while (2 * k) as usize <= order {
        let sign = if k % 2 == 0 { 1 } else { -1 };
        let c = rat(
            BigInt::from(sign),
            factorial(2 * k) * BigInt::from(2).pow(2 * k as u32),
        ) * SymExpr::pi_pow(2 * k as u32);
        s = set_coeff(s, (2 * k) as usize, c);
        k += 1;
    }
    s
}

/// exp(c z) for a single-monomial constant c.
pub fn exp_linear(c: &SymExpr, order: usize) -> Result<Series> {
    exp_series(order).compose_linear(c)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeriesName {
    A,
    D,
    PiTan,
    Exp,
    Sin,
    Cos,
    GtBar1,
    GtBar2,
    WCal,
    Gt21,
    Gs21,
    CHalf,
    CQuarter,
    R,
    Q1,
    Q2Rhs,
    EfRhs,
}

impl SeriesName {
    pub fn parse(s: &str) -> Result<Self> {
        Ok(match s {
            "A" => SeriesName::A,
            "D" => SeriesName::D,
            "PI_TAN" => SeriesName::PiTan,
            "EXP" => SeriesName::Exp,
            "SIN" => SeriesName::Sin,
            "COS" => SeriesName::Cos,
            "GT_BAR1" => SeriesName::GtBar1,
            "GT_BAR2" => SeriesName::GtBar2,
            "W_CAL" => SeriesName::WCal,
            "GT21" => SeriesName::Gt21,
            "GS21" => SeriesName::Gs21,
            "C_HALF" => SeriesName::CHalf,
            "C_QUARTER" => SeriesName::CQuarter,
            "R" => SeriesName::R,
            "Q1" => SeriesName::Q1,
            "Q2_RHS" => SeriesName::Q2Rhs,
            "EF_RHS" => SeriesName::EfRhs,
            other => return Err(Error::UnknownName(other.into())),
        })
    }

    pub const ALL: [(&'static str, SeriesName); 17] = [
        ("A", SeriesName::A),
        ("D", SeriesName::D),
        ("PI_TAN", SeriesName::PiTan),
        ("EXP", SeriesName::Exp),
        ("SIN", SeriesName::Sin),
        ("COS", SeriesName::Cos),
        ("GT_BAR1", SeriesName::GtBar1),
        ("GT_BAR2", SeriesName::GtBar2),
        ("W_CAL", SeriesName::WCal),
        ("GT21", SeriesName::Gt21),
        ("GS21", SeriesName::Gs21),
        ("C_HALF", SeriesName::CHalf),
        ("C_QUARTER", SeriesName::CQuarter),
        ("R", SeriesName::R),
        ("Q1", SeriesName::Q1),
        ("Q2_RHS", SeriesName::Q2Rhs),
        ("EF_RHS", SeriesName::EfRhs),
    ];
}

fn i_over(den: i64) -> SymExpr {
    SymExpr::i() * SymExpr::ratio(1, den)
}

fn pi_over(den: i64) -> SymExpr {
    SymExpr::pi() * SymExpr::ratio(1, den)
}

/// Build a named generating series to the requested order.
pub fn series_build(name: SeriesName, order: usize) -> Result<Series> {
    if order > 20 {
        return Err(Error::Domain(format!("series order {order} > 20")));
    }
    // work a little above the requested order so that shifts stay exact
    let w = order + 4;
    let a = a_series(w);
    let d = d_series(w);
    let cos = cos_pi_half(w);
    let sin = sin_pi_half(w);
    let s = match name {
        SeriesName::A => a,
        SeriesName::D => d,
        SeriesName::PiTan => pi_tan_series(w),
        SeriesName::Exp => exp_series(w),
        SeriesName::Sin => sin_pi_half(w),
        SeriesName::Cos => cos_pi_half(w),
        SeriesName::GtBar1 => {
            // (1/z)(-1 + cos(pi z/2) - sin(pi z/2))
            cos.sub(&sin)
                .sub(&Series::constant(SymExpr::int(1), w))
                .shift_down()?
        }
        SeriesName::GtBar2 => {
            // -A(z/2) + 2A(z) - 2 D(z) (cos + sin)
            let a_half = a.compose_linear(&SymExpr::ratio(1, 2))?;
            a_half
                .neg()
                .add(&a.scale(&SymExpr::int(2)))
                .sub(&d.mul(&cos.add(&sin)).scale(&SymExpr::int(2)))
        }
        SeriesName::WCal => {
            // -2D + (A(z/2) - 2A)(cos - sin)
            let a_half = a.compose_linear(&SymExpr::ratio(1, 2))?;
            d.scale(&SymExpr::int(-2))
                .add(&a_half.sub(&a.scale(&SymExpr::int(2))).mul(&cos.sub(&sin)))
        }
        SeriesName::Gt21 => pi_tan_series(w).shift_down()?,
        SeriesName::Gs21 => {
            // PI_TAN (A(z/2) - A - log 2) - (z/2) A'(z/2) + 2 z A'(z)
            let pt = pi_tan_series(w);
            let a_half = a.compose_linear(&SymExpr::ratio(1, 2))?;
            let da = a.derivative();
            let da_half = da.compose_linear(&SymExpr::ratio(1, 2))?;
            pt.mul(&a_half.sub(&a).sub(&Series::constant(SymExpr::log2(), w)))
                .sub(&da_half.mul_z().scale(&SymExpr::ratio(1, 2)))
                .add(&da.mul_z().scale(&SymExpr::int(2)))
        }
        SeriesName::CHalf => {
            // A(iz/2) - log2 + exp(pi z/2)(-A(iz/4) + A(iz/2) + log2)
            let a_i2 = a.compose_linear(&i_over(2))?;
            let a_i4 = a.compose_linear(&i_over(4))?;
            let e = exp_linear(&pi_over(2), w)?;
            let l2 = Series::constant(SymExpr::log2(), w);
            a_i2.sub(&l2).add(&e.mul(&a_i4.neg().add(&a_i2).add(&l2)))
        }
        SeriesName::CQuarter => {
            // A(iz/2) - log2/2 + (1/2) exp(pi z/4)(-A(iz/8) + A(iz/4) - 2i D(iz/2) + log2)
            let a_i2 = a.compose_linear(&i_over(2))?;
            let a_i4 = a.compose_linear(&i_over(4))?;
            let a_i8 = a.compose_linear(&i_over(8))?;
            let d_i2 = d.compose_linear(&i_over(2))?;
            let e = exp_linear(&pi_over(4), w)?;
            let l2 = Series::constant(SymExpr::log2(), w);
            let inner = a_i8
                .neg()
                .add(&a_i4)
                .sub(&d_i2.scale(&(SymExpr::i() * SymExpr::int(2))))
                .add(&l2);
            a_i2.sub(&l2.scale(&SymExpr::ratio(1, 2)))
                .add(&e.mul(&inner).scale(&SymExpr::ratio(1, 2)))
        }
        SeriesName::R => {
            // -1 + exp(pi z/4) - z(-A(iz/4) + A(iz/2) + log2)
            //    + (z/2) exp(pi z/4)(-A(iz/8) + A(iz/4) + 2i D(iz/2) + log2)
            let a_i2 = a.compose_linear(&i_over(2))?;
            let a_i4 = a.compose_linear(&i_over(4))?;
            let a_i8 = a.compose_linear(&i_over(8))?;
            let d_i2 = d.compose_linear(&i_over(2))?;
            let e4 = exp_linear(&pi_over(4), w)?;
            let l2 = Series::constant(SymExpr::log2(), w);
            let one = Series::constant(SymExpr::int(1), w);
            let lin = a_i4.neg().add(&a_i2).add(&l2);
            let inner = a_i8
                .neg()
                .add(&a_i4)
                .add(&d_i2.scale(&(SymExpr::i() * SymExpr::int(2))))
                .add(&l2);
            e4.sub(&one)
                .sub(&lin.mul_z())
                .add(&e4.mul(&inner).mul_z().scale(&SymExpr::ratio(1, 2)))
        }
        SeriesName::Q1 => {
            // (z/2) exp(pi z/4) (2 D'(iz/2) - i pi D(iz/2))
            //   - (iz/4)(A'(iz/4) - 4 A'(iz/2))
            let dd = d.derivative();
            let dd_i2 = dd.compose_linear(&i_over(2))?;
            let d_i2 = d.compose_linear(&i_over(2))?;
            let da = a.derivative();
            let da_i4 = da.compose_linear(&i_over(4))?;
            let da_i2 = da.compose_linear(&i_over(2))?;
            let e4 = exp_linear(&pi_over(4), w)?;
            let first = e4
                .mul(
                    &dd_i2
                        .scale(&SymExpr::int(2))
                        .sub(&d_i2.scale(&(SymExpr::i() * SymExpr::pi()))),
                )
                .mul_z()
                .scale(&SymExpr::ratio(1, 2));
            let second = da_i4
                .sub(&da_i2.scale(&SymExpr::int(4)))
                .mul_z()
                .scale(&(SymExpr::i() * SymExpr::ratio(1, 4)));
            first.sub(&second)
        }
        SeriesName::EfRhs => ef_rhs(w),
        SeriesName::Q2Rhs => {
            // -2i b2 z + (1 - exp(-i pi z/2)) (2i b2 z + GS21 - i GT21)
            //   - i R(-2iz) GT21 + exp(-i pi z/2) EF_RHS
            let gt21 = series_build(SeriesName::Gt21, w)?;
            let gs21 = series_build(SeriesName::Gs21, w)?;
            let r = series_build(SeriesName::R, w)?;
            let ef = ef_rhs(w);
            let minus_2i = SymExpr::i() * SymExpr::int(-2);
            let r_m2iz = r.compose_linear(&minus_2i)?;
            let e_m = exp_linear(&(SymExpr::i() * pi_over(-2)), w)?;
            let one = Series::constant(SymExpr::int(1), w);
            let b2z = Series::z(w).scale(&(SymExpr::i() * SymExpr::int(2) * SymExpr::beta(2)));
            b2z.neg()
                .add(
                    &one.sub(&e_m)
                        .mul(&b2z.add(&gs21).sub(&gt21.scale(&SymExpr::i()))),
                )
                .sub(&r_m2iz.mul(&gt21).scale(&SymExpr::i()))
                .add(&e_m.mul(&ef))
        }
    };
    Ok(s.truncate(order))
}

fn ef_rhs(w: usize) -> Series {
    // -(A(z/4) - 3A(z/2) + 2A + log2) * PI_TAN
    //   - z((1/2)A'(z/2) - 2A' - pi D)
    //   + i (2 b2 z - 2 z D' + 2 PI_TAN D)
    let a = a_series(w);
    let d = d_series(w);
    let pt = pi_tan_series(w);
    let a_half = a.compose_linear(&SymExpr::ratio(1, 2)).expect("monomial");
    let a_quarter = a.compose_linear(&SymExpr::ratio(1, 4)).expect("monomial");
    let da = a.derivative();
    let da_half = da.compose_linear(&SymExpr::ratio(1, 2)).expect("monomial");
    let dd = d.derivative();
    let l2 = Series::constant(SymExpr::log2(), w);
    let first = a_quarter
        .sub(&a_half.scale(&SymExpr::int(3)))
        .add(&a.scale(&SymExpr::int(2)))
        .add(&l2)
        .mul(&pt)
        .neg();
    let second = da_half
        .scale(&SymExpr::ratio(1, 2))
        .sub(&da.scale(&SymExpr::int(2)))
        .sub(&d.scale(&SymExpr::pi()))
        .mul_z()
        .neg();
    let third = Series::z(w)
        .scale(&(SymExpr::int(2) * SymExpr::beta(2)))
        .sub(&dd.mul_z().scale(&SymExpr::int(2)))
        .add(&pt.mul(&d).scale(&SymExpr::int(2)))
        .scale(&SymExpr::i());
    first.add(&second).add(&third)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants;

    #[test]
    fn basic_arithmetic() {
        // (1+z)(1-z) = 1 - z^2
        let one_plus = Series::constant(SymExpr::int(1), 4).add(&Series::z(4));
        let one_minus = Series::constant(SymExpr::int(1), 4).sub(&Series::z(4));
        let p = one_plus.mul(&one_minus);
        assert!(p.coeff(0).unwrap().equal_canonical(&SymExpr::int(1)));
        assert!(p.coeff(1).unwrap().is_zero());
        assert!(p.coeff(2).unwrap().equal_canonical(&SymExpr::int(-1)));
        assert!(p.coeff(3).unwrap().is_zero());
        assert!(p.coeff(5).is_err());
    }

    #[test]
    fn derivative_of_a() {
        // A'(z) = sum 2k zeta(2k+1) z^{2k-1}
        let da = a_series(6).derivative();
        assert!(da
            .coeff(1)
            .unwrap()
            .equal_canonical(&(SymExpr::int(2) * SymExpr::zeta(3))));
        assert!(da
            .coeff(3)
            .unwrap()
            .equal_canonical(&(SymExpr::int(4) * SymExpr::zeta(5))));
    }

    #[test]
    fn d_series_coeff3_is_beta4() {
        let d = d_series(5);
        assert!(d.coeff(3).unwrap().equal_canonical(&SymExpr::beta(4)));
    }

    #[test]
    fn compose_linear_halves() {
        // A(z/2): coefficient of z^{2k} is zeta(2k+1)/4^k
        let a2 = a_series(6).compose_linear(&SymExpr::ratio(1, 2)).unwrap();
        assert!(a2
            .coeff(2)
            .unwrap()
            .equal_canonical(&(SymExpr::ratio(1, 4) * SymExpr::zeta(3))));
        assert!(a2
            .coeff(4)
            .unwrap()
            .equal_canonical(&(SymExpr::ratio(1, 16) * SymExpr::zeta(5))));
    }

    #[test]
    fn exp_compose_i_pi_half() {
        // exp(i pi z/2): coefficient of z^2 is (i pi/2)^2/2 = -pi^2/8
        let e = exp_series(4)
            .compose_linear(&(SymExpr::i() * SymExpr::pi() * SymExpr::ratio(1, 2)))
            .unwrap();
        let c2 = e.coeff(2).unwrap();
        assert!(c2.equal_canonical(&(SymExpr::ratio(-1, 8) * SymExpr::pi_pow(2))));
    }

    #[test]
    fn pi_tan_matches_sin_over_cos() {
        // PI_TAN = z (pi/2) sin(pi z/2) / cos(pi z/2)
        let n = 12;
        let pt = pi_tan_series(n);
        let alt = sin_pi_half(n)
            .mul(&cos_pi_half(n).reciprocal().unwrap())
            .mul_z()
            .scale(&(SymExpr::pi() * SymExpr::ratio(1, 2)));
        for k in 0..=n {
            assert!(
                pt.coeff(k).unwrap().equal_canonical(alt.coeff(k).unwrap()),
                "PI_TAN coefficient {k} differs"
            );
        }
    }

    #[test]
    fn gt21_leading_coefficient() {
        // [z] GT21 = (3/2) zeta(2) = pi^2/4
        let g = series_build(SeriesName::Gt21, 8).unwrap();
        assert!(g
            .coeff(1)
            .unwrap()
            .equal_canonical(&(SymExpr::ratio(1, 4) * SymExpr::pi_pow(2))));
    }

    #[test]
    fn gt_bar1_matches_closed_coefficients() {
        // T(bar1, {1}_r) = -(-1)^{floor(r/2)} (pi/2)^{r+1} / (r+1)!
        let g = series_build(SeriesName::GtBar1, 8).unwrap();
        for r in 0..=8u32 {
            let sign = if (r / 2) % 2 == 0 { -1 } else { 1 };
            let mut denom = BigInt::one();
            for j in 1..=(r + 1) as u64 {
                denom *= BigInt::from(j);
            }
            denom *= BigInt::from(2).pow(r + 1);
            let want = rat(BigInt::from(sign), denom) * SymExpr::pi_pow(r + 1);
            assert!(
                g.coeff(r as usize).unwrap().equal_canonical(&want),
                "GT_BAR1 coefficient {r}"
            );
        }
    }

    #[test]
    fn series_eval_num_pi_tan() {
        // numeric spot check of PI_TAN at z = 1/10 against (pi/20) tan(pi/20)
        let ctx = PrecisionContext::default();
        let pt = series_build(SeriesName::PiTan, 14).unwrap();
        let x = BigReal::from_u64(10, ctx).recip();
        let (v, _e) = pt.eval_num(&x, ctx, 1 << 10).unwrap();
        let pi = constants::const_pi(ctx);
        let arg = pi.mul(&x).div_u64(2);
        let want = arg.mul(&arg.tan());
        assert!(v.re.sub(&want).abs().to_f64() < 1e-12);
        assert!(v.im.is_zero());
    }

    #[test]
    fn unknown_name_rejected() {
        assert!(SeriesName::parse("NOPE").is_err());
    }
}
