//! Argument types for the nested-sum values: mixed indices with parity and
//! sign data, and multiple-polylogarithm indices at fourth roots of unity.

use std::fmt;

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::gaussian::GaussianRational;

/// A fourth root of unity i^k, stored by the exponent k in 0..4.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Unit(u8);

impl Unit {
    pub const ONE: Unit = Unit(0);
    pub const I: Unit = Unit(1);
    pub const MINUS_ONE: Unit = Unit(2);
    pub const MINUS_I: Unit = Unit(3);

    pub fn from_i_pow(k: u8) -> Unit {
        Unit(k & 3)
    }

    /// Exponent of i.
    pub fn i_pow(self) -> u8 {
        self.0
    }

    pub fn mul(self, rhs: Unit) -> Unit {
        Unit((self.0 + rhs.0) & 3)
    }

    pub fn inv(self) -> Unit {
        Unit((4 - self.0) & 3)
    }

    /// self^m.
    pub fn pow(self, m: u64) -> Unit {
        Unit(((self.0 as u64 * m) & 3) as u8)
    }

    pub fn conj(self) -> Unit {
        self.inv()
    }

    pub fn to_gaussian(self) -> GaussianRational {
        GaussianRational::one().mul_i_pow(self.0)
    }

    pub fn is_real(self) -> bool {
        self.0 & 1 == 0
    }
}

impl fmt::Display for Unit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self.0 {
            0 => "1",
            1 => "i",
            2 => "-1",
            _ => "-i",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Parity {
    Even,
    Odd,
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "ev",
            Parity::Odd => "od",
        })
    }
}

/// Per-index summand factor (1 + eps*(-1)^m) * sigma^{(2m+1-eps)/4}, a
/// function of m mod 4 with values in {0, +-2}.
#[derive(Clone, Copy, Debug)]
pub struct ParityFactor([i8; 4]);

impl ParityFactor {
    pub fn new(parity: Parity, sign: i8) -> Self {
        ParityFactor(match (parity, sign) {
            (Parity::Even, 1) => [2, 0, 2, 0],
            (Parity::Even, -1) => [2, 0, -2, 0],
            (Parity::Odd, 1) => [0, 2, 0, 2],
            (Parity::Odd, -1) => [0, -2, 0, 2],
            _ => unreachable!("sign must be +-1"),
        })
    }

    #[inline]
    pub fn factor(&self, m: u64) -> i8 {
        self.0[(m & 3) as usize]
    }
}

/// Argument index of an alternating multiple mixed value.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MixedIndex {
    exponents: Vec<u64>,
    signs: Vec<i8>,
    parities: Vec<Parity>,
}

impl MixedIndex {
    pub fn new(exponents: Vec<u64>, signs: Vec<i8>, parities: Vec<Parity>) -> Result<Self> {
        if exponents.is_empty() || exponents.len() != signs.len() || signs.len() != parities.len()
        {
            return Err(Error::Domain(
                "mixed index needs equal-length nonempty exponent/sign/parity sequences".into(),
            ));
        }
        if exponents.iter().any(|&s| s == 0) {
            return Err(Error::Domain("mixed index exponents must be >= 1".into()));
        }
        if signs.iter().any(|&s| s != 1 && s != -1) {
            return Err(Error::Domain("mixed index signs must be +-1".into()));
        }
        Ok(MixedIndex {
            exponents,
            signs,
            parities,
        })
    }

    /// Parity pattern of a multiple T value: alternating, innermost odd.
    pub fn t_value(exponents: Vec<u64>, signs: Vec<i8>) -> Result<Self> {
        let r = exponents.len();
        let parities = (1..=r)
            .map(|pos| {
                if (r - pos) % 2 == 0 {
                    Parity::Odd
                } else {
                    Parity::Even
                }
            })
            .collect();
        Self::new(exponents, signs, parities)
    }

    /// Parity pattern of a multiple S value: alternating, innermost even.
    pub fn s_value(exponents: Vec<u64>, signs: Vec<i8>) -> Result<Self> {
        let r = exponents.len();
        let parities = (1..=r)
            .map(|pos| {
                if (r - pos) % 2 == 0 {
                    Parity::Even
                } else {
                    Parity::Odd
                }
            })
            .collect();
        Self::new(exponents, signs, parities)
    }

    /// All parities odd (multiple t value pattern, before the 2^-r factor).
    pub fn t_small(exponents: Vec<u64>, signs: Vec<i8>) -> Result<Self> {
        let r = exponents.len();
        Self::new(exponents, signs, vec![Parity::Odd; r])
    }

    /// All parities even (alternating MZV pattern, before the 2^{w-r} factor).
    pub fn zeta(exponents: Vec<u64>, signs: Vec<i8>) -> Result<Self> {
        let r = exponents.len();
        Self::new(exponents, signs, vec![Parity::Even; r])
    }

    pub fn depth(&self) -> usize {
        self.exponents.len()
    }

    pub fn weight(&self) -> u64 {
        self.exponents.iter().sum()
    }

    pub fn exponents(&self) -> &[u64] {
        &self.exponents
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    pub fn parities(&self) -> &[Parity] {
        &self.parities
    }

    pub fn factors(&self) -> Vec<ParityFactor> {
        self.parities
            .iter()
            .zip(&self.signs)
            .map(|(&p, &s)| ParityFactor::new(p, s))
            .collect()
    }

    /// The expansion of the leading factor contains the character x = 1
    /// exactly when sigma_1 = +1; together with s_1 = 1 that means divergence.
    pub fn is_divergent(&self) -> bool {
        self.exponents[0] == 1 && self.signs[0] == 1
    }
}

impl fmt::Display for MixedIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "M(")?;
        for (i, s) in self.exponents.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            if self.signs[i] == -1 {
                write!(f, "'")?;
            }
            write!(f, "{s}")?;
        }
        write!(f, ";")?;
        for (i, p) in self.parities.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// Argument of a multiple polylogarithm: a fourth root of unity in depth >= 2,
/// or an exact complex rational inside the closed unit disk in depth 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LiArg {
    Unit(Unit),
    Rational(GaussianRational),
}

impl LiArg {
    pub fn as_unit(&self) -> Option<Unit> {
        match self {
            LiArg::Unit(u) => Some(*u),
            LiArg::Rational(_) => None,
        }
    }

    pub fn is_one(&self) -> bool {
        matches!(self, LiArg::Unit(u) if *u == Unit::ONE)
    }
}

impl fmt::Display for LiArg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LiArg::Unit(u) => write!(f, "{u}"),
            LiArg::Rational(q) => write!(f, "{q}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LiIndex {
    exponents: Vec<u64>,
    args: Vec<LiArg>,
}

impl LiIndex {
    pub fn new(exponents: Vec<u64>, args: Vec<LiArg>) -> Result<Self> {
        if exponents.is_empty() || exponents.len() != args.len() {
            return Err(Error::Domain(
                "Li index needs equal-length nonempty exponent/argument sequences".into(),
            ));
        }
        if exponents.iter().any(|&s| s == 0) {
            return Err(Error::Domain("Li exponents must be >= 1".into()));
        }
        if exponents.len() >= 2 && args.iter().any(|a| a.as_unit().is_none()) {
            return Err(Error::Domain(
                "Li arguments must be fourth roots of unity in depth >= 2".into(),
            ));
        }
        if let LiArg::Rational(q) = &args[0] {
            let norm = &q.re * &q.re + &q.im * &q.im;
            if norm > BigRational::from_integer(1.into()) {
                return Err(Error::Domain(format!(
                    "depth-1 Li argument {q} lies outside the unit disk"
                )));
            }
        }
        Ok(LiIndex { exponents, args })
    }

    pub fn at_units(exponents: Vec<u64>, units: Vec<Unit>) -> Result<Self> {
        let args = units.into_iter().map(LiArg::Unit).collect();
        Self::new(exponents, args)
    }

    pub fn depth_one(exponent: u64, arg: LiArg) -> Result<Self> {
        Self::new(vec![exponent], vec![arg])
    }

    pub fn depth(&self) -> usize {
        self.exponents.len()
    }

    pub fn weight(&self) -> u64 {
        self.exponents.iter().sum()
    }

    pub fn exponents(&self) -> &[u64] {
        &self.exponents
    }

    pub fn args(&self) -> &[LiArg] {
        &self.args
    }

    /// Divergent exactly when the leading entry is (1, 1).
    pub fn is_divergent(&self) -> bool {
        self.exponents[0] == 1 && self.args[0].is_one()
    }
}

impl fmt::Display for LiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Li(")?;
        for (i, s) in self.exponents.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{s}")?;
        }
        write!(f, ";")?;
        for (i, a) in self.args.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, ")")
    }
}

/// Expand a mixed value into a Q[i]-linear combination of Li indices at
/// fourth roots of unity, by writing each periodic summand factor in the
/// character basis x^m, x in {1, -1, i, -i}.
pub fn expand_m_to_li(idx: &MixedIndex) -> Vec<(GaussianRational, LiIndex)> {
    // (parity, sign) -> two (coefficient, character) pairs
    let char_pairs = |p: Parity, s: i8| -> [(GaussianRational, Unit); 2] {
        match (p, s) {
            (Parity::Even, 1) => [
                (GaussianRational::one(), Unit::ONE),
                (GaussianRational::one(), Unit::MINUS_ONE),
            ],
            (Parity::Even, -1) => [
                (GaussianRational::one(), Unit::I),
                (GaussianRational::one(), Unit::MINUS_I),
            ],
            (Parity::Odd, 1) => [
                (GaussianRational::one(), Unit::ONE),
                (-GaussianRational::one(), Unit::MINUS_ONE),
            ],
            (Parity::Odd, -1) => [
                (GaussianRational::i(), Unit::I),
                (-GaussianRational::i(), Unit::MINUS_I),
            ],
            _ => unreachable!(),
        }
    };
    let r = idx.depth();
    let mut out = Vec::with_capacity(1 << r);
    let mut stack: Vec<(GaussianRational, Vec<Unit>)> = vec![(GaussianRational::one(), vec![])];
    for lvl in 0..r {
        let pairs = char_pairs(idx.parities()[lvl], idx.signs()[lvl]);
        let mut next = Vec::with_capacity(stack.len() * 2);
        for (coeff, units) in stack {
            for (c, u) in &pairs {
                let mut units2 = units.clone();
                units2.push(*u);
                next.push((&coeff * c, units2));
            }
        }
        stack = next;
    }
    for (coeff, units) in stack {
        let li = LiIndex::at_units(idx.exponents().to_vec(), units)
            .expect("expansion preserves index validity");
        out.push((coeff, li));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_algebra() {
        assert_eq!(Unit::I.mul(Unit::I), Unit::MINUS_ONE);
        assert_eq!(Unit::MINUS_I.inv(), Unit::I);
        assert_eq!(Unit::I.pow(7), Unit::MINUS_I);
        assert_eq!(Unit::MINUS_ONE.pow(2), Unit::ONE);
    }

    #[test]
    fn t_and_s_parity_patterns() {
        let t = MixedIndex::t_value(vec![2, 1, 1], vec![1, 1, -1]).unwrap();
        assert_eq!(
            t.parities(),
            &[Parity::Odd, Parity::Even, Parity::Odd],
            "T pattern ends odd"
        );
        let s = MixedIndex::s_value(vec![2, 1, 1, 1], vec![1, 1, 1, -1]).unwrap();
        assert_eq!(
            s.parities(),
            &[Parity::Odd, Parity::Even, Parity::Odd, Parity::Even]
        );
    }

    #[test]
    fn expansion_m_ev_plus_depth1() {
        // M^{ev}_{+1}(2) = Li_2(1) + Li_2(-1)
        let idx = MixedIndex::new(vec![2], vec![1], vec![Parity::Even]).unwrap();
        let terms = expand_m_to_li(&idx);
        assert_eq!(terms.len(), 2);
        assert!(terms.iter().all(|(c, _)| *c == GaussianRational::one()));
        let units: Vec<_> = terms
            .iter()
            .map(|(_, li)| li.args()[0].as_unit().unwrap())
            .collect();
        assert_eq!(units, vec![Unit::ONE, Unit::MINUS_ONE]);
    }

    #[test]
    fn expansion_counts_and_validity() {
        let idx = MixedIndex::t_value(vec![2, 1, 1], vec![1, 1, -1]).unwrap();
        let terms = expand_m_to_li(&idx);
        assert_eq!(terms.len(), 8);
    }

    #[test]
    fn divergence_detection() {
        assert!(MixedIndex::t_value(vec![1, 1], vec![1, 1])
            .unwrap()
            .is_divergent());
        assert!(!MixedIndex::t_value(vec![1], vec![-1]).unwrap().is_divergent());
        let li = LiIndex::at_units(vec![1, 3], vec![Unit::ONE, Unit::MINUS_ONE]).unwrap();
        assert!(li.is_divergent());
    }

    #[test]
    fn li_depth_rules() {
        assert!(LiIndex::new(
            vec![1, 2],
            vec![
                LiArg::Rational(GaussianRational::from_ratio(1, 2)),
                LiArg::Unit(Unit::ONE)
            ]
        )
        .is_err());
        let half = GaussianRational::new(
            BigRational::new(1.into(), 2.into()),
            BigRational::new(1.into(), 2.into()),
        );
        assert!(LiIndex::depth_one(3, LiArg::Rational(half)).is_ok());
        let big = GaussianRational::from_int(2);
        assert!(LiIndex::depth_one(3, LiArg::Rational(big)).is_err());
    }
}
