//! Exact combinatorial engine for iterated-integral words over the alphabet
//! {0, 1, -1, i, -i}: shuffle product, shuffle antipode, regularisation with
//! the log(0) := 0 convention, conversion to and from polylogarithm indices,
//! and the quasi-shuffle (stuffle) product on those indices.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::gaussian::GaussianRational;
use crate::index::{LiIndex, Unit};
use crate::nested;
use crate::precision::{BigComplex, BigReal, PrecisionContext};

/// A letter of the word alphabet.  Ordering is the canonical key order
/// 0 < 1 < -1 < i < -i.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Letter {
    Zero,
    Unit(Unit),
}

impl Letter {
    pub const ONE: Letter = Letter::Unit(Unit::ONE);
    pub const MINUS_ONE: Letter = Letter::Unit(Unit::MINUS_ONE);
    pub const I: Letter = Letter::Unit(Unit::I);
    pub const MINUS_I: Letter = Letter::Unit(Unit::MINUS_I);

    fn rank(self) -> u8 {
        match self {
            Letter::Zero => 0,
            Letter::Unit(u) => match u {
                Unit::ONE => 1,
                Unit::MINUS_ONE => 2,
                Unit::I => 3,
                _ => 4,
            },
        }
    }

    /// Divide by a unit (the affine rescaling x -> x/a fixes 0).
    fn div_unit(self, a: Unit) -> Letter {
        match self {
            Letter::Zero => Letter::Zero,
            Letter::Unit(u) => Letter::Unit(u.mul(a.inv())),
        }
    }
}

impl PartialOrd for Letter {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Letter {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.rank().cmp(&other.rank())
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Letter::Zero => write!(f, "0"),
            Letter::Unit(u) => write!(f, "{u}"),
        }
    }
}

/// Iterated-integral word I(upper; letters; lower).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct IIWord {
    pub upper: Letter,
    pub letters: Vec<Letter>,
    pub lower: Letter,
}

impl IIWord {
    pub fn new(upper: Letter, letters: Vec<Letter>, lower: Letter) -> Self {
        IIWord {
            upper,
            letters,
            lower,
        }
    }

    /// Canonical-bound word I(1; letters; 0).
    pub fn canonical(letters: Vec<Letter>) -> Self {
        IIWord::new(Letter::ONE, letters, Letter::Zero)
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_convergent(&self) -> bool {
        match (self.letters.first(), self.letters.last()) {
            (Some(&f), Some(&l)) => f != self.upper && l != self.lower,
            _ => true,
        }
    }
}

impl fmt::Display for IIWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "I({}; ", self.upper)?;
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{l}")?;
        }
        write!(f, "; {})", self.lower)
    }
}

/// Gaussian-rational combination of words sharing bounds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WordCombo {
    pub upper: Letter,
    pub lower: Letter,
    terms: BTreeMap<Vec<Letter>, GaussianRational>,
}

impl WordCombo {
    pub fn zero(upper: Letter, lower: Letter) -> Self {
        WordCombo {
            upper,
            lower,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_word(w: &IIWord) -> Self {
        let mut c = WordCombo::zero(w.upper, w.lower);
        c.add(w.letters.clone(), GaussianRational::one());
        c
    }

    pub fn add(&mut self, letters: Vec<Letter>, coeff: GaussianRational) {
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(letters) {
            Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
        }
    }

    pub fn add_combo(&mut self, other: &WordCombo) {
        assert!(self.upper == other.upper && self.lower == other.lower);
        for (w, c) in &other.terms {
            self.add(w.clone(), c.clone());
        }
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        let mut out = WordCombo::zero(self.upper, self.lower);
        for (w, v) in &self.terms {
            out.add(w.clone(), v * c);
        }
        out
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<Letter>, &GaussianRational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient_sum(&self) -> GaussianRational {
        let mut s = GaussianRational::zero();
        for c in self.terms.values() {
            s += c.clone();
        }
        s
    }

    pub fn word(&self, letters: &[Letter]) -> GaussianRational {
        self.terms
            .get(letters)
            .cloned()
            .unwrap_or_else(GaussianRational::zero)
    }
}

fn shuffle_letters(u: &[Letter], v: &[Letter], out: &mut WordCombo, coeff: &GaussianRational) {
    fn rec(
        u: &[Letter],
        v: &[Letter],
        acc: &mut Vec<Letter>,
        out: &mut WordCombo,
        coeff: &GaussianRational,
    ) {
        if u.is_empty() {
            let mut w = acc.clone();
            w.extend_from_slice(v);
            out.add(w, coeff.clone());
            return;
        }
        if v.is_empty() {
            let mut w = acc.clone();
            w.extend_from_slice(u);
            out.add(w, coeff.clone());
            return;
        }
        acc.push(u[0]);
        rec(&u[1..], v, acc, out, coeff);
        acc.pop();
        acc.push(v[0]);
        rec(u, &v[1..], acc, out, coeff);
        acc.pop();
    }
    let mut acc = Vec::with_capacity(u.len() + v.len());
    rec(u, v, &mut acc, out, coeff);
}

/// Shuffle product of two words with common bounds.
pub fn shuffle(w1: &IIWord, w2: &IIWord) -> Result<WordCombo> {
    if w1.upper != w2.upper || w1.lower != w2.lower {
        return Err(Error::BoundMismatch(format!("{w1} vs {w2}")));
    }
    let mut out = WordCombo::zero(w1.upper, w1.lower);
    shuffle_letters(&w1.letters, &w2.letters, &mut out, &GaussianRational::one());
    Ok(out)
}

/// Shuffle product of two combos with common bounds.
pub fn shuffle_combo(a: &WordCombo, b: &WordCombo) -> Result<WordCombo> {
    if a.upper != b.upper || a.lower != b.lower {
        return Err(Error::BoundMismatch("combo bounds differ".into()));
    }
    let mut out = WordCombo::zero(a.upper, a.lower);
    for (w1, c1) in &a.terms {
        for (w2, c2) in &b.terms {
            shuffle_letters(w1, w2, &mut out, &(c1 * c2));
        }
    }
    Ok(out)
}

/// The shuffle-antipode combination sum_{i=0}^{n} (-1)^i
/// (prefix of length i) shuffled with (reversed suffix); it evaluates to
/// zero for every word.
pub fn antipode_combo(w: &IIWord) -> WordCombo {
    let n = w.len();
    let mut out = WordCombo::zero(w.upper, w.lower);
    for i in 0..=n {
        let prefix: Vec<Letter> = w.letters[..i].to_vec();
        let mut rev_suffix: Vec<Letter> = w.letters[i..].to_vec();
        rev_suffix.reverse();
        let sign = if i % 2 == 0 {
            GaussianRational::one()
        } else {
            -GaussianRational::one()
        };
        shuffle_letters(&prefix, &rev_suffix, &mut out, &sign);
    }
    out
}

/// Word of Li_{s_1..s_r}(x_1..x_r), with its sign (-1)^r:
/// Li = sign * I(1; 0^{s1-1}, 1/x1, ..., 0^{sr-1}, 1/(x1..xr); 0).
pub fn li_to_word(idx: &LiIndex) -> Result<(i8, IIWord)> {
    let mut letters = Vec::with_capacity(idx.weight() as usize);
    let mut prod = Unit::ONE;
    for (i, &s) in idx.exponents().iter().enumerate() {
        let unit = idx.args()[i]
            .as_unit()
            .ok_or_else(|| Error::ArgumentNotUnit(idx.to_string()))?;
        prod = prod.mul(unit);
        for _ in 1..s {
            letters.push(Letter::Zero);
        }
        letters.push(Letter::Unit(prod.inv()));
    }
    let sign = if idx.depth() % 2 == 0 { 1 } else { -1 };
    Ok((sign, IIWord::canonical(letters)))
}

/// Inverse of `li_to_word` for convergent canonical-bound words.
pub fn word_to_li(w: &IIWord) -> Result<(i8, LiIndex)> {
    if w.upper != Letter::ONE || w.lower != Letter::Zero {
        return Err(Error::BoundMismatch(format!(
            "expected bounds (1, 0), got {w}"
        )));
    }
    if w.is_empty() {
        return Err(Error::MalformedWord("empty word has no Li index".into()));
    }
    if w.letters.last() == Some(&Letter::Zero) {
        return Err(Error::MalformedWord(format!("trailing zero in {w}")));
    }
    if !w.is_convergent() {
        return Err(Error::NotConvergent(w.to_string()));
    }
    let mut exponents = Vec::new();
    let mut units = Vec::new();
    let mut zeros = 0u64;
    for &l in &w.letters {
        match l {
            Letter::Zero => zeros += 1,
            Letter::Unit(u) => {
                exponents.push(zeros + 1);
                units.push(u);
                zeros = 0;
            }
        }
    }
    // y_i = (x_1 ... x_i)^{-1}  =>  x_i = y_{i-1} / y_i
    let mut args = Vec::with_capacity(units.len());
    let mut prev = Unit::ONE;
    for &y in &units {
        args.push(prev.mul(y.inv()));
        prev = y;
    }
    let sign = if units.len() % 2 == 0 { 1 } else { -1 };
    Ok((sign, LiIndex::at_units(exponents, args)?))
}

/// Shuffle regularisation with log(0) := 0: expresses a canonical-bound word
/// as a combination of convergent words; divergent pure-log pieces vanish.
pub fn reg_shuffle(w: &IIWord) -> Result<WordCombo> {
    if w.upper != Letter::ONE || w.lower != Letter::Zero {
        return Err(Error::BoundMismatch(format!(
            "regularisation expects bounds (1, 0), got {w}"
        )));
    }
    let mut out = WordCombo::zero(w.upper, w.lower);
    reg_letters(&w.letters, &GaussianRational::one(), &mut out)?;
    Ok(out)
}

fn reg_letters(letters: &[Letter], coeff: &GaussianRational, out: &mut WordCombo) -> Result<()> {
    if letters.is_empty() {
        out.add(vec![], coeff.clone());
        return Ok(());
    }
    // strip trailing zeros first
    if letters.last() == Some(&Letter::Zero) {
        let k = letters
            .iter()
            .rev()
            .take_while(|&&l| l == Letter::Zero)
            .count();
        if k == letters.len() {
            // I(1; 0^k; 0) is a pure power of log(0) and log(1): zero
            return Ok(());
        }
        // shuffle(v 0^{k-1}, [0]) contains the word with multiplicity k and
        // regularises to reg(v 0^{k-1}) * I(1;0;0) = 0
        let base = &letters[..letters.len() - 1];
        let mut sh = WordCombo::zero(Letter::ONE, Letter::Zero);
        shuffle_letters(base, &[Letter::Zero], &mut sh, &GaussianRational::one());
        let inv_k = GaussianRational::from_ratio(1, k as i64);
        for (u, c) in sh.terms {
            if u == letters {
                continue;
            }
            let scaled = -(&(&c * coeff) * &inv_k);
            reg_letters(&u, &scaled, out)?;
        }
        return Ok(());
    }
    // then strip leading ones (the upper bound letter)
    if letters.first() == Some(&Letter::ONE) {
        let base = &letters[1..];
        let mut sh = WordCombo::zero(Letter::ONE, Letter::Zero);
        shuffle_letters(&[Letter::ONE], base, &mut sh, &GaussianRational::one());
        let self_coeff = sh.word(letters);
        let inv_self = self_coeff.recip();
        for (u, c) in sh.terms {
            if u == letters {
                continue;
            }
            let scaled = -(&(&c * coeff) * &inv_self);
            reg_letters(&u, &scaled, out)?;
        }
        return Ok(());
    }
    out.add(letters.to_vec(), coeff.clone());
    Ok(())
}

/// Quasi-shuffle (stuffle) product of two polylogarithm indices at fourth
/// roots of unity: interleavings plus contractions in which exponents add
/// and arguments multiply.  Divergent indices are allowed symbolically.
pub fn stuffle(a: &LiIndex, b: &LiIndex) -> Result<Vec<(GaussianRational, LiIndex)>> {
    let ua: Vec<(u64, Unit)> = index_units(a)?;
    let ub: Vec<(u64, Unit)> = index_units(b)?;
    let mut acc: BTreeMap<Vec<(u64, Unit)>, GaussianRational> = BTreeMap::new();
    fn rec(
        x: &[(u64, Unit)],
        y: &[(u64, Unit)],
        acc: &mut BTreeMap<Vec<(u64, Unit)>, GaussianRational>,
        prefix: &mut Vec<(u64, Unit)>,
    ) {
        if x.is_empty() || y.is_empty() {
            let mut w = prefix.clone();
            w.extend_from_slice(x);
            w.extend_from_slice(y);
            *acc.entry(w).or_insert_with(GaussianRational::zero) += GaussianRational::one();
            return;
        }
        prefix.push(x[0]);
        rec(&x[1..], y, acc, prefix);
        prefix.pop();
        prefix.push(y[0]);
        rec(x, &y[1..], acc, prefix);
        prefix.pop();
        prefix.push((x[0].0 + y[0].0, x[0].1.mul(y[0].1)));
        rec(&x[1..], &y[1..], acc, prefix);
        prefix.pop();
    }
    let mut prefix = Vec::new();
    rec(&ua, &ub, &mut acc, &mut prefix);
    let mut out = Vec::with_capacity(acc.len());
    for (w, c) in acc {
        let (exps, units): (Vec<u64>, Vec<Unit>) = w.into_iter().unzip();
        out.push((c, LiIndex::at_units(exps, units)?));
    }
    Ok(out)
}

fn index_units(idx: &LiIndex) -> Result<Vec<(u64, Unit)>> {
    idx.exponents()
        .iter()
        .zip(idx.args())
        .map(|(&s, a)| {
            a.as_unit()
                .map(|u| (s, u))
                .ok_or_else(|| Error::ArgumentNotUnit(idx.to_string()))
        })
        .collect()
}

/// Numeric value of a word: bounds are reduced to (1, 0) by the affine map
/// x -> x/upper when the lower bound is 0, the word is shuffle-regularised,
/// and the convergent pieces are evaluated through their Li indices.
pub fn eval_word(w: &IIWord, ctx: PrecisionContext, budget: u64) -> Result<(BigComplex, BigReal)> {
    let canonical = if w.upper == Letter::ONE && w.lower == Letter::Zero {
        w.clone()
    } else if w.lower == Letter::Zero {
        match w.upper {
            Letter::Unit(a) => {
                IIWord::canonical(w.letters.iter().map(|l| l.div_unit(a)).collect())
            }
            Letter::Zero => {
                return Err(Error::BoundMismatch("upper bound 0".into()));
            }
        }
    } else {
        return Err(Error::BoundMismatch(format!(
            "cannot reduce bounds of {w} to (1, 0)"
        )));
    };
    let reg = reg_shuffle(&canonical)?;
    eval_reg_combo(&reg, ctx, budget)
}

/// Numeric value of a combo of words (regularising each term).
pub fn eval_combo(
    combo: &WordCombo,
    ctx: PrecisionContext,
    budget: u64,
) -> Result<(BigComplex, BigReal)> {
    let mut value = BigComplex::zero(ctx);
    let mut err = BigReal::zero(ctx);
    for (letters, c) in combo.terms() {
        let w = IIWord::new(combo.upper, letters.clone(), combo.lower);
        let (v, e) = eval_word(&w, ctx, budget)?;
        let cc = gaussian_to_complex(c, ctx);
        value = value.add(&v.mul(&cc));
        err = err.add(&e.mul(&cc.abs()));
    }
    Ok((value, err))
}

fn eval_reg_combo(
    reg: &WordCombo,
    ctx: PrecisionContext,
    budget: u64,
) -> Result<(BigComplex, BigReal)> {
    let mut value = BigComplex::zero(ctx);
    let mut err = BigReal::zero(ctx);
    for (letters, c) in reg.terms() {
        let cc = gaussian_to_complex(c, ctx);
        if letters.is_empty() {
            value = value.add(&cc);
            continue;
        }
        let w = IIWord::new(reg.upper, letters.clone(), reg.lower);
        let (sign, li) = word_to_li(&w)?;
        let rep = nested::eval_li(&li, ctx, budget, None)?;
        let signed = if sign < 0 { rep.value.neg() } else { rep.value };
        value = value.add(&signed.mul(&cc));
        err = err.add(&rep.error_estimate.mul(&cc.abs()));
    }
    Ok((value, err))
}

pub(crate) fn gaussian_to_complex(c: &GaussianRational, ctx: PrecisionContext) -> BigComplex {
    BigComplex::new(
        crate::constants::ratio_to_real(&c.re, ctx),
        crate::constants::ratio_to_real(&c.im, ctx),
    )
}

/// Parse the text syntax `I(1; -1,0,0,1; 0)`.
pub fn parse_word(s: &str) -> Result<IIWord> {
    let t = s.trim();
    let inner = t
        .strip_prefix("I(")
        .and_then(|x| x.strip_suffix(')'))
        .ok_or_else(|| Error::Parse(format!("expected I(...; ...; ...), got {s}")))?;
    let parts: Vec<&str> = inner.split(';').collect();
    if parts.len() != 3 {
        return Err(Error::Parse("word needs three ;-separated fields".into()));
    }
    let parse_letter = |x: &str| -> Result<Letter> {
        match x.trim() {
            "0" => Ok(Letter::Zero),
            "1" => Ok(Letter::ONE),
            "-1" => Ok(Letter::MINUS_ONE),
            "i" => Ok(Letter::I),
            "-i" => Ok(Letter::MINUS_I),
            other => Err(Error::Parse(format!("bad letter '{other}'"))),
        }
    };
    let upper = parse_letter(parts[0])?;
    let lower = parse_letter(parts[2])?;
    let letters = if parts[1].trim().is_empty() {
        vec![]
    } else {
        parts[1]
            .split(',')
            .map(parse_letter)
            .collect::<Result<Vec<_>>>()?
    };
    Ok(IIWord::new(upper, letters, lower))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shuffle_small_cases() {
        let e = IIWord::canonical(vec![]);
        let w = IIWord::canonical(vec![Letter::Zero, Letter::ONE]);
        let r = shuffle(&e, &w).unwrap();
        assert_eq!(r.len(), 1);
        assert_eq!(r.word(&w.letters), GaussianRational::one());
        let a = IIWord::canonical(vec![Letter::Zero]);
        let b = IIWord::canonical(vec![Letter::ONE]);
        let r = shuffle(&a, &b).unwrap();
        assert_eq!(r.word(&[Letter::Zero, Letter::ONE]), GaussianRational::one());
        assert_eq!(r.word(&[Letter::ONE, Letter::Zero]), GaussianRational::one());
    }

    #[test]
    fn shuffle_coefficient_sum_is_binomial() {
        let a = IIWord::canonical(vec![Letter::Zero, Letter::ONE]);
        let b = IIWord::canonical(vec![Letter::MINUS_ONE, Letter::Zero, Letter::I]);
        let r = shuffle(&a, &b).unwrap();
        // C(5, 2) = 10
        assert_eq!(r.coefficient_sum(), GaussianRational::from_int(10));
    }

    #[test]
    fn bound_mismatch_rejected() {
        let a = IIWord::canonical(vec![Letter::Zero]);
        let b = IIWord::new(Letter::MINUS_I, vec![Letter::Zero], Letter::Zero);
        assert!(matches!(shuffle(&a, &b), Err(Error::BoundMismatch(_))));
    }

    #[test]
    fn li_word_round_trip() {
        // Li_2(1) -> (-1, I(1; 0, 1; 0))
        let li = LiIndex::at_units(vec![2], vec![Unit::ONE]).unwrap();
        let (sign, w) = li_to_word(&li).unwrap();
        assert_eq!(sign, -1);
        assert_eq!(w.letters, vec![Letter::Zero, Letter::ONE]);
        let (s2, li2) = word_to_li(&w).unwrap();
        assert_eq!(s2, -1);
        assert_eq!(li2, li);
        // Li_{1,m+1}(i,1) -> (+1, I(1; -i, 0^m, -i; 0)) at m = 2
        let li = LiIndex::at_units(vec![1, 3], vec![Unit::I, Unit::ONE]).unwrap();
        let (sign, w) = li_to_word(&li).unwrap();
        assert_eq!(sign, 1);
        assert_eq!(
            w.letters,
            vec![Letter::MINUS_I, Letter::Zero, Letter::Zero, Letter::MINUS_I]
        );
        let (_, li2) = word_to_li(&w).unwrap();
        assert_eq!(li2, li);
    }

    #[test]
    fn word_to_li_errors() {
        let trailing = IIWord::canonical(vec![Letter::ONE, Letter::Zero]);
        assert!(matches!(word_to_li(&trailing), Err(Error::MalformedWord(_))));
        let leading = IIWord::canonical(vec![Letter::ONE, Letter::MINUS_ONE]);
        assert!(matches!(word_to_li(&leading), Err(Error::NotConvergent(_))));
    }

    #[test]
    fn reg_shuffle_basics() {
        let w = IIWord::canonical(vec![Letter::Zero, Letter::ONE]);
        let r = reg_shuffle(&w).unwrap();
        assert_eq!(r.len(), 1);
        assert_eq!(r.word(&w.letters), GaussianRational::one());
        // I(1; 1; 0) -> 0 under log(0) := 0
        let d = IIWord::canonical(vec![Letter::ONE]);
        assert!(reg_shuffle(&d).unwrap().is_empty());
        // I(1; 1, 0; 0) -> -I(1; 0, 1; 0)
        let w = IIWord::canonical(vec![Letter::ONE, Letter::Zero]);
        let r = reg_shuffle(&w).unwrap();
        assert_eq!(r.len(), 1);
        assert_eq!(
            r.word(&[Letter::Zero, Letter::ONE]),
            -GaussianRational::one()
        );
    }

    #[test]
    fn stuffle_depth_one() {
        // Li_a(x) Li_b(y) = Li_{a,b}(x,y) + Li_{b,a}(y,x) + Li_{a+b}(xy)
        let a = LiIndex::at_units(vec![2], vec![Unit::I]).unwrap();
        let b = LiIndex::at_units(vec![3], vec![Unit::MINUS_ONE]).unwrap();
        let terms = stuffle(&a, &b).unwrap();
        assert_eq!(terms.len(), 3);
        let want = [
            LiIndex::at_units(vec![2, 3], vec![Unit::I, Unit::MINUS_ONE]).unwrap(),
            LiIndex::at_units(vec![3, 2], vec![Unit::MINUS_ONE, Unit::I]).unwrap(),
            LiIndex::at_units(vec![5], vec![Unit::MINUS_I]).unwrap(),
        ];
        for w in &want {
            assert!(
                terms
                    .iter()
                    .any(|(c, t)| t == w && *c == GaussianRational::one()),
                "missing {w}"
            );
        }
    }

    #[test]
    fn antipode_small_word_vanishes_numerically() {
        let ctx = PrecisionContext::default();
        let w = IIWord::canonical(vec![Letter::Zero, Letter::MINUS_ONE]);
        let combo = antipode_combo(&w);
        let (v, e) = eval_combo(&combo, ctx, 1 << 14).unwrap();
        assert!(
            v.abs().to_f64() < e.to_f64().max(1e-10),
            "antipode value {} err {}",
            v.abs().to_f64(),
            e.to_f64()
        );
    }

    #[test]
    fn eval_word_affine_reduction() {
        // I(-1; 0, 1; 0) rescales to I(1; 0, -1; 0) = -Li_2(-1) = pi^2/12
        let ctx = PrecisionContext::default();
        let w = IIWord::new(
            Letter::MINUS_ONE,
            vec![Letter::Zero, Letter::ONE],
            Letter::Zero,
        );
        let (v, _e) = eval_word(&w, ctx, 1 << 14).unwrap();
        let pi = crate::constants::const_pi(ctx);
        let want = pi.mul(&pi).div_u64(12);
        assert!(v.re.sub(&want).abs().to_f64() < 1e-10);
    }

    #[test]
    fn parse_word_syntax() {
        let w = parse_word("I(1; -1,0,0,1; 0)").unwrap();
        assert_eq!(w.upper, Letter::ONE);
        assert_eq!(
            w.letters,
            vec![Letter::MINUS_ONE, Letter::Zero, Letter::Zero, Letter::ONE]
        );
        assert_eq!(w.lower, Letter::Zero);
        assert!(parse_word("I(1; 2; 0)").is_err());
    }

    #[test]
    fn shuffle_vs_stuffle_regularisation() {
        // word of Li_{1,3}(1,-1) regularises to the stuffle value
        // -Li_{3,1}(-1,1) - Li_4(-1) after dropping the divergent factor
        let ctx = PrecisionContext::default();
        let li = LiIndex::at_units(vec![1, 3], vec![Unit::ONE, Unit::MINUS_ONE]).unwrap();
        let (sign, w) = li_to_word(&li).unwrap();
        let reg = reg_shuffle(&w).unwrap();
        let (v, e) = eval_reg_combo(&reg, ctx, 1 << 15).unwrap();
        let value = if sign < 0 { v.neg() } else { v };
        let li31 = LiIndex::at_units(vec![3, 1], vec![Unit::MINUS_ONE, Unit::ONE]).unwrap();
        let r31 = nested::eval_li(&li31, ctx, 1 << 15, None).unwrap();
        let li4 = LiIndex::at_units(vec![4], vec![Unit::MINUS_ONE]).unwrap();
        let r4 = nested::eval_li(&li4, ctx, 1 << 15, None).unwrap();
        let want = r31.value.neg().sub(&r4.value);
        let d = value.sub(&want).abs().to_f64();
        let allowed =
            (e.to_f64() + r31.error_estimate.to_f64() + r4.error_estimate.to_f64()).max(1e-9);
        assert!(d < allowed, "shuffle vs stuffle regularisation differ by {d}");
    }
}
