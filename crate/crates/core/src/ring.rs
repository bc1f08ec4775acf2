//! Exact arithmetic in `Z[y^{1/2}, y^{-1/2}]`.
//!
//! Exponents are stored as counts of half-powers of `y`, so `y^{1/2}` has key
//! `1` and `y` has key `2`. Coefficients are arbitrary-precision integers and
//! zero coefficients are never stored.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// A Laurent polynomial in `y^{1/2}` with integer coefficients.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentY {
    terms: BTreeMap<i64, BigInt>,
}

impl LaurentY {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(0, c)
    }

    /// `coeff * y^{half_exp / 2}`.
    pub fn monomial(half_exp: i64, coeff: impl Into<BigInt>) -> Self {
        let coeff = coeff.into();
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(half_exp, coeff);
        }
        Self { terms }
    }

    /// Builds a polynomial from `(half_exp, coeff)` pairs, summing repeats.
    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, C)>,
        C: Into<BigInt>,
    {
        let mut out = Self::zero();
        for (e, c) in terms {
            out.add_term(e, c.into());
        }
        out
    }

    /// The quantum integer `[n]_y = y^{(n-1)/2} + ... + y^{-(n-1)/2}`.
    ///
    /// `[0]_y = 0` and `[-n]_y = -[n]_y`.
    pub fn quantum_integer(n: i64) -> Self {
        if n == 0 {
            return Self::zero();
        }
        let k = n.abs();
        let sign = if n < 0 { -1 } else { 1 };
        let terms = (0..k)
            .map(|j| (-(k - 1) + 2 * j, BigInt::from(sign)))
            .collect();
        Self { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    /// Iterates `(half_exp, coeff)` in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, half_exp: i64) -> BigInt {
        self.terms.get(&half_exp).cloned().unwrap_or_default()
    }

    pub fn min_half_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_half_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    fn add_term(&mut self, e: i64, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(e).or_default();
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let terms = self.terms.iter().map(|(e, x)| (*e, x * c)).collect();
        Self { terms }
    }

    /// Multiplies by `y^{half_shift / 2}`.
    pub fn shift(&self, half_shift: i64) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| (e + half_shift, c.clone()))
            .collect();
        Self { terms }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Gcd of all coefficients (zero for the zero polynomial), always non-negative.
    pub fn content(&self) -> BigInt {
        self.terms
            .values()
            .fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    /// Divides every coefficient by `d`, or `None` when some coefficient is not
    /// a multiple of `d`.
    pub fn div_integer(&self, d: &BigInt) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            let (q, r) = c.div_rem(d);
            if !r.is_zero() {
                return None;
            }
            terms.insert(*e, q);
        }
        Some(Self { terms })
    }

    /// Exact division in the Laurent ring. Returns `None` if `divisor` is zero
    /// or does not divide `self`.
    pub fn div_exact(&self, divisor: &LaurentY) -> Option<Self> {
        let (dmin, dmax) = (divisor.min_half_exp()?, divisor.max_half_exp()?);
        if self.is_zero() {
            return Some(Self::zero());
        }
        let lead = divisor.terms[&dmax].clone();
        let mut rem = self.clone();
        let mut quot = Self::zero();
        // Long division from the top exponent down; the remainder must vanish
        // before its span drops below the divisor's span.
        while let (Some(rmin), Some(rmax)) = (rem.min_half_exp(), rem.max_half_exp()) {
            if rmax - rmin < dmax - dmin {
                return None;
            }
            let c = &rem.terms[&rmax];
            let (q, r) = c.div_rem(&lead);
            if !r.is_zero() {
                return None;
            }
            let e = rmax - dmax;
            let step = divisor.shift(e).scale(&q);
            rem -= &step;
            quot.add_term(e, q);
        }
        Some(quot)
    }

    /// True iff the polynomial is invariant under `y^{1/2} -> y^{-1/2}`.
    pub fn is_symmetric(&self) -> bool {
        self.terms
            .iter()
            .all(|(e, c)| self.terms.get(&-e) == Some(c))
    }

    pub fn has_nonnegative_coeffs(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }

    /// True iff only integer powers of `y` occur.
    pub fn has_integer_exponents(&self) -> bool {
        self.terms.keys().all(|e| e % 2 == 0)
    }

    /// Substitutes `y^{1/2} = 1`.
    pub fn eval_at_one(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// Substitutes `y^{1/2} = i`, giving a Gaussian integer.
    pub fn eval_at_minus_one(&self) -> GaussianInt {
        let mut re = BigInt::zero();
        let mut im = BigInt::zero();
        for (e, c) in &self.terms {
            match e.rem_euclid(4) {
                0 => re += c,
                1 => im += c,
                2 => re -= c,
                _ => im -= c,
            }
        }
        GaussianInt { re, im }
    }

    pub fn eval(&self, point: EvalPoint) -> GaussianInt {
        match point {
            EvalPoint::One => GaussianInt::from(self.eval_at_one()),
            EvalPoint::MinusOne => self.eval_at_minus_one(),
        }
    }
}

/// Convenience wrapper for [`LaurentY::quantum_integer`].
pub fn quantum_integer(n: i64) -> LaurentY {
    LaurentY::quantum_integer(n)
}

/// Specialization points supported by [`LaurentY::eval`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EvalPoint {
    One,
    MinusOne,
}

/// `re + im * i` with integer parts.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct GaussianInt {
    pub re: BigInt,
    pub im: BigInt,
}

impl GaussianInt {
    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    /// The real part when the imaginary part vanishes.
    pub fn to_integer(&self) -> Option<BigInt> {
        self.is_real().then(|| self.re.clone())
    }
}

impl From<BigInt> for GaussianInt {
    fn from(re: BigInt) -> Self {
        Self {
            re,
            im: BigInt::zero(),
        }
    }
}

impl From<i64> for GaussianInt {
    fn from(re: i64) -> Self {
        Self::from(BigInt::from(re))
    }
}

impl fmt::Display for GaussianInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", self.re);
        }
        let im_abs = self.im.abs();
        let im_str = if im_abs.is_one() {
            "i".to_string()
        } else {
            format!("{im_abs}i")
        };
        if self.re.is_zero() {
            if self.im.is_negative() {
                write!(f, "-{im_str}")
            } else {
                write!(f, "{im_str}")
            }
        } else {
            let sign = if self.im.is_negative() { '-' } else { '+' };
            write!(f, "{}{sign}{im_str}", self.re)
        }
    }
}

impl From<i64> for LaurentY {
    fn from(c: i64) -> Self {
        Self::constant(c)
    }
}

impl From<BigInt> for LaurentY {
    fn from(c: BigInt) -> Self {
        Self::constant(c)
    }
}

impl AddAssign<&LaurentY> for LaurentY {
    fn add_assign(&mut self, rhs: &LaurentY) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, c.clone());
        }
    }
}

impl SubAssign<&LaurentY> for LaurentY {
    fn sub_assign(&mut self, rhs: &LaurentY) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, -c);
        }
    }
}

impl Add<&LaurentY> for &LaurentY {
    type Output = LaurentY;
    fn add(self, rhs: &LaurentY) -> LaurentY {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for LaurentY {
    type Output = LaurentY;
    fn add(mut self, rhs: LaurentY) -> LaurentY {
        self += &rhs;
        self
    }
}

impl Sub<&LaurentY> for &LaurentY {
    type Output = LaurentY;
    fn sub(self, rhs: &LaurentY) -> LaurentY {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for LaurentY {
    type Output = LaurentY;
    fn sub(mut self, rhs: LaurentY) -> LaurentY {
        self -= &rhs;
        self
    }
}

impl Neg for &LaurentY {
    type Output = LaurentY;
    fn neg(self) -> LaurentY {
        let terms = self.terms.iter().map(|(e, c)| (*e, -c)).collect();
        LaurentY { terms }
    }
}

impl Neg for LaurentY {
    type Output = LaurentY;
    fn neg(self) -> LaurentY {
        -&self
    }
}

impl Mul<&LaurentY> for &LaurentY {
    type Output = LaurentY;
    fn mul(self, rhs: &LaurentY) -> LaurentY {
        let mut out = LaurentY::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl Mul for LaurentY {
    type Output = LaurentY;
    fn mul(self, rhs: LaurentY) -> LaurentY {
        &self * &rhs
    }
}

impl MulAssign<&LaurentY> for LaurentY {
    fn mul_assign(&mut self, rhs: &LaurentY) {
        *self = &*self * rhs;
    }
}

impl Mul<&BigInt> for &LaurentY {
    type Output = LaurentY;
    fn mul(self, rhs: &BigInt) -> LaurentY {
        self.scale(rhs)
    }
}

impl Mul<i64> for &LaurentY {
    type Output = LaurentY;
    fn mul(self, rhs: i64) -> LaurentY {
        self.scale(&BigInt::from(rhs))
    }
}

impl std::iter::Sum for LaurentY {
    fn sum<I: Iterator<Item = LaurentY>>(iter: I) -> Self {
        iter.fold(LaurentY::zero(), |acc, p| acc + p)
    }
}

impl std::iter::Product for LaurentY {
    fn product<I: Iterator<Item = LaurentY>>(iter: I) -> Self {
        iter.fold(LaurentY::one(), |acc, p| acc * p)
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, e: i64) -> fmt::Result {
    match (e, e % 2 == 0) {
        (2, _) => write!(f, "y"),
        (_, true) => write!(f, "y^{}", e / 2),
        (_, false) => write!(f, "y^{}/2", e),
    }
}

impl fmt::Display for LaurentY {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if *e == 0 {
                write!(f, "{abs}")?;
            } else {
                if !abs.is_one() {
                    write!(f, "{abs}*")?;
                }
                write_monomial(f, *e)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentY {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentY({self})")
    }
}

#[derive(Serialize, Deserialize)]
struct LaurentWire {
    halfpowers: bool,
    terms: Vec<(i64, String)>,
}

impl Serialize for LaurentY {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        LaurentWire {
            halfpowers: true,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (*e, c.to_string()))
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for LaurentY {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let wire = LaurentWire::deserialize(deserializer)?;
        if !wire.halfpowers {
            return Err(D::Error::custom("expected halfpowers: true"));
        }
        let mut out = LaurentY::zero();
        for (e, c) in wire.terms {
            let c: BigInt = c
                .parse()
                .map_err(|_| D::Error::custom(format!("invalid coefficient {c:?}")))?;
            out.add_term(e, c);
        }
        Ok(out)
    }
}

/// A Laurent polynomial divided by a positive integer.
///
/// Intermediate Fock-space coefficients carry factorial denominators from the
/// normalized operators; final invariants must clear to denominator one.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalLaurentY {
    num: LaurentY,
    den: BigInt,
}

impl RationalLaurentY {
    pub fn zero() -> Self {
        Self::from(LaurentY::zero())
    }

    pub fn one() -> Self {
        Self::from(LaurentY::one())
    }

    /// `num / den`; panics if `den` is zero. The sign is moved into the numerator.
    pub fn new(num: LaurentY, den: BigInt) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        let (num, den) = if den.is_negative() {
            (-num, -den)
        } else {
            (num, den)
        };
        let mut out = Self { num, den };
        out.reduce();
        out
    }

    pub fn numerator(&self) -> &LaurentY {
        &self.num
    }

    pub fn denominator(&self) -> &BigInt {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn reduce(&mut self) {
        if self.num.is_zero() {
            self.den = BigInt::one();
            return;
        }
        if self.den.is_one() {
            return;
        }
        let g = self.num.content().gcd(&self.den);
        if !g.is_one() {
            self.num = self.num.div_integer(&g).expect("gcd divides content");
            self.den /= g;
        }
    }

    /// The underlying polynomial when the denominator is one.
    pub fn to_laurent(&self) -> Option<LaurentY> {
        self.den.is_one().then(|| self.num.clone())
    }

    pub fn scale_ratio(&self, num: &BigInt, den: &BigInt) -> Self {
        Self::new(self.num.scale(num), &self.den * den)
    }

    pub fn mul_laurent(&self, p: &LaurentY) -> Self {
        Self::new(&self.num * p, self.den.clone())
    }
}

impl From<LaurentY> for RationalLaurentY {
    fn from(num: LaurentY) -> Self {
        Self {
            num,
            den: BigInt::one(),
        }
    }
}

impl AddAssign<&RationalLaurentY> for RationalLaurentY {
    fn add_assign(&mut self, rhs: &RationalLaurentY) {
        if rhs.is_zero() {
            return;
        }
        if self.den == rhs.den {
            self.num += &rhs.num;
        } else {
            let l = self.den.lcm(&rhs.den);
            let a = &l / &self.den;
            let b = &l / &rhs.den;
            self.num = &self.num.scale(&a) + &rhs.num.scale(&b);
            self.den = l;
        }
        self.reduce();
    }
}

impl Add<&RationalLaurentY> for &RationalLaurentY {
    type Output = RationalLaurentY;
    fn add(self, rhs: &RationalLaurentY) -> RationalLaurentY {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Neg for &RationalLaurentY {
    type Output = RationalLaurentY;
    fn neg(self) -> RationalLaurentY {
        RationalLaurentY {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Sub<&RationalLaurentY> for &RationalLaurentY {
    type Output = RationalLaurentY;
    fn sub(self, rhs: &RationalLaurentY) -> RationalLaurentY {
        self + &(-rhs)
    }
}

impl Mul<&RationalLaurentY> for &RationalLaurentY {
    type Output = RationalLaurentY;
    fn mul(self, rhs: &RationalLaurentY) -> RationalLaurentY {
        RationalLaurentY::new(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl fmt::Display for RationalLaurentY {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else if self.num.num_terms() == 1 {
            write!(f, "{}/{}", self.num, self.den)
        } else {
            write!(f, "({})/{}", self.num, self.den)
        }
    }
}

impl fmt::Debug for RationalLaurentY {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalLaurentY({self})")
    }
}
