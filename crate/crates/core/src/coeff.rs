//! Exact structure-constant coefficients.
//!
//! A [`Coefficient`] is a rational scale times a monomial in the kinematical
//! parameters (`c`, `r`, `tau`) or the dynamical ones (`m`, `C`, `E0`), with
//! half-integer exponents and an optional factor of the family sign `s`.
//! The two bases are related by `c^2 = E0/m`, `tau^2 = m C`, `r^2 = C E0`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Shorthand for the rational `num/den`.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ParamBasis {
    Kinematical,
    Dynamical,
}

impl ParamBasis {
    pub fn params(self) -> [Param; 3] {
        match self {
            ParamBasis::Kinematical => [Param::Speed, Param::Radius, Param::Period],
            ParamBasis::Dynamical => [Param::Mass, Param::Compliance, Param::Energy],
        }
    }

    pub fn other(self) -> ParamBasis {
        match self {
            ParamBasis::Kinematical => ParamBasis::Dynamical,
            ParamBasis::Dynamical => ParamBasis::Kinematical,
        }
    }
}

/// Declaration order is the canonical print order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Param {
    /// speed of light `c`
    Speed,
    /// universe radius `r`
    Radius,
    /// universe period `tau`
    Period,
    /// mass `m`
    Mass,
    /// compliance `C`
    Compliance,
    /// energy scale `E0`
    Energy,
}

impl Param {
    pub const ALL: [Param; 6] = [
        Param::Speed,
        Param::Radius,
        Param::Period,
        Param::Mass,
        Param::Compliance,
        Param::Energy,
    ];

    pub fn basis(self) -> ParamBasis {
        match self {
            Param::Speed | Param::Radius | Param::Period => ParamBasis::Kinematical,
            Param::Mass | Param::Compliance | Param::Energy => ParamBasis::Dynamical,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Param::Speed => "c",
            Param::Radius => "r",
            Param::Period => "tau",
            Param::Mass => "m",
            Param::Compliance => "C",
            Param::Energy => "E0",
        }
    }

    fn pretty_symbol(self) -> &'static str {
        match self {
            Param::Period => "τ",
            p => p.symbol(),
        }
    }
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

impl FromStr for Param {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "c" => Ok(Param::Speed),
            "r" => Ok(Param::Radius),
            "tau" | "τ" => Ok(Param::Period),
            "m" => Ok(Param::Mass),
            "C" => Ok(Param::Compliance),
            "E0" | "E₀" => Ok(Param::Energy),
            other => Err(Error::Parse(format!("unknown parameter `{other}`"))),
        }
    }
}

/// The family sign `s` of the dS±, NH±, P±, G± pairs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn from_value(v: i64) -> Option<Sign> {
        match v {
            1 => Some(Sign::Plus),
            -1 => Some(Sign::Minus),
            _ => None,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        }
    }
}

/// A half-integer, stored as twice its value.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HalfInt(i32);

impl HalfInt {
    pub const ZERO: HalfInt = HalfInt(0);

    pub fn int(n: i32) -> Self {
        HalfInt(2 * n)
    }

    /// `numer/2`.
    pub fn halves(numer: i32) -> Self {
        HalfInt(numer)
    }

    /// Builds `num/den`; `den` must be 1 or 2 after reduction.
    pub fn new(num: i32, den: i32) -> Option<Self> {
        match den {
            1 => Some(HalfInt(2 * num)),
            -1 => Some(HalfInt(-2 * num)),
            2 => Some(HalfInt(num)),
            -2 => Some(HalfInt(-num)),
            _ => None,
        }
    }

    pub fn twice(self) -> i32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    pub fn is_integer(self) -> bool {
        self.0 % 2 == 0
    }

    pub fn to_integer(self) -> Option<i32> {
        self.is_integer().then_some(self.0 / 2)
    }

    /// Half of this value, if it is still a half-integer.
    pub fn half(self) -> Option<Self> {
        (self.0 % 2 == 0).then_some(HalfInt(self.0 / 2))
    }

    pub fn to_f64(self) -> f64 {
        f64::from(self.0) / 2.0
    }

    pub fn signum(self) -> i32 {
        self.0.signum()
    }
}

impl Add for HalfInt {
    type Output = HalfInt;
    fn add(self, rhs: HalfInt) -> HalfInt {
        HalfInt(self.0 + rhs.0)
    }
}

impl Sub for HalfInt {
    type Output = HalfInt;
    fn sub(self, rhs: HalfInt) -> HalfInt {
        HalfInt(self.0 - rhs.0)
    }
}

impl Neg for HalfInt {
    type Output = HalfInt;
    fn neg(self) -> HalfInt {
        HalfInt(-self.0)
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

impl FromStr for HalfInt {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad exponent `{s}`"));
        match s.split_once('/') {
            None => s.parse::<i32>().map(HalfInt::int).map_err(|_| bad()),
            Some((n, d)) => {
                let n: i32 = n.parse().map_err(|_| bad())?;
                let d: i32 = d.parse().map_err(|_| bad())?;
                if d == 0 || (2 * n) % d != 0 {
                    return Err(bad());
                }
                Ok(HalfInt(2 * n / d))
            }
        }
    }
}

/// A product of parameter powers and at most one factor of the family sign.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    exponents: BTreeMap<Param, HalfInt>,
    sign_power: u8,
}

impl Monomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn exponents(&self) -> &BTreeMap<Param, HalfInt> {
        &self.exponents
    }

    pub fn exponent(&self, p: Param) -> HalfInt {
        self.exponents.get(&p).copied().unwrap_or_default()
    }

    pub fn sign_power(&self) -> u8 {
        self.sign_power
    }

    pub fn is_one(&self) -> bool {
        self.exponents.is_empty() && self.sign_power == 0
    }

    /// The basis of the parameters present, or `None` for a parameter-free monomial.
    pub fn basis(&self) -> Option<ParamBasis> {
        self.exponents.keys().next().map(|p| p.basis())
    }

    fn bump(&mut self, p: Param, e: HalfInt) {
        let entry = self.exponents.entry(p).or_default();
        *entry = *entry + e;
        if entry.is_zero() {
            self.exponents.remove(&p);
        }
    }

    pub fn mul(&self, other: &Monomial) -> Result<Monomial> {
        if let (Some(a), Some(b)) = (self.basis(), other.basis()) {
            if a != b {
                return Err(Error::MixedBasis);
            }
        }
        let mut out = self.clone();
        for (&p, &e) in &other.exponents {
            out.bump(p, e);
        }
        out.sign_power = (self.sign_power + other.sign_power) % 2;
        Ok(out)
    }

    pub fn inverse(&self) -> Monomial {
        Monomial {
            exponents: self.exponents.iter().map(|(&p, &e)| (p, -e)).collect(),
            sign_power: self.sign_power,
        }
    }

    pub fn degree(&self, diverging: &[Param]) -> HalfInt {
        diverging.iter().fold(HalfInt::ZERO, |acc, &p| acc + self.exponent(p))
    }
}

/// `scale * monomial`; the zero coefficient always carries the unit monomial.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Coefficient {
    scale: Rational,
    monomial: Monomial,
}

impl Default for Coefficient {
    fn default() -> Self {
        Self::zero()
    }
}

impl Coefficient {
    pub fn new(scale: Rational, monomial: Monomial) -> Self {
        if scale.is_zero() {
            Self::zero()
        } else {
            Coefficient { scale, monomial }
        }
    }

    pub fn zero() -> Self {
        Coefficient {
            scale: Rational::zero(),
            monomial: Monomial::one(),
        }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(scale: Rational) -> Self {
        Self::new(scale, Monomial::one())
    }

    pub fn int(n: i64) -> Self {
        Self::constant(ratio(n, 1))
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        Self::constant(ratio(num, den))
    }

    /// Multiplies in `p^e` for an integer exponent.
    ///
    /// Panics if this introduces a second parameter basis; use [`Coefficient::try_mul`]
    /// for untrusted input.
    pub fn pow(self, p: Param, e: i32) -> Self {
        self.half_pow(p, HalfInt::int(e))
    }

    pub fn half_pow(mut self, p: Param, e: HalfInt) -> Self {
        if self.is_zero() {
            return self;
        }
        if let Some(b) = self.monomial.basis() {
            assert_eq!(b, p.basis(), "mixed parameter bases in a coefficient");
        }
        self.monomial.bump(p, e);
        self
    }

    /// Multiplies in one factor of the family sign.
    pub fn signed(mut self) -> Self {
        if !self.is_zero() {
            self.monomial.sign_power ^= 1;
        }
        self
    }

    pub fn scale(&self) -> &Rational {
        &self.scale
    }

    pub fn monomial(&self) -> &Monomial {
        &self.monomial
    }

    pub fn exponent(&self, p: Param) -> HalfInt {
        self.monomial.exponent(p)
    }

    pub fn sign_power(&self) -> u8 {
        self.monomial.sign_power
    }

    pub fn basis(&self) -> Option<ParamBasis> {
        self.monomial.basis()
    }

    pub fn is_zero(&self) -> bool {
        self.scale.is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.monomial.is_one()
    }

    pub fn try_mul(&self, other: &Coefficient) -> Result<Coefficient> {
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero());
        }
        let monomial = self.monomial.mul(&other.monomial)?;
        Ok(Coefficient::new(&self.scale * &other.scale, monomial))
    }

    pub fn try_add(&self, other: &Coefficient) -> Result<Coefficient> {
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.is_zero() {
            return Ok(other.clone());
        }
        if self.monomial != other.monomial {
            return Err(Error::UnlikeMonomials(Box::new(self.clone()), Box::new(other.clone())));
        }
        Ok(Coefficient::new(&self.scale + &other.scale, self.monomial.clone()))
    }

    pub fn scaled(&self, k: &Rational) -> Coefficient {
        Coefficient::new(&self.scale * k, self.monomial.clone())
    }

    /// Multiplies by a bare monomial.
    pub fn times(&self, m: &Monomial) -> Result<Coefficient> {
        if self.is_zero() {
            return Ok(Self::zero());
        }
        Ok(Coefficient::new(self.scale.clone(), self.monomial.mul(m)?))
    }

    /// Rewrites the coefficient in `target` using `c^2 = E0/m`, `tau^2 = m C`,
    /// `r^2 = C E0`.
    ///
    /// The kinematical-to-dynamical map sends `c tau / r` to 1, so the reverse
    /// direction only reaches monomials `m^a C^b E0^d` with `a - b + d = 0`,
    /// and produces the representative free of `r`.
    pub fn convert_basis(&self, target: ParamBasis) -> Result<Coefficient> {
        let Some(source) = self.basis() else {
            return Ok(self.clone());
        };
        if source == target {
            return Ok(self.clone());
        }
        let mut out = Monomial {
            exponents: BTreeMap::new(),
            sign_power: self.monomial.sign_power,
        };
        let not_rep = || Error::NotRepresentable(Box::new(self.clone()));
        match target {
            ParamBasis::Dynamical => {
                let a = self.exponent(Param::Speed);
                let b = self.exponent(Param::Radius);
                let e = self.exponent(Param::Period);
                out.bump(Param::Mass, (e - a).half().ok_or_else(not_rep)?);
                out.bump(Param::Compliance, (b + e).half().ok_or_else(not_rep)?);
                out.bump(Param::Energy, (a + b).half().ok_or_else(not_rep)?);
            }
            ParamBasis::Kinematical => {
                let a = self.exponent(Param::Mass);
                let b = self.exponent(Param::Compliance);
                let d = self.exponent(Param::Energy);
                if !(a - b + d).is_zero() {
                    return Err(not_rep());
                }
                out.bump(Param::Speed, d + d);
                out.bump(Param::Period, b + b);
            }
        }
        Ok(Coefficient::new(self.scale.clone(), out))
    }

    /// Sum of the exponents over `diverging`: negative vanishes in the limit,
    /// zero survives, positive diverges.
    pub fn limit_degree(&self, diverging: &[Param]) -> HalfInt {
        self.monomial.degree(diverging)
    }

    /// Eliminates `r` through `r = c tau`. Idempotent.
    pub fn apply_constraint(&self) -> Coefficient {
        let e = self.exponent(Param::Radius);
        if e.is_zero() {
            return self.clone();
        }
        let mut m = self.monomial.clone();
        m.exponents.remove(&Param::Radius);
        m.bump(Param::Speed, e);
        m.bump(Param::Period, e);
        Coefficient::new(self.scale.clone(), m)
    }

    fn sign_factor(&self, sign: Option<Sign>) -> Result<i64> {
        match (self.monomial.sign_power, sign) {
            (0, _) => Ok(1),
            (_, Some(s)) => Ok(s.value()),
            (_, None) => Err(Error::UnresolvedSign),
        }
    }

    /// Exact value at rational parameters; fails on half-integer exponents.
    pub fn eval_exact(&self, values: &BTreeMap<Param, Rational>, sign: Option<Sign>) -> Result<Rational> {
        let mut acc = self.scale.clone() * ratio(self.sign_factor(sign)?, 1);
        for (&p, &e) in &self.monomial.exponents {
            let v = values.get(&p).ok_or(Error::MissingParameter(p))?;
            let n = e
                .to_integer()
                .ok_or_else(|| Error::Irrational(Box::new(self.clone())))?;
            acc *= num_traits::pow::Pow::pow(v, n);
        }
        Ok(acc)
    }

    pub fn eval_f64(&self, values: &BTreeMap<Param, f64>, sign: Option<Sign>) -> Result<f64> {
        let mut acc = rational_to_f64(&self.scale) * self.sign_factor(sign)? as f64;
        for (&p, &e) in &self.monomial.exponents {
            let v = values.get(&p).ok_or(Error::MissingParameter(p))?;
            acc *= v.powf(e.to_f64());
        }
        Ok(acc)
    }

    /// Human-oriented rendering used in tables, e.g. `-1/(m E0)` or `±1/C`.
    /// `s` is shown as `±` (or `∓` when the scale is negative).
    pub fn pretty(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let prefix = match (self.monomial.sign_power, self.scale.is_negative()) {
            (1, false) => "±",
            (1, true) => "∓",
            (_, true) => "-",
            _ => "",
        };
        let abs = self.scale.abs();
        let mut num: Vec<String> = Vec::new();
        let mut den: Vec<String> = Vec::new();
        if !abs.numer().is_one() {
            num.push(abs.numer().to_string());
        }
        if !abs.denom().is_one() {
            den.push(abs.denom().to_string());
        }
        for (&p, &e) in &self.monomial.exponents {
            let (list, e) = if e.signum() > 0 { (&mut num, e) } else { (&mut den, -e) };
            if e == HalfInt::int(1) {
                list.push(p.pretty_symbol().to_string());
            } else if e.is_integer() {
                list.push(format!("{}^{}", p.pretty_symbol(), e));
            } else {
                list.push(format!("{}^({})", p.pretty_symbol(), e));
            }
        }
        let num = if num.is_empty() { "1".to_string() } else { num.join(" ") };
        let body = match den.len() {
            0 => num,
            1 => format!("{num}/{}", den[0]),
            _ => format!("{num}/({})", den.join(" ")),
        };
        format!("{prefix}{body}")
    }
}

pub(crate) fn rational_to_f64(q: &Rational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

fn parse_rational(s: &str) -> Option<Rational> {
    let int = |t: &str| t.parse::<BigInt>().ok();
    match s.split_once('/') {
        None => int(s).map(Rational::from_integer),
        Some((n, d)) => {
            let d = int(d)?;
            if d.is_zero() {
                return None;
            }
            Some(Rational::new(int(n)?, d))
        }
    }
}

/// Text form `<num>/<den> * c^<e> r^<e> tau^<e> * s`, unit factors omitted.
impl fmt::Display for Coefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut parts = Vec::new();
        if !self.scale.is_one() || self.monomial.is_one() {
            parts.push(format_rational(&self.scale));
        }
        if !self.monomial.exponents.is_empty() {
            let factors: Vec<String> = self
                .monomial
                .exponents
                .iter()
                .map(|(p, e)| {
                    if *e == HalfInt::int(1) {
                        p.symbol().to_string()
                    } else {
                        format!("{}^{}", p.symbol(), e)
                    }
                })
                .collect();
            parts.push(factors.join(" "));
        }
        if self.monomial.sign_power == 1 {
            parts.push("s".into());
        }
        f.write_str(&parts.join(" * "))
    }
}

impl FromStr for Coefficient {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::Parse("empty coefficient".into()));
        }
        let mut scale = Rational::one();
        let mut mono = Monomial::one();
        for segment in s.split('*').map(str::trim) {
            if segment.is_empty() {
                return Err(Error::Parse(format!("empty factor in `{s}`")));
            }
            if let Some(q) = parse_rational(segment) {
                scale *= q;
                continue;
            }
            for factor in segment.split_whitespace() {
                let (name, exp) = match factor.split_once('^') {
                    Some((n, e)) => (n, e.parse::<HalfInt>()?),
                    None => (factor, HalfInt::int(1)),
                };
                if name == "s" {
                    let k = exp
                        .to_integer()
                        .ok_or_else(|| Error::Parse(format!("bad sign power in `{s}`")))?;
                    mono.sign_power = ((mono.sign_power as i32 + k).rem_euclid(2)) as u8;
                    continue;
                }
                let p: Param = name.parse()?;
                if let Some(b) = mono.basis() {
                    if b != p.basis() {
                        return Err(Error::MixedBasis);
                    }
                }
                mono.bump(p, exp);
            }
        }
        Ok(Coefficient::new(scale, mono))
    }
}

impl Neg for Coefficient {
    type Output = Coefficient;
    fn neg(self) -> Coefficient {
        Coefficient::new(-self.scale, self.monomial)
    }
}

impl Neg for &Coefficient {
    type Output = Coefficient;
    fn neg(self) -> Coefficient {
        -self.clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use Param::*;

    fn c(s: &str) -> Coefficient {
        s.parse().unwrap()
    }

    #[test]
    fn multiplication_examples() {
        let a = Coefficient::one().pow(Speed, -2);
        assert_eq!(a.try_mul(&a).unwrap(), Coefficient::one().pow(Speed, -4));

        let a = Coefficient::ratio(1, 2).pow(Mass, -1);
        let b = Coefficient::int(2).pow(Energy, -1);
        assert_eq!(a.try_mul(&b).unwrap(), Coefficient::one().pow(Mass, -1).pow(Energy, -1));

        let s = Coefficient::one().signed();
        assert_eq!(s.try_mul(&s).unwrap(), Coefficient::one());
    }

    #[test]
    fn mixed_basis_is_rejected() {
        let a = Coefficient::one().pow(Speed, 1);
        let b = Coefficient::one().pow(Mass, 1);
        assert_eq!(a.try_mul(&b), Err(Error::MixedBasis));
        assert_eq!("c * m".parse::<Coefficient>(), Err(Error::MixedBasis));
    }

    #[test]
    fn addition_examples() {
        let a = Coefficient::one().pow(Compliance, -1);
        assert!(a.try_add(&-&a).unwrap().is_zero());

        let m = Coefficient::one().pow(Mass, -1);
        assert_eq!(m.try_add(&Coefficient::zero()).unwrap(), m);

        let e = Coefficient::one().pow(Energy, -1);
        assert!(matches!(m.try_add(&e), Err(Error::UnlikeMonomials(..))));
    }

    #[test]
    fn zero_is_canonical() {
        let z = Coefficient::int(3).pow(Mass, 2).signed().scaled(&ratio(0, 1));
        assert_eq!(z, Coefficient::zero());
        assert_eq!(z.sign_power(), 0);
        assert!(z.monomial().exponents().is_empty());
    }

    #[test]
    fn basis_conversion_examples() {
        let inv_c2 = Coefficient::one().pow(Speed, -2);
        assert_eq!(inv_c2.convert_basis(ParamBasis::Dynamical).unwrap(), c("m E0^-1"));
        let kp = Coefficient::one().pow(Period, 1).pow(Speed, -1).pow(Radius, -1);
        assert_eq!(kp.convert_basis(ParamBasis::Dynamical).unwrap(), c("m E0^-1"));
        let kh = Coefficient::one().pow(Radius, 1).pow(Speed, -1).pow(Period, -1);
        assert_eq!(kh.convert_basis(ParamBasis::Dynamical).unwrap(), Coefficient::one());
        // c alone needs square roots
        assert_eq!(
            Coefficient::one()
                .pow(Speed, 1)
                .convert_basis(ParamBasis::Dynamical)
                .unwrap(),
            c("m^-1/2 E0^1/2")
        );
    }

    #[test]
    fn dynamical_to_kinematical_needs_balanced_exponents() {
        assert_eq!(c("m E0^-1").convert_basis(ParamBasis::Kinematical).unwrap(), c("c^-2"));
        assert_eq!(
            c("-1 * m^-1 C^-1 * s").convert_basis(ParamBasis::Kinematical).unwrap(),
            c("-1 * tau^-2 * s")
        );
        assert!(matches!(
            c("m^-1").convert_basis(ParamBasis::Kinematical),
            Err(Error::NotRepresentable(_))
        ));
    }

    #[test]
    fn limit_degree_examples() {
        assert_eq!(c("c^-2").limit_degree(&[Speed, Radius]), HalfInt::int(-2));
        assert_eq!(c("r c^-1 tau^-1").limit_degree(&[Speed, Radius]), HalfInt::ZERO);
        assert_eq!(c("C^-1 * s").limit_degree(&[Energy]), HalfInt::ZERO);
    }

    #[test]
    fn constraint_examples() {
        assert_eq!(c("tau c^-1 r^-1").apply_constraint(), c("c^-2"));
        assert_eq!(c("c r^-1 tau^-1").apply_constraint(), c("tau^-2"));
        assert_eq!(c("c^-2").apply_constraint(), c("c^-2"));
    }

    #[test]
    fn text_format() {
        let k = Coefficient::ratio(-1, 2).pow(Mass, -1).pow(Energy, -1).signed();
        assert_eq!(k.to_string(), "-1/2 * m^-1 E0^-1 * s");
        assert_eq!(Coefficient::one().pow(Speed, -2).to_string(), "c^-2");
        assert_eq!(Coefficient::one().pow(Radius, 1).to_string(), "r");
        assert_eq!(Coefficient::one().to_string(), "1");
        assert_eq!(Coefficient::zero().to_string(), "0");
        assert_eq!(c("m^1/2").to_string(), "m^1/2");
        assert_eq!(c("3 * tau^1 * s^1"), Coefficient::int(3).pow(Period, 1).signed());
        assert!("c^x".parse::<Coefficient>().is_err());
        assert!("q".parse::<Coefficient>().is_err());
    }

    #[test]
    fn pretty_rendering() {
        assert_eq!(c("-1 * m^-1 E0^-1").pretty(), "-1/(m E0)");
        assert_eq!(c("C^-1 * s").pretty(), "±1/C");
        assert_eq!(c("-1 * C^-1 * s").pretty(), "∓1/C");
        assert_eq!(c("r c^-1 tau^-1").pretty(), "r/(c τ)");
        assert_eq!(c("1/2 * m^-1").pretty(), "1/(2 m)");
        assert_eq!(Coefficient::one().pretty(), "1");
    }

    #[test]
    fn exact_and_float_evaluation() {
        let vals: BTreeMap<Param, Rational> =
            [(Speed, ratio(2, 1)), (Radius, ratio(6, 1)), (Period, ratio(3, 1))].into();
        let k = c("tau c^-1 r^-1 * s");
        assert_eq!(k.eval_exact(&vals, Some(Sign::Minus)).unwrap(), ratio(-1, 4));
        assert_eq!(k.eval_exact(&vals, None), Err(Error::UnresolvedSign));
        assert!(matches!(c("c^1/2").eval_exact(&vals, None), Err(Error::Irrational(_))));
        let fvals: BTreeMap<Param, f64> = [(Mass, 4.0)].into();
        assert_eq!(c("m^1/2").eval_f64(&fvals, None).unwrap(), 2.0);
    }
}
