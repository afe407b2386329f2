use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;
use rand::Rng;

use crate::algebra::{Generator, Sector};
use crate::coeff::{Coefficient, Monomial, Param, ParamBasis, Rational, Sign};
use crate::error::Result;

/// Exponents of `j1 j2 j3 q1 q2 q3 p1 p2 p3 E`, in generator order.
pub type CoordExponents = [u8; Generator::COUNT];

/// Name of the dual coordinate paired with a generator: `j`, `q`, `p` or `E`.
pub fn coordinate_name(g: Generator) -> String {
    let letter = match g.sector() {
        Sector::Rotation => "j",
        Sector::Boost => "q",
        Sector::Translation => "p",
        Sector::Time => return "E".into(),
    };
    format!("{letter}{}", g.axis().unwrap())
}

/// A polynomial in the dual coordinates whose coefficients are rational
/// multiples of parameter monomials. Unlike a structure constant, a
/// coefficient here may be a sum of unlike monomials, which brackets of
/// general polynomials produce.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct PolyFunction {
    terms: BTreeMap<(CoordExponents, Monomial), Rational>,
}

impl PolyFunction {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: &Coefficient) -> Self {
        Self::term([0; Generator::COUNT], c)
    }

    /// The coordinate function `a_g`.
    pub fn coordinate(g: Generator) -> Self {
        Self::coordinate_times(g, &Coefficient::one())
    }

    pub fn coordinate_times(g: Generator, c: &Coefficient) -> Self {
        let mut e = [0; Generator::COUNT];
        e[g.index()] = 1;
        Self::term(e, c)
    }

    pub fn term(exponents: CoordExponents, c: &Coefficient) -> Self {
        let mut f = Self::zero();
        f.add_raw(exponents, c.monomial().clone(), c.scale().clone());
        f
    }

    fn add_raw(&mut self, e: CoordExponents, m: Monomial, q: Rational) {
        if q.is_zero() {
            return;
        }
        let key = (e, m);
        let sum = self.terms.get(&key).cloned().unwrap_or_else(Rational::zero) + q;
        if sum.is_zero() {
            self.terms.remove(&key);
        } else {
            self.terms.insert(key, sum);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// `(exponents, coefficient)` pairs in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&CoordExponents, Coefficient)> {
        self.terms
            .iter()
            .map(|((e, m), q)| (e, Coefficient::new(q.clone(), m.clone())))
    }

    pub fn degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|(e, _)| e.iter().map(|&k| k as u32).sum())
            .max()
            .unwrap_or(0)
    }

    /// The parameter basis of the coefficients, if any parameter occurs.
    pub fn basis(&self) -> Option<ParamBasis> {
        self.terms.keys().find_map(|(_, m)| m.basis())
    }

    /// Coefficient of one coordinate monomial, when it is a single parameter monomial.
    pub fn coefficient_of(&self, exponents: &CoordExponents) -> Result<Coefficient> {
        let mut acc = Coefficient::zero();
        for ((e, m), q) in &self.terms {
            if e == exponents {
                acc = acc.try_add(&Coefficient::new(q.clone(), m.clone()))?;
            }
        }
        Ok(acc)
    }

    pub fn derivative(&self, g: Generator) -> PolyFunction {
        let i = g.index();
        let mut out = PolyFunction::zero();
        for ((e, m), q) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut e2 = *e;
            e2[i] -= 1;
            out.add_raw(e2, m.clone(), q * Rational::from_integer(e[i].into()));
        }
        out
    }

    pub fn try_mul(&self, other: &PolyFunction) -> Result<PolyFunction> {
        let mut out = PolyFunction::zero();
        for ((ea, ma), qa) in &self.terms {
            for ((eb, mb), qb) in &other.terms {
                let mut e = *ea;
                for (x, y) in e.iter_mut().zip(eb) {
                    *x += y;
                }
                out.add_raw(e, ma.mul(mb)?, qa * qb);
            }
        }
        Ok(out)
    }

    pub fn scaled(&self, c: &Coefficient) -> Result<PolyFunction> {
        self.try_mul(&PolyFunction::constant(c))
    }

    /// Applies `f` to every coefficient monomial.
    pub fn map_coefficients(&self, mut f: impl FnMut(&Coefficient) -> Result<Coefficient>) -> Result<PolyFunction> {
        let mut out = PolyFunction::zero();
        for ((e, m), q) in &self.terms {
            let c = f(&Coefficient::new(q.clone(), m.clone()))?;
            out.add_raw(*e, c.monomial().clone(), c.scale().clone());
        }
        Ok(out)
    }

    pub fn eval_f64(
        &self,
        point: &[f64; Generator::COUNT],
        params: &BTreeMap<Param, f64>,
        sign: Option<Sign>,
    ) -> Result<f64> {
        let mut acc = 0.0;
        for ((e, m), q) in &self.terms {
            let c = Coefficient::new(q.clone(), m.clone()).eval_f64(params, sign)?;
            let x: f64 = e.iter().zip(point).map(|(&k, &v)| v.powi(k as i32)).product();
            acc += c * x;
        }
        Ok(acc)
    }

    pub fn eval_exact(
        &self,
        point: &[Rational; Generator::COUNT],
        params: &BTreeMap<Param, Rational>,
        sign: Option<Sign>,
    ) -> Result<Rational> {
        let mut acc = Rational::zero();
        for ((e, m), q) in &self.terms {
            let mut v = Coefficient::new(q.clone(), m.clone()).eval_exact(params, sign)?;
            for (&k, x) in e.iter().zip(point) {
                v *= num_traits::pow::Pow::pow(x, k as u32);
            }
            acc += v;
        }
        Ok(acc)
    }

    /// Random polynomial of degree at most `max_degree` with up to `max_terms`
    /// terms, small rational scales, and coefficients that occasionally carry
    /// parameters of `basis` and the family sign.
    pub fn random<R: Rng>(rng: &mut R, max_degree: u8, max_terms: usize, basis: ParamBasis) -> PolyFunction {
        let mut out = PolyFunction::zero();
        let n = rng.gen_range(1..=max_terms.max(1));
        for _ in 0..n {
            let mut e = [0u8; Generator::COUNT];
            for _ in 0..rng.gen_range(0..=max_degree) {
                e[rng.gen_range(0..Generator::COUNT)] += 1;
            }
            let num: i64 = rng.gen_range(-5..=5);
            let den: i64 = rng.gen_range(1..=4);
            let mut c = Coefficient::ratio(num, den);
            for p in basis.params() {
                if rng.gen_bool(0.25) {
                    c = c.pow(p, rng.gen_range(-2..=1));
                }
            }
            if rng.gen_bool(0.2) {
                c = c.signed();
            }
            out = &out + &PolyFunction::term(e, &c);
        }
        out
    }
}

impl Add for &PolyFunction {
    type Output = PolyFunction;

    fn add(self, rhs: &PolyFunction) -> PolyFunction {
        let mut out = self.clone();
        for ((e, m), q) in &rhs.terms {
            out.add_raw(*e, m.clone(), q.clone());
        }
        out
    }
}

impl Neg for &PolyFunction {
    type Output = PolyFunction;

    fn neg(self) -> PolyFunction {
        PolyFunction {
            terms: self.terms.iter().map(|(k, q)| (k.clone(), -q)).collect(),
        }
    }
}

impl Sub for &PolyFunction {
    type Output = PolyFunction;

    fn sub(self, rhs: &PolyFunction) -> PolyFunction {
        self + &-rhs
    }
}

/// Panics when the operands use different parameter bases; use
/// [`PolyFunction::try_mul`] for untrusted input.
impl Mul for &PolyFunction {
    type Output = PolyFunction;

    fn mul(self, rhs: &PolyFunction) -> PolyFunction {
        self.try_mul(rhs).expect("operands share a parameter basis")
    }
}

impl fmt::Display for PolyFunction {
    /// E.g. `1/m p1 ± 1/C q1`; the zero polynomial prints as `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (e, c) in self.terms() {
            let vars: Vec<String> = Generator::all()
                .filter(|g| e[g.index()] > 0)
                .map(|g| match e[g.index()] {
                    1 => coordinate_name(g),
                    k => format!("{}^{k}", coordinate_name(g)),
                })
                .collect();
            let pretty = c.pretty();
            let (lead, coeff) = match pretty.chars().next() {
                Some(ch @ ('-' | '±' | '∓')) => (Some(ch), pretty[ch.len_utf8()..].to_string()),
                _ => (None, pretty.clone()),
            };
            let sep = match (first, lead) {
                (true, Some(ch)) => ch.to_string(),
                (true, None) => String::new(),
                (false, Some(ch)) => format!(" {ch} "),
                (false, None) => " + ".into(),
            };
            let body = match (coeff.as_str(), vars.is_empty()) {
                (_, true) => coeff.clone(),
                ("1", false) => vars.join(" "),
                _ => format!("{coeff} {}", vars.join(" ")),
            };
            write!(f, "{sep}{body}")?;
            first = false;
        }
        Ok(())
    }
}

impl From<Coefficient> for PolyFunction {
    fn from(c: Coefficient) -> Self {
        PolyFunction::constant(&c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(i: usize) -> PolyFunction {
        PolyFunction::coordinate(Generator::boost(i))
    }

    #[test]
    fn arithmetic_and_derivatives() {
        let f = &(&q(1) * &q(1)) + &q(2);
        assert_eq!(f.degree(), 2);
        assert_eq!(f.derivative(Generator::boost(1)), &q(1) + &q(1));
        assert_eq!((&f - &f), PolyFunction::zero());
        assert!(PolyFunction::constant(&Coefficient::int(3))
            .derivative(Generator::H)
            .is_zero());
    }

    #[test]
    fn unlike_coefficients_coexist() {
        let a = PolyFunction::coordinate_times(Generator::H, &"m^-1".parse().unwrap());
        let b = PolyFunction::coordinate_times(Generator::H, &"E0^-1".parse().unwrap());
        let s = &a + &b;
        assert_eq!(s.len(), 2);
        assert!(s
            .coefficient_of(&{
                let mut e = [0; 10];
                e[9] = 1;
                e
            })
            .is_err());
    }

    #[test]
    fn display() {
        let f = &PolyFunction::coordinate_times(Generator::translation(1), &"m^-1".parse().unwrap())
            - &PolyFunction::coordinate_times(Generator::boost(1), &"C^-1 * s".parse().unwrap());
        assert_eq!(f.to_string(), "1/m p1 ∓ 1/C q1");
        assert_eq!((-&f).to_string(), "-1/m p1 ± 1/C q1");
        assert_eq!(PolyFunction::zero().to_string(), "0");
    }
}
