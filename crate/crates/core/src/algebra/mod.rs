//! Ten-generator kinematical Lie algebras over exact parameter-monomial
//! structure constants.

mod contraction;
mod graph;
mod identify;
mod json;
mod templates;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use crate::coeff::{Coefficient, Param, ParamBasis, Rational, Sign};
use crate::error::{Error, Result};

pub use contraction::{contract_limit, iw_contract, SubspaceSplit};
pub use graph::{contraction_graph, kinematical_contraction_graph, ContractionGraph, Limit};
pub use identify::{identify, identify_family, BracketFamily};
pub use json::{from_json, to_json};
pub use templates::{build_algebra, build_family, AlgebraLabel, Family};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sector {
    Rotation,
    /// inertial transformations: `K` in the kinematical basis, `Q = K/m` in the dynamical one
    Boost,
    Translation,
    Time,
}

impl Sector {
    pub fn generators(self) -> Vec<Generator> {
        Generator::all().filter(|g| g.sector() == self).collect()
    }
}

/// One of `J1..J3, B1..B3, P1..P3, H`, indexed 0..10 in that order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Generator(u8);

impl Generator {
    pub const COUNT: usize = 10;
    pub const H: Generator = Generator(9);

    pub fn rotation(axis: usize) -> Self {
        assert!((1..=3).contains(&axis));
        Generator(axis as u8 - 1)
    }

    pub fn boost(axis: usize) -> Self {
        assert!((1..=3).contains(&axis));
        Generator(axis as u8 + 2)
    }

    pub fn translation(axis: usize) -> Self {
        assert!((1..=3).contains(&axis));
        Generator(axis as u8 + 5)
    }

    pub fn vector(sector: Sector, axis: usize) -> Self {
        match sector {
            Sector::Rotation => Self::rotation(axis),
            Sector::Boost => Self::boost(axis),
            Sector::Translation => Self::translation(axis),
            Sector::Time => Self::H,
        }
    }

    pub fn from_index(i: usize) -> Option<Self> {
        (i < Self::COUNT).then_some(Generator(i as u8))
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn all() -> impl Iterator<Item = Generator> {
        (0..Self::COUNT as u8).map(Generator)
    }

    pub fn sector(self) -> Sector {
        match self.0 {
            0..=2 => Sector::Rotation,
            3..=5 => Sector::Boost,
            6..=8 => Sector::Translation,
            _ => Sector::Time,
        }
    }

    /// Spatial index 1..=3 for vector generators.
    pub fn axis(self) -> Option<usize> {
        match self.sector() {
            Sector::Time => None,
            _ => Some(self.0 as usize % 3 + 1),
        }
    }

    /// Name in a given parameter basis: the boost slot is `K` or `Q`.
    pub fn name(self, basis: ParamBasis) -> String {
        let letter = match (self.sector(), basis) {
            (Sector::Rotation, _) => "J",
            (Sector::Boost, ParamBasis::Kinematical) => "K",
            (Sector::Boost, ParamBasis::Dynamical) => "Q",
            (Sector::Translation, _) => "P",
            (Sector::Time, _) => return "H".into(),
        };
        format!("{letter}{}", self.axis().unwrap())
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name(ParamBasis::Kinematical))
    }
}

impl FromStr for Generator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("unknown generator `{s}`"));
        if s == "H" {
            return Ok(Generator::H);
        }
        let mut chars = s.chars();
        let letter = chars.next().ok_or_else(bad)?;
        let axis: usize = chars.as_str().parse().map_err(|_| bad())?;
        if !(1..=3).contains(&axis) {
            return Err(bad());
        }
        match letter {
            'J' => Ok(Generator::rotation(axis)),
            'K' | 'Q' => Ok(Generator::boost(axis)),
            'P' => Ok(Generator::translation(axis)),
            _ => Err(bad()),
        }
    }
}

/// Levi-Civita symbol on 1-based axes.
pub fn levi_civita(i: usize, j: usize, k: usize) -> i64 {
    match (i, j, k) {
        (1, 2, 3) | (2, 3, 1) | (3, 1, 2) => 1,
        (3, 2, 1) | (1, 3, 2) | (2, 1, 3) => -1,
        _ => 0,
    }
}

/// The axis completing `(i, j)` to a permutation of `(1, 2, 3)`.
pub(crate) fn third_axis(i: usize, j: usize) -> usize {
    6 - i - j
}

/// A formal combination of generators with single-monomial coefficients.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Element(BTreeMap<Generator, Coefficient>);

impl Element {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn generator(g: Generator) -> Self {
        Self::term(g, Coefficient::one())
    }

    pub fn term(g: Generator, c: Coefficient) -> Self {
        let mut e = Self::zero();
        if !c.is_zero() {
            e.0.insert(g, c);
        }
        e
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, g: Generator) -> Coefficient {
        self.0.get(&g).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Generator, &Coefficient)> {
        self.0.iter().map(|(g, c)| (*g, c))
    }

    pub fn add_term(&mut self, g: Generator, c: &Coefficient) -> Result<()> {
        if c.is_zero() {
            return Ok(());
        }
        let sum = self.get(g).try_add(c)?;
        if sum.is_zero() {
            self.0.remove(&g);
        } else {
            self.0.insert(g, sum);
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Element) -> Result<Element> {
        let mut out = self.clone();
        for (g, c) in other.iter() {
            out.add_term(g, c)?;
        }
        Ok(out)
    }

    pub fn negated(&self) -> Element {
        Element(self.0.iter().map(|(g, c)| (*g, -c)).collect())
    }

    pub fn map_coefficients(
        &self,
        mut f: impl FnMut(Generator, &Coefficient) -> Result<Coefficient>,
    ) -> Result<Element> {
        let mut out = Element::zero();
        for (g, c) in self.iter() {
            out.add_term(g, &f(g, c)?)?;
        }
        Ok(out)
    }

    pub fn retain(&mut self, mut keep: impl FnMut(Generator, &Coefficient) -> bool) {
        self.0.retain(|g, c| keep(*g, c));
    }
}

impl FromIterator<(Generator, Coefficient)> for Element {
    /// Panics on unlike monomials for the same generator.
    fn from_iter<I: IntoIterator<Item = (Generator, Coefficient)>>(iter: I) -> Self {
        let mut e = Element::zero();
        for (g, c) in iter {
            e.add_term(g, &c).expect("like monomials");
        }
        e
    }
}

/// Sparse structure constants `C^k_ij` stored for `i < j` only.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct StructureTensor(BTreeMap<(Generator, Generator), Element>);

impl StructureTensor {
    pub fn new() -> Self {
        Self::default()
    }

    /// Sets `[x, y]`; the antisymmetric partner is implied.
    pub fn set(&mut self, x: Generator, y: Generator, value: Element) {
        assert_ne!(x, y, "[X, X] is always zero");
        let (key, value) = if x < y {
            ((x, y), value)
        } else {
            ((y, x), value.negated())
        };
        if value.is_zero() {
            self.0.remove(&key);
        } else {
            self.0.insert(key, value);
        }
    }

    /// Accumulates into `[x, y]`.
    pub fn add(&mut self, x: Generator, y: Generator, value: &Element) -> Result<()> {
        if x == y {
            return Ok(());
        }
        let current = self.get(x, y);
        self.set(x, y, current.try_add(value)?);
        Ok(())
    }

    pub fn get(&self, x: Generator, y: Generator) -> Element {
        match x.cmp(&y) {
            std::cmp::Ordering::Equal => Element::zero(),
            std::cmp::Ordering::Less => self.0.get(&(x, y)).cloned().unwrap_or_default(),
            std::cmp::Ordering::Greater => self.0.get(&(y, x)).map(Element::negated).unwrap_or_default(),
        }
    }

    /// Non-zero brackets with `x < y`.
    pub fn iter(&self) -> impl Iterator<Item = (Generator, Generator, &Element)> {
        self.0.iter().map(|((x, y), e)| (*x, *y, e))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn map_coefficients(
        &self,
        mut f: impl FnMut(Generator, Generator, Generator, &Coefficient) -> Result<Coefficient>,
    ) -> Result<StructureTensor> {
        let mut out = StructureTensor::new();
        for (x, y, e) in self.iter() {
            out.set(x, y, e.map_coefficients(|z, c| f(x, y, z, c))?);
        }
        Ok(out)
    }

    /// Keeps only the terms for which `keep` holds.
    pub fn filter(
        &self,
        mut keep: impl FnMut(Generator, Generator, Generator, &Coefficient) -> bool,
    ) -> StructureTensor {
        let mut out = StructureTensor::new();
        for (x, y, e) in self.iter() {
            let mut e = e.clone();
            e.retain(|z, c| keep(x, y, z, c));
            out.set(x, y, e);
        }
        out
    }

    /// Every coefficient of the tensor.
    pub fn coefficients(&self) -> impl Iterator<Item = &Coefficient> {
        self.0.values().flat_map(|e| e.0.values())
    }
}

/// How the parameters enter an algebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Parameterization {
    /// `c, r, tau` with `r = c tau` imposed (the printed kinematical table)
    Kinematical,
    /// `c, r, tau` independent, as obtained from rescaling the O(5) generators
    KinematicalUnconstrained,
    /// `m, C, E0` with impulse generators `Q = K/m`
    Dynamical,
}

impl Parameterization {
    pub fn basis(self) -> ParamBasis {
        match self {
            Parameterization::Dynamical => ParamBasis::Dynamical,
            _ => ParamBasis::Kinematical,
        }
    }

    pub fn is_constrained(self) -> bool {
        self == Parameterization::Kinematical
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Parameterization::Kinematical => "kinematical",
            Parameterization::KinematicalUnconstrained => "kinematical-unconstrained",
            Parameterization::Dynamical => "dynamical",
        }
    }
}

impl FromStr for Parameterization {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "kinematical" => Ok(Parameterization::Kinematical),
            "kinematical-unconstrained" => Ok(Parameterization::KinematicalUnconstrained),
            "dynamical" => Ok(Parameterization::Dynamical),
            _ => Err(Error::Parse(format!("unknown basis `{s}`"))),
        }
    }
}

/// A kinematical Lie algebra: structure constants plus basis metadata.
///
/// The family sign `s` stays symbolic inside the coefficients; `sign` records
/// which member of a `±` pair is meant (`None` for the symbolic pair itself or
/// for unsigned families).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieAlgebra {
    pub name: Option<String>,
    pub frame: Parameterization,
    pub sign: Option<Sign>,
    pub tensor: StructureTensor,
}

impl LieAlgebra {
    pub fn new(frame: Parameterization, sign: Option<Sign>, tensor: StructureTensor) -> Self {
        LieAlgebra {
            name: None,
            frame,
            sign,
            tensor,
        }
    }

    pub fn basis(&self) -> ParamBasis {
        self.frame.basis()
    }

    /// Canonical coefficient form; in the constrained kinematical frame `r` is
    /// eliminated.
    pub fn normalize(&self, c: &Coefficient) -> Coefficient {
        if self.frame.is_constrained() {
            c.apply_constraint()
        } else {
            c.clone()
        }
    }

    /// The tensor with every coefficient in canonical form.
    pub fn normalized_tensor(&self) -> StructureTensor {
        self.tensor
            .map_coefficients(|_, _, _, c| Ok(self.normalize(c)))
            .expect("normalization keeps monomials distinct per target")
    }

    /// Tensor equality up to the frame's canonical form; names are ignored.
    pub fn same_structure(&self, other: &LieAlgebra) -> bool {
        self.frame == other.frame && self.sign == other.sign && self.normalized_tensor() == other.normalized_tensor()
    }

    pub fn bracket_generators(&self, x: Generator, y: Generator) -> Element {
        self.tensor.get(x, y)
    }

    /// Bilinear antisymmetric extension of the structure constants.
    pub fn bracket(&self, x: &Element, y: &Element) -> Result<Element> {
        let mut out = Element::zero();
        for (a, ca) in x.iter() {
            for (b, cb) in y.iter() {
                if a == b {
                    continue;
                }
                let weight = ca.try_mul(cb)?;
                for (k, ck) in self.tensor.get(a, b).iter() {
                    let term = self.normalize(&weight.try_mul(ck)?);
                    out.add_term(k, &term)?;
                }
            }
        }
        Ok(out)
    }

    /// Non-cancelling Jacobi sums `[X,[Y,Z]] + [Y,[Z,X]] + [Z,[X,Y]]` over all
    /// 120 unordered generator triples; empty iff the Jacobi identity holds.
    pub fn jacobi_residual(&self) -> Result<Vec<JacobiViolation>> {
        let gens: Vec<Generator> = Generator::all().collect();
        let mut out = Vec::new();
        for (ia, &a) in gens.iter().enumerate() {
            for (ib, &b) in gens.iter().enumerate().skip(ia + 1) {
                for &c in gens.iter().skip(ib + 1) {
                    let (ea, eb, ec) = (Element::generator(a), Element::generator(b), Element::generator(c));
                    let sum = self
                        .bracket(&ea, &self.bracket(&eb, &ec)?)?
                        .try_add(&self.bracket(&eb, &self.bracket(&ec, &ea)?)?)?
                        .try_add(&self.bracket(&ec, &self.bracket(&ea, &eb)?)?)?;
                    if !sum.is_zero() {
                        out.push(JacobiViolation {
                            triple: (a, b, c),
                            residual: sum,
                        });
                    }
                }
            }
        }
        Ok(out)
    }

    /// Parameters that appear in some structure constant.
    pub fn parameters(&self) -> BTreeSet<Param> {
        self.tensor
            .coefficients()
            .flat_map(|c| c.monomial().exponents().keys().copied().collect::<Vec<_>>())
            .collect()
    }

    /// Structure constants at exact parameter values, with the family sign substituted.
    pub fn evaluate_exact(&self, values: &BTreeMap<Param, Rational>) -> Result<StructureTensor> {
        self.tensor
            .map_coefficients(|_, _, _, c| Ok(Coefficient::constant(c.eval_exact(values, self.sign)?)))
    }

    /// Re-expresses the algebra in the other parameter basis.
    ///
    /// Going to the dynamical basis rescales the boost slot to `Q = K/m`;
    /// going back uses `K = m Q` and lands in the constrained kinematical frame.
    pub fn convert(&self, target: ParamBasis) -> Result<LieAlgebra> {
        if self.basis() == target {
            return Ok(self.clone());
        }
        let boosts = |g: Generator| i32::from(g.sector() == Sector::Boost);
        let tensor = self.tensor.map_coefficients(|x, y, z, c| {
            let weight = boosts(z) - boosts(x) - boosts(y);
            match target {
                ParamBasis::Dynamical => Ok(c.convert_basis(target)?.pow(Param::Mass, weight)),
                ParamBasis::Kinematical => c.clone().pow(Param::Mass, -weight).convert_basis(target),
            }
        })?;
        let frame = match target {
            ParamBasis::Dynamical => Parameterization::Dynamical,
            ParamBasis::Kinematical => Parameterization::Kinematical,
        };
        Ok(LieAlgebra {
            name: self.name.clone(),
            frame,
            sign: self.sign,
            tensor,
        })
    }

    /// Whether every bracket involving a rotation matches the standard
    /// `[J_i, X_j] = X_k eps^k_ij`, `[J_i, H] = 0` with unit coefficients.
    pub fn has_standard_rotation_sector(&self) -> bool {
        let standard = templates::rotation_sector();
        Generator::all().all(|x| {
            Generator::all().all(|y| x.sector() != Sector::Rotation || self.tensor.get(x, y) == standard.get(x, y))
        })
    }
}

/// Jacobi sum for one triple that failed to cancel.
#[derive(Debug, Clone, PartialEq)]
pub struct JacobiViolation {
    pub triple: (Generator, Generator, Generator),
    pub residual: Element,
}

/// Convenience wrapper mirroring [`LieAlgebra::jacobi_residual`].
pub fn jacobi_residual(alg: &LieAlgebra) -> Result<Vec<JacobiViolation>> {
    alg.jacobi_residual()
}

impl fmt::Display for LieAlgebra {
    /// Bracket table, one non-zero `[X, Y]` per line.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let basis = self.basis();
        if let Some(name) = &self.name {
            writeln!(f, "# {name} ({})", self.frame.as_str())?;
        }
        for (x, y, e) in self.tensor.iter() {
            let terms: Vec<String> = e
                .iter()
                .map(|(g, c)| {
                    if c.is_constant() && *c.scale() == Rational::from_integer(1.into()) {
                        g.name(basis)
                    } else {
                        format!("({}) {}", c.pretty(), g.name(basis))
                    }
                })
                .collect();
            writeln!(f, "[{}, {}] = {}", x.name(basis), y.name(basis), terms.join(" + "))?;
        }
        Ok(())
    }
}
