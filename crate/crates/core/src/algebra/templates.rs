//! The eight kinematical families and their twelve signed members.

use std::fmt;
use std::str::FromStr;

use super::identify::BracketFamily;
use super::{levi_civita, third_axis, Element, Generator, LieAlgebra, Parameterization, Sector, StructureTensor};
use crate::coeff::{Coefficient, Param, Sign};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    DeSitter,
    Poincare,
    NewtonHooke,
    ParaPoincare,
    Galilei,
    ParaGalilei,
    Carroll,
    Static,
}

impl Family {
    /// Row order of the printed tables.
    pub const ALL: [Family; 8] = [
        Family::DeSitter,
        Family::Poincare,
        Family::NewtonHooke,
        Family::ParaPoincare,
        Family::Galilei,
        Family::ParaGalilei,
        Family::Carroll,
        Family::Static,
    ];

    /// Whether the family comes as a `±` pair.
    pub fn is_signed(self) -> bool {
        matches!(
            self,
            Family::DeSitter | Family::NewtonHooke | Family::ParaPoincare | Family::ParaGalilei
        )
    }

    /// Symbol with `±` for the signed pairs, e.g. `NH±`.
    pub fn symbol(self) -> &'static str {
        match self {
            Family::DeSitter => "dS±",
            Family::Poincare => "P",
            Family::NewtonHooke => "NH±",
            Family::ParaPoincare => "P±",
            Family::Galilei => "G",
            Family::ParaGalilei => "G±",
            Family::Carroll => "C",
            Family::Static => "S",
        }
    }

    fn stem(self) -> &'static str {
        self.symbol().trim_end_matches('±')
    }

    pub fn name(self) -> &'static str {
        match self {
            Family::DeSitter => "de Sitter",
            Family::Poincare => "Poincare",
            Family::NewtonHooke => "Newton-Hooke",
            Family::ParaPoincare => "Para-Poincare",
            Family::Galilei => "Galilei",
            Family::ParaGalilei => "Para-Galilei",
            Family::Carroll => "Carroll",
            Family::Static => "Static",
        }
    }

    /// The non-rotation bracket families that do not vanish.
    pub fn brackets(self) -> &'static [BracketFamily] {
        use BracketFamily::*;
        match self {
            Family::DeSitter => &[
                BoostTime,
                BoostBoost,
                BoostTranslation,
                TranslationTranslation,
                TranslationTime,
            ],
            Family::Poincare => &[BoostTime, BoostBoost, BoostTranslation],
            Family::NewtonHooke => &[BoostTime, TranslationTime],
            Family::ParaPoincare => &[BoostTranslation, TranslationTranslation, TranslationTime],
            Family::Galilei => &[BoostTime],
            Family::ParaGalilei => &[TranslationTime],
            Family::Carroll => &[BoostTranslation],
            Family::Static => &[],
        }
    }

    /// Whether the dynamical parameter stays finite for this family, read off
    /// the structure constants it carries.
    pub fn is_finite(self, p: Param) -> bool {
        self.brackets().iter().any(|&b| {
            !de_sitter_coefficient(b, Parameterization::Dynamical)
                .exponent(p)
                .is_zero()
        })
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (stem, signed) = match s.strip_suffix(['±', '+', '-', '−']) {
            Some(stem) => (stem, true),
            None => (s, false),
        };
        let by_stem = |signed: bool| {
            Family::ALL
                .into_iter()
                .find(|f| f.stem() == stem && f.is_signed() == signed)
        };
        by_stem(signed)
            .or_else(|| (!signed).then(|| by_stem(true)).flatten())
            .or_else(|| Family::ALL.into_iter().find(|f| f.name().eq_ignore_ascii_case(s)))
            .ok_or_else(|| Error::UnknownFamily(s.to_string()))
    }
}

/// One of the twelve kinematical algebras: a family plus, for the `±` pairs, a sign.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AlgebraLabel {
    family: Family,
    sign: Option<Sign>,
}

impl AlgebraLabel {
    pub const ALL: [AlgebraLabel; 12] = {
        use Family::*;
        const fn l(family: Family, sign: Option<Sign>) -> AlgebraLabel {
            AlgebraLabel { family, sign }
        }
        [
            l(DeSitter, Some(Sign::Plus)),
            l(DeSitter, Some(Sign::Minus)),
            l(Poincare, None),
            l(NewtonHooke, Some(Sign::Plus)),
            l(NewtonHooke, Some(Sign::Minus)),
            l(ParaPoincare, Some(Sign::Plus)),
            l(ParaPoincare, Some(Sign::Minus)),
            l(Galilei, None),
            l(ParaGalilei, Some(Sign::Plus)),
            l(ParaGalilei, Some(Sign::Minus)),
            l(Carroll, None),
            l(Static, None),
        ]
    };

    /// Signed families need a sign; unsigned ones must not have one.
    pub fn new(family: Family, sign: Option<Sign>) -> Result<Self> {
        if family.is_signed() != sign.is_some() {
            return Err(Error::InvalidParameter(format!(
                "{} {} a sign",
                family.name(),
                if family.is_signed() {
                    "requires"
                } else {
                    "does not take"
                }
            )));
        }
        Ok(AlgebraLabel { family, sign })
    }

    pub fn family(self) -> Family {
        self.family
    }

    pub fn sign(self) -> Option<Sign> {
        self.sign
    }
}

impl fmt::Display for AlgebraLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.family.stem())?;
        if let Some(s) = self.sign {
            f.write_str(s.symbol())?;
        }
        Ok(())
    }
}

impl FromStr for AlgebraLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let sign = if s.ends_with('+') {
            Some(Sign::Plus)
        } else if s.ends_with('-') || s.ends_with('−') {
            Some(Sign::Minus)
        } else {
            None
        };
        let family: Family = s.parse()?;
        AlgebraLabel::new(family, sign).map_err(|_| Error::UnknownFamily(s.to_string()))
    }
}

/// `[J_i, J_j] = J_k eps^k_ij`, `[J_i, K_j] = K_k eps^k_ij`, `[J_i, P_j] = P_k eps^k_ij`, `[J_i, H] = 0`.
pub(crate) fn rotation_sector() -> StructureTensor {
    let mut t = StructureTensor::new();
    for target in [Sector::Rotation, Sector::Boost, Sector::Translation] {
        put_cross(&mut t, Sector::Rotation, target, target, &Coefficient::one());
    }
    t
}

/// `[X_i, Y_j] = coeff * Z_k eps^k_ij`.
fn put_cross(t: &mut StructureTensor, x: Sector, y: Sector, z: Sector, coeff: &Coefficient) {
    for i in 1..=3 {
        for j in 1..=3 {
            if i == j {
                continue;
            }
            let k = third_axis(i, j);
            let (gx, gy) = (Generator::vector(x, i), Generator::vector(y, j));
            if x == y && i > j {
                continue;
            }
            let c = coeff.scaled(&crate::coeff::ratio(levi_civita(k, i, j), 1));
            t.set(gx, gy, Element::term(Generator::vector(z, k), c));
        }
    }
}

/// `[X_i, Y_j] = coeff * H delta_ij`.
fn put_diagonal(t: &mut StructureTensor, x: Sector, y: Sector, coeff: &Coefficient) {
    for i in 1..=3 {
        t.set(
            Generator::vector(x, i),
            Generator::vector(y, i),
            Element::term(Generator::H, coeff.clone()),
        );
    }
}

/// `[X_i, H] = coeff * Z_i`.
fn put_with_time(t: &mut StructureTensor, x: Sector, z: Sector, coeff: &Coefficient) {
    for i in 1..=3 {
        t.set(
            Generator::vector(x, i),
            Generator::H,
            Element::term(Generator::vector(z, i), coeff.clone()),
        );
    }
}

/// Tensor with the standard rotation sector and one coefficient per
/// non-rotation bracket family (zero coefficients leave the family empty).
pub(crate) fn assemble(coeffs: &[(BracketFamily, Coefficient)]) -> StructureTensor {
    let mut t = rotation_sector();
    for (fam, c) in coeffs {
        if c.is_zero() {
            continue;
        }
        match fam {
            BracketFamily::BoostTime => put_with_time(&mut t, Sector::Boost, Sector::Translation, c),
            BracketFamily::BoostBoost => put_cross(&mut t, Sector::Boost, Sector::Boost, Sector::Rotation, c),
            BracketFamily::BoostTranslation => put_diagonal(&mut t, Sector::Boost, Sector::Translation, c),
            BracketFamily::TranslationTranslation => {
                put_cross(&mut t, Sector::Translation, Sector::Translation, Sector::Rotation, c)
            }
            BracketFamily::TranslationTime => put_with_time(&mut t, Sector::Translation, Sector::Boost, c),
        }
    }
    t
}

/// De Sitter structure constants for one bracket family.
fn de_sitter_coefficient(fam: BracketFamily, frame: Parameterization) -> Coefficient {
    use BracketFamily::*;
    use Param::*;
    let one = Coefficient::one;
    match frame {
        Parameterization::Dynamical => match fam {
            BoostTime => one().pow(Mass, -1),
            BoostBoost => Coefficient::int(-1).pow(Mass, -1).pow(Energy, -1),
            BoostTranslation => one().pow(Energy, -1),
            TranslationTranslation => one().pow(Compliance, -1).pow(Energy, -1).signed(),
            TranslationTime => one().pow(Compliance, -1).signed(),
        },
        Parameterization::Kinematical => match fam {
            BoostTime => one(),
            BoostBoost => Coefficient::int(-1).pow(Speed, -2),
            BoostTranslation => one().pow(Speed, -2),
            TranslationTranslation => one().pow(Radius, -2).signed(),
            TranslationTime => one().pow(Period, -2).signed(),
        },
        Parameterization::KinematicalUnconstrained => match fam {
            BoostTime => one().pow(Radius, 1).pow(Speed, -1).pow(Period, -1),
            BoostBoost => Coefficient::int(-1).pow(Speed, -2),
            BoostTranslation => one().pow(Period, 1).pow(Speed, -1).pow(Radius, -1),
            TranslationTranslation => one().pow(Radius, -2).signed(),
            TranslationTime => one().pow(Speed, 1).pow(Radius, -1).pow(Period, -1).signed(),
        },
    }
}

/// The family's tensor with the sign left symbolic.
pub fn build_family(family: Family, frame: Parameterization) -> LieAlgebra {
    let coeffs: Vec<_> = family
        .brackets()
        .iter()
        .map(|&fam| (fam, de_sitter_coefficient(fam, frame)))
        .collect();
    LieAlgebra {
        name: Some(family.symbol().to_string()),
        frame,
        sign: None,
        tensor: assemble(&coeffs),
    }
}

/// Template algebra for one of the twelve labels.
///
/// Every family keeps the de Sitter coefficient of each bracket it retains,
/// so the non-de Sitter rows are the de Sitter row with some entries zeroed.
pub fn build_algebra(label: AlgebraLabel, frame: Parameterization) -> LieAlgebra {
    let mut alg = build_family(label.family(), frame);
    alg.name = Some(label.to_string());
    alg.sign = label.sign();
    alg
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gen(s: &str) -> Generator {
        s.parse().unwrap()
    }

    #[test]
    fn labels_round_trip() {
        for l in AlgebraLabel::ALL {
            assert_eq!(l.to_string().parse::<AlgebraLabel>().unwrap(), l);
        }
        assert_eq!("dS−".parse::<AlgebraLabel>().unwrap().to_string(), "dS-");
        assert!("NH".parse::<AlgebraLabel>().is_err());
        assert!("G+".parse::<AlgebraLabel>().is_ok());
        assert!("X".parse::<AlgebraLabel>().is_err());
        assert_eq!("dS±".parse::<Family>().unwrap(), Family::DeSitter);
    }

    #[test]
    fn de_sitter_dynamical_row() {
        let ds = build_algebra("dS+".parse().unwrap(), Parameterization::Dynamical);
        let c = |s: &str| s.parse::<Coefficient>().unwrap();
        assert_eq!(
            ds.bracket_generators(gen("Q1"), gen("H")),
            Element::term(gen("P1"), c("m^-1"))
        );
        assert_eq!(
            ds.bracket_generators(gen("Q1"), gen("Q2")),
            Element::term(gen("J3"), c("-1 * m^-1 E0^-1"))
        );
        assert_eq!(
            ds.bracket_generators(gen("Q2"), gen("P2")),
            Element::term(gen("H"), c("E0^-1"))
        );
        assert!(ds.bracket_generators(gen("Q2"), gen("P3")).is_zero());
        assert_eq!(
            ds.bracket_generators(gen("P1"), gen("P2")),
            Element::term(gen("J3"), c("C^-1 E0^-1 * s"))
        );
        assert_eq!(
            ds.bracket_generators(gen("P3"), gen("H")),
            Element::term(gen("Q3"), c("C^-1 * s"))
        );
    }

    #[test]
    fn rotation_sector_matches_cross_product() {
        let t = rotation_sector();
        assert_eq!(t.get(gen("J1"), gen("J2")), Element::generator(gen("J3")));
        assert_eq!(t.get(gen("J3"), gen("K1")), Element::generator(gen("K2")));
        assert_eq!(
            t.get(gen("J1"), gen("P3")),
            Element::term(gen("P2"), Coefficient::int(-1))
        );
        assert!(t.get(gen("J1"), gen("H")).is_zero());
        // 3 [J,J] + 6 [J,K] + 6 [J,P]
        assert_eq!(t.len(), 15);
    }

    #[test]
    fn static_and_carroll_rows() {
        for frame in [Parameterization::Kinematical, Parameterization::Dynamical] {
            let s = build_algebra("S".parse().unwrap(), frame);
            assert_eq!(s.tensor, rotation_sector());
        }
        let c = build_algebra("C".parse().unwrap(), Parameterization::Dynamical);
        assert_eq!(c.tensor.len(), 15 + 3);
        assert_eq!(
            c.bracket_generators(gen("Q1"), gen("P1")),
            Element::term(Generator::H, "E0^-1".parse().unwrap())
        );
    }

    #[test]
    fn finiteness_table() {
        use Param::*;
        let yes = |f: Family| [Mass, Compliance, Energy].map(|p| f.is_finite(p));
        assert_eq!(yes(Family::DeSitter), [true, true, true]);
        assert_eq!(yes(Family::Poincare), [true, false, true]);
        assert_eq!(yes(Family::NewtonHooke), [true, true, false]);
        assert_eq!(yes(Family::ParaPoincare), [false, true, true]);
        assert_eq!(yes(Family::Galilei), [true, false, false]);
        assert_eq!(yes(Family::ParaGalilei), [false, true, false]);
        assert_eq!(yes(Family::Carroll), [false, false, true]);
        assert_eq!(yes(Family::Static), [false, false, false]);
    }
}
