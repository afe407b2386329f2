//! Template matching against the twelve kinematical algebras.

use num_traits::Signed;

use super::templates::assemble;
use super::{AlgebraLabel, Family, Generator, LieAlgebra};
use crate::coeff::{Coefficient, Sign};
use crate::error::{Error, Result};

/// The five brackets outside the rotation sector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BracketFamily {
    /// `[K_i, H]` on `P_i`
    BoostTime,
    /// `[K_i, K_j]` on `J_k eps^k_ij`
    BoostBoost,
    /// `[K_i, P_j]` on `H delta_ij`
    BoostTranslation,
    /// `[P_i, P_j]` on `J_k eps^k_ij`
    TranslationTranslation,
    /// `[P_i, H]` on `K_i`
    TranslationTime,
}

impl BracketFamily {
    pub const ALL: [BracketFamily; 5] = [
        BracketFamily::BoostTime,
        BracketFamily::BoostBoost,
        BracketFamily::BoostTranslation,
        BracketFamily::TranslationTranslation,
        BracketFamily::TranslationTime,
    ];

    /// A representative bracket `(x, y, target)` of the family.
    pub fn representative(self) -> (Generator, Generator, Generator) {
        use BracketFamily::*;
        match self {
            BoostTime => (Generator::boost(1), Generator::H, Generator::translation(1)),
            BoostBoost => (Generator::boost(1), Generator::boost(2), Generator::rotation(3)),
            BoostTranslation => (Generator::boost(1), Generator::translation(1), Generator::H),
            TranslationTranslation => (
                Generator::translation(1),
                Generator::translation(2),
                Generator::rotation(3),
            ),
            TranslationTime => (Generator::translation(1), Generator::H, Generator::boost(1)),
        }
    }

    /// Column heading in a given generator naming, e.g. `[Q_i,H]`.
    pub fn heading(self, boost: &str) -> String {
        use BracketFamily::*;
        match self {
            BoostTime => format!("[{boost}_i,H]"),
            BoostBoost => format!("[{boost}_i,{boost}_j]"),
            BoostTranslation => format!("[{boost}_i,P_j]"),
            TranslationTranslation => "[P_i,P_j]".into(),
            TranslationTime => "[P_i,H]".into(),
        }
    }

    /// Required sign of the coefficient in every template (`None`: the family sign `s`).
    fn template_sign(self) -> Option<i64> {
        match self {
            BracketFamily::BoostTime | BracketFamily::BoostTranslation => Some(1),
            BracketFamily::BoostBoost => Some(-1),
            _ => None,
        }
    }
}

/// Reads the per-family coefficients and checks that the tensor has exactly
/// the kinematical shape with them.
fn family_coefficients(alg: &LieAlgebra) -> Result<Vec<(BracketFamily, Coefficient)>> {
    let coeffs: Vec<(BracketFamily, Coefficient)> = BracketFamily::ALL
        .iter()
        .map(|&fam| {
            let (x, y, z) = fam.representative();
            (fam, alg.normalize(&alg.tensor.get(x, y).get(z)))
        })
        .collect();
    if alg.normalized_tensor() != assemble(&coeffs) {
        return Err(Error::Unrecognized(
            "tensor is not of the rotation-covariant kinematical shape".into(),
        ));
    }
    Ok(coeffs)
}

fn numeric_sign(c: &Coefficient, sign: Sign) -> i64 {
    let s = if c.sign_power() == 1 { sign.value() } else { 1 };
    if c.scale().is_negative() {
        -s
    } else {
        s
    }
}

/// Label of an algebra in the standard basis, by zero pattern and signs of the
/// five non-rotation brackets. Parameter magnitudes are ignored.
pub fn identify(alg: &LieAlgebra) -> Result<AlgebraLabel> {
    let coeffs = family_coefficients(alg)?;
    let needs_sign = coeffs.iter().any(|(_, c)| c.sign_power() == 1);
    let sign = match alg.sign {
        Some(s) => s,
        None if needs_sign => return Err(Error::UnresolvedSign),
        None => Sign::Plus,
    };
    let present: Vec<BracketFamily> = coeffs.iter().filter(|(_, c)| !c.is_zero()).map(|(f, _)| *f).collect();
    let family = Family::ALL
        .into_iter()
        .find(|f| f.brackets() == present.as_slice())
        .ok_or_else(|| Error::Unrecognized(format!("no template has non-zero brackets {present:?}")))?;
    let mut family_sign = None;
    for (fam, c) in coeffs.iter().filter(|(_, c)| !c.is_zero()) {
        let v = numeric_sign(c, sign);
        match fam.template_sign() {
            Some(required) if required != v => {
                return Err(Error::Unrecognized(format!("{fam:?} has the wrong sign")));
            }
            Some(_) => {}
            None => match family_sign {
                None => family_sign = Some(v),
                Some(prev) if prev != v => {
                    return Err(Error::Unrecognized("[P,P] and [P,H] signs disagree".into()));
                }
                Some(_) => {}
            },
        }
    }
    AlgebraLabel::new(family, family_sign.and_then(Sign::from_value))
}

/// Family of an algebra; a symbolic sign is read as `s = +1`.
pub fn identify_family(alg: &LieAlgebra) -> Result<Family> {
    let mut probe = alg.clone();
    probe.sign.get_or_insert(Sign::Plus);
    identify(&probe).map(AlgebraLabel::family)
}
