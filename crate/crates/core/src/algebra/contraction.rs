use std::collections::BTreeSet;

use super::{Generator, LieAlgebra, Sector};
use crate::coeff::{HalfInt, Param};
use crate::error::{Error, Result};

/// Splits the generators into the unscaled part `H` and its complement,
/// which is rescaled by `eps` before `eps -> 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubspaceSplit {
    unscaled: BTreeSet<Generator>,
}

impl SubspaceSplit {
    pub fn new(unscaled: impl IntoIterator<Item = Generator>) -> Self {
        SubspaceSplit {
            unscaled: unscaled.into_iter().collect(),
        }
    }

    pub fn from_sectors(sectors: &[Sector]) -> Self {
        Self::new(sectors.iter().flat_map(|s| s.generators()))
    }

    pub fn is_unscaled(&self, g: Generator) -> bool {
        self.unscaled.contains(&g)
    }

    pub fn unscaled(&self) -> impl Iterator<Item = Generator> + '_ {
        self.unscaled.iter().copied()
    }

    pub fn scaled(&self) -> impl Iterator<Item = Generator> + '_ {
        Generator::all().filter(|g| !self.unscaled.contains(g))
    }
}

/// Inonu-Wigner contraction: with `Y_a = X_a` on `H` and `Y_alpha = eps X_alpha`
/// on the complement, keeps `[Y_a, Y_b]` in `H`, the complement part of
/// `[Y_a, Y_alpha]`, and makes the complement abelian.
pub fn iw_contract(alg: &LieAlgebra, split: &SubspaceSplit) -> Result<LieAlgebra> {
    for (x, y, e) in alg.tensor.iter() {
        if split.is_unscaled(x) && split.is_unscaled(y) {
            if let Some((target, _)) = e.iter().find(|(z, _)| !split.is_unscaled(*z)) {
                return Err(Error::NotSubalgebra { x, y, target });
            }
        }
    }
    let tensor = alg
        .tensor
        .filter(|x, y, z, _| match (split.is_unscaled(x), split.is_unscaled(y)) {
            (true, true) => true,
            (false, false) => false,
            _ => !split.is_unscaled(z),
        });
    Ok(LieAlgebra::new(alg.frame, alg.sign, tensor))
}

/// Limit in which every parameter of `diverging` tends to infinity with their
/// ratios fixed: coefficients of negative degree vanish, degree zero survive verbatim.
pub fn contract_limit(alg: &LieAlgebra, diverging: &[Param]) -> Result<LieAlgebra> {
    if alg.frame.is_constrained() {
        return Err(Error::ConstrainedLimit);
    }
    if let Some(&p) = diverging.iter().find(|p| p.basis() != alg.basis()) {
        return Err(Error::WrongBasis(p));
    }
    for (x, y, e) in alg.tensor.iter() {
        for (_, c) in e.iter() {
            if c.limit_degree(diverging) > HalfInt::ZERO {
                return Err(Error::Divergence {
                    x,
                    y,
                    coeff: Box::new(c.clone()),
                });
            }
        }
    }
    let tensor = alg
        .tensor
        .filter(|_, _, _, c| c.limit_degree(diverging) == HalfInt::ZERO);
    let out = LieAlgebra::new(alg.frame, alg.sign, tensor);
    if !out.jacobi_residual()?.is_empty() {
        return Err(Error::JacobiViolated);
    }
    Ok(out)
}
