use thiserror::Error;

use crate::algebra::Generator;
use crate::coeff::{Coefficient, Param};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("coefficients mix kinematical and dynamical parameters")]
    MixedBasis,

    #[error("cannot add unlike monomials `{0}` and `{1}`")]
    UnlikeMonomials(Box<Coefficient>, Box<Coefficient>),

    #[error("`{0}` has no exact image in the target parameter basis")]
    NotRepresentable(Box<Coefficient>),

    #[error("parameter {0} does not belong to the algebra's basis")]
    WrongBasis(Param),

    #[error("the unscaled subspace is not a subalgebra: [{x}, {y}] has a component on {target}")]
    NotSubalgebra {
        x: Generator,
        y: Generator,
        target: Generator,
    },

    #[error("structure constant `{coeff}` of [{x}, {y}] diverges in the limit")]
    Divergence {
        x: Generator,
        y: Generator,
        coeff: Box<Coefficient>,
    },

    #[error("limits must be taken in the unconstrained kinematical basis (r = c tau is already imposed)")]
    ConstrainedLimit,

    #[error("contraction produced a tensor violating the Jacobi identity")]
    JacobiViolated,

    #[error("algebra does not match any of the twelve kinematical templates: {0}")]
    Unrecognized(String),

    #[error("commutator leaves the span of the generators")]
    NotInSpan,

    #[error("unknown family `{0}`")]
    UnknownFamily(String),

    #[error("step size must be positive")]
    NonPositiveStep,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("no value supplied for parameter {0}")]
    MissingParameter(Param),

    #[error("family sign is symbolic; supply +1 or -1 to evaluate")]
    UnresolvedSign,

    #[error("`{0}` has a half-integer exponent and no exact rational value")]
    Irrational(Box<Coefficient>),

    #[error("the time pseudo-vector is undefined once E0 is infinite")]
    DegenerateView,

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
