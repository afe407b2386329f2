//! Lie-Poisson structure on the dual of a kinematical algebra.
//!
//! Coordinates `a_i = (j, q, p, E)` are dual to `(J, Q, P, H)`, and
//! `{a_i, a_j} = K_ij(a) = -a_k C^k_ij`. Time evolution is `df/dt = {E, f}`.

mod poly;

use crate::algebra::{Generator, LieAlgebra, Sector};
use crate::coeff::{Coefficient, Param, ParamBasis, Sign};
use crate::error::{Error, Result};

pub use poly::{coordinate_name, CoordExponents, PolyFunction};

/// The Kirillov form of an algebra in the dynamical basis.
#[derive(Debug, Clone, PartialEq)]
pub struct KirillovMatrix {
    sign: Option<Sign>,
    entries: Vec<PolyFunction>,
}

impl KirillovMatrix {
    /// `K_ij = -a_k C^k_ij`; kinematical algebras are converted first.
    pub fn new(alg: &LieAlgebra) -> Result<Self> {
        let alg = alg.convert(ParamBasis::Dynamical)?;
        let n = Generator::COUNT;
        let mut entries = vec![PolyFunction::zero(); n * n];
        for (x, y, e) in alg.tensor.iter() {
            let mut k = PolyFunction::zero();
            for (z, c) in e.iter() {
                k = &k - &PolyFunction::coordinate_times(z, c);
            }
            entries[y.index() * n + x.index()] = -&k;
            entries[x.index() * n + y.index()] = k;
        }
        Ok(KirillovMatrix {
            sign: alg.sign,
            entries,
        })
    }

    pub fn sign(&self) -> Option<Sign> {
        self.sign
    }

    /// `{a_x, a_y}`.
    pub fn get(&self, x: Generator, y: Generator) -> &PolyFunction {
        &self.entries[x.index() * Generator::COUNT + y.index()]
    }

    /// `{f, g} = K_ij df/da_i dg/da_j`.
    pub fn bracket(&self, f: &PolyFunction, g: &PolyFunction) -> Result<PolyFunction> {
        let df: Vec<PolyFunction> = Generator::all().map(|x| f.derivative(x)).collect();
        let dg: Vec<PolyFunction> = Generator::all().map(|y| g.derivative(y)).collect();
        let mut out = PolyFunction::zero();
        for x in Generator::all() {
            if df[x.index()].is_zero() {
                continue;
            }
            for y in Generator::all() {
                let k = self.get(x, y);
                if k.is_zero() || dg[y.index()].is_zero() {
                    continue;
                }
                out = &out + &k.try_mul(&df[x.index()])?.try_mul(&dg[y.index()])?;
            }
        }
        Ok(out)
    }

    /// Components of `X_f = K_ij df/da_i d/da_j`.
    pub fn vector_field(&self, f: &PolyFunction) -> Result<HamiltonianVectorField> {
        let mut components = vec![PolyFunction::zero(); Generator::COUNT];
        for x in Generator::all() {
            let d = f.derivative(x);
            if d.is_zero() {
                continue;
            }
            for y in Generator::all() {
                let k = self.get(x, y);
                if !k.is_zero() {
                    components[y.index()] = &components[y.index()] + &k.try_mul(&d)?;
                }
            }
        }
        Ok(HamiltonianVectorField { components })
    }
}

pub fn kirillov_matrix(alg: &LieAlgebra) -> Result<KirillovMatrix> {
    KirillovMatrix::new(alg)
}

pub fn poisson_bracket(alg: &LieAlgebra, f: &PolyFunction, g: &PolyFunction) -> Result<PolyFunction> {
    KirillovMatrix::new(alg)?.bracket(f, g)
}

/// A vector field on the dual, one polynomial coefficient per coordinate.
#[derive(Debug, Clone, PartialEq)]
pub struct HamiltonianVectorField {
    components: Vec<PolyFunction>,
}

impl HamiltonianVectorField {
    /// Coefficient of `d/da_g`.
    pub fn component(&self, g: Generator) -> &PolyFunction {
        &self.components[g.index()]
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(PolyFunction::is_zero)
    }

    /// `X(g) = X^j dg/da_j`.
    pub fn apply(&self, g: &PolyFunction) -> Result<PolyFunction> {
        let mut out = PolyFunction::zero();
        for y in Generator::all() {
            let c = &self.components[y.index()];
            if !c.is_zero() {
                out = &out + &c.try_mul(&g.derivative(y))?;
            }
        }
        Ok(out)
    }
}

impl std::fmt::Display for HamiltonianVectorField {
    /// `(p1/m) d/dq1 + ...`, zero components omitted.
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = Generator::all()
            .filter(|g| !self.components[g.index()].is_zero())
            .map(|g| format!("({}) d/d{}", self.components[g.index()], coordinate_name(g)))
            .collect();
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

pub fn hamiltonian_vector_field(alg: &LieAlgebra, f: &PolyFunction) -> Result<HamiltonianVectorField> {
    KirillovMatrix::new(alg)?.vector_field(f)
}

/// Right-hand sides `dq_i/dt = {E, q_i}` and `dp_i/dt = {E, p_i}`.
#[derive(Debug, Clone, PartialEq)]
pub struct MotionEquations {
    pub q_dot: [PolyFunction; 3],
    pub p_dot: [PolyFunction; 3],
    pub sign: Option<Sign>,
}

impl MotionEquations {
    /// Same right-hand sides, ignoring which signed member they came from.
    pub fn same_equations(&self, other: &MotionEquations) -> bool {
        self.q_dot == other.q_dot && self.p_dot == other.p_dot
    }

    /// Coefficients of `dx/dt = M x` on `x = (q1, q2, q3, p1, p2, p3)`, when the
    /// right-hand sides are linear in `q` and `p` alone.
    pub fn linear_coefficients(&self) -> Result<[[Coefficient; 6]; 6]> {
        let vars: Vec<Generator> = Sector::Boost
            .generators()
            .into_iter()
            .chain(Sector::Translation.generators())
            .collect();
        let rows: Vec<&PolyFunction> = self.q_dot.iter().chain(self.p_dot.iter()).collect();
        let mut m: [[Coefficient; 6]; 6] = Default::default();
        for (r, f) in rows.iter().enumerate() {
            let mut rebuilt = PolyFunction::zero();
            for (c, &v) in vars.iter().enumerate() {
                let mut e = [0; Generator::COUNT];
                e[v.index()] = 1;
                m[r][c] = f.coefficient_of(&e)?;
                rebuilt = &rebuilt + &PolyFunction::coordinate_times(v, &m[r][c]);
            }
            if rebuilt != **f {
                return Err(Error::InvalidParameter(format!(
                    "equation `{f}` is not linear in q and p"
                )));
            }
        }
        Ok(m)
    }
}

pub fn motion_equations(alg: &LieAlgebra) -> Result<MotionEquations> {
    let k = KirillovMatrix::new(alg)?;
    let e = PolyFunction::coordinate(Generator::H);
    let rhs = |sector: Sector| -> Result<[PolyFunction; 3]> {
        let mut out: [PolyFunction; 3] = Default::default();
        for (i, slot) in out.iter_mut().enumerate() {
            *slot = k.bracket(&e, &PolyFunction::coordinate(Generator::vector(sector, i + 1)))?;
        }
        Ok(out)
    };
    Ok(MotionEquations {
        q_dot: rhs(Sector::Boost)?,
        p_dot: rhs(Sector::Translation)?,
        sign: k.sign(),
    })
}

/// The time pseudo-vector component `tau_i = j_i / E0`.
///
/// Only defined while `E0` is finite, i.e. for algebras whose structure
/// constants still involve it.
pub fn tau(alg: &LieAlgebra, axis: usize) -> Result<PolyFunction> {
    if alg.basis() != ParamBasis::Dynamical {
        return Err(Error::WrongBasis(Param::Energy));
    }
    if !alg.parameters().contains(&Param::Energy) {
        return Err(Error::DegenerateView);
    }
    Ok(PolyFunction::coordinate_times(
        Generator::rotation(axis),
        &Coefficient::one().pow(Param::Energy, -1),
    ))
}
