//! The pseudo-orthogonal algebra O±(5) as exact 5×5 matrices and as linear
//! vector fields on R^5, and its rescaling to kinematical generators.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::algebra::{build_algebra, AlgebraLabel, Element, Family, Generator, Parameterization, StructureTensor};
use crate::coeff::{Coefficient, Param, Rational, Sign};
use crate::error::{Error, Result};

/// Exact rational 5×5 matrix; indices are 0-based, so the physical axes
/// `x^4`, `x^5` sit at 3 and 4.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matrix5([[Rational; 5]; 5]);

impl Matrix5 {
    pub fn zero() -> Self {
        Matrix5(std::array::from_fn(|_| std::array::from_fn(|_| Rational::zero())))
    }

    pub fn identity() -> Self {
        Self::diagonal(std::array::from_fn(|_| Rational::one()))
    }

    pub fn diagonal(d: [Rational; 5]) -> Self {
        let mut m = Self::zero();
        for (i, v) in d.into_iter().enumerate() {
            m.0[i][i] = v;
        }
        m
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.0[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.0[i][j] = v;
    }

    pub fn transpose(&self) -> Self {
        Matrix5(std::array::from_fn(|i| std::array::from_fn(|j| self.0[j][i].clone())))
    }

    pub fn scaled(&self, k: &Rational) -> Self {
        Matrix5(std::array::from_fn(|i| std::array::from_fn(|j| &self.0[i][j] * k)))
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().flatten().all(Zero::is_zero)
    }

    pub fn commutator(&self, other: &Matrix5) -> Matrix5 {
        &(self * other) - &(other * self)
    }

    fn entries(&self) -> impl Iterator<Item = &Rational> {
        self.0.iter().flatten()
    }
}

impl Add for &Matrix5 {
    type Output = Matrix5;

    fn add(self, rhs: &Matrix5) -> Matrix5 {
        Matrix5(std::array::from_fn(|i| {
            std::array::from_fn(|j| &self.0[i][j] + &rhs.0[i][j])
        }))
    }
}

impl Sub for &Matrix5 {
    type Output = Matrix5;

    fn sub(self, rhs: &Matrix5) -> Matrix5 {
        Matrix5(std::array::from_fn(|i| {
            std::array::from_fn(|j| &self.0[i][j] - &rhs.0[i][j])
        }))
    }
}

impl Neg for &Matrix5 {
    type Output = Matrix5;

    fn neg(self) -> Matrix5 {
        self.scaled(&-Rational::one())
    }
}

impl Mul for &Matrix5 {
    type Output = Matrix5;

    fn mul(self, rhs: &Matrix5) -> Matrix5 {
        Matrix5(std::array::from_fn(|i| {
            std::array::from_fn(|j| (0..5).map(|k| &self.0[i][k] * &rhs.0[k][j]).sum())
        }))
    }
}

impl fmt::Display for Matrix5 {
    /// Right-aligned columns, one row per line.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self.entries().map(|q| q.to_string().len()).max().unwrap_or(1);
        for row in &self.0 {
            let cells: Vec<String> = row.iter().map(|q| format!("{:>width$}", q.to_string())).collect();
            writeln!(f, "[ {} ]", cells.join("  "))?;
        }
        Ok(())
    }
}

fn int(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// `eta = diag(1, 1, 1, -1, s)`.
pub fn metric(sign: Sign) -> Matrix5 {
    Matrix5::diagonal([int(1), int(1), int(1), int(-1), int(sign.value())])
}

/// `X^T eta + eta X = 0`.
pub fn is_isometry(x: &Matrix5, sign: Sign) -> bool {
    let eta = metric(sign);
    (&(&x.transpose() * &eta) + &(&eta * x)).is_zero()
}

/// The ten generators `J_k, A_k, B_k, Gamma`, stored in the slots of
/// `J_k, K_k, P_k, H` respectively.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixGenerators {
    pub sign: Sign,
    mats: [Matrix5; Generator::COUNT],
}

impl MatrixGenerators {
    pub fn get(&self, g: Generator) -> &Matrix5 {
        &self.mats[g.index()]
    }

    pub fn iter(&self) -> impl Iterator<Item = (Generator, &Matrix5)> {
        Generator::all().zip(self.mats.iter())
    }

    /// Conventional name of each slot: `J1`, `A1`, `B1`, `Gamma`.
    pub fn name(g: Generator) -> String {
        let axis = g.axis().map(|a| a.to_string()).unwrap_or_default();
        match g.sector() {
            crate::algebra::Sector::Rotation => format!("J{axis}"),
            crate::algebra::Sector::Boost => format!("A{axis}"),
            crate::algebra::Sector::Translation => format!("B{axis}"),
            crate::algebra::Sector::Time => "Gamma".into(),
        }
    }

    /// `K = A/c`, `P = B/r`, `H = Gamma/tau`; rotations unchanged.
    pub fn rescale(&self, c: &Rational, r: &Rational, tau: &Rational) -> Result<MatrixGenerators> {
        for (p, v) in [(Param::Speed, c), (Param::Radius, r), (Param::Period, tau)] {
            if !v.is_positive() {
                return Err(Error::InvalidParameter(format!("{p} must be positive, got {v}")));
            }
        }
        let mats = std::array::from_fn(|i| {
            let g = Generator::from_index(i).unwrap();
            let factor = match g.sector() {
                crate::algebra::Sector::Rotation => Rational::one(),
                crate::algebra::Sector::Boost => c.recip(),
                crate::algebra::Sector::Translation => r.recip(),
                crate::algebra::Sector::Time => tau.recip(),
            };
            self.mats[i].scaled(&factor)
        });
        Ok(MatrixGenerators { sign: self.sign, mats })
    }
}

/// The basis of O±(5): `J_k` carries the Levi-Civita block, `A_k` couples
/// `e_k` and `e_4` symmetrically, `B_k` has `1` at `(k, 5)` and `-s` at `(5, k)`,
/// `Gamma` has `1` at `(4, 5)` and `s` at `(5, 4)`.
pub fn build_matrix_generators(sign: Sign) -> MatrixGenerators {
    let s = int(sign.value());
    let mats = std::array::from_fn(|idx| {
        let g = Generator::from_index(idx).unwrap();
        let mut m = Matrix5::zero();
        match (g.sector(), g.axis()) {
            (crate::algebra::Sector::Rotation, Some(k)) => {
                for i in 1..=3 {
                    for j in 1..=3 {
                        m.set(i - 1, j - 1, int(crate::algebra::levi_civita(i, k, j)));
                    }
                }
            }
            (crate::algebra::Sector::Boost, Some(k)) => {
                m.set(k - 1, 3, int(1));
                m.set(3, k - 1, int(1));
            }
            (crate::algebra::Sector::Translation, Some(k)) => {
                m.set(k - 1, 4, int(1));
                m.set(4, k - 1, -s.clone());
            }
            _ => {
                m.set(3, 4, int(1));
                m.set(4, 3, s.clone());
            }
        }
        m
    });
    MatrixGenerators { sign, mats }
}

/// Exact coordinates of `target` in the span of `basis`, by Gaussian
/// elimination on the 25 matrix entries.
fn decompose(basis: &[Matrix5], target: &Matrix5) -> Result<Vec<Rational>> {
    let n = basis.len();
    // rows: matrix entries; columns: basis coefficients, then the target
    let mut rows: Vec<Vec<Rational>> = (0..25)
        .map(|e| {
            let (i, j) = (e / 5, e % 5);
            basis
                .iter()
                .map(|b| b.get(i, j).clone())
                .chain(std::iter::once(target.get(i, j).clone()))
                .collect()
        })
        .collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..n {
        let Some(p) = (row..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(row, p);
        let inv = rows[row][col].recip();
        for v in rows[row].iter_mut() {
            *v = &*v * &inv;
        }
        for r in 0..rows.len() {
            if r != row && !rows[r][col].is_zero() {
                let f = rows[r][col].clone();
                let pivot_row = rows[row].clone();
                for (v, p) in rows[r].iter_mut().zip(&pivot_row) {
                    *v = &*v - &(&f * p);
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    if rows[row..].iter().any(|r| !r[n].is_zero()) {
        return Err(Error::NotInSpan);
    }
    let mut x = vec![Rational::zero(); n];
    for (r, &col) in pivots.iter().enumerate() {
        x[col] = rows[r][n].clone();
    }
    Ok(x)
}

/// Structure constants read off the matrix commutators `XY - YX`, with
/// constant coefficients.
pub fn commutator_table(gens: &MatrixGenerators) -> Result<StructureTensor> {
    let basis: Vec<Matrix5> = gens.mats.to_vec();
    let mut t = StructureTensor::new();
    for x in Generator::all() {
        for y in Generator::all().filter(|&y| y > x) {
            let coords = decompose(&basis, &gens.get(x).commutator(gens.get(y)))?;
            let e: Element = Generator::all()
                .zip(coords)
                .map(|(g, q)| (g, Coefficient::constant(q)))
                .collect();
            t.set(x, y, e);
        }
    }
    Ok(t)
}

fn kinematical_values(c: &Rational, r: &Rational, tau: &Rational) -> BTreeMap<Param, Rational> {
    BTreeMap::from([
        (Param::Speed, c.clone()),
        (Param::Radius, r.clone()),
        (Param::Period, tau.clone()),
    ])
}

/// The O±(5) brackets in the `J, A, B, Gamma` basis, i.e. the unconstrained
/// de Sitter tensor at `c = r = tau = 1`.
pub fn o5_brackets(sign: Sign) -> StructureTensor {
    let one = Rational::one();
    de_sitter_unconstrained(sign, &one, &one, &one).expect("unit parameters are valid")
}

/// The unconstrained de Sitter tensor at the given parameters.
pub fn de_sitter_unconstrained(sign: Sign, c: &Rational, r: &Rational, tau: &Rational) -> Result<StructureTensor> {
    let label = AlgebraLabel::new(Family::DeSitter, Some(sign))?;
    build_algebra(label, Parameterization::KinematicalUnconstrained).evaluate_exact(&kinematical_values(c, r, tau))
}

/// The constrained de Sitter tensor at the given parameters (`r` is ignored
/// by the coefficients, which have it eliminated).
pub fn de_sitter_constrained(sign: Sign, c: &Rational, r: &Rational, tau: &Rational) -> Result<StructureTensor> {
    let label = AlgebraLabel::new(Family::DeSitter, Some(sign))?;
    let alg = build_algebra(label, Parameterization::Kinematical);
    alg.normalized_tensor().map_coefficients(|_, _, _, k| {
        Ok(Coefficient::constant(
            k.eval_exact(&kinematical_values(c, r, tau), Some(sign))?,
        ))
    })
}

/// The linear vector field `(u x)^i d/dx^i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VectorField {
    pub u: Matrix5,
}

impl VectorField {
    /// The field's action on the coordinate function `x^i`: the linear form `(u x)^i`.
    pub fn apply_to_coordinate(&self, i: usize) -> [Rational; 5] {
        std::array::from_fn(|j| self.u.get(i, j).clone())
    }

    /// Operator commutator `V W - W V`; for linear fields it is the field of `w u - u w`.
    pub fn commutator(&self, other: &VectorField) -> VectorField {
        VectorField {
            u: other.u.commutator(&self.u),
        }
    }

    pub fn scaled(&self, k: &Rational) -> VectorField {
        VectorField { u: self.u.scaled(k) }
    }

    /// Text form such as `x4 d/dx1 + x1 d/dx4`.
    pub fn to_operator_string(&self) -> String {
        let mut terms = Vec::new();
        for i in 0..5 {
            for j in 0..5 {
                let q = self.u.get(i, j);
                if q.is_zero() {
                    continue;
                }
                let coeff = if q.is_one() {
                    String::new()
                } else if *q == -Rational::one() {
                    "-".into()
                } else {
                    format!("{q} ")
                };
                terms.push(format!("{coeff}x{} d/dx{}", j + 1, i + 1));
            }
        }
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ").replace("+ -", "- ")
        }
    }
}

/// Differential-operator realization on `(x^1, ..., x^5)`:
/// `J_k = eps^i_jk x^j d_i`, `A_k = x^4 d_k + x^k d_4`, `B_k = -s x^5 d_k + x^k d_5`,
/// `Gamma = x^4 d_5 + s x^5 d_4`.
///
/// With the operator commutator these satisfy the same brackets as the
/// matrices, `[A_i, B_j] = Gamma delta_ij` included. The rotation fields are
/// oriented as `eps^i_jk` rather than `eps^i_kj`: with the latter the
/// rotation brackets come out with the opposite sign to the rest.
pub fn vector_field_realization(sign: Sign) -> [VectorField; Generator::COUNT] {
    let mats = build_matrix_generators(sign);
    let s = int(sign.value());
    std::array::from_fn(|idx| {
        let g = Generator::from_index(idx).unwrap();
        let factor = match g.sector() {
            crate::algebra::Sector::Rotation => int(-1),
            crate::algebra::Sector::Boost => int(1),
            crate::algebra::Sector::Translation => -s.clone(),
            crate::algebra::Sector::Time => s.clone(),
        };
        VectorField {
            u: mats.get(g).scaled(&factor),
        }
    })
}

/// Structure constants of the vector-field realization under the operator commutator.
pub fn vector_field_table(fields: &[VectorField; Generator::COUNT]) -> Result<StructureTensor> {
    let basis: Vec<Matrix5> = fields.iter().map(|v| v.u.clone()).collect();
    let mut t = StructureTensor::new();
    for x in Generator::all() {
        for y in Generator::all().filter(|&y| y > x) {
            let comm = fields[x.index()].commutator(&fields[y.index()]);
            let coords = decompose(&basis, &comm.u)?;
            t.set(
                x,
                y,
                Generator::all()
                    .zip(coords)
                    .map(|(g, q)| (g, Coefficient::constant(q)))
                    .collect(),
            );
        }
    }
    Ok(t)
}
