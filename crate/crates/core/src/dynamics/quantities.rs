//! Conserved quantities per family and a numeric check of `dmu = ±i_X sigma`.

use std::collections::BTreeMap;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{build_family, levi_civita, Family, Generator, Parameterization, Sector};
use crate::coeff::{Coefficient, Param, Sign};
use crate::error::Result;
use crate::poisson::{coordinate_name, HamiltonianVectorField, KirillovMatrix, PolyFunction};

/// `static + time * t + constant`, where `constant` names an integration constant.
#[derive(Debug, Clone, PartialEq)]
pub struct Quantity {
    pub static_part: PolyFunction,
    pub time_part: PolyFunction,
    pub constant: String,
}

impl Quantity {
    fn new(static_part: PolyFunction, time_part: PolyFunction, constant: impl Into<String>) -> Self {
        Quantity {
            static_part,
            time_part,
            constant: constant.into(),
        }
    }

    /// Partial derivative by a dual coordinate at time `t`.
    fn partial(
        &self,
        g: Generator,
        point: &[f64; 10],
        t: f64,
        values: &BTreeMap<Param, f64>,
        sign: Option<Sign>,
    ) -> Result<f64> {
        Ok(self.static_part.derivative(g).eval_f64(point, values, sign)?
            + t * self.time_part.derivative(g).eval_f64(point, values, sign)?)
    }
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if !self.static_part.is_zero() {
            parts.push(self.static_part.to_string());
        }
        if !self.time_part.is_zero() {
            parts.push(format!("({}) t", self.time_part));
        }
        parts.push(self.constant.clone());
        f.write_str(&parts.join(" + "))
    }
}

/// Angular momentum, position, linear momentum and energy quantities of a
/// family, with the sign `s` symbolic.
#[derive(Debug, Clone, PartialEq)]
pub struct QuantityFormulas {
    pub family: Family,
    pub angular_momentum: [Quantity; 3],
    pub position: [Quantity; 3],
    pub momentum: [Quantity; 3],
    pub energy: Quantity,
}

impl QuantityFormulas {
    /// `(name, quantity, generator whose vector field it pairs with)`.
    pub fn all(&self) -> Vec<(String, &Quantity, Generator)> {
        let mut out = Vec::new();
        for (sector, list) in [
            (Sector::Rotation, &self.angular_momentum),
            (Sector::Boost, &self.position),
            (Sector::Translation, &self.momentum),
        ] {
            for (i, q) in list.iter().enumerate() {
                let g = Generator::vector(sector, i + 1);
                out.push((format!("mu({})", coordinate_name(g)), q, g));
            }
        }
        out.push(("mu(E)".into(), &self.energy, Generator::H));
        out
    }
}

fn coeff(s: &str) -> Coefficient {
    s.parse().expect("well-formed literal")
}

fn var(g: Generator) -> PolyFunction {
    PolyFunction::coordinate(g)
}

fn scaled(f: &PolyFunction, c: &str) -> PolyFunction {
    f.scaled(&coeff(c)).expect("dynamical literals")
}

/// `sum_jk eps^k_ij a_k b_j` for vector sectors `a`, `b`.
fn cross_term(i: usize, a: Sector, b: Sector) -> PolyFunction {
    let mut out = PolyFunction::zero();
    for j in 1..=3 {
        for k in 1..=3 {
            let e = levi_civita(k, i, j);
            if e != 0 {
                let term = &var(Generator::vector(a, k)) * &var(Generator::vector(b, j));
                out = &out + &term.scaled(&Coefficient::int(e)).unwrap();
            }
        }
    }
    out
}

fn square(sector: Sector) -> PolyFunction {
    (1..=3).fold(PolyFunction::zero(), |acc, i| {
        let v = var(Generator::vector(sector, i));
        &acc + &(&v * &v)
    })
}

/// The formulas as tabulated, one row per family.
///
/// The position and momentum rows contain explicit `t` terms that are
/// integration bookkeeping rather than functions on the dual; the Para-Galilei
/// momentum keeps its printed form `s q_i / C + p0_i` without a `t`.
pub fn quantity_formulas(family: Family) -> QuantityFormulas {
    use Family::*;
    let zero = PolyFunction::zero;
    let e = var(Generator::H);
    let make = |i: usize| {
        let q = var(Generator::boost(i));
        let p = var(Generator::translation(i));
        let rot_p = scaled(&cross_term(i, Sector::Rotation, Sector::Translation), "m^-1 E0^-1");
        let rot_q = scaled(&cross_term(i, Sector::Rotation, Sector::Boost), "C^-1 E0^-1 * s");
        let eq = scaled(&(&e * &q), "E0^-1");
        let ep = scaled(&(&e * &p), "E0^-1");
        let p_m = scaled(&p, "m^-1");
        let sq_c = scaled(&q, "C^-1 * s");
        let (qc, pc) = (format!("q0{i}"), format!("p0{i}"));
        let position = match family {
            DeSitter | Poincare => Quantity::new(&rot_p + &eq, p_m, qc),
            NewtonHooke | Galilei => Quantity::new(zero(), p_m, qc),
            ParaPoincare | Carroll => Quantity::new(eq, zero(), qc),
            ParaGalilei | Static => Quantity::new(zero(), zero(), qc),
        };
        let momentum = match family {
            DeSitter | ParaPoincare => Quantity::new(&rot_q + &ep, sq_c, pc),
            NewtonHooke => Quantity::new(zero(), sq_c, pc),
            Poincare | Carroll => Quantity::new(ep, zero(), pc),
            ParaGalilei => Quantity::new(sq_c, zero(), pc),
            Galilei | Static => Quantity::new(zero(), zero(), pc),
        };
        let angular = Quantity::new(
            cross_term(i, Sector::Boost, Sector::Translation),
            zero(),
            format!("j0{i}"),
        );
        (angular, position, momentum)
    };
    let rows: Vec<_> = (1..=3).map(make).collect();
    let kinetic = scaled(&square(Sector::Translation), "1/2 * m^-1");
    let spring = scaled(&square(Sector::Boost), "-1/2 * C^-1 * s");
    let energy = match family {
        DeSitter | NewtonHooke => &kinetic + &spring,
        Poincare | Galilei => kinetic,
        ParaPoincare | ParaGalilei => spring,
        Carroll | Static => zero(),
    };
    QuantityFormulas {
        family,
        angular_momentum: std::array::from_fn(|i| rows[i].0.clone()),
        position: std::array::from_fn(|i| rows[i].1.clone()),
        momentum: std::array::from_fn(|i| rows[i].2.clone()),
        energy: Quantity::new(energy, zero(), "U"),
    }
}

/// Orientation of the moment relation on `sigma = dp ∧ dq - dE ∧ dt`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Convention {
    /// `dmu = -i_X sigma`: `dmu/dq = -X^p`, `dmu/dp = X^q`, `dmu/dt = X^E`, `dmu/dE = 0`
    Minus,
    /// `dmu = +i_X sigma`, all of the above negated
    Plus,
}

impl Convention {
    fn factor(self) -> f64 {
        match self {
            Convention::Minus => 1.0,
            Convention::Plus => -1.0,
        }
    }
}

/// One partial derivative of one quantity over all sample points.
#[derive(Debug, Clone, PartialEq)]
pub struct ComponentCheck {
    pub quantity: String,
    /// `d/dq1`, ..., `d/dp3`, `d/dt`, `d/dE`
    pub component: String,
    pub passed: bool,
    pub max_error: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MomentReport {
    pub family: Family,
    pub convention: Convention,
    pub samples: usize,
    pub checks: Vec<ComponentCheck>,
}

impl MomentReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    /// Whether every component of the named quantity (e.g. `mu(E)`) matches.
    pub fn quantity_passes(&self, quantity: &str) -> bool {
        self.checks.iter().filter(|c| c.quantity == quantity).all(|c| c.passed)
    }

    pub fn mismatches(&self) -> impl Iterator<Item = &ComponentCheck> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

/// Compares the partial derivatives of every quantity with the matching
/// components of the Hamiltonian vector field of its coordinate, at random
/// `(q, p, E, t)`, random fixed `j` and random positive parameters. Signed
/// families alternate the sign between samples.
pub fn verify_moment_relation(
    family: Family,
    convention: Convention,
    samples: usize,
    seed: u64,
) -> Result<MomentReport> {
    let formulas = quantity_formulas(family);
    let kirillov = KirillovMatrix::new(&build_family(family, Parameterization::Dynamical))?;
    let quantities = formulas.all();
    let fields = quantities
        .iter()
        .map(|(_, _, g)| kirillov.vector_field(&var(*g)))
        .collect::<Result<Vec<_>>>()?;

    let mut components: Vec<(String, ComponentFn)> = Vec::new();
    for sector in [Sector::Boost, Sector::Translation] {
        for j in 1..=3 {
            let g = Generator::vector(sector, j);
            let partner = match sector {
                Sector::Boost => Generator::translation(j),
                _ => Generator::boost(j),
            };
            // dmu/dq_j = -X^{p_j}, dmu/dp_j = X^{q_j} (Minus)
            let orientation = if sector == Sector::Boost { -1.0 } else { 1.0 };
            components.push((
                format!("d/d{}", coordinate_name(g)),
                Box::new(move |q, x, s| {
                    let lhs = q.partial(g, &s.point, s.t, &s.values, s.sign)?;
                    let rhs = orientation * x.component(partner).eval_f64(&s.point, &s.values, s.sign)?;
                    Ok((lhs, rhs))
                }),
            ));
        }
    }
    components.push((
        "d/dt".into(),
        Box::new(|q, x, s| {
            let lhs = q.time_part.eval_f64(&s.point, &s.values, s.sign)?;
            Ok((lhs, x.component(Generator::H).eval_f64(&s.point, &s.values, s.sign)?))
        }),
    ));
    components.push((
        "d/dE".into(),
        Box::new(|q, _, s| Ok((q.partial(Generator::H, &s.point, s.t, &s.values, s.sign)?, 0.0))),
    ));

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let points: Vec<Sample> = (0..samples).map(|n| Sample::random(&mut rng, family, n)).collect();
    let mut checks = Vec::new();
    for ((name, quantity, _), field) in quantities.iter().zip(&fields) {
        for (component, eval) in &components {
            let mut max_error: f64 = 0.0;
            let mut passed = true;
            for s in &points {
                let (lhs, rhs) = eval(quantity, field, s)?;
                let rhs = convention.factor() * rhs;
                let err = (lhs - rhs).abs();
                max_error = max_error.max(err);
                if err > 1e-9 * (1.0 + lhs.abs() + rhs.abs()) {
                    passed = false;
                }
            }
            checks.push(ComponentCheck {
                quantity: name.clone(),
                component: component.clone(),
                passed,
                max_error,
            });
        }
    }
    Ok(MomentReport {
        family,
        convention,
        samples,
        checks,
    })
}

/// `(dmu, field component)` for one derivative at one sample.
type ComponentFn = Box<dyn Fn(&Quantity, &HamiltonianVectorField, &Sample) -> Result<(f64, f64)>>;

struct Sample {
    point: [f64; 10],
    t: f64,
    values: BTreeMap<Param, f64>,
    sign: Option<Sign>,
}

impl Sample {
    fn random(rng: &mut ChaCha8Rng, family: Family, n: usize) -> Sample {
        let point = std::array::from_fn(|_| rng.gen_range(-2.0..2.0));
        let t = rng.gen_range(-3.0..3.0);
        let values = [Param::Mass, Param::Compliance, Param::Energy]
            .into_iter()
            .map(|p| (p, rng.gen_range(0.5..3.0)))
            .collect();
        let sign = family
            .is_signed()
            .then_some(if n.is_multiple_of(2) { Sign::Plus } else { Sign::Minus });
        Sample { point, t, values, sign }
    }
}
