//! Self-check suites run by `kinalg verify`.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{
    build_algebra, build_family, contract_limit, contraction_graph, from_json, identify, iw_contract,
    kinematical_contraction_graph, to_json, AlgebraLabel, Family, Generator, LieAlgebra, Limit, Parameterization,
    Sector, SubspaceSplit,
};
use crate::coeff::{Param, ParamBasis, Rational, Sign};
use crate::dynamics::{
    angular_momentum, energy, integrate, quantity_formulas, verify_moment_relation, Convention, DynParams, Method,
    PhaseState,
};
use crate::error::{Error, Result};
use crate::poisson::{motion_equations, tau, KirillovMatrix, PolyFunction};
use crate::realization::{
    build_matrix_generators, commutator_table, de_sitter_constrained, de_sitter_unconstrained, is_isometry,
    o5_brackets, vector_field_realization, vector_field_table, Matrix5,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scope {
    All,
    Algebra,
    Realization,
    Poisson,
    Dynamics,
}

impl Scope {
    fn suites(self) -> Vec<Scope> {
        match self {
            Scope::All => vec![Scope::Algebra, Scope::Realization, Scope::Poisson, Scope::Dynamics],
            s => vec![s],
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Scope::All => "all",
            Scope::Algebra => "algebra",
            Scope::Realization => "realization",
            Scope::Poisson => "poisson",
            Scope::Dynamics => "dynamics",
        }
    }
}

impl FromStr for Scope {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        [
            Scope::All,
            Scope::Algebra,
            Scope::Realization,
            Scope::Poisson,
            Scope::Dynamics,
        ]
        .into_iter()
        .find(|x| x.name() == s)
        .ok_or_else(|| Error::Parse(format!("unknown scope `{s}`")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    /// a known, documented mismatch
    Warn,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Warn => "WARN",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub status: Status,
    pub name: String,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteReport {
    pub suite: Scope,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    fn new(suite: Scope) -> Self {
        SuiteReport {
            suite,
            checks: Vec::new(),
        }
    }

    fn record(&mut self, name: impl Into<String>, outcome: Result<bool>, detail: impl Into<String>) {
        let (status, detail) = match outcome {
            Ok(true) => (Status::Pass, detail.into()),
            Ok(false) => (Status::Fail, detail.into()),
            Err(e) => (Status::Fail, format!("error: {e}")),
        };
        self.checks.push(Check {
            status,
            name: name.into(),
            detail,
        });
    }

    fn warn(&mut self, name: impl Into<String>, detail: impl Into<String>) {
        self.checks.push(Check {
            status: Status::Warn,
            name: name.into(),
            detail: detail.into(),
        });
    }

    pub fn failed(&self) -> bool {
        self.checks.iter().any(|c| c.status == Status::Fail)
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            write!(f, "[{}] {}: {}", c.status, self.suite.name(), c.name)?;
            if !c.detail.is_empty() {
                write!(f, " ({})", c.detail)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Runs the suites of `scope` concurrently; reports come back in suite order.
pub fn run(scope: Scope, seed: u64) -> Vec<SuiteReport> {
    let suites = scope.suites();
    std::thread::scope(|s| {
        let handles: Vec<_> = suites
            .iter()
            .map(|&suite| {
                s.spawn(move || match suite {
                    Scope::Algebra => algebra_suite(),
                    Scope::Realization => realization_suite(seed),
                    Scope::Poisson => poisson_suite(seed),
                    _ => dynamics_suite(seed),
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("suite thread panicked"))
            .collect()
    })
}

const FRAMES: [Parameterization; 3] = [
    Parameterization::Kinematical,
    Parameterization::KinematicalUnconstrained,
    Parameterization::Dynamical,
];

fn all_labels(frame: Parameterization) -> impl Iterator<Item = LieAlgebra> {
    AlgebraLabel::ALL.into_iter().map(move |l| build_algebra(l, frame))
}

fn algebra_suite() -> SuiteReport {
    let mut r = SuiteReport::new(Scope::Algebra);
    for frame in FRAMES {
        let outcome = all_labels(frame).try_fold(true, |ok, a| Ok::<_, Error>(ok && a.jacobi_residual()?.is_empty()));
        r.record(
            format!("Jacobi identity, 12 algebras, {} basis", frame.as_str()),
            outcome,
            "exact",
        );
        r.record(
            format!("standard rotation sector, {} basis", frame.as_str()),
            Ok(all_labels(frame).all(|a| a.has_standard_rotation_sector())),
            "",
        );
        r.record(
            format!("identify inverts build, {} basis", frame.as_str()),
            Ok(AlgebraLabel::ALL
                .iter()
                .all(|&l| identify(&build_algebra(l, frame)) == Ok(l))),
            "",
        );
    }
    let conversion = AlgebraLabel::ALL.iter().try_fold(true, |ok, &l| {
        let k = build_algebra(l, Parameterization::Kinematical);
        let d = build_algebra(l, Parameterization::Dynamical);
        let there = k.convert(ParamBasis::Dynamical)?;
        let back = d.convert(ParamBasis::Kinematical)?;
        Ok::<_, Error>(ok && there.normalized_tensor() == d.tensor && back.same_structure(&k))
    });
    r.record("kinematical and dynamical tables agree under Q = K/m", conversion, "");

    let expected_cube = {
        use Family::*;
        let mut e = vec![
            (DeSitter, Limit::Mass, ParaPoincare),
            (NewtonHooke, Limit::Mass, ParaGalilei),
            (Poincare, Limit::Mass, Carroll),
            (Galilei, Limit::Mass, Static),
            (DeSitter, Limit::Energy, NewtonHooke),
            (ParaPoincare, Limit::Energy, ParaGalilei),
            (Poincare, Limit::Energy, Galilei),
            (Carroll, Limit::Energy, Static),
            (DeSitter, Limit::Compliance, Poincare),
            (NewtonHooke, Limit::Compliance, Galilei),
            (ParaPoincare, Limit::Compliance, Carroll),
            (ParaGalilei, Limit::Compliance, Static),
        ];
        e.sort();
        e
    };
    let cube = contraction_graph().map(|g| {
        let mut edges = g.edges();
        edges.sort();
        (g.node_count(), edges)
    });
    r.record(
        "contraction cube in m, C, E0: 8 nodes, 12 edges",
        cube.map(|(n, e)| n == 8 && e == expected_cube),
        "green m, red E0, blue C",
    );
    r.record(
        "contraction cube in c, r, tau: 8 nodes, 12 edges",
        kinematical_contraction_graph().map(|g| g.node_count() == 8 && g.edge_count() == 12),
        "",
    );

    let pairs = [
        (Limit::SpeedSpace, [Sector::Rotation, Sector::Time]),
        (Limit::SpeedTime, [Sector::Rotation, Sector::Translation]),
        (Limit::SpaceTime, [Sector::Rotation, Sector::Boost]),
    ];
    for sign in [Sign::Plus, Sign::Minus] {
        let ds = build_algebra(
            AlgebraLabel::new(Family::DeSitter, Some(sign)).unwrap(),
            Parameterization::KinematicalUnconstrained,
        );
        for (limit, sectors) in pairs {
            let outcome = contract_limit(&ds, limit.params())
                .and_then(|a| Ok(a.tensor == iw_contract(&ds, &SubspaceSplit::from_sectors(&sectors))?.tensor));
            r.record(
                format!(
                    "dS{} limit {} equals Inonu-Wigner contraction",
                    sign.symbol(),
                    limit.tag()
                ),
                outcome,
                "",
            );
        }
    }

    let singles = [Param::Mass, Param::Compliance, Param::Energy];
    let commute = Family::ALL.iter().try_fold(true, |ok, &f| {
        let a = build_family(f, Parameterization::Dynamical);
        let mut ok = ok;
        for (i, &p1) in singles.iter().enumerate() {
            let once = contract_limit(&a, &[p1])?;
            ok &= contract_limit(&once, &[p1])?.tensor == once.tensor;
            for &p2 in &singles[i + 1..] {
                let ab = contract_limit(&once, &[p2])?;
                let ba = contract_limit(&contract_limit(&a, &[p2])?, &[p1])?;
                ok &= ab.tensor == ba.tensor;
            }
        }
        Ok::<_, Error>(ok)
    });
    r.record(
        "single-parameter limits commute and are idempotent",
        commute,
        "8 families",
    );

    let json = FRAMES.iter().try_fold(true, |ok, &frame| {
        all_labels(frame).try_fold(ok, |ok, a| {
            let text = to_json(&a);
            Ok::<_, Error>(ok && to_json(&from_json(&text)?) == text)
        })
    });
    r.record("JSON round trip is byte-identical", json, "");
    r
}

fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    Rational::new(rng.gen_range(1i64..=12).into(), rng.gen_range(1i64..=7).into())
}

fn realization_suite(seed: u64) -> SuiteReport {
    let mut r = SuiteReport::new(Scope::Realization);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for sign in [Sign::Plus, Sign::Minus] {
        let gens = build_matrix_generators(sign);
        let mut ok = gens.iter().all(|(_, m)| is_isometry(m, sign));
        for _ in 0..20 {
            let combo = gens.iter().fold(Matrix5::zero(), |acc, (_, m)| {
                let k = Rational::new(rng.gen_range(-9i64..=9).into(), rng.gen_range(1i64..=5).into());
                &acc + &m.scaled(&k)
            });
            ok &= is_isometry(&combo, sign);
        }
        let s = sign.symbol();
        r.record(
            format!("isometry condition, sign {s}"),
            Ok(ok),
            "10 generators and 20 combinations",
        );
        r.record(
            format!("matrix commutators, sign {s}"),
            commutator_table(&gens).map(|t| t == o5_brackets(sign)),
            "",
        );
        r.record(
            format!("vector-field commutators, sign {s}"),
            vector_field_table(&vector_field_realization(sign)).map(|t| t == o5_brackets(sign)),
            "",
        );
        let mut constrained = Ok(true);
        let mut free = Ok(true);
        for _ in 0..20 {
            let (c, tau) = (random_rational(&mut rng), random_rational(&mut rng));
            let rr = &c * &tau;
            constrained = constrained.and_then(|ok| {
                Ok(ok
                    && commutator_table(&gens.rescale(&c, &rr, &tau)?)? == de_sitter_constrained(sign, &c, &rr, &tau)?)
            });
            let other_r = random_rational(&mut rng);
            free = free.and_then(|ok| {
                Ok(ok
                    && commutator_table(&gens.rescale(&c, &other_r, &tau)?)?
                        == de_sitter_unconstrained(sign, &c, &other_r, &tau)?)
            });
        }
        r.record(
            format!("rescaled table with r = c tau, sign {s}"),
            constrained,
            "20 random rationals",
        );
        r.record(
            format!("rescaled table, independent c, r, tau, sign {s}"),
            free,
            "20 random rationals",
        );
    }
    r
}

fn poisson_suite(seed: u64) -> SuiteReport {
    let mut r = SuiteReport::new(Scope::Poisson);
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    let algebras: Vec<LieAlgebra> = all_labels(Parameterization::Dynamical).collect();

    let coords = algebras.iter().try_fold(true, |ok, a| {
        let k = KirillovMatrix::new(a)?;
        let mut ok = ok;
        for x in Generator::all() {
            let field = k.vector_field(&PolyFunction::coordinate(x))?;
            for y in Generator::all() {
                let (fx, fy) = (PolyFunction::coordinate(x), PolyFunction::coordinate(y));
                let b = k.bracket(&fx, &fy)?;
                ok &= b == *k.get(x, y) && field.apply(&fy)? == b;
            }
        }
        Ok::<_, Error>(ok)
    });
    r.record(
        "coordinate brackets equal the Kirillov form and X_f(g)",
        coords,
        "12 algebras",
    );

    let triples = 100;
    let (mut anti, mut leibniz, mut jacobi) = (Ok(true), Ok(true), Ok(true));
    for a in &algebras {
        let k = match KirillovMatrix::new(a) {
            Ok(k) => k,
            Err(e) => {
                anti = Err(e);
                break;
            }
        };
        for _ in 0..triples {
            let [f, g, h] = std::array::from_fn(|_| PolyFunction::random(&mut rng, 2, 3, ParamBasis::Dynamical));
            anti = anti.and_then(|ok| Ok(ok && (&k.bracket(&f, &g)? + &k.bracket(&g, &f)?).is_zero()));
            leibniz = leibniz.and_then(|ok| {
                let lhs = k.bracket(&f, &g.try_mul(&h)?)?;
                let rhs = &k.bracket(&f, &g)?.try_mul(&h)? + &g.try_mul(&k.bracket(&f, &h)?)?;
                Ok(ok && lhs == rhs)
            });
            jacobi = jacobi.and_then(|ok| {
                let sum = &(&k.bracket(&f, &k.bracket(&g, &h)?)? + &k.bracket(&g, &k.bracket(&h, &f)?)?)
                    + &k.bracket(&h, &k.bracket(&f, &g)?)?;
                Ok(ok && sum.is_zero())
            });
        }
    }
    let detail = format!("{triples} random degree-2 triples per algebra");
    r.record("antisymmetry", anti, detail.clone());
    r.record("Leibniz rule", leibniz, detail.clone());
    r.record("Jacobi identity", jacobi, detail);

    let pairs = Family::ALL.iter().try_fold(true, |ok, &f| {
        let a = build_family(f, Parameterization::Dynamical);
        let newtonian = contract_limit(&a, &[Param::Energy])?;
        Ok::<_, Error>(ok && motion_equations(&a)?.same_equations(&motion_equations(&newtonian)?))
    });
    r.record("motion equations shared by E0 -> inf pairs", pairs, "");

    let rotations = Family::ALL
        .iter()
        .filter(|f| f.is_finite(Param::Energy))
        .try_fold(true, |ok, &f| {
            let a = build_family(f, Parameterization::Dynamical);
            let k = KirillovMatrix::new(&a)?;
            let inv_e0 = crate::coeff::Coefficient::int(-1).pow(Param::Energy, -1);
            let mut ok = ok;
            for i in 1..=3 {
                let ti = tau(&a, i)?;
                ok &= k.bracket(&ti, &PolyFunction::coordinate(Generator::H))?.is_zero();
                for j in (1..=3).filter(|&j| j != i) {
                    let axis = 6 - i - j;
                    let eps = crate::algebra::levi_civita(axis, i, j);
                    for sector in [Sector::Boost, Sector::Translation] {
                        let expected = PolyFunction::coordinate_times(
                            Generator::vector(sector, axis),
                            &inv_e0.scaled(&Rational::from_integer(eps.into())),
                        );
                        ok &= k.bracket(&ti, &PolyFunction::coordinate(Generator::vector(sector, j)))? == expected;
                    }
                    let expected = tau(&a, axis)?.scaled(&inv_e0.scaled(&Rational::from_integer(eps.into())))?;
                    ok &= k.bracket(&ti, &tau(&a, j)?)? == expected;
                }
            }
            Ok::<_, Error>(ok)
        });
    r.record("time pseudo-vector brackets", rotations, "families with finite E0");

    let conserved = Family::ALL.iter().try_fold(true, |ok, &f| {
        let k = KirillovMatrix::new(&build_family(f, Parameterization::Dynamical))?;
        let h = quantity_formulas(f).energy.static_part;
        Ok::<_, Error>(ok && k.bracket(&PolyFunction::coordinate(Generator::H), &h)?.is_zero())
    });
    r.record("energy function Poisson-commutes with E", conserved, "8 families");
    r
}

fn dynamics_suite(seed: u64) -> SuiteReport {
    let mut r = SuiteReport::new(Scope::Dynamics);
    let nh: AlgebraLabel = "NH-".parse().unwrap();
    let unit = DynParams::new(nh, 1.0, 1.0, 1.0).unwrap();
    let s0 = PhaseState::new([1.0, 0.0, 0.0], [0.0; 3]);
    let period = unit.characteristic_period();
    let h = period / 1000.0;
    let result = integrate(&unit, &s0, h, 10.0 * period, Method::Rk4)
        .and_then(|rk| Ok((rk.clone(), integrate(&unit, &s0, h, 10.0 * period, Method::Exact)?)));
    match result {
        Ok((rk, exact)) => {
            let measured = rk.zero_crossing_period(0).unwrap_or(f64::NAN);
            r.record(
                "NH- period from zero crossings",
                Ok((measured - 2.0 * std::f64::consts::PI).abs() < 1e-6),
                format!("{measured:.12}"),
            );
            let e0 = energy(&unit, &s0);
            let drift = rk
                .states
                .iter()
                .map(|s| (energy(&unit, s) - e0).abs())
                .fold(0.0, f64::max);
            r.record("NH- energy drift", Ok(drift < 1e-8), format!("{drift:.2e}"));
            let l_drift = rk
                .states
                .iter()
                .flat_map(|s| {
                    angular_momentum(s)
                        .into_iter()
                        .zip(angular_momentum(&s0))
                        .map(|(a, b)| (a - b).abs())
                })
                .fold(0.0, f64::max);
            r.record(
                "NH- angular momentum drift",
                Ok(l_drift < 1e-8),
                format!("{l_drift:.2e}"),
            );
            let dist = rk.max_distance(&exact);
            r.record("NH- rk4 against closed form", Ok(dist < 1e-6), format!("{dist:.2e}"));
        }
        Err(e) => r.record("NH- integration", Err(e), ""),
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xd1);
    let mut conservation = Ok(true);
    let mut agreement = Ok(true);
    let mut worst = (0.0f64, 0.0f64, 0.0f64);
    for label in AlgebraLabel::ALL {
        let p = DynParams::new(
            label,
            rng.gen_range(0.5..2.0),
            rng.gen_range(0.5..2.0),
            rng.gen_range(0.5..2.0),
        )
        .unwrap();
        let s0 = PhaseState::new(
            std::array::from_fn(|_| rng.gen_range(-1.0..1.0)),
            std::array::from_fn(|_| rng.gen_range(-1.0..1.0)),
        );
        // the hyperbolic members grow like exp(t / sqrt(mC)); one period keeps them in range
        let hyperbolic = label.sign() == Some(Sign::Plus)
            && label.family().is_finite(Param::Compliance)
            && label.family().is_finite(Param::Mass);
        let periods = if hyperbolic { 1.0 } else { 10.0 };
        let period = p.characteristic_period();
        let run = integrate(&p, &s0, period / 1000.0, periods * period, Method::Rk4).and_then(|a| {
            Ok((
                a.clone(),
                integrate(&p, &s0, period / 1000.0, periods * period, Method::Exact)?,
            ))
        });
        let (rk, exact) = match run {
            Ok(x) => x,
            Err(e) => {
                conservation = Err(e);
                break;
            }
        };
        let e0 = energy(&p, &s0);
        let l0 = angular_momentum(&s0);
        for (a, b) in rk.states.iter().zip(&exact.states) {
            let scale_e = 1.0
                + a.p.iter().map(|x| x * x).sum::<f64>() / (2.0 * p.m)
                + a.q.iter().map(|x| x * x).sum::<f64>() / (2.0 * p.compliance);
            let qn = a.q.iter().map(|x| x * x).sum::<f64>().sqrt();
            let pn = a.p.iter().map(|x| x * x).sum::<f64>().sqrt();
            let de = (energy(&p, a) - e0).abs() / if hyperbolic { scale_e } else { 1.0 };
            let dl = angular_momentum(a)
                .iter()
                .zip(&l0)
                .map(|(x, y)| (x - y).abs())
                .fold(0.0, f64::max)
                / if hyperbolic { 1.0 + qn * pn } else { 1.0 };
            let bn = b.q.iter().chain(&b.p).map(|x| x.abs()).fold(0.0, f64::max);
            let dx =
                a.q.iter()
                    .chain(&a.p)
                    .zip(b.q.iter().chain(&b.p))
                    .map(|(x, y)| (x - y).abs())
                    .fold(0.0, f64::max)
                    / if hyperbolic { 1.0 + bn } else { 1.0 };
            worst = (worst.0.max(de), worst.1.max(dl), worst.2.max(dx));
        }
        let _ = &mut agreement;
    }
    conservation = conservation.map(|ok| ok && worst.0 < 1e-8 && worst.1 < 1e-8);
    agreement = agreement.map(|ok| ok && worst.2 < 1e-6);
    r.record(
        "energy and angular momentum conserved, 12 algebras",
        conservation,
        format!(
            "max drift {:.2e} / {:.2e}, relative for the hyperbolic members",
            worst.0, worst.1
        ),
    );
    r.record(
        "rk4 against closed forms, 12 algebras",
        agreement,
        format!("{:.2e}", worst.2),
    );

    let g = DynParams::new("G".parse().unwrap(), 1.5, 1.0, 1.0).unwrap();
    let gs0 = PhaseState::new([0.5, -1.0, 2.0], [1.0, 0.25, -0.5]);
    let charge = integrate(&g, &gs0, 0.01, 20.0, Method::Rk4).map(|tr| {
        tr.states
            .iter()
            .flat_map(|s| (0..3).map(move |i| (s.q[i] - s.p[i] * s.t / g.m - gs0.q[i]).abs()))
            .fold(0.0, f64::max)
    });
    let detail = charge.as_ref().map(|d| format!("{d:.2e}")).unwrap_or_default();
    r.record(
        "Galilei boost charge q - p t/m constant",
        charge.map(|d| d < 1e-10),
        detail,
    );

    let same = motion_equations(&build_algebra("dS-".parse().unwrap(), Parameterization::Dynamical)).and_then(|a| {
        Ok(a.same_equations(&motion_equations(&build_algebra(
            "NH-".parse().unwrap(),
            Parameterization::Dynamical,
        ))?))
    });
    r.record(
        "dS- and NH- share their equations of motion",
        same,
        "E0 -> inf is exact on (q, p)",
    );

    for family in Family::ALL {
        match verify_moment_relation(family, Convention::Minus, 100, seed) {
            Ok(report) => {
                r.record(
                    format!("{family} mu(E) matches X_E"),
                    Ok(report.quantity_passes("mu(E)")),
                    "dmu = -i_X sigma, 100 samples",
                );
                let strip = |s: &str| s.chars().filter(|c| !c.is_ascii_digit()).collect::<String>();
                let mut grouped: std::collections::BTreeMap<String, std::collections::BTreeSet<String>> =
                    Default::default();
                for c in report.mismatches() {
                    grouped
                        .entry(strip(&c.quantity))
                        .or_default()
                        .insert(strip(&c.component));
                }
                if !grouped.is_empty() {
                    let summary: Vec<String> = grouped
                        .iter()
                        .map(|(q, comps)| format!("{q}: {}", comps.iter().cloned().collect::<Vec<_>>().join(" ")))
                        .collect();
                    r.warn(format!("{family} moment relation mismatches"), summary.join("; "));
                }
            }
            Err(e) => r.record(format!("{family} moment relation"), Err(e), ""),
        }
    }
    r
}
