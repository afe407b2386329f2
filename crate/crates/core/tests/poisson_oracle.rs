//! Coordinate brackets and motion equations checked against hand-entered tables.

use kinalg::algebra::{build_family, levi_civita, Family, Generator, Parameterization, Sector};
use kinalg::coeff::{Coefficient, Param};
use kinalg::poisson::{motion_equations, KirillovMatrix, PolyFunction};

#[derive(Clone, Copy, PartialEq)]
enum Entry {
    Zero,
    /// 1/m p_i, or 1/m tau_k eps for {q_i, q_j}
    OverMass,
    /// E/E0 delta_ij
    EnergyRatio,
    /// ±1/C q_i, or ∓1/C tau_k eps for {p_i, p_j}
    SignedOverCompliance,
}

/// Columns: {E,q_i}, {q_i,q_j}, {p_i,q_j}, {p_i,p_j}, {E,p_i}.
fn expected_row(f: Family) -> [Entry; 5] {
    use Entry::*;
    match f {
        Family::DeSitter => [
            OverMass,
            OverMass,
            EnergyRatio,
            SignedOverCompliance,
            SignedOverCompliance,
        ],
        Family::NewtonHooke => [OverMass, Zero, Zero, Zero, SignedOverCompliance],
        Family::Poincare => [OverMass, OverMass, EnergyRatio, Zero, Zero],
        Family::Galilei => [OverMass, Zero, Zero, Zero, Zero],
        Family::ParaPoincare => [Zero, Zero, EnergyRatio, SignedOverCompliance, SignedOverCompliance],
        Family::ParaGalilei => [Zero, Zero, Zero, Zero, SignedOverCompliance],
        Family::Carroll => [Zero, Zero, EnergyRatio, Zero, Zero],
        Family::Static => [Zero; 5],
    }
}

fn inv(p: Param) -> Coefficient {
    Coefficient::one().pow(p, -1)
}

fn q(i: usize) -> PolyFunction {
    PolyFunction::coordinate(Generator::boost(i))
}

fn p(i: usize) -> PolyFunction {
    PolyFunction::coordinate(Generator::translation(i))
}

fn energy() -> PolyFunction {
    PolyFunction::coordinate(Generator::H)
}

/// `c * j_k / E0 * eps^k_ij`
fn tau_term(i: usize, j: usize, c: &Coefficient) -> PolyFunction {
    let k = 6 - i - j;
    let scale = c
        .try_mul(&inv(Param::Energy))
        .unwrap()
        .try_mul(&Coefficient::int(levi_civita(k, i, j)))
        .unwrap();
    PolyFunction::coordinate_times(Generator::rotation(k), &scale)
}

#[test]
fn coordinate_brackets_match_the_poisson_table() {
    let over_c = inv(Param::Compliance).signed();
    for family in Family::ALL {
        let k = KirillovMatrix::new(&build_family(family, Parameterization::Dynamical)).unwrap();
        let row = expected_row(family);
        for i in 1..=3 {
            let e_q = match row[0] {
                Entry::Zero => PolyFunction::zero(),
                _ => p(i).scaled(&inv(Param::Mass)).unwrap(),
            };
            assert_eq!(k.bracket(&energy(), &q(i)).unwrap(), e_q, "{family} {{E,q{i}}}");
            let e_p = match row[4] {
                Entry::Zero => PolyFunction::zero(),
                _ => q(i).scaled(&over_c).unwrap(),
            };
            assert_eq!(k.bracket(&energy(), &p(i)).unwrap(), e_p, "{family} {{E,p{i}}}");
            for j in 1..=3 {
                let qq = match (row[1], i == j) {
                    (Entry::OverMass, false) => tau_term(i, j, &inv(Param::Mass)),
                    _ => PolyFunction::zero(),
                };
                assert_eq!(k.bracket(&q(i), &q(j)).unwrap(), qq, "{family} {{q{i},q{j}}}");
                let pq = match (row[2], i == j) {
                    (Entry::EnergyRatio, true) => energy().scaled(&inv(Param::Energy)).unwrap(),
                    _ => PolyFunction::zero(),
                };
                assert_eq!(k.bracket(&p(i), &q(j)).unwrap(), pq, "{family} {{p{i},q{j}}}");
                let pp = match (row[3], i == j) {
                    (Entry::SignedOverCompliance, false) => {
                        tau_term(i, j, &Coefficient::int(-1).pow(Param::Compliance, -1).signed())
                    }
                    _ => PolyFunction::zero(),
                };
                assert_eq!(k.bracket(&p(i), &p(j)).unwrap(), pp, "{family} {{p{i},p{j}}}");
            }
        }
    }
}

#[test]
fn rotations_act_as_vectors_on_coordinates() {
    for family in Family::ALL {
        let k = KirillovMatrix::new(&build_family(family, Parameterization::Dynamical)).unwrap();
        for sector in [Sector::Rotation, Sector::Boost, Sector::Translation] {
            for i in 1..=3 {
                for j in (1..=3).filter(|&j| j != i) {
                    let axis = 6 - i - j;
                    let got = k
                        .bracket(
                            &PolyFunction::coordinate(Generator::rotation(i)),
                            &PolyFunction::coordinate(Generator::vector(sector, j)),
                        )
                        .unwrap();
                    let sign = levi_civita(axis, i, j);
                    // {a_i, a_j} = -a_k C^k_ij with C^k = eps for every vector sector
                    let want =
                        PolyFunction::coordinate_times(Generator::vector(sector, axis), &Coefficient::int(-sign));
                    assert_eq!(got, want, "{family} {sector:?} {i} {j}");
                }
            }
        }
    }
}

#[test]
fn motion_equations_match_the_four_rows() {
    // (dq/dt has p/m, dp/dt has ±q/C)
    let rows = [
        ([Family::DeSitter, Family::NewtonHooke], true, true),
        ([Family::Poincare, Family::Galilei], true, false),
        ([Family::ParaPoincare, Family::ParaGalilei], false, true),
        ([Family::Carroll, Family::Static], false, false),
    ];
    for (families, kinetic, restoring) in rows {
        for family in families {
            let m = motion_equations(&build_family(family, Parameterization::Dynamical))
                .unwrap()
                .linear_coefficients()
                .unwrap();
            for (r, row) in m.iter().enumerate() {
                for (c, got) in row.iter().enumerate() {
                    let want = if r < 3 && c == r + 3 && kinetic {
                        inv(Param::Mass)
                    } else if r >= 3 && c + 3 == r && restoring {
                        inv(Param::Compliance).signed()
                    } else {
                        Coefficient::zero()
                    };
                    assert_eq!(*got, want, "{family} row {r} col {c}");
                }
            }
        }
    }
}
