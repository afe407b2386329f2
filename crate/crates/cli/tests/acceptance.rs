//! One line per acceptance criterion; the test fails if any criterion fails.

use std::collections::{BTreeMap, BTreeSet};
use std::process::Command;
use std::time::Instant;

use kinalg::algebra::{
    build_algebra, build_family, contract_limit, identify, identify_family, iw_contract, AlgebraLabel, Element, Family,
    Generator, Limit, Parameterization, Sector, SubspaceSplit,
};
use kinalg::coeff::{ratio, Coefficient, Param, ParamBasis, Rational, Sign};
use kinalg::dynamics::{
    angular_momentum, energy, integrate, verify_moment_relation, Convention, DynParams, Method, PhaseState,
};
use kinalg::poisson::{motion_equations, KirillovMatrix, PolyFunction};
use kinalg::realization::{build_matrix_generators, commutator_table, is_isometry, o5_brackets};
use kinalg::tables::{table, Format, TableKind};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = fn() -> Outcome;
type DotEdge = (String, String, BTreeMap<String, String>);

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn jacobi_exactness() -> Outcome {
    let start = Instant::now();
    let frames = [
        Parameterization::Kinematical,
        Parameterization::KinematicalUnconstrained,
        Parameterization::Dynamical,
    ];
    for frame in frames {
        for l in AlgebraLabel::ALL {
            let residual = build_algebra(l, frame).jacobi_residual().map_err(err)?;
            ensure(residual.is_empty(), format!("{l} in {} basis", frame.as_str()))?;
        }
    }
    let secs = start.elapsed().as_secs_f64();
    ensure(secs < 1.0, format!("took {secs:.3} s"))?;
    Ok(format!("36 tables exact, {secs:.3} s"))
}

fn realization_table() -> Outcome {
    for sign in [Sign::Plus, Sign::Minus] {
        let s = sign.value();
        let gens = build_matrix_generators(sign);
        ensure(gens.iter().all(|(_, m)| is_isometry(m, sign)), "isometry condition")?;
        let t = commutator_table(&gens).map_err(err)?;
        ensure(t == o5_brackets(sign), "full table")?;
        let (j, a, b) = (Generator::rotation, Generator::boost, Generator::translation);
        let g = Generator::H;
        let term = |x: Generator, k: i64| Element::term(x, Coefficient::int(k));
        let spot = [
            (j(1), a(2), term(a(3), 1)),
            (j(1), b(2), term(b(3), 1)),
            (a(1), a(2), term(j(3), -1)),
            (a(1), b(1), term(g, 1)),
            (a(1), b(2), Element::zero()),
            (a(2), g, term(b(2), 1)),
            (b(1), b(2), term(j(3), s)),
            (b(3), g, term(a(3), s)),
            (j(2), g, Element::zero()),
        ];
        for (x, y, want) in spot {
            ensure(t.get(x, y) == want, format!("[{x}, {y}] sign {}", sign.symbol()))?;
        }
    }
    Ok("both signs, 10 generators".into())
}

fn rescaled_de_sitter() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let mut pick = || ratio(rng.gen_range(1..=20), rng.gen_range(1..=9));
    for _ in 0..20 {
        let (c, tau) = (pick(), pick());
        let r = &c * &tau;
        for sign in [Sign::Plus, Sign::Minus] {
            let gens = build_matrix_generators(sign).rescale(&c, &r, &tau).map_err(err)?;
            let values: BTreeMap<Param, Rational> = [
                (Param::Speed, c.clone()),
                (Param::Radius, r.clone()),
                (Param::Period, tau.clone()),
            ]
            .into();
            let ds = build_algebra(
                AlgebraLabel::new(Family::DeSitter, Some(sign)).map_err(err)?,
                Parameterization::Kinematical,
            );
            let want = ds.evaluate_exact(&values).map_err(err)?;
            ensure(
                commutator_table(&gens).map_err(err)? == want,
                format!("c = {c}, tau = {tau}, sign {}", sign.symbol()),
            )?;
        }
    }
    Ok("20 seeded (c, tau), r = c tau".into())
}

fn contraction_cube() -> Outcome {
    use Family::*;
    let expected: BTreeSet<(Family, &str, Family)> = [
        (DeSitter, "green", ParaPoincare),
        (NewtonHooke, "green", ParaGalilei),
        (Poincare, "green", Carroll),
        (Galilei, "green", Static),
        (DeSitter, "red", NewtonHooke),
        (ParaPoincare, "red", ParaGalilei),
        (Poincare, "red", Galilei),
        (Carroll, "red", Static),
        (DeSitter, "blue", Poincare),
        (NewtonHooke, "blue", Galilei),
        (ParaPoincare, "blue", Carroll),
        (ParaGalilei, "blue", Static),
    ]
    .into();
    let mut found = BTreeSet::new();
    for l in AlgebraLabel::ALL {
        let a = build_algebra(l, Parameterization::Dynamical);
        for limit in Limit::DYNAMICAL {
            let target = identify(&contract_limit(&a, limit.params()).map_err(err)?).map_err(err)?;
            if target.family() != l.family() {
                found.insert((l.family(), limit.color(), target.family()));
            }
        }
    }
    ensure(found == expected, format!("{} edges found", found.len()))?;
    Ok("12 edges, green m, red E0, blue C".into())
}

fn mechanism_equivalence() -> Outcome {
    let pairs = [
        ([Param::Speed, Param::Radius], Sector::Time),
        ([Param::Speed, Param::Period], Sector::Translation),
        ([Param::Radius, Param::Period], Sector::Boost),
    ];
    for sign in [Sign::Plus, Sign::Minus] {
        let ds = build_algebra(
            AlgebraLabel::new(Family::DeSitter, Some(sign)).map_err(err)?,
            Parameterization::KinematicalUnconstrained,
        );
        for (params, kept) in pairs {
            let limit = contract_limit(&ds, &params).map_err(err)?;
            let iw = iw_contract(&ds, &SubspaceSplit::from_sectors(&[Sector::Rotation, kept])).map_err(err)?;
            ensure(limit.tensor == iw.tensor, format!("dS{} {params:?}", sign.symbol()))?;
        }
    }
    Ok("dS+ and dS-, three parameter pairs".into())
}

fn limit_commutativity() -> Outcome {
    let singles = [Param::Mass, Param::Compliance, Param::Energy];
    for f in Family::ALL {
        let a = build_family(f, Parameterization::Dynamical);
        for (i, &x) in singles.iter().enumerate() {
            for &y in &singles[i + 1..] {
                let xy = contract_limit(&contract_limit(&a, &[x]).map_err(err)?, &[y]).map_err(err)?;
                let yx = contract_limit(&contract_limit(&a, &[y]).map_err(err)?, &[x]).map_err(err)?;
                ensure(xy.tensor == yx.tensor, format!("{f}: {x} then {y}"))?;
            }
        }
    }
    Ok("3 pairs on 8 families".into())
}

const POISSON_TABLE: &str = "\
symbol,name,\"{E,q_i}\",\"{q_i,q_j}\",\"{p_i,q_j}\",\"{p_i,p_j}\",\"{E,p_i}\"
dS±,de Sitter,1/m p_i,1/m τ_k ε^k_ij,1/E0 E δ_ij,∓1/C τ_k ε^k_ij,±1/C q_i
P,Poincare,1/m p_i,1/m τ_k ε^k_ij,1/E0 E δ_ij,0,0
NH±,Newton-Hooke,1/m p_i,0,0,0,±1/C q_i
P±,Para-Poincare,0,0,1/E0 E δ_ij,∓1/C τ_k ε^k_ij,±1/C q_i
G,Galilei,1/m p_i,0,0,0,0
G±,Para-Galilei,0,0,0,0,±1/C q_i
C,Carroll,0,0,1/E0 E δ_ij,0,0
S,Static,0,0,0,0,0
";

fn poisson_layer() -> Outcome {
    let csv = table(TableKind::Poisson)
        .and_then(|t| t.render(Format::Csv))
        .map_err(err)?;
    ensure(csv == POISSON_TABLE, format!("generated table differs:\n{csv}"))?;
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    for f in Family::ALL {
        let k = KirillovMatrix::new(&build_family(f, Parameterization::Dynamical)).map_err(err)?;
        for _ in 0..100 {
            let [a, b, c] = std::array::from_fn(|_| PolyFunction::random(&mut rng, 2, 3, ParamBasis::Dynamical));
            let br = |x: &PolyFunction, y: &PolyFunction| k.bracket(x, y).map_err(err);
            ensure((&br(&a, &b)? + &br(&b, &a)?).is_zero(), format!("{f} antisymmetry"))?;
            let leibniz = &br(&a, &b)?.try_mul(&c).map_err(err)? + &b.try_mul(&br(&a, &c)?).map_err(err)?;
            ensure(br(&a, &b.try_mul(&c).map_err(err)?)? == leibniz, format!("{f} Leibniz"))?;
            let jac = &(&br(&a, &br(&b, &c)?)? + &br(&b, &br(&c, &a)?)?) + &br(&c, &br(&a, &b)?)?;
            ensure(jac.is_zero(), format!("{f} Jacobi"))?;
        }
    }
    Ok("coordinate table exact, 100 triples per family".into())
}

const MOTION_TABLE: &str = "\
algebras,motion equations
dS± and NH±,\"dq_i/dt = 1/m p_i, dp_i/dt = ±1/C q_i\"
P and G,\"dq_i/dt = 1/m p_i, dp_i/dt = 0\"
P± and G±,\"dq_i/dt = 0, dp_i/dt = ±1/C q_i\"
C and S,\"dq_i/dt = 0, dp_i/dt = 0\"
";

fn motion_equation_rows() -> Outcome {
    let csv = table(TableKind::Motion)
        .and_then(|t| t.render(Format::Csv))
        .map_err(err)?;
    ensure(csv == MOTION_TABLE, format!("generated table differs:\n{csv}"))?;
    let pairs = [
        (Family::DeSitter, Family::NewtonHooke),
        (Family::Poincare, Family::Galilei),
        (Family::ParaPoincare, Family::ParaGalilei),
        (Family::Carroll, Family::Static),
    ];
    for (rel, newtonian) in pairs {
        let a = motion_equations(&build_family(rel, Parameterization::Dynamical)).map_err(err)?;
        let b = motion_equations(&build_family(newtonian, Parameterization::Dynamical)).map_err(err)?;
        ensure(a.same_equations(&b), format!("{rel} vs {newtonian}"))?;
        let limit = contract_limit(&build_family(rel, Parameterization::Dynamical), &[Param::Energy]).map_err(err)?;
        ensure(
            identify_family(&limit).ok() == Some(newtonian),
            format!("{rel} E0 limit"),
        )?;
    }
    Ok("four rows, E0 pairs identical".into())
}

fn desk_dynamics() -> Outcome {
    let start = Instant::now();
    let p = DynParams::new("NH-".parse().map_err(err)?, 1.0, 1.0, 1.0).map_err(err)?;
    let s0 = PhaseState::new([1.0, 0.0, 0.0], [0.0; 3]);
    let period = 2.0 * std::f64::consts::PI;
    let rk = integrate(&p, &s0, period / 1000.0, 10.0 * period, Method::Rk4).map_err(err)?;
    let exact = integrate(&p, &s0, period / 1000.0, 10.0 * period, Method::Exact).map_err(err)?;
    let measured = rk.zero_crossing_period(0).ok_or("no zero crossings")?;
    let e0 = energy(&p, &s0);
    let e_drift = rk.states.iter().map(|s| (energy(&p, s) - e0).abs()).fold(0.0, f64::max);
    let l0 = angular_momentum(&s0);
    let l_drift = rk
        .states
        .iter()
        .flat_map(|s| angular_momentum(s).into_iter().zip(l0).map(|(a, b)| (a - b).abs()))
        .fold(0.0, f64::max);
    let dist = rk.max_distance(&exact);
    let secs = start.elapsed().as_secs_f64();
    ensure((measured - period).abs() < 1e-6, format!("period {measured}"))?;
    ensure(e_drift < 1e-8, format!("energy drift {e_drift:e}"))?;
    ensure(l_drift < 1e-8, format!("q x p drift {l_drift:e}"))?;
    ensure(dist < 1e-6, format!("rk4 vs closed form {dist:e}"))?;
    ensure(secs < 1.0, format!("took {secs:.3} s"))?;
    Ok(format!(
        "period err {:.1e}, energy {e_drift:.1e}, q x p {l_drift:.1e}, distance {dist:.1e}, {secs:.3} s",
        (measured - period).abs()
    ))
}

fn moment_relation() -> Outcome {
    for f in Family::ALL {
        let report = verify_moment_relation(f, Convention::Minus, 100, 0).map_err(err)?;
        ensure(report.quantity_passes("mu(E)"), format!("{f} mu(E)"))?;
    }
    let ds = verify_moment_relation(Family::DeSitter, Convention::Minus, 100, 0).map_err(err)?;
    ensure(
        ds.mismatches()
            .any(|c| c.quantity.starts_with("mu(q") && c.component.starts_with("d/dp")),
        "expected the known mu(q) mismatch in dS",
    )?;
    Ok("mu(E) on 8 families; dS mu(q) d/dp mismatch reported".into())
}

/// Minimal DOT reader: `digraph name { stmt; ... }` with quoted ids and
/// `[key=value, ...]` attribute lists.
fn parse_dot(text: &str) -> Result<(BTreeSet<String>, Vec<DotEdge>), String> {
    let body = text.trim();
    let rest = body.strip_prefix("digraph").ok_or("missing digraph keyword")?;
    let open = rest.find('{').ok_or("missing {")?;
    ensure(rest.ends_with('}'), "missing closing }")?;
    let inner = &rest[open + 1..rest.len() - 1];
    let mut nodes = BTreeSet::new();
    let mut edges = Vec::new();
    for stmt in inner.lines().map(str::trim).filter(|l| !l.is_empty()) {
        let stmt = stmt.strip_suffix(';').ok_or(format!("statement without ';': {stmt}"))?;
        let (head, attrs) = match stmt.find('[') {
            Some(i) => {
                let a = stmt[i + 1..].strip_suffix(']').ok_or("unterminated attribute list")?;
                (stmt[..i].trim(), parse_attrs(a)?)
            }
            None => (stmt.trim(), BTreeMap::new()),
        };
        let ids: Vec<&str> = head.split("->").map(str::trim).collect();
        let unquote = |s: &str| -> Result<String, String> {
            s.strip_prefix('"')
                .and_then(|s| s.strip_suffix('"'))
                .map(str::to_string)
                .ok_or(format!("bad id {s}"))
        };
        match ids.as_slice() {
            [n] => {
                nodes.insert(unquote(n)?);
            }
            [a, b] => edges.push((unquote(a)?, unquote(b)?, attrs)),
            _ => return Err(format!("bad statement {stmt}")),
        }
    }
    Ok((nodes, edges))
}

fn parse_attrs(s: &str) -> Result<BTreeMap<String, String>, String> {
    let mut out = BTreeMap::new();
    let mut rest = s.trim();
    while !rest.is_empty() {
        let eq = rest.find('=').ok_or(format!("bad attribute {rest}"))?;
        let key = rest[..eq].trim().to_string();
        rest = rest[eq + 1..].trim_start();
        let value;
        if let Some(r) = rest.strip_prefix('"') {
            let end = r.find('"').ok_or("unterminated string")?;
            value = r[..end].to_string();
            rest = &r[end + 1..];
        } else {
            let end = rest.find(',').unwrap_or(rest.len());
            value = rest[..end].trim().to_string();
            rest = &rest[end..];
        }
        out.insert(key, value);
        rest = rest.trim_start().strip_prefix(',').unwrap_or(rest).trim_start();
    }
    Ok(out)
}

fn end_to_end_cli() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_kinalg");
    let verify = Command::new(bin)
        .args(["verify", "--scope", "all"])
        .output()
        .map_err(err)?;
    let report = String::from_utf8_lossy(&verify.stdout);
    ensure(
        verify.status.code() == Some(0),
        format!("verify exited with {:?}", verify.status.code()),
    )?;
    ensure(
        report
            .lines()
            .any(|l| l.starts_with("[WARN]") && l.contains("dS±") && l.contains("mu(q)")),
        "no moment-relation WARN in the report",
    )?;
    ensure(!report.contains("[FAIL]"), "report contains failures")?;

    let graph = Command::new(bin)
        .args(["graph", "--format", "dot"])
        .output()
        .map_err(err)?;
    ensure(graph.status.success(), "graph failed")?;
    let (nodes, edges) = parse_dot(&String::from_utf8_lossy(&graph.stdout))?;
    ensure(nodes.len() == 8, format!("{} nodes", nodes.len()))?;
    ensure(edges.len() == 12, format!("{} edges", edges.len()))?;
    ensure(
        edges.iter().all(|(a, b, attrs)| {
            nodes.contains(a)
                && nodes.contains(b)
                && matches!(attrs.get("color").map(String::as_str), Some("green" | "red" | "blue"))
        }),
        "edge without a known endpoint or key color",
    )?;
    let seed_env = Command::new(bin)
        .args(["verify", "--scope", "poisson"])
        .env("KINALG_SEED", "17")
        .output()
        .map_err(err)?;
    ensure(
        String::from_utf8_lossy(&seed_env.stdout).contains("seed 17"),
        "KINALG_SEED ignored",
    )?;
    Ok("verify exits 0 with WARN; DOT has 8 nodes, 12 colored edges".into())
}

/// Written straight to stderr so the lines survive the harness's output capture.
fn report(line: String) {
    use std::io::Write;
    let _ = writeln!(std::io::stderr(), "{line}");
}

#[test]
fn acceptance() {
    let criteria: [(&str, Criterion); 11] = [
        ("Jacobi exactness", jacobi_exactness),
        ("realization table", realization_table),
        ("rescaled de Sitter", rescaled_de_sitter),
        ("contraction cube", contraction_cube),
        ("mechanism equivalence", mechanism_equivalence),
        ("limit commutativity", limit_commutativity),
        ("Poisson layer", poisson_layer),
        ("motion equations", motion_equation_rows),
        ("dynamics desk check", desk_dynamics),
        ("moment-relation checker", moment_relation),
        ("end-to-end CLI", end_to_end_cli),
    ];
    let mut failed = Vec::new();
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => report(format!("criterion {:>2} PASS {name}: {detail}", i + 1)),
            Err(why) => {
                report(format!("criterion {:>2} FAIL {name}: {why}", i + 1));
                failed.push(i + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
