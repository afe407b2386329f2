//! Integration of the motion equations and the conserved quantities.

mod quantities;

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::algebra::{build_algebra, AlgebraLabel, Family, Parameterization};
use crate::coeff::Param;
use crate::error::{Error, Result};
use crate::poisson::motion_equations;

pub use quantities::{
    quantity_formulas, verify_moment_relation, ComponentCheck, Convention, MomentReport, Quantity, QuantityFormulas,
};

/// Physical parameters of one of the twelve algebras.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DynParams {
    pub label: AlgebraLabel,
    pub m: f64,
    pub compliance: f64,
    pub e0: f64,
    /// Constant `U` added to the energy.
    pub u: f64,
}

impl DynParams {
    pub fn new(label: AlgebraLabel, m: f64, compliance: f64, e0: f64) -> Result<Self> {
        for (p, v) in [(Param::Mass, m), (Param::Compliance, compliance), (Param::Energy, e0)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::InvalidParameter(format!(
                    "{p} must be positive and finite, got {v}"
                )));
            }
        }
        Ok(DynParams {
            label,
            m,
            compliance,
            e0,
            u: 0.0,
        })
    }

    pub fn with_potential(mut self, u: f64) -> Self {
        self.u = u;
        self
    }

    pub fn family(&self) -> Family {
        self.label.family()
    }

    /// The family sign as `+1` or `-1`; unsigned families report `+1` (it never enters).
    pub fn sign_value(&self) -> f64 {
        self.label.sign().map_or(1.0, |s| s.value() as f64)
    }

    pub fn values(&self) -> BTreeMap<Param, f64> {
        BTreeMap::from([
            (Param::Mass, self.m),
            (Param::Compliance, self.compliance),
            (Param::Energy, self.e0),
        ])
    }

    /// `2 pi sqrt(m C)`, the period of the trigonometric families.
    pub fn characteristic_period(&self) -> f64 {
        2.0 * std::f64::consts::PI * (self.m * self.compliance).sqrt()
    }

    /// `1 / sqrt(m C)`.
    pub fn angular_frequency(&self) -> f64 {
        1.0 / (self.m * self.compliance).sqrt()
    }
}

/// A point of phase space; `e` and `j` are constants of the motion.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct PhaseState {
    pub t: f64,
    pub q: [f64; 3],
    pub p: [f64; 3],
    pub e: f64,
    pub j: [f64; 3],
}

impl PhaseState {
    pub fn new(q: [f64; 3], p: [f64; 3]) -> Self {
        PhaseState {
            q,
            p,
            ..Default::default()
        }
    }

    fn vector(&self) -> [f64; 6] {
        [self.q[0], self.q[1], self.q[2], self.p[0], self.p[1], self.p[2]]
    }

    fn with_vector(&self, t: f64, x: [f64; 6]) -> PhaseState {
        PhaseState {
            t,
            q: [x[0], x[1], x[2]],
            p: [x[3], x[4], x[5]],
            ..*self
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Rk4,
    Exact,
}

impl std::str::FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "rk4" => Ok(Method::Rk4),
            "exact" => Ok(Method::Exact),
            _ => Err(Error::Parse(format!("unknown method `{s}` (expected rk4 or exact)"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub states: Vec<PhaseState>,
    pub method: Method,
    pub step: f64,
}

impl Trajectory {
    /// `t,q1,q2,q3,p1,p2,p3,E`, one row per state, shortest round-trip float formatting.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("t,q1,q2,q3,p1,p2,p3,E\n");
        for s in &self.states {
            let row: Vec<String> = std::iter::once(s.t)
                .chain(s.q)
                .chain(s.p)
                .chain(std::iter::once(s.e))
                .map(|v| format!("{v:?}"))
                .collect();
            writeln!(out, "{}", row.join(",")).unwrap();
        }
        out
    }

    /// Largest `|x(t) - y(t)|` over positions and momenta of matching samples.
    pub fn max_distance(&self, other: &Trajectory) -> f64 {
        self.states
            .iter()
            .zip(&other.states)
            .flat_map(|(a, b)| {
                let (va, vb) = (a.vector(), b.vector());
                (0..6).map(move |i| (va[i] - vb[i]).abs())
            })
            .fold(0.0, f64::max)
    }

    /// Mean spacing of upward zero crossings of `q_axis`, located by linear
    /// interpolation. `None` with fewer than two crossings.
    pub fn zero_crossing_period(&self, axis: usize) -> Option<f64> {
        let crossings: Vec<f64> = self
            .states
            .windows(2)
            .filter(|w| w[0].q[axis] < 0.0 && w[1].q[axis] >= 0.0)
            .map(|w| {
                let (a, b) = (w[0].q[axis], w[1].q[axis]);
                w[0].t + (w[1].t - w[0].t) * (-a) / (b - a)
            })
            .collect();
        if crossings.len() < 2 {
            return None;
        }
        Some((crossings[crossings.len() - 1] - crossings[0]) / (crossings.len() - 1) as f64)
    }
}

/// The linear system `x' = M x` on `(q, p)` obtained from `{E, .}`.
fn system_matrix(params: &DynParams) -> Result<[[f64; 6]; 6]> {
    let alg = build_algebra(params.label, Parameterization::Dynamical);
    let coeffs = motion_equations(&alg)?.linear_coefficients()?;
    let values = params.values();
    let mut m = [[0.0; 6]; 6];
    for (r, row) in coeffs.iter().enumerate() {
        for (c, k) in row.iter().enumerate() {
            m[r][c] = k.eval_f64(&values, params.label.sign())?;
        }
    }
    Ok(m)
}

fn apply(m: &[[f64; 6]; 6], x: &[f64; 6]) -> [f64; 6] {
    std::array::from_fn(|r| (0..6).map(|c| m[r][c] * x[c]).sum())
}

fn axpy(x: &[f64; 6], a: f64, k: &[f64; 6]) -> [f64; 6] {
    std::array::from_fn(|i| x[i] + a * k[i])
}

fn rk4_step(m: &[[f64; 6]; 6], x: &[f64; 6], h: f64) -> [f64; 6] {
    let k1 = apply(m, x);
    let k2 = apply(m, &axpy(x, h / 2.0, &k1));
    let k3 = apply(m, &axpy(x, h / 2.0, &k2));
    let k4 = apply(m, &axpy(x, h, &k3));
    std::array::from_fn(|i| x[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]))
}

/// Closed-form solution at elapsed time `dt`.
pub fn exact_state(params: &DynParams, s0: &PhaseState, dt: f64) -> PhaseState {
    let family = params.family();
    let (m, c, s) = (params.m, params.compliance, params.sign_value());
    let mut x = s0.vector();
    let moves = family.is_finite(Param::Mass);
    let springs = family.is_finite(Param::Compliance);
    for i in 0..3 {
        let (q0, p0) = (s0.q[i], s0.p[i]);
        let (q, p) = match (moves, springs) {
            (true, true) => {
                let w = params.angular_frequency();
                if s < 0.0 {
                    let (sn, cs) = (w * dt).sin_cos();
                    (q0 * cs + p0 / (m * w) * sn, p0 * cs - q0 * m * w * sn)
                } else {
                    let (sn, cs) = ((w * dt).sinh(), (w * dt).cosh());
                    (q0 * cs + p0 / (m * w) * sn, p0 * cs + q0 * m * w * sn)
                }
            }
            (true, false) => (q0 + p0 * dt / m, p0),
            (false, true) => (q0, p0 + s * q0 * dt / c),
            (false, false) => (q0, p0),
        };
        x[i] = q;
        x[i + 3] = p;
    }
    s0.with_vector(s0.t + dt, x)
}

/// Advances `(q, p)` from `s0` with step `h` up to the first sample at or past
/// `horizon`; sample `k` is at `s0.t + k h`.
pub fn integrate(params: &DynParams, s0: &PhaseState, h: f64, horizon: f64, method: Method) -> Result<Trajectory> {
    if !(h > 0.0 && h.is_finite()) {
        return Err(Error::NonPositiveStep);
    }
    if !(horizon > 0.0 && horizon.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "horizon must be positive, got {horizon}"
        )));
    }
    let steps = (horizon / h - 1e-9).ceil().max(1.0) as usize;
    let mut states = Vec::with_capacity(steps + 1);
    states.push(*s0);
    match method {
        Method::Rk4 => {
            let m = system_matrix(params)?;
            let mut x = s0.vector();
            for k in 1..=steps {
                x = rk4_step(&m, &x, h);
                states.push(s0.with_vector(s0.t + k as f64 * h, x));
            }
        }
        Method::Exact => {
            for k in 1..=steps {
                states.push(exact_state(params, s0, k as f64 * h));
            }
        }
    }
    Ok(Trajectory {
        states,
        method,
        step: h,
    })
}

/// `p^2/2m - s q^2/2C + U`, keeping only the terms whose parameter is finite
/// for the family. The sign makes `dE/dt = 0` under `dp/dt = s q/C`.
pub fn energy(params: &DynParams, s: &PhaseState) -> f64 {
    let family = params.family();
    let mut e = params.u;
    if family.is_finite(Param::Mass) {
        e += s.p.iter().map(|x| x * x).sum::<f64>() / (2.0 * params.m);
    }
    if family.is_finite(Param::Compliance) {
        e -= params.sign_value() * s.q.iter().map(|x| x * x).sum::<f64>() / (2.0 * params.compliance);
    }
    e
}

/// `q × p`.
pub fn angular_momentum(s: &PhaseState) -> [f64; 3] {
    let (q, p) = (s.q, s.p);
    [
        q[1] * p[2] - q[2] * p[1],
        q[2] * p[0] - q[0] * p[2],
        q[0] * p[1] - q[1] * p[0],
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(label: &str) -> DynParams {
        DynParams::new(label.parse().unwrap(), 1.0, 1.0, 1.0).unwrap()
    }

    #[test]
    fn harmonic_closed_form() {
        let p = params("NH-");
        let s0 = PhaseState::new([1.0, 0.0, 0.0], [0.0; 3]);
        let tr = integrate(&p, &s0, 0.01, 3.0, Method::Exact).unwrap();
        for s in &tr.states {
            assert!((s.q[0] - s.t.cos()).abs() < 1e-12);
        }
        assert!((energy(&p, &s0) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn free_and_frozen_motion() {
        let g = DynParams::new("G".parse().unwrap(), 2.0, 1.0, 1.0).unwrap();
        let s0 = PhaseState::new([1.0, 2.0, 3.0], [2.0, 0.0, -2.0]);
        let s = exact_state(&g, &s0, 3.0);
        assert_eq!(s.q, [4.0, 2.0, 0.0]);
        assert_eq!(s.p, s0.p);
        assert_eq!(energy(&g, &PhaseState::new([0.0; 3], [2.0, 0.0, 0.0])), 1.0);
        let st = params("S");
        let tr = integrate(&st, &s0, 0.1, 1.0, Method::Rk4).unwrap();
        assert!(tr.states.iter().all(|s| s.q == s0.q && s.p == s0.p));
        assert_eq!(energy(&params("C"), &s0), 0.0);
    }

    #[test]
    fn para_galilei_momentum_grows() {
        let p = DynParams::new("G+".parse().unwrap(), 1.0, 2.0, 1.0).unwrap();
        let s0 = PhaseState::new([1.0, 0.0, 0.0], [0.0; 3]);
        let tr = integrate(&p, &s0, 0.5, 2.0, Method::Rk4).unwrap();
        for s in &tr.states {
            assert!((s.p[0] - s.t / 2.0).abs() < 1e-12);
        }
    }

    #[test]
    fn hyperbolic_matches_rk4() {
        let p = DynParams::new("dS+".parse().unwrap(), 2.0, 0.5, 3.0).unwrap();
        let s0 = PhaseState::new([0.3, -0.2, 0.1], [0.1, 0.4, 0.0]);
        let a = integrate(&p, &s0, 1e-3, 2.0, Method::Rk4).unwrap();
        let b = integrate(&p, &s0, 1e-3, 2.0, Method::Exact).unwrap();
        assert!(a.max_distance(&b) < 1e-9);
    }

    #[test]
    fn step_validation_and_sampling() {
        let p = params("P");
        let s0 = PhaseState::default();
        assert_eq!(integrate(&p, &s0, 0.0, 1.0, Method::Rk4), Err(Error::NonPositiveStep));
        assert!(integrate(&p, &s0, 0.1, -1.0, Method::Rk4).is_err());
        let tr = integrate(&p, &s0, 0.1, 1.0, Method::Exact).unwrap();
        assert_eq!(tr.states.len(), 11);
        assert!(DynParams::new("P".parse().unwrap(), -1.0, 1.0, 1.0).is_err());
    }

    #[test]
    fn csv_layout() {
        let p = params("S");
        let tr = integrate(&p, &PhaseState::new([1.0, 0.0, 0.0], [0.0; 3]), 0.5, 0.5, Method::Exact).unwrap();
        let csv = tr.to_csv();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "t,q1,q2,q3,p1,p2,p3,E");
        assert_eq!(lines[2], "0.5,1.0,0.0,0.0,0.0,0.0,0.0,0.0");
    }

    #[test]
    fn cross_product() {
        assert_eq!(
            angular_momentum(&PhaseState::new([1.0, 0.0, 0.0], [0.0, 1.0, 0.0])),
            [0.0, 0.0, 1.0]
        );
        assert_eq!(angular_momentum(&PhaseState::new([1.0, 2.0, 3.0], [0.0; 3])), [0.0; 3]);
    }
}
