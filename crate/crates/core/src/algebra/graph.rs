//! The contraction cube: eight families joined by single-limit contractions.

use std::fmt::Write as _;

use petgraph::algo::dijkstra;
use petgraph::graph::{DiGraph, NodeIndex};
use petgraph::visit::EdgeRef;

use super::{build_family, contract_limit, identify_family, Family, Parameterization};
use crate::coeff::{Param, Sign};
use crate::error::Result;

/// A contraction limit: one dynamical parameter, or a pair of kinematical
/// parameters sent to infinity with fixed ratio.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Limit {
    /// `m -> inf`, the static limit
    Mass,
    /// `E0 -> inf`, the Newtonian limit
    Energy,
    /// `C -> inf`, the flat limit
    Compliance,
    /// `c, tau -> inf`
    SpeedTime,
    /// `c, r -> inf`
    SpeedSpace,
    /// `r, tau -> inf`
    SpaceTime,
}

impl Limit {
    pub const DYNAMICAL: [Limit; 3] = [Limit::Mass, Limit::Energy, Limit::Compliance];
    pub const KINEMATICAL: [Limit; 3] = [Limit::SpeedTime, Limit::SpeedSpace, Limit::SpaceTime];

    pub fn params(self) -> &'static [Param] {
        use Param::*;
        match self {
            Limit::Mass => &[Mass],
            Limit::Energy => &[Energy],
            Limit::Compliance => &[Compliance],
            Limit::SpeedTime => &[Speed, Period],
            Limit::SpeedSpace => &[Speed, Radius],
            Limit::SpaceTime => &[Radius, Period],
        }
    }

    pub fn color(self) -> &'static str {
        match self {
            Limit::Mass | Limit::SpeedTime => "green",
            Limit::Energy | Limit::SpeedSpace => "red",
            Limit::Compliance | Limit::SpaceTime => "blue",
        }
    }

    /// Edge label, e.g. `E0→∞`.
    pub fn label(self) -> String {
        let names: Vec<&str> = self.params().iter().map(|p| p.symbol()).collect();
        format!("{}→∞", names.join(","))
    }

    /// Short tag used in the text format, e.g. `E0` or `c,r`.
    pub fn tag(self) -> String {
        let names: Vec<&str> = self.params().iter().map(|p| p.symbol()).collect();
        names.join(",")
    }

    pub fn from_params(params: &[Param]) -> Option<Limit> {
        let mut sorted = params.to_vec();
        sorted.sort();
        sorted.dedup();
        [Limit::DYNAMICAL, Limit::KINEMATICAL].concat().into_iter().find(|l| {
            let mut own = l.params().to_vec();
            own.sort();
            own == sorted
        })
    }
}

/// Families as nodes, limits as edges. A `±` node stands for both signs;
/// contraction preserves the sign whenever the target is signed.
#[derive(Debug, Clone)]
pub struct ContractionGraph {
    graph: DiGraph<Family, Limit>,
}

impl ContractionGraph {
    fn build(frame: Parameterization, limits: &[Limit]) -> Result<Self> {
        let mut graph = DiGraph::new();
        let nodes: Vec<NodeIndex> = Family::ALL.iter().map(|&f| graph.add_node(f)).collect();
        for (&from, &source) in Family::ALL.iter().zip(&nodes) {
            let alg = build_family(from, frame);
            for &limit in limits {
                let to = identify_family(&contract_limit(&alg, limit.params())?)?;
                if to != from {
                    let target = nodes[Family::ALL.iter().position(|&f| f == to).unwrap()];
                    graph.add_edge(source, target, limit);
                }
            }
        }
        Ok(ContractionGraph { graph })
    }

    pub fn node_count(&self) -> usize {
        self.graph.node_count()
    }

    pub fn edge_count(&self) -> usize {
        self.graph.edge_count()
    }

    pub fn families(&self) -> impl Iterator<Item = Family> + '_ {
        self.graph.node_weights().copied()
    }

    /// `(from, limit, to)` in construction order.
    pub fn edges(&self) -> Vec<(Family, Limit, Family)> {
        self.graph
            .edge_references()
            .map(|e| (self.graph[e.source()], *e.weight(), self.graph[e.target()]))
            .collect()
    }

    fn node(&self, f: Family) -> NodeIndex {
        self.graph
            .node_indices()
            .find(|&n| self.graph[n] == f)
            .expect("every family is a node")
    }

    /// Number of contractions on a shortest path, if any.
    pub fn distance(&self, from: Family, to: Family) -> Option<usize> {
        dijkstra(&self.graph, self.node(from), Some(self.node(to)), |_| 1usize)
            .get(&self.node(to))
            .copied()
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph contractions {\n");
        for f in self.families() {
            let signs = if f.is_signed() { "+,-" } else { "" };
            writeln!(
                out,
                "  \"{}\" [label=\"{}\", signs=\"{signs}\"];",
                f.symbol(),
                f.symbol()
            )
            .unwrap();
        }
        for (from, limit, to) in self.edges() {
            writeln!(
                out,
                "  \"{}\" -> \"{}\" [color={}, label=\"{}\"];",
                from.symbol(),
                to.symbol(),
                limit.color(),
                limit.label()
            )
            .unwrap();
        }
        out.push_str("}\n");
        out
    }

    /// One line per signed member, e.g. `dS+ --(E0)--> NH+`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (from, limit, to) in self.edges() {
            let signs: &[Option<Sign>] = if from.is_signed() {
                &[Some(Sign::Plus), Some(Sign::Minus)]
            } else {
                &[None]
            };
            for &s in signs {
                let name = |f: Family| {
                    let stem = f.symbol().trim_end_matches('±');
                    match (f.is_signed(), s) {
                        (true, Some(s)) => format!("{stem}{}", s.symbol()),
                        _ => stem.to_string(),
                    }
                };
                writeln!(out, "{} --({})--> {}", name(from), limit.tag(), name(to)).unwrap();
            }
        }
        out
    }
}

/// The cube in the dynamical parameters `m`, `C`, `E0`.
pub fn contraction_graph() -> Result<ContractionGraph> {
    ContractionGraph::build(Parameterization::Dynamical, &Limit::DYNAMICAL)
}

/// The cube in the kinematical parameters, using the unconstrained
/// coefficients so that paired limits are well defined.
pub fn kinematical_contraction_graph() -> Result<ContractionGraph> {
    ContractionGraph::build(Parameterization::KinematicalUnconstrained, &Limit::KINEMATICAL)
}

#[cfg(test)]
mod tests {
    use super::*;
    use Family::*;

    #[test]
    fn dynamical_cube() {
        let g = contraction_graph().unwrap();
        assert_eq!(g.node_count(), 8);
        assert_eq!(g.edge_count(), 12);
        let mut edges = g.edges();
        edges.sort();
        let mut expected = vec![
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
        expected.sort();
        assert_eq!(edges, expected);
        assert_eq!(g.distance(DeSitter, Static), Some(3));
        assert_eq!(g.distance(Static, DeSitter), None);
    }

    #[test]
    fn kinematical_cube_starts_from_de_sitter() {
        let g = kinematical_contraction_graph().unwrap();
        assert_eq!(g.edge_count(), 12);
        let from_ds: Vec<_> = g.edges().into_iter().filter(|e| e.0 == DeSitter).collect();
        assert_eq!(
            from_ds,
            vec![
                (DeSitter, Limit::SpeedTime, ParaPoincare),
                (DeSitter, Limit::SpeedSpace, NewtonHooke),
                (DeSitter, Limit::SpaceTime, Poincare),
            ]
        );
    }

    #[test]
    fn text_expands_signs() {
        let text = contraction_graph().unwrap().to_text();
        assert!(text.lines().any(|l| l == "dS+ --(E0)--> NH+"));
        assert!(text.lines().any(|l| l == "dS- --(C)--> P"));
        assert!(text.lines().any(|l| l == "P --(m)--> C"));
        assert_eq!(text.lines().count(), 20);
    }

    #[test]
    fn limit_lookup() {
        assert_eq!(
            Limit::from_params(&[Param::Radius, Param::Speed]),
            Some(Limit::SpeedSpace)
        );
        assert_eq!(Limit::from_params(&[Param::Mass, Param::Energy]), None);
        assert_eq!(Limit::Energy.label(), "E0→∞");
    }
}
