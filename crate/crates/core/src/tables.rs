//! Generated bracket, Poisson, motion and quantity tables.

use std::str::FromStr;

use serde_json::{json, Map, Value};

use crate::algebra::{build_family, BracketFamily, Family, Generator, Parameterization};
use crate::coeff::{Coefficient, Param};
use crate::dynamics::quantity_formulas;
use crate::error::{Error, Result};
use crate::poisson::{motion_equations, KirillovMatrix, PolyFunction};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableKind {
    /// brackets in `c, r, tau` with `r = c tau`
    Kinematical,
    /// brackets in `m, C, E0`
    Dynamical,
    Poisson,
    Motion,
    Quantities,
}

impl FromStr for TableKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "table1" => Ok(TableKind::Kinematical),
            "table2" => Ok(TableKind::Dynamical),
            "poisson" => Ok(TableKind::Poisson),
            "motion" => Ok(TableKind::Motion),
            "quantities" => Ok(TableKind::Quantities),
            _ => Err(Error::Parse(format!("unknown table `{s}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "text" => Ok(Format::Text),
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            _ => Err(Error::Parse(format!("unknown format `{s}`"))),
        }
    }
}

/// A rectangular table of display strings.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub title: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    /// Columns padded to a common width and separated by ` | `.
    pub fn to_text(&self) -> String {
        let width = |s: &str| s.chars().count();
        let mut widths: Vec<usize> = self.columns.iter().map(|c| width(c)).collect();
        for row in &self.rows {
            for (w, cell) in widths.iter_mut().zip(row) {
                *w = (*w).max(width(cell));
            }
        }
        let line = |cells: &[String]| {
            let padded: Vec<String> = cells
                .iter()
                .zip(&widths)
                .map(|(c, &w)| format!("{c}{}", " ".repeat(w - width(c))))
                .collect();
            padded.join(" | ").trim_end().to_string()
        };
        let rule: String = widths.iter().map(|&w| "-".repeat(w)).collect::<Vec<_>>().join("-+-");
        let mut out = format!("{}\n{}\n{rule}\n", self.title, line(&self.columns));
        for row in &self.rows {
            out.push_str(&line(row));
            out.push('\n');
        }
        out
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let io = |e: csv::Error| Error::Parse(e.to_string());
        w.write_record(&self.columns).map_err(io)?;
        for row in &self.rows {
            w.write_record(row).map_err(io)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Parse(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| Error::Parse(e.to_string()))
    }

    /// `{"title", "columns", "rows": [{column: cell}]}`.
    pub fn to_json(&self) -> String {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let obj: Map<String, Value> = self
                    .columns
                    .iter()
                    .cloned()
                    .zip(row.iter().map(|c| Value::String(c.clone())))
                    .collect();
                Value::Object(obj)
            })
            .collect();
        let doc = json!({ "title": self.title, "columns": self.columns, "rows": rows });
        serde_json::to_string_pretty(&doc).expect("plain data serializes")
    }

    pub fn render(&self, format: Format) -> Result<String> {
        match format {
            Format::Text => Ok(self.to_text()),
            Format::Csv => self.to_csv(),
            Format::Json => Ok(self.to_json() + "\n"),
        }
    }
}

/// `coeff symbol` with unit coefficients dropped, `0` for zero.
fn cell(c: &Coefficient, symbol: &str) -> String {
    if c.is_zero() {
        return "0".into();
    }
    match c.pretty().as_str() {
        "1" => symbol.to_string(),
        "-1" => format!("-{symbol}"),
        p => format!("{p} {symbol}"),
    }
}

fn bracket_table(frame: Parameterization) -> Table {
    let boost = match frame {
        Parameterization::Dynamical => "Q",
        _ => "K",
    };
    let mut columns = vec!["symbol".to_string(), "name".to_string()];
    columns.extend(BracketFamily::ALL.iter().map(|b| b.heading(boost)));
    let rows = Family::ALL
        .iter()
        .map(|&f| {
            let alg = build_family(f, frame);
            let mut row = vec![f.symbol().to_string(), f.name().to_string()];
            for b in BracketFamily::ALL {
                let (x, y, z) = b.representative();
                let c = alg.bracket_generators(x, y).get(z);
                let symbol = match b {
                    BracketFamily::BoostTime => "P_i".to_string(),
                    BracketFamily::BoostBoost | BracketFamily::TranslationTranslation => "J_k ε^k_ij".into(),
                    BracketFamily::BoostTranslation => "H δ_ij".into(),
                    BracketFamily::TranslationTime => format!("{boost}_i"),
                };
                row.push(cell(&c, &symbol));
            }
            row
        })
        .collect();
    let title = match frame {
        Parameterization::Dynamical => "Kinematical Lie algebras in terms of m, C and E0",
        _ => "Kinematical Lie algebras in terms of c, r and τ (r = c τ)",
    };
    Table {
        title: title.into(),
        columns,
        rows,
    }
}

fn exps(g: Generator) -> [u8; Generator::COUNT] {
    let mut e = [0; Generator::COUNT];
    e[g.index()] = 1;
    e
}

/// Reads `{a_x, a_y}` as `c * a_z` and checks that nothing else is present.
fn single_term(k: &KirillovMatrix, x: Generator, y: Generator, z: Generator) -> Result<Coefficient> {
    let entry = k.get(x, y);
    let c = entry.coefficient_of(&exps(z))?;
    if *entry != PolyFunction::coordinate_times(z, &c) {
        return Err(Error::Unrecognized(format!(
            "{{{x}, {y}}} = {entry} has an unexpected shape"
        )));
    }
    Ok(c)
}

/// The non-rotation coordinate brackets, with `j_k` written through `tau_k = j_k / E0`.
pub fn poisson_table() -> Result<Table> {
    let (q1, q2, p1, p2, j3, e) = (
        Generator::boost(1),
        Generator::boost(2),
        Generator::translation(1),
        Generator::translation(2),
        Generator::rotation(3),
        Generator::H,
    );
    let per_tau = |c: Coefficient| if c.is_zero() { c } else { c.pow(Param::Energy, 1) };
    let mut rows = Vec::new();
    for f in Family::ALL {
        let k = KirillovMatrix::new(&build_family(f, Parameterization::Dynamical))?;
        rows.push(vec![
            f.symbol().to_string(),
            f.name().to_string(),
            cell(&single_term(&k, e, q1, p1)?, "p_i"),
            cell(&per_tau(single_term(&k, q1, q2, j3)?), "τ_k ε^k_ij"),
            cell(&single_term(&k, p1, q1, e)?, "E δ_ij"),
            cell(&per_tau(single_term(&k, p1, p2, j3)?), "τ_k ε^k_ij"),
            cell(&single_term(&k, e, p1, q1)?, "q_i"),
        ]);
    }
    Ok(Table {
        title: "Kinematical Poisson Lie algebras".into(),
        columns: [
            "symbol",
            "name",
            "{E,q_i}",
            "{q_i,q_j}",
            "{p_i,q_j}",
            "{p_i,p_j}",
            "{E,p_i}",
        ]
        .map(String::from)
        .to_vec(),
        rows,
    })
}

fn generic_index(s: String) -> String {
    s.replace("q1", "q_i").replace("p1", "p_i")
}

/// Families grouped by identical `dq/dt`, `dp/dt`, in table order.
pub fn motion_table() -> Result<Table> {
    let mut groups: Vec<(Vec<Family>, crate::poisson::MotionEquations)> = Vec::new();
    for f in Family::ALL {
        let eq = motion_equations(&build_family(f, Parameterization::Dynamical))?;
        match groups.iter_mut().find(|(_, g)| g.same_equations(&eq)) {
            Some((members, _)) => members.push(f),
            None => groups.push((vec![f], eq)),
        }
    }
    let rows = groups
        .into_iter()
        .map(|(members, eq)| {
            let names: Vec<&str> = members.iter().map(|f| f.symbol()).collect();
            vec![
                names.join(" and "),
                format!(
                    "dq_i/dt = {}, dp_i/dt = {}",
                    generic_index(eq.q_dot[0].to_string()),
                    generic_index(eq.p_dot[0].to_string())
                ),
            ]
        })
        .collect();
    Ok(Table {
        title: "Motion equations".into(),
        columns: vec!["algebras".into(), "motion equations".into()],
        rows,
    })
}

/// First components (`i = 1`) of the conserved quantities.
pub fn quantities_table() -> Table {
    let rows = Family::ALL
        .iter()
        .map(|&f| {
            let q = quantity_formulas(f);
            vec![
                f.symbol().to_string(),
                q.angular_momentum[0].to_string(),
                q.position[0].to_string(),
                q.momentum[0].to_string(),
                q.energy.to_string(),
            ]
        })
        .collect();
    Table {
        title: "Physical quantities (component i = 1)".into(),
        columns: ["symbol", "angular momentum", "position", "linear momentum", "energy"]
            .map(String::from)
            .to_vec(),
        rows,
    }
}

pub fn table(kind: TableKind) -> Result<Table> {
    match kind {
        TableKind::Kinematical => Ok(bracket_table(Parameterization::Kinematical)),
        TableKind::Dynamical => Ok(bracket_table(Parameterization::Dynamical)),
        TableKind::Poisson => poisson_table(),
        TableKind::Motion => motion_table(),
        TableKind::Quantities => Ok(quantities_table()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kinematical_de_sitter_row() {
        let t = table(TableKind::Kinematical).unwrap();
        assert_eq!(
            t.rows[0][2..],
            [
                "P_i",
                "-1/c^2 J_k ε^k_ij",
                "1/c^2 H δ_ij",
                "±1/r^2 J_k ε^k_ij",
                "±1/τ^2 K_i"
            ]
        );
        assert_eq!(t.rows[7][2..], ["0", "0", "0", "0", "0"]);
    }

    #[test]
    fn dynamical_carroll_row() {
        let t = table(TableKind::Dynamical).unwrap();
        assert_eq!(t.rows[6][0], "C");
        assert_eq!(t.rows[6][2..], ["0", "0", "1/E0 H δ_ij", "0", "0"]);
        assert_eq!(t.columns[2], "[Q_i,H]");
    }

    #[test]
    fn poisson_de_sitter_row() {
        let t = poisson_table().unwrap();
        assert_eq!(
            t.rows[0][2..],
            [
                "1/m p_i",
                "1/m τ_k ε^k_ij",
                "1/E0 E δ_ij",
                "∓1/C τ_k ε^k_ij",
                "±1/C q_i"
            ]
        );
    }

    #[test]
    fn motion_rows_pair_up() {
        let t = motion_table().unwrap();
        assert_eq!(t.rows.len(), 4);
        assert_eq!(t.rows[0][0], "dS± and NH±");
        assert_eq!(t.rows[0][1], "dq_i/dt = 1/m p_i, dp_i/dt = ±1/C q_i");
        assert_eq!(t.rows[3], ["C and S", "dq_i/dt = 0, dp_i/dt = 0"]);
    }

    #[test]
    fn renderings() {
        let t = table(TableKind::Motion).unwrap();
        let csv = t.render(Format::Csv).unwrap();
        assert!(csv.starts_with("algebras,motion equations\n"));
        assert!(csv.contains("\"dq_i/dt = 1/m p_i, dp_i/dt = ±1/C q_i\""));
        let json: Value = serde_json::from_str(&table(TableKind::Dynamical).unwrap().to_json()).unwrap();
        assert_eq!(json["rows"].as_array().unwrap().len(), 8);
        let text = t.to_text();
        assert_eq!(text.lines().count(), 3 + 4);
    }
}
