use serde::{Deserialize, Serialize};

use super::{Element, Generator, LieAlgebra, Parameterization, StructureTensor};
use crate::coeff::{Coefficient, Sign};
use crate::error::{Error, Result};

#[derive(Debug, Serialize, Deserialize)]
struct AlgebraDoc {
    label: Option<String>,
    basis: String,
    sign: Option<i64>,
    brackets: Vec<BracketDoc>,
}

#[derive(Debug, Serialize, Deserialize)]
struct BracketDoc {
    x: String,
    y: String,
    terms: Vec<TermDoc>,
}

#[derive(Debug, Serialize, Deserialize)]
struct TermDoc {
    gen: String,
    coeff: String,
}

/// Pretty-printed JSON with one entry per non-zero bracket `[x, y]`, `x < y`.
pub fn to_json(alg: &LieAlgebra) -> String {
    let basis = alg.basis();
    let doc = AlgebraDoc {
        label: alg.name.clone(),
        basis: alg.frame.as_str().to_string(),
        sign: alg.sign.map(Sign::value),
        brackets: alg
            .tensor
            .iter()
            .map(|(x, y, e)| BracketDoc {
                x: x.name(basis),
                y: y.name(basis),
                terms: e
                    .iter()
                    .map(|(g, c)| TermDoc {
                        gen: g.name(basis),
                        coeff: c.to_string(),
                    })
                    .collect(),
            })
            .collect(),
    };
    serde_json::to_string_pretty(&doc).expect("plain data serializes")
}

/// Parses the format written by [`to_json`]. Brackets may be given in either
/// order; repeated pairs accumulate.
pub fn from_json(text: &str) -> Result<LieAlgebra> {
    let doc: AlgebraDoc = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let frame: Parameterization = doc.basis.parse()?;
    let sign = match doc.sign {
        None => None,
        Some(v) => Some(Sign::from_value(v).ok_or_else(|| Error::Parse(format!("sign must be 1 or -1, got {v}")))?),
    };
    let mut tensor = StructureTensor::new();
    for b in doc.brackets {
        let x: Generator = b.x.parse()?;
        let y: Generator = b.y.parse()?;
        if x == y {
            return Err(Error::Parse(format!("bracket [{x}, {x}] must vanish")));
        }
        let mut e = Element::zero();
        for t in b.terms {
            let c: Coefficient = t.coeff.parse()?;
            if c.basis().is_some_and(|cb| cb != frame.basis()) {
                return Err(Error::MixedBasis);
            }
            e.add_term(t.gen.parse()?, &c)?;
        }
        tensor.add(x, y, &e)?;
    }
    Ok(LieAlgebra {
        name: doc.label,
        frame,
        sign,
        tensor,
    })
}
