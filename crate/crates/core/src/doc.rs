//! JSON interchange format for algebra documents.
//!
//! A document records arity, dimension, field, the sparse bracket table
//! (absent tuples are zero), and the two twist matrices, all with scalars as
//! exact strings. Two-block extensions additionally carry a grading
//! annotation. Serialization is canonical: entries sorted by argument tuple,
//! pretty-printed JSON, trailing newline.

use crate::algebra::{BracketTensor, NAryBiHomAlgebra};
use crate::constructions::TExtension;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::Field;
use serde::{Deserialize, Serialize};

/// Ground field tag: `"Q"` or `{"Fp": p}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum FieldDoc {
    Q,
    Fp(u64),
}

impl FieldDoc {
    pub fn to_field(self) -> Result<Field> {
        match self {
            FieldDoc::Q => Ok(Field::Q),
            FieldDoc::Fp(p) => Field::fp(p),
        }
    }

    pub fn of_field(field: Field) -> FieldDoc {
        match field {
            Field::Q => FieldDoc::Q,
            Field::Fp(p) => FieldDoc::Fp(p),
        }
    }
}

/// One bracket value: [e_{args[0]}, …, e_{args[n−1]}] = Σ value[i]·e_i.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BracketEntry {
    pub args: Vec<usize>,
    pub value: Vec<String>,
}

/// Coordinate layout of a two-block extension: which coordinates form the
/// t-block and tⁿ-block, and which tⁿ-coordinates span the chosen complement
/// of the derived subalgebra.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradingDoc {
    pub t_block: Vec<usize>,
    pub tn_block: Vec<usize>,
    pub u_coords: Vec<usize>,
}

/// Serializable algebra document.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraDoc {
    pub arity: usize,
    pub dim: usize,
    pub field: FieldDoc,
    pub bracket: Vec<BracketEntry>,
    pub alpha: Vec<Vec<String>>,
    pub beta: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grading: Option<GradingDoc>,
}

impl AlgebraDoc {
    /// Document for an algebra; bracket entries come out sorted by argument
    /// tuple because the tensor stores them ordered.
    pub fn of_algebra(alg: &NAryBiHomAlgebra) -> AlgebraDoc {
        let bracket = alg
            .bracket()
            .support()
            .map(|(args, value)| BracketEntry {
                args,
                value: value.iter().map(|c| c.render()).collect(),
            })
            .collect();
        AlgebraDoc {
            arity: alg.arity(),
            dim: alg.dim(),
            field: FieldDoc::of_field(alg.field()),
            bracket,
            alpha: alg.alpha().render_rows(),
            beta: alg.beta().render_rows(),
            grading: None,
        }
    }

    /// Document for an extension, including its grading annotation.
    pub fn of_extension(ext: &TExtension) -> AlgebraDoc {
        let mut doc = AlgebraDoc::of_algebra(&ext.algebra);
        doc.grading = Some(GradingDoc {
            t_block: ext.t_block.clone(),
            tn_block: ext.tn_block.clone(),
            u_coords: ext.u_coords.clone(),
        });
        doc
    }

    /// Reconstructs the algebra, validating shapes, indices, and scalars.
    /// The grading annotation, when present, is advisory and not re-imposed.
    pub fn to_algebra(&self) -> Result<NAryBiHomAlgebra> {
        let field = self.field.to_field()?;
        let mut tensor = BracketTensor::new(field, self.arity, self.dim)?;
        for entry in &self.bracket {
            if entry.value.len() != self.dim {
                return Err(Error::Parse(format!(
                    "bracket value for {:?} has {} coordinates, expected {}",
                    entry.args,
                    entry.value.len(),
                    self.dim
                )));
            }
            let value = entry
                .value
                .iter()
                .map(|s| field.parse(s))
                .collect::<Result<Vec<_>>>()?;
            tensor.set(&entry.args, value)?;
        }
        let alpha = Matrix::parse(field, &self.alpha, self.dim, self.dim)?;
        let beta = Matrix::parse(field, &self.beta, self.dim, self.dim)?;
        NAryBiHomAlgebra::new(tensor, alpha, beta)
    }

    /// Canonical rendering: pretty JSON plus a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("document serializes");
        s.push('\n');
        s
    }

    pub fn parse_json(text: &str) -> Result<AlgebraDoc> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }
}

/// Parses a JSON document and reconstructs the algebra in one step.
pub fn algebra_from_json(text: &str) -> Result<NAryBiHomAlgebra> {
    AlgebraDoc::parse_json(text)?.to_algebra()
}

/// Renders an algebra as a canonical JSON document in one step.
pub fn algebra_to_json(alg: &NAryBiHomAlgebra) -> String {
    AlgebraDoc::of_algebra(alg).to_json()
}
