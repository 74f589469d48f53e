use serde::{Deserialize, Serialize};

use super::CurvatureTensor;
use crate::error::Result;
use crate::poly::rational::parse_rational;

/// On-disk form of a tensor: row-major components as exact `"p/q"` strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TensorDocument {
    pub dimension: usize,
    pub components: Vec<String>,
}

impl From<&CurvatureTensor> for TensorDocument {
    fn from(r: &CurvatureTensor) -> Self {
        TensorDocument {
            dimension: r.dimension(),
            components: r.components().iter().map(ToString::to_string).collect(),
        }
    }
}

impl TensorDocument {
    pub fn to_tensor(&self) -> Result<CurvatureTensor> {
        let components = self.components.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>()?;
        CurvatureTensor::from_components(self.dimension, components)
    }
}

impl CurvatureTensor {
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(&TensorDocument::from(self))?)
    }

    /// Parses the JSON document form. Symmetries are not checked here.
    pub fn from_json(text: &str) -> Result<CurvatureTensor> {
        let doc: TensorDocument = serde_json::from_str(text)?;
        doc.to_tensor()
    }
}
