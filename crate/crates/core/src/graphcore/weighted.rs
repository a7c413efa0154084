use crate::ratlinalg::{QMatrix, Rational};

use super::GraphError;

/// Directed graph with non-negative integer arc weights, given by its adjacency matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedDigraph {
    adjacency: QMatrix,
}

impl WeightedDigraph {
    pub fn new(adjacency: QMatrix) -> Result<Self, GraphError> {
        if !adjacency.is_square() {
            return Err(GraphError::Param("adjacency matrix must be square".into()));
        }
        if let Some(bad) = adjacency
            .data()
            .iter()
            .find(|x| !x.is_integer() || x.is_negative())
        {
            return Err(GraphError::Param(format!("weight {bad} is not a non-negative integer")));
        }
        Ok(WeightedDigraph { adjacency })
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self, GraphError> {
        let m = QMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Rational::from(x)).collect())
                .collect(),
        )
        .map_err(|e| GraphError::Param(e.to_string()))?;
        WeightedDigraph::new(m)
    }

    pub fn adjacency(&self) -> &QMatrix {
        &self.adjacency
    }

    pub fn n(&self) -> usize {
        self.adjacency.rows()
    }

    pub fn weight(&self, u: usize, v: usize) -> u64 {
        self.adjacency[(u, v)]
            .to_i64()
            .and_then(|x| u64::try_from(x).ok())
            .expect("weights fit in u64")
    }
}
