//! Exact linear spans of matrices, kept in reduced row echelon form.

use std::fmt;

use crate::net::IntMatrix;
use crate::scalar::ExactField;

/// In-place Gauss-Jordan elimination. Returns the pivot columns.
pub fn row_reduce<F: ExactField>(rows: &mut Vec<Vec<F>>) -> Vec<usize> {
    let cols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = F::one() / rows[r][c].clone();
        for x in rows[r].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for k in 0..cols {
                    let d = f.clone() * rows[r][k].clone();
                    rows[i][k] = rows[i][k].clone() - d;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

pub fn rank<F: ExactField>(vectors: &[Vec<F>]) -> usize {
    let mut rows = vectors.to_vec();
    row_reduce(&mut rows).len()
}

/// Subspace of `F^d` stored as its unique RREF basis, so equality of spans is
/// equality of values.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MatrixSpace<F> {
    dim: usize,
    basis: Vec<Vec<F>>,
}

impl<F: ExactField> MatrixSpace<F> {
    pub fn span(ambient_dim: usize, vectors: impl IntoIterator<Item = Vec<F>>) -> Self {
        let mut rows: Vec<Vec<F>> = vectors.into_iter().collect();
        assert!(
            rows.iter().all(|r| r.len() == ambient_dim),
            "vector length mismatch"
        );
        row_reduce(&mut rows);
        MatrixSpace {
            dim: ambient_dim,
            basis: rows,
        }
    }

    /// Span of matrices, each flattened row-major.
    pub fn span_of_matrices(ms: &[IntMatrix]) -> Self {
        let d = ms.first().map_or(0, |m| m.n() * m.n());
        Self::span(
            d,
            ms.iter().map(|m| {
                m.as_slice()
                    .iter()
                    .map(|&v| F::from_u32(v).expect("integer embeds in field"))
                    .collect()
            }),
        )
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<F>] {
        &self.basis
    }

    pub fn contains(&self, v: &[F]) -> bool {
        let mut rows = self.basis.clone();
        rows.push(v.to_vec());
        rank(&rows) == self.dim()
    }

    pub fn contains_matrix(&self, m: &IntMatrix) -> bool {
        let v: Vec<F> = m
            .as_slice()
            .iter()
            .map(|&x| F::from_u32(x).unwrap())
            .collect();
        self.contains(&v)
    }

    /// Row-major flattening of the basis, used as a comparison key.
    pub fn flattened(&self) -> Vec<F> {
        self.basis.iter().flatten().cloned().collect()
    }
}

impl<F: ExactField + fmt::Display> fmt::Display for MatrixSpace<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "span{{")?;
        for (k, row) in self.basis.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for (i, x) in row.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "}}")
    }
}
