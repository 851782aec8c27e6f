use std::fmt;

use crate::error::{Error, Result};

/// Symmetric Coxeter matrix. `None` entries stand for `m = ∞`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CoxeterMatrix {
    rank: usize,
    entries: Vec<Option<u32>>,
}

impl CoxeterMatrix {
    /// Validates and wraps a row-major `rank × rank` array.
    pub fn new(rank: usize, entries: Vec<Option<u32>>) -> Result<Self> {
        if rank == 0 {
            return Err(Error::InvalidMatrix("rank must be positive".into()));
        }
        if entries.len() != rank * rank {
            return Err(Error::InvalidMatrix(format!(
                "expected {} entries, got {}",
                rank * rank,
                entries.len()
            )));
        }
        for i in 0..rank {
            if entries[i * rank + i] != Some(1) {
                return Err(Error::InvalidMatrix(format!("diagonal entry {i} is not 1")));
            }
            for j in 0..rank {
                if entries[i * rank + j] != entries[j * rank + i] {
                    return Err(Error::InvalidMatrix(format!("not symmetric at ({i},{j})")));
                }
                if i != j {
                    match entries[i * rank + j] {
                        Some(m) if m < 2 => {
                            return Err(Error::InvalidMatrix(format!(
                                "off-diagonal entry ({i},{j}) = {m} < 2"
                            )))
                        }
                        Some(2 | 3 | 4 | 6) | None => {}
                        Some(m) if rank != 2 => {
                            return Err(Error::InvalidMatrix(format!(
                                "entry ({i},{j}) = {m} only allowed at rank 2"
                            )))
                        }
                        Some(_) => {}
                    }
                }
            }
        }
        Ok(CoxeterMatrix { rank, entries })
    }

    /// Matrix with every off-diagonal entry 2, then the listed edges set.
    pub(crate) fn from_edges(rank: usize, edges: &[(usize, usize, Option<u32>)]) -> Result<Self> {
        let mut entries = vec![Some(2); rank * rank];
        for i in 0..rank {
            entries[i * rank + i] = Some(1);
        }
        for &(i, j, m) in edges {
            entries[i * rank + j] = m;
            entries[j * rank + i] = m;
        }
        Self::new(rank, entries)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn get(&self, i: usize, j: usize) -> Option<u32> {
        self.entries[i * self.rank + j]
    }

    pub fn entries(&self) -> &[Option<u32>] {
        &self.entries
    }
}

impl fmt::Display for CoxeterMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rank {
            let row: Vec<String> = (0..self.rank)
                .map(|j| match self.get(i, j) {
                    Some(m) => m.to_string(),
                    None => "inf".to_string(),
                })
                .collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_asymmetric() {
        let e = vec![Some(1), Some(3), Some(2), Some(1)];
        assert!(matches!(CoxeterMatrix::new(2, e), Err(Error::InvalidMatrix(_))));
    }

    #[test]
    fn rejects_bad_diagonal_and_small_entries() {
        assert!(CoxeterMatrix::new(2, vec![Some(2), Some(3), Some(3), Some(1)]).is_err());
        assert!(CoxeterMatrix::new(2, vec![Some(1), Some(1), Some(1), Some(1)]).is_err());
    }

    #[test]
    fn large_labels_only_at_rank_two() {
        assert!(CoxeterMatrix::new(2, vec![Some(1), Some(7), Some(7), Some(1)]).is_ok());
        assert!(CoxeterMatrix::from_edges(3, &[(0, 1, Some(5))]).is_err());
        assert!(CoxeterMatrix::from_edges(3, &[(0, 1, Some(6)), (1, 2, None)]).is_ok());
    }
}
