use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::{min_positive_diagonal_power, IntMatrix, MatrixError};
use crate::surface::SurfaceSig;

/// Transition matrix of an invariant track with its real branches marked.
///
/// Entry `(b, β)` counts how often the image of branch `β` runs over branch
/// `b`. Real rows vanish on infinitesimal columns: with the real indices
/// ordered last the matrix reads `[[A, B], [0, M_R]]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockTransition {
    matrix: IntMatrix,
    real: Vec<usize>,
    surface: SurfaceSig,
}

impl BlockTransition {
    pub fn new(
        matrix: IntMatrix,
        mut real: Vec<usize>,
        surface: SurfaceSig,
    ) -> Result<Self, MatrixError> {
        let n = matrix.require_square()?;
        real.sort_unstable();
        real.dedup();
        if real.is_empty() {
            return Err(MatrixError::RealSet("no real branches".into()));
        }
        if let Some(&bad) = real.iter().find(|&&i| i >= n) {
            return Err(MatrixError::RealSet(format!("index {bad} out of range 0..{n}")));
        }
        let mut is_real = vec![false; n];
        for &i in &real {
            is_real[i] = true;
        }
        for &r in &real {
            for c in (0..n).filter(|&c| !is_real[c]) {
                if !matrix.get(r, c).is_zero() {
                    return Err(MatrixError::BlockZero { row: r, col: c });
                }
            }
        }
        let limit = surface.real_branch_limit();
        if real.len() as i64 > limit {
            return Err(MatrixError::TooManyReal {
                real: real.len(),
                limit,
            });
        }
        let total_limit = surface.max_branches();
        if n as i64 > total_limit {
            return Err(MatrixError::TooManyBranches {
                total: n,
                limit: total_limit,
            });
        }
        let bt = Self {
            matrix,
            real,
            surface,
        };
        if !super::is_irreducible(&bt.real_block())? {
            return Err(MatrixError::NotIrreducible);
        }
        Ok(bt)
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn real_set(&self) -> &[usize] {
        &self.real
    }

    pub fn surface(&self) -> SurfaceSig {
        self.surface
    }

    pub fn branch_count(&self) -> usize {
        self.matrix.rows()
    }

    /// `M_R`, the restriction to real rows and columns.
    pub fn real_block(&self) -> IntMatrix {
        self.matrix.restrict(&self.real, &self.real)
    }
}

/// Lower-right `(n - split) x (n - split)` block of `ms[0] · ms[1] · … · ms[last]`.
///
/// Every matrix must be `n x n` with rows `split..n` vanishing on columns
/// `0..split`; the block is then the product of the individual blocks.
pub fn product_lower_right(ms: &[IntMatrix], split: usize) -> Result<IntMatrix, MatrixError> {
    let first = ms.first().ok_or(MatrixError::Empty)?;
    let n = first.require_square()?;
    if split >= n {
        return Err(MatrixError::Dimension(format!(
            "split {split} leaves no lower-right block in a {n}x{n} matrix"
        )));
    }
    let low: Vec<usize> = (split..n).collect();
    let mut acc: Option<IntMatrix> = None;
    for m in ms {
        if m.require_square()? != n {
            return Err(MatrixError::Dimension(format!(
                "sequence mixes {n}x{n} and {}x{} matrices",
                m.rows(),
                m.cols()
            )));
        }
        for r in split..n {
            for c in 0..split {
                if !m.get(r, c).is_zero() {
                    return Err(MatrixError::BlockZero { row: r, col: c });
                }
            }
        }
        let block = m.restrict(&low, &low);
        acc = Some(match acc {
            None => block,
            Some(a) => a.mul(&block)?,
        });
    }
    Ok(acc.expect("nonempty sequence"))
}

/// Smallest `j >= 0` such that every column `β ∈ R` of `M^{p+j}` is positive,
/// where `p = 2 r q` and `q` is the minimal positive-diagonal power of `M_R`.
pub fn cover_time(bt: &BlockTransition) -> Result<u64, MatrixError> {
    let (_, p) = spread_base(bt)?;
    let n = bt.branch_count();
    let support = bt.matrix.support();
    let mut cur = support.pow(p);
    let mut uncovered = Vec::new();
    for j in 0..=n {
        uncovered.clear();
        for b in 0..n {
            if !bt.real.iter().all(|&beta| cur.get(b, beta)) {
                uncovered.push(b);
            }
        }
        if uncovered.is_empty() {
            return Ok(j as u64);
        }
        cur = support.mul(&cur);
    }
    Err(MatrixError::NotBhStructure {
        uncovered,
        steps: n,
    })
}

fn spread_base(bt: &BlockTransition) -> Result<(u64, u64), MatrixError> {
    let q = min_positive_diagonal_power(&bt.real_block())?;
    let r = bt.real.len() as u64;
    Ok((q, 2 * r * q))
}

/// Breakdown of the spreading iterate `k = 2 r q + i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpreadCertificate {
    pub real_count: u64,
    pub q: u64,
    pub p: u64,
    pub cover_time: u64,
    pub k: u64,
    /// `c_n χ²`; the iterate is expected to lie strictly below it.
    pub bound: u64,
    pub within_bound: bool,
}

/// Computes `k = 2 r q + i` and certifies with exact powers that
/// `(M^k)[b][β] > 0` for every branch `b` and real `β`.
pub fn compute_k(bt: &BlockTransition) -> Result<SpreadCertificate, MatrixError> {
    let (q, p) = spread_base(bt)?;
    let i = cover_time(bt)?;
    let k = p + i;
    let power = bt.matrix.pow(k)?;
    for b in 0..bt.branch_count() {
        for &beta in &bt.real {
            if power.get(b, beta).is_zero() {
                return Err(MatrixError::CertificateFailed { k, row: b, col: beta });
            }
        }
    }
    let bound = bt.surface.spread_bound();
    Ok(SpreadCertificate {
        real_count: bt.real.len() as u64,
        q,
        p,
        cover_time: i,
        k,
        bound,
        within_bound: k < bound,
    })
}
