use std::collections::VecDeque;

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use super::{IntMatrix, MatrixError};

/// True iff for every `(i, j)` some power `m^s`, `s >= 1`, has `(i, j)` entry
/// positive, i.e. the support digraph is strongly connected (and a 1x1 matrix
/// has a nonzero entry).
pub fn is_irreducible(m: &IntMatrix) -> Result<bool, MatrixError> {
    let n = m.require_square()?;
    let b = m.support();
    if b.reach_plus(0).count_ones(..) != n {
        return Ok(false);
    }
    Ok(b.transpose().reach_plus(0).count_ones(..) == n)
}

/// Smallest `q >= 1` such that `m^q` has a positive diagonal entry: the
/// length of the shortest directed cycle of the support digraph.
pub fn min_positive_diagonal_power(m: &IntMatrix) -> Result<u64, MatrixError> {
    if !is_irreducible(m)? {
        return Err(MatrixError::NotIrreducible);
    }
    let n = m.rows();
    let b = m.support();
    let mut best = usize::MAX;
    let mut dist = vec![usize::MAX; n];
    let mut queue = VecDeque::new();
    for start in 0..n {
        if b.get(start, start) {
            return Ok(1);
        }
        dist.fill(usize::MAX);
        queue.clear();
        dist[start] = 0;
        queue.push_back(start);
        'bfs: while let Some(u) = queue.pop_front() {
            if dist[u] + 1 >= best {
                break;
            }
            for w in b.row(u).ones() {
                if w == start {
                    best = best.min(dist[u] + 1);
                    break 'bfs;
                }
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
    }
    Ok(best as u64)
}

/// `n² - 2n + 2`, the largest possible primitivity exponent of an `n x n`
/// primitive matrix.
pub fn wielandt_bound(n: usize) -> u64 {
    let n = n as u64;
    n * n + 2 - 2 * n
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind", content = "exponent")]
pub enum Primitivity {
    Primitive(u64),
    NotPrimitive,
}

impl Primitivity {
    pub fn exponent(self) -> Option<u64> {
        match self {
            Primitivity::Primitive(e) => Some(e),
            Primitivity::NotPrimitive => None,
        }
    }
}

/// Smallest `s` with `m^s` entrywise positive, scanning `s` up to the
/// Wielandt bound on boolean supports.
pub fn primitivity_exponent(m: &IntMatrix) -> Result<Primitivity, MatrixError> {
    let n = m.require_square()?;
    let b = m.support();
    let mut p = b.clone();
    for s in 1..=wielandt_bound(n) {
        if p.is_full() {
            return Ok(Primitivity::Primitive(s));
        }
        p = p.mul(&b);
    }
    Ok(Primitivity::NotPrimitive)
}

/// Power-iteration estimate of the Perron–Frobenius eigenvalue.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PfEstimate {
    pub eigenvalue: f64,
    /// `max_i |(M v)_i - λ v_i|` for the final normalised iterate `v`.
    pub residual: f64,
    pub iterations: u32,
}

pub fn pf_eigenvalue_estimate(m: &IntMatrix, iterations: u32) -> Result<PfEstimate, MatrixError> {
    let n = m.require_square()?;
    if primitivity_exponent(m)? == Primitivity::NotPrimitive {
        return Err(MatrixError::NotPrimitive);
    }
    let a: Vec<f64> = m
        .entries()
        .iter()
        .map(|v| v.to_f64().unwrap_or(f64::INFINITY))
        .collect();
    let apply = |v: &[f64]| -> Vec<f64> {
        (0..n)
            .map(|i| (0..n).map(|j| a[i * n + j] * v[j]).sum())
            .collect()
    };
    let mut v = vec![1.0 / n as f64; n];
    let mut lambda = 0.0;
    for _ in 0..iterations.max(1) {
        let w = apply(&v);
        let norm: f64 = w.iter().sum();
        lambda = norm / v.iter().sum::<f64>();
        v = w.into_iter().map(|x| x / norm).collect();
    }
    let w = apply(&v);
    let residual = w
        .iter()
        .zip(&v)
        .map(|(wi, vi)| (wi - lambda * vi).abs())
        .fold(0.0, f64::max);
    Ok(PfEstimate {
        eigenvalue: lambda,
        residual,
        iterations: iterations.max(1),
    })
}
