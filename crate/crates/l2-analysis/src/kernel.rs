use exact_kernel::TransitionOperator;
use shuffle_core::CoinStream;

use crate::func::FuncVector;
use crate::{L2Error, Result};

const STOCHASTIC_TOL: f64 = 1e-9;

/// A dense doubly stochastic kernel in f64, the working representation for
/// the functional-calculus checks (exact operators convert losslessly; the
/// random test kernels are Birkhoff mixtures and natively float).
#[derive(Debug, Clone, PartialEq)]
pub struct DenseKernel {
    n: usize,
    p: Vec<f64>, // row-major
}

impl DenseKernel {
    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self> {
        let n = rows.len();
        let mut p = Vec::with_capacity(n * n);
        for row in &rows {
            if row.len() != n {
                return Err(L2Error::SizeMismatch {
                    left: row.len(),
                    right: n,
                });
            }
            p.extend_from_slice(row);
        }
        let kernel = DenseKernel { n, p };
        kernel.verify_doubly_stochastic()?;
        Ok(kernel)
    }

    pub fn from_operator(op: &TransitionOperator) -> Self {
        let n = op.size() as usize;
        let mut p = vec![0.0; n * n];
        for x in 0..n {
            for &(y, q) in op.row(x as u32) {
                p[x * n + y as usize] = q.to_f64();
            }
        }
        DenseKernel { n, p }
    }

    /// Deterministic kernel of a permutation `perm` (state `x` moves to
    /// `perm[x]`).
    pub fn permutation(perm: &[usize]) -> Result<Self> {
        let n = perm.len();
        let mut p = vec![0.0; n * n];
        let mut seen = vec![false; n];
        for (x, &y) in perm.iter().enumerate() {
            if y >= n || seen[y] {
                return Err(L2Error::BadDistribution("not a permutation".into()));
            }
            seen[y] = true;
            p[x * n + y] = 1.0;
        }
        Ok(DenseKernel { n, p })
    }

    /// Random Birkhoff mixture: a convex combination of 3..=10 uniform
    /// random permutation matrices with Dirichlet(1) weights. Doubly
    /// stochastic by construction, no iterative normalization.
    pub fn random_birkhoff(n: usize, coins: &mut CoinStream) -> Self {
        let count = 3 + coins.next_below(8) as usize;
        let mut weights: Vec<f64> = (0..count)
            .map(|_| -coins.next_unit_open_zero().ln())
            .collect();
        let total: f64 = weights.iter().sum();
        for w in &mut weights {
            *w /= total;
        }
        let mut p = vec![0.0; n * n];
        for &w in &weights {
            let mut perm: Vec<usize> = (0..n).collect();
            coins.shuffle(&mut perm);
            for (x, &y) in perm.iter().enumerate() {
                p[x * n + y] += w;
            }
        }
        DenseKernel { n, p }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, x: usize, y: usize) -> f64 {
        self.p[x * self.n + y]
    }

    pub fn is_symmetric(&self, tolerance: f64) -> bool {
        (0..self.n).all(|x| {
            (0..x).all(|y| (self.get(x, y) - self.get(y, x)).abs() <= tolerance)
        })
    }

    pub fn verify_doubly_stochastic(&self) -> Result<()> {
        for x in 0..self.n {
            let row: f64 = (0..self.n).map(|y| self.get(x, y)).sum();
            if (row - 1.0).abs() > STOCHASTIC_TOL {
                return Err(L2Error::NotDoublyStochastic {
                    detail: format!("row {x} sums to {row}"),
                    tolerance: STOCHASTIC_TOL,
                });
            }
        }
        for y in 0..self.n {
            let col: f64 = (0..self.n).map(|x| self.get(x, y)).sum();
            if (col - 1.0).abs() > STOCHASTIC_TOL {
                return Err(L2Error::NotDoublyStochastic {
                    detail: format!("column {y} sums to {col}"),
                    tolerance: STOCHASTIC_TOL,
                });
            }
        }
        Ok(())
    }

    /// `(K f)(x) = sum_y K(x, y) f(y)`.
    pub fn apply(&self, f: &FuncVector) -> Result<FuncVector> {
        self.check_len(f)?;
        let values = (0..self.n)
            .map(|x| {
                (0..self.n)
                    .map(|y| self.get(x, y) * f.values()[y])
                    .sum::<f64>()
            })
            .collect();
        Ok(FuncVector::from_raw(values))
    }

    /// `(K^t f)(y) = sum_x K(x, y) f(x)`; in particular
    /// `p(S, .) = K^t 1_S`.
    pub fn apply_transpose(&self, f: &FuncVector) -> Result<FuncVector> {
        self.check_len(f)?;
        let values = (0..self.n)
            .map(|y| {
                (0..self.n)
                    .map(|x| self.get(x, y) * f.values()[x])
                    .sum::<f64>()
            })
            .collect();
        Ok(FuncVector::from_raw(values))
    }

    /// One application of `K_hat = K K^t`, the reversibilized kernel.
    pub fn k_hat_apply(&self, f: &FuncVector) -> Result<FuncVector> {
        self.apply(&self.apply_transpose(f)?)
    }

    fn check_len(&self, f: &FuncVector) -> Result<()> {
        if f.len() != self.n {
            return Err(L2Error::SizeMismatch {
                left: f.len(),
                right: self.n,
            });
        }
        Ok(())
    }
}
