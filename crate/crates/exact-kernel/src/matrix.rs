/// Row-major dense f64 matrix, just big enough for desk-scale chains.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    n: usize,
    data: Vec<f64>,
}

impl DenseMatrix {
    pub fn from_raw(n: usize, data: Vec<f64>) -> Self {
        assert_eq!(data.len(), n * n);
        DenseMatrix { n, data }
    }

    pub fn identity(n: usize) -> Self {
        let mut data = vec![0.0; n * n];
        for i in 0..n {
            data[i * n + i] = 1.0;
        }
        DenseMatrix { n, data }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, x: usize, y: usize) -> f64 {
        self.data[x * self.n + y]
    }

    pub fn row(&self, x: usize) -> &[f64] {
        &self.data[x * self.n..(x + 1) * self.n]
    }

    pub fn mul(&self, other: &DenseMatrix) -> DenseMatrix {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let mut data = vec![0.0; n * n];
        for x in 0..n {
            for mid in 0..n {
                let p = self.data[x * n + mid];
                if p == 0.0 {
                    continue;
                }
                let other_row = &other.data[mid * n..(mid + 1) * n];
                let out_row = &mut data[x * n..(x + 1) * n];
                for (o, &q) in out_row.iter_mut().zip(other_row) {
                    *o += p * q;
                }
            }
        }
        DenseMatrix { n, data }
    }

    pub fn pow(&self, e: u64) -> DenseMatrix {
        let mut acc = DenseMatrix::identity(self.n);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Largest absolute entry of `self - other`.
    pub fn max_abs_diff(&self, other: &DenseMatrix) -> f64 {
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_is_neutral() {
        let m = DenseMatrix::from_raw(2, vec![0.25, 0.75, 0.5, 0.5]);
        assert_eq!(m.mul(&DenseMatrix::identity(2)), m);
        assert_eq!(DenseMatrix::identity(2).mul(&m), m);
    }

    #[test]
    fn powers_multiply_out() {
        let m = DenseMatrix::from_raw(2, vec![0.5, 0.5, 0.5, 0.5]);
        let sq = m.pow(2);
        assert!(sq.max_abs_diff(&m) < 1e-15);
    }
}
