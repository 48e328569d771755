use crate::{L2Error, Result};

/// A function `V -> [0, 1]` on an enumerated state space. The range
/// restriction is the hypothesis both lemmas need, so it is validated at
/// construction.
#[derive(Debug, Clone, PartialEq)]
pub struct FuncVector {
    values: Vec<f64>,
}

impl FuncVector {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        for (state, &value) in values.iter().enumerate() {
            if !(0.0..=1.0).contains(&value) || value.is_nan() {
                return Err(L2Error::ValueOutOfRange { state, value });
            }
        }
        Ok(FuncVector { values })
    }

    pub fn ones(n: usize) -> Self {
        FuncVector { values: vec![1.0; n] }
    }

    /// Indicator of the states listed in `members`.
    pub fn indicator(n: usize, members: &[usize]) -> Result<Self> {
        let mut values = vec![0.0; n];
        for &state in members {
            if state >= n {
                return Err(L2Error::SizeMismatch { left: state, right: n });
            }
            values[state] = 1.0;
        }
        Ok(FuncVector { values })
    }

    /// `1 - f`, again a `[0, 1]` function.
    pub fn complement(&self) -> Self {
        FuncVector {
            values: self.values.iter().map(|v| 1.0 - v).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// `||f||_1 = (1/|V|) sum f(x)`.
    pub fn l1(&self) -> f64 {
        self.values.iter().sum::<f64>() / self.values.len() as f64
    }

    /// `||f||_2^2 = (1/|V|) sum f(x)^2`.
    pub fn l2_sq(&self) -> f64 {
        self.values.iter().map(|v| v * v).sum::<f64>() / self.values.len() as f64
    }

    /// `<f, g> = (1/|V|) sum f(x) g(x)`.
    pub fn inner(&self, other: &FuncVector) -> Result<f64> {
        if self.len() != other.len() {
            return Err(L2Error::SizeMismatch {
                left: self.len(),
                right: other.len(),
            });
        }
        Ok(self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a * b)
            .sum::<f64>()
            / self.values.len() as f64)
    }

    pub(crate) fn from_raw(values: Vec<f64>) -> Self {
        FuncVector { values }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_one_has_unit_norms() {
        let f = FuncVector::ones(5);
        assert_eq!(f.l1(), 1.0);
        assert_eq!(f.l2_sq(), 1.0);
        assert_eq!(f.inner(&f).unwrap(), 1.0);
    }

    #[test]
    fn half_indicator_norms() {
        let f = FuncVector::indicator(4, &[0, 1]).unwrap();
        assert_eq!(f.l1(), 0.5);
        assert_eq!(f.l2_sq(), 0.5);
    }

    #[test]
    fn l2_sq_never_exceeds_l1_on_unit_range() {
        let f = FuncVector::new(vec![0.3, 0.9, 0.0, 1.0, 0.2]).unwrap();
        assert!(f.l2_sq() <= f.l1());
        assert_eq!(f.inner(&f).unwrap(), f.l2_sq());
    }

    #[test]
    fn out_of_range_values_rejected() {
        assert!(FuncVector::new(vec![0.5, 1.2]).is_err());
        assert!(FuncVector::new(vec![-0.1]).is_err());
    }
}
