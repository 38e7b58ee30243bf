use crate::error::{Error, Result};

/// Normalized elementary symmetric means `S_1, ..., S_m`, where
/// `S_j = e_j(x) / C(m, j)`. Entries must be strictly positive.
pub fn maclaurin_means(x: &[f64]) -> Result<Vec<f64>> {
    if let Some(&bad) = x.iter().find(|&&v| v.is_nan() || v <= 0.0) {
        return Err(Error::NonPositive(bad));
    }
    let m = x.len();
    let mut elementary = vec![0.0; m + 1];
    elementary[0] = 1.0;
    for (count, &v) in x.iter().enumerate() {
        for j in (1..=count + 1).rev() {
            elementary[j] += v * elementary[j - 1];
        }
    }
    let mut choose = 1.0;
    let mut means = Vec::with_capacity(m);
    for (j, e) in elementary.iter().enumerate().skip(1) {
        choose = choose * (m + 1 - j) as f64 / j as f64;
        means.push(e / choose);
    }
    Ok(means)
}

/// The chain `S_1 >= S_2^{1/2} >= ... >= S_m^{1/m}`.
#[derive(Debug, Clone, PartialEq)]
pub struct MaclaurinChain {
    pub roots: Vec<f64>,
}

impl MaclaurinChain {
    pub fn new(x: &[f64]) -> Result<Self> {
        let roots = maclaurin_means(x)?
            .into_iter()
            .enumerate()
            .map(|(j, s)| s.powf(1.0 / (j + 1) as f64))
            .collect();
        Ok(Self { roots })
    }

    /// Largest relative increase between consecutive roots; nonpositive when
    /// the chain is nonincreasing.
    fn worst_increase(&self) -> f64 {
        self.roots
            .windows(2)
            .map(|w| (w[1] - w[0]) / w[0])
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// The chain is nonincreasing up to `rel_tol`.
    pub fn holds(&self, rel_tol: f64) -> bool {
        self.roots.len() < 2 || self.worst_increase() <= rel_tol
    }

    /// Every link is an equality up to `rel_tol`.
    pub fn is_tight(&self, rel_tol: f64) -> bool {
        let first = self.roots.first().copied().unwrap_or(0.0);
        self.roots
            .iter()
            .all(|&r| (r - first).abs() <= rel_tol * first)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn constant_vector_is_tight() {
        let chain = MaclaurinChain::new(&[2.5; 6]).unwrap();
        for r in &chain.roots {
            assert_relative_eq!(*r, 2.5, max_relative = 1e-14);
        }
        assert!(chain.holds(1e-12));
        assert!(chain.is_tight(1e-12));
    }

    #[test]
    fn small_examples() {
        let s = maclaurin_means(&[1.0, 2.0]).unwrap();
        assert_relative_eq!(s[0], 1.5);
        assert_relative_eq!(s[1], 2.0);

        let s = maclaurin_means(&[1.0, 2.0, 3.0]).unwrap();
        assert_relative_eq!(s[0], 2.0);
        assert_relative_eq!(s[1], 11.0 / 3.0, max_relative = 1e-15);
        assert_relative_eq!(s[2], 6.0);
        let chain = MaclaurinChain::new(&[1.0, 2.0, 3.0]).unwrap();
        assert!(chain.holds(0.0));
        assert!(!chain.is_tight(1e-9));
    }

    #[test]
    fn rejects_nonpositive() {
        assert_eq!(maclaurin_means(&[1.0, 0.0]), Err(Error::NonPositive(0.0)));
        assert!(maclaurin_means(&[1.0, f64::NAN]).is_err());
    }
}
