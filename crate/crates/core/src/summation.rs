//! Neumaier (improved Kahan) compensated summation.

use num_complex::Complex64;

#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum: f64,
    compensation: f64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.compensation += (self.sum - t) + x;
        } else {
            self.compensation += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn total(&self) -> f64 {
        self.sum + self.compensation
    }
}

impl Extend<f64> for CompensatedSum {
    fn extend<I: IntoIterator<Item = f64>>(&mut self, iter: I) {
        for x in iter {
            self.add(x);
        }
    }
}

impl FromIterator<f64> for CompensatedSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut s = Self::new();
        s.extend(iter);
        s
    }
}

/// Real and imaginary parts accumulated independently.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedComplexSum {
    re: CompensatedSum,
    im: CompensatedSum,
}

impl CompensatedComplexSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, z: Complex64) {
        self.re.add(z.re);
        self.im.add(z.im);
    }

    pub fn total(&self) -> Complex64 {
        Complex64::new(self.re.total(), self.im.total())
    }
}

impl FromIterator<Complex64> for CompensatedComplexSum {
    fn from_iter<I: IntoIterator<Item = Complex64>>(iter: I) -> Self {
        let mut s = Self::new();
        for z in iter {
            s.add(z);
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_cancelled_small_terms() {
        let xs = [1.0, 1e100, 1.0, -1e100];
        let naive: f64 = xs.iter().sum();
        let s: CompensatedSum = xs.into_iter().collect();
        assert_eq!(naive, 0.0);
        assert_eq!(s.total(), 2.0);
    }

    #[test]
    fn many_tenths() {
        let s: CompensatedSum = std::iter::repeat_n(0.1, 10_000_000).collect();
        assert!((s.total() - 1_000_000.0).abs() < 1e-9);
    }

    #[test]
    fn complex_parts_independent() {
        let s: CompensatedComplexSum = [
            Complex64::new(1.0, 1e100),
            Complex64::new(1e100, 1.0),
            Complex64::new(-1e100, -1e100),
        ]
        .into_iter()
        .collect();
        assert_eq!(s.total(), Complex64::new(1.0, 1.0));
    }
}
