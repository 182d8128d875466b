//! Exact sums of n-th roots of unity.
//!
//! A [`RootSum`] is an element Σ c_k ω^k of the group ring Z[C_n]. Equality in
//! ℂ is decided by reducing modulo the cyclotomic polynomial Φ_n, which
//! gives the unique representative in Z[ω] of degree below φ(n).

use num_complex::Complex64;

/// Φ_n with integer coefficients, constant term first.
pub fn cyclotomic_polynomial(n: u32) -> Vec<i64> {
    // x^n - 1 divided by Φ_d for every proper divisor d of n
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in (1..n).filter(|&d| n.is_multiple_of(d)) {
        num = div_exact(&num, &cyclotomic_polynomial(d));
    }
    num
}

fn div_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let mut quot = vec![0i64; num.len() - dd];
    for i in (0..quot.len()).rev() {
        let c = rem[i + dd];
        quot[i] = c;
        for (j, &dj) in den.iter().enumerate() {
            rem[i + j] -= c * dj;
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    quot
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootSum {
    n: u32,
    counts: Vec<i64>,
}

impl RootSum {
    pub fn zero(n: u32) -> Self {
        RootSum {
            n,
            counts: vec![0; n as usize],
        }
    }

    pub fn integer(n: u32, m: i64) -> Self {
        let mut s = RootSum::zero(n);
        s.counts[0] = m;
        s
    }

    pub fn order(&self) -> u32 {
        self.n
    }

    /// Adds `mult · ω^k`.
    pub fn add_root(&mut self, k: i64, mult: i64) {
        let n = self.n as i64;
        self.counts[k.rem_euclid(n) as usize] += mult;
    }

    pub fn conj(&self) -> Self {
        let n = self.n as usize;
        let mut out = RootSum::zero(self.n);
        for (k, &c) in self.counts.iter().enumerate() {
            out.counts[(n - k) % n] += c;
        }
        out
    }

    pub fn mul(&self, other: &RootSum) -> Self {
        assert_eq!(self.n, other.n, "root orders must agree");
        let n = self.n as usize;
        let mut out = RootSum::zero(self.n);
        for (i, &a) in self.counts.iter().enumerate().filter(|(_, &a)| a != 0) {
            for (j, &b) in other.counts.iter().enumerate() {
                out.counts[(i + j) % n] += a * b;
            }
        }
        out
    }

    pub fn scale(&self, m: i64) -> Self {
        RootSum {
            n: self.n,
            counts: self.counts.iter().map(|c| c * m).collect(),
        }
    }

    pub fn sub(&self, other: &RootSum) -> Self {
        assert_eq!(self.n, other.n, "root orders must agree");
        RootSum {
            n: self.n,
            counts: self.counts.iter().zip(&other.counts).map(|(a, b)| a - b).collect(),
        }
    }

    /// Coefficients in the power basis of Z[ω], length φ(n).
    pub fn reduced(&self) -> Vec<i64> {
        let phi = cyclotomic_polynomial(self.n);
        let deg = phi.len() - 1;
        let mut r = self.counts.clone();
        for i in (deg..r.len()).rev() {
            let c = r[i];
            if c == 0 {
                continue;
            }
            for (j, &pj) in phi.iter().enumerate() {
                r[i - deg + j] -= c * pj;
            }
        }
        r.truncate(deg);
        r
    }

    pub fn is_zero(&self) -> bool {
        self.reduced().iter().all(|&c| c == 0)
    }

    pub fn equals_integer(&self, m: i64) -> bool {
        self.sub(&RootSum::integer(self.n, m)).is_zero()
    }

    /// |z|² as a RootSum.
    pub fn norm_sq(&self) -> RootSum {
        self.mul(&self.conj())
    }

    pub fn to_complex(&self) -> Complex64 {
        let n = self.n as f64;
        self.counts
            .iter()
            .enumerate()
            .map(|(k, &c)| Complex64::from_polar(c as f64, 2.0 * std::f64::consts::PI * k as f64 / n))
            .sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cyclotomics() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(3), vec![1, 1, 1]);
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(6), vec![1, -1, 1]);
    }

    #[test]
    fn roots_sum_to_zero() {
        for n in [2, 3, 4, 5, 7] {
            let mut s = RootSum::zero(n);
            for k in 0..n as i64 {
                s.add_root(k, 1);
            }
            assert!(s.is_zero(), "n = {n}");
        }
    }

    #[test]
    fn gaussian_norm() {
        // (1 + i) has norm 2
        let mut s = RootSum::zero(4);
        s.add_root(0, 1);
        s.add_root(1, 1);
        assert!(s.norm_sq().equals_integer(2));
        assert!(!s.norm_sq().equals_integer(1));
    }

    #[test]
    fn eisenstein_norm() {
        // 1 - ω has norm 3 in Z[ω₃]
        let mut s = RootSum::zero(3);
        s.add_root(0, 1);
        s.add_root(1, -1);
        assert!(s.norm_sq().equals_integer(3));
        assert!((s.to_complex().norm_sqr() - 3.0).abs() < 1e-12);
    }
}
