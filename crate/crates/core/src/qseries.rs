//! Truncated exponential series in one variable.
//!
//! A [`QSeries`] stores exact coefficients of `q^n` where `q = e^x`, up to a
//! truncation order. Every operation tracks validity: results are only
//! populated through the smaller of the operand orders. The `x`-derivative
//! acts diagonally, `a_n -> n * a_n`.

use crate::scalar::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QSeries {
    /// `coeffs[n]` is the coefficient of `q^n`; length `trunc + 1`.
    coeffs: Vec<Rational>,
    trunc: u32,
}

impl QSeries {
    pub fn zero(trunc: u32) -> Self {
        QSeries {
            coeffs: vec![Rational::zero(); trunc as usize + 1],
            trunc,
        }
    }

    /// Build from `(n, a_n)` pairs; anything beyond `trunc` is ignored.
    pub fn from_coeffs(trunc: u32, entries: impl IntoIterator<Item = (u32, Rational)>) -> Self {
        let mut s = QSeries::zero(trunc);
        for (n, a) in entries {
            if n <= trunc {
                s.coeffs[n as usize] = a;
            }
        }
        s
    }

    pub fn truncation_order(&self) -> u32 {
        self.trunc
    }

    pub fn coeff(&self, n: u32) -> &Rational {
        &self.coeffs[n as usize]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Rational::is_zero)
    }

    pub fn add(&self, other: &QSeries) -> QSeries {
        let trunc = self.trunc.min(other.trunc);
        let mut out = QSeries::zero(trunc);
        for n in 0..=trunc as usize {
            out.coeffs[n] = &self.coeffs[n] + &other.coeffs[n];
        }
        out
    }

    pub fn sub(&self, other: &QSeries) -> QSeries {
        self.add(&other.scale(&Rational::from_int(-1)))
    }

    pub fn mul(&self, other: &QSeries) -> QSeries {
        let trunc = self.trunc.min(other.trunc);
        let mut out = QSeries::zero(trunc);
        for i in 0..=trunc as usize {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=(trunc as usize - i) {
                if other.coeffs[j].is_zero() {
                    continue;
                }
                let prod = &self.coeffs[i] * &other.coeffs[j];
                out.coeffs[i + j] += &prod;
            }
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> QSeries {
        QSeries {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
            trunc: self.trunc,
        }
    }

    /// `d/dx`, i.e. `a_n -> n * a_n`.
    pub fn x_derivative(&self) -> QSeries {
        QSeries {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(n, a)| a * &Rational::from_int(n as i64))
                .collect(),
            trunc: self.trunc,
        }
    }

    /// Evaluate the truncated series at `e^x = u` in floating point.
    pub fn eval_f64(&self, u: f64) -> f64 {
        let mut acc = 0.0;
        let mut pw = 1.0;
        for a in &self.coeffs {
            acc += a.to_f64() * pw;
            pw *= u;
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::factorial;

    fn one_at(n: u32, trunc: u32) -> QSeries {
        QSeries::from_coeffs(trunc, [(n, Rational::one())])
    }

    #[test]
    fn x_derivative_fixes_first_coefficient() {
        let s = one_at(1, 5);
        assert_eq!(s.x_derivative(), s);
    }

    #[test]
    fn convolution() {
        let s = one_at(1, 5);
        let p = s.mul(&s);
        assert_eq!(p, one_at(2, 5));
    }

    #[test]
    fn triple_x_derivative_with_factorial_weights() {
        // a_n = N_n/(3n-1)! with N_2 = 1: third derivative coefficient at
        // n = 2 is 8/5! = 1/15
        let a2 = Rational::from_bigint(factorial(5)).recip().unwrap();
        let s = QSeries::from_coeffs(4, [(2, a2)]);
        let d3 = s.x_derivative().x_derivative().x_derivative();
        assert_eq!(*d3.coeff(2), Rational::ratio(1, 15));
    }

    #[test]
    fn truncation_tracks_minimum() {
        let a = one_at(1, 3);
        let b = one_at(1, 7);
        assert_eq!(a.mul(&b).truncation_order(), 3);
        assert_eq!(a.add(&b).truncation_order(), 3);
    }

    #[test]
    fn derivative_is_linear_and_leibniz() {
        let a = QSeries::from_coeffs(6, [(1, Rational::from_int(3)), (2, Rational::ratio(1, 2))]);
        let b = QSeries::from_coeffs(6, [(1, Rational::one()), (3, Rational::from_int(-2))]);
        let lhs = a.add(&b).x_derivative();
        let rhs = a.x_derivative().add(&b.x_derivative());
        assert_eq!(lhs, rhs);
        let lhs = a.mul(&b).x_derivative();
        let rhs = a.x_derivative().mul(&b).add(&a.mul(&b.x_derivative()));
        assert_eq!(lhs, rhs);
    }
}
