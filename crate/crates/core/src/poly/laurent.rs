//! Truncated Laurent series in x⁻¹ with a tracked window of known terms.

use std::fmt;

use super::{Poly, PolyError};
use crate::arith::Field;

/// Extra terms beyond the degree of the radicand used by default when
/// extracting the principal part of a square root.
pub const DEFAULT_EXTRA_PRECISION: usize = 8;

/// `Σ h_n x^n` for `n ≤ top`, known for the `coeffs.len()` highest degrees.
/// `coeffs[i]` is the coefficient of `x^(top - i)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LaurentSeries<F> {
    top: i64,
    coeffs: Vec<F>,
}

impl<F: Field> LaurentSeries<F> {
    pub fn new(top: i64, coeffs: Vec<F>) -> Self {
        assert!(!coeffs.is_empty(), "a series needs at least one known term");
        LaurentSeries { top, coeffs }
    }

    /// The polynomial `p` viewed as a series known down to degree
    /// `top - precision + 1`.
    pub fn from_poly(p: &Poly<F>, precision: usize) -> Self {
        let top = p.degree().unwrap_or(0) as i64;
        let coeffs = (0..precision as i64)
            .map(|i| {
                let k = top - i;
                if k >= 0 {
                    p.coeff(k as usize)
                } else {
                    F::zero()
                }
            })
            .collect();
        Self::new(top, coeffs)
    }

    pub fn top_degree(&self) -> i64 {
        self.top
    }

    pub fn precision(&self) -> usize {
        self.coeffs.len()
    }

    /// Lowest degree whose coefficient is known.
    pub fn lowest_known(&self) -> i64 {
        self.top - self.coeffs.len() as i64 + 1
    }

    /// Coefficient of `x^n`, or `None` below the known window.
    pub fn coeff(&self, n: i64) -> Option<F> {
        if n > self.top {
            Some(F::zero())
        } else if n < self.lowest_known() {
            None
        } else {
            Some(self.coeffs[(self.top - n) as usize].clone())
        }
    }

    fn combine(&self, other: &Self, op: impl Fn(F, F) -> F) -> Self {
        let top = self.top.max(other.top);
        let low = self.lowest_known().max(other.lowest_known());
        let coeffs = (low..=top)
            .rev()
            .map(|n| op(self.coeff(n).unwrap(), other.coeff(n).unwrap()))
            .collect();
        Self::new(top, coeffs)
    }

    pub fn add(&self, other: &Self) -> Self {
        self.combine(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.combine(other, |a, b| a - b)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let top = self.top + other.top;
        let low = (self.lowest_known() + other.top).max(other.lowest_known() + self.top);
        let len = (top - low + 1) as usize;
        let mut coeffs = vec![F::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate().take(len.saturating_sub(i)) {
                coeffs[i + j] = coeffs[i + j].clone() + a.clone() * b.clone();
            }
        }
        Self::new(top, coeffs)
    }

    /// `⌊h⌋`, the terms of nonnegative degree.
    pub fn principal_part(&self) -> Result<Poly<F>, PolyError> {
        if self.lowest_known() > 0 {
            return Err(PolyError::InsufficientPrecision {
                lowest: self.lowest_known(),
                needed: 0,
            });
        }
        if self.top < 0 {
            return Ok(Poly::zero());
        }
        Ok(Poly::new(
            (0..=self.top).map(|n| self.coeff(n).unwrap()).collect(),
        ))
    }
}

impl<F: Field> fmt::Display for LaurentSeries<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let n = self.top - i as i64;
            let (neg, text) = c.coeff_text();
            match (first, neg) {
                (true, true) => write!(f, "-")?,
                (true, false) => {}
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
            }
            first = false;
            match n {
                0 => write!(f, "{text}")?,
                1 if text == "1" => write!(f, "x")?,
                1 => write!(f, "{text}*x")?,
                _ if text == "1" => write!(f, "x^{n}")?,
                _ => write!(f, "{text}*x^{n}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(x^{})", self.lowest_known() - 1)
    }
}

/// Square root of a monic polynomial of even degree 2m as a series with
/// top degree m and leading coefficient 1, known to `precision` terms.
///
/// Coefficients follow from comparing `s² = d` degree by degree: the
/// coefficient `t_k` of `x^(m-k)` satisfies
/// `2 t_k = d_(2m-k) - Σ_(0<i<k) t_i t_(k-i)`.
pub fn sqrt_series<F: Field>(d: &Poly<F>, precision: usize) -> Result<LaurentSeries<F>, PolyError> {
    let deg = d.degree().ok_or(PolyError::Zero)?;
    if deg % 2 == 1 {
        return Err(PolyError::OddDegree(deg));
    }
    if !d.is_monic() {
        return Err(PolyError::NotMonic(d.to_string()));
    }
    let m = deg / 2;
    let half = F::from_i64(2).inv()?;
    let mut t: Vec<F> = Vec::with_capacity(precision.max(1));
    t.push(F::one());
    for k in 1..precision.max(1) {
        let dk = if k <= deg { d.coeff(deg - k) } else { F::zero() };
        let mut acc = dk;
        for i in 1..k {
            acc = acc - t[i].clone() * t[k - i].clone();
        }
        t.push(acc * half.clone());
    }
    Ok(LaurentSeries::new(m as i64, t))
}

/// `⌊√d⌋`, expanding with `deg d + 8` terms and doubling if the window is
/// too short.
pub fn principal_sqrt<F: Field>(d: &Poly<F>) -> Result<Poly<F>, PolyError> {
    let mut precision = d.degree().unwrap_or(0) + DEFAULT_EXTRA_PRECISION;
    loop {
        match sqrt_series(d, precision)?.principal_part() {
            Err(PolyError::InsufficientPrecision { .. }) => precision *= 2,
            other => return other,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Rational;

    type P = Poly<Rational>;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn sqrt_of_x2_plus_1() {
        let s = sqrt_series(&P::from_ints(&[1, 0, 1]), 5).unwrap();
        assert_eq!(s.top_degree(), 1);
        assert_eq!(s.coeff(1), Some(q("1")));
        assert_eq!(s.coeff(0), Some(q("0")));
        assert_eq!(s.coeff(-1), Some(q("1/2")));
        assert_eq!(s.coeff(-3), Some(q("-1/8")));
        assert_eq!(s.coeff(-4), None);
        assert_eq!(s.principal_part().unwrap(), P::x());
        assert_eq!(s.to_string(), "x + 1/2*x^-1 - 1/8*x^-3 + O(x^-4)");
    }

    #[test]
    fn perfect_square_has_no_tail() {
        let s = sqrt_series(&P::from_ints(&[0, 0, 0, 0, 1]), 6).unwrap();
        assert_eq!(s.principal_part().unwrap(), P::monomial(q("1"), 2));
        for n in -3..2 {
            assert_eq!(s.coeff(n), Some(q("0")));
        }
    }

    #[test]
    fn depressed_quartic_head() {
        // x^4 - 6a x^2 - 8b x + c at a = 2, b = 3, c = 5.
        let d = P::from_ints(&[5, -24, -12, 0, 1]);
        let s = sqrt_series(&d, 4).unwrap();
        assert_eq!(s.coeff(2), Some(q("1")));
        assert_eq!(s.coeff(0), Some(q("-6")));
        assert_eq!(s.coeff(-1), Some(q("-12")));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(sqrt_series(&P::from_ints(&[1, 1]), 4), Err(PolyError::OddDegree(1))));
        assert!(matches!(sqrt_series(&P::from_ints(&[1, 0, 2]), 4), Err(PolyError::NotMonic(_))));
        assert!(matches!(sqrt_series(&P::zero(), 4), Err(PolyError::Zero)));
    }

    #[test]
    fn principal_part_edges() {
        let tail = LaurentSeries::new(-1, vec![q("1"), q("1")]);
        assert!(tail.principal_part().unwrap().is_zero());
        let poly = P::from_ints(&[3, 0, 1]);
        assert_eq!(LaurentSeries::from_poly(&poly, 4).principal_part().unwrap(), poly);
        let short = LaurentSeries::new(3, vec![q("1"), q("2")]);
        assert!(matches!(
            short.principal_part(),
            Err(PolyError::InsufficientPrecision { lowest: 2, needed: 0 })
        ));
    }

    #[test]
    fn squaring_recovers_radicand() {
        let d = P::from_ints(&[10, -4, -7, 2, 1]);
        let s = sqrt_series(&d, 12).unwrap();
        let sq = s.mul(&s);
        assert_eq!(sq.top_degree(), 4);
        for n in sq.lowest_known()..=4 {
            let expect = if n >= 0 { d.coeff(n as usize) } else { q("0") };
            assert_eq!(sq.coeff(n), Some(expect));
        }
    }
}
