//! Gaussian (q-deformed) binomial coefficients.
//!
//! Three evaluation routes are provided and cross-checked in tests:
//!
//! * [`q_binom_pascal`]: the q-Pascal recurrence, valid for every `q`
//!   including roots of unity. This is the production route.
//! * [`q_binom_partition_oracle`]: the partition-generating sum over an
//!   `r × (n − r)` box. Exponential; a test device.
//! * [`q_binom_product`]: the product of q-integer ratios, undefined at
//!   roots of unity of order `≤ n`.
//!
//! [`q_binom_minus1`] is the exact closed form at `q = −1`.

use crate::error::{check_cap, Error, Result};
use crate::scalar::{powu, FieldScalar, Scalar};

/// Default cap on `n` for [`q_binom_partition_oracle`].
pub const PARTITION_ORACLE_CAP: usize = 16;

/// Denominators of the product formula with modulus below this are treated
/// as vanishing.
pub const PRODUCT_DENOMINATOR_EPS: f64 = 1e-12;

/// A nonzero deformation parameter.
#[derive(Debug, Clone, PartialEq)]
pub struct QParam<T>(T);

impl<T: Scalar> QParam<T> {
    pub fn new(value: T) -> Result<Self> {
        if value.is_zero() {
            return Err(Error::Argument("deformation parameter q must be nonzero".into()));
        }
        Ok(QParam(value))
    }

    /// `q = 1`, the commutative parameter.
    pub fn one() -> Self {
        QParam(T::one())
    }

    pub fn value(&self) -> &T {
        &self.0
    }

    pub fn into_inner(self) -> T {
        self.0
    }
}

/// `binom(n, r)_q` by dynamic programming on the q-Pascal recurrence.
///
/// Uses a single rolling row of length `r + 1`, `O(n·r)` ring operations.
pub fn q_binom_pascal<T: Scalar>(n: usize, r: usize, q: &QParam<T>) -> T {
    if r > n {
        return T::zero();
    }
    // row[s] holds binom(row_n, s)_q; s > row_n entries stay zero.
    let mut row = vec![T::zero(); r + 1];
    row[0] = T::one();
    let qpow: Vec<T> = (0..=r).map(|s| powu(q.value(), s)).collect();
    for row_n in 1..=n {
        let top = r.min(row_n);
        for s in (1..=top).rev() {
            row[s] = row[s - 1].clone() + qpow[s].clone() * row[s].clone();
        }
    }
    row[r].clone()
}

/// Visits every partition fitting in an `r × width` box, in colexicographic
/// order of the parts.
fn for_each_box_partition(r: usize, width: usize, mut visit: impl FnMut(&[usize])) {
    fn rec(parts: &mut Vec<usize>, r: usize, bound: usize, visit: &mut dyn FnMut(&[usize])) {
        if parts.len() == r {
            visit(parts);
            return;
        }
        for next in 0..=bound {
            parts.push(next);
            rec(parts, r, next, visit);
            parts.pop();
        }
    }
    let mut parts = Vec::with_capacity(r);
    rec(&mut parts, r, width, &mut visit);
}

/// `binom(n, r)_q` as `Σ_λ q^{|λ|}` over partitions in an `r × (n − r)` box,
/// with the default cap on `n`.
pub fn q_binom_partition_oracle<T: Scalar>(n: usize, r: usize, q: &QParam<T>) -> Result<T> {
    q_binom_partition_oracle_capped(n, r, q, PARTITION_ORACLE_CAP)
}

pub fn q_binom_partition_oracle_capped<T: Scalar>(n: usize, r: usize, q: &QParam<T>, cap: usize) -> Result<T> {
    if r > n {
        return Err(Error::Argument(format!(
            "partition oracle needs r <= n, got r={r} > n={n}"
        )));
    }
    check_cap("partition oracle n", n as u128, cap as u128)?;
    let width = n - r;
    let qpow: Vec<T> = (0..=r * width).map(|s| powu(q.value(), s)).collect();
    let mut total = T::zero();
    for_each_box_partition(r, width, |parts| {
        let size: usize = parts.iter().sum();
        total = total.clone() + qpow[size].clone();
    });
    Ok(total)
}

/// `∏_{i<r} (1 − q^{n−i}) / (1 − q^{i+1})`.
///
/// Only defined away from roots of unity: fails with [`Error::Domain`] when
/// `1 − q^i` vanishes for some `1 ≤ i ≤ n`, where the q-factorial form is
/// `0/0`. Use [`q_binom_pascal`] there.
pub fn q_binom_product<T: FieldScalar>(n: usize, r: usize, q: &QParam<T>) -> Result<T> {
    if r > n {
        return Err(Error::Argument(format!(
            "product formula needs r <= n, got r={r} > n={n}"
        )));
    }
    let one = T::one();
    // factors[i] = 1 - q^i
    let mut factors = Vec::with_capacity(n + 1);
    let mut qi = T::one();
    factors.push(T::zero());
    for i in 1..=n {
        qi = qi * q.value().clone();
        let f = one.clone() - qi.clone();
        let vanishing = if T::is_exact() {
            f.is_zero()
        } else {
            f.modulus() <= PRODUCT_DENOMINATOR_EPS
        };
        if vanishing {
            return Err(Error::Domain(format!(
                "1 - q^{i} vanishes: q is a root of unity of order {i} <= n = {n}; \
                 the product formula is 0/0 here, use q_binom_pascal instead"
            )));
        }
        factors.push(f);
    }
    let mut num = T::one();
    let mut den = T::one();
    for i in 0..r {
        num = num * factors[n - i].clone();
        den = den * factors[i + 1].clone();
    }
    Ok(num / den)
}

/// Ordinary binomial coefficient with overflow detection.
pub fn binomial_u128(n: usize, r: usize) -> Result<u128> {
    if r > n {
        return Ok(0);
    }
    let r = r.min(n - r);
    let mut acc: u128 = 1;
    for i in 0..r {
        // acc * (n - i) / (i + 1) stays integral at every step
        acc = acc
            .checked_mul((n - i) as u128)
            .ok_or_else(|| Error::Domain(format!("binomial({n}, {r}) overflows u128")))?
            / (i as u128 + 1);
    }
    Ok(acc)
}

/// Exact `binom(n, r)_{−1}`: `binom(⌊n/2⌋, ⌊r/2⌋)` unless `n` is even and
/// `r` odd, where it vanishes.
pub fn q_binom_minus1(n: usize, r: usize) -> Result<u128> {
    if r > n {
        return Err(Error::Argument(format!(
            "q_binom_minus1 needs r <= n, got r={r} > n={n}"
        )));
    }
    if n.is_multiple_of(2) && r % 2 == 1 {
        return Ok(0);
    }
    binomial_u128(n / 2, r / 2)
}

/// Triangular table of `binom(n, r)_q` for `0 ≤ r ≤ n ≤ n_max`.
#[derive(Debug, Clone, PartialEq)]
pub struct QBinomTable<T> {
    q: QParam<T>,
    rows: Vec<Vec<T>>,
}

impl<T: Scalar> QBinomTable<T> {
    /// Fills the table row by row with the q-Pascal recurrence, `O(n_max²)`.
    pub fn build(n_max: usize, q: QParam<T>) -> Self {
        let qpow: Vec<T> = (0..=n_max).map(|s| powu(q.value(), s)).collect();
        let mut rows: Vec<Vec<T>> = Vec::with_capacity(n_max + 1);
        rows.push(vec![T::one()]);
        for n in 1..=n_max {
            let prev = &rows[n - 1];
            let mut row = Vec::with_capacity(n + 1);
            row.push(T::one());
            for r in 1..n {
                row.push(prev[r - 1].clone() + qpow[r].clone() * prev[r].clone());
            }
            row.push(prev[n - 1].clone());
            rows.push(row);
        }
        QBinomTable { q, rows }
    }

    pub fn n_max(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn q(&self) -> &QParam<T> {
        &self.q
    }

    pub fn row(&self, n: usize) -> Option<&[T]> {
        self.rows.get(n).map(Vec::as_slice)
    }

    /// `binom(n, r)_q`; zero for `r > n`.
    ///
    /// # Panics
    /// If `n > n_max`.
    pub fn value(&self, n: usize, r: usize) -> T {
        assert!(n <= self.n_max(), "row {n} outside table of size {}", self.n_max());
        self.rows[n].get(r).cloned().unwrap_or_else(T::zero)
    }
}

/// Convenience wrapper matching [`QBinomTable::build`].
pub fn build_table<T: Scalar>(n_max: usize, q: QParam<T>) -> QBinomTable<T> {
    QBinomTable::build(n_max, q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;
    use num_rational::Rational64;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    // Coefficient-list evaluation; the polynomials below are read off the
    // box-partition listings by hand.
    fn poly(coeffs: &[i64], q: Complex64) -> Complex64 {
        coeffs.iter().rev().fold(c(0.0, 0.0), |acc, &a| acc * q + a as f64)
    }

    #[test]
    fn pascal_small_cases() {
        let q = c(0.3, -0.7);
        let qp = QParam::new(q).unwrap();
        assert!((q_binom_pascal(2, 1, &qp) - poly(&[1, 1], q)).norm() < 1e-15);
        assert!((q_binom_pascal(4, 2, &qp) - poly(&[1, 1, 2, 1, 1], q)).norm() < 1e-14);
        assert_eq!(q_binom_pascal(4, 2, &QParam::new(1i64).unwrap()), 6);
        assert_eq!(q_binom_pascal(3, 5, &qp), c(0.0, 0.0));
        assert_eq!(q_binom_pascal(0, 0, &qp), c(1.0, 0.0));
    }

    #[test]
    fn partition_oracle_cases() {
        let q = c(-0.4, 1.1);
        let qp = QParam::new(q).unwrap();
        let v = q_binom_partition_oracle(3, 2, &qp).unwrap();
        assert!((v - poly(&[1, 1, 1], q)).norm() < 1e-14);
        for n in 0..8 {
            assert_eq!(q_binom_partition_oracle(n, 0, &qp).unwrap(), c(1.0, 0.0));
        }
        // six partitions in the 2x2 box, sizes 0,1,2,2,3,4
        assert_eq!(q_binom_partition_oracle(4, 2, &QParam::new(-1i64).unwrap()).unwrap(), 2);
    }

    #[test]
    fn partition_oracle_visits_binomial_many_partitions() {
        let mut count = 0;
        for_each_box_partition(8, 8, |_| count += 1);
        assert_eq!(count, 12870);
    }

    #[test]
    fn partition_oracle_respects_cap() {
        let qp = QParam::<i64>::one();
        assert!(matches!(
            q_binom_partition_oracle(17, 3, &qp),
            Err(Error::SizeLimit { size: 17, cap: 16, .. })
        ));
        assert!(q_binom_partition_oracle(16, 8, &qp).is_ok());
        assert!(matches!(q_binom_partition_oracle(3, 4, &qp), Err(Error::Argument(_))));
    }

    #[test]
    fn product_formula_exact_value() {
        // (1-8)(1-4) / ((1-2)(1-4)) = 21 / 3 = 1 + 2 + 4
        let q = QParam::new(Rational64::from_integer(2)).unwrap();
        assert_eq!(q_binom_product(3, 2, &q).unwrap(), Rational64::from_integer(7));
        assert_eq!(q_binom_pascal(3, 2, &QParam::new(2i64).unwrap()), 7);
        for n in 0..5 {
            assert_eq!(q_binom_product(n, 0, &q).unwrap(), Rational64::from_integer(1));
        }
    }

    #[test]
    fn product_formula_rejects_vanishing_denominator() {
        let minus1 = QParam::new(-1.0f64).unwrap();
        let err = q_binom_product(2, 1, &minus1).unwrap_err();
        assert!(matches!(err, Error::Domain(ref m) if m.contains("q_binom_pascal")));
        let exact = QParam::new(Rational64::from_integer(-1)).unwrap();
        assert!(matches!(q_binom_product(2, 1, &exact), Err(Error::Domain(_))));
        assert_eq!(q_binom_product(1, 1, &exact).unwrap(), Rational64::from_integer(1));
        let w = QParam::new(Complex64::root_of_unity(3, 1).unwrap()).unwrap();
        assert!(q_binom_product(2, 1, &w).is_ok());
        assert!(q_binom_product(3, 1, &w).is_err());
    }

    #[test]
    fn minus_one_closed_form() {
        assert_eq!(q_binom_minus1(4, 2).unwrap(), 2);
        assert_eq!(q_binom_minus1(4, 1).unwrap(), 0);
        assert_eq!(q_binom_minus1(5, 3).unwrap(), 2);
        assert_eq!(q_binom_pascal(5, 3, &QParam::new(-1i64).unwrap()), 2);
        assert!(q_binom_minus1(2, 3).is_err());
    }

    #[test]
    fn zero_q_rejected() {
        assert!(QParam::new(0.0f64).is_err());
        assert!(QParam::new(c(0.0, 0.0)).is_err());
    }

    #[test]
    fn tables() {
        let q = c(0.2, 0.9);
        let t = build_table(2, QParam::new(q).unwrap());
        assert_eq!(t.row(2).unwrap(), &[c(1.0, 0.0), c(1.0, 0.0) + q, c(1.0, 0.0)]);
        let t0 = build_table(0, QParam::new(q).unwrap());
        assert_eq!(t0.n_max(), 0);
        assert_eq!(t0.row(0).unwrap(), &[c(1.0, 0.0)]);
        let t1 = build_table(4, QParam::<i64>::one());
        assert_eq!(t1.row(4).unwrap(), &[1, 4, 6, 4, 1]);
        assert_eq!(t1.value(2, 3), 0);
    }

    #[test]
    fn table_matches_rolling_recurrence() {
        let qp = QParam::new(c(0.8, -0.6)).unwrap();
        let t = build_table(12, qp.clone());
        for n in 0..=12 {
            for r in 0..=n {
                assert!((t.value(n, r) - q_binom_pascal(n, r, &qp)).norm() < 1e-12);
            }
        }
    }
}
