//! Twisting matrices and the twisted multinomial coefficient.
//!
//! A [`WeightMatrix`] `Ω = (ω_ij)` assigns a weight to every ordered pair of
//! generators. The twisted multinomial of a composition `(k_1, …, k_m)` sums,
//! over every word with `k_j` copies of letter `j`, the product of
//! `ω_{σ(s),σ(r)}` across its inversions `r < s, σ(r) > σ(s)`.
//!
//! When `Ω` is predecessor-uniform (`ω_ij = q_j` for all `i < j`) the sum
//! factorizes into Gaussian binomials `∏_j binom(ℓ_j, k_j)_{q_j}`; see
//! [`twisted_multinomial_factorized`]. [`find_pu_ordering`] decides whether
//! some relabeling of the generators is predecessor-uniform.

use std::collections::HashMap;

use itertools::Itertools;

use crate::error::{check_cap, Error, Result};
use crate::gaussian::{q_binom_pascal, QParam};
use crate::scalar::{abs_close, powu, FieldScalar, Scalar};

/// Tolerance on the structural constraints of a weight matrix and on
/// uniformity comparisons.
pub const WEIGHT_TOL: f64 = 1e-12;

/// Default cap on the number of shuffles enumerated by
/// [`twisted_multinomial_bruteforce`].
pub const SHUFFLE_CAP: u128 = 1_000_000;

/// Largest `m` accepted by [`exhaustive_pu_search`].
pub const EXHAUSTIVE_MAX_M: usize = 8;

/// The `m × m` twisting matrix, row-major.
///
/// Invariants: unit diagonal, `ω_ji · ω_ij = 1`, nonzero entries and, when an
/// order `a` is set, `ω_ij^a = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightMatrix<T> {
    m: usize,
    omega: Vec<T>,
    order: Option<usize>,
}

impl<T: Scalar> WeightMatrix<T> {
    /// Validates a full row-major matrix.
    pub fn new(m: usize, omega: Vec<T>, order: Option<usize>) -> Result<Self> {
        if omega.len() != m * m {
            return Err(Error::Argument(format!(
                "weight matrix needs {} entries for m = {m}, got {}",
                m * m,
                omega.len()
            )));
        }
        if let Some(a) = order {
            if a < 2 {
                return Err(Error::Argument(format!("generator order must be >= 2, got {a}")));
            }
        }
        let one = T::one();
        for i in 0..m {
            for j in 0..m {
                let w = &omega[i * m + j];
                if w.is_zero() {
                    return Err(Error::Argument(format!("omega({i},{j}) is zero")));
                }
                if i == j && !abs_close(w, &one, WEIGHT_TOL) {
                    return Err(Error::Argument(format!("omega({i},{i}) = {w:?} is not 1")));
                }
                if i < j {
                    let prod = w.clone() * omega[j * m + i].clone();
                    if !abs_close(&prod, &one, WEIGHT_TOL) {
                        return Err(Error::Argument(format!(
                            "omega({j},{i}) is not the inverse of omega({i},{j})"
                        )));
                    }
                }
                if let Some(a) = order {
                    if !abs_close(&powu(w, a), &one, WEIGHT_TOL) {
                        return Err(Error::Argument(format!(
                            "omega({i},{j}) = {w:?} is not an {a}-th root of unity"
                        )));
                    }
                }
            }
        }
        Ok(WeightMatrix { m, omega, order })
    }

    /// Builds `ω_ij = exp(2πi·t/a)` from `(i, j, t)` triples with `i < j`
    /// (0-based); unlisted pairs commute.
    pub fn from_phase_exponents(m: usize, a: usize, triples: &[(usize, usize, usize)]) -> Result<Self> {
        let mut exps = vec![0usize; m * m];
        for &(i, j, t) in triples {
            if i >= j || j >= m {
                return Err(Error::Argument(format!(
                    "phase entry ({i},{j}) must satisfy i < j < m = {m}"
                )));
            }
            exps[i * m + j] = t % a;
            exps[j * m + i] = (a - t % a) % a;
        }
        Self::from_exponent_matrix(m, a, &exps)
    }

    /// Builds from a full matrix of phase exponents modulo `a`.
    pub fn from_exponent_matrix(m: usize, a: usize, exps: &[usize]) -> Result<Self> {
        if exps.len() != m * m {
            return Err(Error::Argument("exponent matrix has wrong size".into()));
        }
        let omega = exps
            .iter()
            .map(|&t| {
                T::root_of_unity(a, t).ok_or_else(|| {
                    Error::Argument(format!(
                        "phase exp(2πi·{t}/{a}) is not representable in this scalar type"
                    ))
                })
            })
            .collect::<Result<Vec<T>>>()?;
        Self::new(m, omega, Some(a))
    }

    /// All weights equal to one.
    pub fn commuting(m: usize, order: Option<usize>) -> Self {
        WeightMatrix {
            m,
            omega: vec![T::one(); m * m],
            order,
        }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn order(&self) -> Option<usize> {
        self.order
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.omega[i * self.m + j]
    }

    pub fn entries(&self) -> &[T] {
        &self.omega
    }

    /// The matrix seen under a relabeling: entry `(p, s)` of the result is
    /// `ω(perm[p], perm[s])`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        check_permutation(perm, self.m)?;
        Ok(self.restricted_unchecked(perm))
    }

    /// Principal submatrix on `indices`, in the order given.
    pub fn restricted(&self, indices: &[usize]) -> Result<Self> {
        if let Some(&bad) = indices.iter().find(|&&i| i >= self.m) {
            return Err(Error::Argument(format!("index {bad} out of range for m = {}", self.m)));
        }
        if indices.iter().duplicates().next().is_some() {
            return Err(Error::Argument("restriction indices must be distinct".into()));
        }
        Ok(self.restricted_unchecked(indices))
    }

    fn restricted_unchecked(&self, indices: &[usize]) -> Self {
        let n = indices.len();
        let mut omega = Vec::with_capacity(n * n);
        for &i in indices {
            for &j in indices {
                omega.push(self.get(i, j).clone());
            }
        }
        WeightMatrix {
            m: n,
            omega,
            order: self.order,
        }
    }
}

impl<T: FieldScalar> WeightMatrix<T> {
    /// Builds a matrix from its strict upper triangle, filling the lower
    /// triangle with inverses.
    pub fn from_upper(m: usize, upper: impl Fn(usize, usize) -> T, order: Option<usize>) -> Result<Self> {
        let mut omega = vec![T::one(); m * m];
        for i in 0..m {
            for j in (i + 1)..m {
                let w = upper(i, j);
                if w.is_zero() {
                    return Err(Error::Argument(format!("omega({i},{j}) is zero")));
                }
                omega[j * m + i] = T::one() / w.clone();
                omega[i * m + j] = w;
            }
        }
        Self::new(m, omega, order)
    }

    /// The predecessor-uniform matrix `ω_ij = q_j` (`i < j`) induced by
    /// `qs`; `qs[0]` is ignored.
    pub fn predecessor_uniform(qs: &[T], order: Option<usize>) -> Result<Self> {
        Self::from_upper(qs.len(), |_, j| qs[j].clone(), order)
    }
}

pub(crate) fn check_permutation(perm: &[usize], m: usize) -> Result<()> {
    let mut seen = vec![false; m];
    if perm.len() != m {
        return Err(Error::Argument(format!(
            "permutation has length {} but m = {m}",
            perm.len()
        )));
    }
    for &p in perm {
        if p >= m || seen[p] {
            return Err(Error::Argument(format!("{perm:?} is not a permutation of 0..{m}")));
        }
        seen[p] = true;
    }
    Ok(())
}

/// A tuple `(k_1, …, k_m)` of non-negative parts with prefix sums
/// `ℓ_0 = 0, ℓ_j = k_1 + … + k_j`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Composition {
    parts: Vec<usize>,
    prefix: Vec<usize>,
}

impl Composition {
    pub fn new(parts: Vec<usize>) -> Self {
        let mut prefix = Vec::with_capacity(parts.len() + 1);
        prefix.push(0);
        let mut acc = 0;
        for &p in &parts {
            acc += p;
            prefix.push(acc);
        }
        Composition { parts, prefix }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn m(&self) -> usize {
        self.parts.len()
    }

    pub fn k(&self) -> usize {
        *self.prefix.last().unwrap()
    }

    /// `ℓ_j` for `0 ≤ j ≤ m`.
    pub fn prefix(&self, j: usize) -> usize {
        self.prefix[j]
    }

    /// Number of shuffles `k! / ∏ k_j!`, saturating at `u128::MAX`.
    pub fn shuffle_count(&self) -> u128 {
        // ∏ binom(ℓ_j, k_j)
        let mut acc: u128 = 1;
        for j in 0..self.m() {
            match crate::gaussian::binomial_u128(self.prefix[j + 1], self.parts[j])
                .ok()
                .and_then(|b| acc.checked_mul(b))
            {
                Some(v) => acc = v,
                None => return u128::MAX,
            }
        }
        acc
    }

    /// Every composition of `k` into `m` parts, in lexicographic order.
    pub fn all(k: usize, m: usize) -> Vec<Composition> {
        fn rec(left: usize, slots: usize, cur: &mut Vec<usize>, out: &mut Vec<Composition>) {
            if slots == 1 {
                cur.push(left);
                out.push(Composition::new(cur.clone()));
                cur.pop();
                return;
            }
            for first in 0..=left {
                cur.push(first);
                rec(left - first, slots - 1, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        if m == 0 {
            if k == 0 {
                out.push(Composition::new(Vec::new()));
            }
            return out;
        }
        rec(k, m, &mut Vec::with_capacity(m), &mut out);
        out
    }
}

/// A relabeling `perm` (position → generator) under which the matrix is
/// predecessor-uniform with parameters `qs` (`qs[0] = 1`).
#[derive(Debug, Clone, PartialEq)]
pub struct PuOrdering<T> {
    pub perm: Vec<usize>,
    pub qs: Vec<T>,
}

impl<T: Scalar> PuOrdering<T> {
    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(p, &g)| p == g)
    }

    pub fn q_params(&self) -> Result<Vec<QParam<T>>> {
        self.qs.iter().cloned().map(QParam::new).collect()
    }
}

fn check_dims<T>(comp: &Composition, w: &WeightMatrix<T>) -> Result<()> {
    if comp.m() != w.m {
        return Err(Error::Argument(format!(
            "composition has {} parts but the weight matrix is {}x{}",
            comp.m(),
            w.m,
            w.m
        )));
    }
    Ok(())
}

/// Rearranges `word` into the next multiset permutation in lexicographic
/// order; false once the last one has been passed.
fn next_multiset_permutation(word: &mut [usize]) -> bool {
    let n = word.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && word[i - 1] >= word[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while word[j] <= word[i - 1] {
        j -= 1;
    }
    word.swap(i - 1, j);
    word[i..].reverse();
    true
}

/// Twisted multinomial by enumerating every shuffle, default cap.
pub fn twisted_multinomial_bruteforce<T: Scalar>(comp: &Composition, w: &WeightMatrix<T>) -> Result<T> {
    twisted_multinomial_bruteforce_capped(comp, w, SHUFFLE_CAP)
}

pub fn twisted_multinomial_bruteforce_capped<T: Scalar>(
    comp: &Composition,
    w: &WeightMatrix<T>,
    cap: u128,
) -> Result<T> {
    check_dims(comp, w)?;
    check_cap("shuffle enumeration", comp.shuffle_count(), cap)?;
    let mut word: Vec<usize> = comp
        .parts()
        .iter()
        .enumerate()
        .flat_map(|(letter, &count)| std::iter::repeat_n(letter, count))
        .collect();
    let mut total = T::zero();
    loop {
        let mut weight = T::one();
        for r in 0..word.len() {
            for s in (r + 1)..word.len() {
                if word[r] > word[s] {
                    weight = weight * w.get(word[s], word[r]).clone();
                }
            }
        }
        total = total + weight;
        if !next_multiset_permutation(&mut word) {
            break;
        }
    }
    Ok(total)
}

/// Twisted multinomial by the first-letter recurrence
/// `T(k) = Σ_{i: k_i ≥ 1} T(k − e_i) · ∏_{j<i} ω_{j,i}^{k_j}`, memoized.
pub fn twisted_multinomial_recurrence<T: Scalar>(comp: &Composition, w: &WeightMatrix<T>) -> Result<T> {
    check_dims(comp, w)?;
    let mut memo: HashMap<Vec<usize>, T> = HashMap::new();
    Ok(recurrence_rec(comp.parts().to_vec(), w, &mut memo))
}

fn recurrence_rec<T: Scalar>(parts: Vec<usize>, w: &WeightMatrix<T>, memo: &mut HashMap<Vec<usize>, T>) -> T {
    if parts.iter().all(|&p| p == 0) {
        return T::one();
    }
    if let Some(v) = memo.get(&parts) {
        return v.clone();
    }
    let mut total = T::zero();
    for i in 0..parts.len() {
        if parts[i] == 0 {
            continue;
        }
        let mut phase = T::one();
        for j in 0..i {
            phase = phase * powu(w.get(j, i), parts[j]);
        }
        let mut sub = parts.clone();
        sub[i] -= 1;
        total = total + recurrence_rec(sub, w, memo) * phase;
    }
    memo.insert(parts, total.clone());
    total
}

/// The common value of `values`, if they all agree within [`WEIGHT_TOL`].
fn uniform_value<'a, T: Scalar>(mut values: impl Iterator<Item = &'a T>) -> Option<Option<T>> {
    let first = match values.next() {
        None => return Some(None),
        Some(f) => f,
    };
    for v in values {
        if !abs_close(v, first, WEIGHT_TOL) {
            return None;
        }
    }
    Some(Some(first.clone()))
}

/// Parameters `(q_1 = 1, q_2, …, q_m)` if the matrix is predecessor-uniform
/// under the relabeling `perm`.
pub fn pu_parameters_under<T: Scalar>(w: &WeightMatrix<T>, perm: &[usize]) -> Result<Option<Vec<T>>> {
    check_permutation(perm, w.m)?;
    let mut qs = Vec::with_capacity(w.m);
    for s in 0..perm.len() {
        let col = perm[s];
        match uniform_value(perm[..s].iter().map(|&i| w.get(i, col))) {
            None => return Ok(None),
            Some(q) => qs.push(q.unwrap_or_else(T::one)),
        }
    }
    Ok(Some(qs))
}

/// `(q_2, …, q_m)` if the matrix is predecessor-uniform in its given order.
pub fn check_predecessor_uniform<T: Scalar>(w: &WeightMatrix<T>) -> Option<Vec<T>> {
    let identity: Vec<usize> = (0..w.m).collect();
    pu_parameters_under(w, &identity)
        .expect("identity is a permutation")
        .map(|mut qs| {
            if !qs.is_empty() {
                qs.remove(0);
            }
            qs
        })
}

/// Greedy peeling: repeatedly place last a remaining generator whose weights
/// against the rest of the remaining set are constant. `O(m³)` comparisons.
///
/// Ties go to the largest index, so the identity is returned whenever the
/// given order is already predecessor-uniform.
pub fn find_pu_ordering<T: Scalar>(w: &WeightMatrix<T>) -> Option<PuOrdering<T>> {
    let mut remaining: Vec<usize> = (0..w.m).collect();
    let mut rev_perm = Vec::with_capacity(w.m);
    let mut rev_qs = Vec::with_capacity(w.m);
    while !remaining.is_empty() {
        let (slot, q) = remaining.iter().enumerate().rev().find_map(|(slot, &j)| {
            let others = remaining.iter().filter(|&&i| i != j).map(|&i| w.get(i, j));
            uniform_value(others).map(|q| (slot, q.unwrap_or_else(T::one)))
        })?;
        rev_perm.push(remaining.remove(slot));
        rev_qs.push(q);
    }
    rev_perm.reverse();
    rev_qs.reverse();
    Some(PuOrdering {
        perm: rev_perm,
        qs: rev_qs,
    })
}

/// First relabeling in lexicographic order that is predecessor-uniform,
/// trying all `m!` of them.
pub fn exhaustive_pu_search<T: Scalar>(w: &WeightMatrix<T>) -> Result<Option<PuOrdering<T>>> {
    if w.m > EXHAUSTIVE_MAX_M {
        return Err(Error::SizeLimit {
            what: "exhaustive ordering search m",
            size: w.m as u128,
            cap: EXHAUSTIVE_MAX_M as u128,
        });
    }
    for perm in (0..w.m).permutations(w.m) {
        if let Some(qs) = pu_parameters_under(w, &perm)? {
            return Ok(Some(PuOrdering { perm, qs }));
        }
    }
    Ok(None)
}

/// `∏_j binom(ℓ_j, k_j)_{q_j}` via the q-Pascal recurrence.
pub fn twisted_multinomial_factorized<T: Scalar>(comp: &Composition, qs: &[QParam<T>]) -> Result<T> {
    if qs.len() != comp.m() {
        return Err(Error::Argument(format!(
            "{} q-parameters for a composition with {} parts",
            qs.len(),
            comp.m()
        )));
    }
    Ok(comp
        .parts()
        .iter()
        .zip(qs)
        .enumerate()
        .fold(T::one(), |acc, (j, (&kj, q))| {
            acc * q_binom_pascal(comp.prefix(j + 1), kj, q)
        }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn signs(m: usize, upper: &[(usize, usize, i64)]) -> WeightMatrix<i64> {
        let mut om = vec![1i64; m * m];
        for &(i, j, s) in upper {
            om[i * m + j] = s;
            om[j * m + i] = s;
        }
        WeightMatrix::new(m, om, Some(2)).unwrap()
    }

    fn counterexample() -> WeightMatrix<i64> {
        signs(
            4,
            &[(0, 1, -1), (0, 2, 1), (0, 3, -1), (1, 2, -1), (1, 3, 1), (2, 3, -1)],
        )
    }

    fn all_minus(m: usize) -> WeightMatrix<i64> {
        let mut om = vec![-1i64; m * m];
        for i in 0..m {
            om[i * m + i] = 1;
        }
        WeightMatrix::new(m, om, Some(2)).unwrap()
    }

    #[test]
    fn weight_matrix_validation() {
        assert!(WeightMatrix::new(2, vec![1i64, -1, -1, 1], Some(2)).is_ok());
        assert!(WeightMatrix::new(2, vec![2i64, -1, -1, 1], None).is_err());
        assert!(WeightMatrix::new(2, vec![1i64, -1, 1, 1], None).is_err());
        assert!(WeightMatrix::new(2, vec![1i64, 0, 0, 1], None).is_err());
        assert!(WeightMatrix::new(3, vec![1i64; 4], None).is_err());
        let w = c(0.0, 2.0);
        assert!(WeightMatrix::from_upper(2, |_, _| w, None).is_ok());
        assert!(WeightMatrix::from_upper(2, |_, _| w, Some(4)).is_err());
        assert!(WeightMatrix::<Complex64>::from_phase_exponents(3, 3, &[(0, 2, 1)]).is_ok());
        assert!(WeightMatrix::<i64>::from_phase_exponents(3, 3, &[(0, 2, 1)]).is_err());
        assert!(WeightMatrix::<i64>::from_phase_exponents(3, 2, &[(2, 0, 1)]).is_err());
    }

    #[test]
    fn multiset_permutations_are_lexicographic() {
        let mut word = vec![0, 0, 1, 2];
        let mut seen = vec![word.clone()];
        while next_multiset_permutation(&mut word) {
            seen.push(word.clone());
        }
        assert_eq!(seen.len(), 12);
        assert!(seen.windows(2).all(|p| p[0] < p[1]));
        assert_eq!(Composition::new(vec![2, 1, 1]).shuffle_count(), 12);
    }

    #[test]
    fn bruteforce_examples() {
        let w = c(0.3, 0.8);
        let om = WeightMatrix::from_upper(2, |_, _| w, None).unwrap();
        let v = twisted_multinomial_bruteforce(&Composition::new(vec![1, 1]), &om).unwrap();
        assert!((v - (c(1.0, 0.0) + w)).norm() < 1e-15);

        let om3 = all_minus(3);
        assert_eq!(
            twisted_multinomial_bruteforce(&Composition::new(vec![4, 0, 0]), &om3).unwrap(),
            1
        );

        let q = c(-0.5, 0.2);
        let pu = WeightMatrix::predecessor_uniform(&[c(1.0, 0.0), q], None).unwrap();
        let v = twisted_multinomial_bruteforce(&Composition::new(vec![2, 1]), &pu).unwrap();
        assert!((v - (c(1.0, 0.0) + q + q * q)).norm() < 1e-15);
    }

    #[test]
    fn bruteforce_cap() {
        let om = all_minus(3);
        let comp = Composition::new(vec![4, 4, 4]);
        assert_eq!(comp.shuffle_count(), 34650);
        assert!(matches!(
            twisted_multinomial_bruteforce_capped(&comp, &om, 1000),
            Err(Error::SizeLimit { size: 34650, .. })
        ));
        assert!(twisted_multinomial_bruteforce(&Composition::new(vec![1, 1]), &om).is_err());
    }

    #[test]
    fn empty_composition_is_one() {
        let om = all_minus(3);
        let comp = Composition::new(vec![0, 0, 0]);
        assert_eq!(twisted_multinomial_bruteforce(&comp, &om).unwrap(), 1);
        assert_eq!(twisted_multinomial_recurrence(&comp, &om).unwrap(), 1);
    }

    #[test]
    fn recurrence_examples() {
        let w = c(0.1, -1.3);
        let om = WeightMatrix::from_upper(2, |_, _| w, None).unwrap();
        let v = twisted_multinomial_recurrence(&Composition::new(vec![1, 1]), &om).unwrap();
        assert!((v - (c(1.0, 0.0) + w)).norm() < 1e-15);
        assert_eq!(
            twisted_multinomial_recurrence(&Composition::new(vec![1, 0, 0]), &all_minus(3)).unwrap(),
            1
        );
        // 1 - 1 - 1 + 1 + 1 - 1 over the six words of 012
        assert_eq!(
            twisted_multinomial_bruteforce(&Composition::new(vec![1, 1, 1]), &all_minus(3)).unwrap(),
            0
        );
        assert_eq!(
            twisted_multinomial_recurrence(&Composition::new(vec![1, 1, 1]), &all_minus(3)).unwrap(),
            0
        );
    }

    #[test]
    fn check_pu_examples() {
        assert_eq!(check_predecessor_uniform(&all_minus(5)), Some(vec![-1; 4]));
        let w = c(0.6, 0.8);
        let om = WeightMatrix::from_upper(2, |_, _| w, None).unwrap();
        assert_eq!(check_predecessor_uniform(&om), Some(vec![w]));
        let om3 = signs(3, &[(0, 1, -1), (0, 2, 1), (1, 2, -1)]);
        assert_eq!(check_predecessor_uniform(&om3), None);
    }

    #[test]
    fn greedy_examples() {
        assert_eq!(find_pu_ordering(&counterexample()), None);
        assert_eq!(exhaustive_pu_search(&counterexample()).unwrap(), None);
        for m in 1..7 {
            let found = find_pu_ordering(&all_minus(m)).unwrap();
            assert!(found.is_identity());
            assert_eq!(found.qs[0], 1);
            assert!(found.qs[1..].iter().all(|&q| q == -1));
        }
        let trivial = find_pu_ordering(&WeightMatrix::<i64>::commuting(1, Some(2))).unwrap();
        assert_eq!(trivial.perm, vec![0]);
        assert_eq!(trivial.qs, vec![1]);
        assert_eq!(
            check_predecessor_uniform(&WeightMatrix::<i64>::commuting(1, None)),
            Some(vec![])
        );
    }

    #[test]
    fn greedy_reorders_when_needed() {
        // column 2 is non-uniform in the given order; generator 1 can go first
        let om = signs(3, &[(0, 1, -1), (0, 2, 1), (1, 2, -1)]);
        let found = find_pu_ordering(&om).unwrap();
        let qs = pu_parameters_under(&om, &found.perm).unwrap().unwrap();
        assert_eq!(qs, found.qs);
        assert!(!found.is_identity());
    }

    #[test]
    fn exhaustive_limits_and_identity() {
        let big = WeightMatrix::<i64>::commuting(9, None);
        assert!(matches!(exhaustive_pu_search(&big), Err(Error::SizeLimit { .. })));
        let found = exhaustive_pu_search(&all_minus(4)).unwrap().unwrap();
        assert_eq!(found.perm, vec![0, 1, 2, 3]);
    }

    #[test]
    fn factorized_examples() {
        let q = c(0.4, 0.4);
        let q3 = c(-1.2, 0.1);
        let qs = vec![QParam::one(), QParam::new(q).unwrap()];
        let v = twisted_multinomial_factorized(&Composition::new(vec![1, 1]), &qs).unwrap();
        assert!((v - (c(1.0, 0.0) + q)).norm() < 1e-15);

        let qs3 = vec![QParam::one(), QParam::new(q).unwrap(), QParam::new(q3).unwrap()];
        let v = twisted_multinomial_factorized(&Composition::new(vec![1, 1, 1]), &qs3).unwrap();
        let expected = (c(1.0, 0.0) + q) * (c(1.0, 0.0) + q3 + q3 * q3);
        assert!((v - expected).norm() < 1e-14);
        let om = WeightMatrix::predecessor_uniform(&[c(1.0, 0.0), q, q3], None).unwrap();
        let brute = twisted_multinomial_bruteforce(&Composition::new(vec![1, 1, 1]), &om).unwrap();
        assert!((brute - expected).norm() < 1e-14);

        let v = twisted_multinomial_factorized(&Composition::new(vec![5, 0, 0]), &qs3).unwrap();
        assert_eq!(v, c(1.0, 0.0));
        assert!(twisted_multinomial_factorized(&Composition::new(vec![1, 1]), &qs3).is_err());
    }

    #[test]
    fn compositions_enumerate() {
        let all = Composition::all(3, 3);
        assert_eq!(all.len(), 10);
        assert!(all.iter().all(|c| c.k() == 3));
        assert_eq!(Composition::all(0, 0).len(), 1);
        assert_eq!(Composition::all(2, 0).len(), 0);
        let comp = Composition::new(vec![2, 0, 3]);
        assert_eq!(
            (comp.prefix(0), comp.prefix(1), comp.prefix(2), comp.prefix(3)),
            (0, 2, 2, 5)
        );
    }
}
