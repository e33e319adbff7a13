//! Exact matrix-product representation of pilot-state amplitudes.
//!
//! For a predecessor-uniform twisting with parameters `q_j` and generator
//! order `a`, the amplitude of `z_1^{r_1} ⋯ z_m^{r_m}` in `h^k` is
//!
//! ```text
//! α_r = v_0 · A[1]_{r_1} ⋯ A[m]_{r_m} · e_kᵀ
//! A[j]_{r}(ℓ', ℓ) = c_j^{ℓ−ℓ'} · binom(ℓ, ℓ−ℓ')_{q_j}   if ℓ ≥ ℓ' and ℓ−ℓ' ≡ r (mod a)
//! ```
//!
//! with `v_0 = e_0`. Bond indices count how many letters have been placed
//! so far. A model built at degree `d` serves every monomial `x^k`, `k ≤ d`
//! (right boundary `e_k`) and every polynomial of degree `≤ d` (right
//! boundary equal to its coefficient vector).

use std::collections::BTreeMap;

use crate::error::{check_cap, Error, Result};
use crate::gaussian::{QBinomTable, QParam};
use crate::scalar::{powu, Scalar};

/// Default cap on `a^m` for [`all_amplitudes`].
pub const ALL_AMPLITUDES_CAP: u128 = 1_000_000;

/// Entries below this modulus are dropped from pruned amplitude tables.
pub const PRUNE_THRESHOLD: f64 = 1e-14;

/// Right boundary vector of a sweep.
#[derive(Debug, Clone, PartialEq)]
pub enum Boundary<T> {
    /// `e_k`: the amplitude of `h^k`.
    Monomial(usize),
    /// `(a_0, …, a_d)`: the amplitude of `Σ_j a_j h^j`.
    Polynomial(Vec<T>),
}

/// Site tensors of the MPS. `sites[j][r]` is the `(d+1) × (d+1)` matrix
/// `A[j]_r`, row-major with row `ℓ_{j−1}` and column `ℓ_j`.
#[derive(Debug, Clone, PartialEq)]
pub struct MpsModel<T> {
    a: usize,
    degree: usize,
    coeffs: Vec<T>,
    qs: Vec<QParam<T>>,
    sites: Vec<Vec<Vec<T>>>,
}

/// Builds the site matrices for `h = Σ_j c_j z_j` at bond dimension `d + 1`.
///
/// Gaussian binomials come from one q-Pascal table per distinct `q_j`, so
/// the build costs `O(m·d²)` plus `O(d²)` per distinct parameter.
pub fn build_model<T: Scalar>(coeffs: &[T], qs: &[QParam<T>], a: usize, degree: usize) -> Result<MpsModel<T>> {
    if a < 2 {
        return Err(Error::Argument(format!("generator order must be >= 2, got {a}")));
    }
    if coeffs.len() != qs.len() {
        return Err(Error::Argument(format!(
            "{} coefficients but {} q-parameters",
            coeffs.len(),
            qs.len()
        )));
    }
    if let Some(j) = coeffs.iter().position(|c| !c.modulus().is_finite()) {
        return Err(Error::Argument(format!("coefficient c_{j} is not finite")));
    }
    let dim = degree + 1;
    let mut tables: Vec<QBinomTable<T>> = Vec::new();
    let mut sites = Vec::with_capacity(coeffs.len());
    for (c, q) in coeffs.iter().zip(qs) {
        let table = match tables.iter().position(|t| t.q() == q) {
            Some(i) => &tables[i],
            None => {
                tables.push(QBinomTable::build(degree, q.clone()));
                tables.last().unwrap()
            }
        };
        let cpow: Vec<T> = (0..dim).map(|e| powu(c, e)).collect();
        let mut site = vec![vec![T::zero(); dim * dim]; a];
        for lo in 0..dim {
            for hi in lo..dim {
                let delta = hi - lo;
                site[delta % a][lo * dim + hi] = cpow[delta].clone() * table.value(hi, delta);
            }
        }
        sites.push(site);
    }
    Ok(MpsModel {
        a,
        degree,
        coeffs: coeffs.to_vec(),
        qs: qs.to_vec(),
        sites,
    })
}

impl<T: Scalar> MpsModel<T> {
    pub fn m(&self) -> usize {
        self.sites.len()
    }

    /// Generator order `a`, the physical dimension.
    pub fn order(&self) -> usize {
        self.a
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn bond_dim(&self) -> usize {
        self.degree + 1
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn qs(&self) -> &[QParam<T>] {
        &self.qs
    }

    /// The matrix `A[j]_r`, row-major `(d+1) × (d+1)`.
    pub fn site_matrix(&self, j: usize, r: usize) -> &[T] {
        &self.sites[j][r]
    }

    /// Entry `(ℓ', ℓ)` of `A[j]_r`.
    pub fn entry(&self, j: usize, r: usize, lo: usize, hi: usize) -> &T {
        &self.sites[j][r][lo * self.bond_dim() + hi]
    }

    /// Verifies the triangularity and residue selection rule of every site
    /// matrix.
    pub fn check_structure(&self) -> Result<()> {
        let dim = self.bond_dim();
        for (j, site) in self.sites.iter().enumerate() {
            if site.len() != self.a {
                return Err(Error::Precondition(format!(
                    "site {j} has {} physical slices",
                    site.len()
                )));
            }
            for (r, mat) in site.iter().enumerate() {
                if mat.len() != dim * dim {
                    return Err(Error::Precondition(format!("site {j} slice {r} is not {dim}x{dim}")));
                }
                for lo in 0..dim {
                    for hi in 0..dim {
                        let allowed = hi >= lo && (hi - lo) % self.a == r;
                        if !allowed && !mat[lo * dim + hi].is_zero() {
                            return Err(Error::Precondition(format!(
                                "site {j} slice {r} has a nonzero entry at ({lo},{hi})"
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    fn check_residues(&self, r: &[usize]) -> Result<()> {
        if r.len() != self.m() {
            return Err(Error::Argument(format!(
                "residue tuple has length {} but the model has {} sites",
                r.len(),
                self.m()
            )));
        }
        if let Some(&bad) = r.iter().find(|&&x| x >= self.a) {
            return Err(Error::Argument(format!("residue {bad} is outside 0..{}", self.a)));
        }
        Ok(())
    }

    /// The row vector `v_0 · A[1]_{r_1} ⋯ A[m]_{r_m}`.
    ///
    /// Only the entries permitted by the selection rule are visited, so a
    /// sweep costs about `m·d²/(2a)` multiply-adds.
    pub fn left_sweep(&self, r: &[usize]) -> Result<Vec<T>> {
        self.check_residues(r)?;
        let dim = self.bond_dim();
        let mut v = vec![T::zero(); dim];
        v[0] = T::one();
        let mut next = vec![T::zero(); dim];
        for (site, &rj) in self.sites.iter().zip(r) {
            let mat = &site[rj];
            next.iter_mut().for_each(|x| *x = T::zero());
            for (lo, vl) in v.iter().enumerate() {
                if vl.is_zero() {
                    continue;
                }
                let row = &mat[lo * dim..(lo + 1) * dim];
                for hi in (lo + rj..dim).step_by(self.a) {
                    next[hi] = next[hi].clone() + vl.clone() * row[hi].clone();
                }
            }
            std::mem::swap(&mut v, &mut next);
        }
        Ok(v)
    }

    fn apply_boundary(&self, v: &[T], boundary: &Boundary<T>) -> Result<T> {
        match boundary {
            Boundary::Monomial(k) => v
                .get(*k)
                .cloned()
                .ok_or_else(|| Error::Argument(format!("monomial degree {k} exceeds model degree {}", self.degree))),
            Boundary::Polynomial(poly) => {
                if poly.len() != self.bond_dim() {
                    return Err(Error::Argument(format!(
                        "polynomial has {} coefficients but the bond dimension is {}",
                        poly.len(),
                        self.bond_dim()
                    )));
                }
                Ok(v.iter()
                    .zip(poly)
                    .fold(T::zero(), |acc, (x, p)| acc + x.clone() * p.clone()))
            }
        }
    }

    pub fn contract_with(&self, boundary: &Boundary<T>, r: &[usize]) -> Result<T> {
        let v = self.left_sweep(r)?;
        self.apply_boundary(&v, boundary)
    }
}

/// Amplitude of `z^r` in `h^d` (right boundary `e_d`).
pub fn contract<T: Scalar>(model: &MpsModel<T>, r: &[usize]) -> Result<T> {
    model.contract_with(&Boundary::Monomial(model.degree), r)
}

/// Amplitude of `z^r` in `h^k` for `k ≤ d` (right boundary `e_k`).
pub fn contract_monomial<T: Scalar>(model: &MpsModel<T>, k: usize, r: &[usize]) -> Result<T> {
    model.contract_with(&Boundary::Monomial(k), r)
}

/// Amplitude of `z^r` in `P(h) = Σ_j poly[j] h^j`; `poly` must have `d + 1`
/// entries.
pub fn contract_polynomial<T: Scalar>(model: &MpsModel<T>, poly: &[T], r: &[usize]) -> Result<T> {
    if poly.len() != model.bond_dim() {
        return Err(Error::Argument(format!(
            "polynomial has {} coefficients but the model degree is {}",
            poly.len(),
            model.degree
        )));
    }
    model.contract_with(&Boundary::Polynomial(poly.to_vec()), r)
}

/// Sparse table of amplitudes keyed by residue tuple; absent keys are zero.
#[derive(Debug, Clone, PartialEq)]
pub struct AmplitudeTable<T> {
    order: usize,
    m: usize,
    entries: BTreeMap<Vec<usize>, T>,
}

impl<T: Scalar> AmplitudeTable<T> {
    pub fn new(order: usize, m: usize) -> Self {
        AmplitudeTable {
            order,
            m,
            entries: BTreeMap::new(),
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn get(&self, r: &[usize]) -> T {
        self.entries.get(r).cloned().unwrap_or_else(T::zero)
    }

    pub fn insert(&mut self, r: Vec<usize>, value: T) {
        self.entries.insert(r, value);
    }

    /// Adds `value` to the entry at `r`.
    pub fn accumulate(&mut self, r: Vec<usize>, value: T) {
        let slot = self.entries.entry(r).or_insert_with(T::zero);
        *slot = slot.clone() + value;
    }

    /// Drops entries with modulus at or below `threshold`.
    pub fn prune(&mut self, threshold: f64) {
        self.entries.retain(|_, v| v.modulus() > threshold);
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Entries in lexicographic order of the residue tuple.
    pub fn iter(&self) -> impl Iterator<Item = (&Vec<usize>, &T)> {
        self.entries.iter()
    }

    /// Largest [`crate::scalar::rel_error`] between the two tables over the
    /// union of their keys.
    pub fn max_rel_error(&self, other: &AmplitudeTable<T>) -> f64 {
        self.entries
            .keys()
            .chain(other.entries.keys())
            .map(|k| crate::scalar::rel_error(&self.get(k), &other.get(k)))
            .fold(0.0, f64::max)
    }
}

/// Every tuple in `{0, …, a−1}^m`, lexicographic.
pub fn residue_tuples(a: usize, m: usize) -> impl Iterator<Item = Vec<usize>> {
    let mut cur = Some(vec![0usize; m]);
    std::iter::from_fn(move || {
        let out = cur.take()?;
        let mut next = out.clone();
        let mut pos = m;
        loop {
            if pos == 0 {
                break;
            }
            pos -= 1;
            next[pos] += 1;
            if next[pos] < a {
                cur = Some(next);
                break;
            }
            next[pos] = 0;
        }
        Some(out)
    })
}

pub fn residue_space_size(a: usize, m: usize) -> u128 {
    (0..m)
        .try_fold(1u128, |acc, _| acc.checked_mul(a as u128))
        .unwrap_or(u128::MAX)
}

pub(crate) fn check_cap_amplitudes(a: usize, m: usize, cap: u128) -> Result<()> {
    check_cap(
        "amplitude table a^m (query specific residue tuples instead)",
        residue_space_size(a, m),
        cap,
    )
}

/// All `a^m` amplitudes for `boundary`, pruned at [`PRUNE_THRESHOLD`].
pub fn all_amplitudes<T: Scalar>(model: &MpsModel<T>, boundary: &Boundary<T>) -> Result<AmplitudeTable<T>> {
    all_amplitudes_capped(model, boundary, ALL_AMPLITUDES_CAP, true)
}

pub fn all_amplitudes_capped<T: Scalar>(
    model: &MpsModel<T>,
    boundary: &Boundary<T>,
    cap: u128,
    prune: bool,
) -> Result<AmplitudeTable<T>> {
    check_cap_amplitudes(model.a, model.m(), cap)?;
    let mut table = AmplitudeTable::new(model.a, model.m());
    for r in residue_tuples(model.a, model.m()) {
        let v = model.contract_with(boundary, &r)?;
        table.insert(r, v);
    }
    if prune {
        table.prune(PRUNE_THRESHOLD);
    }
    Ok(table)
}
