//! Amplitudes in the caller's generator order for any twisting matrix that
//! admits a predecessor-uniform relabeling.
//!
//! The MPS is built in the relabeled order `π`, where it computes the
//! coefficient of `z_{π(1)}^{r_{π(1)}} ⋯ z_{π(m)}^{r_{π(m)}}`. Reordering
//! that monomial into `z_1^{r_1} ⋯ z_m^{r_m}` costs a phase (the product of
//! the weights of its inversions), which is applied before reporting.

use crate::error::{Error, Result};
use crate::mps::{
    build_model, check_cap_amplitudes, residue_tuples, AmplitudeTable, Boundary, MpsModel, PRUNE_THRESHOLD,
};
use crate::scalar::Scalar;
use crate::twisted::{find_pu_ordering, PuOrdering, WeightMatrix};

#[derive(Debug, Clone)]
pub struct PilotModel<T> {
    weights: WeightMatrix<T>,
    ordering: PuOrdering<T>,
    model: MpsModel<T>,
}

impl<T: Scalar> PilotModel<T> {
    /// Finds a predecessor-uniform ordering and builds the MPS at `degree`.
    ///
    /// The weight matrix must carry its generator order.
    pub fn new(weights: &WeightMatrix<T>, coeffs: &[T], degree: usize) -> Result<Self> {
        let ordering = find_pu_ordering(weights).ok_or(Error::NoPuOrdering)?;
        Self::with_ordering(weights, ordering, coeffs, degree)
    }

    pub fn with_ordering(
        weights: &WeightMatrix<T>,
        ordering: PuOrdering<T>,
        coeffs: &[T],
        degree: usize,
    ) -> Result<Self> {
        let a = weights
            .order()
            .ok_or_else(|| Error::Argument("weight matrix has no generator order".into()))?;
        if coeffs.len() != weights.m() {
            return Err(Error::Argument(format!(
                "{} coefficients for {} generators",
                coeffs.len(),
                weights.m()
            )));
        }
        let permuted: Vec<T> = ordering.perm.iter().map(|&g| coeffs[g].clone()).collect();
        let model = build_model(&permuted, &ordering.q_params()?, a, degree)?;
        Ok(PilotModel {
            weights: weights.clone(),
            ordering,
            model,
        })
    }

    pub fn ordering(&self) -> &PuOrdering<T> {
        &self.ordering
    }

    pub fn model(&self) -> &MpsModel<T> {
        &self.model
    }

    /// Residues listed in the relabeled order.
    pub fn permuted_residues(&self, r: &[usize]) -> Vec<usize> {
        self.ordering.perm.iter().map(|&g| r[g]).collect()
    }

    /// Phase `φ` with `z_{π(1)}^{r_{π(1)}} ⋯ z_{π(m)}^{r_{π(m)}} = φ · z_1^{r_1} ⋯ z_m^{r_m}`.
    pub fn reorder_phase(&self, r: &[usize]) -> T {
        let word: Vec<usize> = self
            .ordering
            .perm
            .iter()
            .flat_map(|&g| std::iter::repeat_n(g, r[g]))
            .collect();
        let mut phase = T::one();
        for s in 0..word.len() {
            for t in (s + 1)..word.len() {
                if word[s] > word[t] {
                    phase = phase * self.weights.get(word[t], word[s]).clone();
                }
            }
        }
        phase
    }

    /// Amplitude of `z_1^{r_1} ⋯ z_m^{r_m}` with `r` in the caller's order.
    pub fn amplitude(&self, boundary: &Boundary<T>, r: &[usize]) -> Result<T> {
        if r.len() != self.weights.m() {
            return Err(Error::Argument(format!(
                "residue tuple has length {} but there are {} generators",
                r.len(),
                self.weights.m()
            )));
        }
        let raw = self.model.contract_with(boundary, &self.permuted_residues(r))?;
        Ok(raw * self.reorder_phase(r))
    }

    /// Every amplitude, keyed in the caller's order, pruned at
    /// [`PRUNE_THRESHOLD`].
    pub fn all_amplitudes(&self, boundary: &Boundary<T>, cap: u128) -> Result<AmplitudeTable<T>> {
        let a = self.model.order();
        let m = self.model.m();
        check_cap_amplitudes(a, m, cap)?;
        let mut table = AmplitudeTable::new(a, m);
        for r in residue_tuples(a, m) {
            let v = self.amplitude(boundary, &r)?;
            table.insert(r, v);
        }
        table.prune(PRUNE_THRESHOLD);
        Ok(table)
    }
}
