//! Brute-force expansions of `h^k` used as ground truth for the MPS.
//!
//! [`expand_wordwise`] works in the abstract twisted algebra for any weight
//! matrix: it expands the product into all `m^k` words and normal-orders
//! each one by adjacent transpositions. [`dense::expand_dense_pauli`] builds
//! actual operator matrices for Pauli generators.

pub mod dense;

pub use dense::{expand_dense_pauli, hamiltonian_power, reconstruct_operator};

use crate::error::{check_cap, Error, Result};
use crate::mps::{AmplitudeTable, PRUNE_THRESHOLD};
use crate::scalar::Scalar;
use crate::twisted::WeightMatrix;

/// Default cap on `m^k` for [`expand_wordwise`].
pub const WORDWISE_CAP: u128 = 10_000_000;

/// Amplitudes plus the number of words (or monomials) that were visited.
#[derive(Debug, Clone, PartialEq)]
pub struct ExpansionResult<T> {
    pub table: AmplitudeTable<T>,
    pub explored: u128,
}

/// Order in which adjacent inversions are resolved during normal ordering.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Schedule {
    /// Repeated left-to-right passes.
    Bubble,
    /// Sink each letter leftwards into the sorted prefix.
    Insertion,
}

/// Sorts `word` into ascending order using the exchange relation
/// `z_b z_a = ω_ab z_a z_b` (`a < b`) and returns the accumulated phase.
pub fn normal_order_phase<T: Scalar>(word: &mut [usize], w: &WeightMatrix<T>, schedule: Schedule) -> T {
    let mut phase = T::one();
    match schedule {
        Schedule::Bubble => {
            let mut swapped = true;
            while swapped {
                swapped = false;
                for t in 0..word.len().saturating_sub(1) {
                    if word[t] > word[t + 1] {
                        phase = phase * w.get(word[t + 1], word[t]).clone();
                        word.swap(t, t + 1);
                        swapped = true;
                    }
                }
            }
        }
        Schedule::Insertion => {
            for t in 1..word.len() {
                let mut s = t;
                while s > 0 && word[s - 1] > word[s] {
                    phase = phase * w.get(word[s], word[s - 1]).clone();
                    word.swap(s - 1, s);
                    s -= 1;
                }
            }
        }
    }
    phase
}

/// Expands `h^k` for `h = Σ_j c_j z_j` by distributing the product into all
/// `m^k` words, with the default cap.
///
/// Each word contributes `∏_t c_{σ(t)}` times its normal-ordering phase to
/// the bucket `r_j = (#j in σ) mod a`.
pub fn expand_wordwise<T: Scalar>(w: &WeightMatrix<T>, coeffs: &[T], a: usize, k: usize) -> Result<ExpansionResult<T>> {
    expand_wordwise_capped(w, coeffs, a, k, WORDWISE_CAP)
}

pub fn expand_wordwise_capped<T: Scalar>(
    w: &WeightMatrix<T>,
    coeffs: &[T],
    a: usize,
    k: usize,
    cap: u128,
) -> Result<ExpansionResult<T>> {
    let m = w.m();
    if coeffs.len() != m {
        return Err(Error::Argument(format!(
            "{} coefficients for {m} generators",
            coeffs.len()
        )));
    }
    if a < 2 {
        return Err(Error::Argument(format!("generator order must be >= 2, got {a}")));
    }
    if let Some(order) = w.order() {
        if order != a {
            return Err(Error::Argument(format!(
                "weight matrix has order {order}, expansion asked for {a}"
            )));
        }
    }
    if m == 0 && k > 0 {
        return Err(Error::Argument("h is empty; only k = 0 is defined".into()));
    }
    let words = (0..k)
        .try_fold(1u128, |acc, _| acc.checked_mul(m as u128))
        .unwrap_or(u128::MAX);
    check_cap("word expansion m^k", words, cap)?;

    let mut table = AmplitudeTable::new(a, m);
    let mut word = vec![0usize; k];
    let mut scratch = vec![0usize; k];
    loop {
        scratch.copy_from_slice(&word);
        let phase = normal_order_phase(&mut scratch, w, Schedule::Bubble);
        let mut counts = vec![0usize; m];
        let mut coeff = T::one();
        for &letter in &word {
            counts[letter] += 1;
            coeff = coeff * coeffs[letter].clone();
        }
        let key = counts.iter().map(|&c| c % a).collect();
        table.accumulate(key, coeff * phase);

        // odometer increment, last position fastest
        let mut pos = k;
        loop {
            if pos == 0 {
                table.prune(PRUNE_THRESHOLD);
                return Ok(ExpansionResult { table, explored: words });
            }
            pos -= 1;
            word[pos] += 1;
            if word[pos] < m {
                break;
            }
            word[pos] = 0;
        }
    }
}
