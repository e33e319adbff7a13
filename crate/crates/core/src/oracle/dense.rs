//! Explicit operator matrices for generalized Pauli generators.

use num_complex::Complex64;

use crate::error::{check_cap, Error, Result};
use crate::mps::{residue_space_size, residue_tuples, AmplitudeTable, PRUNE_THRESHOLD};
use crate::pauli::{symplectic_rank, PauliGen};
use crate::scalar::Scalar;

use super::ExpansionResult;

/// Largest Hilbert-space dimension `d^n` the dense oracle will build.
pub const DENSE_MAX_DIM: usize = 64;

/// Square complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl DenseMatrix {
    pub fn zeros(dim: usize) -> Self {
        DenseMatrix {
            dim,
            data: vec![Complex64::new(0.0, 0.0); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut out = Self::zeros(dim);
        for i in 0..dim {
            out.data[i * dim + i] = Complex64::new(1.0, 0.0);
        }
        out
    }

    pub fn from_rows(rows: &[&[Complex64]]) -> Self {
        let dim = rows.len();
        let data = rows.iter().flat_map(|r| r.iter().copied()).collect::<Vec<_>>();
        assert_eq!(data.len(), dim * dim, "matrix must be square");
        DenseMatrix { dim, data }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.dim + j]
    }

    pub fn mul(&self, rhs: &DenseMatrix) -> DenseMatrix {
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for l in 0..n {
                let a = self.data[i * n + l];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * rhs.data[l * n + j];
                }
            }
        }
        out
    }

    pub fn kron(&self, rhs: &DenseMatrix) -> DenseMatrix {
        let (a, b) = (self.dim, rhs.dim);
        let n = a * b;
        let mut out = Self::zeros(n);
        for i in 0..a {
            for j in 0..a {
                let x = self.data[i * a + j];
                for k in 0..b {
                    for l in 0..b {
                        out.data[(i * b + k) * n + j * b + l] = x * rhs.data[k * b + l];
                    }
                }
            }
        }
        out
    }

    pub fn add_scaled(&mut self, scale: Complex64, rhs: &DenseMatrix) {
        for (x, y) in self.data.iter_mut().zip(&rhs.data) {
            *x += scale * y;
        }
    }

    pub fn scale(&self, s: Complex64) -> DenseMatrix {
        DenseMatrix {
            dim: self.dim,
            data: self.data.iter().map(|x| x * s).collect(),
        }
    }

    pub fn pow(&self, k: usize) -> DenseMatrix {
        (0..k).fold(Self::identity(self.dim), |acc, _| acc.mul(self))
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &DenseMatrix) -> f64 {
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

/// A matrix with exactly one nonzero per row, as every generalized Pauli
/// product is: row `i` holds `vals[i]` in column `cols[i]`.
#[derive(Debug, Clone, PartialEq)]
pub struct MonomialMatrix {
    cols: Vec<usize>,
    vals: Vec<Complex64>,
}

impl MonomialMatrix {
    pub fn identity(dim: usize) -> Self {
        MonomialMatrix {
            cols: (0..dim).collect(),
            vals: vec![Complex64::new(1.0, 0.0); dim],
        }
    }

    /// Compresses a dense matrix; fails unless every row has exactly one
    /// nonzero entry.
    pub fn from_dense(m: &DenseMatrix) -> Result<Self> {
        let n = m.dim();
        let mut cols = Vec::with_capacity(n);
        let mut vals = Vec::with_capacity(n);
        for i in 0..n {
            let nz: Vec<usize> = (0..n).filter(|&j| m.get(i, j).norm() > 0.0).collect();
            if nz.len() != 1 {
                return Err(Error::Precondition(format!("row {i} has {} nonzero entries", nz.len())));
            }
            cols.push(nz[0]);
            vals.push(m.get(i, nz[0]));
        }
        Ok(MonomialMatrix { cols, vals })
    }

    pub fn mul(&self, rhs: &MonomialMatrix) -> MonomialMatrix {
        let cols = self.cols.iter().map(|&c| rhs.cols[c]).collect();
        let vals = self
            .vals
            .iter()
            .zip(&self.cols)
            .map(|(v, &c)| v * rhs.vals[c])
            .collect();
        MonomialMatrix { cols, vals }
    }

    /// `Tr(self† · h)`.
    pub fn trace_inner(&self, h: &DenseMatrix) -> Complex64 {
        self.cols
            .iter()
            .zip(&self.vals)
            .enumerate()
            .map(|(i, (&c, v))| v.conj() * h.get(i, c))
            .sum()
    }
}

/// Single-site `X^x Z^z`; for qubits the `(1, 1)` site is `Y = iXZ`.
///
/// Qudit convention: `X|j⟩ = |j+1⟩`, `Z|j⟩ = ω^{−j}|j⟩`, so `XZ = ω ZX`.
pub fn site_matrix(d: u32, x: u32, z: u32) -> DenseMatrix {
    let d = d as usize;
    let mut out = DenseMatrix::zeros(d);
    let omega_pow = |e: usize| Complex64::root_of_unity(d, e).expect("complex roots always exist");
    // (X^x Z^z)|j⟩ = ω^{−z·j} |j + x⟩
    for j in 0..d {
        let row = (j + x as usize) % d;
        let e = (d - (z as usize * j) % d) % d;
        out.data[row * d + j] = omega_pow(e);
    }
    if d == 2 && x == 1 && z == 1 {
        out = out.scale(Complex64::new(0.0, 1.0));
    }
    out
}

/// The `d^n × d^n` matrix of a generator, site 0 as the leftmost factor.
pub fn pauli_matrix(p: &PauliGen) -> DenseMatrix {
    p.x_part()
        .iter()
        .zip(p.z_part())
        .fold(DenseMatrix::identity(1), |acc, (&x, &z)| {
            acc.kron(&site_matrix(p.d(), x, z))
        })
}

fn space_dim(gens: &[PauliGen], coeffs: &[Complex64]) -> Result<(usize, usize)> {
    let first = gens
        .first()
        .ok_or_else(|| Error::Argument("need at least one generator".into()))?;
    if coeffs.len() != gens.len() {
        return Err(Error::Argument(format!(
            "{} coefficients for {} generators",
            coeffs.len(),
            gens.len()
        )));
    }
    let d = first.d() as usize;
    let dim = d.checked_pow(first.n() as u32).ok_or(Error::SizeLimit {
        what: "dense Hilbert space dimension",
        size: u128::MAX,
        cap: DENSE_MAX_DIM as u128,
    })?;
    check_cap("dense Hilbert space dimension", dim as u128, DENSE_MAX_DIM as u128)?;
    Ok((d, dim))
}

/// The explicit matrix `H^k` for `H = Σ_j c_j P_j`.
pub fn hamiltonian_power(gens: &[PauliGen], coeffs: &[Complex64], k: usize) -> Result<DenseMatrix> {
    let (_, dim) = space_dim(gens, coeffs)?;
    let mut h = DenseMatrix::zeros(dim);
    for (c, g) in coeffs.iter().zip(gens) {
        h.add_scaled(*c, &pauli_matrix(g));
    }
    Ok(h.pow(k))
}

/// `powers[j][r] = P_j^r` for `r < d`.
fn monomial_powers(gens: &[PauliGen], d: usize, dim: usize) -> Result<Vec<Vec<MonomialMatrix>>> {
    gens.iter()
        .map(|g| {
            let p = MonomialMatrix::from_dense(&pauli_matrix(g))?;
            let mut v = vec![MonomialMatrix::identity(dim)];
            for r in 1..d {
                let next = v[r - 1].mul(&p);
                v.push(next);
            }
            Ok(v)
        })
        .collect()
}

fn ordered_monomial(powers: &[Vec<MonomialMatrix>], r: &[usize], dim: usize) -> MonomialMatrix {
    r.iter()
        .enumerate()
        .fold(MonomialMatrix::identity(dim), |acc, (j, &rj)| acc.mul(&powers[j][rj]))
}

/// `Σ_r α_r P_1^{r_1} ⋯ P_m^{r_m}` as an explicit matrix. Works for
/// dependent generators too, where coefficients are not unique but the
/// operator is.
pub fn reconstruct_operator(gens: &[PauliGen], table: &AmplitudeTable<Complex64>) -> Result<DenseMatrix> {
    let (d, dim) = space_dim(gens, &vec![Complex64::new(0.0, 0.0); gens.len()])?;
    if table.m() != gens.len() || table.order() != d {
        return Err(Error::Argument("amplitude table does not match the generators".into()));
    }
    let powers = monomial_powers(gens, d, dim)?;
    let mut out = DenseMatrix::zeros(dim);
    for (r, alpha) in table.iter() {
        let b = ordered_monomial(&powers, r, dim);
        for (i, (&c, v)) in b.cols.iter().zip(&b.vals).enumerate() {
            out.data[i * dim + c] += alpha * v;
        }
    }
    Ok(out)
}

/// Expansion of `H^k`, `H = Σ_j c_j P_j`, in the ordered monomials
/// `P_1^{r_1} ⋯ P_m^{r_m}`, computed on explicit matrices.
///
/// The generators must be independent over `F_d` so that the monomials are
/// pairwise trace-orthogonal; then `α_r = Tr(B_r† H^k) / d^n`.
pub fn expand_dense_pauli(gens: &[PauliGen], coeffs: &[Complex64], k: usize) -> Result<ExpansionResult<Complex64>> {
    let (d, dim) = space_dim(gens, coeffs)?;
    let n = gens[0].n();
    let m = gens.len();
    if m > 2 * n {
        return Err(Error::Precondition(format!(
            "{m} generators on {n} sites cannot be independent"
        )));
    }
    let rank = symplectic_rank(gens)?;
    if rank != m {
        return Err(Error::Precondition(format!(
            "generators are dependent (rank {rank} < {m}); ordered monomials would not be independent"
        )));
    }
    let hk = hamiltonian_power(gens, coeffs, k)?;
    let powers = monomial_powers(gens, d, dim)?;

    let mut table = AmplitudeTable::new(d, m);
    let norm = Complex64::new(1.0 / dim as f64, 0.0);
    for r in residue_tuples(d, m) {
        let b = ordered_monomial(&powers, &r, dim);
        table.insert(r, b.trace_inner(&hk) * norm);
    }
    table.prune(PRUNE_THRESHOLD);
    Ok(ExpansionResult {
        table,
        explored: residue_space_size(d, m),
    })
}
