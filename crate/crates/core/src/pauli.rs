//! Symplectic Pauli generators and the twisting matrices they induce.
//!
//! A generator on `n` sites of prime local dimension `d` is stored as the
//! digit pair `(u | w)` and stands for the site-wise product of `X^u Z^w`.
//! For qubits a `u = w = 1` site is the Hermitian `Y = iXZ`; no further
//! global phase is carried, coefficients absorb it.
//!
//! Phase convention: single-site clock and shift operators satisfy
//! `XZ = ω ZX` with `ω = exp(2πi/d)`, so `P·Q = ω^{u_P·w_Q − w_P·u_Q} Q·P`.
//! For `d = 2` this is `(−1)^{u_P·w_Q + w_P·u_Q}`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::twisted::WeightMatrix;

fn is_prime(d: u32) -> bool {
    d >= 2 && (2..).take_while(|p| p * p <= d).all(|p| !d.is_multiple_of(p))
}

/// `X^u Z^w` on `n` sites of local dimension `d`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PauliGen {
    d: u32,
    u: Vec<u32>,
    w: Vec<u32>,
}

impl PauliGen {
    pub fn new(d: u32, u: Vec<u32>, w: Vec<u32>) -> Result<Self> {
        if !is_prime(d) {
            return Err(Error::Argument(format!("local dimension {d} is not prime")));
        }
        if u.len() != w.len() {
            return Err(Error::Argument(format!(
                "X part has {} sites but Z part has {}",
                u.len(),
                w.len()
            )));
        }
        if let Some(&bad) = u.iter().chain(&w).find(|&&x| x >= d) {
            return Err(Error::Argument(format!("digit {bad} out of range for d = {d}")));
        }
        Ok(PauliGen { d, u, w })
    }

    /// Parses an `I/X/Y/Z` string, leftmost character on site 0.
    pub fn qubit(s: &str) -> Result<Self> {
        let mut u = Vec::with_capacity(s.len());
        let mut w = Vec::with_capacity(s.len());
        for ch in s.chars() {
            let (x, z) = match ch {
                'I' => (0, 0),
                'X' => (1, 0),
                'Y' => (1, 1),
                'Z' => (0, 1),
                other => return Err(Error::Parse(format!("'{other}' is not one of I, X, Y, Z in {s:?}"))),
            };
            u.push(x);
            w.push(z);
        }
        PauliGen::new(2, u, w)
    }

    /// Parses whitespace-separated per-site tokens `I` or `X^aZ^b` (either
    /// factor may be omitted, a missing exponent means 1).
    pub fn qudit(d: u32, s: &str) -> Result<Self> {
        let mut u = Vec::new();
        let mut w = Vec::new();
        for token in s.split_whitespace() {
            let (x, z) = parse_qudit_token(token)?;
            u.push(x);
            w.push(z);
        }
        PauliGen::new(d, u, w)
    }

    pub fn n(&self) -> usize {
        self.u.len()
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn x_part(&self) -> &[u32] {
        &self.u
    }

    pub fn z_part(&self) -> &[u32] {
        &self.w
    }

    pub fn is_identity(&self) -> bool {
        self.u.iter().chain(&self.w).all(|&x| x == 0)
    }

    /// Symplectic vector `(u | w)`.
    pub fn symplectic(&self) -> Vec<u32> {
        self.u.iter().chain(&self.w).copied().collect()
    }

    fn same_space(&self, other: &PauliGen) -> Result<()> {
        if self.d != other.d || self.n() != other.n() {
            return Err(Error::Argument(format!(
                "generators live on different spaces: (n={}, d={}) vs (n={}, d={})",
                self.n(),
                self.d,
                other.n(),
                other.d
            )));
        }
        Ok(())
    }
}

fn parse_qudit_token(token: &str) -> Result<(u32, u32)> {
    if token == "I" {
        return Ok((0, 0));
    }
    let bad = || Error::Parse(format!("malformed qudit Pauli token {token:?}, expected e.g. X^1Z^2"));
    let mut x = 0u32;
    let mut z = 0u32;
    let mut rest = token;
    while !rest.is_empty() {
        let (slot, tail) = match rest.as_bytes()[0] {
            b'X' => (&mut x, &rest[1..]),
            b'Z' => (&mut z, &rest[1..]),
            _ => return Err(bad()),
        };
        let (value, tail) = match tail.strip_prefix('^') {
            Some(t) => {
                let end = t.find(|c: char| !c.is_ascii_digit()).unwrap_or(t.len());
                if end == 0 {
                    return Err(bad());
                }
                (t[..end].parse::<u32>().map_err(|_| bad())?, &t[end..])
            }
            None => (1, tail),
        };
        *slot = value;
        rest = tail;
    }
    Ok((x, z))
}

impl fmt::Display for PauliGen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.d == 2 {
            for (&x, &z) in self.u.iter().zip(&self.w) {
                let c = match (x, z) {
                    (0, 0) => 'I',
                    (1, 0) => 'X',
                    (1, 1) => 'Y',
                    _ => 'Z',
                };
                write!(f, "{c}")?;
            }
            Ok(())
        } else {
            let tokens: Vec<String> = self
                .u
                .iter()
                .zip(&self.w)
                .map(|(&x, &z)| {
                    if x == 0 && z == 0 {
                        "I".to_string()
                    } else {
                        format!("X^{x}Z^{z}")
                    }
                })
                .collect();
            write!(f, "{}", tokens.join(" "))
        }
    }
}

impl FromStr for PauliGen {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        PauliGen::qubit(s)
    }
}

/// Exponent `e` with `P·Q = exp(2πi·e/d) Q·P`.
pub fn commutation_exponent(p: &PauliGen, q: &PauliGen) -> Result<u32> {
    p.same_space(q)?;
    let d = p.d as u64;
    let mut e: u64 = 0;
    for site in 0..p.n() {
        let uw = p.u[site] as u64 * q.w[site] as u64;
        let wu = p.w[site] as u64 * q.u[site] as u64;
        e = (e + uw + (d - wu % d)) % d;
    }
    Ok(e as u32)
}

/// The scalar `s` with `P·Q = s·Q·P`, a `d`-th root of unity.
pub fn commutation_phase<T: Scalar>(p: &PauliGen, q: &PauliGen) -> Result<T> {
    let e = commutation_exponent(p, q)?;
    T::root_of_unity(p.d as usize, e as usize)
        .ok_or_else(|| Error::Argument(format!("phase exp(2πi·{e}/{}) not representable", p.d)))
}

fn common_space(gens: &[PauliGen]) -> Result<()> {
    if let Some(first) = gens.first() {
        for g in &gens[1..] {
            first.same_space(g)?;
        }
    }
    Ok(())
}

/// Row-major exponents `t_ij` of the twisting matrix, `ω_ij = exp(2πi·t_ij/d)`.
///
/// `ω_ij` is defined by `P_j P_i = ω_ij P_i P_j`, the relation that moves a
/// later generator left past an earlier one during normal ordering. For
/// qubits the matrix is symmetric and the distinction disappears.
pub fn phase_exponent_matrix(gens: &[PauliGen]) -> Result<Vec<usize>> {
    common_space(gens)?;
    let m = gens.len();
    let mut exps = vec![0usize; m * m];
    for i in 0..m {
        for j in 0..m {
            if i != j {
                exps[i * m + j] = commutation_exponent(&gens[j], &gens[i])? as usize;
            }
        }
    }
    Ok(exps)
}

/// Twisting matrix of order `d` induced by the generators' commutation
/// phases.
pub fn weight_matrix_from_paulis<T: Scalar>(gens: &[PauliGen]) -> Result<WeightMatrix<T>> {
    if gens.is_empty() {
        return Err(Error::Argument("need at least one generator".into()));
    }
    let exps = phase_exponent_matrix(gens)?;
    WeightMatrix::from_exponent_matrix(gens.len(), gens[0].d as usize, &exps)
}

/// Graph on generators with an edge wherever the commutation phase is not 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnticommGraph {
    m: usize,
    edges: Vec<(usize, usize)>,
    components: Vec<Vec<usize>>,
}

impl AnticommGraph {
    /// Builds the graph from its edge list (`i < j`).
    pub fn from_edges(m: usize, edges: Vec<(usize, usize)>) -> Self {
        let mut adj = vec![Vec::new(); m];
        for &(i, j) in &edges {
            adj[i].push(j);
            adj[j].push(i);
        }
        let mut seen = vec![false; m];
        let mut components = Vec::new();
        for start in 0..m {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut comp = vec![start];
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                for &nb in &adj[v] {
                    if !seen[nb] {
                        seen[nb] = true;
                        comp.push(nb);
                        stack.push(nb);
                    }
                }
            }
            comp.sort_unstable();
            components.push(comp);
        }
        AnticommGraph { m, edges, components }
    }

    /// Edges where `ω_ij` differs from 1 by more than `tol`.
    pub fn from_weight_matrix<T: Scalar>(w: &WeightMatrix<T>, tol: f64) -> Self {
        let m = w.m();
        let one = T::one();
        let edges = (0..m)
            .flat_map(|i| ((i + 1)..m).map(move |j| (i, j)))
            .filter(|&(i, j)| !crate::scalar::abs_close(w.get(i, j), &one, tol))
            .collect();
        Self::from_edges(m, edges)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Components, each sorted, ordered by smallest member.
    pub fn components(&self) -> &[Vec<usize>] {
        &self.components
    }

    pub fn component_sizes(&self) -> Vec<usize> {
        self.components.iter().map(Vec::len).collect()
    }

    /// Size of the largest component; 0 for an empty graph.
    pub fn c_max(&self) -> usize {
        self.components.iter().map(Vec::len).max().unwrap_or(0)
    }
}

pub fn anticommutation_graph(gens: &[PauliGen]) -> Result<AnticommGraph> {
    common_space(gens)?;
    let m = gens.len();
    let mut edges = Vec::new();
    for i in 0..m {
        for j in (i + 1)..m {
            if commutation_exponent(&gens[i], &gens[j])? != 0 {
                edges.push((i, j));
            }
        }
    }
    Ok(AnticommGraph::from_edges(m, edges))
}

/// The `2n + 1` mutually anticommuting Jordan–Wigner generators
/// `Z…ZXI…I, Z…ZYI…I` (`k = 1..n`) and `Z…Z`.
pub fn jordan_wigner(n: usize) -> Result<Vec<PauliGen>> {
    if n < 1 {
        return Err(Error::Argument("Jordan-Wigner family needs n >= 1".into()));
    }
    let mut out = Vec::with_capacity(2 * n + 1);
    for k in 0..n {
        for (x, z) in [(1, 0), (1, 1)] {
            let mut u = vec![0; n];
            let mut w = vec![0; n];
            w[..k].iter_mut().for_each(|b| *b = 1);
            u[k] = x;
            w[k] = z;
            out.push(PauliGen::new(2, u, w)?);
        }
    }
    out.push(PauliGen::new(2, vec![0; n], vec![1; n])?);
    Ok(out)
}

/// Qubit generators on `m` sites whose anticommutation pattern is the given
/// symmetric, zero-diagonal binary matrix: `u_i = e_i`, `w_i[j] = L_ij` for
/// `j > i`.
pub fn realize_lambda(lambda: &[Vec<bool>]) -> Result<Vec<PauliGen>> {
    let m = lambda.len();
    for (i, row) in lambda.iter().enumerate() {
        if row.len() != m {
            return Err(Error::Argument(format!(
                "row {i} has length {} in a {m}x{m} matrix",
                row.len()
            )));
        }
        if row[i] {
            return Err(Error::Argument(format!("diagonal entry ({i},{i}) is nonzero")));
        }
        for j in 0..i {
            if row[j] != lambda[j][i] {
                return Err(Error::Argument(format!("matrix is not symmetric at ({j},{i})")));
            }
        }
    }
    (0..m)
        .map(|i| {
            let mut u = vec![0; m];
            u[i] = 1;
            let w = (0..m).map(|j| u32::from(j > i && lambda[i][j])).collect();
            PauliGen::new(2, u, w)
        })
        .collect()
}

/// Rank of the generators' symplectic vectors over `F_d`.
pub fn symplectic_rank(gens: &[PauliGen]) -> Result<usize> {
    common_space(gens)?;
    let Some(first) = gens.first() else {
        return Ok(0);
    };
    let p = first.d as u64;
    let mut rows: Vec<Vec<u64>> = gens
        .iter()
        .map(|g| g.symplectic().into_iter().map(u64::from).collect())
        .collect();
    let cols = 2 * first.n();
    let inv = |a: u64| -> u64 {
        // Fermat: a^(p-2)
        let mut result = 1u64;
        let mut base = a % p;
        let mut e = p - 2;
        while e > 0 {
            if e & 1 == 1 {
                result = result * base % p;
            }
            base = base * base % p;
            e >>= 1;
        }
        result
    };
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        let scale = inv(rows[rank][col]);
        rows[rank].iter_mut().for_each(|x| *x = *x * scale % p);
        for r in 0..rows.len() {
            if r != rank && rows[r][col] != 0 {
                let f = rows[r][col];
                for c in 0..cols {
                    rows[r][c] = (rows[r][c] + p * p - f * rows[rank][c]) % p;
                }
            }
        }
        rank += 1;
    }
    Ok(rank)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gens(strings: &[&str]) -> Vec<PauliGen> {
        strings.iter().map(|s| PauliGen::qubit(s).unwrap()).collect()
    }

    #[test]
    fn parse_and_display() {
        let p = PauliGen::qubit("XYZI").unwrap();
        assert_eq!(p.x_part(), &[1, 1, 0, 0]);
        assert_eq!(p.z_part(), &[0, 1, 1, 0]);
        assert_eq!(p.to_string(), "XYZI");
        assert!(PauliGen::qubit("XQ").is_err());
        let q = PauliGen::qudit(3, "X^1Z^2 I Z X^2").unwrap();
        assert_eq!(q.x_part(), &[1, 0, 0, 2]);
        assert_eq!(q.z_part(), &[2, 0, 1, 0]);
        assert_eq!(q.to_string(), "X^1Z^2 I X^0Z^1 X^2Z^0");
        assert_eq!(PauliGen::qudit(3, &q.to_string()).unwrap(), q);
        assert!(PauliGen::qudit(3, "X^3").is_err());
        assert!(PauliGen::qudit(4, "X").is_err());
        assert!(PauliGen::qudit(5, "W^1").is_err());
        assert!(PauliGen::qudit(5, "X^").is_err());
    }

    #[test]
    fn qubit_phases() {
        let x = PauliGen::qubit("X").unwrap();
        let z = PauliGen::qubit("Z").unwrap();
        assert_eq!(commutation_phase::<i64>(&x, &z).unwrap(), -1);
        assert_eq!(commutation_phase::<i64>(&x, &x).unwrap(), 1);
        let g = gens(&["IX", "XX", "IY"]);
        assert_eq!(commutation_phase::<i64>(&g[0], &g[1]).unwrap(), 1);
        assert_eq!(commutation_phase::<i64>(&g[0], &g[2]).unwrap(), -1);
        assert!(commutation_exponent(&x, &g[0]).is_err());
    }

    #[test]
    fn jordan_wigner_family() {
        let jw2: Vec<String> = jordan_wigner(2).unwrap().iter().map(ToString::to_string).collect();
        assert_eq!(jw2, ["XI", "YI", "ZX", "ZY", "ZZ"]);
        let jw3: Vec<String> = jordan_wigner(3).unwrap().iter().map(ToString::to_string).collect();
        assert_eq!(jw3, ["XII", "YII", "ZXI", "ZYI", "ZZX", "ZZY", "ZZZ"]);
        assert!(jordan_wigner(0).is_err());
        for n in 1..=5 {
            let w = weight_matrix_from_paulis::<i64>(&jordan_wigner(n).unwrap()).unwrap();
            for i in 0..w.m() {
                for j in 0..w.m() {
                    assert_eq!(*w.get(i, j), if i == j { 1 } else { -1 });
                }
            }
        }
    }

    #[test]
    fn four_cycle_realization() {
        let g = gens(&["IX", "IY", "XX", "XY"]);
        let w = weight_matrix_from_paulis::<i64>(&g).unwrap();
        let expected = [[1, -1, 1, -1], [-1, 1, -1, 1], [1, -1, 1, -1], [-1, 1, -1, 1]];
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(*w.get(i, j), expected[i][j]);
            }
        }
        let graph = anticommutation_graph(&g).unwrap();
        assert_eq!(graph.edges(), &[(0, 1), (0, 3), (1, 2), (2, 3)]);
        assert_eq!(graph.component_sizes(), vec![4]);
        assert_eq!(graph.c_max(), 4);
    }

    #[test]
    fn graphs() {
        let jw = anticommutation_graph(&jordan_wigner(3).unwrap()).unwrap();
        assert_eq!(jw.edges().len(), 21);
        assert_eq!(jw.c_max(), 7);
        let zs = anticommutation_graph(&gens(&["ZI", "IZ", "ZZ"])).unwrap();
        assert!(zs.edges().is_empty());
        assert_eq!(zs.c_max(), 1);
        assert_eq!(zs.components().len(), 3);
        let single = weight_matrix_from_paulis::<i64>(&gens(&["XZ"])).unwrap();
        assert_eq!(single.entries(), &[1]);
    }

    #[test]
    fn lambda_realization() {
        let l = vec![vec![false, true], vec![true, false]];
        let g = realize_lambda(&l).unwrap();
        assert_eq!(g[0].x_part(), &[1, 0]);
        assert_eq!(g[0].z_part(), &[0, 1]);
        assert_eq!(g[1].z_part(), &[0, 0]);
        assert_eq!(commutation_phase::<i64>(&g[0], &g[1]).unwrap(), -1);

        let zero = vec![vec![false; 3]; 3];
        let g = realize_lambda(&zero).unwrap();
        assert!(g.iter().map(ToString::to_string).eq(["XII", "IXI", "IIX"]));
        assert!(anticommutation_graph(&g).unwrap().edges().is_empty());

        assert!(realize_lambda(&[vec![true]]).is_err());
        assert!(realize_lambda(&[vec![false, true], vec![false, false]]).is_err());
    }

    #[test]
    fn qudit_phases_are_inverse_pairs() {
        let p = PauliGen::qudit(5, "X^1Z^3 X^2").unwrap();
        let q = PauliGen::qudit(5, "Z^4 X^3Z^1").unwrap();
        let e_pq = commutation_exponent(&p, &q).unwrap();
        let e_qp = commutation_exponent(&q, &p).unwrap();
        assert_eq!((e_pq + e_qp) % 5, 0);
        // u_P.w_Q - w_P.u_Q = (1*4 + 2*1) - (3*0 + 0*3) = 6 = 1 mod 5
        assert_eq!(e_pq, 1);
    }

    #[test]
    fn rank() {
        assert_eq!(symplectic_rank(&jordan_wigner(2).unwrap()).unwrap(), 4);
        assert_eq!(symplectic_rank(&gens(&["XI", "IX", "XX"])).unwrap(), 2);
        let q3 = vec![
            PauliGen::qudit(3, "X Z").unwrap(),
            PauliGen::qudit(3, "X^2 Z^2").unwrap(),
        ];
        assert_eq!(symplectic_rank(&q3).unwrap(), 1);
        assert_eq!(symplectic_rank(&[]).unwrap(), 0);
    }
}
