//! JSON description of `h = Σ_j c_j z_j` together with what to compute.
//!
//! Abstract form:
//!
//! ```json
//! { "abstract": { "m": 3, "a": 2, "phases": [[1, 2, 1], [2, 3, 1]], "coeffs": [1.0, [0.5, -0.5], 2] },
//!   "k": 4, "queries": ["000", "110"] }
//! ```
//!
//! `phases` lists `[i, j, t]` with `1 ≤ i < j ≤ m`, meaning
//! `ω_ij = exp(2πi·t/a)`; unlisted pairs commute. Pauli form:
//!
//! ```json
//! { "pauli": { "n": 2, "d": 2, "terms": [{ "pauli": "XI", "coeff": 1.0 }] },
//!   "poly": [0, 1], "queries": "all" }
//! ```
//!
//! Qubit strings use the letters `IXYZ`; for `d > 2` each site is a
//! whitespace-separated token `I` or `X^aZ^b`. A coefficient is a real
//! number or a `[re, im]` pair.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mps::Boundary;
use crate::pauli::{phase_exponent_matrix, PauliGen};
use crate::twisted::WeightMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Coeff {
    Real(f64),
    Complex([f64; 2]),
}

impl Coeff {
    pub fn value(&self) -> Complex64 {
        match *self {
            Coeff::Real(x) => Complex64::new(x, 0.0),
            Coeff::Complex([re, im]) => Complex64::new(re, im),
        }
    }
}

impl From<Complex64> for Coeff {
    fn from(c: Complex64) -> Self {
        if c.im == 0.0 {
            Coeff::Real(c.re)
        } else {
            Coeff::Complex([c.re, c.im])
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AbstractForm {
    pub m: usize,
    pub a: usize,
    #[serde(default)]
    pub phases: Vec<[usize; 3]>,
    pub coeffs: Vec<Coeff>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PauliTerm {
    pub pauli: String,
    pub coeff: Coeff,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PauliForm {
    pub n: usize,
    pub d: u32,
    pub terms: Vec<PauliTerm>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Queries {
    /// The keyword `"all"`.
    Keyword(String),
    List(Vec<String>),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HamiltonianSpec {
    #[serde(rename = "abstract", default, skip_serializing_if = "Option::is_none")]
    pub abstract_form: Option<AbstractForm>,
    #[serde(rename = "pauli", default, skip_serializing_if = "Option::is_none")]
    pub pauli_form: Option<PauliForm>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub poly: Option<Vec<Coeff>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub queries: Option<Queries>,
}

/// Which residue tuples to report.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QuerySet {
    All,
    List(Vec<Vec<usize>>),
}

impl HamiltonianSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        let spec: HamiltonianSpec = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        spec.validate()?;
        Ok(spec)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("spec serialization cannot fail")
    }

    /// Abstract-form spec from a full row-major exponent matrix.
    pub fn from_exponents(m: usize, a: usize, exps: &[usize], coeffs: &[Complex64]) -> Result<Self> {
        if exps.len() != m * m || coeffs.len() != m {
            return Err(Error::Argument(
                "exponent matrix or coefficient list has the wrong size".into(),
            ));
        }
        let mut phases = Vec::new();
        for i in 0..m {
            for j in (i + 1)..m {
                let t = exps[i * m + j] % a;
                if t != 0 {
                    phases.push([i + 1, j + 1, t]);
                }
            }
        }
        let spec = HamiltonianSpec {
            abstract_form: Some(AbstractForm {
                m,
                a,
                phases,
                coeffs: coeffs.iter().map(|&c| c.into()).collect(),
            }),
            pauli_form: None,
            k: None,
            poly: None,
            queries: None,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        match (&self.abstract_form, &self.pauli_form) {
            (Some(_), Some(_)) => {
                return Err(Error::Parse(
                    "give exactly one of \"abstract\" and \"pauli\", not both".into(),
                ))
            }
            (None, None) => return Err(Error::Parse("missing \"abstract\" or \"pauli\" section".into())),
            _ => {}
        }
        if self.k.is_some() && self.poly.is_some() {
            return Err(Error::Parse("give at most one of \"k\" and \"poly\"".into()));
        }
        if let Some(poly) = &self.poly {
            if poly.is_empty() {
                return Err(Error::Parse("\"poly\" must have at least one coefficient".into()));
            }
            check_finite(poly, "poly")?;
        }
        if let Some(f) = &self.abstract_form {
            if f.m == 0 {
                return Err(Error::Parse("m must be at least 1".into()));
            }
            if f.a < 2 {
                return Err(Error::Parse(format!("a must be at least 2, got {}", f.a)));
            }
            if f.coeffs.len() != f.m {
                return Err(Error::Parse(format!("{} coefficients for m = {}", f.coeffs.len(), f.m)));
            }
            check_finite(&f.coeffs, "coeffs")?;
        }
        if let Some(p) = &self.pauli_form {
            if p.terms.is_empty() {
                return Err(Error::Parse("\"terms\" is empty".into()));
            }
            check_finite(&p.terms.iter().map(|t| t.coeff).collect::<Vec<_>>(), "terms")?;
            for g in self.paulis()?.unwrap() {
                if g.n() != p.n {
                    return Err(Error::Parse(format!(
                        "Pauli string \"{g}\" has {} sites, expected n = {}",
                        g.n(),
                        p.n
                    )));
                }
            }
        }
        self.exponents()?;
        self.query_set()?;
        Ok(())
    }

    pub fn m(&self) -> usize {
        match (&self.abstract_form, &self.pauli_form) {
            (Some(f), _) => f.m,
            (_, Some(p)) => p.terms.len(),
            _ => 0,
        }
    }

    /// Generator order `a` (the local dimension `d` in Pauli form).
    pub fn order(&self) -> usize {
        match (&self.abstract_form, &self.pauli_form) {
            (Some(f), _) => f.a,
            (_, Some(p)) => p.d as usize,
            _ => 0,
        }
    }

    pub fn is_pauli(&self) -> bool {
        self.pauli_form.is_some()
    }

    pub fn paulis(&self) -> Result<Option<Vec<PauliGen>>> {
        let Some(p) = &self.pauli_form else { return Ok(None) };
        let parse = |s: &str| {
            if p.d == 2 {
                PauliGen::qubit(s)
            } else {
                PauliGen::qudit(p.d, s)
            }
        };
        p.terms
            .iter()
            .map(|t| parse(&t.pauli).map_err(|e| Error::Parse(format!("Pauli string \"{}\": {e}", t.pauli))))
            .collect::<Result<Vec<_>>>()
            .map(Some)
    }

    /// Row-major phase exponents `t_ij` modulo `a`.
    pub fn exponents(&self) -> Result<Vec<usize>> {
        if let Some(gens) = self.paulis()? {
            return phase_exponent_matrix(&gens).map_err(|e| Error::Parse(e.to_string()));
        }
        let f = self
            .abstract_form
            .as_ref()
            .ok_or_else(|| Error::Parse("empty spec".into()))?;
        let m = f.m;
        let mut exps = vec![0usize; m * m];
        let mut seen = vec![false; m * m];
        for &[i, j, t] in &f.phases {
            if !(1 <= i && i < j && j <= m) {
                return Err(Error::Parse(format!(
                    "phase entry [{i}, {j}, {t}] needs 1 <= i < j <= {m}"
                )));
            }
            let (i, j) = (i - 1, j - 1);
            if std::mem::replace(&mut seen[i * m + j], true) {
                return Err(Error::Parse(format!(
                    "pair ({}, {}) appears twice in \"phases\"",
                    i + 1,
                    j + 1
                )));
            }
            exps[i * m + j] = t % f.a;
            exps[j * m + i] = (f.a - t % f.a) % f.a;
        }
        Ok(exps)
    }

    pub fn weight_matrix(&self) -> Result<WeightMatrix<Complex64>> {
        WeightMatrix::from_exponent_matrix(self.m(), self.order(), &self.exponents()?)
    }

    pub fn coefficients(&self) -> Vec<Complex64> {
        match (&self.abstract_form, &self.pauli_form) {
            (Some(f), _) => f.coeffs.iter().map(Coeff::value).collect(),
            (_, Some(p)) => p.terms.iter().map(|t| t.coeff.value()).collect(),
            _ => Vec::new(),
        }
    }

    /// `e_k` for `"k"`, the coefficient vector for `"poly"`, `None` if neither
    /// is given.
    pub fn boundary(&self) -> Option<Boundary<Complex64>> {
        if let Some(k) = self.k {
            return Some(Boundary::Monomial(k));
        }
        self.poly
            .as_ref()
            .map(|p| Boundary::Polynomial(p.iter().map(Coeff::value).collect()))
    }

    pub fn query_set(&self) -> Result<Option<QuerySet>> {
        match &self.queries {
            None => Ok(None),
            Some(Queries::Keyword(s)) if s == "all" => Ok(Some(QuerySet::All)),
            Some(Queries::Keyword(s)) => Err(Error::Parse(format!(
                "\"queries\" must be \"all\" or a list, got \"{s}\""
            ))),
            Some(Queries::List(items)) => items
                .iter()
                .map(|s| parse_residues(s, self.order(), self.m()))
                .collect::<Result<Vec<_>>>()
                .map(|v| Some(QuerySet::List(v))),
        }
    }
}

fn check_finite(cs: &[Coeff], field: &str) -> Result<()> {
    if cs.iter().any(|c| !c.value().is_finite()) {
        return Err(Error::Parse(format!("\"{field}\" contains a non-finite coefficient")));
    }
    Ok(())
}

/// Parses a residue tuple written one digit per generator. Digits above 9
/// use `a`–`z`, so orders up to 36 are expressible.
pub fn parse_residues(s: &str, a: usize, m: usize) -> Result<Vec<usize>> {
    let r = s
        .chars()
        .map(|ch| {
            ch.to_digit(36)
                .map(|x| x as usize)
                .filter(|&x| x < a)
                .ok_or_else(|| Error::Parse(format!("residue tuple \"{s}\": '{ch}' is not a digit below {a}")))
        })
        .collect::<Result<Vec<_>>>()?;
    if r.len() != m {
        return Err(Error::Parse(format!(
            "residue tuple \"{s}\" has {} digits, expected {m}",
            r.len()
        )));
    }
    Ok(r)
}

pub fn render_residues(r: &[usize]) -> String {
    r.iter()
        .map(|&x| char::from_digit(x as u32, 36).expect("residue below 36"))
        .collect()
}
