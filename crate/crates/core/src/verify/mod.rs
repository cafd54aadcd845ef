//! Certification of the wave-graph basis.
//!
//! Three independent checks:
//!
//! 1. every `t_G` is annihilated by a basis of `sp(2n)` acting by the Leibniz
//!    rule on tensor factors;
//! 2. the number of graphs agrees with the S-tris count and, when the size
//!    allows, with the dimension of the joint kernel of `sp(2n)` on the whole
//!    of `V^{⊗m}` computed by exact elimination;
//! 3. ordering the `t_G` by their words, the coefficient matrix restricted to
//!    the monomials `b_{α(G)}` is upper triangular with nonzero diagonal, so
//!    the `t_G` are linearly independent.

pub mod elim;

use std::collections::HashMap;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::graphs;
use crate::partitions;
use crate::tensors::{self, BasisVector, Monomial, SparseTensor};
use crate::words;

/// Largest `(2n)^m` the brute-force kernel accepts unless overridden.
pub const DEFAULT_BUDGET: u128 = 5000;

/// An element of `sp(2n)` as a `2n × 2n` integer matrix in the coordinates
/// `(p_1..p_n, q_1..q_n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieGenerator {
    n: usize,
    label: String,
    matrix: Vec<Vec<i64>>,
    // nonzero entries of each column
    columns: Vec<Vec<(usize, i64)>>,
}

impl LieGenerator {
    pub fn new(n: usize, label: impl Into<String>, matrix: Vec<Vec<i64>>) -> Result<Self> {
        if matrix.len() != 2 * n || matrix.iter().any(|r| r.len() != 2 * n) {
            return Err(invalid(format!("generator matrix must be {0}x{0}", 2 * n)));
        }
        let columns = (0..2 * n)
            .map(|b| {
                (0..2 * n)
                    .filter(|&a| matrix[a][b] != 0)
                    .map(|a| (a, matrix[a][b]))
                    .collect()
            })
            .collect();
        Ok(Self {
            n,
            label: label.into(),
            matrix,
            columns,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.matrix
    }

    /// `ω(Xu, v) + ω(u, Xv) = 0` on all pairs of basis vectors.
    pub fn preserves_form(&self) -> bool {
        let n = self.n;
        let form = |a: usize, b: usize| -> i64 {
            match (a < n, b < n) {
                (true, false) if b - n == a => 1,
                (false, true) if a - n == b => -1,
                _ => 0,
            }
        };
        (0..2 * n).all(|u| {
            (0..2 * n).all(|v| {
                let lhs: i64 = (0..2 * n).map(|a| self.matrix[a][u] * form(a, v)).sum();
                let rhs: i64 = (0..2 * n).map(|b| form(u, b) * self.matrix[b][v]).sum();
                lhs + rhs == 0
            })
        })
    }
}

/// A basis of `sp(2n)`: matrices `[[A, B], [C, −Aᵀ]]` with `A` a matrix unit
/// and `B`, `C` symmetrised matrix units. `n(2n+1)` generators in total.
pub fn sp_basis(n: usize) -> Result<Vec<LieGenerator>> {
    if n == 0 || n > 127 {
        return Err(invalid(format!("rank n = {n} is out of range")));
    }
    let mut out = Vec::with_capacity(n * (2 * n + 1));
    let zero = || vec![vec![0i64; 2 * n]; 2 * n];
    for i in 0..n {
        for j in 0..n {
            let mut x = zero();
            x[i][j] += 1;
            x[n + j][n + i] -= 1;
            out.push(LieGenerator::new(n, format!("A{},{}", i + 1, j + 1), x)?);
        }
    }
    for i in 0..n {
        for j in i..n {
            let mut b = zero();
            b[i][n + j] = 1;
            b[j][n + i] = 1;
            out.push(LieGenerator::new(n, format!("B{},{}", i + 1, j + 1), b)?);
            let mut c = zero();
            c[n + i][j] = 1;
            c[n + j][i] = 1;
            out.push(LieGenerator::new(n, format!("C{},{}", i + 1, j + 1), c)?);
        }
    }
    Ok(out)
}

/// `Σ_k (1 ⊗ … ⊗ X ⊗ … ⊗ 1) t`, with `X` acting on slot `k`.
pub fn lie_act(x: &LieGenerator, t: &SparseTensor) -> Result<SparseTensor> {
    let n = x.n;
    if t.max_index() > n {
        return Err(invalid(format!(
            "tensor uses index {} but the generator acts on rank {n}",
            t.max_index()
        )));
    }
    let mut acc: HashMap<Monomial, BigInt> = HashMap::new();
    for (mono, c) in t.iter() {
        for (k, b) in mono.factors().iter().enumerate() {
            for &(a, entry) in &x.columns[b.coordinate(n)] {
                let mut image = mono.clone();
                image.factors_mut()[k] = BasisVector::from_coordinate(a, n);
                *acc.entry(image).or_default() += c * entry;
            }
        }
    }
    SparseTensor::from_terms(t.degree(), acc)
}

/// True iff every generator of `sp(2n)` annihilates `t`.
pub fn is_invariant(t: &SparseTensor, n: usize) -> bool {
    let Ok(basis) = sp_basis(n) else {
        return false;
    };
    basis
        .iter()
        .all(|x| lie_act(x, t).is_ok_and(|image| image.is_zero()))
}

/// Dimension of the joint kernel of `sp(2n)` on `V^{⊗m}`, by exact
/// elimination on the stacked action matrices. Fails when `(2n)^m` exceeds
/// `budget`.
pub fn brute_force_invariant_dim(m: usize, n: usize, budget: u128) -> Result<usize> {
    let basis = sp_basis(n)?;
    let dim = 2 * n;
    let required = u32::try_from(m)
        .ok()
        .and_then(|m| (dim as u128).checked_pow(m))
        .unwrap_or(u128::MAX);
    if required > budget {
        return Err(Error::Resource { required, budget });
    }
    let size = required as usize;
    let strides: Vec<usize> = (0..m).map(|k| dim.pow((m - 1 - k) as u32)).collect();

    let mut rows: Vec<elim::SparseRow> = Vec::new();
    for x in &basis {
        // row index = image monomial, column index = source monomial
        let mut image_rows: HashMap<usize, HashMap<usize, i64>> = HashMap::new();
        for source in 0..size {
            for &stride in &strides {
                let coord = source / stride % dim;
                for &(a, entry) in &x.columns[coord] {
                    let image = source - coord * stride + a * stride;
                    *image_rows
                        .entry(image)
                        .or_default()
                        .entry(source)
                        .or_default() += entry;
                }
            }
        }
        for (_, entries) in image_rows {
            let mut row: elim::SparseRow = entries
                .into_iter()
                .filter(|&(_, v)| v != 0)
                .map(|(c, v)| (c, BigInt::from(v)))
                .collect();
            if !row.is_empty() {
                row.sort_unstable_by_key(|e| e.0);
                rows.push(row);
            }
        }
    }
    // sparse rows first keeps fill-in low; ties by leading column for determinism
    rows.sort_by(|a, b| (a.len(), a[0].0).cmp(&(b.len(), b[0].0)));
    Ok(size - elim::rank(rows))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Clone, Debug)]
pub struct CertifyOptions {
    pub brute_force: bool,
    pub budget: u128,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        Self {
            brute_force: false,
            budget: DEFAULT_BUDGET,
        }
    }
}

/// Wall-clock time of each stage, in milliseconds.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Timings {
    pub enumerate_ms: f64,
    pub build_ms: f64,
    pub invariance_ms: f64,
    pub triangularity_ms: f64,
    pub brute_force_ms: Option<f64>,
    pub total_ms: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CertificationReport {
    pub m: usize,
    pub n: usize,
    pub graph_count: u128,
    pub dp_count: u128,
    pub brute_force_dim: Option<u128>,
    /// Every `t_G` is killed by every generator.
    pub all_invariant: bool,
    /// The least monomial of each `t_G` is `b_{α(G)}` with a positive
    /// coefficient.
    pub minimal_monomials_match: bool,
    /// No `t_G` has a nonzero coefficient on `b_{α(H)}` for `H` before `G`.
    pub triangular: bool,
    pub diagonal_nonzero: bool,
    pub verdict: Verdict,
    /// Human-readable description of each failed check, empty on a pass.
    pub failures: Vec<String>,
    pub timings: Timings,
}

fn millis(since: Instant) -> f64 {
    since.elapsed().as_secs_f64() * 1000.0
}

/// Builds every `t_G` for `m` vertices and `n` pages and runs all checks.
pub fn certify_basis(m: usize, n: usize, options: &CertifyOptions) -> Result<CertificationReport> {
    if n == 0 {
        return Err(invalid("rank n must be at least 1"));
    }
    let start = Instant::now();
    let mut timings = Timings::default();
    let mut failures = Vec::new();

    let clock = Instant::now();
    let words = words::enumerate_balanced_words(m, n);
    let graphs = graphs::enumerate_graphs(m, n);
    let dp_count = partitions::invariant_dimension(m, n)?;
    timings.enumerate_ms = millis(clock);
    let graph_count = graphs.len() as u128;
    if graph_count != dp_count {
        failures.push(format!(
            "graph count {graph_count} != S-tris count {dp_count}"
        ));
    }

    let brute_force_dim = if options.brute_force {
        let clock = Instant::now();
        let dim = brute_force_invariant_dim(m, n, options.budget)? as u128;
        timings.brute_force_ms = Some(millis(clock));
        if dim != graph_count {
            failures.push(format!(
                "graph count {graph_count} != kernel dimension {dim}"
            ));
        }
        Some(dim)
    } else {
        None
    };

    let clock = Instant::now();
    let tensors: Vec<SparseTensor> = graphs
        .par_iter()
        .map(|g| tensors::build_invariant(g, n))
        .collect::<Result<_>>()?;
    timings.build_ms = millis(clock);

    let clock = Instant::now();
    let generators = sp_basis(n)?;
    let non_invariant: Vec<usize> = tensors
        .par_iter()
        .enumerate()
        .filter(|(_, t)| {
            !generators
                .iter()
                .all(|x| lie_act(x, t).is_ok_and(|image| image.is_zero()))
        })
        .map(|(i, _)| i)
        .collect();
    timings.invariance_ms = millis(clock);
    for &i in &non_invariant {
        failures.push(format!("t_G for word {} is not invariant", words[i]));
    }

    let clock = Instant::now();
    let columns: Vec<Monomial> = words
        .iter()
        .map(|w| tensors::word_monomial(w.letters(), n))
        .collect::<Result<_>>()?;
    let mut minimal_monomials_match = true;
    let mut triangular = true;
    let mut diagonal_nonzero = true;
    for (i, t) in tensors.iter().enumerate() {
        match tensors::minimal_monomial(t) {
            Ok((mono, c)) if mono == columns[i] && c.is_positive() => {}
            Ok((mono, c)) => {
                minimal_monomials_match = false;
                failures.push(format!(
                    "least monomial of t_G for word {} is {c}·{mono}, expected {}",
                    words[i], columns[i]
                ));
            }
            Err(_) => {
                minimal_monomials_match = false;
                failures.push(format!("t_G for word {} is zero", words[i]));
            }
        }
        if t.coefficient(&columns[i]).is_zero() {
            diagonal_nonzero = false;
            failures.push(format!("diagonal entry for word {} is zero", words[i]));
        }
        if let Some(j) = (0..i).find(|&j| !t.coefficient(&columns[j]).is_zero()) {
            triangular = false;
            failures.push(format!(
                "t_G for word {} has a nonzero entry in column {}",
                words[i], words[j]
            ));
        }
    }
    timings.triangularity_ms = millis(clock);
    timings.total_ms = millis(start);

    let all_invariant = non_invariant.is_empty();
    let verdict = if failures.is_empty() {
        Verdict::Pass
    } else {
        Verdict::Fail
    };
    Ok(CertificationReport {
        m,
        n,
        graph_count,
        dp_count,
        brute_force_dim,
        all_invariant,
        minimal_monomials_match,
        triangular,
        diagonal_nonzero,
        verdict,
        failures,
        timings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{Edge, WaveGraph};
    use crate::tensors::{omega, permute, wedge, Permutation};
    use num_bigint::BigInt;

    fn mono(s: &str) -> Monomial {
        Monomial::new(s.split_whitespace().map(|t| t.parse().unwrap()).collect())
    }

    fn t(degree: usize, terms: &[(&str, i64)]) -> SparseTensor {
        SparseTensor::from_terms(
            degree,
            terms.iter().map(|&(m, c)| (mono(m), BigInt::from(c))),
        )
        .unwrap()
    }

    /// Oracle: integer rank of the generators flattened to vectors.
    fn matrix_rank(gens: &[LieGenerator]) -> usize {
        elim::rank(gens.iter().map(|g| {
            g.matrix()
                .iter()
                .flatten()
                .enumerate()
                .filter(|(_, &x)| x != 0)
                .map(|(i, &x)| (i, BigInt::from(x)))
                .collect()
        }))
    }

    #[test]
    fn sp_basis_sizes_and_independence() {
        for (n, dim) in [(1, 3), (2, 10), (3, 21)] {
            let gens = sp_basis(n).unwrap();
            assert_eq!(gens.len(), dim);
            assert_eq!(matrix_rank(&gens), dim);
            assert!(gens.iter().all(LieGenerator::preserves_form));
        }
        assert!(sp_basis(0).is_err());
    }

    #[test]
    fn form_check_rejects_gl_elements() {
        // diag(1, 1) scales ω
        let x = LieGenerator::new(1, "I", vec![vec![1, 0], vec![0, 1]]).unwrap();
        assert!(!x.preserves_form());
        assert!(LieGenerator::new(1, "bad", vec![vec![1]]).is_err());
    }

    #[test]
    fn lie_act_examples() {
        let h = LieGenerator::new(1, "h", vec![vec![1, 0], vec![0, -1]]).unwrap();
        assert!(lie_act(&h, &t(2, &[("p1 q1", 1)])).unwrap().is_zero());
        let e = LieGenerator::new(1, "e", vec![vec![0, 1], vec![0, 0]]).unwrap();
        assert!(lie_act(&e, &omega(1).unwrap()).unwrap().is_zero());
        // single Leibniz term survives on a non-invariant input
        assert_eq!(
            lie_act(&e, &t(2, &[("q1 q1", 1)])).unwrap(),
            t(2, &[("p1 q1", 1), ("q1 p1", 1)])
        );
        assert!(lie_act(&h, &SparseTensor::zero(3)).unwrap().is_zero());
        assert!(lie_act(&h, &t(1, &[("p2", 1)])).is_err());
    }

    #[test]
    fn invariance_examples() {
        for n in 1..=3 {
            assert!(is_invariant(&omega(n).unwrap(), n));
        }
        assert!(!is_invariant(&t(2, &[("p1 q1", 1)]), 1));
        assert!(!is_invariant(&t(2, &[("p1 q1", 1)]), 2));
        // ω_1 is not invariant for the larger group
        assert!(!is_invariant(&omega(1).unwrap(), 2));
        assert!(is_invariant(&SparseTensor::scalar(5), 2));
    }

    #[test]
    fn action_commutes_with_slot_permutations() {
        let n = 2;
        let w = omega(n).unwrap();
        let base = wedge(&t(1, &[("p1", 1), ("q2", 3)]), &w);
        let sigma = Permutation::new(vec![3, 1, 2]).unwrap();
        for x in sp_basis(n).unwrap() {
            let lhs = lie_act(&x, &permute(&base, &sigma).unwrap()).unwrap();
            let rhs = permute(&lie_act(&x, &base).unwrap(), &sigma).unwrap();
            assert_eq!(lhs, rhs, "{}", x.label());
        }
    }

    #[test]
    fn brute_force_examples() {
        assert_eq!(brute_force_invariant_dim(2, 1, DEFAULT_BUDGET).unwrap(), 1);
        assert_eq!(brute_force_invariant_dim(4, 2, DEFAULT_BUDGET).unwrap(), 3);
        assert_eq!(brute_force_invariant_dim(3, 2, DEFAULT_BUDGET).unwrap(), 0);
        assert_eq!(brute_force_invariant_dim(0, 2, DEFAULT_BUDGET).unwrap(), 1);
        assert_eq!(
            brute_force_invariant_dim(7, 2, DEFAULT_BUDGET),
            Err(Error::Resource {
                required: 16384,
                budget: 5000
            })
        );
    }

    #[test]
    fn certify_examples() {
        let r = certify_basis(
            2,
            1,
            &CertifyOptions {
                brute_force: true,
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(
            (r.graph_count, r.dp_count, r.brute_force_dim),
            (1, 1, Some(1))
        );
        assert_eq!(r.verdict, Verdict::Pass);

        let r = certify_basis(3, 2, &CertifyOptions::default()).unwrap();
        assert_eq!((r.graph_count, r.dp_count, r.brute_force_dim), (0, 0, None));
        assert_eq!(r.verdict, Verdict::Pass);

        let r = certify_basis(4, 3, &CertifyOptions::default()).unwrap();
        assert_eq!(r.verdict, Verdict::Pass, "{:?}", r.failures);

        let err = certify_basis(
            8,
            2,
            &CertifyOptions {
                brute_force: true,
                ..Default::default()
            },
        );
        assert!(matches!(err, Err(Error::Resource { .. })));
    }

    #[test]
    fn graph_tensors_are_dependent_at_degree_eight() {
        let n = 2;
        let rows = crate::words::enumerate_balanced_words(8, n)
            .into_iter()
            .map(|w| {
                let g = crate::graphs::word_to_graph(w.letters(), n).unwrap();
                let tg = tensors::build_invariant(&g, n).unwrap();
                let mut row: elim::SparseRow = tg
                    .iter()
                    .map(|(mono, c)| {
                        let col = mono
                            .factors()
                            .iter()
                            .fold(0, |acc, b| acc * 2 * n + b.coordinate(n));
                        (col, c.clone())
                    })
                    .collect();
                row.sort_by_key(|e| e.0);
                row
            });
        assert_eq!(elim::rank(rows), 83);

        let r = certify_basis(8, n, &CertifyOptions::default()).unwrap();
        assert_eq!(r.graph_count, 84);
        assert!(r.all_invariant);
        assert!(!r.triangular);
        assert_eq!(r.verdict, Verdict::Fail);
    }

    #[test]
    fn report_json_field_names() {
        let r = certify_basis(2, 1, &CertifyOptions::default()).unwrap();
        let v = serde_json::to_value(&r).unwrap();
        for key in [
            "m",
            "n",
            "graph_count",
            "dp_count",
            "brute_force_dim",
            "all_invariant",
            "minimal_monomials_match",
            "triangular",
            "diagonal_nonzero",
            "verdict",
            "failures",
            "timings",
        ] {
            assert!(v.get(key).is_some(), "missing {key}");
        }
        assert_eq!(v["verdict"], "pass");
    }

    #[test]
    fn broken_tensor_fails_invariance() {
        // sanity check that the invariance check is not vacuous on graph tensors
        let g = WaveGraph::new(4, vec![Edge::new(1, 2, 1), Edge::new(3, 4, 1)]).unwrap();
        let mut tg = tensors::build_invariant(&g, 2).unwrap();
        tg = &tg + &t(4, &[("p1 p1 q1 q1", 1)]);
        assert!(!is_invariant(&tg, 2));
    }
}
