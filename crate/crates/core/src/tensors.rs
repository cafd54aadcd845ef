//! Exact sparse tensors in `V^{⊗m}` over the basis `p_1..p_n, q_1..q_n`.
//!
//! Permutations act on tensor slots with a fixed convention: `t^σ` carries the
//! `k`-th factor of `t` at position `σ(k)`.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::graphs::{self, WaveGraph};
use crate::words::Letter;

/// `p_i` or `q_i`, ordered `p_1 < … < p_n < q_n < … < q_1`.
#[derive(Copy, Clone, PartialEq, Eq, Hash, Debug)]
pub struct BasisVector(i8);

#[derive(Copy, Clone, PartialEq, Eq, Hash, Debug)]
pub enum Kind {
    P,
    Q,
}

impl BasisVector {
    pub fn p(i: usize) -> Self {
        Self::from(Letter::plus(i))
    }

    pub fn q(i: usize) -> Self {
        Self::from(Letter::minus(i))
    }

    pub fn kind(self) -> Kind {
        if self.0 > 0 {
            Kind::P
        } else {
            Kind::Q
        }
    }

    pub fn index(self) -> usize {
        self.0.unsigned_abs() as usize
    }

    /// Position in the total order: `p_i ↦ i−1`, `q_i ↦ 2n−i`.
    pub fn rank(self, n: usize) -> usize {
        match self.kind() {
            Kind::P => self.index() - 1,
            Kind::Q => 2 * n - self.index(),
        }
    }

    /// Coordinate in the vector `(p_1..p_n, q_1..q_n)` used by matrices.
    pub fn coordinate(self, n: usize) -> usize {
        match self.kind() {
            Kind::P => self.index() - 1,
            Kind::Q => n + self.index() - 1,
        }
    }

    pub fn from_coordinate(c: usize, n: usize) -> Self {
        if c < n {
            Self::p(c + 1)
        } else {
            Self::q(c - n + 1)
        }
    }

    fn order_key(self) -> (bool, i8) {
        (self.0 < 0, self.0)
    }
}

impl From<Letter> for BasisVector {
    /// `b_i`: `+i ↦ p_i`, `−i ↦ q_i`.
    fn from(l: Letter) -> Self {
        BasisVector(l.value() as i8)
    }
}

impl Ord for BasisVector {
    fn cmp(&self, other: &Self) -> Ordering {
        self.order_key().cmp(&other.order_key())
    }
}

impl PartialOrd for BasisVector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for BasisVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self.kind() {
            Kind::P => 'p',
            Kind::Q => 'q',
        };
        write!(f, "{c}{}", self.index())
    }
}

impl FromStr for BasisVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || invalid(format!("bad basis vector {s:?}"));
        let (head, tail) = s.split_at_checked(1).ok_or_else(bad)?;
        let i: usize = tail.parse().map_err(|_| bad())?;
        if !(1..=127).contains(&i) {
            return Err(bad());
        }
        match head {
            "p" => Ok(Self::p(i)),
            "q" => Ok(Self::q(i)),
            _ => Err(bad()),
        }
    }
}

/// A basis tensor `b_1 ⊗ … ⊗ b_m`, ordered lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Monomial(Vec<BasisVector>);

impl Monomial {
    pub fn new(factors: Vec<BasisVector>) -> Self {
        Self(factors)
    }

    pub fn factors(&self) -> &[BasisVector] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub(crate) fn factors_mut(&mut self) -> &mut [BasisVector] {
        &mut self.0
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (i, b) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str("⊗")?;
            }
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

/// Finite integer combination of degree-`m` monomials; zero coefficients are
/// never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseTensor {
    degree: usize,
    terms: HashMap<Monomial, BigInt>,
}

impl SparseTensor {
    pub fn zero(degree: usize) -> Self {
        Self {
            degree,
            terms: HashMap::new(),
        }
    }

    /// The degree-0 tensor `c`.
    pub fn scalar(c: impl Into<BigInt>) -> Self {
        let mut t = Self::zero(0);
        t.add_term(Monomial::new(Vec::new()), c.into());
        t
    }

    pub fn from_terms<I>(degree: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Monomial, BigInt)>,
    {
        let mut t = Self::zero(degree);
        for (mono, c) in terms {
            if mono.degree() != degree {
                return Err(invalid(format!(
                    "monomial {mono} has degree {}, expected {degree}",
                    mono.degree()
                )));
            }
            t.add_term(mono, c);
        }
        Ok(t)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Number of stored (nonzero) terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    pub fn coefficient(&self, mono: &Monomial) -> BigInt {
        self.terms.get(mono).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    /// Terms in monomial order.
    pub fn sorted_terms(&self) -> Vec<(&Monomial, &BigInt)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_unstable_by(|a, b| a.0.cmp(b.0));
        v
    }

    /// Largest basis index among all factors.
    pub fn max_index(&self) -> usize {
        self.terms
            .keys()
            .flat_map(|m| m.factors().iter().map(|b| b.index()))
            .max()
            .unwrap_or(0)
    }

    pub(crate) fn add_term(&mut self, mono: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(mono) {
            std::collections::hash_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
            std::collections::hash_map::Entry::Vacant(e) => {
                e.insert(c);
            }
        }
    }

    pub fn scale(&self, c: &BigInt) -> SparseTensor {
        if c.is_zero() {
            return SparseTensor::zero(self.degree);
        }
        SparseTensor {
            degree: self.degree,
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    /// `self ⊗ other`.
    pub fn tensor(&self, other: &SparseTensor) -> SparseTensor {
        let mut out = SparseTensor::zero(self.degree + other.degree);
        out.terms.reserve(self.len() * other.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let mut f = Vec::with_capacity(out.degree);
                f.extend_from_slice(ma.factors());
                f.extend_from_slice(mb.factors());
                out.terms.insert(Monomial(f), ca * cb);
            }
        }
        out
    }

    pub fn to_document(&self, n: usize) -> TensorDocument {
        TensorDocument {
            m: self.degree,
            n,
            terms: self
                .sorted_terms()
                .into_iter()
                .map(|(mono, c)| TermDocument {
                    monomial: mono.factors().to_vec(),
                    coeff: c.to_string(),
                })
                .collect(),
        }
    }

    fn combine(&self, other: &SparseTensor, sign: i8) -> SparseTensor {
        assert_eq!(self.degree, other.degree, "degree mismatch");
        let mut out = self.clone();
        for (m, c) in &other.terms {
            let c = if sign < 0 { -c } else { c.clone() };
            out.add_term(m.clone(), c);
        }
        out
    }
}

impl Add for &SparseTensor {
    type Output = SparseTensor;

    fn add(self, rhs: &SparseTensor) -> SparseTensor {
        self.combine(rhs, 1)
    }
}

impl Sub for &SparseTensor {
    type Output = SparseTensor;

    fn sub(self, rhs: &SparseTensor) -> SparseTensor {
        self.combine(rhs, -1)
    }
}

impl Neg for &SparseTensor {
    type Output = SparseTensor;

    fn neg(self) -> SparseTensor {
        SparseTensor {
            degree: self.degree,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl fmt::Display for SparseTensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.sorted_terms().into_iter().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let a = c.abs();
            if !a.is_one() {
                write!(f, "{a}·")?;
            }
            write!(f, "{m}")?;
        }
        Ok(())
    }
}

/// JSON form of a tensor. Coefficients are decimal strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TensorDocument {
    pub m: usize,
    pub n: usize,
    pub terms: Vec<TermDocument>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermDocument {
    #[serde(with = "basis_names")]
    pub monomial: Vec<BasisVector>,
    pub coeff: String,
}

impl TensorDocument {
    pub fn to_tensor(&self) -> Result<SparseTensor> {
        let terms = self
            .terms
            .iter()
            .map(|t| {
                let c: BigInt = t
                    .coeff
                    .parse()
                    .map_err(|_| invalid(format!("bad coefficient {:?}", t.coeff)))?;
                Ok((Monomial::new(t.monomial.clone()), c))
            })
            .collect::<Result<Vec<_>>>()?;
        SparseTensor::from_terms(self.m, terms)
    }
}

mod basis_names {
    use super::BasisVector;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[BasisVector], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(|b| b.to_string()))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BasisVector>, D::Error> {
        Vec::<String>::deserialize(d)?
            .iter()
            .map(|s| s.parse().map_err(D::Error::custom))
            .collect()
    }
}

/// A bijection of `1..=m`; entry `k` of `images` is `σ(k)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation {
    // 0-based internally
    images: Vec<usize>,
}

impl Permutation {
    /// From 1-based images.
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let m = images.len();
        let mut seen = vec![false; m];
        for &x in &images {
            if x == 0 || x > m || std::mem::replace(&mut seen[x - 1], true) {
                return Err(invalid(format!(
                    "{images:?} is not a permutation of 1..={m}"
                )));
            }
        }
        Ok(Self {
            images: images.into_iter().map(|x| x - 1).collect(),
        })
    }

    pub fn identity(m: usize) -> Self {
        Self {
            images: (0..m).collect(),
        }
    }

    /// Product of cycles in 1-based notation; `(a b c)` sends `a ↦ b ↦ c ↦ a`.
    /// Cycles are applied right to left.
    pub fn from_cycles(m: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut result = Self::identity(m);
        for cycle in cycles.iter().rev() {
            let mut images: Vec<usize> = (1..=m).collect();
            for (i, &a) in cycle.iter().enumerate() {
                let b = cycle[(i + 1) % cycle.len()];
                if a == 0 || a > m || b == 0 || b > m {
                    return Err(invalid(format!("cycle {cycle:?} leaves 1..={m}")));
                }
                images[a - 1] = b;
            }
            let c = Self::new(images)?;
            result = c.compose(&result);
        }
        Ok(result)
    }

    pub fn size(&self) -> usize {
        self.images.len()
    }

    /// `σ(k)`, 1-based.
    pub fn apply(&self, k: usize) -> usize {
        self.images[k - 1] + 1
    }

    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|x| x + 1).collect()
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.size(), other.size(), "size mismatch");
        Permutation {
            images: other.images.iter().map(|&x| self.images[x]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.size()];
        for (k, &x) in self.images.iter().enumerate() {
            inv[x] = k;
        }
        Permutation { images: inv }
    }

    /// `inv σ`, the number of pairs `i < j` with `σ(i) > σ(j)`.
    pub fn inversions(&self) -> usize {
        let v = &self.images;
        (0..v.len())
            .map(|i| v[i + 1..].iter().filter(|&&x| x < v[i]).count())
            .sum()
    }
}

/// `t^σ`: the `k`-th factor of each monomial moves to position `σ(k)`.
pub fn permute(t: &SparseTensor, sigma: &Permutation) -> Result<SparseTensor> {
    if t.degree != sigma.size() {
        return Err(invalid(format!(
            "permutation of {} points applied to a degree-{} tensor",
            sigma.size(),
            t.degree
        )));
    }
    let mut out = SparseTensor::zero(t.degree);
    out.terms.reserve(t.len());
    for (mono, c) in &t.terms {
        let mut f = mono.0.clone();
        for (k, &b) in mono.0.iter().enumerate() {
            f[sigma.images[k]] = b;
        }
        out.terms.insert(Monomial(f), c.clone());
    }
    Ok(out)
}

/// Shuffle wedge product of a degree-`k` and a degree-`(m−k)` tensor:
/// the factors of `a` go to positions `i_1 < … < i_k`, those of `b` fill the
/// rest in order, with sign `(−1)^{Σ (i_j − j)}`.
pub fn wedge(a: &SparseTensor, b: &SparseTensor) -> SparseTensor {
    let k = a.degree;
    let m = a.degree + b.degree;
    let mut out = SparseTensor::zero(m);
    if a.is_zero() || b.is_zero() {
        return out;
    }
    let products: Vec<(&Monomial, &Monomial, BigInt)> = a
        .terms
        .iter()
        .flat_map(|(ma, ca)| b.terms.iter().map(move |(mb, cb)| (ma, mb, ca * cb)))
        .collect();
    let mut chosen: Vec<usize> = (0..k).collect();
    let mut rest = Vec::with_capacity(m - k);
    loop {
        rest.clear();
        let mut next = 0;
        for pos in 0..m {
            if next < k && chosen[next] == pos {
                next += 1;
            } else {
                rest.push(pos);
            }
        }
        let shift: usize = chosen.iter().enumerate().map(|(j, &i)| i - j).sum();
        let negative = shift % 2 == 1;
        for (ma, mb, c) in &products {
            let mut f = vec![BasisVector(1); m];
            for (j, &pos) in chosen.iter().enumerate() {
                f[pos] = ma.0[j];
            }
            for (j, &pos) in rest.iter().enumerate() {
                f[pos] = mb.0[j];
            }
            out.add_term(Monomial(f), if negative { -c } else { c.clone() });
        }
        if !next_combination(&mut chosen, m) {
            break;
        }
    }
    out
}

// Advances to the next k-subset of 0..m in lexicographic order.
fn next_combination(c: &mut [usize], m: usize) -> bool {
    let k = c.len();
    let Some(i) = (0..k).rev().find(|&i| c[i] < m - k + i) else {
        return false;
    };
    c[i] += 1;
    for j in i + 1..k {
        c[j] = c[j - 1] + 1;
    }
    true
}

/// `ω = Σ_i (p_i ⊗ q_i − q_i ⊗ p_i)`.
pub fn omega(n: usize) -> Result<SparseTensor> {
    if n == 0 {
        return Err(invalid("omega needs n >= 1"));
    }
    if n > 127 {
        return Err(invalid(format!("rank {n} is too large")));
    }
    let mut t = SparseTensor::zero(2);
    for i in 1..=n {
        let (p, q) = (BasisVector::p(i), BasisVector::q(i));
        t.add_term(Monomial(vec![p, q]), BigInt::one());
        t.add_term(Monomial(vec![q, p]), -BigInt::one());
    }
    Ok(t)
}

/// `b_α = b_{α_1} ⊗ … ⊗ b_{α_m}`.
pub fn word_monomial(w: &[Letter], n: usize) -> Result<Monomial> {
    if let Some(l) = w.iter().find(|l| l.magnitude() > n) {
        return Err(invalid(format!("letter {l} is outside C_{n}")));
    }
    Ok(Monomial(w.iter().map(|&l| BasisVector::from(l)).collect()))
}

/// The least monomial with nonzero coefficient, and that coefficient.
pub fn minimal_monomial(t: &SparseTensor) -> Result<(Monomial, BigInt)> {
    t.terms
        .iter()
        .min_by(|a, b| a.0.cmp(b.0))
        .map(|(m, c)| (m.clone(), c.clone()))
        .ok_or(Error::EmptyTensor)
}

/// The invariant `t_G`: `ω` for a single edge, `ω ∧ t_B` for a longer path
/// with word `1 β 1̄` (where `B` has the word `β` with every magnitude
/// lowered by one), and for a disconnected graph the product of the component
/// through vertex 1 with the rest, permuted into place.
pub fn build_invariant(g: &WaveGraph, n: usize) -> Result<SparseTensor> {
    if n == 0 || n > 127 || !graphs::validate(g, n) {
        return Err(invalid(format!("not a wave graph with {n} pages: {g}")));
    }
    build_valid(g, n)
}

/// `(t_{G|left} ⊗ t_{G|right})^σ` for a union of components `left` (sorted
/// vertices) and its complement `right`, with `σ` putting each factor back on
/// its vertex.
pub fn split_product(g: &WaveGraph, n: usize, left: &[usize]) -> Result<SparseTensor> {
    if n == 0 || n > 127 || !graphs::validate(g, n) {
        return Err(invalid(format!("not a wave graph with {n} pages: {g}")));
    }
    let mut in_left = vec![false; g.m() + 1];
    for &v in left {
        if v == 0 || v > g.m() {
            return Err(invalid(format!("vertex {v} is not in 1..={}", g.m())));
        }
        in_left[v] = true;
    }
    if g.edges().iter().any(|e| in_left[e.u] != in_left[e.v]) {
        return Err(invalid("split separates the endpoints of an edge"));
    }
    let left: Vec<usize> = (1..=g.m()).filter(|&v| in_left[v]).collect();
    let right: Vec<usize> = (1..=g.m()).filter(|&v| !in_left[v]).collect();
    split_valid(g, n, &left, &right)
}

fn split_valid(g: &WaveGraph, n: usize, left: &[usize], right: &[usize]) -> Result<SparseTensor> {
    let t_left = build_valid(&g.restrict(left)?, n)?;
    let t_right = build_valid(&g.restrict(right)?, n)?;
    let sigma = Permutation::new(left.iter().chain(right).copied().collect())?;
    permute(&t_left.tensor(&t_right), &sigma)
}

fn build_valid(g: &WaveGraph, n: usize) -> Result<SparseTensor> {
    if g.m() == 0 {
        return Ok(SparseTensor::scalar(1));
    }
    let components = g.components();
    if components.len() > 1 {
        let left = &components[0];
        let mut right: Vec<usize> = components[1..].concat();
        right.sort_unstable();
        return split_valid(g, n, left, &right);
    }
    if g.m() == 2 {
        return omega(n);
    }
    let word = graphs::graph_to_word(g)?;
    let letters = word.letters();
    let inner: Vec<Letter> = letters[1..letters.len() - 1]
        .iter()
        .map(|l| l.with_magnitude(l.magnitude() - 1))
        .collect();
    let b = graphs::word_to_graph(&inner, n)?;
    Ok(wedge(&omega(n)?, &build_valid(&b, n)?))
}
