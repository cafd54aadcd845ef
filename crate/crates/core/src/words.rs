//! Symplectic lattice words over `C_n = {1, …, n, 1̄, …, n̄}`.
//!
//! Letters are stored as nonzero signed integers: `+i` is the letter `i` and
//! `-i` is the overlined letter `ī`. Letters are ordered
//! `1 < 2 < … < n < n̄ < … < 2̄ < 1̄`, which is the order of the basis
//! `p_1 < … < p_n < q_n < … < q_1` under `+i ↦ p_i`, `-i ↦ q_i`. Words compare
//! lexicographically in that order, so word order and monomial order agree.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

/// One letter of `C_n`.
#[derive(Copy, Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(try_from = "i32", into = "i32")]
pub struct Letter(i8);

impl Letter {
    pub fn new(value: i32) -> Result<Self> {
        if value == 0 {
            return Err(invalid("letter 0 is not in any alphabet"));
        }
        i8::try_from(value)
            .ok()
            .filter(|v| *v != i8::MIN)
            .map(Letter)
            .ok_or_else(|| invalid(format!("letter {value} is out of range")))
    }

    /// The letter `i`.
    pub fn plus(i: usize) -> Self {
        assert!((1..=127).contains(&i), "letter index {i} out of range");
        Letter(i as i8)
    }

    /// The overlined letter `ī`.
    pub fn minus(i: usize) -> Self {
        assert!((1..=127).contains(&i), "letter index {i} out of range");
        Letter(-(i as i8))
    }

    pub fn value(self) -> i32 {
        i32::from(self.0)
    }

    /// `|i|`.
    pub fn magnitude(self) -> usize {
        self.0.unsigned_abs() as usize
    }

    /// `sgn i`, either `1` or `-1`.
    pub fn sign(self) -> i8 {
        self.0.signum()
    }

    pub fn is_positive(self) -> bool {
        self.0 > 0
    }

    /// Same sign, new magnitude.
    pub fn with_magnitude(self, k: usize) -> Self {
        if self.is_positive() {
            Letter::plus(k)
        } else {
            Letter::minus(k)
        }
    }

    fn order_key(self) -> (bool, i8) {
        (self.0 < 0, self.0)
    }
}

impl Ord for Letter {
    fn cmp(&self, other: &Self) -> Ordering {
        self.order_key().cmp(&other.order_key())
    }
}

impl PartialOrd for Letter {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl TryFrom<i32> for Letter {
    type Error = Error;

    fn try_from(v: i32) -> Result<Self> {
        Letter::new(v)
    }
}

impl From<Letter> for i32 {
    fn from(l: Letter) -> Self {
        l.value()
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Parses the text form of a word: whitespace-separated signed integers,
/// e.g. `"1 2 -2 -1"`.
pub fn parse_letters(s: &str) -> Result<Vec<Letter>> {
    s.split_whitespace()
        .map(|tok| {
            tok.parse::<i32>()
                .map_err(|_| invalid(format!("bad letter {tok:?}")))
                .and_then(Letter::new)
                .map_err(|_| invalid(format!("bad letter {tok:?}")))
        })
        .collect()
}

/// Formats letters in the text form accepted by [`parse_letters`].
pub fn format_letters(letters: &[Letter]) -> String {
    letters
        .iter()
        .map(|l| l.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

/// A word all of whose prefix weights are partitions of length `≤ n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticeWord {
    letters: Vec<Letter>,
    n: usize,
}

impl LatticeWord {
    pub fn new(letters: Vec<Letter>, n: usize) -> Result<Self> {
        if !is_symplectic_lattice_word(&letters, n) {
            return Err(invalid(format!(
                "\"{}\" is not a symplectic lattice word over C_{n}",
                format_letters(&letters)
            )));
        }
        Ok(Self { letters, n })
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    /// Alphabet bound.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_balanced(&self) -> bool {
        is_balanced(&self.letters)
    }

    /// Final weight `(τ_1, …, τ_n)`.
    pub fn weight(&self) -> Vec<i64> {
        let mut tau = vec![0i64; self.n];
        for l in &self.letters {
            tau[l.magnitude() - 1] += i64::from(l.sign());
        }
        tau
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.letters
    }
}

impl fmt::Display for LatticeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_letters(&self.letters))
    }
}

/// True iff every letter lies in `C_n` and every prefix weight
/// `τ_i = #i − #ī` satisfies `τ_1 ≥ τ_2 ≥ … ≥ τ_n ≥ 0`.
pub fn is_symplectic_lattice_word(w: &[Letter], n: usize) -> bool {
    let mut tau = vec![0i64; n];
    for &l in w {
        let i = l.magnitude();
        if i > n {
            return false;
        }
        let i = i - 1;
        if l.is_positive() {
            tau[i] += 1;
            if i > 0 && tau[i - 1] < tau[i] {
                return false;
            }
        } else {
            tau[i] -= 1;
            if tau[i] < 0 || (i + 1 < n && tau[i] < tau[i + 1]) {
                return false;
            }
        }
    }
    true
}

/// True iff each `i` occurs as often as `ī`.
pub fn is_balanced(w: &[Letter]) -> bool {
    let top = w.iter().map(|l| l.magnitude()).max().unwrap_or(0);
    let mut tau = vec![0i64; top + 1];
    for l in w {
        tau[l.magnitude()] += i64::from(l.sign());
    }
    tau.iter().all(|&t| t == 0)
}

/// All balanced symplectic lattice words of length `m` over `C_n`, in word
/// order.
pub fn enumerate_balanced_words(m: usize, n: usize) -> Vec<LatticeWord> {
    let mut out = Vec::new();
    if m % 2 == 1 || n == 0 {
        return out;
    }
    let alphabet: Vec<Letter> = (1..=n)
        .map(Letter::plus)
        .chain((1..=n).rev().map(Letter::minus))
        .collect();
    let mut tau = vec![0i64; n];
    let mut prefix = Vec::with_capacity(m);
    extend_words(m, n, &alphabet, &mut tau, 0, &mut prefix, &mut out);
    out
}

fn extend_words(
    m: usize,
    n: usize,
    alphabet: &[Letter],
    tau: &mut [i64],
    size: i64,
    prefix: &mut Vec<Letter>,
    out: &mut Vec<LatticeWord>,
) {
    let remaining = (m - prefix.len()) as i64;
    if remaining == 0 {
        out.push(LatticeWord {
            letters: prefix.clone(),
            n,
        });
        return;
    }
    for &l in alphabet {
        let i = l.magnitude() - 1;
        let step = i64::from(l.sign());
        let legal = if step > 0 {
            // the board must still be clearable in the remaining moves
            size < remaining - 1 && (i == 0 || tau[i - 1] > tau[i])
        } else {
            tau[i] > 0 && (i + 1 == n || tau[i] > tau[i + 1])
        };
        if !legal {
            continue;
        }
        tau[i] += step;
        prefix.push(l);
        extend_words(m, n, alphabet, tau, size + step, prefix, out);
        prefix.pop();
        tau[i] -= step;
    }
}

/// A sign word over `{+1, −1}`.
///
/// Ordered inverse-lexicographically: `+1 ≺ −1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Pattern {
    signs: Vec<i8>,
}

impl Pattern {
    pub fn new(signs: Vec<i8>) -> Result<Self> {
        if let Some(s) = signs.iter().find(|&&s| s != 1 && s != -1) {
            return Err(Error::InvalidPattern(format!("entry {s} is not ±1")));
        }
        Ok(Self { signs })
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    pub fn len(&self) -> usize {
        self.signs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.signs.is_empty()
    }

    /// `s_0, s_1, …, s_m`; `s_k` is the sum of the first `k` entries.
    pub fn prefix_sums(&self) -> Vec<i64> {
        std::iter::once(0)
            .chain(self.signs.iter().scan(0i64, |s, &d| {
                *s += i64::from(d);
                Some(*s)
            }))
            .collect()
    }

    /// Zero total and no negative prefix sum.
    pub fn is_valid(&self) -> bool {
        let sums = self.prefix_sums();
        sums.iter().all(|&s| s >= 0) && sums.last() == Some(&0)
    }
}

impl Ord for Pattern {
    fn cmp(&self, other: &Self) -> Ordering {
        // +1 before -1
        let key = |p: &Pattern| p.signs.iter().map(|&s| -s).collect::<Vec<_>>();
        key(self).cmp(&key(other))
    }
}

impl PartialOrd for Pattern {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// The sign word `(sgn α_1, …, sgn α_m)`.
pub fn pattern(w: &[Letter]) -> Pattern {
    Pattern {
        signs: w.iter().map(|l| l.sign()).collect(),
    }
}

/// The smallest alternating word with pattern `delta`: letter `k` has
/// magnitude `max(s_k, s_{k−1})` and sign `δ_k`.
pub fn lat(delta: &Pattern, n: usize) -> Result<LatticeWord> {
    let sums = delta.prefix_sums();
    if let Some(k) = sums.iter().position(|&s| s < 0) {
        return Err(Error::InvalidPattern(format!(
            "prefix sum s_{k} is negative"
        )));
    }
    if sums.last() != Some(&0) {
        return Err(Error::InvalidPattern(format!(
            "total is {}, expected 0",
            sums.last().copied().unwrap_or(0)
        )));
    }
    let mut letters = Vec::with_capacity(delta.len());
    for (k, &d) in delta.signs.iter().enumerate() {
        let mag = sums[k].max(sums[k + 1]) as usize;
        if mag > n {
            return Err(Error::AlphabetOverflow { needed: mag, n });
        }
        letters.push(if d > 0 {
            Letter::plus(mag)
        } else {
            Letter::minus(mag)
        });
    }
    Ok(LatticeWord { letters, n })
}

/// Membership of a balanced word in the alternation classes `M ⊇ M⁺`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum AlternationClass {
    NotInM,
    InM,
    InMPlus,
}

/// Classifies a balanced word by the `±i` subwords: in `M` when each has
/// prefix sums in `{−1, 0, 1}` with letters `2k−1, 2k` of opposite sign, and
/// in `M⁺` when each is exactly `i ī i ī …`.
pub fn alternation_class(w: &[Letter]) -> Result<AlternationClass> {
    if !is_balanced(w) {
        return Err(invalid(format!(
            "\"{}\" is not balanced",
            format_letters(w)
        )));
    }
    let top = w.iter().map(|l| l.magnitude()).max().unwrap_or(0);
    let mut plus = true;
    for i in 1..=top {
        let signs: Vec<i8> = w
            .iter()
            .filter(|l| l.magnitude() == i)
            .map(|l| l.sign())
            .collect();
        let mut s = 0i64;
        for &d in &signs {
            s += i64::from(d);
            if s.abs() > 1 {
                return Ok(AlternationClass::NotInM);
            }
        }
        if signs.chunks(2).any(|c| c.len() == 2 && c[0] == c[1]) {
            return Ok(AlternationClass::NotInM);
        }
        if signs.chunks(2).any(|c| c[0] < 0) {
            plus = false;
        }
    }
    Ok(if plus {
        AlternationClass::InMPlus
    } else {
        AlternationClass::InM
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(v: &[i32]) -> Vec<Letter> {
        v.iter().map(|&x| Letter::new(x).unwrap()).collect()
    }

    fn pat(v: &[i8]) -> Pattern {
        Pattern::new(v.to_vec()).unwrap()
    }

    #[test]
    fn letter_order() {
        let mut ls = w(&[-1, 2, -2, 1, -3, 3]);
        ls.sort();
        assert_eq!(ls, w(&[1, 2, 3, -3, -2, -1]));
        assert!(Letter::new(0).is_err());
    }

    #[test]
    fn lattice_predicate() {
        assert!(is_symplectic_lattice_word(&w(&[1, -1]), 1));
        assert!(!is_symplectic_lattice_word(&w(&[1, 2, -1]), 2));
        assert!(is_symplectic_lattice_word(&[], 2));
        assert!(!is_symplectic_lattice_word(&w(&[2, -2]), 2));
        assert!(!is_symplectic_lattice_word(&w(&[1, 2, -2, -1]), 1));
        assert!(!is_symplectic_lattice_word(&w(&[-1]), 3));
    }

    #[test]
    fn balance_predicate() {
        assert!(is_balanced(&w(&[1, -1])));
        assert!(!is_balanced(&w(&[1, 1, -1])));
        assert!(is_balanced(&w(&[1, 2, -2, -1])));
    }

    /// Oracle: filter all (2n)^m words by the two predicates.
    fn brute_force_words(m: usize, n: usize) -> Vec<Vec<Letter>> {
        let alphabet: Vec<Letter> = (1..=n)
            .map(Letter::plus)
            .chain((1..=n).rev().map(Letter::minus))
            .collect();
        let total = (2 * n).pow(m as u32);
        let mut out = Vec::new();
        for mut code in 0..total {
            let mut word = Vec::with_capacity(m);
            for _ in 0..m {
                word.push(alphabet[code % (2 * n)]);
                code /= 2 * n;
            }
            word.reverse();
            if is_balanced(&word) && is_symplectic_lattice_word(&word, n) {
                out.push(word);
            }
        }
        out
    }

    #[test]
    fn enumeration_matches_brute_force_and_dp() {
        for n in 1..=3 {
            for m in 0..=6 {
                let fast: Vec<Vec<Letter>> = enumerate_balanced_words(m, n)
                    .into_iter()
                    .map(LatticeWord::into_letters)
                    .collect();
                let slow = brute_force_words(m, n);
                assert_eq!(fast, slow, "m={m} n={n}");
                let dp = crate::partitions::invariant_dimension(m, n).unwrap();
                assert_eq!(fast.len() as u128, dp);
            }
        }
    }

    #[test]
    fn enumeration_examples() {
        let ws = enumerate_balanced_words(2, 2);
        assert_eq!(ws.len(), 1);
        assert_eq!(ws[0].letters(), &w(&[1, -1])[..]);
        assert!(enumerate_balanced_words(3, 2).is_empty());
        assert_eq!(enumerate_balanced_words(6, 2).len(), 14);
    }

    #[test]
    fn pattern_examples() {
        assert_eq!(pattern(&w(&[1, 2, -2, -1])), pat(&[1, 1, -1, -1]));
        assert_eq!(pattern(&w(&[1, -1, 1, -1])), pat(&[1, -1, 1, -1]));
        assert!(pattern(&[]).is_empty());
    }

    #[test]
    fn lat_examples() {
        assert_eq!(
            lat(&pat(&[1, -1, 1, -1]), 1).unwrap().letters(),
            &w(&[1, -1, 1, -1])[..]
        );
        assert_eq!(
            lat(&pat(&[1, 1, -1, -1]), 2).unwrap().letters(),
            &w(&[1, 2, -2, -1])[..]
        );
        assert_eq!(
            lat(&pat(&[1, 1, -1, -1]), 1),
            Err(Error::AlphabetOverflow { needed: 2, n: 1 })
        );
        assert!(matches!(
            lat(&pat(&[-1, 1]), 2),
            Err(Error::InvalidPattern(_))
        ));
        assert!(matches!(
            lat(&pat(&[1, 1, -1]), 2),
            Err(Error::InvalidPattern(_))
        ));
        assert!(lat(&pat(&[]), 1).unwrap().is_empty());
        assert!(Pattern::new(vec![1, 0]).is_err());
    }

    #[test]
    fn nested_components_are_not_fixed_by_lat() {
        // Two nested page-1 edges give 1 1 1̄ 1̄, which is outside M⁺, so the
        // smallest M⁺ word with its pattern differs.
        let nested = w(&[1, 1, -1, -1]);
        assert_eq!(
            alternation_class(&nested).unwrap(),
            AlternationClass::NotInM
        );
        assert_eq!(
            lat(&pattern(&nested), 2).unwrap().letters(),
            &w(&[1, 2, -2, -1])[..]
        );
    }

    #[test]
    fn alternation_examples() {
        assert_eq!(
            alternation_class(&w(&[1, -1, 1, -1])).unwrap(),
            AlternationClass::InMPlus
        );
        assert_eq!(
            alternation_class(&w(&[-1, 1])).unwrap(),
            AlternationClass::InM
        );
        assert_eq!(
            alternation_class(&w(&[1, -1, -1, 1])).unwrap(),
            AlternationClass::InM
        );
        assert_eq!(
            alternation_class(&w(&[1, 1, -1, -1])).unwrap(),
            AlternationClass::NotInM
        );
        assert_eq!(
            alternation_class(&w(&[1, 2, -2, -1])).unwrap(),
            AlternationClass::InMPlus
        );
        assert!(alternation_class(&w(&[1, 1])).is_err());
    }

    #[test]
    fn parse_text_form() {
        assert_eq!(parse_letters("1 2 -2 -1").unwrap(), w(&[1, 2, -2, -1]));
        assert_eq!(format_letters(&w(&[1, 2, -2, -1])), "1 2 -2 -1");
        let err = parse_letters("1 x -1").unwrap_err();
        assert!(err.to_string().contains("\"x\""));
        assert!(parse_letters("1 0")
            .unwrap_err()
            .to_string()
            .contains("\"0\""));
    }

    fn dyck(max_half: usize) -> impl Strategy<Value = Pattern> {
        (0..=max_half).prop_flat_map(dyck_exact)
    }

    fn dyck_exact(half: usize) -> impl Strategy<Value = Pattern> {
        // random ±1 steps, forced up at zero and down when the budget runs out
        proptest::collection::vec(any::<bool>(), 2 * half).prop_map(|bits| {
            let m = bits.len();
            let half = m / 2;
            let mut signs = Vec::with_capacity(m);
            let (mut ups, mut s) = (0, 0i64);
            for b in bits {
                let remaining = m - signs.len();
                let up = if s == 0 {
                    true
                } else if ups == half || s as usize == remaining {
                    false
                } else {
                    b
                };
                if up {
                    ups += 1;
                    s += 1;
                    signs.push(1);
                } else {
                    s -= 1;
                    signs.push(-1);
                }
            }
            Pattern::new(signs).unwrap()
        })
    }

    proptest! {
        #[test]
        fn pattern_of_lat_is_identity(delta in dyck(7)) {
            prop_assert!(delta.is_valid());
            let word = lat(&delta, 8).unwrap();
            prop_assert_eq!(pattern(word.letters()), delta);
            prop_assert!(word.is_balanced());
            prop_assert_eq!(alternation_class(word.letters()).unwrap(), AlternationClass::InMPlus);
        }

        #[test]
        fn lat_is_monotone((a, b) in (1..=6usize).prop_flat_map(|h| (dyck_exact(h), dyck_exact(h)))) {
            let (la, lb) = (lat(&a, 8).unwrap(), lat(&b, 8).unwrap());
            prop_assert_eq!(a.cmp(&b), la.letters().cmp(lb.letters()));
        }
    }
}
