//! Linear codes over a [`Ring`] as finitely generated submodules of `R^m`.

use std::collections::HashSet;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::budget::{power, Budget};
use crate::error::{Error, Result};
use crate::matrix::digits;
use crate::ring::{Ring, RingElement};

/// A vector of `R^m`.
#[derive(Clone, PartialEq, Eq)]
pub struct CodeVector {
    ring: Ring,
    coords: Vec<u32>,
}

impl CodeVector {
    pub fn new(ring: &Ring, coords: Vec<RingElement>) -> Result<CodeVector> {
        let mut raw = Vec::with_capacity(coords.len());
        for c in coords {
            if c.ring() != ring {
                return Err(Error::RingMismatch);
            }
            raw.push(c.value());
        }
        CodeVector::from_values(ring, raw)
    }

    pub fn from_values(ring: &Ring, coords: Vec<u32>) -> Result<CodeVector> {
        if coords.is_empty() {
            return Err(Error::InvalidParameter(
                "code vectors need length at least 1".into(),
            ));
        }
        if coords.iter().any(|&v| v >= ring.cardinality()) {
            return Err(Error::InvalidParameter("coordinate out of range".into()));
        }
        Ok(CodeVector {
            ring: ring.clone(),
            coords,
        })
    }

    pub fn from_ints(ring: &Ring, coords: &[i64]) -> Result<CodeVector> {
        CodeVector::from_values(ring, coords.iter().map(|&k| ring.from_int(k)).collect())
    }

    pub fn zero(ring: &Ring, length: usize) -> CodeVector {
        CodeVector {
            ring: ring.clone(),
            coords: vec![0; length],
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn values(&self) -> &[u32] {
        &self.coords
    }

    pub fn get(&self, i: usize) -> RingElement {
        self.ring.wrap(self.coords[i])
    }

    pub fn hamming_weight(&self) -> usize {
        hamming_weight(self)
    }

    pub fn inner_product(&self, other: &CodeVector) -> Result<RingElement> {
        inner_product(self, other)
    }
}

impl fmt::Display for CodeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_tuple(&self.ring, &self.coords))
    }
}

impl fmt::Debug for CodeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} over {}", self.ring)
    }
}

/// Number of nonzero coordinates.
pub fn hamming_weight(x: &CodeVector) -> usize {
    x.coords.iter().filter(|&&c| c != 0).count()
}

/// Euclidean inner product `x_1 y_1 + ... + x_m y_m`.
pub fn inner_product(x: &CodeVector, y: &CodeVector) -> Result<RingElement> {
    if x.ring != y.ring {
        return Err(Error::RingMismatch);
    }
    if x.len() != y.len() {
        return Err(Error::Shape(format!(
            "inner product of vectors of lengths {} and {}",
            x.len(),
            y.len()
        )));
    }
    Ok(x.ring.wrap(dot(&x.ring, &x.coords, &y.coords)))
}

#[inline]
pub(crate) fn dot(ring: &Ring, x: &[u32], y: &[u32]) -> u32 {
    x.iter()
        .zip(y)
        .fold(0, |acc, (&a, &b)| ring.add(acc, ring.mul(a, b)))
}

pub(crate) fn format_tuple(ring: &Ring, coords: &[u32]) -> String {
    let parts: Vec<String> = coords.iter().map(|&c| ring.format_value(c)).collect();
    format!("({})", parts.join(","))
}

/// Sorted, deduplicated words of a fixed length stored back to back.
#[derive(Clone, PartialEq, Eq)]
struct WordSet {
    len: usize,
    data: Vec<u32>,
}

impl WordSet {
    fn from_sorted(len: usize, data: Vec<u32>) -> WordSet {
        debug_assert_eq!(data.len() % len, 0);
        WordSet { len, data }
    }

    fn from_words(len: usize, mut words: Vec<Vec<u32>>) -> WordSet {
        words.sort_unstable();
        words.dedup();
        WordSet::from_sorted(len, words.into_iter().flatten().collect())
    }

    fn count(&self) -> usize {
        self.data.len() / self.len
    }

    fn word(&self, i: usize) -> &[u32] {
        &self.data[i * self.len..(i + 1) * self.len]
    }

    fn iter(&self) -> std::slice::ChunksExact<'_, u32> {
        self.data.chunks_exact(self.len)
    }

    fn contains(&self, w: &[u32]) -> bool {
        let (mut lo, mut hi) = (0, self.count());
        while lo < hi {
            let mid = (lo + hi) / 2;
            match self.word(mid).cmp(w) {
                std::cmp::Ordering::Less => lo = mid + 1,
                std::cmp::Ordering::Greater => hi = mid,
                std::cmp::Ordering::Equal => return true,
            }
        }
        false
    }
}

/// An `R`-submodule of `R^m` given by generators, with its full codeword set.
#[derive(Clone)]
pub struct LinearCode {
    ring: Ring,
    length: usize,
    generators: Vec<Vec<u32>>,
    /// Generators that enlarged the span during closure; they span the code.
    spanning: Vec<Vec<u32>>,
    words: WordSet,
}

impl LinearCode {
    /// All `R`-linear combinations of `generators`.
    pub fn span(
        ring: &Ring,
        length: usize,
        generators: &[CodeVector],
        budget: Budget,
    ) -> Result<LinearCode> {
        let mut raw = Vec::with_capacity(generators.len());
        for g in generators {
            if g.ring() != ring {
                return Err(Error::RingMismatch);
            }
            raw.push(g.coords.clone());
        }
        LinearCode::span_values(ring, length, raw, budget)
    }

    pub fn span_values(
        ring: &Ring,
        length: usize,
        generators: Vec<Vec<u32>>,
        budget: Budget,
    ) -> Result<LinearCode> {
        if length == 0 {
            return Err(Error::InvalidParameter(
                "code length must be at least 1".into(),
            ));
        }
        for g in &generators {
            if g.len() != length {
                return Err(Error::Shape(format!(
                    "generator of length {} in a code of length {length}",
                    g.len()
                )));
            }
            if g.iter().any(|&v| v >= ring.cardinality()) {
                return Err(Error::InvalidParameter("coordinate out of range".into()));
            }
        }
        let (spanning, words) = close(ring, length, &generators, budget)?;
        Ok(LinearCode {
            ring: ring.clone(),
            length,
            generators,
            spanning,
            words: WordSet::from_words(length, words),
        })
    }

    pub fn from_ints(
        ring: &Ring,
        length: usize,
        generators: &[&[i64]],
        budget: Budget,
    ) -> Result<LinearCode> {
        let raw = generators
            .iter()
            .map(|g| g.iter().map(|&k| ring.from_int(k)).collect())
            .collect();
        LinearCode::span_values(ring, length, raw, budget)
    }

    pub fn zero(ring: &Ring, length: usize) -> Result<LinearCode> {
        LinearCode::span_values(ring, length, Vec::new(), Budget::default())
    }

    /// `R^m`, spanned by the unit vectors.
    pub fn full_space(ring: &Ring, length: usize, budget: Budget) -> Result<LinearCode> {
        budget.check(power(ring.cardinality() as u64, length))?;
        let gens = (0..length)
            .map(|i| {
                let mut v = vec![0; length];
                v[i] = ring.one_value();
                v
            })
            .collect();
        LinearCode::span_values(ring, length, gens, budget)
    }

    /// Parses `span <ring> len <m> { (..), .. }`.
    pub fn parse(text: &str, budget: Budget) -> Result<LinearCode> {
        let d = crate::text::parse_code(text)?;
        LinearCode::span_values(&d.ring, d.length, d.generators, budget)
    }

    pub fn from_json(value: &serde_json::Value, budget: Budget) -> Result<LinearCode> {
        let d: CodeJson = serde_json::from_value(value.clone())
            .map_err(|e| Error::InvalidParameter(format!("code JSON: {e}")))?;
        let ring = Ring::parse(&d.ring)?;
        let mut gens = Vec::with_capacity(d.generators.len());
        for g in &d.generators {
            let mut v = Vec::with_capacity(g.len());
            for e in g {
                v.push(ring.parse_element(e)?.value());
            }
            gens.push(v);
        }
        LinearCode::span_values(&ring, d.length, gens, budget)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(CodeJson {
            ring: self.ring.to_string(),
            length: self.length,
            generators: self
                .generators
                .iter()
                .map(|g| g.iter().map(|&v| self.ring.format_value(v)).collect())
                .collect(),
        })
        .expect("plain data serializes")
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn length(&self) -> usize {
        self.length
    }

    pub fn generators(&self) -> Vec<CodeVector> {
        self.generators
            .iter()
            .map(|g| CodeVector {
                ring: self.ring.clone(),
                coords: g.clone(),
            })
            .collect()
    }

    pub fn generator_values(&self) -> &[Vec<u32>] {
        &self.generators
    }

    /// An irredundant (in generator order) subset of the generators that spans the code.
    pub fn spanning_values(&self) -> &[Vec<u32>] {
        &self.spanning
    }

    pub fn cardinality(&self) -> usize {
        self.words.count()
    }

    pub fn is_zero(&self) -> bool {
        self.cardinality() == 1
    }

    /// Codewords in lexicographic order.
    pub fn word_values(&self) -> impl Iterator<Item = &[u32]> + '_ {
        self.words.iter()
    }

    pub fn codewords(&self) -> impl Iterator<Item = CodeVector> + '_ {
        self.words.iter().map(|w| CodeVector {
            ring: self.ring.clone(),
            coords: w.to_vec(),
        })
    }

    pub fn contains_values(&self, w: &[u32]) -> bool {
        w.len() == self.length && self.words.contains(w)
    }

    pub fn contains(&self, x: &CodeVector) -> bool {
        x.ring == self.ring && self.contains_values(&x.coords)
    }

    fn compatible(&self, other: &LinearCode) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch);
        }
        if self.length != other.length {
            return Err(Error::Shape(format!(
                "codes of lengths {} and {}",
                self.length, other.length
            )));
        }
        Ok(())
    }

    /// `C^⊥` by enumerating every vector of `R^m`.
    pub fn dual_bruteforce(&self, budget: Budget) -> Result<LinearCode> {
        let q = self.ring.cardinality() as u64;
        let m = self.length;
        let total = power(q, m);
        budget.check(total)?;
        let total = total as u64;
        let ring = &self.ring;
        let spanning = &self.spanning;
        let hits: Vec<u64> = (0..total)
            .into_par_iter()
            .filter(|&k| {
                let mut buf = vec![0u32; m];
                digits(k, q, &mut buf);
                spanning.iter().all(|g| dot(ring, &buf, g) == 0)
            })
            .collect();
        let mut data = vec![0u32; hits.len() * m];
        for (i, &k) in hits.iter().enumerate() {
            digits(k, q, &mut data[i * m..(i + 1) * m]);
        }
        let words = WordSet::from_sorted(m, data);
        let generators: Vec<Vec<u32>> = words.iter().map(<[u32]>::to_vec).collect();
        let (spanning, closed) = close(ring, m, &generators, Budget::new(u64::MAX))?;
        debug_assert_eq!(closed.len(), words.count());
        Ok(LinearCode {
            ring: ring.clone(),
            length: m,
            generators,
            spanning,
            words,
        })
    }

    /// `C ⊆ C^⊥`, checked on generator pairs.
    pub fn is_self_orthogonal(&self) -> bool {
        self.is_orthogonal_to(self)
            .expect("a code is compatible with itself")
    }

    /// `C ⊆ D^⊥`, checked on generator pairs.
    pub fn is_orthogonal_to(&self, other: &LinearCode) -> Result<bool> {
        self.compatible(other)?;
        Ok(self
            .spanning
            .iter()
            .all(|g| other.spanning.iter().all(|h| dot(&self.ring, g, h) == 0)))
    }

    /// `C = C^⊥`.
    pub fn is_self_dual(&self, budget: Budget) -> Result<bool> {
        if !self.is_self_orthogonal() {
            return Ok(false);
        }
        Ok(self.cardinality() == self.dual_bruteforce(budget)?.cardinality())
    }

    /// `C ⊆ D`.
    pub fn is_subcode(&self, other: &LinearCode) -> Result<bool> {
        self.compatible(other)?;
        Ok(self.spanning.iter().all(|g| other.words.contains(g)))
    }

    /// Minimum Hamming weight over nonzero codewords.
    pub fn min_distance(&self) -> Result<usize> {
        self.words
            .iter()
            .map(|w| w.iter().filter(|&&c| c != 0).count())
            .filter(|&wt| wt > 0)
            .min()
            .ok_or(Error::UndefinedDistance)
    }

    /// Sorted codeword list when small, otherwise generators plus cardinality.
    pub fn summary(&self) -> String {
        if self.cardinality() <= 64 {
            let words: Vec<String> = self
                .words
                .iter()
                .map(|w| format_tuple(&self.ring, w))
                .collect();
            format!("{{{}}}", words.join(", "))
        } else {
            let gens: Vec<String> = self
                .spanning
                .iter()
                .map(|g| format_tuple(&self.ring, g))
                .collect();
            format!(
                "span {{{}}} ({} codewords)",
                gens.join(", "),
                self.cardinality()
            )
        }
    }
}

/// Closes `generators` under addition and scaling. Returns the generators that
/// enlarged the span and the full (unsorted) codeword list.
fn close(
    ring: &Ring,
    length: usize,
    generators: &[Vec<u32>],
    budget: Budget,
) -> Result<(Vec<Vec<u32>>, Vec<Vec<u32>>)> {
    let zero = vec![0u32; length];
    let mut seen: HashSet<Vec<u32>> = HashSet::new();
    seen.insert(zero.clone());
    let mut words = vec![zero];
    let mut spanning = Vec::new();
    for g in generators {
        if seen.contains(g) {
            continue;
        }
        let mut multiples: Vec<Vec<u32>> = (0..ring.cardinality())
            .map(|lambda| g.iter().map(|&c| ring.mul(lambda, c)).collect())
            .collect();
        multiples.sort_unstable();
        multiples.dedup();
        let old = words.len();
        for i in 0..old {
            for mlt in &multiples {
                let s: Vec<u32> = words[i]
                    .iter()
                    .zip(mlt)
                    .map(|(&a, &b)| ring.add(a, b))
                    .collect();
                if !seen.contains(&s) {
                    seen.insert(s.clone());
                    words.push(s);
                    if words.len() as u64 > budget.limit() {
                        return Err(Error::BudgetExceeded {
                            needed: words.len() as u128,
                            budget: budget.limit(),
                        });
                    }
                }
            }
        }
        spanning.push(g.clone());
    }
    Ok((spanning, words))
}

impl PartialEq for LinearCode {
    /// Equality of codeword sets.
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.length == other.length && self.words == other.words
    }
}

impl Eq for LinearCode {}

impl fmt::Display for LinearCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self
            .generators
            .iter()
            .map(|g| format_tuple(&self.ring, g))
            .collect();
        if gens.is_empty() {
            write!(f, "span {} len {} {{ }}", self.ring, self.length)
        } else {
            write!(
                f,
                "span {} len {} {{ {} }}",
                self.ring,
                self.length,
                gens.join(", ")
            )
        }
    }
}

impl fmt::Debug for LinearCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} [{} codewords]", self.cardinality())
    }
}

#[derive(Serialize, Deserialize)]
struct CodeJson {
    ring: String,
    length: usize,
    generators: Vec<Vec<String>>,
}
