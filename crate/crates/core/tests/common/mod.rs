//! Brute-force oracles over `Z/n` written with plain integer arithmetic,
//! plus random generators for specs.

#![allow(dead_code)]

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::Rng as _;
use rand_chacha::ChaCha8Rng;
use ringcodes_core::{Budget, LinearCode, Matrix, Ring};

pub type Words = BTreeSet<Vec<i64>>;

pub fn budget() -> Budget {
    Budget::default()
}

/// Every vector of `(Z/n)^len`.
pub fn all_vectors(n: i64, len: usize) -> impl Iterator<Item = Vec<i64>> {
    let total = (n as u64).pow(len as u32);
    (0..total).map(move |mut k| {
        let mut v = vec![0i64; len];
        for slot in v.iter_mut().rev() {
            *slot = (k % n as u64) as i64;
            k /= n as u64;
        }
        v
    })
}

pub fn dot(n: i64, x: &[i64], y: &[i64]) -> i64 {
    x.iter()
        .zip(y)
        .map(|(a, b)| a * b)
        .sum::<i64>()
        .rem_euclid(n)
}

/// All linear combinations, enumerated over every coefficient tuple.
pub fn span(n: i64, len: usize, gens: &[Vec<i64>]) -> Words {
    let mut out = Words::new();
    for coeffs in all_vectors(n, gens.len()) {
        let mut w = vec![0i64; len];
        for (c, g) in coeffs.iter().zip(gens) {
            for (slot, x) in w.iter_mut().zip(g) {
                *slot = (*slot + c * x).rem_euclid(n);
            }
        }
        out.insert(w);
    }
    out
}

pub fn dual(n: i64, len: usize, words: &Words) -> Words {
    all_vectors(n, len)
        .filter(|v| words.iter().all(|w| dot(n, v, w) == 0))
        .collect()
}

/// `{(c_1 ... c_s) A}` over the full product of codeword sets, column-major.
pub fn mpc(n: i64, codes: &[Words], a: &[Vec<i64>]) -> Words {
    let s = codes.len();
    let l = a[0].len();
    let m = codes[0].iter().next().unwrap().len();
    let lists: Vec<Vec<&Vec<i64>>> = codes.iter().map(|c| c.iter().collect()).collect();
    let mut idx = vec![0usize; s];
    let mut out = Words::new();
    loop {
        let mut w = vec![0i64; m * l];
        for j in 0..l {
            for i in 0..s {
                let c = lists[i][idx[i]];
                for k in 0..m {
                    w[j * m + k] = (w[j * m + k] + a[i][j] * c[k]).rem_euclid(n);
                }
            }
        }
        out.insert(w);
        let mut t = 0;
        loop {
            if t == s {
                return out;
            }
            idx[t] += 1;
            if idx[t] < lists[t].len() {
                break;
            }
            idx[t] = 0;
            t += 1;
        }
    }
}

pub fn min_weight(words: &Words) -> Option<usize> {
    words
        .iter()
        .map(|w| w.iter().filter(|&&x| x != 0).count())
        .filter(|&w| w > 0)
        .min()
}

pub fn self_orthogonal(n: i64, words: &Words) -> bool {
    words
        .iter()
        .all(|x| words.iter().all(|y| dot(n, x, y) == 0))
}

/// Codeword set of a code over `Z/n`, where canonical values are the residues.
pub fn words_of(code: &LinearCode) -> Words {
    code.word_values()
        .map(|w| w.iter().map(|&x| x as i64).collect())
        .collect()
}

pub fn ints_of(m: &Matrix) -> Vec<Vec<i64>> {
    (0..m.rows())
        .map(|i| m.row_values(i).iter().map(|&x| x as i64).collect())
        .collect()
}

pub fn zn(n: u64) -> Ring {
    Ring::integers_mod(n).unwrap()
}

pub fn random_vector(rng: &mut ChaCha8Rng, q: u32, len: usize) -> Vec<u32> {
    (0..len).map(|_| rng.gen_range(0..q)).collect()
}

/// Span of one or two random generators.
pub fn random_code(rng: &mut ChaCha8Rng, ring: &Ring, len: usize) -> LinearCode {
    let k = rng.gen_range(1..=2);
    let gens = (0..k)
        .map(|_| random_vector(rng, ring.cardinality(), len))
        .collect();
    LinearCode::span_values(ring, len, gens, budget()).unwrap()
}

pub fn random_matrix(rng: &mut ChaCha8Rng, ring: &Ring, rows: usize, cols: usize) -> Matrix {
    let data = (0..rows)
        .map(|_| random_vector(rng, ring.cardinality(), cols))
        .collect();
    Matrix::from_values(ring, data).unwrap()
}

pub fn random_nonsingular(rng: &mut ChaCha8Rng, ring: &Ring, s: usize) -> Matrix {
    loop {
        let a = random_matrix(rng, ring, s, s);
        if a.is_nonsingular().unwrap() {
            return a;
        }
    }
}

pub fn random_unit(rng: &mut ChaCha8Rng, ring: &Ring) -> u32 {
    let units: Vec<u32> = (0..ring.cardinality())
        .filter(|&v| ring.is_unit_value(v))
        .collect();
    *units.choose(rng).unwrap()
}
