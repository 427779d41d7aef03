//! Special matrices with verified Gram shapes and row-code distances, and
//! the prime-square code pair over `Z/p^2`.

use serde::Serialize;

use crate::budget::Budget;
use crate::code::LinearCode;
use crate::error::{Error, Result};
use crate::matrix::{GramShape, Matrix};
use crate::mpc::row_codes;
use crate::ring::{Ring, RingElement};

/// A matrix together with its recomputed Gram shape and `δ_1 ... δ_s`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CertifiedMatrix {
    #[serde(serialize_with = "matrix_literal")]
    pub matrix: Matrix,
    pub gram: GramShape,
    pub deltas: Vec<usize>,
    pub hypotheses: Vec<String>,
}

fn matrix_literal<S: serde::Serializer>(m: &Matrix, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&m.to_string())
}

impl CertifiedMatrix {
    /// Computes the certificate and checks it against the claimed values.
    fn certify(
        matrix: Matrix,
        claimed_gram: GramShape,
        claimed_deltas: Vec<usize>,
        hypotheses: Vec<String>,
        budget: Budget,
    ) -> Result<CertifiedMatrix> {
        let gram = matrix.classify_gram();
        if Some(matrix.gram()) != shape_matrix(matrix.ring(), matrix.rows(), &claimed_gram) {
            return Err(Error::CertificateMismatch(format!(
                "gram of {matrix} is {gram}, expected {claimed_gram}"
            )));
        }
        let deltas = row_codes(&matrix, budget)?
            .iter()
            .map(LinearCode::min_distance)
            .collect::<Result<Vec<_>>>()?;
        if deltas != claimed_deltas {
            return Err(Error::CertificateMismatch(format!(
                "row-code distances of {matrix} are {deltas:?}, expected {claimed_deltas:?}"
            )));
        }
        Ok(CertifiedMatrix {
            matrix,
            gram,
            deltas,
            hypotheses,
        })
    }

    /// `min_i d_i δ_i` for input distances `d`.
    pub fn distance_bound(&self, d: &[usize]) -> Result<usize> {
        if d.len() != self.deltas.len() {
            return Err(Error::Shape(format!(
                "{} distances for {} rows",
                d.len(),
                self.deltas.len()
            )));
        }
        Ok(d.iter()
            .zip(&self.deltas)
            .map(|(a, b)| a * b)
            .min()
            .expect("s >= 2"))
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("certificate serializes")
    }
}

/// The `s x s` matrix a diagonal or anti-diagonal shape describes.
fn shape_matrix(ring: &Ring, s: usize, shape: &GramShape) -> Option<Matrix> {
    let (lambdas, anti) = match shape {
        GramShape::Diagonal(l) => (l, false),
        GramShape::AntiDiagonal(l) => (l, true),
        GramShape::Other => return None,
    };
    let rows = (0..s)
        .map(|i| {
            (0..s)
                .map(|j| {
                    let on = if anti { j == s - 1 - i } else { i == j };
                    if on {
                        lambdas[i].clone()
                    } else {
                        ring.zero()
                    }
                })
                .collect()
        })
        .collect();
    Matrix::new(ring, rows).ok()
}

fn two(ring: &Ring) -> RingElement {
    ring.int(2)
}

fn require_not_zero_divisor(
    e: &RingElement,
    name: &str,
    hypotheses: &mut Vec<String>,
) -> Result<()> {
    let h = format!("{name} is not a zero divisor");
    if e.is_zero_divisor() {
        return Err(Error::hypothesis(
            h,
            format!("{name} is a zero divisor in {}", e.ring()),
        ));
    }
    hypotheses.push(h);
    Ok(())
}

fn require_unit(e: &RingElement, name: &str, hypotheses: &mut Vec<String>) -> Result<()> {
    let h = format!("{name} is a unit");
    if !e.is_unit() {
        return Err(Error::hypothesis(
            h,
            format!("{name} is not a unit in {}", e.ring()),
        ));
    }
    hypotheses.push(h);
    Ok(())
}

fn require_sqrt_minus_one(u: &RingElement, hypotheses: &mut Vec<String>) -> Result<()> {
    let h = "u^2 = -1".to_string();
    let sq = u.mul(u)?;
    if sq != u.ring().one().neg() {
        return Err(Error::hypothesis(h, format!("u^2 = {sq} for u = {u}")));
    }
    hypotheses.push(h);
    Ok(())
}

/// `u` if given, else the first square root of `-1` in enumeration order.
pub fn resolve_u(ring: &Ring, u: Option<RingElement>) -> Result<RingElement> {
    match u {
        Some(u) if u.ring() != ring => Err(Error::RingMismatch),
        Some(u) => Ok(u),
        None => ring.find_square_root_of_minus_one().ok_or_else(|| {
            Error::hypothesis("u^2 = -1", format!("-1 has no square root in {ring}"))
        }),
    }
}

fn entries(ring: &Ring, rows: Vec<Vec<RingElement>>) -> Result<Matrix> {
    Matrix::new(ring, rows)
}

/// `[[1,u,1],[-1,0,1]]` with `AA^t = diag(2+u^2, 2)` and `δ = (3, 2)`.
pub fn diag1_matrix(ring: &Ring, u: &RingElement, budget: Budget) -> Result<CertifiedMatrix> {
    if u.ring() != ring {
        return Err(Error::RingMismatch);
    }
    let mut hyps = Vec::new();
    require_not_zero_divisor(&two(ring), "2", &mut hyps)?;
    require_not_zero_divisor(u, "u", &mut hyps)?;
    let (one, zero) = (ring.one(), ring.zero());
    let a = entries(
        ring,
        vec![
            vec![one.clone(), u.clone(), one.clone()],
            vec![one.neg(), zero, one],
        ],
    )?;
    let lambda1 = two(ring).add(&u.mul(u)?)?;
    CertifiedMatrix::certify(
        a,
        GramShape::Diagonal(vec![lambda1, two(ring)]),
        vec![3, 2],
        hyps,
        budget,
    )
}

/// `[[1,0,u],[0,1,u]]` with `AA^t = adiag(-1,-1)` and `δ = (2, 2)`.
pub fn adiag1_matrix_a(ring: &Ring, u: &RingElement, budget: Budget) -> Result<CertifiedMatrix> {
    if u.ring() != ring {
        return Err(Error::RingMismatch);
    }
    let mut hyps = Vec::new();
    require_sqrt_minus_one(u, &mut hyps)?;
    let (one, zero) = (ring.one(), ring.zero());
    let a = entries(
        ring,
        vec![
            vec![one.clone(), zero.clone(), u.clone()],
            vec![zero, one.clone(), u.clone()],
        ],
    )?;
    CertifiedMatrix::certify(
        a,
        GramShape::AntiDiagonal(vec![one.neg(), one.neg()]),
        vec![2, 2],
        hyps,
        budget,
    )
}

/// `[[1,u,0,1,u],[u,1,u,0,1]]` with `BB^t = adiag(3u,3u)` and `δ = (4, 3)`.
pub fn adiag1_matrix_b(ring: &Ring, u: &RingElement, budget: Budget) -> Result<CertifiedMatrix> {
    if u.ring() != ring {
        return Err(Error::RingMismatch);
    }
    let mut hyps = Vec::new();
    require_sqrt_minus_one(u, &mut hyps)?;
    require_not_zero_divisor(&two(ring), "2", &mut hyps)?;
    let (one, zero) = (ring.one(), ring.zero());
    let b = entries(
        ring,
        vec![
            vec![one.clone(), u.clone(), zero.clone(), one.clone(), u.clone()],
            vec![u.clone(), one.clone(), u.clone(), zero, one],
        ],
    )?;
    let three_u = ring.int(3).mul(u)?;
    CertifiedMatrix::certify(
        b,
        GramShape::AntiDiagonal(vec![three_u.clone(), three_u]),
        vec![4, 3],
        hyps,
        budget,
    )
}

/// `[[1,u],[u,1]]` with `AA^t = adiag(2u,2u)` and `δ = (2, 1)`.
pub fn adiag3_matrix(ring: &Ring, u: &RingElement, budget: Budget) -> Result<CertifiedMatrix> {
    block_adiag_matrix(ring, u, 2, budget)
}

/// The `s x s` matrix with 1 on the diagonal and `u` on the anti-diagonal,
/// except the middle row when `s` is odd.
///
/// Gram: `adiag(2u, ..., 2u)` for even `s`, with a middle `1` for odd `s`.
/// Distances: `δ_i = 2` for `i <= floor(s/2)`, `1` afterwards.
pub fn block_adiag_matrix(
    ring: &Ring,
    u: &RingElement,
    s: usize,
    budget: Budget,
) -> Result<CertifiedMatrix> {
    if u.ring() != ring {
        return Err(Error::RingMismatch);
    }
    if s < 2 {
        return Err(Error::InvalidParameter(format!(
            "block size must be at least 2, got {s}"
        )));
    }
    let mut hyps = Vec::new();
    require_unit(&two(ring), "2", &mut hyps)?;
    require_sqrt_minus_one(u, &mut hyps)?;
    let middle = (s % 2 == 1).then_some(s / 2);
    let rows = (0..s)
        .map(|i| {
            (0..s)
                .map(|j| {
                    if i == j {
                        ring.one()
                    } else if j == s - 1 - i && Some(i) != middle {
                        u.clone()
                    } else {
                        ring.zero()
                    }
                })
                .collect()
        })
        .collect();
    let a = entries(ring, rows)?;
    let two_u = two(ring).mul(u)?;
    let lambdas = (0..s)
        .map(|i| {
            if Some(i) == middle {
                ring.one()
            } else {
                two_u.clone()
            }
        })
        .collect();
    let deltas = (0..s).map(|i| if i < s / 2 { 2 } else { 1 }).collect();
    CertifiedMatrix::certify(a, GramShape::AntiDiagonal(lambdas), deltas, hyps, budget)
}

/// The odd-`s` bound in its printed form, which omits `d_{(s+1)/2}`:
/// `min{2d_1, ..., 2d_{(s-1)/2}, d_{(s+3)/2}, ..., d_s}`.
pub fn block_printed_odd_bound(d: &[usize]) -> Result<usize> {
    let s = d.len();
    if s < 3 || s.is_multiple_of(2) {
        return Err(Error::InvalidParameter(format!(
            "odd s >= 3 required, got {s}"
        )));
    }
    let half = (s - 1) / 2;
    let doubled = d[..half].iter().map(|x| 2 * x);
    let tail = d[half + 1..].iter().copied();
    Ok(doubled.chain(tail).min().expect("non-empty"))
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|k| k * k <= p).all(|k| !p.is_multiple_of(k))
}

/// `Z/p^2` with `C_1 = span{(1,...,1)}` and `C_2 = span{(p,...,p)}` of length `p`.
///
/// Verifies `d_1 = d_2 = p` and that the two codes are mutually orthogonal.
pub fn prime_square_codes(p: u64, budget: Budget) -> Result<(Ring, LinearCode, LinearCode)> {
    if !is_prime(p) {
        return Err(Error::InvalidParameter(format!("{p} is not prime")));
    }
    if p % 4 != 1 {
        return Err(Error::InvalidParameter(format!("{p} is not 1 mod 4")));
    }
    let ring = Ring::integers_mod(p * p)?;
    let len = p as usize;
    let ones = vec![ring.one_value(); len];
    let ps = vec![ring.from_int(p as i64); len];
    let c1 = LinearCode::span_values(&ring, len, vec![ones], budget)?;
    let c2 = LinearCode::span_values(&ring, len, vec![ps], budget)?;
    for (name, c) in [("C_1", &c1), ("C_2", &c2)] {
        let d = c.min_distance()?;
        if d != len {
            return Err(Error::CertificateMismatch(format!(
                "{name} has distance {d}, expected {p}"
            )));
        }
    }
    if !c1.is_orthogonal_to(&c2)? {
        return Err(Error::CertificateMismatch(
            "C_1 is not orthogonal to C_2".into(),
        ));
    }
    Ok((ring, c1, c2))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: u64) -> Ring {
        Ring::integers_mod(n).unwrap()
    }

    fn b() -> Budget {
        Budget::default()
    }

    fn ints(r: &Ring, v: &[i64]) -> Vec<RingElement> {
        v.iter().map(|&k| r.int(k)).collect()
    }

    #[test]
    fn diag1_examples() {
        let r = z(25);
        let c = diag1_matrix(&r, &r.one(), b()).unwrap();
        assert_eq!(c.gram, GramShape::Diagonal(ints(&r, &[3, 2])));
        assert_eq!(c.deltas, vec![3, 2]);
        assert_eq!(
            c.matrix,
            Matrix::from_ints(&r, &[&[1, 1, 1], &[-1, 0, 1]]).unwrap()
        );

        let r = z(20);
        match diag1_matrix(&r, &r.one(), b()) {
            Err(Error::HypothesisViolation { reason, .. }) => {
                assert!(reason.contains("2 is a zero divisor"))
            }
            other => panic!("{other:?}"),
        }
        let r = z(9);
        assert!(matches!(
            diag1_matrix(&r, &r.int(3), b()),
            Err(Error::HypothesisViolation { hypothesis, .. }) if hypothesis == "u is not a zero divisor"
        ));
    }

    #[test]
    fn adiag1_examples() {
        let r = z(25);
        let u = r.int(7);
        let a = adiag1_matrix_a(&r, &u, b()).unwrap();
        assert_eq!(a.gram, GramShape::AntiDiagonal(ints(&r, &[-1, -1])));
        assert_eq!(a.deltas, vec![2, 2]);
        let bm = adiag1_matrix_b(&r, &u, b()).unwrap();
        assert_eq!(bm.gram, GramShape::AntiDiagonal(ints(&r, &[21, 21])));
        assert_eq!(bm.deltas, vec![4, 3]);

        let r = z(20);
        assert!(matches!(
            adiag1_matrix_a(&r, &r.int(3), b()),
            Err(Error::HypothesisViolation { hypothesis, .. }) if hypothesis == "u^2 = -1"
        ));
    }

    #[test]
    fn zero_gram_in_characteristic_three() {
        let r = Ring::parse("Z/3[x]/(x^2+1)").unwrap();
        let u = r.parse_element("x").unwrap();
        let c = adiag1_matrix_b(&r, &u, b()).unwrap();
        assert_eq!(c.gram, GramShape::Diagonal(vec![r.zero(), r.zero()]));
        assert_eq!(c.deltas, vec![4, 3]);
    }

    #[test]
    fn adiag3_examples() {
        let r = z(25);
        let c = adiag3_matrix(&r, &r.int(7), b()).unwrap();
        assert_eq!(c.gram, GramShape::AntiDiagonal(ints(&r, &[14, 14])));
        assert_eq!(c.deltas, vec![2, 1]);
        let r = z(13);
        let c = adiag3_matrix(&r, &r.int(5), b()).unwrap();
        assert_eq!(c.gram, GramShape::AntiDiagonal(ints(&r, &[10, 10])));
        let r = z(20);
        for u in 0..20 {
            assert!(matches!(
                adiag3_matrix(&r, &r.int(u), b()),
                Err(Error::HypothesisViolation { hypothesis, .. }) if hypothesis == "2 is a unit"
            ));
        }
    }

    #[test]
    fn block_examples() {
        let r = z(25);
        let u = r.int(7);
        assert_eq!(
            block_adiag_matrix(&r, &u, 2, b()).unwrap(),
            adiag3_matrix(&r, &u, b()).unwrap()
        );
        let c3 = block_adiag_matrix(&r, &u, 3, b()).unwrap();
        assert_eq!(c3.gram, GramShape::AntiDiagonal(ints(&r, &[14, 1, 14])));
        assert_eq!(c3.deltas, vec![2, 1, 1]);
        assert_eq!(
            c3.matrix,
            Matrix::from_ints(&r, &[&[1, 0, 7], &[0, 1, 0], &[7, 0, 1]]).unwrap()
        );
        let c4 = block_adiag_matrix(&r, &u, 4, b()).unwrap();
        assert_eq!(
            c4.gram,
            GramShape::AntiDiagonal(ints(&r, &[14, 14, 14, 14]))
        );
        assert_eq!(c4.deltas, vec![2, 2, 1, 1]);
        assert!(matches!(
            block_adiag_matrix(&r, &u, 1, b()),
            Err(Error::InvalidParameter(_))
        ));
    }

    #[test]
    fn bounds() {
        let r = z(13);
        let c = block_adiag_matrix(&r, &r.int(5), 5, b()).unwrap();
        assert_eq!(c.deltas, vec![2, 2, 1, 1, 1]);
        let d = [3, 4, 1, 5, 6];
        assert_eq!(c.distance_bound(&d).unwrap(), 1);
        assert_eq!(block_printed_odd_bound(&d).unwrap(), 5);
        assert!(block_printed_odd_bound(&[1, 2]).is_err());
    }

    #[test]
    fn default_u() {
        let r = z(25);
        assert_eq!(resolve_u(&r, None).unwrap(), r.int(7));
        assert!(matches!(
            resolve_u(&z(20), None),
            Err(Error::HypothesisViolation { .. })
        ));
    }

    #[test]
    fn prime_square() {
        let (r, c1, c2) = prime_square_codes(5, b()).unwrap();
        assert_eq!(r.cardinality(), 25);
        assert_eq!(c1.length(), 5);
        assert_eq!(c1.cardinality(), 25);
        assert_eq!(c2.cardinality(), 5);
        let (_, c1, c2) = prime_square_codes(13, b()).unwrap();
        assert_eq!(c1.min_distance().unwrap(), 13);
        assert_eq!(c2.min_distance().unwrap(), 13);
        assert!(matches!(
            prime_square_codes(3, b()),
            Err(Error::InvalidParameter(_))
        ));
        assert!(matches!(
            prime_square_codes(9, b()),
            Err(Error::InvalidParameter(_))
        ));
    }

    #[test]
    fn certificate_json() {
        let r = z(25);
        let c = adiag3_matrix(&r, &r.int(7), b()).unwrap();
        let j = c.to_json();
        assert_eq!(j["matrix"], "[[1,7],[7,1]]");
        assert_eq!(j["gram"]["tag"], "anti-diagonal");
        assert_eq!(j["deltas"], serde_json::json!([2, 1]));
    }
}
