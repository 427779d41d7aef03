//! Dense matrices over a [`Ring`].

use std::fmt;

use rayon::prelude::*;
use serde::ser::{Serialize, SerializeStruct, Serializer};

use crate::budget::{power, Budget};
use crate::error::{Error, Result};
use crate::ring::{Ring, RingElement};

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    ring: Ring,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

/// Shape of the Gram matrix `A A^t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GramShape {
    /// `λ_i` at `(i, i)`, zero elsewhere.
    Diagonal(Vec<RingElement>),
    /// `λ_i` at `(i, s-i+1)`, zero elsewhere.
    AntiDiagonal(Vec<RingElement>),
    Other,
}

impl GramShape {
    pub fn tag(&self) -> &'static str {
        match self {
            GramShape::Diagonal(_) => "diagonal",
            GramShape::AntiDiagonal(_) => "anti-diagonal",
            GramShape::Other => "other",
        }
    }

    pub fn lambdas(&self) -> &[RingElement] {
        match self {
            GramShape::Diagonal(l) | GramShape::AntiDiagonal(l) => l,
            GramShape::Other => &[],
        }
    }
}

impl fmt::Display for GramShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |l: &[RingElement]| {
            l.iter()
                .map(|e| e.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        match self {
            GramShape::Diagonal(l) => write!(f, "diag({})", list(l)),
            GramShape::AntiDiagonal(l) => write!(f, "adiag({})", list(l)),
            GramShape::Other => f.write_str("other"),
        }
    }
}

impl Serialize for GramShape {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("GramShape", 2)?;
        st.serialize_field("tag", self.tag())?;
        let lambdas: Vec<String> = self.lambdas().iter().map(|e| e.to_string()).collect();
        st.serialize_field("lambdas", &lambdas)?;
        st.end()
    }
}

impl Matrix {
    pub(crate) fn from_raw(ring: &Ring, rows: usize, cols: usize, data: Vec<u32>) -> Matrix {
        debug_assert_eq!(data.len(), rows * cols);
        Matrix {
            ring: ring.clone(),
            rows,
            cols,
            data,
        }
    }

    pub fn new(ring: &Ring, rows: Vec<Vec<RingElement>>) -> Result<Matrix> {
        let mut raw = Vec::with_capacity(rows.len());
        for row in rows {
            let mut r = Vec::with_capacity(row.len());
            for e in row {
                if e.ring() != ring {
                    return Err(Error::RingMismatch);
                }
                r.push(e.value());
            }
            raw.push(r);
        }
        Matrix::from_values(ring, raw)
    }

    /// Builds a matrix from canonical index values.
    pub fn from_values(ring: &Ring, rows: Vec<Vec<u32>>) -> Result<Matrix> {
        let s = rows.len();
        let l = rows.first().map_or(0, Vec::len);
        if s == 0 || l == 0 {
            return Err(Error::Shape(
                "matrices need at least one row and column".into(),
            ));
        }
        if rows.iter().any(|r| r.len() != l) {
            return Err(Error::Shape("rows have different lengths".into()));
        }
        let data: Vec<u32> = rows.into_iter().flatten().collect();
        if data.iter().any(|&v| v >= ring.cardinality()) {
            return Err(Error::InvalidParameter("entry out of range".into()));
        }
        Ok(Matrix::from_raw(ring, s, l, data))
    }

    /// Integer entries mapped through `Z -> R`.
    pub fn from_ints(ring: &Ring, rows: &[&[i64]]) -> Result<Matrix> {
        Matrix::from_values(
            ring,
            rows.iter()
                .map(|r| r.iter().map(|&k| ring.from_int(k)).collect())
                .collect(),
        )
    }

    /// Parses a literal such as `[[1,2],[0,0]]`.
    pub fn parse(ring: &Ring, text: &str) -> Result<Matrix> {
        Matrix::from_values(ring, crate::text::parse_matrix_rows(ring, text)?)
    }

    /// Array of arrays of element strings.
    pub fn from_json(ring: &Ring, value: &serde_json::Value) -> Result<Matrix> {
        let bad =
            || Error::InvalidParameter("matrix JSON must be an array of arrays of strings".into());
        let rows = value.as_array().ok_or_else(bad)?;
        let mut raw = Vec::with_capacity(rows.len());
        for row in rows {
            let mut r = Vec::new();
            for e in row.as_array().ok_or_else(bad)? {
                let text = match e {
                    serde_json::Value::String(s) => s.clone(),
                    serde_json::Value::Number(n) => n.to_string(),
                    _ => return Err(bad()),
                };
                r.push(ring.parse_element(&text)?.value());
            }
            raw.push(r);
        }
        Matrix::from_values(ring, raw)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            (0..self.rows)
                .map(|i| {
                    serde_json::Value::Array(
                        self.row_values(i)
                            .iter()
                            .map(|&v| serde_json::Value::String(self.ring.format_value(v)))
                            .collect(),
                    )
                })
                .collect(),
        )
    }

    pub fn identity(ring: &Ring, n: usize) -> Matrix {
        let mut data = vec![0; n * n];
        for i in 0..n {
            data[i * n + i] = ring.one_value();
        }
        Matrix::from_raw(ring, n, n, data)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn value(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    pub fn get(&self, i: usize, j: usize) -> RingElement {
        self.ring.wrap(self.value(i, j))
    }

    pub fn row_values(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    /// The first `k` rows as a new matrix.
    pub fn top_rows(&self, k: usize) -> Matrix {
        assert!(k >= 1 && k <= self.rows);
        Matrix::from_raw(
            &self.ring,
            k,
            self.cols,
            self.data[..k * self.cols].to_vec(),
        )
    }

    pub fn transpose(&self) -> Matrix {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.value(i, j));
            }
        }
        Matrix::from_raw(&self.ring, self.cols, self.rows, data)
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch);
        }
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let r = &self.ring;
        let mut data = Vec::with_capacity(self.rows * other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = 0;
                for k in 0..self.cols {
                    acc = r.add(acc, r.mul(self.value(i, k), other.value(k, j)));
                }
                data.push(acc);
            }
        }
        Ok(Matrix::from_raw(r, self.rows, other.cols, data))
    }

    pub fn scale(&self, c: u32) -> Matrix {
        let data = self.data.iter().map(|&v| self.ring.mul(c, v)).collect();
        Matrix::from_raw(&self.ring, self.rows, self.cols, data)
    }

    /// `A A^t`.
    pub fn gram(&self) -> Matrix {
        self.mul(&self.transpose()).expect("shapes always agree")
    }

    fn require_square(&self, what: &str) -> Result<()> {
        if self.is_square() {
            Ok(())
        } else {
            Err(Error::Shape(format!(
                "{what} needs a square matrix, got {}x{}",
                self.rows, self.cols
            )))
        }
    }

    /// Determinant by cofactor expansion; no division is used.
    pub fn determinant(&self) -> Result<RingElement> {
        self.require_square("determinant")?;
        let idx: Vec<usize> = (0..self.rows).collect();
        Ok(self.ring.wrap(self.minor_det(&idx, &idx)))
    }

    fn minor_det(&self, rows: &[usize], cols: &[usize]) -> u32 {
        let r = &self.ring;
        match rows.len() {
            0 => r.one_value(),
            1 => self.value(rows[0], cols[0]),
            2 => r.sub(
                r.mul(self.value(rows[0], cols[0]), self.value(rows[1], cols[1])),
                r.mul(self.value(rows[0], cols[1]), self.value(rows[1], cols[0])),
            ),
            _ => {
                let mut acc = 0;
                let mut sub_cols = Vec::with_capacity(cols.len() - 1);
                for (k, &c) in cols.iter().enumerate() {
                    let a = self.value(rows[0], c);
                    if a == 0 {
                        continue;
                    }
                    sub_cols.clear();
                    sub_cols.extend(
                        cols.iter()
                            .enumerate()
                            .filter(|&(t, _)| t != k)
                            .map(|(_, &c)| c),
                    );
                    let term = r.mul(a, self.minor_det(&rows[1..], &sub_cols));
                    acc = if k % 2 == 0 {
                        r.add(acc, term)
                    } else {
                        r.sub(acc, term)
                    };
                }
                acc
            }
        }
    }

    pub fn is_nonsingular(&self) -> Result<bool> {
        Ok(self.determinant()?.is_unit())
    }

    /// Classical adjugate: `adj(A)[j][i] = (-1)^(i+j) det(minor(i, j))`.
    pub fn adjugate(&self) -> Result<Matrix> {
        self.require_square("adjugate")?;
        let n = self.rows;
        let r = &self.ring;
        if n == 1 {
            return Ok(Matrix::identity(r, 1));
        }
        let mut data = vec![0; n * n];
        for i in 0..n {
            for j in 0..n {
                let rows: Vec<usize> = (0..n).filter(|&t| t != i).collect();
                let cols: Vec<usize> = (0..n).filter(|&t| t != j).collect();
                let m = self.minor_det(&rows, &cols);
                data[j * n + i] = if (i + j) % 2 == 0 { m } else { r.neg(m) };
            }
        }
        Ok(Matrix::from_raw(r, n, n, data))
    }

    /// `det(A)^{-1} adj(A)`, checked against `A A^{-1} = I`.
    pub fn adjugate_inverse(&self) -> Result<Matrix> {
        let det = self.determinant()?;
        let det_inv = det
            .invert()
            .map_err(|_| Error::NotInvertible(format!("determinant {det} is not a unit")))?;
        let inv = self.adjugate()?.scale(det_inv.value());
        let n = self.rows;
        if self.mul(&inv)? != Matrix::identity(&self.ring, n) {
            return Err(Error::NotInvertible(
                "adjugate inverse failed verification".into(),
            ));
        }
        Ok(inv)
    }

    /// Diagonal wins the tie when `A A^t` is both diagonal and anti-diagonal.
    pub fn classify_gram(&self) -> GramShape {
        gram_shape(&self.gram())
    }

    /// `A A^t = I` for a square nonsingular `A`, i.e. `A = (A^{-1})^t`.
    pub fn is_orthogonal(&self) -> Result<bool> {
        self.require_square("orthogonality")?;
        Ok(self.gram() == Matrix::identity(&self.ring, self.rows) && self.is_nonsingular()?)
    }

    pub fn is_upper_triangular(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols.min(i)).all(|j| self.value(i, j) == 0))
    }

    pub fn is_lower_triangular(&self) -> bool {
        (0..self.rows).all(|i| (i + 1..self.cols).all(|j| self.value(i, j) == 0))
    }

    pub fn is_diagonal(&self) -> bool {
        self.is_upper_triangular() && self.is_lower_triangular()
    }

    /// Smallest nonzero `x` (in enumeration order) with `x A = 0`, if any.
    pub fn left_kernel_witness(&self, budget: Budget) -> Result<Option<Vec<RingElement>>> {
        let q = self.ring.cardinality() as u64;
        let total = power(q, self.rows);
        budget.check(total)?;
        let total = total as u64;
        let found = (1..total).into_par_iter().find_first(|&k| {
            let mut x = [0u32; 64];
            let x = &mut x[..self.rows];
            digits(k, q, x);
            (0..self.cols).all(|j| {
                let mut acc = 0;
                for (i, &xi) in x.iter().enumerate() {
                    acc = self.ring.add(acc, self.ring.mul(xi, self.value(i, j)));
                }
                acc == 0
            })
        });
        Ok(found.map(|k| {
            let mut x = vec![0u32; self.rows];
            digits(k, q, &mut x);
            x.into_iter().map(|v| self.ring.wrap(v)).collect()
        }))
    }

    /// Rows linearly independent over the ring (exhaustive left-kernel search).
    pub fn has_full_rank(&self, budget: Budget) -> Result<bool> {
        if self.rows > 64 {
            return Err(Error::BudgetExceeded {
                needed: u128::MAX,
                budget: budget.limit(),
            });
        }
        Ok(self.left_kernel_witness(budget)?.is_none())
    }
}

/// Writes the base-`q` digits of `k` into `out`, most significant first.
pub(crate) fn digits(mut k: u64, q: u64, out: &mut [u32]) {
    for slot in out.iter_mut().rev() {
        *slot = (k % q) as u32;
        k /= q;
    }
}

pub(crate) fn gram_shape(g: &Matrix) -> GramShape {
    let s = g.rows;
    let diag = (0..s).all(|i| (0..s).all(|j| i == j || g.value(i, j) == 0));
    if diag {
        return GramShape::Diagonal((0..s).map(|i| g.get(i, i)).collect());
    }
    let adiag = (0..s).all(|i| (0..s).all(|j| j == s - 1 - i || g.value(i, j) == 0));
    if adiag {
        return GramShape::AntiDiagonal((0..s).map(|i| g.get(i, s - 1 - i)).collect());
    }
    GramShape::Other
}

/// `Some(λ)` if `g` is anti-diagonal, regardless of whether it is also diagonal.
pub(crate) fn anti_diagonal_entries(g: &Matrix) -> Option<Vec<RingElement>> {
    let s = g.rows;
    let adiag = (0..s).all(|i| (0..s).all(|j| j == s - 1 - i || g.value(i, j) == 0));
    adiag.then(|| (0..s).map(|i| g.get(i, s - 1 - i)).collect())
}

pub(crate) fn diagonal_entries(g: &Matrix) -> Option<Vec<RingElement>> {
    match gram_shape(g) {
        GramShape::Diagonal(l) => Some(l),
        _ => None,
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for i in 0..self.rows {
            if i > 0 {
                f.write_str(",")?;
            }
            f.write_str("[")?;
            for j in 0..self.cols {
                if j > 0 {
                    f.write_str(",")?;
                }
                f.write_str(&self.ring.format_value(self.value(i, j)))?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} over {}", self.ring)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: u64) -> Ring {
        Ring::integers_mod(n).unwrap()
    }

    fn m(r: &Ring, rows: &[&[i64]]) -> Matrix {
        Matrix::from_ints(r, rows).unwrap()
    }

    fn ints(r: &Ring, v: &[i64]) -> Vec<RingElement> {
        v.iter().map(|&k| r.int(k)).collect()
    }

    #[test]
    fn products_and_transpose() {
        let r = z(20);
        let a = m(&r, &[&[1, 2], &[0, 0]]);
        assert_eq!(a.gram(), m(&r, &[&[5, 0], &[0, 0]]));
        assert_eq!(Matrix::identity(&r, 2).mul(&a).unwrap(), a);
        let b = m(&r, &[&[0, 2, 0, 4], &[0, 4, 2, 0]]);
        assert_eq!(b.gram(), m(&r, &[&[0, 8], &[8, 0]]));
        assert_eq!(b.transpose().rows(), 4);
        assert!(matches!(a.mul(&b.transpose()), Err(Error::Shape(_))));
        let other = m(&z(25), &[&[1]]);
        assert_eq!(other.mul(&other.transpose()).unwrap().value(0, 0), 1);
        assert_eq!(
            a.mul(&m(&z(25), &[&[1, 0], &[0, 1]])),
            Err(Error::RingMismatch)
        );
    }

    #[test]
    fn determinants() {
        let r25 = z(25);
        assert!(Matrix::identity(&r25, 4).determinant().unwrap().is_one());
        assert_eq!(
            m(&r25, &[&[1, 7], &[7, 1]]).determinant().unwrap(),
            r25.int(2)
        );
        assert!(m(&z(20), &[&[1, 2], &[0, 0]])
            .determinant()
            .unwrap()
            .is_zero());
        assert!(matches!(
            m(&z(20), &[&[1, 2]]).determinant(),
            Err(Error::Shape(_))
        ));
        // 3x3 against the rule of Sarrus over Z/7
        let r7 = z(7);
        let a = m(&r7, &[&[2, 3, 1], &[4, 0, 5], &[6, 1, 3]]);
        // 2*0*3 + 3*5*6 + 1*4*1 - 1*0*6 - 2*5*1 - 3*4*3
        let sarrus = 90 + 4 - 10 - 36;
        assert_eq!(a.determinant().unwrap(), r7.int(sarrus));
    }

    #[test]
    fn nonsingularity_and_inverse() {
        let r25 = z(25);
        let a = m(&r25, &[&[1, 7], &[7, 1]]);
        assert!(a.is_nonsingular().unwrap());
        let inv = a.adjugate_inverse().unwrap();
        assert_eq!(a.mul(&inv).unwrap(), Matrix::identity(&r25, 2));
        assert_eq!(inv.mul(&a).unwrap(), Matrix::identity(&r25, 2));
        assert!(!m(&z(20), &[&[1, 2], &[0, 0]]).is_nonsingular().unwrap());
        assert!(matches!(
            m(&z(20), &[&[1, 2], &[0, 0]]).adjugate_inverse(),
            Err(Error::NotInvertible(_))
        ));
        assert_eq!(
            Matrix::identity(&r25, 3).adjugate_inverse().unwrap(),
            Matrix::identity(&r25, 3)
        );
    }

    #[test]
    fn inverse_transpose_under_anti_diagonal_gram() {
        // (A^{-1})^t has rows λ_i^{-1} * (row s-i+1 of A)
        let r = z(25);
        let a = m(&r, &[&[1, 7], &[7, 1]]);
        let GramShape::AntiDiagonal(lambdas) = a.classify_gram() else {
            panic!("expected anti-diagonal gram")
        };
        let inv_t = a.adjugate_inverse().unwrap().transpose();
        for i in 0..2 {
            let li = lambdas[i].invert().unwrap().value();
            for j in 0..2 {
                assert_eq!(inv_t.value(i, j), r.mul(li, a.value(1 - i, j)));
            }
        }
    }

    #[test]
    fn gram_classification() {
        let r20 = z(20);
        assert_eq!(
            m(&r20, &[&[1, 2], &[0, 0]]).classify_gram(),
            GramShape::Diagonal(ints(&r20, &[5, 0]))
        );
        assert_eq!(
            m(&r20, &[&[0, 2, 0, 4], &[0, 4, 2, 0]]).classify_gram(),
            GramShape::AntiDiagonal(ints(&r20, &[8, 8]))
        );
        let r25 = z(25);
        assert_eq!(
            m(&r25, &[&[1, 7], &[7, 1]]).classify_gram(),
            GramShape::AntiDiagonal(ints(&r25, &[14, 14]))
        );
        // ties resolve to diagonal
        assert_eq!(
            m(&r20, &[&[3, 1]]).classify_gram(),
            GramShape::Diagonal(ints(&r20, &[10]))
        );
        assert_eq!(
            m(&r20, &[&[10, 0], &[0, 10]]).classify_gram(),
            GramShape::Diagonal(ints(&r20, &[0, 0]))
        );
        assert_eq!(
            m(&r20, &[&[1, 1, 0], &[0, 1, 1], &[1, 0, 0]]).classify_gram(),
            GramShape::Other
        );
    }

    #[test]
    fn orthogonality() {
        assert!(Matrix::identity(&z(7), 3).is_orthogonal().unwrap());
        assert!(!m(&z(25), &[&[1, 7], &[7, 1]]).is_orthogonal().unwrap());
        assert!(!m(&z(5), &[&[2, 0], &[0, 3]]).is_orthogonal().unwrap());
        // rotation-like matrix over Z/5: 0^2 + 1^2 = 1
        assert!(m(&z(5), &[&[0, 1], &[4, 0]]).is_orthogonal().unwrap());
    }

    #[test]
    fn full_rank() {
        let b = Budget::default();
        let r20 = z(20);
        let a = m(&r20, &[&[1, 2], &[0, 0]]);
        assert!(!a.has_full_rank(b).unwrap());
        assert_eq!(
            a.left_kernel_witness(b).unwrap().unwrap(),
            ints(&r20, &[0, 1])
        );
        assert!(Matrix::identity(&r20, 3).has_full_rank(b).unwrap());
        let bm = m(&r20, &[&[0, 2, 0, 4], &[0, 4, 2, 0]]);
        assert!(!bm.has_full_rank(b).unwrap());
        assert!(matches!(
            Matrix::identity(&r20, 8).has_full_rank(b),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn text_round_trip() {
        let r = Ring::parse("Z/9[x]/(x^2+x+2)").unwrap();
        let a = Matrix::parse(&r, "[[1, x+1], [2x, -1]]").unwrap();
        assert_eq!(a.to_string(), "[[1,x+1],[2x,8]]");
        assert_eq!(Matrix::parse(&r, &a.to_string()).unwrap(), a);
        assert_eq!(Matrix::from_json(&r, &a.to_json()).unwrap(), a);
    }
}
