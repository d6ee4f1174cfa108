use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;

use super::coeff::{Coeff, CoeffRing};
use super::dense::{self, Backend, ScalarOps};
use super::laurent::HalfLaurent;
use crate::error::{Error, Result};

/// A dense matrix of coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    ring: CoeffRing,
    rows: usize,
    cols: usize,
    data: Vec<Coeff>,
}

impl Matrix {
    pub fn new(ring: CoeffRing, rows: usize, cols: usize, data: Vec<Coeff>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data has wrong length");
        Matrix { ring, rows, cols, data }
    }

    pub fn from_i64(ring: CoeffRing, rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let data = rows.iter().flat_map(|row| row.iter().map(|&v| ring.from_i64(v))).collect();
        Matrix::new(ring, r, c, data)
    }

    pub fn zeros(ring: CoeffRing, rows: usize, cols: usize) -> Self {
        Matrix::new(ring, rows, cols, vec![ring.zero(); rows * cols])
    }

    pub fn identity(ring: CoeffRing, n: usize) -> Self {
        let mut m = Matrix::zeros(ring, n, n);
        for i in 0..n {
            m.set(i, i, ring.one());
        }
        m
    }

    pub fn ring(&self) -> CoeffRing {
        self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Coeff {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Coeff) {
        self.data[i * self.cols + j] = v;
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix shapes do not compose");
        let ring = self.ring;
        let mut out = Matrix::zeros(ring, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if ring.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let v = ring.add(out.get(i, j), &ring.mul(a, other.get(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(self.ring, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    /// Transpose combined with the coefficient involution.
    pub fn conj_transpose(&self) -> Matrix {
        let mut out = self.transpose();
        for v in out.data.iter_mut() {
            *v = self.ring.conj(v);
        }
        out
    }

    pub fn convert(&self, target: CoeffRing) -> Result<Matrix> {
        let data = self.data.iter().map(|c| target.convert(&self.ring, c)).collect::<Result<_>>()?;
        Ok(Matrix::new(target, self.rows, self.cols, data))
    }

    /// Entry-wise equality within the ring's tolerance.
    pub fn approx_eq(&self, other: &Matrix) -> bool {
        self.rows == other.rows
            && self.cols == other.cols
            && self.data.iter().zip(&other.data).all(|(a, b)| self.ring.eq(a, b))
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && self.approx_eq(&Matrix::identity(self.ring, self.rows))
    }

    /// Determinant of a small square matrix by Gaussian elimination in the
    /// fraction field.
    pub fn det(&self) -> Coeff {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let field = self.ring.fraction_field();
        let mut m = self.convert(field).expect("fraction field embedding");
        let n = self.rows;
        let mut det = field.one();
        for k in 0..n {
            let Some(p) = pivot_row(&m, k) else {
                return self.ring.zero();
            };
            if p != k {
                m.swap_rows(p, k);
                det = field.neg(&det);
            }
            let pivot = m.get(k, k).clone();
            det = field.mul(&det, &pivot);
            let inv = field.inv(&pivot).expect("nonzero pivot in a field");
            for i in k + 1..n {
                let f = field.mul(m.get(i, k), &inv);
                for j in k..n {
                    let v = field.sub(m.get(i, j), &field.mul(&f, m.get(k, j)));
                    m.set(i, j, v);
                }
            }
        }
        self.ring.convert(&field, &det).expect("determinant of an integer matrix is an integer")
    }

    /// Inverse, if the matrix is invertible over its own ring.
    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let field = self.ring.fraction_field();
        let n = self.rows;
        let mut m = self.convert(field).ok()?;
        let mut inv = Matrix::identity(field, n);
        for k in 0..n {
            let p = pivot_row(&m, k)?;
            m.swap_rows(p, k);
            inv.swap_rows(p, k);
            let pinv = field.inv(m.get(k, k))?;
            for j in 0..n {
                m.set(k, j, field.mul(m.get(k, j), &pinv));
                inv.set(k, j, field.mul(inv.get(k, j), &pinv));
            }
            for i in 0..n {
                if i == k || field.is_zero(m.get(i, k)) {
                    continue;
                }
                let f = m.get(i, k).clone();
                for j in 0..n {
                    let a = field.sub(m.get(i, j), &field.mul(&f, m.get(k, j)));
                    m.set(i, j, a);
                    let b = field.sub(inv.get(i, j), &field.mul(&f, inv.get(k, j)));
                    inv.set(i, j, b);
                }
            }
        }
        inv.convert(self.ring).ok()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Parses a row-major literal `[a, b; c, d]`.
    pub fn parse(ring: CoeffRing, text: &str) -> std::result::Result<Matrix, String> {
        let body = text.trim().strip_prefix('[').and_then(|s| s.strip_suffix(']')).ok_or("matrix literal must be enclosed in [ ]")?;
        let mut rows: Vec<Vec<Coeff>> = Vec::new();
        for row in body.split(';') {
            let row = row.trim();
            let entries: Vec<&str> = if row.contains(',') || row.contains("mod") {
                row.split(',').collect()
            } else {
                row.split_whitespace().collect()
            };
            let parsed = entries.iter().map(|e| ring.parse_coeff(e)).collect::<std::result::Result<Vec<_>, _>>()?;
            rows.push(parsed);
        }
        let cols = rows[0].len();
        if rows.iter().any(|r| r.len() != cols) {
            return Err("matrix rows have different lengths".to_string());
        }
        let r = rows.len();
        Ok(Matrix::new(ring, r, cols, rows.into_iter().flatten().collect()))
    }
}

fn pivot_row(m: &Matrix, k: usize) -> Option<usize> {
    let ring = m.ring;
    match ring {
        CoeffRing::ApproxComplex(_) => (k..m.rows)
            .filter(|&i| !ring.is_zero(m.get(i, k)))
            .max_by(|&a, &b| {
                let na = ring.to_complex(m.get(a, k)).map_or(0.0, |z| z.norm());
                let nb = ring.to_complex(m.get(b, k)).map_or(0.0, |z| z.norm());
                na.partial_cmp(&nb).unwrap_or(std::cmp::Ordering::Equal)
            }),
        _ => (k..m.rows).find(|&i| !ring.is_zero(m.get(i, k))),
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
        }
        write!(f, "]")
    }
}

/// A matrix of Laurent polynomials in `t^(1/2)`.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyMatrix {
    ring: CoeffRing,
    rows: usize,
    cols: usize,
    entries: Vec<HalfLaurent>,
}

impl PolyMatrix {
    pub fn zeros(ring: CoeffRing, rows: usize, cols: usize) -> Self {
        PolyMatrix { ring, rows, cols, entries: vec![HalfLaurent::zero(ring); rows * cols] }
    }

    pub fn from_rows(ring: CoeffRing, rows: Vec<Vec<HalfLaurent>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged polynomial matrix");
        PolyMatrix { ring, rows: r, cols: c, entries: rows.into_iter().flatten().collect() }
    }

    /// `t^(doubled/2) * m` as a polynomial matrix.
    pub fn from_scaled(m: &Matrix, doubled: i64) -> Self {
        let ring = m.ring();
        let mut out = PolyMatrix::zeros(ring, m.rows(), m.cols());
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                out.set(i, j, HalfLaurent::monomial(ring, m.get(i, j).clone(), doubled));
            }
        }
        out
    }

    pub fn ring(&self) -> CoeffRing {
        self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &HalfLaurent {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: HalfLaurent) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn add_assign(&mut self, other: &PolyMatrix) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        for (a, b) in self.entries.iter_mut().zip(&other.entries) {
            *a = &*a + b;
        }
    }

    pub fn scale(&self, c: &Coeff) -> PolyMatrix {
        PolyMatrix { ring: self.ring, rows: self.rows, cols: self.cols, entries: self.entries.iter().map(|e| e.scale(c)).collect() }
    }

    /// Writes `block` with its top-left corner at `(row, col)`.
    pub fn put_block(&mut self, row: usize, col: usize, block: &PolyMatrix) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.set(row + i, col + j, block.get(i, j).clone());
            }
        }
    }

    pub fn mul(&self, other: &PolyMatrix) -> PolyMatrix {
        assert_eq!(self.cols, other.rows, "matrix shapes do not compose");
        let mut out = PolyMatrix::zeros(self.ring, self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = HalfLaurent::zero(self.ring);
                for k in 0..self.cols {
                    acc = &acc + &(self.get(i, k) * other.get(k, j));
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    fn check_square(&self) -> Result<()> {
        if self.rows == self.cols {
            Ok(())
        } else {
            Err(Error::NotSquare { rows: self.rows, cols: self.cols })
        }
    }

    /// Determinant, exact or numeric according to the coefficient ring.
    pub fn det(&self) -> Result<HalfLaurent> {
        if self.ring.is_exact() {
            self.det_exact()
        } else {
            self.det_numeric()
        }
    }

    /// Exact determinant by fraction-free elimination over the polynomial
    /// ring, after clearing a monomial from every row.
    pub fn det_exact(&self) -> Result<HalfLaurent> {
        self.check_square()?;
        let backend = Backend::for_ring(self.ring).ok_or(Error::InexactRing)?;
        let Some(layout) = RowLayout::of(self) else {
            return Ok(HalfLaurent::zero(self.ring));
        };
        let dense = match backend {
            Backend::Int(ops) => layout.run_bareiss(self, &ops),
            Backend::Rat(ops) => layout.run_bareiss(self, &ops),
            Backend::Fp(ops) => layout.run_bareiss(self, &ops),
        };
        Ok(dense)
    }

    /// Determinant by evaluation at roots of unity and inverse DFT.
    /// Intended for [`CoeffRing::ApproxComplex`]; coefficients of modulus
    /// at most the ring tolerance are dropped.
    pub fn det_numeric(&self) -> Result<HalfLaurent> {
        self.check_square()?;
        let ring = self.ring;
        let cx = CoeffRing::ApproxComplex(ring.tolerance());
        let Some(layout) = RowLayout::of(self) else {
            return Ok(HalfLaurent::zero(cx));
        };
        let n = self.rows;
        let points = layout.degree_bound + 1;
        let mut values = Vec::with_capacity(points);
        for k in 0..points {
            let u = Complex64::from_polar(1.0, 2.0 * PI * k as f64 / points as f64);
            let mut a = vec![vec![Complex64::new(0.0, 0.0); n]; n];
            for (i, row) in a.iter_mut().enumerate() {
                for (j, slot) in row.iter_mut().enumerate() {
                    let mut acc = Complex64::new(0.0, 0.0);
                    for (e, c) in self.get(i, j).terms() {
                        let z = ring.to_complex(c).ok_or(Error::InexactRing)?;
                        acc += z * u.powi(layout.index(i, e) as i32);
                    }
                    *slot = acc;
                }
            }
            let d = dense::complex_det(a);
            if !d.is_finite() {
                return Err(Error::Interpolation(format!("non-finite determinant at sample {k}")));
            }
            values.push(d);
        }
        let mut out = HalfLaurent::zero(cx);
        for j in 0..points {
            let mut c = Complex64::new(0.0, 0.0);
            for (k, v) in values.iter().enumerate() {
                c += v * Complex64::from_polar(1.0, -2.0 * PI * (j * k % points) as f64 / points as f64);
            }
            c /= points as f64;
            if c.norm() > ring.tolerance() {
                out.add_term(layout.exponent(j), Coeff::Cx(c));
            }
        }
        Ok(out)
    }
}

/// Per-row monomial shifts and the exponent step shared by all entries.
struct RowLayout {
    row_min: Vec<i64>,
    /// 2 when every exponent is an integer power of `t`, else 1.
    step: i64,
    total_shift: i64,
    degree_bound: usize,
}

impl RowLayout {
    /// `None` when some row is identically zero.
    fn of(m: &PolyMatrix) -> Option<RowLayout> {
        let mut row_min = Vec::with_capacity(m.rows);
        let mut degree_bound = 0usize;
        let mut all_even = true;
        for i in 0..m.rows {
            let mut lo = i64::MAX;
            let mut hi = i64::MIN;
            for j in 0..m.cols {
                let e = m.get(i, j);
                if let (Some(l), Some(h)) = (e.lowest(), e.highest()) {
                    lo = lo.min(l);
                    hi = hi.max(h);
                }
            }
            if lo == i64::MAX {
                return None;
            }
            row_min.push(lo);
            degree_bound += (hi - lo) as usize;
        }
        for (i, &lo) in row_min.iter().enumerate() {
            for j in 0..m.cols {
                all_even &= m.get(i, j).terms().all(|(e, _)| (e - lo) % 2 == 0);
            }
        }
        let step = if all_even { 2 } else { 1 };
        Some(RowLayout { total_shift: row_min.iter().sum(), degree_bound: degree_bound / step as usize, row_min, step })
    }

    fn index(&self, row: usize, doubled: i64) -> usize {
        ((doubled - self.row_min[row]) / self.step) as usize
    }

    fn exponent(&self, index: usize) -> i64 {
        index as i64 * self.step + self.total_shift
    }

    fn run_bareiss<O: ScalarOps>(&self, m: &PolyMatrix, ops: &O) -> HalfLaurent {
        let mut grid = Vec::with_capacity(m.rows);
        for i in 0..m.rows {
            let mut row = Vec::with_capacity(m.cols);
            for j in 0..m.cols {
                let entry = m.get(i, j);
                let len = entry.highest().map_or(0, |h| self.index(i, h) + 1);
                let mut p = vec![ops.zero(); len];
                for (e, c) in entry.terms() {
                    p[self.index(i, e)] = ops.lift(c);
                }
                row.push(p);
            }
            grid.push(row);
        }
        let det = dense::bareiss(ops, grid);
        HalfLaurent::from_terms(
            m.ring,
            det.into_iter().enumerate().filter(|(_, c)| !ops.is_zero(c)).map(|(i, c)| (self.exponent(i), ops.lower(c))),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: CoeffRing = CoeffRing::Rationals;

    fn lp(ring: CoeffRing, terms: &[(i64, i64)]) -> HalfLaurent {
        HalfLaurent::from_int_terms(ring, terms)
    }

    #[test]
    fn empty_determinant_is_one() {
        let m = PolyMatrix::zeros(Q, 0, 0);
        assert!(m.det_exact().unwrap().is_one());
        let c = PolyMatrix::zeros(CoeffRing::approx_complex(), 0, 0);
        assert!(c.det_numeric().unwrap().is_one());
    }

    #[test]
    fn two_by_two() {
        let t = lp(Q, &[(1, 1)]);
        let one = HalfLaurent::one(Q);
        let m = PolyMatrix::from_rows(Q, vec![vec![t.clone(), one.clone()], vec![one, t]]);
        assert_eq!(m.det_exact().unwrap(), lp(Q, &[(2, 1), (0, -1)]));
    }

    #[test]
    fn laurent_rows_are_shifted_back() {
        let z = CoeffRing::Integers;
        // diag(t^-1, t^-2 + t) -> t^-3 + 1
        let m = PolyMatrix::from_rows(
            z,
            vec![vec![lp(z, &[(-1, 1)]), HalfLaurent::zero(z)], vec![HalfLaurent::zero(z), lp(z, &[(-2, 1), (1, 1)])]],
        );
        assert_eq!(m.det_exact().unwrap(), lp(z, &[(-3, 1), (0, 1)]));
    }

    #[test]
    fn numeric_diagonal() {
        let c = CoeffRing::approx_complex();
        let m = PolyMatrix::from_rows(
            c,
            vec![vec![lp(c, &[(1, 1), (0, -2)]), HalfLaurent::zero(c)], vec![HalfLaurent::zero(c), lp(c, &[(1, 1), (0, -3)])]],
        );
        let d = m.det_numeric().unwrap();
        assert!(d.approx_eq(&lp(c, &[(2, 1), (1, -5), (0, 6)])), "{d}");
    }

    #[test]
    fn zero_row_gives_zero() {
        let m = PolyMatrix::from_rows(Q, vec![vec![HalfLaurent::zero(Q), HalfLaurent::zero(Q)], vec![HalfLaurent::one(Q), HalfLaurent::one(Q)]]);
        assert!(m.det_exact().unwrap().is_zero());
    }

    #[test]
    fn not_square() {
        assert!(matches!(PolyMatrix::zeros(Q, 1, 2).det_exact(), Err(Error::NotSquare { .. })));
    }

    #[test]
    fn coefficient_matrix_inverse() {
        let f2 = CoeffRing::PrimeField(2);
        let m = Matrix::from_i64(f2, &[&[1, 1], &[0, 1]]);
        assert_eq!(m.inverse().unwrap(), m);
        let z = CoeffRing::Integers;
        assert!(Matrix::from_i64(z, &[&[2, 0], &[0, 1]]).inverse().is_none());
        let a = Matrix::from_i64(z, &[&[2, 1], &[1, 1]]);
        assert!(a.mul(&a.inverse().unwrap()).is_identity());
        assert_eq!(a.det(), z.from_i64(1));
    }

    #[test]
    fn literal_parsing() {
        let f7 = CoeffRing::prime_field(7).unwrap();
        let m = Matrix::parse(f7, "[1, 3 mod 7; 0, 1]").unwrap();
        assert_eq!(m.get(0, 1), &Coeff::Mod(3));
        let q = Matrix::parse(Q, "[1 2; 3 4]").unwrap();
        assert_eq!(q.to_string(), "[1, 2; 3, 4]");
        assert!(Matrix::parse(Q, "[1, 2; 3]").is_err());
        assert!(Matrix::parse(Q, "1, 2").is_err());
    }
}
