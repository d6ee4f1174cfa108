//! Brute-force reference computations for the test suite. Nothing here
//! calls the elimination or interpolation code it is used to check.

use num_complex::Complex64;
use twisted_alexander::algebra::{HalfLaurent, PolyMatrix, RationalFunction};

/// Largest matrix the cofactor expansion accepts.
pub const MAX_COFACTOR_SIZE: usize = 6;

/// Determinant by Laplace expansion along the first row.
pub fn det_cofactor(m: &PolyMatrix) -> Result<HalfLaurent, String> {
    if m.rows() != m.cols() {
        return Err(format!("{}x{} matrix is not square", m.rows(), m.cols()));
    }
    if m.rows() > MAX_COFACTOR_SIZE {
        return Err(format!("{}x{} exceeds the cofactor size cap", m.rows(), m.cols()));
    }
    let n = m.rows();
    let entries: Vec<Vec<HalfLaurent>> = (0..n).map(|i| (0..n).map(|j| m.get(i, j).clone()).collect()).collect();
    let cols: Vec<usize> = (0..n).collect();
    Ok(expand(&entries, 0, &cols, m.ring()))
}

fn expand(a: &[Vec<HalfLaurent>], row: usize, cols: &[usize], ring: twisted_alexander::algebra::CoeffRing) -> HalfLaurent {
    if cols.is_empty() {
        return HalfLaurent::one(ring);
    }
    let mut acc = HalfLaurent::zero(ring);
    for (pos, &c) in cols.iter().enumerate() {
        if a[row][c].is_zero() {
            continue;
        }
        let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let term = &a[row][c] * &expand(a, row + 1, &rest, ring);
        acc = if pos % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    acc
}

/// Sample points `z = t^(1/2)` off the unit circle and away from the
/// positive real axis.
pub fn sample_points(samples: usize) -> Vec<Complex64> {
    (0..samples)
        .map(|k| {
            let r = 1.05 + 0.35 * k as f64 / samples.max(1) as f64;
            Complex64::from_polar(r, 0.13 + 2.9 * k as f64 / samples.max(1) as f64)
        })
        .collect()
}

/// Largest `|f(z^2) - g(z)|` over the sample points.
pub fn eval_compare(f: &RationalFunction, g: impl Fn(Complex64) -> Complex64, samples: usize) -> Result<f64, String> {
    let mut worst: f64 = 0.0;
    for z in sample_points(samples) {
        let fv = f.eval_sqrt(z).ok_or_else(|| format!("pole of f at z = {z}"))?;
        let gv = g(z);
        if !gv.is_finite() {
            return Err(format!("pole of g at z = {z}"));
        }
        worst = worst.max((fv - gv).norm());
    }
    Ok(worst)
}

/// Largest coefficient difference, measured without any pruning.
pub fn max_coeff_deviation(a: &HalfLaurent, b: &HalfLaurent) -> f64 {
    let exps: std::collections::BTreeSet<i64> = a.terms().chain(b.terms()).map(|(e, _)| e).collect();
    let to_c = |p: &HalfLaurent, e: i64| p.ring().to_complex(&p.coeff(e)).expect("complex-embeddable coefficients");
    exps.into_iter().map(|e| (to_c(a, e) - to_c(b, e)).norm()).fold(0.0, f64::max)
}
