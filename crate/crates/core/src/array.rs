//! Two-dimensional Golay complementary arrays and their construction from
//! pairs of one-dimensional seeds.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::golay::{
    is_golay_pair, unit_phasor, wrap_phase, ComplementarityReport, UnimodularSequence, DEFAULT_TOL,
};

/// `rows × cols` grid of unit-modulus entries, held as row-major phases.
#[derive(Debug, Clone, PartialEq)]
pub struct UnimodularArray {
    rows: usize,
    cols: usize,
    phases: Vec<f64>,
}

impl UnimodularArray {
    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self> {
        let n_rows = rows.len();
        let n_cols = rows.first().map_or(0, Vec::len);
        if n_rows == 0 || n_cols == 0 {
            return Err(Error::invalid("array must have at least one row and one column"));
        }
        if let Some((i, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != n_cols) {
            return Err(Error::invalid(format!(
                "ragged array: row {i} has {} entries, expected {n_cols}",
                r.len()
            )));
        }
        Self::from_row_major(n_rows, n_cols, rows.into_iter().flatten().collect())
    }

    pub fn from_row_major(rows: usize, cols: usize, phases: Vec<f64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::invalid("array must have at least one row and one column"));
        }
        if phases.len() != rows * cols {
            return Err(Error::invalid(format!(
                "expected {} phases for a {rows}x{cols} array, got {}",
                rows * cols,
                phases.len()
            )));
        }
        if let Some(bad) = phases.iter().find(|p| !p.is_finite()) {
            return Err(Error::invalid(format!("non-finite phase {bad}")));
        }
        Ok(Self { rows, cols, phases })
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn phase(&self, r: usize, c: usize) -> f64 {
        self.phases[r * self.cols + c]
    }

    pub fn set_phase(&mut self, r: usize, c: usize, phase: f64) {
        self.phases[r * self.cols + c] = phase;
    }

    pub fn phases(&self) -> &[f64] {
        &self.phases
    }

    pub fn phase_rows(&self) -> Vec<Vec<f64>> {
        self.phases.chunks(self.cols).map(<[f64]>::to_vec).collect()
    }

    pub fn entry(&self, r: usize, c: usize) -> Complex64 {
        unit_phasor(self.phase(r, c))
    }

    /// Row-major complex entries.
    pub fn entries(&self) -> Vec<Complex64> {
        self.phases.iter().map(|&p| unit_phasor(p)).collect()
    }

    pub fn transposed(&self) -> Self {
        let mut phases = Vec::with_capacity(self.phases.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                phases.push(self.phase(r, c));
            }
        }
        Self {
            rows: self.cols,
            cols: self.rows,
            phases,
        }
    }

    pub fn rotated(&self, alpha: f64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            phases: self.phases.iter().map(|&p| p + alpha).collect(),
        }
    }
}

/// Two-dimensional aperiodic autocorrelation over
/// `τ1 ∈ -(N1-1)..=N1-1`, `τ2 ∈ -(N2-1)..=N2-1`.
#[derive(Debug, Clone, PartialEq)]
pub struct CorrelationSurface {
    dims: (usize, usize),
    values: Vec<Complex64>,
}

impl CorrelationSurface {
    pub fn dims(&self) -> (usize, usize) {
        self.dims
    }

    fn width(&self) -> usize {
        2 * self.dims.1 - 1
    }

    pub fn at(&self, tau1: isize, tau2: isize) -> Complex64 {
        let (m1, m2) = (self.dims.0 as isize - 1, self.dims.1 as isize - 1);
        if tau1.abs() > m1 || tau2.abs() > m2 {
            return Complex64::new(0.0, 0.0);
        }
        self.values[(tau1 + m1) as usize * self.width() + (tau2 + m2) as usize]
    }

    /// `((τ1, τ2), value)` with `τ1` as the outer index.
    pub fn iter(&self) -> impl Iterator<Item = ((isize, isize), Complex64)> + '_ {
        let (m1, m2) = (self.dims.0 as isize - 1, self.dims.1 as isize - 1);
        let width = self.width();
        self.values.iter().enumerate().map(move |(i, &v)| {
            (((i / width) as isize - m1, (i % width) as isize - m2), v)
        })
    }

    /// `Σ R[τ1, τ2] e^{-j2π(f1 τ1 + f2 τ2)}`.
    pub fn transform(&self, f1: f64, f2: f64) -> Complex64 {
        self.iter()
            .map(|((t1, t2), r)| {
                r * Complex64::from_polar(1.0, -2.0 * PI * (f1 * t1 as f64 + f2 * t2 as f64))
            })
            .sum()
    }
}

pub fn acf2d(a: &UnimodularArray) -> CorrelationSurface {
    let x = a.entries();
    let (n1, n2) = a.dims();
    let at = |r: usize, c: usize| x[r * n2 + c];
    let (m1, m2) = (n1 as isize - 1, n2 as isize - 1);
    let mut values = Vec::with_capacity((2 * n1 - 1) * (2 * n2 - 1));
    for tau1 in -m1..=m1 {
        for tau2 in -m2..=m2 {
            let (t1, t2) = (tau1.unsigned_abs(), tau2.unsigned_abs());
            let mut acc = Complex64::new(0.0, 0.0);
            for i in 0..n1 - t1 {
                for k in 0..n2 - t2 {
                    acc += match (tau1 >= 0, tau2 >= 0) {
                        (true, true) => at(i, k) * at(i + t1, k + t2).conj(),
                        (false, true) => at(i + t1, k) * at(i, k + t2).conj(),
                        (true, false) => at(i, k + t2) * at(i + t1, k).conj(),
                        (false, false) => at(i + t1, k + t2) * at(i, k).conj(),
                    };
                }
            }
            values.push(acc);
        }
    }
    CorrelationSurface {
        dims: (n1, n2),
        values,
    }
}

pub fn is_golay_array_pair(
    u: &UnimodularArray,
    w: &UnimodularArray,
    tol: f64,
) -> Result<ComplementarityReport> {
    if u.dims() != w.dims() {
        return Err(Error::invalid(format!(
            "array dimensions differ: {:?} vs {:?}",
            u.dims(),
            w.dims()
        )));
    }
    if !(tol >= 0.0) {
        return Err(Error::invalid(format!("tolerance must be nonnegative, got {tol}")));
    }
    let (n1, n2) = u.dims();
    let (ru, rw) = (acf2d(u), acf2d(w));
    let mut max_off_peak = 0.0f64;
    let mut peak_deviation = 0.0;
    for ((lag, a), (_, b)) in ru.iter().zip(rw.iter()) {
        if lag == (0, 0) {
            peak_deviation = (a + b - Complex64::new(2.0 * (n1 * n2) as f64, 0.0)).norm();
        } else {
            max_off_peak = max_off_peak.max((a + b).norm());
        }
    }
    Ok(ComplementarityReport::new(max_off_peak, peak_deviation, tol))
}

/// `|Σ U[n1, n2] e^{-j(2π f1 n1 + 2π f2 n2)}|²`.
pub fn psd2d(a: &UnimodularArray, f1: f64, f2: f64) -> f64 {
    let (n1, n2) = a.dims();
    let mut acc = Complex64::new(0.0, 0.0);
    for i in 0..n1 {
        for k in 0..n2 {
            acc += a.entry(i, k)
                * Complex64::from_polar(1.0, -2.0 * PI * (f1 * i as f64 + f2 * k as f64));
        }
    }
    acc.norm_sqr()
}

/// The four outer-product blocks shared by both constructions, as phases:
/// `u1 u2ᵀ`, `-w1 w2ᴴ E`, `u1 w2ᵀ`, `w1 u2ᴴ E`.
struct Blocks {
    l1: usize,
    l2: usize,
    u_top: Vec<f64>,
    u_bottom: Vec<f64>,
    w_top: Vec<f64>,
    w_bottom: Vec<f64>,
}

fn seed_blocks(
    u1: &UnimodularSequence,
    w1: &UnimodularSequence,
    u2: &UnimodularSequence,
    w2: &UnimodularSequence,
) -> Result<Blocks> {
    for (name, u, w) in [("first", u1, w1), ("second", u2, w2)] {
        let report = is_golay_pair(u, w, DEFAULT_TOL)?;
        if !report.complementary {
            return Err(Error::invalid(format!(
                "{name} seed is not a Golay pair (max deviation {:.3e})",
                report.max_deviation()
            )));
        }
    }
    let (l1, l2) = (u1.len(), u2.len());
    let (pu1, pw1, pu2, pw2) = (u1.phases(), w1.phases(), u2.phases(), w2.phases());
    let outer = |f: &dyn Fn(usize, usize) -> f64| -> Vec<f64> {
        (0..l1)
            .flat_map(|i| (0..l2).map(move |k| (i, k)))
            .map(|(i, k)| wrap_phase(f(i, k)))
            .collect()
    };
    // ᴴ conjugates the seed; E reverses its columns
    let flip = |k: usize| l2 - 1 - k;
    Ok(Blocks {
        l1,
        l2,
        u_top: outer(&|i, k| pu1[i] + pu2[k]),
        u_bottom: outer(&|i, k| PI + pw1[i] - pw2[flip(k)]),
        w_top: outer(&|i, k| pu1[i] + pw2[k]),
        w_bottom: outer(&|i, k| pw1[i] - pu2[flip(k)]),
    })
}

/// Vertical stacking; output is `2·L1 × L2`.
pub fn construct_stacked(
    u1: &UnimodularSequence,
    w1: &UnimodularSequence,
    u2: &UnimodularSequence,
    w2: &UnimodularSequence,
) -> Result<(UnimodularArray, UnimodularArray)> {
    let b = seed_blocks(u1, w1, u2, w2)?;
    let stack = |top: &[f64], bottom: &[f64]| {
        UnimodularArray::from_row_major(2 * b.l1, b.l2, [top, bottom].concat())
    };
    Ok((stack(&b.u_top, &b.u_bottom)?, stack(&b.w_top, &b.w_bottom)?))
}

/// Horizontal concatenation; output is `L1 × 2·L2`.
pub fn construct_concat(
    u1: &UnimodularSequence,
    w1: &UnimodularSequence,
    u2: &UnimodularSequence,
    w2: &UnimodularSequence,
) -> Result<(UnimodularArray, UnimodularArray)> {
    let b = seed_blocks(u1, w1, u2, w2)?;
    let join = |left: &[f64], right: &[f64]| {
        let phases = left
            .chunks(b.l2)
            .zip(right.chunks(b.l2))
            .flat_map(|(l, r)| l.iter().chain(r).copied())
            .collect();
        UnimodularArray::from_row_major(b.l1, 2 * b.l2, phases)
    };
    Ok((join(&b.u_top, &b.u_bottom)?, join(&b.w_top, &b.w_bottom)?))
}

/// Which of the two block layouts to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Layout {
    Stacked,
    Concat,
}

pub fn construct(
    layout: Layout,
    u1: &UnimodularSequence,
    w1: &UnimodularSequence,
    u2: &UnimodularSequence,
    w2: &UnimodularSequence,
) -> Result<(UnimodularArray, UnimodularArray)> {
    match layout {
        Layout::Stacked => construct_stacked(u1, w1, u2, w2),
        Layout::Concat => construct_concat(u1, w1, u2, w2),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::golay::{known_golay_pair, Alphabet, CATALOG_TOL};

    fn signs(rows: &[&[i8]]) -> UnimodularArray {
        UnimodularArray::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&s| if s > 0 { 0.0 } else { PI }).collect())
                .collect(),
        )
        .unwrap()
    }

    fn real_entries(a: &UnimodularArray) -> Vec<Vec<f64>> {
        let (_, cols) = a.dims();
        a.entries()
            .chunks(cols)
            .map(|r| {
                r.iter()
                    .map(|z| {
                        assert_eq!(z.im, 0.0);
                        z.re
                    })
                    .collect()
            })
            .collect()
    }

    fn pair(len: usize) -> (UnimodularSequence, UnimodularSequence) {
        known_golay_pair(len, Alphabet::Binary).unwrap()
    }

    #[test]
    fn rejects_empty_and_ragged() {
        assert!(UnimodularArray::from_rows(vec![]).is_err());
        assert!(UnimodularArray::from_rows(vec![vec![]]).is_err());
        assert!(UnimodularArray::from_rows(vec![vec![0.0, 0.0], vec![0.0]]).is_err());
        assert!(UnimodularArray::from_row_major(2, 2, vec![0.0; 3]).is_err());
    }

    #[test]
    fn acf2d_single_entry() {
        let r = acf2d(&signs(&[&[1]]));
        assert_eq!(r.at(0, 0), Complex64::new(1.0, 0.0));
        assert_eq!(r.iter().count(), 1);
        assert_eq!(r.at(1, 0), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn acf2d_peak_is_element_count() {
        let a = UnimodularArray::from_rows(vec![vec![0.1, 2.0], vec![-1.0, 0.5], vec![3.0, 1.2]]).unwrap();
        let r = acf2d(&a);
        assert!((r.at(0, 0) - Complex64::new(6.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn acf2d_all_ones_pins_index_origin() {
        let r = acf2d(&signs(&[&[1, 1], &[1, 1]]));
        let c = |x: f64| Complex64::new(x, 0.0);
        assert_eq!(r.at(0, 0), c(4.0));
        assert_eq!(r.at(0, 1), c(2.0));
        assert_eq!(r.at(1, 0), c(2.0));
        assert_eq!(r.at(1, 1), c(1.0));
        assert_eq!(r.at(-1, 1), c(1.0));
        assert_eq!(r.at(1, -1), c(1.0));
        assert_eq!(r.at(-1, -1), c(1.0));
        assert_eq!(r.at(2, 0), c(0.0));
    }

    #[test]
    fn acf2d_quadrants_on_asymmetric_complex_array() {
        // entries 1, j / -1, 1 ; hand-evaluated lag values
        let a = UnimodularArray::from_rows(vec![vec![0.0, PI / 2.0], vec![PI, 0.0]]).unwrap();
        let r = acf2d(&a);
        let c = Complex64::new;
        // (0,1): U00 conj U01 + U10 conj U11 = -j + -1
        assert_eq!(r.at(0, 1), c(-1.0, -1.0));
        // (1,0): U00 conj U10 + U01 conj U11 = -1 + j
        assert_eq!(r.at(1, 0), c(-1.0, 1.0));
        // (1,1): U00 conj U11 = 1
        assert_eq!(r.at(1, 1), c(1.0, 0.0));
        // (1,-1): U01 conj U10 = -j
        assert_eq!(r.at(1, -1), c(0.0, -1.0));
        // (-1,1): U10 conj U01 = j
        assert_eq!(r.at(-1, 1), c(0.0, 1.0));
        assert_eq!(r.at(-1, -1), r.at(1, 1).conj());
    }

    #[test]
    fn trivial_array_pairs() {
        let one = signs(&[&[1]]);
        let rep = is_golay_array_pair(&one, &one, CATALOG_TOL).unwrap();
        assert!(rep.complementary);
        let ones = signs(&[&[1, 1], &[1, 1]]);
        assert!(!is_golay_array_pair(&ones, &ones, CATALOG_TOL).unwrap().complementary);
        assert!(matches!(
            is_golay_array_pair(&one, &ones, CATALOG_TOL),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn stacked_golden_four_by_two() {
        let (u, w) = pair(2);
        let (big_u, big_w) = construct_stacked(&u, &w, &u, &w).unwrap();
        assert_eq!(big_u.dims(), (4, 2));
        assert_eq!(
            real_entries(&big_u),
            vec![vec![1.0, 1.0], vec![1.0, 1.0], vec![1.0, -1.0], vec![-1.0, 1.0]]
        );
        assert_eq!(
            real_entries(&big_w),
            vec![vec![1.0, -1.0], vec![1.0, -1.0], vec![1.0, 1.0], vec![-1.0, -1.0]]
        );
        assert!(is_golay_array_pair(&big_u, &big_w, CATALOG_TOL).unwrap().complementary);
    }

    #[test]
    fn concat_golden_two_by_four() {
        let (u, w) = pair(2);
        let (big_u, big_w) = construct_concat(&u, &w, &u, &w).unwrap();
        assert_eq!(big_u.dims(), (2, 4));
        assert_eq!(
            real_entries(&big_u),
            vec![vec![1.0, 1.0, 1.0, -1.0], vec![1.0, 1.0, -1.0, 1.0]]
        );
        assert_eq!(
            real_entries(&big_w),
            vec![vec![1.0, -1.0, 1.0, 1.0], vec![1.0, -1.0, -1.0, -1.0]]
        );
        assert!(is_golay_array_pair(&big_u, &big_w, CATALOG_TOL).unwrap().complementary);
    }

    #[test]
    fn length_one_seeds() {
        let (u, w) = pair(1);
        let (a, b) = construct_stacked(&u, &w, &u, &w).unwrap();
        assert_eq!(a.dims(), (2, 1));
        assert!(is_golay_array_pair(&a, &b, CATALOG_TOL).unwrap().complementary);
        let (a, b) = construct_concat(&u, &w, &u, &w).unwrap();
        assert_eq!(a.dims(), (1, 2));
        assert!(is_golay_array_pair(&a, &b, CATALOG_TOL).unwrap().complementary);
    }

    #[test]
    fn surface_seed_dims() {
        let (u1, w1) = known_golay_pair(8, Alphabet::Binary).unwrap();
        let (u2, w2) = known_golay_pair(8, Alphabet::Quaternary).unwrap();
        let (a, b) = construct_stacked(&u1, &w1, &u2, &w2).unwrap();
        assert_eq!(a.dims(), (16, 8));
        assert!(is_golay_array_pair(&a, &b, CATALOG_TOL).unwrap().complementary);
        let (a, b) = construct_concat(&u1, &w1, &u2, &w2).unwrap();
        assert_eq!(a.dims(), (8, 16));
        assert!(is_golay_array_pair(&a, &b, CATALOG_TOL).unwrap().complementary);
    }

    #[test]
    fn non_golay_seed_rejected() {
        let ones = UnimodularSequence::new(vec![0.0, 0.0]).unwrap();
        let (u, w) = pair(2);
        assert!(matches!(
            construct_stacked(&ones, &ones, &u, &w),
            Err(Error::InvalidInput(_))
        ));
        assert!(construct_concat(&u, &w, &ones, &ones).is_err());
    }

    #[test]
    fn psd2d_trivial() {
        let one = signs(&[&[1]]);
        assert!((psd2d(&one, 0.3, 0.7) - 1.0).abs() < 1e-15);
        let ones = signs(&[&[1, 1], &[1, 1]]);
        assert!((psd2d(&ones, 0.0, 0.0) - 16.0).abs() < 1e-12);
    }

    #[test]
    fn acf_transform_is_psd_at_negated_frequency() {
        let a = UnimodularArray::from_rows(vec![vec![0.3, 1.1, -2.0], vec![0.7, 2.5, 0.0]]).unwrap();
        let r = acf2d(&a);
        for (f1, f2) in [(0.1, 0.2), (0.45, -0.3), (0.0, 0.77)] {
            let t = r.transform(f1, f2);
            assert!(t.im.abs() < 1e-10);
            assert!((t.re - psd2d(&a, -f1, -f2)).abs() < 1e-10);
        }
    }
}
