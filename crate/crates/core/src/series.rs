//! Truncated power series over ℚ and I×I matrices of them.

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::{qi, Rational};

/// A power series truncated after `t^order`.
#[derive(Clone, PartialEq, Eq)]
pub struct Series {
    coeffs: Vec<Rational>,
}

impl fmt::Debug for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Series[")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", c)?;
        }
        write!(f, "]")
    }
}

impl Series {
    /// Zero series of the given order.
    pub fn zero(order: usize) -> Self {
        Series { coeffs: vec![Rational::zero(); order + 1] }
    }
    /// The constant 1.
    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = Rational::one();
        s
    }
    /// From coefficients; extra coefficients are dropped, missing ones are zero.
    pub fn from_coeffs(order: usize, cs: &[Rational]) -> Self {
        let mut s = Self::zero(order);
        for (i, c) in cs.iter().enumerate().take(order + 1) {
            s.coeffs[i] = c.clone();
        }
        s
    }
    /// From integer coefficients.
    pub fn from_ints(order: usize, cs: &[i64]) -> Self {
        let v: Vec<Rational> = cs.iter().map(|&c| qi(c)).collect();
        Self::from_coeffs(order, &v)
    }
    /// The monomial `c·t^k` (zero if `k > order`).
    pub fn monomial(order: usize, k: usize, c: Rational) -> Self {
        let mut s = Self::zero(order);
        if k <= order {
            s.coeffs[k] = c;
        }
        s
    }
    /// Truncation order N.
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }
    /// Coefficient of `t^k` (zero beyond the order).
    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }
    /// All coefficients.
    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }
    /// Coefficients as integers, if all are integral.
    pub fn to_integers(&self) -> Option<Vec<i64>> {
        use num_traits::ToPrimitive;
        self.coeffs.iter().map(|c| if c.is_integer() { c.to_integer().to_i64() } else { None }).collect()
    }
    /// Whether every coefficient is zero.
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }
    /// Sum.
    pub fn add(&self, o: &Series) -> Series {
        let n = self.order().min(o.order());
        Series { coeffs: (0..=n).map(|k| &self.coeffs[k] + &o.coeffs[k]).collect() }
    }
    /// Difference.
    pub fn sub(&self, o: &Series) -> Series {
        let n = self.order().min(o.order());
        Series { coeffs: (0..=n).map(|k| &self.coeffs[k] - &o.coeffs[k]).collect() }
    }
    /// Negation.
    pub fn neg(&self) -> Series {
        Series { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
    /// Scalar multiple.
    pub fn scale(&self, c: &Rational) -> Series {
        Series { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }
    /// Truncated product.
    pub fn mul(&self, o: &Series) -> Series {
        let n = self.order().min(o.order());
        let mut out = vec![Rational::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(n + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate().take(n + 1 - i) {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        Series { coeffs: out }
    }
    /// Multiplicative inverse; needs an invertible constant term.
    pub fn inverse(&self) -> Result<Series> {
        let c0 = &self.coeffs[0];
        if c0.is_zero() {
            return Err(Error::SingularConstantTerm("series has zero constant term".into()));
        }
        let inv0 = c0.recip();
        let n = self.order();
        let mut out = vec![Rational::zero(); n + 1];
        out[0] = inv0.clone();
        for k in 1..=n {
            let mut acc = Rational::zero();
            for j in 1..=k {
                if !self.coeffs[j].is_zero() {
                    acc += &self.coeffs[j] * &out[k - j];
                }
            }
            out[k] = -(acc * &inv0);
        }
        Ok(Series { coeffs: out })
    }
    /// Substitute `t ↦ t^s`.
    pub fn substitute_power(&self, s: usize) -> Series {
        assert!(s >= 1);
        let n = self.order();
        let mut out = vec![Rational::zero(); n + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            if k * s <= n {
                out[k * s] = c.clone();
            }
        }
        Series { coeffs: out }
    }
    /// Change the truncation order (pads with zeros or truncates).
    pub fn with_order(&self, order: usize) -> Series {
        Series::from_coeffs(order, &self.coeffs)
    }
    /// `(1 − t^s)^{-k}` truncated.
    pub fn inverse_power_of_one_minus(order: usize, s: usize, k: u32) -> Series {
        let base = Series::one(order).sub(&Series::monomial(order, s, Rational::one()));
        let mut p = Series::one(order);
        for _ in 0..k {
            p = p.mul(&base);
        }
        p.inverse().expect("constant term is 1")
    }
    /// Render as `c0 c1 c2 …`.
    pub fn render(&self) -> String {
        self.coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" ")
    }
}

/// Square matrix of truncated series.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MatrixSeries {
    entries: Vec<Vec<Series>>,
    order: usize,
}

impl MatrixSeries {
    /// Zero matrix.
    pub fn zero(n: usize, order: usize) -> Self {
        MatrixSeries { entries: vec![vec![Series::zero(order); n]; n], order }
    }
    /// Identity 𝟙.
    pub fn identity(n: usize, order: usize) -> Self {
        let mut m = Self::zero(n, order);
        for i in 0..n {
            m.entries[i][i] = Series::one(order);
        }
        m
    }
    /// From entries; all must share the order.
    pub fn from_entries(entries: Vec<Vec<Series>>) -> Result<Self> {
        let n = entries.len();
        let order = entries.first().and_then(|r| r.first()).map(|s| s.order()).unwrap_or(0);
        for r in &entries {
            if r.len() != n {
                return Err(Error::Shape("matrix series must be square".into()));
            }
            if r.iter().any(|s| s.order() != order) {
                return Err(Error::Shape("entries have different truncation orders".into()));
            }
        }
        Ok(MatrixSeries { entries, order })
    }
    /// Size I.
    pub fn size(&self) -> usize {
        self.entries.len()
    }
    /// Truncation order.
    pub fn order(&self) -> usize {
        self.order
    }
    /// Entry `(i, j)`.
    pub fn entry(&self, i: usize, j: usize) -> &Series {
        &self.entries[i][j]
    }
    /// Mutable entry.
    pub fn entry_mut(&mut self, i: usize, j: usize) -> &mut Series {
        &mut self.entries[i][j]
    }
    /// Constant-term matrix coefficient of `t^k`.
    pub fn coeff_matrix(&self, k: usize) -> Vec<Vec<Rational>> {
        self.entries.iter().map(|r| r.iter().map(|s| s.coeff(k)).collect()).collect()
    }
    /// Sum.
    pub fn add(&self, o: &MatrixSeries) -> MatrixSeries {
        let n = self.size();
        let e = (0..n).map(|i| (0..n).map(|j| self.entries[i][j].add(&o.entries[i][j])).collect()).collect();
        MatrixSeries { entries: e, order: self.order.min(o.order) }
    }
    /// Difference.
    pub fn sub(&self, o: &MatrixSeries) -> MatrixSeries {
        let n = self.size();
        let e = (0..n).map(|i| (0..n).map(|j| self.entries[i][j].sub(&o.entries[i][j])).collect()).collect();
        MatrixSeries { entries: e, order: self.order.min(o.order) }
    }
    /// Transpose.
    pub fn transpose(&self) -> MatrixSeries {
        let n = self.size();
        let e = (0..n).map(|i| (0..n).map(|j| self.entries[j][i].clone()).collect()).collect();
        MatrixSeries { entries: e, order: self.order }
    }
    /// Truncated product.
    pub fn mul(&self, o: &MatrixSeries) -> MatrixSeries {
        let n = self.size();
        let order = self.order.min(o.order);
        let mut out = MatrixSeries::zero(n, order);
        for i in 0..n {
            for j in 0..n {
                let mut acc = Series::zero(order);
                for k in 0..n {
                    acc = acc.add(&self.entries[i][k].mul(&o.entries[k][j]));
                }
                out.entries[i][j] = acc;
            }
        }
        out
    }
    /// Substitute `t ↦ t^s` entrywise.
    pub fn substitute_power(&self, s: usize) -> MatrixSeries {
        let e = self.entries.iter().map(|r| r.iter().map(|x| x.substitute_power(s)).collect()).collect();
        MatrixSeries { entries: e, order: self.order }
    }
    /// Change the truncation order.
    pub fn with_order(&self, order: usize) -> MatrixSeries {
        let e = self.entries.iter().map(|r| r.iter().map(|x| x.with_order(order)).collect()).collect();
        MatrixSeries { entries: e, order }
    }
    /// Truncated inverse; needs an invertible constant-term matrix.
    pub fn inverse(&self) -> Result<MatrixSeries> {
        let n = self.size();
        let m0 = self.coeff_matrix(0);
        let inv0 = invert_rational_matrix(&m0)?;
        let mut xs: Vec<Vec<Vec<Rational>>> = vec![inv0.clone()];
        let ms: Vec<Vec<Vec<Rational>>> = (0..=self.order).map(|k| self.coeff_matrix(k)).collect();
        for k in 1..=self.order {
            // X_k = −X_0 Σ_{j=1..k} M_j X_{k−j}
            let mut acc = vec![vec![Rational::zero(); n]; n];
            for j in 1..=k {
                mat_add_assign(&mut acc, &mat_mul(&ms[j], &xs[k - j]));
            }
            let xk = mat_mul(&inv0, &acc).into_iter().map(|r| r.into_iter().map(|v| -v).collect()).collect();
            xs.push(xk);
        }
        let mut out = MatrixSeries::zero(n, self.order);
        for i in 0..n {
            for j in 0..n {
                let cs: Vec<Rational> = xs.iter().map(|x| x[i][j].clone()).collect();
                out.entries[i][j] = Series::from_coeffs(self.order, &cs);
            }
        }
        Ok(out)
    }
    /// Determinant in the truncated series ring (elimination with pivots
    /// whose constant term is nonzero).
    pub fn det(&self) -> Result<Series> {
        let n = self.size();
        let mut a = self.entries.clone();
        let mut det = Series::one(self.order);
        for col in 0..n {
            let piv = (col..n).find(|&r| !a[r][col].coeff(0).is_zero()).ok_or_else(|| {
                Error::SingularConstantTerm("no pivot with invertible constant term".into())
            })?;
            if piv != col {
                a.swap(piv, col);
                det = det.neg();
            }
            det = det.mul(&a[col][col]);
            let inv = a[col][col].inverse()?;
            for r in col + 1..n {
                if a[r][col].is_zero() {
                    continue;
                }
                let factor = a[r][col].mul(&inv);
                for c in col..n {
                    let t = factor.mul(&a[col][c]);
                    a[r][c] = a[r][c].sub(&t);
                }
            }
        }
        Ok(det)
    }
    /// Whether equal to 𝟙 up to the truncation order.
    pub fn is_identity(&self) -> bool {
        *self == MatrixSeries::identity(self.size(), self.order)
    }
}

fn mat_mul(a: &[Vec<Rational>], b: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let n = a.len();
    let m = b.first().map(|r| r.len()).unwrap_or(0);
    let mut out = vec![vec![Rational::zero(); m]; n];
    for i in 0..n {
        for (k, aik) in a[i].iter().enumerate() {
            if aik.is_zero() {
                continue;
            }
            for j in 0..m {
                if !b[k][j].is_zero() {
                    out[i][j] += aik * &b[k][j];
                }
            }
        }
    }
    out
}

fn mat_add_assign(a: &mut [Vec<Rational>], b: &[Vec<Rational>]) {
    for (ra, rb) in a.iter_mut().zip(b) {
        for (x, y) in ra.iter_mut().zip(rb) {
            *x += y;
        }
    }
}

/// Inverse of a square rational matrix by Gauss–Jordan elimination.
pub fn invert_rational_matrix(m: &[Vec<Rational>]) -> Result<Vec<Vec<Rational>>> {
    let n = m.len();
    let mut a: Vec<Vec<Rational>> = m
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            row
        })
        .collect();
    for col in 0..n {
        let piv = (col..n)
            .find(|&r| !a[r][col].is_zero())
            .ok_or_else(|| Error::SingularConstantTerm("constant-term matrix is singular".into()))?;
        a.swap(piv, col);
        let inv = a[col][col].recip();
        for v in a[col].iter_mut() {
            *v *= &inv;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for c in 0..2 * n {
                    let t = &f * &a[col][c];
                    a[r][c] -= t;
                }
            }
        }
    }
    Ok(a.into_iter().map(|r| r[n..].to_vec()).collect())
}
