//! Exact (or tolerance-based) sparse linear algebra over a pluggable field.
//!
//! A [`Field`] is a context object: elements are plain values, the context
//! carries the modulus or tolerance.  Three fields are provided: exact
//! rationals, a word-sized prime field, and approximate complex numbers.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Debug;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;

use crate::error::{Error, Result};
use crate::scalar::{Coeff, Rational, Scalar};

/// Field arithmetic through a context value.
pub trait Field: Clone + Debug + Send + Sync {
    /// Element type.
    type Elem: Clone + PartialEq + Debug + Send + Sync;
    /// Additive identity.
    fn zero(&self) -> Self::Elem;
    /// Multiplicative identity.
    fn one(&self) -> Self::Elem;
    /// Zero test (tolerance-based for approximate fields).
    fn is_zero(&self, a: &Self::Elem) -> bool;
    /// a + b.
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// a − b.
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// a · b.
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// −a.
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// a⁻¹ for nonzero a.
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    /// Image of an I/O scalar.
    fn from_scalar(&self, s: &Scalar) -> Result<Self::Elem>;
    /// Image of an integer.
    fn from_i64(&self, n: i64) -> Self::Elem;
    /// Whether arithmetic is exact.
    fn exact(&self) -> bool;
    /// Short description for reports.
    fn describe(&self) -> String;
    /// Image of a polynomial coefficient.
    fn from_coeff<K: Coeff>(&self, k: &K) -> Result<Self::Elem> {
        self.from_scalar(&k.to_scalar())
    }
}

/// The exact field ℚ.
#[derive(Clone, Debug, Default)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = Rational;
    fn zero(&self) -> Rational {
        Rational::zero()
    }
    fn one(&self) -> Rational {
        Rational::one()
    }
    fn is_zero(&self, a: &Rational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &Rational, b: &Rational) -> Rational {
        a + b
    }
    fn sub(&self, a: &Rational, b: &Rational) -> Rational {
        a - b
    }
    fn mul(&self, a: &Rational, b: &Rational) -> Rational {
        a * b
    }
    fn neg(&self, a: &Rational) -> Rational {
        -a
    }
    fn inv(&self, a: &Rational) -> Rational {
        a.recip()
    }
    fn from_scalar(&self, s: &Scalar) -> Result<Rational> {
        Rational::from_scalar(s)
    }
    fn from_i64(&self, n: i64) -> Rational {
        Rational::from_integer(BigInt::from(n))
    }
    fn exact(&self) -> bool {
        true
    }
    fn describe(&self) -> String {
        "Q".into()
    }
}

/// The prime field 𝔽_p with p < 2⁶³.
#[derive(Clone, Debug)]
pub struct PrimeField {
    p: u64,
}

/// The Mersenne prime 2⁶¹ − 1, used when no seed is supplied.
pub const DEFAULT_PRIME: u64 = (1u64 << 61) - 1;

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    r
}

/// Deterministic Miller–Rabin for 64-bit integers.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for sp in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(sp) {
            return n == sp;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

impl PrimeField {
    /// 𝔽_p for a given prime.
    pub fn new(p: u64) -> Result<Self> {
        if !is_prime_u64(p) || p >= (1u64 << 63) {
            return Err(Error::Domain(format!("{} is not a usable prime", p)));
        }
        Ok(PrimeField { p })
    }
    /// A random prime in [2⁶¹, 2⁶²) drawn from `rng`.
    pub fn random<R: Rng>(rng: &mut R) -> Self {
        loop {
            let c = rng.gen_range((1u64 << 61)..(1u64 << 62)) | 1;
            if is_prime_u64(c) {
                return PrimeField { p: c };
            }
        }
    }
    /// The modulus.
    pub fn modulus(&self) -> u64 {
        self.p
    }
    fn reduce_big(&self, n: &BigInt) -> u64 {
        let m = n.mod_floor(&BigInt::from(self.p));
        m.to_u64().expect("reduced residue fits")
    }
}

impl Default for PrimeField {
    fn default() -> Self {
        PrimeField { p: DEFAULT_PRIME }
    }
}

impl Field for PrimeField {
    type Elem = u64;
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        mul_mod(*a, *b, self.p)
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn inv(&self, a: &u64) -> u64 {
        assert!(*a != 0, "inverse of zero");
        pow_mod(*a, self.p - 2, self.p)
    }
    fn from_scalar(&self, s: &Scalar) -> Result<u64> {
        match s {
            Scalar::Rational(r) => {
                let d = self.reduce_big(r.denom());
                if d == 0 {
                    return Err(Error::Domain(format!("denominator divisible by the prime {}", self.p)));
                }
                Ok(mul_mod(self.reduce_big(r.numer()), self.inv(&d), self.p))
            }
            Scalar::Complex(_) => Err(Error::Domain("complex coefficient over a prime field".into())),
        }
    }
    fn from_i64(&self, n: i64) -> u64 {
        self.reduce_big(&BigInt::from(n))
    }
    fn exact(&self) -> bool {
        true
    }
    fn describe(&self) -> String {
        format!("F_{}", self.p)
    }
}

/// Complex doubles with a zero tolerance.
#[derive(Clone, Debug)]
pub struct ComplexApprox {
    /// Entries with modulus below this are treated as zero.
    pub tol: f64,
}

impl Default for ComplexApprox {
    fn default() -> Self {
        ComplexApprox { tol: 1e-9 }
    }
}

impl Field for ComplexApprox {
    type Elem = Complex64;
    fn zero(&self) -> Complex64 {
        Complex64::new(0.0, 0.0)
    }
    fn one(&self) -> Complex64 {
        Complex64::new(1.0, 0.0)
    }
    fn is_zero(&self, a: &Complex64) -> bool {
        a.norm() < self.tol
    }
    fn add(&self, a: &Complex64, b: &Complex64) -> Complex64 {
        a + b
    }
    fn sub(&self, a: &Complex64, b: &Complex64) -> Complex64 {
        a - b
    }
    fn mul(&self, a: &Complex64, b: &Complex64) -> Complex64 {
        a * b
    }
    fn neg(&self, a: &Complex64) -> Complex64 {
        -a
    }
    fn inv(&self, a: &Complex64) -> Complex64 {
        a.inv()
    }
    fn from_scalar(&self, s: &Scalar) -> Result<Complex64> {
        Ok(s.to_complex())
    }
    fn from_i64(&self, n: i64) -> Complex64 {
        Complex64::new(n as f64, 0.0)
    }
    fn exact(&self) -> bool {
        false
    }
    fn describe(&self) -> String {
        format!("C (tol {:e})", self.tol)
    }
}

/// Sparse vector: sorted `(index, value)` pairs with no stored zeros.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseVec<E> {
    entries: Vec<(usize, E)>,
}

impl<E: Clone + PartialEq> SparseVec<E> {
    /// The zero vector.
    pub fn new() -> Self {
        SparseVec { entries: Vec::new() }
    }
    /// Build from unsorted pairs, combining duplicates.
    pub fn from_pairs<F: Field<Elem = E>>(f: &F, pairs: impl IntoIterator<Item = (usize, E)>) -> Self {
        let mut m: BTreeMap<usize, E> = BTreeMap::new();
        for (i, v) in pairs {
            let e = m.entry(i).or_insert_with(|| f.zero());
            *e = f.add(e, &v);
        }
        SparseVec { entries: m.into_iter().filter(|(_, v)| !f.is_zero(v)).collect() }
    }
    /// A unit vector.
    pub fn unit<F: Field<Elem = E>>(f: &F, i: usize) -> Self {
        SparseVec { entries: vec![(i, f.one())] }
    }
    /// Entries.
    pub fn entries(&self) -> &[(usize, E)] {
        &self.entries
    }
    /// Whether zero.
    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }
    /// Number of nonzeros.
    pub fn nnz(&self) -> usize {
        self.entries.len()
    }
    /// `self + c · other`.
    pub fn axpy<F: Field<Elem = E>>(&self, f: &F, c: &E, other: &Self) -> Self {
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.entries, &other.entries);
        while i < a.len() || j < b.len() {
            if j >= b.len() || (i < a.len() && a[i].0 < b[j].0) {
                out.push(a[i].clone());
                i += 1;
            } else if i >= a.len() || b[j].0 < a[i].0 {
                let v = f.mul(c, &b[j].1);
                if !f.is_zero(&v) {
                    out.push((b[j].0, v));
                }
                j += 1;
            } else {
                let v = f.add(&a[i].1, &f.mul(c, &b[j].1));
                if !f.is_zero(&v) {
                    out.push((a[i].0, v));
                }
                i += 1;
                j += 1;
            }
        }
        SparseVec { entries: out }
    }
    /// `c · self`.
    pub fn scale<F: Field<Elem = E>>(&self, f: &F, c: &E) -> Self {
        if f.is_zero(c) {
            return Self::new();
        }
        SparseVec {
            entries: self
                .entries
                .iter()
                .map(|(i, v)| (*i, f.mul(c, v)))
                .filter(|(_, v)| !f.is_zero(v))
                .collect(),
        }
    }
    /// Entry at index `i`, if nonzero.
    pub fn get(&self, i: usize) -> Option<&E> {
        self.entries.binary_search_by_key(&i, |(k, _)| *k).ok().map(|p| &self.entries[p].1)
    }
}

impl<E: Clone + PartialEq> Default for SparseVec<E> {
    fn default() -> Self {
        Self::new()
    }
}

/// Row-echelon basis of a subspace with leading-entry pivots.
///
/// Reduction eliminates pivot columns in increasing order, so the reduced
/// form of a vector is canonical: it has zeros in every pivot column.
#[derive(Clone, Debug)]
pub struct Echelon<F: Field> {
    field: F,
    rows: HashMap<usize, SparseVec<F::Elem>>,
}

impl<F: Field> Echelon<F> {
    /// An empty basis.
    pub fn new(field: F) -> Self {
        Echelon { field, rows: HashMap::new() }
    }
    /// The field.
    pub fn field(&self) -> &F {
        &self.field
    }
    /// Dimension of the span.
    pub fn rank(&self) -> usize {
        self.rows.len()
    }
    /// Whether column `c` is a pivot.
    pub fn is_pivot(&self, c: usize) -> bool {
        self.rows.contains_key(&c)
    }
    /// Canonical reduction modulo the span.
    pub fn reduce(&self, v: &SparseVec<F::Elem>) -> SparseVec<F::Elem> {
        let f = &self.field;
        let mut cur = v.clone();
        let mut cursor = 0usize;
        loop {
            let next = cur
                .entries()
                .iter()
                .find(|(c, _)| *c >= cursor && self.rows.contains_key(c))
                .map(|(c, e)| (*c, e.clone()));
            match next {
                None => return cur,
                Some((c, e)) => {
                    let row = &self.rows[&c];
                    cur = cur.axpy(f, &f.neg(&e), row);
                    cursor = c + 1;
                }
            }
        }
    }
    /// Insert a vector; returns true if it enlarged the span.
    pub fn insert(&mut self, v: &SparseVec<F::Elem>) -> bool {
        let r = self.reduce(v);
        match r.entries().first() {
            None => false,
            Some((c, lead)) => {
                let c = *c;
                let inv = self.field.inv(lead);
                let row = r.scale(&self.field, &inv);
                self.rows.insert(c, row);
                true
            }
        }
    }
    /// Pivot columns, ascending.
    pub fn pivots(&self) -> Vec<usize> {
        let mut p: Vec<usize> = self.rows.keys().copied().collect();
        p.sort_unstable();
        p
    }
}

/// Rank of a list of sparse row vectors.
pub fn rank<F: Field>(f: &F, rows: &[SparseVec<F::Elem>]) -> usize {
    let mut e = Echelon::new(f.clone());
    for r in rows {
        e.insert(r);
    }
    e.rank()
}
