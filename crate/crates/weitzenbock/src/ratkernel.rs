//! Exact arithmetic: rationals, one-variable polynomials and rational
//! functions, dense rational matrices.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::{Error, Result};

pub type Rat = BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Scalars the machine can be evaluated over: plain rationals, or rational
/// functions in `t` when a quantity has to be followed along a ray.
pub trait Field:
    Clone
    + PartialEq
    + fmt::Debug
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn from_rat(r: &Rat) -> Self;
    fn checked_inv(&self) -> Option<Self>;

    fn checked_div(&self, d: &Self) -> Option<Self> {
        d.checked_inv().map(|i| self.clone() * i)
    }
}

impl Field for Rat {
    fn from_rat(r: &Rat) -> Self {
        r.clone()
    }

    fn checked_inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Poly1 {
    coeffs: Vec<Rat>,
}

impl Poly1 {
    /// Builds a polynomial from coefficients, lowest degree first.
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly1 { coeffs }
    }

    pub fn constant(c: Rat) -> Self {
        Poly1::new(vec![c])
    }

    /// The formal variable `t`.
    pub fn t() -> Self {
        Poly1::new(vec![Rat::zero(), Rat::one()])
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rat> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        self.coeffs
            .iter()
            .rev()
            .fold(Rat::zero(), |acc, c| acc * x + c)
    }

    pub fn at_zero(&self) -> Rat {
        self.coeffs.first().cloned().unwrap_or_else(Rat::zero)
    }

    pub fn scale(&self, c: &Rat) -> Self {
        Poly1::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(l) => self.scale(&l.recip()),
            None => self.clone(),
        }
    }

    /// Euclidean division. Panics on a zero divisor.
    pub fn div_rem(&self, d: &Poly1) -> (Poly1, Poly1) {
        let dd = d.degree().expect("division by the zero polynomial");
        let lead_inv = d.coeffs[dd].recip();
        let mut r = self.coeffs.clone();
        let mut q = vec![Rat::zero(); r.len().saturating_sub(dd)];
        while r.len() > dd && !r.is_empty() {
            let k = r.len() - 1 - dd;
            let c = &r[r.len() - 1] * &lead_inv;
            for (i, dc) in d.coeffs.iter().enumerate() {
                r[k + i] -= &c * dc;
            }
            q[k] = c;
            r.pop();
            while r.last().is_some_and(|x| x.is_zero()) {
                r.pop();
            }
        }
        (Poly1::new(q), Poly1::new(r))
    }

    /// Monic greatest common divisor; zero if both inputs are zero.
    pub fn gcd(a: &Poly1, b: &Poly1) -> Poly1 {
        let mut x = a.clone();
        let mut y = b.clone();
        while !y.is_zero() {
            let (_, r) = x.div_rem(&y);
            x = y;
            y = r;
        }
        x.monic()
    }
}

impl Zero for Poly1 {
    fn zero() -> Self {
        Poly1 { coeffs: Vec::new() }
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl One for Poly1 {
    fn one() -> Self {
        Poly1::constant(Rat::one())
    }
}

impl Add for Poly1 {
    type Output = Poly1;

    fn add(self, o: Poly1) -> Poly1 {
        let n = self.coeffs.len().max(o.coeffs.len());
        let mut c = vec![Rat::zero(); n];
        for (i, x) in self.coeffs.into_iter().enumerate() {
            c[i] += x;
        }
        for (i, x) in o.coeffs.into_iter().enumerate() {
            c[i] += x;
        }
        Poly1::new(c)
    }
}

impl Neg for Poly1 {
    type Output = Poly1;

    fn neg(self) -> Poly1 {
        Poly1 {
            coeffs: self.coeffs.into_iter().map(|x| -x).collect(),
        }
    }
}

impl Sub for Poly1 {
    type Output = Poly1;

    fn sub(self, o: Poly1) -> Poly1 {
        self + (-o)
    }
}

impl Mul for Poly1 {
    type Output = Poly1;

    fn mul(self, o: Poly1) -> Poly1 {
        if self.is_zero() || o.is_zero() {
            return Poly1::zero();
        }
        let mut c = vec![Rat::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, x) in self.coeffs.iter().enumerate() {
            for (j, y) in o.coeffs.iter().enumerate() {
                c[i + j] += x * y;
            }
        }
        Poly1::new(c)
    }
}

/// Quotient of polynomials in lowest terms with monic denominator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatFun1 {
    num: Poly1,
    den: Poly1,
}

impl RatFun1 {
    /// `None` when the denominator is the zero polynomial.
    pub fn new(num: Poly1, den: Poly1) -> Option<Self> {
        if den.is_zero() {
            return None;
        }
        if num.is_zero() {
            return Some(RatFun1::zero());
        }
        let g = Poly1::gcd(&num, &den);
        let (n, _) = num.div_rem(&g);
        let (d, _) = den.div_rem(&g);
        let l = d.leading().cloned().unwrap_or_else(Rat::one).recip();
        Some(RatFun1 {
            num: n.scale(&l),
            den: d.scale(&l),
        })
    }

    pub fn from_poly(p: Poly1) -> Self {
        RatFun1 {
            num: p,
            den: Poly1::one(),
        }
    }

    pub fn t() -> Self {
        RatFun1::from_poly(Poly1::t())
    }

    pub fn num(&self) -> &Poly1 {
        &self.num
    }

    pub fn den(&self) -> &Poly1 {
        &self.den
    }

    pub fn eval_at_zero(&self) -> Result<Rat> {
        ratfun_eval_at_zero(self)
    }
}

/// Limit `t → 0` of a rational function kept in lowest terms.
pub fn ratfun_eval_at_zero(f: &RatFun1) -> Result<Rat> {
    let d = f.den.at_zero();
    if d.is_zero() {
        return Err(Error::PoleAtZero);
    }
    Ok(f.num.at_zero() / d)
}

impl Zero for RatFun1 {
    fn zero() -> Self {
        RatFun1::from_poly(Poly1::zero())
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for RatFun1 {
    fn one() -> Self {
        RatFun1::from_poly(Poly1::one())
    }
}

impl Add for RatFun1 {
    type Output = RatFun1;

    fn add(self, o: RatFun1) -> RatFun1 {
        if self.den == o.den {
            return RatFun1::new(self.num + o.num, self.den).unwrap();
        }
        let num = self.num * o.den.clone() + o.num * self.den.clone();
        RatFun1::new(num, self.den * o.den).unwrap()
    }
}

impl Neg for RatFun1 {
    type Output = RatFun1;

    fn neg(self) -> RatFun1 {
        RatFun1 {
            num: -self.num,
            den: self.den,
        }
    }
}

impl Sub for RatFun1 {
    type Output = RatFun1;

    fn sub(self, o: RatFun1) -> RatFun1 {
        self + (-o)
    }
}

impl Mul for RatFun1 {
    type Output = RatFun1;

    fn mul(self, o: RatFun1) -> RatFun1 {
        RatFun1::new(self.num * o.num, self.den * o.den).unwrap()
    }
}

impl Field for RatFun1 {
    fn from_rat(r: &Rat) -> Self {
        RatFun1::from_poly(Poly1::constant(r.clone()))
    }

    fn checked_inv(&self) -> Option<Self> {
        if self.num.is_zero() {
            None
        } else {
            RatFun1::new(self.den.clone(), self.num.clone())
        }
    }
}

/// Dense row-major rational matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl RatMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Rat>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch);
        }
        Ok(RatMatrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            data: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = RatMatrix::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Rat::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        if rows.iter().any(|x| x.len() != c) {
            return Err(Error::DimensionMismatch);
        }
        Ok(RatMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn diagonal(d: &[Rat]) -> Self {
        let mut m = RatMatrix::zeros(d.len(), d.len());
        for (i, x) in d.iter().enumerate() {
            m.set(i, i, x.clone());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rat {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rat) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rat] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Rat>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut m = RatMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(j, i, self.get(i, j).clone());
            }
        }
        m
    }

    pub fn mul(&self, o: &RatMatrix) -> Result<RatMatrix> {
        if self.cols != o.rows {
            return Err(Error::DimensionMismatch);
        }
        let mut m = RatMatrix::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    m.data[i * o.cols + j] += a * o.get(k, j);
                }
            }
        }
        Ok(m)
    }

    fn zip(&self, o: &RatMatrix, f: impl Fn(&Rat, &Rat) -> Rat) -> Result<RatMatrix> {
        if self.rows != o.rows || self.cols != o.cols {
            return Err(Error::DimensionMismatch);
        }
        Ok(RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| f(a, b)).collect(),
        })
    }

    pub fn add(&self, o: &RatMatrix) -> Result<RatMatrix> {
        self.zip(o, |a, b| a + b)
    }

    pub fn sub(&self, o: &RatMatrix) -> Result<RatMatrix> {
        self.zip(o, |a, b| a - b)
    }

    pub fn scale(&self, c: &Rat) -> RatMatrix {
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * c).collect(),
        }
    }

    /// Row vector times matrix, `vᵀ M`.
    pub fn vec_mul(&self, v: &[Rat]) -> Result<Vec<Rat>> {
        if v.len() != self.rows {
            return Err(Error::DimensionMismatch);
        }
        let mut out = vec![Rat::zero(); self.cols];
        for (i, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                *o += x * self.get(i, j);
            }
        }
        Ok(out)
    }

    /// Matrix times column vector, `M v`.
    pub fn mul_vec(&self, v: &[Rat]) -> Result<Vec<Rat>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch);
        }
        Ok((0..self.rows)
            .map(|i| dot(self.row(i), v))
            .collect())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    /// Gauss-Jordan inverse; `None` if singular or not square.
    pub fn inverse(&self) -> Option<RatMatrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut a = self.to_rows();
        let mut inv = RatMatrix::identity(n).to_rows();
        for c in 0..n {
            let p = (c..n).find(|&i| !a[i][c].is_zero())?;
            a.swap(c, p);
            inv.swap(c, p);
            let f = a[c][c].recip();
            for j in 0..n {
                a[c][j] *= &f;
                inv[c][j] *= &f;
            }
            for i in 0..n {
                if i == c || a[i][c].is_zero() {
                    continue;
                }
                let g = a[i][c].clone();
                for j in 0..n {
                    let x = &g * &a[c][j];
                    a[i][j] -= x;
                    let y = &g * &inv[c][j];
                    inv[i][j] -= y;
                }
            }
        }
        RatMatrix::from_rows(inv).ok()
    }

    pub fn rank(&self) -> usize {
        rank(self)
    }
}

pub fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    a.iter().zip(b).fold(Rat::zero(), |acc, (x, y)| acc + x * y)
}

fn integer_rows(m: &RatMatrix) -> Vec<Vec<BigInt>> {
    (0..m.rows)
        .map(|i| {
            let row = m.row(i);
            let l = row
                .iter()
                .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            row.iter().map(|x| x.numer() * (&l / x.denom())).collect()
        })
        .collect()
}

/// Fraction-free forward elimination. Returns the pivot columns; the first
/// `pivots.len()` rows of `a` are then in echelon form.
fn bareiss(a: &mut [Vec<BigInt>], cols: usize) -> Vec<usize> {
    let rows = a.len();
    let mut pivots = Vec::new();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        for i in r + 1..rows {
            for j in c + 1..cols {
                let v = &a[r][c] * &a[i][j] - &a[i][c] * &a[r][j];
                a[i][j] = v / &prev;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[r][c].clone();
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(m: &RatMatrix) -> usize {
    let mut a = integer_rows(m);
    bareiss(&mut a, m.cols).len()
}

/// Null-space basis. Each vector is scaled so its first nonzero entry is 1.
pub fn kernel_basis(m: &RatMatrix) -> Vec<Vec<Rat>> {
    let cols = m.cols;
    let mut a = integer_rows(m);
    let pivots = bareiss(&mut a, cols);
    let mut r: Vec<Vec<Rat>> = a[..pivots.len()]
        .iter()
        .map(|row| row.iter().map(|x| Rat::from_integer(x.clone())).collect())
        .collect();
    for k in (0..pivots.len()).rev() {
        let pc = pivots[k];
        let inv = r[k][pc].recip();
        for x in r[k].iter_mut() {
            *x *= &inv;
        }
        for i in 0..k {
            let f = r[i][pc].clone();
            if f.is_zero() {
                continue;
            }
            for j in pc..cols {
                let v = &f * &r[k][j];
                r[i][j] -= v;
            }
        }
    }
    let mut basis = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Rat::zero(); cols];
        v[free] = Rat::one();
        for (k, &pc) in pivots.iter().enumerate() {
            v[pc] = -r[k][free].clone();
        }
        let lead = v.iter().find(|x| !x.is_zero()).unwrap().recip();
        basis.push(v.into_iter().map(|x| x * &lead).collect());
    }
    basis
}

pub fn weighted_inner(x: &[Rat], y: &[Rat], w: &[Rat]) -> Rat {
    x.iter()
        .zip(y)
        .zip(w)
        .fold(Rat::zero(), |acc, ((a, b), c)| acc + a * b * c)
}

/// Orthogonalizes without normalizing, so everything stays rational.
pub fn weighted_gram_schmidt(vectors: &[Vec<Rat>], weights: &[Rat]) -> Result<Vec<Vec<Rat>>> {
    if vectors.iter().any(|v| v.len() != weights.len()) {
        return Err(Error::DimensionMismatch);
    }
    if weights.iter().any(|w| *w <= Rat::zero()) {
        return Err(Error::consistency("weights positive"));
    }
    let mut out: Vec<Vec<Rat>> = Vec::with_capacity(vectors.len());
    let mut norms: Vec<Rat> = Vec::with_capacity(vectors.len());
    for v in vectors {
        let mut u = v.clone();
        for (p, n) in out.iter().zip(&norms) {
            let c = weighted_inner(v, p, weights) / n;
            if c.is_zero() {
                continue;
            }
            for (x, y) in u.iter_mut().zip(p) {
                *x -= &c * y;
            }
        }
        let n = weighted_inner(&u, &u, weights);
        if n.is_zero() {
            return Err(Error::DependentInput);
        }
        out.push(u);
        norms.push(n);
    }
    Ok(out)
}
