//! Catalog of the supported holonomy algebras.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Zero};

use crate::ratkernel::{dot, int, rat, Field, Rat, RatMatrix};
use crate::{Error, Result};

pub type WeightVec = Vec<Rat>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    SoOdd(usize),
    SoEven(usize),
    U(usize),
    G2,
    Spin7,
}

impl Family {
    /// Resolves `SO(n)` to the odd or even series.
    pub fn so(n: usize) -> Family {
        if n % 2 == 1 {
            Family::SoOdd(n / 2)
        } else {
            Family::SoEven(n / 2)
        }
    }

    pub fn is_so(&self) -> bool {
        matches!(self, Family::SoOdd(_) | Family::SoEven(_))
    }

    pub fn name(&self) -> &'static str {
        match self {
            Family::SoOdd(_) | Family::SoEven(_) => "so",
            Family::U(_) => "u",
            Family::G2 => "g2",
            Family::Spin7 => "spin7",
        }
    }

    /// `n` for SO(n) and U(n), absent for the exceptional algebras.
    pub fn parameter(&self) -> Option<usize> {
        match *self {
            Family::SoOdd(r) => Some(2 * r + 1),
            Family::SoEven(r) => Some(2 * r),
            Family::U(n) => Some(n),
            Family::G2 | Family::Spin7 => None,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.parameter() {
            Some(n) if self.is_so() => write!(f, "SO({})", n),
            Some(n) => write!(f, "U({})", n),
            None if *self == Family::G2 => write!(f, "G2"),
            None => write!(f, "Spin(7)"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EpsLabel {
    Plus(usize),
    Minus(usize),
    Zero,
}

impl EpsLabel {
    /// Plain ASCII form, e.g. `+e2`, `-e1`, `0`.
    pub fn ascii(&self) -> String {
        match self {
            EpsLabel::Plus(k) => format!("+e{}", k),
            EpsLabel::Minus(k) => format!("-e{}", k),
            EpsLabel::Zero => String::from("0"),
        }
    }

    /// Typeset form with sub-scripts, e.g. `₊ε₂`.
    pub fn pretty(&self) -> String {
        match self {
            EpsLabel::Plus(k) => format!("₊ε{}", subscript(*k)),
            EpsLabel::Minus(k) => format!("₋ε{}", subscript(*k)),
            EpsLabel::Zero => String::from("₀"),
        }
    }
}

fn subscript(k: usize) -> String {
    format!("{}", k)
        .chars()
        .map(|c| char::from_u32(0x2080 + c.to_digit(10).unwrap()).unwrap())
        .collect()
}

impl fmt::Display for EpsLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.ascii())
    }
}

/// One summand `W_α` of `T ⊗ T` with its K-eigenvalue and the dimension of
/// its zero weight space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KClass {
    pub name: &'static str,
    pub kappa: Rat,
    pub zero_weight_dim: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Algebra {
    pub family: Family,
    pub rank: usize,
    pub dim_t: usize,
    pub dim_g: usize,
    pub gram: RatMatrix,
    pub fund_weights: Vec<WeightVec>,
    fund_inv: RatMatrix,
    pub rho: WeightVec,
    pub eps_max: WeightVec,
    pub t_weights: Vec<(EpsLabel, WeightVec)>,
    pub pos_roots: Vec<WeightVec>,
    pub simple_roots: Vec<WeightVec>,
    /// Highest weight of the adjoint representation.
    pub adjoint: WeightVec,
    pub k_table: Vec<KClass>,
}

fn unit(n: usize, i: usize) -> WeightVec {
    let mut v = vec![Rat::zero(); n];
    v[i] = Rat::one();
    v
}

fn lin(n: usize, terms: &[(usize, i64)]) -> WeightVec {
    let mut v = vec![Rat::zero(); n];
    for &(i, c) in terms {
        v[i] += int(c);
    }
    v
}

fn half(v: WeightVec) -> WeightVec {
    v.into_iter().map(|x| x * rat(1, 2)).collect()
}

fn vadd(a: &[Rat], b: &[Rat]) -> WeightVec {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn pm_weights(n: usize, holo_first: bool) -> Vec<(EpsLabel, WeightVec)> {
    let mut out = Vec::new();
    if holo_first {
        for k in 0..n {
            out.push((EpsLabel::Minus(k + 1), lin(n, &[(k, -1)])));
        }
        for k in 0..n {
            out.push((EpsLabel::Plus(k + 1), unit(n, k)));
        }
    } else {
        for k in 0..n {
            out.push((EpsLabel::Plus(k + 1), unit(n, k)));
            out.push((EpsLabel::Minus(k + 1), lin(n, &[(k, -1)])));
        }
    }
    out
}

fn so_roots(r: usize, odd: bool) -> (Vec<WeightVec>, Vec<WeightVec>) {
    let mut pos = Vec::new();
    for i in 0..r {
        for j in i + 1..r {
            pos.push(lin(r, &[(i, 1), (j, -1)]));
            pos.push(lin(r, &[(i, 1), (j, 1)]));
        }
        if odd {
            pos.push(unit(r, i));
        }
    }
    let mut simple: Vec<WeightVec> = (0..r.saturating_sub(1))
        .map(|i| lin(r, &[(i, 1), (i + 1, -1)]))
        .collect();
    if odd {
        simple.push(unit(r, r - 1));
    } else {
        // ordered so that simple root k is dual to ω_k
        simple[r - 2] = lin(r, &[(r - 2, 1), (r - 1, 1)]);
        simple.push(lin(r, &[(r - 2, 1), (r - 1, -1)]));
    }
    (pos, simple)
}

fn so_k_table(n: usize) -> Vec<KClass> {
    let n_i = n as i64;
    vec![
        KClass { name: "C", kappa: int(1 - n_i), zero_weight_dim: Some(1) },
        KClass { name: "Sym2_0T", kappa: int(1), zero_weight_dim: Some((n - 1) / 2) },
        KClass { name: "g", kappa: int(-1), zero_weight_dim: Some(n / 2) },
    ]
}

pub fn build_algebra(family: Family) -> Result<Algebra> {
    let bad = || Err(Error::UnsupportedFamily(format!("{:?}", family)));
    let (rank, dim_t, dim_g, gram, fund, t_weights, pos, simple, eps_max, adjoint, k_table);
    match family {
        Family::SoOdd(r) => {
            if r < 1 {
                return bad();
            }
            let n = 2 * r + 1;
            rank = r;
            dim_t = n;
            dim_g = n * (n - 1) / 2;
            gram = RatMatrix::identity(r);
            fund = (0..r)
                .map(|k| {
                    let v = lin(r, &(0..=k).map(|i| (i, 1)).collect::<Vec<_>>());
                    if k + 1 == r {
                        half(v)
                    } else {
                        v
                    }
                })
                .collect::<Vec<_>>();
            let mut tw = pm_weights(r, false);
            tw.push((EpsLabel::Zero, vec![Rat::zero(); r]));
            t_weights = tw;
            (pos, simple) = so_roots(r, true);
            eps_max = unit(r, 0);
            adjoint = if r >= 2 { lin(r, &[(0, 1), (1, 1)]) } else { unit(r, 0) };
            k_table = so_k_table(n);
        }
        Family::SoEven(r) => {
            if r < 2 {
                return bad();
            }
            let n = 2 * r;
            rank = r;
            dim_t = n;
            dim_g = n * (n - 1) / 2;
            gram = RatMatrix::identity(r);
            let mut f: Vec<WeightVec> = (0..r - 2)
                .map(|k| lin(r, &(0..=k).map(|i| (i, 1)).collect::<Vec<_>>()))
                .collect();
            let head: Vec<(usize, i64)> = (0..r - 1).map(|i| (i, 1)).collect();
            let mut plus = head.clone();
            plus.push((r - 1, 1));
            let mut minus = head;
            minus.push((r - 1, -1));
            f.push(half(lin(r, &plus)));
            f.push(half(lin(r, &minus)));
            fund = f;
            t_weights = pm_weights(r, false);
            (pos, simple) = so_roots(r, false);
            eps_max = unit(r, 0);
            adjoint = lin(r, &[(0, 1), (1, 1)]);
            k_table = so_k_table(n);
        }
        Family::U(n) => {
            if n < 2 {
                return bad();
            }
            rank = n;
            dim_t = 2 * n;
            dim_g = n * n;
            gram = RatMatrix::identity(n);
            fund = (0..n)
                .map(|k| lin(n, &(0..=k).map(|i| (i, 1)).collect::<Vec<_>>()))
                .collect();
            t_weights = pm_weights(n, true);
            let mut p = Vec::new();
            for i in 0..n {
                for j in i + 1..n {
                    p.push(lin(n, &[(i, 1), (j, -1)]));
                }
            }
            pos = p;
            simple = (0..n - 1).map(|i| lin(n, &[(i, 1), (i + 1, -1)])).collect();
            eps_max = unit(n, 0);
            adjoint = lin(n, &[(0, 1), (n - 1, -1)]);
            k_table = vec![
                KClass { name: "center", kappa: -int(n as i64), zero_weight_dim: None },
                KClass { name: "complement", kappa: Rat::zero(), zero_weight_dim: None },
            ];
        }
        Family::G2 => {
            rank = 2;
            dim_t = 7;
            dim_g = 14;
            gram = RatMatrix::from_rows(vec![
                vec![int(1), rat(1, 2)],
                vec![rat(1, 2), int(1)],
            ])?;
            fund = vec![vec![int(1), int(0)], vec![int(1), int(1)]];
            let e = |a: i64, b: i64| vec![int(a), int(b)];
            t_weights = vec![
                (EpsLabel::Plus(1), e(1, 0)),
                (EpsLabel::Minus(1), e(-1, 0)),
                (EpsLabel::Plus(2), e(0, 1)),
                (EpsLabel::Minus(2), e(0, -1)),
                (EpsLabel::Plus(3), e(1, -1)),
                (EpsLabel::Minus(3), e(-1, 1)),
                (EpsLabel::Zero, e(0, 0)),
            ];
            pos = vec![e(1, 0), e(0, 1), e(1, -1), e(1, 1), e(2, -1), e(-1, 2)];
            simple = vec![e(1, -1), e(-1, 2)];
            eps_max = e(1, 0);
            adjoint = e(1, 1);
            k_table = vec![
                KClass { name: "C", kappa: int(-4), zero_weight_dim: Some(1) },
                KClass { name: "Sym2_0T", kappa: rat(2, 3), zero_weight_dim: Some(3) },
                KClass { name: "g", kappa: int(0), zero_weight_dim: Some(2) },
                KClass { name: "g_perp", kappa: int(-2), zero_weight_dim: Some(1) },
            ];
        }
        Family::Spin7 => {
            rank = 3;
            dim_t = 8;
            dim_g = 21;
            gram = RatMatrix::identity(3);
            let h = |a: i64, b: i64, c: i64| vec![rat(a, 2), rat(b, 2), rat(c, 2)];
            fund = vec![h(2, 0, 0), h(2, 2, 0), h(1, 1, 1)];
            t_weights = vec![
                (EpsLabel::Plus(1), h(1, 1, 1)),
                (EpsLabel::Minus(1), h(-1, -1, -1)),
                (EpsLabel::Plus(2), h(1, 1, -1)),
                (EpsLabel::Minus(2), h(-1, -1, 1)),
                (EpsLabel::Plus(3), h(1, -1, 1)),
                (EpsLabel::Minus(3), h(-1, 1, -1)),
                (EpsLabel::Plus(4), h(1, -1, -1)),
                (EpsLabel::Minus(4), h(-1, 1, 1)),
            ];
            let (p, _) = so_roots(3, true);
            pos = p;
            simple = vec![h(2, -2, 0), h(0, 2, -2), h(0, 0, 2)];
            eps_max = h(1, 1, 1);
            adjoint = h(2, 2, 0);
            k_table = vec![
                KClass { name: "C", kappa: rat(-21, 4), zero_weight_dim: Some(1) },
                KClass { name: "Sym2_0T", kappa: rat(3, 4), zero_weight_dim: Some(3) },
                KClass { name: "g", kappa: rat(-1, 4), zero_weight_dim: Some(3) },
                KClass { name: "g_perp", kappa: rat(-9, 4), zero_weight_dim: Some(1) },
            ];
        }
    }
    let rho_sum = pos
        .iter()
        .fold(vec![Rat::zero(); rank], |acc, r| vadd(&acc, r));
    let rho = half(rho_sum);
    let fund_inv = RatMatrix::from_rows(fund.clone())?
        .inverse()
        .ok_or_else(|| Error::consistency("fundamental weights independent"))?;
    let alg = Algebra {
        family,
        rank,
        dim_t,
        dim_g,
        gram,
        fund_weights: fund,
        fund_inv,
        rho,
        eps_max,
        t_weights,
        pos_roots: pos,
        simple_roots: simple,
        adjoint,
        k_table,
    };
    alg.check_catalog()?;
    Ok(alg)
}

impl Algebra {
    fn check_catalog(&self) -> Result<()> {
        if self.t_weights.len() != self.dim_t {
            return Err(Error::consistency("number of T weights equals dim T"));
        }
        let e = &self.eps_max;
        let two_rho: WeightVec = self.rho.iter().map(|x| x * int(2)).collect();
        if self.inner(&vadd(e, &two_rho), e)?.is_zero() {
            return Err(Error::consistency("<eps_max + 2 rho, eps_max> nonzero"));
        }
        // simple root k must be dual to fundamental weight k
        for (k, a) in self.simple_roots.iter().enumerate() {
            let aa = self.inner(a, a)?;
            for (j, w) in self.fund_weights.iter().enumerate() {
                let c = int(2) * self.inner(w, a)? / &aa;
                let want = if j == k { Rat::one() } else { Rat::zero() };
                if c != want {
                    return Err(Error::consistency("simple roots dual to fundamental weights"));
                }
            }
        }
        if let Some(total) = self
            .k_table
            .iter()
            .map(|k| k.zero_weight_dim)
            .sum::<Option<usize>>()
        {
            if total != self.dim_t {
                return Err(Error::consistency("zero weight dimensions sum to dim T"));
            }
        }
        Ok(())
    }

    pub fn inner(&self, v: &[Rat], w: &[Rat]) -> Result<Rat> {
        if v.len() != self.rank || w.len() != self.rank {
            return Err(Error::DimensionMismatch);
        }
        Ok(dot(&self.gram.vec_mul(v)?, w))
    }

    /// Inner product with entries in an arbitrary scalar field.
    pub fn inner_f<S: Field>(&self, v: &[S], w: &[S]) -> S {
        let mut acc = S::zero();
        for i in 0..self.rank {
            for j in 0..self.rank {
                let g = self.gram.get(i, j);
                if g.is_zero() {
                    continue;
                }
                acc = acc + S::from_rat(g) * v[i].clone() * w[j].clone();
            }
        }
        acc
    }

    /// Fundamental coefficients of a weight; errors unless they are integers.
    pub fn to_fundamental(&self, v: &[Rat]) -> Result<Vec<Rat>> {
        let c = self.to_fundamental_rat(v)?;
        if c.iter().any(|x| !x.is_integer()) {
            return Err(Error::NotInLattice);
        }
        Ok(c)
    }

    /// Fundamental coefficients without the integrality check.
    pub fn to_fundamental_rat(&self, v: &[Rat]) -> Result<Vec<Rat>> {
        if v.len() != self.rank {
            return Err(Error::DimensionMismatch);
        }
        self.fund_inv.vec_mul(v)
    }

    pub fn to_fundamental_f<S: Field>(&self, v: &[S]) -> Vec<S> {
        (0..self.rank)
            .map(|j| {
                (0..self.rank).fold(S::zero(), |acc, i| {
                    acc + v[i].clone() * S::from_rat(self.fund_inv.get(i, j))
                })
            })
            .collect()
    }

    pub fn from_fundamental(&self, coeffs: &[Rat]) -> Result<WeightVec> {
        if coeffs.len() != self.rank {
            return Err(Error::DimensionMismatch);
        }
        let mut v = vec![Rat::zero(); self.rank];
        for (c, w) in coeffs.iter().zip(&self.fund_weights) {
            for (x, y) in v.iter_mut().zip(w) {
                *x += c * y;
            }
        }
        Ok(v)
    }

    pub fn t_weight(&self, label: EpsLabel) -> Option<&WeightVec> {
        self.t_weights
            .iter()
            .find(|(l, _)| *l == label)
            .map(|(_, v)| v)
    }

    /// The summand `W_α` with the given K-eigenvalue, if any.
    pub fn k_class(&self, kappa: &Rat) -> Option<&KClass> {
        self.k_table.iter().find(|k| &k.kappa == kappa)
    }

    /// Index of the fundamental coefficient that may be negative (U(n) only).
    pub fn signed_coefficient(&self) -> Option<usize> {
        match self.family {
            Family::U(n) => Some(n - 1),
            _ => None,
        }
    }

    /// SO(4) is not simple; formulas are still evaluated verbatim.
    pub fn so4_warning(&self) -> bool {
        self.family == Family::SoEven(2)
    }
}
